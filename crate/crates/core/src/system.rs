//! Set systems and their operation algebra: twists, loop complementation,
//! deletion, contraction and Penrose contraction.
//!
//! Elements are addressed by their position in the ground set. Operations
//! that remove elements keep the surviving labels in their original order,
//! so results can be compared label-for-label with hand-written systems.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};

/// A ground set together with a sorted, duplicate-free family of feasible
/// sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground: Arc<GroundSet>,
    feasible: Vec<Subset>,
}

/// How an element sits in a proper set system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementClass {
    /// In no feasible set.
    Loop,
    /// In every feasible set.
    Coloop,
    /// Twisting on the element leaves the system unchanged.
    PseudoLoop,
    Ordinary,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElementClass::Loop => "Loop",
            ElementClass::Coloop => "Coloop",
            ElementClass::PseudoLoop => "PseudoLoop",
            ElementClass::Ordinary => "Ordinary",
        };
        f.write_str(s)
    }
}

/// Single-element operations accepted by [`SetSystem::apply_sequence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Delete,
    Contract,
    Penrose,
    Twist,
    LoopComplement,
}

impl Op {
    pub fn is_minor(self) -> bool {
        matches!(self, Op::Delete | Op::Contract | Op::Penrose)
    }
}

/// One step of an operation sequence; the element is named so that steps
/// stay meaningful after earlier steps remove elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub element: String,
    pub op: Op,
}

impl Step {
    pub fn new(element: impl Into<String>, op: Op) -> Step {
        Step {
            element: element.into(),
            op,
        }
    }
}

impl SetSystem {
    pub fn new<I: IntoIterator<Item = Subset>>(ground: GroundSet, feasible: I) -> Result<SetSystem> {
        let n = ground.len();
        let mut feasible = feasible
            .into_iter()
            .map(|f| f.check(n))
            .collect::<Result<Vec<_>>>()?;
        feasible.sort_unstable();
        feasible.dedup();
        Ok(SetSystem {
            ground: Arc::new(ground),
            feasible,
        })
    }

    /// Builds a system over single-character labels, e.g.
    /// `from_words("abc", &["", "abc"])` for `({a,b,c}, {∅, {a,b,c}})`.
    pub fn from_words(labels: &str, sets: &[&str]) -> Result<SetSystem> {
        let ground = GroundSet::new(labels.chars().map(String::from))?;
        let feasible = sets
            .iter()
            .map(|w| {
                w.chars().try_fold(Subset::EMPTY, |m, c| {
                    Ok(m.with(ground.index_of(&c.to_string())?))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(ground, feasible)
    }

    /// Caller guarantees `feasible` is sorted, deduplicated and in range.
    pub(crate) fn from_sorted(ground: Arc<GroundSet>, feasible: Vec<Subset>) -> SetSystem {
        debug_assert!(feasible.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(feasible
            .iter()
            .all(|f| f.is_subset_of(Subset::full(ground.len()))));
        SetSystem { ground, feasible }
    }

    fn with_family(&self, mut feasible: Vec<Subset>) -> SetSystem {
        feasible.sort_unstable();
        feasible.dedup();
        SetSystem {
            ground: Arc::clone(&self.ground),
            feasible,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn feasible(&self) -> &[Subset] {
        &self.feasible
    }

    pub fn into_feasible(self) -> Vec<Subset> {
        self.feasible
    }

    pub fn is_proper(&self) -> bool {
        !self.feasible.is_empty()
    }

    pub fn is_feasible(&self, f: Subset) -> bool {
        self.feasible.binary_search(&f).is_ok()
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.ground.index_of(name)
    }

    pub fn subset(&self, names: &[&str]) -> Result<Subset> {
        self.ground.subset_of(names)
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e < self.size() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: e,
                size: self.size(),
            })
        }
    }

    fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::Improper)
        }
    }

    /// `S*A`: symmetric difference of every feasible set with `a`.
    pub fn twist(&self, a: Subset) -> Result<SetSystem> {
        a.check(self.size())?;
        Ok(self.twist_unchecked(a))
    }

    pub(crate) fn twist_unchecked(&self, a: Subset) -> SetSystem {
        self.with_family(self.feasible.iter().map(|&f| f ^ a).collect())
    }

    /// `S* = S*E`.
    pub fn dual(&self) -> SetSystem {
        self.twist_unchecked(self.full())
    }

    /// `S+A`, computed one element at a time in ground-set order.
    pub fn loop_complement(&self, a: Subset) -> Result<SetSystem> {
        a.check(self.size())?;
        let out = a
            .iter()
            .fold(self.clone(), |s, e| s.loop_complement_at(e));
        #[cfg(debug_assertions)]
        if self.size() <= 8 {
            debug_assert_eq!(out, self.loop_complement_direct(a).unwrap());
        }
        Ok(out)
    }

    /// `S+e`: the family `ℱ △ {F∪e : e∉F∈ℱ}`.
    pub(crate) fn loop_complement_at(&self, e: usize) -> SetSystem {
        // F -> F|e is strictly increasing on sets avoiding e, so this is sorted.
        let toggles: Vec<Subset> = self
            .feasible
            .iter()
            .filter(|f| !f.contains(e))
            .map(|f| f.with(e))
            .collect();
        SetSystem {
            ground: Arc::clone(&self.ground),
            feasible: sorted_symmetric_difference(&self.feasible, &toggles),
        }
    }

    /// `S+A` evaluated straight from the parity definition: `F` is feasible
    /// iff an odd number of feasible `F'` satisfy `F−A ⊆ F' ⊆ F`.
    /// Costs `O(2^n·|ℱ|)`; kept as a cross-check for [`Self::loop_complement`].
    pub fn loop_complement_direct(&self, a: Subset) -> Result<SetSystem> {
        a.check(self.size())?;
        let n = self.size();
        let fam = (0..1u32 << n)
            .map(Subset)
            .filter(|&f| {
                let lo = Subset(f.0 & !a.0);
                self.feasible
                    .iter()
                    .filter(|g| lo.is_subset_of(**g) && g.is_subset_of(f))
                    .count()
                    % 2
                    == 1
            })
            .collect();
        Ok(SetSystem::from_sorted(Arc::clone(&self.ground), fam))
    }

    pub fn classify_element(&self, e: usize) -> Result<ElementClass> {
        self.require_proper()?;
        self.check_element(e)?;
        let hits = self.feasible.iter().filter(|f| f.contains(e)).count();
        Ok(if hits == 0 {
            ElementClass::Loop
        } else if hits == self.feasible.len() {
            ElementClass::Coloop
        } else if self.is_pseudo_loop(e) {
            ElementClass::PseudoLoop
        } else {
            ElementClass::Ordinary
        })
    }

    fn is_pseudo_loop(&self, e: usize) -> bool {
        self.feasible.iter().all(|f| self.is_feasible(f.toggled(e)))
    }

    /// Drops the elements in `removed` from the ground set and compresses
    /// the given family onto what remains.
    fn restrict(&self, removed: Subset, feasible: impl Iterator<Item = Subset>) -> SetSystem {
        let ground = Arc::new(self.ground.without(removed));
        // compress is order-preserving on sets disjoint from `removed`
        let fam: Vec<Subset> = feasible.map(|f| f.compress(removed)).collect();
        SetSystem::from_sorted(ground, fam)
    }

    /// `S\e`. Deleting a coloop contracts it instead.
    pub fn delete(&self, e: usize) -> Result<SetSystem> {
        self.require_proper()?;
        self.check_element(e)?;
        if self.feasible.iter().all(|f| f.contains(e)) {
            return Ok(self.contract_raw(e));
        }
        Ok(self.delete_raw(e))
    }

    /// `S/e`. Contracting a loop deletes it instead.
    pub fn contract(&self, e: usize) -> Result<SetSystem> {
        self.require_proper()?;
        self.check_element(e)?;
        if self.feasible.iter().all(|f| !f.contains(e)) {
            return Ok(self.delete_raw(e));
        }
        Ok(self.contract_raw(e))
    }

    fn delete_raw(&self, e: usize) -> SetSystem {
        let r = Subset::singleton(e);
        self.restrict(r, self.feasible.iter().copied().filter(|f| !f.contains(e)))
    }

    fn contract_raw(&self, e: usize) -> SetSystem {
        let r = Subset::singleton(e);
        self.restrict(
            r,
            self.feasible
                .iter()
                .filter(|f| f.contains(e))
                .map(|f| f.without(e)),
        )
    }

    /// `S‡e = (S+e)/e`.
    pub fn penrose_contract(&self, e: usize) -> Result<SetSystem> {
        self.require_proper()?;
        self.check_element(e)?;
        self.loop_complement_at(e).contract(e)
    }

    /// `S\X/Y` via the closed form `{F−Y : F∈ℱ, Y⊆F⊆E−X}`, which is only
    /// order-independent when that family is nonempty.
    pub fn minor(&self, x: Subset, y: Subset) -> Result<SetSystem> {
        let n = self.size();
        x.check(n)?;
        y.check(n)?;
        if !x.is_disjoint(y) {
            return Err(Error::Overlap);
        }
        let fam: Vec<Subset> = self
            .feasible
            .iter()
            .filter(|f| y.is_subset_of(**f) && f.is_disjoint(x))
            .map(|&f| f ^ y)
            .collect();
        if fam.is_empty() {
            return Err(Error::NotRealizable);
        }
        Ok(self.restrict(x | y, fam.into_iter()))
    }

    /// `S\X/Y‡Z` via the closed form: `F ⊆ E−(X∪Y∪Z)` is feasible iff
    /// `|ℱ ∩ [F∪Y, F∪Y∪Z]|` is odd, i.e. iff `F∪Y∪Z` is feasible in `S+Z`.
    /// Fails when no set qualifies, since the result is then order-dependent.
    pub fn three_minor(&self, x: Subset, y: Subset, z: Subset) -> Result<SetSystem> {
        let n = self.size();
        x.check(n)?;
        y.check(n)?;
        z.check(n)?;
        if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
            return Err(Error::Overlap);
        }
        self.three_minor_unchecked(x, y, z)
            .ok_or(Error::NoThreeMinorWitness)
    }

    pub(crate) fn three_minor_unchecked(&self, x: Subset, y: Subset, z: Subset) -> Option<SetSystem> {
        let lc = z.iter().fold(self.clone(), |s, e| s.loop_complement_at(e));
        let yz = y | z;
        let fam: Vec<Subset> = lc
            .feasible
            .iter()
            .filter(|f| yz.is_subset_of(**f) && f.is_disjoint(x))
            .map(|&f| f ^ yz)
            .collect();
        if fam.is_empty() {
            None
        } else {
            Some(self.restrict(x | yz, fam.into_iter()))
        }
    }

    /// Left fold of single-element operations.
    pub fn apply_sequence(&self, steps: &[Step]) -> Result<SetSystem> {
        steps.iter().try_fold(self.clone(), |s, step| {
            let e = s.element(&step.element)?;
            match step.op {
                Op::Delete => s.delete(e),
                Op::Contract => s.contract(e),
                Op::Penrose => s.penrose_contract(e),
                Op::Twist => Ok(s.twist_unchecked(Subset::singleton(e))),
                Op::LoopComplement => Ok(s.loop_complement_at(e)),
            }
        })
    }

    /// Moves element `i` to position `perm[i]`, carrying its label along.
    pub fn permuted(&self, perm: &[usize]) -> SetSystem {
        let n = self.size();
        assert_eq!(perm.len(), n);
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.ground.label(i).to_string();
        }
        let ground = GroundSet::new(labels).expect("permutation of distinct labels");
        let fam: Vec<Subset> = self.feasible.iter().map(|&f| map_subset(f, perm)).collect();
        let mut s = SetSystem {
            ground: Arc::new(ground),
            feasible: fam,
        };
        s.feasible.sort_unstable();
        s
    }

    /// Same family over a different ground set of equal size.
    pub fn relabeled(&self, ground: GroundSet) -> Result<SetSystem> {
        if ground.len() != self.size() {
            return Err(Error::Parse(format!(
                "relabel needs {} labels, got {}",
                self.size(),
                ground.len()
            )));
        }
        Ok(SetSystem {
            ground: Arc::new(ground),
            feasible: self.feasible.clone(),
        })
    }

    pub fn format_family(&self) -> String {
        let sets: Vec<String> = self
            .feasible
            .iter()
            .map(|&f| {
                if f.is_empty() {
                    "∅".to_string()
                } else {
                    self.ground.format_subset(f)
                }
            })
            .collect();
        format!("{{{}}}", sets.join(", "))
    }
}

pub(crate) fn map_subset(f: Subset, perm: &[usize]) -> Subset {
    f.iter().fold(Subset::EMPTY, |m, i| m.with(perm[i]))
}

/// Symmetric difference of two strictly increasing lists.
pub(crate) fn sorted_symmetric_difference(a: &[Subset], b: &[Subset]) -> Vec<Subset> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.ground.format_subset(self.full()),
            self.format_family()
        )
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
