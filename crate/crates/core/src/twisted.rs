//! Twisted duality: orbits under twists and loop complementations,
//! vf-safety, 3-minor enumeration and excluded-3-minor membership.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::canon::{canonical_key, CanonKey, CANON_MAX};
use crate::catalog;
use crate::delta::first_violation;
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::system::SetSystem;

/// Largest ground set for orbit computations (`6^8` labeled systems).
pub const ORBIT_MAX: usize = 8;

/// A single twisted-duality generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Twist(usize),
    LoopComplement(usize),
}

impl Generator {
    pub fn apply(self, s: &SetSystem) -> SetSystem {
        match self {
            Generator::Twist(e) => s.twist_unchecked(Subset::singleton(e)),
            Generator::LoopComplement(e) => s.loop_complement_at(e),
        }
    }

    fn all(n: usize) -> impl Iterator<Item = Generator> {
        (0..n).flat_map(|e| [Generator::Twist(e), Generator::LoopComplement(e)])
    }
}

/// The six words in `*A` and `+A`, deduplicated, in the order
/// `S, S*A, S+A, (S+A)*A, (S*A)+A, ((S*A)+A)*A`.
pub fn twisted_duals_wrt(s: &SetSystem, a: Subset) -> Result<Vec<SetSystem>> {
    let t = s.twist(a)?;
    let l = s.loop_complement(a)?;
    let lt = l.twist_unchecked(a);
    let tl = t.loop_complement(a)?;
    let tlt = tl.twist_unchecked(a);
    let mut out: Vec<SetSystem> = Vec::with_capacity(6);
    for x in [s.clone(), t, l, lt, tl, tlt] {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Closure of a system under single-element twists and loop
/// complementations, with a spanning tree for recovering words.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Labeled systems, or canonical forms when `up_to_iso` is set.
    pub members: Vec<SetSystem>,
    /// `parents[i] = (j, g)` means `members[i]` is `g` applied to `members[j]`.
    pub parents: Vec<Option<(usize, Generator)>>,
    pub up_to_iso: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Generators taking the seed to `members[i]`.
    pub fn word_to(&self, mut i: usize) -> Vec<Generator> {
        let mut word = Vec::new();
        while let Some((p, g)) = self.parents[i] {
            word.push(g);
            i = p;
        }
        word.reverse();
        word
    }

    pub fn contains(&self, s: &SetSystem) -> Result<bool> {
        if self.up_to_iso {
            let c = canonical_key(s)?.to_system();
            Ok(self.members.contains(&c))
        } else {
            Ok(self.members.contains(s))
        }
    }
}

fn orbit_guard(s: &SetSystem) -> Result<()> {
    if s.size() > ORBIT_MAX {
        return Err(Error::TooLarge {
            what: "twisted-duality orbit",
            size: s.size(),
            max: ORBIT_MAX,
        });
    }
    Ok(())
}

/// Breadth-first closure under `*e` and `+e` for every element `e`.
pub fn orbit(s: &SetSystem, up_to_iso: bool) -> Result<Orbit> {
    orbit_guard(s)?;
    let n = s.size();
    let seed = if up_to_iso {
        canonical_key(s)?.to_system()
    } else {
        s.clone()
    };
    let mut seen: HashSet<Vec<Subset>> = HashSet::new();
    seen.insert(seed.feasible().to_vec());
    let mut members = vec![seed];
    let mut parents = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in Generator::all(n) {
            let mut next = g.apply(&members[i]);
            if up_to_iso {
                next = canonical_key(&next)?.to_system();
            }
            if seen.insert(next.feasible().to_vec()) {
                members.push(next);
                parents.push(Some((i, g)));
                queue.push_back(members.len() - 1);
            }
        }
    }
    Ok(Orbit {
        members,
        parents,
        up_to_iso,
    })
}

/// `D ∗̄ A = ((D+A)*A)+A`.
pub fn dual_pivot(d: &SetSystem, a: Subset) -> Result<SetSystem> {
    d.loop_complement(a)?.twist_unchecked(a).loop_complement(a)
}

/// Every twisted dual (including the system itself) satisfies symmetric
/// exchange. Stops at the first twisted dual that does not.
pub fn is_vf_safe(s: &SetSystem) -> Result<bool> {
    if !s.is_proper() {
        return Err(Error::Improper);
    }
    orbit_guard(s)?;
    if first_violation(s).is_some() {
        return Ok(false);
    }
    let n = s.size();
    let mut seen: HashSet<Vec<Subset>> = HashSet::new();
    seen.insert(s.feasible().to_vec());
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(cur) = queue.pop_front() {
        for g in Generator::all(n) {
            let next = g.apply(&cur);
            if seen.insert(next.feasible().to_vec()) {
                if first_violation(&next).is_some() {
                    return Ok(false);
                }
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

/// A 3-minor `S\X/Y‡Z` with its defining triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeMinor {
    pub x: Subset,
    pub y: Subset,
    pub z: Subset,
    pub system: SetSystem,
}

/// Assignments of `removed` elements to `(X, Y, Z)`, in a fixed order.
fn assignments(removed: Subset) -> impl Iterator<Item = (Subset, Subset, Subset)> {
    let elems: Vec<usize> = removed.iter().collect();
    let total = 3usize.pow(elems.len() as u32);
    (0..total).map(move |mut code| {
        let (mut x, mut y, mut z) = (Subset::EMPTY, Subset::EMPTY, Subset::EMPTY);
        for &e in &elems {
            match code % 3 {
                0 => x = x.with(e),
                1 => y = y.with(e),
                _ => z = z.with(e),
            }
            code /= 3;
        }
        (x, y, z)
    })
}

/// All 3-minors up to isomorphism, each with one realizing triple. Triples
/// with no feasible witness for the closed form are skipped.
pub fn enumerate_three_minors(s: &SetSystem, include_self: bool) -> Result<Vec<ThreeMinor>> {
    if !s.is_proper() {
        return Err(Error::Improper);
    }
    let n = s.size();
    if n > CANON_MAX {
        return Err(Error::TooLarge {
            what: "3-minor enumeration",
            size: n,
            max: CANON_MAX,
        });
    }
    let mut seen: HashSet<CanonKey> = HashSet::new();
    let mut out = Vec::new();
    for r in 0..(1u32 << n) {
        let removed = Subset(r);
        if removed.is_empty() && !include_self {
            continue;
        }
        for (x, y, z) in assignments(removed) {
            if let Some(m) = s.three_minor_unchecked(x, y, z) {
                if seen.insert(canonical_key(&m)?) {
                    out.push(ThreeMinor { x, y, z, system: m });
                }
            }
        }
    }
    Ok(out)
}

/// A set of isomorphism classes to look for among 3-minors.
#[derive(Clone, Debug)]
pub struct ObstructionSet {
    entries: Vec<SetSystem>,
    index: HashMap<CanonKey, usize>,
    sizes: BTreeSet<usize>,
}

impl ObstructionSet {
    /// Canonicalizes and deduplicates the given systems.
    pub fn new<I: IntoIterator<Item = SetSystem>>(systems: I) -> Result<ObstructionSet> {
        let mut set = ObstructionSet {
            entries: Vec::new(),
            index: HashMap::new(),
            sizes: BTreeSet::new(),
        };
        for s in systems {
            set.insert(&s)?;
        }
        Ok(set)
    }

    /// All twisted duals of the given systems, up to isomorphism.
    pub fn from_orbits<'a, I: IntoIterator<Item = &'a SetSystem>>(seeds: I) -> Result<ObstructionSet> {
        let mut set = ObstructionSet::new([])?;
        for seed in seeds {
            for m in orbit(seed, true)?.members {
                set.insert(&m)?;
            }
        }
        Ok(set)
    }

    fn insert(&mut self, s: &SetSystem) -> Result<()> {
        let k = canonical_key(s)?;
        if !self.index.contains_key(&k) {
            self.sizes.insert(k.size);
            self.index.insert(k.clone(), self.entries.len());
            self.entries.push(k.to_system());
        }
        Ok(())
    }

    pub fn entries(&self) -> &[SetSystem] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, s: &SetSystem) -> Result<Option<usize>> {
        if !self.sizes.contains(&s.size()) {
            return Ok(None);
        }
        Ok(self.index.get(&canonical_key(s)?).copied())
    }
}

/// A 3-minor isomorphic to an obstruction-set entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogWitness {
    pub x: Subset,
    pub y: Subset,
    pub z: Subset,
    pub index: usize,
    pub minor: SetSystem,
}

/// Finds a 3-minor of `s` (possibly `s` itself) isomorphic to an entry of
/// `catalog`. Only triples that leave a catalog-sized ground set are tried.
pub fn has_catalog_3_minor(s: &SetSystem, catalog: &ObstructionSet) -> Result<Option<CatalogWitness>> {
    if !s.is_proper() {
        return Err(Error::Improper);
    }
    let n = s.size();
    for &k in catalog.sizes.iter().filter(|&&k| k <= n) {
        if k > CANON_MAX {
            return Err(Error::TooLarge {
                what: "3-minor canonicalization",
                size: k,
                max: CANON_MAX,
            });
        }
        for r in 0..(1u32 << n) {
            let removed = Subset(r);
            if removed.len() != n - k {
                continue;
            }
            for (x, y, z) in assignments(removed) {
                if let Some(m) = s.three_minor_unchecked(x, y, z) {
                    if let Some(index) = catalog.lookup(&m)? {
                        return Ok(Some(CatalogWitness {
                            x,
                            y,
                            z,
                            index,
                            minor: m,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The twisted duals of `S3`, checked against the tabulated list.
pub fn s3_obstructions() -> &'static ObstructionSet {
    static SET: OnceLock<ObstructionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ObstructionSet::new(catalog::s3_twisted_duals().iter().cloned()).expect("S3 twisted duals")
    })
}

/// vf-safe delta-matroid iff no 3-minor is a twisted dual of `S3`.
pub fn is_vf_safe_via_obstruction(s: &SetSystem) -> Result<bool> {
    Ok(has_catalog_3_minor(s, s3_obstructions())?.is_none())
}
