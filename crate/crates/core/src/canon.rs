//! Canonical forms and isomorphism for set systems.
//!
//! Up to [`BRUTE_FORCE_MAX`] elements the canonical family is the
//! lexicographically least sorted mask list over every relabeling. Larger
//! ground sets (up to [`CANON_MAX`]) use individualization–refinement: the
//! least code over the leaves of an equivariant search tree, with branches
//! cut when a transposition of two candidates is an automorphism.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};
use crate::system::SetSystem;

/// Largest ground set accepted for canonicalization.
pub const CANON_MAX: usize = 10;
/// Largest ground set canonicalized by exhaustive permutation search.
pub const BRUTE_FORCE_MAX: usize = 5;

/// Isomorphism-class key: ground size plus the canonical family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    pub size: usize,
    pub family: Vec<Subset>,
}

impl CanonKey {
    pub fn to_system(&self) -> SetSystem {
        SetSystem::from_sorted(positional_ground(self.size), self.family.clone())
    }
}

pub(crate) fn positional_ground(n: usize) -> Arc<GroundSet> {
    static GROUNDS: OnceLock<Vec<Arc<GroundSet>>> = OnceLock::new();
    let grounds = GROUNDS.get_or_init(|| {
        (0..=crate::subset::MAX_GROUND)
            .map(|k| Arc::new(GroundSet::positional(k)))
            .collect()
    });
    Arc::clone(&grounds[n])
}

pub fn canonical_key(s: &SetSystem) -> Result<CanonKey> {
    let n = s.size();
    if n > CANON_MAX {
        return Err(Error::TooLarge {
            what: "exact canonicalization",
            size: n,
            max: CANON_MAX,
        });
    }
    let family = if n <= BRUTE_FORCE_MAX {
        brute_force_family(n, s.feasible())
    } else {
        refined_family(n, s.feasible())
    };
    Ok(CanonKey { size: n, family })
}

/// The canonical representative, labeled positionally (`a, b, c, ...`).
pub fn canonical_form(s: &SetSystem) -> Result<SetSystem> {
    Ok(canonical_key(s)?.to_system())
}

pub fn is_isomorphic(a: &SetSystem, b: &SetSystem) -> Result<bool> {
    if a.size() != b.size() || a.feasible().len() != b.feasible().len() {
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}

/// Subset images under every permutation of `n` points, as lookup tables.
fn permutation_tables(n: usize) -> &'static [Vec<u32>] {
    static TABLES: OnceLock<Vec<Vec<Vec<u32>>>> = OnceLock::new();
    &TABLES.get_or_init(|| {
        (0..=BRUTE_FORCE_MAX)
            .map(|k| {
                all_permutations(k)
                    .into_iter()
                    .map(|p| image_table(&p))
                    .collect()
            })
            .collect()
    })[n]
}

fn image_table(perm: &[usize]) -> Vec<u32> {
    let n = perm.len();
    let mut t = vec![0u32; 1 << n];
    for m in 1..(1usize << n) {
        let low = m.trailing_zeros() as usize;
        t[m] = t[m & (m - 1)] | 1 << perm[low];
    }
    t
}

pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute(&mut p, 0, &mut out);
    out
}

fn permute(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, out);
        p.swap(k, i);
    }
}

fn brute_force_family(n: usize, fam: &[Subset]) -> Vec<Subset> {
    let mut best: Option<Vec<Subset>> = None;
    let mut buf = Vec::with_capacity(fam.len());
    for table in permutation_tables(n) {
        buf.clear();
        buf.extend(fam.iter().map(|f| Subset(table[f.0 as usize])));
        buf.sort_unstable();
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}

/// Global lexicographic minimum over all `n!` relabelings, for any `n`.
/// Exponential; used to check the faster paths.
pub fn brute_force_key(s: &SetSystem) -> CanonKey {
    let n = s.size();
    let family = all_permutations(n)
        .iter()
        .map(|p| {
            let t = image_table(p);
            let mut v: Vec<Subset> = s.feasible().iter().map(|f| Subset(t[f.0 as usize])).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default();
    CanonKey { size: n, family }
}

type Partition = Vec<Vec<usize>>;

fn refined_family(n: usize, fam: &[Subset]) -> Vec<Subset> {
    let mut root: Partition = vec![(0..n).collect()];
    if n == 0 {
        root.clear();
    }
    refine(&mut root, fam);
    let mut best = None;
    search(&root, fam, &mut best);
    best.unwrap_or_default()
}

/// Splits cells by how each element meets the feasible sets, measured
/// against the current cells, until stable.
fn refine(p: &mut Partition, fam: &[Subset]) {
    loop {
        let cell_masks: Vec<u32> = p
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &i| m | 1 << i))
            .collect();
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(p.len());
        for cell in p.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<Vec<u8>>, usize)> = cell
                .iter()
                .map(|&e| {
                    let mut sig: Vec<Vec<u8>> = fam
                        .iter()
                        .map(|f| {
                            let mut row = Vec::with_capacity(cell_masks.len() + 1);
                            row.push(f.contains(e) as u8);
                            row.extend(cell_masks.iter().map(|m| (f.0 & m).count_ones() as u8));
                            row
                        })
                        .collect();
                    sig.sort_unstable();
                    (sig, e)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            let mut groups = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, e)| *e).collect());
                    start = i;
                    groups += 1;
                }
            }
            changed |= groups > 1;
        }
        *p = next;
        if !changed {
            return;
        }
    }
}

fn swap_is_automorphism(fam: &[Subset], u: usize, w: usize) -> bool {
    let mut img: Vec<Subset> = fam
        .iter()
        .map(|&f| {
            if f.contains(u) != f.contains(w) {
                f.toggled(u).toggled(w)
            } else {
                f
            }
        })
        .collect();
    img.sort_unstable();
    img == fam
}

fn search(p: &Partition, fam: &[Subset], best: &mut Option<Vec<Subset>>) {
    let Some(ci) = p.iter().position(|c| c.len() > 1) else {
        let mut perm = vec![0usize; p.len()];
        for (pos, cell) in p.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let mut code: Vec<Subset> = fam
            .iter()
            .map(|&f| crate::system::map_subset(f, &perm))
            .collect();
        code.sort_unstable();
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    };
    let cell = &p[ci];
    let mut tried: Vec<usize> = Vec::new();
    for &u in cell {
        if tried.iter().any(|&w| swap_is_automorphism(fam, u, w)) {
            continue;
        }
        tried.push(u);
        let mut child: Partition = Vec::with_capacity(p.len() + 1);
        child.extend_from_slice(&p[..ci]);
        child.push(vec![u]);
        child.push(cell.iter().copied().filter(|&x| x != u).collect());
        child.extend_from_slice(&p[ci + 1..]);
        refine(&mut child, fam);
        search(&child, fam, best);
    }
}
