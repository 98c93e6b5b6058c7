//! Excluded-3-minor tests for binary and ribbon-graphic delta-matroids.

use std::sync::OnceLock;

use super::circle::circle_obstructions;
use super::delta_matroid_of_graph;
use crate::catalog;
use crate::error::{Error, Result};
use crate::system::SetSystem;
use crate::twisted::{has_catalog_3_minor, CatalogWitness, ObstructionSet};

/// Largest ground set accepted by [`is_ribbon_graphic`].
pub const RIBBON_MAX: usize = 8;

/// A 3-minor found in the twisted-dual orbit of a named obstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedWitness {
    pub obstruction: String,
    pub witness: CatalogWitness,
}

struct Tier {
    name: String,
    size: usize,
    set: OnceLock<Result<ObstructionSet>>,
    seed: fn() -> Result<SetSystem>,
}

impl Tier {
    fn set(&self) -> Result<&ObstructionSet> {
        self.set
            .get_or_init(|| ObstructionSet::from_orbits([&(self.seed)()?]))
            .as_ref()
            .map_err(Clone::clone)
    }
}

fn graph_seed(i: usize) -> Result<SetSystem> {
    Ok(delta_matroid_of_graph(&circle_obstructions()?[i]))
}

fn tiers() -> &'static [Tier] {
    static TIERS: OnceLock<Vec<Tier>> = OnceLock::new();
    TIERS.get_or_init(|| {
        let tier = |name: &str, size, seed| Tier {
            name: name.to_string(),
            size,
            set: OnceLock::new(),
            seed,
        };
        vec![
            tier("B1", 3, || catalog::get("B1")),
            tier("S3", 3, || catalog::get("S3")),
            tier("D(G1)", 6, || graph_seed(0)),
            tier("D(G2)", 7, || graph_seed(1)),
            tier("D(G3)", 8, || graph_seed(2)),
        ]
    })
}

/// Searches the orbits of the named obstructions in order, skipping those
/// larger than `s`.
fn find(s: &SetSystem, names: &[&str]) -> Result<Option<NamedWitness>> {
    for t in tiers().iter().filter(|t| names.contains(&t.name.as_str())) {
        if t.size > s.size() {
            continue;
        }
        if let Some(witness) = has_catalog_3_minor(s, t.set()?)? {
            return Ok(Some(NamedWitness {
                obstruction: t.name.clone(),
                witness,
            }));
        }
    }
    Ok(None)
}

/// A 3-minor that is a twisted dual of `B1` or `S3`, if any.
pub fn binary_witness(s: &SetSystem) -> Result<Option<NamedWitness>> {
    find(s, &["B1", "S3"])
}

/// Binary delta-matroid iff no 3-minor is a twisted dual of `B1` or `S3`.
pub fn is_binary_via_obstruction(s: &SetSystem) -> Result<bool> {
    Ok(binary_witness(s)?.is_none())
}

/// A 3-minor that is a twisted dual of `B1`, `S3`, `D(G1)`, `D(G2)` or
/// `D(G3)`, if any.
pub fn ribbon_witness(s: &SetSystem) -> Result<Option<NamedWitness>> {
    if s.size() > RIBBON_MAX {
        return Err(Error::TooLarge {
            what: "ribbon-graphic test",
            size: s.size(),
            max: RIBBON_MAX,
        });
    }
    find(s, &["B1", "S3", "D(G1)", "D(G2)", "D(G3)"])
}

/// Ribbon-graphic delta-matroid iff no 3-minor is a twisted dual of `B1`,
/// `S3` or `D(G)` for one of the three circle obstructions `G`.
pub fn is_ribbon_graphic(s: &SetSystem) -> Result<bool> {
    Ok(ribbon_witness(s)?.is_none())
}

/// Number of isomorphism classes in each obstruction orbit, by name.
pub fn obstruction_orbit_sizes(max_size: usize) -> Result<Vec<(String, usize)>> {
    tiers()
        .iter()
        .filter(|t| t.size <= max_size)
        .map(|t| Ok((t.name.clone(), t.set()?.len())))
        .collect()
}
