//! Delta-matroid axiom checks.

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::system::SetSystem;

/// A triple `(X, Y, u)` violating symmetric exchange: `X, Y` feasible,
/// `u ∈ X△Y`, and no `v ∈ X△Y` makes `X△{u,v}` feasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub x: Subset,
    pub y: Subset,
    pub u: usize,
}

/// Membership test tuned to the ground size.
pub(crate) enum Membership<'a> {
    Bits(Vec<u64>),
    Sorted(&'a [Subset]),
}

impl<'a> Membership<'a> {
    pub(crate) fn new(s: &'a SetSystem) -> Membership<'a> {
        let n = s.size();
        if n <= 16 {
            let mut bits = vec![0u64; (1usize << n).div_ceil(64)];
            for f in s.feasible() {
                bits[f.0 as usize / 64] |= 1 << (f.0 % 64);
            }
            Membership::Bits(bits)
        } else {
            Membership::Sorted(s.feasible())
        }
    }

    #[inline]
    pub(crate) fn contains(&self, f: Subset) -> bool {
        match self {
            Membership::Bits(b) => b[f.0 as usize / 64] >> (f.0 % 64) & 1 == 1,
            Membership::Sorted(v) => v.binary_search(&f).is_ok(),
        }
    }
}

/// Checks the symmetric exchange axiom, returning the first violation in
/// `(X, Y, u)` order (masks ascending, then element position).
pub fn check_symmetric_exchange(s: &SetSystem) -> Result<Option<ExchangeWitness>> {
    if !s.is_proper() {
        return Err(Error::Improper);
    }
    Ok(first_violation(s))
}

pub(crate) fn first_violation(s: &SetSystem) -> Option<ExchangeWitness> {
    let member = Membership::new(s);
    for &x in s.feasible() {
        for &y in s.feasible() {
            let d = x ^ y;
            for u in d.iter() {
                let xu = x.toggled(u);
                if !d.iter().any(|v| member.contains(xu ^ Subset(if v == u { 0 } else { 1 << v }))) {
                    return Some(ExchangeWitness { x, y, u });
                }
            }
        }
    }
    None
}

/// Proper and satisfies symmetric exchange.
pub fn is_delta_matroid(s: &SetSystem) -> bool {
    s.is_proper() && first_violation(s).is_none()
}

/// All feasible sets have sizes of one parity.
pub fn is_even(s: &SetSystem) -> bool {
    match s.feasible().first() {
        None => true,
        Some(f) => {
            let p = f.len() % 2;
            s.feasible().iter().all(|g| g.len() % 2 == p)
        }
    }
}

/// The empty set is feasible.
pub fn is_normal(s: &SetSystem) -> bool {
    s.feasible().first() == Some(&Subset::EMPTY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::subset::GroundSet;
    use proptest::prelude::*;

    #[test]
    fn exchange_examples() {
        let d3 = catalog::get("D3").unwrap();
        assert_eq!(check_symmetric_exchange(&d3).unwrap(), None);
        let s3 = catalog::get("S3").unwrap();
        assert_eq!(
            check_symmetric_exchange(&s3).unwrap(),
            Some(ExchangeWitness {
                x: Subset::EMPTY,
                y: Subset(0b111),
                u: 0
            })
        );
        let u12 = SetSystem::from_words("ab", &["a", "b"]).unwrap();
        assert_eq!(check_symmetric_exchange(&u12).unwrap(), None);
        let improper = SetSystem::new(GroundSet::positional(2), []).unwrap();
        assert_eq!(check_symmetric_exchange(&improper), Err(Error::Improper));
    }

    #[test]
    fn parity_examples() {
        let s3 = catalog::get("S3").unwrap();
        assert!(is_normal(&s3));
        assert!(!is_even(&s3));
        let dp3 = SetSystem::from_words("abc", &["", "ab", "bc"]).unwrap();
        assert!(is_normal(&dp3) && is_even(&dp3));
        let a = SetSystem::from_words("a", &["a"]).unwrap();
        assert!(!is_normal(&a));
    }

    /// Brute-force reading of the axiom, independent of the witness order.
    fn exchange_oracle(s: &SetSystem) -> bool {
        let fam = s.feasible();
        fam.iter().all(|&x| {
            fam.iter().all(|&y| {
                (x ^ y).iter().all(|u| {
                    (x ^ y).iter().any(|v| {
                        let t = if u == v { x.toggled(u) } else { x.toggled(u).toggled(v) };
                        fam.contains(&t)
                    })
                })
            })
        })
    }

    #[test]
    fn all_three_element_families() {
        let g = GroundSet::positional(3);
        let mut dms = 0;
        for code in 1u32..256 {
            let s = SetSystem::new(g.clone(), (0..8).filter(|m| code >> m & 1 == 1).map(Subset)).unwrap();
            let dm = is_delta_matroid(&s);
            assert_eq!(dm, exchange_oracle(&s), "{s}");
            if dm {
                dms += 1;
                for a in 0..8 {
                    let t = s.twist(Subset(a)).unwrap();
                    assert!(is_delta_matroid(&t));
                    assert_eq!(is_even(&t), is_even(&s));
                }
                for &f in s.feasible() {
                    assert!(is_normal(&s.twist(f).unwrap()));
                }
                for e in 0..3 {
                    assert!(is_delta_matroid(&s.delete(e).unwrap()));
                    assert!(is_delta_matroid(&s.contract(e).unwrap()));
                }
            }
        }
        assert!(dms > 0 && dms < 255);
    }

    proptest! {
        #[test]
        fn witness_is_a_real_violation(
            n in 1usize..=5,
            fam in proptest::collection::btree_set(0u32..32, 1..12),
        ) {
            let fam: Vec<Subset> = fam.into_iter().map(|m| Subset(m & ((1 << n) - 1))).collect();
            let s = SetSystem::new(GroundSet::positional(n), fam).unwrap();
            match check_symmetric_exchange(&s).unwrap() {
                None => prop_assert!(exchange_oracle(&s)),
                Some(w) => {
                    prop_assert!(s.is_feasible(w.x) && s.is_feasible(w.y));
                    let d = w.x ^ w.y;
                    prop_assert!(d.contains(w.u));
                    for v in d.iter() {
                        let t = if v == w.u { w.x.toggled(v) } else { w.x.toggled(v).toggled(w.u) };
                        prop_assert!(!s.is_feasible(t));
                    }
                }
            }
        }

        #[test]
        fn minors_of_delta_matroids_agree_in_any_order(
            n in 2usize..=5,
            fam in proptest::collection::btree_set(0u32..32, 1..16),
        ) {
            let fam: Vec<Subset> = fam.into_iter().map(|m| Subset(m & ((1 << n) - 1))).collect();
            let s = SetSystem::new(GroundSet::positional(n), fam).unwrap();
            prop_assume!(is_delta_matroid(&s));
            // delete element 0, contract element 1, in both orders
            let one = s.delete(0).unwrap().contract(0).unwrap();
            let two = s.contract(1).unwrap().delete(0).unwrap();
            prop_assert_eq!(&one, &two);
            prop_assert!(is_delta_matroid(&one));
        }
    }
}
