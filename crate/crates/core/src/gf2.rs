//! Symmetric matrices over GF(2), principal pivot transforms, and the
//! basic binary delta-matroids they represent.

use std::fmt;
use std::sync::Arc;

use crate::delta::first_violation;
use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset, MAX_GROUND};
use crate::system::SetSystem;

/// Largest matrix accepted by [`delta_matroid_of_matrix`] (`2^n` determinants).
pub const MATRIX_DM_MAX: usize = 20;

/// A symmetric GF(2) matrix. Row `i` is a bitmask over column positions;
/// diagonal entries are loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricBinaryMatrix {
    labels: Arc<GroundSet>,
    rows: Vec<u32>,
}

impl SymmetricBinaryMatrix {
    pub fn new(labels: GroundSet, rows: Vec<u32>) -> Result<SymmetricBinaryMatrix> {
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, got {}", rows.len())));
        }
        for (i, &r) in rows.iter().enumerate() {
            Subset(r).check(n)?;
            for j in 0..n {
                if (r >> j & 1) != (rows[j] >> i & 1) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(SymmetricBinaryMatrix {
            labels: Arc::new(labels),
            rows,
        })
    }

    /// Builds a matrix from rows of `0`/`1` characters.
    pub fn from_strings<S: AsRef<str>>(labels: GroundSet, rows: &[S]) -> Result<SymmetricBinaryMatrix> {
        let n = labels.len();
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::Parse(format!("row {r:?} should have {n} entries")));
            }
            let mut m = 0u32;
            for (j, c) in r.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m |= 1 << j,
                    _ => return Err(Error::Parse(format!("bad matrix entry {c:?}"))),
                }
            }
            out.push(m);
        }
        SymmetricBinaryMatrix::new(labels, out)
    }

    pub fn identity(labels: GroundSet) -> SymmetricBinaryMatrix {
        let rows = (0..labels.len()).map(|i| 1u32 << i).collect();
        SymmetricBinaryMatrix {
            labels: Arc::new(labels),
            rows,
        }
    }

    pub fn zero(labels: GroundSet) -> SymmetricBinaryMatrix {
        let rows = vec![0; labels.len()];
        SymmetricBinaryMatrix {
            labels: Arc::new(labels),
            rows,
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &GroundSet {
        &self.labels
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row_string(&self, i: usize) -> String {
        (0..self.size())
            .map(|j| if self.entry(i, j) { '1' } else { '0' })
            .collect()
    }

    /// Whether `A[X]` has determinant 1. The empty submatrix is nonsingular.
    pub fn principal_nonsingular(&self, x: Subset) -> Result<bool> {
        x.check(self.size())?;
        Ok(nonsingular(&self.rows, x))
    }

    /// The principal pivot transform `A*X`.
    pub fn ppt(&self, x: Subset) -> Result<SymmetricBinaryMatrix> {
        x.check(self.size())?;
        let inv = invert_principal(&self.rows, x).ok_or(Error::SingularPivot)?;
        let n = self.size();
        let xm = x.0;
        let mut out = vec![0u32; n];
        // row k of P⁻¹Q, for k in X
        let q = |k: usize| self.rows[k] & !xm;
        for i in 0..n {
            out[i] = if x.contains(i) {
                let pq = Subset(inv[i]).iter().fold(0, |acc, k| acc ^ q(k));
                inv[i] | pq
            } else {
                let rp = Subset(self.rows[i] & xm).iter().fold(0, |acc, k| acc ^ inv[k]);
                let s = Subset(rp).iter().fold(self.rows[i] & !xm, |acc, k| acc ^ q(k));
                rp | s
            };
        }
        Ok(SymmetricBinaryMatrix {
            labels: Arc::clone(&self.labels),
            rows: out,
        })
    }
}

/// Gaussian elimination on the rows and columns in `x`.
pub(crate) fn nonsingular(rows: &[u32], x: Subset) -> bool {
    let mut buf = [0u32; MAX_GROUND];
    let mut k = 0;
    for i in x.iter() {
        buf[k] = rows[i] & x.0;
        k += 1;
    }
    let m = &mut buf[..k];
    for (r, c) in x.iter().enumerate() {
        let Some(p) = (r..k).find(|&i| m[i] >> c & 1 == 1) else {
            return false;
        };
        m.swap(r, p);
        let pivot = m[r];
        for row in m[r + 1..].iter_mut() {
            if *row >> c & 1 == 1 {
                *row ^= pivot;
            }
        }
    }
    true
}

/// Inverse of `A[X]` by Gauss-Jordan. Entry `inv[i]` is row `i` of the
/// inverse (a mask inside `x`); other entries are zero.
fn invert_principal(rows: &[u32], x: Subset) -> Option<Vec<u32>> {
    let idx: Vec<usize> = x.iter().collect();
    let mut left: Vec<u32> = idx.iter().map(|&i| rows[i] & x.0).collect();
    let mut right: Vec<u32> = idx.iter().map(|&i| 1 << i).collect();
    for (r, &c) in idx.iter().enumerate() {
        let p = (r..idx.len()).find(|&i| left[i] >> c & 1 == 1)?;
        left.swap(r, p);
        right.swap(r, p);
        for i in 0..idx.len() {
            if i != r && left[i] >> c & 1 == 1 {
                left[i] ^= left[r];
                right[i] ^= right[r];
            }
        }
    }
    let mut inv = vec![0u32; rows.len()];
    for (r, &c) in idx.iter().enumerate() {
        inv[c] = right[r];
    }
    Some(inv)
}

impl fmt::Debug for SymmetricBinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymmetricBinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.size()).map(|i| self.row_string(i)).collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// `D(A)`: the index sets of nonsingular principal submatrices.
pub fn delta_matroid_of_matrix(a: &SymmetricBinaryMatrix) -> SetSystem {
    let n = a.size();
    assert!(n <= MATRIX_DM_MAX, "matrix too large for D(A)");
    let feasible = (0..1u32 << n)
        .map(Subset)
        .filter(|&x| nonsingular(&a.rows, x))
        .collect();
    SetSystem::from_sorted(Arc::clone(&a.labels), feasible)
}

/// The matrix determined by the feasible sets of size at most two.
pub fn reconstruct_basic_matrix(d: &SetSystem) -> Result<SymmetricBinaryMatrix> {
    if !crate::delta::is_normal(d) {
        return Err(Error::NotNormal);
    }
    let n = d.size();
    let diag: Vec<bool> = (0..n).map(|v| d.is_feasible(Subset::singleton(v))).collect();
    let mut rows = vec![0u32; n];
    for u in 0..n {
        if diag[u] {
            rows[u] |= 1 << u;
        }
        for v in u + 1..n {
            let pair = d.is_feasible(Subset::singleton(u).with(v));
            if pair ^ (diag[u] && diag[v]) {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
    }
    Ok(SymmetricBinaryMatrix {
        labels: Arc::new(d.ground().clone()),
        rows,
    })
}

/// `D = D(A)` for some symmetric GF(2) matrix `A`.
pub fn is_basic_binary(d: &SetSystem) -> Result<bool> {
    if !d.is_proper() {
        return Err(Error::Improper);
    }
    if !crate::delta::is_normal(d) {
        return Ok(false);
    }
    Ok(delta_matroid_of_matrix(&reconstruct_basic_matrix(d)?) == *d)
}

/// Outcome of the binary test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinaryCheck {
    /// `D*F` is basic binary, represented by `matrix`.
    Binary { twist: Subset, matrix: SymmetricBinaryMatrix },
    /// `D*F` is not basic binary for the least feasible `F`.
    NotBinary { twist: Subset },
    NotDeltaMatroid,
}

impl BinaryCheck {
    pub fn is_binary(&self) -> bool {
        matches!(self, BinaryCheck::Binary { .. })
    }

    pub fn reason(&self) -> &'static str {
        match self {
            BinaryCheck::Binary { .. } => "basic binary after twist",
            BinaryCheck::NotBinary { .. } => "twist at least feasible set is not basic binary",
            BinaryCheck::NotDeltaMatroid => "not a delta-matroid",
        }
    }
}

/// Twists at the least feasible set and tests for basic binary.
pub fn binary_check(d: &SetSystem) -> Result<BinaryCheck> {
    if !d.is_proper() {
        return Err(Error::Improper);
    }
    if first_violation(d).is_some() {
        return Ok(BinaryCheck::NotDeltaMatroid);
    }
    let f = d.feasible()[0];
    let t = d.twist_unchecked(f);
    let matrix = reconstruct_basic_matrix(&t)?;
    if delta_matroid_of_matrix(&matrix) == t {
        Ok(BinaryCheck::Binary { twist: f, matrix })
    } else {
        Ok(BinaryCheck::NotBinary { twist: f })
    }
}

/// A twist of a basic binary delta-matroid.
pub fn is_binary(d: &SetSystem) -> Result<bool> {
    Ok(binary_check(d)?.is_binary())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::delta::{is_delta_matroid, is_even, is_normal};
    use crate::twisted::is_vf_safe;
    use proptest::prelude::*;

    fn mat(rows: &[&str]) -> SymmetricBinaryMatrix {
        SymmetricBinaryMatrix::from_strings(GroundSet::positional(rows.len()), rows).unwrap()
    }

    fn sys(labels: &str, sets: &[&str]) -> SetSystem {
        SetSystem::from_words(labels, sets).unwrap()
    }

    /// Determinant over GF(2) as the permanent mod 2.
    fn det_oracle(a: &SymmetricBinaryMatrix, x: Subset) -> bool {
        let idx: Vec<usize> = x.iter().collect();
        crate::canon::all_permutations(idx.len())
            .iter()
            .filter(|p| (0..idx.len()).all(|r| a.entry(idx[r], idx[p[r]])))
            .count()
            % 2
            == 1
    }

    /// All symmetric matrices on `n` points.
    fn all_matrices(n: usize) -> impl Iterator<Item = SymmetricBinaryMatrix> {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        (0..1u64 << cells.len()).map(move |code| {
            let mut rows = vec![0u32; n];
            for (k, &(i, j)) in cells.iter().enumerate() {
                if code >> k & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            SymmetricBinaryMatrix::new(GroundSet::positional(n), rows).unwrap()
        })
    }

    fn arb_matrix(max_n: usize) -> impl Strategy<Value = SymmetricBinaryMatrix> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n + 1) / 2).prop_map(move |bits| {
                let mut rows = vec![0u32; n];
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        if bits[k] {
                            rows[i] |= 1 << j;
                            rows[j] |= 1 << i;
                        }
                        k += 1;
                    }
                }
                SymmetricBinaryMatrix::new(GroundSet::positional(n), rows).unwrap()
            })
        })
    }

    #[test]
    fn rejects_asymmetric() {
        let g = GroundSet::positional(2);
        assert_eq!(
            SymmetricBinaryMatrix::from_strings(g, &["01", "00"]),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn nonsingular_examples() {
        let swap = mat(&["01", "10"]);
        assert!(swap.principal_nonsingular(Subset(0b11)).unwrap());
        assert!(swap.principal_nonsingular(Subset::EMPTY).unwrap());
        assert!(!swap.principal_nonsingular(Subset(0b01)).unwrap());
        assert!(swap.principal_nonsingular(Subset(0b100)).is_err());
        let k3 = mat(&["011", "101", "110"]);
        assert!(!k3.principal_nonsingular(Subset(0b111)).unwrap());
    }

    #[test]
    fn determinant_matches_permanent() {
        for n in 0..=4 {
            for a in all_matrices(n) {
                for x in 0..1u32 << n {
                    assert_eq!(nonsingular(a.rows(), Subset(x)), det_oracle(&a, Subset(x)), "{a} {x}");
                }
            }
        }
    }

    #[test]
    fn ppt_examples() {
        let i2 = mat(&["10", "01"]);
        assert_eq!(i2.ppt(Subset(0b01)).unwrap(), i2);
        assert_eq!(mat(&["11", "10"]).ppt(Subset(0b01)).unwrap(), mat(&["11", "11"]));
        let swap = mat(&["01", "10"]);
        assert_eq!(swap.ppt(Subset(0b11)).unwrap(), swap);
        assert_eq!(swap.ppt(Subset(0b01)), Err(Error::SingularPivot));
    }

    #[test]
    fn matrix_delta_matroid_examples() {
        assert_eq!(delta_matroid_of_matrix(&mat(&["1"])), sys("a", &["", "a"]));
        assert_eq!(delta_matroid_of_matrix(&mat(&["01", "10"])), sys("ab", &["", "ab"]));
        assert_eq!(delta_matroid_of_matrix(&mat(&["11", "11"])), sys("ab", &["", "a", "b"]));
        let path = mat(&["010", "101", "010"]);
        assert_eq!(delta_matroid_of_matrix(&path), sys("abc", &["", "ab", "bc"]));
    }

    #[test]
    fn reconstruction_examples() {
        let d3 = catalog::get("D3").unwrap();
        let i3 = reconstruct_basic_matrix(&d3).unwrap();
        assert_eq!(i3.rows(), &[1, 2, 4]);
        assert_ne!(delta_matroid_of_matrix(&i3), d3);
        assert_eq!(reconstruct_basic_matrix(&sys("a", &[""])).unwrap().rows(), &[0]);
        assert_eq!(reconstruct_basic_matrix(&sys("a", &["a"])), Err(Error::NotNormal));
    }

    #[test]
    fn reconstruction_round_trips() {
        for n in 0..=5 {
            for a in all_matrices(n) {
                let d = delta_matroid_of_matrix(&a);
                assert!(is_delta_matroid(&d) && is_normal(&d));
                assert_eq!(reconstruct_basic_matrix(&d).unwrap(), a);
                assert!(is_basic_binary(&d).unwrap());
                let no_singletons = (0..n).all(|v| !d.is_feasible(Subset::singleton(v)));
                assert_eq!(is_even(&d), no_singletons);
            }
        }
    }

    #[test]
    fn binary_examples() {
        assert!(!is_binary(&catalog::get("B1").unwrap()).unwrap());
        assert!(!is_binary(&catalog::get("D3").unwrap()).unwrap());
        assert_eq!(binary_check(&catalog::get("S3").unwrap()).unwrap(), BinaryCheck::NotDeltaMatroid);
        let t = sys("abc", &["c", "abc"]);
        let check = binary_check(&t).unwrap();
        assert!(check.is_binary());
        assert!(is_binary(&sys("ab", &["a", "b"])).unwrap());
        let improper = SetSystem::new(GroundSet::positional(1), []).unwrap();
        assert_eq!(is_binary(&improper), Err(Error::Improper));
    }

    #[test]
    fn binary_is_twist_invariant_and_vf_safe_on_three_elements() {
        let g = GroundSet::positional(3);
        for code in 1u32..256 {
            let s = SetSystem::new(g.clone(), (0..8).filter(|m| code >> m & 1 == 1).map(Subset)).unwrap();
            let b = is_binary(&s).unwrap();
            if b {
                assert!(is_vf_safe(&s).unwrap(), "{s}");
                for e in 0..3 {
                    assert!(is_binary(&s.twist(Subset::singleton(e)).unwrap()).unwrap());
                    assert!(is_binary(&s.loop_complement(Subset::singleton(e)).unwrap()).unwrap());
                    assert!(is_binary(&s.delete(e).unwrap()).unwrap());
                    assert!(is_binary(&s.contract(e).unwrap()).unwrap());
                    assert!(is_binary(&s.penrose_contract(e).unwrap()).unwrap());
                }
            }
            // any feasible twist gives the same answer
            if is_delta_matroid(&s) {
                for &f in s.feasible() {
                    assert_eq!(is_basic_binary(&s.twist(f).unwrap()).unwrap(), b);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn tucker(a in arb_matrix(7)) {
            let n = a.size();
            let d = delta_matroid_of_matrix(&a);
            for &x in d.feasible() {
                let p = a.ppt(x).unwrap();
                for y in 0..1u32 << n {
                    prop_assert_eq!(
                        p.principal_nonsingular(Subset(y)).unwrap(),
                        a.principal_nonsingular(x ^ Subset(y)).unwrap()
                    );
                }
                prop_assert_eq!(delta_matroid_of_matrix(&p), d.twist(x).unwrap());
                prop_assert_eq!(p.ppt(x).unwrap(), a.clone());
            }
        }
    }
}
