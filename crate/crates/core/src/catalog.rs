//! Named set systems: `D3`, the chain `S2..S8`, the excluded minors
//! `T1..T8` for delta-matroids, Bouchet's binary excluded minors `B1..B5`,
//! the hand-listed twisted duals of `S3`, and the identities linking them.
//!
//! `S_i` is labeled by the first `i` letters, so `S3` is over `{a,b,c}` like
//! every other three-element entry.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::canon::{canonical_key, CanonKey};
use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};
use crate::system::SetSystem;
use crate::twisted;

/// A named system and where it comes from.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub system: SetSystem,
    pub source: &'static str,
}

const WORD_ENTRIES: &[(&str, &str, &[&str], &str)] = &[
    ("D3", "abc", &["", "a", "b", "c", "ab", "ac", "bc"], "all subsets of {a,b,c} but {a,b,c}"),
    ("T1", "abc", &["", "ab", "abc"], "excluded minor for delta-matroids"),
    ("T2", "abc", &["", "ab", "ac", "abc"], "excluded minor for delta-matroids"),
    ("T3", "abc", &["", "a", "ab", "abc"], "excluded minor for delta-matroids"),
    ("T4", "abc", &["", "a", "ab", "ac", "abc"], "excluded minor for delta-matroids"),
    ("T5", "abcd", &["", "ab", "abcd"], "excluded minor for delta-matroids"),
    ("T6", "abcd", &["", "ab", "ac", "abcd"], "excluded minor for delta-matroids"),
    ("T7", "abcd", &["", "ab", "ac", "ad", "abcd"], "excluded minor for delta-matroids"),
    ("T8", "abcd", &["", "a", "ab", "ac", "ad", "abcd"], "excluded minor for delta-matroids"),
    ("B1", "abc", &["", "ab", "ac", "bc", "abc"], "excluded minor for binary delta-matroids"),
    ("B2", "abc", &["", "a", "b", "c", "ab", "ac", "bc"], "excluded minor for binary delta-matroids"),
    ("B3", "abc", &["", "b", "c", "ab", "ac", "abc"], "excluded minor for binary delta-matroids"),
    ("B4", "abcd", &["", "ab", "ac", "ad", "bc", "bd", "cd"], "excluded minor for binary delta-matroids"),
    ("B5", "abcd", &["", "ab", "ad", "bc", "cd", "abcd"], "excluded minor for binary delta-matroids"),
];

/// Catalog names accepted by [`get`].
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = vec!["D3".into()];
    v.extend((2..=8).map(|i| format!("S{i}")));
    v.extend(WORD_ENTRIES[1..].iter().map(|e| e.0.to_string()));
    v
}

/// `S_i = ({e1..ei}, {∅, {e1..ei}})` with letters for labels.
pub fn chain(i: usize) -> Result<SetSystem> {
    if !(2..=8).contains(&i) {
        return Err(Error::UnknownCatalogName(format!("S{i}")));
    }
    SetSystem::new(GroundSet::positional(i), [Subset::EMPTY, Subset::full(i)])
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    if let Some(rest) = name.strip_prefix('S') {
        if let Ok(i) = rest.parse::<usize>() {
            return Ok(CatalogEntry {
                name: name.to_string(),
                system: chain(i)?,
                source: "the chain S_i = (E, {∅, E})",
            });
        }
    }
    let (_, labels, sets, source) = WORD_ENTRIES
        .iter()
        .find(|e| e.0 == name)
        .ok_or_else(|| Error::UnknownCatalogName(name.to_string()))?;
    Ok(CatalogEntry {
        name: name.to_string(),
        system: SetSystem::from_words(labels, sets)?,
        source,
    })
}

pub fn get(name: &str) -> Result<SetSystem> {
    Ok(entry(name)?.system)
}

/// The twisted duals of `S3` exactly as tabulated by hand, each under its
/// own labeling: six tables, 28 systems.
pub const S3_TABLES: &[(&str, &[&str])] = &[
    // twists of S3
    ("S3", &["", "abc"]),
    ("S3*{a}", &["a", "bc"]),
    // twists of S3+{a}
    ("S3+{a}", &["", "a", "abc"]),
    ("(S3+{a})*", &["", "bc", "abc"]),
    ("(S3+{a})*{a}", &["", "a", "bc"]),
    ("(S3+{a})*{b,c}", &["a", "bc", "abc"]),
    ("(S3+{a})*{b}", &["b", "ab", "ac"]),
    ("(S3+{a})*{a,c}", &["b", "c", "ac"]),
    // twists of S3+{a,b}
    ("S3+{a,b}", &["", "a", "b", "ab", "abc"]),
    ("(S3+{a,b})*", &["", "c", "ac", "bc", "abc"]),
    ("(S3+{a,b})*{a}", &["", "a", "b", "ab", "bc"]),
    ("(S3+{a,b})*{b,c}", &["a", "c", "ac", "bc", "abc"]),
    ("(S3+{a,b})*{c}", &["c", "ab", "ac", "bc", "abc"]),
    ("(S3+{a,b})*{a,b}", &["", "a", "b", "c", "ab"]),
    // twists of S3+{a,b,c}
    ("S3+{a,b,c}", &["", "a", "b", "c", "ab", "ac", "bc"]),
    ("(S3+{a,b,c})*", &["a", "b", "c", "ab", "ac", "bc", "abc"]),
    ("(S3+{a,b,c})*{a}", &["", "a", "b", "c", "ab", "ac", "abc"]),
    ("(S3+{a,b,c})*{b,c}", &["", "b", "c", "ab", "ac", "bc", "abc"]),
    // twists of (S3*{a})+{a,b}
    ("(S3*{a})+{a,b}", &["a", "ab", "bc", "abc"]),
    ("((S3*{a})+{a,b})*", &["", "a", "c", "bc"]),
    ("((S3*{a})+{a,b})*{a}", &["", "b", "bc", "abc"]),
    ("((S3*{a})+{a,b})*{b}", &["a", "c", "ab", "ac"]),
    // twists of (S3*{a})+{a,b,c}
    ("(S3*{a})+{a,b,c}", &["a", "ab", "ac", "bc"]),
    ("((S3*{a})+{a,b,c})*", &["a", "b", "c", "bc"]),
    ("((S3*{a})+{a,b,c})*{a}", &["", "b", "c", "abc"]),
    ("((S3*{a})+{a,b,c})*{b,c}", &["", "ab", "ac", "abc"]),
    ("((S3*{a})+{a,b,c})*{b}", &["a", "c", "ab", "abc"]),
    ("((S3*{a})+{a,b,c})*{a,c}", &["", "c", "ab", "bc"]),
];

/// The tabulated twisted duals of `S3`, labeled as tabulated.
pub fn s3_table_entries() -> Vec<(&'static str, SetSystem)> {
    S3_TABLES
        .iter()
        .map(|(name, sets)| (*name, SetSystem::from_words("abc", sets).expect("table entry")))
        .collect()
}

/// The 28 twisted duals of `S3` up to isomorphism, canonicalized.
///
/// Panics on first use if the tabulated list disagrees with the computed
/// twisted-duality orbit of `S3`.
pub fn s3_twisted_duals() -> &'static [SetSystem] {
    static DUALS: OnceLock<Vec<SetSystem>> = OnceLock::new();
    DUALS.get_or_init(|| {
        let tabulated = tabulated_s3_keys();
        let computed: BTreeSet<CanonKey> = twisted::orbit(&get("S3").unwrap(), true)
            .expect("S3 orbit")
            .members
            .iter()
            .map(|m| canonical_key(m).unwrap())
            .collect();
        assert_eq!(
            tabulated, computed,
            "tabulated twisted duals of S3 disagree with the computed orbit"
        );
        tabulated.iter().map(CanonKey::to_system).collect()
    })
}

pub(crate) fn tabulated_s3_keys() -> BTreeSet<CanonKey> {
    s3_table_entries()
        .iter()
        .map(|(_, s)| canonical_key(s).unwrap())
        .collect()
}

/// One step of a catalog expression. Subsets are written as strings of
/// single-letter labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Dual,
    Twist(&'static str),
    Loop(&'static str),
    Delete(&'static str),
    Contract(&'static str),
    Penrose(&'static str),
}

/// A catalog entry followed by a sequence of operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub base: String,
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn new(base: impl Into<String>, terms: &[Term]) -> Expr {
        Expr {
            base: base.into(),
            terms: terms.to_vec(),
        }
    }

    pub fn eval(&self) -> Result<SetSystem> {
        let letters = |s: &SetSystem, w: &str| -> Result<Subset> {
            w.chars().try_fold(Subset::EMPTY, |m, c| {
                Ok(m.with(s.element(&c.to_string())?))
            })
        };
        self.terms.iter().try_fold(get(&self.base)?, |s, t| match *t {
            Term::Dual => Ok(s.dual()),
            Term::Twist(w) => s.twist(letters(&s, w)?),
            Term::Loop(w) => s.loop_complement(letters(&s, w)?),
            Term::Delete(w) => s.delete(s.element(w)?),
            Term::Contract(w) => s.contract(s.element(w)?),
            Term::Penrose(w) => s.penrose_contract(s.element(w)?),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let braces = |w: &str| {
            let parts: Vec<String> = w.chars().map(String::from).collect();
            format!("{{{}}}", parts.join(","))
        };
        let mut s = self.base.clone();
        let mut atomic = true;
        for t in &self.terms {
            let head = if atomic { s.clone() } else { format!("({s})") };
            (s, atomic) = match t {
                Term::Dual => (format!("{head}*"), true),
                Term::Twist(w) => (format!("{head}*{}", braces(w)), false),
                Term::Loop(w) => (format!("{head}+{}", braces(w)), false),
                Term::Delete(w) => (format!("{head}\\{w}"), false),
                Term::Contract(w) => (format!("{head}/{w}"), false),
                Term::Penrose(w) => (format!("{head}‡{w}"), false),
            };
        }
        f.write_str(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Isomorphic,
}

/// A checkable identity between two catalog expressions.
#[derive(Clone, Debug)]
pub struct Identity {
    pub lhs: Expr,
    pub rhs: Expr,
    pub relation: Relation,
}

impl Identity {
    pub fn check(&self) -> Result<bool> {
        let l = self.lhs.eval()?;
        let r = self.rhs.eval()?;
        match self.relation {
            Relation::Equal => Ok(l == r),
            Relation::Isomorphic => crate::canon::is_isomorphic(&l, &r),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Equal => "=",
            Relation::Isomorphic => "≅",
        };
        write!(f, "{} {rel} {}", self.lhs, self.rhs)
    }
}

/// The identities used to reduce the excluded minors for delta-matroids to
/// twisted duals of `S3`, and the binary excluded minors to `B1` and `B2`.
pub fn identity_suite() -> Vec<Identity> {
    use Relation::*;
    use Term::*;
    let id = |lhs: Expr, rhs: Expr, relation| Identity { lhs, rhs, relation };
    let e = |base: &str, terms: &[Term]| Expr::new(base, terms);
    let mut v = vec![
        id(e("T1", &[Dual, Loop("c")]), e("S3", &[]), Equal),
        id(e("T2", &[Dual, Loop("bc")]), e("T1", &[]), Isomorphic),
        id(e("T3", &[Loop("a")]), e("T1", &[]), Equal),
        id(e("T4", &[Loop("a")]), e("T2", &[]), Equal),
    ];
    const LAST: [&str; 9] = ["", "", "", "", "d", "e", "f", "g", "h"];
    for n in 4..=8 {
        v.push(id(
            e(&format!("S{n}"), &[Penrose(LAST[n])]),
            e(&format!("S{}", n - 1), &[]),
            Equal,
        ));
    }
    v.extend([
        id(e("T5", &[Penrose("d")]), e("T1", &[]), Equal),
        id(e("T6", &[Penrose("d")]), e("T2", &[]), Equal),
        id(e("T7", &[Penrose("d")]), e("T4", &[]), Equal),
        id(e("T8", &[Penrose("d")]), e("T2", &[]), Equal),
        id(e("D3", &[Loop("abc")]), e("S3", &[]), Equal),
        id(e("B2", &[]), e("S3", &[Loop("abc")]), Equal),
        id(e("B4", &[Penrose("d")]), e("B2", &[]), Equal),
        id(e("B3", &[Loop("a"), Dual]), e("B1", &[]), Equal),
        id(e("B5", &[Penrose("d")]), e("B3", &[]), Isomorphic),
    ]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::is_delta_matroid;

    #[test]
    fn get_examples() {
        let d3 = get("D3").unwrap();
        assert_eq!(d3.feasible().len(), 7);
        assert!(!d3.is_feasible(d3.full()));
        assert_eq!(
            get("T2").unwrap(),
            SetSystem::from_words("abc", &["", "ab", "ac", "abc"]).unwrap()
        );
        assert_eq!(
            get("B5").unwrap(),
            SetSystem::from_words("abcd", &["", "ab", "ad", "bc", "cd", "abcd"]).unwrap()
        );
        assert!(matches!(get("T9"), Err(Error::UnknownCatalogName(_))));
        assert!(matches!(get("S9"), Err(Error::UnknownCatalogName(_))));
        assert!(matches!(get("S1"), Err(Error::UnknownCatalogName(_))));
        for n in names() {
            assert!(get(&n).is_ok(), "{n}");
        }
    }

    #[test]
    fn tables_hold_28_distinct_classes() {
        assert_eq!(S3_TABLES.len(), 28);
        assert_eq!(tabulated_s3_keys().len(), 28);
        let duals = s3_twisted_duals();
        assert_eq!(duals.len(), 28);
        let has = |s: SetSystem| duals.contains(&crate::canon::canonical_form(&s).unwrap());
        assert!(has(SetSystem::from_words("abc", &["", "a", "abc"]).unwrap()));
        assert!(has(SetSystem::from_words("abc", &["a", "bc"]).unwrap()));
    }

    #[test]
    fn identities_hold() {
        let suite = identity_suite();
        assert_eq!(suite.len(), 18);
        for i in &suite {
            assert!(i.check().unwrap(), "{i}");
        }
        assert_eq!(suite[0].to_string(), "T1*+{c} = S3");
    }

    #[test]
    fn excluded_minors_for_delta_matroids_are_minimal() {
        let mut names: Vec<String> = (3..=8).map(|i| format!("S{i}")).collect();
        names.extend((1..=8).map(|i| format!("T{i}")));
        for name in names {
            let s = get(&name).unwrap();
            assert!(!is_delta_matroid(&s), "{name}");
            for e in 0..s.size() {
                assert!(is_delta_matroid(&s.delete(e).unwrap()), "{name}\\{e}");
                assert!(is_delta_matroid(&s.contract(e).unwrap()), "{name}/{e}");
            }
        }
    }

    #[test]
    fn binary_excluded_minors_are_delta_matroids() {
        for i in 1..=5 {
            assert!(is_delta_matroid(&get(&format!("B{i}")).unwrap()), "B{i}");
        }
    }
}
