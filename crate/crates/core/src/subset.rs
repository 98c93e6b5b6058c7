//! Ground sets and fixed-width subset masks.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 24;

/// A subset of a ground set, one bit per element position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// All of `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 32);
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    #[inline]
    pub fn toggled(self, i: usize) -> Subset {
        Subset(self.0 ^ 1 << i)
    }

    /// Element positions in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Drops the positions in `removed` and shifts the surviving bits down so
    /// that they stay in order.
    pub fn compress(self, removed: Subset) -> Subset {
        let mut out = 0u32;
        let mut j = 0;
        let mut m = self.0;
        let mut r = removed.0;
        while m != 0 || r != 0 {
            if r & 1 == 0 {
                out |= (m & 1) << j;
                j += 1;
            }
            m >>= 1;
            r >>= 1;
        }
        Subset(out)
    }

    /// Validates that only the low `n` bits are set.
    pub fn check(self, n: usize) -> Result<Subset> {
        if self.is_subset_of(Subset::full(n)) {
            Ok(self)
        } else {
            Err(Error::InvalidSubset {
                mask: self.0,
                size: n,
            })
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

/// Ordered, duplicate-free element labels. Position `i` is bit `i` of every
/// [`Subset`] over this ground set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<GroundSet> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::TooLarge {
                what: "ground set",
                size: labels.len(),
                max: MAX_GROUND,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Positional labels `a, b, c, ...`.
    pub fn positional(n: usize) -> GroundSet {
        assert!(n <= MAX_GROUND);
        GroundSet {
            labels: (0..n).map(positional_label).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn subset_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        names.iter().try_fold(Subset::EMPTY, |m, n| {
            Ok(m.with(self.index_of(n.as_ref())?))
        })
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// The ground set with the positions in `removed` dropped.
    pub fn without(&self, removed: Subset) -> GroundSet {
        GroundSet {
            labels: self
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(*i))
                .map(|(_, l)| l.clone())
                .collect(),
        }
    }

    pub fn names(&self, s: Subset) -> Vec<&str> {
        s.iter().map(|i| self.labels[i].as_str()).collect()
    }

    /// Renders a subset as `{a,b}`.
    pub fn format_subset(&self, s: Subset) -> String {
        format!("{{{}}}", self.names(s).join(","))
    }
}

pub fn positional_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}
