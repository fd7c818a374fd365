//! Permutations of `[n] = {0, .., n-1}` and the two Latin-square families
//! used as edge labels.
//!
//! A [`Permutation`] stores its image table and always carries its degree.
//! Composition is functional: `outer.compose(&inner)` applies `inner` first.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation degree must be at least 1")]
    ZeroDegree,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} out of range for degree {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("index {0} repeated")]
    Repeated(usize),
    #[error("malformed permutation text {text:?}: {reason}")]
    Malformed { text: String, reason: String },
}

/// A bijection of `[n]`, stored as `image[x] = p(x)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(Self {
            image: (0..n).collect(),
        })
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_image(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &y in &image {
            if y >= n {
                return Err(PermError::OutOfRange { index: y, n });
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(PermError::Repeated(y));
            }
        }
        Ok(Self { image })
    }

    /// Builds a permutation on `[n]` from disjoint cycles; omitted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut image = Self::identity(n)?.image;
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(PermError::OutOfRange { index: x, n });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(PermError::Repeated(x));
                }
                image[x] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Self { image })
    }

    /// The transposition `(a b)` on `[n]`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, PermError> {
        if a == b {
            return Err(PermError::Repeated(a));
        }
        Self::from_cycles(n, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self ∘ inner`: the result maps `x` to `self(inner(x))`.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(inner)?;
        Ok(Permutation {
            image: inner.image.iter().map(|&y| self.image[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation { image }
    }

    pub fn fixed_points(&self) -> BTreeSet<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn fixed_point_count(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_point_count() == self.degree()
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(x, &y)| self.image[y] == x)
    }

    /// Non-trivial cycles, each starting at its least element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles, fixed points included, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.extend(std::iter::repeat(1).take(self.fixed_point_count()));
        lengths.sort_unstable();
        lengths
    }

    /// Cycle notation such as `(0 2)(1 3)`; the identity renders as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let items: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", items.join(" "))
            })
            .collect()
    }

    /// Parses either an image list `[2,3,0,1]` or cycle notation `(0 2)(1 3)`.
    ///
    /// In cycle notation points not mentioned are fixed, and `()` or `id`
    /// denote the identity. Cycle entries are separated by spaces or commas;
    /// an unseparated run such as `(012)` is read digit by digit when `n <= 10`.
    pub fn parse(text: &str, n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let trimmed = text.trim();
        let malformed = |reason: &str| PermError::Malformed {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if trimmed.eq_ignore_ascii_case("id") || trimmed.is_empty() {
            return Self::identity(n);
        }
        if let Some(body) = trimmed.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| malformed("missing closing ']'"))?;
            let image = split_numbers(body).map_err(|r| malformed(&r))?;
            if image.len() != n {
                return Err(malformed(&format!(
                    "image list has {} entries, expected {n}",
                    image.len()
                )));
            }
            return Self::from_image(image);
        }
        if !trimmed.starts_with('(') {
            return Err(malformed("expected '[' or '('"));
        }
        let mut cycles = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let after_open = rest
                .strip_prefix('(')
                .ok_or_else(|| malformed("expected '('"))?;
            let close = after_open
                .find(')')
                .ok_or_else(|| malformed("missing closing ')'"))?;
            let inner = after_open[..close].trim();
            if inner.contains('(') {
                return Err(malformed("nested '('"));
            }
            let points = if inner.chars().all(|c| c.is_ascii_digit()) && inner.len() > 1 && n <= 10
            {
                inner
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| malformed("bad digit"))?
            } else {
                split_numbers(inner).map_err(|r| malformed(&r))?
            };
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = after_open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

fn split_numbers(body: &str) -> Result<Vec<usize>, String> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("bad number {s:?}")))
        .collect()
}

/// Image-list form, e.g. `[1,2,0]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, y) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{y}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses an image list; the degree is taken from its length.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| PermError::Malformed {
                text: s.to_string(),
                reason: "expected image list".to_string(),
            })?;
        let image = split_numbers(body).map_err(|reason| PermError::Malformed {
            text: s.to_string(),
            reason,
        })?;
        Self::from_image(image)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatinKind {
    /// `pi_i(x) = i - x (mod n)`; every member is an involution.
    L,
    /// `sigma_i(x) = i + x (mod n)`; the cyclic shifts.
    #[serde(rename = "Lprime")]
    Lprime,
}

/// One of the two Latin-square families of size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinFamily {
    n: usize,
    kind: LatinKind,
    members: Vec<Permutation>,
}

impl LatinFamily {
    pub fn new(n: usize, kind: LatinKind) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let members = (0..n)
            .map(|i| Permutation {
                image: (0..n).map(|x| latin_entry(n, kind, i, x)).collect(),
            })
            .collect();
        Ok(Self { n, kind, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> LatinKind {
        self.kind
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Permutation {
        &self.members[i % self.n]
    }

    /// The index `i` with `members[i] == p`, if `p` belongs to the family.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.n {
            return None;
        }
        // In both families member i sends 0 to i.
        let i = p.apply(0);
        (self.members[i] == *p).then_some(i)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }
}

fn latin_entry(n: usize, kind: LatinKind, i: usize, x: usize) -> usize {
    match kind {
        LatinKind::L => (i + n - x) % n,
        LatinKind::Lprime => (i + x) % n,
    }
}

pub fn latin_family(n: usize, kind: LatinKind) -> Result<LatinFamily, PermError> {
    LatinFamily::new(n, kind)
}
