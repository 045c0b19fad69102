//! Permutations in one-line form and disjoint-cycle notation.
//!
//! Internally points are `0..degree`; text uses 1-indexed cycles such as
//! `(1 2)(3 4)`, with `()` for the identity. Products compose right to left:
//! `(s * t)(i) = s(t(i))`.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Largest degree a permutation representation may use.
pub const MAX_DEGREE: usize = 32;

pub(crate) type Images = [u8; MAX_DEGREE];

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from 0-indexed one-line notation.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        if degree > MAX_DEGREE {
            return Err(Error::BadPermutation(format!(
                "degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree || std::mem::replace(&mut seen[i], true) {
                return Err(Error::BadPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn is_even(&self) -> bool {
        let cycles = self.cycles();
        cycles.iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Parses 1-indexed cycle notation.
    ///
    /// Points inside a cycle are separated by spaces or commas; when a cycle
    /// has no separators each digit is a point, so `(123)` reads as
    /// `(1 2 3)`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = |why: &str| Error::BadPermutation(format!("{text:?}: {why}"));
        let mut perm = Permutation::identity(degree);
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = body_start[..close].trim();
            rest = body_start[close + 1..].trim_start();
            let points: Vec<usize> = if body.is_empty() {
                Vec::new()
            } else if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| bad("non-numeric point"))
                    })
                    .collect::<Result<_>>()?
            };
            let mut seen = vec![false; degree];
            for &p in &points {
                if p == 0 || p > degree {
                    return Err(bad("point out of range"));
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(bad("repeated point in cycle"));
                }
            }
            let mut cycle = Permutation::identity(degree);
            for (k, &p) in points.iter().enumerate() {
                let q = points[(k + 1) % points.len()];
                cycle.images[p - 1] = (q - 1) as u8;
            }
            // Cycles are written as a product, so the rightmost acts first.
            perm = perm.compose(&cycle);
        }
        Ok(perm)
    }

    pub(crate) fn packed(&self) -> Images {
        let mut out = [0u8; MAX_DEGREE];
        out[..self.degree()].copy_from_slice(&self.images);
        out
    }

    pub(crate) fn from_packed(images: &Images, degree: usize) -> Self {
        Permutation {
            images: images[..degree].to_vec(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Lexicographic rank of a one-line permutation among all permutations of
/// its degree.
pub(crate) fn lehmer_rank(images: &[u8]) -> usize {
    let n = images.len();
    let mut used = 0u32;
    let mut rank = 0usize;
    for (i, &x) in images.iter().enumerate() {
        let below = (1u32 << x) - 1;
        let smaller = (below & !used).count_ones() as usize;
        used |= 1 << x;
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Element list of a permutation group, with a lookup from images to index.
pub(crate) struct PermTable {
    pub degree: usize,
    pub elements: Vec<Images>,
    /// `true` iff `elements` is all of S_degree in lexicographic order.
    pub full_symmetric: bool,
    lookup: FxHashMap<Images, u32>,
}

impl PermTable {
    pub fn symmetric(degree: usize) -> Self {
        let mut current: Vec<u8> = (0..degree as u8).collect();
        let mut elements = Vec::new();
        loop {
            let mut packed = [0u8; MAX_DEGREE];
            packed[..degree].copy_from_slice(&current);
            elements.push(packed);
            if !next_permutation(&mut current) {
                break;
            }
        }
        PermTable {
            degree,
            elements,
            full_symmetric: true,
            lookup: FxHashMap::default(),
        }
    }

    /// Elements must already be sorted lexicographically.
    pub fn from_sorted(degree: usize, elements: Vec<Images>) -> Self {
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u32))
            .collect();
        PermTable {
            degree,
            elements,
            full_symmetric: false,
            lookup,
        }
    }

    pub fn index_of(&self, images: &Images) -> Option<u32> {
        if self.full_symmetric {
            Some(lehmer_rank(&images[..self.degree]) as u32)
        } else {
            self.lookup.get(images).copied()
        }
    }

    pub fn compose(&self, a: u32, b: u32) -> Images {
        let (pa, pb) = (&self.elements[a as usize], &self.elements[b as usize]);
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..self.degree {
            out[i] = pa[pb[i] as usize];
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index_of(&self.compose(a, b))
            .expect("permutation group is closed under composition")
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let p = &self.elements[a as usize];
        let mut out = [0u8; MAX_DEGREE];
        for i in 0..self.degree {
            out[p[i] as usize] = i as u8;
        }
        self.index_of(&out)
            .expect("permutation group is closed under inverse")
    }

    pub fn permutation(&self, a: u32) -> Permutation {
        Permutation::from_packed(&self.elements[a as usize], self.degree)
    }
}

fn next_permutation(xs: &mut [u8]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        let q = Permutation::parse_cycles("(123)", 3).unwrap();
        assert_eq!(q.to_string(), "(1 2 3)");
        assert_eq!(
            Permutation::parse_cycles("()", 3).unwrap(),
            Permutation::identity(3)
        );
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let s = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let conj = a.compose(&s).compose(&a.inverse());
        assert_eq!(conj.to_string(), "(2 3)");
    }

    #[test]
    fn parity() {
        assert!(Permutation::parse_cycles("(1 2 3)", 3).unwrap().is_even());
        assert!(!Permutation::parse_cycles("(1 2)", 3).unwrap().is_even());
        assert!(!Permutation::parse_cycles("(1 2)(3 4)(5 6)", 6)
            .unwrap()
            .is_even());
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
    }

    #[test]
    fn lehmer_rank_matches_lexicographic_enumeration() {
        let table = PermTable::symmetric(4);
        assert_eq!(table.elements.len(), 24);
        for (i, p) in table.elements.iter().enumerate() {
            assert_eq!(lehmer_rank(&p[..4]), i);
        }
    }
}
