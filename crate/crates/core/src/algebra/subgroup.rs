use std::collections::VecDeque;

use rustc_hash::FxHashSet;

use super::{Elem, FiniteGroup, FiniteMonoid};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exec::{self, Limits};

/// A subset of an ambient algebra closed under its operations.
///
/// The bitset is the canonical representative; equality and ordering are
/// those of the bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: BitSet,
}

impl Subgroup {
    pub(crate) fn from_indices_unchecked<I: IntoIterator<Item = usize>>(
        ambient_order: usize,
        members: I,
    ) -> Self {
        Subgroup {
            members: BitSet::from_indices(ambient_order, members),
        }
    }

    /// Validates that `members` is closed and contains the identity (and,
    /// for group ambients, inverses).
    pub fn from_elements(ambient: &FiniteMonoid, members: &[Elem]) -> Result<Self> {
        let n = ambient.order();
        if let Some(&bad) = members.iter().find(|&&m| m as usize >= n) {
            return Err(Error::IndexOutOfRange {
                row: bad as usize,
                col: 0,
                value: bad as usize,
                order: n,
            });
        }
        let set = BitSet::from_indices(n, members.iter().map(|&m| m as usize));
        let sub = Subgroup { members: set };
        if !sub.is_closed_in(ambient) {
            return Err(Error::BadDocument(format!(
                "{members:?} is not closed under the operations"
            )));
        }
        Ok(sub)
    }

    pub fn trivial(ambient: &FiniteMonoid) -> Self {
        Subgroup::from_indices_unchecked(ambient.order(), [ambient.identity() as usize])
    }

    pub fn full(ambient_order: usize) -> Self {
        Subgroup {
            members: BitSet::full(ambient_order),
        }
    }

    pub fn ambient_order(&self) -> usize {
        self.members.len()
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().map(|i| i as Elem)
    }

    pub fn bitset(&self) -> &BitSet {
        &self.members
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_proper(&self) -> bool {
        self.order() < self.ambient_order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.members.intersection_count(&other.members)
    }

    /// Checks the closure invariants against `ambient`.
    pub fn is_closed_in(&self, ambient: &FiniteMonoid) -> bool {
        if self.ambient_order() != ambient.order() || !self.contains(ambient.identity()) {
            return false;
        }
        let members: Vec<Elem> = self.elements().collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| self.contains(ambient.mul(a, b))));
        let inverses = match ambient.to_group() {
            Some(g) => self.elements().all(|a| self.contains(g.inv(a))),
            None => true,
        };
        closed && inverses
    }

    /// Canonical sort key: order first, then the bitset.
    pub fn sort_key(&self) -> (usize, &BitSet) {
        (self.order(), &self.members)
    }
}

/// Serialized as the ascending list of member indices.
impl serde::Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

/// The submonoid generated by `gens` (a subgroup, when `m` is a finite
/// group), by breadth-first right multiplication.
pub fn closure(m: &FiniteMonoid, gens: &[Elem]) -> Subgroup {
    bounded_closure(m, gens, m.order()).expect("closure fits in the ambient")
}

/// The closure of `gens`, or `None` as soon as it exceeds `cap` elements.
fn bounded_closure(m: &FiniteMonoid, gens: &[Elem], cap: usize) -> Option<Subgroup> {
    let mut members = BitSet::new(m.order());
    let mut queue = VecDeque::new();
    let mut count = 1;
    members.insert(m.identity() as usize);
    queue.push_back(m.identity());
    while let Some(a) = queue.pop_front() {
        for &g in gens {
            let ag = m.mul(a, g);
            if members.insert(ag as usize) {
                count += 1;
                if count > cap {
                    return None;
                }
                queue.push_back(ag);
            }
        }
    }
    Some(Subgroup { members })
}

pub fn subgroup_generated(g: &FiniteGroup, seeds: &[Elem]) -> Result<Subgroup> {
    if let Some(&bad) = seeds.iter().find(|&&s| s as usize >= g.order()) {
        return Err(Error::IndexOutOfRange {
            row: bad as usize,
            col: 0,
            value: bad as usize,
            order: g.order(),
        });
    }
    Ok(closure(g, seeds))
}

/// A small generating set of `h`, chosen greedily in index order.
pub fn generators(m: &FiniteMonoid, h: &Subgroup) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial(m);
    for a in h.elements() {
        if !current.contains(a) {
            gens.push(a);
            current = closure(m, &gens);
            if current.order() == h.order() {
                break;
            }
        }
    }
    gens
}

/// A generating set of the whole of `m`, with two elements whenever a
/// bounded search finds such a pair, otherwise [`generators`].
///
/// Pairs are tried with the first element among those of largest order.
pub(crate) fn short_generators(m: &FiniteMonoid) -> Vec<Elem> {
    const FIRST: usize = 16;
    const ATTEMPTS: usize = 1 << 12;
    let full = Subgroup::full(m.order());
    let greedy = generators(m, &full);
    if greedy.len() <= 2 {
        return greedy;
    }
    let mut by_order: Vec<(usize, Elem)> = m.elements().map(|a| (m.element_order(a), a)).collect();
    by_order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut attempts = 0;
    for &(_, a) in by_order.iter().take(FIRST) {
        for b in m.elements() {
            attempts += 1;
            if attempts > ATTEMPTS {
                return greedy;
            }
            if closure(m, &[a, b]).order() == m.order() {
                return vec![a, b];
            }
        }
    }
    greedy
}

/// `{a s a^-1 : s in x}`.
pub fn conjugate_subgroup(g: &FiniteGroup, a: Elem, x: &Subgroup) -> Subgroup {
    let inv = g.inv(a);
    Subgroup::from_indices_unchecked(
        g.order(),
        x.elements().map(|s| g.mul(g.mul(a, s), inv) as usize),
    )
}

/// First `(member, conjugator)` pair showing `b` is not normal.
pub fn normality_witness(g: &FiniteGroup, b: &Subgroup) -> Option<(Elem, Elem)> {
    let gens = generators(g, &Subgroup::full(g.order()));
    for a in gens {
        for s in b.elements() {
            if !b.contains(g.conjugate(a, s)) {
                return Some((s, a));
            }
        }
    }
    None
}

pub fn is_normal(g: &FiniteGroup, b: &Subgroup) -> bool {
    normality_witness(g, b).is_none()
}

/// Every subgroup of `g`, sorted by `(order, bitset)`.
pub fn all_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    if g.order() > limits.max_subgroup_order {
        return Err(Error::OrderTooLarge {
            order: g.order(),
            cap: limits.max_subgroup_order,
        });
    }
    let candidates: Vec<Elem> = g.elements().collect();
    search_subgroups(g, &candidates, g.order(), |_| true, usize::MAX, limits)
}

/// Subgroups reachable from the trivial subgroup by repeatedly adjoining a
/// candidate element and closing, keeping only those `accept` admits.
///
/// Closures with more than `max_order` elements are abandoned early.
/// `accept` must be inherited by subgroups (if it admits `H` it admits
/// every subgroup of `H` generated by candidates), otherwise some targets
/// are unreachable. Results are sorted by `(order, bitset)`.
pub(crate) fn search_subgroups<F>(
    g: &FiniteMonoid,
    candidates: &[Elem],
    max_order: usize,
    accept: F,
    budget: usize,
    limits: &Limits,
) -> Result<Vec<Subgroup>>
where
    F: Fn(&Subgroup) -> bool + Sync,
{
    let trivial = Subgroup::trivial(g);
    let mut seen: FxHashSet<Subgroup> = FxHashSet::default();
    seen.insert(trivial.clone());
    let mut frontier: Vec<(Subgroup, Vec<Elem>)> = vec![(trivial, Vec::new())];
    let mut found = Vec::new();
    let mut closures = 0usize;
    while !frontier.is_empty() {
        closures += frontier.len() * candidates.len();
        if closures > budget {
            return Err(Error::OrderTooLarge {
                order: g.order(),
                cap: budget,
            });
        }
        let children: Vec<Vec<(Subgroup, Vec<Elem>)>> =
            exec::map_slice(limits, &frontier, |(h, gens)| {
                let mut local: FxHashSet<Subgroup> = FxHashSet::default();
                let mut out = Vec::new();
                for &c in candidates {
                    if h.contains(c) {
                        continue;
                    }
                    let mut next_gens = gens.clone();
                    next_gens.push(c);
                    let Some(k) = bounded_closure(g, &next_gens, max_order) else {
                        continue;
                    };
                    if accept(&k) && local.insert(k.clone()) {
                        out.push((k, next_gens));
                    }
                }
                out
            });
        found.extend(frontier.into_iter().map(|(h, _)| h));
        let mut next = Vec::new();
        for batch in children {
            for (k, gens) in batch {
                if seen.insert(k.clone()) {
                    next.push((k, gens));
                }
            }
        }
        frontier = next;
    }
    found.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group, symmetric_group, Permutation};

    fn perm(g: &FiniteGroup, text: &str) -> Elem {
        let p = Permutation::parse_cycles(text, g.degree().unwrap()).unwrap();
        g.index_of_permutation(&p).unwrap()
    }

    #[test]
    fn generated_subgroups_of_s3() {
        let s3 = symmetric_group(3, &Limits::default()).unwrap();
        let t = perm(&s3, "(1 2)");
        let r = perm(&s3, "(1 2 3)");
        assert_eq!(subgroup_generated(&s3, &[t]).unwrap().order(), 2);
        assert_eq!(subgroup_generated(&s3, &[]).unwrap().order(), 1);
        assert_eq!(subgroup_generated(&s3, &[r, t]).unwrap().order(), 6);
        assert!(subgroup_generated(&s3, &[6]).is_err());
    }

    /// Brute force: every subset that is closed and contains the identity.
    fn subgroups_by_powerset(g: &FiniteGroup) -> Vec<Subgroup> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let sub = Subgroup::from_indices_unchecked(n, (0..n).filter(|i| mask >> i & 1 == 1));
            if sub.is_closed_in(g) {
                out.push(sub);
            }
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    }

    #[test]
    fn all_subgroups_matches_powerset_oracle() {
        let limits = Limits::default();
        let z4 = cyclic_group(4);
        assert_eq!(
            all_subgroups(&z4, &limits).unwrap(),
            subgroups_by_powerset(&z4)
        );
        assert_eq!(all_subgroups(&z4, &limits).unwrap().len(), 3);
        let s3 = symmetric_group(3, &limits).unwrap();
        let subs = all_subgroups(&s3, &limits).unwrap();
        assert_eq!(subs, subgroups_by_powerset(&s3));
        let orders: Vec<_> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(all_subgroups(&cyclic_group(1), &limits).unwrap().len(), 1);
    }

    #[test]
    fn s4_has_thirty_subgroups() {
        let limits = Limits::default();
        let s4 = symmetric_group(4, &limits).unwrap();
        assert_eq!(all_subgroups(&s4, &limits).unwrap().len(), 30);
    }

    #[test]
    fn subgroup_cap_is_enforced() {
        let limits = Limits {
            max_subgroup_order: 5,
            ..Limits::default()
        };
        assert!(matches!(
            all_subgroups(&cyclic_group(6), &limits),
            Err(Error::OrderTooLarge { order: 6, cap: 5 })
        ));
    }

    #[test]
    fn conjugation_in_s3() {
        let s3 = symmetric_group(3, &Limits::default()).unwrap();
        let x = subgroup_generated(&s3, &[perm(&s3, "(1 2)")]).unwrap();
        let y = conjugate_subgroup(&s3, perm(&s3, "(1 2 3)"), &x);
        let expected = subgroup_generated(&s3, &[perm(&s3, "(2 3)")]).unwrap();
        assert_eq!(y, expected);
        assert_eq!(conjugate_subgroup(&s3, s3.identity(), &x), x);
        let a3 = subgroup_generated(&s3, &[perm(&s3, "(1 2 3)")]).unwrap();
        for a in s3.elements() {
            assert_eq!(conjugate_subgroup(&s3, a, &a3), a3);
        }
        assert!(is_normal(&s3, &a3));
        assert!(!is_normal(&s3, &x));
    }
}
