//! Finite monoids and groups over dense element indices.
//!
//! An algebra is a cheap-to-clone handle. Its law is either an explicit
//! Cayley table, a permutation representation (products computed by
//! composing and re-indexing), or the restriction of a parent algebra to a
//! closed subset. The last two keep large groups such as `S_8` and `A_8`
//! usable without an `n x n` table.

mod construct;
mod iso;
mod map;
mod perm;
mod subgroup;

use std::fmt;
use std::sync::Arc;

pub use construct::{
    alternating_subgroup, cyclic_group, direct_product, permutation_group, pullback,
    symmetric_group, Pullback,
};
pub use iso::find_isomorphism;
pub use map::{check_homomorphism, homomorphisms, ElementMap};
pub use perm::{Permutation, MAX_DEGREE};
pub use subgroup::{
    all_subgroups, closure, conjugate_subgroup, generators, is_normal, normality_witness,
    subgroup_generated, Subgroup,
};

pub(crate) use map::extend_from_generators_with;
pub(crate) use subgroup::search_subgroups;

use crate::error::{Error, Result};
use perm::PermTable;

/// Element index.
pub type Elem = u32;

/// Orders up to this size get a materialized Cayley table.
const TABLE_THRESHOLD: usize = 1024;

#[derive(Clone)]
pub struct FiniteMonoid {
    inner: Arc<Inner>,
}

struct Inner {
    order: usize,
    identity: Elem,
    law: Law,
    inverse: Option<Vec<Elem>>,
    perms: Option<Arc<PermTable>>,
    parent: Option<ParentLink>,
    labels: Labels,
}

#[derive(Clone)]
enum Law {
    Table(Arc<[Elem]>),
    Permutations(Arc<PermTable>),
    /// Products computed in the parent algebra.
    ViaParent,
}

/// Embedding of a restricted algebra into the algebra it came from.
#[derive(Clone)]
struct ParentLink {
    parent: FiniteMonoid,
    elements: Arc<[Elem]>,
    position: Arc<[Elem]>,
}

#[derive(Clone)]
enum Labels {
    Index,
    Permutations(Arc<PermTable>),
    Pairs {
        right_order: usize,
        left: FiniteMonoid,
        right: FiniteMonoid,
    },
    Parent,
}

const ABSENT: Elem = Elem::MAX;

impl FiniteMonoid {
    fn from_parts(
        order: usize,
        identity: Elem,
        law: Law,
        perms: Option<Arc<PermTable>>,
        labels: Labels,
    ) -> Self {
        FiniteMonoid {
            inner: Arc::new(Inner {
                order,
                identity,
                law,
                inverse: None,
                perms,
                parent: None,
                labels,
            }),
        }
    }

    /// Builds a monoid from a flat row-major table without validation.
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<Elem>, identity: Elem) -> Self {
        debug_assert_eq!(table.len(), order * order);
        FiniteMonoid::from_parts(
            order,
            identity,
            Law::Table(table.into()),
            None,
            Labels::Index,
        )
    }

    pub(crate) fn with_pair_labels(self, left: &FiniteMonoid, right: &FiniteMonoid) -> Self {
        let inner = &self.inner;
        FiniteMonoid {
            inner: Arc::new(Inner {
                order: inner.order,
                identity: inner.identity,
                law: inner.law.clone(),
                inverse: inner.inverse.clone(),
                perms: inner.perms.clone(),
                parent: inner.parent.clone(),
                labels: Labels::Pairs {
                    right_order: right.order(),
                    left: left.clone(),
                    right: right.clone(),
                },
            }),
        }
    }

    pub(crate) fn with_inverse(self, inverse: Vec<Elem>) -> Self {
        let inner = &self.inner;
        FiniteMonoid {
            inner: Arc::new(Inner {
                order: inner.order,
                identity: inner.identity,
                law: inner.law.clone(),
                inverse: Some(inverse),
                perms: inner.perms.clone(),
                parent: inner.parent.clone(),
                labels: inner.labels.clone(),
            }),
        }
    }

    pub(crate) fn from_perm_table(table: PermTable) -> Self {
        let table = Arc::new(table);
        let order = table.elements.len();
        let identity = table
            .index_of(&perm::Permutation::identity(table.degree).packed())
            .expect("identity is present");
        let law = if order <= TABLE_THRESHOLD {
            let mut flat = Vec::with_capacity(order * order);
            for a in 0..order as Elem {
                for b in 0..order as Elem {
                    flat.push(table.mul(a, b));
                }
            }
            Law::Table(flat.into())
        } else {
            Law::Permutations(table.clone())
        };
        let mut inner = Inner {
            order,
            identity,
            law,
            inverse: None,
            perms: Some(table.clone()),
            parent: None,
            labels: Labels::Permutations(table.clone()),
        };
        inner.inverse = Some((0..order as Elem).map(|a| table.inverse(a)).collect());
        FiniteMonoid {
            inner: Arc::new(inner),
        }
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> Elem {
        self.inner.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.inner.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.law {
            Law::Table(t) => t[a as usize * self.inner.order + b as usize],
            Law::Permutations(p) => p.mul(a, b),
            Law::ViaParent => {
                let link = self
                    .inner
                    .parent
                    .as_ref()
                    .expect("restricted algebra has a parent");
                link.position[link
                    .parent
                    .mul(link.elements[a as usize], link.elements[b as usize])
                    as usize]
            }
        }
    }

    /// Two-sided inverse, if this monoid carries group structure.
    pub fn inverse_of(&self, a: Elem) -> Option<Elem> {
        self.inner.inverse.as_ref().map(|inv| inv[a as usize])
    }

    pub fn is_group(&self) -> bool {
        self.inner.inverse.is_some()
    }

    /// View as a group when inverses are known; `None` otherwise.
    pub fn to_group(&self) -> Option<FiniteGroup> {
        self.is_group().then(|| FiniteGroup(self.clone()))
    }

    pub fn same_algebra(&self, other: &FiniteMonoid) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// The permutation for element `a`, when the algebra has a permutation
    /// representation (directly or through its parent).
    pub fn permutation(&self, a: Elem) -> Option<Permutation> {
        if let Some(p) = &self.inner.perms {
            return Some(p.permutation(a));
        }
        let link = self.inner.parent.as_ref()?;
        link.parent.permutation(link.elements[a as usize])
    }

    /// Permutation degree, if any.
    pub fn degree(&self) -> Option<usize> {
        match (&self.inner.perms, &self.inner.parent) {
            (Some(p), _) => Some(p.degree),
            (None, Some(link)) => link.parent.degree(),
            _ => None,
        }
    }

    pub(crate) fn is_full_symmetric(&self) -> bool {
        self.inner.perms.as_ref().is_some_and(|p| p.full_symmetric)
    }

    /// Index of a permutation in this algebra's permutation representation.
    pub fn index_of_permutation(&self, p: &Permutation) -> Option<Elem> {
        if let Some(table) = &self.inner.perms {
            return (p.degree() == table.degree)
                .then(|| table.index_of(&p.packed()))
                .flatten();
        }
        let link = self.inner.parent.as_ref()?;
        link.parent
            .index_of_permutation(p)
            .map(|i| link.position[i as usize])
            .filter(|&i| i != ABSENT)
    }

    /// Human-readable name of an element: cycle notation for permutation
    /// groups, `(b,x)` for pairs, the index otherwise.
    pub fn label(&self, a: Elem) -> String {
        match &self.inner.labels {
            Labels::Index => a.to_string(),
            Labels::Permutations(table) => table.permutation(a).to_string(),
            Labels::Pairs {
                right_order,
                left,
                right,
            } => {
                let (l, r) = (a as usize / right_order, a as usize % right_order);
                format!("({},{})", left.label(l as Elem), right.label(r as Elem))
            }
            Labels::Parent => match &self.inner.parent {
                Some(link) => link.parent.label(link.elements[a as usize]),
                None => a.to_string(),
            },
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Index of `a^k` for `k = 0, 1, ...` until the first repeat.
    pub fn power_cycle(&self, a: Elem) -> Vec<Elem> {
        let mut seen = Vec::new();
        let mut x = self.identity();
        while !seen.contains(&x) {
            seen.push(x);
            x = self.mul(x, a);
        }
        seen
    }

    /// Multiplicative order of a group element.
    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
            assert!(k <= self.order() + 1, "element {a} has no finite order");
        }
        k
    }

    /// The algebra obtained by restricting to a closed subset containing
    /// the identity, re-indexed by increasing parent index.
    pub fn restrict(&self, members: &Subgroup) -> FiniteMonoid {
        assert_eq!(members.ambient_order(), self.order());
        let elements: Vec<Elem> = members.elements().collect();
        let mut position = vec![ABSENT; self.order()];
        for (i, &e) in elements.iter().enumerate() {
            position[e as usize] = i as Elem;
        }
        let inverse = self.inner.inverse.as_ref().and_then(|inv| {
            elements
                .iter()
                .map(|&e| Some(position[inv[e as usize] as usize]).filter(|&i| i != ABSENT))
                .collect::<Option<Vec<_>>>()
        });
        let order = elements.len();
        let link = ParentLink {
            parent: self.clone(),
            elements: elements.into(),
            position: position.into(),
        };
        let law = if order <= TABLE_THRESHOLD {
            let mut flat = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    let p = self.mul(link.elements[a], link.elements[b]);
                    flat.push(link.position[p as usize]);
                }
            }
            Law::Table(flat.into())
        } else {
            Law::ViaParent
        };
        FiniteMonoid {
            inner: Arc::new(Inner {
                order,
                identity: link.position[self.identity() as usize],
                law,
                inverse,
                perms: None,
                parent: Some(link),
                labels: Labels::Parent,
            }),
        }
    }

    /// For a restricted algebra, the parent index of each element.
    pub fn parent_elements(&self) -> Option<&[Elem]> {
        self.inner.parent.as_ref().map(|link| &link.elements[..])
    }

    /// For a restricted algebra, the algebra it was restricted from.
    pub fn parent(&self) -> Option<&FiniteMonoid> {
        self.inner.parent.as_ref().map(|link| &link.parent)
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_group() { "group" } else { "monoid" };
        write!(f, "FiniteMonoid({kind}, order {})", self.order())
    }
}

/// Table equality; inexpensive only for small algebras.
impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other)
            || (self.order() == other.order()
                && self.identity() == other.identity()
                && self
                    .elements()
                    .all(|a| self.elements().all(|b| self.mul(a, b) == other.mul(a, b))))
    }
}

/// A monoid in which every element is invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup(FiniteMonoid);

impl std::ops::Deref for FiniteGroup {
    type Target = FiniteMonoid;

    fn deref(&self) -> &FiniteMonoid {
        &self.0
    }
}

impl FiniteGroup {
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.0.inner.inverse.as_ref().expect("group has inverses")[a as usize]
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.0
    }

    pub fn into_monoid(self) -> FiniteMonoid {
        self.0
    }

    /// `a * s * a^-1`.
    pub fn conjugate(&self, a: Elem, s: Elem) -> Elem {
        self.mul(self.mul(a, s), self.inv(a))
    }

    /// The subgroup as a standalone group, re-indexed by increasing index.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        FiniteGroup(self.0.restrict(h))
    }
}

/// Validates a row-major table as a monoid.
///
/// Checks run in this order: shape and ranges, the identity law, then
/// associativity over all triples. Each failure reports the first witness in
/// scan order.
pub fn validate_monoid(order: usize, rows: &[Vec<Elem>], identity: Elem) -> Result<FiniteMonoid> {
    if order == 0 {
        return Err(Error::BadShape {
            expected: 1,
            found: 0,
        });
    }
    if rows.len() != order {
        return Err(Error::BadShape {
            expected: order * order,
            found: rows.iter().map(Vec::len).sum(),
        });
    }
    let mut flat = Vec::with_capacity(order * order);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != order {
            return Err(Error::BadShape {
                expected: order,
                found: row.len(),
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if v as usize >= order {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    value: v as usize,
                    order,
                });
            }
            flat.push(v);
        }
    }
    if identity as usize >= order {
        return Err(Error::IndexOutOfRange {
            row: identity as usize,
            col: identity as usize,
            value: identity as usize,
            order,
        });
    }
    let at = |a: usize, b: usize| flat[a * order + b] as usize;
    let e = identity as usize;
    for i in 0..order {
        if at(e, i) != i || at(i, e) != i {
            return Err(Error::BadIdentity {
                identity,
                element: i as Elem,
            });
        }
    }
    for a in 0..order {
        for b in 0..order {
            let ab = at(a, b);
            for c in 0..order {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(Error::NotAssociative {
                        a: a as Elem,
                        b: b as Elem,
                        c: c as Elem,
                    });
                }
            }
        }
    }
    Ok(FiniteMonoid::from_table_unchecked(order, flat, identity))
}

/// Attaches inverses, failing with the first element lacking one.
pub fn as_group(m: &FiniteMonoid) -> Result<FiniteGroup> {
    if m.is_group() {
        return Ok(FiniteGroup(m.clone()));
    }
    let e = m.identity();
    let mut inverse = Vec::with_capacity(m.order());
    for a in m.elements() {
        let inv = m
            .elements()
            .find(|&b| m.mul(a, b) == e && m.mul(b, a) == e)
            .ok_or(Error::NotAGroup { element: a })?;
        inverse.push(inv);
    }
    let inner = Inner {
        order: m.order(),
        identity: e,
        law: m.inner.law.clone(),
        inverse: Some(inverse),
        perms: m.inner.perms.clone(),
        parent: m.inner.parent.clone(),
        labels: m.inner.labels.clone(),
    };
    Ok(FiniteGroup(FiniteMonoid {
        inner: Arc::new(inner),
    }))
}

/// Elements with a two-sided inverse.
pub fn units(m: &FiniteMonoid) -> Subgroup {
    if m.is_group() {
        return Subgroup::full(m.order());
    }
    let e = m.identity();
    let members = m
        .elements()
        .filter(|&a| m.elements().any(|b| m.mul(a, b) == e && m.mul(b, a) == e))
        .map(|a| a as usize);
    Subgroup::from_indices_unchecked(m.order(), members)
}

/// The units of `m` as a group in their own right.
pub fn unit_group(m: &FiniteMonoid) -> FiniteGroup {
    let u = units(m);
    if m.is_group() {
        return FiniteGroup(m.clone());
    }
    as_group(&m.restrict(&u)).expect("units form a group")
}

pub fn center(m: &FiniteMonoid) -> Subgroup {
    let members = m
        .elements()
        .filter(|&a| m.elements().all(|b| m.mul(a, b) == m.mul(b, a)))
        .map(|a| a as usize);
    Subgroup::from_indices_unchecked(m.order(), members)
}

/// The monoid with multiplication `a .op b = b * a`.
pub fn opposite(m: &FiniteMonoid) -> FiniteMonoid {
    let n = m.order();
    let mut flat = Vec::with_capacity(n * n);
    for a in m.elements() {
        for b in m.elements() {
            flat.push(m.mul(b, a));
        }
    }
    let inner = Inner {
        order: n,
        identity: m.identity(),
        law: Law::Table(flat.into()),
        inverse: m.inner.inverse.clone(),
        perms: None,
        parent: None,
        labels: m.inner.labels.clone(),
    };
    FiniteMonoid {
        inner: Arc::new(inner),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn semilattice() -> FiniteMonoid {
        validate_monoid(2, &[vec![0, 1], vec![1, 1]], 0).unwrap()
    }

    #[test]
    fn validates_small_tables() {
        let z2 = validate_monoid(2, &[vec![0, 1], vec![1, 0]], 0).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(semilattice().order(), 2);
        assert_eq!(
            validate_monoid(2, &[vec![0, 1], vec![0, 0]], 0).unwrap_err(),
            Error::BadIdentity {
                identity: 0,
                element: 1
            }
        );
    }

    #[test]
    fn reports_associativity_witness() {
        // 0 is the identity; 1*1 = 2, 1*2 = 1, 2*1 = 2, 2*2 = 2.
        let rows = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        match validate_monoid(3, &rows, 0) {
            Err(Error::NotAssociative { a, b, c }) => {
                let at = |x: u32, y: u32| rows[x as usize][y as usize];
                assert_ne!(at(at(a, b), c), at(a, at(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(matches!(
            validate_monoid(2, &[vec![0, 2], vec![1, 0]], 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            validate_monoid(2, &[vec![0, 1]], 0),
            Err(Error::BadShape { .. })
        ));
    }

    #[test]
    fn group_detection() {
        let z2 = validate_monoid(2, &[vec![0, 1], vec![1, 0]], 0).unwrap();
        let g = as_group(&z2).unwrap();
        assert_eq!((g.inv(0), g.inv(1)), (0, 1));
        assert_eq!(
            as_group(&semilattice()).unwrap_err(),
            Error::NotAGroup { element: 1 }
        );
        let s3 = symmetric_group(3, &Default::default()).unwrap();
        assert_eq!(as_group(&s3).unwrap().order(), 6);
    }

    #[test]
    fn units_of_monoids() {
        assert_eq!(
            units(&semilattice()).elements().collect::<Vec<_>>(),
            vec![0]
        );
        let z2 = as_group(&validate_monoid(2, &[vec![0, 1], vec![1, 0]], 0).unwrap()).unwrap();
        assert_eq!(units(&z2).order(), 2);
        // Z/2 x {1, z}: indices (a, s) -> 2a + s; units have s = 1.
        let prod = direct_product(&z2, &semilattice());
        assert_eq!(units(&prod).elements().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn centers() {
        let limits = Default::default();
        let s3 = symmetric_group(3, &limits).unwrap();
        assert_eq!(center(&s3).order(), 1);
        let z2 = cyclic_group(2);
        let prod = direct_product(&s3, &z2);
        let z = center(&prod);
        assert_eq!(z.elements().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(center(&cyclic_group(6)).order(), 6);
    }

    #[test]
    fn opposite_is_transpose_and_involution() {
        let s3 = symmetric_group(3, &Default::default()).unwrap();
        let op = opposite(&s3);
        for a in s3.elements() {
            for b in s3.elements() {
                assert_eq!(op.mul(a, b), s3.mul(b, a));
            }
        }
        assert!(opposite(&op) == *s3.monoid());
        let z4 = cyclic_group(4);
        assert!(opposite(&z4) == *z4.monoid());
    }

    #[test]
    fn restriction_keeps_labels_and_inverses() {
        let s4 = symmetric_group(4, &Default::default()).unwrap();
        let a4 = alternating_subgroup(&s4).unwrap();
        let g = s4.subgroup_as_group(&a4);
        assert_eq!(g.order(), 12);
        assert!(g.is_group());
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            assert!(g.permutation(a).unwrap().is_even());
        }
        assert_eq!(g.label(g.identity()), "()");
    }

    #[test]
    fn big_groups_use_computed_law() {
        let s7 = symmetric_group(7, &Default::default()).unwrap();
        assert_eq!(s7.order(), 5040);
        let a = s7
            .index_of_permutation(&Permutation::parse_cycles("(1 2 3 4 5 6 7)", 7).unwrap())
            .unwrap();
        assert_eq!(s7.element_order(a), 7);
        assert_eq!(s7.mul(a, s7.inv(a)), s7.identity());
    }
}
