//! Partitions of a list into classes, and the union-find that builds them.

use serde::Serialize;

/// Disjoint-set forest over `0..n`. Roots are always the smallest index in
/// their set, so class order is independent of union order.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }
}

/// A list of items split into classes.
///
/// Items are kept in the order supplied, which callers choose to be
/// canonical; each class is represented by its first item, and classes are
/// listed in order of their representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition<T> {
    items: Vec<T>,
    classes: Vec<Vec<usize>>,
}

impl<T> OrbitPartition<T> {
    pub(crate) fn from_union_find(items: Vec<T>, mut uf: UnionFind) -> Self {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; items.len()];
        for i in 0..items.len() {
            let root = uf.find(i);
            if slot[root] == usize::MAX {
                slot[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[root]].push(i);
        }
        OrbitPartition { items, classes }
    }

    /// Partition into classes of a relation given by a pairwise predicate.
    pub fn from_relation(items: Vec<T>, related: impl Fn(&T, &T) -> bool) -> Self {
        let mut uf = UnionFind::new(items.len());
        for i in 0..items.len() {
            for j in 0..i {
                if uf.find(i) != uf.find(j) && related(&items[j], &items[i]) {
                    uf.union(i, j);
                }
            }
        }
        OrbitPartition::from_union_find(items, uf)
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    /// Item indices of each class, ascending.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> &T {
        &self.items[self.classes[class][0]]
    }

    pub fn representatives(&self) -> impl Iterator<Item = &T> {
        self.classes.iter().map(|c| &self.items[c[0]])
    }

    /// Class index of item `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&i).is_ok())
            .expect("item index in range")
    }

    /// Class sizes, in class order.
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A set of cocycle classes, optionally pointed at a distinguished class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleClassSet<C> {
    pub partition: OrbitPartition<C>,
    pub base_class: Option<usize>,
}

impl<C> CocycleClassSet<C> {
    pub fn len(&self) -> usize {
        self.partition.class_count()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }

    pub fn cocycles(&self) -> &[C] {
        self.partition.items()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &C> {
        self.partition.representatives()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classes_follow_first_occurrence() {
        let p = OrbitPartition::from_relation(vec![3, 5, 4, 7, 6], |a, b| a % 2 == b % 2);
        assert_eq!(p.classes(), &[vec![0, 1, 3], vec![2, 4]]);
        assert_eq!(p.representatives().copied().collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(p.class_of(4), 1);
    }

    proptest! {
        #[test]
        fn union_order_does_not_matter(edges in proptest::collection::vec((0usize..12, 0usize..12), 0..20)) {
            let mut forward = UnionFind::new(12);
            let mut backward = UnionFind::new(12);
            for &(a, b) in &edges {
                forward.union(a, b);
            }
            for &(a, b) in edges.iter().rev() {
                backward.union(b, a);
            }
            let f = OrbitPartition::from_union_find((0..12).collect::<Vec<_>>(), forward);
            let b = OrbitPartition::from_union_find((0..12).collect::<Vec<_>>(), backward);
            prop_assert_eq!(f, b);
        }
    }
}
