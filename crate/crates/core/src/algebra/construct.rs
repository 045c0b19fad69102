use std::collections::VecDeque;

use rustc_hash::FxHashSet;

use super::perm::{Images, PermTable};
use super::{
    check_homomorphism, Elem, ElementMap, FiniteGroup, FiniteMonoid, Permutation, Subgroup,
    MAX_DEGREE,
};
use crate::error::{Error, Result};
use crate::exec::Limits;

/// `Z/n` with element `k` standing for `k mod n`.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order zero");
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as Elem))
        .collect();
    let inverse = (0..n).map(|a| ((n - a) % n) as Elem).collect();
    FiniteGroup(FiniteMonoid::from_table_unchecked(n, table, 0).with_inverse(inverse))
}

/// `S_n`, elements indexed by the lexicographic order of their one-line
/// notation (so index 0 is the identity).
pub fn symmetric_group(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    let cap = limits.max_symmetric_degree.min(MAX_DEGREE);
    if n == 0 || n > cap {
        return Err(Error::DegreeTooLarge { degree: n, cap });
    }
    Ok(FiniteGroup(FiniteMonoid::from_perm_table(
        PermTable::symmetric(n),
    )))
}

/// The permutation group generated by `gens`, elements in lexicographic
/// one-line order.
pub fn permutation_group(degree: usize, gens: &[Permutation]) -> Result<FiniteGroup> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            cap: MAX_DEGREE,
        });
    }
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::BadPermutation(format!(
            "{bad} has degree {} but the group has degree {degree}",
            bad.degree()
        )));
    }
    let gens: Vec<Images> = gens.iter().map(Permutation::packed).collect();
    let identity = Permutation::identity(degree).packed();
    let mut seen: FxHashSet<Images> = FxHashSet::default();
    seen.insert(identity);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let mut q = [0u8; MAX_DEGREE];
            for i in 0..degree {
                q[i] = p[g[i] as usize];
            }
            if seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    let mut elements: Vec<Images> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(FiniteGroup(FiniteMonoid::from_perm_table(
        PermTable::from_sorted(degree, elements),
    )))
}

/// The even permutations of a full symmetric group.
pub fn alternating_subgroup(s: &FiniteGroup) -> Result<Subgroup> {
    if !s.is_full_symmetric() {
        return Err(Error::NotASymmetricGroup);
    }
    Ok(Subgroup::from_indices_unchecked(
        s.order(),
        s.elements()
            .filter(|&a| s.permutation(a).is_some_and(|p| p.is_even()))
            .map(|a| a as usize),
    ))
}

/// `a x b` with componentwise product; element `(i, j)` has index
/// `i * |b| + j`. The result is a group when both factors are.
pub fn direct_product(a: &FiniteMonoid, b: &FiniteMonoid) -> FiniteMonoid {
    let (n, m) = (a.order(), b.order());
    let split = |x: usize| ((x / m) as Elem, (x % m) as Elem);
    let join = |i: Elem, j: Elem| i * m as Elem + j;
    let mut table = Vec::with_capacity(n * m * n * m);
    for x in 0..n * m {
        let (x1, x2) = split(x);
        for y in 0..n * m {
            let (y1, y2) = split(y);
            table.push(join(a.mul(x1, y1), b.mul(x2, y2)));
        }
    }
    let identity = join(a.identity(), b.identity());
    let mut prod =
        FiniteMonoid::from_table_unchecked(n * m, table, identity).with_pair_labels(a, b);
    if let (Some(ga), Some(gb)) = (a.to_group(), b.to_group()) {
        let inverse = (0..n * m)
            .map(|x| {
                let (x1, x2) = split(x);
                join(ga.inv(x1), gb.inv(x2))
            })
            .collect();
        prod = prod.with_inverse(inverse);
    }
    prod
}

/// `K x_M L` with its projections and the embedding of `Ker(g)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub group: FiniteGroup,
    /// Projection to `K`.
    pub to_k: ElementMap,
    /// Projection to `L`.
    pub to_l: ElementMap,
    /// `Ker(g)` as a group, indexed by increasing index in `L`.
    pub kernel: FiniteGroup,
    /// `l -> (1_K, l)`.
    pub iota: ElementMap,
}

/// The fibre product of two group homomorphisms with a common codomain.
///
/// Elements are the pairs `(k, l)` with `f(k) = g(l)`, indexed in increasing
/// order of `k * |L| + l`.
pub fn pullback(f: &ElementMap, g: &ElementMap) -> Result<Pullback> {
    if f.codomain() != g.codomain() {
        return Err(Error::DomainMismatch(
            "f and g must share a codomain".into(),
        ));
    }
    for (name, map) in [("f", f), ("g", g)] {
        if let Some((a, b)) = map.homomorphism_witness() {
            return Err(Error::NotHomomorphism(format!(
                "{name}({a}*{b}) != {name}({a})*{name}({b})"
            )));
        }
    }
    let (k, l) = (
        f.domain()
            .to_group()
            .ok_or(Error::NotAGroup { element: 0 })?,
        g.domain()
            .to_group()
            .ok_or(Error::NotAGroup { element: 0 })?,
    );
    let product = direct_product(&k, &l)
        .to_group()
        .expect("product of groups is a group");
    let lo = l.order();
    let members = Subgroup::from_indices_unchecked(
        product.order(),
        (0..product.order()).filter(|&x| f.apply((x / lo) as Elem) == g.apply((x % lo) as Elem)),
    );
    let group = product.subgroup_as_group(&members);
    let pairs = group.parent_elements().expect("restricted").to_vec();
    let to_k =
        ElementMap::new_unchecked(&group, &k, pairs.iter().map(|&x| x / lo as Elem).collect());
    let to_l =
        ElementMap::new_unchecked(&group, &l, pairs.iter().map(|&x| x % lo as Elem).collect());
    let kernel = l.subgroup_as_group(&g.kernel());
    let position = |pair: Elem| {
        pairs
            .binary_search(&pair)
            .expect("kernel pairs lie in the pullback") as Elem
    };
    let iota = ElementMap::new_unchecked(
        &kernel,
        &group,
        kernel
            .parent_elements()
            .expect("restricted")
            .iter()
            .map(|&ll| position(k.identity() * lo as Elem + ll))
            .collect(),
    );
    debug_assert!(check_homomorphism(&iota));
    Ok(Pullback {
        group,
        to_k,
        to_l,
        kernel,
        iota,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_alternating_orders() {
        let limits = Limits::default();
        for (n, fact) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            let s = symmetric_group(n, &limits).unwrap();
            assert_eq!(s.order(), fact);
            assert_eq!(s.identity(), 0);
            let a = alternating_subgroup(&s).unwrap();
            assert_eq!(a.order(), if n >= 2 { fact / 2 } else { 1 });
            assert!(a.is_closed_in(&s));
        }
        assert_eq!(
            symmetric_group(9, &limits).unwrap_err(),
            Error::DegreeTooLarge { degree: 9, cap: 8 }
        );
        assert!(symmetric_group(0, &limits).is_err());
        assert_eq!(
            alternating_subgroup(&cyclic_group(2)).unwrap_err(),
            Error::NotASymmetricGroup
        );
    }

    #[test]
    fn a3_is_the_three_cycles() {
        let s3 = symmetric_group(3, &Limits::default()).unwrap();
        let a3 = alternating_subgroup(&s3).unwrap();
        let labels: Vec<String> = a3.elements().map(|a| s3.label(a)).collect();
        assert_eq!(labels, ["()", "(1 2 3)", "(1 3 2)"]);
    }

    #[test]
    fn permutation_group_orders() {
        let gens = |texts: &[&str], n| -> Vec<Permutation> {
            texts
                .iter()
                .map(|t| Permutation::parse_cycles(t, n).unwrap())
                .collect()
        };
        let d4 = permutation_group(4, &gens(&["(1 2 3 4)", "(1 3)"], 4)).unwrap();
        assert_eq!(d4.order(), 8);
        let a4 = permutation_group(4, &gens(&["(1 2 3)", "(1 2)(3 4)"], 4)).unwrap();
        assert_eq!(a4.order(), 12);
        let trivial = permutation_group(3, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        for a in d4.elements() {
            assert_eq!(d4.mul(a, d4.inv(a)), d4.identity());
        }
    }

    #[test]
    fn pullback_examples() {
        let z2 = cyclic_group(2);
        let one = cyclic_group(1);
        let to_one = ElementMap::constant_identity(&z2, &one);
        let klein = pullback(&to_one, &to_one).unwrap();
        assert_eq!(klein.group.order(), 4);
        assert_eq!(klein.kernel.order(), 2);
        let labels: Vec<String> = klein
            .iota
            .values()
            .iter()
            .map(|&x| klein.group.label(x))
            .collect();
        assert_eq!(labels, ["(0,0)", "(0,1)"]);

        let id = ElementMap::identity(&z2);
        let diagonal = pullback(&id, &id).unwrap();
        assert_eq!(diagonal.group.order(), 2);
        assert_eq!(diagonal.kernel.order(), 1);

        let bad = ElementMap::new(&z2, &z2, vec![1, 1]).unwrap();
        assert!(matches!(
            pullback(&bad, &id),
            Err(Error::NotHomomorphism(_))
        ));
    }

    #[test]
    fn direct_product_indexing() {
        let p = direct_product(&cyclic_group(2), &cyclic_group(3));
        assert!(p.is_group());
        assert_eq!(p.order(), 6);
        assert_eq!(p.mul(1, 3), 4);
        assert_eq!(p.label(5), "(1,2)");
    }
}
