//! Complements to a subgroup, exact factorizations `A = BX`, and their
//! classification up to conjugacy.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::algebra::{
    all_subgroups, conjugate_subgroup, generators, normality_witness, search_subgroups, Elem,
    ElementMap, FiniteGroup, Subgroup,
};
use crate::cohomology::{semidirect, validate_action, MonoidAction};
use crate::error::{Error, Result};
use crate::exec::{self, Limits};
use crate::partition::{OrbitPartition, UnionFind};

/// The complements to `b` in `ambient`, sorted by bitset.
#[derive(Clone, Debug)]
pub struct ComplementSet {
    pub ambient: FiniteGroup,
    pub b: Subgroup,
    pub members: Vec<Subgroup>,
}

/// An ordered pair of proper subgroups with `B ∩ X = 1` and `BX = A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorizationRecord {
    pub b: Subgroup,
    pub x: Subgroup,
}

fn same_ambient(a: &FiniteGroup, h: &Subgroup) -> Result<()> {
    if h.ambient_order() != a.order() {
        return Err(Error::AmbientMismatch {
            left: a.order(),
            right: h.ambient_order(),
        });
    }
    Ok(())
}

/// Whether `B ∩ X = {1}` and the product set `BX` is all of `A`.
pub fn is_complement(a: &FiniteGroup, b: &Subgroup, x: &Subgroup) -> Result<bool> {
    same_ambient(a, b)?;
    same_ambient(a, x)?;
    if b.intersection_order(x) != 1 || b.order() * x.order() != a.order() {
        return Ok(false);
    }
    let mut product = crate::bitset::BitSet::new(a.order());
    let xs: Vec<Elem> = x.elements().collect();
    for s in b.elements() {
        for &t in &xs {
            product.insert(a.mul(s, t) as usize);
        }
    }
    Ok(product.count() == a.order())
}

/// Every complement to `b` in `a`.
///
/// Only elements outside `b` whose order divides `|A|/|B|` can lie in a
/// complement, so the search closes subsets of those, discarding any
/// subgroup whose order does not divide `|A|/|B|` or which meets `b`.
pub fn complements(a: &FiniteGroup, b: &Subgroup, limits: &Limits) -> Result<ComplementSet> {
    same_ambient(a, b)?;
    let mut set = ComplementSet {
        ambient: a.clone(),
        b: b.clone(),
        members: Vec::new(),
    };
    if !a.order().is_multiple_of(b.order()) {
        return Ok(set);
    }
    let k = a.order() / b.order();
    let candidates: Vec<Elem> = exec::map_range(limits, a.order(), |i| {
        let x = i as Elem;
        (!b.contains(x) && k.is_multiple_of(a.element_order(x))).then_some(x)
    })
    .into_iter()
    .flatten()
    .collect();
    let found = search_subgroups(
        a,
        &candidates,
        k,
        |h: &Subgroup| k.is_multiple_of(h.order()) && b.intersection_order(h) == 1,
        limits.closure_budget,
        limits,
    )?;
    for x in found {
        if x.order() == k && is_complement(a, b, &x)? {
            set.members.push(x);
        }
    }
    set.members.sort();
    Ok(set)
}

/// Index of each subgroup in a list, for orbit lookups.
fn index_map(items: &[Subgroup]) -> FxHashMap<&Subgroup, usize> {
    items.iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// Classes of complements under conjugation by elements of `B`.
pub fn b_orbits_of_complements(c: &ComplementSet, limits: &Limits) -> OrbitPartition<Subgroup> {
    let a = &c.ambient;
    let gens = generators(a, &c.b);
    let lookup = index_map(&c.members);
    let images: Vec<Vec<usize>> = exec::map_slice(limits, &c.members, |x| {
        gens.iter()
            .map(|&g| {
                *lookup
                    .get(&conjugate_subgroup(a, g, x))
                    .expect("conjugates of complements are complements")
            })
            .collect()
    });
    let mut uf = UnionFind::new(c.members.len());
    for (i, targets) in images.iter().enumerate() {
        for &j in targets {
            uf.union(i, j);
        }
    }
    OrbitPartition::from_union_find(c.members.clone(), uf)
}

/// All factorizations `A = BX` with `B` and `X` proper and nontrivial,
/// sorted by `(B, X)`.
pub fn fac(a: &FiniteGroup, limits: &Limits) -> Result<Vec<FactorizationRecord>> {
    let subgroups = all_subgroups(a, limits)?;
    let proper: Vec<&Subgroup> = subgroups
        .iter()
        .filter(|s| s.is_proper() && !s.is_trivial())
        .collect();
    let mut out = Vec::new();
    for b in proper {
        for x in complements(a, b, limits)?.members {
            if x.is_proper() && !x.is_trivial() {
                out.push(FactorizationRecord { b: b.clone(), x });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Factorizations up to `(B, X) ~ (B, aXa^-1)`.
///
/// Writing `a = bx` gives `aXa^-1 = bXb^-1`, so conjugating by generators of
/// `B` reaches every class while staying inside the set of complements.
pub fn fac_classes(
    a: &FiniteGroup,
    records: &[FactorizationRecord],
) -> OrbitPartition<FactorizationRecord> {
    let mut items = records.to_vec();
    items.sort();
    let lookup: FxHashMap<&FactorizationRecord, usize> =
        items.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut uf = UnionFind::new(items.len());
    for (i, r) in items.iter().enumerate() {
        for g in generators(a, &r.b) {
            let image = FactorizationRecord {
                b: r.b.clone(),
                x: conjugate_subgroup(a, g, &r.x),
            };
            if let Some(&j) = lookup.get(&image) {
                uf.union(i, j);
            }
        }
    }
    OrbitPartition::from_union_find(items, uf)
}

/// A normal subgroup with a complement, written as a semidirect product.
#[derive(Clone, Debug)]
pub struct ConjugationSplitting {
    /// `B` as a group, indexed by increasing index in `A`.
    pub b: FiniteGroup,
    /// `X` as a group, indexed by increasing index in `A`.
    pub x: FiniteGroup,
    /// `x * b = x b x^-1`.
    pub action: MonoidAction,
    /// `(b, x) -> bx`, an isomorphism from the semidirect product onto `A`.
    pub isomorphism: ElementMap,
}

/// The conjugation action of a complement on a normal subgroup, with the
/// isomorphism `B ⋊ X -> A`.
pub fn conjugation_action(
    a: &FiniteGroup,
    b: &Subgroup,
    x: &Subgroup,
) -> Result<ConjugationSplitting> {
    if let Some((member, by)) = normality_witness(a, b) {
        return Err(Error::NotNormal { member, by });
    }
    if !is_complement(a, b, x)? {
        return Err(Error::NotComplement(format!(
            "subgroup of order {} is not a complement to the subgroup of order {}",
            x.order(),
            b.order()
        )));
    }
    let bg = a.subgroup_as_group(b);
    let xg = a.subgroup_as_group(x);
    let b_elems = bg.parent_elements().expect("restricted");
    let x_elems = xg.parent_elements().expect("restricted");
    let star: Vec<Vec<Elem>> = x_elems
        .iter()
        .map(|&xa| {
            b_elems
                .iter()
                .map(|&ba| {
                    let c = a.conjugate(xa, ba);
                    b_elems.binary_search(&c).expect("B is normal") as Elem
                })
                .collect()
        })
        .collect();
    let action = validate_action(&xg, &bg, star)?;
    let sd = semidirect(&action);
    let isomorphism = ElementMap::from_fn(&sd.monoid, a, |p| {
        let (bi, xi) = sd.split(p);
        a.mul(b_elems[bi as usize], x_elems[xi as usize])
    })?;
    if !isomorphism.is_injective() {
        return Err(Error::NotComplement("(b, x) -> bx is not injective".into()));
    }
    if let Some((p, q)) = isomorphism.homomorphism_witness() {
        return Err(Error::NotHomomorphism(format!(
            "(b, x) -> bx fails on {} and {}",
            sd.monoid.label(p),
            sd.monoid.label(q)
        )));
    }
    Ok(ConjugationSplitting {
        b: bg,
        x: xg,
        action,
        isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        alternating_subgroup, cyclic_group, direct_product, subgroup_generated, symmetric_group,
        Permutation,
    };

    fn perm(g: &FiniteGroup, text: &str) -> Elem {
        let p = Permutation::parse_cycles(text, g.degree().unwrap()).unwrap();
        g.index_of_permutation(&p).unwrap()
    }

    fn gen(g: &FiniteGroup, text: &str) -> Subgroup {
        subgroup_generated(g, &[perm(g, text)]).unwrap()
    }

    /// Complements by scanning every subgroup.
    fn complements_by_scan(a: &FiniteGroup, b: &Subgroup) -> Vec<Subgroup> {
        all_subgroups(a, &Limits::default())
            .unwrap()
            .into_iter()
            .filter(|x| {
                let product: std::collections::BTreeSet<Elem> = b
                    .elements()
                    .flat_map(|s| x.elements().map(move |t| a.mul(s, t)))
                    .collect();
                b.intersection_order(x) == 1 && product.len() == a.order()
            })
            .collect()
    }

    #[test]
    fn complements_in_s3() {
        let limits = Limits::default();
        let s3 = symmetric_group(3, &limits).unwrap();
        let a3 = alternating_subgroup(&s3).unwrap();
        let t = gen(&s3, "(1 2)");
        assert!(is_complement(&s3, &t, &a3).unwrap());
        let c = complements(&s3, &t, &limits).unwrap();
        assert_eq!(c.members, vec![a3.clone()]);
        assert_eq!(b_orbits_of_complements(&c, &limits).class_count(), 1);
        let c = complements(&s3, &a3, &limits).unwrap();
        assert_eq!(c.members.len(), 3);
        assert_eq!(b_orbits_of_complements(&c, &limits).class_count(), 1);
        let trivial = Subgroup::trivial(&s3);
        assert_eq!(
            complements(&s3, &trivial, &limits).unwrap().members,
            vec![Subgroup::full(6)]
        );
    }

    #[test]
    fn complements_match_scan_on_small_groups() {
        let limits = Limits::default();
        let groups = [
            symmetric_group(3, &limits).unwrap(),
            symmetric_group(4, &limits).unwrap(),
            cyclic_group(12),
            direct_product(&cyclic_group(2), &cyclic_group(4))
                .to_group()
                .unwrap(),
        ];
        for a in &groups {
            for b in all_subgroups(a, &limits).unwrap() {
                assert_eq!(
                    complements(a, &b, &limits).unwrap().members,
                    complements_by_scan(a, &b),
                    "group of order {} and subgroup {b:?}",
                    a.order()
                );
            }
        }
    }

    #[test]
    fn z4_has_no_factorizations() {
        let limits = Limits::default();
        let z4 = cyclic_group(4);
        let two = subgroup_generated(&z4, &[2]).unwrap();
        assert!(!is_complement(&z4, &two, &two).unwrap());
        assert!(complements(&z4, &two, &limits).unwrap().members.is_empty());
        assert!(fac(&z4, &limits).unwrap().is_empty());
        for p in [2, 3, 5, 7, 11] {
            assert!(fac(&cyclic_group(p), &limits).unwrap().is_empty());
        }
        assert!(fac(&cyclic_group(1), &limits).unwrap().is_empty());
    }

    #[test]
    fn s3_census() {
        let limits = Limits::default();
        let s3 = symmetric_group(3, &limits).unwrap();
        let records = fac(&s3, &limits).unwrap();
        assert_eq!(records.len(), 6);
        let classes = fac_classes(&s3, &records);
        assert_eq!(classes.class_count(), 4);
        assert_eq!(classes.sizes().iter().filter(|&&s| s == 3).count(), 1);
    }

    #[test]
    fn s3_is_z3_by_z2() {
        let limits = Limits::default();
        let s3 = symmetric_group(3, &limits).unwrap();
        let a3 = alternating_subgroup(&s3).unwrap();
        let t = gen(&s3, "(1 2)");
        let split = conjugation_action(&s3, &a3, &t).unwrap();
        // The transposition inverts the 3-cycles.
        let tx = 1;
        for b in split.b.elements() {
            assert_eq!(split.action.act(tx, b), split.b.inv(b));
        }
        assert!(matches!(
            conjugation_action(&s3, &t, &a3),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn klein_splits_trivially() {
        let klein = direct_product(&cyclic_group(2), &cyclic_group(2))
            .to_group()
            .unwrap();
        let left = subgroup_generated(&klein, &[2]).unwrap();
        let right = subgroup_generated(&klein, &[1]).unwrap();
        let split = conjugation_action(&klein, &left, &right).unwrap();
        assert!(split.action.is_trivial());
        let whole = Subgroup::full(4);
        let trivial = Subgroup::trivial(&klein);
        let split = conjugation_action(&klein, &whole, &trivial).unwrap();
        assert!(split.action.is_trivial());
    }
}
