//! Descent cocycles along a monoid homomorphism `ι: B -> A`.
//!
//! A left cocycle is a map `q: A -> B` with
//!
//! * `q(1) = 1`,
//! * `q(ι(b) a) = b q(a)`,
//! * `q(a a') = q(a ι(q(a')))`;
//!
//! a right cocycle `p` satisfies the mirror conditions `p(1) = 1`,
//! `p(a ι(b)) = p(a) b` and `p(a a') = p(ι(p(a)) a')`. Two left cocycles are
//! equivalent when some unit `b0` of `B` has `q(a) b0 = q'(a ι(b0))` for
//! every `a`.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

use crate::algebra::{
    center, check_homomorphism, generators, homomorphisms, units, Elem, ElementMap, FiniteMonoid,
    Subgroup,
};
use crate::error::{Error, Result};
use crate::exec::{self, Limits};
use crate::factorization::{complements, is_complement};
use crate::partition::{CocycleClassSet, OrbitPartition, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One of the three defining conditions of a cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// The identity goes to the identity.
    Identity,
    /// Compatibility with multiplication by `ι(B)`.
    Equivariance,
    /// The twisted multiplicativity rule.
    Composition,
}

/// The first failing condition, with the witnessing elements in scan order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub side: Side,
    pub condition: Condition,
    pub witness: Vec<Elem>,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Identity => "identity",
            Condition::Equivariance => "equivariance",
            Condition::Composition => "composition",
        })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.witness;
        write!(f, "{} condition fails: ", self.condition)?;
        match (self.side, self.condition) {
            (_, Condition::Identity) => write!(f, "the identity is not sent to the identity"),
            (Side::Left, Condition::Equivariance) => {
                write!(f, "q(ι(b) a) != b q(a) at b = {}, a = {}", w[0], w[1])
            }
            (Side::Right, Condition::Equivariance) => {
                write!(f, "p(a ι(b)) != p(a) b at a = {}, b = {}", w[0], w[1])
            }
            (Side::Left, Condition::Composition) => {
                write!(f, "q(a a') != q(a ι(q(a'))) at a = {}, a' = {}", w[0], w[1])
            }
            (Side::Right, Condition::Composition) => {
                write!(f, "p(a a') != p(ι(p(a)) a') at a = {}, a' = {}", w[0], w[1])
            }
        }
    }
}

fn check_shapes(iota: &ElementMap, q: &ElementMap) -> Result<()> {
    if q.domain() != iota.codomain() || q.codomain() != iota.domain() {
        return Err(Error::DomainMismatch(
            "a cocycle for ι: B -> A must be a map A -> B".into(),
        ));
    }
    Ok(())
}

/// Whether one left condition holds.
pub fn left_condition_holds(
    iota: &ElementMap,
    q: &ElementMap,
    condition: Condition,
) -> Result<bool> {
    check_shapes(iota, q)?;
    Ok(left_failure(iota, q, condition).is_none())
}

fn left_failure(iota: &ElementMap, q: &ElementMap, condition: Condition) -> Option<Vec<Elem>> {
    let (a_m, b_m) = (iota.codomain(), iota.domain());
    match condition {
        Condition::Identity => (q.apply(a_m.identity()) != b_m.identity()).then(Vec::new),
        Condition::Equivariance => b_m.elements().find_map(|b| {
            a_m.elements()
                .find(|&a| q.apply(a_m.mul(iota.apply(b), a)) != b_m.mul(b, q.apply(a)))
                .map(|a| vec![b, a])
        }),
        Condition::Composition => a_m.elements().find_map(|a| {
            a_m.elements()
                .find(|&a2| q.apply(a_m.mul(a, a2)) != q.apply(a_m.mul(a, iota.apply(q.apply(a2)))))
                .map(|a2| vec![a, a2])
        }),
    }
}

fn right_failure(iota: &ElementMap, p: &ElementMap, condition: Condition) -> Option<Vec<Elem>> {
    let (a_m, b_m) = (iota.codomain(), iota.domain());
    match condition {
        Condition::Identity => (p.apply(a_m.identity()) != b_m.identity()).then(Vec::new),
        Condition::Equivariance => a_m.elements().find_map(|a| {
            b_m.elements()
                .find(|&b| p.apply(a_m.mul(a, iota.apply(b))) != b_m.mul(p.apply(a), b))
                .map(|b| vec![a, b])
        }),
        Condition::Composition => a_m.elements().find_map(|a| {
            a_m.elements()
                .find(|&a2| p.apply(a_m.mul(a, a2)) != p.apply(a_m.mul(iota.apply(p.apply(a)), a2)))
                .map(|a2| vec![a, a2])
        }),
    }
}

const CONDITIONS: [Condition; 3] = [
    Condition::Identity,
    Condition::Equivariance,
    Condition::Composition,
];

/// The first failing left condition, checked in the order identity,
/// equivariance, composition.
pub fn left_violation(iota: &ElementMap, q: &ElementMap) -> Result<Option<Violation>> {
    check_shapes(iota, q)?;
    Ok(CONDITIONS.iter().find_map(|&condition| {
        left_failure(iota, q, condition).map(|witness| Violation {
            side: Side::Left,
            condition,
            witness,
        })
    }))
}

pub fn right_violation(iota: &ElementMap, p: &ElementMap) -> Result<Option<Violation>> {
    check_shapes(iota, p)?;
    Ok(CONDITIONS.iter().find_map(|&condition| {
        right_failure(iota, p, condition).map(|witness| Violation {
            side: Side::Right,
            condition,
            witness,
        })
    }))
}

pub fn is_left_cocycle(iota: &ElementMap, q: &ElementMap) -> Result<bool> {
    Ok(left_violation(iota, q)?.is_none())
}

pub fn is_right_cocycle(iota: &ElementMap, p: &ElementMap) -> Result<bool> {
    Ok(right_violation(iota, p)?.is_none())
}

/// A map `A -> B` known to satisfy the cocycle conditions for `ι`.
#[derive(Clone, Debug)]
pub struct DescentCocycle {
    iota: ElementMap,
    q: ElementMap,
    side: Side,
}

impl DescentCocycle {
    /// Checks the left conditions exhaustively.
    pub fn left(iota: &ElementMap, q: ElementMap) -> Result<Self> {
        match left_violation(iota, &q)? {
            Some(v) => Err(Error::NotACocycle(v.to_string())),
            None => Ok(DescentCocycle::trusted(iota, q, Side::Left)),
        }
    }

    pub fn right(iota: &ElementMap, p: ElementMap) -> Result<Self> {
        match right_violation(iota, &p)? {
            Some(v) => Err(Error::NotACocycle(v.to_string())),
            None => Ok(DescentCocycle::trusted(iota, p, Side::Right)),
        }
    }

    pub(crate) fn trusted(iota: &ElementMap, q: ElementMap, side: Side) -> Self {
        DescentCocycle {
            iota: iota.clone(),
            q,
            side,
        }
    }

    pub fn iota(&self) -> &ElementMap {
        &self.iota
    }

    pub fn map(&self) -> &ElementMap {
        &self.q
    }

    pub fn values(&self) -> &[Elem] {
        self.q.values()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.q.apply(a)
    }
}

impl PartialEq for DescentCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.values() == other.values()
    }
}

impl Eq for DescentCocycle {}

impl PartialOrd for DescentCocycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the value array.
impl Ord for DescentCocycle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.side, self.values()).cmp(&(other.side, other.values()))
    }
}

impl Serialize for DescentCocycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            side: Side,
            values: &'a [Elem],
        }
        Doc {
            side: self.side,
            values: self.values(),
        }
        .serialize(s)
    }
}

fn require_injective(iota: &ElementMap) -> Result<()> {
    match iota.injectivity_witness() {
        Some((a, b)) => Err(Error::NotInjective { a, b }),
        None => Ok(()),
    }
}

/// The cocycle `q_X` of a complement: `q_X(ι(b) x) = b` for `x` in `X`.
pub fn cocycle_from_complement(iota: &ElementMap, x: &Subgroup) -> Result<DescentCocycle> {
    let a = iota.codomain().to_group().ok_or(Error::NotAGroup {
        element: iota.codomain().identity(),
    })?;
    require_injective(iota)?;
    if !is_complement(&a, &iota.image(), x)? {
        return Err(Error::NotComplement(format!(
            "subgroup of order {} is not a complement to ι(B)",
            x.order()
        )));
    }
    Ok(complement_cocycle(iota, x))
}

/// [`cocycle_from_complement`] for a known complement.
fn complement_cocycle(iota: &ElementMap, x: &Subgroup) -> DescentCocycle {
    let a = iota.codomain();
    let mut values = vec![0; a.order()];
    let xs: Vec<Elem> = x.elements().collect();
    for b in iota.domain().elements() {
        let ib = iota.apply(b);
        for &s in &xs {
            values[a.mul(ib, s) as usize] = b;
        }
    }
    DescentCocycle::trusted(
        iota,
        ElementMap::new_unchecked(a, iota.domain(), values),
        Side::Left,
    )
}

/// `q^-1(1)`, checked to be a complement to `ι(B)`.
pub fn kernel_of_cocycle(c: &DescentCocycle) -> Result<Subgroup> {
    let a = c.iota.codomain().to_group().ok_or(Error::NotAGroup {
        element: c.iota.codomain().identity(),
    })?;
    let kernel = c.q.kernel();
    if !kernel.is_closed_in(&a) {
        return Err(Error::NotACocycle("the kernel is not a subgroup".into()));
    }
    if !is_complement(&a, &c.iota.image(), &kernel)? {
        return Err(Error::NotACocycle(
            "the kernel is not a complement to ι(B)".into(),
        ));
    }
    Ok(kernel)
}

/// How to find the left cocycles of `ι`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Complements when `A`, `B` are groups and `ι` is injective, brute
    /// force otherwise.
    Auto,
    /// One cocycle per complement to `ι(B)`.
    Complements,
    /// Every map `A -> B`, filtered.
    BruteForce,
}

/// All left cocycles for `ι`, sorted by value array.
pub fn enumerate_left_cocycles(iota: &ElementMap, limits: &Limits) -> Result<Vec<DescentCocycle>> {
    enumerate_left_cocycles_with(iota, Strategy::Auto, limits)
}

pub fn enumerate_left_cocycles_with(
    iota: &ElementMap,
    strategy: Strategy,
    limits: &Limits,
) -> Result<Vec<DescentCocycle>> {
    let groups = iota.codomain().is_group() && iota.domain().is_group();
    let use_complements = match strategy {
        Strategy::Complements => true,
        Strategy::BruteForce => false,
        Strategy::Auto => groups && iota.is_injective(),
    };
    let mut out = if use_complements {
        let a = iota.codomain().to_group().ok_or(Error::NotAGroup {
            element: iota.codomain().identity(),
        })?;
        require_injective(iota)?;
        let set = complements(&a, &iota.image(), limits)?;
        exec::map_slice(limits, &set.members, |x| complement_cocycle(iota, x))
    } else {
        let maps = brute_force_maps(iota.codomain(), iota.domain(), limits, |values| {
            let q = ElementMap::new_unchecked(iota.codomain(), iota.domain(), values.to_vec());
            left_violation(iota, &q).ok().flatten().is_none()
        })?;
        maps.into_iter()
            .map(|v| {
                DescentCocycle::trusted(
                    iota,
                    ElementMap::new_unchecked(iota.codomain(), iota.domain(), v),
                    Side::Left,
                )
            })
            .collect()
    };
    out.sort();
    Ok(out)
}

/// Every map `domain -> codomain` accepted by `keep`, sorted.
///
/// Visits all `|codomain|^|domain|` maps in blocks, failing up front when
/// that exceeds the map budget.
pub(crate) fn brute_force_maps<F>(
    domain: &FiniteMonoid,
    codomain: &FiniteMonoid,
    limits: &Limits,
    keep: F,
) -> Result<Vec<Vec<Elem>>>
where
    F: Fn(&[Elem]) -> bool + Sync + Send,
{
    const BLOCK: usize = 1 << 12;
    let (n, m) = (domain.order(), codomain.order());
    let needed = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > limits.map_budget {
        return Err(Error::SearchBudgetExceeded {
            needed,
            budget: limits.map_budget,
        });
    }
    let total = needed as usize;
    let blocks = total.div_ceil(BLOCK);
    let found = exec::map_range(limits, blocks, |block| {
        let mut out = Vec::new();
        let mut values = vec![0 as Elem; n];
        for code in block * BLOCK..((block + 1) * BLOCK).min(total) {
            let mut c = code;
            for v in values.iter_mut() {
                *v = (c % m) as Elem;
                c /= m;
            }
            if keep(&values) {
                out.push(values.clone());
            }
        }
        out
    });
    let mut maps: Vec<Vec<Elem>> = found.into_iter().flatten().collect();
    maps.sort();
    Ok(maps)
}

/// An inverse of the unit `b` in the monoid `m`.
pub(crate) fn unit_inverse(m: &FiniteMonoid, b: Elem) -> Option<Elem> {
    m.inverse_of(b).or_else(|| {
        m.elements()
            .find(|&c| m.mul(b, c) == m.identity() && m.mul(c, b) == m.identity())
    })
}

/// A unit `b0` with `q(a) b0 = q'(a ι(b0))` for all `a`, smallest first.
pub fn cocycles_equivalent(c: &DescentCocycle, d: &DescentCocycle) -> Result<Option<Elem>> {
    if c.iota != d.iota {
        return Err(Error::DomainMismatch(
            "cocycles for different homomorphisms".into(),
        ));
    }
    let (a_m, b_m) = (c.iota.codomain(), c.iota.domain());
    Ok(units(b_m).elements().find(|&b0| {
        let ib0 = c.iota.apply(b0);
        a_m.elements()
            .all(|a| b_m.mul(c.apply(a), b0) == d.apply(a_m.mul(a, ib0)))
    }))
}

/// Lookup tables for `q -> (a -> q(a ι(b0^-1)) b0)`, the cocycle equivalent
/// to `q` via `b0`.
struct Twist {
    /// `a -> a ι(b0^-1)`.
    shift: Vec<Elem>,
    /// `b -> b b0`.
    right: Vec<Elem>,
}

impl Twist {
    fn new(iota: &ElementMap, b0: Elem, b0_inv: Elem) -> Self {
        let (a_m, b_m) = (iota.codomain(), iota.domain());
        let s = iota.apply(b0_inv);
        Twist {
            shift: a_m.elements().map(|a| a_m.mul(a, s)).collect(),
            right: b_m.elements().map(|b| b_m.mul(b, b0)).collect(),
        }
    }

    fn apply(&self, c: &DescentCocycle) -> Vec<Elem> {
        self.shift
            .iter()
            .map(|&a| self.right[c.apply(a) as usize])
            .collect()
    }
}

/// Generators of the unit group of `m`, each with its inverse.
pub(crate) fn unit_generators(m: &FiniteMonoid) -> Vec<(Elem, Elem)> {
    generators(m, &units(m))
        .into_iter()
        .map(|g| (g, unit_inverse(m, g).expect("units are invertible")))
        .collect()
}

fn pointed<C: PartialEq>(
    partition: OrbitPartition<C>,
    base: Option<&C>,
) -> Result<CocycleClassSet<C>> {
    let base_class = match base {
        None => None,
        Some(b) => {
            let i = partition
                .items()
                .iter()
                .position(|c| c == b)
                .ok_or_else(|| {
                    Error::NotACocycle("the base point is not in the cocycle set".into())
                })?;
            Some(partition.class_of(i))
        }
    };
    Ok(CocycleClassSet {
        partition,
        base_class,
    })
}

/// Equivalence classes of left cocycles, pointed at `base` if given.
///
/// Classes are orbits of the unit group of `B` acting by twisting, found by
/// union-find over its generators; each class is represented by its
/// lexicographically smallest cocycle.
pub fn desc1(
    iota: &ElementMap,
    base: Option<&DescentCocycle>,
    limits: &Limits,
) -> Result<CocycleClassSet<DescentCocycle>> {
    let cocycles = enumerate_left_cocycles(iota, limits)?;
    let twists: Vec<Twist> = unit_generators(iota.domain())
        .into_iter()
        .map(|(g, g_inv)| Twist::new(iota, g, g_inv))
        .collect();
    let lookup: FxHashMap<&[Elem], usize> = cocycles
        .iter()
        .enumerate()
        .map(|(i, c)| (c.values(), i))
        .collect();
    let images: Vec<Vec<Option<usize>>> = exec::map_slice(limits, &cocycles, |c| {
        twists
            .iter()
            .map(|t| lookup.get(&t.apply(c)[..]).copied())
            .collect()
    });
    let mut uf = UnionFind::new(cocycles.len());
    for (i, targets) in images.iter().enumerate() {
        for &j in targets {
            let j = j.ok_or_else(|| {
                Error::NotACocycle("a twisted cocycle left the cocycle set".into())
            })?;
            uf.union(i, j);
        }
    }
    pointed(OrbitPartition::from_union_find(cocycles, uf), base)
}

/// The same classes as [`desc1`], found by testing every pair for an
/// equivalence witness. Quadratic in the number of cocycles.
pub fn desc1_pairwise(
    iota: &ElementMap,
    base: Option<&DescentCocycle>,
    limits: &Limits,
) -> Result<CocycleClassSet<DescentCocycle>> {
    let cocycles = enumerate_left_cocycles(iota, limits)?;
    let partition = OrbitPartition::from_relation(cocycles, |c, d| {
        cocycles_equivalent(c, d).ok().flatten().is_some()
    });
    pointed(partition, base)
}

/// The units `b0` of `B` with `q(a ι(b0)) = q(a) b0` for all `a`.
pub fn desc0(base: &DescentCocycle) -> Result<Subgroup> {
    if let Some(v) = left_violation(&base.iota, &base.q)? {
        return Err(Error::NotACocycle(v.to_string()));
    }
    let (a_m, b_m) = (base.iota.codomain(), base.iota.domain());
    let unit_set = units(b_m);
    let members = unit_set.elements().filter(|&b0| {
        let ib0 = base.iota.apply(b0);
        a_m.elements()
            .all(|a| base.apply(a_m.mul(a, ib0)) == b_m.mul(base.apply(a), b0))
    });
    Ok(Subgroup::from_indices_unchecked(
        b_m.order(),
        members.map(|b| b as usize).collect::<Vec<_>>(),
    ))
}

/// The kernel of a split epimorphism and the retraction it induces.
#[derive(Clone, Debug)]
pub struct SchreierRetraction {
    /// `Ker(p)`, indexed by increasing index in `A`.
    pub kernel: FiniteMonoid,
    /// The inclusion `κ: Ker(p) -> A`.
    pub kappa: ElementMap,
    /// `q(a)` is the unique `k` with `a = κ(k) j(p(a))`.
    pub cocycle: DescentCocycle,
}

/// The retraction onto `Ker(p)` of a split epimorphism `p` with section `j`,
/// when every element factors uniquely as `k j(p(a))`.
pub fn schreier_retraction(p: &ElementMap, j: &ElementMap) -> Result<SchreierRetraction> {
    if j.codomain() != p.domain() || j.domain() != p.codomain() {
        return Err(Error::DomainMismatch(
            "the section must be a map B -> A for p: A -> B".into(),
        ));
    }
    for (name, map) in [("p", p), ("j", j)] {
        if !check_homomorphism(map) {
            return Err(Error::NotHomomorphism(format!(
                "{name} is not a homomorphism"
            )));
        }
    }
    let (a_m, b_m) = (p.domain(), p.codomain());
    if let Some(b) = b_m.elements().find(|&b| p.apply(j.apply(b)) != b) {
        return Err(Error::NotSplit { element: b });
    }
    let kernel_set = p.kernel();
    let kernel = a_m.restrict(&kernel_set);
    let kappa = ElementMap::inclusion(&kernel).expect("restricted algebra");
    let mut values = Vec::with_capacity(a_m.order());
    for a in a_m.elements() {
        let section = j.apply(p.apply(a));
        let mut found = kernel
            .elements()
            .filter(|&k| a_m.mul(kappa.apply(k), section) == a);
        let first = found.next();
        let extra = found.count();
        match first {
            Some(k) if extra == 0 => values.push(k),
            _ => {
                return Err(Error::NotSchreier {
                    element: a,
                    decompositions: usize::from(first.is_some()) + extra,
                })
            }
        }
    }
    let q = ElementMap::new_unchecked(a_m, &kernel, values);
    let cocycle = DescentCocycle::left(&kappa, q)?;
    Ok(SchreierRetraction {
        kernel,
        kappa,
        cocycle,
    })
}

/// Cocycles and retractions of a central homomorphism.
#[derive(Clone, Debug)]
pub struct CentralReport {
    pub cocycles: Vec<DescentCocycle>,
    /// Homomorphisms `r: A -> B` with `r ι = id`, sorted by value array.
    pub retractions: Vec<ElementMap>,
    pub class_sizes: Vec<usize>,
}

impl CentralReport {
    pub fn cocycles_are_retractions(&self) -> bool {
        self.cocycles.len() == self.retractions.len()
            && self
                .cocycles
                .iter()
                .zip(&self.retractions)
                .all(|(c, r)| c.values() == r.values())
    }

    pub fn classes_are_singletons(&self) -> bool {
        self.class_sizes.iter().all(|&s| s == 1)
    }
}

/// For `ι` with commutative domain landing in the center of `A`, the left
/// cocycles, the retractions of `ι`, and the class sizes.
pub fn central_cocycle_report(iota: &ElementMap, limits: &Limits) -> Result<CentralReport> {
    let (a_m, b_m) = (iota.codomain(), iota.domain());
    if !b_m.is_commutative() {
        return Err(Error::NotCentral("the domain is not commutative".into()));
    }
    if !iota.image().is_subset_of(&center(a_m)) {
        return Err(Error::NotCentral("the image is not central".into()));
    }
    let classes = desc1(iota, None, limits)?;
    let retractions = homomorphisms(a_m, b_m, limits)?
        .into_iter()
        .filter(|r| b_m.elements().all(|b| r.apply(iota.apply(b)) == b))
        .collect();
    Ok(CentralReport {
        cocycles: classes.cocycles().to_vec(),
        retractions,
        class_sizes: classes.partition.sizes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        alternating_subgroup, cyclic_group, direct_product, subgroup_generated, symmetric_group,
        validate_monoid, FiniteGroup, Permutation,
    };

    fn inclusion(a: &FiniteGroup, b: &Subgroup) -> ElementMap {
        ElementMap::inclusion(&a.subgroup_as_group(b)).unwrap()
    }

    fn perm(g: &FiniteGroup, text: &str) -> Elem {
        let p = Permutation::parse_cycles(text, g.degree().unwrap()).unwrap();
        g.index_of_permutation(&p).unwrap()
    }

    /// `S_2` inside `S_3` as the stabilizer of the point 3.
    fn s2_in_s3() -> (FiniteGroup, ElementMap) {
        let s3 = symmetric_group(3, &Limits::default()).unwrap();
        let s2 = subgroup_generated(&s3, &[perm(&s3, "(1 2)")]).unwrap();
        let iota = inclusion(&s3, &s2);
        (s3, iota)
    }

    #[test]
    fn parity_cocycle_for_s2_in_s3() {
        let limits = Limits::default();
        let (s3, iota) = s2_in_s3();
        let classes = desc1(&iota, None, &limits).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes.cocycles().len(), 1);
        let q = &classes.cocycles()[0];
        let b = iota.domain();
        for a in s3.elements() {
            let expected = if s3.permutation(a).unwrap().is_even() {
                "()"
            } else {
                "(1 2)"
            };
            assert_eq!(b.label(q.apply(a)), expected);
        }
        let kernel = kernel_of_cocycle(q).unwrap();
        assert_eq!(kernel, alternating_subgroup(&s3).unwrap());
        assert!(is_right_cocycle(&iota, q.map()).unwrap());
    }

    #[test]
    fn constant_map_fails_equivariance() {
        let (_, iota) = s2_in_s3();
        let q = ElementMap::constant_identity(iota.codomain(), iota.domain());
        let v = left_violation(&iota, &q).unwrap().unwrap();
        assert_eq!(v.condition, Condition::Equivariance);
        assert_ne!(v.witness[0], iota.domain().identity());
    }

    #[test]
    fn a3_in_s3_has_three_equivalent_cocycles() {
        let limits = Limits::default();
        let s3 = symmetric_group(3, &limits).unwrap();
        let iota = inclusion(&s3, &alternating_subgroup(&s3).unwrap());
        let cocycles = enumerate_left_cocycles(&iota, &limits).unwrap();
        assert_eq!(cocycles.len(), 3);
        for c in &cocycles {
            for d in &cocycles {
                assert!(cocycles_equivalent(c, d).unwrap().is_some());
            }
            assert_eq!(
                cocycles_equivalent(c, c).unwrap(),
                Some(iota.domain().identity())
            );
        }
        assert_eq!(desc1(&iota, None, &limits).unwrap().len(), 1);
    }

    #[test]
    fn strategies_agree_on_small_inclusions() {
        let limits = Limits::default();
        let s3 = symmetric_group(3, &limits).unwrap();
        let z4 = cyclic_group(4);
        let cases = [
            inclusion(&s3, &alternating_subgroup(&s3).unwrap()),
            inclusion(&s3, &Subgroup::trivial(&s3)),
            s2_in_s3().1,
            inclusion(&z4, &subgroup_generated(&z4, &[2]).unwrap()),
        ];
        for iota in &cases {
            let fast = enumerate_left_cocycles_with(iota, Strategy::Complements, &limits).unwrap();
            let slow = enumerate_left_cocycles_with(iota, Strategy::BruteForce, &limits).unwrap();
            assert_eq!(fast, slow);
            let orbit = desc1(iota, None, &limits).unwrap();
            let pairwise = desc1_pairwise(iota, None, &limits).unwrap();
            assert_eq!(orbit, pairwise);
        }
    }

    #[test]
    fn identity_and_trivial_inclusions() {
        let limits = Limits::default();
        let s3 = symmetric_group(3, &limits).unwrap();
        let id = ElementMap::identity(&s3);
        let cocycles = enumerate_left_cocycles(&id, &limits).unwrap();
        assert_eq!(cocycles.len(), 1);
        assert_eq!(cocycles[0].values(), id.values());
        assert_eq!(desc0(&cocycles[0]).unwrap().order(), 6);

        let trivial = inclusion(&s3, &Subgroup::trivial(&s3));
        let classes = desc1(&trivial, None, &limits).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(
            kernel_of_cocycle(&classes.cocycles()[0]).unwrap(),
            Subgroup::full(6)
        );
    }

    #[test]
    fn base_point_selects_its_class() {
        let limits = Limits::default();
        let (_, iota) = s2_in_s3();
        let c = enumerate_left_cocycles(&iota, &limits).unwrap().remove(0);
        let classes = desc1(&iota, Some(&c), &limits).unwrap();
        assert_eq!(classes.base_class, Some(0));
    }

    #[test]
    fn non_injective_iota_is_refused_by_complements() {
        let limits = Limits::default();
        let z2 = cyclic_group(2);
        let zero = ElementMap::constant_identity(&z2, &z2);
        assert!(matches!(
            enumerate_left_cocycles_with(&zero, Strategy::Complements, &limits),
            Err(Error::NotInjective { a: 0, b: 1 })
        ));
        // q(ι(b) a) = b q(a) with ι(b) = 1 forces b q(a) = q(a) for all b.
        assert!(enumerate_left_cocycles(&zero, &limits).unwrap().is_empty());
    }

    #[test]
    fn central_examples() {
        let limits = Limits::default();
        let klein = direct_product(&cyclic_group(2), &cyclic_group(2))
            .to_group()
            .unwrap();
        let first = subgroup_generated(&klein, &[2]).unwrap();
        let report = central_cocycle_report(&inclusion(&klein, &first), &limits).unwrap();
        assert_eq!(report.cocycles.len(), 2);
        assert_eq!(report.retractions.len(), 2);
        assert!(report.cocycles_are_retractions());
        assert!(report.classes_are_singletons());

        let z4 = cyclic_group(4);
        let two = subgroup_generated(&z4, &[2]).unwrap();
        let report = central_cocycle_report(&inclusion(&z4, &two), &limits).unwrap();
        assert!(report.cocycles.is_empty() && report.retractions.is_empty());

        let s3 = symmetric_group(3, &limits).unwrap();
        let a3 = alternating_subgroup(&s3).unwrap();
        assert!(matches!(
            central_cocycle_report(&inclusion(&s3, &a3), &limits),
            Err(Error::NotCentral(_))
        ));
    }

    #[test]
    fn semilattice_into_a_group_has_no_cocycles() {
        let limits = Limits::default();
        let semilattice = validate_monoid(2, &[vec![0, 1], vec![1, 1]], 0).unwrap();
        let z2 = cyclic_group(2);
        let iota = ElementMap::new(&semilattice, &z2, vec![0, 0]).unwrap();
        assert!(check_homomorphism(&iota));
        assert!(enumerate_left_cocycles(&iota, &limits).unwrap().is_empty());
    }

    #[test]
    fn schreier_on_a_direct_product() {
        let z2 = cyclic_group(2);
        let z3 = cyclic_group(3);
        let prod = direct_product(&z2, &z3);
        // p projects to Z/3, j(x) = (0, x).
        let p = ElementMap::from_fn(&prod, &z3, |a| a % 3).unwrap();
        let j = ElementMap::from_fn(&z3, &prod, |x| x).unwrap();
        let r = schreier_retraction(&p, &j).unwrap();
        assert_eq!(r.kernel.order(), 2);
        let wrong = ElementMap::from_fn(&z3, &prod, |_| 0).unwrap();
        assert!(matches!(
            schreier_retraction(&p, &wrong),
            Err(Error::NotSplit { element: 1 })
        ));
        let id = ElementMap::identity(&prod);
        let r = schreier_retraction(&id, &id).unwrap();
        assert_eq!(r.kernel.order(), 1);
        assert!(r.cocycle.values().iter().all(|&k| k == 0));
    }
}
