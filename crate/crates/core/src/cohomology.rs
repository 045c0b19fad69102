//! Monoid actions, semidirect products and Serre's non-abelian `H^0`, `H^1`,
//! together with the translations between Serre cocycles and descent
//! cocycles on a semidirect product.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

use crate::algebra::{
    extend_from_generators_with, generators, opposite, units, Elem, ElementMap, FiniteMonoid,
    Subgroup,
};
use crate::descent::{unit_generators, unit_inverse, DescentCocycle, Side};
use crate::error::{Error, Result};
use crate::exec::{self, Limits};
use crate::partition::{CocycleClassSet, OrbitPartition, UnionFind};

/// The four action axioms, numbered as usual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `1 * b = b`.
    Unit,
    /// `(x1 x2) * b = x1 * (x2 * b)`.
    Compatibility,
    /// `x * 1 = 1`.
    FixesIdentity,
    /// `x * (b1 b2) = (x * b1)(x * b2)`.
    Multiplicative,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Unit => "i",
            Axiom::Compatibility => "ii",
            Axiom::FixesIdentity => "iii",
            Axiom::Multiplicative => "iv",
        })
    }
}

/// A left action of the monoid `X` on the monoid `B` by endomorphisms.
#[derive(Clone)]
pub struct MonoidAction {
    actor: FiniteMonoid,
    target: FiniteMonoid,
    /// Row-major `|X| x |B|`.
    star: Arc<[Elem]>,
}

impl MonoidAction {
    pub fn actor(&self) -> &FiniteMonoid {
        &self.actor
    }

    pub fn target(&self) -> &FiniteMonoid {
        &self.target
    }

    #[inline]
    pub fn act(&self, x: Elem, b: Elem) -> Elem {
        self.star[x as usize * self.target.order() + b as usize]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.star
            .chunks(self.target.order())
            .map(<[Elem]>::to_vec)
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.actor
            .elements()
            .all(|x| self.target.elements().all(|b| self.act(x, b) == b))
    }

    /// `x * b = b` for every `x` and `b`.
    pub fn trivial(actor: &FiniteMonoid, target: &FiniteMonoid) -> Self {
        let star = actor
            .elements()
            .flat_map(|_| target.elements())
            .collect::<Vec<_>>();
        MonoidAction {
            actor: actor.clone(),
            target: target.clone(),
            star: star.into(),
        }
    }
}

impl fmt::Debug for MonoidAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MonoidAction({:?} on {:?}, {:?})",
            self.actor,
            self.target,
            self.rows()
        )
    }
}

impl PartialEq for MonoidAction {
    fn eq(&self, other: &Self) -> bool {
        self.actor == other.actor && self.target == other.target && self.star == other.star
    }
}

/// Validates `star[x][b] = x * b` as an action of `x_m` on `b_m`.
///
/// Axioms are checked in the order (i), (iii), (ii), (iv), cheapest first;
/// the first failure is reported with its witness.
pub fn validate_action(
    x_m: &FiniteMonoid,
    b_m: &FiniteMonoid,
    star: Vec<Vec<Elem>>,
) -> Result<MonoidAction> {
    let (nx, nb) = (x_m.order(), b_m.order());
    if star.len() != nx {
        return Err(Error::BadShape {
            expected: nx * nb,
            found: star.iter().map(Vec::len).sum(),
        });
    }
    let mut flat = Vec::with_capacity(nx * nb);
    for (x, row) in star.iter().enumerate() {
        if row.len() != nb {
            return Err(Error::BadShape {
                expected: nb,
                found: row.len(),
            });
        }
        for (b, &v) in row.iter().enumerate() {
            if v as usize >= nb {
                return Err(Error::IndexOutOfRange {
                    row: x,
                    col: b,
                    value: v as usize,
                    order: nb,
                });
            }
            flat.push(v);
        }
    }
    let action = MonoidAction {
        actor: x_m.clone(),
        target: b_m.clone(),
        star: flat.into(),
    };
    let violated = |axiom, witness| Err(Error::AxiomViolated { axiom, witness });
    let act = |x, b| action.act(x, b);
    if let Some(b) = b_m.elements().find(|&b| act(x_m.identity(), b) != b) {
        return violated(Axiom::Unit, format!("1 * {b} = {}", act(x_m.identity(), b)));
    }
    if let Some(x) = x_m
        .elements()
        .find(|&x| act(x, b_m.identity()) != b_m.identity())
    {
        return violated(
            Axiom::FixesIdentity,
            format!("{x} * 1 = {}", act(x, b_m.identity())),
        );
    }
    for x1 in x_m.elements() {
        for x2 in x_m.elements() {
            if let Some(b) = b_m
                .elements()
                .find(|&b| act(x_m.mul(x1, x2), b) != act(x1, act(x2, b)))
            {
                return violated(
                    Axiom::Compatibility,
                    format!("x1 = {x1}, x2 = {x2}, b = {b}"),
                );
            }
        }
    }
    for x in x_m.elements() {
        for b1 in b_m.elements() {
            if let Some(b2) = b_m
                .elements()
                .find(|&b2| act(x, b_m.mul(b1, b2)) != b_m.mul(act(x, b1), act(x, b2)))
            {
                return violated(
                    Axiom::Multiplicative,
                    format!("x = {x}, b1 = {b1}, b2 = {b2}"),
                );
            }
        }
    }
    Ok(action)
}

/// `B ⋊ X` with its structure maps.
///
/// The pair `(b, x)` has index `b * |X| + x`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub action: MonoidAction,
    pub monoid: FiniteMonoid,
    /// `b -> (b, 1)`.
    pub iota_b: ElementMap,
    /// `x -> (1, x)`.
    pub iota_x: ElementMap,
    /// `(b, x) -> b`, a map of sets.
    pub p_b: ElementMap,
    /// `(b, x) -> x`, a homomorphism.
    pub p_x: ElementMap,
}

impl Semidirect {
    pub fn split(&self, p: Elem) -> (Elem, Elem) {
        let nx = self.action.actor.order() as Elem;
        (p / nx, p % nx)
    }

    pub fn join(&self, b: Elem, x: Elem) -> Elem {
        b * self.action.actor.order() as Elem + x
    }

    /// `p_B` as a descent cocycle for `ι_B`.
    pub fn projection_cocycle(&self) -> DescentCocycle {
        DescentCocycle::trusted(&self.iota_b, self.p_b.clone(), Side::Left)
    }
}

/// The semidirect product `(b1, x1)(b2, x2) = (b1 (x1 * b2), x1 x2)`.
pub fn semidirect(action: &MonoidAction) -> Semidirect {
    let (b_m, x_m) = (&action.target, &action.actor);
    let (nb, nx) = (b_m.order(), x_m.order());
    let n = nb * nx;
    let split = |p: usize| ((p / nx) as Elem, (p % nx) as Elem);
    let join = |b: Elem, x: Elem| b * nx as Elem + x;
    let mut table = Vec::with_capacity(n * n);
    for p in 0..n {
        let (b1, x1) = split(p);
        for q in 0..n {
            let (b2, x2) = split(q);
            table.push(join(b_m.mul(b1, action.act(x1, b2)), x_m.mul(x1, x2)));
        }
    }
    let identity = join(b_m.identity(), x_m.identity());
    let mut monoid =
        FiniteMonoid::from_table_unchecked(n, table, identity).with_pair_labels(b_m, x_m);
    if let (Some(bg), Some(xg)) = (b_m.to_group(), x_m.to_group()) {
        let inverse = (0..n)
            .map(|p| {
                let (b, x) = split(p);
                let xi = xg.inv(x);
                join(action.act(xi, bg.inv(b)), xi)
            })
            .collect();
        monoid = monoid.with_inverse(inverse);
    }
    let iota_b = ElementMap::new_unchecked(
        b_m,
        &monoid,
        b_m.elements().map(|b| join(b, x_m.identity())).collect(),
    );
    let iota_x = ElementMap::new_unchecked(
        x_m,
        &monoid,
        x_m.elements().map(|x| join(b_m.identity(), x)).collect(),
    );
    let p_b = ElementMap::new_unchecked(&monoid, b_m, (0..n).map(|p| split(p).0).collect());
    let p_x = ElementMap::new_unchecked(&monoid, x_m, (0..n).map(|p| split(p).1).collect());
    Semidirect {
        action: action.clone(),
        monoid,
        iota_b,
        iota_x,
        p_b,
        p_x,
    }
}

/// A map `q: X -> B` with `q(1) = 1` and `q(x1 x2) = q(x1) (x1 * q(x2))`.
#[derive(Clone, Debug)]
pub struct SerreCocycle {
    action: MonoidAction,
    q: ElementMap,
}

impl SerreCocycle {
    pub fn new(action: &MonoidAction, q: ElementMap) -> Result<Self> {
        match serre_violation(action, &q)? {
            Some(w) => Err(Error::NotACocycle(describe_serre_failure(&w))),
            None => Ok(SerreCocycle {
                action: action.clone(),
                q,
            }),
        }
    }

    /// `x -> 1`.
    pub fn base_point(action: &MonoidAction) -> Self {
        SerreCocycle {
            action: action.clone(),
            q: ElementMap::constant_identity(&action.actor, &action.target),
        }
    }

    pub fn action(&self) -> &MonoidAction {
        &self.action
    }

    pub fn map(&self) -> &ElementMap {
        &self.q
    }

    pub fn values(&self) -> &[Elem] {
        self.q.values()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.q.apply(x)
    }
}

impl PartialEq for SerreCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.values() == other.values()
    }
}

impl Eq for SerreCocycle {}

impl PartialOrd for SerreCocycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SerreCocycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.values().cmp(other.values())
    }
}

impl Serialize for SerreCocycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values().serialize(s)
    }
}

fn describe_serre_failure(witness: &[Elem]) -> String {
    match witness {
        [] => "q(1) != 1".into(),
        [x1, x2] => format!("q(x1 x2) != q(x1) (x1 * q(x2)) at x1 = {x1}, x2 = {x2}"),
        _ => unreachable!(),
    }
}

/// The first failure of the cocycle identity: an empty witness when
/// `q(1) != 1`, else the first pair `(x1, x2)` in scan order.
pub fn serre_violation(action: &MonoidAction, q: &ElementMap) -> Result<Option<Vec<Elem>>> {
    if q.domain() != &action.actor || q.codomain() != &action.target {
        return Err(Error::DomainMismatch(
            "a cocycle must be a map from the actor to the target".into(),
        ));
    }
    let (x_m, b_m) = (&action.actor, &action.target);
    if q.apply(x_m.identity()) != b_m.identity() {
        return Ok(Some(Vec::new()));
    }
    Ok(x_m.elements().find_map(|x1| {
        x_m.elements()
            .find(|&x2| {
                q.apply(x_m.mul(x1, x2)) != b_m.mul(q.apply(x1), action.act(x1, q.apply(x2)))
            })
            .map(|x2| vec![x1, x2])
    }))
}

pub fn is_serre_cocycle(action: &MonoidAction, q: &ElementMap) -> Result<bool> {
    Ok(serre_violation(action, q)?.is_none())
}

/// Every Serre cocycle, the base point first and the rest by value array.
///
/// A cocycle is determined by its values on generators of `X` through
/// `q(x g) = q(x) (x * q(g))`, so `|B|^g` candidates are extended and then
/// checked in full.
pub fn z1_serre(action: &MonoidAction, limits: &Limits) -> Result<Vec<SerreCocycle>> {
    let (x_m, b_m) = (&action.actor, &action.target);
    let gens = generators(x_m, &Subgroup::full(x_m.order()));
    let needed = (b_m.order() as u128)
        .checked_pow(gens.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > limits.map_budget {
        return Err(Error::SearchBudgetExceeded {
            needed,
            budget: limits.map_budget,
        });
    }
    let found = exec::map_range(limits, needed as usize, |mut code| {
        let images: Vec<Elem> = gens
            .iter()
            .map(|_| {
                let d = (code % b_m.order()) as Elem;
                code /= b_m.order();
                d
            })
            .collect();
        let values = extend_from_generators_with(x_m, b_m, &gens, &images, |x, vx, img| {
            b_m.mul(vx, action.act(x, img))
        })?;
        let q = ElementMap::new_unchecked(x_m, b_m, values);
        is_serre_cocycle(action, &q).ok()?.then_some(q)
    });
    let base = SerreCocycle::base_point(action);
    let mut rest: Vec<SerreCocycle> = found
        .into_iter()
        .flatten()
        .map(|q| SerreCocycle {
            action: action.clone(),
            q,
        })
        .filter(|c| *c != base)
        .collect();
    rest.sort();
    let mut out = vec![base];
    out.extend(rest);
    Ok(out)
}

/// A unit `b0` with `q(x) (x * b0) = b0 q'(x)` for all `x`, smallest first.
pub fn serre_equivalent(q: &SerreCocycle, r: &SerreCocycle) -> Option<Elem> {
    let (x_m, b_m) = (&q.action.actor, &q.action.target);
    units(b_m).elements().find(|&b0| {
        x_m.elements()
            .all(|x| b_m.mul(q.apply(x), q.action.act(x, b0)) == b_m.mul(b0, r.apply(x)))
    })
}

/// Classes of Serre cocycles, pointed at the class of `x -> 1`.
///
/// Classes are orbits of `q -> (x -> b0^-1 q(x) (x * b0))` over generators
/// `b0` of the unit group of `B`.
pub fn h1(action: &MonoidAction, limits: &Limits) -> Result<CocycleClassSet<SerreCocycle>> {
    let cocycles = z1_serre(action, limits)?;
    let (x_m, b_m) = (&action.actor, &action.target);
    let gens = unit_generators(b_m);
    let lookup: FxHashMap<&[Elem], usize> = cocycles
        .iter()
        .enumerate()
        .map(|(i, c)| (c.values(), i))
        .collect();
    let mut uf = UnionFind::new(cocycles.len());
    for (i, c) in cocycles.iter().enumerate() {
        for &(g, g_inv) in &gens {
            let twisted: Vec<Elem> = x_m
                .elements()
                .map(|x| b_m.mul(b_m.mul(g_inv, c.apply(x)), action.act(x, g)))
                .collect();
            let j = lookup.get(&twisted[..]).ok_or_else(|| {
                Error::NotACocycle("a twisted cocycle left the cocycle set".into())
            })?;
            uf.union(i, *j);
        }
    }
    Ok(CocycleClassSet {
        partition: OrbitPartition::from_union_find(cocycles, uf),
        base_class: Some(0),
    })
}

/// The same classes as [`h1`], by testing every pair for a witness.
pub fn h1_pairwise(
    action: &MonoidAction,
    limits: &Limits,
) -> Result<CocycleClassSet<SerreCocycle>> {
    let cocycles = z1_serre(action, limits)?;
    Ok(CocycleClassSet {
        partition: OrbitPartition::from_relation(cocycles, |q, r| serre_equivalent(q, r).is_some()),
        base_class: Some(0),
    })
}

/// Elements of `B` fixed by every `x`.
pub fn h0(action: &MonoidAction) -> Subgroup {
    let b_m = &action.target;
    Subgroup::from_indices_unchecked(
        b_m.order(),
        b_m.elements()
            .filter(|&b| action.actor.elements().all(|x| action.act(x, b) == b))
            .map(|b| b as usize)
            .collect::<Vec<_>>(),
    )
}

/// The same star table, acting on the opposite monoid of `B`.
pub fn opposite_action(action: &MonoidAction) -> Result<MonoidAction> {
    validate_action(&action.actor, &opposite(&action.target), action.rows())
}

/// The passage between descent cocycles for `ι_B: B -> B ⋊ X` and Serre
/// cocycles.
#[derive(Clone, Debug)]
pub struct Translation {
    pub semidirect: Semidirect,
    /// The action on `B^op`.
    pub opposite: MonoidAction,
}

impl Translation {
    pub fn new(action: &MonoidAction) -> Result<Self> {
        Ok(Translation {
            semidirect: semidirect(action),
            opposite: opposite_action(action)?,
        })
    }

    fn check_descent(&self, c: &DescentCocycle) -> Result<()> {
        if c.iota() != &self.semidirect.iota_b || c.side() != Side::Left {
            return Err(Error::DomainMismatch(
                "expected a left cocycle for the embedding of B".into(),
            ));
        }
        Ok(())
    }

    /// `x -> q(1, x)`, a Serre cocycle for the action on `B^op`.
    pub fn desc_to_serre(&self, c: &DescentCocycle) -> Result<SerreCocycle> {
        self.check_descent(c)?;
        let sd = &self.semidirect;
        let values = sd
            .action
            .actor
            .elements()
            .map(|x| c.apply(sd.iota_x.apply(x)))
            .collect();
        SerreCocycle::new(
            &self.opposite,
            ElementMap::new_unchecked(&sd.action.actor, self.opposite.target(), values),
        )
    }

    /// `(b, x) -> b q'(x)` with the product taken in `B`.
    pub fn serre_to_desc(&self, s: &SerreCocycle) -> Result<DescentCocycle> {
        if s.action != self.opposite {
            return Err(Error::DomainMismatch(
                "expected a cocycle for the action on the opposite monoid".into(),
            ));
        }
        let sd = &self.semidirect;
        let b_m = &sd.action.target;
        let values = sd
            .monoid
            .elements()
            .map(|p| {
                let (b, x) = sd.split(p);
                b_m.mul(b, s.apply(x))
            })
            .collect();
        DescentCocycle::left(
            &sd.iota_b,
            ElementMap::new_unchecked(&sd.monoid, b_m, values),
        )
    }

    /// `x -> q(1, x)^-1`, a Serre cocycle for the action on `B` itself.
    pub fn group_inverse(&self, c: &DescentCocycle) -> Result<SerreCocycle> {
        self.check_descent(c)?;
        let sd = &self.semidirect;
        let b_g = sd.action.target.to_group().ok_or(Error::NotAGroup {
            element: sd.action.target.identity(),
        })?;
        if let Some(x) = sd
            .action
            .actor
            .elements()
            .find(|&x| unit_inverse(&sd.action.actor, x).is_none())
        {
            return Err(Error::NotAGroup { element: x });
        }
        let values = sd
            .action
            .actor
            .elements()
            .map(|x| b_g.inv(c.apply(sd.iota_x.apply(x))))
            .collect();
        SerreCocycle::new(
            &sd.action,
            ElementMap::new_unchecked(&sd.action.actor, &sd.action.target, values),
        )
    }
}

pub fn desc_to_serre(action: &MonoidAction, c: &DescentCocycle) -> Result<SerreCocycle> {
    Translation::new(action)?.desc_to_serre(c)
}

pub fn serre_to_desc(action: &MonoidAction, s: &SerreCocycle) -> Result<DescentCocycle> {
    Translation::new(action)?.serre_to_desc(s)
}

pub fn group_inverse_translation(
    action: &MonoidAction,
    c: &DescentCocycle,
) -> Result<SerreCocycle> {
    Translation::new(action)?.group_inverse(c)
}
