//! Homomorphisms into a pullback's second factor versus descent cocycles,
//! and a harness that checks every correspondence of the library over a
//! catalog of small groups, monoids and actions.

use std::time::Instant;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    all_subgroups, center, check_homomorphism, conjugate_subgroup, generators, homomorphisms,
    is_normal, opposite, pullback, units, Elem, ElementMap, FiniteGroup, FiniteMonoid, Pullback,
    Subgroup,
};
use crate::cohomology::{
    h0, h1, h1_pairwise, opposite_action, z1_serre, MonoidAction, Translation,
};
use crate::descent::{
    brute_force_maps, central_cocycle_report, cocycle_from_complement, cocycles_equivalent, desc0,
    desc1, desc1_pairwise, enumerate_left_cocycles, enumerate_left_cocycles_with, is_left_cocycle,
    is_right_cocycle, kernel_of_cocycle, left_condition_holds, left_violation, schreier_retraction,
    Condition, DescentCocycle, Side, Strategy,
};
use crate::document::{
    ActionSpec, AlgebraSpec, CatalogEntry, CatalogSpec, MapSpec, Recipe, SubgroupSpec,
    SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::exec::{self, Limits};
use crate::factorization::{
    b_orbits_of_complements, complements, conjugation_action, fac, fac_classes, is_complement,
    ComplementSet, FactorizationRecord,
};
use crate::partition::{OrbitPartition, UnionFind};

/// Two homomorphisms `f: K -> M`, `g: L -> M`, their pullback, and the
/// embedding of `Ker(g)` into it.
#[derive(Clone, Debug)]
pub struct PullbackInstance {
    pub f: ElementMap,
    pub g: ElementMap,
    pub pullback: Pullback,
    /// Whether `f(K)` lies inside `g(L)`.
    pub image_contained: bool,
}

impl PullbackInstance {
    pub fn new(f: &ElementMap, g: &ElementMap) -> Result<Self> {
        let pullback = pullback(f, g)?;
        let image = g.image();
        let image_contained = f.values().iter().all(|&m| image.contains(m));
        Ok(PullbackInstance {
            f: f.clone(),
            g: g.clone(),
            pullback,
            image_contained,
        })
    }

    pub fn iota(&self) -> &ElementMap {
        &self.pullback.iota
    }

    fn k(&self) -> FiniteGroup {
        self.pullback
            .to_k
            .codomain()
            .to_group()
            .expect("pullback factors are groups")
    }

    fn l(&self) -> FiniteGroup {
        self.pullback
            .to_l
            .codomain()
            .to_group()
            .expect("pullback factors are groups")
    }

    /// The first `k` with `f(k)` outside `g(L)`.
    fn hypothesis_failure(&self) -> Option<Elem> {
        let image = self.g.image();
        self.f
            .domain()
            .elements()
            .find(|&k| !image.contains(self.f.apply(k)))
    }
}

/// Homomorphisms `h: K -> L` with `g h = f`, sorted by value array.
pub fn hom_f_g(inst: &PullbackInstance, limits: &Limits) -> Result<Vec<ElementMap>> {
    let (k, l) = (inst.k(), inst.l());
    Ok(homomorphisms(&k, &l, limits)?
        .into_iter()
        .filter(|h| {
            k.elements()
                .all(|a| inst.g.apply(h.apply(a)) == inst.f.apply(a))
        })
        .collect())
}

/// `q_h(k, l) = l h(k^-1)`, a left cocycle for the embedding of `Ker(g)`.
pub fn cocycle_from_hom(inst: &PullbackInstance, h: &ElementMap) -> Result<DescentCocycle> {
    let (k, l) = (inst.k(), inst.l());
    if h.domain() != &*k || h.codomain() != &*l {
        return Err(Error::DomainMismatch("expected a map K -> L".into()));
    }
    if let Some((a, b)) = h.homomorphism_witness() {
        return Err(Error::NotInHomSet(format!(
            "h fails to be multiplicative at ({a}, {b})"
        )));
    }
    if let Some(a) = k
        .elements()
        .find(|&a| inst.g.apply(h.apply(a)) != inst.f.apply(a))
    {
        return Err(Error::NotInHomSet(format!("g(h({a})) != f({a})")));
    }
    let pb = &inst.pullback;
    let kernel = pb.kernel.parent_elements().expect("restricted");
    let values = pb
        .group
        .elements()
        .map(|p| {
            let (kp, lp) = (pb.to_k.apply(p), pb.to_l.apply(p));
            let v = l.mul(lp, h.apply(k.inv(kp)));
            kernel.binary_search(&v).map(|i| i as Elem).map_err(|_| {
                Error::NotInHomSet(format!("l h(k^-1) at element {p} lies outside Ker(g)"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    DescentCocycle::left(inst.iota(), ElementMap::new(&pb.group, &pb.kernel, values)?)
}

/// `h_q(k) = l_k` for the unique `(k, l_k)` in `Ker(q)`.
pub fn hom_from_cocycle(inst: &PullbackInstance, c: &DescentCocycle) -> Result<ElementMap> {
    if let Some(k) = inst.hypothesis_failure() {
        return Err(Error::HypothesisFailed { k });
    }
    if c.iota() != inst.iota() || c.side() != Side::Left {
        return Err(Error::DomainMismatch(
            "expected a left cocycle for the embedding of Ker(g)".into(),
        ));
    }
    let pb = &inst.pullback;
    let kernel = c.map().kernel();
    let (k, l) = (inst.k(), inst.l());
    let mut values = vec![None; k.order()];
    for p in kernel.elements() {
        let slot = &mut values[pb.to_k.apply(p) as usize];
        if slot.is_some() {
            return Err(Error::NotACocycle(format!(
                "Ker(q) has two elements over k = {}",
                pb.to_k.apply(p)
            )));
        }
        *slot = Some(pb.to_l.apply(p));
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(a, v)| {
            v.ok_or_else(|| Error::NotACocycle(format!("Ker(q) has no element over k = {a}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ElementMap::new(&k, &l, values)
}

/// [`hom_f_g`] up to `h ~ l0 h l0^-1` for `l0` in `Ker(g)`.
pub fn hom_classes(inst: &PullbackInstance, limits: &Limits) -> Result<OrbitPartition<ElementMap>> {
    let homs = hom_f_g(inst, limits)?;
    let l = inst.l();
    let gens = generators(&l, &inst.g.kernel());
    let lookup: FxHashMap<&[Elem], usize> = homs
        .iter()
        .enumerate()
        .map(|(i, h)| (h.values(), i))
        .collect();
    let mut uf = UnionFind::new(homs.len());
    for (i, h) in homs.iter().enumerate() {
        for &l0 in &gens {
            let twisted: Vec<Elem> = h.values().iter().map(|&v| l.conjugate(l0, v)).collect();
            let j = *lookup
                .get(&twisted[..])
                .expect("conjugating by Ker(g) preserves g h = f");
            uf.union(i, j);
        }
    }
    Ok(OrbitPartition::from_union_find(homs, uf))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check of one statement on one catalog instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub theorem_id: String,
    pub instance: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    /// Sorted by instance, then theorem id.
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub limits: Limits,
    /// Record wall-clock time per check. Off by default so reports are
    /// reproducible byte for byte.
    pub timings: bool,
}

/// Brute-force searches inside the suite stay below this many maps.
const BRUTE_FORCE_CAP: u128 = 1 << 20;

/// Runs every applicable check on every catalog entry. Entries run in
/// parallel; failures, including construction errors, become records.
pub fn run_verification_suite(catalog: &CatalogSpec, options: &SuiteOptions) -> VerificationReport {
    let per_entry = exec::map_slice(&options.limits, &catalog.entries, |entry| {
        let mut checks = Checks::new(&entry.name, options);
        if let Err(e) = run_entry(&mut checks, &entry.recipe, &options.limits) {
            checks.push("construction", Some(format!("error: {e}")), None);
        }
        checks.records
    });
    let mut records: Vec<CheckRecord> = per_entry.into_iter().flatten().collect();
    records.sort_by(|a, b| (&a.instance, &a.theorem_id).cmp(&(&b.instance, &b.theorem_id)));
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        records,
    }
}

/// `None` on success, `Some(witness)` on failure.
type Outcome = Option<String>;

struct Checks<'a> {
    instance: &'a str,
    timings: bool,
    records: Vec<CheckRecord>,
}

impl<'a> Checks<'a> {
    fn new(instance: &'a str, options: &SuiteOptions) -> Self {
        Checks {
            instance,
            timings: options.timings,
            records: Vec::new(),
        }
    }

    fn push(&mut self, theorem: &str, outcome: Outcome, elapsed_ms: Option<u64>) {
        self.records.push(CheckRecord {
            theorem_id: theorem.to_string(),
            instance: self.instance.to_string(),
            status: if outcome.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            witness: outcome,
            elapsed_ms,
        });
    }

    fn run(&mut self, theorem: &str, check: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| Some(format!("error: {e}")));
        let elapsed = self.timings.then(|| start.elapsed().as_millis() as u64);
        self.push(theorem, outcome, elapsed);
    }
}

fn describe(m: &FiniteMonoid, h: &Subgroup) -> String {
    let labels: Vec<String> = h.elements().map(|a| m.label(a)).collect();
    format!("{{{}}}", labels.join(", "))
}

/// Checks that translating items induces a well-defined bijection on
/// classes. `translate` returns the value array of the image of an item.
fn class_bijection<S, T>(
    src: &OrbitPartition<S>,
    dst: &OrbitPartition<T>,
    dst_key: impl Fn(&T) -> Vec<Elem>,
    translate: impl Fn(&S) -> Result<Vec<Elem>>,
) -> Result<Outcome> {
    let index: FxHashMap<Vec<Elem>, usize> = dst
        .items()
        .iter()
        .enumerate()
        .map(|(i, t)| (dst_key(t), i))
        .collect();
    let mut dst_class = vec![0; dst.items().len()];
    for (c, members) in dst.classes().iter().enumerate() {
        for &i in members {
            dst_class[i] = c;
        }
    }
    let mut hit = vec![false; dst.class_count()];
    for (c, members) in src.classes().iter().enumerate() {
        let mut image = None;
        for &i in members {
            let key = translate(&src.items()[i])?;
            let Some(&j) = index.get(&key) else {
                return Ok(Some(format!(
                    "item {i} translates to {key:?}, outside the target set"
                )));
            };
            match image {
                None => image = Some(dst_class[j]),
                Some(prev) if prev != dst_class[j] => {
                    return Ok(Some(format!(
                        "class {c} is split across target classes {prev} and {}",
                        dst_class[j]
                    )))
                }
                Some(_) => {}
            }
        }
        let target = image.expect("classes are nonempty");
        if std::mem::replace(&mut hit[target], true) {
            return Ok(Some(format!("two classes map to target class {target}")));
        }
    }
    Ok(hit
        .iter()
        .position(|h| !h)
        .map(|c| format!("target class {c} is not reached")))
}

fn run_entry(checks: &mut Checks<'_>, recipe: &Recipe, limits: &Limits) -> Result<()> {
    match recipe {
        Recipe::Group { group } => {
            let a = group.build_group(limits)?;
            let subgroups = all_subgroups(&a, limits)?;
            let data = subgroups
                .into_iter()
                .map(|b| InclusionData::new(&a, b, limits))
                .collect::<Result<Vec<_>>>()?;
            inclusion_checks(checks, &a, &data, limits);
            factorization_checks(checks, &a, limits);
        }
        Recipe::Inclusion { group, subgroup } => {
            let a = group.build_group(limits)?;
            let b = subgroup.resolve(&a, limits)?;
            let data = [InclusionData::new(&a, b, limits)?];
            inclusion_checks(checks, &a, &data, limits);
        }
        Recipe::Monoid { monoid } => monoid_checks(checks, &monoid.build(limits)?, limits),
        Recipe::MonoidHom { map } => monoid_hom_checks(checks, &map.build(limits)?, limits),
        Recipe::Action { action } => action_checks(checks, &action.build(limits)?, limits)?,
        Recipe::Pullback { f, g } => {
            let inst = PullbackInstance::new(&f.build(limits)?, &g.build(limits)?)?;
            pullback_checks(checks, &inst, limits)?;
        }
        Recipe::Cocycle {
            group,
            subgroup,
            values,
        } => {
            let a = group.build_group(limits)?;
            let b = subgroup.resolve(&a, limits)?;
            let iota = ElementMap::inclusion(&a.subgroup_as_group(&b)).expect("restricted");
            let q = ElementMap::new(&a, iota.domain(), values.clone())?;
            checks.run("supplied-map-satisfies-cocycle-conditions", || {
                Ok(left_violation(&iota, &q)?.map(|v| v.to_string()))
            });
        }
    }
    Ok(())
}

/// Everything computed once per subgroup `B` of a group `A`.
struct InclusionData {
    b: Subgroup,
    iota: ElementMap,
    complements: ComplementSet,
    cocycles: Vec<DescentCocycle>,
    /// Maps satisfying the equivariance and composition conditions, when
    /// the full map space is small enough to scan.
    brute_force: Option<Vec<Vec<Elem>>>,
}

impl InclusionData {
    fn new(a: &FiniteGroup, b: Subgroup, limits: &Limits) -> Result<Self> {
        let iota = ElementMap::inclusion(&a.subgroup_as_group(&b)).expect("restricted");
        let complements = complements(a, &b, limits)?;
        let cocycles = enumerate_left_cocycles_with(&iota, Strategy::Complements, limits)?;
        let capped = limits
            .clone()
            .with_map_budget(limits.map_budget.min(BRUTE_FORCE_CAP));
        let brute_force = match brute_force_maps(iota.codomain(), iota.domain(), &capped, |v| {
            let q = ElementMap::new_unchecked(iota.codomain(), iota.domain(), v.to_vec());
            [Condition::Equivariance, Condition::Composition]
                .iter()
                .all(|&c| left_condition_holds(&iota, &q, c).unwrap_or(false))
        }) {
            Ok(maps) => Some(maps),
            Err(Error::SearchBudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(InclusionData {
            b,
            iota,
            complements,
            cocycles,
            brute_force,
        })
    }
}

fn inclusion_checks(
    checks: &mut Checks<'_>,
    a: &FiniteGroup,
    data: &[InclusionData],
    limits: &Limits,
) {
    let on = |d: &InclusionData| format!("B = {}", describe(a, &d.b));

    checks.run("cocycles-satisfy-conditions", || {
        for d in data {
            for c in &d.cocycles {
                if let Some(v) = left_violation(&d.iota, c.map())? {
                    return Ok(Some(format!("{}: {:?} fails {v}", on(d), c.values())));
                }
            }
        }
        Ok(None)
    });

    checks.run("complement-kernel-round-trip", || {
        for d in data {
            if d.cocycles.len() != d.complements.members.len() {
                return Ok(Some(format!(
                    "{}: {} cocycles but {} complements",
                    on(d),
                    d.cocycles.len(),
                    d.complements.members.len()
                )));
            }
            for x in &d.complements.members {
                if &kernel_of_cocycle(&cocycle_from_complement(&d.iota, x)?)? != x {
                    return Ok(Some(format!("{}: X = {}", on(d), describe(a, x))));
                }
            }
            for c in &d.cocycles {
                if &cocycle_from_complement(&d.iota, &kernel_of_cocycle(c)?)? != c {
                    return Ok(Some(format!("{}: q = {:?}", on(d), c.values())));
                }
            }
        }
        Ok(None)
    });

    checks.run("equivalence-matches-conjugacy", || {
        for d in data {
            let kernels = d.cocycles.iter().map(kernel_of_cocycle).collect::<Result<Vec<_>>>()?;
            let b_elems: Vec<Elem> = d.b.elements().collect();
            for (i, c) in d.cocycles.iter().enumerate() {
                for (j, e) in d.cocycles.iter().enumerate() {
                    let equivalent = cocycles_equivalent(c, e)?.is_some();
                    let conjugate = b_elems
                        .iter()
                        .any(|&b| conjugate_subgroup(a, b, &kernels[i]) == kernels[j]);
                    if equivalent != conjugate {
                        return Ok(Some(format!(
                            "{}: cocycles {i} and {j}: equivalent = {equivalent}, kernels conjugate = {conjugate}",
                            on(d)
                        )));
                    }
                }
            }
        }
        Ok(None)
    });

    checks.run("desc1-counts-complement-orbits", || {
        for d in data {
            let classes = desc1(&d.iota, None, limits)?.len();
            let orbits = b_orbits_of_complements(&d.complements, limits).class_count();
            if classes != orbits {
                return Ok(Some(format!(
                    "{}: {classes} cocycle classes, {orbits} complement orbits",
                    on(d)
                )));
            }
        }
        Ok(None)
    });

    checks.run("desc1-orbits-match-pairwise", || {
        for d in data {
            if desc1(&d.iota, None, limits)? != desc1_pairwise(&d.iota, None, limits)? {
                return Ok(Some(on(d)));
            }
        }
        Ok(None)
    });

    checks.run("unit-condition-follows-for-groups", || {
        for d in data {
            let Some(maps) = &d.brute_force else { continue };
            for v in maps {
                let q = ElementMap::new_unchecked(a, d.iota.domain(), v.clone());
                if !left_condition_holds(&d.iota, &q, Condition::Identity)? {
                    return Ok(Some(format!("{}: {v:?}", on(d))));
                }
            }
        }
        Ok(None)
    });

    checks.run("complement-enumeration-matches-brute-force", || {
        for d in data {
            let Some(maps) = &d.brute_force else { continue };
            let fast: Vec<&[Elem]> = d.cocycles.iter().map(DescentCocycle::values).collect();
            let slow: Vec<&[Elem]> = maps.iter().map(Vec::as_slice).collect();
            if fast != slow {
                return Ok(Some(format!(
                    "{}: {} cocycles from complements, {} by brute force",
                    on(d),
                    fast.len(),
                    slow.len()
                )));
            }
        }
        Ok(None)
    });

    checks.run("retractions-are-two-sided-cocycles", || {
        for d in data {
            if let Some(w) = retraction_outcome(&d.iota, limits)? {
                return Ok(Some(format!("{}: {w}", on(d))));
            }
        }
        Ok(None)
    });

    let centre = center(a);
    let central: Vec<&InclusionData> = data
        .iter()
        .filter(|d| d.iota.domain().is_commutative() && d.b.is_subset_of(&centre))
        .collect();
    if !central.is_empty() {
        checks.run("central-cocycles-are-retractions", || {
            for d in central {
                let report = central_cocycle_report(&d.iota, limits)?;
                if !report.cocycles_are_retractions() {
                    return Ok(Some(format!(
                        "{}: {} cocycles, {} retractions",
                        on(d),
                        report.cocycles.len(),
                        report.retractions.len()
                    )));
                }
                if !report.classes_are_singletons() {
                    return Ok(Some(format!(
                        "{}: class sizes {:?}",
                        on(d),
                        report.class_sizes
                    )));
                }
            }
            Ok(None)
        });
    }

    let split: Vec<(&InclusionData, &Subgroup)> = data
        .iter()
        .filter(|d| is_normal(a, &d.b))
        .filter_map(|d| d.complements.members.first().map(|x| (d, x)))
        .collect();
    if !split.is_empty() {
        checks.run("normal-complement-gives-semidirect-product", || {
            for (d, x) in split {
                let s = conjugation_action(a, &d.b, x)?;
                if !s.isomorphism.is_injective() || !check_homomorphism(&s.isomorphism) {
                    return Ok(Some(format!("{}: X = {}", on(d), describe(a, x))));
                }
            }
            Ok(None)
        });
    }
}

/// Retractions `r` of `ι` (homomorphisms with `r ι = id`) satisfy both the
/// left and right conditions.
fn retraction_outcome(iota: &ElementMap, limits: &Limits) -> Result<Outcome> {
    let (a_m, b_m) = (iota.codomain(), iota.domain());
    for r in homomorphisms(a_m, b_m, limits)? {
        if b_m.elements().any(|b| r.apply(iota.apply(b)) != b) {
            continue;
        }
        if !is_left_cocycle(iota, &r)? || !is_right_cocycle(iota, &r)? {
            return Ok(Some(format!("retraction {:?}", r.values())));
        }
    }
    Ok(None)
}

fn factorization_checks(checks: &mut Checks<'_>, a: &FiniteGroup, limits: &Limits) {
    checks.run("factorization-census", || {
        let records = fac(a, limits)?;
        let subgroups = all_subgroups(a, limits)?;
        let mut scanned = Vec::new();
        for b in subgroups.iter().filter(|s| s.is_proper()) {
            for x in subgroups.iter().filter(|s| s.is_proper()) {
                if is_complement(a, b, x)? {
                    scanned.push(FactorizationRecord {
                        b: b.clone(),
                        x: x.clone(),
                    });
                }
            }
        }
        scanned.sort();
        if records != scanned {
            return Ok(Some(format!(
                "{} factorizations found, {} by pair scan",
                records.len(),
                scanned.len()
            )));
        }
        let classes = fac_classes(a, &records);
        let conjugate = |r: &FactorizationRecord, s: &FactorizationRecord| {
            r.b == s.b && a.elements().any(|g| conjugate_subgroup(a, g, &r.x) == s.x)
        };
        let oracle = OrbitPartition::from_relation(records.clone(), conjugate);
        if classes.classes() != oracle.classes() {
            return Ok(Some(format!(
                "{} classes, {} by pairwise conjugacy",
                classes.class_count(),
                oracle.class_count()
            )));
        }
        let orbit_total: usize = subgroups
            .iter()
            .filter(|s| s.is_proper() && !s.is_trivial())
            .map(|b| {
                let mut set = complements(a, b, limits)?;
                set.members.retain(|x| x.is_proper() && !x.is_trivial());
                Ok(b_orbits_of_complements(&set, limits).class_count())
            })
            .sum::<Result<usize>>()?;
        Ok((orbit_total != classes.class_count()).then(|| {
            format!(
                "{} classes, {orbit_total} complement orbits summed over B",
                classes.class_count()
            )
        }))
    });
}

fn monoid_checks(checks: &mut Checks<'_>, m: &FiniteMonoid, limits: &Limits) {
    checks.run("units-form-a-group", || {
        let u = units(m);
        for a in u.elements() {
            for b in u.elements() {
                if !u.contains(m.mul(a, b)) {
                    return Ok(Some(format!("{a} * {b} is not a unit")));
                }
            }
        }
        Ok(None)
    });
    checks.run("opposite-is-an-involution", || {
        Ok((opposite(&opposite(m)) != *m).then(|| "op(op(M)) differs from M".to_string()))
    });
    checks.run("center-commutes", || {
        let z = center(m);
        let witness = z.elements().find_map(|c| {
            m.elements()
                .find(|&a| m.mul(a, c) != m.mul(c, a))
                .map(|a| format!("{c} and {a}"))
        });
        Ok(witness)
    });
    checks.run("identity-has-unique-cocycle", || {
        let id = ElementMap::identity(m);
        let found = enumerate_left_cocycles_with(&id, Strategy::BruteForce, limits)?;
        let values: Vec<&[Elem]> = found.iter().map(DescentCocycle::values).collect();
        Ok((values != [id.values()]).then(|| format!("cocycles {values:?}")))
    });
}

fn monoid_hom_checks(checks: &mut Checks<'_>, iota: &ElementMap, limits: &Limits) {
    checks.run("cocycles-satisfy-conditions", || {
        for c in enumerate_left_cocycles(iota, limits)? {
            if let Some(v) = left_violation(iota, c.map())? {
                return Ok(Some(format!("{:?} fails {v}", c.values())));
            }
        }
        Ok(None)
    });
    if iota.codomain().is_group() {
        checks.run("cocycle-into-group-forces-group", || {
            let found = enumerate_left_cocycles_with(iota, Strategy::BruteForce, limits)?;
            Ok(match found.first() {
                Some(c) if !iota.domain().is_group() => Some(format!(
                    "cocycle {:?} exists but the domain is not a group",
                    c.values()
                )),
                _ => None,
            })
        });
    }
    checks.run("retractions-are-two-sided-cocycles", || {
        retraction_outcome(iota, limits)
    });
}

fn action_checks(checks: &mut Checks<'_>, action: &MonoidAction, limits: &Limits) -> Result<()> {
    let tr = Translation::new(action)?;
    let sd = &tr.semidirect;
    let (x_m, b_m) = (action.actor(), action.target());

    checks.run("opposite-action-is-an-involution", || {
        Ok((opposite_action(&tr.opposite)? != *action).then(|| "actions differ".to_string()))
    });

    checks.run("descent-serre-round-trip", || {
        let cocycles = enumerate_left_cocycles(&sd.iota_b, limits)?;
        let serre = z1_serre(&tr.opposite, limits)?;
        if cocycles.len() != serre.len() {
            return Ok(Some(format!(
                "{} descent cocycles, {} Serre cocycles",
                cocycles.len(),
                serre.len()
            )));
        }
        for c in &cocycles {
            if &tr.serre_to_desc(&tr.desc_to_serre(c)?)? != c {
                return Ok(Some(format!("descent cocycle {:?}", c.values())));
            }
        }
        for s in &serre {
            if &tr.desc_to_serre(&tr.serre_to_desc(s)?)? != s {
                return Ok(Some(format!("Serre cocycle {:?}", s.values())));
            }
        }
        Ok(None)
    });

    checks.run("desc1-matches-h1-of-opposite", || {
        let base = sd.projection_cocycle();
        let desc = desc1(&sd.iota_b, Some(&base), limits)?;
        let h = h1(&tr.opposite, limits)?;
        if let Some(w) = class_bijection(
            &desc.partition,
            &h.partition,
            |s| s.values().to_vec(),
            |c| Ok(tr.desc_to_serre(c)?.values().to_vec()),
        )? {
            return Ok(Some(w));
        }
        let base_image = tr.desc_to_serre(&base)?;
        let j = h.cocycles().iter().position(|s| *s == base_image);
        Ok((j.map(|j| h.partition.class_of(j)) != h.base_class)
            .then(|| "the base cocycle does not map to the base class".to_string()))
    });

    checks.run("desc0-matches-h0-of-opposite", || {
        let d0: Vec<Elem> = desc0(&sd.projection_cocycle())?.elements().collect();
        let u = units(b_m);
        let fixed: Vec<Elem> = h0(&tr.opposite)
            .elements()
            .filter(|&b| u.contains(b))
            .collect();
        Ok((d0 != fixed).then(|| format!("Desc0 = {d0:?}, invertible H0 = {fixed:?}")))
    });

    checks.run("h1-orbits-match-pairwise", || {
        Ok((h1(action, limits)? != h1_pairwise(action, limits)?)
            .then(|| "orbit and pairwise classes differ".to_string()))
    });

    checks.run("projection-is-schreier-retraction", || {
        let r = schreier_retraction(&sd.p_x, &sd.iota_x)?;
        Ok(sd.monoid.elements().find_map(|p| {
            (r.kappa.apply(r.cocycle.apply(p)) != sd.iota_b.apply(sd.p_b.apply(p)))
                .then(|| format!("element {}", sd.monoid.label(p)))
        }))
    });

    if x_m.is_group() && b_m.is_group() {
        checks.run("group-inverse-translation", || {
            let desc = desc1(&sd.iota_b, None, limits)?;
            let h = h1(action, limits)?;
            if desc.cocycles().len() != h.cocycles().len() {
                return Ok(Some(format!(
                    "{} descent cocycles, {} Serre cocycles",
                    desc.cocycles().len(),
                    h.cocycles().len()
                )));
            }
            class_bijection(
                &desc.partition,
                &h.partition,
                |s| s.values().to_vec(),
                |c| Ok(tr.group_inverse(c)?.values().to_vec()),
            )
        });

        checks.run("complement-orbits-match-h1", || {
            let a = sd.monoid.to_group().expect("semidirect product of groups");
            let set = complements(&a, &sd.iota_b.image(), limits)?;
            let orbits = b_orbits_of_complements(&set, limits).class_count();
            let classes = h1(action, limits)?.len();
            Ok(
                (orbits != classes)
                    .then(|| format!("{orbits} complement orbits, |H1| = {classes}")),
            )
        });
    }
    Ok(())
}

fn pullback_checks(
    checks: &mut Checks<'_>,
    inst: &PullbackInstance,
    limits: &Limits,
) -> Result<()> {
    let homs = hom_f_g(inst, limits)?;

    checks.run("hom-cocycle-lands-in-kernel", || {
        for h in &homs {
            if let Err(e) = cocycle_from_hom(inst, h) {
                return Ok(Some(format!("h = {:?}: {e}", h.values())));
            }
        }
        Ok(None)
    });

    checks.run("hom-to-cocycle-is-injective", || {
        let mut seen = FxHashMap::default();
        for h in &homs {
            let q = cocycle_from_hom(inst, h)?;
            if let Some(prev) = seen.insert(q.values().to_vec(), h.values().to_vec()) {
                return Ok(Some(format!(
                    "{prev:?} and {:?} give the same cocycle",
                    h.values()
                )));
            }
        }
        Ok(None)
    });

    if !inst.image_contained {
        return Ok(());
    }

    checks.run("hom-cocycle-bijection", || {
        let cocycles = enumerate_left_cocycles(inst.iota(), limits)?;
        if cocycles.len() != homs.len() {
            return Ok(Some(format!(
                "{} homomorphisms, {} cocycles",
                homs.len(),
                cocycles.len()
            )));
        }
        for h in &homs {
            if &hom_from_cocycle(inst, &cocycle_from_hom(inst, h)?)? != h {
                return Ok(Some(format!("h = {:?}", h.values())));
            }
        }
        for c in &cocycles {
            if &cocycle_from_hom(inst, &hom_from_cocycle(inst, c)?)? != c {
                return Ok(Some(format!("q = {:?}", c.values())));
            }
        }
        Ok(None)
    });

    checks.run("hom-classes-match-desc1", || {
        let classes = hom_classes(inst, limits)?;
        let desc = desc1(inst.iota(), None, limits)?;
        class_bijection(
            &classes,
            &desc.partition,
            |c| c.values().to_vec(),
            |h| Ok(cocycle_from_hom(inst, h)?.values().to_vec()),
        )
    });
    Ok(())
}

fn entry(name: &str, recipe: Recipe) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        recipe,
    }
}

fn cyclic(n: usize) -> AlgebraSpec {
    AlgebraSpec::Cyclic { n }
}

fn perm(degree: usize, generators: &[&str]) -> AlgebraSpec {
    AlgebraSpec::Perm {
        degree,
        generators: generators.iter().map(|g| g.to_string()).collect(),
    }
}

fn table(mul: &[&[Elem]]) -> AlgebraSpec {
    AlgebraSpec::Table {
        n: mul.len(),
        mul: mul.iter().map(|row| row.to_vec()).collect(),
        one: 0,
    }
}

fn gens(list: &[&str]) -> SubgroupSpec {
    SubgroupSpec::Gens(list.iter().map(|g| g.to_string()).collect())
}

pub fn semilattice() -> AlgebraSpec {
    table(&[&[0, 1], &[1, 1]])
}

/// `{1, x, x^2}` with `x^3 = x`.
pub fn cubic_monoid() -> AlgebraSpec {
    table(&[&[0, 1, 2], &[1, 2, 1], &[2, 1, 2]])
}

/// The quaternion group acting on itself by left multiplication, with the
/// points `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion_group() -> AlgebraSpec {
    perm(8, &["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"])
}

pub fn dihedral_group_of_order_8() -> AlgebraSpec {
    perm(4, &["(1 2 3 4)", "(1 3)"])
}

/// The catalog run by default.
pub fn default_catalog() -> CatalogSpec {
    let inversion = |n| ActionSpec::Inversion {
        actor: cyclic(2),
        target: cyclic(n),
    };
    let klein = || AlgebraSpec::Product {
        left: Box::new(cyclic(2)),
        right: Box::new(cyclic(2)),
    };
    let mut entries: Vec<CatalogEntry> = (1..=12)
        .map(|n| entry(&format!("Z/{n:02}"), Recipe::Group { group: cyclic(n) }))
        .collect();
    entries.extend([
        entry("Z/2xZ/2", Recipe::Group { group: klein() }),
        entry(
            "S3",
            Recipe::Group {
                group: AlgebraSpec::Symmetric { n: 3 },
            },
        ),
        entry(
            "S4",
            Recipe::Group {
                group: AlgebraSpec::Symmetric { n: 4 },
            },
        ),
        entry(
            "D4",
            Recipe::Group {
                group: dihedral_group_of_order_8(),
            },
        ),
        entry(
            "Q8",
            Recipe::Group {
                group: quaternion_group(),
            },
        ),
        entry(
            "A4",
            Recipe::Group {
                group: perm(4, &["(1 2 3)", "(1 2)(3 4)"]),
            },
        ),
        entry(
            "Z/3:Z/2",
            Recipe::Group {
                group: AlgebraSpec::Semidirect {
                    action: Box::new(inversion(3)),
                },
            },
        ),
        entry(
            "S3>S2",
            Recipe::Inclusion {
                group: AlgebraSpec::Symmetric { n: 3 },
                subgroup: gens(&["(1 2)"]),
            },
        ),
        entry(
            "S5>A5",
            Recipe::Inclusion {
                group: AlgebraSpec::Symmetric { n: 5 },
                subgroup: SubgroupSpec::Alternating(true),
            },
        ),
        entry(
            "S6>A6",
            Recipe::Inclusion {
                group: AlgebraSpec::Symmetric { n: 6 },
                subgroup: SubgroupSpec::Alternating(true),
            },
        ),
        entry(
            "semilattice",
            Recipe::Monoid {
                monoid: semilattice(),
            },
        ),
        entry(
            "cubic-monoid",
            Recipe::Monoid {
                monoid: cubic_monoid(),
            },
        ),
        entry(
            "semilattice->Z/2",
            Recipe::MonoidHom {
                map: MapSpec::Zero {
                    domain: semilattice(),
                    codomain: cyclic(2),
                },
            },
        ),
        entry(
            "cubic-monoid->Z/2",
            Recipe::MonoidHom {
                map: MapSpec::Values {
                    domain: cubic_monoid(),
                    codomain: cyclic(2),
                    values: vec![0, 1, 0],
                },
            },
        ),
        entry(
            "trivial Z/2 on Z/2",
            Recipe::Action {
                action: ActionSpec::Trivial {
                    actor: cyclic(2),
                    target: cyclic(2),
                },
            },
        ),
        entry(
            "trivial Z/3 on S3",
            Recipe::Action {
                action: ActionSpec::Trivial {
                    actor: cyclic(3),
                    target: AlgebraSpec::Symmetric { n: 3 },
                },
            },
        ),
        entry(
            "trivial Z/2 on semilattice",
            Recipe::Action {
                action: ActionSpec::Trivial {
                    actor: cyclic(2),
                    target: semilattice(),
                },
            },
        ),
        entry(
            "semilattice on Z/2",
            Recipe::Action {
                action: ActionSpec::Table {
                    actor: semilattice(),
                    target: cyclic(2),
                    star: vec![vec![0, 1], vec![0, 0]],
                },
            },
        ),
        entry(
            "swap on Z/2xZ/2",
            Recipe::Action {
                action: ActionSpec::Swap {
                    actor: cyclic(2),
                    factor: cyclic(2),
                },
            },
        ),
        entry(
            "conjugation S3",
            Recipe::Action {
                action: ActionSpec::Conjugation {
                    group: AlgebraSpec::Symmetric { n: 3 },
                    normal: SubgroupSpec::Alternating(true),
                    complement: gens(&["(1 2)"]),
                },
            },
        ),
        entry(
            "conjugation D4",
            Recipe::Action {
                action: ActionSpec::Conjugation {
                    group: dihedral_group_of_order_8(),
                    normal: gens(&["(1 2 3 4)"]),
                    complement: gens(&["(1 3)"]),
                },
            },
        ),
        entry(
            "conjugation S4",
            Recipe::Action {
                action: ActionSpec::Conjugation {
                    group: AlgebraSpec::Symmetric { n: 4 },
                    normal: gens(&["(1 2)(3 4)", "(1 3)(2 4)"]),
                    complement: gens(&["(1 2)", "(1 2 3)"]),
                },
            },
        ),
        entry(
            "pullback Klein",
            Recipe::Pullback {
                f: MapSpec::Zero {
                    domain: cyclic(2),
                    codomain: cyclic(1),
                },
                g: MapSpec::Zero {
                    domain: cyclic(2),
                    codomain: cyclic(1),
                },
            },
        ),
        entry(
            "pullback diagonal",
            Recipe::Pullback {
                f: MapSpec::Identity { domain: cyclic(2) },
                g: MapSpec::Identity { domain: cyclic(2) },
            },
        ),
        entry(
            "pullback Z/3 over Z/2",
            Recipe::Pullback {
                f: MapSpec::Zero {
                    domain: cyclic(3),
                    codomain: cyclic(1),
                },
                g: MapSpec::Zero {
                    domain: cyclic(2),
                    codomain: cyclic(1),
                },
            },
        ),
        entry(
            "pullback sign",
            Recipe::Pullback {
                f: MapSpec::Identity { domain: cyclic(2) },
                g: MapSpec::Sign {
                    domain: AlgebraSpec::Symmetric { n: 3 },
                },
            },
        ),
        entry(
            "pullback uncontained",
            Recipe::Pullback {
                f: MapSpec::Identity { domain: cyclic(2) },
                g: MapSpec::Zero {
                    domain: cyclic(3),
                    codomain: cyclic(2),
                },
            },
        ),
    ]);
    entries.extend([3, 4, 5, 6].map(|n| {
        entry(
            &format!("inversion on Z/{n}"),
            Recipe::Action {
                action: inversion(n),
            },
        )
    }));
    CatalogSpec::new(entries)
}

/// A transversal of `⟨(1 2)⟩` in `S3` that is not a subgroup, read as a
/// map `S3 -> S2`; it fails the composition condition.
pub fn faulty_cocycle_entry() -> CatalogEntry {
    entry(
        "faulty transversal",
        Recipe::Cocycle {
            group: AlgebraSpec::Symmetric { n: 3 },
            subgroup: gens(&["(1 2)"]),
            values: faulty_transversal_values(),
        },
    )
}

/// `q(ι(b) t) = b` for the transversal `{(), (1 3), (2 3)}`.
fn faulty_transversal_values() -> Vec<Elem> {
    use crate::algebra::{symmetric_group, Permutation};
    let s3 = symmetric_group(3, &Limits::default()).expect("S3");
    let idx = |t: &str| {
        s3.index_of_permutation(&Permutation::parse_cycles(t, 3).expect("cycle"))
            .expect("element")
    };
    let (e, tau) = (idx("()"), idx("(1 2)"));
    let transversal = [idx("()"), idx("(1 3)"), idx("(2 3)")];
    let mut values = vec![0; s3.order()];
    for (b, ib) in [(0, e), (1, tau)] {
        for &t in &transversal {
            values[s3.mul(ib, t) as usize] = b;
        }
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclic_group;

    fn instance(f: &MapSpec, g: &MapSpec) -> PullbackInstance {
        let limits = Limits::default();
        PullbackInstance::new(&f.build(&limits).unwrap(), &g.build(&limits).unwrap()).unwrap()
    }

    fn zero(k: usize, m: usize) -> MapSpec {
        MapSpec::Zero {
            domain: cyclic(k),
            codomain: cyclic(m),
        }
    }

    #[test]
    fn hom_sets() {
        let limits = Limits::default();
        let id = MapSpec::Identity { domain: cyclic(2) };
        let diag = instance(&id, &id);
        let homs = hom_f_g(&diag, &limits).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].values(), &[0, 1]);
        assert_eq!(
            hom_f_g(&instance(&zero(2, 1), &zero(2, 1)), &limits)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            hom_f_g(&instance(&zero(3, 1), &zero(2, 1)), &limits)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn klein_instance() {
        let limits = Limits::default();
        let inst = instance(&zero(2, 1), &zero(2, 1));
        assert!(inst.image_contained);
        let homs = hom_f_g(&inst, &limits).unwrap();
        // Pullback elements (k, l) in order (0,0), (0,1), (1,0), (1,1).
        let q0 = cocycle_from_hom(&inst, &homs[0]).unwrap();
        assert_eq!(q0.values(), &[0, 1, 0, 1]);
        let q1 = cocycle_from_hom(&inst, &homs[1]).unwrap();
        assert_eq!(q1.values(), &[0, 1, 1, 0]);
        assert_eq!(
            kernel_of_cocycle(&q0)
                .unwrap()
                .elements()
                .collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert_eq!(
            kernel_of_cocycle(&q1)
                .unwrap()
                .elements()
                .collect::<Vec<_>>(),
            vec![0, 3]
        );
        assert_eq!(hom_from_cocycle(&inst, &q0).unwrap(), homs[0]);
        assert_eq!(hom_from_cocycle(&inst, &q1).unwrap(), homs[1]);
        assert_eq!(hom_classes(&inst, &limits).unwrap().class_count(), 2);
        assert_eq!(desc1(inst.iota(), None, &limits).unwrap().len(), 2);
    }

    #[test]
    fn diagonal_cocycle_is_constant() {
        let id = MapSpec::Identity { domain: cyclic(2) };
        let inst = instance(&id, &id);
        let h = ElementMap::identity(&cyclic_group(2));
        let q = cocycle_from_hom(&inst, &h).unwrap();
        assert!(q.values().iter().all(|&v| v == 0));
        assert_eq!(hom_from_cocycle(&inst, &q).unwrap().values(), h.values());
    }

    #[test]
    fn hypothesis_and_hom_set_errors() {
        let limits = Limits::default();
        let inst = instance(&MapSpec::Identity { domain: cyclic(2) }, &zero(3, 2));
        assert!(!inst.image_contained);
        let cocycles = enumerate_left_cocycles(inst.iota(), &limits).unwrap();
        assert!(matches!(
            hom_from_cocycle(&inst, &cocycles[0]),
            Err(Error::HypothesisFailed { k: 1 })
        ));
        let id = MapSpec::Identity { domain: cyclic(2) };
        let diag = instance(&id, &id);
        let zero_map = ElementMap::constant_identity(&cyclic_group(2), &cyclic_group(2));
        assert!(matches!(
            cocycle_from_hom(&diag, &zero_map),
            Err(Error::NotInHomSet(_))
        ));
    }

    #[test]
    fn sign_instance_has_one_class() {
        let limits = Limits::default();
        let inst = instance(
            &MapSpec::Identity { domain: cyclic(2) },
            &MapSpec::Sign {
                domain: AlgebraSpec::Symmetric { n: 3 },
            },
        );
        assert_eq!(hom_f_g(&inst, &limits).unwrap().len(), 3);
        assert_eq!(hom_classes(&inst, &limits).unwrap().class_count(), 1);
    }

    #[test]
    fn quaternion_group_shape() {
        let q8 = quaternion_group().build_group(&Limits::default()).unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_commutative());
        let involutions = q8.elements().filter(|&a| q8.element_order(a) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn faulty_entry_reports_composition() {
        let catalog = CatalogSpec::new(vec![faulty_cocycle_entry()]);
        let report = run_verification_suite(&catalog, &SuiteOptions::default());
        assert!(!report.passed());
        let witness = report.failures().next().unwrap().witness.clone().unwrap();
        assert!(witness.contains("composition"), "{witness}");
    }

    #[test]
    fn empty_catalog_gives_empty_report() {
        let report = run_verification_suite(&CatalogSpec::empty(), &SuiteOptions::default());
        assert!(report.records.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn small_catalog_passes() {
        let catalog = CatalogSpec::new(
            default_catalog()
                .entries
                .into_iter()
                .filter(|e| {
                    ["S3", "pullback Klein", "semilattice on Z/2"].contains(&e.name.as_str())
                })
                .collect(),
        );
        let report = run_verification_suite(&catalog, &SuiteOptions::default());
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert!(report.records.len() > 10);
        assert!(report.records.iter().all(|r| r.elapsed_ms.is_none()));
    }
}
