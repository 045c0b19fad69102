//! JSON documents describing algebras, maps, actions, subgroups and
//! verification catalogs.
//!
//! Every document type is an enum tagged by `kind`. Building a document
//! validates it; serializing a parsed document reproduces it field for field.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    all_subgroups, alternating_subgroup, as_group, cyclic_group, direct_product, permutation_group,
    pullback, subgroup_generated, symmetric_group, validate_monoid, Elem, ElementMap, FiniteGroup,
    FiniteMonoid, Permutation, Subgroup,
};
use crate::cohomology::{semidirect, validate_action, MonoidAction};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::factorization::conjugation_action;

pub const SCHEMA_VERSION: u32 = 1;

/// A finite monoid or group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// Row-major multiplication table with identity `one`.
    Table {
        n: usize,
        mul: Vec<Vec<Elem>>,
        one: Elem,
    },
    /// The permutation group generated by cycle-notation generators.
    Perm {
        degree: usize,
        generators: Vec<String>,
    },
    Cyclic {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Product {
        left: Box<AlgebraSpec>,
        right: Box<AlgebraSpec>,
    },
    Semidirect {
        action: Box<ActionSpec>,
    },
    Pullback {
        f: Box<MapSpec>,
        g: Box<MapSpec>,
    },
}

impl AlgebraSpec {
    /// The algebra, with inverses attached whenever every element has one.
    pub fn build(&self, limits: &Limits) -> Result<FiniteMonoid> {
        let m = match self {
            AlgebraSpec::Table { n, mul, one } => validate_monoid(*n, mul, *one)?,
            AlgebraSpec::Perm { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| Permutation::parse_cycles(g, *degree))
                    .collect::<Result<Vec<_>>>()?;
                permutation_group(*degree, &gens)?.into_monoid()
            }
            AlgebraSpec::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::BadDocument("cyclic group of order 0".into()));
                }
                cyclic_group(*n).into_monoid()
            }
            AlgebraSpec::Symmetric { n } => symmetric_group(*n, limits)?.into_monoid(),
            AlgebraSpec::Product { left, right } => {
                direct_product(&left.build(limits)?, &right.build(limits)?)
            }
            AlgebraSpec::Semidirect { action } => semidirect(&action.build(limits)?).monoid,
            AlgebraSpec::Pullback { f, g } => pullback(&f.build(limits)?, &g.build(limits)?)?
                .group
                .into_monoid(),
        };
        Ok(as_group(&m).map(FiniteGroup::into_monoid).unwrap_or(m))
    }

    pub fn build_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        as_group(&self.build(limits)?)
    }
}

/// A subgroup of an already-built group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SubgroupSpec {
    /// Generated by elements in cycle notation (permutation groups) or by
    /// element indices written as decimal strings.
    Gens(Vec<String>),
    /// The even permutations of a symmetric group.
    Alternating(bool),
    /// Position in the list of all subgroups sorted by `(order, bitset)`.
    Index(usize),
    /// An explicit closed set of element indices.
    Elements(Vec<Elem>),
}

impl SubgroupSpec {
    pub fn resolve(&self, g: &FiniteGroup, limits: &Limits) -> Result<Subgroup> {
        match self {
            SubgroupSpec::Gens(gens) => {
                let seeds = gens
                    .iter()
                    .map(|text| parse_element(g, text))
                    .collect::<Result<Vec<_>>>()?;
                subgroup_generated(g, &seeds)
            }
            SubgroupSpec::Alternating(true) => alternating_subgroup(g),
            SubgroupSpec::Alternating(false) => Ok(Subgroup::full(g.order())),
            SubgroupSpec::Index(k) => {
                let subs = all_subgroups(g, limits)?;
                let count = subs.len();
                subs.into_iter().nth(*k).ok_or_else(|| {
                    Error::BadDocument(format!("subgroup index {k} out of range (0..{count})"))
                })
            }
            SubgroupSpec::Elements(elems) => Subgroup::from_elements(g, elems),
        }
    }
}

/// An element written as cycle notation or as a decimal index.
pub fn parse_element(m: &FiniteMonoid, text: &str) -> Result<Elem> {
    let text = text.trim();
    if text.starts_with('(') {
        let degree = m.degree().ok_or_else(|| {
            Error::BadDocument(format!(
                "{text:?}: cycle notation needs a permutation group"
            ))
        })?;
        let p = Permutation::parse_cycles(text, degree)?;
        return m
            .index_of_permutation(&p)
            .ok_or_else(|| Error::BadDocument(format!("{text} is not an element of the group")));
    }
    let index: Elem = text
        .parse()
        .map_err(|_| Error::BadDocument(format!("{text:?} is neither a cycle nor an index")))?;
    if index as usize >= m.order() {
        return Err(Error::IndexOutOfRange {
            row: index as usize,
            col: 0,
            value: index as usize,
            order: m.order(),
        });
    }
    Ok(index)
}

/// A map between two algebras.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapSpec {
    Values {
        domain: AlgebraSpec,
        codomain: AlgebraSpec,
        values: Vec<Elem>,
    },
    /// Everything to the identity.
    Zero {
        domain: AlgebraSpec,
        codomain: AlgebraSpec,
    },
    Identity {
        domain: AlgebraSpec,
    },
    /// Parity of a permutation group, into `Z/2`.
    Sign {
        domain: AlgebraSpec,
    },
    /// A subgroup into its ambient group.
    Inclusion {
        group: AlgebraSpec,
        subgroup: SubgroupSpec,
    },
    /// `(b, x) -> b` out of a semidirect product.
    #[serde(rename = "projection-B")]
    ProjectionB {
        action: ActionSpec,
    },
}

impl MapSpec {
    pub fn build(&self, limits: &Limits) -> Result<ElementMap> {
        match self {
            MapSpec::Values {
                domain,
                codomain,
                values,
            } => ElementMap::new(
                &domain.build(limits)?,
                &codomain.build(limits)?,
                values.clone(),
            ),
            MapSpec::Zero { domain, codomain } => Ok(ElementMap::constant_identity(
                &domain.build(limits)?,
                &codomain.build(limits)?,
            )),
            MapSpec::Identity { domain } => Ok(ElementMap::identity(&domain.build(limits)?)),
            MapSpec::Sign { domain } => {
                let d = domain.build(limits)?;
                if d.degree().is_none() {
                    return Err(Error::BadDocument("sign needs a permutation group".into()));
                }
                ElementMap::from_fn(&d, &cyclic_group(2), |a| {
                    u32::from(!d.permutation(a).expect("permutation group").is_even())
                })
            }
            MapSpec::Inclusion { group, subgroup } => {
                let g = group.build_group(limits)?;
                let h = subgroup.resolve(&g, limits)?;
                Ok(ElementMap::inclusion(&g.subgroup_as_group(&h)).expect("restricted algebra"))
            }
            MapSpec::ProjectionB { action } => Ok(semidirect(&action.build(limits)?).p_b),
        }
    }
}

/// An action of one monoid on another.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ActionSpec {
    /// `star[x][b] = x * b`.
    Table {
        actor: AlgebraSpec,
        target: AlgebraSpec,
        star: Vec<Vec<Elem>>,
    },
    Trivial {
        actor: AlgebraSpec,
        target: AlgebraSpec,
    },
    /// A group of order 2 acting on an abelian group by inversion.
    Inversion {
        actor: AlgebraSpec,
        target: AlgebraSpec,
    },
    /// A group of order 2 swapping the coordinates of `factor x factor`.
    Swap {
        actor: AlgebraSpec,
        factor: AlgebraSpec,
    },
    /// A complement acting on a normal subgroup by conjugation.
    Conjugation {
        group: AlgebraSpec,
        normal: SubgroupSpec,
        complement: SubgroupSpec,
    },
}

fn order_two_actor(actor: &FiniteMonoid) -> Result<Elem> {
    if actor.order() != 2 || !actor.is_group() {
        return Err(Error::BadDocument(
            "the actor must be a group of order 2".into(),
        ));
    }
    Ok(1 - actor.identity())
}

impl ActionSpec {
    pub fn build(&self, limits: &Limits) -> Result<MonoidAction> {
        match self {
            ActionSpec::Table {
                actor,
                target,
                star,
            } => validate_action(&actor.build(limits)?, &target.build(limits)?, star.clone()),
            ActionSpec::Trivial { actor, target } => Ok(MonoidAction::trivial(
                &actor.build(limits)?,
                &target.build(limits)?,
            )),
            ActionSpec::Inversion { actor, target } => {
                let x = actor.build(limits)?;
                let flip = order_two_actor(&x)?;
                let b = target.build_group(limits)?;
                let star = x
                    .elements()
                    .map(|s| {
                        b.elements()
                            .map(|e| if s == flip { b.inv(e) } else { e })
                            .collect()
                    })
                    .collect();
                validate_action(&x, &b, star)
            }
            ActionSpec::Swap { actor, factor } => {
                let x = actor.build(limits)?;
                let flip = order_two_actor(&x)?;
                let f = factor.build(limits)?;
                let b = direct_product(&f, &f);
                let n = f.order() as Elem;
                let star = x
                    .elements()
                    .map(|s| {
                        b.elements()
                            .map(|e| if s == flip { (e % n) * n + e / n } else { e })
                            .collect()
                    })
                    .collect();
                validate_action(&x, &b, star)
            }
            ActionSpec::Conjugation {
                group,
                normal,
                complement,
            } => {
                let g = group.build_group(limits)?;
                let b = normal.resolve(&g, limits)?;
                let x = complement.resolve(&g, limits)?;
                Ok(conjugation_action(&g, &b, &x)?.action)
            }
        }
    }
}

/// A named verification instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(flatten)]
    pub recipe: Recipe,
}

/// What a catalog entry builds, and hence which checks run on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Recipe {
    /// A group, checked against every subgroup.
    Group {
        group: AlgebraSpec,
    },
    /// A single subgroup inclusion.
    Inclusion {
        group: AlgebraSpec,
        subgroup: SubgroupSpec,
    },
    /// A monoid that need not be a group.
    Monoid {
        monoid: AlgebraSpec,
    },
    /// A homomorphism into a group from a monoid that need not be one.
    MonoidHom {
        map: MapSpec,
    },
    Action {
        action: ActionSpec,
    },
    Pullback {
        f: MapSpec,
        g: MapSpec,
    },
    /// A supplied map, checked to be a left cocycle of the inclusion.
    Cocycle {
        group: AlgebraSpec,
        subgroup: SubgroupSpec,
        values: Vec<Elem>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogSpec {
    pub schema_version: u32,
    pub entries: Vec<CatalogEntry>,
}

impl CatalogSpec {
    pub fn new(entries: Vec<CatalogEntry>) -> Self {
        CatalogSpec {
            schema_version: SCHEMA_VERSION,
            entries,
        }
    }

    pub fn empty() -> Self {
        CatalogSpec::new(Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_round_trip() {
        let text = r#"{"kind":"semidirect","action":{"kind":"inversion","actor":{"kind":"cyclic","n":2},"target":{"kind":"cyclic","n":3}}}"#;
        let spec: AlgebraSpec = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&spec).unwrap(), text);
        let m = spec.build(&Limits::default()).unwrap();
        assert!(m.is_group());
        assert_eq!(m.order(), 6);
    }

    #[test]
    fn table_documents_detect_groups() {
        let limits = Limits::default();
        let z2: AlgebraSpec =
            serde_json::from_str(r#"{"kind":"table","n":2,"mul":[[0,1],[1,0]],"one":0}"#).unwrap();
        assert!(z2.build(&limits).unwrap().is_group());
        let semi: AlgebraSpec =
            serde_json::from_str(r#"{"kind":"table","n":2,"mul":[[0,1],[1,1]],"one":0}"#).unwrap();
        assert!(!semi.build(&limits).unwrap().is_group());
        assert!(serde_json::from_str::<AlgebraSpec>(r#"{"kind":"cyclic","n":2,"x":1}"#).is_err());
    }

    #[test]
    fn subgroup_selectors() {
        let limits = Limits::default();
        let s3 = AlgebraSpec::Symmetric { n: 3 }
            .build_group(&limits)
            .unwrap();
        let t: SubgroupSpec = serde_json::from_str(r#"{"gens":["(1 2)"]}"#).unwrap();
        assert_eq!(t.resolve(&s3, &limits).unwrap().order(), 2);
        let a: SubgroupSpec = serde_json::from_str(r#"{"alternating":true}"#).unwrap();
        assert_eq!(a.resolve(&s3, &limits).unwrap().order(), 3);
        assert_eq!(
            SubgroupSpec::Index(5)
                .resolve(&s3, &limits)
                .unwrap()
                .order(),
            6
        );
        assert!(SubgroupSpec::Index(6).resolve(&s3, &limits).is_err());
        let z4 = AlgebraSpec::Cyclic { n: 4 }.build_group(&limits).unwrap();
        let two = SubgroupSpec::Gens(vec!["2".into()])
            .resolve(&z4, &limits)
            .unwrap();
        assert_eq!(two.elements().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn action_recipes() {
        let limits = Limits::default();
        let swap = ActionSpec::Swap {
            actor: AlgebraSpec::Cyclic { n: 2 },
            factor: AlgebraSpec::Cyclic { n: 2 },
        }
        .build(&limits)
        .unwrap();
        assert_eq!(swap.rows(), vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]);
        let conj = ActionSpec::Conjugation {
            group: AlgebraSpec::Symmetric { n: 3 },
            normal: SubgroupSpec::Alternating(true),
            complement: SubgroupSpec::Gens(vec!["(1 2)".into()]),
        }
        .build(&limits)
        .unwrap();
        assert!(!conj.is_trivial());
    }
}
