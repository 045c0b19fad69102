use super::{closure, subgroup, Elem, FiniteMonoid, Subgroup};
use crate::error::{Error, Result};
use crate::exec::{self, Limits};

/// A total function between the carriers of two algebras.
///
/// Homomorphism and cocycle properties are checked separately; the type only
/// guarantees totality and index range.
#[derive(Clone, PartialEq)]
pub struct ElementMap {
    domain: FiniteMonoid,
    codomain: FiniteMonoid,
    values: Vec<Elem>,
}

impl ElementMap {
    pub fn new(domain: &FiniteMonoid, codomain: &FiniteMonoid, values: Vec<Elem>) -> Result<Self> {
        if values.len() != domain.order() {
            return Err(Error::DomainMismatch(format!(
                "map has {} values but the domain has order {}",
                values.len(),
                domain.order()
            )));
        }
        if let Some((i, &v)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| v as usize >= codomain.order())
        {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: 0,
                value: v as usize,
                order: codomain.order(),
            });
        }
        Ok(ElementMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            values,
        })
    }

    pub(crate) fn new_unchecked(
        domain: &FiniteMonoid,
        codomain: &FiniteMonoid,
        values: Vec<Elem>,
    ) -> Self {
        debug_assert_eq!(values.len(), domain.order());
        ElementMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            values,
        }
    }

    pub fn from_fn(
        domain: &FiniteMonoid,
        codomain: &FiniteMonoid,
        f: impl Fn(Elem) -> Elem,
    ) -> Result<Self> {
        ElementMap::new(domain, codomain, domain.elements().map(f).collect())
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        ElementMap::new_unchecked(m, m, m.elements().collect())
    }

    /// Sends everything to the identity of `codomain`.
    pub fn constant_identity(domain: &FiniteMonoid, codomain: &FiniteMonoid) -> Self {
        ElementMap::new_unchecked(domain, codomain, vec![codomain.identity(); domain.order()])
    }

    /// The inclusion of a subgroup given as a restricted algebra.
    pub fn inclusion(sub: &FiniteMonoid) -> Option<Self> {
        let parent = sub.parent()?;
        Some(ElementMap::new_unchecked(
            sub,
            parent,
            sub.parent_elements()?.to_vec(),
        ))
    }

    pub fn domain(&self) -> &FiniteMonoid {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteMonoid {
        &self.codomain
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.values[a as usize]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ElementMap) -> Result<ElementMap> {
        if first.codomain != self.domain {
            return Err(Error::DomainMismatch(
                "codomain of the first map is not the domain of the second".into(),
            ));
        }
        Ok(ElementMap::new_unchecked(
            &first.domain,
            &self.codomain,
            first.values.iter().map(|&a| self.apply(a)).collect(),
        ))
    }

    /// First pair of distinct elements with equal images, if any.
    pub fn injectivity_witness(&self) -> Option<(Elem, Elem)> {
        let mut first = vec![None; self.codomain.order()];
        for (a, &v) in self.values.iter().enumerate() {
            match first[v as usize] {
                Some(b) => return Some((b, a as Elem)),
                None => first[v as usize] = Some(a as Elem),
            }
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    /// The set of values, as a bitset over the codomain.
    pub fn image(&self) -> Subgroup {
        Subgroup::from_indices_unchecked(
            self.codomain.order(),
            self.values.iter().map(|&v| v as usize),
        )
    }

    /// Elements sent to the identity.
    pub fn kernel(&self) -> Subgroup {
        let e = self.codomain.identity();
        Subgroup::from_indices_unchecked(
            self.domain.order(),
            (0..self.values.len()).filter(|&a| self.values[a] == e),
        )
    }

    /// First failing pair `(a, b)` with `f(ab) != f(a)f(b)`, or `(1, 1)` if
    /// the identity is not preserved.
    pub fn homomorphism_witness(&self) -> Option<(Elem, Elem)> {
        let (d, c) = (&self.domain, &self.codomain);
        if self.apply(d.identity()) != c.identity() {
            return Some((d.identity(), d.identity()));
        }
        for a in d.elements() {
            for b in d.elements() {
                if self.apply(d.mul(a, b)) != c.mul(self.apply(a), self.apply(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

impl std::fmt::Debug for ElementMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ElementMap{:?}", self.values)
    }
}

/// Whether `f` preserves the identity and products.
pub fn check_homomorphism(f: &ElementMap) -> bool {
    f.homomorphism_witness().is_none()
}

/// Extends generator images to a map by right multiplication along the
/// generated closure; `None` if two words for the same element disagree.
pub(crate) fn extend_from_generators(
    domain: &FiniteMonoid,
    codomain: &FiniteMonoid,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    extend_from_generators_with(domain, codomain, gens, images, |_, va, img| {
        codomain.mul(va, img)
    })
}

/// Like [`extend_from_generators`] with the rule `f(a g) = step(a, f(a), f(g))`.
pub(crate) fn extend_from_generators_with(
    domain: &FiniteMonoid,
    codomain: &FiniteMonoid,
    gens: &[Elem],
    images: &[Elem],
    step: impl Fn(Elem, Elem, Elem) -> Elem,
) -> Option<Vec<Elem>> {
    const UNSET: Elem = Elem::MAX;
    let mut values = vec![UNSET; domain.order()];
    values[domain.identity() as usize] = codomain.identity();
    let mut queue = std::collections::VecDeque::from([domain.identity()]);
    while let Some(a) = queue.pop_front() {
        let va = values[a as usize];
        for (&g, &img) in gens.iter().zip(images) {
            let ag = domain.mul(a, g) as usize;
            let v = step(a, va, img);
            if values[ag] == UNSET {
                values[ag] = v;
                queue.push_back(ag as Elem);
            } else if values[ag] != v {
                return None;
            }
        }
    }
    values.iter().all(|&v| v != UNSET).then_some(values)
}

/// Every homomorphism `k -> l`, sorted by value array.
///
/// A homomorphism is determined by its values on a generating set, so the
/// search visits `|l|^g` candidates for `g` generators of `k`; two suffice
/// for most groups met in practice.
pub fn homomorphisms(
    k: &FiniteMonoid,
    l: &FiniteMonoid,
    limits: &Limits,
) -> Result<Vec<ElementMap>> {
    let gens = subgroup::short_generators(k);
    let needed = (l.order() as u128)
        .checked_pow(gens.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > limits.map_budget {
        return Err(Error::SearchBudgetExceeded {
            needed,
            budget: limits.map_budget,
        });
    }
    debug_assert_eq!(closure(k, &gens).order(), k.order());
    let found = exec::map_range(limits, needed as usize, |mut code| {
        let images: Vec<Elem> = (0..gens.len())
            .map(|_| {
                let digit = (code % l.order()) as Elem;
                code /= l.order();
                digit
            })
            .collect();
        extend_from_generators(k, l, &gens, &images)
    });
    let mut homs: Vec<Vec<Elem>> = found.into_iter().flatten().collect();
    homs.sort();
    Ok(homs
        .into_iter()
        .map(|values| ElementMap::new_unchecked(k, l, values))
        .collect())
}
