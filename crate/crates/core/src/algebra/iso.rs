use super::map::extend_from_generators;
use super::{subgroup, Elem, ElementMap, FiniteMonoid, Subgroup};

/// Tail length and period of the power sequence of `a`.
fn power_profile(m: &FiniteMonoid, a: Elem) -> (usize, usize) {
    let powers = m.power_cycle(a);
    let next = m.mul(*powers.last().expect("nonempty"), a);
    let tail = powers
        .iter()
        .position(|&x| x == next)
        .expect("cycle closes");
    (tail, powers.len() - tail)
}

/// An isomorphism `a -> b`, found by backtracking over images of a
/// generating set of `a` with matching power profiles.
pub fn find_isomorphism(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<ElementMap> {
    if a.order() != b.order() {
        return None;
    }
    let mut profile_a: Vec<_> = a.elements().map(|x| power_profile(a, x)).collect();
    let profile_b: Vec<_> = b.elements().map(|y| power_profile(b, y)).collect();
    let mut sorted_b = profile_b.clone();
    sorted_b.sort_unstable();
    let gens = subgroup::generators(a, &Subgroup::full(a.order()));
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            b.elements()
                .filter(|&y| profile_b[y as usize] == profile_a[g as usize])
                .collect()
        })
        .collect();
    profile_a.sort_unstable();
    if profile_a != sorted_b {
        return None;
    }
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut images)
}

fn search(
    a: &FiniteMonoid,
    b: &FiniteMonoid,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
) -> Option<ElementMap> {
    if images.len() == gens.len() {
        let values = extend_from_generators(a, b, gens, images)?;
        let map = ElementMap::new_unchecked(a, b, values);
        return map.is_injective().then_some(map);
    }
    for &y in &candidates[images.len()] {
        images.push(y);
        if let Some(found) = search(a, b, gens, candidates, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_homomorphism, cyclic_group, direct_product, symmetric_group};
    use crate::exec::Limits;

    #[test]
    fn cyclic_six_is_two_times_three() {
        let z6 = cyclic_group(6);
        let p = direct_product(&cyclic_group(2), &cyclic_group(3));
        let iso = find_isomorphism(&z6, &p).unwrap();
        assert!(check_homomorphism(&iso));
        assert!(iso.is_injective());
    }

    #[test]
    fn non_isomorphic_pairs() {
        let s3 = symmetric_group(3, &Limits::default()).unwrap();
        assert!(find_isomorphism(&s3, &cyclic_group(6)).is_none());
        let klein = direct_product(&cyclic_group(2), &cyclic_group(2));
        assert!(find_isomorphism(&klein, &cyclic_group(4)).is_none());
    }
}
