use super::monomial::Monomial;

/// Largest set of variables containing no support of the given monomials.
///
/// A set of variables is independent modulo a monomial ideal exactly when
/// it contains the support of none of the generators. The complement of a
/// maximum independent set is a minimum hitting set of the supports, which
/// is what the branch and bound below searches for.
pub fn max_independent_set(monomials: &[Monomial], nvars: usize) -> Option<Vec<usize>> {
    assert!(nvars <= 128, "at most 128 variables are supported");
    if monomials.iter().any(Monomial::is_one) {
        return None;
    }
    let mut supports: Vec<u128> = monomials
        .iter()
        .map(|m| m.support().fold(0u128, |acc, v| acc | (1u128 << v)))
        .collect();
    supports.sort_by_key(|s| (s.count_ones(), *s));
    supports.dedup();
    // keep only inclusion-minimal supports
    let mut minimal: Vec<u128> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|&t| t & !s == 0) {
            minimal.push(s);
        }
    }
    let mut best = (0..nvars).fold(0u128, |acc, v| acc | (1u128 << v));
    let mut best_count = nvars as u32 + 1;
    let mut hit = 0u128;
    search(&minimal, &mut hit, &mut best, &mut best_count);
    let all = if nvars == 128 { u128::MAX } else { (1u128 << nvars) - 1 };
    let free = all & !best;
    Some((0..nvars).filter(|&v| free & (1u128 << v) != 0).collect())
}

fn search(sets: &[u128], hit: &mut u128, best: &mut u128, best_count: &mut u32) {
    let count = hit.count_ones();
    if count >= *best_count {
        return;
    }
    // smallest unhit set gives the narrowest branching
    let unhit = sets.iter().filter(|&&s| s & *hit == 0).min_by_key(|s| s.count_ones());
    let Some(&target) = unhit else {
        *best = *hit;
        *best_count = count;
        return;
    };
    if count + 1 >= *best_count {
        return;
    }
    // lower bound: greedily pick disjoint unhit sets
    let mut used = 0u128;
    let mut disjoint = 0u32;
    for &s in sets {
        if s & *hit == 0 && s & used == 0 {
            used |= s;
            disjoint += 1;
        }
    }
    if count + disjoint >= *best_count {
        return;
    }
    let mut bits = target;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        *hit |= 1u128 << v;
        search(sets, hit, best, best_count);
        *hit &= !(1u128 << v);
    }
}

/// Krull dimension of `k[x_1..x_n] / (monomials)`; `-1` for the unit ideal.
pub fn krull_dimension_of_leading_terms(monomials: &[Monomial], nvars: usize) -> i64 {
    match max_independent_set(monomials, nvars) {
        None => -1,
        Some(s) => s.len() as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn coordinate_ideals() {
        assert_eq!(krull_dimension_of_leading_terms(&[], 3), 3);
        assert_eq!(krull_dimension_of_leading_terms(&[m(&[1, 0]), m(&[0, 1])], 2), 0);
        assert_eq!(krull_dimension_of_leading_terms(&[m(&[0, 0])], 2), -1);
        assert_eq!(krull_dimension_of_leading_terms(&[m(&[1, 0, 1, 0])], 4), 3);
    }

    #[test]
    fn vertex_cover_of_a_cycle() {
        // supports form a 5-cycle, minimum cover has 3 vertices
        let gens: Vec<Monomial> = (0..5)
            .map(|i| {
                let mut e = vec![0u16; 5];
                e[i] = 1;
                e[(i + 1) % 5] = 2;
                m(&e)
            })
            .collect();
        assert_eq!(krull_dimension_of_leading_terms(&gens, 5), 2);
        let free = max_independent_set(&gens, 5).unwrap();
        for g in &gens {
            assert!(g.support().any(|v| !free.contains(&v)));
        }
    }
}
