use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use super::ideal::Ideal;
use super::monomial::MonomialOrder;
use super::polynomial::{same_ring, Polynomial, Ring};
use super::AlgebraError;

/// Matrix of partial derivatives: one row per generator, one column per variable.
pub fn jacobian_matrix(gens: &[Polynomial], vars: &[usize]) -> Result<Vec<Vec<Polynomial>>, AlgebraError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    for g in gens {
        if !same_ring(ring, g.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
    }
    if let Some(&v) = vars.iter().find(|&&v| v >= ring.nvars()) {
        return Err(AlgebraError::VariableIndex(v));
    }
    Ok(gens
        .iter()
        .map(|g| vars.iter().map(|&v| g.derivative(v)).collect())
        .collect())
}

/// All nonzero `size`-minors of the Jacobian, deduplicated up to scalars.
///
/// Minors are built row by row: the determinant of the first `j` chosen rows
/// against every `j`-subset of columns is expanded along the newest row from
/// the table of `(j-1)`-minors, so shared sub-determinants are computed once.
pub fn jacobian_minors(gens: &[Polynomial], vars: &[usize], size: usize) -> Result<Vec<Polynomial>, AlgebraError> {
    let rows = gens.len();
    let cols = vars.len();
    if size == 0 || size > rows || size > cols {
        return Err(AlgebraError::MinorSize { size, rows, cols });
    }
    if cols > 128 {
        return Err(AlgebraError::MinorSize { size, rows, cols });
    }
    let jac = jacobian_matrix(gens, vars)?;
    let ring = gens[0].ring().clone();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut chosen = Vec::with_capacity(size);
    expand(&jac, &ring, size, 0, &mut chosen, &BTreeMap::new(), &mut out, &mut seen);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn expand(
    jac: &[Vec<Polynomial>],
    ring: &Arc<Ring>,
    size: usize,
    next_row: usize,
    chosen: &mut Vec<usize>,
    table: &BTreeMap<u128, Polynomial>,
    out: &mut Vec<Polynomial>,
    seen: &mut HashSet<String>,
) {
    let depth = chosen.len();
    if depth == size {
        for minor in table.values() {
            let key = minor.monic(MonomialOrder::GrevLex).to_string();
            if seen.insert(key) {
                out.push(minor.clone());
            }
        }
        return;
    }
    let rows = jac.len();
    let cols = jac.first().map_or(0, |r| r.len());
    // need size - depth rows including this one
    for r in next_row..=(rows - (size - depth)) {
        let row = &jac[r];
        let mut next: BTreeMap<u128, Polynomial> = BTreeMap::new();
        if depth == 0 {
            for (c, entry) in row.iter().enumerate() {
                if !entry.is_zero() {
                    next.insert(1u128 << c, entry.clone());
                }
            }
        } else {
            for (&set, det) in table {
                for (c, entry) in row.iter().enumerate().take(cols) {
                    let bit = 1u128 << c;
                    if set & bit != 0 || entry.is_zero() {
                        continue;
                    }
                    let pos = (set & (bit - 1)).count_ones() as usize;
                    let term = det.mul(entry);
                    let term = if (depth + pos) % 2 == 1 { term.neg() } else { term };
                    let slot = next.entry(set | bit).or_insert_with(|| Polynomial::zero(ring));
                    *slot = slot.add(&term);
                }
            }
            next.retain(|_, p| !p.is_zero());
        }
        chosen.push(r);
        expand(jac, ring, size, r + 1, chosen, &next, out, seen);
        chosen.pop();
    }
}

/// Ideal of the `size`-minors of the Jacobian, optionally together with `gens`.
pub fn jacobian_minors_ideal(
    gens: &[Polynomial],
    vars: &[usize],
    size: usize,
    include_gens: bool,
) -> Result<Ideal, AlgebraError> {
    let minors = jacobian_minors(gens, vars, size)?;
    let ring = gens[0].ring().clone();
    let mut all = if include_gens { gens.to_vec() } else { Vec::new() };
    all.extend(minors);
    Ideal::new(&ring, all)
}
