//! Weight combinatorics of torus modules.
//!
//! For a torus every question about orbits reduces to convex geometry of
//! the weights: a point is unstable exactly when some cocharacter is
//! positive on all weights of its support, and the isotropy of a point is
//! the annihilator of the span of its support.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{int, Rational};
use crate::linalg::QMatrix;
use crate::lp::{dot, feasible_point, LpBackend};
use crate::repmodel::{is_orthogonal, lagrangian_choices, ModelError, RepAction, WeightData};

/// Largest number of distinct nonzero weights handled by subset enumeration.
pub const SUBSET_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("weight multiset is not symmetric under negation")]
    NotOrthogonal,
    #[error("the module has {0} distinct nonzero weights, more than the enumeration cap {SUBSET_CAP}")]
    TooManyWeights(usize),
    #[error("weight {0:?} of the Lie algebra does not occur in the module")]
    MissingRoot(Vec<i64>),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A cocharacter that is at least 1 on every weight of a support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberCertificate {
    /// Primitive integral cocharacter.
    pub lambda: Vec<i64>,
    /// Indices of all weights on which `lambda` is positive.
    pub positive_support: Vec<usize>,
}

impl ChamberCertificate {
    /// Re-checks the certificate arithmetically against `support`.
    pub fn verify(&self, w: &WeightData, support: &[usize]) -> bool {
        let pairing = |i: usize| -> i64 { w.weights[i].iter().zip(&self.lambda).map(|(a, l)| a * l).sum() };
        support.iter().all(|&i| pairing(i) >= 1)
            && (0..w.dim()).all(|i| (pairing(i) > 0) == self.positive_support.contains(&i))
    }
}

fn to_rational_rows(ws: &[&Vec<i64>]) -> Vec<Vec<Rational>> {
    ws.iter().map(|w| w.iter().map(|&x| int(x)).collect()).collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
fn primitive_integer(v: &[Rational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("small cocharacter"))
        .collect()
}

fn lambda_feasible(pos: &[&Vec<i64>], nonneg: &[&Vec<i64>], rank: usize, backend: LpBackend) -> Option<Vec<Rational>> {
    let mut rows = to_rational_rows(pos);
    let mut rhs = vec![Rational::one(); pos.len()];
    rows.extend(to_rational_rows(nonneg));
    rhs.extend(std::iter::repeat_n(Rational::zero(), nonneg.len()));
    feasible_point(&rows, &rhs, rank, backend)
}

fn certificate(w: &WeightData, lambda: &[Rational]) -> ChamberCertificate {
    let lambda = primitive_integer(lambda);
    let positive_support = (0..w.dim())
        .filter(|&i| w.weights[i].iter().zip(&lambda).map(|(a, l)| a * l).sum::<i64>() > 0)
        .collect();
    ChamberCertificate {
        lambda,
        positive_support,
    }
}

/// Hilbert–Mumford test for the points with the given support.
///
/// Returns a cocharacter at least 1 on every support weight, which exists
/// exactly when 0 is outside the convex hull of those weights.
pub fn is_unstable(w: &WeightData, support: &[usize]) -> Option<ChamberCertificate> {
    is_unstable_with(w, support, LpBackend::Auto)
}

pub fn is_unstable_with(w: &WeightData, support: &[usize], backend: LpBackend) -> Option<ChamberCertificate> {
    let pos: Vec<&Vec<i64>> = support.iter().map(|&i| &w.weights[i]).collect();
    let lambda = lambda_feasible(&pos, &[], w.torus_rank, backend)?;
    Some(certificate(w, &lambda))
}

/// Distinct nonzero weights with multiplicities, in sorted order.
fn distinct_nonzero(w: &WeightData) -> Vec<(Vec<i64>, usize)> {
    w.nonzero().counts().into_iter().collect()
}

/// Largest total multiplicity of weights on which one cocharacter is positive.
///
/// This is the largest linear subspace of the null cone, and for a torus it
/// is also the dimension of the null cone. `None` when the number of
/// distinct nonzero weights exceeds [`SUBSET_CAP`].
pub fn m0(w: &WeightData) -> Option<usize> {
    m0_with_witness(w).map(|(m, _)| m)
}

/// [`m0`] together with a cocharacter attaining it.
pub fn m0_with_witness(w: &WeightData) -> Option<(usize, Option<ChamberCertificate>)> {
    let distinct = distinct_nonzero(w);
    if distinct.len() > SUBSET_CAP {
        return None;
    }
    let mut best = (0usize, None);
    let mut chosen: Vec<usize> = Vec::new();
    branch(w, &distinct, 0, &mut chosen, 0, &mut best);
    Some(best)
}

fn branch(
    w: &WeightData,
    distinct: &[(Vec<i64>, usize)],
    next: usize,
    chosen: &mut Vec<usize>,
    mult: usize,
    best: &mut (usize, Option<ChamberCertificate>),
) {
    let remaining: usize = distinct[next..].iter().map(|(_, c)| c).sum();
    if mult + remaining <= best.0 {
        return;
    }
    if next == distinct.len() {
        let pos: Vec<&Vec<i64>> = chosen.iter().map(|&k| &distinct[k].0).collect();
        let lambda = lambda_feasible(&pos, &[], w.torus_rank, LpBackend::Auto).expect("checked on insertion");
        *best = (mult, Some(certificate(w, &lambda)));
        return;
    }
    chosen.push(next);
    let pos: Vec<&Vec<i64>> = chosen.iter().map(|&k| &distinct[k].0).collect();
    if lambda_feasible(&pos, &[], w.torus_rank, LpBackend::Auto).is_some() {
        branch(w, distinct, next + 1, chosen, mult + distinct[next].1, best);
    }
    chosen.pop();
    branch(w, distinct, next + 1, chosen, mult, best);
}

/// Null-cone dimension by enumerating every support subset with the simplex solver.
///
/// Shares no code path with [`m0`] beyond the weight bookkeeping and is
/// used to cross-check it. `None` above 16 distinct nonzero weights.
pub fn null_cone_dim_exhaustive(w: &WeightData) -> Option<usize> {
    let distinct = distinct_nonzero(w);
    if distinct.len() > 16 {
        return None;
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << distinct.len()) {
        let members: Vec<&Vec<i64>> = (0..distinct.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| &distinct[k].0)
            .collect();
        let mult: usize = (0..distinct.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| distinct[k].1)
            .sum();
        if mult <= best {
            continue;
        }
        if lambda_feasible(&members, &[], w.torus_rank, LpBackend::Simplex).is_some() {
            best = mult;
        }
    }
    Some(best)
}

/// Supports of the maximal coordinate subspaces in the null cone.
///
/// The null cone of a torus module is the union of these coordinate
/// subspaces. Each support lists weight indices, so equal weights travel
/// together. `None` above 16 distinct nonzero weights.
pub fn maximal_unstable_supports(w: &WeightData) -> Option<Vec<Vec<usize>>> {
    let distinct = distinct_nonzero(w);
    if distinct.len() > 16 {
        return None;
    }
    let mut unstable: Vec<u32> = Vec::new();
    for mask in 0u32..(1u32 << distinct.len()) {
        let members: Vec<&Vec<i64>> = (0..distinct.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| &distinct[k].0)
            .collect();
        if lambda_feasible(&members, &[], w.torus_rank, LpBackend::Auto).is_some() {
            unstable.push(mask);
        }
    }
    let mut maximal: Vec<Vec<usize>> = unstable
        .iter()
        .filter(|&&m| !unstable.iter().any(|&o| o != m && o & m == m))
        .map(|&m| {
            let chosen: Vec<&Vec<i64>> = (0..distinct.len())
                .filter(|k| m & (1 << k) != 0)
                .map(|k| &distinct[k].0)
                .collect();
            (0..w.dim()).filter(|&i| chosen.contains(&&w.weights[i])).collect()
        })
        .collect();
    maximal.sort();
    Some(maximal)
}

/// `(dim V − dim V^T) / 2`, the value of `m0` for orthogonal modules.
pub fn m0_orthogonal_formula(w: &WeightData) -> Result<usize, TorusError> {
    if !is_orthogonal(w) {
        return Err(TorusError::NotOrthogonal);
    }
    Ok((w.dim() - w.dim_fixed()) / 2)
}

/// Dimensions of the isotropy strata `V_(r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularityProfile {
    pub torus_rank: usize,
    pub dim_v: usize,
    /// `r ↦ dim V_(r)` for the nonempty strata.
    pub entries: BTreeMap<usize, usize>,
    /// Largest `k` with `codim V_(r) ≥ r + k` for every nonempty stratum with `r ≥ 1`.
    pub max_k: Option<i64>,
}

impl ModularityProfile {
    pub fn is_k_modular(&self, k: i64) -> bool {
        self.max_k.is_none_or(|m| m >= k)
    }

    pub fn codim(&self, r: usize) -> Option<usize> {
        self.entries.get(&r).map(|d| self.dim_v - d)
    }
}

/// A subspace of the weight space spanned by weights, with its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub rank: usize,
    /// Indices into `WeightData::weights` of every weight in the span, zero weights included.
    pub members: Vec<usize>,
    /// Integral basis of the annihilator, the Lie algebra of the isotropy subtorus.
    pub annihilator: Vec<Vec<i64>>,
}

fn integer_nullspace(rows: &[&Vec<i64>], t: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..t)
            .map(|i| {
                let mut v = vec![0; t];
                v[i] = 1;
                v
            })
            .collect();
    }
    let m = QMatrix::from_rows(to_rational_rows(rows));
    m.nullspace().iter().map(|v| primitive_integer(v)).collect()
}

/// Every flat spanned by weights, from `{0}` up to the span of all weights.
pub fn flats(w: &WeightData) -> Result<Vec<Flat>, TorusError> {
    let distinct = distinct_nonzero(w);
    if distinct.len() > SUBSET_CAP {
        return Err(TorusError::TooManyWeights(distinct.len()));
    }
    let t = w.torus_rank;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    collect_flats(w, &distinct, t, 0, &mut stack, &mut seen, &mut out);
    out.sort_by(|a, b| a.rank.cmp(&b.rank).then(a.members.cmp(&b.members)));
    Ok(out)
}

fn collect_flats(
    w: &WeightData,
    distinct: &[(Vec<i64>, usize)],
    t: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    seen: &mut BTreeSet<Vec<usize>>,
    out: &mut Vec<Flat>,
) {
    let basis: Vec<&Vec<i64>> = chosen.iter().map(|&k| &distinct[k].0).collect();
    let ann = integer_nullspace(&basis, t);
    let in_span = |v: &Vec<i64>| {
        ann.iter()
            .all(|a| a.iter().zip(v).map(|(x, y)| x * y).sum::<i64>() == 0)
    };
    let members: Vec<usize> = (0..w.dim()).filter(|&i| in_span(&w.weights[i])).collect();
    if !seen.insert(members.clone()) {
        return;
    }
    out.push(Flat {
        rank: chosen.len(),
        members,
        annihilator: ann.clone(),
    });
    if chosen.len() == t {
        return;
    }
    for k in start..distinct.len() {
        if in_span(&distinct[k].0) {
            continue;
        }
        chosen.push(k);
        collect_flats(w, distinct, t, k + 1, chosen, seen, out);
        chosen.pop();
    }
}

/// Isotropy strata dimensions and the modularity index.
pub fn modularity_profile(w: &WeightData) -> Result<ModularityProfile, TorusError> {
    let t = w.torus_rank;
    let mut entries: BTreeMap<usize, usize> = BTreeMap::new();
    for f in flats(w)? {
        let r = t - f.rank;
        let e = entries.entry(r).or_insert(0);
        *e = (*e).max(f.members.len());
    }
    let max_k = entries
        .iter()
        .filter(|(&r, _)| r >= 1)
        .map(|(&r, &d)| (w.dim() - d) as i64 - r as i64)
        .min();
    Ok(ModularityProfile {
        torus_rank: t,
        dim_v: w.dim(),
        entries,
        max_k,
    })
}

/// Whether the weights at `members` generate a linear cone.
fn cone_is_linear(w: &WeightData, members: &[usize]) -> bool {
    let mut distinct: Vec<&Vec<i64>> = members
        .iter()
        .map(|&i| &w.weights[i])
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    distinct.sort();
    distinct.dedup();
    (0..distinct.len()).all(|j| {
        let others: Vec<&Vec<i64>> = distinct.clone();
        lambda_feasible(&[distinct[j]], &others, w.torus_rank, LpBackend::Auto).is_none()
    })
}

/// Whether generic orbits are closed: 0 lies in the relative interior of
/// the convex hull of all weights.
pub fn is_stable(w: &WeightData) -> bool {
    let all: Vec<usize> = (0..w.dim()).collect();
    cone_is_linear(w, &all)
}

/// Finite principal isotropy: the weights span and the module is stable.
pub fn has_fpig(w: &WeightData) -> bool {
    w.rank() == w.torus_rank && is_stable(w)
}

/// First Lagrangian submodule of `V ⊕ V*` with FPIG, if any.
pub fn fpig_lagrangian(w: &WeightData) -> Option<WeightData> {
    lagrangian_choices(&w.with_dual()).ok()?.into_iter().find(has_fpig)
}

/// Slice representation data at a closed orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDescriptor {
    /// Integral basis of the Lie algebra of the isotropy subtorus `H`.
    pub h_basis: Vec<Vec<i64>>,
    pub dim_h: usize,
    /// Weights of `W_0` in the coordinates given by `h_basis`.
    pub w0: WeightData,
    /// `dim W^H`.
    pub dim_w_fixed: usize,
    /// `dim W_0^T`; zero for toral `H`.
    pub dim_w0_fixed: usize,
}

impl SliceDescriptor {
    /// True when `H` is finite.
    pub fn is_principal(&self) -> bool {
        self.dim_h == 0
    }
}

fn restrict(w: &[i64], h_basis: &[Vec<i64>]) -> Vec<i64> {
    h_basis
        .iter()
        .map(|h| h.iter().zip(w).map(|(a, b)| a * b).sum())
        .collect()
}

fn slice_at(w: &WeightData, f: &Flat) -> SliceDescriptor {
    let h_basis = f.annihilator.clone();
    let dim_h = h_basis.len();
    let outside: Vec<Vec<i64>> = (0..w.dim())
        .filter(|i| !f.members.contains(i))
        .map(|i| restrict(&w.weights[i], &h_basis))
        .collect();
    SliceDescriptor {
        dim_h,
        w0: WeightData {
            torus_rank: dim_h,
            weights: outside,
        },
        h_basis,
        dim_w_fixed: f.members.len() - f.rank,
        dim_w0_fixed: 0,
    }
}

/// Slice representations at the closed orbits of a torus module.
///
/// A support gives a closed orbit when its weights generate a linear cone;
/// the isotropy is the annihilator of their span. One descriptor is
/// returned per isotropy subtorus, including the principal one when the
/// module is stable.
pub fn torus_slice_reps(w: &WeightData) -> Result<Vec<SliceDescriptor>, TorusError> {
    Ok(flats(w)?
        .iter()
        .filter(|f| cone_is_linear(w, &f.members))
        .map(|f| slice_at(w, f))
        .collect())
}

/// Every subtorus occurring as the identity component of an isotropy group.
pub fn isotropy_subtori(w: &WeightData) -> Result<Vec<Vec<Vec<i64>>>, TorusError> {
    Ok(flats(w)?.into_iter().map(|f| f.annihilator).collect())
}

/// Symplectic slice of `V ⊕ V*` at a closed orbit of a torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticSlice {
    pub h_basis: Vec<Vec<i64>>,
    pub dim_h: usize,
    /// Weights of `S_0` in `H` coordinates.
    pub s0: WeightData,
    /// `dim S^H`.
    pub dim_s_fixed: usize,
}

impl SymplecticSlice {
    /// Lagrangian halves `W_0` with `S_0 ≅ W_0 ⊕ W_0*`.
    pub fn lagrangians(&self) -> Vec<WeightData> {
        lagrangian_choices(&self.s0).expect("S_0 is symmetric")
    }
}

/// Symplectic slice representations of the shell of a torus module.
///
/// Every flat of the weights of `V ⊕ V*` carries a closed orbit because
/// those weights are symmetric; the slice drops the orbit tangent and its
/// dual from the weights in the flat.
pub fn symplectic_slices(v: &WeightData) -> Result<Vec<SymplecticSlice>, TorusError> {
    let u = v.with_dual();
    Ok(flats(&u)?
        .iter()
        .map(|f| {
            let s = slice_at(&u, f);
            SymplecticSlice {
                h_basis: s.h_basis,
                dim_h: s.dim_h,
                s0: s.w0,
                dim_s_fixed: f.members.len() - 2 * f.rank,
            }
        })
        .collect())
}

/// Slice at a closed orbit whose isotropy is a maximal torus of `G`.
///
/// The slice is `V` restricted to the torus with one copy of each root
/// removed, those being the weights of `g/t` along the orbit.
pub fn maximal_torus_slice(a: &RepAction) -> Result<SliceDescriptor, TorusError> {
    let t = a.group.rank();
    let roots = crate::repmodel::roots(&a.group);
    let mut remaining = a.weight_data.weights.clone();
    for r in &roots {
        let pos = remaining
            .iter()
            .position(|w| w == r)
            .ok_or_else(|| TorusError::MissingRoot(r.clone()))?;
        remaining.remove(pos);
    }
    let w = WeightData {
        torus_rank: t,
        weights: remaining,
    };
    let h_basis: Vec<Vec<i64>> = (0..t)
        .map(|i| {
            let mut v = vec![0; t];
            v[i] = 1;
            v
        })
        .collect();
    Ok(SliceDescriptor {
        h_basis,
        dim_h: t,
        dim_w_fixed: w.dim_fixed(),
        w0: w.nonzero(),
        dim_w0_fixed: 0,
    })
}

/// Cocharacter values `⟨λ, a_i⟩` for a certificate, as rationals.
pub fn pairings(w: &WeightData, lambda: &[i64]) -> Vec<Rational> {
    let l: Vec<Rational> = lambda.iter().map(|&x| int(x)).collect();
    w.rational_rows().iter().map(|row| dot(row, &l)).collect()
}

/// Whether a cocharacter is strictly positive on every weight it claims.
pub fn certificate_is_sound(w: &WeightData, cert: &ChamberCertificate) -> bool {
    let values = pairings(w, &cert.lambda);
    cert.positive_support.iter().all(|&i| values[i].is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmodel::{build_action, GroupDescriptor, Irrep, ModuleDescriptor, Summand};

    fn wd(ws: &[&[i64]]) -> WeightData {
        WeightData::new(ws[0].len(), ws.iter().map(|w| w.to_vec()).collect()).unwrap()
    }

    #[test]
    fn instability_examples() {
        assert!(is_unstable(&WeightData::rank_one(&[1, -1]), &[0, 1]).is_none());
        let c = is_unstable(&WeightData::rank_one(&[1, 1]), &[0, 1]).unwrap();
        assert_eq!(c.lambda, vec![1]);
        assert!(c.verify(&WeightData::rank_one(&[1, 1]), &[0, 1]));
        let tri = wd(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(is_unstable(&tri, &[0, 1, 2]).is_none());
        let c = is_unstable(&tri, &[0, 1]).unwrap();
        assert!(c.verify(&tri, &[0, 1]));
    }

    #[test]
    fn maximal_supports() {
        let s = maximal_unstable_supports(&WeightData::rank_one(&[2, -2, -2, 2, 0])).unwrap();
        assert_eq!(s, vec![vec![0, 3], vec![1, 2]]);
        let tri = wd(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let s = maximal_unstable_supports(&tri).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn m0_examples() {
        assert_eq!(m0(&WeightData::rank_one(&[1, 1])), Some(2));
        assert_eq!(m0(&WeightData::rank_one(&[1, 1, -1, -1])), Some(2));
        assert_eq!(m0(&wd(&[&[1, 0], &[0, 1], &[-1, -1]])), Some(2));
        assert_eq!(m0(&WeightData::rank_one(&[0, 0])), Some(0));
        assert_eq!(null_cone_dim_exhaustive(&wd(&[&[1, 0], &[0, 1], &[-1, -1]])), Some(2));
    }

    #[test]
    fn orthogonal_formula() {
        assert_eq!(m0_orthogonal_formula(&WeightData::rank_one(&[1, -1])), Ok(1));
        let w = wd(&[&[1, 0], &[-1, 0], &[2, 3], &[-2, -3]]);
        assert_eq!(m0_orthogonal_formula(&w), Ok(2));
        assert_eq!(m0(&w), Some(2));
        assert_eq!(m0_orthogonal_formula(&WeightData::rank_one(&[0, 0, 1, -1])), Ok(1));
        assert_eq!(
            m0_orthogonal_formula(&WeightData::rank_one(&[1, 1])),
            Err(TorusError::NotOrthogonal)
        );
    }

    #[test]
    fn modularity_examples() {
        let p = modularity_profile(&WeightData::rank_one(&[1, 1])).unwrap();
        assert_eq!(p.entries.get(&1), Some(&0));
        assert_eq!(p.max_k, Some(1));
        assert!(p.is_k_modular(1) && !p.is_k_modular(2));
        let p = modularity_profile(&WeightData::rank_one(&[1, -1])).unwrap();
        assert_eq!(p.max_k, Some(1));
        let p = modularity_profile(&WeightData::rank_one(&[1, -1]).with_dual()).unwrap();
        assert_eq!(p.entries.get(&1), Some(&0));
        assert_eq!(p.max_k, Some(3));
        let p = modularity_profile(&WeightData::rank_one(&[2, -2])).unwrap();
        assert_eq!(p.codim(1), Some(2));
    }

    #[test]
    fn stability_and_fpig() {
        assert!(is_stable(&WeightData::rank_one(&[1, -1])));
        assert!(has_fpig(&WeightData::rank_one(&[1, -1])));
        assert!(!is_stable(&WeightData::rank_one(&[1, 1])));
        assert!(is_stable(&WeightData::rank_one(&[0])));
        assert!(!has_fpig(&WeightData::rank_one(&[0])));
        assert!(is_stable(&wd(&[&[1, 0], &[0, 1], &[-1, -1]])));
        assert_eq!(
            fpig_lagrangian(&WeightData::rank_one(&[1, 1])),
            Some(WeightData::rank_one(&[-1, 1]))
        );
    }

    #[test]
    fn slices_of_small_modules() {
        let s = torus_slice_reps(&WeightData::rank_one(&[1, -1])).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].dim_h, 1);
        assert!(s[0].w0.same_multiset(&WeightData::rank_one(&[1, -1])));
        assert!(s[1].is_principal());
        let s = torus_slice_reps(&WeightData::rank_one(&[2, -2])).unwrap();
        assert_eq!((s[0].dim_h, s[0].w0.sorted()), (1, WeightData::rank_one(&[-2, 2])));
        let tri = wd(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let subtori = isotropy_subtori(&tri).unwrap();
        let dims: Vec<usize> = subtori.iter().map(Vec::len).collect();
        assert_eq!(dims, vec![2, 1, 1, 1, 0]);
        assert_eq!(torus_slice_reps(&tri).unwrap().len(), 2);
    }

    #[test]
    fn slice_dimensions_add_up() {
        let w = wd(&[&[1, 0], &[-1, 0], &[0, 1], &[1, 1], &[-1, -1], &[0, 0]]);
        for s in torus_slice_reps(&w).unwrap() {
            assert_eq!(s.dim_w_fixed + s.w0.dim() + (w.torus_rank - s.dim_h), w.dim());
            assert!(s.w0.weights.iter().all(|x| x.iter().any(|&c| c != 0)));
        }
    }

    #[test]
    fn maximal_torus_slice_of_two_adjoints() {
        let a = build_action(
            &GroupDescriptor::sl(2),
            &ModuleDescriptor {
                summands: vec![Summand::new(0, Irrep::Adjoint, 2)],
            },
        )
        .unwrap();
        let s = maximal_torus_slice(&a).unwrap();
        assert_eq!(s.dim_h, 1);
        assert!(s.w0.same_multiset(&WeightData::rank_one(&[2, -2])));
        assert_eq!(s.dim_w_fixed, 2);
    }

    #[test]
    fn symplectic_slices_of_c2() {
        let slices = symplectic_slices(&WeightData::rank_one(&[1, 1])).unwrap();
        let origin = slices.iter().find(|s| s.dim_h == 1).unwrap();
        assert_eq!(origin.s0.dim(), 4);
        assert!(origin.lagrangians().iter().any(has_fpig));
    }
}
