//! Floating-point probe of representation varieties of surface groups.
//!
//! The word map `Φ(g₁,h₁,…,g_p,h_p) = [g₁,h₁]⋯[g_p,h_p]` on `SL(n)^{2p}`
//! is evaluated with its Jacobian, solutions of `Φ = e` are sampled by
//! Gauss–Newton, and local dimensions are read off numerical ranks.

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::repmodel::{
    build_action, group_lie_basis, GroupDescriptor, GroupFactor, Irrep, ModelError, ModuleDescriptor, Summand,
};

/// Finite-difference step for the Jacobian cross-check.
pub const FD_STEP: f64 = 1e-7;
/// Entrywise agreement required between the two Jacobians.
pub const JACOBIAN_AGREEMENT: f64 = 1e-5;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_THRESHOLD: f64 = 1e-6;
/// A singular-value ratio strictly inside this window makes the rank indeterminate.
pub const GAP_WINDOW: (f64, f64) = (1e-8, 1e-4);
/// Largest tolerated `|det g − 1|` for an input point.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepVarError {
    #[error("the numeric probe supports SL(n) only, got {0}")]
    UnsupportedGroup(String),
    #[error("genus must be at least 2, got {0}")]
    Genus(usize),
    #[error("expected {expected} matrices of size {n}x{n}, got {got}")]
    PointShape { expected: usize, n: usize, got: usize },
    #[error("matrix {index} is not in the group: |det - 1| = {residual:e}")]
    NotInGroup { index: usize, residual: f64 },
    #[error("a matrix in the word is singular")]
    Singular,
    #[error("no solution within tolerance after {attempts} random starts")]
    Convergence { attempts: usize },
    #[error("singular-value ratio {ratio:e} falls in the ambiguous window, rank indeterminate")]
    Indeterminate { ratio: f64 },
    #[error("dim h = {dim_h} exceeds dim g = {dim_g}")]
    Isotropy { dim_h: usize, dim_g: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The surface-group relator word map on `G^{2p}`.
#[derive(Clone, Debug)]
pub struct WordMap {
    pub genus: usize,
    pub group: GroupDescriptor,
    n: usize,
    lie_basis: Vec<DMatrix<f64>>,
    /// Pseudo-inverse of the matrix whose columns are the flattened Lie basis.
    coords: DMatrix<f64>,
}

/// A point of `G^{2p}` listed as `g₁, h₁, …, g_p, h_p`.
pub type Point = Vec<DMatrix<f64>>;

impl WordMap {
    pub fn new(genus: usize, group: GroupDescriptor) -> Result<Self, RepVarError> {
        if genus < 2 {
            return Err(RepVarError::Genus(genus));
        }
        let n = match group.factors.as_slice() {
            [GroupFactor::Sl { n }] => *n,
            _ => return Err(RepVarError::UnsupportedGroup(group.to_string())),
        };
        let (blocks, _) = group_lie_basis(&group);
        let lie_basis: Vec<DMatrix<f64>> = blocks
            .into_iter()
            .flatten()
            .map(|m| DMatrix::from_fn(n, n, |i, j| m.get(i, j).to_f64().expect("finite entry")))
            .collect();
        let stacked = DMatrix::from_fn(n * n, lie_basis.len(), |r, c| lie_basis[c][(r / n, r % n)]);
        let coords = stacked.pseudo_inverse(1e-12).expect("nonnegative epsilon");
        Ok(WordMap {
            genus,
            group,
            n,
            lie_basis,
            coords,
        })
    }

    pub fn dim_g(&self) -> usize {
        self.lie_basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    /// `2p · dim G`.
    pub fn domain_dim(&self) -> usize {
        2 * self.genus * self.dim_g()
    }

    pub fn identity_point(&self) -> Point {
        vec![DMatrix::identity(self.n, self.n); 2 * self.genus]
    }

    fn lie_coordinates(&self, m: &DMatrix<f64>) -> DVector<f64> {
        let flat = DVector::from_fn(self.n * self.n, |r, _| m[(r / self.n, r % self.n)]);
        &self.coords * flat
    }

    fn lie_element(&self, c: &[f64]) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for (x, b) in c.iter().zip(&self.lie_basis) {
            out += b * *x;
        }
        out
    }

    /// Largest `|det g − 1|` over the matrices of a point.
    pub fn membership_residual(&self, point: &Point) -> f64 {
        point.iter().map(|g| (g.determinant() - 1.0).abs()).fold(0.0, f64::max)
    }

    fn check(&self, point: &Point) -> Result<(), RepVarError> {
        if point.len() != 2 * self.genus || point.iter().any(|g| g.shape() != (self.n, self.n)) {
            return Err(RepVarError::PointShape {
                expected: 2 * self.genus,
                n: self.n,
                got: point.len(),
            });
        }
        for (index, g) in point.iter().enumerate() {
            let residual = (g.determinant() - 1.0).abs();
            if residual > MEMBERSHIP_TOLERANCE {
                return Err(RepVarError::NotInGroup { index, residual });
            }
        }
        Ok(())
    }

    /// `Φ` at an arbitrary tuple of invertible matrices.
    fn value(&self, point: &[DMatrix<f64>]) -> Result<DMatrix<f64>, RepVarError> {
        let mut phi = DMatrix::identity(self.n, self.n);
        for pair in point.chunks(2) {
            phi *= commutator(&pair[0], &pair[1])?;
        }
        Ok(phi)
    }

    /// Derivatives `dΦ` along `g_k ↦ g_k(1 + εX_a)`, one matrix per `(k, a)`.
    fn raw_derivatives(&self, point: &Point) -> Result<Vec<DMatrix<f64>>, RepVarError> {
        let comms: Vec<DMatrix<f64>> = point
            .chunks(2)
            .map(|p| commutator(&p[0], &p[1]))
            .collect::<Result<_, _>>()?;
        let id = DMatrix::identity(self.n, self.n);
        let mut prefix = vec![id.clone()];
        for c in &comms {
            let last = prefix.last().expect("nonempty") * c;
            prefix.push(last);
        }
        let mut suffix = vec![id; comms.len() + 1];
        for i in (0..comms.len()).rev() {
            suffix[i] = &comms[i] * &suffix[i + 1];
        }
        let mut out = Vec::with_capacity(self.domain_dim());
        for (i, pair) in point.chunks(2).enumerate() {
            let (g, h) = (&pair[0], &pair[1]);
            let gi = g.clone().try_inverse().ok_or(RepVarError::Singular)?;
            let hi = h.clone().try_inverse().ok_or(RepVarError::Singular)?;
            let gh = g * h;
            for x in &self.lie_basis {
                let dc = g * x * h * &gi * &hi - &gh * x * &gi * &hi;
                out.push(&prefix[i] * dc * &suffix[i + 1]);
            }
            for x in &self.lie_basis {
                let dc = &gh * x * &gi * &hi - &gh * &gi * x * &hi;
                out.push(&prefix[i] * dc * &suffix[i + 1]);
            }
        }
        Ok(out)
    }

    fn left_trivialize(&self, phi: &DMatrix<f64>, raw: &[DMatrix<f64>]) -> Result<DMatrix<f64>, RepVarError> {
        let inv = phi.clone().try_inverse().ok_or(RepVarError::Singular)?;
        let mut jac = DMatrix::zeros(self.dim_g(), raw.len());
        for (col, d) in raw.iter().enumerate() {
            jac.set_column(col, &self.lie_coordinates(&(&inv * d)));
        }
        Ok(jac)
    }

    /// Central finite differences of `Φ` with step [`FD_STEP`], left-trivialized.
    pub fn finite_difference_jacobian(&self, point: &Point) -> Result<DMatrix<f64>, RepVarError> {
        self.check(point)?;
        let phi = self.value(point)?;
        let mut raw = Vec::with_capacity(self.domain_dim());
        for k in 0..point.len() {
            for x in &self.lie_basis {
                let mut plus = point.clone();
                let mut minus = point.clone();
                plus[k] = &point[k] + &point[k] * x * FD_STEP;
                minus[k] = &point[k] - &point[k] * x * FD_STEP;
                raw.push((self.value(&plus)? - self.value(&minus)?) / (2.0 * FD_STEP));
            }
        }
        self.left_trivialize(&phi, &raw)
    }
}

fn commutator(g: &DMatrix<f64>, h: &DMatrix<f64>) -> Result<DMatrix<f64>, RepVarError> {
    let gi = g.clone().try_inverse().ok_or(RepVarError::Singular)?;
    let hi = h.clone().try_inverse().ok_or(RepVarError::Singular)?;
    Ok(g * h * gi * hi)
}

/// `Φ(point)` and its Jacobian in left-trivialized coordinates, by the product rule.
///
/// The Jacobian has `dim G` rows and one column per Lie basis direction of
/// each of the `2p` factors.
pub fn evaluate_word_map(wm: &WordMap, point: &Point) -> Result<(DMatrix<f64>, DMatrix<f64>), RepVarError> {
    wm.check(point)?;
    let phi = wm.value(point)?;
    let raw = wm.raw_derivatives(point)?;
    let jac = wm.left_trivialize(&phi, &raw)?;
    Ok((phi, jac))
}

/// Largest entrywise difference between the product-rule and finite-difference Jacobians.
pub fn jacobian_discrepancy(wm: &WordMap, point: &Point) -> Result<f64, RepVarError> {
    let (_, exact) = evaluate_word_map(wm, point)?;
    let fd = wm.finite_difference_jacobian(point)?;
    Ok((exact - fd).abs().max())
}

/// Settings for [`sample_solution`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iterations: usize,
    pub max_restarts: usize,
    /// Scale of the random Lie algebra element exponentiated for each start.
    pub start_scale: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iterations: 200,
            max_restarts: 50,
            start_scale: 1.0,
        }
    }
}

/// A converged solution of `Φ = e`.
#[derive(Clone, Debug)]
pub struct Sample {
    pub point: Point,
    /// `‖Φ(point) − e‖_F`.
    pub residual: f64,
    pub membership_residual: f64,
    pub restarts: usize,
}

/// Rescales to determinant one.
fn project(g: &DMatrix<f64>) -> DMatrix<f64> {
    let det = g.determinant();
    let n = g.nrows() as f64;
    g / det.abs().powf(1.0 / n).copysign(det)
}

fn residual_norm(wm: &WordMap, point: &[DMatrix<f64>]) -> Result<f64, RepVarError> {
    let n = wm.n;
    Ok((wm.value(point)? - DMatrix::<f64>::identity(n, n)).norm())
}

fn gauss_newton(wm: &WordMap, mut point: Point, opts: &SolverOptions) -> Result<Option<Point>, RepVarError> {
    let n = wm.n;
    let mut res = residual_norm(wm, &point)?;
    for _ in 0..opts.max_iterations {
        if res < opts.tol && wm.membership_residual(&point) < opts.tol {
            return Ok(Some(point));
        }
        let phi = wm.value(&point)?;
        let raw = wm.raw_derivatives(&point)?;
        let jac = DMatrix::from_fn(n * n, raw.len(), |r, c| raw[c][(r / n, r % n)]);
        let rhs = DVector::from_fn(n * n, |r, _| {
            phi[(r / n, r % n)] - if r / n == r % n { 1.0 } else { 0.0 }
        });
        let step = jac
            .svd(true, true)
            .solve(&rhs, 1e-12)
            .map_err(|_| RepVarError::Singular)?;
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Point = point
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    let c: Vec<f64> = (0..wm.dim_g()).map(|a| -alpha * step[k * wm.dim_g() + a]).collect();
                    project(&(g * wm.lie_element(&c).exp()))
                })
                .collect();
            let r = residual_norm(wm, &trial)?;
            if r < res {
                point = trial;
                res = r;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            return Ok(None);
        }
    }
    Ok((res < opts.tol && wm.membership_residual(&point) < opts.tol).then_some(point))
}

/// A random point `g_k = exp(X_k)` with Lie coordinates uniform in `[−s, s]`.
pub fn random_point(wm: &WordMap, rng: &mut ChaCha8Rng, scale: f64) -> Point {
    (0..2 * wm.genus)
        .map(|_| {
            let c: Vec<f64> = (0..wm.dim_g()).map(|_| rng.gen_range(-scale..=scale)).collect();
            project(&wm.lie_element(&c).exp())
        })
        .collect()
}

/// Gauss–Newton from random starts until `‖Φ − e‖_F < tol`.
pub fn sample_solution(wm: &WordMap, opts: &SolverOptions, rng: &mut ChaCha8Rng) -> Result<Sample, RepVarError> {
    for restarts in 0..opts.max_restarts {
        let start = random_point(wm, rng, opts.start_scale);
        if let Some(point) = gauss_newton(wm, start, opts)? {
            return Ok(Sample {
                residual: residual_norm(wm, &point)?,
                membership_residual: wm.membership_residual(&point),
                point,
                restarts,
            });
        }
    }
    Err(RepVarError::Convergence {
        attempts: opts.max_restarts,
    })
}

/// Numerical rank of `dΦ` and the resulting local dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalDimension {
    pub rank: usize,
    /// `2p · dim G − rank`.
    pub dim: usize,
    /// True when `dΦ` is not onto `𝔤`, so the count is a tangent-space
    /// dimension rather than a local dimension.
    pub singular: bool,
    pub singular_values: Vec<f64>,
}

pub fn local_dimension(wm: &WordMap, point: &Point) -> Result<LocalDimension, RepVarError> {
    let (_, jac) = evaluate_word_map(wm, point)?;
    let mut sv: Vec<f64> = jac.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let largest = sv.first().copied().unwrap_or(0.0);
    let rank = if largest == 0.0 {
        0
    } else {
        for &s in &sv {
            let ratio = s / largest;
            if ratio > GAP_WINDOW.0 && ratio < GAP_WINDOW.1 {
                return Err(RepVarError::Indeterminate { ratio });
            }
        }
        sv.iter().filter(|&&s| s > RANK_THRESHOLD * largest).count()
    };
    Ok(LocalDimension {
        rank,
        dim: wm.domain_dim() - rank,
        singular: rank < wm.dim_g(),
        singular_values: sv,
    })
}

/// Local model of the tangent cone of `Hom(π, G)` at a point with isotropy algebra `𝔥`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentConeModel {
    pub genus: usize,
    pub dim_h: usize,
    pub dim_g: usize,
    /// `dim W` for `W = p·𝔥 ⊕ (p−1)·𝔤/𝔥`.
    pub dim_w: usize,
    /// `dim 𝔤/𝔥`, the smooth factor of the model.
    pub trivial_factor_dim: usize,
    /// `2 dim W − dim H`, the shell dimension when it is a complete intersection.
    pub expected_shell_dim: usize,
    /// `(2p − 1)·dim G`.
    pub model_dim: usize,
    /// The isotropy group as a built-in group, when it is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shell_group: Option<GroupDescriptor>,
    /// `W` as a module of `shell_group`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shell_module: Option<ModuleDescriptor>,
}

/// Builds the model `N_y = μ⁻¹(0) × 𝔤/𝔥` for `W = p·𝔥 ⊕ (p−1)·𝔤/𝔥`.
///
/// A shell description is attached when `𝔥` is all of `𝔤` (for a simple
/// `G`) or a maximal torus, the cases with a built-in isotropy group.
pub fn tangent_cone_model(genus: usize, dim_h: usize, g: &GroupDescriptor) -> Result<TangentConeModel, RepVarError> {
    let dim_g = g.dim();
    if dim_h > dim_g {
        return Err(RepVarError::Isotropy { dim_h, dim_g });
    }
    let p = genus;
    let dim_w = p * dim_h + p.saturating_sub(1) * (dim_g - dim_h);
    let (shell_group, shell_module) = if dim_h == dim_g && g.factors.len() == 1 && !g.is_torus() && p >= 1 {
        let module = ModuleDescriptor {
            summands: vec![Summand::new(0, Irrep::Adjoint, p)],
        };
        (Some(g.clone()), Some(module))
    } else if dim_h == g.rank() && dim_h > 0 && p >= 1 {
        let t = g.rank();
        let mut weights: Vec<Vec<i64>> = vec![vec![0; t]; p * t];
        for _ in 1..p {
            weights.extend(crate::repmodel::roots(g));
        }
        let module = ModuleDescriptor {
            summands: vec![Summand::new(0, Irrep::Weights { weights }, 1)],
        };
        (Some(GroupDescriptor::torus(t)), Some(module))
    } else {
        (None, None)
    };
    if let (Some(sg), Some(sm)) = (&shell_group, &shell_module) {
        let action = build_action(sg, sm)?;
        debug_assert_eq!(action.dim_v, dim_w);
    }
    Ok(TangentConeModel {
        genus,
        dim_h,
        dim_g,
        dim_w,
        trivial_factor_dim: dim_g - dim_h,
        expected_shell_dim: 2 * dim_w - dim_h,
        model_dim: (2 * p).saturating_sub(1) * dim_g,
        shell_group,
        shell_module,
    })
}

/// Summary of one sampled solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub residual: f64,
    pub membership_residual: f64,
    pub rank: usize,
    pub local_dim: usize,
    /// Largest entrywise gap between product-rule and finite-difference Jacobians.
    pub jacobian_gap: f64,
    pub restarts: usize,
}

/// Results of a seeded sampling run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub genus: usize,
    pub group: String,
    pub seed: u64,
    pub expected_dim: usize,
    pub samples: Vec<SampleRecord>,
    /// Rank data at the identity, a singular point.
    pub identity: LocalDimension,
}

impl ProbeReport {
    /// Samples meeting the tolerance, the expected dimension and the Jacobian agreement.
    pub fn successes(&self, tol: f64) -> usize {
        self.samples
            .iter()
            .filter(|s| {
                s.residual < tol
                    && s.membership_residual < tol
                    && s.local_dim == self.expected_dim
                    && s.jacobian_gap < JACOBIAN_AGREEMENT
            })
            .count()
    }
}

/// Samples `count` solutions from one seed and measures each.
pub fn probe(wm: &WordMap, count: usize, seed: u64, opts: &SolverOptions) -> Result<ProbeReport, RepVarError> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        let s = sample_solution(wm, opts, &mut rng)?;
        let ld = local_dimension(wm, &s.point)?;
        samples.push(SampleRecord {
            residual: s.residual,
            membership_residual: s.membership_residual,
            rank: ld.rank,
            local_dim: ld.dim,
            jacobian_gap: jacobian_discrepancy(wm, &s.point)?,
            restarts: s.restarts,
        });
    }
    Ok(ProbeReport {
        genus: wm.genus,
        group: wm.group.to_string(),
        seed,
        expected_dim: (2 * wm.genus - 1) * wm.dim_g(),
        samples,
        identity: local_dimension(wm, &wm.identity_point())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn sl2(p: usize) -> WordMap {
        WordMap::new(p, GroupDescriptor::sl(2)).unwrap()
    }

    #[test]
    fn identity_point() {
        let wm = sl2(2);
        let (phi, jac) = evaluate_word_map(&wm, &wm.identity_point()).unwrap();
        assert!((phi - DMatrix::identity(2, 2)).norm() == 0.0);
        assert_eq!(jac.norm(), 0.0);
        let ld = local_dimension(&wm, &wm.identity_point()).unwrap();
        assert_eq!((ld.rank, ld.dim, ld.singular), (0, 12, true));
    }

    #[test]
    fn commuting_tuple() {
        let wm = sl2(2);
        let d = |a: f64| DMatrix::from_row_slice(2, 2, &[a, 0.0, 0.0, 1.0 / a]);
        let point = vec![d(2.0), d(0.5), d(3.0), d(-1.0)];
        let (phi, _) = evaluate_word_map(&wm, &point).unwrap();
        assert!((phi - DMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn random_tuple_is_not_a_solution_and_jacobians_agree() {
        let wm = sl2(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let point = random_point(&wm, &mut rng, 1.0);
        let (phi, _) = evaluate_word_map(&wm, &point).unwrap();
        assert!((phi - DMatrix::identity(2, 2)).norm() > 1e-3);
        assert!(jacobian_discrepancy(&wm, &point).unwrap() < JACOBIAN_AGREEMENT);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            WordMap::new(1, GroupDescriptor::sl(2)),
            Err(RepVarError::Genus(1))
        ));
        assert!(WordMap::new(2, GroupDescriptor::so(3)).is_err());
        let wm = sl2(2);
        let mut point = wm.identity_point();
        point[1] *= 2.0;
        assert!(matches!(
            evaluate_word_map(&wm, &point),
            Err(RepVarError::NotInGroup { index: 1, .. })
        ));
    }

    #[test]
    fn sampled_solution_has_expected_dimension() {
        let wm = sl2(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = sample_solution(&wm, &SolverOptions::default(), &mut rng).unwrap();
        assert!(s.residual < 1e-10);
        let ld = local_dimension(&wm, &s.point).unwrap();
        assert_eq!((ld.rank, ld.dim), (3, 9));
    }

    #[test]
    fn tangent_cone_examples() {
        let g = GroupDescriptor::sl(2);
        let whole = tangent_cone_model(2, 3, &g).unwrap();
        assert_eq!((whole.dim_w, whole.model_dim, whole.trivial_factor_dim), (6, 9, 0));
        assert_eq!(whole.shell_module.unwrap().summands[0].multiplicity, 2);
        let free = tangent_cone_model(2, 0, &g).unwrap();
        assert_eq!(
            (
                free.dim_w,
                free.model_dim,
                free.expected_shell_dim + free.trivial_factor_dim
            ),
            (3, 9, 9)
        );
        let torus = tangent_cone_model(2, 1, &g).unwrap();
        assert_eq!(torus.dim_w, 4);
        assert_eq!(torus.expected_shell_dim + torus.trivial_factor_dim, 9);
        match &torus.shell_module.as_ref().unwrap().summands[0].irrep {
            Irrep::Weights { weights } => assert_eq!(weights, &vec![vec![0], vec![0], vec![2], vec![-2]]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(tangent_cone_model(2, 4, &g).is_err());
    }
}
