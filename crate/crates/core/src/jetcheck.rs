//! Shell-level computations: dimension and complete-intersection checks,
//! rank strata of the moment map, the Mustață inequality on jet schemes,
//! fibres over the origin and the E-filtration.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{jacobian_minors, AlgebraError, GroebnerBudget, Ideal, MonomialOrder, Polynomial, Rational};
use crate::criteria::{condition_use_em, property_f, property_n, SliceQuantities, Status, Verdict};
use crate::linalg::{rank_of_vectors, QMatrix};
use crate::repmodel::{
    build_action, lagrangian_choices, GroupDescriptor, Irrep, ModelError, ModuleDescriptor, Summand, WeightData,
};
use crate::shell::{jet_generators, moment_generators, x_index, ShellError, ShellSystem};
use crate::torus::{has_fpig, m0, maximal_unstable_supports, symplectic_slices, TorusError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Shell(#[from] ShellError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("too many distinct weights to enumerate null-cone supports")]
    TooManyWeights,
    #[error("the jet level must be at least 1")]
    LevelZero,
    #[error("point {index} of the arc has {got} coordinates, expected {expected}")]
    ArcPoint { index: usize, expected: usize, got: usize },
    #[error("an arc needs at least one point")]
    EmptyArc,
    #[error("stratum {index}: {reason}")]
    InvalidStratum { index: usize, reason: String },
}

impl JetError {
    /// True when a Gröbner budget ran out.
    pub fn is_resource(&self) -> bool {
        match self {
            JetError::Algebra(e) | JetError::Shell(ShellError::Algebra(e)) => e.is_resource(),
            _ => false,
        }
    }
}

/// Monomial order and Gröbner budget shared by every computation in a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Engine {
    pub order: MonomialOrder,
    pub budget: GroebnerBudget,
}

impl Engine {
    fn dim(&self, ideal: &Ideal) -> Result<i64, JetError> {
        Ok(ideal.krull_dimension(self.order, self.budget)?)
    }
}

fn shell_vars(s: &ShellSystem) -> Vec<usize> {
    (0..2 * s.dim_v()).collect()
}

/// `2 dim V − dim G`, the dimension of a complete-intersection shell.
pub fn expected_dim(s: &ShellSystem) -> i64 {
    2 * s.dim_v() as i64 - s.dim_g() as i64
}

/// Krull dimension of the shell and whether it equals `2 dim V − dim G`.
pub fn shell_dim_and_ci(s: &ShellSystem, e: Engine) -> Result<(i64, bool), JetError> {
    let d = e.dim(s.ideal())?;
    Ok((d, d == expected_dim(s)))
}

/// Shell equations together with the `(dim G − r + 1)`-minors of `dμ`.
///
/// Cuts out the points of the shell whose isotropy algebra has dimension at least `r`.
pub fn rank_deficiency_ideal(s: &ShellSystem, r: usize) -> Result<Ideal, JetError> {
    let g = s.dim_g();
    let minors = jacobian_minors(&s.mu_generators, &shell_vars(s), g - r + 1)?;
    Ok(s.ideal().extended(minors)?)
}

/// `r ↦` dimension of the locus in the shell with isotropy of dimension at least `r`.
///
/// An empty locus has dimension −1.
pub fn singular_stratum_dims(s: &ShellSystem, e: Engine) -> Result<BTreeMap<usize, i64>, JetError> {
    let mut out = BTreeMap::new();
    for r in 1..=s.dim_g() {
        out.insert(r, e.dim(&rank_deficiency_ideal(s, r)?)?);
    }
    Ok(out)
}

/// `dim N − dim N_(r) ≥ r + 1` for every nonempty stratum.
pub fn one_modular_from_strata(dim_n: i64, strata: &BTreeMap<usize, i64>) -> bool {
    strata.iter().all(|(&r, &d)| d < 0 || dim_n - d > r as i64)
}

/// 1-modularity of the shell from its rank strata.
pub fn shell_1_modular(s: &ShellSystem, e: Engine) -> Result<bool, JetError> {
    let (dim_n, _) = shell_dim_and_ci(s, e)?;
    Ok(one_modular_from_strata(dim_n, &singular_stratum_dims(s, e)?))
}

/// One level of the Mustață inequality `dim ρ_m⁻¹(N_sing) < (m+1)·dim N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MustataLevel {
    pub level: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// Evaluates the Mustață inequality at jet level `m`.
///
/// The singular locus is the shell together with the maximal minors of `dμ`.
pub fn mustata_level(s: &ShellSystem, m: usize, e: Engine) -> Result<MustataLevel, JetError> {
    let (dim_n, _) = shell_dim_and_ci(s, e)?;
    let jets = jet_generators(s, m);
    let sing = jacobian_minors(&s.mu_generators, &shell_vars(s), s.dim_g())?;
    let lifted = sing
        .iter()
        .map(|p| p.extend_to(&jets.ring))
        .collect::<Result<Vec<Polynomial>, _>>()?;
    let lhs = e.dim(&jets.ideal().extended(lifted)?)?;
    let rhs = (m as i64 + 1) * dim_n;
    Ok(MustataLevel {
        level: m,
        lhs,
        rhs,
        holds: lhs < rhs,
    })
}

/// 1-modularity read off the first jet level.
pub fn one_modular_via_jets(s: &ShellSystem, e: Engine) -> Result<bool, JetError> {
    Ok(mustata_level(s, 1, e)?.holds)
}

/// Dimension of `ρ_m⁻¹(0)` computed two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDims {
    pub level: usize,
    /// Krull dimension of the jet ideal with every level-0 coordinate set to zero.
    pub direct: i64,
    /// `2 dim V` at level 1, `dim N_{m−2} + 2 dim V` above.
    pub recursive: i64,
}

impl FiberDims {
    pub fn agrees(&self) -> bool {
        self.direct == self.recursive
    }
}

pub fn fiber_over_origin_dim(s: &ShellSystem, m: usize, e: Engine) -> Result<FiberDims, JetError> {
    if m == 0 {
        return Err(JetError::LevelZero);
    }
    let jets = jet_generators(s, m);
    let origin = (0..2 * s.dim_v()).map(|k| jets.ring.var(jets.level_zero_index(k)));
    let direct = e.dim(&jets.ideal().extended(origin)?)?;
    let two_v = 2 * s.dim_v() as i64;
    let recursive = if m == 1 {
        two_v
    } else {
        e.dim(&jet_generators(s, m - 2).ideal())? + two_v
    };
    Ok(FiberDims {
        level: m,
        direct,
        recursive,
    })
}

/// Dimensions along the E-filtration of an arc in `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationResult {
    /// `r_i = dim E_i`.
    pub r: Vec<usize>,
    /// `dim 𝔤_i`.
    pub lie_dims: Vec<usize>,
    /// `(m+1)·dim V − Σ r_i`.
    pub dim_y: usize,
    /// Dimension of the solution space of the linear jet equations in `ξ`.
    pub dim_y_direct: usize,
}

impl FiltrationResult {
    pub fn agrees(&self) -> bool {
        self.dim_y == self.dim_y_direct
    }
}

/// Basis of the span of `vectors`, as the nonzero rows of a reduced echelon form.
fn row_basis(vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return vectors;
    }
    let (r, pivots) = QMatrix::from_rows(vectors).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// `Σ_k c_k A_k x`.
fn act(basis: &[QMatrix], c: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); x.len()];
    for (a, ck) in basis.iter().zip(c) {
        if ck.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(a.mul_vec(x)) {
            *o += ck * v;
        }
    }
    out
}

/// Runs the E-filtration `E_{i+1} = 𝔤_i(x_{i+1}) + E_i` on an arc.
///
/// `𝔤_{i+1}` consists of the `A ∈ 𝔤_i` with `A x_{i+1} ∈ E_i`. The
/// dimension of the fibre `Y` is also computed directly from the linear
/// equations in `ξ` so the two can be compared.
pub fn e_filtration(s: &ShellSystem, x_arc: &[Vec<Rational>]) -> Result<FiltrationResult, JetError> {
    let n = s.dim_v();
    if x_arc.is_empty() {
        return Err(JetError::EmptyArc);
    }
    for (index, x) in x_arc.iter().enumerate() {
        if x.len() != n {
            return Err(JetError::ArcPoint {
                index,
                expected: n,
                got: x.len(),
            });
        }
    }
    let basis = &s.action.lie_basis;
    let d = basis.len();
    let images = |x: &[Rational]| -> Vec<Vec<Rational>> { basis.iter().map(|a| a.mul_vec(x)).collect() };

    let e0 = images(&x_arc[0]);
    let mut e_basis = row_basis(e0.clone());
    let mut lie = if d == 0 {
        Vec::new()
    } else {
        QMatrix::from_rows(e0).transpose().nullspace()
    };
    let mut r = vec![e_basis.len()];
    let mut lie_dims = vec![lie.len()];
    for x in &x_arc[1..] {
        let u: Vec<Vec<Rational>> = lie.iter().map(|c| act(basis, c, x)).collect();
        let mut next_lie = Vec::new();
        if !lie.is_empty() {
            let cols: Vec<Vec<Rational>> = u.iter().chain(&e_basis).cloned().collect();
            let kernel = QMatrix::from_rows(cols).transpose().nullspace();
            for t in kernel {
                let mut c = vec![Rational::zero(); d];
                for (tb, cb) in t.iter().zip(&lie) {
                    for (ck, v) in c.iter_mut().zip(cb) {
                        *ck += tb * v;
                    }
                }
                next_lie.push(c);
            }
        }
        lie = row_basis(next_lie);
        e_basis = row_basis(e_basis.into_iter().chain(u).collect());
        r.push(e_basis.len());
        lie_dims.push(lie.len());
    }

    let m = x_arc.len() - 1;
    let total = (m + 1) * n;
    let mut rows = Vec::new();
    for k in 0..=m {
        for a in basis {
            let mut row = vec![Rational::zero(); total];
            for i in 0..=k {
                let v = a.mul_vec(&x_arc[k - i]);
                row[i * n..(i + 1) * n].clone_from_slice(&v);
            }
            rows.push(row);
        }
    }
    let dim_y_direct = total - rank_of_vectors(&rows);
    let dim_y = total - r.iter().sum::<usize>();
    Ok(FiltrationResult {
        r,
        lie_dims,
        dim_y,
        dim_y_direct,
    })
}

/// The `x` part of a jet-space point, one vector per level.
pub fn x_arc_of(s: &ShellSystem, arc: &[Rational]) -> Vec<Vec<Rational>> {
    let n = s.dim_v();
    let levels = arc.len() / (2 * n);
    (0..levels)
        .map(|l| (0..n).map(|j| arc[x_index(n, l, j)].clone()).collect())
        .collect()
}

/// A stratum of arcs with fixed filtration dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    /// Codimension in `V^{m+1}`.
    pub codim: usize,
    /// `(r_0, …, r_m)`.
    pub r: Vec<usize>,
}

const CODIM_CONDITION: &str =
    "codimension criterion for rational singularities: every arc stratum has codim > (m+1) dim G - sum of r_i";

/// Checks `codim X > (m+1)·dim G − Σ r_i` on user-supplied strata.
pub fn codim_criterion(strata: &[Stratum], dim_g: usize, m: usize) -> Result<Verdict, JetError> {
    let mut v = Verdict::new(CODIM_CONDITION, Status::Holds)
        .witness("dim_G", dim_g)
        .witness("level", m);
    if strata.is_empty() {
        return Ok(v.note("vacuous: no strata supplied"));
    }
    let mut all = true;
    for (index, st) in strata.iter().enumerate() {
        if st.r.len() != m + 1 {
            return Err(JetError::InvalidStratum {
                index,
                reason: format!("expected {} entries in r, got {}", m + 1, st.r.len()),
            });
        }
        if st.r.windows(2).any(|w| w[0] > w[1]) || st.r.iter().any(|&x| x > dim_g) {
            return Err(JetError::InvalidStratum {
                index,
                reason: format!("r = {:?} must be non-decreasing and at most dim G", st.r),
            });
        }
        let bound = (m as i64 + 1) * dim_g as i64 - st.r.iter().sum::<usize>() as i64;
        let ok = st.codim as i64 > bound;
        all &= ok;
        v = v.witness(
            &format!("stratum_{index}"),
            format!("{} > {} {}", st.codim, bound, Status::from_bool(ok)),
        );
    }
    v.status = Status::from_bool(all);
    Ok(v)
}

/// Dimensions of the null cone of `N_0` and of its singular part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullConeDims {
    pub dim: i64,
    pub dim_sing: i64,
}

/// Null cone of the shell of a torus module `W_0`, intersected with the shell.
///
/// The null cone of `S_0 = W_0 ⊕ W_0*` is a union of coordinate subspaces,
/// one for each maximal unstable support. Each is intersected with the shell
/// by a Gröbner computation; the singular part adds the maximal minors of `dμ`.
pub fn torus_n0_null_cone(w0: &WeightData, e: Engine) -> Result<NullConeDims, JetError> {
    if w0.dim() == 0 {
        return Ok(NullConeDims { dim: 0, dim_sing: 0 });
    }
    let module = ModuleDescriptor {
        summands: vec![Summand::new(
            0,
            Irrep::Weights {
                weights: w0.weights.clone(),
            },
            1,
        )],
    };
    let s = moment_generators(&build_action(&GroupDescriptor::torus(w0.torus_rank), &module)?);
    let s0 = w0.concat(&w0.negated());
    let supports = maximal_unstable_supports(&s0).ok_or(JetError::TooManyWeights)?;
    let minors = jacobian_minors(&s.mu_generators, &shell_vars(&s), s.dim_g())?;
    let mut dims = NullConeDims { dim: -1, dim_sing: -1 };
    for p in supports {
        let outside: Vec<Polynomial> = (0..s0.dim())
            .filter(|k| !p.contains(k))
            .map(|k| s.ring.var(k))
            .collect();
        let cone = s.ideal().extended(outside)?;
        dims.dim = dims.dim.max(e.dim(&cone)?);
        dims.dim_sing = dims.dim_sing.max(e.dim(&cone.extended(minors.clone())?)?);
    }
    Ok(dims)
}

/// Every quantity of a toral slice, null-cone dimensions included.
pub fn torus_slice_quantities(
    label: impl Into<String>,
    w0: &WeightData,
    e: Engine,
) -> Result<SliceQuantities, JetError> {
    let mut q = SliceQuantities::from_torus_weights(label, w0);
    let cone = torus_n0_null_cone(w0, e)?;
    q.null_cone_n0 = usize::try_from(cone.dim).ok();
    q.null_cone_n0_sing = usize::try_from(cone.dim_sing).ok();
    Ok(q)
}

/// A Lagrangian half of `S_0`: one with FPIG if there is one, else one with least `m0`.
pub fn preferred_lagrangian(s0: &WeightData) -> Result<WeightData, JetError> {
    let choices = lagrangian_choices(s0)?;
    if let Some(w) = choices.iter().find(|w| has_fpig(w)) {
        return Ok(w.clone());
    }
    Ok(choices
        .into_iter()
        .min_by_key(|w| m0(w).unwrap_or(usize::MAX))
        .expect("a symmetric module has a Lagrangian half"))
}

/// A toral slice with the weights of the chosen Lagrangian half `W_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToralSlice {
    pub quantities: SliceQuantities,
    pub w0: WeightData,
}

/// Slice quantities at every closed orbit with positive-dimensional isotropy
/// in the shell of a torus module.
///
/// The slice at the origin is labelled `origin`; the others carry the basis
/// of their isotropy subtorus.
pub fn torus_slice_chain(v: &WeightData, e: Engine) -> Result<Vec<ToralSlice>, JetError> {
    let mut out = Vec::new();
    for s in symplectic_slices(v)? {
        if s.dim_h == 0 {
            continue;
        }
        let w0 = preferred_lagrangian(&s.s0)?;
        let label = if s.dim_h == v.torus_rank {
            "origin".to_string()
        } else {
            format!("H={:?}", s.h_basis)
        };
        let mut quantities = torus_slice_quantities(label, &w0, e)?;
        quantities.dim_h = s.dim_h;
        out.push(ToralSlice { quantities, w0 });
    }
    Ok(out)
}

/// Evidence that the null cone of one slice is irrelevant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceEvidence {
    pub quantities: SliceQuantities,
    /// Outcome of [`codim_criterion`] for this slice, when strata were supplied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim_route: Option<Verdict>,
}

const PREMISE_CONDITION: &str = "the shell is a normal complete intersection with FPIG";

/// The premise from shell data.
///
/// Under the complete-intersection property the singular locus is the
/// rank-deficient locus, and normality is codimension at least two of it.
pub fn premise_from_shell(is_ci: bool, dim_n: i64, sing_dim: i64, fpig: Option<bool>) -> Verdict {
    let codim = if sing_dim < 0 { dim_n + 1 } else { dim_n - sing_dim };
    let normal = is_ci && codim >= 2;
    let fpig_status = fpig.map_or(Status::Unknown, Status::from_bool);
    Verdict::new(PREMISE_CONDITION, Status::from_bool(is_ci && normal).and(fpig_status))
        .witness("complete_intersection", is_ci)
        .witness("dim_N", dim_n)
        .witness("dim_singular_locus", sing_dim)
        .witness("normal", normal)
        .witness("fpig", fpig_status)
        .note("normality from the codimension of the rank-deficient locus of the moment map")
}

/// The premise from properties (N) and (F) of every slice.
pub fn premise_from_slice_properties(slices: &[SliceQuantities]) -> Verdict {
    let mut status = Status::Holds;
    let mut v = Verdict::new(PREMISE_CONDITION, Status::Holds).note("every slice has properties (N) and (F)");
    for (k, q) in slices.iter().enumerate() {
        let s = property_f(q).status.and(property_n(q).status);
        let name = if q.label.is_empty() {
            format!("slice_{k}")
        } else {
            q.label.clone()
        };
        v = v.witness(&name, s);
        status = status.and(s);
    }
    v.status = status;
    v
}

const CIFR_CONDITION: &str =
    "the shell is CIFR: normal complete intersection with FPIG whose slice null cones are all irrelevant";

/// Assembles the CIFR verdict from the premise and per-slice evidence.
///
/// A slice is certified by the slice condition (torus branch or `m0`
/// branch) or by the codimension route; the witness records which.
pub fn irrelevance_verdict(premise: &Verdict, slices: &[SliceEvidence]) -> Verdict {
    let mut status = premise.status;
    let mut v = Verdict::new(CIFR_CONDITION, Status::Unknown).witness("premise", premise.status);
    for (k, ev) in slices.iter().enumerate() {
        let q = &ev.quantities;
        let name = if q.label.is_empty() {
            format!("slice_{k}")
        } else {
            q.label.clone()
        };
        if q.dim_h == 0 {
            v = v.witness(&name, "principal");
            continue;
        }
        let use_em = condition_use_em(q);
        let codim = ev.codim_route.as_ref().map_or(Status::Unknown, |c| c.status);
        let slice_status = use_em.status.or(codim);
        let route = if use_em.holds() {
            if use_em.witnesses.get("torus_branch").map(String::as_str) == Some("holds") {
                "torus branch"
            } else {
                "m0 branch"
            }
        } else if codim == Status::Holds {
            "codimension route"
        } else if slice_status == Status::Unknown {
            "unknown"
        } else {
            "not certified"
        };
        v = v.witness(&name, route);
        status = status.and(slice_status);
    }
    v.status = status;
    v
}

/// Everything [`shell_report`] computes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellReport {
    pub dim_n: i64,
    pub expected_dim: i64,
    pub is_ci: bool,
    pub stratum_dims: BTreeMap<usize, i64>,
    pub one_modular: bool,
    pub one_modular_jets: bool,
    pub mustata_levels: BTreeMap<usize, MustataLevel>,
}

/// Dimension, strata, both 1-modularity routes and the requested Mustață levels.
pub fn shell_report(s: &ShellSystem, levels: &[usize], e: Engine) -> Result<ShellReport, JetError> {
    let (dim_n, is_ci) = shell_dim_and_ci(s, e)?;
    let strata = singular_stratum_dims(s, e)?;
    let mut mustata_levels = BTreeMap::new();
    for &m in levels.iter().chain(std::iter::once(&1)) {
        if m >= 1 && !mustata_levels.contains_key(&m) {
            mustata_levels.insert(m, mustata_level(s, m, e)?);
        }
    }
    Ok(ShellReport {
        dim_n,
        expected_dim: expected_dim(s),
        is_ci,
        one_modular: one_modular_from_strata(dim_n, &strata),
        one_modular_jets: mustata_levels[&1].holds,
        stratum_dims: strata,
        mustata_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn torus_shell(ws: &[i64]) -> ShellSystem {
        let m = ModuleDescriptor {
            summands: vec![Summand::new(
                0,
                Irrep::Weights {
                    weights: ws.iter().map(|&w| vec![w]).collect(),
                },
                1,
            )],
        };
        moment_generators(&build_action(&GroupDescriptor::torus(1), &m).unwrap())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn c1_dimension_strata_and_jets() {
        let s = torus_shell(&[1, -1]);
        let e = Engine::default();
        assert_eq!(shell_dim_and_ci(&s, e).unwrap(), (3, true));
        assert_eq!(singular_stratum_dims(&s, e).unwrap(), BTreeMap::from([(1, 0)]));
        assert!(shell_1_modular(&s, e).unwrap());
        let l1 = mustata_level(&s, 1, e).unwrap();
        assert_eq!((l1.lhs, l1.rhs, l1.holds), (4, 6, true));
        let l2 = mustata_level(&s, 2, e).unwrap();
        assert_eq!((l2.lhs, l2.rhs, l2.holds), (7, 9, true));
    }

    #[test]
    fn c2_strata() {
        let s = torus_shell(&[1, 1]);
        let e = Engine::default();
        assert_eq!(singular_stratum_dims(&s, e).unwrap(), BTreeMap::from([(1, 0)]));
    }

    #[test]
    fn fibers_over_origin() {
        let s = torus_shell(&[1, -1]);
        let e = Engine::default();
        for (m, expected) in [(1, 4), (2, 7), (3, 10)] {
            let f = fiber_over_origin_dim(&s, m, e).unwrap();
            assert_eq!(f.recursive, expected);
            assert!(f.agrees(), "{f:?}");
        }
        assert_eq!(fiber_over_origin_dim(&s, 0, e), Err(JetError::LevelZero));
    }

    #[test]
    fn filtration_examples() {
        let s = torus_shell(&[1, -1]);
        let f = e_filtration(&s, &[ints(&[1, 0]), ints(&[0, 0])]).unwrap();
        assert_eq!(f.r, vec![1, 1]);
        assert_eq!(f.dim_y, 2);
        assert!(f.agrees());
        let zero = e_filtration(&s, &vec![ints(&[0, 0]); 3]).unwrap();
        assert_eq!(zero.r, vec![0, 0, 0]);
        assert_eq!(zero.dim_y, 6);
        assert!(zero.agrees());
        assert!(matches!(
            e_filtration(&s, &[ints(&[1])]),
            Err(JetError::ArcPoint { .. })
        ));
    }

    #[test]
    fn codim_examples() {
        assert!(codim_criterion(&[], 1, 1).unwrap().holds());
        let st = |codim, r: &[usize]| Stratum { codim, r: r.to_vec() };
        assert!(codim_criterion(&[st(4, &[1, 1])], 1, 1).unwrap().holds());
        assert_eq!(codim_criterion(&[st(1, &[0, 0])], 1, 1).unwrap().status, Status::Fails);
        assert!(codim_criterion(&[st(1, &[0])], 1, 1).is_err());
    }

    #[test]
    fn null_cone_of_weight_two_slice() {
        let q = torus_slice_quantities("T", &WeightData::rank_one(&[2, -2]), Engine::default()).unwrap();
        assert_eq!(q.null_cone_n0, Some(2));
        assert_eq!(q.null_cone_n0_sing, Some(0));
        assert!(property_f(&q).holds());
        assert!(property_n(&q).holds());
    }

    #[test]
    fn irrelevance_examples() {
        let e = Engine::default();
        let slices: Vec<SliceQuantities> = torus_slice_chain(&WeightData::rank_one(&[1, -1]), e)
            .unwrap()
            .into_iter()
            .map(|t| t.quantities)
            .collect();
        assert_eq!(slices[0].label, "origin");
        let premise = premise_from_slice_properties(&slices);
        let evidence: Vec<SliceEvidence> = slices
            .into_iter()
            .map(|quantities| SliceEvidence {
                quantities,
                codim_route: None,
            })
            .collect();
        assert!(irrelevance_verdict(&premise, &evidence).holds());
        let mut unknown = evidence[0].clone();
        unknown.quantities.fpig_w0 = None;
        unknown.quantities.m0_w0 = None;
        assert_eq!(irrelevance_verdict(&premise, &[unknown]).status, Status::Unknown);
    }
}
