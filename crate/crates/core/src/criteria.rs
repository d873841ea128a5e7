//! Arithmetic evaluation of the slice conditions behind rational
//! singularities of shells.
//!
//! Each check returns a [`Verdict`] recording the inequality it tested and
//! the numbers it used. Missing inputs make a verdict [`Status::Unknown`];
//! they are never defaulted.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{int, rat, Rational};
use crate::repmodel::{is_orthogonal, WeightData};
use crate::torus::{has_fpig, m0, ModularityProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("the isotropy group is finite, the bound needs dim H > 0")]
    FiniteIsotropy,
    #[error("required input `{0}` is unknown")]
    MissingInput(&'static str),
    #[error("W_0 is not orthogonal")]
    NotOrthogonal,
    #[error("invalid arguments: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    /// Holds if either holds, fails only if both fail.
    pub fn or(self, other: Status) -> Status {
        match (self, other) {
            (Status::Holds, _) | (_, Status::Holds) => Status::Holds,
            (Status::Fails, Status::Fails) => Status::Fails,
            _ => Status::Unknown,
        }
    }

    /// Fails if either fails, holds only if both hold.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Holds, Status::Holds) => Status::Holds,
            _ => Status::Unknown,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        })
    }
}

/// Outcome of one checked condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// The condition in words, with the inequality that was tested.
    pub condition: String,
    pub status: Status,
    /// Numbers the inequality was evaluated with.
    pub witnesses: BTreeMap<String, String>,
    /// Which branch or route decided the verdict, and any caveat.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(condition: impl Into<String>, status: Status) -> Self {
        Verdict {
            condition: condition.into(),
            status,
            witnesses: BTreeMap::new(),
            note: None,
        }
    }

    pub fn witness(mut self, key: &str, value: impl ToString) -> Self {
        self.witnesses.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Dimensions attached to one symplectic slice representation `(S, H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceQuantities {
    /// Free-form name of the slice, echoed in reports.
    #[serde(default)]
    pub label: String,
    pub dim_h: usize,
    /// Whether the identity component of `H` is a torus.
    pub h0_is_torus: bool,
    /// Dimension of a maximal unipotent subgroup of `H^0`.
    pub dim_u: usize,
    pub dim_w0: usize,
    /// `dim W_0^T` for a maximal torus `T` of `H`.
    #[serde(default)]
    pub dim_w0_fixed: Option<usize>,
    #[serde(default)]
    pub m0_w0: Option<usize>,
    /// `dim 𝒩(N_0)`.
    #[serde(default)]
    pub null_cone_n0: Option<usize>,
    /// `dim 𝒩(N_0)_sg`.
    #[serde(default)]
    pub null_cone_n0_sing: Option<usize>,
    #[serde(default)]
    pub fpig_w0: Option<bool>,
    #[serde(default)]
    pub w0_orthogonal: Option<bool>,
}

impl SliceQuantities {
    pub fn dim_s0(&self) -> usize {
        2 * self.dim_w0
    }

    /// `dim H/U`.
    pub fn dim_h_mod_u(&self) -> usize {
        self.dim_h - self.dim_u
    }

    /// Quantities of a toral slice computed from the weights of `W_0`.
    ///
    /// Null-cone dimensions of `N_0` need a Gröbner computation and are
    /// left unknown here.
    pub fn from_torus_weights(label: impl Into<String>, w0: &WeightData) -> Self {
        SliceQuantities {
            label: label.into(),
            dim_h: w0.torus_rank,
            h0_is_torus: true,
            dim_u: 0,
            dim_w0: w0.dim(),
            dim_w0_fixed: Some(w0.dim_fixed()),
            m0_w0: m0(w0),
            null_cone_n0: None,
            null_cone_n0_sing: None,
            fpig_w0: Some(has_fpig(w0)),
            w0_orthogonal: Some(is_orthogonal(w0)),
        }
    }
}

const F_CONDITION: &str = "null cone of N_0 is small: dim N(N_0) < dim S_0 - dim H, or H finite";
const F_READING: &str = "the bound is read as dim S_0 - dim H";

/// Property (F) for one slice.
pub fn property_f(q: &SliceQuantities) -> Verdict {
    if q.dim_h == 0 {
        return Verdict::new(F_CONDITION, Status::Holds)
            .note("H is finite")
            .witness("dim_H", 0);
    }
    let bound = q.dim_s0() as i64 - q.dim_h as i64;
    let v = Verdict::new(F_CONDITION, Status::Unknown)
        .witness("dim_S0", q.dim_s0())
        .witness("dim_H", q.dim_h)
        .note(F_READING);
    match q.null_cone_n0 {
        None => v,
        Some(n) => {
            let mut v = v.witness("dim_null_cone_N0", n);
            v.status = Status::from_bool((n as i64) < bound);
            v
        }
    }
}

const N_CONDITION: &str = "singular null cone of N_0 is small: dim N(N_0)_sg <= dim S_0 - dim H - 2, or H finite";

/// Property (N) for one slice.
pub fn property_n(q: &SliceQuantities) -> Verdict {
    if q.dim_h == 0 {
        return Verdict::new(N_CONDITION, Status::Holds)
            .note("H is finite")
            .witness("dim_H", 0);
    }
    let bound = q.dim_s0() as i64 - q.dim_h as i64 - 2;
    let v = Verdict::new(N_CONDITION, Status::Unknown)
        .witness("dim_S0", q.dim_s0())
        .witness("dim_H", q.dim_h);
    match q.null_cone_n0_sing {
        None => v,
        Some(n) => {
            let mut v = v.witness("dim_null_cone_N0_sg", n);
            v.status = Status::from_bool((n as i64) <= bound);
            v
        }
    }
}

/// `δ = dim W_0 − dim H − m0(W_0)` and the null-cone bounds it gives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaBounds {
    pub delta: i64,
    /// Upper bound `dim W_0 − δ − dim H/U` for `dim 𝒩(W_0)`.
    pub null_cone_w0: i64,
    /// Upper bound `dim S_0 − 2δ − dim H − dim H/U` for `dim 𝒩(S_0)`.
    pub null_cone_s0: i64,
}

pub fn delta_bounds(q: &SliceQuantities) -> Result<DeltaBounds, CriteriaError> {
    if q.dim_h == 0 {
        return Err(CriteriaError::FiniteIsotropy);
    }
    let m0 = q.m0_w0.ok_or(CriteriaError::MissingInput("m0_w0"))? as i64;
    let (w0, h, hu, s0) = (
        q.dim_w0 as i64,
        q.dim_h as i64,
        q.dim_h_mod_u() as i64,
        q.dim_s0() as i64,
    );
    let delta = w0 - h - m0;
    Ok(DeltaBounds {
        delta,
        null_cone_w0: w0 - delta - hu,
        null_cone_s0: s0 - 2 * delta - h - hu,
    })
}

const USE_EM_CONDITION: &str =
    "slice condition for rational singularities: H^0 a torus with W_0 having FPIG, or m0(W_0) < dim W_0 - dim H";

/// The slice condition: torus isotropy with FPIG, or a small `m0`.
pub fn condition_use_em(q: &SliceQuantities) -> Verdict {
    if q.dim_h == 0 {
        return Verdict::new(USE_EM_CONDITION, Status::Holds)
            .note("vacuous: H is finite")
            .witness("dim_H", 0);
    }
    let torus = if !q.h0_is_torus {
        Status::Fails
    } else {
        match q.fpig_w0 {
            Some(b) => Status::from_bool(b),
            None => Status::Unknown,
        }
    };
    let bound = q.dim_w0 as i64 - q.dim_h as i64;
    let small = match q.m0_w0 {
        Some(m) => Status::from_bool((m as i64) < bound),
        None => Status::Unknown,
    };
    let mut v = Verdict::new(USE_EM_CONDITION, torus.or(small))
        .witness("dim_W0", q.dim_w0)
        .witness("dim_H", q.dim_h)
        .witness("H0_is_torus", q.h0_is_torus)
        .witness("torus_branch", torus)
        .witness("m0_branch", small);
    if let Some(m) = q.m0_w0 {
        v = v.witness("m0_W0", m);
    }
    if let Some(f) = q.fpig_w0 {
        v = v.witness("fpig_W0", f);
    }
    let note = match (torus, small) {
        (Status::Holds, Status::Holds) => "both branches hold",
        (Status::Holds, _) => "torus branch: H^0 is a torus and W_0 has FPIG",
        (_, Status::Holds) => "m0 branch: m0(W_0) < dim W_0 - dim H",
        (Status::Fails, Status::Fails) => "both branches fail",
        _ => "an input needed by a branch is unknown",
    };
    v.note(note)
}

const ORTHOGONAL_CONDITION: &str = "orthogonal slice condition: dim H < (dim W_0 + dim W_0^T) / 2";

/// The orthogonal condition `2 dim H < dim W_0 + dim W_0^T`.
///
/// The stricter `2 dim H < dim W_0 − dim W_0^T` is reported as a witness.
/// When this holds, `m0(W_0) = (dim W_0 − dim W_0^T)/2 < dim W_0 − dim H`.
pub fn condition_orthogonal(q: &SliceQuantities) -> Result<Verdict, CriteriaError> {
    if q.w0_orthogonal == Some(false) {
        return Err(CriteriaError::NotOrthogonal);
    }
    let v = Verdict::new(ORTHOGONAL_CONDITION, Status::Unknown)
        .witness("dim_W0", q.dim_w0)
        .witness("dim_H", q.dim_h);
    let (Some(fixed), Some(true)) = (q.dim_w0_fixed, q.w0_orthogonal) else {
        return Ok(v.note("orthogonality of W_0 or dim W_0^T unknown"));
    };
    let lhs = 2 * q.dim_h;
    let holds = lhs < q.dim_w0 + fixed;
    let stricter = (lhs as i64) < q.dim_w0 as i64 - fixed as i64;
    let mut v = v
        .witness("dim_W0_T", fixed)
        .witness("stricter_variant", Status::from_bool(stricter))
        .note("implies m0(W_0) < dim W_0 - dim H since m0(W_0) = (dim W_0 - dim W_0^T)/2");
    v.status = Status::from_bool(holds);
    Ok(v)
}

/// `δ = (p−2)·dim u + (p−1)·ℓ + ((p−1)/2·dim m − dim Z)` for `p` copies of an adjoint module.
pub fn adjoint_delta(p: u64, dim_u: u64, ell: u64, dim_m: u64, dim_z: u64) -> Result<Rational, CriteriaError> {
    if p < 2 {
        return Err(CriteriaError::Precondition(format!("p = {p} must be at least 2")));
    }
    if dim_m < 2 * dim_z {
        return Err(CriteriaError::Precondition(format!(
            "dim m = {dim_m} must be at least 2 dim Z = {}",
            2 * dim_z
        )));
    }
    let p = p as i64;
    let delta =
        int((p - 2) * dim_u as i64) + int((p - 1) * ell as i64) + rat((p - 1) * dim_m as i64, 2) - int(dim_z as i64);
    debug_assert!(delta >= Rational::zero());
    Ok(delta)
}

const STAR_CONDITION: &str = "every slice with dim H > 0 satisfies the slice condition";

/// Condition (*): the slice condition for every slice.
///
/// When it holds the shell is graded Gorenstein with symplectic singularities.
pub fn condition_star(slices: &[SliceQuantities]) -> Verdict {
    let mut status = Status::Holds;
    let mut v = Verdict::new(STAR_CONDITION, Status::Holds).witness("slices", slices.len());
    for (k, q) in slices.iter().enumerate() {
        let s = condition_use_em(q).status;
        let name = if q.label.is_empty() {
            format!("slice_{k}")
        } else {
            q.label.clone()
        };
        v = v.witness(&name, s);
        status = status.and(s);
    }
    v.status = status;
    match status {
        Status::Holds => v.note("derived: the shell is graded Gorenstein and has symplectic singularities"),
        Status::Fails => v.note("some slice fails both branches"),
        Status::Unknown => v.note("some slice has unknown inputs"),
    }
}

const DIMG_CONDITION: &str = "the module is (dim G)-modular, which gives rational singularities of the shell";

/// Shortcut: `(dim G)`-modularity gives rational singularities directly.
pub fn dim_g_modular_shortcut(profile: &ModularityProfile, dim_g: usize) -> Verdict {
    let status = match profile.max_k {
        Some(k) => Status::from_bool(k >= dim_g as i64),
        None => Status::Holds,
    };
    let mut v = Verdict::new(DIMG_CONDITION, status).witness("dim_G", dim_g);
    if let Some(k) = profile.max_k {
        v = v.witness("max_k", k);
    }
    v
}

/// Every per-slice verdict, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub quantities: SliceQuantities,
    pub property_f: Verdict,
    pub property_n: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<DeltaBounds>,
    pub use_em: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orthogonal: Option<Verdict>,
}

pub fn evaluate_slice(q: &SliceQuantities) -> SliceReport {
    SliceReport {
        quantities: q.clone(),
        property_f: property_f(q),
        property_n: property_n(q),
        delta: delta_bounds(q).ok(),
        use_em: condition_use_em(q),
        orthogonal: match q.w0_orthogonal {
            Some(true) => condition_orthogonal(q).ok(),
            _ => None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_slice(w0: &[i64]) -> SliceQuantities {
        SliceQuantities::from_torus_weights("T", &WeightData::rank_one(w0))
    }

    fn finite() -> SliceQuantities {
        SliceQuantities {
            label: String::new(),
            dim_h: 0,
            h0_is_torus: true,
            dim_u: 0,
            dim_w0: 0,
            dim_w0_fixed: None,
            m0_w0: None,
            null_cone_n0: None,
            null_cone_n0_sing: None,
            fpig_w0: None,
            w0_orthogonal: None,
        }
    }

    #[test]
    fn property_f_examples() {
        assert!(property_f(&finite()).holds());
        let mut q = torus_slice(&[1, -1]);
        q.null_cone_n0 = Some(3);
        assert_eq!(property_f(&q).status, Status::Fails);
        let mut q = torus_slice(&[2, -2]);
        q.null_cone_n0 = Some(2);
        assert!(property_f(&q).holds());
        q.null_cone_n0 = None;
        assert_eq!(property_f(&q).status, Status::Unknown);
    }

    #[test]
    fn property_n_examples() {
        assert!(property_n(&finite()).holds());
        let mut q = torus_slice(&[2, -2]);
        q.null_cone_n0_sing = Some(0);
        assert!(property_n(&q).holds());
        q.null_cone_n0_sing = Some(2);
        assert_eq!(property_n(&q).status, Status::Fails);
    }

    #[test]
    fn delta_examples() {
        let b = delta_bounds(&torus_slice(&[2, -2])).unwrap();
        assert_eq!((b.delta, b.null_cone_w0), (0, 1));
        let b = delta_bounds(&torus_slice(&[2, -2, 2, -2])).unwrap();
        assert_eq!((b.delta, b.null_cone_w0), (1, 2));
        assert_eq!(delta_bounds(&finite()), Err(CriteriaError::FiniteIsotropy));
    }

    #[test]
    fn use_em_examples() {
        let v = condition_use_em(&torus_slice(&[2, -2]));
        assert!(v.holds());
        assert_eq!(v.witnesses["m0_branch"], "fails");
        assert_eq!(v.witnesses["torus_branch"], "holds");
        let v = condition_use_em(&torus_slice(&[2, -2, 2, -2]));
        assert!(v.holds());
        assert_eq!(v.witnesses["m0_branch"], "holds");
        assert!(condition_use_em(&finite()).holds());
        let mut q = torus_slice(&[1, 1]);
        assert_eq!(condition_use_em(&q).status, Status::Fails);
        q.m0_w0 = None;
        assert_eq!(condition_use_em(&q).status, Status::Unknown);
    }

    #[test]
    fn orthogonal_examples() {
        let mut q = finite();
        q.dim_h = 3;
        q.dim_w0 = 9;
        q.dim_w0_fixed = Some(0);
        q.w0_orthogonal = Some(true);
        assert!(condition_orthogonal(&q).unwrap().holds());
        q.dim_w0 = 6;
        assert_eq!(condition_orthogonal(&q).unwrap().status, Status::Fails);
        q.dim_w0_fixed = Some(6);
        assert!(condition_orthogonal(&q).unwrap().holds());
        q.w0_orthogonal = Some(false);
        assert_eq!(condition_orthogonal(&q), Err(CriteriaError::NotOrthogonal));
    }

    #[test]
    fn adjoint_delta_examples() {
        assert_eq!(adjoint_delta(2, 0, 0, 2, 1).unwrap(), int(0));
        assert_eq!(adjoint_delta(3, 0, 0, 2, 1).unwrap(), int(1));
        assert_eq!(adjoint_delta(2, 1, 1, 0, 0).unwrap(), int(1));
        assert!(adjoint_delta(1, 0, 0, 0, 0).is_err());
        assert!(adjoint_delta(2, 0, 0, 1, 1).is_err());
    }

    #[test]
    fn star_examples() {
        assert!(condition_star(&[]).holds());
        assert!(condition_star(&[torus_slice(&[2, -2])]).holds());
        assert_eq!(
            condition_star(&[torus_slice(&[2, -2]), torus_slice(&[1, 1])]).status,
            Status::Fails
        );
        let mut unknown = torus_slice(&[1, 1]);
        unknown.m0_w0 = None;
        assert_eq!(condition_star(&[unknown]).status, Status::Unknown);
    }

    #[test]
    fn dim_g_shortcut_examples() {
        use crate::torus::modularity_profile;
        for ws in [&[1, -1][..], &[1, 1], &[2, -2]] {
            let profile = modularity_profile(&WeightData::rank_one(ws)).unwrap();
            assert!(dim_g_modular_shortcut(&profile, 1).holds(), "{ws:?}");
        }
        let profile = modularity_profile(&WeightData::rank_one(&[1, -1])).unwrap();
        assert_eq!(dim_g_modular_shortcut(&profile, 2).status, Status::Fails);
    }

    #[test]
    fn status_algebra() {
        use Status::*;
        assert_eq!(Unknown.or(Holds), Holds);
        assert_eq!(Unknown.or(Fails), Unknown);
        assert_eq!(Unknown.and(Fails), Fails);
        assert_eq!(Unknown.and(Holds), Unknown);
    }
}
