//! Moment maps, shell ideals and jet-scheme equations.
//!
//! Coordinates on `V ⊕ V*` are `x{level}_{j}` and `xi{level}_{j}` with
//! `j` starting at 1. Jet rings list every level in turn, the `x` block
//! before the `ξ` block.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    rat, write_system, AlgebraError, EvalRing, GroebnerBudget, Ideal, MonomialOrder, Polynomial, Rational, Ring,
};
use crate::linalg::QMatrix;
use crate::repmodel::RepAction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShellError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Names of the jet-ring variables up to `level`.
pub fn jet_variable_names(dim_v: usize, level: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * dim_v * (level + 1));
    for l in 0..=level {
        names.extend((1..=dim_v).map(|j| format!("x{l}_{j}")));
        names.extend((1..=dim_v).map(|j| format!("xi{l}_{j}")));
    }
    names
}

/// Index of `x_j` (0-based `j`) at `level` in a jet ring.
pub fn x_index(dim_v: usize, level: usize, j: usize) -> usize {
    level * 2 * dim_v + j
}

/// Index of `ξ_j` (0-based `j`) at `level` in a jet ring.
pub fn xi_index(dim_v: usize, level: usize, j: usize) -> usize {
    level * 2 * dim_v + dim_v + j
}

/// `ξ_{lx}ᵀ · A · x_{lxi}` written in `ring`.
fn pairing(ring: &Arc<Ring>, a: &QMatrix, dim_v: usize, xi_level: usize, x_level: usize) -> Polynomial {
    let mut terms = Vec::new();
    for i in 0..dim_v {
        for j in 0..dim_v {
            let c = a.get(i, j);
            if c.is_zero() {
                continue;
            }
            let m = ring
                .var(xi_index(dim_v, xi_level, i))
                .mul(&ring.var(x_index(dim_v, x_level, j)));
            terms.extend(m.terms().iter().map(|(mm, _)| (mm.clone(), c.clone())));
        }
    }
    Polynomial::from_terms(ring, terms)
}

/// Moment map of a module on `V ⊕ V*` and its zero fibre.
#[derive(Clone, Debug)]
pub struct ShellSystem {
    pub action: RepAction,
    pub ring: Arc<Ring>,
    /// One generator `ξᵀ A x` per Lie basis element.
    pub mu_generators: Vec<Polynomial>,
    /// Matrix of `ω((v, v*), (w, w*)) = w*(v) − v*(w)`.
    pub symplectic_pairing: QMatrix,
    ideal: Ideal,
}

/// Builds the moment map generators of a module.
pub fn moment_generators(a: &RepAction) -> ShellSystem {
    let n = a.dim_v;
    let ring = Ring::new(jet_variable_names(n, 0));
    let mu: Vec<Polynomial> = a.lie_basis.iter().map(|m| pairing(&ring, m, n, 0, 0)).collect();
    let mut omega = QMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        omega.set(i, n + i, Rational::one());
        omega.set(n + i, i, -Rational::one());
    }
    let ideal = Ideal::new(&ring, mu.clone()).expect("shared ring");
    ShellSystem {
        action: a.clone(),
        ring,
        mu_generators: mu,
        symplectic_pairing: omega,
        ideal,
    }
}

impl ShellSystem {
    pub fn dim_v(&self) -> usize {
        self.action.dim_v
    }

    pub fn dim_g(&self) -> usize {
        self.action.dim_g()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Nonzero generators, the ones that matter for ideal computations.
    pub fn nonzero_generators(&self) -> Vec<Polynomial> {
        self.mu_generators.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// Checks `μ_A = ½ ω(X_A z, z)` where `X_A z = (A v, −Aᵀ v*)`.
    pub fn check_hamiltonian(&self) -> bool {
        let n = self.dim_v();
        let z: Vec<Polynomial> = (0..2 * n).map(|k| self.ring.var(k)).collect();
        let half = rat(1, 2);
        self.action.lie_basis.iter().zip(&self.mu_generators).all(|(a, mu)| {
            let xa: Vec<Polynomial> = (0..2 * n)
                .map(|p| {
                    let mut acc = Polynomial::zero(&self.ring);
                    for q in 0..n {
                        let c = if p < n {
                            a.get(p, q).clone()
                        } else {
                            -a.get(q, p - n).clone()
                        };
                        if !c.is_zero() {
                            let var = if p < n { q } else { n + q };
                            acc = acc.add(&z[var].scale(&c));
                        }
                    }
                    acc
                })
                .collect();
            let mut form = Polynomial::zero(&self.ring);
            for (p, xp) in xa.iter().enumerate() {
                for (q, zq) in z.iter().enumerate() {
                    let w = self.symplectic_pairing.get(p, q);
                    if !w.is_zero() {
                        form = form.add(&xp.mul(zq).scale(w));
                    }
                }
            }
            form.scale(&half) == *mu
        })
    }

    /// Derivative of `f` along the vector field of `a` on `V ⊕ V*`.
    pub fn lie_derivative(&self, a: &QMatrix, f: &Polynomial) -> Polynomial {
        let n = self.dim_v();
        let mut acc = Polynomial::zero(&self.ring);
        for j in 0..n {
            let dx = f.derivative(j);
            if !dx.is_zero() {
                let mut field = Polynomial::zero(&self.ring);
                for k in 0..n {
                    let c = a.get(j, k);
                    if !c.is_zero() {
                        field = field.add(&self.ring.var(k).scale(c));
                    }
                }
                acc = acc.add(&dx.mul(&field));
            }
            let dxi = f.derivative(n + j);
            if !dxi.is_zero() {
                let mut field = Polynomial::zero(&self.ring);
                for k in 0..n {
                    let c = a.get(k, j);
                    if !c.is_zero() {
                        field = field.sub(&self.ring.var(n + k).scale(c));
                    }
                }
                acc = acc.add(&dxi.mul(&field));
            }
        }
        acc
    }

    /// Every Lie derivative of every generator lies in the shell ideal.
    pub fn check_equivariance(&self, order: MonomialOrder, budget: GroebnerBudget) -> Result<bool, ShellError> {
        for a in &self.action.lie_basis {
            for mu in &self.mu_generators {
                let d = self.lie_derivative(a, mu);
                if !self.ideal.contains(&d, order, budget)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Generators in the plain-text polynomial format.
    pub fn export(&self) -> String {
        write_system(&self.ring, &self.mu_generators)
    }
}

/// Equations of the level-`m` jet scheme of a shell.
#[derive(Clone, Debug)]
pub struct JetSystem {
    pub base: ShellSystem,
    pub level: usize,
    pub ring: Arc<Ring>,
    /// Generators ordered by level, then by Lie basis element.
    pub generators: Vec<Polynomial>,
}

/// Convolution equations `Σ_{i+j=k} ξ_iᵀ A x_j` for `k = 0..=m`.
pub fn jet_generators(s: &ShellSystem, m: usize) -> JetSystem {
    let n = s.dim_v();
    let ring = Ring::new(jet_variable_names(n, m));
    let mut generators = Vec::with_capacity((m + 1) * s.dim_g());
    for k in 0..=m {
        for a in &s.action.lie_basis {
            let mut g = Polynomial::zero(&ring);
            for i in 0..=k {
                g = g.add(&pairing(&ring, a, n, i, k - i));
            }
            generators.push(g);
        }
    }
    JetSystem {
        base: s.clone(),
        level: m,
        ring,
        generators,
    }
}

impl JetSystem {
    /// Jet-ring index of a level-0 shell variable; the projection to level 0.
    pub fn level_zero_index(&self, shell_var: usize) -> usize {
        shell_var
    }

    /// Generators of levels `0..=k`.
    pub fn generators_up_to(&self, k: usize) -> &[Polynomial] {
        &self.generators[..(k + 1) * self.base.dim_g()]
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.generators.clone()).expect("shared ring")
    }

    /// Whether every jet generator vanishes at `arc`.
    pub fn vanishes_at(&self, arc: &[Rational]) -> Result<bool, ShellError> {
        if arc.len() != self.ring.nvars() {
            return Err(ShellError::DimensionMismatch {
                expected: self.ring.nvars(),
                got: arc.len(),
            });
        }
        Ok(self.generators.iter().all(|g| g.evaluate(arc).is_zero()))
    }

    pub fn export(&self) -> String {
        write_system(&self.ring, &self.generators)
    }
}

/// Power series truncated after `t^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated(pub Vec<Rational>);

impl EvalRing for Truncated {
    fn zero_like(values: &[Self]) -> Self {
        let len = values.first().map_or(1, |v| v.0.len());
        Truncated(vec![Rational::zero(); len])
    }

    fn from_rational(c: &Rational, values: &[Self]) -> Self {
        let mut t = Self::zero_like(values);
        t.0[0] = c.clone();
        t
    }

    fn add(&self, other: &Self) -> Self {
        Truncated(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        let len = self.0.len();
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Truncated(out)
    }
}

/// Substitutes the arc into the moment map and tests vanishing mod `t^{m+1}`.
///
/// `arc` lists coordinates in jet-ring order: level by level, `x` then `ξ`.
pub fn arc_substitution_check(s: &ShellSystem, m: usize, arc: &[Rational]) -> Result<bool, ShellError> {
    let n = s.dim_v();
    let expected = 2 * n * (m + 1);
    if arc.len() != expected {
        return Err(ShellError::DimensionMismatch {
            expected,
            got: arc.len(),
        });
    }
    let series: Vec<Truncated> = (0..2 * n)
        .map(|k| Truncated((0..=m).map(|l| arc[l * 2 * n + k].clone()).collect()))
        .collect();
    Ok(s.mu_generators
        .iter()
        .all(|g| g.evaluate(&series).0.iter().all(Zero::is_zero)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::repmodel::{build_action, GroupDescriptor, Irrep, ModuleDescriptor, Summand};

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

    #[test]
    fn torus_generators() {
        assert_eq!(
            torus_shell(&[1, -1]).mu_generators[0].to_string(),
            "x0_1*xi0_1 - x0_2*xi0_2"
        );
        assert_eq!(
            torus_shell(&[1, 1]).mu_generators[0].to_string(),
            "x0_1*xi0_1 + x0_2*xi0_2"
        );
    }

    #[test]
    fn euclidean_so3_gives_cross_product() {
        let s = moment_generators(&RepAction::so3_euclidean(1));
        let shown: Vec<String> = s.mu_generators.iter().map(|g| g.to_string()).collect();
        // components of the cross product x × ξ, up to sign
        assert_eq!(
            shown,
            vec![
                "-x0_3*xi0_2 + x0_2*xi0_3",
                "x0_3*xi0_1 - x0_1*xi0_3",
                "-x0_2*xi0_1 + x0_1*xi0_2"
            ]
        );
        assert!(s.check_hamiltonian());
    }

    #[test]
    fn jets_follow_the_convolution() {
        let s = torus_shell(&[1, -1]);
        let j = jet_generators(&s, 1);
        assert_eq!(j.generators.len(), 2);
        assert_eq!(j.generators[0].to_string(), "x0_1*xi0_1 - x0_2*xi0_2");
        assert_eq!(
            j.generators[1].to_string(),
            "xi0_1*x1_1 - xi0_2*x1_2 + x0_1*xi1_1 - x0_2*xi1_2"
        );
        let sl2 = moment_generators(
            &build_action(
                &GroupDescriptor::sl(2),
                &ModuleDescriptor {
                    summands: vec![Summand::new(0, Irrep::Standard, 3)],
                },
            )
            .unwrap(),
        );
        assert_eq!(jet_generators(&sl2, 2).generators.len(), 9);
    }

    #[test]
    fn arc_examples() {
        let s = torus_shell(&[1, -1]);
        let zero = vec![int(0); 8];
        assert!(arc_substitution_check(&s, 1, &zero).unwrap());
        let on = [1, 0, 0, 1, 0, 0, 0, 0].map(int);
        assert!(arc_substitution_check(&s, 1, &on).unwrap());
        let off = [1, 0, 1, 0, 0, 0, 0, 0].map(int);
        assert!(!arc_substitution_check(&s, 1, &off).unwrap());
        assert!(matches!(
            arc_substitution_check(&s, 1, &zero[..3]),
            Err(ShellError::DimensionMismatch { expected: 8, got: 3 })
        ));
        let j = jet_generators(&s, 1);
        assert!(j.vanishes_at(&on).unwrap());
        assert!(!j.vanishes_at(&off).unwrap());
    }

    #[test]
    fn equivariance_on_sl2_standard() {
        let a = build_action(
            &GroupDescriptor::sl(2),
            &ModuleDescriptor {
                summands: vec![Summand::new(0, Irrep::Standard, 2)],
            },
        )
        .unwrap();
        let s = moment_generators(&a);
        assert!(s.check_hamiltonian());
        assert!(s
            .check_equivariance(MonomialOrder::GrevLex, GroebnerBudget::default())
            .unwrap());
        assert!(s.mu_generators.iter().all(|g| g.constant_term().is_zero()));
    }
}
