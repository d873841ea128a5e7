//! Exact feasibility for systems of linear inequalities `A·λ ≥ b`.
//!
//! Two independent solvers are provided: Fourier–Motzkin elimination with
//! back-substitution, and a Phase-I simplex with Bland's rule. Both work
//! over the rationals and return an explicit witness when feasible.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LpBackend {
    FourierMotzkin,
    Simplex,
    /// Fourier–Motzkin up to four unknowns, simplex above.
    #[default]
    Auto,
}

/// Finds `λ` with `rows[i]·λ ≥ rhs[i]` for every `i`, if one exists.
pub fn feasible_point(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    nvars: usize,
    backend: LpBackend,
) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len());
    assert!(rows.iter().all(|r| r.len() == nvars));
    let witness = match backend {
        LpBackend::FourierMotzkin => fourier_motzkin(rows, rhs, nvars),
        LpBackend::Simplex => simplex(rows, rhs, nvars),
        LpBackend::Auto if nvars <= 4 => fourier_motzkin(rows, rhs, nvars),
        LpBackend::Auto => simplex(rows, rhs, nvars),
    };
    if let Some(w) = &witness {
        debug_assert!(satisfies(rows, rhs, w));
    }
    witness
}

/// Checks a candidate witness exactly.
pub fn satisfies(rows: &[Vec<Rational>], rhs: &[Rational], point: &[Rational]) -> bool {
    rows.iter().zip(rhs).all(|(r, b)| dot(r, point) >= *b)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Constraint {
    a: Vec<Rational>,
    b: Rational,
}

impl Constraint {
    /// Positive rescaling so the first nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.a.iter().find(|x| !x.is_zero()).cloned() {
            let s = lead.abs().recip();
            for x in self.a.iter_mut() {
                *x *= &s;
            }
            self.b *= &s;
        }
        self
    }
}

fn prune(cs: Vec<Constraint>) -> Vec<Constraint> {
    // among constraints with equal left side keep only the strongest
    let mut cs: Vec<Constraint> = cs.into_iter().map(Constraint::normalized).collect();
    cs.sort_by(|x, y| x.a.cmp(&y.a).then(y.b.cmp(&x.b)));
    cs.dedup_by(|later, earlier| later.a == earlier.a);
    cs
}

fn fourier_motzkin(rows: &[Vec<Rational>], rhs: &[Rational], nvars: usize) -> Option<Vec<Rational>> {
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(nvars + 1);
    let mut current = prune(
        rows.iter()
            .zip(rhs)
            .map(|(a, b)| Constraint {
                a: a.clone(),
                b: b.clone(),
            })
            .collect(),
    );
    for k in (0..nvars).rev() {
        stages.push(current.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            if c.a[k].is_positive() {
                pos.push(c);
            } else if c.a[k].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for n in &neg {
                // combine so the k-th coefficient cancels
                let sp = -n.a[k].clone();
                let sn = p.a[k].clone();
                let a: Vec<Rational> = p.a.iter().zip(&n.a).map(|(x, y)| x * &sp + y * &sn).collect();
                let b = &p.b * &sp + &n.b * &sn;
                rest.push(Constraint { a, b });
            }
        }
        current = prune(rest);
    }
    if current.iter().any(|c| c.b.is_positive()) {
        return None;
    }
    // stages[s] constrains variables 0..nvars-s
    let mut point = vec![Rational::zero(); nvars];
    for k in 0..nvars {
        let system = &stages[nvars - 1 - k];
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for c in system {
            let coef = &c.a[k];
            if coef.is_zero() {
                continue;
            }
            let known: Rational = (0..k).fold(Rational::zero(), |acc, j| acc + &c.a[j] * &point[j]);
            let bound = (&c.b - known) / coef;
            if coef.is_positive() {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            }
        }
        point[k] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => Rational::zero(),
        };
    }
    Some(point)
}

/// Phase-I simplex on `A u − A v − s = b` with `u, v, s ≥ 0`.
fn simplex(rows: &[Vec<Rational>], rhs: &[Rational], nvars: usize) -> Option<Vec<Rational>> {
    let m = rows.len();
    if m == 0 {
        return Some(vec![Rational::zero(); nvars]);
    }
    // columns: u (nvars), v (nvars), s (m), artificial (m), rhs
    let ncols = 2 * nvars + 2 * m;
    let width = ncols + 1;
    let mut t = vec![vec![Rational::zero(); width]; m];
    for i in 0..m {
        let sign = if rhs[i].is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        for j in 0..nvars {
            t[i][j] = &rows[i][j] * &sign;
            t[i][nvars + j] = -&rows[i][j] * &sign;
        }
        t[i][2 * nvars + i] = -sign.clone();
        t[i][2 * nvars + m + i] = Rational::one();
        t[i][ncols] = &rhs[i] * &sign;
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * nvars + m + i).collect();
    // objective: minimize sum of artificials; reduced costs relative to basis
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..width {
            if j < 2 * nvars + m || j == ncols {
                cost[j] -= &row[j];
            }
        }
    }
    // Bland: lowest index with negative reduced cost
    while let Some(enter) = (0..ncols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][ncols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded cannot happen for a Phase-I objective bounded below by 0
            unreachable!("phase-one objective is bounded");
        };
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, p) in cost.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[r] = enter;
    }
    // the objective value is -cost[rhs]
    if !cost[ncols].is_zero() {
        return None;
    }
    let mut vals = vec![Rational::zero(); ncols];
    for (i, &bv) in basis.iter().enumerate() {
        vals[bv] = t[i][ncols].clone();
    }
    Some((0..nvars).map(|j| &vals[j] - &vals[nvars + j]).collect())
}
