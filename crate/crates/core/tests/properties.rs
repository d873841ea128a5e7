use std::sync::Arc;

use momentshell_core::algebra::{
    groebner_basis, int, reduce, s_polynomial, GroebnerBudget, Ideal, Monomial, MonomialOrder, Polynomial, Rational,
    Ring,
};
use momentshell_core::linalg::QMatrix;
use momentshell_core::repmodel::{build_action, GroupDescriptor, Irrep, ModuleDescriptor, Summand, WeightData};
use momentshell_core::shell::{arc_substitution_check, jet_generators, moment_generators, ShellSystem};
use momentshell_core::torus::{
    certificate_is_sound, is_unstable, m0, m0_orthogonal_formula, m0_with_witness, null_cone_dim_exhaustive,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn ring(n: usize) -> Arc<Ring> {
    Ring::new(NAMES[..n].iter().copied())
}

/// A polynomial of degree at most 2 from `(exponents, coefficient)` pairs.
fn build(r: &Arc<Ring>, terms: &[(Vec<u16>, i64)]) -> Polynomial {
    Polynomial::from_terms(
        r,
        terms
            .iter()
            .map(|(e, c)| (Monomial::from_exponents(e.clone()), int(*c))),
    )
}

fn quadratic_terms(n: usize) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    let exps = prop::collection::vec(0u16..=2, n).prop_filter("degree at most 2", |e| e.iter().sum::<u16>() <= 2);
    prop::collection::vec((exps, -3i64..=3), 1..=4)
}

/// Sparse polynomial as `(exponents, coefficient)` terms.
type Terms = Vec<(Vec<u16>, i64)>;

fn small_system() -> impl Strategy<Value = (usize, Vec<Terms>)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(quadratic_terms(n), 1..=3)))
}

fn nonzero_gens(n: usize, sys: &[Vec<(Vec<u16>, i64)>]) -> (Arc<Ring>, Vec<Polynomial>) {
    let r = ring(n);
    let gens: Vec<Polynomial> = sys.iter().map(|t| build(&r, t)).filter(|p| !p.is_zero()).collect();
    (r, gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_polynomials_reduce_to_zero((n, sys) in small_system()) {
        let (_, gens) = nonzero_gens(n, &sys);
        prop_assume!(!gens.is_empty());
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = groebner_basis(&gens, order, GroebnerBudget::default()).unwrap();
            for i in 0..gb.len() {
                for j in i + 1..gb.len() {
                    let s = s_polynomial(&gb[i], &gb[j], order).unwrap();
                    prop_assert!(reduce(&s, &gb, order).unwrap().is_zero());
                }
            }
            for g in &gens {
                prop_assert!(reduce(g, &gb, order).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn krull_dimension_ignores_the_order((n, sys) in small_system()) {
        let (r, gens) = nonzero_gens(n, &sys);
        let ideal = Ideal::new(&r, gens).unwrap();
        let budget = GroebnerBudget::default();
        prop_assert_eq!(
            ideal.krull_dimension(MonomialOrder::GrevLex, budget).unwrap(),
            ideal.krull_dimension(MonomialOrder::Lex, budget).unwrap()
        );
    }

    #[test]
    fn reduction_is_idempotent((n, sys) in small_system(), f in quadratic_terms(4)) {
        let (r, gens) = nonzero_gens(n, &sys);
        let f: Vec<(Vec<u16>, i64)> = f.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect();
        let f = build(&r, &f);
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let once = reduce(&f, &gens, order).unwrap();
            prop_assert_eq!(reduce(&once, &gens, order).unwrap(), once);
        }
    }

    #[test]
    fn hypersurface_has_codimension_one(n in 2usize..=4, terms in quadratic_terms(4)) {
        let r = ring(n);
        let terms: Vec<(Vec<u16>, i64)> = terms
            .into_iter()
            .map(|(e, c)| (e[..n].to_vec(), c))
            .filter(|(e, _)| e.iter().any(|&x| x > 0))
            .collect();
        let f = build(&r, &terms);
        prop_assume!(!f.is_zero());
        let ideal = Ideal::new(&r, vec![f]).unwrap();
        prop_assert_eq!(ideal.krull_dimension(MonomialOrder::GrevLex, GroebnerBudget::default()).unwrap(), n as i64 - 1);
    }
}

fn weight_strategy() -> impl Strategy<Value = WeightData> {
    (1usize..=3).prop_flat_map(|t| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, t), 1..=8)
            .prop_map(move |ws| WeightData::new(t, ws).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn m0_is_negation_invariant(w in weight_strategy()) {
        prop_assert_eq!(m0(&w), m0(&w.negated()));
    }

    #[test]
    fn m0_is_monotone(w in weight_strategy(), extra in prop::collection::vec(-2i64..=2, 3)) {
        let extra = WeightData::new(w.torus_rank, vec![extra[..w.torus_rank].to_vec()]).unwrap();
        prop_assert!(m0(&w.concat(&extra)).unwrap() >= m0(&w).unwrap());
    }

    #[test]
    fn certificates_are_sound(w in weight_strategy()) {
        let (m, cert) = m0_with_witness(&w).unwrap();
        if let Some(c) = cert {
            prop_assert!(certificate_is_sound(&w, &c));
            prop_assert!(c.positive_support.len() >= m);
        }
        let all: Vec<usize> = (0..w.dim()).collect();
        if let Some(c) = is_unstable(&w, &all) {
            prop_assert!(c.verify(&w, &all));
        }
    }

    #[test]
    fn exhaustive_null_cone_matches_m0(w in weight_strategy()) {
        prop_assert_eq!(null_cone_dim_exhaustive(&w), m0(&w));
    }
}

/// A random orthogonal torus module: random weights with their negatives and some zeros.
fn random_orthogonal(rng: &mut ChaCha8Rng) -> WeightData {
    let t = rng.gen_range(1..=4);
    let pairs = rng.gen_range(1..=5);
    let zeros = rng.gen_range(0..=12 - 2 * pairs);
    let mut ws = Vec::new();
    for _ in 0..pairs {
        let w: Vec<i64> = (0..t).map(|_| rng.gen_range(-3..=3)).collect();
        ws.push(w.iter().map(|x| -x).collect());
        ws.push(w);
    }
    ws.extend(std::iter::repeat_n(vec![0; t], zeros));
    WeightData::new(t, ws).unwrap()
}

#[test]
fn m0_matches_orthogonal_formula_on_seeded_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(312);
    let mut mismatches = 0;
    for _ in 0..50 {
        let w = random_orthogonal(&mut rng);
        assert!(w.torus_rank <= 4 && w.dim() <= 12);
        if m0(&w) != Some(m0_orthogonal_formula(&w).unwrap()) {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
}

fn torus_shell(ws: &[i64]) -> ShellSystem {
    shell(
        GroupDescriptor::torus(1),
        vec![(
            Irrep::Weights {
                weights: ws.iter().map(|&w| vec![w]).collect(),
            },
            1,
        )],
    )
}

fn shell(g: GroupDescriptor, summands: Vec<(Irrep, usize)>) -> ShellSystem {
    let m = ModuleDescriptor {
        summands: summands
            .into_iter()
            .map(|(irrep, k)| Summand::new(0, irrep, k))
            .collect(),
    };
    moment_generators(&build_action(&g, &m).unwrap())
}

fn corpus() -> Vec<ShellSystem> {
    vec![
        torus_shell(&[1, -1]),
        torus_shell(&[1, 1]),
        shell(GroupDescriptor::sl(2), vec![(Irrep::Standard, 3)]),
        shell(GroupDescriptor::sl(2), vec![(Irrep::Standard, 1), (Irrep::Adjoint, 1)]),
        shell(GroupDescriptor::so(3), vec![(Irrep::Standard, 2)]),
        shell(GroupDescriptor::sl(2), vec![(Irrep::Adjoint, 2)]),
        shell(GroupDescriptor::so(3), vec![(Irrep::Standard, 1)]),
        shell(GroupDescriptor::sl(2), vec![(Irrep::Standard, 2)]),
    ]
}

/// A jet-space point whose `ξ` part solves the linear jet equations for a random `x` part.
fn arc_on_jet_scheme(s: &ShellSystem, m: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let n = s.dim_v();
    let xs: Vec<Vec<Rational>> = (0..=m)
        .map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
        .collect();
    let total = (m + 1) * n;
    let mut rows = Vec::new();
    for k in 0..=m {
        for a in &s.action.lie_basis {
            let mut row = vec![int(0); total];
            for i in 0..=k {
                row[i * n..(i + 1) * n].clone_from_slice(&a.mul_vec(&xs[k - i]));
            }
            rows.push(row);
        }
    }
    let kernel = QMatrix::from_rows(rows).nullspace();
    let mut xi = vec![int(0); total];
    for v in &kernel {
        let c = int(rng.gen_range(-2..=2));
        for (x, y) in xi.iter_mut().zip(v) {
            *x += &c * y;
        }
    }
    let mut arc = Vec::with_capacity(2 * total);
    for l in 0..=m {
        arc.extend(xs[l].iter().cloned());
        arc.extend(xi[l * n..(l + 1) * n].iter().cloned());
    }
    arc
}

#[test]
fn arc_substitution_agrees_with_jet_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for s in corpus() {
        for trial in 0..100 {
            let m = trial % 3;
            let jets = jet_generators(&s, m);
            let arc = if trial % 2 == 0 {
                arc_on_jet_scheme(&s, m, &mut rng)
            } else {
                (0..jets.ring.nvars()).map(|_| int(rng.gen_range(-2..=2))).collect()
            };
            let via_series = arc_substitution_check(&s, m, &arc).unwrap();
            assert_eq!(via_series, jets.vanishes_at(&arc).unwrap());
            if trial % 2 == 0 {
                assert!(via_series);
            }
        }
    }
}

#[test]
fn moment_ideals_are_equivariant() {
    for s in corpus().into_iter().take(6) {
        assert!(s
            .check_equivariance(MonomialOrder::GrevLex, GroebnerBudget::default())
            .unwrap());
        assert!(s.check_hamiltonian());
    }
}
