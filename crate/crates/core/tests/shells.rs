use momentshell_core::algebra::{int, Rational};
use momentshell_core::jetcheck::{
    e_filtration, fiber_over_origin_dim, mustata_level, one_modular_via_jets, shell_1_modular, shell_dim_and_ci,
    singular_stratum_dims, Engine,
};
use momentshell_core::repmodel::{build_action, GroupDescriptor, Irrep, ModuleDescriptor, Summand};
use momentshell_core::shell::{moment_generators, ShellSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shell(g: GroupDescriptor, summands: Vec<(Irrep, usize)>) -> ShellSystem {
    let m = ModuleDescriptor {
        summands: summands
            .into_iter()
            .map(|(irrep, k)| Summand::new(0, irrep, k))
            .collect(),
    };
    moment_generators(&build_action(&g, &m).unwrap())
}

fn torus(ws: &[i64]) -> ShellSystem {
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

fn sl2(summands: Vec<(Irrep, usize)>) -> ShellSystem {
    shell(GroupDescriptor::sl(2), summands)
}

fn so3(k: usize) -> ShellSystem {
    shell(GroupDescriptor::so(3), vec![(Irrep::Standard, k)])
}

fn corpus() -> Vec<(&'static str, ShellSystem)> {
    vec![
        ("C1", torus(&[1, -1])),
        ("C2", torus(&[1, 1])),
        ("C3", sl2(vec![(Irrep::Standard, 3)])),
        ("C4", sl2(vec![(Irrep::Standard, 1), (Irrep::Adjoint, 1)])),
        ("C5", so3(2)),
        ("C6", sl2(vec![(Irrep::Adjoint, 2)])),
        ("C7", so3(1)),
        ("C8", sl2(vec![(Irrep::Standard, 2)])),
    ]
}

#[test]
fn corpus_shell_dimensions() {
    let e = Engine::default();
    let expected = [
        ("C1", 3, true),
        ("C2", 3, true),
        ("C3", 9, true),
        ("C4", 7, true),
        ("C5", 9, true),
        ("C6", 9, true),
        ("C7", 4, false),
        ("C8", 5, true),
    ];
    for ((id, s), (eid, dim, ci)) in corpus().iter().zip(expected) {
        assert_eq!(*id, eid);
        assert_eq!(shell_dim_and_ci(s, e).unwrap(), (dim, ci), "{id}");
    }
}

#[test]
fn classical_one_modularity_boundaries() {
    let e = Engine::default();
    assert!(!shell_1_modular(&so3(1), e).unwrap());
    assert!(shell_1_modular(&so3(2), e).unwrap());
    assert!(!shell_1_modular(&sl2(vec![(Irrep::Standard, 2)]), e).unwrap());
    assert!(shell_1_modular(&sl2(vec![(Irrep::Standard, 3)]), e).unwrap());
}

#[test]
fn strata_and_jet_routes_agree() {
    let e = Engine::default();
    for (id, s) in corpus() {
        assert_eq!(
            shell_1_modular(&s, e).unwrap(),
            one_modular_via_jets(&s, e).unwrap(),
            "{id}"
        );
    }
}

#[test]
fn rank_strata_of_adjoint_pair() {
    let s = sl2(vec![(Irrep::Adjoint, 2)]);
    let strata = singular_stratum_dims(&s, Engine::default()).unwrap();
    assert!(strata[&1] <= 9 - 2);
}

#[test]
fn mustata_levels_of_c1_and_c8() {
    let e = Engine::default();
    let c1 = torus(&[1, -1]);
    let lhs: Vec<i64> = (1..=3).map(|m| mustata_level(&c1, m, e).unwrap().lhs).collect();
    assert_eq!(lhs, vec![4, 7, 10]);
    assert!((1..=3).all(|m| mustata_level(&c1, m, e).unwrap().holds));
    let c8 = sl2(vec![(Irrep::Standard, 2)]);
    assert!(!mustata_level(&c8, 1, e).unwrap().holds);
}

#[test]
fn fibre_routes_agree() {
    let e = Engine::default();
    for (id, s) in corpus().into_iter().take(2) {
        for m in 1..=3 {
            let f = fiber_over_origin_dim(&s, m, e).unwrap();
            assert!(f.agrees(), "{id} {f:?}");
        }
    }
    let c8 = sl2(vec![(Irrep::Standard, 2)]);
    assert!(fiber_over_origin_dim(&c8, 2, e).unwrap().agrees());
}

fn random_arc(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<Rational>> {
    (0..=m)
        .map(|_| {
            (0..n)
                .map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into()))
                .collect()
        })
        .collect()
}

#[test]
fn filtration_matches_direct_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (id, s) in corpus() {
        let g = s.dim_g();
        for trial in 0..50 {
            let arc = random_arc(&mut rng, s.dim_v(), trial % 3);
            let f = e_filtration(&s, &arc).unwrap();
            assert!(f.agrees(), "{id} arc {arc:?}: {f:?}");
            assert!(f.r.iter().zip(&f.lie_dims).all(|(r, l)| r + l == g), "{id} {f:?}");
            assert!(f.r.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn rank_one_arc_leaves_the_filtration_count() {
    let s = sl2(vec![(Irrep::Standard, 2)]);
    let pt = |v: [i64; 4]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
    let arc = vec![pt([-1, 1, 1, -1]), pt([0, -1, 1, 0]), pt([0, 1, -1, 0])];
    let f = e_filtration(&s, &arc).unwrap();
    assert_eq!(f.r, vec![2, 2, 2]);
    assert_eq!((f.dim_y, f.dim_y_direct), (6, 5));
    assert!(!f.agrees());
}

#[test]
fn free_orbit_filtration() {
    let s = sl2(vec![(Irrep::Standard, 3)]);
    let x0 = vec![int(1), int(2), int(-1), int(3), int(0), int(5)];
    let f = e_filtration(&s, &[x0]).unwrap();
    assert_eq!(f.r, vec![3]);
    assert_eq!(f.dim_y, 3);
}
