//! Check sections shared by the individual commands and the corpus runner.
//!
//! Each section appends report records to a [`Run`] and stores the values
//! corpus expectations are compared against as flat `facts`.

use std::collections::BTreeMap;

use momentshell_core::criteria::{
    condition_orthogonal, condition_star, condition_use_em, delta_bounds, dim_g_modular_shortcut, property_f,
    property_n, CriteriaError, SliceQuantities, Status,
};
use momentshell_core::jetcheck::{
    codim_criterion, fiber_over_origin_dim, irrelevance_verdict, mustata_level, one_modular_from_strata,
    premise_from_shell, premise_from_slice_properties, shell_dim_and_ci, singular_stratum_dims, torus_slice_chain,
    torus_slice_quantities, Engine, SliceEvidence,
};
use momentshell_core::repmodel::{is_orthogonal, RepAction, WeightData};
use momentshell_core::shell::ShellSystem;
use momentshell_core::torus::{
    fpig_lagrangian, has_fpig, is_stable, m0_orthogonal_formula, m0_with_witness, maximal_torus_slice,
    modularity_profile, symplectic_slices, torus_slice_reps,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{to_value, Record, RecordStatus, Timer};
use crate::specfile::{CodimInput, ModuleSpecFile};

const DIMENSION: &str = "dimension of the shell N = mu^-1(0) in V + V*, by Krull dimension of the moment ideal";
const COMPLETE_INTERSECTION: &str = "N is a complete intersection: dim N = 2 dim V - dim G";
const RANK_STRATA: &str =
    "dimension of the locus in N where rank d(mu) <= dim G - r, for r = 1..dim G; -1 marks an empty locus";
const ONE_MODULAR: &str =
    "1-modularity of V: every nonempty locus where rank d(mu) <= dim G - r has codimension at least r + 1 in N";
const ONE_MODULAR_JETS: &str = "1-modularity through jets: dim rho_1^-1(N_sing) < 2 dim N";
const ROUTES_AGREE: &str = "1-modularity from rank strata agrees with the first-jet criterion";
const EQUIVARIANCE: &str = "the moment ideal is G-stable and the moment map is Hamiltonian for the symplectic form";
const MUSTATA: &str = "Mustata inequality at jet level m: dim rho_m^-1(N_sing) < (m+1) dim N";
const FIBER: &str =
    "fibre of the m-jets over the origin: direct count equals dim N_{m-2} + 2 dim V (2 dim V when m = 1)";
const JET_SCOPE: &str = "rational singularities are verified only for the listed jet levels";
const M0: &str = "m0(V): largest dimension of a linear subspace of the null cone, by exact LP over weight chambers";
const M0_FORMULA: &str = "for an orthogonal torus module, m0(V) = (dim V - dim V^T) / 2";
const MODULARITY: &str = "k-modularity of V from the dimensions of the isotropy strata V_(r) of the torus";
const STABLE: &str = "V is stable: the weights positively span the character space";
const FPIG: &str = "V has finite principal isotropy: stable and the weights span the character space";
const FPIG_LAGRANGIAN: &str = "some Lagrangian half W of V + V* has FPIG, so the shell can be studied through W";
const SLICE_REPS: &str = "slice representations of V at closed orbits, one per isotropy subtorus";
const SYMPLECTIC_SLICES: &str = "symplectic slice representations S_0 of the shell, one per isotropy subtorus";
const MAXIMAL_TORUS_SLICE: &str =
    "slice at a closed orbit with isotropy a maximal torus: V|_T minus one copy of each root";
const SLICE_DATA: &str = "quantities of one symplectic slice (S_0 = W_0 + W_0*, H)";
const DELTA: &str = "delta = dim W_0 - dim H - m0(W_0), with the null-cone bounds it gives for W_0 and S_0";
const FPIG_NOTE: &str = "FPIG is a statement about the connected group";

/// Records and facts collected by one run.
#[derive(Debug, Default)]
pub struct Run {
    pub timer: Timer,
    pub records: Vec<Record>,
    pub facts: BTreeMap<String, Value>,
}

impl Run {
    pub fn new(timer: Timer) -> Self {
        Run {
            timer,
            ..Run::default()
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.facts.insert(key.into(), to_value(value));
    }
}

/// Results of the shell section needed by later sections.
#[derive(Clone, Debug)]
pub struct ShellFacts {
    pub dim_n: i64,
    pub is_ci: bool,
    pub strata: BTreeMap<usize, i64>,
}

impl ShellFacts {
    /// Dimension of the rank-deficient locus of `dμ`.
    pub fn singular_dim(&self) -> i64 {
        self.strata.get(&1).copied().unwrap_or(-1)
    }
}

pub fn shell_facts(s: &ShellSystem, e: Engine) -> Result<ShellFacts, CliError> {
    let (dim_n, is_ci) = shell_dim_and_ci(s, e)?;
    let strata = singular_stratum_dims(s, e)?;
    Ok(ShellFacts { dim_n, is_ci, strata })
}

/// FPIG of the shell: computed for tori, read from the module file otherwise.
pub fn shell_fpig(spec: &ModuleSpecFile, a: &RepAction) -> Option<bool> {
    if a.group.is_torus() {
        Some(fpig_lagrangian(&a.weight_data).is_some())
    } else {
        spec.fpig
    }
}

fn group_inputs(r: Record, a: &RepAction) -> Record {
    r.input("group", a.group.to_string())
        .input("dim_V", a.dim_v)
        .input("dim_G", a.group.dim())
}

pub fn shell_section(run: &mut Run, s: &ShellSystem, e: Engine) -> Result<ShellFacts, CliError> {
    let a = &s.action;
    let (facts, ms) = run.timer.time(|| shell_facts(s, e));
    let facts = facts?;
    let expected = 2 * a.dim_v as i64 - a.group.dim() as i64;
    run.push(
        group_inputs(Record::new("shell.dimension", DIMENSION, RecordStatus::Info), a)
            .result(json!({ "dim_N": facts.dim_n, "expected_dim": expected }))
            .with_runtime(ms),
    );
    run.push(
        group_inputs(
            Record::new(
                "shell.complete_intersection",
                COMPLETE_INTERSECTION,
                Status::from_bool(facts.is_ci).into(),
            ),
            a,
        )
        .result(json!({ "dim_N": facts.dim_n, "expected_dim": expected })),
    );
    run.push(Record::new("shell.rank_strata", RANK_STRATA, RecordStatus::Info).result(&facts.strata));
    let one_modular = one_modular_from_strata(facts.dim_n, &facts.strata);
    run.push(
        Record::new("shell.one_modular", ONE_MODULAR, Status::from_bool(one_modular).into())
            .input("dim_N", facts.dim_n)
            .result(&facts.strata),
    );
    let (level1, ms) = run.timer.time(|| mustata_level(s, 1, e));
    let level1 = level1?;
    run.push(
        Record::new(
            "shell.one_modular_jets",
            ONE_MODULAR_JETS,
            Status::from_bool(level1.holds).into(),
        )
        .result(level1)
        .with_runtime(ms),
    );
    let agree = one_modular == level1.holds;
    run.push(
        Record::new(
            "shell.one_modular_routes_agree",
            ROUTES_AGREE,
            if agree {
                RecordStatus::Match
            } else {
                RecordStatus::Mismatch
            },
        )
        .result(json!({ "strata": one_modular, "jets": level1.holds })),
    );
    let (equivariant, ms) = run.timer.time(|| s.check_equivariance(e.order, e.budget));
    let equivariant = equivariant.map_err(momentshell_core::jetcheck::JetError::from)? && s.check_hamiltonian();
    run.push(
        Record::new(
            "shell.equivariance",
            EQUIVARIANCE,
            Status::from_bool(equivariant).into(),
        )
        .with_runtime(ms),
    );

    run.fact("shell.dim", facts.dim_n);
    run.fact("shell.expected_dim", expected);
    run.fact("shell.ci", facts.is_ci);
    run.fact("shell.strata", &facts.strata);
    run.fact("shell.one_modular", one_modular);
    run.fact("shell.one_modular_jets", level1.holds);
    run.fact("shell.routes_agree", agree);
    run.fact("shell.equivariant", equivariant);
    Ok(facts)
}

pub fn jet_section(run: &mut Run, s: &ShellSystem, levels: &[usize], e: Engine) -> Result<(), CliError> {
    let mut all = true;
    for &m in levels {
        let (level, ms) = run.timer.time(|| mustata_level(s, m, e));
        let level = level?;
        all &= level.holds;
        run.push(
            Record::new(
                format!("jet.mustata.m{m}"),
                MUSTATA,
                Status::from_bool(level.holds).into(),
            )
            .input("level", m)
            .result(level)
            .with_runtime(ms),
        );
        let (fiber, ms) = run.timer.time(|| fiber_over_origin_dim(s, m, e));
        let fiber = fiber?;
        run.push(
            Record::new(
                format!("jet.fiber_over_origin.m{m}"),
                FIBER,
                if fiber.agrees() {
                    RecordStatus::Match
                } else {
                    RecordStatus::Mismatch
                },
            )
            .input("level", m)
            .result(fiber)
            .with_runtime(ms),
        );
        run.fact(format!("jet.m{m}.lhs"), level.lhs);
        run.fact(format!("jet.m{m}.rhs"), level.rhs);
        run.fact(format!("jet.m{m}.holds"), level.holds);
        run.fact(format!("jet.m{m}.fiber_agrees"), fiber.agrees());
    }
    if let Some(max) = levels.iter().max() {
        let note = if all {
            format!("verified for m <= {max}")
        } else {
            "the inequality fails at some level".to_string()
        };
        run.push(
            Record::new("jet.scope", JET_SCOPE, RecordStatus::Info)
                .input("levels", levels)
                .result(note),
        );
    }
    Ok(())
}

/// The torus computations a `torus` command can ask for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusQuery {
    M0,
    Modularity,
    Stability,
    Slices,
}

fn weight_inputs(r: Record, w: &WeightData) -> Record {
    r.input("weights", &w.weights).input("torus_rank", w.torus_rank)
}

pub fn torus_section(run: &mut Run, a: &RepAction, query: TorusQuery) -> Result<(), CliError> {
    let w = &a.weight_data;
    match query {
        TorusQuery::M0 => {
            let (out, ms) = run.timer.time(|| m0_with_witness(w));
            let mut r = weight_inputs(Record::new("torus.m0", M0, RecordStatus::Info), w).with_runtime(ms);
            match out {
                Some((m0, cert)) => {
                    r = r.result(json!({ "m0": m0, "certificate": cert }));
                    run.fact("torus.m0", m0);
                    if is_orthogonal(w) {
                        let formula = m0_orthogonal_formula(w)?;
                        let agree = formula == m0;
                        run.push(r);
                        r = Record::new(
                            "torus.m0_orthogonal_formula",
                            M0_FORMULA,
                            if agree {
                                RecordStatus::Match
                            } else {
                                RecordStatus::Mismatch
                            },
                        )
                        .result(json!({ "lp": m0, "formula": formula }));
                        run.fact("torus.m0_formula_agrees", agree);
                    }
                }
                None => {
                    r.status = RecordStatus::Unknown;
                    r = r.result("not computed: more distinct weights than the enumeration cap");
                }
            }
            run.push(r);
        }
        TorusQuery::Modularity => {
            let profile = modularity_profile(w)?;
            let one = profile.is_k_modular(1);
            run.push(
                weight_inputs(
                    Record::new("torus.modularity", MODULARITY, Status::from_bool(one).into()),
                    w,
                )
                .input("k", 1)
                .result(&profile),
            );
            run.fact("torus.max_k", profile.max_k);
            run.fact("torus.one_modular", one);
            if a.group.is_torus() {
                let v = dim_g_modular_shortcut(&profile, a.group.dim());
                run.fact("torus.dim_g_modular", v.status);
                run.push(Record::from_verdict("torus.dim_g_modular", &v));
            }
        }
        TorusQuery::Stability => {
            let stable = is_stable(w);
            let fpig = has_fpig(w);
            let lagrangian = fpig_lagrangian(w);
            run.push(weight_inputs(
                Record::new("torus.stable", STABLE, Status::from_bool(stable).into()),
                w,
            ));
            run.push(
                weight_inputs(Record::new("torus.fpig", FPIG, Status::from_bool(fpig).into()), w)
                    .result(json!({ "note": FPIG_NOTE })),
            );
            run.push(
                weight_inputs(
                    Record::new(
                        "torus.fpig_lagrangian",
                        FPIG_LAGRANGIAN,
                        Status::from_bool(lagrangian.is_some()).into(),
                    ),
                    w,
                )
                .result(lagrangian.as_ref().map(|l| l.sorted().weights)),
            );
            run.fact("torus.stable", stable);
            run.fact("torus.fpig", fpig);
            run.fact("torus.fpig_lagrangian", lagrangian.is_some());
        }
        TorusQuery::Slices => {
            let reps = torus_slice_reps(w)?;
            let symplectic = symplectic_slices(w)?;
            run.fact("torus.slice_count", reps.len());
            run.fact("torus.symplectic_slice_count", symplectic.len());
            run.push(weight_inputs(Record::new("torus.slice_reps", SLICE_REPS, RecordStatus::Info), w).result(reps));
            run.push(
                weight_inputs(
                    Record::new("torus.symplectic_slices", SYMPLECTIC_SLICES, RecordStatus::Info),
                    w,
                )
                .result(symplectic),
            );
            if !a.group.is_torus() {
                let r = Record::new("torus.maximal_torus_slice", MAXIMAL_TORUS_SLICE, RecordStatus::Info)
                    .input("group", a.group.to_string());
                run.push(match maximal_torus_slice(a) {
                    Ok(d) => r.result(d),
                    Err(err) => r.result(err.to_string()),
                });
            }
        }
    }
    Ok(())
}

/// One slice of a criteria run, with the weights of `W_0` when it is toral.
#[derive(Clone, Debug)]
pub struct SliceEntry {
    pub quantities: SliceQuantities,
    pub w0: Option<WeightData>,
}

pub const MAXIMAL_TORUS_LABEL: &str = "maximal-torus";

/// Slices of the shell of a module.
///
/// Torus groups get every slice from their weights. Other groups take the
/// slices listed in the module file, plus the maximal-torus slice when `V` has
/// zero weights, which is when such closed orbits exist.
pub fn module_slices(spec: &ModuleSpecFile, a: &RepAction, e: Engine) -> Result<Vec<SliceEntry>, CliError> {
    if a.group.is_torus() {
        return Ok(torus_slice_chain(&a.weight_data, e)?
            .into_iter()
            .map(|t| SliceEntry {
                quantities: t.quantities,
                w0: Some(t.w0),
            })
            .collect());
    }
    let mut out: Vec<SliceEntry> = spec
        .slices
        .iter()
        .map(|q| SliceEntry {
            quantities: q.clone(),
            w0: None,
        })
        .collect();
    if a.weight_data.dim_fixed() > 0 {
        let d = maximal_torus_slice(a)?;
        let mut quantities = torus_slice_quantities(MAXIMAL_TORUS_LABEL, &d.w0, e)?;
        quantities.dim_h = d.dim_h;
        out.push(SliceEntry {
            quantities,
            w0: Some(d.w0),
        });
    }
    Ok(out)
}

fn slice_name(q: &SliceQuantities, k: usize) -> String {
    if q.label.is_empty() {
        format!("slice_{k}")
    } else {
        q.label.clone()
    }
}

/// Where the premise of the CIFR verdict comes from.
pub enum PremiseSource<'a> {
    Shell { facts: &'a ShellFacts, fpig: Option<bool> },
    SliceProperties,
}

pub fn criteria_section(
    run: &mut Run,
    slices: &[SliceEntry],
    codim: &[CodimInput],
    premise: PremiseSource<'_>,
) -> Result<(), CliError> {
    let mut evidence = Vec::new();
    for (k, entry) in slices.iter().enumerate() {
        let q = &entry.quantities;
        let name = slice_name(q, k);
        let key = |s: &str| format!("slice.{name}.{s}");
        let w0 = entry.w0.as_ref().map(|w| w.sorted().weights);
        run.push(
            Record::new(format!("criteria.{name}.quantities"), SLICE_DATA, RecordStatus::Info)
                .result(json!({ "quantities": q, "w0_weights": w0 })),
        );
        run.fact(key("dim_h"), q.dim_h);
        if let Some(w) = &w0 {
            run.fact(key("w0"), w);
        }
        let f = property_f(q);
        let n = property_n(q);
        run.fact(key("property_f"), f.status);
        run.fact(key("property_n"), n.status);
        run.push(Record::from_verdict(format!("criteria.{name}.property_f"), &f));
        run.push(Record::from_verdict(format!("criteria.{name}.property_n"), &n));
        let delta = Record::new(format!("criteria.{name}.delta"), DELTA, RecordStatus::Info);
        let delta = match delta_bounds(q) {
            Ok(d) => {
                run.fact(key("delta"), d.delta);
                delta.result(d)
            }
            Err(CriteriaError::FiniteIsotropy) => delta.result("not defined: H is finite"),
            Err(err) => {
                let mut r = delta.result(err.to_string());
                r.status = RecordStatus::Unknown;
                r
            }
        };
        run.push(delta);
        let use_em = condition_use_em(q);
        run.fact(key("use_em"), use_em.status);
        run.push(Record::from_verdict(format!("criteria.{name}.use_em"), &use_em));
        if q.w0_orthogonal == Some(true) {
            let v = condition_orthogonal(q)?;
            run.fact(key("orthogonal"), v.status);
            run.push(Record::from_verdict(format!("criteria.{name}.orthogonal"), &v));
        }
        let route = match codim.iter().find(|c| c.slice == name) {
            Some(c) => {
                let v = codim_criterion(&c.strata, c.dim_g, c.level)?;
                run.fact(key("codim_route"), v.status);
                run.push(
                    Record::from_verdict(format!("criteria.{name}.codim_route"), &v)
                        .input("strata", &c.strata)
                        .input("level", c.level),
                );
                Some(v)
            }
            None => None,
        };
        evidence.push(SliceEvidence {
            quantities: q.clone(),
            codim_route: route,
        });
    }
    if let Some(c) = codim.iter().find(|c| {
        !slices
            .iter()
            .enumerate()
            .any(|(k, s)| slice_name(&s.quantities, k) == c.slice)
    }) {
        return Err(CliError::Input(format!(
            "codimension strata name an unknown slice `{}`",
            c.slice
        )));
    }
    let quantities: Vec<SliceQuantities> = slices.iter().map(|s| s.quantities.clone()).collect();
    let star = condition_star(&quantities);
    run.fact("criteria.star", star.status);
    run.push(Record::from_verdict("criteria.star", &star));
    let premise = match premise {
        PremiseSource::Shell { facts, fpig } => {
            premise_from_shell(facts.is_ci, facts.dim_n, facts.singular_dim(), fpig).note(format!(
                "normality from the codimension of the rank-deficient locus of the moment map; {FPIG_NOTE}"
            ))
        }
        PremiseSource::SliceProperties => premise_from_slice_properties(&quantities),
    };
    run.fact("criteria.premise", premise.status);
    run.push(Record::from_verdict("criteria.premise", &premise));
    let cifr = irrelevance_verdict(&premise, &evidence);
    for (k, entry) in slices.iter().enumerate() {
        let name = slice_name(&entry.quantities, k);
        if let Some(route) = cifr.witnesses.get(&name) {
            run.fact(format!("slice.{name}.route"), route);
        }
    }
    run.fact("criteria.cifr", cifr.status);
    run.push(Record::from_verdict("criteria.cifr", &cifr));
    Ok(())
}

/// Shell and slice data for the criteria of a module spec.
pub fn module_criteria(
    run: &mut Run,
    spec: &ModuleSpecFile,
    s: &ShellSystem,
    facts: &ShellFacts,
    e: Engine,
) -> Result<(), CliError> {
    let a = &s.action;
    let (slices, ms) = run.timer.time(|| module_slices(spec, a, e));
    let slices = slices?;
    run.push(
        Record::new(
            "criteria.slices",
            "closed orbits with positive-dimensional isotropy considered",
            RecordStatus::Info,
        )
        .result(slices.iter().map(|s| s.quantities.label.clone()).collect::<Vec<_>>())
        .with_runtime(ms),
    );
    criteria_section(
        run,
        &slices,
        &spec.codim,
        PremiseSource::Shell {
            facts,
            fpig: shell_fpig(spec, a),
        },
    )
}

/// Verdict status of a named fact, for tests and summaries.
pub fn fact_status(facts: &BTreeMap<String, Value>, key: &str) -> Option<Status> {
    facts.get(key).and_then(|v| serde_json::from_value(v.clone()).ok())
}
