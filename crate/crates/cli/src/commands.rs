//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use momentshell_core::repmodel::{GroupDescriptor, GroupFactor};
use momentshell_core::repvar::{probe, tangent_cone_model, SolverOptions, WordMap, JACOBIAN_AGREEMENT};
use momentshell_core::shell::{jet_generators, moment_generators};
use serde_json::json;

use crate::error::CliError;
use crate::pipeline::{
    criteria_section, jet_section, module_criteria, shell_facts, shell_section, torus_section, PremiseSource, Run,
    SliceEntry, TorusQuery,
};
use crate::report::{to_value, Record, RecordStatus, Report, Timer};
use crate::specfile::{CriteriaInput, ModuleSpecFile};

const REPVAR_DIMENSION: &str =
    "Hom(pi_1 of a closed genus-p surface, G) has dimension (2p - 1) dim G: local dimension from the numerical rank of the word-map Jacobian";
const REPVAR_IDENTITY: &str = "the trivial representation is a singular point: the Jacobian vanishes at the identity";
const TANGENT_CONE: &str =
    "local model at a representation with isotropy algebra h: shell of p h + (p-1) g/h times a smooth factor g/h";

fn write_export(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Shell dimension, complete intersection, rank strata and 1-modularity.
pub fn cmd_shell(spec: &ModuleSpecFile, timer: Timer, export: Option<&Path>) -> Result<Report, CliError> {
    let e = spec.options.engine()?;
    let s = moment_generators(&spec.action()?);
    if let Some(path) = export {
        write_export(path, &s.export())?;
    }
    let mut run = Run::new(timer);
    shell_section(&mut run, &s, e)?;
    Ok(Report::new("shell", to_value(spec), run.records))
}

/// The Mustață inequality and the fibre over the origin at each level.
pub fn cmd_jet(
    spec: &ModuleSpecFile,
    levels: &[usize],
    timer: Timer,
    export: Option<&Path>,
) -> Result<Report, CliError> {
    if levels.is_empty() || levels.contains(&0) {
        return Err(CliError::Input("jet levels must be at least 1".to_string()));
    }
    let e = spec.options.engine()?;
    let s = moment_generators(&spec.action()?);
    if let Some(path) = export {
        let top = *levels.iter().max().expect("levels is nonempty");
        write_export(path, &jet_generators(&s, top).export())?;
    }
    let mut run = Run::new(timer);
    jet_section(&mut run, &s, levels, e)?;
    let mut input = to_value(spec);
    input["levels"] = json!(levels);
    Ok(Report::new("jet", input, run.records))
}

pub fn cmd_torus(spec: &ModuleSpecFile, query: TorusQuery, timer: Timer) -> Result<Report, CliError> {
    let a = spec.action()?;
    let mut run = Run::new(timer);
    torus_section(&mut run, &a, query)?;
    let name = match query {
        TorusQuery::M0 => "torus m0",
        TorusQuery::Modularity => "torus modularity",
        TorusQuery::Stability => "torus stability",
        TorusQuery::Slices => "torus slices",
    };
    Ok(Report::new(name, to_value(spec), run.records))
}

/// Slice criteria from a module spec (slices computed or listed) or a slice file.
pub fn cmd_criteria(input: &CriteriaInput, timer: Timer) -> Result<Report, CliError> {
    let mut run = Run::new(timer);
    let echo = match input {
        CriteriaInput::Module(spec) => {
            let e = spec.options.engine()?;
            let s = moment_generators(&spec.action()?);
            let (facts, ms) = run.timer.time(|| shell_facts(&s, e));
            let facts = facts?;
            run.push(
                Record::new(
                    "criteria.shell",
                    "shell dimension and rank-deficient locus used by the premise",
                    RecordStatus::Info,
                )
                .result(
                    json!({ "dim_N": facts.dim_n, "complete_intersection": facts.is_ci, "rank_strata": facts.strata }),
                )
                .with_runtime(ms),
            );
            module_criteria(&mut run, spec, &s, &facts, e)?;
            to_value(spec)
        }
        CriteriaInput::Slices(file) => {
            let slices: Vec<SliceEntry> = file
                .slices
                .iter()
                .map(|q| SliceEntry {
                    quantities: q.clone(),
                    w0: None,
                })
                .collect();
            criteria_section(&mut run, &slices, &file.codim, PremiseSource::SliceProperties)?;
            to_value(file)
        }
    };
    Ok(Report::new("criteria", echo, run.records))
}

/// Arguments of the numeric representation-variety probe.
#[derive(Clone, Debug)]
pub struct RepVarArgs {
    pub genus: usize,
    pub group: String,
    pub samples: usize,
    pub seed: u64,
}

fn parse_group(name: &str) -> Result<GroupDescriptor, CliError> {
    let lower = name.to_ascii_lowercase();
    let n = lower
        .strip_prefix("sl")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| CliError::Input(format!("unsupported group `{name}`, expected slN such as sl2")))?;
    Ok(GroupDescriptor::new(vec![GroupFactor::Sl { n }])?)
}

/// Seeded sampling of `Hom(π, G)` with local dimensions from Jacobian ranks.
pub fn cmd_repvar(args: &RepVarArgs, timer: Timer) -> Result<Report, CliError> {
    let g = parse_group(&args.group)?;
    let wm = WordMap::new(args.genus, g.clone())?;
    let opts = SolverOptions::default();
    let (report, ms) = timer.time(|| probe(&wm, args.samples, args.seed, &opts));
    let report = report?;
    let successes = report.successes(opts.tol);
    let mut records = vec![Record::new(
        "repvar.local_dimension",
        REPVAR_DIMENSION,
        if successes == args.samples {
            RecordStatus::Match
        } else {
            RecordStatus::Mismatch
        },
    )
    .input("genus", args.genus)
    .input("group", &report.group)
    .input("seed", args.seed)
    .input("samples", args.samples)
    .input("residual_tolerance", opts.tol)
    .input("jacobian_agreement", JACOBIAN_AGREEMENT)
    .result(json!({
        "expected_dim": report.expected_dim,
        "successes": successes,
        "samples": report.samples,
    }))
    .with_runtime(ms)];
    let id = &report.identity;
    records.push(
        Record::new(
            "repvar.identity",
            REPVAR_IDENTITY,
            if id.singular {
                RecordStatus::Holds
            } else {
                RecordStatus::Fails
            },
        )
        .result(json!({ "rank": id.rank, "tangent_dim": id.dim, "singular": id.singular })),
    );
    for dim_h in [g.dim(), g.rank()] {
        let model = tangent_cone_model(args.genus, dim_h, &g)?;
        records.push(
            Record::new(
                format!("repvar.tangent_cone.dim_h{dim_h}"),
                TANGENT_CONE,
                RecordStatus::Info,
            )
            .input("dim_h", dim_h)
            .result(model),
        );
    }
    let input = json!({
        "genus": args.genus,
        "group": args.group,
        "samples": args.samples,
        "seed": args.seed,
    });
    Ok(Report::new("repvar", input, records))
}
