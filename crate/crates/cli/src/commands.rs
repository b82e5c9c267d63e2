use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use wsp_core::bench::{
    self, algorithm_observations, best_known_all, performance_profiles, read_records, relative_deviation, sm_scores,
    BenchPlan, RunOptions,
};
use wsp_core::generator::{generate_instance, GeneratorConfig};
use wsp_core::io::{instance_id, read_instance, write_instance, SolutionFile};
use wsp_core::mip::{build_hof_model, build_wei_model, build_wsp_model, export_model, AuxData, ModelFormat};
use wsp_core::reductions::{mvnp_to_hwsp, mvnp_to_wsp, mvnp_to_wwsp, verify_reductions, MvnpInstance};
use wsp_core::rothermel::{self, FuelConstants, SpreadCase, SpreadParams, WindWiring};
use wsp_core::solvers::{beam_search, brute_force, random_search, BeamConfig, BruteForceLimits, SolverBudget};
use wsp_core::{check_feasibility, objective, WspError};

use crate::{
    Algo, BenchArgs, Command, EvaluateArgs, ExportArgs, Failure, FormatArg, GenerateArgs, ModelKind, PhysicsArgs,
    PhysicsCommand, ReduceArgs, ReduceTo, ReportArgs, SolveArgs, VerifyArgs,
};

type CmdResult = Result<(), Failure>;

pub(crate) fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Evaluate(a) => evaluate(a),
        Command::ExportMip(a) => export_mip(a),
        Command::Reduce(a) => reduce(a),
        Command::VerifyReductions(a) => verify(a),
        Command::Bench(a) => run_bench(a),
        Command::Report(a) => report(a),
        Command::Physics { command: PhysicsCommand::Eval(a) } => physics(a),
    }
}

/// Refuses to overwrite an input file.
fn distinct(input: &Path, output: &Path) -> CmdResult {
    let same = match (fs::canonicalize(input), fs::canonicalize(output)) {
        (Ok(a), Ok(b)) => a == b,
        _ => input == output,
    };
    if same {
        return Err(Failure::Usage(format!("output {} would overwrite an input file", output.display())));
    }
    Ok(())
}

fn print_json(value: &impl Serialize) -> CmdResult {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_json(path: &Path, value: &impl Serialize) -> CmdResult {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn generate(a: GenerateArgs) -> CmdResult {
    let cfg = GeneratorConfig {
        seed: a.seed,
        n: a.side.unwrap_or(a.grid.side()),
        extent_ft: a.extent_ft,
        slope: a.slope,
        wind: a.wind,
        wind_direction: a.wind_direction,
        decision_points: a.decisions,
        resources: a.resources,
        delay: a.delay,
        first_release: a.first_release,
        last_release: a.last_release,
        ..GeneratorConfig::default()
    };
    cfg.validate()?;
    let inst = generate_instance(&cfg)?;
    write_instance(&a.output, &inst)?;
    eprintln!(
        "wrote {} ({} vertices, {} resources, H = {} min)",
        a.output.display(),
        inst.vertex_count(),
        inst.total_resources(),
        inst.horizon()
    );
    Ok(())
}

fn solve(a: SolveArgs) -> CmdResult {
    if let Some(out) = &a.output {
        distinct(&a.input, out)?;
    }
    // Flags are checked before any file is read or written.
    let explicit_budget = match (a.time_limit, a.iterations) {
        (None, None) => None,
        (t, i) => Some(SolverBudget::new(t, i)?),
    };
    let inst = read_instance(&a.input)?;
    let res = match a.algo {
        Algo::Rs => {
            let budget = match explicit_budget {
                Some(b) => b,
                None => SolverBudget::seconds(bench::design::SECONDS_PER_CELL * inst.vertex_count() as f64)?,
            };
            random_search(&inst, &budget, a.seed)?
        }
        Algo::Beam => {
            let cfg = BeamConfig {
                width: (a.beam_width > 0).then_some(a.beam_width),
                expansions: (a.expansions > 0).then_some(a.expansions),
                seed: a.seed,
            };
            beam_search(&inst, &cfg)?
        }
        Algo::Exact => brute_force(&inst, &BruteForceLimits { max_nodes: a.max_nodes })?,
    };
    let sol = SolutionFile::new(&inst, &res.allocation, res.objective);
    match &a.output {
        Some(path) => sol.write(path)?,
        None => print_json(&sol)?,
    }
    eprintln!("objective {} ({} iterations, {:.3} s)", res.objective, res.iterations, res.elapsed_secs);
    Ok(())
}

fn evaluate(a: EvaluateArgs) -> CmdResult {
    let inst = read_instance(&a.input)?;
    let sol = SolutionFile::read(&a.solution)?;
    let id = instance_id(&inst);
    if sol.instance_id != id {
        return Err(Failure::Check(format!("solution is for instance {}, not {id}", sol.instance_id)));
    }
    let alloc = sol.allocation();
    let violations = check_feasibility(&inst, &alloc);
    let z = if violations.is_empty() { Some(objective(&inst, &alloc)?) } else { None };
    print_json(&json!({
        "instance_id": id,
        "feasible": violations.is_empty(),
        "objective": z,
        "recorded_objective": sol.objective,
        "violations": violations,
    }))?;
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Check(format!("infeasible allocation: {}", list.join("; "))));
    }
    if z != Some(sol.objective) {
        return Err(Failure::Check(format!(
            "recorded objective {} differs from evaluated objective {}",
            sol.objective,
            z.unwrap()
        )));
    }
    Ok(())
}

fn export_mip(a: ExportArgs) -> CmdResult {
    distinct(&a.input, &a.output)?;
    if let Some(aux) = &a.aux {
        distinct(aux, &a.output)?;
    }
    let inst = read_instance(&a.input)?;
    let aux: AuxData = match &a.aux {
        Some(p) => serde_json::from_str(&fs::read_to_string(p)?)?,
        None => AuxData::default(),
    };
    let n = inst.vertex_count();
    let model = match a.model {
        ModelKind::Wsp => build_wsp_model(&inst)?,
        ModelKind::Hof => {
            let targets = aux.targets.ok_or_else(|| WspError::Structural("hof model needs 'targets' in --aux".into()))?;
            let beta = aux.beta.ok_or_else(|| WspError::Structural("hof model needs 'beta' in --aux".into()))?;
            let alpha = aux.alpha.unwrap_or_else(|| vec![inst.delay(); n]);
            let budget = aux.budget.unwrap_or(inst.total_resources() as f64);
            build_hof_model(inst.graph(), inst.ignition(), &targets, &alpha, &beta, budget, aux.integral)?
        }
        ModelKind::Wei => {
            let weights = aux.weights.unwrap_or_else(|| vec![1.0; n]);
            let flame = aux.flame_lengths.unwrap_or_else(|| vec![0.0; n]);
            let k = match aux.budget {
                Some(b) if b >= 0.0 && b.fract() == 0.0 => b as usize,
                Some(b) => return Err(WspError::Domain(format!("wei budget must be a whole number, got {b}")).into()),
                None => inst.total_resources(),
            };
            build_wei_model(&inst, &weights, &flame, aux.flame_threshold, k)?
        }
    };
    let format = match a.format {
        FormatArg::Lp => ModelFormat::Lp,
        FormatArg::Mps => ModelFormat::Mps,
    };
    fs::write(&a.output, export_model(&model, format)?)?;
    eprintln!(
        "wrote {} ({} variables, {} constraints)",
        a.output.display(),
        model.variables().len(),
        model.constraints().len()
    );
    Ok(())
}

fn reduce(a: ReduceArgs) -> CmdResult {
    distinct(&a.input, &a.output)?;
    let mvnp: MvnpInstance = serde_json::from_str(&fs::read_to_string(&a.input)?)?;
    match a.to {
        ReduceTo::Wsp => {
            let red = mvnp_to_wsp(&mvnp)?;
            let mut inst = red.instance;
            inst.meta = json!({
                "reduction": {"from": "mvnp", "budget": red.budget, "vertex_map": red.vertex_map}
            });
            write_instance(&a.output, &inst)?;
        }
        ReduceTo::Wwsp => {
            let (inst, budget) = mvnp_to_wwsp(&mvnp);
            write_json(&a.output, &json!({"instance": inst, "budget": budget}))?;
        }
        ReduceTo::Hwsp => {
            let (inst, threshold) = mvnp_to_hwsp(&mvnp)?;
            write_json(&a.output, &json!({"instance": inst, "threshold": threshold}))?;
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> CmdResult {
    let report = verify_reductions(a.samples, a.max_vertices, a.seed, a.cap)?;
    print_json(&json!({"passed": report.passed(), "report": report}))?;
    if !report.passed() {
        return Err(Failure::Check(format!("reductions disagree on samples {:?}", report.mismatches)));
    }
    Ok(())
}

fn run_bench(a: BenchArgs) -> CmdResult {
    if a.workers == Some(0) {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    let plan = BenchPlan::from_file(&a.plan)?;
    plan.validate()?;
    distinct(&a.plan, &a.out)?;
    for p in &plan.instances {
        distinct(p, &a.out)?;
    }
    let records = bench::run_benchmark(&plan, Some(&a.out), &RunOptions { workers: a.workers, max_new_cells: None })?;
    let failed = records.iter().filter(|r| r.status != bench::RunStatus::Ok).count();
    eprintln!("{} records in {} ({failed} not ok)", records.len(), a.out.display());
    Ok(())
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, Failure> {
    csv::Writer::from_path(path).map_err(|e| Failure::Core(e.into()))
}

fn report(a: ReportArgs) -> CmdResult {
    if !(a.delta.is_finite() && a.delta >= 0.0) {
        return Err(Failure::Usage(format!("--delta must be nonnegative, got {}", a.delta)));
    }
    for out in [&a.profiles, &a.sm, &a.sm_pairs, &a.deviations].into_iter().flatten() {
        distinct(&a.records, out)?;
    }
    let records = read_records(&a.records)?;
    let csv_err = |e: csv::Error| Failure::Core(e.into());

    let profiles = performance_profiles(&records)?;
    if let Some(path) = &a.profiles {
        let mut w = csv_writer(path)?;
        w.write_record(["algorithm", "tau", "fraction"]).map_err(csv_err)?;
        for c in &profiles.curves {
            for (tau, p) in &c.breakpoints {
                w.write_record([c.algorithm.clone(), tau.to_string(), p.to_string()]).map_err(csv_err)?;
            }
        }
        w.flush()?;
    }

    let (bkv, missing) = best_known_all(&records);
    if let Some(path) = &a.deviations {
        let mut w = csv_writer(path)?;
        w.write_record(["instance", "algorithm", "seed", "objective", "bkv", "relative_deviation"]).map_err(csv_err)?;
        for r in &records {
            if let Some(z) = r.ok_objective() {
                let b = bkv[&r.instance];
                let dev = relative_deviation(z, b)?;
                w.write_record([
                    r.instance.clone(),
                    r.algorithm.clone(),
                    r.seed.to_string(),
                    z.to_string(),
                    b.to_string(),
                    dev.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
        w.flush()?;
    }

    let sm = if a.sm.is_some() || a.sm_pairs.is_some() {
        Some(sm_scores(&algorithm_observations(&records), a.delta)?)
    } else {
        None
    };
    if let (Some(path), Some(s)) = (&a.sm, &sm) {
        let mut w = csv_writer(path)?;
        w.write_record(["treatment", "score"]).map_err(csv_err)?;
        for (t, score) in s.treatments.iter().zip(&s.scores) {
            w.write_record([t.clone(), score.to_string()]).map_err(csv_err)?;
        }
        w.flush()?;
    }
    if let (Some(path), Some(s)) = (&a.sm_pairs, &sm) {
        let mut w = csv_writer(path)?;
        w.write_record(["first", "second", "difference", "significant"]).map_err(csv_err)?;
        for p in &s.pairs {
            w.write_record([p.first.clone(), p.second.clone(), p.difference.to_string(), p.significant.to_string()])
                .map_err(csv_err)?;
        }
        w.flush()?;
    }

    print_json(&json!({
        "records": records.len(),
        "instances": profiles.instances.len(),
        "excluded_instances": missing,
        "algorithms": profiles.curves.iter().map(|c| &c.algorithm).collect::<Vec<_>>(),
        "sm_scores": sm.as_ref().map(|s| s.treatments.iter().zip(&s.scores).collect::<Vec<_>>()),
        "significant_pairs": sm.as_ref().map(|s| s.pairs.iter().filter(|p| p.significant).count()),
    }))
}

fn physics(a: PhysicsArgs) -> CmdResult {
    let wiring = match a.wiring.to_ascii_lowercase().as_str() {
        "published" => WindWiring::Published,
        "classic" => WindWiring::Classic,
        other => return Err(Failure::Usage(format!("unknown wiring '{other}' (expected published or classic)"))),
    };
    let c = FuelConstants { wiring, ..FuelConstants::default() };
    let p = SpreadParams::new(a.beta, a.sigma, a.beta_rel)?;
    let phi_s = rothermel::slope_factor(a.slope, a.beta, &c)?;
    let phi_w = rothermel::wind_factor(a.wind.abs(), &p, &c)?;
    let r = rothermel::albini_multiplier(a.wind, a.slope, &c, &p);
    let case = match SpreadCase::classify(a.wind, a.slope) {
        SpreadCase::UpslopeHeadfire => "upslope_headfire",
        SpreadCase::DownslopeHeadfire => "downslope_headfire",
        SpreadCase::UpslopeBackfire => "upslope_backfire",
        SpreadCase::DownslopeBackfire => "downslope_backfire",
    };
    let rate = a.r0.map(|r0| rothermel::rate_of_spread(r0, a.wind, a.slope, &c, &p)).transpose()?;
    let travel = match (a.distance, rate, a.rate_head) {
        (Some(d), Some(tail), Some(head)) => Some(rothermel::travel_time(d, tail, head)?),
        _ => None,
    };
    print_json(&json!({
        "phi_s": phi_s,
        "phi_w": phi_w,
        "case": case,
        "r": r,
        "rate_ft_per_min": rate,
        "travel_time_min": travel,
    }))
}
