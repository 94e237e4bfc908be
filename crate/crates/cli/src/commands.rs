use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use aging_arcsine::io::{
    read_header_block, read_samples_csv, theory_table, write_header_block, write_samples_csv,
    write_theory_csv,
};
use aging_arcsine::simulate::{
    run_ensemble, with_workers, BrownianConfig, Ensemble, MapConfig, RenewalConfig, WindowSpec,
};
use aging_arcsine::stats::{
    build_empirical, ks_against, CompareOptions, BROWNIAN_ALLOWANCE, DEFAULT_DELTA,
};
use aging_arcsine::{AgingRatio, AsymmetryParams, Law, MapParams, QuadratureConfig, TailIndex};
use clap::Parser;

use crate::config::Resolver;
use crate::error::CliError;
use crate::manifest::{sidecar_path, RunManifest};
use crate::{
    Cli, Command, CompareArgs, Context, LawArgs, RerunArgs, SimModel, SimulateArgs, TheoryArgs,
    TheoryModel,
};

/// Resolved argument list that replays a run: subcommand, positionals, then
/// every resolved setting as `--key value`.
pub fn command_line(
    sub: &str,
    positional: &[String],
    resolved: &[(String, String)],
) -> Vec<String> {
    let mut cmd = vec![sub.to_string()];
    cmd.extend(positional.iter().cloned());
    for (k, v) in resolved {
        if k != "model" && k != "figure" {
            cmd.push(format!("--{k}"));
            cmd.push(v.clone());
        }
    }
    cmd
}

fn reject_unused(model: &str, present: &[(&str, bool)]) -> Result<(), CliError> {
    for (name, given) in present {
        if *given {
            return Err(CliError::Usage(format!(
                "--{name} does not apply to model {model}"
            )));
        }
    }
    Ok(())
}

fn asymmetry(res: &mut Resolver, law: &LawArgs) -> Result<AsymmetryParams, CliError> {
    let beta = res.get("beta", law.beta)?;
    let p_plus = res.get("p-plus", law.p_plus)?;
    Ok(match (beta, p_plus) {
        (Some(b), Some(p)) => AsymmetryParams::new(b, p)?,
        (Some(b), None) => AsymmetryParams::from_beta(b)?,
        (None, Some(p)) => AsymmetryParams::from_p_plus(p)?,
        (None, None) => AsymmetryParams::SYMMETRIC,
    })
}

pub fn resolve_law(res: &mut Resolver, model: TheoryModel, law: &LawArgs) -> Result<Law, CliError> {
    let name = model.to_string();
    Ok(match model {
        TheoryModel::Arcsine => {
            reject_unused(
                &name,
                &[
                    ("alpha", law.alpha.is_some()),
                    ("beta", law.beta.is_some()),
                    ("p-plus", law.p_plus.is_some()),
                    ("r", law.r.is_some()),
                ],
            )?;
            Law::Arcsine
        }
        TheoryModel::Lamperti => {
            reject_unused(&name, &[("r", law.r.is_some())])?;
            let alpha = TailIndex::new(res.require("alpha", law.alpha)?)?;
            Law::Lamperti {
                alpha,
                asym: asymmetry(res, law)?,
            }
        }
        TheoryModel::AgingArcsine => {
            reject_unused(
                &name,
                &[
                    ("alpha", law.alpha.is_some()),
                    ("beta", law.beta.is_some()),
                    ("p-plus", law.p_plus.is_some()),
                ],
            )?;
            Law::AgingArcsine {
                r: AgingRatio::positive(res.require("r", law.r)?)?,
            }
        }
        TheoryModel::AgingLamperti => {
            let alpha = TailIndex::new(res.require("alpha", law.alpha)?)?;
            let asym = asymmetry(res, law)?;
            Law::AgingLamperti {
                alpha,
                asym,
                r: AgingRatio::positive(res.require("r", law.r)?)?,
            }
        }
    })
}

pub fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let f = File::create(path)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
    Ok(BufWriter::new(f))
}

pub fn theory(args: &TheoryArgs, ctx: Context) -> Result<(), CliError> {
    let start = Instant::now();
    let mut res = Resolver::new(ctx.file);
    let model: TheoryModel = res.require("model", args.model)?;
    let law = resolve_law(&mut res, model, &args.law)?;
    let grid = res.or("grid", args.grid, 101)?;
    let out = res.or("out", ctx.out, format!("theory_{model}.csv"))?;
    let resolved = res.finish()?;

    let cfg = QuadratureConfig::default();
    let table = with_workers(ctx.workers, || {
        let theory = law.theoretical_cdf(&cfg)?;
        theory_table(&theory, grid, &cfg)
    })??;
    let out = PathBuf::from(out);
    let mut w = create(&out)?;
    write_theory_csv(&mut w, &table)?;
    w.flush()?;

    let mut m = RunManifest::new(
        "theory",
        command_line("theory", &[model.to_string()], &resolved),
        &resolved,
    );
    m.outputs.push(out.clone());
    m.wall_time_s = start.elapsed().as_secs_f64();
    m.write(&sidecar_path(&out))?;
    eprintln!(
        "wrote {} ({grid} rows, atoms {} / {})",
        out.display(),
        table.atom_at_0,
        table.atom_at_1
    );
    Ok(())
}

/// A simulation model with its atom snapping tolerance.
pub struct Simulation {
    pub ensemble: Ensemble,
    pub atom_tol: f64,
}

pub fn simulate_model(
    res: &mut Resolver,
    model: SimModel,
    args: &SimulateArgs,
    workers: usize,
    seed: u64,
) -> Result<Simulation, CliError> {
    let tm: f64 = res.require("tm", args.tm)?;
    let r: f64 = res.require("r", args.r)?;
    let n: usize = res.require("n", args.n)?;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let ratio = AgingRatio::new(r)?;
    let name = model.to_string();
    match model {
        SimModel::Bm => {
            reject_unused(
                &name,
                &[
                    ("alpha", args.alpha.is_some()),
                    ("c", args.c.is_some()),
                    ("tau-plus", args.tau_plus.is_some()),
                    ("tau-minus", args.tau_minus.is_some()),
                ],
            )?;
            let steps = res.or("window-steps", args.window_steps, 10_000)?;
            let cfg =
                BrownianConfig::with_window_steps(WindowSpec::from_ratio(ratio.get(), tm)?, steps)?;
            let ensemble = with_workers(workers, || run_ensemble(&cfg, n, seed))??;
            Ok(Simulation {
                ensemble,
                atom_tol: cfg.atom_tolerance(),
            })
        }
        SimModel::Renewal => {
            reject_unused(
                &name,
                &[
                    ("c", args.c.is_some()),
                    ("window-steps", args.window_steps.is_some()),
                ],
            )?;
            let alpha = TailIndex::new(res.require("alpha", args.alpha)?)?;
            let tp = res.or("tau-plus", args.tau_plus, 1.0)?;
            let tmn = res.or("tau-minus", args.tau_minus, 1.0)?;
            let cfg = RenewalConfig::new(alpha, tp, tmn, WindowSpec::from_ratio(ratio.get(), tm)?)?;
            let ensemble = with_workers(workers, || run_ensemble(&cfg, n, seed))??;
            Ok(Simulation {
                ensemble,
                atom_tol: 0.0,
            })
        }
        SimModel::Map => {
            reject_unused(
                &name,
                &[
                    ("tau-plus", args.tau_plus.is_some()),
                    ("tau-minus", args.tau_minus.is_some()),
                    ("window-steps", args.window_steps.is_some()),
                ],
            )?;
            let alpha = TailIndex::new(res.require("alpha", args.alpha)?)?;
            let c = res.require("c", args.c)?;
            if !(tm >= 1.0 && tm.fract() == 0.0 && tm <= u64::MAX as f64) {
                return Err(CliError::Usage(format!(
                    "map --tm must be a positive integer, got {tm}"
                )));
            }
            let cfg = MapConfig::from_ratio(MapParams::new(c, alpha)?, ratio, tm as u64)?;
            let ensemble = with_workers(workers, || run_ensemble(&cfg, n, seed))??;
            Ok(Simulation {
                ensemble,
                atom_tol: 0.0,
            })
        }
    }
}

pub fn write_samples(path: &Path, sim: &Simulation) -> Result<(), CliError> {
    let mut w = create(path)?;
    write_header_block(
        &mut w,
        &[
            ("model", sim.ensemble.model.as_str().to_string()),
            ("master_seed", sim.ensemble.master_seed.to_string()),
            ("atom_tol", sim.atom_tol.to_string()),
            ("absorbed", sim.ensemble.absorbed.to_string()),
        ],
    )?;
    write_samples_csv(&mut w, &sim.ensemble.samples)?;
    w.flush()?;
    Ok(())
}

pub fn simulate(args: &SimulateArgs, ctx: Context) -> Result<(), CliError> {
    let start = Instant::now();
    let mut res = Resolver::new(ctx.file);
    let model: SimModel = res.require("model", args.model)?;
    let seed = res.or("seed", ctx.seed, 1)?;
    let sim = simulate_model(&mut res, model, args, ctx.workers, seed)?;
    let out = PathBuf::from(res.or("out", ctx.out, format!("samples_{model}.csv"))?);
    let resolved = res.finish()?;

    write_samples(&out, &sim)?;
    let mut m = RunManifest::new(
        "simulate",
        command_line("simulate", &[model.to_string()], &resolved),
        &resolved,
    );
    m.seed = Some(seed);
    m.outputs.push(out.clone());
    m.absorbed = Some(sim.ensemble.absorbed);
    m.wall_time_s = start.elapsed().as_secs_f64();
    m.write(&sidecar_path(&out))?;
    eprintln!(
        "wrote {} ({} samples, {} absorbed attempts)",
        out.display(),
        sim.ensemble.samples.len(),
        sim.ensemble.absorbed
    );
    Ok(())
}

pub fn compare(args: &CompareArgs, ctx: Context) -> Result<(), CliError> {
    let start = Instant::now();
    let mut res = Resolver::new(ctx.file);
    let model: TheoryModel = res.require("model", args.model)?;
    let law = resolve_law(&mut res, model, &args.law)?;
    let samples_path = PathBuf::from(res.require::<String>("samples", args.samples.clone())?);

    let header: std::collections::BTreeMap<String, String> = read_header_block(&samples_path)
        .map_err(|e| {
            CliError::Usage(format!(
                "cannot read samples {}: {e}",
                samples_path.display()
            ))
        })?
        .into_iter()
        .collect();
    let rows = read_samples_csv(&samples_path).map_err(|e| CliError::Usage(e.to_string()))?;
    let samples_model = header.get("model").cloned();
    let default_tol = header
        .get("atom_tol")
        .and_then(|v| v.parse().ok())
        .unwrap_or(0.0);
    let default_allowance = if samples_model.as_deref() == Some("bm") {
        BROWNIAN_ALLOWANCE
    } else {
        0.0
    };
    let delta = res.or("delta", args.delta, DEFAULT_DELTA)?;
    let allowance = res.or("allowance", args.allowance, default_allowance)?;
    let atom_tol = res.or("atom-tol", args.atom_tol, default_tol)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(CliError::Usage(format!(
            "--delta must lie in (0, 1), got {delta}"
        )));
    }
    if allowance.is_nan() || allowance < 0.0 {
        return Err(CliError::Usage(format!(
            "--allowance must be >= 0, got {allowance}"
        )));
    }
    let out = PathBuf::from(res.or("out", ctx.out, "report.json".to_string())?);
    let resolved = res.finish()?;

    let cfg = QuadratureConfig::default();
    let theory = with_workers(ctx.workers, || law.theoretical_cdf(&cfg))??;
    let fractions: Vec<f64> = rows.iter().map(|r| r.fraction).collect();
    let emp = build_empirical(&fractions, atom_tol)?;
    let mut report = ks_against(
        &emp,
        &theory,
        CompareOptions {
            delta,
            model_allowance: allowance,
        },
    );

    // Provenance: the samples manifest if present, else the CSV header.
    let manifest_path = sidecar_path(&samples_path);
    let samples_seed = if manifest_path.exists() {
        RunManifest::read(&manifest_path)?.seed
    } else {
        header.get("master_seed").and_then(|v| v.parse().ok())
    };
    report
        .metadata
        .insert("samples".into(), samples_path.display().to_string().into());
    report
        .metadata
        .insert("samples_seed".into(), samples_seed.into());
    report
        .metadata
        .insert("samples_model".into(), samples_model.into());
    report.metadata.insert("atom_tol".into(), atom_tol.into());

    let mut w = create(&out)?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    w.flush()?;

    let mut m = RunManifest::new(
        "compare",
        command_line("compare", &[model.to_string()], &resolved),
        &resolved,
    );
    m.seed = samples_seed;
    m.outputs.push(out.clone());
    m.wall_time_s = start.elapsed().as_secs_f64();
    m.write(&sidecar_path(&out))?;
    println!(
        "{}: KS {:.5} vs threshold {:.5} (n = {}); atoms {:.4}/{:.4} vs {:.4}/{:.4}",
        if report.pass { "PASS" } else { "FAIL" },
        report.ks_distance,
        report.threshold(),
        report.n,
        report.atom_at_0.empirical,
        report.atom_at_1.empirical,
        report.atom_at_0.theory,
        report.atom_at_1.theory,
    );
    Ok(())
}

pub fn rerun(args: &RerunArgs, ctx: Context) -> Result<(), CliError> {
    let manifest = RunManifest::read(&args.manifest)?;
    let mut argv = vec!["aging-lab".to_string()];
    let mut cmd = manifest.command.clone();
    if let Some(out) = ctx.out {
        match cmd.iter().position(|a| a == "--out") {
            Some(i) if i + 1 < cmd.len() => cmd[i + 1] = out,
            _ => cmd.extend(["--out".to_string(), out]),
        }
    }
    argv.extend(cmd);
    argv.extend(["--workers".to_string(), ctx.workers.to_string()]);
    let cli = Cli::try_parse_from(&argv)
        .map_err(|e| CliError::Usage(format!("manifest command does not parse: {e}")))?;
    if matches!(cli.command, Command::Rerun(_)) {
        return Err(CliError::Usage("a manifest cannot replay `rerun`".into()));
    }
    crate::run(cli)
}
