//! Figure bundles: per aging ratio, a samples file, an empirical histogram,
//! a theory table and a comparison report, plus one manifest.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use aging_arcsine::analytic::beta_of_map;
use aging_arcsine::io::{theory_table, write_histogram_csv, write_theory_csv};
use aging_arcsine::simulate::with_workers;
use aging_arcsine::stats::{build_empirical, histogram, ks_against, CompareOptions, DEFAULT_DELTA};
use aging_arcsine::{AgingRatio, AsymmetryParams, Law, MapParams, QuadratureConfig, TailIndex};

use crate::commands::{command_line, create, simulate_model, write_samples};
use crate::config::{parse_settings, Resolver};
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::{Context, Figure, ReproduceArgs, SimModel, SimulateArgs};

const FIG2: &str = include_str!("../presets/fig2.conf");
const FIG3A: &str = include_str!("../presets/fig3a.conf");
const FIG3B: &str = include_str!("../presets/fig3b.conf");

fn preset(figure: Figure) -> Result<BTreeMap<String, String>, CliError> {
    let text = match figure {
        Figure::Fig2 => FIG2,
        Figure::Fig3a => FIG3A,
        Figure::Fig3b => FIG3B,
    };
    parse_settings(text, &format!("preset {figure}"))
}

/// File-name fragment for an aging ratio.
fn tag(r: f64) -> String {
    format!("r{r}")
}

pub fn reproduce(args: &ReproduceArgs, ctx: Context) -> Result<(), CliError> {
    let start = Instant::now();
    let figure = args.figure;
    let mut settings = preset(figure)?;
    let model: SimModel = settings
        .remove("model")
        .expect("presets name a model")
        .parse()
        .map_err(CliError::Usage)?;
    if ctx.file.contains_key("model") {
        return Err(CliError::Usage(format!(
            "the model of {figure} is fixed by its preset"
        )));
    }
    settings.extend(ctx.file);

    let mut res = Resolver::new(settings);
    let tm: f64 = res.require("tm", args.tm)?;
    let ratios: Vec<f64> = res
        .list("r", args.r.clone())?
        .ok_or_else(|| CliError::Usage("missing aging ratios --r".into()))?;
    let n: usize = res.require("n", args.n)?;
    let seed: u64 = res.require("seed", ctx.seed)?;
    let bins: usize = res.require("bins", args.bins)?;
    let grid: usize = res.require("grid", args.grid)?;
    let delta = res.or("delta", args.delta, DEFAULT_DELTA)?;
    let allowance: f64 = res.require("allowance", args.allowance)?;
    let (alpha, c, window_steps) = match model {
        SimModel::Map => (
            Some(res.require("alpha", args.alpha)?),
            Some(res.require("c", args.c)?),
            None,
        ),
        SimModel::Bm => (
            None,
            None,
            Some(res.require("window-steps", args.window_steps)?),
        ),
        SimModel::Renewal => unreachable!("no renewal presets"),
    };
    let out_dir = PathBuf::from(res.or("out", ctx.out, figure.to_string())?);
    let resolved = res.finish()?;
    if ratios.is_empty() {
        return Err(CliError::Usage("--r needs at least one aging ratio".into()));
    }

    let mut m = RunManifest::new(
        "reproduce",
        command_line("reproduce", &[figure.to_string()], &resolved),
        &resolved,
    );
    m.params.insert("model".into(), model.to_string());
    m.seed = Some(seed);
    m.notes
        .push(format!("aging ratios {ratios:?} are preset choices"));
    m.notes
        .push(format!("series k uses master seed {seed} + k"));

    let cfg = QuadratureConfig::default();
    let mut absorbed = 0;
    let mut lines = Vec::new();
    for (k, &r) in ratios.iter().enumerate() {
        let series_seed = seed.wrapping_add(k as u64);
        let sim_args = SimulateArgs {
            model: Some(model),
            tm: Some(tm),
            r: Some(r),
            n: Some(n),
            alpha,
            c,
            tau_plus: None,
            tau_minus: None,
            window_steps,
        };
        let mut scratch = Resolver::new(BTreeMap::new());
        let sim = simulate_model(&mut scratch, model, &sim_args, ctx.workers, series_seed)?;
        absorbed += sim.ensemble.absorbed;

        let ratio = AgingRatio::positive(r)?;
        let law = match model {
            SimModel::Bm => Law::AgingArcsine { r: ratio },
            _ => {
                let alpha = TailIndex::new(alpha.expect("map presets set alpha"))?;
                let params = MapParams::new(c.expect("map presets set c"), alpha)?;
                let beta = beta_of_map(&params);
                if k == 0 {
                    m.notes.push(format!("map asymmetry beta = {beta}"));
                }
                Law::AgingLamperti {
                    alpha,
                    asym: AsymmetryParams::from_beta(beta)?,
                    r: ratio,
                }
            }
        };
        let (theory, table) = with_workers(ctx.workers, || {
            let theory = law.theoretical_cdf(&cfg)?;
            let table = theory_table(&theory, grid, &cfg)?;
            Ok::<_, aging_arcsine::Error>((theory, table))
        })??;
        let emp = build_empirical(&sim.ensemble.fractions(), sim.atom_tol)?;
        let hist = histogram(&emp, bins)?;
        let mut report = ks_against(
            &emp,
            &theory,
            CompareOptions {
                delta,
                model_allowance: allowance,
            },
        );
        report
            .metadata
            .insert("figure".into(), figure.to_string().into());
        report
            .metadata
            .insert("samples_seed".into(), series_seed.into());
        report
            .metadata
            .insert("absorbed".into(), sim.ensemble.absorbed.into());

        let path =
            |kind: &str, ext: &str| out_dir.join(format!("{figure}_{kind}_{}.{ext}", tag(r)));
        let samples = path("samples", "csv");
        write_samples(&samples, &sim)?;
        let empirical = path("empirical", "csv");
        let mut w = create(&empirical)?;
        write_histogram_csv(&mut w, &hist)?;
        w.flush()?;
        let theory_path = path("theory", "csv");
        let mut w = create(&theory_path)?;
        write_theory_csv(&mut w, &table)?;
        w.flush()?;
        let report_path = path("report", "json");
        write_json(&report_path, &report)?;
        m.outputs
            .extend([samples, empirical, theory_path, report_path]);

        let line = format!(
            "{figure} r={r}: KS {:.4} vs threshold {:.4} {}",
            report.ks_distance,
            report.threshold(),
            if report.pass { "PASS" } else { "FAIL" }
        );
        eprintln!("{line}");
        lines.push(line);
    }
    m.absorbed = Some(absorbed);
    m.notes.extend(lines);
    m.wall_time_s = start.elapsed().as_secs_f64();
    m.write(&out_dir.join("manifest.json"))?;
    eprintln!("wrote bundle {}", out_dir.display());
    Ok(())
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
