use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use dtnsim_core::config::{load_scenario, validate, Scenario};
use dtnsim_core::engine::{self, sweep_summary_csv, MapSet, Simulation};
use dtnsim_core::geo::{generate_synthetic_map, SynthParams};
use dtnsim_core::metrics::parse_timeline_csv;
use dtnsim_core::traffic::events_csv;

/// Overrides every `--out` directory when set.
const OUT_ENV: &str = "DTNSIM_OUT";

#[derive(Parser)]
#[command(
    name = "dtnsim",
    version,
    about = "Delay tolerant network simulator for disaster scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write summary, timeline and hop reports.
    Run(RunArgs),
    /// Run one scenario per value of a single key.
    Sweep(SweepArgs),
    /// Generate the synthetic road, pedestrian and shop maps.
    Genmap(GenmapArgs),
    /// Turn a timeline.csv into delivery-rate plot data and an SVG.
    Plot(PlotArgs),
    /// Check a scenario file and list every violation.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(short = 's', long = "scenario")]
    scenario: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write contacts.csv with every link up/down event.
    #[arg(long)]
    contacts: bool,
    /// Also write events.csv with the message creation schedule.
    #[arg(long)]
    events: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(short = 's', long = "scenario")]
    scenario: PathBuf,
    #[arg(long)]
    axis: String,
    #[arg(long, value_delimiter = ',')]
    values: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct GenmapArgs {
    #[arg(long, default_value = "4500x3400", value_parser = parse_world)]
    world: (f64, f64),
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "maps")]
    out: PathBuf,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    timeline: PathBuf,
    /// Output SVG; the data file is written next to it with a .dat extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(short = 's', long = "scenario")]
    scenario: PathBuf,
}

fn parse_world(s: &str) -> Result<(f64, f64), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got {s:?}"))?;
    let w: f64 = w.trim().parse().map_err(|_| format!("bad width {w:?}"))?;
    let h: f64 = h.trim().parse().map_err(|_| format!("bad height {h:?}"))?;
    Ok((w, h))
}

enum Failure {
    Invalid(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn out_dir(flag: &Path) -> PathBuf {
    match std::env::var_os(OUT_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => flag.to_path_buf(),
    }
}

fn load_valid(path: &Path, seed: Option<u64>) -> Result<Scenario, Failure> {
    let parsed = load_scenario(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let mut s = parsed.scenario;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    let violations = validate(&s);
    if !violations.is_empty() {
        let mut msg = format!("{}: {} violation(s)", path.display(), violations.len());
        for v in &violations {
            let _ = write!(msg, "\n  {v}");
        }
        return Err(Failure::Invalid(msg));
    }
    Ok(s)
}

fn cmd_run(a: &RunArgs) -> Result<(), Failure> {
    let s = load_valid(&a.scenario, a.seed)?;
    let maps = MapSet::load(&s).map_err(anyhow::Error::from)?;
    let mut sim = Simulation::new(&s, maps).map_err(anyhow::Error::from)?;
    if a.contacts {
        sim.enable_contact_trace();
    }
    sim.run_to_end();
    let mut result = sim.finish();
    let dir = out_dir(&a.out);
    result.write_reports(&dir).map_err(anyhow::Error::from)?;
    if a.events {
        let path = dir.join("events.csv");
        std::fs::write(&path, events_csv(&result.events)).with_context(|| format!("writing {}", path.display()))?;
        result.files.push(path);
    }
    print!("{}", result.summary_csv());
    for f in &result.files {
        eprintln!("wrote {}", f.display());
    }
    Ok(())
}

fn cmd_sweep(a: &SweepArgs) -> Result<(), Failure> {
    let s = load_valid(&a.scenario, a.seed)?;
    s.sweep_axis(&a.axis).map_err(|e| Failure::Invalid(e.to_string()))?;
    let runs = engine::sweep(&s, &a.axis, &a.values).map_err(|e| match e {
        engine::SimError::Config(c) => Failure::Invalid(c.to_string()),
        e => Failure::Runtime(e.into()),
    })?;
    let dir = out_dir(&a.out);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv = sweep_summary_csv(&runs);
    let path = dir.join("summary.csv");
    std::fs::write(&path, &csv).with_context(|| format!("writing {}", path.display()))?;
    for (value, run) in a.values.iter().zip(&runs) {
        let sub = dir.join(sanitize(value));
        std::fs::create_dir_all(&sub).with_context(|| format!("creating {}", sub.display()))?;
        for (name, text) in [("timeline.csv", run.timeline_csv()), ("hops.csv", run.hops_csv())] {
            let p = sub.join(name);
            std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    print!("{csv}");
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn sanitize(value: &str) -> String {
    value
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn cmd_genmap(a: &GenmapArgs) -> Result<(), Failure> {
    let params = SynthParams::for_world(a.world.0, a.world.1, a.seed);
    let map = generate_synthetic_map(&params).map_err(|e| Failure::Invalid(e.to_string()))?;
    let dir = out_dir(&a.out);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, text) in map.files() {
        let p = dir.join(name);
        std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn cmd_plot(a: &PlotArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&a.timeline).with_context(|| format!("reading {}", a.timeline.display()))?;
    let points = parse_timeline_csv(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", a.timeline.display())))?;
    let mut dat = String::from("# time_h delivery_rate\n");
    for (t, r) in &points {
        let _ = writeln!(dat, "{:.4} {:.4}", t / 3600.0, r);
    }
    let svg_path = match &a.out {
        Some(p) => p.clone(),
        None => out_dir(a.timeline.parent().unwrap_or(Path::new("."))).join("delivery_rate.svg"),
    };
    if let Some(parent) = svg_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let dat_path = svg_path.with_extension("dat");
    std::fs::write(&dat_path, &dat).with_context(|| format!("writing {}", dat_path.display()))?;
    std::fs::write(&svg_path, render_svg(&points)).with_context(|| format!("writing {}", svg_path.display()))?;
    print!("{dat}");
    eprintln!("wrote {} and {}", dat_path.display(), svg_path.display());
    Ok(())
}

fn render_svg(points: &[(f64, f64)]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 50.0;
    let t_max = points.iter().map(|p| p.0).fold(0.0, f64::max).max(1.0);
    let x = |t: f64| M + t / t_max * (W - 2.0 * M);
    let y = |r: f64| H - M - r.clamp(0.0, 1.0) * (H - 2.0 * M);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{M}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{M}\" y1=\"{M}\" x2=\"{M}\" y2=\"{b}\" stroke=\"black\"/>\n",
        b = H - M,
        r = W - M
    );
    for i in 0..=4 {
        let v = i as f64 / 4.0;
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{v:.2}</text>",
            M - 6.0,
            y(v) + 4.0
        );
        let t = t_max * v;
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{:.1}</text>",
            x(t),
            H - M + 18.0,
            t / 3600.0
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">time (h)</text>",
        W / 2.0,
        H - 10.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"14\" y=\"{:.1}\" transform=\"rotate(-90 14 {:.1})\" text-anchor=\"middle\">delivery rate</text>",
        H / 2.0,
        H / 2.0
    );
    let pts: Vec<String> = points
        .iter()
        .map(|&(t, r)| format!("{:.2},{:.2}", x(t), y(r)))
        .collect();
    let _ = writeln!(
        svg,
        "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"{}\"/>",
        pts.join(" ")
    );
    svg.push_str("</svg>\n");
    svg
}

fn cmd_validate(a: &ValidateArgs) -> Result<(), Failure> {
    let s = load_valid(&a.scenario, None)?;
    println!(
        "{}: ok ({} groups, {} hosts, router {})",
        a.scenario.display(),
        s.groups.len(),
        s.total_hosts(),
        s.router.label()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Genmap(a) => cmd_genmap(a),
        Command::Plot(a) => cmd_plot(a),
        Command::Validate(a) => cmd_validate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
