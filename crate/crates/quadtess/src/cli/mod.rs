//! Command-line front end: `solve-pair`, `render`, `verify`, `converge`.
//!
//! Exit codes: 0 pass, 1 suite failure, 2 solver or configuration error.

pub mod config;
pub mod output;
pub mod render;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::dynamics::build_pair;
use crate::error::{Error, Result};
use crate::semiconj::convergence_report;
use config::Config;
use output::Header;
use render::ColorMode;

#[derive(Parser, Debug)]
#[command(name = "quadtess", version, about = "Tessellations of quadratic Julia sets and their pinching limits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the pair (f, g) and print its data
    SolvePair(Opts),
    /// Draw the tessellation (png, svg) or list its panels (csv)
    Render(Opts),
    /// Run a check suite; exit 1 if any check fails
    Verify(Opts),
    /// Convergence of h to the identity along r; csv rows
    Converge(Opts),
}

/// Config file plus per-key overrides; later flags win.
#[derive(Args, Debug, Default)]
pub struct Opts {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// any key, as key=value (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long)]
    pub pq: Option<String>,
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub segment: Option<String>,
    #[arg(long)]
    pub side: Option<String>,
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub rs: Option<String>,
    #[arg(long)]
    pub depth: Option<String>,
    #[arg(long)]
    pub samples: Option<String>,
}

impl Opts {
    pub fn resolve(&self) -> Result<Config> {
        let mut c = match &self.config {
            Some(p) => Config::from_file(p)?,
            None => Config::default(),
        };
        for kv in &self.set {
            let (k, v) = config::parse_kv(kv)?.ok_or_else(|| Error::Parse(format!("empty --set {kv:?}")))?;
            c.set(&k, &v)?;
        }
        let named = [
            ("pq", &self.pq),
            ("r", &self.r),
            ("segment", &self.segment),
            ("side", &self.side),
            ("mode", &self.mode),
            ("format", &self.format),
            ("out", &self.out),
            ("suite", &self.suite),
            ("rs", &self.rs),
            ("depth", &self.depth),
            ("samples", &self.samples),
        ];
        for (k, v) in named {
            if let Some(v) = v {
                c.set(k, v)?;
            }
        }
        Ok(c)
    }
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

pub fn exit_code(r: &Result<Outcome>) -> u8 {
    match r {
        Ok(o) => o.code(),
        Err(_) => 2,
    }
}

fn out_path(c: &Config) -> Option<PathBuf> {
    match c.get("out") {
        "" | "-" => None,
        p => Some(PathBuf::from(p)),
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::SolvePair(o) => solve_pair(&o.resolve()?),
        Command::Render(o) => render_cmd(&o.resolve()?),
        Command::Verify(o) => verify_cmd(&o.resolve()?),
        Command::Converge(o) => converge(&o.resolve()?),
    }
}

pub fn solve_pair(c: &Config) -> Result<Outcome> {
    let pair = build_pair(&c.pair_spec()?)?;
    let header = Header::new("solve-pair", c.render());
    output::write_text(out_path(c).as_deref(), &header, &pair.report())?;
    Ok(Outcome::Pass)
}

pub fn render_cmd(c: &Config) -> Result<Outcome> {
    let pair = build_pair(&c.pair_spec()?)?;
    let t = crate::tess::Tessellation::build(&pair, c.side()?)?;
    let vp = c.viewport()?;
    let header = Header::new("render", c.render());
    let out = out_path(c);
    match c.get("format") {
        "png" => {
            let mode: ColorMode = c.get("mode").parse()?;
            let path = out.ok_or_else(|| Error::Argument("png output needs out = <file>".into()))?;
            let img = t.classify_image(&vp, c.get_usize("budget")?);
            output::write_png(&path, &header, vp.px, vp.py, &render::raster_rgb(&img, mode))?;
        }
        "svg" => {
            let panels = t.build_panels(c.get_usize("depth")?, None)?;
            output::write_svg(out.as_deref(), &header, vp.px, vp.py, &render::svg_scene(&t, &panels, &vp))?;
        }
        "csv" => {
            let panels = t.build_panels(c.get_usize("depth")?, None)?;
            output::write_csv(out.as_deref(), &header, render::PANEL_COLUMNS, &render::panel_rows(&panels))?;
        }
        f => return Err(Error::Argument(format!("format = {f:?}, expected png, svg or csv"))),
    }
    Ok(Outcome::Pass)
}

pub fn verify_cmd(c: &Config) -> Result<Outcome> {
    let pair = build_pair(&c.pair_spec()?)?;
    let ctx = verify::context(pair, c.get_usize("samples")?, c.get_usize("depth")?, c.get_u64("seed")?)?;
    let results = verify::run_suite(&ctx, c.get("suite"))?;
    let mut body = String::new();
    for r in &results {
        body.push_str(&r.line());
        body.push('\n');
    }
    let pass = results.iter().all(|r| r.pass);
    body.push_str(&format!("result = {}\n", if pass { "pass" } else { "fail" }));
    output::write_text(out_path(c).as_deref(), &Header::new("verify", c.render()), &body)?;
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}

pub const CONVERGE_COLUMNS: &[&str] = &[
    "r",
    "exterior_sup",
    "interior_sup",
    "julia_sup",
    "aggregate",
    "phi_sup",
    "panel_hausdorff",
    "deep_panel_diameter",
    "interior_failures",
];

/// Fails unless the aggregate and the panel distance decrease along the listed r.
pub fn converge(c: &Config) -> Result<Outcome> {
    let pairs = c.rs()?.into_iter().map(|r| build_pair(&c.pair_spec_at(r)?)).collect::<Result<Vec<_>>>()?;
    let rows = convergence_report(&pairs, &c.sample_spec()?)?;
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|w| {
            vec![
                w.r.to_string(),
                format!("{:.6e}", w.exterior.value),
                format!("{:.6e}", w.interior.value),
                format!("{:.6e}", w.julia.value),
                format!("{:.6e}", w.aggregate()),
                format!("{:.6e}", w.phi.value),
                format!("{:.6e}", w.panel_hausdorff),
                format!("{:.6e}", w.deep_panel_diameter),
                w.interior.failures.to_string(),
            ]
        })
        .collect();
    output::write_csv(out_path(c).as_deref(), &Header::new("converge", c.render()), CONVERGE_COLUMNS, &table)?;
    let dec = rows.windows(2).all(|w| w[1].aggregate() < w[0].aggregate() && w[1].panel_hausdorff < w[0].panel_hausdorff);
    Ok(if dec { Outcome::Pass } else { Outcome::Fail })
}

/// Parse arguments, set up threads, run, and map the result to an exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(e) = config::init_threads() {
        eprintln!("error: {e}");
        return 2;
    }
    let r = run(&cli.command);
    if let Err(e) = &r {
        eprintln!("error: {e}");
    }
    exit_code(&r)
}
