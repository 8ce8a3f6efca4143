use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use sslab::groups::{alexander_polynomial, hom_count_with_budget, FiniteGroup, Presentation, DEFAULT_HOM_BUDGET};
use sslab::harness::{
    fibration_obstruction_check, fibration_scan, generalized_scan, lemma1_scan, remark_scan,
    theorem_scan, ScanReport, DEFAULT_ALPHA_BOUND, DEFAULT_BETA_BOUND, DEFAULT_FIBRATION_BOUND,
    DEFAULT_GENERALIZED_BOUND, DEFAULT_LEMMA1_BOUND, DEFAULT_REMARK_BOUND,
};
use sslab::lspace::{certify_with, CertifyOptions, DEFAULT_BUDGET};
use sslab::seifert::{SeifertClosed, SeifertManifold};
use sslab::tangles::{double_branched_cover, tangle_from_slope, two_bridge};
use sslab::{Int, Slope};

/// Dehn filling, homology, recognition and L-space certificates for Seifert
/// fibered manifolds, plus the verification scans.
///
/// Manifold and group arguments are a path to a JSON file or inline JSON
/// starting with `{`. Boundary tori are numbered from 1. Slopes are `p/q`.
#[derive(Parser)]
#[command(name = "sslab", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fill one boundary torus of a bounded Seifert manifold or a group with
    /// peripheral structure.
    Fill {
        #[arg(long)]
        manifold: String,
        #[arg(long, default_value_t = 1)]
        boundary: usize,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
    },
    /// First homology of a Seifert manifold or a group.
    H1 {
        #[arg(long)]
        manifold: String,
    },
    /// Recognize a closed Seifert manifold.
    Recognize {
        #[arg(long)]
        seifert: String,
    },
    /// L-space certificate for a closed Seifert rational homology sphere.
    Lspace {
        #[arg(long)]
        seifert: String,
        /// Skip the lens-space and elliptic rules.
        #[arg(long)]
        no_shortcuts: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Abelianization of a group (or of a Seifert manifold's group).
    Abelianize {
        #[arg(long)]
        group: String,
    },
    /// Rational longitude of one boundary torus.
    Longitude {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        boundary: usize,
    },
    /// Count homomorphisms into a finite group (trivial, Zn, Sn, Dn).
    Homcount {
        #[arg(long)]
        group: String,
        #[arg(long)]
        target: FiniteGroup,
        #[arg(long, default_value_t = DEFAULT_HOM_BUDGET)]
        budget: u64,
    },
    /// Alexander polynomial of a group whose abelianization has rank 1.
    Alexander {
        #[arg(long)]
        group: String,
    },
    /// Rational tangle, two-bridge link and double branched cover of a slope.
    Tangle {
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Run verification scans.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    #[arg(long, default_value_t = DEFAULT_ALPHA_BOUND)]
    alpha_bound: u32,
    #[arg(long, default_value_t = DEFAULT_BETA_BOUND)]
    beta_bound: u32,
    /// Bound on p for the lemma1, fibration and remark scans (each has its
    /// own default).
    #[arg(long)]
    p_bound: Option<u32>,
}

#[derive(Subcommand)]
enum Suite {
    /// The closed-filling scan; with --all also lemma1, fibration and remark.
    Paper {
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    Lemma1 {
        #[command(flatten)]
        bounds: Bounds,
    },
    Theorem {
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Fibering obstructions for one slope, or for all slopes up to --p-bound.
    Fibration {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<Slope>,
        #[command(flatten)]
        bounds: Bounds,
    },
    Remark {
        #[command(flatten)]
        bounds: Bounds,
    },
    /// The fiber complement over RP2 with the given cone points.
    Generalized {
        #[arg(long, value_delimiter = ',', required = true)]
        cones: Vec<Int>,
        #[arg(long, default_value_t = DEFAULT_GENERALIZED_BOUND)]
        beta_bound: u32,
    },
}

enum Input {
    Seifert(SeifertManifold),
    Group(Presentation),
}

fn load(arg: &str) -> Result<Input> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    let mut value: Value = serde_json::from_str(&text).context("parsing JSON input")?;
    if let Some(outcome) = value.get("outcome").and_then(Value::as_str) {
        if outcome == "fiber_filling" {
            bail!("input is a fiber-slope filling, which has no Seifert description");
        }
        value = value
            .get_mut("manifold")
            .map(Value::take)
            .ok_or_else(|| anyhow!("fill outcome without a manifold"))?;
    }
    if value.get("generators").is_some() {
        Ok(Input::Group(serde_json::from_value(value).context("reading group presentation")?))
    } else {
        Ok(Input::Seifert(serde_json::from_value(value).context("reading Seifert data")?))
    }
}

fn load_group(arg: &str) -> Result<Presentation> {
    match load(arg)? {
        Input::Group(p) => Ok(p),
        Input::Seifert(SeifertManifold::Closed(m)) => Ok(m.presentation()?),
        Input::Seifert(SeifertManifold::Bounded(m)) => Ok(m.presentation()?),
    }
}

fn load_closed(arg: &str) -> Result<SeifertClosed> {
    match load(arg)? {
        Input::Seifert(SeifertManifold::Closed(m)) => Ok(m),
        Input::Seifert(SeifertManifold::Bounded(_)) => bail!("expected a closed Seifert manifold"),
        Input::Group(_) => bail!("expected Seifert data, got a group presentation"),
    }
}

fn index(boundary: usize) -> Result<usize> {
    boundary.checked_sub(1).ok_or_else(|| anyhow!("boundary tori are numbered from 1"))
}

fn group_text(p: &Presentation) -> String {
    let names = p.generators();
    let rels: Vec<String> = p.relators().iter().map(|r| r.display(names).to_string()).collect();
    let mut out = format!("<{} | {}>", names.join(", "), rels.join(", "));
    for (i, pair) in p.peripherals().iter().enumerate() {
        out += &format!(
            "\nboundary {}: mu = {}, lambda = {}",
            i + 1,
            pair.mu.display(names),
            pair.lambda.display(names)
        );
    }
    out
}

struct Output {
    json: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            println!("{}", text());
        }
        Ok(())
    }

    fn report(&self, r: &ScanReport) -> Result<bool> {
        self.emit(r, || r.to_string().trim_end().to_string())?;
        Ok(r.passed())
    }
}

#[derive(Serialize)]
struct HomCount<'a> {
    target: &'a str,
    order: usize,
    count: u64,
}

#[derive(Serialize)]
struct TangleReport {
    slope: Slope,
    tangle: sslab::tangles::RationalTangle,
    link: sslab::tangles::TwoBridgeLink,
    cover: sslab::tangles::LensSpace,
}

fn run(cli: Cli) -> Result<bool> {
    let out = Output { json: cli.json };
    match cli.command {
        Command::Fill {
            manifold,
            boundary,
            slope,
        } => match load(&manifold)? {
            Input::Group(p) => {
                let filled = p.fill_quotient(index(boundary)?, &slope)?;
                out.emit(&filled, || group_text(&filled))?;
            }
            Input::Seifert(SeifertManifold::Bounded(m)) => {
                let filled = m.fill(index(boundary)?, &slope)?;
                out.emit(&filled, || filled.to_string())?;
            }
            Input::Seifert(SeifertManifold::Closed(_)) => bail!("a closed manifold has no boundary to fill"),
        },
        Command::H1 { manifold } => {
            let h1 = match load(&manifold)? {
                Input::Group(p) => p.abelianization(),
                Input::Seifert(m) => m.h1(),
            };
            out.emit(&h1, || h1.to_string())?;
        }
        Command::Recognize { seifert } => {
            let r = load_closed(&seifert)?.normalized().recognize()?;
            out.emit(&r, || r.to_string())?;
        }
        Command::Lspace {
            seifert,
            no_shortcuts,
            budget,
        } => {
            let options = CertifyOptions {
                shortcuts: !no_shortcuts,
                budget,
            };
            let cert = certify_with(&load_closed(&seifert)?, &options)?;
            out.emit(&cert, || cert.to_string())?;
        }
        Command::Abelianize { group } => {
            let h1 = load_group(&group)?.abelianization();
            out.emit(&h1, || h1.to_string())?;
        }
        Command::Longitude { group, boundary } => {
            let l = load_group(&group)?.rational_longitude(index(boundary)?)?;
            out.emit(&l, || l.to_string())?;
        }
        Command::Homcount { group, target, budget } => {
            let count = hom_count_with_budget(&load_group(&group)?, &target, budget)?;
            let report = HomCount {
                target: target.name(),
                order: target.order(),
                count,
            };
            out.emit(&report, || format!("{count} homomorphisms into {target}"))?;
        }
        Command::Alexander { group } => {
            let poly = alexander_polynomial(&load_group(&group)?)?;
            out.emit(&poly, || poly.to_string())?;
        }
        Command::Tangle { slope } => {
            let tangle = tangle_from_slope(&slope);
            let link = two_bridge(&tangle);
            let cover = double_branched_cover(&link);
            let report = TangleReport {
                slope,
                tangle,
                link,
                cover,
            };
            out.emit(&report, || {
                format!(
                    "tangle {}\nlink {}\ncover {}",
                    report.tangle, report.link, report.cover
                )
            })?;
        }
        Command::Verify { suite } => return verify(&out, suite),
    }
    Ok(true)
}

fn verify(out: &Output, suite: Suite) -> Result<bool> {
    let report = match suite {
        Suite::Paper { all, bounds } => {
            let theorem = theorem_scan(bounds.alpha_bound, bounds.beta_bound)?;
            if all {
                let p = bounds.p_bound;
                ScanReport::merge(
                    "paper",
                    vec![
                        lemma1_scan(p.unwrap_or(DEFAULT_LEMMA1_BOUND))?,
                        theorem,
                        fibration_scan(p.unwrap_or(DEFAULT_FIBRATION_BOUND))?,
                        remark_scan(p.unwrap_or(DEFAULT_REMARK_BOUND))?,
                    ],
                )
            } else {
                theorem
            }
        }
        Suite::Lemma1 { bounds } => lemma1_scan(bounds.p_bound.unwrap_or(DEFAULT_LEMMA1_BOUND))?,
        Suite::Theorem { bounds } => theorem_scan(bounds.alpha_bound, bounds.beta_bound)?,
        Suite::Fibration { alpha, bounds } => match alpha {
            Some(a) => fibration_obstruction_check(a.p().clone(), a.q().clone())?,
            None => fibration_scan(bounds.p_bound.unwrap_or(DEFAULT_FIBRATION_BOUND))?,
        },
        Suite::Remark { bounds } => remark_scan(bounds.p_bound.unwrap_or(DEFAULT_REMARK_BOUND))?,
        Suite::Generalized { cones, beta_bound } => generalized_scan(&cones, beta_bound)?,
    };
    out.report(&report)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SSLAB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| anyhow!("SSLAB_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            bail!("SSLAB_THREADS must be a positive integer, got `{v}`");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
