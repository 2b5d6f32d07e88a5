//! Command-line front end: correction terms, obstruction checks, link invariants and the genus scans.

pub mod render;
pub mod reproduce;
pub mod scan;

use clap::{Args, Parser, Subcommand};
use definite_bounds::algebra::format_rational;
use definite_bounds::dinv::{correction_table, lens_d, lens_table, CorrectionTable, SeifertData};
use definite_bounds::links::{invariants, slice_check, LinkDescriptor};
use definite_bounds::obstruction::{check_bound_with, ObstructionReport, SearchOptions};
use definite_bounds::Error;

use render::{group_name, render, Format, Layout};
use scan::{link_row, scan_montesinos, scan_twobridge, MontesinosRange, ScanOptions};

const ABOUT: &str =
    "Negative-definite filling obstructions for Seifert fibered rational homology spheres, \
and four-ball genus bounds for two-bridge and Montesinos links.";

const LONG_ABOUT: &str = "Negative-definite filling obstructions for Seifert fibered rational homology spheres, \
and four-ball genus bounds for two-bridge and Montesinos links.

Descriptors: S(p,q) for two-bridge links, M(e;a1/b1,...,ar/br) or M(e;(a1,b1),...) for Montesinos links. \
S(p,q) is the closure of the rational tangle of slope p/q, mirrored so that signatures match the usual tables \
(S(3,1) has signature -2, S(107,28) has signature -2). The branched double cover of S(p,q) is L(p,q); the cover of \
M(e;...) is Y(-e;...).";

#[derive(Parser, Debug)]
#[command(name = "dbound", about = ABOUT, long_about = LONG_ABOUT, version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads for scans (0 = all cores).
    #[arg(long, env = "DEFINITE_BOUNDS_JOBS", default_value_t = 0, global = true)]
    jobs: usize,
    /// Coefficient bound for the Taylor-invariant search.
    #[arg(long, default_value_t = definite_bounds::links::DEFAULT_TAYLOR_BOUND, global = true)]
    taylor_bound: i64,
    /// Check every class rather than one of each {a, -a} pair.
    #[arg(long, global = true)]
    no_orbit_reduction: bool,
}

impl Global {
    fn search(&self) -> SearchOptions {
        SearchOptions {
            orbit_reduction: !self.no_orbit_reduction,
        }
    }

    fn scan(&self) -> ScanOptions {
        ScanOptions {
            search: self.search(),
            taylor_bound: Some(self.taylor_bound),
            jobs: self.jobs,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Correction terms.
    #[command(subcommand)]
    Dinv(Space),
    /// Whether Y bounds a negative definite form of rank b.
    #[command(subcommand)]
    Obstruct(ObstructSpace),
    /// Invariants of one link.
    Link {
        #[arg(value_enum)]
        action: LinkAction,
        descriptor: String,
    },
    /// Obstructed links in a range.
    #[command(subcommand)]
    Scan(ScanKind),
    /// Recompute a worked example or table.
    Reproduce {
        #[arg(value_enum)]
        what: Reproduction,
    },
}

#[derive(Subcommand, Debug)]
enum Space {
    /// The lens space L(p,q).
    Lens { p: i64, q: i64 },
    /// The Seifert space Y(e;(a1,b1),...) given as "a1/b1,...".
    Seifert {
        #[arg(allow_hyphen_values = true)]
        e: i64,
        pairs: String,
    },
}

#[derive(Args, Debug)]
struct ObstructFlags {
    /// Rank of the negative definite filling.
    #[arg(long)]
    b: usize,
    /// Use the opposite orientation.
    #[arg(long)]
    reverse: bool,
}

#[derive(Subcommand, Debug)]
enum ObstructSpace {
    Lens {
        p: i64,
        q: i64,
        #[command(flatten)]
        flags: ObstructFlags,
    },
    Seifert {
        #[arg(allow_hyphen_values = true)]
        e: i64,
        pairs: String,
        #[command(flatten)]
        flags: ObstructFlags,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum LinkAction {
    Info,
    Genus,
    Slice,
}

#[derive(Subcommand, Debug)]
enum ScanKind {
    Twobridge {
        #[arg(long, default_value_t = 120)]
        pmax: i64,
        #[arg(long, default_value_t = 4)]
        sigma_max: i64,
    },
    Montesinos {
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        emin: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        emax: i64,
        #[arg(long, default_value_t = 5)]
        alpha_max: i64,
        /// Determinants must be below this.
        #[arg(long, default_value_t = 150)]
        det_max: u64,
        #[arg(long, default_value_t = 4)]
        sigma_max: i64,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum Reproduction {
    Table1,
    Table2,
    #[value(name = "sec5-1")]
    Knot10145,
    #[value(name = "sec5-2")]
    Pretzel,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Descriptor(_) | Error::NotCoprime(..) | Error::NotNormalized => 2,
        _ => 1,
    }
}

fn parse_pairs(e: i64, pairs: &str) -> Result<SeifertData, Error> {
    let d: LinkDescriptor = format!("M({e};{pairs})").parse()?;
    match d {
        LinkDescriptor::Montesinos { pairs, .. } => SeifertData::new(e, pairs),
        LinkDescriptor::TwoBridge { .. } => unreachable!("parsed as Montesinos"),
    }
}

fn space_table(space: &Space) -> Result<CorrectionTable, Error> {
    match space {
        Space::Lens { p, q } => lens_table(*p, *q),
        Space::Seifert { e, pairs } => correction_table(&parse_pairs(*e, pairs)?),
    }
}

fn rationals(v: &[definite_bounds::algebra::ExactRational]) -> String {
    format!(
        "[{}]",
        v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    )
}

fn obstruction_text(r: &ObstructionReport) -> String {
    let mut out = String::from(if r.obstructed {
        "obstructed\n"
    } else {
        "not obstructed\n"
    });
    if let Some(w) = &r.witness {
        out += &format!("witness form {:?}\n", w.form.q.rows());
    }
    out += &format!(
        "combinations {}  forms {}\n",
        r.stats.combinations, r.stats.forms
    );
    out
}

fn execute(cli: Cli) -> Result<String, Error> {
    let g = &cli.global;
    Ok(match cli.verb {
        Verb::Dinv(space) => match &space {
            Space::Lens { p, q } => rationals(&lens_d(*p, *q)?) + "\n",
            Space::Seifert { .. } => {
                let t = space_table(&space)?;
                format!("{} {}\n", group_name(t.group.factors()), rationals(&t.d))
            }
        },
        Verb::Obstruct(o) => {
            let (space, flags) = match o {
                ObstructSpace::Lens { p, q, flags } => (Space::Lens { p, q }, flags),
                ObstructSpace::Seifert { e, pairs, flags } => (Space::Seifert { e, pairs }, flags),
            };
            let t = space_table(&space)?;
            let t = if flags.reverse { t.negated() } else { t };
            obstruction_text(&check_bound_with(&t, flags.b, g.search())?)
        }
        Verb::Link { action, descriptor } => {
            let d: LinkDescriptor = descriptor.parse()?;
            match action {
                LinkAction::Info => {
                    let inv = invariants(&d, None)?;
                    let row = link_row(&d, &inv, &g.scan())?;
                    let m = row.m.as_ref().map(|m| m.to_string()).unwrap_or("-".into());
                    format!(
                        "{}  mu={}  sigma={}  H_1={}  m={}{}\n",
                        row.link,
                        row.mu,
                        row.sigma,
                        group_name(&row.h1),
                        m,
                        d.double_cover()
                            .map(|y| format!("  cover={y}"))
                            .unwrap_or_default()
                    )
                }
                LinkAction::Genus => {
                    let r = definite_bounds::links::genus_obstruction(&d, g.search())?;
                    format!(
                        "{d}  mu={}  sigma={}  cover={}  b={}  {}\n",
                        r.mu,
                        r.sigma,
                        r.orientation_used,
                        r.b,
                        r.conclusion()
                    )
                }
                LinkAction::Slice => {
                    let r = slice_check(&d)?;
                    if r.obstructed {
                        format!("{d}  not slice\n")
                    } else {
                        format!("{d}  inconclusive\n")
                    }
                }
            }
        }
        Verb::Scan(ScanKind::Twobridge { pmax, sigma_max }) => render(
            &scan_twobridge(pmax, sigma_max, &g.scan())?,
            g.format,
            Layout::TwoBridge,
        ),
        Verb::Scan(ScanKind::Montesinos {
            emin,
            emax,
            alpha_max,
            det_max,
            sigma_max,
        }) => {
            let r = MontesinosRange {
                emin,
                emax,
                alpha_max,
                det_max,
                sigma_max,
            };
            render(
                &scan_montesinos(&r, &g.scan())?,
                g.format,
                Layout::Montesinos,
            )
        }
        Verb::Reproduce { what } => match what {
            Reproduction::Table1 => render(
                &scan_twobridge(120, 4, &g.scan())?,
                g.format,
                Layout::TwoBridge,
            ),
            Reproduction::Table2 => render(
                &scan_montesinos(&MontesinosRange::default(), &g.scan())?,
                g.format,
                Layout::Montesinos,
            ),
            Reproduction::Knot10145 => {
                reproduce::render_small(&reproduce::small_example(g.search())?)
            }
            Reproduction::Pretzel => {
                reproduce::render_pretzel(&reproduce::pretzel_example(g.search())?)
            }
        },
    })
}

/// Parses `argv` (including the program name) and runs it; returns the exit code and the text to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return (if e.use_stderr() { 2 } else { 0 }, e.render().to_string()),
    };
    match execute(cli) {
        Ok(s) => (0, s),
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}
