use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use detq_core::cohomology::{CurveAnalysis, DEFAULT_WINDOW};
use detq_core::parse::split_ideal_text;
use detq_core::resolution::minimal_resolution_betti;
use detq_core::{Field, FieldSpec, Ideal, MonoOrder, Ring, RingRef};
use detq_lattice::{
    chambers, chi_closed, chi_hrr, cubic_class_solve, cubic_secant_tally, genus_discrepancy, k3_restriction,
    quadrisecant_count, rational_exclusion, restrict, CurveCase, DivisorClass, QuadForm, SurfaceClass,
};
use detq::config::{Config, FieldChoice};
use detq::fixtures::{build_curve_cached, linking_pair, Recipe};
use detq::on_field;
use detq::pipeline::run_pipeline;
use detq::suite::{render_hr, verify_paper, Case};
use serde_json::{json, Value};

/// Parses an ideal file over its field and prints the JSON value of `$body`.
macro_rules! with_ideal {
    ($g:expr, $file:expr, |$i:ident| $body:expr) => {{
        let (cfg, vars, src) = ideal_input($g, $file)?;
        let v: Value = on_field!(cfg, f => {
            let ring = Ring::new(f, &vars, MonoOrder::Grevlex)?.with_budget(cfg.budget.to_budget()).into_ref();
            let ideal = Ideal::parse(ring, &src).with_context(|| format!("parsing {}", $file.display()))?;
            let $i = &ideal;
            (|| -> Result<Value> { $body })()?
        });
        print(&v);
    }};
}

#[derive(Parser)]
#[command(name = "detq", version, about = "Exact computations on curves of degree 10 and genus 11 in P^3")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Coefficient field; ideal files may also declare it in a `ring` line
    #[arg(long, global = true)]
    field: Option<FieldChoice>,
    #[arg(long, global = true, default_value_t = detq_core::DEFAULT_PRIME)]
    prime: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Skip the curve cache for this run
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one of the three fixture curves and verify its invariants
    BuildCurve {
        #[arg(long, default_value = "acm")]
        recipe: String,
        /// Hilbert-Burch matrix file, overriding the recipe
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Flip a 5x4 linear matrix and analyze the singular locus of its determinant
    Pipeline {
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Run the verification suite
    VerifyPaper {
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced Groebner basis of an ideal file
    Gb { file: PathBuf },
    /// Saturation by a second ideal file, or by the irrelevant ideal
    Sat {
        file: PathBuf,
        #[arg(long)]
        by: Option<PathBuf>,
    },
    /// Residual in a complete intersection of two forms of the ideal
    Link {
        file: PathBuf,
        /// File with the two linking forms; random forms of --degree otherwise
        #[arg(long)]
        forms: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Hilbert series numerator, polynomial, degree and genus
    Hilbert { file: PathBuf },
    /// Graded Betti table of the minimal resolution
    Betti { file: PathBuf },
    /// Cohomology table h^i(I_C(k)) of a curve ideal
    Cohom {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WINDOW.0, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = DEFAULT_WINDOW.1)]
        to: i64,
    },
    /// Hartshorne-Rao module and curve class
    Classify { file: PathBuf },
    /// Intersection theory on the blow-up
    #[command(subcommand)]
    Lattice(LatticeCmd),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Euler characteristic of nH - kE by both formulas
    Chi {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Chamber table, or the chamber of one class
    Chambers {
        #[arg(long, default_value = "generic")]
        case: CurveCase,
        #[arg(long)]
        class: Option<DivisorClass>,
    },
    /// Line incidences of a class (d; a1..a6) on the cubic surface
    Secants {
        #[arg(long)]
        class: String,
    },
    /// Classes of given degree and genus on the cubic surface
    Solve {
        #[arg(long)]
        deg: i64,
        #[arg(long)]
        genus: i64,
    },
    /// Number of 4-secant lines
    Quadrisecants {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        g: i64,
    },
    /// Restriction of classes to the surface in |11H-3E|
    Restrict {
        #[arg(long)]
        class: Option<DivisorClass>,
    },
    /// Genus of E restricted to the surface, computed three ways
    Genus,
    /// Rational solvability of a*x^2 + b*x*y + c*y^2 = t
    Exclusion {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        t: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn config(g: &Global, default_field: FieldChoice) -> Config {
    let mut cfg = Config::from_env().with_field(g.field.unwrap_or(default_field)).with_seed(g.seed);
    cfg.prime = g.prime;
    if g.no_cache {
        cfg.cache_dir = None;
    }
    cfg
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    match cli.cmd {
        Cmd::BuildCurve { recipe, matrix } => {
            let cfg = config(g, FieldChoice::Fp);
            let recipe = match matrix {
                Some(p) => Recipe::HilbertBurch { matrix: read(&p)? },
                None => Recipe::parse(&recipe, cfg.seed)?,
            };
            let bundle = on_field!(cfg, f => build_curve_cached(f, &recipe, &cfg)?.bundle);
            print(&serde_json::to_value(bundle)?);
        }
        Cmd::Pipeline { matrix } => {
            let cfg = config(g, FieldChoice::Fp);
            let src = match matrix {
                Some(p) => read(&p)?,
                None => detq::fixtures::ACM_MATRIX.to_string(),
            };
            let out = on_field!(cfg, f => run_pipeline(f, &src, &cfg)?);
            print(&serde_json::to_value(out)?);
        }
        Cmd::VerifyPaper { case, format, out } => {
            let cfg = config(g, FieldChoice::Fp);
            let report = verify_paper(&Case::parse_list(&case)?, &cfg);
            if let Some(p) = out {
                fs::write(&p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
            }
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Cmd::Gb { file } => with_ideal!(g, &file, |i| {
            let r = i.ring();
            Ok(json!({
                "ring": ring_json(r),
                "groebner": i.groebner()?.iter().map(|p| r.render(p)).collect::<Vec<_>>(),
            }))
        }),
        Cmd::Sat { file, by } => {
            let by_src = by.as_deref().map(read).transpose()?;
            with_ideal!(g, &file, |i| {
                let sat = match &by_src {
                    Some(src) => i.saturate(&Ideal::parse(i.ring().clone(), src)?)?,
                    None => i.saturate_irrelevant()?,
                };
                Ok(json!({
                    "ring": ring_json(i.ring()),
                    "saturation": render_min(&sat)?,
                }))
            })
        }
        Cmd::Link { file, forms, degree } => {
            let forms_src = forms.as_deref().map(read).transpose()?;
            let seed = g.seed;
            with_ideal!(g, &file, |i| {
                let r = i.ring();
                let (f, h) = match &forms_src {
                    Some(src) => {
                        let two = Ideal::parse(r.clone(), src)?;
                        match two.gens() {
                            [a, b] => (a.clone(), b.clone()),
                            other => bail!("expected two linking forms, found {}", other.len()),
                        }
                    }
                    None => linking_pair(i, degree, seed)?,
                };
                let res = i.linked_ideal(&f, &h)?;
                let hd = res.hilbert()?;
                Ok(json!({
                    "ring": ring_json(r),
                    "forms": [r.render(&f), r.render(&h)],
                    "residual": render_min(&res)?,
                    "degree": hd.degree,
                    "genus": hd.genus,
                }))
            })
        }
        Cmd::Hilbert { file } => with_ideal!(g, &file, |i| Ok(serde_json::to_value(i.hilbert()?)?)),
        Cmd::Betti { file } => with_ideal!(g, &file, |i| {
            let b = minimal_resolution_betti(i)?;
            Ok(json!({ "table": b.render(), "betti": b }))
        }),
        Cmd::Cohom { file, from, to } => with_ideal!(g, &file, |i| {
            let t = CurveAnalysis::new(i)?.cohomology((from, to))?;
            Ok(serde_json::to_value(t)?)
        }),
        Cmd::Classify { file } => with_ideal!(g, &file, |i| {
            let c = CurveAnalysis::new(i)?.classify()?;
            Ok(json!({
                "tag": c.tag.label(),
                "hartshorne_rao": render_hr(&c.hr),
                "class": c,
            }))
        }),
        Cmd::Lattice(cmd) => print(&lattice(cmd)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn ring_json<F: Field>(r: &RingRef<F>) -> Value {
    json!({ "field": r.field().spec().label(), "vars": r.names() })
}

fn render_min<F: Field>(i: &Ideal<F>) -> Result<Vec<String>> {
    Ok(i.minimal_generators()?.iter().map(|p| i.ring().render(p)).collect())
}

/// Field, variables and body of an ideal file. The field comes from
/// `--field`, then the file's `ring` line, then the prime-field default.
fn ideal_input(g: &Global, file: &Path) -> Result<(Config, Vec<String>, String)> {
    let src = read(file)?;
    let (decl, _, errs) = split_ideal_text(&src);
    if let Some(e) = errs.into_iter().next() {
        return Err(e).with_context(|| format!("parsing {}", file.display()));
    }
    let mut cfg = config(g, FieldChoice::Fp);
    let mut vars: Vec<String> = ["x", "y", "z", "w"].map(String::from).to_vec();
    if let Some(d) = decl {
        if g.field.is_none() {
            match d.field {
                FieldSpec::Rationals => cfg.field = FieldChoice::Q,
                FieldSpec::Prime { modulus } => {
                    cfg.field = FieldChoice::Fp;
                    cfg.prime = modulus;
                }
            }
        }
        vars = d.vars;
    }
    Ok((cfg, vars, src))
}

fn lattice(cmd: LatticeCmd) -> Result<Value> {
    Ok(match cmd {
        LatticeCmd::Chi { n, k } => {
            let closed = chi_closed(n, k);
            let hrr = chi_hrr(n, k)?;
            json!({ "class": DivisorClass::new(n, k).to_string(), "chi_closed": closed, "chi_hrr": hrr, "agree": closed == hrr })
        }
        LatticeCmd::Chambers { case, class } => match class {
            Some(d) => serde_json::to_value(chambers(case).classify(d)?)?,
            None => {
                let t = chambers(case);
                let rows: Vec<Value> = t
                    .chambers
                    .iter()
                    .map(|c| json!({ "interval": c.interval(), "base_locus": c.base_locus, "detail": c.base_locus_detail }))
                    .collect();
                json!({ "case": case.to_string(), "effective_cone_far_ray": t.far_ray().to_string(), "chambers": rows, "models": t.models })
            }
        },
        LatticeCmd::Secants { class } => {
            let c = SurfaceClass::parse(&class)?;
            let tally = cubic_secant_tally(&c);
            let total: usize = tally.values().sum();
            json!({ "class": c.to_string(), "degree": c.degree(), "genus": c.genus(), "tally": tally, "total": total })
        }
        LatticeCmd::Solve { deg, genus } => {
            let sol = cubic_class_solve(deg, genus)?;
            let orbits: Vec<Value> = sol
                .orbits
                .iter()
                .map(|o| {
                    json!({
                        "standard_form": o.standard_form.to_string(),
                        "members": o.members.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "deg": deg, "genus": genus, "bound": sol.bound, "orbits": orbits })
        }
        LatticeCmd::Quadrisecants { d, g } => json!({ "d": d, "g": g, "count": quadrisecant_count(d, g)? }),
        LatticeCmd::Restrict { class } => match class {
            Some(d) => json!({ "class": d.to_string(), "restriction": restrict(d).render() }),
            None => serde_json::to_value(k3_restriction()?)?,
        },
        LatticeCmd::Genus => serde_json::to_value(genus_discrepancy()?)?,
        LatticeCmd::Exclusion { a, b, c, t } => serde_json::to_value(rational_exclusion(QuadForm::new(a, b, c, t))?)?,
    })
}
