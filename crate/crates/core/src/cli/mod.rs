//! The `wheelcheck` command line.
//!
//! Exit codes: 0 when every check passes, 1 when at least one fails (each
//! failure is reported), 2 on input or usage errors. Reports are plain
//! lines: `MEMBER`, `NOT-MEMBER`, `POLE-VIOLATION factor=...`, `PASS`,
//! `FAIL ...` and a closing `total=.. pass=.. fail=..` for campaigns.

mod expr;
mod input;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coeffrings::{sparse, tensor_power, RingError};
use crate::conditions::{
    comm_cross_validation, pole_check, restrict_small_diagonal, surface_cross_validation, surface_wheel_membership,
    ConditionError, CrossConfig, Orientation, PoleResult,
};
use crate::equivariant::{comm3_campaign, comm_wheel_membership, ordered_triples, CampaignConfig, EquivariantError, Ordering};
use crate::laurent::{CoeffRing, Laurent, LaurentError, ModelRing, RatElem};
use crate::shuffle::{generator_element, shuffle_product, GradedElem, ShuffleError, SurfaceFamily, TorusFamily};

pub use expr::{format_expression, format_factor, format_laurent, max_variable, parse_expression, ExprError, Symbols};
use input::{file_shape, load_ring, load_surface, surface_element, surface_kernel, torus_element, torus_kernel, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
}

#[derive(Debug, Parser)]
#[command(name = "wheelcheck", version, about = "Exact checks of pole and wheel conditions")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the ring axioms of a model (and of its tensor square).
    ValidateRing {
        /// Model file, or `kp2` for the builtin K(P^2).
        #[arg(long, default_value = "kp2")]
        model: String,
    },
    /// Membership in the commuting-variety wheel ideals (torus mode).
    CommWheel {
        #[command(flatten)]
        element: ElementArgs,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        ordering: Option<Ordering>,
    },
    /// Multiply by the pole multiplier and divide out the denominator.
    Pole {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, default_value = "kp2")]
        model: String,
        #[arg(long, default_value = "ji")]
        orientation: Orientation,
    },
    /// Surface wheel conditions.
    Wheel(WheelArgs),
    /// Shuffle product of two or more elements, left to right.
    Shuffle {
        #[arg(long)]
        expr: Vec<String>,
        /// Degrees of the `--expr` elements, in order (inferred when absent).
        #[arg(long)]
        degree: Vec<usize>,
        #[arg(long)]
        element: Vec<String>,
        /// Surface model; torus mode when absent.
        #[arg(long)]
        model: Option<String>,
        /// `plane`, `trivial` or a kernel file.
        #[arg(long)]
        kernel: Option<String>,
    },
    /// Built-in verification campaigns.
    Campaign {
        #[command(subcommand)]
        which: CampaignKind,
    },
}

#[derive(Debug, Args)]
struct ElementArgs {
    /// Number of variables (inferred when absent).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    expr: Option<String>,
    /// Element file.
    #[arg(long)]
    element: Option<String>,
}

#[derive(Debug, Args)]
struct TripleArgs {
    /// 1-based indices; every ordered triple when absent.
    #[arg(long, num_args = 3, value_names = ["I", "J", "K"])]
    triple: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
struct WheelArgs {
    #[command(flatten)]
    element: ElementArgs,
    #[command(flatten)]
    triple: TripleArgs,
    #[arg(long, default_value = "kp2")]
    model: String,
    #[arg(long, default_value = "ji")]
    orientation: Orientation,
    /// Treat an expression as an already restricted class.
    #[arg(long)]
    restricted: bool,
    /// Run the shuffle-product experiment instead of checking one element.
    #[arg(long)]
    campaign: bool,
    /// `trivial` (default) or a kernel file, for `--campaign`.
    #[arg(long)]
    kernel: Option<String>,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum CampaignKind {
    /// Every commuting coordinate subspace up to a size bound, plus unions.
    Comm3 {
        #[arg(long, default_value_t = 18)]
        max_size: usize,
        #[arg(long, default_value_t = 500)]
        unions: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Substitution checkers against the linear-algebra oracle.
    Kp2Wheel {
        #[arg(long, default_value_t = 200)]
        members: usize,
        #[arg(long, default_value_t = 200)]
        randoms: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "kp2")]
        model: String,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn triples(n: usize, t: &TripleArgs) -> Result<Vec<(usize, usize, usize)>, CliError> {
    match &t.triple {
        None => Ok(ordered_triples(n)),
        Some(v) => {
            if v.iter().any(|&i| i == 0 || i > n) {
                return Err(CliError::Usage(format!("triple indices must lie in 1..={n}")));
            }
            let t = (v[0] - 1, v[1] - 1, v[2] - 1);
            crate::equivariant::check_triple(n, t)?;
            Ok(vec![t])
        }
    }
}

fn show((i, j, k): (usize, usize, usize)) -> String {
    format!("{},{},{}", i + 1, j + 1, k + 1)
}

fn verdict(member: bool) -> &'static str {
    if member {
        "MEMBER"
    } else {
        "NOT-MEMBER"
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::ValidateRing { model } => validate_ring(&model, out),
        Command::CommWheel { element, triple, ordering } => {
            let src = Source::new(element.expr, element.element)?;
            let x = torus_element(&src, element.n)?;
            let x = x.to_laurent().map_err(|_| CliError::Usage("comm-wheel needs a Laurent polynomial".into()))?;
            let ts = triples(x.n_vars(), &triple)?;
            let orderings = ordering.map_or(Ordering::BOTH.to_vec(), |o| vec![o]);
            let single = ts.len() == 1 && orderings.len() == 1;
            let mut any_ordering = false;
            for &o in &orderings {
                let mut all = true;
                for &t in &ts {
                    let m = comm_wheel_membership(&x, t, o)?;
                    all &= m;
                    if single {
                        writeln!(out, "{}", verdict(m)).map_err(io)?;
                    } else {
                        writeln!(out, "{} triple={} ordering={o}", verdict(m), show(t)).map_err(io)?;
                    }
                }
                any_ordering |= all;
            }
            Ok(any_ordering)
        }
        Command::Pole { element, model, orientation } => {
            let surf = load_surface(&model)?;
            let src = Source::new(element.expr, element.element)?;
            let f = surface_element(&src, element.n, surf.ring(), Ok)?;
            match pole_check(&f, &surf, orientation)? {
                PoleResult::Laurent(g) => {
                    writeln!(out, "PASS terms={}", g.len()).map_err(io)?;
                    Ok(true)
                }
                PoleResult::Violation(factor) => {
                    let n = f.numerator().n_vars();
                    writeln!(out, "POLE-VIOLATION factor=({})", format_factor(&factor, f.numerator().ring(), n))
                        .map_err(io)?;
                    Ok(false)
                }
            }
        }
        Command::Wheel(args) => {
            if args.campaign {
                wheel_campaign(&args, out)
            } else {
                wheel(&args, out)
            }
        }
        Command::Shuffle { expr, degree, element, model, kernel } => {
            if !degree.is_empty() && degree.len() != expr.len() {
                return Err(CliError::Usage("give one --degree per --expr".into()));
            }
            let sources: Vec<(Source, Option<usize>)> = expr
                .into_iter()
                .enumerate()
                .map(|(i, e)| (Source::Expr(e), degree.get(i).copied()))
                .chain(element.into_iter().map(|f| (Source::File(f), None)))
                .collect();
            if sources.len() < 2 {
                return Err(CliError::Usage("shuffle needs at least two elements".into()));
            }
            let text = match model {
                None => {
                    let fam = TorusFamily::<BigInt>::new();
                    let k = torus_kernel(kernel.as_deref())?;
                    let elems = sources
                        .iter()
                        .map(|(s, n)| Ok(GradedElem::new(torus_element(s, *n)?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    fold_product(&fam, elems, &k)?
                }
                Some(spec) => {
                    let (base, _) = load_ring(&spec)?;
                    let fam = SurfaceFamily::new(base.clone());
                    let k = surface_kernel(kernel.as_deref(), &base)?;
                    let elems = sources
                        .iter()
                        .map(|(s, n)| Ok(GradedElem::new(surface_element(s, *n, &base, Ok)?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    fold_product(&fam, elems, &k)?
                }
            };
            for line in text {
                writeln!(out, "{line}").map_err(io)?;
            }
            Ok(true)
        }
        Command::Campaign { which } => match which {
            CampaignKind::Comm3 { max_size, unions, seed } => {
                let cfg = CampaignConfig { n: 3, size_bound: max_size, unions, seed };
                let report = comm3_campaign(&cfg)?;
                for (idx, ok) in report.verdicts.iter().enumerate() {
                    if !ok {
                        writeln!(out, "FAIL {}", report.subjects[idx]).map_err(io)?;
                    }
                }
                for t in &report.tallies {
                    writeln!(out, "ordering={} all-triples pass={} fail={}", t.ordering, t.pass, t.fail).map_err(io)?;
                }
                writeln!(out, "singles={} unions={}", report.singles, report.total() - report.singles).map_err(io)?;
                writeln!(out, "{}", report.summary()).map_err(io)?;
                Ok(report.failed() == 0)
            }
            CampaignKind::Kp2Wheel { members, randoms, seed, model } => {
                let surf = load_surface(&model)?;
                let cfg = CrossConfig { members, randoms, seed };
                let reports = [surface_cross_validation(&surf, &cfg)?, comm_cross_validation(&cfg)?];
                let (mut total, mut passed) = (0, 0);
                for (name, r) in ["surface", "comm"].iter().zip(&reports) {
                    for line in r.lines.iter().filter(|l| !l.agrees()) {
                        writeln!(out, "{line}").map_err(io)?;
                    }
                    writeln!(out, "checker={name} {}", r.summary()).map_err(io)?;
                    total += r.total();
                    passed += r.passed();
                }
                writeln!(out, "total={total} pass={passed} fail={}", total - passed).map_err(io)?;
                Ok(total == passed)
            }
        },
    }
}

fn fold_product<F: crate::shuffle::CoeffFamily>(
    fam: &F,
    elems: Vec<GradedElem<F::Ring>>,
    k: &crate::shuffle::KernelSpec<crate::shuffle::Elem<F>>,
) -> Result<Vec<String>, CliError> {
    let mut it = elems.into_iter();
    let mut acc = it.next().expect("at least two elements");
    for x in it {
        acc = shuffle_product(fam, &acc, &x, k)?;
    }
    Ok(vec![format!("degree={}", acc.degree), format_expression(&acc.body)])
}

fn validate_ring(model: &str, out: &mut dyn Write) -> Result<bool, CliError> {
    let (ring, surf) = load_ring(model)?;
    let mut ok = true;
    let report = |name: &str, r: &crate::coeffrings::RingModel<BigInt>, out: &mut dyn Write| -> Result<bool, CliError> {
        let v = r.validate();
        writeln!(
            out,
            "{} {name} rank={} associativity={} commutativity={} unit={}",
            if v.is_valid() { "PASS" } else { "FAIL" },
            r.rank(),
            v.associativity_checks,
            v.commutativity_checks,
            v.unit_checks
        )
        .map_err(io)?;
        for violation in &v.violations {
            writeln!(out, "FAIL {violation}").map_err(io)?;
        }
        Ok(v.is_valid())
    };
    ok &= report("ring", &ring, out)?;
    ok &= report("square", &*tensor_power(&ring, 2)?, out)?;
    if let Some(s) = surf {
        let inv = ring.mul(s.omega(), s.omega_inv()) == *ring.unit();
        writeln!(out, "{} omega-inverse", if inv { "PASS" } else { "FAIL" }).map_err(io)?;
        ok &= inv;
        if let Some(l) = s.hyperplane() {
            let t = sparse::add(l, &sparse::neg(ring.unit()));
            let cube = ring.mul(&ring.mul(&t, &t), &t).is_empty();
            writeln!(out, "{} hyperplane-cube", if cube { "PASS" } else { "FAIL" }).map_err(io)?;
            ok &= cube;
        }
    }
    Ok(ok)
}

fn wheel(args: &WheelArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let surf = load_surface(&args.model)?;
    let base = surf.ring();
    let d = base.rank();
    let src = Source::new(args.element.expr.clone(), args.element.element.clone())?;
    let shape = file_shape(&src)?;
    let need_three = |n: usize| -> Result<usize, CliError> {
        if n < 3 {
            return Err(CliError::Usage("the wheel conditions need at least 3 variables".into()));
        }
        Ok(n)
    };
    // Restricted classes live in d^(n-2); full classes in d^n.
    let restricted = match shape {
        Some((len, n)) => restricted_by_length(len, d, args.element.n.unwrap_or(n))?,
        None => args.restricted,
    };
    let mut all = true;
    if restricted {
        let g = surface_element(&src, args.element.n, base, |n| Ok(need_three(n)? - 2))?;
        let g = g.to_laurent().map_err(|_| CliError::Usage("a restricted class must be a Laurent polynomial".into()))?;
        let ts = triples(g.n_vars(), &args.triple)?;
        for &t in &ts {
            let m = surface_wheel_membership(&g, t, &surf)?;
            all &= m;
            report_membership(out, ts.len() == 1, t, m)?;
        }
        return Ok(all);
    }
    let f = surface_element(&src, args.element.n, base, need_three)?;
    let g = match pole_check(&f, &surf, args.orientation)? {
        PoleResult::Laurent(g) => g,
        PoleResult::Violation(factor) => {
            let n = f.numerator().n_vars();
            writeln!(out, "POLE-VIOLATION factor=({})", format_factor(&factor, f.numerator().ring(), n)).map_err(io)?;
            return Ok(false);
        }
    };
    let ts = triples(g.n_vars(), &args.triple)?;
    for &t in &ts {
        let m = surface_wheel_membership(&restrict_small_diagonal(&g, t)?, t, &surf)?;
        all &= m;
        report_membership(out, ts.len() == 1, t, m)?;
    }
    Ok(all)
}

/// Decides the mode of an element file from its coefficient length.
fn restricted_by_length(len: usize, d: usize, n: usize) -> Result<bool, CliError> {
    if n < 3 {
        return Err(CliError::Usage("the wheel conditions need at least 3 variables".into()));
    }
    let full = d.pow(n as u32);
    let restricted = d.pow(n as u32 - 2);
    if len == full {
        Ok(false)
    } else if len == restricted {
        Ok(true)
    } else {
        Err(CliError::Usage(format!("coefficient length {len} is neither {restricted} (restricted) nor {full} (full)")))
    }
}

fn report_membership(out: &mut dyn Write, single: bool, t: (usize, usize, usize), m: bool) -> Result<(), CliError> {
    if single {
        writeln!(out, "{}", verdict(m)).map_err(io)
    } else {
        writeln!(out, "{} triple={}", verdict(m), show(t)).map_err(io)
    }
}

/// Shuffle products of three random degree-1 elements, multiplied by the
/// pole multiplier, through both checkers. The outcome is reported, not
/// assumed.
fn wheel_campaign(args: &WheelArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let surf = load_surface(&args.model)?;
    let base = surf.ring().clone();
    let fam = SurfaceFamily::new(base.clone());
    let k = surface_kernel(args.kernel.as_deref(), &base)?;
    let r1: ModelRing<BigInt> = tensor_power(&base, 1)?;
    let d = base.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let random_gen = |rng: &mut ChaCha8Rng| -> Result<GradedElem<ModelRing<BigInt>>, CliError> {
        let mut f = Laurent::zero(r1.clone(), 1, 0);
        while f.is_zero() {
            for _ in 0..rng.gen_range(1..=2) {
                let c: Vec<BigInt> = (0..d).map(|_| BigInt::from(rng.gen_range(-1..=1))).collect();
                f.add_term(vec![rng.gen_range(-1..=1)], sparse::from_dense(&c));
            }
        }
        Ok(generator_element(&fam, f)?)
    };
    let (mut passed, mut failed) = (0usize, 0usize);
    for sample in 0..args.samples {
        let gens = [random_gen(&mut rng)?, random_gen(&mut rng)?, random_gen(&mut rng)?];
        let p = shuffle_product(&fam, &shuffle_product(&fam, &gens[0], &gens[1], &k)?, &gens[2], &k)?;
        let body: RatElem<ModelRing<BigInt>> = p.body.reduce();
        let mut problems = Vec::new();
        match pole_check(&body, &surf, args.orientation)? {
            PoleResult::Violation(factor) => {
                problems.push(format!("POLE-VIOLATION factor=({})", format_factor(&factor, body.numerator().ring(), 3)));
            }
            PoleResult::Laurent(g) => {
                for t in ordered_triples(3) {
                    if !surface_wheel_membership(&restrict_small_diagonal(&g, t)?, t, &surf)? {
                        problems.push(format!("NOT-MEMBER triple={}", show(t)));
                    }
                }
            }
        }
        if problems.is_empty() {
            passed += 1;
            writeln!(out, "PASS #{sample}").map_err(io)?;
        } else {
            failed += 1;
            writeln!(out, "FAIL #{sample} {}", problems.join(" ")).map_err(io)?;
        }
    }
    writeln!(out, "total={} pass={passed} fail={failed}", passed + failed).map_err(io)?;
    Ok(failed == 0)
}
