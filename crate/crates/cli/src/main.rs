use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use polyoperad::exact_linear::{format_lincomb, parse_rational};
use polyoperad::hilbert::{check_koszul_inverse, dim_formula, series_from_equation};
use polyoperad::realizations::{free_op_of, free_product, schroder_compose, AltSchroderTree, Ebt};
use polyoperad::rewrite::{build_rewrite_system, RewriteFamily};
use polyoperad::verify::{self, CheckResult, Status, VerificationReport, VerifyOptions};
use polyoperad::{associativity, butterfly, export, Error, Family, LinComb, Presentation, Rational, Signature};

#[derive(Parser)]
#[command(name = "polyoperad", version, about = "Exact computations with γ-parametrized operads")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest arity used by `verify` and as the default order elsewhere.
    #[arg(long, global = true, value_name = "N")]
    max_arity: Option<usize>,
    /// Prime for modular searches.
    #[arg(long, global = true, value_name = "P")]
    prime: Option<u64>,
    /// Seed for randomized samples.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of the arity 1..N components.
    Dims {
        family: Family,
        gamma: u32,
        n: Option<usize>,
        /// Parameter of the D family.
        #[arg(long)]
        q: Option<String>,
        /// Count quotient monomials instead of using the closed form.
        #[arg(long)]
        computed: bool,
    },
    /// Generating series from the functional equation, or a duality check.
    Series {
        /// Check `A(−B(−t)) = t` for two families instead.
        #[arg(long, num_args = 2, value_names = ["FAM_A", "FAM_B"])]
        check_dual: Option<Vec<Family>>,
        #[arg(value_name = "FAMILY_OR_GAMMA")]
        args: Vec<String>,
    },
    /// Koszul dual presentation.
    Dual {
        family: Family,
        gamma: u32,
        #[arg(long)]
        q: Option<String>,
    },
    /// Normal form of a tree under the rewriting system of As or Dup.
    Nf { family: RewriteFamily, gamma: u32, tree: String },
    /// Partial composition `s ∘_i t`.
    Compose {
        #[command(subcommand)]
        kind: ComposeKind,
    },
    /// Product of two edge-valued trees in a free algebra, e.g. `prec_1` or `ur_2`.
    Product { gamma: u32, op: String, left: String, right: String },
    /// Associative elements.
    Assoc {
        #[command(subcommand)]
        action: AssocAction,
    },
    /// Butterfly morphisms.
    Butterfly {
        #[command(subcommand)]
        action: ButterflyAction,
    },
    /// Run verification suites, all of them when none is named.
    Verify { suites: Vec<String> },
    /// Export a presentation as JSON or a tree as DOT.
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum ComposeKind {
    /// Grafting of syntax trees over a family's generators.
    Tree { family: Family, gamma: u32, left: String, i: usize, right: String },
    /// Composition of alternating Schröder trees.
    Schroder { left: String, i: usize, right: String },
}

#[derive(Subcommand)]
enum AssocAction {
    /// All associative lines over F_p.
    Classify { family: Family, gamma: u32 },
    /// Whether `Σ c_g g` is associative, coefficients in generator order.
    Check {
        family: Family,
        gamma: u32,
        #[arg(value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ButterflyAction {
    Verify { gamma: u32 },
}

#[derive(Args)]
struct ExportArgs {
    /// Emit Graphviz DOT for a tree.
    #[arg(long)]
    dot: bool,
    /// `presentation FAMILY GAMMA`, or with `--dot`: `tree FAMILY GAMMA TREE`, `ebt TREE`, `schroder TREE`.
    #[arg(required = true, num_args = 1..)]
    args: Vec<String>,
}

enum Failure {
    Usage(String),
    Lib(Error, Option<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e, None)
    }
}

type Outcome = Result<(String, bool), Failure>;

fn with_input<T>(input: &str, r: polyoperad::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Lib(e, Some(input.to_string())))
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, Failure> {
    s.parse().map_err(|_| Failure::Usage(format!("invalid {what} `{s}`")))
}

fn parse_family(s: &str) -> Result<Family, Failure> {
    Ok(s.parse::<Family>()?)
}

fn presentation(family: Family, gamma: u32, q: Option<&str>) -> Result<Presentation, Failure> {
    let q = match (family, q) {
        (Family::D, None) => Some(Rational::from_integer(1.into())),
        (_, q) => q.map(parse_rational).transpose()?,
    };
    Ok(polyoperad::build_presentation(family, gamma, q)?)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        text()
    }
}

fn join(xs: &[String]) -> String {
    xs.join(", ")
}

fn numbers(xs: &[String]) -> Vec<serde_json::Value> {
    xs.iter().map(|x| x.parse::<u64>().map_or_else(|_| json!(x), |n| json!(n))).collect()
}

fn dims_cmd(cli: &Cli, family: Family, gamma: u32, n: Option<usize>, q: Option<&str>, computed: bool) -> Outcome {
    let n = n.or(cli.max_arity).unwrap_or(8);
    if n == 0 {
        return Err(Failure::Usage("N must be at least 1".into()));
    }
    let closed = !computed && !matches!(family, Family::D | Family::Trias);
    if q.is_some() && family != Family::D {
        return Err(Error::UnexpectedQ.into());
    }
    let dims: Vec<String> = if closed {
        (1..=n as u64).map(|k| dim_formula(family, gamma, k).map(|d| d.to_string())).collect::<Result<_, _>>()?
    } else {
        let p = presentation(family, gamma, q)?;
        (1..=n).map(|k| p.quotient_dim(k).map(|d| d.to_string())).collect::<Result<_, _>>()?
    };
    let value = json!({ "family": family.tag(), "gamma": gamma, "dims": numbers(&dims) });
    Ok((emit(cli.json, &value, || join(&dims)), true))
}

fn series_cmd(cli: &Cli, check_dual: Option<&[Family]>, args: &[String]) -> Outcome {
    let order = |s: Option<&String>| match s {
        Some(s) => parse_num::<usize>(s, "order"),
        None => Ok(cli.max_arity.unwrap_or(8)),
    };
    if let Some(fams) = check_dual {
        let [a, b] = fams else { return Err(Failure::Usage("--check-dual takes two families".into())) };
        let [g, rest @ ..] = args else { return Err(Failure::Usage("expected GAMMA [N]".into())) };
        if rest.len() > 1 {
            return Err(Failure::Usage("expected GAMMA [N]".into()));
        }
        let gamma = parse_num(g, "gamma")?;
        let n = order(rest.first())?;
        let sa = series_from_equation(*a, gamma, n)?;
        let sb = series_from_equation(*b, gamma, n)?;
        let ok = check_koszul_inverse(&sa, &sb, n)?;
        let status = if ok { Status::Pass } else { Status::Fail };
        let id = format!("koszul-inverse {a} {b} γ={gamma} N={n}");
        let report = VerificationReport::new(vec![CheckResult { check_id: id, status, detail: String::new() }]);
        return Ok((emit(cli.json, &report, || status.to_string()), ok));
    }
    let [f, g, rest @ ..] = args else { return Err(Failure::Usage("expected FAMILY GAMMA [N]".into())) };
    if rest.len() > 1 {
        return Err(Failure::Usage("expected FAMILY GAMMA [N]".into()));
    }
    let family = parse_family(f)?;
    let gamma = parse_num(g, "gamma")?;
    let n = order(rest.first())?;
    let dims: Vec<String> = series_from_equation(family, gamma, n)?.dims()?.iter().map(|d| d.to_string()).collect();
    let value = json!({ "family": family.tag(), "gamma": gamma, "series": numbers(&dims) });
    Ok((emit(cli.json, &value, || join(&dims)), true))
}

fn describe(p: &Presentation) -> String {
    let sig = p.signature();
    let mut out = format!("{} (gamma = {})\n", p.tag(), p.gamma());
    out.push_str(&format!("generators: {}\n", sig.names().collect::<Vec<_>>().join(" ")));
    out.push_str(&format!("relations: {}", p.relations().len()));
    for r in p.relations() {
        out.push_str("\n  ");
        out.push_str(&format_lincomb(r, |t| sig.format_tree(t)));
    }
    out
}

fn dual_cmd(cli: &Cli, family: Family, gamma: u32, q: Option<&str>) -> Outcome {
    let d = polyoperad::koszul_dual(&presentation(family, gamma, q)?)?;
    Ok((emit(cli.json, &d.to_json(), || describe(&d)), true))
}

fn nf_cmd(cli: &Cli, family: RewriteFamily, gamma: u32, tree: &str) -> Outcome {
    let rs = build_rewrite_system(family, gamma)?;
    let sig = rs.signature();
    let t = with_input(tree, sig.parse_tree(tree))?;
    let nf = sig.format_tree(&rs.normal_form(&t)?);
    let value = json!({ "input": sig.format_tree(&t), "normal_form": nf });
    Ok((emit(cli.json, &value, || nf.clone()), true))
}

fn compose_cmd(cli: &Cli, kind: &ComposeKind) -> Outcome {
    let out = match kind {
        ComposeKind::Tree { family, gamma, left, i, right } => {
            let p = presentation(*family, *gamma, None)?;
            let sig = p.signature();
            let s = with_input(left, sig.parse_tree(left))?;
            let t = with_input(right, sig.parse_tree(right))?;
            sig.format_tree(&s.graft(*i, &t)?)
        }
        ComposeKind::Schroder { left, i, right } => {
            let s = with_input(left, AltSchroderTree::parse(left))?;
            let t = with_input(right, AltSchroderTree::parse(right))?;
            schroder_compose(&s, *i, &t)?.to_string()
        }
    };
    let value = json!({ "result": out });
    Ok((emit(cli.json, &value, || out.clone()), true))
}

#[derive(Serialize)]
struct EbtTerm {
    coeff: String,
    tree: String,
}

fn product_cmd(cli: &Cli, gamma: u32, op: &str, left: &str, right: &str) -> Outcome {
    let family = if op.starts_with("prec_") || op.starts_with("succ_") { Family::DendrStd } else { Family::Dup };
    let p = presentation(family, gamma, None)?;
    let sig: &Signature = p.signature();
    let g = sig.index_of(op).ok_or_else(|| Error::UnknownGenerator(op.to_string()))?;
    let (fop, a) = free_op_of(sig, g)?;
    let s = with_input(left, Ebt::parse(left))?;
    let t = with_input(right, Ebt::parse(right))?;
    s.validate(gamma)?;
    t.validate(gamma)?;
    let v = free_product(fop, a, &LinComb::monomial(s), &LinComb::monomial(t))?;
    let terms: Vec<EbtTerm> =
        v.iter().map(|(t, c)| EbtTerm { coeff: polyoperad::exact_linear::format_rational(c), tree: t.to_string() }).collect();
    Ok((emit(cli.json, &terms, || format_lincomb(&v, |t| t.to_string())), true))
}

fn assoc_cmd(cli: &Cli, action: &AssocAction) -> Outcome {
    match action {
        AssocAction::Classify { family, gamma } => {
            let pres = presentation(*family, *gamma, None)?;
            let p = cli.prime.unwrap_or(5);
            let lines = associativity::classify_associative_modp(&pres, p)?;
            let names: Vec<&str> = pres.signature().names().collect();
            let value = json!({ "family": family.tag(), "gamma": gamma, "prime": p, "generators": names, "lines": lines });
            let text = || {
                let mut out = format!("{} associative lines over F_{p} in ({})", lines.len(), names.join(", "));
                for l in &lines {
                    out.push_str(&format!("\n({})", l.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")));
                }
                out
            };
            Ok((emit(cli.json, &value, text), true))
        }
        AssocAction::Check { family, gamma, coeffs } => {
            let pres = presentation(*family, *gamma, None)?;
            let n = pres.signature().len();
            if coeffs.len() != n {
                return Err(Failure::Usage(format!("expected {n} coefficients, got {}", coeffs.len())));
            }
            let c = coeffs.iter().map(|s| with_input(s, parse_rational(s))).collect::<Result<Vec<_>, _>>()?;
            let ok = associativity::is_associative(&pres, &associativity::element(&c))?;
            let status = if ok { Status::Pass } else { Status::Fail };
            let value = json!({ "associative": ok });
            Ok((emit(cli.json, &value, || format!("{status} associative")), ok))
        }
    }
}

fn butterfly_cmd(cli: &Cli, gamma: u32) -> Outcome {
    let mut checks = Vec::new();
    for (prop, cs) in [
        ("com-from-zin", butterfly::com_from_zin_checks(gamma)?),
        ("dendr-from-zin", butterfly::dendr_from_zin_checks(gamma, butterfly::DendrFromZin::Standard)?),
    ] {
        let failing: Vec<&str> = cs.iter().filter(|c| !c.holds()).map(|c| c.name.as_str()).collect();
        let detail = if failing.is_empty() {
            format!("{} relations reduce to zero", cs.len())
        } else {
            format!("nonzero remainder for {}", failing.join("; "))
        };
        let status = if failing.is_empty() { Status::Pass } else { Status::Fail };
        checks.push(CheckResult { check_id: format!("{prop} γ={gamma}"), status, detail });
    }
    let report = VerificationReport::new(checks);
    let ok = report.passed();
    Ok((emit(cli.json, &report, || report.to_string()), ok))
}

fn verify_cmd(cli: &Cli, suites: &[String]) -> Outcome {
    let mut opts = VerifyOptions::default();
    if let Some(n) = cli.max_arity {
        opts.max_arity = n;
    }
    if let Some(p) = cli.prime {
        opts.primes = vec![p];
    }
    if let Some(s) = cli.seed {
        opts.seed = s;
    }
    let ids: Vec<&str> = if suites.is_empty() { verify::SUITES.to_vec() } else { suites.iter().map(String::as_str).collect() };
    for id in &ids {
        if !verify::SUITES.contains(id) {
            return Err(Failure::Usage(format!("unknown suite `{id}`; known: {}", verify::SUITES.join(", "))));
        }
    }
    let report = verify::run(&ids, &opts)?;
    let ok = report.passed();
    Ok((emit(cli.json, &report, || report.to_string()), ok))
}

fn export_cmd(a: &ExportArgs) -> Outcome {
    let args: Vec<&str> = a.args.iter().map(String::as_str).collect();
    let gamma = |s: &str| parse_num::<u32>(s, "gamma");
    let out = match (a.dot, args.as_slice()) {
        (false, ["presentation", f, g]) => {
            let p = presentation(parse_family(f)?, gamma(g)?, None)?;
            serde_json::to_string_pretty(&p.to_json()).expect("serializable")
        }
        (true, ["tree", f, g, t]) => {
            let p = presentation(parse_family(f)?, gamma(g)?, None)?;
            let tree = with_input(t, p.signature().parse_tree(t))?;
            export::syntax_tree_to_dot(p.signature(), &tree)
        }
        (true, ["ebt", t]) => export::ebt_to_dot(&with_input(t, Ebt::parse(t))?),
        (true, ["schroder", t]) => export::schroder_to_dot(&with_input(t, AltSchroderTree::parse(t))?),
        _ => {
            return Err(Failure::Usage(
                "expected `presentation FAMILY GAMMA`, or with --dot `tree FAMILY GAMMA TREE`, `ebt TREE`, `schroder TREE`"
                    .into(),
            ))
        }
    };
    Ok((out, true))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Dims { family, gamma, n, q, computed } => dims_cmd(cli, *family, *gamma, *n, q.as_deref(), *computed),
        Command::Series { check_dual, args } => series_cmd(cli, check_dual.as_deref(), args),
        Command::Dual { family, gamma, q } => dual_cmd(cli, *family, *gamma, q.as_deref()),
        Command::Nf { family, gamma, tree } => nf_cmd(cli, *family, *gamma, tree),
        Command::Compose { kind } => compose_cmd(cli, kind),
        Command::Product { gamma, op, left, right } => product_cmd(cli, *gamma, op, left, right),
        Command::Assoc { action } => assoc_cmd(cli, action),
        Command::Butterfly { action: ButterflyAction::Verify { gamma } } => butterfly_cmd(cli, *gamma),
        Command::Verify { suites } => verify_cmd(cli, suites),
        Command::Export(a) => export_cmd(a),
    }
}

fn report_failure(f: Failure) {
    match f {
        Failure::Usage(msg) => eprintln!("error: {msg}"),
        Failure::Lib(e, input) => {
            eprintln!("error: {e}");
            if let (Error::Parse { pos, .. }, Some(src)) = (&e, input) {
                let col = src.get(..*pos).map_or(*pos, |s| s.chars().count());
                eprintln!("  {src}");
                eprintln!("  {}^", " ".repeat(col));
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            // a closed pipe is not an error of the computation
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            report_failure(f);
            ExitCode::from(2)
        }
    }
}
