//! Named verification suites over every module, with a pass/fail report.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::associativity::{classify_associative_modp, element, is_associative, line_of};
use crate::butterfly::{verify_com_from_zin, verify_dendr_from_zin};
use crate::error::{Error, Result};
use crate::exact_linear::{rat, LinComb, Rational};
use crate::free_operad::SyntaxTree;
use crate::hilbert::{catalan, check_koszul_inverse, dim_formula, dims, series_from_equation};
use crate::presentations::{
    build_presentation, check_morphism, diamond_to_dendr, diamond_to_lozenge, dias_to_as, induced_map_rank,
    koszul_dual, positional_substitution, relation_spaces_equal, std_to_harpoon, triangle_to_star, Family,
    Presentation,
};
use crate::realizations::{evaluate_lin, generated_dim, regenerate, Ebt};
use crate::rewrite::{build_rewrite_system, RewriteFamily};

pub const SUITES: &[&str] = &[
    "dims",
    "duality",
    "dual-roundtrip",
    "basis-change",
    "rewriting",
    "free-laws",
    "free-generation",
    "hilbert",
    "associativity",
    "morphisms",
    "butterfly",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn new(check_id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self { check_id: check_id.into(), status, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub status: Status,
}

impl VerificationReport {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        let status = if checks.iter().all(|c| c.status == Status::Pass) { Status::Pass } else { Status::Fail };
        Self { checks, status }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", c.status, c.check_id, c.detail)?;
        }
        write!(f, "overall: {}", self.status)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_arity: usize,
    pub max_gamma: u32,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_arity: 4, max_gamma: 3, primes: vec![5, 7], seed: 0, samples: 500 }
    }
}

pub fn run(ids: &[&str], opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    for id in ids {
        checks.extend(run_suite(id, opts)?);
    }
    Ok(VerificationReport::new(checks))
}

pub fn run_all(opts: &VerifyOptions) -> Result<VerificationReport> {
    run(SUITES, opts)
}

pub fn run_suite(id: &str, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    match id {
        "dims" => suite_dims(opts),
        "duality" => suite_duality(opts),
        "dual-roundtrip" => suite_dual_roundtrip(opts),
        "basis-change" => suite_basis_change(opts),
        "rewriting" => suite_rewriting(opts),
        "free-laws" => suite_free_laws(opts),
        "free-generation" => suite_free_generation(opts),
        "hilbert" => suite_hilbert(opts),
        "associativity" => suite_associativity(opts),
        "morphisms" => suite_morphisms(opts),
        "butterfly" => suite_butterfly(opts),
        _ => Err(Error::Invalid(format!("unknown suite `{id}`"))),
    }
}

fn build(f: Family, g: u32) -> Result<Presentation> {
    build_presentation(f, g, None)
}

fn gammas(opts: &VerifyOptions) -> std::ops::RangeInclusive<u32> {
    1..=opts.max_gamma
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn suite_dims(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let families = [
        Family::DendrHarpoon,
        Family::DendrStd,
        Family::As,
        Family::AsTriangle,
        Family::DAsLozenge,
        Family::DAsDiamond,
        Family::Dup,
        Family::TDendr,
        Family::Dias,
    ];
    let mut out = Vec::new();
    for f in families {
        for g in gammas(opts) {
            let p = build(f, g)?;
            let got = (1..=opts.max_arity).map(|n| p.quotient_dim(n)).collect::<Result<Vec<_>>>()?;
            let want = (1..=opts.max_arity)
                .map(|n| dim_formula(f, g, n as u64).map(|d| d.to_string()))
                .collect::<Result<Vec<_>>>()?;
            let ok = got.iter().map(u64::to_string).eq(want.iter().cloned());
            out.push(CheckResult::new(
                format!("dims/{}/{g}", f.tag()),
                ok,
                format!("computed {}; expected {}", join(&got), want.join(", ")),
            ));
        }
    }
    Ok(out)
}

fn suite_duality(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for g in gammas(opts) {
        let dual = koszul_dual(&build(Family::As, g)?)?;
        let loz = build(Family::DAsLozenge, g)?;
        let eq = relation_spaces_equal(&dual, &loz, &positional_substitution(loz.signature(), dual.signature())?)?;
        out.push(CheckResult::new(format!("duality/As/{g}"), eq, "dual relations span the lozenge relations"));
        let d = koszul_dual(&build(Family::DendrHarpoon, g)?)?;
        let dim = d.relation_span()?.dim();
        let want = 5 * (g * g) as usize;
        out.push(CheckResult::new(
            format!("duality/Dendr/{g}"),
            dim == want,
            format!("dual relation span {dim}, expected {want}"),
        ));
    }
    Ok(out)
}

fn suite_dual_roundtrip(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for f in [Family::DendrHarpoon, Family::DendrStd, Family::As, Family::DAsLozenge, Family::Dup, Family::TDendr] {
        for g in gammas(opts) {
            let p = build(f, g)?;
            let dd = koszul_dual(&koszul_dual(&p)?)?;
            let same_names = dd.signature().names().eq(p.signature().names());
            let ok = same_names && *dd.relation_span()? == *p.relation_span()?;
            out.push(CheckResult::new(format!("dual-roundtrip/{}/{g}", f.tag()), ok, "double dual has the same relation span"));
        }
    }
    Ok(out)
}

fn suite_basis_change(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for g in gammas(opts) {
        let std = build(Family::DendrStd, g)?;
        let har = build(Family::DendrHarpoon, g)?;
        let ok = relation_spaces_equal(&har, &std, &std_to_harpoon(&std, &har)?)?;
        out.push(CheckResult::new(format!("basis-change/harpoon-std/{g}"), ok, "same relation space"));
        let dia = build(Family::DAsDiamond, g)?;
        let loz = build(Family::DAsLozenge, g)?;
        let ok = relation_spaces_equal(&loz, &dia, &diamond_to_lozenge(&dia, &loz)?)?;
        out.push(CheckResult::new(format!("basis-change/lozenge-diamond/{g}"), ok, "same relation space"));
        let tri = build(Family::AsTriangle, g)?;
        let star = build(Family::As, g)?;
        let ok = relation_spaces_equal(&star, &tri, &triangle_to_star(&tri, &star)?)?;
        out.push(CheckResult::new(format!("basis-change/star-triangle/{g}"), ok, "same relation space"));
    }
    Ok(out)
}

fn suite_rewriting(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let max_n = opts.max_arity.max(6);
    for (rf, f, gmax) in [(RewriteFamily::As, Family::As, opts.max_gamma), (RewriteFamily::Dup, Family::Dup, opts.max_gamma.min(2))] {
        for g in gammas(opts) {
            let rs = build_rewrite_system(rf, g)?;
            let report = rs.check_local_confluence();
            let detail = match &report.witness {
                None => format!("{} rules, all critical pairs joinable", rs.rules().len()),
                Some(w) => format!("critical pair at {w} not joinable"),
            };
            out.push(CheckResult::new(format!("rewriting/confluence/{rf}/{g}"), report.confluent, detail));
            if g > gmax {
                continue;
            }
            let got = (1..=max_n).map(|n| rs.count_normal_forms(n)).collect::<Result<Vec<_>>>()?;
            let want = (1..=max_n)
                .map(|n| dim_formula(f, g, n as u64).map(|d| u64::try_from(d).expect("small")))
                .collect::<Result<Vec<_>>>()?;
            out.push(CheckResult::new(
                format!("rewriting/normal-forms/{rf}/{g}"),
                got == want,
                format!("counts {}; expected {}", join(&got), join(&want)),
            ));
        }
    }
    for g in gammas(opts) {
        let rs = build_rewrite_system(RewriteFamily::As, g)?;
        let mut ok = true;
        for n in 2..=max_n {
            let nfs = rs.normal_forms(n)?;
            ok &= nfs.iter().all(is_uniform_right_comb);
        }
        out.push(CheckResult::new(format!("rewriting/as-combs/{g}"), ok, "normal forms are uniformly labeled right combs"));
    }
    Ok(out)
}

fn is_uniform_right_comb(t: &SyntaxTree) -> bool {
    let Some(g) = t.root() else { return true };
    let mut cur = t.clone();
    while let Some((l, r)) = cur.children() {
        if !l.is_leaf() || cur.root() != Some(g) {
            return false;
        }
        cur = r;
    }
    true
}

fn law_families(g: u32) -> Result<Vec<(&'static str, Presentation)>> {
    Ok(vec![
        ("polydendriform", build_presentation(Family::D, g, Some(rat(1)))?),
        ("multiplicial", build(Family::Dup, g)?),
    ])
}

fn relation_holds(p: &Presentation, rel: &LinComb<SyntaxTree>, triple: [&Ebt; 3]) -> Result<bool> {
    let ins = triple.map(|e| LinComb::monomial(e.clone()));
    Ok(evaluate_lin(p.signature(), rel, &ins)?.is_zero())
}

fn suite_free_laws(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    // exhaustive: non-leaf triples with at most four internal nodes, γ = 2
    let pool: Vec<Vec<Ebt>> = (0..=4).map(|k| if k == 0 { Vec::new() } else { Ebt::enumerate(k, 2) }).collect();
    for (name, p) in law_families(2)? {
        let mut count = 0usize;
        let mut ok = true;
        for a in 1..=2 {
            for b in 1..=4 - a - 1 {
                for c in 1..=4 - a - b {
                    for x in &pool[a] {
                        for y in &pool[b] {
                            for z in &pool[c] {
                                for rel in p.relations() {
                                    ok &= relation_holds(&p, rel, [x, y, z])?;
                                }
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        out.push(CheckResult::new(format!("free-laws/exhaustive/{name}/2"), ok, format!("{count} triples")));
    }
    // seeded random triples with at most six internal nodes, γ = 3
    let pool: Vec<Vec<Ebt>> = (0..=4).map(|k| if k == 0 { Vec::new() } else { Ebt::enumerate(k, 3) }).collect();
    let sizes: Vec<[usize; 3]> = (1..=4)
        .flat_map(|a| (1..=4).flat_map(move |b| (1..=4).map(move |c| [a, b, c])))
        .filter(|s| s.iter().sum::<usize>() <= 6)
        .collect();
    for (name, p) in law_families(3)? {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut ok = true;
        for _ in 0..opts.samples {
            let s = sizes.choose(&mut rng).expect("nonempty");
            let pick = |rng: &mut ChaCha8Rng, k: usize| pool[k][rng.gen_range(0..pool[k].len())].clone();
            let (x, y, z) = (pick(&mut rng, s[0]), pick(&mut rng, s[1]), pick(&mut rng, s[2]));
            for rel in p.relations() {
                ok &= relation_holds(&p, rel, [&x, &y, &z])?;
            }
        }
        out.push(CheckResult::new(
            format!("free-laws/random/{name}/3"),
            ok,
            format!("{} seeded triples (seed {})", opts.samples, opts.seed),
        ));
    }
    Ok(out)
}

fn suite_free_generation(_opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (name, dup) in [("polydendriform", false), ("multiplicial", true)] {
        let mut ok = true;
        let mut count = 0;
        for t in (1..=4).flat_map(|n| Ebt::enumerate(n, 2)) {
            ok &= regenerate(&t, dup)? == LinComb::monomial(t);
            count += 1;
        }
        out.push(CheckResult::new(format!("free-generation/recipe/{name}/2"), ok, format!("{count} trees rebuilt")));
        for g in 1..=2u32 {
            let got = (1..=4).map(|n| generated_dim(n, g, dup)).collect::<Result<Vec<_>>>()?;
            let want: Vec<usize> = (1..=4u32).map(|n| (g as usize).pow(n - 1) * catalan(n as u64) as usize).collect();
            out.push(CheckResult::new(
                format!("free-generation/span/{name}/{g}"),
                got == want,
                format!("spans {}; expected {}", join(&got), join(&want)),
            ));
        }
    }
    Ok(out)
}

fn suite_hilbert(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    const N: usize = 8;
    let mut out = Vec::new();
    for f in [Family::DendrStd, Family::As, Family::DAsLozenge, Family::Dup, Family::TDendr, Family::Dias] {
        for g in gammas(opts) {
            let ok = series_from_equation(f, g, N)? == dims(f, g, N)?;
            out.push(CheckResult::new(format!("hilbert/equation/{}/{g}", f.tag()), ok, format!("coefficients up to t^{N}")));
        }
    }
    for (a, b) in [(Family::DendrStd, Family::Dias), (Family::As, Family::DAsLozenge)] {
        for g in gammas(opts) {
            let ok = check_koszul_inverse(&dims(a, g, N)?, &dims(b, g, N)?, N)?;
            out.push(CheckResult::new(
                format!("hilbert/inverse/{}-{}/{g}", a.tag(), b.tag()),
                ok,
                format!("A(-B(-t)) = t up to t^{N}"),
            ));
        }
    }
    Ok(out)
}

fn named(p: &Presentation, coeffs: &[(&str, i64)]) -> Result<Vec<Rational>> {
    let mut c = vec![rat(0); p.signature().len()];
    for (n, k) in coeffs {
        let i = p.signature().index_of(n).ok_or_else(|| Error::UnknownGenerator(n.to_string()))?;
        c[i] = rat(*k);
    }
    Ok(c)
}

fn suite_associativity(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for g in gammas(opts) {
        let std = build(Family::DendrStd, g)?;
        let har = build(Family::DendrHarpoon, g)?;
        let dup = build(Family::Dup, g)?;
        let mut ok = true;
        for b in 1..=g {
            ok &= is_associative(&std, &element(&named(&std, &[(&format!("prec_{b}"), 1), (&format!("succ_{b}"), 1)])?))?;
            let sum: Vec<(String, i64)> = (1..=b).flat_map(|a| [(format!("la_{a}"), 1), (format!("ra_{a}"), 1)]).collect();
            let sum: Vec<(&str, i64)> = sum.iter().map(|(n, k)| (n.as_str(), *k)).collect();
            ok &= is_associative(&har, &element(&named(&har, &sum)?))?;
            for h in ["ul", "ur"] {
                ok &= is_associative(&dup, &element(&named(&dup, &[(&format!("{h}_{b}"), 1)])?))?;
            }
        }
        out.push(CheckResult::new(format!("associativity/families/{g}"), ok, "sums of paired operations and single multiplicial operations"));
    }
    for g in 1..=opts.max_gamma.min(2) {
        for &p in &opts.primes {
            let std = build(Family::DendrStd, g)?;
            let want: Vec<Vec<u64>> = (1..=g)
                .map(|b| line_of(&named(&std, &[(&format!("prec_{b}"), 1), (&format!("succ_{b}"), 1)])?, p))
                .collect::<Result<_>>()?;
            out.push(classification_check(&std, "Dendr", g, p, want)?);
            let dup = build(Family::Dup, g)?;
            let want: Vec<Vec<u64>> = (0..2 * g as usize)
                .map(|i| (0..2 * g as usize).map(|j| u64::from(i == j)).collect())
                .collect();
            out.push(classification_check(&dup, "Dup", g, p, want)?);
        }
    }
    Ok(out)
}

fn classification_check(p: &Presentation, name: &str, g: u32, prime: u64, mut want: Vec<Vec<u64>>) -> Result<CheckResult> {
    let got = classify_associative_modp(p, prime)?;
    want.sort();
    Ok(CheckResult::new(
        format!("associativity/classify/{name}/{g}/p{prime}"),
        got == want,
        format!("{} lines found, {} expected", got.len(), want.len()),
    ))
}

fn suite_morphisms(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for g in gammas(opts) {
        let dias = build(Family::Dias, g)?;
        let as_ = build(Family::As, g)?;
        let eta = check_morphism(&dias, &as_, &dias_to_as(&dias, &as_)?)?;
        out.push(CheckResult::new(
            format!("morphisms/eta/{g}"),
            eta.well_defined && eta.surjective_arity2,
            format!("well defined: {}, onto in arity 2: {}", eta.well_defined, eta.surjective_arity2),
        ));
        let dia = build(Family::DAsDiamond, g)?;
        let dendr = build(Family::DendrStd, g)?;
        let zeta = check_morphism(&dia, &dendr, &diamond_to_dendr(&dia, &dendr)?)?;
        out.push(CheckResult::new(format!("morphisms/zeta/{g}"), zeta.well_defined, format!("well defined: {}", zeta.well_defined)));
    }
    if opts.max_gamma >= 2 {
        let dia = build(Family::DAsDiamond, 2)?;
        let dendr = build(Family::DendrStd, 2)?;
        let rank = induced_map_rank(&dia, &dendr, &diamond_to_dendr(&dia, &dendr)?, 4)?;
        let src = dia.quotient_dim(4)?;
        out.push(CheckResult::new(
            "morphisms/zeta-rank/2/4",
            (rank as u64) < src,
            format!("rank {rank} on a source of dimension {src}"),
        ));
    }
    Ok(out)
}

fn suite_butterfly(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for g in 1..=opts.max_gamma.max(4) {
        out.push(CheckResult::new(format!("butterfly/com-from-zin/{g}"), verify_com_from_zin(g)?, "commutative structure from ⧢"));
        out.push(CheckResult::new(format!("butterfly/dendr-from-zin/{g}"), verify_dendr_from_zin(g)?, "polydendriform structure from ⧢"));
    }
    Ok(out)
}
