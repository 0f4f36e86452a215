use std::process::ExitCode;

use polyoperad::associativity::{classify_associative_modp, is_associative};
use polyoperad::butterfly::{verify_com_from_zin, verify_dendr_from_zin};
use polyoperad::hilbert::{check_koszul_inverse, dims, series_from_equation, DimSeries};
use polyoperad::presentations::{
    check_morphism, diamond_to_dendr, diamond_to_lozenge, dias_to_as, induced_map_rank, positional_substitution,
    relation_spaces_equal, std_to_harpoon, triangle_to_star,
};
use polyoperad::realizations::{
    dendr_free_product, dup_free_product, generated_dim, regenerate, DendrOp, DupOp, Ebt, Label,
};
use polyoperad::rewrite::{build_rewrite_system, RewriteFamily};
use polyoperad::{build_presentation, koszul_dual, Family, LinComb, Presentation, SyntaxTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pres(f: Family, g: u32) -> Presentation {
    build_presentation(f, g, None).unwrap()
}

fn catalan(n: u64) -> u64 {
    // binary trees with n internal nodes, C(2n, n) / (n + 1)
    let mut c = 1u64;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn narayana(n: u64, k: u64) -> u64 {
    binom(n, k) * binom(n, k + 1) / n
}

fn dendr_dim(g: u64, n: u64) -> u64 {
    g.pow(n as u32 - 1) * catalan(n)
}

fn das_dim(g: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    (0..=n - 2).map(|k| g.pow(k as u32 + 1) * (g - 1).pow((n - k - 2) as u32) * narayana(n - 1, k)).sum()
}

fn tdendr_dim(g: u64, n: u64) -> u64 {
    (0..n).map(|k| (g + 1).pow(k as u32) * g.pow((n - k - 1) as u32) * narayana(n, k)).sum()
}

fn quotient_dims(p: &Presentation, upto: usize) -> Vec<u64> {
    (1..=upto).map(|n| p.quotient_dim(n).unwrap()).collect()
}

fn criterion_1() -> Outcome {
    // printed sequences, then the closed forms for every γ
    let printed: &[(Family, u32, &[u64])] = &[
        (Family::DendrStd, 2, &[1, 4, 20, 112]),
        (Family::DAsLozenge, 2, &[1, 2, 6, 22]),
        (Family::TDendr, 1, &[1, 3, 11, 45]),
        (Family::TDendr, 2, &[1, 5, 31, 215]),
    ];
    for (f, g, want) in printed {
        let got = quotient_dims(&pres(*f, *g), 4);
        ensure(got == *want, || format!("{f} γ={g}: {got:?} ≠ {want:?}"))?;
    }
    for g in 1..=3u32 {
        let gg = g as u64;
        let dendr: Vec<u64> = (1..=4).map(|n| dendr_dim(gg, n)).collect();
        let as_: Vec<u64> = vec![1, gg, gg, gg];
        let das: Vec<u64> = (1..=4).map(|n| das_dim(gg, n)).collect();
        let tdendr: Vec<u64> = (1..=4).map(|n| tdendr_dim(gg, n)).collect();
        for (f, want) in [
            (Family::DendrStd, &dendr),
            (Family::DendrHarpoon, &dendr),
            (Family::Dup, &dendr),
            (Family::As, &as_),
            (Family::AsTriangle, &as_),
            (Family::DAsLozenge, &das),
            (Family::DAsDiamond, &das),
            (Family::TDendr, &tdendr),
        ] {
            let got = quotient_dims(&pres(f, g), 4);
            ensure(got == *want, || format!("{f} γ={g}: {got:?} ≠ {want:?}"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for g in 1..=3 {
        let as_ = pres(Family::As, g);
        let dual = koszul_dual(&as_).unwrap();
        let loz = pres(Family::DAsLozenge, g);
        let sigma = positional_substitution(loz.signature(), dual.signature()).unwrap();
        ensure(relation_spaces_equal(&dual, &loz, &sigma).unwrap(), || format!("dual As γ={g} ≠ lozenge"))?;
        let har = pres(Family::DendrHarpoon, g);
        let d = koszul_dual(&har).unwrap();
        let dim = d.relation_span().unwrap().dim();
        ensure(dim == 5 * (g * g) as usize, || format!("dual Dendr γ={g} has span {dim}"))?;
        for p in [as_, har, loz] {
            let dd = koszul_dual(&koszul_dual(&p).unwrap()).unwrap();
            ensure(*dd.relation_span().unwrap() == *p.relation_span().unwrap(), || {
                format!("double dual of {} γ={g} differs", p.tag())
            })?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for g in 1..=3 {
        let (std, har) = (pres(Family::DendrStd, g), pres(Family::DendrHarpoon, g));
        ensure(relation_spaces_equal(&har, &std, &std_to_harpoon(&std, &har).unwrap()).unwrap(), || {
            format!("harpoon/std γ={g}")
        })?;
        let (dia, loz) = (pres(Family::DAsDiamond, g), pres(Family::DAsLozenge, g));
        ensure(relation_spaces_equal(&loz, &dia, &diamond_to_lozenge(&dia, &loz).unwrap()).unwrap(), || {
            format!("lozenge/diamond γ={g}")
        })?;
        let (tri, star) = (pres(Family::AsTriangle, g), pres(Family::As, g));
        ensure(relation_spaces_equal(&star, &tri, &triangle_to_star(&tri, &star).unwrap()).unwrap(), || {
            format!("star/triangle γ={g}")
        })?;
    }
    Ok(())
}

fn is_uniform_right_comb(t: &SyntaxTree) -> bool {
    let label = t.root();
    let mut cur = t.clone();
    while let Some((l, r)) = cur.children() {
        if !l.is_leaf() || cur.root() != label {
            return false;
        }
        cur = r;
    }
    true
}

fn criterion_4() -> Outcome {
    for g in 1..=3u32 {
        for rf in [RewriteFamily::As, RewriteFamily::Dup] {
            let rs = build_rewrite_system(rf, g).unwrap();
            ensure(rs.is_locally_confluent(), || format!("{rf} γ={g} not confluent"))?;
        }
        let rs = build_rewrite_system(RewriteFamily::As, g).unwrap();
        for n in 1..=6 {
            let nfs = rs.normal_forms(n).unwrap();
            let want = if n == 1 { 1 } else { g as usize };
            ensure(nfs.len() == want, || format!("As γ={g} n={n}: {} normal forms", nfs.len()))?;
            ensure(nfs.iter().all(is_uniform_right_comb), || format!("As γ={g} n={n}: non-comb normal form"))?;
        }
    }
    for g in 1..=2u32 {
        let rs = build_rewrite_system(RewriteFamily::Dup, g).unwrap();
        for n in 1..=6 {
            let got = rs.count_normal_forms(n).unwrap();
            ensure(got == dendr_dim(g as u64, n as u64), || format!("Dup γ={g} n={n}: {got}"))?;
        }
    }
    let got = build_rewrite_system(RewriteFamily::Dup, 2).unwrap().count_normal_forms(6).unwrap();
    ensure(got == 4224, || format!("Dup₂(6) = {got}"))
}

fn dendr(op: DendrOp, a: Label, s: &LinComb<Ebt>, t: &LinComb<Ebt>) -> LinComb<Ebt> {
    let mut out = LinComb::zero();
    for (x, c) in s.iter() {
        for (y, d) in t.iter() {
            out.add_scaled(&(c * d), &dendr_free_product(op, a, x, y).unwrap());
        }
    }
    out
}

fn dup(op: DupOp, a: Label, s: &Ebt, t: &Ebt) -> Ebt {
    dup_free_product(op, a, s, t).unwrap().expect("non-leaf operands")
}

/// Checks the three polydendriform and three multiplicial identities on one triple.
fn laws_hold(r: &Ebt, s: &Ebt, t: &Ebt, gamma: u32) -> Result<(), String> {
    use DendrOp::{Prec, Succ};
    use DupOp::{Over, Under};
    let m = |e: &Ebt| LinComb::monomial(e.clone());
    let (lr, ls, lt) = (m(r), m(s), m(t));
    for a in 1..=gamma {
        for a2 in 1..=gamma {
            let (la, la2, lm) = (Label::Fin(a), Label::Fin(a2), Label::Fin(a.min(a2)));
            let e1 = dendr(Prec, la, &dendr(Succ, la2, &lr, &ls), &lt) - dendr(Succ, la2, &lr, &dendr(Prec, la, &ls, &lt));
            let e2 = dendr(Prec, la, &dendr(Prec, la2, &lr, &ls), &lt)
                - dendr(Prec, lm, &lr, &dendr(Prec, la, &ls, &lt))
                - dendr(Prec, lm, &lr, &dendr(Succ, la2, &ls, &lt));
            let e3 = dendr(Succ, lm, &dendr(Prec, la2, &lr, &ls), &lt) + dendr(Succ, lm, &dendr(Succ, la, &lr, &ls), &lt)
                - dendr(Succ, la, &lr, &dendr(Succ, la2, &ls, &lt));
            for (i, e) in [e1, e2, e3].iter().enumerate() {
                if !e.is_zero() {
                    return Err(format!("dendriform identity {} fails on {r}, {s}, {t} at a={a}, a'={a2}", i + 1));
                }
            }
            let d1 = dup(Under, la, &dup(Over, la2, r, s), t) == dup(Over, la2, r, &dup(Under, la, s, t));
            let d2 = dup(Under, la, &dup(Under, la2, r, s), t) == dup(Under, lm, r, &dup(Under, la, s, t));
            let d3 = dup(Over, la, r, &dup(Over, la2, s, t)) == dup(Over, lm, &dup(Over, la, r, s), t);
            if !(d1 && d2 && d3) {
                return Err(format!("multiplicial identity fails on {r}, {s}, {t} at a={a}, a'={a2}"));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let pool2: Vec<Vec<Ebt>> = (0..=4).map(|k| if k == 0 { vec![] } else { Ebt::enumerate(k, 2) }).collect();
    for i in 1..=4 {
        for j in 1..=4 - i {
            for k in 1..=4usize.saturating_sub(i + j) {
                for r in &pool2[i] {
                    for s in &pool2[j] {
                        for t in &pool2[k] {
                            laws_hold(r, s, t, 2)?;
                        }
                    }
                }
            }
        }
    }
    let pool3: Vec<Vec<Ebt>> = (0..=4).map(|k| if k == 0 { vec![] } else { Ebt::enumerate(k, 3) }).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let sizes = loop {
            let s: [usize; 3] = [rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4)];
            if s.iter().sum::<usize>() <= 6 {
                break s;
            }
        };
        let [r, s, t] = sizes.map(|k| pool3[k][rng.gen_range(0..pool3[k].len())].clone());
        laws_hold(&r, &s, &t, 3)?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for t in (1..=4).flat_map(|n| Ebt::enumerate(n, 2)) {
        let want = LinComb::monomial(t.clone());
        ensure(regenerate(&t, false).unwrap() == want, || format!("dendriform recipe fails on {t}"))?;
        ensure(regenerate(&t, true).unwrap() == want, || format!("multiplicial recipe fails on {t}"))?;
    }
    for g in 1..=2u32 {
        for n in 1..=4usize {
            let want = dendr_dim(g as u64, n as u64) as usize;
            for d in [false, true] {
                let got = generated_dim(n, g, d).unwrap();
                ensure(got == want, || format!("span of products γ={g} n={n} dup={d}: {got} ≠ {want}"))?;
            }
        }
    }
    Ok(())
}

fn series(values: impl Fn(u64) -> u64) -> DimSeries {
    DimSeries::from_dims(&(1..=8).map(values).collect::<Vec<_>>())
}

fn criterion_7() -> Outcome {
    const N: usize = 8;
    for g in 1..=3u32 {
        let gg = g as u64;
        let expected = [
            (Family::DendrStd, series(|n| dendr_dim(gg, n))),
            (Family::Dup, series(|n| dendr_dim(gg, n))),
            (Family::As, series(|n| if n == 1 { 1 } else { gg })),
            (Family::DAsLozenge, series(|n| das_dim(gg, n))),
            (Family::TDendr, series(|n| tdendr_dim(gg, n))),
            (Family::Dias, series(|n| n * gg.pow(n as u32 - 1))),
        ];
        for (f, want) in &expected {
            let got = series_from_equation(*f, g, N).unwrap();
            ensure(got == *want, || format!("{f} γ={g}: equation gives {:?}", got.dims().unwrap()))?;
            ensure(dims(*f, g, N).unwrap() == *want, || format!("{f} γ={g}: closed form differs"))?;
        }
        for (a, b) in [(Family::DendrStd, Family::Dias), (Family::As, Family::DAsLozenge)] {
            let ok = check_koszul_inverse(&dims(a, g, N).unwrap(), &dims(b, g, N).unwrap(), N).unwrap();
            ensure(ok, || format!("{a}/{b} γ={g} not inverse"))?;
        }
    }
    Ok(())
}

fn element(p: &Presentation, names: &[String]) -> LinComb<SyntaxTree> {
    names
        .iter()
        .map(|n| LinComb::monomial(SyntaxTree::corolla(p.signature().index_of(n).unwrap())))
        .sum()
}

fn criterion_8() -> Outcome {
    for g in 1..=3u32 {
        let std = pres(Family::DendrStd, g);
        let har = pres(Family::DendrHarpoon, g);
        let dp = pres(Family::Dup, g);
        for b in 1..=g {
            let x = element(&std, &[format!("prec_{b}"), format!("succ_{b}")]);
            ensure(is_associative(&std, &x).unwrap(), || format!("prec+succ γ={g} b={b}"))?;
            let names: Vec<String> = (1..=b).flat_map(|a| [format!("la_{a}"), format!("ra_{a}")]).collect();
            ensure(is_associative(&har, &element(&har, &names)).unwrap(), || format!("harpoon sum γ={g} b={b}"))?;
            for h in ["ul", "ur"] {
                let x = element(&dp, &[format!("{h}_{b}")]);
                ensure(is_associative(&dp, &x).unwrap(), || format!("{h}_{b} γ={g}"))?;
            }
        }
    }
    for g in 1..=2u32 {
        let n = 2 * g as usize;
        for p in [5, 7] {
            // Dendr: prec_1..prec_γ, succ_1..succ_γ; the lines prec_b + succ_b
            let mut want: Vec<Vec<u64>> = (0..g as usize)
                .map(|b| (0..n).map(|i| u64::from(i % g as usize == b)).collect())
                .collect();
            want.sort();
            let got = classify_associative_modp(&pres(Family::DendrStd, g), p).unwrap();
            ensure(got == want, || format!("Dendr γ={g} p={p}: {got:?}"))?;
            let mut want: Vec<Vec<u64>> = (0..n).map(|b| (0..n).map(|i| u64::from(i == b)).collect()).collect();
            want.sort();
            let got = classify_associative_modp(&pres(Family::Dup, g), p).unwrap();
            ensure(got == want, || format!("Dup γ={g} p={p}: {got:?}"))?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for g in 1..=3 {
        let (dias, as_) = (pres(Family::Dias, g), pres(Family::As, g));
        let eta = check_morphism(&dias, &as_, &dias_to_as(&dias, &as_).unwrap()).unwrap();
        ensure(eta.well_defined && eta.surjective_arity2, || format!("η γ={g}: {eta:?}"))?;
        let (dia, den) = (pres(Family::DAsDiamond, g), pres(Family::DendrStd, g));
        let zeta = check_morphism(&dia, &den, &diamond_to_dendr(&dia, &den).unwrap()).unwrap();
        ensure(zeta.well_defined, || format!("ζ γ={g}: {zeta:?}"))?;
    }
    let (dia, den) = (pres(Family::DAsDiamond, 2), pres(Family::DendrStd, 2));
    let rank = induced_map_rank(&dia, &den, &diamond_to_dendr(&dia, &den).unwrap(), 4).unwrap();
    ensure(rank < 22, || format!("ζ₂ rank at arity 4 is {rank}"))
}

fn criterion_10() -> Outcome {
    for g in 1..=4 {
        ensure(verify_com_from_zin(g).unwrap(), || format!("Com from Zin γ={g}"))?;
        ensure(verify_dendr_from_zin(g).unwrap(), || format!("Dendr from Zin γ={g}"))?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("dimension tables", criterion_1),
        ("duality", criterion_2),
        ("basis changes", criterion_3),
        ("rewriting", criterion_4),
        ("free-algebra laws", criterion_5),
        ("free generation", criterion_6),
        ("hilbert series", criterion_7),
        ("associativity", criterion_8),
        ("morphisms", criterion_9),
        ("butterfly", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {}: PASS ({name})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
