//! One pass/fail line per acceptance criterion. Runs as a plain binary so the
//! lines are printed whether or not the criteria hold.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leibniz::algebra::LeibnizAlgebra;
use leibniz::bilinear::{congruence_canonical, extract_v_form, CanonicalKind, KindTag};
use leibniz::catalogue::{sample_params, verify_catalogue, Catalogue, EntryReport};
use leibniz::field::{Field, GaussianRational as G};
use leibniz::invariants::signature;
use leibniz::iso::{
    decide_isomorphism, embed_algebra, verify_witness, FixtureFile, IsoVerdict, ResolvedFixture, SearchConfig,
    WitnessMatrix,
};
use leibniz::lemmas::lemma5_bounds;
use leibniz::linalg::Matrix;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn failures_in(reports: &[EntryReport], checks: &[&str]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.passed && checks.contains(&c.check.as_str()))
                .map(move |c| format!("{} {}: {}", r.label(), c.check, c.detail))
        })
        .collect()
}

fn summarise(fails: &[String]) -> String {
    match fails.len() {
        0 => String::new(),
        n if n <= 4 => format!("; {}", fails.join("; ")),
        n => format!("; {} ... ({n} failures)", fails[..4].join("; ")),
    }
}

fn criterion1(cat: &Catalogue, reports: &[EntryReport], elapsed: Duration) -> Outcome {
    let names: BTreeSet<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    let thin: Vec<&str> = cat
        .entries
        .iter()
        .filter(|e| !e.params.is_empty() && reports.iter().filter(|r| r.name == e.name).count() < 3)
        .map(|e| e.name.as_str())
        .collect();
    let fails = failures_in(reports, &["sample_params", "instantiate", "leibniz"]);
    let ok = cat.entries.len() == 277 && names.len() == 277 && thin.is_empty() && fails.is_empty() && elapsed.as_secs() < 60;
    outcome(
        ok,
        format!(
            "{} entries, {} parameter points, {} with < 3 samples, {} Leibniz failures, {:.1} s{}",
            names.len(),
            reports.len(),
            thin.len(),
            fails.len(),
            elapsed.as_secs_f64(),
            summarise(&fails)
        ),
    )
}

fn criterion2(reports: &[EntryReport]) -> Outcome {
    let fails = failures_in(reports, &["dim_a2", "dim_a3", "dim_a4", "dim_leib", "dim_center", "leib_equals_center"]);
    let a1_7 = reports
        .iter()
        .filter(|r| ["A_1", "A_2", "A_3", "A_4", "A_5", "A_6", "A_7"].contains(&r.name.as_str()))
        .all(|r| {
            r.signature.as_ref().is_some_and(|s| (s.dim_lower(2), s.dim_lower(3), s.dim_lower(4), s.dim_leib) == (3, 2, 1, 1))
        });
    let a16 = reports.iter().filter(|r| r.name == "A_16").all(|r| r.signature.as_ref().is_some_and(|s| s.dim_lower(2) == 4));
    outcome(
        fails.is_empty() && a1_7 && a16,
        format!("{} mismatches; A_1..A_7 give (3,2,1,1): {a1_7}; A_16 gives dim A^2 = 4: {a16}{}", fails.len(), summarise(&fails)),
    )
}

fn criterion3(reports: &[EntryReport]) -> Outcome {
    let fails = failures_in(reports, &["non_lie", "center_in_a2"]);
    outcome(fails.is_empty(), format!("{} failures of dim Leib >= 1 or Z ⊆ A^2{}", fails.len(), summarise(&fails)))
}

fn criterion4(reports: &[EntryReport]) -> Outcome {
    let fails = failures_in(reports, &["lemma4", "lemma5"]);
    let (_, bound_ii) = lemma5_bounds(2, 1);
    outcome(
        fails.is_empty() && bound_ii == 4,
        format!("{} lemma failures; k = 2, t = 1 gives bound (ii) = {bound_ii}, so n = 5 exceeds it{}", fails.len(), summarise(&fails)),
    )
}

fn criterion5(cat: &Catalogue) -> Outcome {
    let g = |v: i64| G::from_i64(v);
    let reps: Vec<(KindTag, Matrix<G>)> = [
        CanonicalKind::Skew,
        CanonicalKind::SymRank1,
        CanonicalKind::SymRank2,
        CanonicalKind::Mixed,
        CanonicalKind::MixedC(g(2)),
    ]
    .into_iter()
    .map(|k| (k.tag(), k.matrix(&())))
    .collect();
    let mut bad = Vec::new();
    for (tag, m) in &reps {
        let c = congruence_canonical(m);
        let q_is_identity = matches!(&c, leibniz::bilinear::Congruence::Base { q, .. } if *q == Matrix::identity(2, &()));
        if c.tag() != *tag || !q_is_identity || !c.verify(m) {
            bad.push(format!("representative {tag} gave {} with Q = {}", c.tag(), c.q_string()));
        }
    }
    let mut forms = 0;
    for entry in &cat.entries {
        for params in sample_params(entry, 3).unwrap_or_default() {
            let Ok(a) = cat.instantiate(entry, &params) else { continue };
            let Ok((m, _)) = extract_v_form(&a) else { continue };
            forms += 1;
            let c = congruence_canonical(&m);
            if c.tag() == KindTag::Skew {
                bad.push(format!("{} gives kind (i)", entry.name));
            }
            if !c.verify(&m) {
                bad.push(format!("{}: Q^T M Q differs from the representative", entry.name));
            }
        }
    }
    outcome(
        bad.is_empty() && forms > 0,
        format!("5 representatives fixed with Q = I; {forms} extracted forms, none of kind (i){}", summarise(&bad)),
    )
}

fn random_invertible<F: Field>(rng: &mut ChaCha8Rng, n: usize, ctx: &F::Ctx, embed: impl Fn(G) -> F) -> Matrix<F> {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| embed(G::from_ints(rng.gen_range(-2..=2), rng.gen_range(-1..=1)))).collect())
            .collect();
        let p = Matrix::from_rows(rows, ctx).expect("square");
        if p.is_invertible() {
            return p;
        }
    }
}

/// Round trip, inverse, and composition with a random base change, over `F`.
fn fixture_laws<F: Field>(
    a: &LeibnizAlgebra<F>,
    b: &LeibnizAlgebra<F>,
    p: &Matrix<F>,
    rng: &mut ChaCha8Rng,
    embed: impl Fn(G) -> F,
) -> Result<(), String> {
    let ok = |x: &LeibnizAlgebra<F>, y: &LeibnizAlgebra<F>, m: &Matrix<F>| matches!(verify_witness(x, y, m), Ok(c) if c.is_ok());
    if a.base_change(p).map_err(|e| e.to_string())? != *b || !ok(a, &a.base_change(p).unwrap(), p) {
        return Err("round trip".into());
    }
    if !ok(b, a, &p.invert().map_err(|e| e.to_string())?) {
        return Err("inverse".into());
    }
    let q = random_invertible(rng, a.dim(), a.ctx(), embed);
    let c = b.base_change(&q).map_err(|e| e.to_string())?;
    if !ok(a, &c, &p.mul(&q).map_err(|e| e.to_string())?) {
        return Err("composition with a random base change".into());
    }
    if signature(a) != signature(b) {
        return Err("signatures differ".into());
    }
    Ok(())
}

fn laws(f: &ResolvedFixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    match &f.matrix {
        WitnessMatrix::Gaussian(p) => fixture_laws(&f.source, &f.target, p, rng, |g| g),
        WitnessMatrix::Quad { d, p } => {
            let (a, b) = (embed_algebra(&f.source, d), embed_algebra(&f.target, d));
            fixture_laws(&a, &b, p, rng, |g| leibniz::field::QuadExt::embed(g, d))
        }
    }
}

fn criterion6(cat: &Catalogue) -> Outcome {
    let fixtures = match FixtureFile::bundled().resolve(cat) {
        Ok(f) => f,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    let mut verified = Vec::new();
    for f in &fixtures {
        let ok = f.check().unwrap_or(false);
        let expected = f.expect == leibniz::iso::Expect::Ok;
        if ok != expected {
            bad.push(format!("{}: verdict {ok}, expected {expected}", f.name));
        }
        if ok {
            verified.push(f.name.as_str());
            if let Err(e) = laws(f, &mut rng) {
                bad.push(format!("{}: {e}", f.name));
            }
        }
    }
    // Chained proof steps: a witness for the first step times one for the second.
    let mut chains = 0;
    for f in fixtures.iter().filter(|f| f.check().unwrap_or(false)) {
        for g in fixtures.iter().filter(|g| g.check().unwrap_or(false) && g.source == f.target && g.name != f.name) {
            let (WitnessMatrix::Gaussian(p), WitnessMatrix::Gaussian(q)) = (&f.matrix, &g.matrix) else { continue };
            chains += 1;
            let pq = p.mul(q).expect("square");
            if !matches!(verify_witness(&f.source, &g.target, &pq), Ok(c) if c.is_ok()) {
                bad.push(format!("{} then {}: P·Q fails", f.name, g.name));
            }
        }
    }
    let required = ["l7-ii-to-iv", "l7-v-to-iii", "a1-from-ii-case1", "a8-from-ii", "a12-from-ii"];
    let missing: Vec<&str> = required.iter().copied().filter(|r| !verified.contains(r)).collect();
    if !missing.is_empty() {
        bad.push(format!("missing verified fixtures {missing:?}"));
    }
    outcome(
        bad.is_empty() && verified.len() >= 10 && chains >= 1,
        format!("{} fixtures verified exactly ({} total), {chains} chained compositions{}", verified.len(), fixtures.len(), summarise(&bad)),
    )
}

fn criterion7(cat: &Catalogue) -> Outcome {
    let cfg = SearchConfig { candidate_cap: 10_000_000, ..SearchConfig::default() };
    let mut parts = Vec::new();
    let mut ok = true;
    for (a, b) in [("A_5:alpha=2", "A_5:alpha=-2"), ("A_17:alpha=2", "A_17:alpha=1/2")] {
        let load = |s: &str| {
            let (e, p) = cat.point(s).expect("point");
            cat.instantiate(e, &p).expect("admissible")
        };
        let start = Instant::now();
        let verdict = decide_isomorphism(&load(a), &load(b), &cfg, 17);
        let secs = start.elapsed().as_secs_f64();
        let good = match &verdict {
            Ok(IsoVerdict::Certified(_)) => true,
            Ok(IsoVerdict::FiniteFieldEvidence { primes, .. }) => primes.len() == 2 && primes[0] != primes[1],
            _ => false,
        };
        ok &= good && secs < 300.0;
        let label = verdict.as_ref().map(IsoVerdict::label).unwrap_or("error");
        parts.push(format!("{a} vs {b}: {label} in {secs:.2} s"));
    }
    outcome(ok, parts.join("; "))
}

/// Twenty entries spread across the catalogue.
fn spread(cat: &Catalogue) -> Vec<&leibniz::catalogue::Entry> {
    let step = cat.entries.len() / 20;
    (0..20).map(|k| &cat.entries[k * step]).collect()
}

fn criterion8(cat: &Catalogue) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    let mut trials = 0;
    for entry in spread(cat) {
        let params = sample_params(entry, 1).expect("admissible point").remove(0);
        let a = cat.instantiate(entry, &params).expect("admissible");
        let sig = signature(&a);
        for _ in 0..10 {
            trials += 1;
            let p = random_invertible(&mut rng, a.dim(), &(), |g| g);
            let b = a.base_change(&p).expect("invertible");
            let diff = signature(&b).differences(&sig);
            if !diff.is_empty() {
                bad.push(format!("{}: {diff:?}", entry.name));
            }
            if !matches!(verify_witness(&a, &b, &p), Ok(c) if c.is_ok()) {
                bad.push(format!("{}: round trip failed", entry.name));
            }
        }
    }
    outcome(bad.is_empty() && trials == 200, format!("{trials} random base changes over 20 entries{}", summarise(&bad)))
}

fn criterion9(cat: &Catalogue) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut total, mut detected, mut still_leibniz) = (0, 0, 0);
    for entry in spread(cat) {
        let params = sample_params(entry, 1).expect("admissible point").remove(0);
        let a = cat.instantiate(entry, &params).expect("admissible");
        let sig = signature(&a);
        let products: Vec<(usize, usize)> =
            a.products().filter(|(_, _, v)| v.iter().any(|x| !x.is_zero())).map(|(i, j, _)| (i, j)).collect();
        for _ in 0..5 {
            let (i, j) = products[rng.gen_range(0..products.len())];
            let mut m = a.clone();
            let v = a.basis_bracket(i, j);
            let new = if rng.gen_bool(0.5) { vec![G::zero(); a.dim()] } else { v.iter().map(|x| -x).collect() };
            m.set_product(i, j, new).expect("in range");
            total += 1;
            let leibniz = m.check_leibniz().is_ok();
            if !leibniz || signature(&m) != sig {
                detected += 1;
            } else {
                still_leibniz += 1;
            }
        }
    }
    let rate = detected as f64 / total as f64;
    outcome(
        rate >= 0.95 && detected + still_leibniz == total,
        format!(
            "{detected}/{total} mutations detected ({:.1}%); {still_leibniz} undetected mutants pass the Leibniz check",
            rate * 100.0
        ),
    )
}

fn main() -> ExitCode {
    let cat = Catalogue::bundled();
    let start = Instant::now();
    let reports = verify_catalogue(&cat, None, 3);
    let elapsed = start.elapsed();
    let results = [
        ("catalogue completeness and Leibniz identity", criterion1(&cat, &reports, elapsed)),
        ("claimed invariants", criterion2(&reports)),
        ("non-Lie and Z ⊆ A^2", criterion3(&reports)),
        ("dimension lemmas", criterion4(&reports)),
        ("bilinear canonical forms", criterion5(&cat)),
        ("witness fixtures", criterion6(&cat)),
        ("search oracle for the isomorphism criteria", criterion7(&cat)),
        ("invariance under base change", criterion8(&cat)),
        ("mutation detection", criterion9(&cat)),
    ];
    for (k, (title, o)) in results.iter().enumerate() {
        println!("criterion {} {} {title}: {}", k + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed = results.iter().filter(|(_, o)| !o.passed).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
