mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilalg::algcore::{brute_iso, is_isomorphism, Identity, LinearMap, DEFAULT_BUDGET};
use nilalg::catalog::{
    count_classes, entry, lambda_alpha_samples, parameter_samples, verify_degenerations, verify_tables, Report,
    Status, ENTRIES,
};
use nilalg::cohomology::{extend, u1, SkewForm, U1};
use nilalg::{Cardinality, FieldSpec, Matrix, Scalar, DEFAULT_SEED};
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn failures(r: &Report) -> Vec<String> {
    r.failures().map(|a| format!("{}: expected {}, computed {}", a.id, a.expected, a.computed)).collect()
}

fn computed<'a>(r: &'a Report, id: &str) -> &'a str {
    r.assertions.iter().find(|a| a.id == id).map(|a| a.computed.as_str()).unwrap_or("missing")
}

fn within(t: Duration, limit: u64) -> Option<String> {
    (t > Duration::from_secs(limit)).then(|| format!("runtime {:.1}s exceeds {limit}s", t.as_secs_f64()))
}

fn criterion_tables() -> Outcome {
    let t = Instant::now();
    let r = verify_tables(FieldSpec::Rational, DEFAULT_SEED);
    let elapsed = t.elapsed();
    let mut bad = failures(&r);
    for (id, want) in [
        ("tables/L_5_8/h2m/dim", "7"),
        ("tables/L_5_8/h2bl/dim", "8"),
        ("tables/M_5_1/h2m/dim", "4"),
        ("tables/M_5_1/h2bl/dim", "5"),
        ("tables/L_4_3/h2m/dim", "2"),
    ] {
        if computed(&r, id) != want {
            bad.push(format!("{id}: expected {want}, computed {}", computed(&r, id)));
        }
    }
    for id in ["tables/L_3_1/ann", "tables/L_3_2/ann"] {
        if !r.assertions.iter().any(|a| a.id == id && a.status == Status::Discrepancy) {
            bad.push(format!("{id}: misprint not reported"));
        }
    }
    bad.extend(within(elapsed, 10));
    let disc: Vec<&str> = r
        .assertions
        .iter()
        .filter(|a| a.status == Status::Discrepancy)
        .map(|a| a.id.trim_start_matches("tables/"))
        .collect();
    if bad.is_empty() {
        outcome(
            true,
            format!(
                "{} assertions, discrepancies reported: {} ({:.1}s)",
                r.assertions.len(),
                disc.join("; "),
                elapsed.as_secs_f64()
            ),
        )
    } else {
        outcome(false, bad.join("; "))
    }
}

fn criterion_u1() -> Outcome {
    let f = FieldSpec::Rational;
    let mut bad = Vec::new();
    let mut n = 0;
    for e in ENTRIES.iter().filter(|e| e.dim <= 5) {
        let a = e.build(f, None).expect("parameter-free");
        let want = matches!(e.name, "L_5_8" | "M_5_1");
        match u1(&a, DEFAULT_SEED) {
            Ok(U1::Empty) if !want => {}
            Ok(U1::Nonempty { .. }) if want => {}
            other => bad.push(format!("{}: {:?}", e.name, other.map(|u| u.is_nonempty()))),
        }
        n += 1;
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{n} entries") } else { bad.join("; ") })
}

fn criterion_extensions() -> Outcome {
    let f = FieldSpec::Rational;
    let l58 = entry("L_5_8").unwrap().build(f, None).unwrap();
    let m51 = entry("M_5_1").unwrap().build(f, None).unwrap();
    let b61 = entry("B_6_1").unwrap();
    let mut bad = Vec::new();
    for alpha in parameter_samples(f) {
        let theta = SkewForm::parse(f, 5, &format!("({}) * D23 + D45", alpha.literal())).unwrap();
        let ext = extend(&l58, &[theta]).unwrap();
        if ext != b61.build(f, Some(&alpha)).unwrap() {
            bad.push(format!("alpha = {}: got {ext}", alpha.literal()));
        }
    }
    for (expr, name) in [("D45", "B_6_2"), ("D13 + D45", "B_6_3")] {
        let ext = extend(&m51, &[SkewForm::parse(f, 5, expr).unwrap()]).unwrap();
        if ext != entry(name).unwrap().build(f, None).unwrap() {
            bad.push(format!("M_5_1 + {expr}: got {ext}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "7 extensions".to_string() } else { bad.join("; ") })
}

fn criterion_b61_isomorphism() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for f in [FieldSpec::Rational, FieldSpec::Prime(3), FieldSpec::Prime(5)] {
        let b61 = entry("B_6_1").unwrap();
        let samples = lambda_alpha_samples(f, DEFAULT_SEED);
        let mut ok = 0;
        for (l, a) in &samples {
            let o = f.one();
            let p = LinearMap::new(Matrix::diagonal(f, &[l.clone(), o.clone(), o, l.clone(), l.clone(), l * l]));
            let src = b61.build(f, Some(&(&(l * l) * a))).unwrap();
            ok += is_isomorphism(&p, &src, &b61.build(f, Some(a)).unwrap()).unwrap() as usize;
        }
        if ok != samples.len() {
            bad.push(format!("{f}: {ok}/{} explicit maps", samples.len()));
        }
        counts.push(format!("{f} {ok}"));
    }
    let f3 = FieldSpec::Prime(3);
    let b61 = entry("B_6_1").unwrap();
    let t = Instant::now();
    let s = brute_iso(
        &b61.build(f3, Some(&f3.one())).unwrap(),
        &b61.build(f3, Some(&f3.from_i64(2))).unwrap(),
        DEFAULT_BUDGET,
    );
    let elapsed = t.elapsed();
    match s {
        Ok(s) if s.iso.is_none() => counts.push(format!("F3 B_6_1^1 vs B_6_1^2: none in {} candidates", s.candidates)),
        Ok(_) => bad.push("F3: isomorphism B_6_1^1 -> B_6_1^2 found".into()),
        Err(e) => bad.push(format!("F3 brute force: {e}")),
    }
    bad.extend(within(elapsed, 300));
    outcome(bad.is_empty(), if bad.is_empty() { counts.join(", ") } else { bad.join("; ") })
}

fn criterion_counts() -> Outcome {
    let mut bad = Vec::new();
    for (p, want) in [(3, 55), (5, 59), (7, 63)] {
        let c = count_classes(FieldSpec::Prime(p)).unwrap();
        if c.total != Cardinality::Finite(want) {
            bad.push(format!("F{p}: {}", c.total));
        }
    }
    let mut primes = 0;
    for p in 3u64..=199 {
        if let Ok(f) = FieldSpec::prime(p) {
            primes += 1;
            if count_classes(f).unwrap().nonmalcev != Cardinality::Finite(5) {
                bad.push(format!("nonmalcev over F{p}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("55/59/63; nonmalcev = 5 for {primes} odd primes up to 199") } else { bad.join("; ") },
    )
}

fn criterion_flags() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for f in [FieldSpec::Rational, FieldSpec::Prime(3), FieldSpec::Prime(5)] {
        for e in ENTRIES {
            let params: Vec<Option<Scalar>> = match e.param {
                Some(_) => parameter_samples(f).into_iter().map(Some).collect(),
                None => vec![None],
            };
            for p in params {
                let a = e.build(f, p.as_ref()).unwrap();
                let fl = a.identity_flags(DEFAULT_SEED);
                let name = format!("{}{} over {f}", e.name, p.map(|x| format!("^{}", x.literal())).unwrap_or_default());
                n += 1;
                if !fl.binary_lie {
                    bad.push(format!("{name}: not binary Lie"));
                }
                if e.name.starts_with("B_6") && fl.malcev {
                    bad.push(format!("{name}: Malcev"));
                }
                if e.name.starts_with('M') && (fl.lie || !fl.malcev) {
                    bad.push(format!("{name}: Lie {} Malcev {}", fl.lie, fl.malcev));
                    if fl.lie {
                        let j = a.jacobian(&a.basis_vector(0), &a.basis_vector(1), &a.basis_vector(3)).unwrap();
                        let j: Vec<String> = j.iter().map(|x| x.literal()).collect();
                        bad.push(format!("{name}: J(e1,e2,e4) = ({}), the Lie identity holds", j.join(",")));
                    }
                }
                let cd = e.name.starts_with('M') || e.dim <= 5 || e.name == "B_6_1" || e.name == "g_6";
                if fl.cd != cd {
                    bad.push(format!("{name}: CD {}", fl.cd));
                }
                if a.check_identity(Identity::Cd, DEFAULT_SEED).holds() != e.cd {
                    bad.push(format!("{name}: CD disagrees with catalog"));
                }
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{n} instances") } else { bad.join("; ") })
}

fn criterion_degenerations() -> Outcome {
    let t = Instant::now();
    let r = verify_degenerations(DEFAULT_SEED);
    let elapsed = t.elapsed();
    let mut bad = failures(&r);
    let witnesses = r.assertions.iter().filter(|a| a.id.contains("/verified")).count();
    if witnesses != 8 {
        bad.push(format!("expected 8 witness checks (witness 1 at 5 samples), found {witnesses}"));
    }
    bad.extend(within(elapsed, 30));
    let notes: Vec<String> = r
        .assertions
        .iter()
        .filter(|a| a.status == Status::Discrepancy)
        .map(|a| format!("{}: {}", a.id, a.computed))
        .collect();
    if bad.is_empty() {
        outcome(true, format!("{} assertions ({:.1}s)", r.assertions.len(), elapsed.as_secs_f64()))
    } else {
        bad.extend(notes);
        outcome(false, bad.join("; "))
    }
}

type Property = fn(u64, FieldSpec) -> Result<(), TestCaseError>;

fn criterion_properties() -> Outcome {
    const CASES: u32 = 200;
    let suites: [(&str, Property); 7] = [
        ("jacobian alternation", common::jacobian_is_alternating),
        ("linearized vs direct", |s, _| common::linearized_agrees_with_direct(s)),
        ("B2 invariance under act", common::coboundaries_are_invariant_under_automorphisms),
        ("Ann of extension", common::annihilator_of_extension),
        ("delta covariance", common::delta_covariance),
        ("fingerprint transport invariance", common::fingerprint_is_transport_invariant),
        ("subspace dimension law", common::subspace_dimension_law),
    ];
    let mut bad = Vec::new();
    for (name, prop) in suites {
        let mut runner = TestRunner::new(common::config(CASES));
        if let Err(e) = runner.run(&(any::<u64>(), common::fields()), |(s, f)| prop(s, f)) {
            bad.push(format!("{name}: {e}"));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("7 suites x {CASES} cases") } else { bad.join("; ") },
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("table reproduction", criterion_tables),
        ("U1 summary", criterion_u1),
        ("extensions", criterion_extensions),
        ("B_6_1 isomorphism criterion", criterion_b61_isomorphism),
        ("class counts", criterion_counts),
        ("identity flags", criterion_flags),
        ("degenerations", criterion_degenerations),
        ("property suites", criterion_properties),
    ];
    let mut all = true;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        all &= o.ok;
        println!(
            "criterion {} ({name}): {} [{:.1}s] {}",
            k + 1,
            if o.ok { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
