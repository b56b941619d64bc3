use std::process::ExitCode;
use std::time::Instant;

use stabkit::algebra::catalog;
use stabkit::harness::{run_suite, Check, CheckResult, InstanceSpec, SuiteReport, DEFAULT_COUNT};
use stabkit::stab::StabContext;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn check<'a>(r: &'a SuiteReport, name: &str) -> &'a CheckResult {
    r.check(name).unwrap_or_else(|| panic!("check {name} missing from the report"))
}

fn failures(c: &CheckResult) -> usize {
    c.runs.iter().map(|r| r.failures).sum()
}

fn summary(c: &CheckResult) -> String {
    let mut s = format!("{} instances, {} failures", c.instances, failures(c));
    if let Some(cx) = c.counterexamples.first() {
        s.push_str(&format!("; first counterexample over {}: {}", cx.algebra, cx.reason));
    }
    s
}

fn runs_cover(c: &CheckResult, ids: &[&str], min: usize) -> bool {
    ids.iter().all(|id| c.run(id).is_some_and(|r| r.instances >= min))
}

fn main() -> ExitCode {
    let seed = std::env::var("STABKIT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7);
    let started = Instant::now();
    let mut specs: Vec<InstanceSpec> = catalog::ALGEBRA_IDS.iter().map(|id| InstanceSpec::new(id, seed)).collect();
    specs.push(InstanceSpec::new("Z", seed));
    let report = match run_suite(&specs, &Check::ALL) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL suite could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let algebras = catalog::ALGEBRA_IDS;
    let per_backend = 2 * DEFAULT_COUNT;
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();

    let fp = check(&report, "fp-equality");
    results.push((1, "FP-EQUALITY", outcome(fp.passed && runs_cover(fp, &algebras, per_backend), summary(fp))));

    let z = check(&report, "z-oracle");
    results.push((2, "Z-ORACLE", outcome(z.passed && runs_cover(z, &["Z"], per_backend), summary(z))));

    let (rad, corad) = (check(&report, "radical"), check(&report, "coradical"));
    results.push((
        3,
        "RADICAL/CORADICAL",
        outcome(
            rad.passed && corad.passed && runs_cover(rad, &algebras, per_backend) && runs_cover(corad, &algebras, per_backend),
            format!("radical: {}; coradical: {}", summary(rad), summary(corad)),
        ),
    ));

    let si = check(&report, "self-injective");
    let collapsing = ["kx2", "kx3", "f2c2"];
    let flagged = collapsing.iter().all(|id| {
        let ring = catalog::ring(id).expect("catalog algebra");
        let ctx = StabContext::new(&ring).expect("cosyzygy");
        ctx.left.self_injective && ctx.right.self_injective
    });
    results.push((
        4,
        "SELF-INJECTIVE COLLAPSE",
        outcome(si.passed && flagged && runs_cover(si, &collapsing, per_backend), format!("ΣΛ = 0 on {collapsing:?}: {flagged}; {}", summary(si))),
    ));

    let hs = check(&report, "hereditary-split");
    results.push((5, "HEREDITARY SPLIT", outcome(hs.passed && runs_cover(hs, &["kA2", "kA3"], per_backend), summary(hs))));

    let env = check(&report, "envelope-identifications");
    let sequences = env.run("kA2").map_or(0, |r| r.map_cases);
    results.push((
        6,
        "ENVELOPE IDENTIFICATIONS",
        outcome(
            env.passed && runs_cover(env, &["kA2"], per_backend) && sequences >= 25,
            format!("{sequences} short exact sequences over kA2; {}", summary(env)),
        ),
    ));

    let ex = check(&report, "duality-exchange");
    let maps = ex.runs.iter().filter(|r| r.algebra != "Z").map(|r| r.map_cases).min().unwrap_or(0);
    results.push((
        7,
        "DUALITY EXCHANGE",
        outcome(
            ex.passed && runs_cover(ex, &algebras, per_backend) && maps >= 25,
            format!("at least {maps} naturality squares per algebra; {}", summary(ex)),
        ),
    ));

    let agj = check(&report, "agj-roundtrip");
    results.push((8, "AGJ ROUND-TRIP", outcome(agj.passed && runs_cover(agj, &algebras, per_backend), summary(agj))));

    let ft = check(&report, "four-term");
    let presentations = ft.runs.iter().filter(|r| r.algebra != "Z").map(|r| r.map_cases).min().unwrap_or(0);
    results.push((
        9,
        "FOUR-TERM",
        outcome(ft.passed && presentations >= 50, format!("at least {presentations} presentations per algebra; {}", summary(ft))),
    ));

    let ci = check(&report, "container-invariance");
    results.push((10, "CONTAINER INVARIANCE", outcome(ci.passed && runs_cover(ci, &algebras, 1), summary(ci))));

    let mu = check(&report, "mu-iso");
    let witnesses: Vec<&str> = mu.runs.iter().filter(|r| r.witness.is_some()).map(|r| r.algebra.as_str()).collect();
    results.push((
        11,
        "μ-ISOMORPHISM",
        outcome(
            mu.passed && runs_cover(mu, &algebras, 1) && !witnesses.is_empty(),
            format!("non-injective witnesses over {witnesses:?}; {}", summary(mu)),
        ),
    ));

    let cb = check(&report, "chain-bounds");
    let scope = cb.run("kxy").map(|r| r.notes.join("; ")).unwrap_or_default();
    let reported = cb.run("kxy").is_some_and(|r| r.witness.is_some());
    results.push((
        12,
        "CHAIN BOUNDS",
        outcome(cb.passed && runs_cover(cb, &["kxy"], per_backend) && reported, format!("{}; {scope}", summary(cb))),
    ));

    let mut ok = true;
    for (n, name, o) in &results {
        ok &= o.ok;
        println!("{} {n:>2} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    let other: Vec<&str> = ["naturality", "closure", "trace-representability"]
        .into_iter()
        .filter(|n| !check(&report, n).passed)
        .collect();
    if !other.is_empty() {
        println!("note: additional checks failing: {other:?}");
    }
    println!("runtime: {:.1}s", started.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        print!("{}", report.table());
        ExitCode::FAILURE
    }
}
