//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use flab_core::formations::boundary_counterexample_search;
use flab_core::hypercenter::{is_f_central_local, is_f_central_oracle, Method};
use flab_core::series::{all_chief_factors, upper_central_series};
use flab_core::verify::{
    build_corpus, parse_partition, run_check, CheckName, CheckParams, CheckReport, Corpus, DEFAULT_MAX_ORDER,
};
use flab_core::{FormationExpr, PrimeSet, SubgroupFunctor};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn params(max_order: u64) -> CheckParams {
    CheckParams {
        max_order,
        ..CheckParams::default()
    }
}

fn run(name: CheckName, p: &CheckParams, corpus: &Corpus) -> Vec<CheckReport> {
    run_check(name, p, corpus).expect("check runs")
}

fn all_pass(reports: &[CheckReport]) -> (bool, String) {
    let rows: usize = reports.iter().map(|r| r.rows.len()).sum();
    let fails: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failing_rows().map(move |x| format!("{} {}", r.check, x.group)))
        .collect();
    (
        fails.is_empty(),
        format!(
            "{rows} rows, {} failing {:?}",
            fails.len(),
            fails.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn f(s: &str) -> FormationExpr {
    FormationExpr::parse(s).unwrap()
}

fn timed(reports: &[CheckReport], limit: Duration, start: Instant) -> Outcome {
    let (ok, detail) = all_pass(reports);
    let t = start.elapsed();
    outcome(ok && t < limit, format!("{detail}, {:.1}s", t.as_secs_f64()))
}

fn c1_c2(small: &Corpus, name: CheckName) -> Outcome {
    let start = Instant::now();
    let reports = run(name, &params(200), small);
    let o = timed(&reports, Duration::from_secs(60), start);
    outcome(
        o.pass && small.len() >= 40,
        format!("{} groups, {}", small.len(), o.detail),
    )
}

fn c3(corpus: &Corpus) -> Outcome {
    let mut reports = Vec::new();
    for form in ["N", "U", "Gpi{2,3}", "cross[{2,3};{5}]"] {
        let p = CheckParams {
            formation: Some(f(form)),
            ..params(DEFAULT_MAX_ORDER)
        };
        reports.extend(run(CheckName::Prop1, &p, corpus));
    }
    let (ok, d) = all_pass(&reports);
    outcome(ok, d)
}

fn c4(corpus: &Corpus) -> Outcome {
    let mut reports = Vec::new();
    for part in ["singletons", "{2,3};{5}"] {
        let p = CheckParams {
            partition: Some(parse_partition(part).unwrap()),
            ..params(DEFAULT_MAX_ORDER)
        };
        reports.extend(run(CheckName::TheoremA, &p, corpus));
    }
    let (ok, d) = all_pass(&reports);
    let cross = &reports[1];
    let row = |name: &str| {
        cross
            .rows
            .iter()
            .find(|r| r.group == name)
            .map(|r| (r.lhs_order, r.rhs_order))
    };
    let frob = row("sd(C5,C4,[a^2])");
    let s3c5 = row("S3 x C5");
    outcome(
        ok && frob == Some((1, 1)) && s3c5 == Some((30, 30)),
        format!("{d}; C5:C4 sides {frob:?}; S3 x C5 sides {s3c5:?}"),
    )
}

fn c5(corpus: &Corpus) -> Outcome {
    let mut reports = Vec::new();
    for part in ["singletons", "{2,3};{5}"] {
        let p = CheckParams {
            formation: Some(parse_partition(part).unwrap()),
            ..params(DEFAULT_MAX_ORDER)
        };
        reports.extend(run(CheckName::TheoremB, &p, corpus));
    }
    let (ok, d) = all_pass(&reports);
    outcome(ok && reports.iter().all(|r| r.params["sigma"] == "sylow,cyclic"), d)
}

fn c6(corpus: &Corpus) -> Outcome {
    let p = CheckParams {
        formation: Some(FormationExpr::Supersoluble),
        sigma: Some(SubgroupFunctor::Sylow),
        ..params(DEFAULT_MAX_ORDER)
    };
    let reports = run(CheckName::TheoremB, &p, corpus);
    let witnesses: Vec<String> = reports[0]
        .failing_rows()
        .map(|r| {
            format!(
                "{} (|G| = {}, SI = {}, Z_U = {})",
                r.group, r.order, r.lhs_order, r.rhs_order
            )
        })
        .collect();
    let probe = !reports[0].asserted;
    outcome(
        !witnesses.is_empty() && probe,
        format!("witnesses: {}", witnesses.join("; ")),
    )
}

fn c7(corpus: &Corpus) -> Outcome {
    let mut lattices = Vec::new();
    for e in &corpus.entries {
        lattices.push((e.name.clone(), e.analysis().unwrap()));
    }
    let found = boundary_counterexample_search(
        &FormationExpr::Supersoluble,
        &PrimeSet::all(),
        lattices.iter().map(|(n, a)| (n.as_str(), a.lattice())),
    )
    .unwrap();
    let hit = found.iter().any(|(g, p)| g == "A4" && *p == 3);
    outcome(hit, format!("{} pairs found, (A4, 3) present: {hit}", found.len()))
}

fn c8(corpus: &Corpus) -> Outcome {
    let mut forms = vec![FormationExpr::Nil, FormationExpr::Supersoluble];
    for part in ["singletons", "23", "23-5", "25-37"] {
        forms.push(parse_partition(part).unwrap());
    }
    let mut factors = 0usize;
    let mut disagreements = Vec::new();
    for e in &corpus.entries {
        let a = e.analysis().unwrap();
        let c = a.cayley();
        for cf in all_chief_factors(a.lattice()) {
            for form in &forms {
                factors += 1;
                let local = is_f_central_local(form, c, &cf).unwrap().central;
                let oracle = is_f_central_oracle(form, c, &cf, a.caps()).unwrap().central;
                if local != oracle {
                    disagreements.push(format!("{} {form} {}/{}", e.name, cf.upper.order(), cf.lower.order()));
                }
            }
        }
    }
    outcome(
        disagreements.is_empty(),
        format!(
            "{factors} factor verdicts, {} disagreements {:?}",
            disagreements.len(),
            disagreements.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn c9(corpus: &Corpus) -> Outcome {
    let mut bad = Vec::new();
    for e in &corpus.entries {
        let a = e.analysis().unwrap();
        let limit = upper_central_series(a.cayley()).pop().unwrap();
        if a.hypercenter(&FormationExpr::Nil, Method::Auto).unwrap() != limit {
            bad.push(e.name.clone());
        }
    }
    outcome(bad.is_empty(), format!("{} groups, mismatches {bad:?}", corpus.len()))
}

fn c10(corpus: &Corpus) -> Outcome {
    let reports = run(CheckName::Lemmas, &params(DEFAULT_MAX_ORDER), corpus);
    let instances: usize = reports.iter().flat_map(|r| r.rows.iter()).map(|r| r.rhs_order).sum();
    let (ok, d) = all_pass(&reports);
    outcome(ok, format!("{instances} instances; {d}"))
}

fn c11(corpus: &Corpus) -> Outcome {
    let reports = run(CheckName::Sidorov, &params(DEFAULT_MAX_ORDER), corpus);
    let (ok, d) = all_pass(&reports);
    outcome(ok && reports.iter().all(|r| r.params["method"] == "oracle"), d)
}

fn c12() -> Outcome {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_flab"))
        .args(["verify", "--check", "all", "--format", "json"])
        .env_remove("FLAB_MAX_ORDER")
        .stdout(std::process::Stdio::null())
        .status()
        .expect("run flab");
    let t = start.elapsed();
    outcome(
        status.success() && t < Duration::from_secs(600),
        format!("exit {:?}, {:.1}s", status.code(), t.as_secs_f64()),
    )
}

fn main() {
    let corpus = build_corpus(DEFAULT_MAX_ORDER, &[]).expect("builtin corpus");
    let small = build_corpus(200, &[]).expect("builtin corpus").restrict(200);
    let criteria: Vec<Criterion> = vec![
        (
            "Sylow normalizer intersection equals Z_N",
            Box::new(|| c1_c2(&small, CheckName::BaerA1)),
        ),
        ("Int_N equals Z_N", Box::new(|| c1_c2(&small, CheckName::CorA4))),
        ("O^pi'(NI_F) equals Int_F", Box::new(|| c3(&corpus))),
        ("meet of block NI equals Z_F", Box::new(|| c4(&corpus))),
        (
            "SI over Sylow and cyclic primary subgroups equals Z_F",
            Box::new(|| c5(&corpus)),
        ),
        ("supersoluble SI differs from Z_U somewhere", Box::new(|| c6(&corpus))),
        ("boundary search for U finds (A4, 3)", Box::new(|| c7(&corpus))),
        ("local and oracle centrality agree", Box::new(|| c8(&corpus))),
        ("Z_N equals the upper central limit", Box::new(|| c9(&corpus))),
        ("lemma suite", Box::new(|| c10(&corpus))),
        ("Int equals Z for N^r, r = 1, 2, 3", Box::new(|| c11(&corpus))),
        ("full verify run under 10 minutes", Box::new(c12)),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict}  {label}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
