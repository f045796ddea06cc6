//! Exit criteria. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails. Criterion 8 reruns 1-7 and compares the JSON.

use std::time::{Duration, Instant};

use spin_springer_core::map::{forward_map, InverseRoute};
use spin_springer_core::order::{djm_leq, dominance_leq};
use spin_springer_core::partition::{Bipartition, Partition, XnElement};
use spin_springer_core::verify::{self, theorem_threshold, VerificationReport};
use spin_springer_core::{Convention, Result, Settings};

const RUNTIME_BUDGET: Duration = Duration::from_secs(60);

struct Criterion {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    reports: Vec<String>,
}

fn gather(reports: Vec<Result<VerificationReport>>) -> (bool, Vec<String>, String) {
    let mut ok = true;
    let mut json = Vec::new();
    let mut failures = Vec::new();
    for r in reports {
        match r {
            Ok(r) => {
                if !r.passed {
                    ok = false;
                    failures.push(format!("{}{:?}", r.check, r.params));
                }
                json.push(r.to_json());
            }
            Err(e) => {
                ok = false;
                failures.push(e.to_string());
                json.push(format!("error: {e}"));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{} reports", json.len())
    } else {
        format!("failing: {}", failures.join(", "))
    };
    (ok, json, detail)
}

fn criterion_1(s: &Settings) -> Criterion {
    let start = Instant::now();
    let (ok, reports, detail) = gather((0..=28).map(|n| verify::verify_bijection(n, s)).collect());
    let elapsed = start.elapsed();
    Criterion {
        id: 1,
        name: "bijectivity for n in 0..=28",
        passed: ok && elapsed < RUNTIME_BUDGET,
        detail: format!("{detail}, {elapsed:.2?}"),
        reports,
    }
}

fn criterion_2(s: &Settings) -> Criterion {
    let (mut ok, reports, mut detail) =
        gather((2..=4).map(|t| verify::reproduce_counterexample(t, s)).collect());

    let x = |text: &str| XnElement::new(text.parse::<Partition>().unwrap()).unwrap();
    let b = |text: &str| text.parse::<Bipartition>().unwrap();
    let (lambda, lambda_prime) = (x("9,5,3,1"), x("9,5,2,2"));
    let image = forward_map(&lambda, s.convention).unwrap();
    let image_prime = forward_map(&lambda_prime, s.convention).unwrap();
    let exact = image.t == 2
        && image.bipartition == b("1,1/1")
        && image_prime.t == 2
        && image_prime.bipartition == b("1,1,1/")
        && dominance_leq(&lambda_prime, &lambda).unwrap()
        && !dominance_leq(&lambda, &lambda_prime).unwrap()
        && djm_leq(&image.bipartition, &image_prime.bipartition).unwrap()
        && !djm_leq(&image_prime.bipartition, &image.bipartition).unwrap();
    if !exact {
        ok = false;
        detail.push_str(", t=2 instance does not match");
    }
    Criterion {
        id: 2,
        name: "counterexample for t in {2,3,4}",
        passed: ok,
        detail,
        reports,
    }
}

fn criterion_3(s: &Settings) -> Criterion {
    let start = Instant::now();
    let mut runs = Vec::new();
    for m in 0..=6u64 {
        let base = theorem_threshold(m);
        for t in base..=base + 2 {
            runs.push(verify::verify_theorem(m, t, s));
        }
    }
    let pairs: i64 = runs
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .map(|r| r.counters["pairs_checked"])
        .sum();
    let (ok, reports, detail) = gather(runs);
    let elapsed = start.elapsed();
    Criterion {
        id: 3,
        name: "theorem for m <= 6, t = ceil(3m/2) + {0,1,2}",
        passed: ok && elapsed < RUNTIME_BUDGET,
        detail: format!("{detail}, {pairs} ordered pairs, {elapsed:.2?}"),
        reports,
    }
}

fn criterion_4(s: &Settings) -> Criterion {
    let mut runs = Vec::new();
    for m in 0..=3u64 {
        for t in m as i64..=3 {
            runs.push(verify::verify_lemma2(m, t, s));
        }
    }
    let (ok, reports, detail) = gather(runs);
    Criterion {
        id: 4,
        name: "closed-form inverse equals scan, m <= t <= 3",
        passed: ok,
        detail,
        reports,
    }
}

fn criterion_5(s: &Settings) -> Criterion {
    let mut runs = Vec::new();
    for m in 0..=3u64 {
        for t in m as i64..=3 {
            runs.push(verify::verify_lemma1_via(m, t, InverseRoute::BruteForce, s));
        }
    }
    for m in 0..=6u64 {
        for t in m as i64..=11 {
            runs.push(verify::verify_lemma1_via(m, t, InverseRoute::ClosedForm, s));
        }
    }
    let (ok, reports, detail) = gather(runs);
    Criterion {
        id: 5,
        name: "odd parts 1 mod 4, exactly t of them, even parts <= 2m",
        passed: ok,
        detail,
        reports,
    }
}

fn criterion_6(s: &Settings) -> Criterion {
    let mut runs: Vec<_> = (0..=20).map(|n| verify::verify_dominance_axioms(n, s)).collect();
    runs.extend((0..=6).map(|m| verify::verify_djm_axioms(m, s)));
    let sampled = runs
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .filter(|r| r.params["sampled"] == 1)
        .map(|r| r.counters["triples_checked"])
        .collect::<Vec<_>>();
    let sampled_ok = sampled.iter().all(|&c| c >= 100_000);
    let (ok, reports, detail) = gather(runs);
    Criterion {
        id: 6,
        name: "partial-order axioms (X_n, n <= 20; bipartitions, m <= 6)",
        passed: ok && sampled_ok,
        detail: format!("{detail}, {} sampled sets", sampled.len()),
        reports,
    }
}

fn criterion_7(s: &Settings) -> Criterion {
    let (ok, reports, detail) =
        gather((0..=28).map(|n| verify::verify_forward_structure(n, s)).collect());
    Criterion {
        id: 7,
        name: "forward-map structure on X_n, n <= 28",
        passed: ok,
        detail,
        reports,
    }
}

fn criteria(s: &Settings) -> Vec<Criterion> {
    vec![
        criterion_1(s),
        criterion_2(s),
        criterion_3(s),
        criterion_4(s),
        criterion_5(s),
        criterion_6(s),
        criterion_7(s),
    ]
}

fn line(c: &Criterion) {
    println!(
        "[{}] criterion {}: {} ({})",
        if c.passed { "PASS" } else { "FAIL" },
        c.id,
        c.name,
        c.detail
    );
}

#[test]
fn acceptance() {
    let single = Settings::default().with_convention(Convention::SwapAtZero);
    let first = criteria(&single);
    for c in &first {
        line(c);
    }

    let again = criteria(&single);
    let four = criteria(&single.with_workers(4));
    let identical = |other: &[Criterion]| {
        first
            .iter()
            .zip(other)
            .all(|(a, b)| a.reports == b.reports)
    };
    let c8 = Criterion {
        id: 8,
        name: "byte-identical reports across runs and worker counts 1/4",
        passed: identical(&again) && identical(&four),
        detail: format!(
            "{} reports compared",
            first.iter().map(|c| c.reports.len()).sum::<usize>()
        ),
        reports: Vec::new(),
    };
    line(&c8);

    let failed: Vec<u32> = first
        .iter()
        .chain(std::iter::once(&c8))
        .filter(|c| !c.passed)
        .map(|c| c.id)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
