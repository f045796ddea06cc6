//! Exhaustive checks of the bijection and the order comparison, each
//! producing a [`VerificationReport`].
//!
//! Pair checks run on the worker pool from [`Settings`]; results are
//! gathered in enumeration order, so a report does not depend on the
//! worker count.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Settings;
use crate::error::{Error, Result};
use crate::map::{
    admissible_defects, closed_form_decode, closed_form_inverse, fiber_images, fiber_preimages,
    fiber_weight, forward_map, label_entries, odd_even_split, source_weight, InverseRoute,
};
use crate::order::{djm_leq, djm_witness, dominance_leq, dominance_witness, DjmFailure};
use crate::partition::{enumerate_bipartitions, enumerate_xn, Bipartition, Partition, XnElement};

/// Sets larger than this get randomized transitivity checks.
pub const EXHAUSTIVE_TRIPLE_LIMIT: usize = 30;
pub const SAMPLED_TRIPLES: u64 = 100_000;
pub const SAMPLING_SEED: u64 = 0x5eed_0de5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ForwardMapFailed {
        partition: Partition,
        detail: String,
    },
    Labeling {
        partition: Partition,
        problems: Vec<String>,
    },
    DefectResidue {
        partition: Partition,
        t: i64,
        n: u64,
    },
    WeightIdentity {
        partition: Partition,
        t: i64,
        image: Bipartition,
        expected: Option<u64>,
        found: u64,
    },
    Collision {
        t: i64,
        image: Bipartition,
        first: Partition,
        second: Partition,
    },
    FiberMismatch {
        t: i64,
        m: u64,
        missing: Vec<Bipartition>,
        unexpected: Vec<Bipartition>,
    },
    OddResidue {
        bipartition: Bipartition,
        image: Partition,
        part: u64,
    },
    OddCount {
        bipartition: Bipartition,
        image: Partition,
        expected: i64,
        found: usize,
    },
    EvenBound {
        bipartition: Bipartition,
        image: Partition,
        part: u64,
        bound: u64,
    },
    InverseMismatch {
        bipartition: Bipartition,
        closed_form: Partition,
        brute_force: Option<Partition>,
    },
    RoundTrip {
        bipartition: Bipartition,
        image: Partition,
        t: i64,
        result: Option<Bipartition>,
        detail: String,
    },
    DecodeMismatch {
        bipartition: Bipartition,
        image: Partition,
        decoded: Option<Bipartition>,
        detail: String,
    },
    OrderMismatch {
        a: Bipartition,
        b: Bipartition,
        image_a: Partition,
        image_b: Partition,
        induced_leq: bool,
        djm_leq: bool,
        /// First prefix length where `image_a <= image_b` fails.
        dominance_failure: Option<usize>,
        djm_failure: Option<DjmFailure>,
    },
    Assertion {
        claim: String,
        detail: String,
    },
    Axiom {
        axiom: String,
        elements: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    pub passed: bool,
    pub counters: BTreeMap<String, i64>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn new(check: &str, params: &[(&str, i64)]) -> Self {
        VerificationReport {
            check: check.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            passed: true,
            counters: BTreeMap::new(),
            violations: Vec::new(),
        }
    }

    fn count(&mut self, key: impl Into<String>, value: i64) {
        self.counters.insert(key.into(), value);
    }

    fn finish(mut self) -> Self {
        self.passed = self.violations.is_empty();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn require(condition: bool, message: impl FnOnce() -> String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::Precondition(message()))
    }
}

fn require_regime(m: u64, t: i64) -> Result<()> {
    require(t >= 0 && t as u64 >= m, || format!("needs t >= m, got t={t}, m={m}"))
}

/// Checks that the forward map on `X_n` is a bijection onto the disjoint
/// union of `Irr W_m` over admissible `t`.
pub fn verify_bijection(n: u64, settings: &Settings) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("bijection", &[("n", n as i64)]);
    let members: Vec<XnElement> = enumerate_xn(n, settings.cap)?.collect();
    report.count("xn_count", members.len() as i64);

    let images: Vec<_> = settings.install(|| {
        members
            .par_iter()
            .map(|x| forward_map(x, settings.convention))
            .collect()
    });

    let mut seen: HashMap<(i64, Bipartition), &XnElement> = HashMap::new();
    let mut fibers: BTreeMap<i64, Vec<Bipartition>> = BTreeMap::new();
    for (x, image) in members.iter().zip(images) {
        let image = match image {
            Ok(image) => image,
            Err(e) => {
                report.violations.push(Violation::ForwardMapFailed {
                    partition: x.partition().clone(),
                    detail: e.to_string(),
                });
                continue;
            }
        };
        let t = image.t;
        if (t - n as i64).rem_euclid(4) != 0 {
            report.violations.push(Violation::DefectResidue {
                partition: x.partition().clone(),
                t,
                n,
            });
        }
        let expected = fiber_weight(n, t);
        if expected != Some(image.m()) {
            report.violations.push(Violation::WeightIdentity {
                partition: x.partition().clone(),
                t,
                image: image.bipartition.clone(),
                expected,
                found: image.m(),
            });
        }
        if let Some(prev) = seen.get(&(t, image.bipartition.clone())) {
            report.violations.push(Violation::Collision {
                t,
                image: image.bipartition.clone(),
                first: prev.partition().clone(),
                second: x.partition().clone(),
            });
            continue;
        }
        seen.insert((t, image.bipartition.clone()), x);
        fibers.entry(t).or_default().push(image.bipartition);
    }

    let defects = admissible_defects(n);
    report.count("admissible_t", defects.len() as i64);
    let mut total = 0i64;
    for &t in &defects {
        let m = fiber_weight(n, t).expect("admissible");
        let expected: Vec<Bipartition> = enumerate_bipartitions(m, settings.cap)?.collect();
        total += expected.len() as i64;
        let found = fibers.remove(&t).unwrap_or_default();
        report.count(format!("fiber[t={t}]"), found.len() as i64);
        let expected_set: HashSet<&Bipartition> = expected.iter().collect();
        let found_set: HashSet<&Bipartition> = found.iter().collect();
        let missing: Vec<_> = expected.iter().filter(|b| !found_set.contains(b)).cloned().collect();
        let unexpected: Vec<_> = found.iter().filter(|b| !expected_set.contains(b)).cloned().collect();
        if !missing.is_empty() || !unexpected.is_empty() {
            report.violations.push(Violation::FiberMismatch {
                t,
                m,
                missing,
                unexpected,
            });
        }
    }
    for (t, found) in fibers {
        report.violations.push(Violation::FiberMismatch {
            t,
            m: found.first().map_or(0, Bipartition::weight),
            missing: Vec::new(),
            unexpected: found,
        });
    }
    report.count("bipartition_total", total);
    Ok(report.finish())
}

/// Structural properties of the replacement rules on every member of
/// `X_n`: nonnegative values, non-increasing label sequences, the weight
/// identity and `t ≡ n (mod 4)`.
pub fn verify_forward_structure(n: u64, settings: &Settings) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("forward_structure", &[("n", n as i64)]);
    let members: Vec<XnElement> = enumerate_xn(n, settings.cap)?.collect();
    report.count("xn_count", members.len() as i64);
    let labelings: Vec<_> = settings.install(|| {
        members
            .par_iter()
            .map(|x| label_entries(x.partition()))
            .collect()
    });
    let mut entries = 0i64;
    for (x, labeling) in members.iter().zip(labelings) {
        entries += labeling.entries.len() as i64;
        let problems = labeling.problems();
        if !problems.is_empty() {
            report.violations.push(Violation::Labeling {
                partition: x.partition().clone(),
                problems,
            });
            continue;
        }
        let t = labeling.t();
        if (t - n as i64).rem_euclid(4) != 0 {
            report.violations.push(Violation::DefectResidue {
                partition: x.partition().clone(),
                t,
                n,
            });
        }
        let found: i64 = labeling.entries.iter().map(|e| e.value).sum();
        let expected = fiber_weight(n, t);
        if expected.map(|m| m as i64) != Some(found) {
            let image = forward_map(x, settings.convention)?;
            report.violations.push(Violation::WeightIdentity {
                partition: x.partition().clone(),
                t,
                image: image.bipartition,
                expected,
                found: found as u64,
            });
        }
    }
    report.count("entries_checked", entries);
    Ok(report.finish())
}

fn check_lemma1_image(report: &mut VerificationReport, bp: &Bipartition, image: &Partition, m: u64, t: i64) {
    let mut odd = 0usize;
    for &part in image.parts() {
        if part % 2 == 1 {
            odd += 1;
            if part % 4 != 1 {
                report.violations.push(Violation::OddResidue {
                    bipartition: bp.clone(),
                    image: image.clone(),
                    part,
                });
            }
        } else if part > 2 * m {
            report.violations.push(Violation::EvenBound {
                bipartition: bp.clone(),
                image: image.clone(),
                part,
                bound: 2 * m,
            });
        }
    }
    if odd as i64 != t {
        report.violations.push(Violation::OddCount {
            bipartition: bp.clone(),
            image: image.clone(),
            expected: t,
            found: odd,
        });
    }
}

/// For `t >= m`, every image of `f_{m,t}` has all parts even or `≡ 1 (mod 4)`,
/// exactly `t` odd parts, and even parts at most `2m`.
pub fn verify_lemma1(m: u64, t: i64, settings: &Settings) -> Result<VerificationReport> {
    verify_lemma1_via(m, t, InverseRoute::Auto, settings)
}

pub fn verify_lemma1_via(
    m: u64,
    t: i64,
    route: InverseRoute,
    settings: &Settings,
) -> Result<VerificationReport> {
    require_regime(m, t)?;
    let route_flag = match route {
        InverseRoute::BruteForce => 1,
        _ => 0,
    };
    let mut report = VerificationReport::new(
        "lemma1",
        &[("m", m as i64), ("t", t), ("brute_force", route_flag)],
    );
    let bps: Vec<Bipartition> = enumerate_bipartitions(m, settings.cap)?.collect();
    let images = fiber_images(&bps, m, t, route, settings)?;
    for (bp, image) in bps.iter().zip(&images) {
        check_lemma1_image(&mut report, bp, image, m, t);
    }
    report.count("bipartitions", bps.len() as i64);
    report.count("n", source_weight(m, t) as i64);
    Ok(report.finish())
}

/// Closed-form inverse against the scan of `X_n`, the forward round trip,
/// and the read-back of `(alpha, beta)` from the odd/even split.
pub fn verify_lemma2(m: u64, t: i64, settings: &Settings) -> Result<VerificationReport> {
    require_regime(m, t)?;
    let n = source_weight(m, t);
    if n > settings.cap {
        return Err(Error::CapExceeded { requested: n, cap: settings.cap });
    }
    let mut report = VerificationReport::new("lemma2", &[("m", m as i64), ("t", t)]);
    let bps: Vec<Bipartition> = enumerate_bipartitions(m, settings.cap)?.collect();
    let brute = fiber_preimages(&bps, t, settings)?;
    for (bp, brute) in bps.iter().zip(brute) {
        let closed = closed_form_inverse(bp, t)?;
        if brute.as_ref() != Some(&closed) {
            report.violations.push(Violation::InverseMismatch {
                bipartition: bp.clone(),
                closed_form: closed.partition().clone(),
                brute_force: brute.map(XnElement::into_partition),
            });
        }
        match forward_map(&closed, settings.convention) {
            Ok(image) if image.t == t && &image.bipartition == bp => {}
            Ok(image) => report.violations.push(Violation::RoundTrip {
                bipartition: bp.clone(),
                image: closed.partition().clone(),
                t: image.t,
                result: Some(image.bipartition),
                detail: "forward map does not return the input".to_string(),
            }),
            Err(e) => report.violations.push(Violation::RoundTrip {
                bipartition: bp.clone(),
                image: closed.partition().clone(),
                t,
                result: None,
                detail: e.to_string(),
            }),
        }
        match closed_form_decode(&odd_even_split(&closed), t) {
            Ok(decoded) if &decoded == bp => {}
            Ok(decoded) => report.violations.push(Violation::DecodeMismatch {
                bipartition: bp.clone(),
                image: closed.partition().clone(),
                decoded: Some(decoded),
                detail: "decoded bipartition differs".to_string(),
            }),
            Err(e) => report.violations.push(Violation::DecodeMismatch {
                bipartition: bp.clone(),
                image: closed.partition().clone(),
                decoded: None,
                detail: e.to_string(),
            }),
        }
    }
    report.count("pairs_checked", bps.len() as i64);
    report.count("n", n as i64);
    Ok(report.finish())
}

/// Compares the order pulled back through `f_{m,t}` with the bipartition
/// dominance order on every ordered pair. Uses the closed form for
/// `t >= m` and the scan of `X_n` otherwise.
pub fn verify_theorem(m: u64, t: i64, settings: &Settings) -> Result<VerificationReport> {
    let closed = t >= 0 && t as u64 >= m;
    let mut report = VerificationReport::new("theorem", &[("m", m as i64), ("t", t)]);
    let bps: Vec<Bipartition> = enumerate_bipartitions(m, settings.cap)?.collect();
    let images: Vec<Partition> = fiber_images(&bps, m, t, InverseRoute::Auto, settings)?
        .into_iter()
        .map(XnElement::into_partition)
        .collect();

    let rows: Vec<Vec<(bool, bool, Option<Violation>)>> = settings.install(|| {
        (0..bps.len())
            .into_par_iter()
            .map(|i| {
                (0..bps.len())
                    .map(|j| {
                        let (a, b) = (&bps[i], &bps[j]);
                        let (ia, ib) = (&images[i], &images[j]);
                        let dominance_failure = dominance_witness(ia, ib);
                        let djm_failure = djm_witness(a, b);
                        let induced = dominance_failure.is_none();
                        let djm = djm_failure.is_none();
                        let violation = (induced != djm).then(|| Violation::OrderMismatch {
                            a: a.clone(),
                            b: b.clone(),
                            image_a: ia.clone(),
                            image_b: ib.clone(),
                            induced_leq: induced,
                            djm_leq: djm,
                            dominance_failure,
                            djm_failure,
                        });
                        (induced, djm, violation)
                    })
                    .collect()
            })
            .collect()
    });

    let (mut induced_count, mut djm_count) = (0i64, 0i64);
    for (induced, djm, violation) in rows.into_iter().flatten() {
        induced_count += induced as i64;
        djm_count += djm as i64;
        report.violations.extend(violation);
    }
    report.count("pairs_checked", (bps.len() * bps.len()) as i64);
    report.count("induced_leq_pairs", induced_count);
    report.count("djm_leq_pairs", djm_count);
    report.count("closed_form", closed as i64);
    report.count("n", source_weight(m, t) as i64);
    Ok(report.finish())
}

/// The smallest integer `t` with `t >= 3m/2`.
pub fn theorem_threshold(m: u64) -> i64 {
    (3 * m).div_ceil(2) as i64
}

/// Violation counts of [`verify_theorem`] for each `t` in the range.
pub fn scan_threshold(
    m: u64,
    t_min: i64,
    t_max: i64,
    settings: &Settings,
) -> Result<Vec<(i64, usize)>> {
    require(t_min <= t_max, || format!("empty range [{t_min}, {t_max}]"))?;
    (t_min..=t_max)
        .map(|t| Ok((t, verify_theorem(m, t, settings)?.violations.len())))
        .collect()
}

/// The pair `(4t+1, 4t-3, ..., 9, 5, 3, 1)` and `(4t+1, ..., 9, 5, 2, 2)`.
pub fn counterexample_pair(t: i64) -> Result<(XnElement, XnElement)> {
    require(t >= 2, || format!("counterexample needs t >= 2, got {t}"))?;
    let top: Vec<u64> = (1..=t as u64).rev().map(|k| 4 * k + 1).collect();
    let lambda = Partition::new(top.iter().copied().chain([3, 1]));
    let lambda_prime = Partition::new(top.iter().copied().chain([2, 2]));
    Ok((XnElement::new(lambda)?, XnElement::new(lambda_prime)?))
}

/// Checks that the pair from [`counterexample_pair`] lies in the fiber over
/// `(m, t) = (t + 1, t)` and is ordered one way as partitions and the
/// other way as bipartitions.
pub fn reproduce_counterexample(t: i64, settings: &Settings) -> Result<VerificationReport> {
    let (lambda, lambda_prime) = counterexample_pair(t)?;
    let mut report = VerificationReport::new("counterexample", &[("t", t)]);
    report.count("n", lambda.weight() as i64);
    report.count("m", t + 1);

    let ones = |k: i64| Partition::new(std::iter::repeat_n(1, k as usize));
    let expected = Bipartition::new(ones(t), ones(1));
    let expected_prime = Bipartition::new(ones(t + 1), Partition::empty());

    let mut claim = |ok: bool, claim: String, detail: String| {
        if !ok {
            report.violations.push(Violation::Assertion { claim, detail });
        }
    };

    let image = forward_map(&lambda, settings.convention)?;
    let image_prime = forward_map(&lambda_prime, settings.convention)?;
    claim(
        image.t == t && image.bipartition == expected,
        format!("({lambda}) maps to t={t}, {expected}"),
        format!("got t={}, {}", image.t, image.bipartition),
    );
    claim(
        image_prime.t == t && image_prime.bipartition == expected_prime,
        format!("({lambda_prime}) maps to t={t}, {expected_prime}"),
        format!("got t={}, {}", image_prime.t, image_prime.bipartition),
    );
    let dominance_strict = dominance_leq(&lambda_prime, &lambda)? && !dominance_leq(&lambda, &lambda_prime)?;
    claim(
        dominance_strict,
        format!("({lambda}) > ({lambda_prime}) in dominance"),
        "not strictly greater".to_string(),
    );
    let (b, b_prime) = (&image.bipartition, &image_prime.bipartition);
    let djm_strict = b.weight() == b_prime.weight() && djm_leq(b, b_prime)? && !djm_leq(b_prime, b)?;
    claim(
        djm_strict,
        format!("{b} < {b_prime} in the bipartition order"),
        "not strictly less".to_string(),
    );
    Ok(report.finish())
}

/// Reflexivity, antisymmetry and transitivity of `leq` on `elements`.
/// Transitivity is exhaustive up to [`EXHAUSTIVE_TRIPLE_LIMIT`] elements and
/// sampled with a fixed seed above that.
pub fn verify_partial_order<T, F>(
    check: &str,
    params: &[(&str, i64)],
    elements: &[T],
    leq: F,
    settings: &Settings,
) -> Result<VerificationReport>
where
    T: Sync + std::fmt::Display,
    F: Fn(&T, &T) -> Result<bool> + Sync,
{
    let n = elements.len();
    let sampled = n > EXHAUSTIVE_TRIPLE_LIMIT;
    let mut all_params = params.to_vec();
    all_params.push(("sampled", sampled as i64));
    let mut report = VerificationReport::new(check, &all_params);
    report.count("elements", n as i64);

    let matrix: Vec<Vec<bool>> = settings.install(|| {
        elements
            .par_iter()
            .map(|a| elements.iter().map(|b| leq(a, b)).collect::<Result<Vec<bool>>>())
            .collect::<Result<Vec<_>>>()
    })?;
    let name = |i: usize| elements[i].to_string();

    for i in 0..n {
        if !matrix[i][i] {
            report.violations.push(Violation::Axiom {
                axiom: "reflexivity".to_string(),
                elements: vec![name(i)],
            });
        }
        for j in (i + 1)..n {
            if matrix[i][j] && matrix[j][i] {
                report.violations.push(Violation::Axiom {
                    axiom: "antisymmetry".to_string(),
                    elements: vec![name(i), name(j)],
                });
            }
        }
    }
    report.count("pairs_checked", (n * n) as i64);

    let transitive = |(i, j, k): (usize, usize, usize)| !(matrix[i][j] && matrix[j][k]) || matrix[i][k];
    let mut triples = 0i64;
    if n > 0 {
        if sampled {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
            for _ in 0..SAMPLED_TRIPLES {
                let triple = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                triples += 1;
                if !transitive(triple) {
                    report.violations.push(Violation::Axiom {
                        axiom: "transitivity".to_string(),
                        elements: vec![name(triple.0), name(triple.1), name(triple.2)],
                    });
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        triples += 1;
                        if !transitive((i, j, k)) {
                            report.violations.push(Violation::Axiom {
                                axiom: "transitivity".to_string(),
                                elements: vec![name(i), name(j), name(k)],
                            });
                        }
                    }
                }
            }
        }
    }
    report.count("triples_checked", triples);
    Ok(report.finish())
}

pub fn verify_dominance_axioms(n: u64, settings: &Settings) -> Result<VerificationReport> {
    let members: Vec<Partition> = enumerate_xn(n, settings.cap)?
        .map(XnElement::into_partition)
        .collect();
    verify_partial_order("dominance_axioms", &[("n", n as i64)], &members, dominance_leq, settings)
}

pub fn verify_djm_axioms(m: u64, settings: &Settings) -> Result<VerificationReport> {
    let bps: Vec<Bipartition> = enumerate_bipartitions(m, settings.cap)?.collect();
    verify_partial_order("djm_axioms", &[("m", m as i64)], &bps, djm_leq, settings)
}
