//! The explicit bijection from `X_n` onto bipartitions.
//!
//! Every part of `λ` is replaced by a labeled integer:
//!
//! * a part `≡ 1 (mod 4)` becomes an `A` entry `(λ_i - 1)/4 - t_i`,
//! * a part `≡ 3 (mod 4)` becomes a `B` entry `(λ_i - 3)/4 + t_i`,
//! * a run of `2p` equal even parts `e` becomes `2p` entries labeled
//!   `B, A, B, A, ...`; the `B` entries are `(e - 2)/4 + t_i` and the `A`
//!   entries `(e + 2)/4 - t_i` when `e ≡ 2 (mod 4)`, or `e/4 + t_i` and
//!   `e/4 - t_i` when `e ≡ 0 (mod 4)`,
//!
//! where `t_i` is the sum of the signs `d(λ_j)` over the parts strictly
//! after position `i`. The `A` values form `alpha` and the `B` values form
//! `beta`; the pair is reversed according to the sign of `t`.
//!
//! For `t >= m` the inverse has a closed form (see [`closed_form_inverse`]);
//! [`brute_force_inverse`] scans `X_n` and works for any `t`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Convention, Settings};
use crate::error::{Error, Result};
use crate::partition::{enumerate_xn, Bipartition, Partition, XnElement};

/// The sign `d(part)`: 0 for even parts, `+1` for `1 mod 4`, `-1` for `3 mod 4`.
pub fn delta(part: u64) -> i64 {
    match part % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaProfile {
    pub deltas: Vec<i64>,
    /// `tail_sums[i]` is the sum of `deltas[j]` for `j > i`.
    pub tail_sums: Vec<i64>,
    pub total: i64,
}

impl DeltaProfile {
    /// Tail sum at index `i`, 0 past the last part.
    pub fn tail_sum(&self, i: usize) -> i64 {
        self.tail_sums.get(i).copied().unwrap_or(0)
    }
}

pub fn delta_profile(partition: &Partition) -> DeltaProfile {
    let deltas: Vec<i64> = partition.parts().iter().map(|&p| delta(p)).collect();
    let mut tail_sums = vec![0; deltas.len()];
    let mut acc = 0;
    for i in (0..deltas.len()).rev() {
        tail_sums[i] = acc;
        acc += deltas[i];
    }
    DeltaProfile {
        deltas,
        tail_sums,
        total: acc,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    A,
    B,
}

/// One replaced entry. `value` is signed so that a broken labeling can be
/// reported instead of wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LabeledEntry {
    pub value: i64,
    pub label: Label,
    pub source_index: usize,
}

/// A maximal block of equal even parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvenRun {
    pub value: u64,
    pub multiplicity: usize,
    pub start_index: usize,
}

pub fn even_runs(partition: &Partition) -> Vec<EvenRun> {
    let parts = partition.parts();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let value = parts[i];
        let mut j = i + 1;
        while j < parts.len() && parts[j] == value {
            j += 1;
        }
        if value.is_multiple_of(2) {
            runs.push(EvenRun {
                value,
                multiplicity: j - i,
                start_index: i,
            });
        }
        i = j;
    }
    runs
}

/// Output of the replacement rules before any validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labeling {
    pub profile: DeltaProfile,
    pub entries: Vec<LabeledEntry>,
}

impl Labeling {
    pub fn t(&self) -> i64 {
        self.profile.total
    }

    pub fn values(&self, label: Label) -> Vec<i64> {
        self.entries
            .iter()
            .filter(|e| e.label == label)
            .map(|e| e.value)
            .collect()
    }

    /// Every way this labeling fails to describe a bipartition.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            if e.value < 0 {
                out.push(format!(
                    "negative value {} at index {} (label {:?})",
                    e.value, e.source_index, e.label
                ));
            }
        }
        for label in [Label::A, Label::B] {
            let values = self.values(label);
            if let Some(w) = values.windows(2).position(|w| w[0] < w[1]) {
                out.push(format!(
                    "{label:?} values {values:?} increase at position {}",
                    w + 1
                ));
            }
        }
        out
    }
}

/// Applies the replacement rules to any partition. Runs of even parts are
/// paired up from the start of the run; an odd-length run leaves its last
/// entry labeled `B`.
pub fn label_entries(partition: &Partition) -> Labeling {
    let profile = delta_profile(partition);
    let parts = partition.parts();
    let mut entries = Vec::with_capacity(parts.len());
    let mut i = 0;
    while i < parts.len() {
        let part = parts[i] as i64;
        let tail = profile.tail_sums[i];
        match part % 4 {
            1 => {
                entries.push(LabeledEntry {
                    value: (part - 1) / 4 - tail,
                    label: Label::A,
                    source_index: i,
                });
                i += 1;
            }
            3 => {
                entries.push(LabeledEntry {
                    value: (part - 3) / 4 + tail,
                    label: Label::B,
                    source_index: i,
                });
                i += 1;
            }
            residue => {
                // t_i is constant across the run since even parts have d = 0.
                let (b_value, a_value) = if residue == 2 {
                    ((part - 2) / 4 + tail, (part + 2) / 4 - tail)
                } else {
                    (part / 4 + tail, part / 4 - tail)
                };
                let mut j = i;
                while j < parts.len() && parts[j] == parts[i] {
                    let (value, label) = if (j - i) % 2 == 0 {
                        (b_value, Label::B)
                    } else {
                        (a_value, Label::A)
                    };
                    entries.push(LabeledEntry {
                        value,
                        label,
                        source_index: j,
                    });
                    j += 1;
                }
                i = j;
            }
        }
    }
    Labeling { profile, entries }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpringerImage {
    pub t: i64,
    pub bipartition: Bipartition,
    /// `A`-labeled values in order of appearance, zeros kept.
    pub alpha_raw: Vec<u64>,
    /// `B`-labeled values in order of appearance, zeros kept.
    pub beta_raw: Vec<u64>,
}

impl SpringerImage {
    pub fn m(&self) -> u64 {
        self.bipartition.weight()
    }
}

pub fn forward_map(lambda: &XnElement, convention: Convention) -> Result<SpringerImage> {
    let labeling = label_entries(lambda.partition());
    let problems = labeling.problems();
    if !problems.is_empty() {
        return Err(Error::InvariantViolation {
            partition: lambda.to_string(),
            detail: problems.join("; "),
        });
    }
    let t = labeling.t();
    let alpha_raw: Vec<u64> = labeling.values(Label::A).into_iter().map(|v| v as u64).collect();
    let beta_raw: Vec<u64> = labeling.values(Label::B).into_iter().map(|v| v as u64).collect();
    let alpha = Partition::new(alpha_raw.iter().copied());
    let beta = Partition::new(beta_raw.iter().copied());
    let bipartition = if convention.swaps(t) {
        Bipartition::new(beta, alpha)
    } else {
        Bipartition::new(alpha, beta)
    };
    Ok(SpringerImage {
        t,
        bipartition,
        alpha_raw,
        beta_raw,
    })
}

/// Weight `2t² - t + 4m` of the partitions in the fiber over `(m, t)`.
pub fn source_weight(m: u64, t: i64) -> u64 {
    let t2 = (2 * t * t - t) as u64;
    t2 + 4 * m
}

/// `m = (n - 2t² + t)/4` when it is a nonnegative integer.
pub fn fiber_weight(n: u64, t: i64) -> Option<u64> {
    let numerator = n as i128 - 2 * (t as i128) * (t as i128) + t as i128;
    if numerator < 0 || numerator % 4 != 0 {
        None
    } else {
        Some((numerator / 4) as u64)
    }
}

/// Values of `t` for which the fiber over `n` is nonempty, ascending.
pub fn admissible_defects(n: u64) -> Vec<i64> {
    let bound = ((n as f64).sqrt() as i64) + 2;
    (-bound..=bound)
        .filter(|&t| (t - n as i64).rem_euclid(4) == 0 && fiber_weight(n, t).is_some())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddEvenSplit {
    /// Strictly decreasing.
    pub odd_parts: Vec<u64>,
    /// Non-increasing, of even length for members of `X_n`.
    pub even_parts: Vec<u64>,
}

pub fn odd_even_split(partition: &Partition) -> OddEvenSplit {
    let (odd_parts, even_parts) = partition.parts().iter().partition(|&&p| p % 2 == 1);
    OddEvenSplit {
        odd_parts,
        even_parts,
    }
}

/// `f_{m,t}` for `t >= m`: odd parts `4·alpha_i + 4(t - i) + 1` for
/// `i = 1..t` (alpha zero-padded to length `t`) and each `2·beta_j` twice.
pub fn closed_form_inverse(bp: &Bipartition, t: i64) -> Result<XnElement> {
    let m = bp.weight();
    if t < 0 || (t as u64) < m {
        return Err(Error::Precondition(format!(
            "closed-form inverse needs t >= m, got t={t}, m={m}"
        )));
    }
    let t = t as u64;
    if bp.first().len() as u64 > t {
        return Err(Error::Precondition(format!(
            "alpha has {} parts, more than t={t}",
            bp.first().len()
        )));
    }
    let odd = (1..=t).map(|i| 4 * bp.first().part((i - 1) as usize) + 4 * (t - i) + 1);
    let even = bp.second().parts().iter().flat_map(|&b| [2 * b, 2 * b]);
    XnElement::new(Partition::new(odd.chain(even)))
}

/// Reads `(alpha, beta)` back off a partition in the `t >= m` regime:
/// `alpha_i = (odd_i - (4(t - i) + 1))/4` and `beta_i = even_{2i}/2`.
pub fn closed_form_decode(split: &OddEvenSplit, t: i64) -> Result<Bipartition> {
    let bad = |detail: String| Error::Precondition(detail);
    if t < 0 || split.odd_parts.len() as i64 != t {
        return Err(bad(format!(
            "expected exactly t={t} odd parts, found {}",
            split.odd_parts.len()
        )));
    }
    let t = t as u64;
    let mut alpha = Vec::with_capacity(split.odd_parts.len());
    for (idx, &odd) in split.odd_parts.iter().enumerate() {
        let base = 4 * (t - (idx as u64 + 1)) + 1;
        if odd < base || !(odd - base).is_multiple_of(4) {
            return Err(bad(format!("odd part {odd} is not 4k + {base}")));
        }
        alpha.push((odd - base) / 4);
    }
    if !split.even_parts.len().is_multiple_of(2) {
        return Err(bad("odd number of even parts".to_string()));
    }
    let mut beta = Vec::with_capacity(split.even_parts.len() / 2);
    for pair in split.even_parts.chunks(2) {
        if pair[0] != pair[1] {
            return Err(bad(format!("even parts {} and {} do not pair up", pair[0], pair[1])));
        }
        beta.push(pair[1] / 2);
    }
    Ok(Bipartition::new(Partition::new(alpha), Partition::new(beta)))
}

fn lookup_key(bp: &Bipartition, t: i64) -> (i64, Bipartition) {
    (t, bp.clone())
}

/// Preimages of every bipartition in `targets` (all of weight `m`) within
/// the fiber over `t`, found by a single scan of `X_{2t²-t+4m}`. Slots with
/// no preimage are `None`.
pub fn fiber_preimages(
    targets: &[Bipartition],
    t: i64,
    settings: &Settings,
) -> Result<Vec<Option<XnElement>>> {
    let Some(first) = targets.first() else {
        return Ok(Vec::new());
    };
    let m = first.weight();
    if let Some(other) = targets.iter().find(|b| b.weight() != m) {
        return Err(Error::WeightMismatch {
            left: m,
            right: other.weight(),
        });
    }
    let n = source_weight(m, t);
    let members: Vec<XnElement> = enumerate_xn(n, settings.cap)?.collect();
    let images: Vec<Result<SpringerImage>> = settings.install(|| {
        members
            .par_iter()
            .map(|x| forward_map(x, settings.convention))
            .collect()
    });
    let mut hits: HashMap<(i64, Bipartition), XnElement> = HashMap::new();
    for (x, image) in members.into_iter().zip(images) {
        let image = image?;
        if image.t != t {
            continue;
        }
        let key = lookup_key(&image.bipartition, image.t);
        if let Some(prev) = hits.get(&key) {
            return Err(Error::Ambiguous {
                bipartition: image.bipartition.to_string(),
                t,
                first: prev.to_string(),
                second: x.to_string(),
            });
        }
        hits.insert(key, x);
    }
    Ok(targets
        .iter()
        .map(|bp| hits.get(&lookup_key(bp, t)).cloned())
        .collect())
}

/// Scans `X_{2t²-t+4m}` for the preimage of `(t, bp)`.
pub fn brute_force_inverse(
    bp: &Bipartition,
    t: i64,
    settings: &Settings,
) -> Result<Option<XnElement>> {
    Ok(fiber_preimages(std::slice::from_ref(bp), t, settings)?
        .pop()
        .flatten())
}

/// How `f_{m,t}` is evaluated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum InverseRoute {
    /// Closed form when `t >= m`, otherwise the scan.
    #[default]
    Auto,
    ClosedForm,
    BruteForce,
}

/// `f_{m,t}` applied to each bipartition of weight `m`. Errors with
/// [`Error::NotFound`] if any bipartition has no preimage.
pub fn fiber_images(
    targets: &[Bipartition],
    m: u64,
    t: i64,
    route: InverseRoute,
    settings: &Settings,
) -> Result<Vec<XnElement>> {
    let closed = match route {
        InverseRoute::Auto => t >= 0 && t as u64 >= m,
        InverseRoute::ClosedForm => true,
        InverseRoute::BruteForce => false,
    };
    if closed {
        return targets.iter().map(|bp| closed_form_inverse(bp, t)).collect();
    }
    let found = fiber_preimages(targets, t, settings)?;
    targets
        .iter()
        .zip(found)
        .map(|(bp, hit)| {
            hit.ok_or_else(|| Error::NotFound {
                bipartition: bp.to_string(),
                t,
                n: source_weight(m, t),
            })
        })
        .collect()
}
