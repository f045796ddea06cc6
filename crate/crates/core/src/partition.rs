//! Partitions, bipartitions and the constrained set `X_n`.
//!
//! A [`Partition`] stores only its positive parts in non-increasing order;
//! reads past the end return 0, so prefix-sum comparisons "for all k" are
//! finite loops. Text form is comma-separated parts (`"9,5,3,1"`, empty
//! string for the empty partition). A [`Bipartition`] is written as two
//! partitions joined by `/` (`"1,1/1"`, `"/1"`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default upper bound on the size handed to any enumerator.
pub const DEFAULT_CAP: u64 = 60;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Sorts the values non-increasing and drops zeros.
    pub fn new<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let mut parts: Vec<u64> = values.into_iter().filter(|&v| v != 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Part at 0-based index `i`, or 0 past the end.
    pub fn part(&self, i: usize) -> u64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Sum of the first `k` parts (zero tail).
    pub fn prefix_sum(&self, k: usize) -> u64 {
        self.parts.iter().take(k).sum()
    }

    /// Multiplicity of each distinct part value.
    pub fn multiplicities(&self) -> BTreeMap<u64, usize> {
        let mut counts = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts
    }

    /// Odd values occur exactly once, even values an even number of times.
    pub fn is_in_xn(&self) -> bool {
        self.multiplicities()
            .into_iter()
            .all(|(value, count)| if value % 2 == 1 { count == 1 } else { count % 2 == 0 })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn parse_parts(input: &str, text: &str, offset: usize) -> Result<Partition> {
    if text.is_empty() {
        return Ok(Partition::empty());
    }
    let mut values = Vec::new();
    let mut position = offset;
    for token in text.split(',') {
        let trimmed = token.trim();
        let lead = token.len() - token.trim_start().len();
        let fail = |message: &str| Error::Parse {
            input: input.to_string(),
            position: position + lead,
            message: message.to_string(),
        };
        if trimmed.is_empty() {
            return Err(fail("empty part"));
        }
        if trimmed.starts_with('-') {
            return Err(fail("negative part"));
        }
        if !trimmed.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail("part is not a nonnegative integer"));
        }
        let value: u64 = trimmed.parse().map_err(|_| fail("part does not fit in 64 bits"))?;
        values.push(value);
        position += token.len() + 1;
    }
    Ok(Partition::new(values))
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_parts(s, s, 0)
    }
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    text.parse()
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordered pair of partitions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    first: Partition,
    second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Bipartition { first, second }
    }

    pub fn first(&self) -> &Partition {
        &self.first
    }

    pub fn second(&self) -> &Partition {
        &self.second
    }

    pub fn weight(&self) -> u64 {
        self.first.weight() + self.second.weight()
    }

    pub fn swapped(&self) -> Self {
        Bipartition::new(self.second.clone(), self.first.clone())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.first, self.second)
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let slash = s.find('/').ok_or_else(|| Error::Parse {
            input: s.to_string(),
            position: s.len(),
            message: "expected '/' between the two partitions".to_string(),
        })?;
        let (left, right) = (&s[..slash], &s[slash + 1..]);
        if let Some(extra) = right.find('/') {
            return Err(Error::Parse {
                input: s.to_string(),
                position: slash + 1 + extra,
                message: "more than one '/'".to_string(),
            });
        }
        Ok(Bipartition::new(
            parse_parts(s, left, 0)?,
            parse_parts(s, right, slash + 1)?,
        ))
    }
}

pub fn parse_bipartition(text: &str) -> Result<Bipartition> {
    text.parse()
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bipartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A partition known to satisfy the `X_n` membership conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct XnElement(Partition);

impl XnElement {
    pub fn new(partition: Partition) -> Result<Self> {
        if partition.is_in_xn() {
            Ok(XnElement(partition))
        } else {
            Err(Error::NotInXn(partition.to_string()))
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }
}

impl std::ops::Deref for XnElement {
    type Target = Partition;

    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for XnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_in_xn(p: &Partition) -> bool {
    p.is_in_xn()
}

fn check_cap(n: u64, cap: u64) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { requested: n, cap })
    } else {
        Ok(())
    }
}

/// Partitions of `n` in lexicographically decreasing order.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u64>>,
}

impl Partitions {
    fn new(n: u64) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions { current: Some(first) }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        let out = Partition { parts: current.clone() };

        // Successor: lower the last part above 1 by one and refill the
        // tail greedily with parts no larger than it.
        let mut parts = current;
        let mut freed = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            freed += 1;
        }
        if let Some(last) = parts.pop() {
            let cap = last - 1;
            let mut rest = freed + 1;
            parts.push(cap);
            while rest > 0 {
                let take = rest.min(cap);
                parts.push(take);
                rest -= take;
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

pub fn enumerate_partitions(n: u64, cap: u64) -> Result<Partitions> {
    check_cap(n, cap)?;
    Ok(Partitions::new(n))
}

pub fn enumerate_xn(n: u64, cap: u64) -> Result<impl Iterator<Item = XnElement>> {
    Ok(enumerate_partitions(n, cap)?
        .filter(Partition::is_in_xn)
        .map(XnElement))
}

/// Bipartitions of `m`: first-component weight from `m` down to 0, then
/// each component in enumeration order.
pub fn enumerate_bipartitions(m: u64, cap: u64) -> Result<impl Iterator<Item = Bipartition>> {
    check_cap(m, cap)?;
    Ok((0..=m).rev().flat_map(move |j| {
        let seconds: Vec<Partition> = Partitions::new(m - j).collect();
        Partitions::new(j).flat_map(move |first| {
            seconds
                .clone()
                .into_iter()
                .map(move |second| Bipartition::new(first.clone(), second))
        })
    }))
}
