//! Dominance order on partitions, the Dipper-James-Murphy order on
//! bipartitions, the order pulled back through `f_{m,t}`, and Hasse
//! diagrams.

use std::fmt;

use serde::Serialize;

use crate::config::Settings;
use crate::error::{Error, Result};
use crate::map::{fiber_images, InverseRoute};
use crate::partition::{Bipartition, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderRelation {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderRelation::Less => "LESS",
            OrderRelation::Greater => "GREATER",
            OrderRelation::Equal => "EQUAL",
            OrderRelation::Incomparable => "INCOMPARABLE",
        })
    }
}

fn same_weight(left: u64, right: u64) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::WeightMismatch { left, right })
    }
}

/// First prefix length `k >= 1` with `sum(lambda[..k]) > sum(mu[..k])`.
pub fn dominance_witness(lambda: &Partition, mu: &Partition) -> Option<usize> {
    let len = lambda.len().max(mu.len());
    let (mut a, mut b) = (0u64, 0u64);
    for k in 0..len {
        a += lambda.part(k);
        b += mu.part(k);
        if a > b {
            return Some(k + 1);
        }
    }
    None
}

pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    same_weight(lambda.weight(), mu.weight())?;
    Ok(dominance_witness(lambda, mu).is_none())
}

/// Which of the two prefix-sum chains of the bipartition order failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DjmChain {
    /// `sum(alpha[..k])`
    First,
    /// `|alpha| + sum(beta[..k])`
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DjmFailure {
    pub chain: DjmChain,
    pub k: usize,
}

/// First failing prefix of `a <= b` in the bipartition order, if any.
pub fn djm_witness(a: &Bipartition, b: &Bipartition) -> Option<DjmFailure> {
    if let Some(k) = dominance_witness(a.first(), b.first()) {
        return Some(DjmFailure { chain: DjmChain::First, k });
    }
    let len = a.second().len().max(b.second().len());
    let (mut x, mut y) = (a.first().weight(), b.first().weight());
    for k in 0..=len {
        if k > 0 {
            x += a.second().part(k - 1);
            y += b.second().part(k - 1);
        }
        if x > y {
            return Some(DjmFailure { chain: DjmChain::Second, k });
        }
    }
    None
}

pub fn djm_leq(a: &Bipartition, b: &Bipartition) -> Result<bool> {
    same_weight(a.weight(), b.weight())?;
    Ok(djm_witness(a, b).is_none())
}

/// Strict `a < b` under `leq`.
pub fn strictly_less<T, F>(a: &T, b: &T, leq: F) -> Result<bool>
where
    F: Fn(&T, &T) -> Result<bool>,
{
    Ok(leq(a, b)? && !leq(b, a)?)
}

pub fn compare<T, F>(a: &T, b: &T, leq: F) -> Result<OrderRelation>
where
    F: Fn(&T, &T) -> Result<bool>,
{
    Ok(match (leq(a, b)?, leq(b, a)?) {
        (true, true) => OrderRelation::Equal,
        (true, false) => OrderRelation::Less,
        (false, true) => OrderRelation::Greater,
        (false, false) => OrderRelation::Incomparable,
    })
}

/// `a <= b` in the order pulled back from dominance on `X_{2t²-t+4m}`.
pub fn induced_leq(a: &Bipartition, b: &Bipartition, t: i64, settings: &Settings) -> Result<bool> {
    induced_leq_via(a, b, t, InverseRoute::Auto, settings)
}

pub fn induced_leq_via(
    a: &Bipartition,
    b: &Bipartition,
    t: i64,
    route: InverseRoute,
    settings: &Settings,
) -> Result<bool> {
    same_weight(a.weight(), b.weight())?;
    let images = fiber_images(&[a.clone(), b.clone()], a.weight(), t, route, settings)?;
    dominance_leq(&images[0], &images[1])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetEdges<T> {
    pub elements: Vec<T>,
    /// `(lower, upper)` index pairs, sorted.
    pub cover_pairs: Vec<(usize, usize)>,
}

/// The full `leq` relation as a row-major boolean matrix.
pub fn leq_matrix<T, F>(elements: &[T], leq: F) -> Result<Vec<Vec<bool>>>
where
    F: Fn(&T, &T) -> Result<bool>,
{
    elements
        .iter()
        .map(|a| elements.iter().map(|b| leq(a, b)).collect())
        .collect()
}

/// Cover relations of the poset on `elements`.
pub fn hasse_edges<T, F>(elements: &[T], leq: F) -> Result<PosetEdges<T>>
where
    T: Clone + PartialEq + fmt::Display,
    F: Fn(&T, &T) -> Result<bool>,
{
    let le = leq_matrix(elements, leq)?;
    let n = elements.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if le[i][j] && le[j][i] && elements[i] != elements[j] {
                return Err(Error::Antisymmetry {
                    a: elements[i].to_string(),
                    b: elements[j].to_string(),
                });
            }
        }
    }
    let lt = |i: usize, j: usize| i != j && le[i][j] && !le[j][i];
    let mut cover_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                cover_pairs.push((i, j));
            }
        }
    }
    Ok(PosetEdges {
        elements: elements.to_vec(),
        cover_pairs,
    })
}

/// Reflexive-transitive closure of the cover pairs.
pub fn reachability<T>(edges: &PosetEdges<T>) -> Vec<Vec<bool>> {
    let n = edges.elements.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(lo, hi) in &edges.cover_pairs {
        reach[lo][hi] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_bipartitions, enumerate_xn, DEFAULT_CAP};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn bp(s: &str) -> Bipartition {
        s.parse().unwrap()
    }

    // Definition-level oracle: compare every prefix up to a generous bound.
    fn djm_oracle(a: &Bipartition, b: &Bipartition) -> bool {
        let bound = 1 + (a.weight() + b.weight()) as usize;
        (0..=bound).all(|k| a.first().prefix_sum(k) <= b.first().prefix_sum(k))
            && (0..=bound).all(|k| {
                a.first().weight() + a.second().prefix_sum(k)
                    <= b.first().weight() + b.second().prefix_sum(k)
            })
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p("9,5,2,2"), &p("9,5,3,1")).unwrap());
        assert!(!dominance_leq(&p("9,5,3,1"), &p("9,5,2,2")).unwrap());
        assert!(dominance_leq(&p("2,2"), &p("3,1")).unwrap());
        assert!(dominance_leq(&p("3,1"), &p("3,1")).unwrap());
        assert_eq!(dominance_witness(&p("3,1"), &p("2,2")), Some(1));
        assert_eq!(
            dominance_leq(&p("3,1"), &p("3")).unwrap_err(),
            Error::WeightMismatch { left: 4, right: 3 }
        );
    }

    #[test]
    fn djm_examples() {
        assert!(djm_leq(&bp("1,1/1"), &bp("1,1,1/")).unwrap());
        assert!(!djm_leq(&bp("1,1,1/"), &bp("1,1/1")).unwrap());
        assert!(djm_leq(&bp("/1"), &bp("1/")).unwrap());
        assert!(!djm_leq(&bp("1/"), &bp("/1")).unwrap());
        assert!(djm_leq(&bp("2,1/3"), &bp("2,1/3")).unwrap());
        assert!(djm_leq(&bp("1/"), &bp("1/1")).is_err());
    }

    #[test]
    fn djm_agrees_with_oracle() {
        for m in 0..=5 {
            let all: Vec<_> = enumerate_bipartitions(m, DEFAULT_CAP).unwrap().collect();
            for a in &all {
                for b in &all {
                    assert_eq!(djm_leq(a, b).unwrap(), djm_oracle(a, b), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            compare(&p("2,2"), &p("3,1"), dominance_leq).unwrap(),
            OrderRelation::Less
        );
        assert_eq!(
            compare(&p("3,1"), &p("3,1"), dominance_leq).unwrap(),
            OrderRelation::Equal
        );
        // Checked by hand against both prefix chains.
        assert_eq!(
            compare(&bp("2/"), &bp("/1,1"), djm_leq).unwrap(),
            OrderRelation::Greater
        );
        assert_eq!(
            compare(&bp("1/1,1"), &bp("/3"), djm_leq).unwrap(),
            OrderRelation::Incomparable
        );
        assert!(compare(&p("3"), &p("1"), dominance_leq).is_err());
    }

    #[test]
    fn induced_examples() {
        let s = Settings::default();
        let a = bp("1,1/1");
        let b = bp("1,1,1/");
        assert!(induced_leq(&b, &a, 2, &s).unwrap());
        assert!(!induced_leq(&a, &b, 2, &s).unwrap());
        assert!(induced_leq(&bp("/2"), &bp("2/"), 3, &s).unwrap());
        assert!(induced_leq(&a, &a, 5, &s).unwrap());
        let closed = induced_leq_via(&bp("/2"), &bp("2/"), 3, InverseRoute::ClosedForm, &s);
        let brute = induced_leq_via(&bp("/2"), &bp("2/"), 3, InverseRoute::BruteForce, &s);
        assert_eq!(closed.unwrap(), brute.unwrap());
    }

    #[test]
    fn hasse_examples() {
        let x4: Vec<Partition> = enumerate_xn(4, DEFAULT_CAP)
            .unwrap()
            .map(|x| x.into_partition())
            .collect();
        let edges = hasse_edges(&x4, dominance_leq).unwrap();
        assert_eq!(edges.elements[edges.cover_pairs[0].0], p("2,2"));
        assert_eq!(edges.elements[edges.cover_pairs[0].1], p("3,1"));
        assert_eq!(edges.cover_pairs.len(), 1);

        assert!(hasse_edges(&[p("5")], dominance_leq).unwrap().cover_pairs.is_empty());

        let b1: Vec<_> = enumerate_bipartitions(1, DEFAULT_CAP).unwrap().collect();
        let edges = hasse_edges(&b1, djm_leq).unwrap();
        assert_eq!(edges.cover_pairs.len(), 1);
        let (lo, hi) = edges.cover_pairs[0];
        assert_eq!((edges.elements[lo].to_string(), edges.elements[hi].to_string()), ("/1".into(), "1/".into()));
    }

    #[test]
    fn hasse_reports_antisymmetry() {
        let all = [p("3,1"), p("2,2")];
        let err = hasse_edges(&all, |_, _| Ok(true)).unwrap_err();
        assert!(matches!(err, Error::Antisymmetry { .. }));
    }

    #[test]
    fn hasse_closure_is_the_order() {
        for n in [8u64, 12, 16] {
            let xs: Vec<Partition> = enumerate_xn(n, DEFAULT_CAP)
                .unwrap()
                .map(|x| x.into_partition())
                .collect();
            let edges = hasse_edges(&xs, dominance_leq).unwrap();
            assert_eq!(reachability(&edges), leq_matrix(&xs, dominance_leq).unwrap());
        }
        for m in 0..=4 {
            let bs: Vec<_> = enumerate_bipartitions(m, DEFAULT_CAP).unwrap().collect();
            let edges = hasse_edges(&bs, djm_leq).unwrap();
            assert_eq!(reachability(&edges), leq_matrix(&bs, djm_leq).unwrap());
        }
    }
}
