//! Empirical distributions of node-level statistics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{Column, NodeStatsTable};

/// Number of equal-width bins used for real-valued columns.
pub const REAL_BINS: usize = 50;

/// PDF, CDF and CCDF over the observed support of one statistic.
///
/// `ccdf[i]` is `P(X >= values[i])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub statistic: String,
    pub values: Vec<f64>,
    pub counts: Vec<u64>,
    pub pdf: Vec<f64>,
    pub cdf: Vec<f64>,
    pub ccdf: Vec<f64>,
}

impl Distribution {
    fn from_counts(statistic: &str, support: Vec<(f64, u64)>) -> Self {
        let total: u64 = support.iter().map(|&(_, c)| c).sum();
        let denom = total as f64;
        let mut cumulative = 0u64;
        let mut d = Distribution {
            statistic: statistic.to_string(),
            values: Vec::with_capacity(support.len()),
            counts: Vec::with_capacity(support.len()),
            pdf: Vec::with_capacity(support.len()),
            cdf: Vec::with_capacity(support.len()),
            ccdf: Vec::with_capacity(support.len()),
        };
        for (value, count) in support {
            d.ccdf.push((total - cumulative) as f64 / denom);
            cumulative += count;
            d.values.push(value);
            d.counts.push(count);
            d.pdf.push(count as f64 / denom);
            d.cdf.push(cumulative as f64 / denom);
        }
        d
    }
}

fn integer_support(values: &[u64]) -> Vec<(f64, u64)> {
    let mut counts = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_insert(0u64) += 1;
    }
    counts.into_iter().map(|(v, c)| (v as f64, c)).collect()
}

fn binned_support(values: &[f64]) -> Vec<(f64, u64)> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min == max {
        return vec![(min, values.len() as u64)];
    }
    let width = (max - min) / REAL_BINS as f64;
    let mut bins = vec![0u64; REAL_BINS];
    for &x in values {
        let i = (((x - min) / width) as usize).min(REAL_BINS - 1);
        bins[i] += 1;
    }
    bins.into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(i, c)| (min + (i as f64 + 0.5) * width, c))
        .collect()
}

/// Integer columns keep their exact observed values; real-valued columns
/// are binned into [`REAL_BINS`] equal-width bins labelled by bin center.
pub fn distribution(stats: &NodeStatsTable, column: &str) -> Result<Distribution> {
    let col = stats
        .column(column)
        .ok_or_else(|| Error::UnknownStatistic(column.to_string()))?;
    if stats.len() == 0 {
        return Err(Error::NoNodes);
    }
    let support = match col {
        Column::Integer(v) => integer_support(v),
        Column::Real(v) => binned_support(v),
    };
    Ok(Distribution::from_counts(column, support))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::compute_all;
    use crate::Graph;

    fn table_with_degrees(degrees: &[u64]) -> NodeStatsTable {
        let n = degrees.len();
        NodeStatsTable {
            degree: degrees.to_vec(),
            triangles: vec![0; n],
            local_clustering: vec![0.0; n],
            kcore: vec![0; n],
            wedges: vec![0; n],
        }
    }

    #[test]
    fn hand_computed_degrees() {
        let d = distribution(&table_with_degrees(&[1, 1, 2]), "degree").unwrap();
        assert_eq!(d.values, vec![1.0, 2.0]);
        assert_eq!(d.pdf, vec![2.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(d.ccdf, vec![1.0, 1.0 / 3.0]);
        assert_eq!(d.cdf, vec![2.0 / 3.0, 1.0]);
    }

    #[test]
    fn constant_column_is_single_point() {
        let d = distribution(&table_with_degrees(&[5, 5, 5, 5]), "degree").unwrap();
        assert_eq!(d.values, vec![5.0]);
        assert_eq!(d.cdf, vec![1.0]);
        assert_eq!(d.ccdf, vec![1.0]);
    }

    #[test]
    fn unknown_column_and_empty_graph() {
        let t = table_with_degrees(&[1]);
        assert!(matches!(
            distribution(&t, "pagerank"),
            Err(Error::UnknownStatistic(_))
        ));
        let (_, empty) = compute_all(&Graph::empty(0));
        assert!(matches!(distribution(&empty, "degree"), Err(Error::NoNodes)));
    }

    #[test]
    fn real_column_is_binned() {
        let mut t = table_with_degrees(&[0; 101]);
        t.local_clustering = (0..=100).map(|i| i as f64 / 100.0).collect();
        let d = distribution(&t, "local_clustering").unwrap();
        assert_eq!(d.values.len(), REAL_BINS);
        assert_eq!(d.counts.iter().sum::<u64>(), 101);
        assert_eq!(*d.cdf.last().unwrap(), 1.0);
    }
}
