//! Conjunctive range filters over graphs and nodes, and drill-down regrouping.
//!
//! Results always carry the full point set next to the match set so a client
//! can draw every point and highlight the matches.

use std::collections::BTreeMap;

use netrepo_core::stats::{GraphStats, NodeStatsTable};
use netrepo_core::NodeId;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ServiceError};
use crate::model::DatasetRecord;

/// `min <= value <= max`; a missing bound is unbounded. Undefined values
/// (such as the assortativity of a regular graph) never match.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Predicate {
    #[serde(alias = "stat")]
    pub statistic: String,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
}

impl Predicate {
    pub fn new(statistic: &str, min: Option<f64>, max: Option<f64>) -> Self {
        Self {
            statistic: statistic.to_string(),
            min,
            max,
        }
    }

    pub fn holds(&self, value: Option<f64>) -> bool {
        let lo = self.min.unwrap_or(f64::NEG_INFINITY);
        let hi = self.max.unwrap_or(f64::INFINITY);
        value.is_some_and(|v| lo <= v && v <= hi)
    }
}

/// Graph-level filter; with `graph` set it filters that graph's nodes instead.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FilterQuery {
    #[serde(default)]
    pub predicates: Vec<Predicate>,
    #[serde(default)]
    pub graph: Option<String>,
    /// Statistic pairs to return as (x, y) point series.
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
    /// Node columns to return for matched nodes; all columns when absent.
    #[serde(default)]
    pub columns: Option<Vec<String>>,
}

pub fn graph_statistic(name: &str) -> Result<&'static str> {
    if name == "kappa" {
        return Ok("global_clustering");
    }
    GraphStats::FIELDS
        .iter()
        .find(|&&f| f == name)
        .copied()
        .ok_or_else(|| ServiceError::UnknownStatistic(name.to_string()))
}

pub fn node_statistic(name: &str) -> Result<&'static str> {
    NodeStatsTable::COLUMNS
        .iter()
        .find(|&&f| f == name)
        .copied()
        .ok_or_else(|| ServiceError::UnknownStatistic(name.to_string()))
}

fn check_bounds(predicates: &[Predicate]) -> Result<()> {
    for p in predicates {
        let (lo, hi) = (p.min.unwrap_or(f64::NEG_INFINITY), p.max.unwrap_or(f64::INFINITY));
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(ServiceError::BadRequest(format!(
                "predicate on {}: min must not exceed max",
                p.statistic
            )));
        }
    }
    Ok(())
}

fn record_value(r: &DatasetRecord, stat: &str) -> Option<f64> {
    r.stats.as_ref().and_then(|s| s.get(stat)).flatten()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphPoint {
    pub id: String,
    pub name: String,
    pub collection: String,
    pub matched: bool,
    pub stats: BTreeMap<String, Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint<K> {
    pub id: K,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series<K> {
    pub x: String,
    pub y: String,
    pub points: Vec<SeriesPoint<K>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphQueryResult {
    pub matched: Vec<String>,
    pub total: usize,
    pub points: Vec<GraphPoint>,
    pub series: Vec<Series<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeQueryResult {
    pub graph: String,
    pub matched: Vec<NodeId>,
    pub total: usize,
    /// Requested columns restricted to the matched nodes.
    pub columns: BTreeMap<String, Vec<f64>>,
    pub series: Vec<Series<NodeId>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QueryResult {
    Graphs(GraphQueryResult),
    Nodes(NodeQueryResult),
}

/// Filters catalog records on their persisted stats.
pub fn query_graphs(records: &[DatasetRecord], q: &FilterQuery) -> Result<GraphQueryResult> {
    check_bounds(&q.predicates)?;
    let preds: Vec<(&'static str, &Predicate)> = q
        .predicates
        .iter()
        .map(|p| Ok((graph_statistic(&p.statistic)?, p)))
        .collect::<Result<_>>()?;
    let pairs: Vec<(&'static str, &'static str)> = q
        .pairs
        .iter()
        .map(|(x, y)| Ok((graph_statistic(x)?, graph_statistic(y)?)))
        .collect::<Result<_>>()?;

    let flags: Vec<bool> = records
        .iter()
        .map(|r| preds.iter().all(|(s, p)| p.holds(record_value(r, s))))
        .collect();
    let points = records
        .iter()
        .zip(&flags)
        .map(|(r, &matched)| GraphPoint {
            id: r.id.clone(),
            name: r.name.clone(),
            collection: r.collection.clone(),
            matched,
            stats: GraphStats::FIELDS
                .iter()
                .map(|&f| (f.to_string(), record_value(r, f)))
                .collect(),
        })
        .collect();
    let series = pairs
        .iter()
        .map(|&(x, y)| Series {
            x: x.to_string(),
            y: y.to_string(),
            points: records
                .iter()
                .zip(&flags)
                .map(|(r, &matched)| SeriesPoint {
                    id: r.id.clone(),
                    x: record_value(r, x),
                    y: record_value(r, y),
                    matched,
                })
                .collect(),
        })
        .collect();
    Ok(GraphQueryResult {
        matched: records
            .iter()
            .zip(&flags)
            .filter(|(_, &m)| m)
            .map(|(r, _)| r.id.clone())
            .collect(),
        total: records.len(),
        points,
        series,
    })
}

/// Filters the nodes of one graph on its node statistics table.
pub fn query_nodes(graph: &str, table: &NodeStatsTable, q: &FilterQuery) -> Result<NodeQueryResult> {
    check_bounds(&q.predicates)?;
    let preds: Vec<(&'static str, &Predicate)> = q
        .predicates
        .iter()
        .map(|p| Ok((node_statistic(&p.statistic)?, p)))
        .collect::<Result<_>>()?;
    let columns: Vec<&'static str> = match &q.columns {
        Some(cols) => cols.iter().map(|c| node_statistic(c)).collect::<Result<_>>()?,
        None => NodeStatsTable::COLUMNS.to_vec(),
    };
    let pairs: Vec<(&'static str, &'static str)> = q
        .pairs
        .iter()
        .map(|(x, y)| Ok((node_statistic(x)?, node_statistic(y)?)))
        .collect::<Result<_>>()?;

    let n = table.len();
    let flags: Vec<bool> = (0..n)
        .map(|v| preds.iter().all(|(s, p)| p.holds(table.value(s, v))))
        .collect();
    let matched: Vec<NodeId> = (0..n).filter(|&v| flags[v]).map(|v| v as NodeId).collect();
    let columns = columns
        .iter()
        .map(|&c| {
            let values = matched
                .iter()
                .map(|&v| table.value(c, v as usize).expect("known column"))
                .collect();
            (c.to_string(), values)
        })
        .collect();
    let series = pairs
        .iter()
        .map(|&(x, y)| Series {
            x: x.to_string(),
            y: y.to_string(),
            points: (0..n)
                .map(|v| SeriesPoint {
                    id: v as NodeId,
                    x: table.value(x, v),
                    y: table.value(y, v),
                    matched: flags[v],
                })
                .collect(),
        })
        .collect();
    Ok(NodeQueryResult {
        graph: graph.to_string(),
        matched,
        total: n,
        columns,
        series,
    })
}

/// Drill-down request. The first statistic becomes the shared x-axis.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DrillRequest {
    pub statistics: Vec<String>,
    /// Drill over the nodes of this graph; over catalog graphs when absent.
    #[serde(default)]
    pub graph: Option<String>,
    #[serde(default)]
    pub predicates: Vec<Predicate>,
    /// Keep only points whose x value is one of these.
    #[serde(default)]
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrillGroup {
    pub x: f64,
    pub count: usize,
    /// Column statistic of every point in the group, in point order.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrillColumn {
    pub statistic: String,
    pub groups: Vec<DrillGroup>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrillResult {
    pub x: String,
    pub points: usize,
    pub columns: Vec<DrillColumn>,
}

/// Groups `n` points by their x value (ascending). A single statistic gives
/// one column of counts; otherwise each further statistic is a column.
/// Points without an x value are left out.
pub fn drill(
    statistics: &[&str],
    n: usize,
    value: impl Fn(usize, &str) -> Option<f64>,
    keep: impl Fn(usize) -> bool,
    selected: &[f64],
) -> Result<DrillResult> {
    let (&x, rest) = statistics
        .split_first()
        .ok_or_else(|| ServiceError::BadRequest("drill needs at least one statistic".into()))?;
    let mut points: Vec<(f64, usize)> = (0..n)
        .filter(|&i| keep(i))
        .filter_map(|i| value(i, x).map(|xv| (xv, i)))
        .filter(|(xv, _)| selected.is_empty() || selected.contains(xv))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut bounds: Vec<(f64, std::ops::Range<usize>)> = Vec::new();
    for (k, &(xv, _)) in points.iter().enumerate() {
        match bounds.last_mut() {
            Some((last, range)) if last.total_cmp(&xv).is_eq() => range.end = k + 1,
            _ => bounds.push((xv, k..k + 1)),
        }
    }
    let column = |stat: Option<&str>| DrillColumn {
        statistic: stat.unwrap_or(x).to_string(),
        groups: bounds
            .iter()
            .map(|(xv, range)| DrillGroup {
                x: *xv,
                count: range.len(),
                values: match stat {
                    Some(s) => points[range.clone()].iter().map(|&(_, i)| value(i, s)).collect(),
                    None => Vec::new(),
                },
            })
            .collect(),
    };
    let columns = if rest.is_empty() {
        vec![column(None)]
    } else {
        rest.iter().map(|&s| column(Some(s))).collect()
    };
    Ok(DrillResult {
        x: x.to_string(),
        points: points.len(),
        columns,
    })
}

pub fn drill_nodes(table: &NodeStatsTable, req: &DrillRequest) -> Result<DrillResult> {
    check_bounds(&req.predicates)?;
    let stats: Vec<&'static str> = req.statistics.iter().map(|s| node_statistic(s)).collect::<Result<_>>()?;
    let preds: Vec<(&'static str, &Predicate)> = req
        .predicates
        .iter()
        .map(|p| Ok((node_statistic(&p.statistic)?, p)))
        .collect::<Result<_>>()?;
    drill(
        &stats,
        table.len(),
        |i, s| table.value(s, i),
        |i| preds.iter().all(|(s, p)| p.holds(table.value(s, i))),
        &req.values,
    )
}

pub fn drill_graphs(records: &[DatasetRecord], req: &DrillRequest) -> Result<DrillResult> {
    check_bounds(&req.predicates)?;
    let stats: Vec<&'static str> = req.statistics.iter().map(|s| graph_statistic(s)).collect::<Result<_>>()?;
    let preds: Vec<(&'static str, &Predicate)> = req
        .predicates
        .iter()
        .map(|p| Ok((graph_statistic(&p.statistic)?, p)))
        .collect::<Result<_>>()?;
    drill(
        &stats,
        records.len(),
        |i, s| record_value(&records[i], s),
        |i| preds.iter().all(|(s, p)| p.holds(record_value(&records[i], s))),
        &req.values,
    )
}

/// Parses `stat.min=` / `stat.max=` query parameters into predicates, plus
/// an optional comma-separated `columns` list.
pub fn predicates_from_params(params: &[(String, String)]) -> Result<FilterQuery> {
    let mut by_stat: BTreeMap<String, Predicate> = BTreeMap::new();
    let mut columns = None;
    for (key, raw) in params {
        if key == "columns" {
            columns = Some(raw.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect());
            continue;
        }
        let (stat, bound) = key
            .rsplit_once('.')
            .ok_or_else(|| ServiceError::BadRequest(format!("unexpected parameter '{key}'")))?;
        let value: f64 = raw
            .parse()
            .map_err(|_| ServiceError::BadRequest(format!("'{key}' is not a number: '{raw}'")))?;
        let p = by_stat
            .entry(stat.to_string())
            .or_insert_with(|| Predicate::new(stat, None, None));
        match bound {
            "min" => p.min = Some(value),
            "max" => p.max = Some(value),
            _ => return Err(ServiceError::BadRequest(format!("unexpected parameter '{key}'"))),
        }
    }
    Ok(FilterQuery {
        predicates: by_stat.into_values().collect(),
        columns,
        ..FilterQuery::default()
    })
}
