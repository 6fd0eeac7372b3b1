//! Synthetic graph generation.
//!
//! A [`GeneratorConfig`] is a JSON-serializable request tagged by `kind`:
//!
//! ```json
//! {"kind": "erdos_renyi", "n": 50, "p": 0.1, "rng_seed": 7}
//! {"kind": "hybrid", "base": {"kind": "chung_lu", "weights": [3, 2, 2, 1]},
//!  "patterns": [{"pattern": "clique", "size": 5, "count": 2}], "rng_seed": 1}
//! ```
//!
//! Generation is sequential and fully determined by the config and seed.

mod models;
mod patterns;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{seeded, GraphRng};

pub use models::{
    block_chung_lu, chung_lu, chung_lu_feasible, erdos_renyi, intra_block_fraction,
    preferential_attachment,
};
pub use patterns::{compose, pattern, pattern_graph, PatternSpec, PatternType, Wiring};

/// Upper bound on generated node counts accepted by [`GeneratorConfig::validate`].
pub const MAX_NODES: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    PreferentialAttachment {
        n: usize,
        m_attach: usize,
        /// Defaults to `m_attach + 1`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed_clique_size: Option<usize>,
    },
    ChungLu {
        weights: Vec<f64>,
    },
    BlockChungLu {
        /// Per-block weight vectors; block `b` holds `weights[b].len()` nodes.
        weights: Vec<Vec<f64>>,
        mu: f64,
    },
    Pattern {
        patterns: Vec<PatternSpec>,
        #[serde(default)]
        wiring: Wiring,
    },
    Hybrid {
        base: Box<Model>,
        patterns: Vec<PatternSpec>,
        #[serde(default)]
        wiring: Wiring,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    #[serde(flatten)]
    pub model: Model,
    #[serde(default, alias = "seed")]
    pub rng_seed: u64,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidConfig(msg()))
    }
}

fn check_weights<'a>(weights: impl IntoIterator<Item = &'a f64>) -> Result<()> {
    for &w in weights {
        check(w.is_finite() && w >= 0.0, || {
            format!("weights must be finite and >= 0, got {w}")
        })?;
    }
    Ok(())
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::ErdosRenyi { .. } => "erdos_renyi",
            Model::PreferentialAttachment { .. } => "preferential_attachment",
            Model::ChungLu { .. } => "chung_lu",
            Model::BlockChungLu { .. } => "block_chung_lu",
            Model::Pattern { .. } => "pattern",
            Model::Hybrid { .. } => "hybrid",
        }
    }

    /// Node count of the generated graph.
    pub fn node_count(&self) -> usize {
        let pattern_nodes =
            |ps: &[PatternSpec]| ps.iter().map(|s| s.size.saturating_mul(s.count)).sum::<usize>();
        match self {
            Model::ErdosRenyi { n, .. } | Model::PreferentialAttachment { n, .. } => *n,
            Model::ChungLu { weights } => weights.len(),
            Model::BlockChungLu { weights, .. } => weights.iter().map(Vec::len).sum(),
            Model::Pattern { patterns, .. } => pattern_nodes(patterns),
            Model::Hybrid { base, patterns, .. } => {
                base.node_count().saturating_add(pattern_nodes(patterns))
            }
        }
    }

    /// Checks every constraint and returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        check(self.node_count() <= MAX_NODES, || {
            format!("at most {MAX_NODES} nodes supported")
        })?;
        match self {
            Model::ErdosRenyi { p, .. } => {
                check((0.0..=1.0).contains(p), || format!("p must be in [0, 1], got {p}"))?;
            }
            Model::PreferentialAttachment {
                n,
                m_attach,
                seed_clique_size,
            } => {
                check(*m_attach >= 1, || "m_attach must be >= 1".into())?;
                let seed = seed_clique_size.unwrap_or(m_attach + 1);
                check(seed > *m_attach, || {
                    format!("seed_clique_size must be > m_attach ({m_attach}), got {seed}")
                })?;
                check(*n > seed, || {
                    format!("n must exceed the seed clique size {seed}, got {n}")
                })?;
            }
            Model::ChungLu { weights } => {
                check_weights(weights)?;
                if !chung_lu_feasible(weights) {
                    warnings.push(
                        "max w_i * w_j exceeds sum of weights; probabilities clamped at 1".into(),
                    );
                }
            }
            Model::BlockChungLu { weights, mu } => {
                check(!weights.is_empty(), || "at least one block required".into())?;
                check((0.0..=1.0).contains(mu), || format!("mu must be in [0, 1], got {mu}"))?;
                check_weights(weights.iter().flatten())?;
                let all: Vec<f64> = weights.iter().flatten().copied().collect();
                if !chung_lu_feasible(&all) {
                    warnings.push("weights exceed the Chung-Lu feasibility bound; probabilities clamped at 1".into());
                }
            }
            Model::Pattern { patterns, .. } => {
                check(!patterns.is_empty(), || "at least one pattern required".into())?;
                for p in patterns {
                    p.pattern.check_size(p.size)?;
                }
            }
            Model::Hybrid {
                base,
                patterns,
                wiring,
            } => {
                check(!matches!(**base, Model::Hybrid { .. }), || {
                    "hybrid base must not itself be hybrid".into()
                })?;
                warnings.extend(base.validate()?);
                for p in patterns {
                    p.pattern.check_size(p.size)?;
                }
                check(
                    *wiring == Wiring::Disjoint
                        || base.node_count() > 0
                        || patterns.iter().all(|p| p.count == 0),
                    || "bridge wiring needs a non-empty base graph".into(),
                )?;
            }
        }
        Ok(warnings)
    }

    fn build(&self, rng: &mut GraphRng) -> Result<Graph> {
        Ok(match self {
            Model::ErdosRenyi { n, p } => erdos_renyi(*n, *p, rng),
            Model::PreferentialAttachment {
                n,
                m_attach,
                seed_clique_size,
            } => preferential_attachment(*n, *m_attach, seed_clique_size.unwrap_or(m_attach + 1), rng),
            Model::ChungLu { weights } => chung_lu(weights, rng),
            Model::BlockChungLu { weights, mu } => block_chung_lu(weights, *mu, rng),
            Model::Pattern { patterns, wiring } => pattern_graph(patterns, *wiring, rng)?,
            Model::Hybrid {
                base,
                patterns,
                wiring,
            } => {
                let base = base.build(rng)?;
                compose(&base, patterns, *wiring, rng)?
            }
        })
    }
}

impl GeneratorConfig {
    pub fn new(model: Model, rng_seed: u64) -> Self {
        Self { model, rng_seed }
    }

    pub fn validate(&self) -> Result<Vec<String>> {
        self.model.validate()
    }

    /// Validates, then generates. Warnings are logged.
    pub fn generate(&self) -> Result<Graph> {
        for w in self.validate()? {
            log::warn!("{}: {w}", self.model.kind());
        }
        self.model.build(&mut seeded(self.rng_seed))
    }

    /// Block sizes for block-structured configs.
    pub fn block_sizes(&self) -> Option<Vec<usize>> {
        match &self.model {
            Model::BlockChungLu { weights, .. } => Some(weights.iter().map(Vec::len).collect()),
            _ => None,
        }
    }
}
