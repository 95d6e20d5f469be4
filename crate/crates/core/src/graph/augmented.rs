use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{ChainmailGraph, EdgeId};
use crate::error::{Error, Result};

/// Surgery coefficient on the crossing loop around an augmented edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingCoefficient {
    /// The integer `−c`, `c ≥ 1`.
    Integer(u64),
    /// The rational `−1/n`, `n ≥ 1`.
    Reciprocal(u64),
    Infinity,
}

impl CrossingCoefficient {
    /// `(p, q)` with coefficient `p/q`, `q ≥ 0`, in lowest terms.
    pub fn as_fraction(self) -> (i64, i64) {
        match self {
            CrossingCoefficient::Integer(c) => (-(c as i64), 1),
            CrossingCoefficient::Reciprocal(n) => (-1, n as i64),
            CrossingCoefficient::Infinity => (1, 0),
        }
    }

    /// `c` when the coefficient is the integer `−c`.
    pub fn integer(self) -> Option<u64> {
        match self {
            CrossingCoefficient::Integer(c) => Some(c),
            CrossingCoefficient::Reciprocal(1) => Some(1),
            _ => None,
        }
    }

    /// `n` when the coefficient is `−1/n`.
    pub fn reciprocal(self) -> Option<u64> {
        match self {
            CrossingCoefficient::Reciprocal(n) => Some(n),
            CrossingCoefficient::Integer(1) => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for CrossingCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingCoefficient::Integer(c) => write!(f, "-{c}"),
            CrossingCoefficient::Reciprocal(n) => write!(f, "-1/{n}"),
            CrossingCoefficient::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for CrossingCoefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("coefficient {s:?} is not of the form -c, -1/n or inf"));
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(CrossingCoefficient::Infinity);
        }
        let body = t.strip_prefix('-').ok_or_else(bad)?;
        let digits = |x: &str| -> Result<u64> {
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            match x.parse::<u64>() {
                Ok(v) if v >= 1 && v <= i64::MAX as u64 => Ok(v),
                _ => Err(bad()),
            }
        };
        match body.split_once('/') {
            None => Ok(CrossingCoefficient::Integer(digits(body)?)),
            Some((num, den)) => {
                if num != "1" {
                    return Err(bad());
                }
                Ok(CrossingCoefficient::Reciprocal(digits(den)?))
            }
        }
    }
}

/// A chainmail graph in which some edges carry a crossing loop.
///
/// The base is loop-free without multiple edges. Augmented edges have weight
/// −1; other edges have negative weight (after a twist an edge of weight −n
/// stands for n negative full twists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedGraph {
    base: ChainmailGraph,
    coefficients: BTreeMap<EdgeId, CrossingCoefficient>,
}

impl AugmentedGraph {
    pub fn new(base: ChainmailGraph, coefficients: BTreeMap<EdgeId, CrossingCoefficient>) -> Result<Self> {
        for (id, edge) in base.edges() {
            if edge.is_loop() {
                return Err(Error::Invalid(format!("augmented base has a loop {id}")));
            }
            if edge.weight >= 0 {
                return Err(Error::Invalid(format!(
                    "augmented base edge {id} has weight {}, not negative",
                    edge.weight
                )));
            }
        }
        if !base.is_simplicial() {
            return Err(Error::Invalid("augmented base has multiple edges".into()));
        }
        for &e in coefficients.keys() {
            let w = base.edge(e)?.weight;
            if w != -1 {
                return Err(Error::Invalid(format!("augmented edge {e} has weight {w}, not -1")));
            }
        }
        Ok(AugmentedGraph { base, coefficients })
    }

    pub fn base(&self) -> &ChainmailGraph {
        &self.base
    }

    pub fn coefficients(&self) -> &BTreeMap<EdgeId, CrossingCoefficient> {
        &self.coefficients
    }

    pub fn coefficient(&self, e: EdgeId) -> Result<CrossingCoefficient> {
        self.coefficients.get(&e).copied().ok_or_else(|| {
            if self.base.edge(e).is_ok() {
                Error::Precondition(format!("{e} is not augmented"))
            } else {
                Error::UnknownEdge(e)
            }
        })
    }

    /// Augmented edges in id order.
    pub fn crossing_loops(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.coefficients.keys().copied()
    }

    pub fn crossing_loop_count(&self) -> usize {
        self.coefficients.len()
    }

    /// True when every coefficient is an integer `−c`.
    pub fn is_integral(&self) -> bool {
        self.coefficients.values().all(|c| c.integer().is_some())
    }

    /// The base with every augmented edge deleted, `G − A`.
    pub fn unaugmented(&self) -> ChainmailGraph {
        let mut g = self.base.clone();
        for &e in self.coefficients.keys() {
            g.remove_edge_raw(e);
        }
        g
    }

    pub fn with_coefficient(&self, e: EdgeId, c: CrossingCoefficient) -> Result<Self> {
        self.coefficient(e)?;
        let mut ag = self.clone();
        ag.coefficients.insert(e, c);
        Ok(ag)
    }

    /// Drop the crossing loop at `e`, setting the edge's base weight to
    /// `weight`, or deleting the edge when `weight` is `None`.
    pub(crate) fn release(&self, e: EdgeId, weight: Option<i64>) -> Result<Self> {
        self.coefficient(e)?;
        let mut ag = self.clone();
        ag.coefficients.remove(&e);
        match weight {
            Some(w) => ag.base.set_edge_weight(e, w),
            None => {
                ag.base.remove_edge_raw(e);
            }
        }
        Ok(ag)
    }
}
