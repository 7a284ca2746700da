use std::time::Duration;

use fglattice::fundamental::FundamentalLattice;
use fglattice::oracle::SubgroupSet;
use fglattice::theorems::{Counterexample, Finding, TheoremReport};
use fglattice::GroupSignature;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub signature: Vec<u64>,
    pub nodes: Vec<NodeDoc>,
    pub hasse_edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: usize,
    pub matrix: Vec<Vec<i64>>,
    pub order: u64,
}

impl LatticeDoc {
    pub fn from_lattice(fl: &FundamentalLattice) -> Self {
        Self {
            signature: fl.signature.factors().to_vec(),
            nodes: fl
                .elements
                .iter()
                .map(|e| NodeDoc {
                    id: e.id,
                    matrix: e.matrix.rows(),
                    order: e.subgroup_order,
                })
                .collect(),
            hasse_edges: fl
                .lattice
                .hasse_edges()
                .iter()
                .map(|&(lo, hi)| [lo, hi])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDoc {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub left_exponents: Vec<u64>,
    pub right_exponents: Vec<u64>,
    pub note: String,
}

impl From<&Counterexample> for CounterexampleDoc {
    fn from(c: &Counterexample) -> Self {
        Self {
            left: c.left.factors().to_vec(),
            right: c.right.factors().to_vec(),
            left_exponents: c.left_exponents.clone(),
            right_exponents: c.right_exponents.clone(),
            note: c.note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub theorem: String,
    pub max_order: u64,
    pub cases: u64,
    pub counterexamples: Vec<CounterexampleDoc>,
    pub oracle_checked: u64,
    pub pass: bool,
}

impl From<&TheoremReport> for ReportDoc {
    fn from(r: &TheoremReport) -> Self {
        Self {
            theorem: r.theorem.name().to_string(),
            max_order: r.max_order,
            cases: r.cases,
            counterexamples: r.counterexamples.iter().map(Into::into).collect(),
            oracle_checked: r.oracle_checked,
            pass: r.pass(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingDoc {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub left_exponents: Vec<u64>,
    pub right_exponents: Vec<u64>,
    pub left_powers: Vec<Vec<u64>>,
    pub right_powers: Vec<Vec<u64>>,
}

fn factors(sigs: &[GroupSignature]) -> Vec<Vec<u64>> {
    sigs.iter().map(|s| s.factors().to_vec()).collect()
}

impl From<&Finding> for FindingDoc {
    fn from(f: &Finding) -> Self {
        Self {
            left: f.left.factors().to_vec(),
            right: f.right.factors().to_vec(),
            left_exponents: f.left_exponents.clone(),
            right_exponents: f.right_exponents.clone(),
            left_powers: factors(&f.left_powers),
            right_powers: factors(&f.right_powers),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupsDoc {
    pub signature: Vec<u64>,
    pub subgroups: Vec<SubgroupDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub order: usize,
    pub elements: Vec<Vec<u64>>,
}

impl SubgroupsDoc {
    pub fn new(sig: &GroupSignature, subgroups: &[SubgroupSet]) -> Self {
        Self {
            signature: sig.factors().to_vec(),
            subgroups: subgroups
                .iter()
                .map(|s| SubgroupDoc {
                    order: s.len(),
                    elements: s.elements().iter().map(|e| e.coords.clone()).collect(),
                })
                .collect(),
        }
    }
}

pub fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}
