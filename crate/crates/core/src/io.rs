//! JSON interchange formats and DOT (Hasse diagram) export.
//!
//! Poset JSON: `{"elements": ["a","b"], "le": [["a","b"]]}` — pairs are closed
//! reflexively-transitively on load. Topology JSON: `{"points": [...],
//! "opens": [[...], ...]}`. Powerspace dumps list every element as its
//! (max, min) generator antichains plus the strict order pairs, the operation
//! table and the unit map. Abstract domains: `{"poset": ..., "lits":
//! {"default": ..., "map": {...}}, "ops": {"+": [[...]]}}` with element labels
//! throughout.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ndsem::{AbstractDomain, LitAbstraction};
use crate::poset::{Poset, Subset};
use crate::powerspace::Powerspace;
use crate::semilattice::{Kind, SemilatticeSpace};
use crate::topology::FiniteTopology;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
}

pub fn poset_to_json(p: &Poset) -> PosetJson {
    let le = p
        .cover_pairs()
        .into_iter()
        .map(|(i, j)| (p.name(i).to_string(), p.name(j).to_string()))
        .collect();
    PosetJson {
        elements: p.names().to_vec(),
        le,
    }
}

pub fn poset_from_json(j: &PosetJson) -> Result<Poset, Error> {
    let names: Vec<&str> = j.elements.iter().map(|s| s.as_str()).collect();
    let pairs: Vec<(&str, &str)> = j.le.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    crate::poset::validate_poset(&names, &pairs)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologyJson {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

pub fn topology_from_json(j: &TopologyJson) -> Result<FiniteTopology, Error> {
    let n = j.points.len();
    let index = |label: &String| -> Result<usize, Error> {
        j.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))
    };
    let mut opens = Vec::with_capacity(j.opens.len());
    for open in &j.opens {
        let mut s = Subset::empty(n);
        for label in open {
            s.insert(index(label)?);
        }
        opens.push(s);
    }
    FiniteTopology::new(j.points.clone(), opens)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerspaceElementJson {
    pub max: Vec<String>,
    pub min: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerspaceJson {
    pub kind: String,
    pub base: PosetJson,
    pub elements: Vec<PowerspaceElementJson>,
    /// All strict order pairs (i, j) with elems[i] < elems[j].
    pub order: Vec<(usize, usize)>,
    pub op: Vec<Vec<usize>>,
    pub unit: Vec<usize>,
}

pub fn powerspace_to_json(ps: &Powerspace) -> PowerspaceJson {
    let labels = |s: &Subset| {
        s.iter()
            .map(|i| ps.base.name(i).to_string())
            .collect::<Vec<_>>()
    };
    let elements = ps
        .elems
        .iter()
        .map(|e| PowerspaceElementJson {
            max: labels(&e.max_side(&ps.base)),
            min: labels(&e.min_side(&ps.base)),
        })
        .collect();
    let mut order = Vec::new();
    for i in 0..ps.len() {
        for j in 0..ps.len() {
            if i != j && ps.order.leq(i, j) {
                order.push((i, j));
            }
        }
    }
    PowerspaceJson {
        kind: ps.kind.to_string(),
        base: poset_to_json(&ps.base),
        elements,
        order,
        op: ps.op.clone(),
        unit: ps.unit.clone(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LitsJson {
    pub default: String,
    #[serde(default)]
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainJson {
    pub poset: PosetJson,
    pub lits: LitsJson,
    #[serde(default)]
    pub ops: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn domain_from_json(name: &str, j: &DomainJson) -> Result<AbstractDomain, Error> {
    let poset = poset_from_json(&j.poset)?;
    let index = |label: &String| -> Result<usize, Error> {
        poset
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))
    };
    let default = index(&j.lits.default)?;
    let mut map = BTreeMap::new();
    for (k, v) in &j.lits.map {
        let lit: i64 = k
            .parse()
            .map_err(|_| Error::InvalidInput(format!("literal key `{k}` is not an integer")))?;
        map.insert(lit, index(v)?);
    }
    let mut ops = BTreeMap::new();
    for (sym, rows) in &j.ops {
        let mut table = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for cell in row {
                out.push(index(cell)?);
            }
            table.push(out);
        }
        ops.insert(sym.clone(), table);
    }
    AbstractDomain::new(name, poset, LitAbstraction::Table { default, map }, ops)
}

pub fn domain_to_json(d: &AbstractDomain) -> DomainJson {
    let name = |i: usize| d.poset.name(i).to_string();
    let lits = match &d.lits {
        LitAbstraction::Table { default, map } => LitsJson {
            default: name(*default),
            map: map.iter().map(|(k, v)| (k.to_string(), name(*v))).collect(),
        },
        // rule-based builtins export their rule sampled over a small window
        LitAbstraction::Signs | LitAbstraction::Parity => LitsJson {
            default: name(d.abstract_lit(1)),
            map: (-4..=4)
                .map(|v| (v.to_string(), name(d.abstract_lit(v))))
                .collect(),
        },
    };
    let ops = d
        .ops
        .iter()
        .map(|(sym, table)| {
            (
                sym.clone(),
                table
                    .iter()
                    .map(|row| row.iter().map(|&v| name(v)).collect())
                    .collect(),
            )
        })
        .collect();
    DomainJson {
        poset: poset_to_json(&d.poset),
        lits,
        ops,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceJson {
    pub poset: PosetJson,
    pub kind: Kind,
    pub op: Vec<Vec<String>>,
}

pub fn space_from_json(j: &SpaceJson) -> Result<SemilatticeSpace, Error> {
    let poset = poset_from_json(&j.poset)?;
    let index = |label: &String| -> Result<usize, Error> {
        poset
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))
    };
    let mut op = Vec::with_capacity(j.op.len());
    for row in &j.op {
        let mut out = Vec::with_capacity(row.len());
        for cell in row {
            out.push(index(cell)?);
        }
        op.push(out);
    }
    SemilatticeSpace::new(poset, op, j.kind)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram of a poset: covering edges only, drawn bottom-up.
pub fn poset_to_dot(p: &Poset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..p.len() {
        out.push_str(&format!(
            "  n{} [label=\"{}\"];\n",
            i,
            dot_escape(p.name(i))
        ));
    }
    for (i, j) in p.cover_pairs() {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}
