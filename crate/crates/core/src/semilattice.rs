//! Semilattice-structured spaces and the table-level law checker.
//!
//! A `SemilatticeSpace` is a poset with a binary operation table and a kind
//! tag. Construction only validates shape; `check_semilattice` reports each
//! axiom separately, so enumeration sweeps can use arbitrary tables and filter
//! on the report.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poset::Poset;

/// Operation flavor: inflationary ops sit above their arguments (continuous
/// binary sup), deflationary ops below (binary inf), plain ops just satisfy
/// the semilattice equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Inflationary,
    Deflationary,
    Plain,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Inflationary => "inflationary",
            Kind::Deflationary => "deflationary",
            Kind::Plain => "plain",
        };
        f.write_str(s)
    }
}

/// A poset with an everywhere-defined binary operation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeSpace {
    pub poset: Poset,
    /// Row-major n×n table of element indices: `op[i][j]` is i ⊕ j.
    pub op: Vec<Vec<usize>>,
    pub kind: Kind,
}

impl SemilatticeSpace {
    pub fn new(poset: Poset, op: Vec<Vec<usize>>, kind: Kind) -> Result<Self, Error> {
        let n = poset.len();
        let shape_ok = op.len() == n
            && op
                .iter()
                .all(|row| row.len() == n && row.iter().all(|&v| v < n));
        if !shape_ok {
            return Err(Error::InvalidInput(
                "operation table must be n×n over the carrier".into(),
            ));
        }
        Ok(SemilatticeSpace { poset, op, kind })
    }

    /// The join semilattice of a poset with all binary joins.
    pub fn from_joins(poset: Poset) -> Result<Self, Error> {
        let n = poset.len();
        let mut op = vec![vec![0; n]; n];
        for (i, row) in op.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = poset.join(i, j).ok_or_else(|| Error::JoinMissing {
                    x: poset.name(i).to_string(),
                    y: poset.name(j).to_string(),
                })?;
            }
        }
        SemilatticeSpace::new(poset, op, Kind::Inflationary)
    }

    /// The meet semilattice of a poset with all binary meets.
    pub fn from_meets(poset: Poset) -> Result<Self, Error> {
        let n = poset.len();
        let mut op = vec![vec![0; n]; n];
        for (i, row) in op.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = poset.meet(i, j).ok_or_else(|| Error::MeetMissing {
                    x: poset.name(i).to_string(),
                    y: poset.name(j).to_string(),
                })?;
            }
        }
        SemilatticeSpace::new(poset, op, Kind::Deflationary)
    }

    pub fn apply(&self, i: usize, j: usize) -> usize {
        self.op[i][j]
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Fold of the operation over a nonempty list of elements.
    pub fn fold(&self, elems: &[usize]) -> usize {
        let mut acc = elems[0];
        for &e in &elems[1..] {
            acc = self.op[acc][e];
        }
        acc
    }
}

/// One law in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawCheck {
    fn pass(law: &str) -> Self {
        LawCheck {
            law: law.to_string(),
            pass: true,
            witness: None,
        }
    }

    fn fail(law: &str, witness: String) -> Self {
        LawCheck {
            law: law.to_string(),
            pass: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemilatticeReport {
    pub kind: Kind,
    pub checks: Vec<LawCheck>,
}

impl SemilatticeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Checks every semilattice axiom and reports pass/fail per law:
/// idempotence, associativity, commutativity, the kind's inflation/deflation
/// law, joint monotonicity (the finite rendering of continuity of ⊕ on X⊗X),
/// and — for the ordered kinds — coincidence with the least upper bound
/// (resp. greatest lower bound) of the pair.
pub fn check_semilattice(s: &SemilatticeSpace) -> SemilatticeReport {
    let n = s.len();
    let p = &s.poset;
    let name = |i: usize| p.name(i).to_string();
    let mut checks = Vec::new();

    let idem = (0..n).find(|&x| s.apply(x, x) != x);
    checks.push(match idem {
        None => LawCheck::pass("idempotence"),
        Some(x) => LawCheck::fail("idempotence", format!("{0}⊕{0} ≠ {0}", name(x))),
    });

    let mut assoc = LawCheck::pass("associativity");
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if s.apply(s.apply(x, y), z) != s.apply(x, s.apply(y, z)) {
                    assoc = LawCheck::fail(
                        "associativity",
                        format!(
                            "({}⊕{})⊕{} ≠ {}⊕({}⊕{})",
                            name(x),
                            name(y),
                            name(z),
                            name(x),
                            name(y),
                            name(z)
                        ),
                    );
                    break 'assoc;
                }
            }
        }
    }
    checks.push(assoc);

    let mut comm = LawCheck::pass("commutativity");
    'comm: for x in 0..n {
        for y in 0..n {
            if s.apply(x, y) != s.apply(y, x) {
                comm = LawCheck::fail(
                    "commutativity",
                    format!("{}⊕{} ≠ {}⊕{}", name(x), name(y), name(y), name(x)),
                );
                break 'comm;
            }
        }
    }
    checks.push(comm);

    match s.kind {
        Kind::Inflationary => {
            let bad = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| !p.leq(x, s.apply(x, y)));
            checks.push(match bad {
                None => LawCheck::pass("inflationary"),
                Some((x, y)) => LawCheck::fail(
                    "inflationary",
                    format!("{}⊕{} ≱ {}", name(x), name(y), name(x)),
                ),
            });
        }
        Kind::Deflationary => {
            let bad = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| !p.leq(s.apply(x, y), x));
            checks.push(match bad {
                None => LawCheck::pass("deflationary"),
                Some((x, y)) => LawCheck::fail(
                    "deflationary",
                    format!("{}⊕{} ≰ {}", name(x), name(y), name(x)),
                ),
            });
        }
        Kind::Plain => {}
    }

    let mut mono = LawCheck::pass("joint-monotonicity");
    'mono: for x1 in 0..n {
        for x2 in 0..n {
            if !p.leq(x1, x2) {
                continue;
            }
            for y1 in 0..n {
                for y2 in 0..n {
                    if p.leq(y1, y2) && !p.leq(s.apply(x1, y1), s.apply(x2, y2)) {
                        mono = LawCheck::fail(
                            "joint-monotonicity",
                            format!(
                                "({},{}) ≤ ({},{}) but {}⊕{} ≰ {}⊕{}",
                                name(x1),
                                name(y1),
                                name(x2),
                                name(y2),
                                name(x1),
                                name(y1),
                                name(x2),
                                name(y2)
                            ),
                        );
                        break 'mono;
                    }
                }
            }
        }
    }
    checks.push(mono);

    // An inflationary operation is forced to be the binary sup, and a
    // deflationary one the binary inf; assert that at table level.
    match s.kind {
        Kind::Inflationary => {
            let mut law = LawCheck::pass("least-upper-bound");
            'lub: for x in 0..n {
                for y in 0..n {
                    if p.join(x, y) != Some(s.apply(x, y)) {
                        law = LawCheck::fail(
                            "least-upper-bound",
                            format!(
                                "{}⊕{} is not the least upper bound of the pair",
                                name(x),
                                name(y)
                            ),
                        );
                        break 'lub;
                    }
                }
            }
            checks.push(law);
        }
        Kind::Deflationary => {
            let mut law = LawCheck::pass("greatest-lower-bound");
            'glb: for x in 0..n {
                for y in 0..n {
                    if p.meet(x, y) != Some(s.apply(x, y)) {
                        law = LawCheck::fail(
                            "greatest-lower-bound",
                            format!(
                                "{}⊕{} is not the greatest lower bound of the pair",
                                name(x),
                                name(y)
                            ),
                        );
                        break 'glb;
                    }
                }
            }
            checks.push(law);
        }
        Kind::Plain => {}
    }

    SemilatticeReport {
        kind: s.kind,
        checks,
    }
}
