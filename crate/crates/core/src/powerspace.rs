//! Directed lower, upper, and convex powerspaces of a finite poset.
//!
//! Elements are kept in canonical antichain form: a lower element ↓F is keyed
//! by the maximal elements of F, an upper element ↑F by the minimal ones, and
//! a convex element F̂ = (↓F, ↑F) by the (max, min) antichain pair. Equality is
//! representation equality, which makes the order and operation tables exact.

use std::fmt;

use crate::enumerate;
use crate::error::Error;
use crate::poset::{Antichain, Direction, Extremal, Poset, Subset};
use crate::semilattice::{Kind, SemilatticeSpace};

/// Which powerspace is being built. `algebra()` gives the operation flavor the
/// construction is free for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PsKind {
    Lower,
    Upper,
    Convex,
}

impl PsKind {
    pub fn algebra(self) -> Kind {
        match self {
            PsKind::Lower => Kind::Inflationary,
            PsKind::Upper => Kind::Deflationary,
            PsKind::Convex => Kind::Plain,
        }
    }

    pub const ALL: [PsKind; 3] = [PsKind::Lower, PsKind::Upper, PsKind::Convex];
}

impl fmt::Display for PsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PsKind::Lower => "lower",
            PsKind::Upper => "upper",
            PsKind::Convex => "convex",
        };
        f.write_str(s)
    }
}

/// ↓F, keyed by its maximal-element generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LowerElem {
    gen: Antichain,
}

/// ↑F, keyed by its minimal-element generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UpperElem {
    gen: Antichain,
}

/// F̂ = (↓F, ↑F), keyed by the consistent (max, min) antichain pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvexElem {
    max_gen: Antichain,
    min_gen: Antichain,
}

impl LowerElem {
    /// Canonicalizes an arbitrary nonempty generating set F to max F.
    pub fn new(p: &Poset, f: &Subset) -> Result<Self, Error> {
        Ok(LowerElem {
            gen: p.extremal_antichain(f, Extremal::Max)?,
        })
    }

    pub fn gen(&self) -> Subset {
        self.gen.subset()
    }

    /// The denoted lower set ↓F.
    pub fn denoted(&self, p: &Poset) -> Subset {
        p.closure(&self.gen(), Direction::Down)
    }

    pub fn le(&self, other: &LowerElem, p: &Poset) -> bool {
        self.denoted(p).is_subset_of(&other.denoted(p))
    }

    pub fn union(&self, other: &LowerElem, p: &Poset) -> LowerElem {
        LowerElem::new(p, &self.gen().union(&other.gen())).expect("union of nonempty generators")
    }
}

impl UpperElem {
    pub fn new(p: &Poset, f: &Subset) -> Result<Self, Error> {
        Ok(UpperElem {
            gen: p.extremal_antichain(f, Extremal::Min)?,
        })
    }

    pub fn gen(&self) -> Subset {
        self.gen.subset()
    }

    /// The denoted upper set ↑F.
    pub fn denoted(&self, p: &Poset) -> Subset {
        p.closure(&self.gen(), Direction::Up)
    }

    /// ↑F1 ≤ ↑F2 ⇔ ↑F2 ⊆ ↑F1 (reverse inclusion).
    pub fn le(&self, other: &UpperElem, p: &Poset) -> bool {
        other.denoted(p).is_subset_of(&self.denoted(p))
    }

    pub fn union(&self, other: &UpperElem, p: &Poset) -> UpperElem {
        UpperElem::new(p, &self.gen().union(&other.gen())).expect("union of nonempty generators")
    }
}

impl ConvexElem {
    pub fn new(p: &Poset, f: &Subset) -> Result<Self, Error> {
        Ok(ConvexElem {
            max_gen: p.extremal_antichain(f, Extremal::Max)?,
            min_gen: p.extremal_antichain(f, Extremal::Min)?,
        })
    }

    pub fn max_gen(&self) -> Subset {
        self.max_gen.subset()
    }

    pub fn min_gen(&self) -> Subset {
        self.min_gen.subset()
    }

    /// The canonical generating set F = maxA ∪ minA.
    pub fn gen(&self) -> Subset {
        self.max_gen().union(&self.min_gen())
    }

    /// The denoted lens ↓maxA ∩ ↑minA.
    pub fn denoted(&self, p: &Poset) -> Subset {
        p.closure(&self.max_gen(), Direction::Down)
            .intersection(&p.closure(&self.min_gen(), Direction::Up))
    }

    /// Egli-Milner: ↓F1 ⊆ ↓F2 and ↑F2 ⊆ ↑F1.
    pub fn le(&self, other: &ConvexElem, p: &Poset) -> bool {
        p.closure(&self.max_gen(), Direction::Down)
            .is_subset_of(&p.closure(&other.max_gen(), Direction::Down))
            && p.closure(&other.min_gen(), Direction::Up)
                .is_subset_of(&p.closure(&self.min_gen(), Direction::Up))
    }

    pub fn combine(&self, other: &ConvexElem, p: &Poset) -> ConvexElem {
        ConvexElem::new(p, &self.gen().union(&other.gen())).expect("union of nonempty generators")
    }
}

/// A powerspace element of any kind, for the kind-dispatched operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Lower(LowerElem),
    Upper(UpperElem),
    Convex(ConvexElem),
}

impl Elem {
    pub fn new(kind: PsKind, p: &Poset, f: &Subset) -> Result<Elem, Error> {
        Ok(match kind {
            PsKind::Lower => Elem::Lower(LowerElem::new(p, f)?),
            PsKind::Upper => Elem::Upper(UpperElem::new(p, f)?),
            PsKind::Convex => Elem::Convex(ConvexElem::new(p, f)?),
        })
    }

    pub fn unit(kind: PsKind, p: &Poset, x: usize) -> Elem {
        Elem::new(kind, p, &Subset::singleton(p.len(), x)).expect("singleton is nonempty")
    }

    pub fn kind(&self) -> PsKind {
        match self {
            Elem::Lower(_) => PsKind::Lower,
            Elem::Upper(_) => PsKind::Upper,
            Elem::Convex(_) => PsKind::Convex,
        }
    }

    pub fn carrier(&self) -> usize {
        match self {
            Elem::Lower(e) => e.gen().carrier(),
            Elem::Upper(e) => e.gen().carrier(),
            Elem::Convex(e) => e.max_gen().carrier(),
        }
    }

    /// The maximal-side generators: lower generators, or maxA for convex, or
    /// the maximal elements of the denoted upper set.
    pub fn max_side(&self, p: &Poset) -> Subset {
        match self {
            Elem::Lower(e) => e.gen(),
            Elem::Upper(e) => p
                .extremal_antichain(&e.denoted(p), Extremal::Max)
                .expect("nonempty")
                .subset(),
            Elem::Convex(e) => e.max_gen(),
        }
    }

    /// Dual of `max_side`.
    pub fn min_side(&self, p: &Poset) -> Subset {
        match self {
            Elem::Lower(e) => p
                .extremal_antichain(&e.denoted(p), Extremal::Min)
                .expect("nonempty")
                .subset(),
            Elem::Upper(e) => e.gen(),
            Elem::Convex(e) => e.min_gen(),
        }
    }

    /// The kind's canonical generating set.
    pub fn gen(&self) -> Subset {
        match self {
            Elem::Lower(e) => e.gen(),
            Elem::Upper(e) => e.gen(),
            Elem::Convex(e) => e.gen(),
        }
    }

    pub fn denoted(&self, p: &Poset) -> Subset {
        match self {
            Elem::Lower(e) => e.denoted(p),
            Elem::Upper(e) => e.denoted(p),
            Elem::Convex(e) => e.denoted(p),
        }
    }

    pub fn label(&self, p: &Poset) -> String {
        match self {
            Elem::Lower(e) => format!("↓{}", p.render_subset(&e.gen())),
            Elem::Upper(e) => format!("↑{}", p.render_subset(&e.gen())),
            Elem::Convex(e) => format!("⋄{}", p.render_subset(&e.gen())),
        }
    }

    fn check_same(&self, other: &Elem, p: &Poset) -> Result<(), Error> {
        if self.kind() != other.kind() {
            return Err(Error::KindMismatch {
                expected: self.kind().algebra(),
                found: other.kind().algebra(),
            });
        }
        if self.carrier() != p.len() || other.carrier() != p.len() {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }
}

/// Kind-dispatched order test: ≤_L is inclusion of closures, ≤_U reverse
/// inclusion of saturations, ≤_P both (Egli-Milner).
pub fn compare(p: &Poset, e1: &Elem, e2: &Elem) -> Result<bool, Error> {
    e1.check_same(e2, p)?;
    Ok(match (e1, e2) {
        (Elem::Lower(a), Elem::Lower(b)) => a.le(b, p),
        (Elem::Upper(a), Elem::Upper(b)) => a.le(b, p),
        (Elem::Convex(a), Elem::Convex(b)) => a.le(b, p),
        _ => unreachable!(),
    })
}

/// Kind-dispatched operation: the canonical element named by the union of the
/// generating sets. For lower elements this is the binary sup, for upper the
/// binary inf, for convex the free semilattice operation.
pub fn combine(p: &Poset, e1: &Elem, e2: &Elem) -> Result<Elem, Error> {
    e1.check_same(e2, p)?;
    Ok(match (e1, e2) {
        (Elem::Lower(a), Elem::Lower(b)) => Elem::Lower(a.union(b, p)),
        (Elem::Upper(a), Elem::Upper(b)) => Elem::Upper(a.union(b, p)),
        (Elem::Convex(a), Elem::Convex(b)) => Elem::Convex(a.combine(b, p)),
        _ => unreachable!(),
    })
}

/// A fully tabulated powerspace: every canonical element, the order poset over
/// them, the operation table, and the unit map from the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Powerspace {
    pub kind: PsKind,
    pub base: Poset,
    pub elems: Vec<Elem>,
    /// Order poset over `elems`, with rendered element labels.
    pub order: Poset,
    /// `op[i][j]` is the index of elems[i] ⊕ elems[j].
    pub op: Vec<Vec<usize>>,
    /// `unit[x]` is the index of ↓x / ↑x / x̂.
    pub unit: Vec<usize>,
}

impl Powerspace {
    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.elems.binary_search(e).ok()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The (order, op) pair as a checkable semilattice space of the kind's
    /// algebra flavor.
    pub fn to_semilattice(&self) -> SemilatticeSpace {
        SemilatticeSpace::new(self.order.clone(), self.op.clone(), self.kind.algebra())
            .expect("powerspace tables are square")
    }
}

/// Enumerates every canonical element of the chosen powerspace over `base`,
/// sorts them, and tabulates order, operation, and unit.
pub fn build_powerspace(kind: PsKind, base: &Poset) -> Result<Powerspace, Error> {
    if base.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut elems: Vec<Elem> = match kind {
        PsKind::Lower => enumerate::antichains(base)?
            .into_iter()
            .map(|a| Elem::Lower(LowerElem { gen: a }))
            .collect(),
        PsKind::Upper => enumerate::antichains(base)?
            .into_iter()
            .map(|a| Elem::Upper(UpperElem { gen: a }))
            .collect(),
        PsKind::Convex => enumerate::consistent_pairs(base)?
            .into_iter()
            .map(|(max_gen, min_gen)| Elem::Convex(ConvexElem { max_gen, min_gen }))
            .collect(),
    };
    elems.sort();
    let n = elems.len();

    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = compare(base, &elems[i], &elems[j])?;
        }
    }
    let names: Vec<String> = elems.iter().map(|e| e.label(base)).collect();
    let order = Poset::from_leq_matrix(names, &leq)?;

    let mut op = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = combine(base, &elems[i], &elems[j])?;
            op[i][j] = elems
                .binary_search(&c)
                .expect("combine lands on a canonical element");
        }
    }

    let unit: Vec<usize> = (0..base.len())
        .map(|x| {
            let u = Elem::unit(kind, base, x);
            elems.binary_search(&u).expect("unit image is canonical")
        })
        .collect();

    Ok(Powerspace {
        kind,
        base: base.clone(),
        elems,
        order,
        op,
        unit,
    })
}
