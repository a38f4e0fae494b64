//! Classical powerdomain carriers on finite posets and the cross-validation
//! against the directed powerspaces.
//!
//! On a finite poset the Scott topology is the upper-set topology, every
//! nonempty lower/upper/convex set is finitely generated, and the three
//! classical carriers — nonempty closed sets, nonempty saturated sets, lenses
//! with the Egli-Milner order — are order-isomorphic to the corresponding
//! directed powerspaces, with the lower/upper Vietoris topologies agreeing
//! with Scott on them. None of these coincidences survive to infinite
//! carriers, and nothing here claims they do:
//!
//! - on the dcpo ℕ×ℕ ∪ {∞} (countably many ω-chains under one top), the
//!   Scott topology on the closed-set lattice is strictly finer than the
//!   lower Vietoris topology, so H(P) ≠ P_OL(P);
//! - on the compact subsets of ℝⁿ, the directed upper powerspace differs
//!   from the family of compact saturated sets, P_U(P_O(X)) ≠ Q(P_O(X)),
//!   and hence the convex analogue fails too.
//!
//! Those separations need genuinely infinite directed suprema; no finite
//! truncation reproduces them, so they live here as documentation only.

use serde::Serialize;

use crate::convergence::convergence_open_sets;
use crate::enumerate;
use crate::error::{guard, Error, CANDIDATE_LIMIT};
use crate::poset::{Direction, Poset, Subset};
use crate::powerspace::{build_powerspace, PsKind};
use crate::topology::FiniteTopology;

/// All nonempty lower (= closed) sets under inclusion with union: the finite
/// Hoare carrier.
#[derive(Debug, Clone)]
pub struct ClosedSetLattice {
    pub base: Poset,
    pub elems: Vec<Subset>,
    pub order: Poset,
    pub op: Vec<Vec<usize>>,
}

/// All nonempty upper (= compact saturated) sets under reverse inclusion with
/// union: the finite Smyth carrier.
#[derive(Debug, Clone)]
pub struct CompactSaturatedFamily {
    pub base: Poset,
    pub elems: Vec<Subset>,
    pub order: Poset,
    pub op: Vec<Vec<usize>>,
}

/// A nonempty convex subset: the intersection of a closed set and a saturated
/// one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lens {
    pub base: Poset,
    pub members: Subset,
}

impl Lens {
    pub fn new(base: &Poset, members: Subset) -> Result<Self, Error> {
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        let hull = base
            .closure(&members, Direction::Down)
            .intersection(&base.closure(&members, Direction::Up));
        if hull != members {
            return Err(Error::InvalidInput("subset is not convex".into()));
        }
        Ok(Lens {
            base: base.clone(),
            members,
        })
    }

    /// The canonical (closure, saturation) factorization as generator
    /// antichains: (max A, min A).
    pub fn canonical_pair(&self) -> (Subset, Subset) {
        let max = self
            .base
            .extremal_antichain(&self.members, crate::poset::Extremal::Max)
            .expect("nonempty");
        let min = self
            .base
            .extremal_antichain(&self.members, crate::poset::Extremal::Min)
            .expect("nonempty");
        (max.subset(), min.subset())
    }
}

/// Egli-Milner: A ≤ B iff ↓A ⊆ ↓B and ↑B ⊆ ↑A.
pub fn lens_le(base: &Poset, a: &Subset, b: &Subset) -> bool {
    base.closure(a, Direction::Down)
        .is_subset_of(&base.closure(b, Direction::Down))
        && base
            .closure(b, Direction::Up)
            .is_subset_of(&base.closure(a, Direction::Up))
}

fn set_label(p: &Poset, s: &Subset) -> String {
    p.render_subset(s)
}

fn union_table(elems: &[Subset]) -> Vec<Vec<usize>> {
    let n = elems.len();
    let mut op = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let u = elems[i].union(&elems[j]);
            op[i][j] = elems
                .binary_search(&u)
                .expect("unions of lower/upper sets stay in the family");
        }
    }
    op
}

/// The finite Hoare powerdomain H(P).
pub fn hoare(p: &Poset) -> Result<ClosedSetLattice, Error> {
    let elems = enumerate::lower_sets(p)?;
    let n = elems.len();
    let names: Vec<String> = elems.iter().map(|s| set_label(p, s)).collect();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| elems[i].is_subset_of(&elems[j])).collect())
        .collect();
    let order = Poset::from_leq_matrix(names, &leq)?;
    let op = union_table(&elems);
    Ok(ClosedSetLattice {
        base: p.clone(),
        elems,
        order,
        op,
    })
}

/// The finite Smyth powerdomain Q(P), ordered by reverse inclusion.
pub fn smyth(p: &Poset) -> Result<CompactSaturatedFamily, Error> {
    let elems = enumerate::upper_sets(p)?;
    let n = elems.len();
    let names: Vec<String> = elems.iter().map(|s| set_label(p, s)).collect();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| elems[j].is_subset_of(&elems[i])).collect())
        .collect();
    let order = Poset::from_leq_matrix(names, &leq)?;
    let op = union_table(&elems);
    Ok(CompactSaturatedFamily {
        base: p.clone(),
        elems,
        order,
        op,
    })
}

/// All lenses of P with the Egli-Milner order poset over them.
pub fn lenses(p: &Poset) -> Result<(Vec<Lens>, Poset), Error> {
    let sets = enumerate::convex_subsets(p)?;
    let n = sets.len();
    let names: Vec<String> = sets.iter().map(|s| set_label(p, s)).collect();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| lens_le(p, &sets[i], &sets[j])).collect())
        .collect();
    let order = Poset::from_leq_matrix(names, &leq)?;
    let out = sets
        .into_iter()
        .map(|members| Lens {
            base: p.clone(),
            members,
        })
        .collect();
    Ok((out, order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VietorisSide {
    Lower,
    Upper,
}

/// The lower Vietoris topology on C(P) (subbase ⟨U⟩ = {A : A ∩ U ≠ ∅}) or the
/// upper Vietoris topology on Q(P) (subbase [U] = {K : K ⊆ U}), for U ranging
/// over the opens (= upper sets) of P.
pub fn vietoris(p: &Poset, side: VietorisSide) -> Result<FiniteTopology, Error> {
    let opens_of_p: Vec<Subset> = {
        let mut all = vec![Subset::empty(p.len())];
        all.extend(enumerate::upper_sets(p)?);
        all
    };
    match side {
        VietorisSide::Lower => {
            let c = hoare(p)?;
            let m = c.elems.len();
            let mut subbase = Vec::new();
            for u in &opens_of_p {
                let mut hit = Subset::empty(m);
                for (i, a) in c.elems.iter().enumerate() {
                    if !a.intersection(u).is_empty() {
                        hit.insert(i);
                    }
                }
                subbase.push(hit);
            }
            FiniteTopology::generate(c.order.names().to_vec(), &subbase)
        }
        VietorisSide::Upper => {
            let q = smyth(p)?;
            let m = q.elems.len();
            let mut subbase = Vec::new();
            for u in &opens_of_p {
                let mut inside = Subset::empty(m);
                for (i, k) in q.elems.iter().enumerate() {
                    if k.is_subset_of(u) {
                        inside.insert(i);
                    }
                }
                subbase.push(inside);
            }
            FiniteTopology::generate(q.order.names().to_vec(), &subbase)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicCheck {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicReport {
    pub kind: String,
    pub checks: Vec<ClassicCheck>,
}

impl ClassicReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn push(checks: &mut Vec<ClassicCheck>, name: &str, pass: bool, detail: Option<String>) {
    checks.push(ClassicCheck {
        check: name.to_string(),
        pass,
        detail,
    });
}

/// Cross-validates a directed powerspace against its classical counterpart:
/// (i) the carrier bijection by denoted set is an order isomorphism,
/// (ii) the convergence-open topology equals the upper-set (Scott) topology of
/// the classical order — checked literally while the double enumeration fits
/// the guard, and through the upper-set collapse beyond that,
/// (iii) for the lower/upper kinds, the Vietoris topology equals the Scott
/// topology on the classical carrier.
pub fn compare_to_classic(kind: PsKind, p: &Poset) -> Result<ClassicReport, Error> {
    let ps = build_powerspace(kind, p)?;
    let (classic_elems, classic_order): (Vec<Subset>, Poset) = match kind {
        PsKind::Lower => {
            let h = hoare(p)?;
            (h.elems, h.order)
        }
        PsKind::Upper => {
            let q = smyth(p)?;
            (q.elems, q.order)
        }
        PsKind::Convex => {
            let (ls, order) = lenses(p)?;
            (ls.into_iter().map(|l| l.members).collect(), order)
        }
    };
    let mut checks = Vec::new();

    // (i) bijection by denoted set + order isomorphism
    let mut mapping: Vec<Option<usize>> = Vec::with_capacity(ps.len());
    for e in &ps.elems {
        mapping.push(classic_elems.binary_search(&e.denoted(p)).ok());
    }
    let bij = ps.len() == classic_elems.len() && mapping.iter().all(|m| m.is_some()) && {
        let mut seen = vec![false; classic_elems.len()];
        mapping.iter().flatten().for_each(|&m| seen[m] = true);
        seen.iter().all(|&s| s)
    };
    push(
        &mut checks,
        "carrier-bijection",
        bij,
        (!bij).then(|| {
            format!(
                "{} powerspace elements vs {} classical sets",
                ps.len(),
                classic_elems.len()
            )
        }),
    );
    if bij {
        let table: Vec<usize> = mapping.iter().map(|m| m.unwrap()).collect();
        let mut order_iso = true;
        'iso: for i in 0..ps.len() {
            for j in 0..ps.len() {
                if ps.order.leq(i, j) != classic_order.leq(table[i], table[j]) {
                    order_iso = false;
                    break 'iso;
                }
            }
        }
        push(&mut checks, "order-isomorphism", order_iso, None);

        // (ii) convergence opens vs upper sets of the classical order
        let e = ps.len();
        // literal mode enumerates 2^e candidate opens against 2^e families
        let literal_feasible = 2 * e as u32 <= CANDIDATE_LIMIT.trailing_zeros();
        let ps_opens: Vec<Subset> = if literal_feasible {
            convergence_open_sets(&ps)?
        } else {
            let mut ups = vec![Subset::empty(e)];
            ups.extend(enumerate::upper_sets(&ps.order)?);
            ups
        };
        let mut classic_upper: Vec<Subset> = vec![Subset::empty(e)];
        classic_upper.extend(enumerate::upper_sets(&classic_order)?);
        let mapped: Vec<Subset> = ps_opens
            .iter()
            .map(|u| {
                let mut s = Subset::empty(e);
                for i in u.iter() {
                    s.insert(table[i]);
                }
                s
            })
            .collect();
        let mut mapped_sorted = mapped;
        mapped_sorted.sort();
        let topo_eq = mapped_sorted == classic_upper;
        push(
            &mut checks,
            if literal_feasible {
                "convergence-topology-literal"
            } else {
                "convergence-topology-collapsed"
            },
            topo_eq,
            None,
        );
    }

    // (iii) Vietoris = Scott on the classical carrier
    match kind {
        PsKind::Lower | PsKind::Upper => {
            let side = if kind == PsKind::Lower {
                VietorisSide::Lower
            } else {
                VietorisSide::Upper
            };
            let vt = vietoris(p, side)?;
            let mut scott: Vec<Subset> = vec![Subset::empty(classic_order.len())];
            scott.extend(enumerate::upper_sets(&classic_order)?);
            let mut vt_opens = vt.opens().to_vec();
            vt_opens.sort();
            let eq = vt_opens == scott;
            push(
                &mut checks,
                "vietoris-equals-scott",
                eq,
                (!eq).then(|| {
                    format!(
                        "{} Vietoris opens vs {} upper sets",
                        vt_opens.len(),
                        scott.len()
                    )
                }),
            );
        }
        PsKind::Convex => {}
    }

    Ok(ClassicReport {
        kind: kind.to_string(),
        checks,
    })
}

/// Guard helper for callers driving `compare_to_classic` over enumerations.
pub fn classic_guard(p: &Poset) -> Result<(), Error> {
    guard(1u128 << p.len().min(127))
}
