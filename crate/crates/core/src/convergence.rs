//! The literal ⇒ convergence relations on powerspace carriers and the
//! convergence-open test.
//!
//! Witness search comes in two modes. `Principal` restricts the directed-set
//! witnesses to principal ones (sets with a maximum) — on a finite poset every
//! directed set has a maximum, so nothing is lost. `Exhaustive` enumerates
//! arbitrary directed subsets and is kept as the assumption-free oracle for
//! small carriers.

use crate::error::{guard, Error};
use crate::poset::{Direction, Poset, Subset};
use crate::powerspace::{compare, ConvexElem, Elem, LowerElem, Powerspace, PsKind, UpperElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witnesses {
    Principal,
    Exhaustive,
}

/// A nonempty family of same-kind elements, validated to be directed in the
/// kind's order on construction. Convergence operations only accept these, so
/// non-directed input is rejected eagerly rather than answered vacuously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedFamily {
    kind: PsKind,
    elems: Vec<Elem>,
}

impl DirectedFamily {
    pub fn new(p: &Poset, elems: Vec<Elem>) -> Result<Self, Error> {
        if elems.is_empty() {
            return Err(Error::EmptySubset);
        }
        let kind = elems[0].kind();
        for e in &elems {
            if e.kind() != kind {
                return Err(Error::KindMismatch {
                    expected: kind.algebra(),
                    found: e.kind().algebra(),
                });
            }
            if e.carrier() != p.len() {
                return Err(Error::BaseMismatch);
            }
        }
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                let bounded = elems.iter().any(|u| {
                    compare(p, &elems[i], u).unwrap_or(false)
                        && compare(p, &elems[j], u).unwrap_or(false)
                });
                if !bounded {
                    return Err(Error::NotDirected { i, j });
                }
            }
        }
        Ok(DirectedFamily { kind, elems })
    }

    /// For families already known to be directed (e.g. enumerated as subsets
    /// with a maximum), skipping the quadratic validation.
    pub(crate) fn new_unchecked(elems: Vec<Elem>) -> Self {
        debug_assert!(!elems.is_empty());
        DirectedFamily {
            kind: elems[0].kind(),
            elems,
        }
    }

    pub fn kind(&self) -> PsKind {
        self.kind
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    /// The ≤-maximum element; always present for a finite directed family.
    pub fn maximum(&self, p: &Poset) -> Elem {
        *self
            .elems
            .iter()
            .find(|m| self.elems.iter().all(|e| compare(p, e, m).unwrap_or(false)))
            .expect("finite directed families have a maximum")
    }

    fn expect_kind(&self, kind: PsKind) -> Result<(), Error> {
        if self.kind != kind {
            return Err(Error::KindMismatch {
                expected: kind.algebra(),
                found: self.kind.algebra(),
            });
        }
        Ok(())
    }
}

/// 𝒟 ⇒_L ↓F: every generator a of F has a directed D_a ⊆ ⋃𝒟 with D_a → a.
/// With principal witnesses this is just a ∈ ⋃𝒟, since ⋃𝒟 is a lower set and
/// max D_a witnesses the limit.
pub fn converges_lower(
    p: &Poset,
    fam: &DirectedFamily,
    target: &LowerElem,
    mode: Witnesses,
) -> Result<bool, Error> {
    fam.expect_kind(PsKind::Lower)?;
    let mut union = Subset::empty(p.len());
    for e in fam.elems() {
        union = union.union(&e.denoted(p));
    }
    match mode {
        Witnesses::Principal => Ok(target.gen().is_subset_of(&union)),
        Witnesses::Exhaustive => {
            let pool: Vec<usize> = union.iter().collect();
            guard(1u128 << pool.len().min(127))?;
            'gens: for a in target.gen().iter() {
                for d_mask in 1u64..(1 << pool.len()) {
                    let members: Vec<usize> = pool
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| d_mask >> b & 1 == 1)
                        .map(|(_, &i)| i)
                        .collect();
                    let d = Subset::from_indices(p.len(), &members);
                    if let Some(m) = p.maximum_of(&d) {
                        if p.leq(a, m) {
                            continue 'gens;
                        }
                    }
                }
                return Ok(false);
            }
            Ok(true)
        }
    }
}

/// Checks the three ⇒_U conditions for one tuple-of-directed-sets witness,
/// where each directed set is summarized by (members, maximum).
/// 1. F ∩ lim D_i ≠ ∅ for each i (lim D_i = ↓max D_i);
/// 2. F ⊆ ⋃ lim D_i;
/// 3. every tuple (d_1..d_k) ∈ ∏D_i admits ↑F′ ∈ 𝒻 with ↑F′ ⊆ ⋃↑d_i.
fn upper_conditions(
    p: &Poset,
    fam_ups: &[Subset],
    f_gen: &Subset,
    witnesses: &[(Vec<usize>, usize)],
) -> bool {
    let n = p.len();
    let f_up = |mask: u64| fam_ups.iter().any(|fu| fu.mask() & !mask == 0);
    for (_, m) in witnesses {
        if p.down_mask(*m) & f_gen.mask() == 0 {
            return false;
        }
    }
    let mut limits = 0u64;
    for (_, m) in witnesses {
        limits |= p.down_mask(*m);
    }
    if f_gen.mask() & !limits != 0 {
        return false;
    }
    // condition 3 over the product of the witness sets
    let k = witnesses.len();
    let mut idx = vec![0usize; k];
    loop {
        let mut cover = 0u64;
        for (w, (members, _)) in witnesses.iter().enumerate() {
            cover |= p.up_mask(members[idx[w]]);
        }
        if !f_up(cover) {
            return false;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                let _ = n;
                return true;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < witnesses[pos].0.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// ℱ ⇒_U ↑F: the literal three-condition search over tuples of directed sets.
/// Principal mode searches singleton witnesses only, which suffices because a
/// tuple of directed sets can be replaced by the tuple of their maxima.
pub fn converges_upper(
    p: &Poset,
    fam: &DirectedFamily,
    target: &UpperElem,
    mode: Witnesses,
) -> Result<bool, Error> {
    fam.expect_kind(PsKind::Upper)?;
    let fam_ups: Vec<Subset> = fam.elems().iter().map(|e| e.denoted(p)).collect();
    let f_gen = target.gen();
    let n = p.len();
    match mode {
        Witnesses::Principal => {
            guard(1u128 << n.min(127))?;
            for w_mask in 1u64..(1 << n) {
                let ws: Vec<(Vec<usize>, usize)> = Subset::from_mask(n, w_mask)
                    .iter()
                    .map(|m| (vec![m], m))
                    .collect();
                if upper_conditions(p, &fam_ups, &f_gen, &ws) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Witnesses::Exhaustive => {
            let directed = crate::enumerate::directed_subsets(p)?;
            guard(1u128 << directed.len().min(127))?;
            let summaries: Vec<(Vec<usize>, usize)> = directed
                .iter()
                .map(|d| (d.iter().collect(), p.maximum_of(d).expect("directed")))
                .collect();
            for pick in 1u64..(1 << summaries.len()) {
                let ws: Vec<(Vec<usize>, usize)> = summaries
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| pick >> b & 1 == 1)
                    .map(|(_, s)| s.clone())
                    .collect();
                if upper_conditions(p, &fam_ups, &f_gen, &ws) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// The finite cross-check from the continuous-domain characterization:
/// ℱ ⇒_U ↑F ⇔ ⋂{↑G : ↑G ∈ ℱ} ⊆ ↑F.
pub fn upper_intersection_criterion(
    p: &Poset,
    fam: &DirectedFamily,
    target: &UpperElem,
) -> Result<bool, Error> {
    fam.expect_kind(PsKind::Upper)?;
    let mut inter = Subset::full(p.len());
    for e in fam.elems() {
        inter = inter.intersection(&e.denoted(p));
    }
    Ok(inter.is_subset_of(&target.denoted(p)))
}

/// The four ⇒_P conditions: like ⇒_U plus the constraint that witnesses draw
/// from ⋃↓F_i, and with ↑F′ ⊆ ↑(d_1..d_k) in place of the union of point
/// saturations. D_i ⊆ ⋃_{i∈I}↓F_i is read as "each witness is contained in
/// the union over the whole family".
fn convex_conditions(
    p: &Poset,
    fam: &[&ConvexElem],
    f_gen: &Subset,
    pool: &Subset,
    witnesses: &[(Vec<usize>, usize)],
) -> bool {
    for (members, m) in witnesses {
        // condition (1): drawn from the union of the closure parts
        if members.iter().any(|&d| !pool.contains(d)) {
            return false;
        }
        // condition (2)
        if p.down_mask(*m) & f_gen.mask() == 0 {
            return false;
        }
    }
    let mut limits = 0u64;
    for (_, m) in witnesses {
        limits |= p.down_mask(*m);
    }
    // condition (3)
    if f_gen.mask() & !limits != 0 {
        return false;
    }
    // condition (4) over the product
    let k = witnesses.len();
    let mut idx = vec![0usize; k];
    loop {
        let mut tuple_up = 0u64;
        for (w, (members, _)) in witnesses.iter().enumerate() {
            tuple_up |= p.up_mask(members[idx[w]]);
        }
        let ok = fam.iter().any(|fe| {
            let up = p.closure(&fe.min_gen(), Direction::Up);
            up.mask() & !tuple_up == 0
        });
        if !ok {
            return false;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < witnesses[pos].0.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// 𝒟 ⇒_P F̂: the literal four-condition search.
pub fn converges_convex(
    p: &Poset,
    fam: &DirectedFamily,
    target: &ConvexElem,
    mode: Witnesses,
) -> Result<bool, Error> {
    fam.expect_kind(PsKind::Convex)?;
    let members: Vec<&ConvexElem> = fam
        .elems()
        .iter()
        .map(|e| match e {
            Elem::Convex(c) => c,
            _ => unreachable!(),
        })
        .collect();
    let mut pool = Subset::empty(p.len());
    for c in &members {
        pool = pool.union(&p.closure(&c.max_gen(), Direction::Down));
    }
    let f_gen = target.gen();
    match mode {
        Witnesses::Principal => {
            guard(1u128 << p.len().min(127))?;
            for w_mask in 1u64..(1 << p.len()) {
                let w = Subset::from_mask(p.len(), w_mask);
                if !w.is_subset_of(&pool) {
                    continue;
                }
                let ws: Vec<(Vec<usize>, usize)> = w.iter().map(|m| (vec![m], m)).collect();
                if convex_conditions(p, &members, &f_gen, &pool, &ws) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Witnesses::Exhaustive => {
            let directed: Vec<Subset> = crate::enumerate::directed_subsets(p)?
                .into_iter()
                .filter(|d| d.is_subset_of(&pool))
                .collect();
            guard(1u128 << directed.len().min(127))?;
            let summaries: Vec<(Vec<usize>, usize)> = directed
                .iter()
                .map(|d| (d.iter().collect(), p.maximum_of(d).expect("directed")))
                .collect();
            for pick in 1u64..(1 << summaries.len()) {
                let ws: Vec<(Vec<usize>, usize)> = summaries
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| pick >> b & 1 == 1)
                    .map(|(_, s)| s.clone())
                    .collect();
                if convex_conditions(p, &members, &f_gen, &pool, &ws) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Kind-dispatched convergence with principal witnesses.
pub fn converges(
    p: &Poset,
    fam: &DirectedFamily,
    target: &Elem,
    mode: Witnesses,
) -> Result<bool, Error> {
    match target {
        Elem::Lower(t) => converges_lower(p, fam, t, mode),
        Elem::Upper(t) => converges_upper(p, fam, t, mode),
        Elem::Convex(t) => converges_convex(p, fam, t, mode),
    }
}

/// All directed families over a powerspace carrier, as index subsets of
/// `ps.elems` (each family is a subset with a ps.order-maximum).
pub fn directed_families(ps: &Powerspace) -> Result<Vec<Subset>, Error> {
    crate::enumerate::directed_subsets(&ps.order)
}

/// Precomputed convergence matrix: `converges[f]` is the mask of element
/// indices the f-th directed family converges to.
pub struct ConvergenceTable {
    pub families: Vec<Subset>,
    pub converges: Vec<u64>,
}

pub fn convergence_table(ps: &Powerspace) -> Result<ConvergenceTable, Error> {
    let families = directed_families(ps)?;
    let mut table = Vec::with_capacity(families.len());
    for fmask in &families {
        let fam = DirectedFamily::new_unchecked(fmask.iter().map(|i| ps.elems[i]).collect());
        let mut mask = 0u64;
        for (t, target) in ps.elems.iter().enumerate() {
            if converges(&ps.base, &fam, target, Witnesses::Principal)? {
                mask |= 1 << t;
            }
        }
        table.push(mask);
    }
    Ok(ConvergenceTable {
        families,
        converges: table,
    })
}

impl ConvergenceTable {
    /// 𝒰 is convergence open iff every directed family converging into 𝒰
    /// already meets 𝒰.
    pub fn is_open(&self, u: &Subset) -> bool {
        self.families
            .iter()
            .zip(&self.converges)
            .all(|(fam, conv)| conv & u.mask() == 0 || fam.mask() & u.mask() != 0)
    }
}

/// Membership test for the convergence topology O_⇒ of a powerspace.
pub fn is_convergence_open(ps: &Powerspace, u: &Subset) -> Result<bool, Error> {
    if u.carrier() != ps.len() {
        return Err(Error::BaseMismatch);
    }
    Ok(convergence_table(ps)?.is_open(u))
}

/// Every convergence-open subset of the carrier. Exponential; guarded.
pub fn convergence_open_sets(ps: &Powerspace) -> Result<Vec<Subset>, Error> {
    guard(1u128 << ps.len().min(127))?;
    let table = convergence_table(ps)?;
    let mut out = Vec::new();
    for mask in 0..(1u64 << ps.len()) {
        let u = Subset::from_mask(ps.len(), mask);
        if table.is_open(&u) {
            out.push(u);
        }
    }
    Ok(out)
}
