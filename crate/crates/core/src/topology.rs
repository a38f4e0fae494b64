//! Finite topologies, the specialization order, and the directed-space check.
//!
//! At finite scale every directed subset has a maximum, so directed-open sets
//! are exactly the upper sets of the specialization preorder and "directed
//! space" collapses to "T0". The literal sweep over all (D, x) convergence
//! pairs is kept here as the oracle for that collapse.

use crate::error::{guard, Error};
use crate::poset::{Poset, Subset};

/// A topology on a finite carrier: the open sets are listed explicitly and the
/// axioms (∅, the full set, pairwise ∩ and ∪) are validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    names: Vec<String>,
    opens: Vec<Subset>,
}

impl FiniteTopology {
    pub fn new(names: Vec<String>, mut opens: Vec<Subset>) -> Result<Self, Error> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        opens.sort();
        opens.dedup();
        guard((opens.len() as u128).pow(2))?;
        let has = |s: &Subset| opens.binary_search(s).is_ok();
        if !has(&Subset::empty(n)) {
            return Err(Error::NotATopology("missing the empty set".into()));
        }
        if !has(&Subset::full(n)) {
            return Err(Error::NotATopology("missing the full carrier".into()));
        }
        for a in &opens {
            for b in &opens {
                if !has(&a.union(b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under union of {:?} and {:?}",
                        a.mask(),
                        b.mask()
                    )));
                }
                if !has(&a.intersection(b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under intersection of {:?} and {:?}",
                        a.mask(),
                        b.mask()
                    )));
                }
            }
        }
        Ok(FiniteTopology { names, opens })
    }

    /// Generates the topology from an arbitrary subbase: close under pairwise
    /// intersection, then under arbitrary (= iterated pairwise) union.
    pub fn generate(names: Vec<String>, subbase: &[Subset]) -> Result<Self, Error> {
        let n = names.len();
        let mut family: Vec<Subset> = subbase.to_vec();
        family.push(Subset::empty(n));
        family.push(Subset::full(n));
        family.sort();
        family.dedup();
        close_under(&mut family, |a, b| a.intersection(&b))?;
        close_under(&mut family, |a, b| a.union(&b))?;
        FiniteTopology::new(names, family)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn is_open(&self, s: &Subset) -> bool {
        self.opens.binary_search(s).is_ok()
    }

    /// Closure of a one-point set: the complement of the union of all opens
    /// avoiding the point.
    pub fn point_closure(&self, y: usize) -> Subset {
        let mut avoid = 0u64;
        for u in &self.opens {
            if !u.contains(y) {
                avoid |= u.mask();
            }
        }
        Subset::from_mask(self.len(), Subset::full(self.len()).mask() & !avoid)
    }

    fn t0_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.opens.iter().all(|u| u.contains(i) == u.contains(j)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn check_t0(&self) -> Result<(), Error> {
        match self.t0_witness() {
            Some((i, j)) => Err(Error::NotT0 {
                a: self.names[i].clone(),
                b: self.names[j].clone(),
            }),
            None => Ok(()),
        }
    }
}

fn close_under(
    family: &mut Vec<Subset>,
    op: impl Fn(Subset, Subset) -> Subset,
) -> Result<(), Error> {
    loop {
        let mut fresh = Vec::new();
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                let c = op(family[i], family[j]);
                if family.binary_search(&c).is_err() && !fresh.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(());
        }
        guard((family.len() + fresh.len()) as u128)?;
        family.extend(fresh);
        family.sort();
        family.dedup();
    }
}

/// The Alexandroff topology of a poset: all upper sets.
pub fn alexandroff_topology(p: &Poset) -> Result<FiniteTopology, Error> {
    let n = p.len();
    guard(1u128 << n.min(127))?;
    let mut opens = Vec::new();
    for mask in 0..(1u64 << n) {
        let s = Subset::from_mask(n, mask);
        if p.is_upper_set(&s) {
            opens.push(s);
        }
    }
    FiniteTopology::new(p.names().to_vec(), opens)
}

/// Specialization order x ⊑ y ⇔ x ∈ closure{y}, computed literally from point
/// closures. Requires T0 (otherwise ⊑ is not antisymmetric).
pub fn specialization_order(t: &FiniteTopology) -> Result<Poset, Error> {
    t.check_t0()?;
    let n = t.len();
    let closures: Vec<Subset> = (0..n).map(|y| t.point_closure(y)).collect();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| closures[j].contains(i)).collect())
        .collect();
    Poset::from_leq_matrix(t.names().to_vec(), &leq)
}

/// Specialization as a preorder matrix (no T0 needed); used by the literal
/// directed-open sweep below.
fn specialization_preorder(t: &FiniteTopology) -> Vec<u64> {
    let n = t.len();
    let closures: Vec<Subset> = (0..n).map(|y| t.point_closure(y)).collect();
    let mut up = vec![0u64; n];
    for (i, row) in up.iter_mut().enumerate() {
        for (j, cl) in closures.iter().enumerate() {
            if cl.contains(i) {
                *row |= 1 << j;
            }
        }
    }
    up
}

/// Outcome of the directed-space check, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedSpaceVerdict {
    pub is_directed_space: bool,
    /// A directed-open set that is not open, if any.
    pub witness: Option<Subset>,
}

/// Literal sweep over the convergence data of the space: U is directed open
/// iff for every directed D and every x with D → x, x ∈ U forces D ∩ U ≠ ∅.
/// The space is directed iff every directed-open set is open.
///
/// On finite T0 spaces this is provably always true (opens = upper sets of ⊑),
/// but the sweep is retained as the executable oracle for that collapse.
pub fn is_directed_space(t: &FiniteTopology) -> Result<DirectedSpaceVerdict, Error> {
    t.check_t0()?;
    let n = t.len();
    guard(1u128 << (2 * n).min(127))?;
    let up = specialization_preorder(t);

    // Convergence pairs (D, x): D directed wrt ⊑ (= has a ⊑-maximum at finite
    // scale, taken as a net indexed by itself) and x ⊑ every tail, i.e. x ⊑ max D.
    let mut pairs: Vec<(u64, u64)> = Vec::new(); // (D mask, limits mask)
    for d_mask in 1..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| d_mask >> i & 1 == 1).collect();
        let max = members
            .iter()
            .copied()
            .find(|&m| members.iter().all(|&d| up[d] >> m & 1 == 1));
        let Some(m) = max else { continue };
        // Limits of D: all x with x ⊑ m.
        let mut limits = 0u64;
        for (x, row) in up.iter().enumerate() {
            if row >> m & 1 == 1 {
                limits |= 1 << x;
            }
        }
        pairs.push((d_mask, limits));
    }

    let mut directed_opens: Vec<Subset> = Vec::new();
    for u_mask in 0..(1u64 << n) {
        let directed_open = pairs
            .iter()
            .all(|&(d, limits)| limits & u_mask == 0 || d & u_mask != 0);
        if directed_open {
            directed_opens.push(Subset::from_mask(n, u_mask));
        }
    }

    for u in &directed_opens {
        if !t.is_open(u) {
            return Ok(DirectedSpaceVerdict {
                is_directed_space: false,
                witness: Some(*u),
            });
        }
    }
    Ok(DirectedSpaceVerdict {
        is_directed_space: true,
        witness: None,
    })
}

/// A map i ↦ table[i] between posets, checked for monotonicity on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    pub src: Poset,
    pub dst: Poset,
    pub table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(src: Poset, dst: Poset, table: Vec<usize>) -> Result<Self, Error> {
        if table.len() != src.len() || table.iter().any(|&v| v >= dst.len()) {
            return Err(Error::InvalidInput(
                "map table does not match the carriers".into(),
            ));
        }
        Ok(MonotoneMap { src, dst, table })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn monotonicity_witness(&self) -> Option<(usize, usize)> {
        let n = self.src.len();
        for i in 0..n {
            for j in 0..n {
                if self.src.leq(i, j) && !self.dst.leq(self.table[i], self.table[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// On finite directed spaces continuity coincides with monotonicity, so this
/// is the whole continuity check.
pub fn check_monotone(f: &MonotoneMap) -> bool {
    f.monotonicity_witness().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    fn sierpinski() -> FiniteTopology {
        let opens = vec![
            Subset::empty(2),
            Subset::from_indices(2, &[1]),
            Subset::full(2),
        ];
        FiniteTopology::new(vec!["0".into(), "1".into()], opens).unwrap()
    }

    #[test]
    fn specialization_of_sierpinski() {
        let p = specialization_order(&sierpinski()).unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
    }

    #[test]
    fn specialization_of_discrete_is_discrete() {
        let opens = vec![
            Subset::empty(2),
            Subset::from_indices(2, &[0]),
            Subset::from_indices(2, &[1]),
            Subset::full(2),
        ];
        let t = FiniteTopology::new(vec!["a".into(), "b".into()], opens).unwrap();
        let p = specialization_order(&t).unwrap();
        assert!(p.same_order(&anti2()));
    }

    #[test]
    fn alexandroff_round_trip_on_chain() {
        let c = chain2();
        let t = alexandroff_topology(&c).unwrap();
        assert!(specialization_order(&t).unwrap().same_order(&c));
    }

    #[test]
    fn alexandroff_spaces_are_directed() {
        for p in [chain2(), anti2(), diamond(), vee(), chain3()] {
            let t = alexandroff_topology(&p).unwrap();
            let verdict = is_directed_space(&t).unwrap();
            assert!(verdict.is_directed_space, "{p} should be a directed space");
        }
    }

    #[test]
    fn sierpinski_is_directed() {
        assert!(is_directed_space(&sierpinski()).unwrap().is_directed_space);
    }

    #[test]
    fn chain_topology_missing_an_upper_set_is_not_t0() {
        // Dropping {1,2} from the upper sets of the chain 0 < 1 < 2 merges the
        // neighborhood filters of 0 and 1, so the check reports NotT0 before
        // any directed-open sweep runs.
        let opens = vec![
            Subset::empty(3),
            Subset::from_indices(3, &[2]),
            Subset::full(3),
        ];
        let t = FiniteTopology::new(vec!["0".into(), "1".into(), "2".into()], opens).unwrap();
        assert!(matches!(is_directed_space(&t), Err(Error::NotT0 { .. })));
        assert!(matches!(specialization_order(&t), Err(Error::NotT0 { .. })));
    }

    #[test]
    fn topology_axioms_validated() {
        // {∅, {0}, {1}} misses the full set and the union {0,1}.
        let opens = vec![
            Subset::empty(2),
            Subset::from_indices(2, &[0]),
            Subset::from_indices(2, &[1]),
        ];
        assert!(FiniteTopology::new(vec!["a".into(), "b".into()], opens).is_err());
    }

    #[test]
    fn directed_space_sweep_agrees_with_upper_set_test() {
        // Over every T0 topology on ≤ 4 points, the literal directed-open
        // sweep agrees with the direct test "opens = all ⊑-upper sets"
        // (and both hold: finite T0 spaces are Alexandroff).
        for n in 1usize..=4 {
            let subsets = 1u32 << n;
            'fam: for family in 0u32..(1u32 << subsets) {
                let full = (1u64 << n) - 1;
                if family & 1 == 0 || family >> full & 1 == 0 {
                    continue; // must contain ∅ and the carrier
                }
                let members: Vec<u64> = (0..subsets as u64)
                    .filter(|&m| family >> m & 1 == 1)
                    .collect();
                for &a in &members {
                    for &b in &members {
                        if family >> (a | b) & 1 == 0 || family >> (a & b) & 1 == 0 {
                            continue 'fam;
                        }
                    }
                }
                let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
                let opens: Vec<Subset> = members.iter().map(|&m| Subset::from_mask(n, m)).collect();
                let t = FiniteTopology::new(names, opens).unwrap();
                if t.check_t0().is_err() {
                    continue;
                }
                let verdict = is_directed_space(&t).unwrap();
                let order = specialization_order(&t).unwrap();
                let all_upper = (0..(1u64 << n))
                    .map(|m| Subset::from_mask(n, m))
                    .filter(|s| order.is_upper_set(s))
                    .all(|s| t.is_open(&s));
                assert_eq!(
                    verdict.is_directed_space, all_upper,
                    "family {family:#b} on {n} points"
                );
                assert!(verdict.is_directed_space);
            }
        }
    }

    #[test]
    fn monotone_examples() {
        let d = diamond();
        let id = MonotoneMap::new(d.clone(), d.clone(), (0..4).collect()).unwrap();
        assert!(check_monotone(&id));

        let c = chain2();
        let swap = MonotoneMap::new(c.clone(), c.clone(), vec![1, 0]).unwrap();
        assert!(!check_monotone(&swap));

        let a = anti2();
        let f = MonotoneMap::new(a, c, vec![0, 1]).unwrap();
        assert!(check_monotone(&f));
    }
}
