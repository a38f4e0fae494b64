//! Finite posets and their subset calculus.
//!
//! Everything downstream is built on a single representation: a carrier of at
//! most 64 indexed elements and a reflexive-transitive-antisymmetric relation
//! stored as per-element up-set and down-set bitmasks. Element identity is by
//! index; labels are presentation only.

use std::fmt;

use crate::error::{guard, Error};

/// Hard cap on carrier size so subsets fit in a `u64` mask. Enumeration-heavy
/// operations guard much earlier (see [`crate::error::CANDIDATE_LIMIT`]).
pub const MAX_ELEMS: usize = 64;

/// A subset of the carrier of some fixed poset, as a membership mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset {
    mask: u64,
    n: usize,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset { mask: 0, n }
    }

    pub fn full(n: usize) -> Self {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Subset { mask, n }
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        debug_assert!(i < n);
        Subset { mask: 1u64 << i, n }
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert_eq!(mask & !Subset::full(n).mask, 0);
        Subset { mask, n }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut mask = 0u64;
        for &i in indices {
            debug_assert!(i < n);
            mask |= 1u64 << i;
        }
        Subset { mask, n }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn insert(&mut self, i: usize) {
        self.mask |= 1u64 << i;
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            mask: self.mask | other.mask,
            n: self.n,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            mask: self.mask & other.mask,
            n: self.n,
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.mask & !other.mask == 0
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        (0..n).filter(move |&i| self.contains(i))
    }
}

/// A finite partial order: distinct labels plus a closed `leq` relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// `up[i]` is the mask of all j with i ≤ j.
    up: Vec<u64>,
    /// `down[i]` is the mask of all j with j ≤ i.
    down: Vec<u64>,
}

impl Poset {
    /// Builds a poset directly from a ≤ matrix, which must already be
    /// reflexive, antisymmetric and transitive.
    pub fn from_leq_matrix(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Poset, Error> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        if n > MAX_ELEMS {
            return Err(Error::SizeLimitExceeded {
                candidates: n as u128,
                limit: MAX_ELEMS as u128,
            });
        }
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        let mut up = vec![0u64; n];
        let mut down = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    up[i] |= 1 << j;
                    down[j] |= 1 << i;
                }
            }
        }
        let p = Poset { names, up, down };
        p.check_axioms()?;
        Ok(p)
    }

    fn check_axioms(&self) -> Result<(), Error> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::InvalidInput(format!(
                    "relation not reflexive at `{}`",
                    self.names[i]
                )));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::AntisymmetryViolation {
                        a: self.names[i].clone(),
                        b: self.names[j].clone(),
                    });
                }
                if self.leq(i, j) && self.up[j] & !self.up[i] != 0 {
                    return Err(Error::InvalidInput("relation not transitive".into()));
                }
            }
        }
        Ok(())
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

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|s| s == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Mask of the principal up-set ↑i.
    pub fn up_mask(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// Mask of the principal down-set ↓i.
    pub fn down_mask(&self, i: usize) -> u64 {
        self.down[i]
    }

    /// Two posets present the same order (labels ignored).
    pub fn same_order(&self, other: &Poset) -> bool {
        self.up == other.up
    }

    /// Order isomorphism up to relabeling, by permutation search. Intended
    /// for small carriers (tests and reports).
    pub fn is_isomorphic_to(&self, other: &Poset) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn extend(p: &Poset, q: &Poset, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let i = perm.len();
            if i == p.len() {
                return true;
            }
            for j in 0..q.len() {
                if used[j] {
                    continue;
                }
                let consistent = (0..i)
                    .all(|k| p.leq(k, i) == q.leq(perm[k], j) && p.leq(i, k) == q.leq(j, perm[k]));
                if consistent {
                    perm.push(j);
                    used[j] = true;
                    if extend(p, q, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[j] = false;
                }
            }
            false
        }
        extend(self, other, &mut perm, &mut used)
    }

    /// ↓S or ↑S. Empty subsets close to the empty set.
    pub fn closure(&self, s: &Subset, dir: Direction) -> Subset {
        debug_assert_eq!(s.carrier(), self.len());
        let rows = match dir {
            Direction::Down => &self.down,
            Direction::Up => &self.up,
        };
        let mut mask = 0u64;
        for i in s.iter() {
            mask |= rows[i];
        }
        Subset::from_mask(self.len(), mask)
    }

    pub fn is_lower_set(&self, s: &Subset) -> bool {
        self.closure(s, Direction::Down) == *s
    }

    pub fn is_upper_set(&self, s: &Subset) -> bool {
        self.closure(s, Direction::Up) == *s
    }

    /// The maximal (or minimal) elements of a nonempty subset, as an antichain.
    /// `closure(extremal_antichain(S, Max), Down) = closure(S, Down)` and dually.
    pub fn extremal_antichain(&self, s: &Subset, ext: Extremal) -> Result<Antichain, Error> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut mask = 0u64;
        for i in s.iter() {
            let strictly_beyond = match ext {
                Extremal::Max => self.up[i] & !(1 << i),
                Extremal::Min => self.down[i] & !(1 << i),
            };
            if strictly_beyond & s.mask() == 0 {
                mask |= 1 << i;
            }
        }
        Ok(Antichain {
            elems: Subset::from_mask(self.len(), mask),
        })
    }

    /// Least upper bound of {i, j}, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let common = self.up[i] & self.up[j];
        // The lub is the unique minimal common upper bound.
        let mut best: Option<usize> = None;
        for k in Subset::from_mask(self.len(), common).iter() {
            if self.down[k] & common & !(1 << k) == 0 {
                if best.is_some() {
                    return None;
                }
                best = Some(k);
            }
        }
        best
    }

    /// Greatest lower bound of {i, j}, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let common = self.down[i] & self.down[j];
        let mut best: Option<usize> = None;
        for k in Subset::from_mask(self.len(), common).iter() {
            if self.up[k] & common & !(1 << k) == 0 {
                if best.is_some() {
                    return None;
                }
                best = Some(k);
            }
        }
        best
    }

    /// Maximum of a subset under ≤, when the subset has one. In a finite poset
    /// a subset is directed exactly when it has a maximum.
    pub fn maximum_of(&self, s: &Subset) -> Option<usize> {
        s.iter().find(|&m| s.mask() & !self.down[m] == 0)
    }

    pub fn is_directed_subset(&self, s: &Subset) -> bool {
        !s.is_empty() && self.maximum_of(s).is_some()
    }

    /// Covering pairs (i ⋖ j): the transitive reduction, used for Hasse output.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.lt(i, j) {
                    continue;
                }
                let between = self.up[i] & self.down[j] & !(1 << i) & !(1 << j);
                if between == 0 {
                    covers.push((i, j));
                }
            }
        }
        covers
    }

    /// Tensor (= categorical) product: pairs under the pointwise order.
    /// Element (i, j) of the factors sits at index `i * other.len() + j`.
    pub fn tensor(&self, other: &Poset) -> Result<Poset, Error> {
        let n = self.len();
        let m = other.len();
        guard((n * m) as u128)?;
        let mut names = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                names.push(format!("({},{})", self.names[i], other.names[j]));
            }
        }
        let mut leq = vec![vec![false; n * m]; n * m];
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        leq[i1 * m + j1][i2 * m + j2] = self.leq(i1, i2) && other.leq(j1, j2);
                    }
                }
            }
        }
        Poset::from_leq_matrix(names, &leq)
    }

    pub fn render_subset(&self, s: &Subset) -> String {
        let labels: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", labels.join(","))
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poset[{}]", self.names.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Max,
    Min,
}

/// A pairwise incomparable subset, the canonical generator form for ↓F and ↑F.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Antichain {
    elems: Subset,
}

impl Antichain {
    /// Checks pairwise incomparability.
    pub fn new(p: &Poset, elems: Subset) -> Result<Antichain, Error> {
        for i in elems.iter() {
            let comparable = (p.up_mask(i) | p.down_mask(i)) & !(1 << i);
            if comparable & elems.mask() != 0 {
                let j = Subset::from_mask(p.len(), comparable & elems.mask())
                    .iter()
                    .next()
                    .unwrap();
                return Err(Error::InvalidInput(format!(
                    "not an antichain: `{}` and `{}` are comparable",
                    p.name(i),
                    p.name(j)
                )));
            }
        }
        Ok(Antichain { elems })
    }

    pub fn subset(&self) -> Subset {
        self.elems
    }
}

/// Builds the reflexive-transitive closure of the given ≤ pairs over the
/// labels, rejecting cycles of length ≥ 2. Hasse-style covering input is the
/// ergonomic norm; arbitrary redundant pairs are also fine.
pub fn validate_poset(names: &[&str], le_pairs: &[(&str, &str)]) -> Result<Poset, Error> {
    let n = names.len();
    if n == 0 {
        return Err(Error::EmptyPoset);
    }
    if n > MAX_ELEMS {
        return Err(Error::SizeLimitExceeded {
            candidates: n as u128,
            limit: MAX_ELEMS as u128,
        });
    }
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    for (k, name) in owned.iter().enumerate() {
        if owned[..k].contains(name) {
            return Err(Error::DuplicateLabel(name.clone()));
        }
    }
    let index = |label: &str| -> Result<usize, Error> {
        owned
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };
    let mut up = vec![0u64; n];
    for (i, row) in up.iter_mut().enumerate() {
        *row |= 1 << i;
    }
    for &(a, b) in le_pairs {
        up[index(a)?] |= 1 << index(b)?;
    }
    // Transitive closure, Floyd-Warshall over row masks.
    for k in 0..n {
        let row_k = up[k];
        for row in up.iter_mut() {
            if *row >> k & 1 == 1 {
                *row |= row_k;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                return Err(Error::AntisymmetryViolation {
                    a: owned[i].clone(),
                    b: owned[j].clone(),
                });
            }
        }
    }
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| up[i] >> j & 1 == 1).collect())
        .collect();
    Poset::from_leq_matrix(owned, &leq)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_two_chain() {
        let p = chain2();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        assert!(p.leq(0, 0) && p.leq(1, 1));
    }

    #[test]
    fn validate_discrete_order() {
        let p = anti2();
        assert!(!p.leq(0, 1));
        assert!(!p.leq(1, 0));
    }

    #[test]
    fn validate_rejects_two_cycle() {
        let err = validate_poset(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(err, Error::AntisymmetryViolation { .. }));
    }

    #[test]
    fn validate_rejects_longer_cycle_after_closure() {
        let err =
            validate_poset(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("z", "x")]).unwrap_err();
        assert!(matches!(err, Error::AntisymmetryViolation { .. }));
    }

    #[test]
    fn validate_rejects_duplicates_and_unknowns() {
        assert!(matches!(
            validate_poset(&["x", "x"], &[]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            validate_poset(&["x"], &[("x", "q")]),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let d = diamond();
        // ↓{a} = {⊥, a}
        let s = subset_of(&d, &["a"]);
        assert_eq!(d.closure(&s, Direction::Down), subset_of(&d, &["bot", "a"]));
        // ↑{a, b} = {a, b, ⊤}
        let s = subset_of(&d, &["a", "b"]);
        assert_eq!(
            d.closure(&s, Direction::Up),
            subset_of(&d, &["a", "b", "top"])
        );
        // closure of the whole carrier is the carrier
        let full = Subset::full(d.len());
        assert_eq!(d.closure(&full, Direction::Down), full);
        assert_eq!(d.closure(&full, Direction::Up), full);
        // empty maps to empty
        let empty = Subset::empty(d.len());
        assert_eq!(d.closure(&empty, Direction::Up), empty);
    }

    #[test]
    fn extremal_antichain_examples() {
        let c = chain2();
        let s = Subset::full(2);
        assert_eq!(
            c.extremal_antichain(&s, Extremal::Max).unwrap().subset(),
            subset_of(&c, &["1"])
        );

        let d = diamond();
        let s = subset_of(&d, &["a", "b", "top"]);
        assert_eq!(
            d.extremal_antichain(&s, Extremal::Max).unwrap().subset(),
            subset_of(&d, &["top"])
        );

        let a = anti2();
        let s = Subset::full(2);
        assert_eq!(a.extremal_antichain(&s, Extremal::Min).unwrap().subset(), s);

        assert_eq!(
            d.extremal_antichain(&Subset::empty(4), Extremal::Max),
            Err(Error::EmptySubset)
        );
    }

    #[test]
    fn tensor_examples() {
        let c = chain2();
        let grid = c.tensor(&c).unwrap();
        assert!(grid.same_order(&diamond()));

        let p = diamond();
        assert!(p.tensor(&single()).unwrap().same_order(&p));

        let a = anti2();
        let aa = a.tensor(&a).unwrap();
        assert_eq!(aa.cover_pairs(), vec![]);
        assert_eq!(aa.len(), 4);
    }

    #[test]
    fn joins_and_meets() {
        let d = diamond();
        let (a, b) = (d.index_of("a").unwrap(), d.index_of("b").unwrap());
        assert_eq!(d.join(a, b), d.index_of("top"));
        assert_eq!(d.meet(a, b), d.index_of("bot"));
        let v = vee();
        assert_eq!(v.join(1, 2), None);
        assert_eq!(v.meet(1, 2), Some(0));
    }

    #[test]
    fn directed_subsets_have_maxima() {
        let v = vee();
        assert!(v.is_directed_subset(&subset_of(&v, &["bot", "a"])));
        assert!(!v.is_directed_subset(&subset_of(&v, &["a", "b"])));
        assert!(!v.is_directed_subset(&Subset::empty(3)));
    }

    #[test]
    fn cover_pairs_are_the_transitive_reduction() {
        let c = chain3();
        assert_eq!(c.cover_pairs(), vec![(0, 1), (1, 2)]);
    }
}
