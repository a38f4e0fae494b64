//! Exhaustive enumeration over small carriers: subsets, antichains, directed
//! subsets, labeled posets, monotone maps, and semilattice tables. Everything
//! here is deterministic (ascending mask / lexicographic order) and guarded by
//! the candidate limit, because all of it is exponential.

use crate::error::{guard, Error};
use crate::poset::{Antichain, Poset, Subset};
use crate::semilattice::{check_semilattice, Kind, SemilatticeSpace};

/// All nonempty subsets of an n-element carrier, ascending by mask.
pub fn nonempty_subsets(n: usize) -> Result<Vec<Subset>, Error> {
    guard(1u128 << n.min(127))?;
    Ok((1..(1u64 << n)).map(|m| Subset::from_mask(n, m)).collect())
}

/// All nonempty antichains of a poset.
pub fn antichains(p: &Poset) -> Result<Vec<Antichain>, Error> {
    let mut out = Vec::new();
    for s in nonempty_subsets(p.len())? {
        if let Ok(a) = Antichain::new(p, s) {
            out.push(a);
        }
    }
    Ok(out)
}

/// All nonempty lower sets.
pub fn lower_sets(p: &Poset) -> Result<Vec<Subset>, Error> {
    Ok(nonempty_subsets(p.len())?
        .into_iter()
        .filter(|s| p.is_lower_set(s))
        .collect())
}

/// All nonempty upper sets.
pub fn upper_sets(p: &Poset) -> Result<Vec<Subset>, Error> {
    Ok(nonempty_subsets(p.len())?
        .into_iter()
        .filter(|s| p.is_upper_set(s))
        .collect())
}

/// All nonempty convex subsets: S = ↓S ∩ ↑S.
pub fn convex_subsets(p: &Poset) -> Result<Vec<Subset>, Error> {
    Ok(nonempty_subsets(p.len())?
        .into_iter()
        .filter(|s| {
            let down = p.closure(s, crate::poset::Direction::Down);
            let up = p.closure(s, crate::poset::Direction::Up);
            down.intersection(&up) == *s
        })
        .collect())
}

/// Consistent (max, min) antichain pairs, i.e. the canonical keys of convex
/// powerspace elements. One per nonempty convex subset.
pub fn consistent_pairs(p: &Poset) -> Result<Vec<(Antichain, Antichain)>, Error> {
    let mut out = Vec::new();
    for s in convex_subsets(p)? {
        let max = p.extremal_antichain(&s, crate::poset::Extremal::Max)?;
        let min = p.extremal_antichain(&s, crate::poset::Extremal::Min)?;
        out.push((max, min));
    }
    Ok(out)
}

/// All directed subsets: in a finite poset these are exactly the nonempty
/// subsets containing their own maximum.
pub fn directed_subsets(p: &Poset) -> Result<Vec<Subset>, Error> {
    Ok(nonempty_subsets(p.len())?
        .into_iter()
        .filter(|s| p.is_directed_subset(s))
        .collect())
}

/// Every labeled poset on the names "0".."n-1": all antisymmetric transitive
/// strict relations, reflexively closed.
pub fn all_posets(n: usize) -> Result<Vec<Poset>, Error> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let bits = off_diag.len();
    guard(1u128 << bits.min(127))?;
    let mut out = Vec::new();
    'cand: for choice in 0u64..(1 << bits) {
        let mut lt = vec![vec![false; n]; n];
        for (b, &(i, j)) in off_diag.iter().enumerate() {
            if choice >> b & 1 == 1 {
                lt[i][j] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if lt[i][j] && lt[j][i] {
                    continue 'cand;
                }
                for k in 0..n {
                    if lt[i][j] && lt[j][k] && !lt[i][k] {
                        continue 'cand;
                    }
                }
            }
        }
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i == j || lt[i][j]).collect())
            .collect();
        out.push(Poset::from_leq_matrix(names.clone(), &leq)?);
    }
    Ok(out)
}

/// Every labeled poset of size 1..=n.
pub fn all_posets_up_to(n: usize) -> Result<Vec<Poset>, Error> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(all_posets(k)?);
    }
    Ok(out)
}

/// All monotone maps src → dst as index tables, lexicographic.
pub fn monotone_maps(src: &Poset, dst: &Poset) -> Result<Vec<Vec<usize>>, Error> {
    let n = src.len();
    let m = dst.len();
    guard((m as u128).pow(n as u32))?;
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    loop {
        let monotone =
            (0..n).all(|i| (0..n).all(|j| !src.leq(i, j) || dst.leq(table[i], table[j])));
        if monotone {
            out.push(table.clone());
        }
        // next table in lexicographic order
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            table[pos] += 1;
            if table[pos] < m {
                break;
            }
            table[pos] = 0;
            if pos == 0 {
                return Ok(out);
            }
        }
    }
}

/// All maps src_len → 0..dst_len subject to fixed values at some positions,
/// lexicographic over the free positions. The assumption-free search space for
/// uniqueness checks.
pub fn maps_with_constraint(
    src_len: usize,
    dst_len: usize,
    fixed: &[Option<usize>],
) -> Result<Vec<Vec<usize>>, Error> {
    debug_assert_eq!(fixed.len(), src_len);
    let free: Vec<usize> = (0..src_len).filter(|&i| fixed[i].is_none()).collect();
    guard((dst_len as u128).pow(free.len() as u32))?;
    let mut out = Vec::new();
    let mut table: Vec<usize> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
    loop {
        out.push(table.clone());
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            let i = free[pos];
            table[i] += 1;
            if table[i] < dst_len {
                break;
            }
            table[i] = 0;
        }
    }
}

/// Every operation table over `poset` that passes the full semilattice check
/// for `kind`. The completely unconstrained table space is filtered through
/// `check_semilattice`, so this enumeration assumes nothing.
pub fn semilattice_spaces(poset: &Poset, kind: Kind) -> Result<Vec<SemilatticeSpace>, Error> {
    let n = poset.len();
    guard((n as u128).pow((n * n) as u32))?;
    let cells = n * n;
    let mut out = Vec::new();
    let mut flat = vec![0usize; cells];
    loop {
        // cheap pre-filters before the full report: idempotence and commutativity
        let idem = (0..n).all(|i| flat[i * n + i] == i);
        let comm = idem && (0..n).all(|i| (0..n).all(|j| flat[i * n + j] == flat[j * n + i]));
        if comm {
            let op: Vec<Vec<usize>> = (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
            let s = SemilatticeSpace::new(poset.clone(), op, kind)?;
            if check_semilattice(&s).passed() {
                out.push(s);
            }
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            flat[pos] += 1;
            if flat[pos] < n {
                break;
            }
            flat[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    #[test]
    fn labeled_poset_counts() {
        // Known labeled poset counts: 1, 3, 19, 219.
        assert_eq!(all_posets(1).unwrap().len(), 1);
        assert_eq!(all_posets(2).unwrap().len(), 3);
        assert_eq!(all_posets(3).unwrap().len(), 19);
        assert_eq!(all_posets(4).unwrap().len(), 219);
    }

    #[test]
    fn antichain_counts() {
        assert_eq!(antichains(&chain3()).unwrap().len(), 3);
        assert_eq!(antichains(&anti3()).unwrap().len(), 7);
        assert_eq!(antichains(&diamond()).unwrap().len(), 5);
    }

    #[test]
    fn convex_subset_counts() {
        assert_eq!(convex_subsets(&chain2()).unwrap().len(), 3);
        assert_eq!(convex_subsets(&anti2()).unwrap().len(), 3);
        // diamond: {a,b} is convex, {⊥,⊤} is not
        let d = diamond();
        let cs = convex_subsets(&d).unwrap();
        assert!(cs.contains(&subset_of(&d, &["a", "b"])));
        assert!(!cs.contains(&subset_of(&d, &["bot", "top"])));
    }

    #[test]
    fn directed_subsets_of_vee() {
        let v = vee();
        let ds = directed_subsets(&v).unwrap();
        assert_eq!(ds.len(), 5); // {⊥}, {a}, {b}, {⊥,a}, {⊥,b}
    }

    #[test]
    fn monotone_map_count_chain2_to_chain2() {
        assert_eq!(monotone_maps(&chain2(), &chain2()).unwrap().len(), 3);
    }

    #[test]
    fn semilattice_space_enumeration_matches_joins() {
        // On the 2-chain the only inflationary table is max.
        let spaces = semilattice_spaces(&chain2(), Kind::Inflationary).unwrap();
        assert_eq!(spaces.len(), 1);
        assert_eq!(spaces[0].op, vec![vec![0, 1], vec![1, 1]]);
        // The vee has no joins, so no inflationary structure at all.
        assert!(semilattice_spaces(&vee(), Kind::Inflationary)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn inflationary_spaces_are_exactly_the_join_tables() {
        // A passing inflationary table is forced to be the binary sup, so the
        // enumeration finds exactly one space on joinable posets and none
        // elsewhere. Dually for deflationary tables and meets.
        for p in all_posets_up_to(3).unwrap() {
            let spaces = semilattice_spaces(&p, Kind::Inflationary).unwrap();
            match SemilatticeSpace::from_joins(p.clone()) {
                Ok(j) => assert_eq!(spaces, vec![j]),
                Err(_) => assert!(spaces.is_empty(), "unexpected inflationary table on {p}"),
            }
            let spaces = semilattice_spaces(&p, Kind::Deflationary).unwrap();
            match SemilatticeSpace::from_meets(p.clone()) {
                Ok(m) => assert_eq!(spaces, vec![m]),
                Err(_) => assert!(spaces.is_empty(), "unexpected deflationary table on {p}"),
            }
        }
    }

    #[test]
    fn plain_semilattices_on_chain3_include_the_bent_example() {
        // 0 ≤ 1 ≤ 2 with 0+1 = 1, 1+2 = 1, 0+2 = 1 is a directed semilattice
        // that is neither inflationary nor deflationary.
        let spaces = semilattice_spaces(&chain3(), Kind::Plain).unwrap();
        let bent = vec![vec![0, 1, 1], vec![1, 1, 1], vec![1, 1, 2]];
        assert!(spaces.iter().any(|s| s.op == bent));
    }
}
