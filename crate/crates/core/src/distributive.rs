//! ∨-∧ structure on powerspaces and the commutativity isomorphism
//! P_U(P_L(X)) ≅ P_L(P_U(X)).
//!
//! The meet on a lower powerspace (and dually the join on an upper one) is the
//! pairwise operation on generators; the two-step construction through free
//! extensions is kept as a cross-check.

use crate::error::Error;
use crate::poset::Poset;
use crate::powerspace::{build_powerspace, Powerspace, PsKind};
use crate::semilattice::{check_semilattice, Kind, LawCheck, SemilatticeSpace};
use crate::topology::MonotoneMap;

/// A poset carrying both a join and a meet table subject to distributivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributiveSpace {
    pub poset: Poset,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

impl DistributiveSpace {
    pub fn join_space(&self) -> SemilatticeSpace {
        SemilatticeSpace::new(self.poset.clone(), self.join.clone(), Kind::Inflationary)
            .expect("square table")
    }

    pub fn meet_space(&self) -> SemilatticeSpace {
        SemilatticeSpace::new(self.poset.clone(), self.meet.clone(), Kind::Deflationary)
            .expect("square table")
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Full validation: the join table is inflationary, the meet table is
    /// deflationary, and both distributive laws hold.
    pub fn validate(&self) -> Vec<LawCheck> {
        let mut checks = Vec::new();
        let join_report = check_semilattice(&self.join_space());
        checks.push(LawCheck {
            law: "join-inflationary".into(),
            pass: join_report.passed(),
            witness: join_report
                .first_failure()
                .map(|c| format!("{}: {:?}", c.law, c.witness)),
        });
        let meet_report = check_semilattice(&self.meet_space());
        checks.push(LawCheck {
            law: "meet-deflationary".into(),
            pass: meet_report.passed(),
            witness: meet_report
                .first_failure()
                .map(|c| format!("{}: {:?}", c.law, c.witness)),
        });
        checks.extend(check_distributive(self));
        checks
    }
}

/// Verifies a∧(b∨c) = (a∧b)∨(a∧c) and a∨(b∧c) = (a∨b)∧(a∨c) over all triples.
/// In a lattice the second follows from the first, but both are checked
/// independently; a failing law names a witness triple.
pub fn check_distributive(d: &DistributiveSpace) -> Vec<LawCheck> {
    let n = d.len();
    let name = |i: usize| d.poset.name(i).to_string();
    let mut meet_over_join = LawCheck {
        law: "meet-over-join".into(),
        pass: true,
        witness: None,
    };
    let mut join_over_meet = LawCheck {
        law: "join-over-meet".into(),
        pass: true,
        witness: None,
    };
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if meet_over_join.pass
                    && d.meet[a][d.join[b][c]] != d.join[d.meet[a][b]][d.meet[a][c]]
                {
                    meet_over_join.pass = false;
                    meet_over_join.witness = Some(format!(
                        "a={}, b={}, c={}: a∧(b∨c) ≠ (a∧b)∨(a∧c)",
                        name(a),
                        name(b),
                        name(c)
                    ));
                }
                if join_over_meet.pass
                    && d.join[a][d.meet[b][c]] != d.meet[d.join[a][b]][d.join[a][c]]
                {
                    join_over_meet.pass = false;
                    join_over_meet.witness = Some(format!(
                        "a={}, b={}, c={}: a∨(b∧c) ≠ (a∨b)∧(a∨c)",
                        name(a),
                        name(b),
                        name(c)
                    ));
                }
                if !meet_over_join.pass && !join_over_meet.pass {
                    break 'outer;
                }
            }
        }
    }
    vec![meet_over_join, join_over_meet]
}

/// When every pair in X has a meet, the lower powerspace picks up
/// ↓F1 ⊓ ↓F2 = ↓{a∧b : a ∈ F1, b ∈ F2}, making P_L(X) a ∨-∧ space whose unit
/// is a ∧-morphism: ↓(x∧y) = ↓x ⊓ ↓y.
pub fn meet_on_lower(x: &Poset) -> Result<(Powerspace, DistributiveSpace), Error> {
    let meets = pairwise_table(x, |i, j| {
        x.meet(i, j).ok_or_else(|| Error::MeetMissing {
            x: x.name(i).into(),
            y: x.name(j).into(),
        })
    })?;
    let ps = build_powerspace(PsKind::Lower, x)?;
    let meet = pairwise_generator_table(&ps, &meets)?;
    let dist = DistributiveSpace {
        poset: ps.order.clone(),
        join: ps.op.clone(),
        meet,
    };
    Ok((ps, dist))
}

/// Dual construction: when every pair in X has a join, the upper powerspace
/// picks up ↑F1 ⊔ ↑F2 = ↑{a∨b : a ∈ F1, b ∈ F2}; the union stays as the meet.
pub fn join_on_upper(x: &Poset) -> Result<(Powerspace, DistributiveSpace), Error> {
    let joins = pairwise_table(x, |i, j| {
        x.join(i, j).ok_or_else(|| Error::JoinMissing {
            x: x.name(i).into(),
            y: x.name(j).into(),
        })
    })?;
    let ps = build_powerspace(PsKind::Upper, x)?;
    let join = pairwise_generator_table(&ps, &joins)?;
    let dist = DistributiveSpace {
        poset: ps.order.clone(),
        join,
        meet: ps.op.clone(),
    };
    Ok((ps, dist))
}

fn pairwise_table(
    x: &Poset,
    mut f: impl FnMut(usize, usize) -> Result<usize, Error>,
) -> Result<Vec<Vec<usize>>, Error> {
    let n = x.len();
    let mut out = vec![vec![0usize; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = f(i, j)?;
        }
    }
    Ok(out)
}

/// elem_i ∘ elem_j = canonical element generated by {op(a,b) : a ∈ gen_i, b ∈ gen_j}.
fn pairwise_generator_table(ps: &Powerspace, op: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, Error> {
    let n = ps.len();
    let base_n = ps.base.len();
    let mut out = vec![vec![0usize; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut img = crate::poset::Subset::empty(base_n);
            for a in ps.elems[i].gen().iter() {
                for b in ps.elems[j].gen().iter() {
                    img.insert(op[a][b]);
                }
            }
            let e = crate::powerspace::Elem::new(ps.kind, &ps.base, &img)?;
            *cell = ps
                .index_of(&e)
                .ok_or_else(|| Error::IsoFailure("pairwise image not canonical".into()))?;
        }
    }
    Ok(out)
}

/// The two-step route to the same ⊓ table, via nested free extensions
/// (extend x ↦ ↓(a∧x) pointwise, then extend again in the first argument).
/// Used as a cross-check against the closed-form pairwise table.
pub fn meet_on_lower_via_extensions(x: &Poset) -> Result<Vec<Vec<usize>>, Error> {
    let ps = build_powerspace(PsKind::Lower, x)?;
    let sl = ps.to_semilattice();
    // f̄_a for each a: the extension of f_a(x) = ↓(a ∧ x) over the powerspace
    let mut per_generator = Vec::with_capacity(x.len());
    for a in 0..x.len() {
        let mut f_a = Vec::with_capacity(x.len());
        for xx in 0..x.len() {
            let m = x.meet(a, xx).ok_or_else(|| Error::MeetMissing {
                x: x.name(a).into(),
                y: x.name(xx).into(),
            })?;
            f_a.push(ps.unit[m]);
        }
        let fa = MonotoneMap::new(x.clone(), ps.order.clone(), f_a)?;
        per_generator.push(crate::freealg::extend(PsKind::Lower, &fa, &sl)?.table);
    }
    // g(a) = f̄_a(↓F2); ↓F1 ⊓ ↓F2 = ḡ(↓F1), folding over the generators of F1
    let n = ps.len();
    let mut table = vec![vec![0usize; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let vals: Vec<usize> = ps.elems[i]
                .gen()
                .iter()
                .map(|a| per_generator[a][j])
                .collect();
            *cell = sl.fold(&vals);
        }
    }
    Ok(table)
}

/// The commutativity isomorphism between the two composite powerspaces, in
/// the direction ↑(↓x) ↦ ↓(↑x), with its inverse and both ∨-∧ structures.
#[derive(Debug, Clone)]
pub struct CommuteIso {
    pub base: Poset,
    /// P_L(X), the inner space of the domain composite.
    pub lower_inner: Powerspace,
    /// P_U(X), the inner space of the codomain composite.
    pub upper_inner: Powerspace,
    /// P_U(P_L(X)) with meet = ∪ and join = pairwise ∨: the iso's domain.
    pub dom: Powerspace,
    pub dom_structure: DistributiveSpace,
    /// P_L(P_U(X)) with join = ∪ and meet = pairwise ∧: the codomain.
    pub cod: Powerspace,
    pub cod_structure: DistributiveSpace,
    /// Bijection dom → cod. forward[↑(↓x)] = ↓(↑x).
    pub forward: Vec<usize>,
    /// Its inverse, built independently by the mirrored recipe.
    pub inverse: Vec<usize>,
}

/// Builds both composites, derives the iso as the free ∨-∧ extension of the
/// composite unit (in both directions), and verifies: mutual inverses, order
/// isomorphism, preservation of both operations, and unit tracking. Failure of
/// any check is an internal assertion error, not an expected outcome.
pub fn commute_iso(x: &Poset) -> Result<CommuteIso, Error> {
    let (lower_inner, dom_structure) = {
        let pl = build_powerspace(PsKind::Lower, x)?;
        let (pu_of_pl, dist) = join_on_upper(&pl.order)?;
        (pl, (pu_of_pl, dist))
    };
    let (dom, dom_structure) = dom_structure;
    let (upper_inner, cod_structure) = {
        let pu = build_powerspace(PsKind::Upper, x)?;
        let (pl_of_pu, dist) = meet_on_lower(&pu.order)?;
        (pu, (pl_of_pu, dist))
    };
    let (cod, cod_structure) = cod_structure;

    // forward = P_U(P_L(f)) for f(x) = ↓(↑x): extend f to P_L(X) with the
    // codomain's join, then extend that to P_U(P_L(X)) with its meet.
    let f_fwd: Vec<usize> = (0..x.len())
        .map(|xx| cod.unit[upper_inner.unit[xx]])
        .collect();
    let g_fwd = fold_extension(&lower_inner, &f_fwd, &cod_structure.join);
    let forward = fold_extension_over(&dom, &g_fwd, &cod_structure.meet);

    // inverse = P_L(P_U(f')) for f'(x) = ↑(↓x), mirrored.
    let f_inv: Vec<usize> = (0..x.len())
        .map(|xx| dom.unit[lower_inner.unit[xx]])
        .collect();
    let g_inv = fold_extension(&upper_inner, &f_inv, &dom_structure.meet);
    let inverse = fold_extension_over(&cod, &g_inv, &dom_structure.join);

    let iso = CommuteIso {
        base: x.clone(),
        lower_inner,
        upper_inner,
        dom,
        dom_structure,
        cod,
        cod_structure,
        forward,
        inverse,
    };
    iso.verify()?;
    Ok(iso)
}

/// Extends a base-level table f: X → T along a powerspace over X by folding
/// `op_t` over generator images.
fn fold_extension(ps: &Powerspace, f: &[usize], op_t: &[Vec<usize>]) -> Vec<usize> {
    ps.elems
        .iter()
        .map(|e| {
            let imgs: Vec<usize> = e.gen().iter().map(|a| f[a]).collect();
            imgs[1..].iter().fold(imgs[0], |acc, &v| op_t[acc][v])
        })
        .collect()
}

/// Same fold for a composite: generators of `outer` elements are indices into
/// the inner carrier, where `g` is already defined.
fn fold_extension_over(outer: &Powerspace, g: &[usize], op_t: &[Vec<usize>]) -> Vec<usize> {
    outer
        .elems
        .iter()
        .map(|e| {
            let imgs: Vec<usize> = e.gen().iter().map(|k| g[k]).collect();
            imgs[1..].iter().fold(imgs[0], |acc, &v| op_t[acc][v])
        })
        .collect()
}

impl CommuteIso {
    fn verify(&self) -> Result<(), Error> {
        let n_dom = self.dom.len();
        let n_cod = self.cod.len();
        if n_dom != n_cod {
            return Err(Error::IsoFailure(format!(
                "carrier sizes differ: {n_dom} vs {n_cod}"
            )));
        }
        for (i, &fi) in self.forward.iter().enumerate() {
            if self.inverse[fi] != i {
                return Err(Error::IsoFailure(format!(
                    "forward and inverse disagree at {}",
                    self.dom.order.name(i)
                )));
            }
        }
        for (j, &ij) in self.inverse.iter().enumerate() {
            if self.forward[ij] != j {
                return Err(Error::IsoFailure(format!(
                    "inverse and forward disagree at {}",
                    self.cod.order.name(j)
                )));
            }
        }
        for i in 0..n_dom {
            for j in 0..n_dom {
                if self.dom.order.leq(i, j) != self.cod.order.leq(self.forward[i], self.forward[j])
                {
                    return Err(Error::IsoFailure(format!(
                        "order not preserved at ({}, {})",
                        self.dom.order.name(i),
                        self.dom.order.name(j)
                    )));
                }
                let join_ok = self.forward[self.dom_structure.join[i][j]]
                    == self.cod_structure.join[self.forward[i]][self.forward[j]];
                let meet_ok = self.forward[self.dom_structure.meet[i][j]]
                    == self.cod_structure.meet[self.forward[i]][self.forward[j]];
                if !join_ok || !meet_ok {
                    return Err(Error::IsoFailure(format!(
                        "operation not preserved at ({}, {})",
                        self.dom.order.name(i),
                        self.dom.order.name(j)
                    )));
                }
            }
        }
        for x in 0..self.base.len() {
            let up_down = self.dom.unit[self.lower_inner.unit[x]];
            let down_up = self.cod.unit[self.upper_inner.unit[x]];
            if self.forward[up_down] != down_up {
                return Err(Error::IsoFailure(format!(
                    "unit tracking fails at {}",
                    self.base.name(x)
                )));
            }
        }
        Ok(())
    }

    /// (index of ↑(↓x) in the domain, index of ↓(↑x) in the codomain) per x.
    pub fn unit_images(&self) -> Vec<(usize, usize)> {
        (0..self.base.len())
            .map(|x| {
                (
                    self.dom.unit[self.lower_inner.unit[x]],
                    self.cod.unit[self.upper_inner.unit[x]],
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;

    #[test]
    fn meet_on_lower_diamond() {
        let d = diamond();
        let (ps, dist) = meet_on_lower(&d).unwrap();
        // ↓{a} ⊓ ↓{b} = ↓{⊥}
        let ea = ps.index_of(&lelem(&ps, &["a"])).unwrap();
        let eb = ps.index_of(&lelem(&ps, &["b"])).unwrap();
        let ebot = ps.index_of(&lelem(&ps, &["bot"])).unwrap();
        assert_eq!(dist.meet[ea][eb], ebot);
        assert!(dist.validate().iter().all(|c| c.pass));
    }

    fn lelem(ps: &Powerspace, labels: &[&str]) -> crate::powerspace::Elem {
        crate::powerspace::Elem::new(PsKind::Lower, &ps.base, &subset_of(&ps.base, labels)).unwrap()
    }

    fn uelem(ps: &Powerspace, labels: &[&str]) -> crate::powerspace::Elem {
        crate::powerspace::Elem::new(PsKind::Upper, &ps.base, &subset_of(&ps.base, labels)).unwrap()
    }

    #[test]
    fn meet_on_lower_vee_absorption() {
        let v = vee();
        let (ps, dist) = meet_on_lower(&v).unwrap();
        // ↓{a,b} ⊓ ↓{a} = ↓{a, a∧b} = ↓{a}
        let eab = ps.index_of(&lelem(&ps, &["a", "b"])).unwrap();
        let ea = ps.index_of(&lelem(&ps, &["a"])).unwrap();
        assert_eq!(dist.meet[eab][ea], ea);
    }

    #[test]
    fn meet_on_lower_chain_is_minimum() {
        let c = chain2();
        let (ps, dist) = meet_on_lower(&c).unwrap();
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                let expected = if ps.order.leq(i, j) { i } else { j };
                assert_eq!(dist.meet[i][j], expected);
            }
        }
        assert!(dist.validate().iter().all(|c| c.pass));
    }

    #[test]
    fn meet_on_lower_requires_meets() {
        // Λ-shape: two incomparable bottoms under one top have no meet.
        let lambda =
            crate::poset::validate_poset(&["a", "b", "top"], &[("a", "top"), ("b", "top")])
                .unwrap();
        assert!(matches!(
            meet_on_lower(&lambda),
            Err(Error::MeetMissing { .. })
        ));
    }

    #[test]
    fn unit_is_a_meet_morphism() {
        let d = diamond();
        let (ps, dist) = meet_on_lower(&d).unwrap();
        for x in 0..d.len() {
            for y in 0..d.len() {
                let m = d.meet(x, y).unwrap();
                assert_eq!(dist.meet[ps.unit[x]][ps.unit[y]], ps.unit[m]);
            }
        }
    }

    #[test]
    fn join_on_upper_diamond() {
        let d = diamond();
        let (ps, dist) = join_on_upper(&d).unwrap();
        // ↑{a} ⊔ ↑{b} = ↑{⊤}
        let ea = ps.index_of(&uelem(&ps, &["a"])).unwrap();
        let eb = ps.index_of(&uelem(&ps, &["b"])).unwrap();
        let etop = ps.index_of(&uelem(&ps, &["top"])).unwrap();
        assert_eq!(dist.join[ea][eb], etop);
        assert!(dist.validate().iter().all(|c| c.pass));
    }

    #[test]
    fn join_on_upper_single_point_degenerates() {
        let (ps, dist) = join_on_upper(&single()).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(dist.join, vec![vec![0]]);
        assert_eq!(dist.meet, vec![vec![0]]);
    }

    #[test]
    fn two_step_extension_matches_closed_form() {
        for p in [chain2(), diamond(), vee(), chain3(), single()] {
            if p.len() > 1 && p.meet(0, 1).is_none() {
                continue;
            }
            let (_, dist) = meet_on_lower(&p).unwrap();
            let two_step = meet_on_lower_via_extensions(&p).unwrap();
            assert_eq!(dist.meet, two_step, "two-step ⊓ differs on {p}");
        }
    }

    #[test]
    fn lower_extension_of_a_meet_morphism_preserves_meets() {
        // X with all meets, Y a ∨-∧ space, f a ∧-morphism: the inflationary
        // extension of f is then also a meet-homomorphism, over all carriers
        // with ≤ 3 elements.
        use crate::enumerate;
        let bases: Vec<Poset> = enumerate::all_posets_up_to(3)
            .unwrap()
            .into_iter()
            .filter(|p| (0..p.len()).all(|i| (0..p.len()).all(|j| p.meet(i, j).is_some())))
            .collect();
        let targets: Vec<DistributiveSpace> = enumerate::all_posets_up_to(3)
            .unwrap()
            .into_iter()
            .filter_map(|q| {
                let join = SemilatticeSpace::from_joins(q.clone()).ok()?;
                let meet = SemilatticeSpace::from_meets(q.clone()).ok()?;
                let d = DistributiveSpace {
                    poset: q,
                    join: join.op,
                    meet: meet.op,
                };
                d.validate().iter().all(|c| c.pass).then_some(d)
            })
            .collect();
        assert!(!bases.is_empty() && !targets.is_empty());
        for x in &bases {
            let (ps, dist) = meet_on_lower(x).unwrap();
            for y in &targets {
                for f_t in enumerate::monotone_maps(x, &y.poset).unwrap() {
                    let meet_morphism = (0..x.len()).all(|a| {
                        (0..x.len()).all(|b| f_t[x.meet(a, b).unwrap()] == y.meet[f_t[a]][f_t[b]])
                    });
                    if !meet_morphism {
                        continue;
                    }
                    let f = MonotoneMap::new(x.clone(), y.poset.clone(), f_t.clone()).unwrap();
                    let ext = crate::freealg::extend(PsKind::Lower, &f, &y.join_space()).unwrap();
                    for i in 0..ps.len() {
                        for j in 0..ps.len() {
                            assert_eq!(
                                ext.table[dist.meet[i][j]], y.meet[ext.table[i]][ext.table[j]],
                                "meet not preserved for f={f_t:?} on {x}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hand_built_violation_is_caught() {
        // join = max, meet = second projection on the 2-chain: fails a law.
        let c = chain2();
        let d = DistributiveSpace {
            poset: c,
            join: vec![vec![0, 1], vec![1, 1]],
            meet: vec![vec![0, 1], vec![0, 1]],
        };
        let checks = d.validate();
        assert!(checks.iter().any(|c| !c.pass));
    }

    #[test]
    fn commute_iso_single_point() {
        let iso = commute_iso(&single()).unwrap();
        assert_eq!(iso.dom.len(), 1);
        assert_eq!(iso.cod.len(), 1);
        assert_eq!(iso.forward, vec![0]);
    }

    #[test]
    fn commute_iso_anti2() {
        let iso = commute_iso(&anti2()).unwrap();
        assert_eq!(iso.dom.len(), 4);
        assert_eq!(iso.cod.len(), 4);
        for (up_down, down_up) in iso.unit_images() {
            assert_eq!(iso.forward[up_down], down_up);
        }
    }

    #[test]
    fn commute_iso_chain2_composites_are_chains() {
        let iso = commute_iso(&chain2()).unwrap();
        assert_eq!(iso.dom.len(), 2);
        assert!(iso.dom.order.same_order(&chain2()));
        assert!(iso.cod.order.same_order(&chain2()));
    }
}
