//! Exhaustive verification suites over every labeled poset up to a size
//! bound. The CLI `sweep` verb and the acceptance tests both run these; all
//! output is deterministic (fixed enumeration order, sorted keys), so two
//! consecutive runs produce byte-identical summaries.
//!
//! `run_all(max_n)` scales each suite from its reference bound at `max_n = 4`:
//! semilattice laws, the upper convergence criterion and the classical
//! equivalences run at `max_n`; the universal property, the finite-collapse
//! oracle, topology coincidence, commutativity and the analyzer lifting
//! oracle run at `max_n - 1`.

use serde_json::json;

use crate::classic::compare_to_classic;
use crate::convergence::{
    convergence_table, converges, directed_families, upper_intersection_criterion, DirectedFamily,
    Witnesses,
};
use crate::distributive::commute_iso;
use crate::enumerate;
use crate::error::Error;
use crate::freealg::{is_homomorphism_table, verify_universal_property};
use crate::ndsem::{
    analyze, lift_binop, lift_binop_oracle, parse_program, AbstractDomain, LitAbstraction, Mode,
};
use crate::poset::{Poset, Subset};
use crate::powerspace::{build_powerspace, Elem, PsKind};
use crate::semilattice::check_semilattice;
use crate::topology::{specialization_order, FiniteTopology};

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compact replayable key for a labeled poset: its covering pairs.
pub fn poset_key(p: &Poset) -> String {
    let covers: Vec<String> = p
        .cover_pairs()
        .into_iter()
        .map(|(i, j)| format!("{}<{}", p.name(i), p.name(j)))
        .collect();
    format!("n={}:{}", p.len(), covers.join(","))
}

/// Every powerspace over every labeled poset on ≤ max_n elements passes the
/// semilattice law report for its kind.
pub fn suite_semilattice_laws(max_n: usize) -> Result<SuiteOutcome, Error> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for p in enumerate::all_posets_up_to(max_n)? {
        for kind in PsKind::ALL {
            instances += 1;
            let ps = build_powerspace(kind, &p)?;
            let report = check_semilattice(&ps.to_semilattice());
            if !report.passed() {
                let law = report.first_failure().unwrap();
                failures.push(
                    json!({
                        "suite": "semilattice-laws",
                        "poset": poset_key(&p),
                        "kind": kind.to_string(),
                        "law": law.law,
                        "witness": law.witness,
                    })
                    .to_string(),
                );
            }
        }
    }
    Ok(SuiteOutcome {
        suite: "semilattice-laws".into(),
        instances,
        failures,
    })
}

/// For every base X, every semilattice space Y of the matching kind (all
/// operation tables enumerated and filtered through the law checker), and
/// every monotone f: X → Y: exactly one homomorphism extends f, and it is the
/// generator fold.
pub fn suite_universal_property(max_n: usize) -> Result<SuiteOutcome, Error> {
    let mut instances = 0;
    let mut failures = Vec::new();
    let bases = enumerate::all_posets_up_to(max_n)?;
    for kind in PsKind::ALL {
        let mut targets = Vec::new();
        for q in &bases {
            targets.extend(enumerate::semilattice_spaces(q, kind.algebra())?);
        }
        for x in &bases {
            for y in &targets {
                instances += 1;
                let report = verify_universal_property(kind, x, y)?;
                if !report.passed() {
                    let case = &report.failures[0];
                    failures.push(
                        json!({
                            "suite": "universal-property",
                            "kind": kind.to_string(),
                            "base": poset_key(x),
                            "target": poset_key(&y.poset),
                            "target_op": y.op,
                            "f": case.f,
                            "homomorphisms": case.homomorphism_count,
                        })
                        .to_string(),
                    );
                }
            }
        }
    }
    Ok(SuiteOutcome {
        suite: "universal-property".into(),
        instances,
        failures,
    })
}

/// Convergence checks: the literal ⇒_U search agrees with the intersection
/// criterion ⋂{↑G} ⊆ ↑F on every directed family over posets ≤ criterion_n,
/// and every ⇒ relation collapses to "target ≤ maximum of the family" on
/// posets ≤ collapse_n, where the principal witness search is also
/// cross-checked against the exhaustive one over arbitrary directed subsets
/// (≤ 3).
pub fn suite_convergence(criterion_n: usize, collapse_n: usize) -> Result<SuiteOutcome, Error> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for p in enumerate::all_posets_up_to(criterion_n)? {
        let ps = build_powerspace(PsKind::Upper, &p)?;
        for fmask in directed_families(&ps)? {
            let fam = DirectedFamily::new_unchecked(fmask.iter().map(|i| ps.elems[i]).collect());
            for target in &ps.elems {
                instances += 1;
                let Elem::Upper(t) = target else {
                    unreachable!()
                };
                let literal =
                    crate::convergence::converges_upper(&p, &fam, t, Witnesses::Principal)?;
                let criterion = upper_intersection_criterion(&p, &fam, t)?;
                if literal != criterion {
                    failures.push(
                        json!({
                            "suite": "convergence",
                            "check": "upper-intersection-criterion",
                            "poset": poset_key(&p),
                            "family": fmask.iter().collect::<Vec<_>>(),
                            "target": target.label(&p),
                            "literal": literal,
                            "criterion": criterion,
                        })
                        .to_string(),
                    );
                }
            }
        }
    }
    for p in enumerate::all_posets_up_to(collapse_n)? {
        for kind in PsKind::ALL {
            let ps = build_powerspace(kind, &p)?;
            for fmask in directed_families(&ps)? {
                let fam =
                    DirectedFamily::new_unchecked(fmask.iter().map(|i| ps.elems[i]).collect());
                let max_elem = fam.maximum(&p);
                for target in &ps.elems {
                    instances += 1;
                    let principal = converges(&p, &fam, target, Witnesses::Principal)?;
                    let collapse = crate::powerspace::compare(&p, target, &max_elem)?;
                    let mut bad = principal != collapse;
                    if !bad && p.len() <= 3 {
                        let exhaustive = converges(&p, &fam, target, Witnesses::Exhaustive)?;
                        bad = exhaustive != principal;
                    }
                    if bad {
                        failures.push(
                            json!({
                                "suite": "convergence",
                                "check": "finite-collapse",
                                "poset": poset_key(&p),
                                "kind": kind.to_string(),
                                "family": fmask.iter().collect::<Vec<_>>(),
                                "target": target.label(&p),
                            })
                            .to_string(),
                        );
                    }
                }
            }
        }
    }
    Ok(SuiteOutcome {
        suite: "convergence".into(),
        instances,
        failures,
    })
}

/// The convergence-open sets of each powerspace are exactly the upper sets of
/// its order, and the specialization order of that topology is the
/// constructed order.
pub fn suite_topology_coincidence(max_n: usize) -> Result<SuiteOutcome, Error> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for p in enumerate::all_posets_up_to(max_n)? {
        for kind in PsKind::ALL {
            instances += 1;
            let ps = build_powerspace(kind, &p)?;
            let e = ps.len();
            let table = convergence_table(&ps)?;
            let mut opens = Vec::new();
            let mut mismatch = None;
            for mask in 0..(1u64 << e) {
                let u = Subset::from_mask(e, mask);
                let open = table.is_open(&u);
                if open != ps.order.is_upper_set(&u) {
                    mismatch = Some(u);
                    break;
                }
                if open {
                    opens.push(u);
                }
            }
            if let Some(u) = mismatch {
                failures.push(
                    json!({
                        "suite": "topology-coincidence",
                        "check": "opens-are-upper-sets",
                        "poset": poset_key(&p),
                        "kind": kind.to_string(),
                        "witness": u.iter().collect::<Vec<_>>(),
                    })
                    .to_string(),
                );
                continue;
            }
            let topo = FiniteTopology::new(ps.order.names().to_vec(), opens)?;
            let recovered = specialization_order(&topo)?;
            if !recovered.same_order(&ps.order) {
                failures.push(
                    json!({
                        "suite": "topology-coincidence",
                        "check": "specialization-order-recovery",
                        "poset": poset_key(&p),
                        "kind": kind.to_string(),
                    })
                    .to_string(),
                );
            }
        }
    }
    Ok(SuiteOutcome {
        suite: "topology-coincidence".into(),
        instances,
        failures,
    })
}

/// Order isomorphism with the classical carriers and the Vietoris = Scott
/// coincidences, for every poset ≤ max_n.
pub fn suite_classical_equivalence(max_n: usize) -> Result<SuiteOutcome, Error> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for p in enumerate::all_posets_up_to(max_n)? {
        for kind in PsKind::ALL {
            instances += 1;
            let report = compare_to_classic(kind, &p)?;
            if !report.passed() {
                let bad = report.checks.iter().find(|c| !c.pass).unwrap();
                failures.push(
                    json!({
                        "suite": "classical-equivalence",
                        "poset": poset_key(&p),
                        "kind": kind.to_string(),
                        "check": bad.check,
                        "detail": bad.detail,
                    })
                    .to_string(),
                );
            }
        }
    }
    Ok(SuiteOutcome {
        suite: "classical-equivalence".into(),
        instances,
        failures,
    })
}

/// The commutativity isomorphism exists, preserves both operations, tracks
/// units, and both composites satisfy both distributive laws; on very small
/// bases the iso is also the unique such map (exhaustive search).
pub fn suite_commutativity(max_n: usize) -> Result<SuiteOutcome, Error> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for p in enumerate::all_posets_up_to(max_n)? {
        instances += 1;
        let iso = match commute_iso(&p) {
            Ok(iso) => iso,
            Err(e) => {
                failures.push(
                    json!({
                        "suite": "commutativity",
                        "poset": poset_key(&p),
                        "error": e.to_string(),
                    })
                    .to_string(),
                );
                continue;
            }
        };
        for (structure, side) in [
            (&iso.dom_structure, "upper-of-lower"),
            (&iso.cod_structure, "lower-of-upper"),
        ] {
            for check in structure.validate() {
                if !check.pass {
                    failures.push(
                        json!({
                            "suite": "commutativity",
                            "poset": poset_key(&p),
                            "composite": side,
                            "law": check.law,
                            "witness": check.witness,
                        })
                        .to_string(),
                    );
                }
            }
        }
        if p.len() <= 2 {
            // uniqueness among all maps fixing the unit images
            let e = iso.dom.len();
            let mut fixed = vec![None; e];
            for (ud, cu) in iso.unit_images() {
                fixed[ud] = Some(cu);
            }
            let mut count = 0;
            for table in enumerate::maps_with_constraint(e, iso.cod.len(), &fixed)? {
                let bijective = {
                    let mut seen = vec![false; iso.cod.len()];
                    table.iter().for_each(|&v| seen[v] = true);
                    seen.iter().all(|&s| s)
                };
                if !bijective {
                    continue;
                }
                let join_hom = is_homomorphism_table(
                    &crate::semilattice::SemilatticeSpace::new(
                        iso.dom.order.clone(),
                        iso.dom_structure.join.clone(),
                        crate::semilattice::Kind::Inflationary,
                    )?,
                    &crate::semilattice::SemilatticeSpace::new(
                        iso.cod.order.clone(),
                        iso.cod_structure.join.clone(),
                        crate::semilattice::Kind::Inflationary,
                    )?,
                    &table,
                );
                let meet_hom = is_homomorphism_table(
                    &crate::semilattice::SemilatticeSpace::new(
                        iso.dom.order.clone(),
                        iso.dom_structure.meet.clone(),
                        crate::semilattice::Kind::Deflationary,
                    )?,
                    &crate::semilattice::SemilatticeSpace::new(
                        iso.cod.order.clone(),
                        iso.cod_structure.meet.clone(),
                        crate::semilattice::Kind::Deflationary,
                    )?,
                    &table,
                );
                if join_hom && meet_hom {
                    count += 1;
                }
            }
            if count != 1 {
                failures.push(
                    json!({
                        "suite": "commutativity",
                        "check": "uniqueness",
                        "poset": poset_key(&p),
                        "count": count,
                    })
                    .to_string(),
                );
            }
        }
    }
    Ok(SuiteOutcome {
        suite: "commutativity".into(),
        instances,
        failures,
    })
}

/// The fixed sign-domain smoke checks plus the generator-lift vs set-image
/// oracle over every jointly monotone operator table on posets ≤ lift_n.
pub fn suite_analyzer(lift_n: usize) -> Result<SuiteOutcome, Error> {
    let mut instances = 0;
    let mut failures = Vec::new();
    let mut fail = |name: &str, detail: String| {
        failures.push(json!({"suite": "analyzer", "check": name, "detail": detail}).to_string());
    };

    // smoke: choice(-1, 2) and choice(1, 2) over the sign domain
    let sign = AbstractDomain::sign();
    let neg_pos = crate::poset::Subset::from_indices(3, &[0, 2]);
    let pos = crate::poset::Subset::from_indices(3, &[2]);
    instances += 1;
    let e = parse_program("choice(-1, 2)")?;
    let may = analyze(&e, &sign, Mode::May)?;
    if may.elem != Elem::new(PsKind::Lower, &sign.poset, &neg_pos)? {
        fail("smoke-may", format!("{:?}", may.elem));
    }
    instances += 1;
    let must = analyze(&e, &sign, Mode::Must)?;
    if must.elem != Elem::new(PsKind::Upper, &sign.poset, &neg_pos)? {
        fail("smoke-must", format!("{:?}", must.elem));
    }
    instances += 1;
    let e = parse_program("choice(1, 2)")?;
    let must = analyze(&e, &sign, Mode::Must)?;
    if must.elem != Elem::new(PsKind::Upper, &sign.poset, &pos)? {
        fail("smoke-must-merged", format!("{:?}", must.elem));
    }

    // lifting oracle: every jointly monotone table over every poset carrier
    for p in enumerate::all_posets_up_to(lift_n)? {
        let n = p.len();
        let dummy = AbstractDomain::new(
            "sweep",
            p.clone(),
            LitAbstraction::Table {
                default: 0,
                map: Default::default(),
            },
            Default::default(),
        )?;
        let spaces: Vec<_> = PsKind::ALL
            .iter()
            .map(|&k| build_powerspace(k, &p))
            .collect::<Result<_, _>>()?;
        let mut flat = vec![0usize; n * n];
        loop {
            let monotone = (0..n).all(|x1| {
                (0..n).all(|x2| {
                    !p.leq(x1, x2)
                        || (0..n).all(|y1| {
                            (0..n).all(|y2| {
                                !p.leq(y1, y2) || p.leq(flat[x1 * n + y1], flat[x2 * n + y2])
                            })
                        })
                })
            });
            if monotone {
                let table: Vec<Vec<usize>> =
                    (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
                for ps in &spaces {
                    for a in &ps.elems {
                        for b in &ps.elems {
                            instances += 1;
                            let lifted = lift_binop(&dummy, &table, a, b)?;
                            let oracle = lift_binop_oracle(&dummy, &table, a, b)?;
                            if lifted != oracle {
                                fail(
                                    "lift-vs-set-image",
                                    format!(
                                        "poset={} table={:?} a={} b={}",
                                        poset_key(&p),
                                        table,
                                        a.label(&p),
                                        b.label(&p)
                                    ),
                                );
                            }
                        }
                    }
                }
            }
            let mut pos_i = n * n;
            let mut done = false;
            loop {
                if pos_i == 0 {
                    done = true;
                    break;
                }
                pos_i -= 1;
                flat[pos_i] += 1;
                if flat[pos_i] < n {
                    break;
                }
                flat[pos_i] = 0;
            }
            if done {
                break;
            }
        }
    }

    // the shipped domains' own tables against the oracle
    for d in [AbstractDomain::sign(), AbstractDomain::parity()] {
        for table in d.ops.values() {
            for kind in PsKind::ALL {
                let ps = build_powerspace(kind, &d.poset)?;
                for a in &ps.elems {
                    for b in &ps.elems {
                        instances += 1;
                        if lift_binop(&d, table, a, b)? != lift_binop_oracle(&d, table, a, b)? {
                            fail(
                                "builtin-lift",
                                format!("domain={} a={:?} b={:?}", d.name, a, b),
                            );
                        }
                    }
                }
            }
        }
    }

    Ok(SuiteOutcome {
        suite: "analyzer".into(),
        instances,
        failures,
    })
}

/// Runs every suite at bounds scaled from `max_n` (see the module docs).
pub fn run_all(max_n: usize) -> Result<Vec<SuiteOutcome>, Error> {
    let smaller = max_n.saturating_sub(1).max(1);
    Ok(vec![
        suite_semilattice_laws(max_n)?,
        suite_universal_property(smaller)?,
        suite_convergence(max_n, smaller)?,
        suite_topology_coincidence(smaller)?,
        suite_classical_equivalence(max_n)?,
        suite_commutativity(smaller)?,
        suite_analyzer(smaller)?,
    ])
}

/// Byte-stable text summary: one line per suite plus failure lines, sorted by
/// instance key within each suite.
pub fn summary_text(outcomes: &[SuiteOutcome]) -> String {
    let mut out = String::new();
    let mut total_failures = 0;
    for o in outcomes {
        total_failures += o.failures.len();
        out.push_str(&format!(
            "{}: {} — {} instances, {} failures\n",
            o.suite,
            if o.passed() { "pass" } else { "FAIL" },
            o.instances,
            o.failures.len()
        ));
        let mut sorted = o.failures.clone();
        sorted.sort();
        for f in &sorted {
            out.push_str("  ");
            out.push_str(f);
            out.push('\n');
        }
    }
    if total_failures == 0 {
        out.push_str("all suites pass\n");
    } else {
        out.push_str(&format!("{total_failures} failures\n"));
    }
    out
}
