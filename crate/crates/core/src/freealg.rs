//! Free-extension homomorphisms, the functorial action, and the exhaustive
//! universal-property verifier.
//!
//! The extension of f along the unit folds the target operation over the
//! f-images of an element's canonical generators; uniqueness is certified by
//! enumerating every map with the unit constraint, not just the monotone ones.

use serde::Serialize;

use crate::enumerate;
use crate::error::Error;
use crate::poset::Poset;
use crate::powerspace::{build_powerspace, Elem, Powerspace, PsKind};
use crate::semilattice::SemilatticeSpace;
use crate::topology::MonotoneMap;

/// A table map between semilattice-structured carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub src: SemilatticeSpace,
    pub dst: SemilatticeSpace,
    pub table: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        src: SemilatticeSpace,
        dst: SemilatticeSpace,
        table: Vec<usize>,
    ) -> Result<Self, Error> {
        if table.len() != src.len() || table.iter().any(|&v| v >= dst.len()) {
            return Err(Error::InvalidInput(
                "homomorphism table does not match the carriers".into(),
            ));
        }
        Ok(Homomorphism { src, dst, table })
    }
}

/// True iff the table is monotone and preserves the operation:
/// h(u ⊕ v) = h(u) ⊎ h(v).
pub fn check_homomorphism(h: &Homomorphism) -> bool {
    is_homomorphism_table(&h.src, &h.dst, &h.table)
}

pub(crate) fn is_homomorphism_table(
    src: &SemilatticeSpace,
    dst: &SemilatticeSpace,
    table: &[usize],
) -> bool {
    let n = src.len();
    for i in 0..n {
        for j in 0..n {
            if src.poset.leq(i, j) && !dst.poset.leq(table[i], table[j]) {
                return false;
            }
            if table[src.apply(i, j)] != dst.apply(table[i], table[j]) {
                return false;
            }
        }
    }
    true
}

/// An extension f̄ of f: X → Y along the unit of a powerspace over X.
#[derive(Debug, Clone)]
pub struct Extension {
    pub powerspace: Powerspace,
    pub target: SemilatticeSpace,
    /// elem index in the powerspace ↦ element of the target
    pub table: Vec<usize>,
}

impl Extension {
    pub fn to_homomorphism(&self) -> Homomorphism {
        Homomorphism::new(
            self.powerspace.to_semilattice(),
            self.target.clone(),
            self.table.clone(),
        )
        .expect("extension tables match by construction")
    }
}

/// Raw extension fold: the target operation applied across the f-images of
/// the canonical generators (maxA ∪ minA for convex elements).
pub(crate) fn extension_value(e: &Elem, f_table: &[usize], target: &SemilatticeSpace) -> usize {
    let imgs: Vec<usize> = e.gen().iter().map(|a| f_table[a]).collect();
    target.fold(&imgs)
}

/// f̄(↓F) = ⋁ f(F), f̄(↑F) = ⋀ f(F), f̄(F̂) = Σ f(F): the free extension of a
/// monotone (= continuous) f: X → Y.poset to the chosen powerspace over X.
/// Satisfies f̄ ∘ unit = f and is a homomorphism; both are replayable through
/// `check_homomorphism`.
pub fn extend(
    kind: PsKind,
    f: &MonotoneMap,
    target: &SemilatticeSpace,
) -> Result<Extension, Error> {
    if target.kind != kind.algebra() {
        return Err(Error::KindMismatch {
            expected: kind.algebra(),
            found: target.kind,
        });
    }
    if f.dst != target.poset {
        return Err(Error::BaseMismatch);
    }
    if let Some((i, j)) = f.monotonicity_witness() {
        return Err(Error::NotMonotone { i, j });
    }
    let ps = build_powerspace(kind, &f.src)?;
    let table: Vec<usize> = ps
        .elems
        .iter()
        .map(|e| extension_value(e, &f.table, target))
        .collect();
    Ok(Extension {
        powerspace: ps,
        target: target.clone(),
        table,
    })
}

/// Per-f outcome of the uniqueness search.
#[derive(Debug, Clone, Serialize)]
pub struct UniversalCase {
    pub f: Vec<usize>,
    pub homomorphism_count: usize,
    pub matches_extension: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniversalReport {
    pub monotone_maps: usize,
    pub failures: Vec<UniversalCase>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every monotone f: X → Y.poset, enumerates every map h from the
/// powerspace carrier to Y with h ∘ unit = f and asserts that exactly one of
/// them is a homomorphism, namely the extension fold.
pub fn verify_universal_property(
    kind: PsKind,
    x: &Poset,
    target: &SemilatticeSpace,
) -> Result<UniversalReport, Error> {
    if target.kind != kind.algebra() {
        return Err(Error::KindMismatch {
            expected: kind.algebra(),
            found: target.kind,
        });
    }
    let ps = build_powerspace(kind, x)?;
    let ps_sl = ps.to_semilattice();
    let e = ps.len();
    let maps = enumerate::monotone_maps(x, &target.poset)?;
    // total search size across all f, not just per candidate map
    crate::error::guard((target.len() as u128).pow((e - x.len()) as u32) * maps.len() as u128)?;
    let mut failures = Vec::new();
    for f_table in &maps {
        let mut fixed: Vec<Option<usize>> = vec![None; e];
        for (xx, &u) in ps.unit.iter().enumerate() {
            fixed[u] = Some(f_table[xx]);
        }
        let expected: Vec<usize> = ps
            .elems
            .iter()
            .map(|el| extension_value(el, f_table, target))
            .collect();
        let mut hom_count = 0usize;
        let mut matches = false;
        for h in enumerate::maps_with_constraint(e, target.len(), &fixed)? {
            if is_homomorphism_table(&ps_sl, target, &h) {
                hom_count += 1;
                if h == expected {
                    matches = true;
                }
            }
        }
        if hom_count != 1 || !matches {
            failures.push(UniversalCase {
                f: f_table.clone(),
                homomorphism_count: hom_count,
                matches_extension: matches,
            });
        }
    }
    Ok(UniversalReport {
        monotone_maps: maps.len(),
        failures,
    })
}

/// The functorial action on a monotone map: image the generators, then
/// canonicalize. P(id) = id and P(g ∘ f) = P(g) ∘ P(f) hold table-wise.
#[derive(Debug, Clone)]
pub struct FunctorMap {
    pub kind: PsKind,
    pub src: Powerspace,
    pub dst: Powerspace,
    pub table: Vec<usize>,
}

pub fn functor_map(kind: PsKind, f: &MonotoneMap) -> Result<FunctorMap, Error> {
    if let Some((i, j)) = f.monotonicity_witness() {
        return Err(Error::NotMonotone { i, j });
    }
    let src = build_powerspace(kind, &f.src)?;
    let dst = build_powerspace(kind, &f.dst)?;
    let mut table = Vec::with_capacity(src.len());
    for e in &src.elems {
        let img: Vec<usize> = e.gen().iter().map(|a| f.table[a]).collect();
        let ie = Elem::new(
            kind,
            &f.dst,
            &crate::poset::Subset::from_indices(f.dst.len(), &img),
        )?;
        table.push(
            dst.index_of(&ie)
                .expect("image canonicalizes into the destination"),
        );
    }
    Ok(FunctorMap {
        kind,
        src,
        dst,
        table,
    })
}
