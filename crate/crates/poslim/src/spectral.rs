//! E2-page assembly for graded diagrams and torsion-aware reconstruction of
//! total homology from a positionally collapsed page.
//!
//! No differentials are ever computed: the page either collapses for
//! positional reasons (nothing survives past the first two columns) or
//! assembly is refused.

use crate::abgrp::FgAbGroup;
use crate::derived::higher_colim;
use crate::diagram::{Diagram, Variance};
use crate::poset::FinPoset;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum SpectralError {
    #[error("missing layer q = {0}")]
    MissingLayer(usize),
    #[error("layer q = {0} lives over a different poset")]
    LayerPosetMismatch(usize),
    #[error("layer q = {0} must be covariant")]
    LayerVariance(usize),
    #[error("page is not positionally collapsed")]
    NotCollapsed,
    #[error("extension ambiguous: entries share torsion support {0:?}")]
    ExtensionAmbiguous(Vec<String>),
}

/// One covariant diagram per homological degree, all over the same poset.
pub struct GradedDiagram {
    poset: FinPoset,
    layers: BTreeMap<usize, Diagram>,
}

impl GradedDiagram {
    pub fn new(poset: FinPoset, layers: BTreeMap<usize, Diagram>) -> Result<Self, SpectralError> {
        for (&q, d) in &layers {
            if d.poset() != &poset {
                return Err(SpectralError::LayerPosetMismatch(q));
            }
            if d.variance() != Variance::Covariant {
                return Err(SpectralError::LayerVariance(q));
            }
        }
        Ok(GradedDiagram { poset, layers })
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn layer(&self, q: usize) -> Option<&Diagram> {
        self.layers.get(&q)
    }

    pub fn layers(&self) -> &BTreeMap<usize, Diagram> {
        &self.layers
    }
}

/// The computed page: one canonical form per (p, q) position.
pub struct E2Page {
    pub entries: BTreeMap<(usize, usize), FgAbGroup>,
    pub p_max: usize,
    pub q_max: usize,
}

impl E2Page {
    pub fn entry(&self, p: usize, q: usize) -> Option<&FgAbGroup> {
        self.entries.get(&(p, q))
    }
}

/// entries(p, q) = p-th derived colimit of layer q.
pub fn e2_page(d: &GradedDiagram, p_max: usize, q_max: usize) -> Result<E2Page, SpectralError> {
    let mut entries = BTreeMap::new();
    for q in 0..=q_max {
        let layer = d.layer(q).ok_or(SpectralError::MissingLayer(q))?;
        for p in 0..=p_max {
            entries.insert((p, q), higher_colim(layer, p));
        }
    }
    Ok(E2Page {
        entries,
        p_max,
        q_max,
    })
}

pub struct CollapseReport {
    pub nonzero: Vec<(usize, usize)>,
    /// No entry survives at p >= 2, so all differentials vanish for
    /// positional reasons.
    pub collapse: bool,
}

pub fn collapse_report(page: &E2Page) -> CollapseReport {
    let nonzero: Vec<(usize, usize)> = page
        .entries
        .iter()
        .filter(|(_, g)| !g.is_zero_group())
        .map(|(&pq, _)| pq)
        .collect();
    let collapse = nonzero.iter().all(|&(p, _)| p < 2);
    CollapseReport { nonzero, collapse }
}

/// Torsion support: the primes dividing any invariant factor, plus a free
/// marker when the free rank is positive.
fn support(g: &FgAbGroup) -> BTreeSet<String> {
    let c = g.canon();
    let mut s: BTreeSet<String> = c.torsion_primes().iter().map(|p| p.to_string()).collect();
    if c.free_rank > 0 {
        s.insert("infinity".to_string());
    }
    s
}

/// Total homology in degree n from a collapsed page with entries confined to
/// the first two columns: the direct sum of the two contributing positions,
/// legal only when their torsion supports are disjoint.
pub fn assemble_homology(page: &E2Page, n: usize) -> Result<FgAbGroup, SpectralError> {
    let report = collapse_report(page);
    if !report.collapse {
        return Err(SpectralError::NotCollapsed);
    }
    let ring = page
        .entries
        .values()
        .next()
        .map(|g| g.ring().clone())
        .unwrap_or(crate::abgrp::Ring::Z);
    let zero = FgAbGroup::zero(ring);
    let e0 = page.entry(0, n).unwrap_or(&zero);
    let e1 = if n >= 1 {
        page.entry(1, n - 1).unwrap_or(&zero)
    } else {
        &zero
    };
    let shared: Vec<String> = support(e0).intersection(&support(e1)).cloned().collect();
    if !shared.is_empty() {
        return Err(SpectralError::ExtensionAmbiguous(shared));
    }
    let (sum, _) = FgAbGroup::direct_sum(&[e0, e1]);
    Ok(sum)
}

/// Exact prime-support predicates on the canonical form.
pub fn is_p_torsion_only(g: &FgAbGroup, p: u64) -> bool {
    let c = g.canon();
    c.free_rank == 0 && c.torsion_primes().iter().all(|&q| q == p)
}

pub fn has_no_p_torsion(g: &FgAbGroup, p: u64) -> bool {
    !g.canon().torsion_primes().contains(&p)
}
