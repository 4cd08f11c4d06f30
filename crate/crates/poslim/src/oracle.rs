//! Brute-force reference implementations used by the test and acceptance
//! suites. These deliberately avoid the antichain reduction of the
//! production checkers: the relation-lifting condition is checked over
//! every subset of the ray, exactly as defined.

use crate::abgrp::Subgroup;
use crate::diagram::{Diagram, Variance};
use crate::matrix::IntMat;

/// Relation lifting at `i`, quantified over all finite subsets J of the
/// non-strict ray: every relation over J has its components at the maxima
/// of J inside the boundary images there. Exponential in the ray size; only
/// for small posets.
pub fn pseudo_projective_at_all_subsets(d: &Diagram, i: usize) -> bool {
    assert_eq!(d.variance(), Variance::Covariant);
    let ray: Vec<usize> = (0..d.poset().len())
        .filter(|&j| d.poset().leq(j, i))
        .collect();
    for mask in 1u32..(1 << ray.len()) {
        let subset: Vec<usize> = ray
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &j)| j)
            .collect();
        let maxima = d.poset().maxima(&subset).members;
        let mut offsets = Vec::with_capacity(subset.len());
        let mut total = 0;
        for &j in &subset {
            offsets.push(total);
            total += d.object(j).ngens();
        }
        let mut mat = IntMat::zeros(d.object(i).ngens(), 0);
        for &j in &subset {
            mat = mat.hstack(d.arrow(j, i).matrix());
        }
        let stacked = mat.hstack(&d.object(i).effective_rels());
        let all_rows: Vec<usize> = (0..total).collect();
        let kernel = stacked.kernel_basis().select_rows(&all_rows);
        for &m in &maxima {
            let slot = subset.iter().position(|&j| j == m).expect("member");
            let nm = d.object(m).ngens();
            let rows: Vec<usize> = (offsets[slot]..offsets[slot] + nm).collect();
            let proj = Subgroup::new(d.object(m).clone(), kernel.select_rows(&rows));
            if !d.boundary_image(m).contains(&proj).expect("same ambient") {
                return false;
            }
        }
    }
    true
}
