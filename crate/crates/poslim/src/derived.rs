//! The chain (and cochain) complex of a diagram over its poset, and the
//! resulting derived functors of colimit and limit.
//!
//! For a covariant diagram the degree-p term is the direct sum of `F(i0)`
//! over strictly increasing chains `i0 < ... < ip`; the differential is the
//! alternating sum of face maps, where deleting the bottom vertex applies
//! the diagram arrow and every other face is an identity inclusion. Homology
//! in degree n is the n-th derived colimit. The contravariant case is the
//! coboundary complex on the same chain index set and computes derived
//! limits.

use crate::abgrp::{FgAbGroup, Ring, Subgroup};
use crate::diagram::{Diagram, Variance};
use crate::matrix::IntMat;
use num_bigint::BigInt;

/// Which derived functor a query concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Colim,
    Lim,
}

pub struct ComplexDegree {
    pub group: FgAbGroup,
    pub chains: Vec<Vec<usize>>,
    pub offsets: Vec<usize>,
}

/// The (co)chain complex of a diagram. For a covariant diagram
/// `differentials[p] : C_p -> C_{p-1}` (index 0 is empty); for a
/// contravariant one `differentials[p] : C^{p-1} -> C^p` (same indexing, so
/// the entry at p is the coboundary landing in degree p).
pub struct PosetChainComplex {
    pub degrees: Vec<ComplexDegree>,
    pub differentials: Vec<IntMat>,
    pub variance: Variance,
}

/// Build the complex; degrees above the poset height vanish and are not
/// materialized.
pub fn build_complex(d: &Diagram) -> PosetChainComplex {
    let height = d.poset().height();
    let mut degrees: Vec<ComplexDegree> = Vec::with_capacity(height + 1);
    for p in 0..=height {
        let chains = d.poset().chains(p);
        let parts: Vec<&FgAbGroup> = chains.iter().map(|c| d.object(c[0])).collect();
        let (group, offsets) = FgAbGroup::direct_sum_in(d.ring().clone(), &parts);
        degrees.push(ComplexDegree {
            group,
            chains,
            offsets,
        });
    }

    let mut differentials: Vec<IntMat> = Vec::with_capacity(height + 1);
    for p in 0..=height {
        if p == 0 {
            differentials.push(IntMat::zeros(0, 0));
            continue;
        }
        let (hi, lo) = (&degrees[p], &degrees[p - 1]);
        let mut mat = match d.variance() {
            Variance::Covariant => IntMat::zeros(lo.group.ngens(), hi.group.ngens()),
            Variance::Contravariant => IntMat::zeros(hi.group.ngens(), lo.group.ngens()),
        };
        for (ci, chain) in hi.chains.iter().enumerate() {
            for k in 0..=p {
                let mut face = chain.clone();
                face.remove(k);
                let fi = lo
                    .chains
                    .iter()
                    .position(|c| c == &face)
                    .expect("face of a chain is a chain");
                let sign = if k % 2 == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
                // deleting the bottom vertex applies the arrow attached to
                // its cover step; every other face fixes the bottom summand
                let block = if k == 0 {
                    d.arrow(chain[0], chain[1]).matrix().clone()
                } else {
                    IntMat::identity(d.object(chain[0]).ngens())
                };
                match d.variance() {
                    Variance::Covariant => {
                        add_block(&mut mat, lo.offsets[fi], hi.offsets[ci], &block, &sign)
                    }
                    Variance::Contravariant => {
                        add_block(&mut mat, hi.offsets[ci], lo.offsets[fi], &block, &sign)
                    }
                }
            }
        }
        differentials.push(mat);
    }

    PosetChainComplex {
        degrees,
        differentials,
        variance: d.variance(),
    }
}

fn add_block(mat: &mut IntMat, row_off: usize, col_off: usize, block: &IntMat, sign: &BigInt) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = &block[(r, c)] * sign;
            let cur = mat[(row_off + r, col_off + c)].clone();
            mat[(row_off + r, col_off + c)] = cur + v;
        }
    }
}

impl PosetChainComplex {
    pub fn height(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Consecutive differentials compose to zero up to the relations of the
    /// target degree.
    pub fn differentials_compose_to_zero(&self) -> bool {
        for p in 2..self.degrees.len() {
            let (prod, target) = match self.variance {
                Variance::Covariant => (
                    &self.differentials[p - 1] * &self.differentials[p],
                    &self.degrees[p - 2].group,
                ),
                Variance::Contravariant => (
                    &self.differentials[p] * &self.differentials[p - 1],
                    &self.degrees[p].group,
                ),
            };
            for j in 0..prod.cols() {
                let col = IntMat::from_col(&prod.col(j));
                if !target.is_zero_elem(&col) {
                    return false;
                }
            }
        }
        true
    }
}

/// Homology at a presented middle group: cycles are the presented kernel of
/// `out` (`None` means everything is a cycle), boundaries the columns of
/// `in_cols`.
fn homology_at(
    middle: &FgAbGroup,
    out: Option<(&IntMat, &FgAbGroup)>,
    in_cols: &IntMat,
) -> FgAbGroup {
    let cycles = match out {
        None => Subgroup::full(middle.clone()),
        Some((mat, target)) => {
            let stacked = mat.hstack(&target.effective_rels());
            let k = stacked.kernel_basis();
            let idx: Vec<usize> = (0..middle.ngens()).collect();
            Subgroup::new(middle.clone(), k.select_rows(&idx))
        }
    };
    let (cycle_grp, _incl) = cycles.as_group();
    let (boundaries, den) = cycles
        .express(in_cols)
        .expect("boundaries lie in the cycle lattice");
    debug_assert!(den == BigInt::from(1) || middle.ring() == &Ring::Q);
    FgAbGroup::presented(
        middle.ring().clone(),
        cycle_grp.ngens(),
        cycle_grp.rels().hstack(&boundaries),
    )
}

/// n-th derived colimit of a covariant diagram, in canonical form.
pub fn higher_colim(d: &Diagram, n: usize) -> FgAbGroup {
    assert_eq!(
        d.variance(),
        Variance::Covariant,
        "higher_colim needs a covariant diagram"
    );
    let cx = build_complex(d);
    if n > cx.height() {
        return FgAbGroup::zero(d.ring().clone());
    }
    let middle = &cx.degrees[n].group;
    let out = (n > 0).then(|| (&cx.differentials[n], &cx.degrees[n - 1].group));
    let in_cols = if n < cx.height() {
        cx.differentials[n + 1].clone()
    } else {
        IntMat::zeros(middle.ngens(), 0)
    };
    homology_at(middle, out, &in_cols)
}

/// n-th derived limit of a contravariant diagram, in canonical form.
pub fn higher_lim(d: &Diagram, n: usize) -> FgAbGroup {
    assert_eq!(
        d.variance(),
        Variance::Contravariant,
        "higher_lim needs a contravariant diagram"
    );
    let cx = build_complex(d);
    if n > cx.height() {
        return FgAbGroup::zero(d.ring().clone());
    }
    let middle = &cx.degrees[n].group;
    let out = (n < cx.height()).then(|| (&cx.differentials[n + 1], &cx.degrees[n + 1].group));
    let in_cols = if n > 0 {
        cx.differentials[n].clone()
    } else {
        IntMat::zeros(middle.ngens(), 0)
    };
    homology_at(middle, out, &in_cols)
}

/// Vanishing of the derived functors in all degrees 1..=height; on failure
/// returns the first nonzero degree and its value.
#[allow(clippy::result_large_err)]
pub fn is_acyclic(d: &Diagram, side: Side) -> Result<(), (usize, FgAbGroup)> {
    let height = d.poset().height();
    for n in 1..=height {
        let h = match side {
            Side::Colim => higher_colim(d, n),
            Side::Lim => higher_lim(d, n),
        };
        if !h.is_zero_group() {
            return Err((n, h));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;
    use std::collections::BTreeMap;

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn zg() -> FgAbGroup {
        FgAbGroup::free(Ring::Z, 1)
    }

    fn scalar(v: i64) -> IntMat {
        IntMat::from_rows(&[vec![v]])
    }

    fn span_with_zero_legs() -> Diagram {
        let p = FinPoset::from_covers(
            ids(&["p0", "p1", "p2"]),
            &[("p0".into(), "p1".into()), ("p0".into(), "p2".into())],
        )
        .unwrap();
        let z0 = FgAbGroup::zero(Ring::Z);
        let mut e = BTreeMap::new();
        e.insert((0, 1), IntMat::zeros(0, 1));
        e.insert((0, 2), IntMat::zeros(0, 1));
        Diagram::new(p, Variance::Covariant, vec![zg(), z0.clone(), z0], e).unwrap()
    }

    #[test]
    fn singleton_complex() {
        let p = FinPoset::from_covers(ids(&["x"]), &[]).unwrap();
        let d = Diagram::constant(p, Variance::Covariant, zg());
        let cx = build_complex(&d);
        assert_eq!(cx.degrees.len(), 1);
        assert_eq!(cx.degrees[0].group, zg());
        assert!(higher_colim(&d, 1).is_zero_group());
    }

    #[test]
    fn two_chain_differential() {
        // j < i: C_1 = F(j), d(x) = (arrow x at chain (i)) - (x at chain (j))
        let p = FinPoset::from_covers(ids(&["j", "i"]), &[("j".into(), "i".into())]).unwrap();
        let mut e = BTreeMap::new();
        e.insert((0, 1), scalar(2));
        let d = Diagram::new(p, Variance::Covariant, vec![zg(), zg()], e).unwrap();
        let cx = build_complex(&d);
        assert_eq!(cx.degrees[1].chains, vec![vec![0, 1]]);
        let d1 = &cx.differentials[1];
        assert_eq!(d1[(0, 0)], BigInt::from(-1)); // slot of chain (j)
        assert_eq!(d1[(1, 0)], BigInt::from(2)); // slot of chain (i)
    }

    #[test]
    fn constant_diagram_on_cone_poset_is_acyclic() {
        let p = crate::groups::bianchi_poset();
        let d = Diagram::constant(p, Variance::Covariant, zg());
        assert_eq!(higher_colim(&d, 0), zg());
        assert!(higher_colim(&d, 1).is_zero_group());
        assert!(higher_colim(&d, 2).is_zero_group());
        assert!(is_acyclic(&d, Side::Colim).is_ok());
        let cx = build_complex(&d);
        assert_eq!(cx.degrees[2].chains.len(), 10);
    }

    #[test]
    fn zero_legged_span_has_colim1_z() {
        let d = span_with_zero_legs();
        assert!(higher_colim(&d, 0).is_zero_group());
        assert_eq!(higher_colim(&d, 1), zg());
        assert!(matches!(is_acyclic(&d, Side::Colim), Err((1, _))));
    }

    #[test]
    fn degrees_above_height_vanish() {
        let d = span_with_zero_legs();
        assert!(higher_colim(&d, 2).is_zero_group());
        assert!(higher_colim(&d, 7).is_zero_group());
    }

    #[test]
    fn h0_matches_direct_colimit() {
        let p = FinPoset::from_covers(
            ids(&["p0", "p1", "p2"]),
            &[("p0".into(), "p1".into()), ("p0".into(), "p2".into())],
        )
        .unwrap();
        let mut e = BTreeMap::new();
        e.insert((0, 1), scalar(2));
        e.insert((0, 2), scalar(3));
        let d = Diagram::new(p, Variance::Covariant, vec![zg(); 3], e).unwrap();
        let h0 = higher_colim(&d, 0);
        let (direct, _) = d.colimit_direct();
        assert_eq!(h0.canon(), direct.canon());
    }

    #[test]
    fn d_squared_is_zero() {
        let p = crate::groups::bianchi_poset();
        let d = Diagram::constant(
            p.clone(),
            Variance::Covariant,
            FgAbGroup::cyclic(Ring::Z, 4),
        );
        assert!(build_complex(&d).differentials_compose_to_zero());
        let g = Diagram::constant(p, Variance::Contravariant, FgAbGroup::cyclic(Ring::Z, 4));
        assert!(build_complex(&g).differentials_compose_to_zero());
    }

    #[test]
    fn lim_examples() {
        // constant contravariant Z on the cone poset: lim0 = Z
        let p = crate::groups::bianchi_poset();
        let d = Diagram::constant(p, Variance::Contravariant, zg());
        assert_eq!(higher_lim(&d, 0), zg());

        // singleton: all positive degrees vanish
        let s = FinPoset::from_covers(ids(&["x"]), &[]).unwrap();
        let ds = Diagram::constant(s, Variance::Contravariant, zg());
        assert!(higher_lim(&ds, 1).is_zero_group());

        // two incomparable points: lim0 = Z^2, nothing higher
        let two = FinPoset::from_covers(ids(&["x", "y"]), &[]).unwrap();
        let dt = Diagram::constant(two, Variance::Contravariant, zg());
        assert_eq!(higher_lim(&dt, 0), FgAbGroup::free(Ring::Z, 2));
        assert!(higher_lim(&dt, 1).is_zero_group());
    }

    #[test]
    fn lim0_is_limit_direct() {
        let p = FinPoset::from_covers(ids(&["k", "j"]), &[("k".into(), "j".into())]).unwrap();
        let mut e = BTreeMap::new();
        e.insert((0, 1), scalar(2)); // G(j) -> G(k) multiplication by 2
        let d = Diagram::new(p, Variance::Contravariant, vec![zg(), zg()], e).unwrap();
        let h0 = higher_lim(&d, 0);
        let (lim, _) = d.limit_direct();
        assert_eq!(h0.canon(), lim.canon());
    }

    #[test]
    fn euler_characteristic_over_q() {
        let d = span_with_zero_legs();
        let cx = build_complex(&d);
        let lhs: i64 = cx
            .degrees
            .iter()
            .enumerate()
            .map(|(p, deg)| {
                let sign = if p % 2 == 0 { 1 } else { -1 };
                sign * deg.group.canon().free_rank as i64
            })
            .sum();
        let rhs: i64 = (0..=cx.height())
            .map(|n| {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                sign * higher_colim(&d, n).canon().free_rank as i64
            })
            .sum();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn colim_invariant_under_presentation_change() {
        // the same functor with one object group rewritten by a unimodular
        // change of generators
        let p = FinPoset::from_covers(ids(&["j", "i"]), &[("j".into(), "i".into())]).unwrap();
        let straight = FgAbGroup::from_invariants(Ring::Z, 0, &[2, 4]);
        // T = [[1,0],[1,1]]: rels' = T^{-1} rels, map' = T^{-1} map
        let scrambled =
            FgAbGroup::presented(Ring::Z, 2, IntMat::from_rows(&[vec![2, 0], vec![-2, 4]]));
        let mk = |g: FgAbGroup, mat: IntMat| {
            let mut e = BTreeMap::new();
            e.insert((0, 1), mat);
            Diagram::new(p.clone(), Variance::Covariant, vec![zg(), g], e).unwrap()
        };
        let d1 = mk(straight, IntMat::from_rows(&[vec![1], vec![0]]));
        let d2 = mk(scrambled, IntMat::from_rows(&[vec![1], vec![-1]]));
        for n in 0..=1 {
            assert_eq!(higher_colim(&d1, n).canon(), higher_colim(&d2, n).canon());
        }
    }
}
