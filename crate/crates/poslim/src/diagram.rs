//! Validated functors from a finite poset into finitely generated abelian
//! groups, covariant or contravariant, with the derived per-object data
//! every checker consumes: boundary images, boundary kernels, direct
//! colimits and the natural comparison maps.

use crate::abgrp::{FgAbGroup, Hom, Ring, Subgroup};
use crate::matrix::IntMat;
use crate::poset::FinPoset;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

#[derive(Debug, Error, Clone)]
pub enum DiagramError {
    #[error("missing object at {0}")]
    MissingObject(String),
    #[error("missing edge map on cover {0} < {1}")]
    MissingEdge(String, String),
    #[error(
        "functoriality fails between {from} and {to}: path {path1:?} disagrees with path {path2:?}"
    )]
    NotFunctorial {
        from: String,
        to: String,
        path1: Vec<String>,
        path2: Vec<String>,
    },
    #[error("edge map on cover {0} < {1} has the wrong shape: {2}")]
    BadEdge(String, String, String),
    #[error("object at {0} has ring {1}, expected {2}")]
    MixedRings(String, String, String),
}

/// A functor from the poset into abelian groups. Contravariant diagrams are
/// stored over the same poset with their arrows oriented downward; there is
/// no separate opposite-poset type.
#[derive(Clone)]
pub struct Diagram {
    poset: FinPoset,
    variance: Variance,
    ring: Ring,
    objects: Vec<FgAbGroup>,
    /// For every strict pair, the composite along covers. Covariant:
    /// `arrows[(lo, hi)] : F(lo) -> F(hi)`; contravariant:
    /// `arrows[(lo, hi)] : G(hi) -> G(lo)`.
    arrows: BTreeMap<(usize, usize), Hom>,
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Diagram[{:?}, {} objects]",
            self.variance,
            self.objects.len()
        )
    }
}

impl Diagram {
    /// Validate a raw diagram: one group per element, one map per cover.
    /// Functoriality is verified on every strict pair by comparing all
    /// cover-path composites; the first disagreeing pair of paths is
    /// reported.
    pub fn new(
        poset: FinPoset,
        variance: Variance,
        objects: Vec<FgAbGroup>,
        edge_maps: BTreeMap<(usize, usize), IntMat>,
    ) -> Result<Self, DiagramError> {
        if objects.len() != poset.len() {
            let missing = poset.len().min(objects.len());
            return Err(DiagramError::MissingObject(
                poset.ids().get(missing).cloned().unwrap_or_default(),
            ));
        }
        let ring = objects.first().map_or(Ring::Z, |g| g.ring().clone());
        for (i, g) in objects.iter().enumerate() {
            if g.ring() != &ring {
                return Err(DiagramError::MixedRings(
                    poset.id(i).to_string(),
                    g.ring().to_string(),
                    ring.to_string(),
                ));
            }
        }
        let covers = poset.covers();
        let mut edges: BTreeMap<(usize, usize), Hom> = BTreeMap::new();
        for &(lo, hi) in &covers {
            let mat = edge_maps.get(&(lo, hi)).ok_or_else(|| {
                DiagramError::MissingEdge(poset.id(lo).into(), poset.id(hi).into())
            })?;
            let (src, dst) = match variance {
                Variance::Covariant => (&objects[lo], &objects[hi]),
                Variance::Contravariant => (&objects[hi], &objects[lo]),
            };
            let hom =
                Hom::new(src.clone(), dst.clone(), mat.clone(), BigInt::one()).map_err(|e| {
                    DiagramError::BadEdge(poset.id(lo).into(), poset.id(hi).into(), e.to_string())
                })?;
            edges.insert((lo, hi), hom);
        }

        // Compose along every cover path; all paths between a pair must agree
        // as maps on the presented groups.
        let mut arrows: BTreeMap<(usize, usize), Hom> = BTreeMap::new();
        for lo in 0..poset.len() {
            for hi in 0..poset.len() {
                if !poset.lt(lo, hi) {
                    continue;
                }
                let paths = cover_paths(&poset, lo, hi);
                let composites: Vec<Hom> = paths
                    .iter()
                    .map(|p| compose_path(&edges, variance, p))
                    .collect();
                for w in 1..composites.len() {
                    if !composites[0].eq_as_homs(&composites[w]) {
                        return Err(DiagramError::NotFunctorial {
                            from: poset.id(lo).into(),
                            to: poset.id(hi).into(),
                            path1: paths[0].iter().map(|&i| poset.id(i).to_string()).collect(),
                            path2: paths[w].iter().map(|&i| poset.id(i).to_string()).collect(),
                        });
                    }
                }
                arrows.insert(
                    (lo, hi),
                    composites.into_iter().next().expect("lt implies a path"),
                );
            }
        }

        Ok(Diagram {
            poset,
            variance,
            ring,
            objects,
            arrows,
        })
    }

    /// Constant diagram with identity arrows.
    pub fn constant(poset: FinPoset, variance: Variance, value: FgAbGroup) -> Self {
        let n = poset.len();
        let id = IntMat::identity(value.ngens());
        let mut edges = BTreeMap::new();
        for (lo, hi) in poset.covers() {
            edges.insert((lo, hi), id.clone());
        }
        Diagram::new(poset, variance, vec![value; n], edges)
            .expect("constant diagram is functorial")
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn object(&self, i: usize) -> &FgAbGroup {
        &self.objects[i]
    }

    pub fn objects(&self) -> &[FgAbGroup] {
        &self.objects
    }

    /// The arrow attached to a strict pair `lo < hi`; for `lo == hi` the
    /// identity. Covariant: `F(lo) -> F(hi)`; contravariant: `G(hi) -> G(lo)`.
    pub fn arrow(&self, lo: usize, hi: usize) -> Hom {
        if lo == hi {
            return Hom::identity(&self.objects[lo]);
        }
        self.arrows
            .get(&(lo, hi))
            .unwrap_or_else(|| panic!("arrow requested for incomparable pair ({lo}, {hi})"))
            .clone()
    }

    /// Restrict to an induced subposet (indices into this diagram's poset).
    /// Arrows of the restriction are the cached composite arrows, so new
    /// covers created by deleting middle elements are handled; functoriality
    /// is inherited, not re-verified.
    pub fn restrict(&self, members: &[usize]) -> Diagram {
        let sub = self.poset.induced(members);
        let objects: Vec<FgAbGroup> = members.iter().map(|&m| self.objects[m].clone()).collect();
        let mut arrows = BTreeMap::new();
        for lo in 0..sub.len() {
            for hi in 0..sub.len() {
                if sub.lt(lo, hi) {
                    arrows.insert((lo, hi), self.arrow(members[lo], members[hi]));
                }
            }
        }
        Diagram {
            poset: sub,
            variance: self.variance,
            ring: self.ring.clone(),
            objects,
            arrows,
        }
    }

    /// Sum of the images of all arrows from strictly below, as a subgroup of
    /// the object at `i`. The empty index set yields the zero subgroup.
    pub fn boundary_image(&self, i: usize) -> Subgroup {
        assert_eq!(
            self.variance,
            Variance::Covariant,
            "boundary_image needs a covariant diagram"
        );
        let target = &self.objects[i];
        let mut gens = IntMat::zeros(target.ngens(), 0);
        for j in 0..self.poset.len() {
            if self.poset.lt(j, i) {
                gens = gens.hstack(self.arrow(j, i).matrix());
            }
        }
        Subgroup::new(target.clone(), gens)
    }

    /// Intersection of the kernels of all arrows to strictly below, as a
    /// subgroup of the object at `j`. The empty index set yields the whole
    /// group.
    pub fn boundary_kernel(&self, j: usize) -> Subgroup {
        assert_eq!(
            self.variance,
            Variance::Contravariant,
            "boundary_kernel needs a contravariant diagram"
        );
        let here = &self.objects[j];
        let mut acc = Subgroup::full(here.clone());
        for k in 0..self.poset.len() {
            if self.poset.lt(k, j) {
                let ker = self.arrow(k, j).kernel();
                acc = intersect(&acc, &ker);
            }
        }
        acc
    }

    /// The colimit as the cokernel of the standard coequalizer map over
    /// covers, together with the cone.
    pub fn colimit_direct(&self) -> (FgAbGroup, Vec<Hom>) {
        assert_eq!(
            self.variance,
            Variance::Covariant,
            "colimit_direct needs a covariant diagram"
        );
        let parts: Vec<&FgAbGroup> = self.objects.iter().collect();
        let (total, offsets) = FgAbGroup::direct_sum_in(self.ring.clone(), &parts);
        let covers = self.poset.covers();
        let mut relator_cols = IntMat::zeros(total.ngens(), 0);
        for &(lo, hi) in &covers {
            let f = self.arrow(lo, hi);
            let nlo = self.objects[lo].ngens();
            let block = IntMat::from_fn(total.ngens(), nlo, |r, c| {
                if r >= offsets[lo] && r < offsets[lo] + nlo && r - offsets[lo] == c {
                    BigInt::one()
                } else if r >= offsets[hi] && r < offsets[hi] + self.objects[hi].ngens() {
                    -f.matrix()[(r - offsets[hi], c)].clone()
                } else {
                    BigInt::from(0)
                }
            });
            relator_cols = relator_cols.hstack(&block);
        }
        let colim = FgAbGroup::presented(
            self.ring.clone(),
            total.ngens(),
            total.rels().hstack(&relator_cols),
        );
        let cone: Vec<Hom> = (0..self.objects.len())
            .map(|k| {
                let nk = self.objects[k].ngens();
                let mat = IntMat::from_fn(colim.ngens(), nk, |r, c| {
                    if r >= offsets[k] && r < offsets[k] + nk && r - offsets[k] == c {
                        BigInt::one()
                    } else {
                        BigInt::from(0)
                    }
                });
                // well defined by construction: the summand's relations sit
                // inside the colimit presentation
                Hom::new_trusted(self.objects[k].clone(), colim.clone(), mat, BigInt::one())
            })
            .collect();
        (colim, cone)
    }

    /// The natural map from the colimit over the strict ray below `i` into
    /// the object at `i`.
    pub fn eps_map(&self, i: usize) -> Hom {
        assert_eq!(self.variance, Variance::Covariant);
        let members: Vec<usize> = (0..self.poset.len())
            .filter(|&j| self.poset.lt(j, i))
            .collect();
        let below = self.restrict(&members);
        let (colim, _cone) = below.colimit_direct();
        // generator blocks of the colimit map through the arrows into F(i)
        let target = &self.objects[i];
        let mut mat = IntMat::zeros(target.ngens(), 0);
        for &j in &members {
            mat = mat.hstack(self.arrow(j, i).matrix());
        }
        // cone compatibility makes the comparison map well defined
        Hom::new_trusted(colim, target.clone(), mat, BigInt::one())
    }

    /// The inverse limit over the strict ray below `i` (compatible-tuples
    /// kernel of the product over covers), plus the induced map from the
    /// object at `i`.
    pub fn lim_map(&self, i: usize) -> Hom {
        assert_eq!(self.variance, Variance::Contravariant);
        let members: Vec<usize> = (0..self.poset.len())
            .filter(|&j| self.poset.lt(j, i))
            .collect();
        let below = self.restrict(&members);
        let (lim, basis) = below.limit_direct();
        // tuple map from G(i): g |-> (arrow(j, i) g)_j, expressed in the
        // kernel-lattice basis
        let here = &self.objects[i];
        let mut tuple = IntMat::zeros(basis.total_gens, here.ngens());
        for g in 0..here.ngens() {
            for (slot, &j) in members.iter().enumerate() {
                let a = self.arrow(j, i); // G(i) -> G(j)
                for r in 0..self.objects[j].ngens() {
                    tuple[(basis.offsets[slot] + r, g)] = a.matrix()[(r, g)].clone();
                }
            }
        }
        let (coeffs, den) = basis
            .kernel_subgroup
            .express(&tuple)
            .expect("compatible tuples land in the limit lattice");
        Hom::new_trusted(here.clone(), lim, coeffs, den)
    }

    /// The inverse limit of the whole (contravariant) diagram: the subgroup
    /// of compatible tuples in the product, returned as an abstract group
    /// plus the bookkeeping needed to express tuples in it.
    pub fn limit_direct(&self) -> (FgAbGroup, LimitBasis) {
        assert_eq!(self.variance, Variance::Contravariant);
        let parts: Vec<&FgAbGroup> = self.objects.iter().collect();
        let (total, offsets) = FgAbGroup::direct_sum_in(self.ring.clone(), &parts);
        let covers = self.poset.covers();
        // compatibility map: x |-> (x_lo - arrow(lo, hi)(x_hi)) over covers
        let outs: Vec<&FgAbGroup> = covers.iter().map(|&(lo, _)| &self.objects[lo]).collect();
        let (out_group, out_offsets) = FgAbGroup::direct_sum_in(self.ring.clone(), &outs);
        let mut mat = IntMat::zeros(out_group.ngens(), total.ngens());
        for (ci, &(lo, hi)) in covers.iter().enumerate() {
            let nlo = self.objects[lo].ngens();
            let a = self.arrow(lo, hi); // G(hi) -> G(lo)
            for r in 0..nlo {
                mat[(out_offsets[ci] + r, offsets[lo] + r)] = BigInt::one();
                for c in 0..self.objects[hi].ngens() {
                    mat[(out_offsets[ci] + r, offsets[hi] + c)] = -a.matrix()[(r, c)].clone();
                }
            }
        }
        // blockwise arrow images keep relations inside relations
        let hom = Hom::new_trusted(total.clone(), out_group, mat, BigInt::one());
        let kernel = hom.kernel();
        let (lim, _incl) = kernel.as_group();
        (
            lim,
            LimitBasis {
                total_gens: total.ngens(),
                offsets,
                kernel_subgroup: kernel,
            },
        )
    }
}

/// Bookkeeping for expressing product tuples inside a computed limit.
pub struct LimitBasis {
    pub total_gens: usize,
    pub offsets: Vec<usize>,
    pub kernel_subgroup: Subgroup,
}

/// Intersection of two subgroups of the same ambient group:
/// pullback of the two generator lattices.
pub fn intersect(a: &Subgroup, b: &Subgroup) -> Subgroup {
    assert!(a.ambient().same_group(b.ambient()));
    let rels = a.ambient().effective_rels();
    let la = a.gens().hstack(&rels);
    let lb = b.gens().hstack(&rels);
    let paired = la.hstack(&-&lb);
    let k = paired.kernel_basis();
    let idx: Vec<usize> = (0..la.cols()).collect();
    let coeffs = k.select_rows(&idx);
    let gens = &la * &coeffs;
    Subgroup::new(a.ambient().clone(), gens)
}

fn cover_paths(poset: &FinPoset, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    // all saturated chains lo = c0 < c1 < ... < ck = hi along covers
    let covers = poset.covers();
    let mut out = Vec::new();
    let mut stack = vec![vec![lo]];
    while let Some(path) = stack.pop() {
        let last = *path.last().expect("nonempty");
        if last == hi {
            out.push(path);
            continue;
        }
        for &(a, b) in &covers {
            if a == last && poset.leq(b, hi) {
                let mut next = path.clone();
                next.push(b);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

fn compose_path(edges: &BTreeMap<(usize, usize), Hom>, variance: Variance, path: &[usize]) -> Hom {
    let steps: Vec<Hom> = path
        .windows(2)
        .map(|w| {
            edges
                .get(&(w[0], w[1]))
                .expect("cover edge present")
                .clone()
        })
        .collect();
    match variance {
        Variance::Covariant => {
            let mut acc = steps[0].clone();
            for s in &steps[1..] {
                acc = s.compose(&acc).expect("path composes");
            }
            acc
        }
        Variance::Contravariant => {
            // edge (lo, hi) is G(hi) -> G(lo); the composite down a path
            // applies the top edge first
            let mut acc = steps.last().expect("nonempty path").clone();
            for s in steps[..steps.len() - 1].iter().rev() {
                acc = s.compose(&acc).expect("path composes");
            }
            acc
        }
    }
}

/// A formal direct-sum element: one coordinate vector per poset element,
/// zero vectors omitted or present indifferently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    pub components: BTreeMap<usize, IntMat>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum {
            components: BTreeMap::new(),
        }
    }

    pub fn single(at: usize, value: IntMat) -> Self {
        let mut components = BTreeMap::new();
        components.insert(at, value);
        FormalSum { components }
    }

    pub fn component(&self, at: usize, ngens: usize) -> IntMat {
        self.components
            .get(&at)
            .cloned()
            .unwrap_or_else(|| IntMat::zeros(ngens, 1))
    }

    pub fn add_at(&mut self, at: usize, value: &IntMat) {
        match self.components.get_mut(&at) {
            Some(v) => *v = &*v + value,
            None => {
                self.components.insert(at, value.clone());
            }
        }
    }

    /// Support: elements whose component is nonzero in the corresponding
    /// group (relations are taken into account).
    pub fn support(&self, d: &Diagram) -> Vec<usize> {
        self.components
            .iter()
            .filter(|(&at, v)| !d.object(at).is_zero_elem(v))
            .map(|(&at, _)| at)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::Ring;

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn zg() -> FgAbGroup {
        FgAbGroup::free(Ring::Z, 1)
    }

    fn square_poset() -> FinPoset {
        FinPoset::from_covers(
            ids(&["bot", "m1", "m2", "top"]),
            &[
                ("bot".into(), "m1".into()),
                ("bot".into(), "m2".into()),
                ("m1".into(), "top".into()),
                ("m2".into(), "top".into()),
            ],
        )
        .unwrap()
    }

    fn scalar(v: i64) -> IntMat {
        IntMat::from_rows(&[vec![v]])
    }

    #[test]
    fn constant_diagram_is_valid() {
        let p = square_poset();
        let d = Diagram::constant(p, Variance::Covariant, zg());
        assert_eq!(d.objects().len(), 4);
    }

    #[test]
    fn commuting_square_validates_noncommuting_fails() {
        let p = square_poset();
        let mk = |a: i64, b: i64, c: i64, d2: i64| {
            let mut edges = BTreeMap::new();
            edges.insert((0, 1), scalar(a));
            edges.insert((0, 2), scalar(b));
            edges.insert((1, 3), scalar(c));
            edges.insert((2, 3), scalar(d2));
            Diagram::new(p.clone(), Variance::Covariant, vec![zg(); 4], edges)
        };
        // x2 then x3 vs x3 then x2: both x6
        assert!(mk(2, 3, 3, 2).is_ok());
        // x2 then x3 vs x5 then x1: 6 != 5 on Z
        let err = mk(2, 5, 3, 1).unwrap_err();
        assert!(matches!(err, DiagramError::NotFunctorial { .. }));
    }

    #[test]
    fn boundary_image_examples() {
        // chain j < i with multiplication by 2: at the top the image is 2Z
        let p = FinPoset::from_covers(ids(&["j", "i"]), &[("j".into(), "i".into())]).unwrap();
        let mut edges = BTreeMap::new();
        edges.insert((0, 1), scalar(2));
        let d = Diagram::new(p, Variance::Covariant, vec![zg(), zg()], edges).unwrap();
        let im = d.boundary_image(1);
        assert!(im.contains_element(&scalar(2)));
        assert!(!im.contains_element(&scalar(1)));
        // at the minimum the sum is empty
        assert!(d.boundary_image(0).is_zero_subgroup());
    }

    #[test]
    fn boundary_kernel_examples() {
        // contravariant: j above two incomparable lower elements, the two
        // arrows kill the two coordinates of Z^2, so the kernels intersect
        // to zero
        let p = FinPoset::from_covers(
            ids(&["k1", "k2", "j"]),
            &[("k1".into(), "j".into()), ("k2".into(), "j".into())],
        )
        .unwrap();
        let z2 = FgAbGroup::free(Ring::Z, 2);
        let mut edges = BTreeMap::new();
        edges.insert((0, 2), IntMat::from_rows(&[vec![1, 0]])); // G(j) -> G(k1)
        edges.insert((1, 2), IntMat::from_rows(&[vec![0, 1]])); // G(j) -> G(k2)
        let d = Diagram::new(p, Variance::Contravariant, vec![zg(), zg(), z2], edges).unwrap();
        assert!(d.boundary_kernel(2).is_zero_subgroup());
        // at a minimal element the empty intersection is everything
        let bk = d.boundary_kernel(0);
        assert!(bk.contains_element(&scalar(1)));

        // a single mod-2 arrow below j leaves kernel 2Z
        let p2 = FinPoset::from_covers(ids(&["k", "j"]), &[("k".into(), "j".into())]).unwrap();
        let mut e2 = BTreeMap::new();
        e2.insert((0, 1), scalar(1)); // G(j)=Z -> G(k)=Z/2 reduction
        let d2 = Diagram::new(
            p2,
            Variance::Contravariant,
            vec![FgAbGroup::cyclic(Ring::Z, 2), zg()],
            e2,
        )
        .unwrap();
        let bk = d2.boundary_kernel(1);
        assert!(bk.contains_element(&scalar(2)));
        assert!(!bk.contains_element(&scalar(1)));
    }

    #[test]
    fn colimit_of_span() {
        // p1 <- p0 -> p2 with maps x2 and x3 into Z: colimit is Z
        let p = FinPoset::from_covers(
            ids(&["p0", "p1", "p2"]),
            &[("p0".into(), "p1".into()), ("p0".into(), "p2".into())],
        )
        .unwrap();
        let mut edges = BTreeMap::new();
        edges.insert((0, 1), scalar(2));
        edges.insert((0, 2), scalar(3));
        let d = Diagram::new(p.clone(), Variance::Covariant, vec![zg(); 3], edges).unwrap();
        let (colim, cone) = d.colimit_direct();
        assert_eq!(colim, zg());
        // cone commutes over the covers
        let via_p1 = cone[1].compose(&d.arrow(0, 1)).unwrap();
        assert!(via_p1.eq_as_homs(&cone[0]));

        // zero middle objects collapse the colimit
        let mut e0 = BTreeMap::new();
        e0.insert((0, 1), IntMat::zeros(0, 1));
        e0.insert((0, 2), IntMat::zeros(0, 1));
        let z0 = FgAbGroup::zero(Ring::Z);
        let d0 = Diagram::new(p, Variance::Covariant, vec![zg(), z0.clone(), z0], e0).unwrap();
        assert!(d0.colimit_direct().0.is_zero_group());
    }

    #[test]
    fn colimit_of_singleton() {
        let p = FinPoset::from_covers(ids(&["x"]), &[]).unwrap();
        let d = Diagram::constant(p, Variance::Covariant, FgAbGroup::cyclic(Ring::Z, 6));
        let (colim, cone) = d.colimit_direct();
        assert_eq!(colim, FgAbGroup::cyclic(Ring::Z, 6));
        assert!(cone[0].is_injective() && cone[0].is_surjective());
    }

    #[test]
    fn colimit_with_maximum_is_top_object() {
        let p = square_poset();
        let mut edges = BTreeMap::new();
        edges.insert((0, 1), scalar(2));
        edges.insert((0, 2), scalar(3));
        edges.insert((1, 3), scalar(3));
        edges.insert((2, 3), scalar(2));
        let d = Diagram::new(p, Variance::Covariant, vec![zg(); 4], edges).unwrap();
        let (colim, cone) = d.colimit_direct();
        assert_eq!(colim.canon(), d.object(3).canon());
        assert!(cone[3].is_isomorphism());
    }

    #[test]
    fn eps_map_examples() {
        // minimal element: map from the zero group
        let p = FinPoset::from_covers(ids(&["j", "i"]), &[("j".into(), "i".into())]).unwrap();
        let mut edges = BTreeMap::new();
        edges.insert((0, 1), scalar(0));
        let d = Diagram::new(p, Variance::Covariant, vec![zg(), zg()], edges).unwrap();
        let at_min = d.eps_map(0);
        assert!(at_min.src().is_zero_group());
        // zero edge: eps at the top is the zero map from colim = Z
        let at_top = d.eps_map(1);
        assert_eq!(at_top.src(), &zg());
        assert!(at_top.is_zero_hom());
    }

    #[test]
    fn eps_on_connected_constant_ray() {
        // constant Z on the case-study poset: the strict ray below a top
        // element is connected, so eps is an isomorphism Z -> Z
        let p = crate::groups::bianchi_poset();
        let d = Diagram::constant(p.clone(), Variance::Covariant, zg());
        let cd = p.index_of("cd").unwrap();
        let eps = d.eps_map(cd);
        assert!(eps.is_isomorphism());
    }

    #[test]
    fn arrow_transitivity() {
        let p = square_poset();
        let mut edges = BTreeMap::new();
        edges.insert((0, 1), scalar(2));
        edges.insert((0, 2), scalar(3));
        edges.insert((1, 3), scalar(3));
        edges.insert((2, 3), scalar(2));
        let d = Diagram::new(p, Variance::Covariant, vec![zg(); 4], edges).unwrap();
        let via = d.arrow(1, 3).compose(&d.arrow(0, 1)).unwrap();
        assert!(via.eq_as_homs(&d.arrow(0, 3)));
    }

    #[test]
    fn limit_of_discrete_pair() {
        let p = FinPoset::from_covers(ids(&["x", "y"]), &[]).unwrap();
        let d = Diagram::constant(p, Variance::Contravariant, zg());
        let (lim, _) = d.limit_direct();
        assert_eq!(lim, FgAbGroup::free(Ring::Z, 2));
    }

    #[test]
    fn boundary_image_equals_eps_image() {
        let p = square_poset();
        let mut edges = BTreeMap::new();
        edges.insert((0, 1), scalar(2));
        edges.insert((0, 2), scalar(3));
        edges.insert((1, 3), scalar(3));
        edges.insert((2, 3), scalar(2));
        let d = Diagram::new(p, Variance::Covariant, vec![zg(); 4], edges).unwrap();
        for i in 0..4 {
            let bi = d.boundary_image(i);
            let ei = d.eps_map(i).image();
            assert!(bi.equals(&ei).unwrap());
        }
    }
}
