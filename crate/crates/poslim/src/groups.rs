//! Finite groups, their subgroup posets, the augmentation-kernel functor on
//! a subgroup poset, and the shipped case-study data.

use crate::abgrp::{FgAbGroup, Ring};
use crate::diagram::{Diagram, Variance};
use crate::matrix::IntMat;
use crate::poset::FinPoset;
use crate::spectral::GradedDiagram;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum GroupError {
    #[error("multiplication table is not square")]
    BadTable,
    #[error("table entry out of range at ({0}, {1})")]
    OutOfRange(usize, usize),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("subgroup {0} is not closed under multiplication")]
    NotASubgroup(usize),
}

/// A finite group as a multiplication table over element ids `0..order`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(mult: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mult.len();
        if mult.iter().any(|row| row.len() != n) {
            return Err(GroupError::BadTable);
        }
        for (a, row) in mult.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::OutOfRange(a, b));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                .ok_or(GroupError::NoInverse(a))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            mult,
            identity,
            inverses,
        })
    }

    /// Close a set of permutations (images of `0..degree`) under composition
    /// and build the multiplication table. Element ids follow the sorted
    /// order of the permutations, so construction is deterministic.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert(id);
        loop {
            let mut new = Vec::new();
            for e in &elems {
                for g in gens {
                    let prod: Vec<usize> = (0..degree).map(|x| g[e[x]]).collect();
                    if !elems.contains(&prod) {
                        new.push(prod);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            elems.extend(new);
        }
        let list: Vec<Vec<usize>> = elems.into_iter().collect();
        let index: BTreeMap<&Vec<usize>, usize> =
            list.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = list.len();
        let mut mult = vec![vec![0; n]; n];
        #[allow(clippy::needless_range_loop)]
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| list[a][list[b][x]]).collect();
                mult[a][b] = index[&prod];
            }
        }
        Self::from_table(mult)
    }

    pub fn cyclic(n: usize) -> Self {
        let mult: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(mult).expect("cyclic table is a group")
    }

    pub fn klein_four() -> Self {
        // Z/2 x Z/2 with ids as bit pairs
        let mult: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::from_table(mult).expect("klein table is a group")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    pub fn alternating4() -> Self {
        Self::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.mult
    }

    /// Subgroup generated by the listed elements.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        for &g in gens {
            set.insert(g);
        }
        loop {
            let mut new = Vec::new();
            for &a in &set {
                for &b in &set {
                    let p = self.mult[a][b];
                    if !set.contains(&p) {
                        new.push(p);
                    }
                }
            }
            if new.is_empty() {
                return set;
            }
            set.extend(new);
        }
    }

    fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&self.identity)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mult[a][b])))
    }

    /// Every subgroup: the join-closure of the cyclic subgroups.
    pub fn all_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut subs: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        subs.insert([self.identity].into_iter().collect());
        for g in 0..self.order {
            subs.insert(self.closure(&[g]));
        }
        loop {
            let list: Vec<BTreeSet<usize>> = subs.iter().cloned().collect();
            let mut grew = false;
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    let union: Vec<usize> = list[i].union(&list[j]).copied().collect();
                    let joined = self.closure(&union);
                    if subs.insert(joined) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<BTreeSet<usize>> = subs.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        out
    }

    /// Right cosets of a subgroup, each sorted, ordered by representative.
    pub fn right_cosets(&self, sub: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut cosets = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = sub.iter().map(|&u| self.mult[u][g]).collect();
            coset.sort_unstable();
            coset.dedup();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

/// A named subgroup with its closed element set.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    pub name: String,
    pub elements: BTreeSet<usize>,
}

/// Order a list of (validated) subgroups by containment. Duplicate element
/// sets collapse to the first name mentioning them.
pub fn subgroup_poset(
    g: &FiniteGroup,
    subs: &[(String, Vec<usize>)],
) -> Result<(FinPoset, Vec<SubgroupSpec>), GroupError> {
    let mut specs: Vec<SubgroupSpec> = Vec::new();
    for (idx, (name, elements)) in subs.iter().enumerate() {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if !g.is_subgroup(&set) {
            return Err(GroupError::NotASubgroup(idx));
        }
        if !specs.iter().any(|s| s.elements == set) {
            specs.push(SubgroupSpec {
                name: name.clone(),
                elements: set,
            });
        }
    }
    let n = specs.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = specs[i].elements.is_subset(&specs[j].elements);
        }
    }
    let ids = specs.iter().map(|s| s.name.clone()).collect();
    let poset = FinPoset::from_relation(ids, leq).expect("containment is a partial order");
    Ok((poset, specs))
}

/// The functor sending a subgroup U to the coset-wise augmentation kernel
/// inside the group ring: elements of Z[G] whose coefficient sum over every
/// right coset of U vanishes. Free of rank |G| - [G:U]; inclusions of
/// subgroups go to inclusions of kernels.
///
/// Basis at U: for each right coset with representative r, the vectors
/// `u*r - r` over the non-identity elements u of U.
pub fn kernel_functor(
    g: &FiniteGroup,
    poset: &FinPoset,
    specs: &[SubgroupSpec],
) -> Result<Diagram, GroupError> {
    assert_eq!(poset.len(), specs.len());
    let bases: Vec<Vec<(usize, usize)>> = specs.iter().map(|s| basis_of(g, &s.elements)).collect();
    let objects: Vec<FgAbGroup> = bases
        .iter()
        .map(|b| FgAbGroup::free(Ring::Z, b.len()))
        .collect();

    let mut edges = BTreeMap::new();
    for (lo, hi) in poset.covers() {
        let mat = inclusion_matrix(g, &bases[lo], &specs[hi].elements, &bases[hi]);
        edges.insert((lo, hi), mat);
    }
    Diagram::new(poset.clone(), Variance::Covariant, objects, edges)
        .map_err(|_| GroupError::NotASubgroup(0))
}

/// Ambient group-ring coordinates of a kernel basis vector.
pub fn basis_vector_ambient(g: &FiniteGroup, (rep, u): (usize, usize)) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); g.order()];
    let x = g.mul(u, rep);
    v[x] += 1;
    v[rep] -= 1;
    v
}

fn basis_of(g: &FiniteGroup, sub: &BTreeSet<usize>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for coset in g.right_cosets(sub) {
        let rep = coset[0];
        for &u in sub.iter() {
            if u != g.identity() {
                out.push((rep, u));
            }
        }
    }
    out
}

fn inclusion_matrix(
    g: &FiniteGroup,
    lo_basis: &[(usize, usize)],
    hi_sub: &BTreeSet<usize>,
    hi_basis: &[(usize, usize)],
) -> IntMat {
    let hi_cosets = g.right_cosets(hi_sub);
    let rep_of = |x: usize| -> usize {
        hi_cosets
            .iter()
            .find(|c| c.contains(&x))
            .expect("cosets partition the group")[0]
    };
    let slot: BTreeMap<(usize, usize), usize> =
        hi_basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut mat = IntMat::zeros(hi_basis.len(), lo_basis.len());
    for (col, &(rep, u)) in lo_basis.iter().enumerate() {
        let x = g.mul(u, rep);
        let s = rep_of(rep);
        debug_assert_eq!(s, rep_of(x), "a small coset stays inside its big coset");
        // e_x - e_rep = (e_x - e_s) - (e_rep - e_s)
        for (elem, sign) in [(x, 1i64), (rep, -1i64)] {
            if elem == s {
                continue;
            }
            let v = g.mul(elem, g.inv(s));
            debug_assert!(hi_sub.contains(&v));
            let row = slot[&(s, v)];
            let cur = mat[(row, col)].clone();
            mat[(row, col)] = cur + BigInt::from(sign);
        }
    }
    mat
}

/// The ten-element subgroup poset of the case study: a minimum below four
/// cyclic subgroups, each cyclic subgroup below the two-generator subgroups
/// containing its generator. Cover edges transcribed from the source
/// diagram; the memberships for audit: a in ac, ad; c in ac, cd, bc;
/// d in ad, cd, bd; b in bc, bd.
pub fn bianchi_poset() -> FinPoset {
    let ids: Vec<String> = ["1", "a", "c", "d", "b", "ac", "ad", "cd", "bc", "bd"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let cov = |lo: &str, hi: &str| (lo.to_string(), hi.to_string());
    FinPoset::from_covers(
        ids,
        &[
            cov("1", "a"),
            cov("1", "c"),
            cov("1", "d"),
            cov("1", "b"),
            cov("a", "ac"),
            cov("a", "ad"),
            cov("c", "ac"),
            cov("c", "cd"),
            cov("c", "bc"),
            cov("d", "ad"),
            cov("d", "cd"),
            cov("d", "bd"),
            cov("b", "bc"),
            cov("b", "bd"),
        ],
    )
    .expect("case-study poset is valid")
}

/// The shipped case-study fixture: the ten-element poset together with the
/// integral homology layers q = 0..=5 of the subgroups, as a graded diagram.
pub struct BianchiFixtures {
    pub poset: FinPoset,
    pub graded: GradedDiagram,
    pub notes: &'static str,
}

/// Documentation record shipped with the fixture: where every number comes
/// from, so the data can be audited independently.
pub const BIANCHI_NOTES: &str = "\
Ambient group: <a, b, c, d | a^3 = b^2 = c^3 = d^2 = (ac)^2 = (ad)^2 = (bc)^2 = (bd)^2 = 1>.
Subgroup identifications: <a,c> = A4 (alternating on 4 letters),
<a,d> = <b,c> = S3 (symmetric on 3 letters), <b,d> = K (Klein four-group),
<c,d> = free product (Z/3) * (Z/2); <a>, <c> cyclic of order 3; <b>, <d> of order 2.
Poset: inclusion order of the ten subgroups; cover edges transcribed from the
source Hasse diagram; maximal-subgroup memberships listed at bianchi_poset for audit.

Layer values (integral group homology, trivial coefficients):
  cyclic C_n: H_q = Z/n for odd q, 0 for even q > 0 (2-periodic resolution).
  K = C2 x C2: Kunneth from the periodic resolutions of the factors:
    H_1 = (Z/2)^2, H_2 = Z/2, H_3 = (Z/2)^3, H_4 = (Z/2)^2, H_5 = (Z/2)^4.
    Basis order used here: factor classes first (b-slot, then d-slot), then
    torsion-product classes.
  S3: H_q = Z/2 (q = 1 mod 4), 0 (even q > 0), Z/6 (q = 3 mod 4); 4-periodic.
  (Z/3)*(Z/2): H_q(free product) = H_q(C3) + H_q(C2) for q >= 1.
  A4: H_1 = Z/3, H_2 = Z/2, H_3 = Z/6, H_4 = 0, H_5 = Z/2 + Z/6.
    2-part: C3-invariants of H_*(K) (the Sylow 2-subgroup K is normal);
    3-part: the Sylow 3-subgroup is self-normalizing, so all of H_odd(C3)
    survives.

Layer maps (induced by inclusion; derivation oracle per map):
  degree 1 is abelianization, computed directly from the presentations; in
  particular c = a^2 modulo the commutator subgroup of A4, giving the
  multiplication-by-2 map on the order-3 part at q = 1.
  <a> -> A4 is an isomorphism onto the 3-torsion (transfer argument, index 4
  invertible mod 3); the generator of the 3-part of H_odd(A4) is chosen as
  that image.
  <c> -> A4 factors through conjugation onto <a>; conjugation acts as the
  automorphism x -> x^2 of C3, which multiplies H_{2j-1}(C3) by 2^j:
  so x2 at q = 1, 5 and x1 at q = 3.
  C2 -> S3 and C2, C3 -> (Z/3)*(Z/2): isomorphisms onto the matching torsion
  (coprime index; a free-product inclusion is a direct summand).
  C3 -> S3: onto the 3-part when it survives (q = 3 mod 4), zero otherwise.
  C2 -> K: factor inclusions hit the factor classes of the Kunneth basis;
  torsion-product classes are not hit.
  Everything out of the trivial subgroup is zero in positive degrees.";

pub fn bianchi_fixtures() -> BianchiFixtures {
    let poset = bianchi_poset();
    let e = |name: &str| poset.index_of(name).expect("fixture id");
    let one = e("1");
    let a = e("a");
    let c = e("c");
    let d = e("d");
    let b = e("b");
    let ac = e("ac");
    let ad = e("ad");
    let cd = e("cd");
    let bc = e("bc");
    let bd = e("bd");

    let zero = FgAbGroup::zero(Ring::Z);
    let z = FgAbGroup::free(Ring::Z, 1);
    let t = |factors: &[u64]| FgAbGroup::from_invariants(Ring::Z, 0, factors);
    let col = |vals: &[i64]| IntMat::from_fn(vals.len(), 1, |i, _| BigInt::from(vals[i]));

    let mut layers = BTreeMap::new();
    layers.insert(0, Diagram::constant(poset.clone(), Variance::Covariant, z));

    let build = |values: Vec<FgAbGroup>, maps: Vec<((usize, usize), IntMat)>| -> Diagram {
        let mut edges: BTreeMap<(usize, usize), IntMat> = BTreeMap::new();
        for &mid in &[a, c, d, b] {
            edges.insert((one, mid), IntMat::zeros(values[mid].ngens(), 0));
        }
        for (pair, m) in maps {
            edges.insert(pair, m);
        }
        Diagram::new(poset.clone(), Variance::Covariant, values, edges)
            .expect("fixture layer is functorial")
    };

    // q = 1
    {
        let mut values = vec![zero.clone(); poset.len()];
        values[a] = t(&[3]);
        values[c] = t(&[3]);
        values[d] = t(&[2]);
        values[b] = t(&[2]);
        values[ac] = t(&[3]);
        values[ad] = t(&[2]);
        values[cd] = t(&[3, 2]);
        values[bc] = t(&[2]);
        values[bd] = t(&[2, 2]);
        let maps = vec![
            ((a, ac), col(&[1])),
            ((c, ac), col(&[2])),
            ((a, ad), col(&[0])),
            ((d, ad), col(&[1])),
            ((c, cd), col(&[1, 0])),
            ((d, cd), col(&[0, 1])),
            ((c, bc), col(&[0])),
            ((b, bc), col(&[1])),
            ((d, bd), col(&[0, 1])),
            ((b, bd), col(&[1, 0])),
        ];
        layers.insert(1, build(values, maps));
    }

    // q = 2: only the A4 and Klein corners survive
    {
        let mut values = vec![zero.clone(); poset.len()];
        values[ac] = t(&[2]);
        values[bd] = t(&[2]);
        let maps = vec![
            ((a, ac), IntMat::zeros(1, 0)),
            ((c, ac), IntMat::zeros(1, 0)),
            ((a, ad), IntMat::zeros(0, 0)),
            ((d, ad), IntMat::zeros(0, 0)),
            ((c, cd), IntMat::zeros(0, 0)),
            ((d, cd), IntMat::zeros(0, 0)),
            ((c, bc), IntMat::zeros(0, 0)),
            ((b, bc), IntMat::zeros(0, 0)),
            ((d, bd), IntMat::zeros(1, 0)),
            ((b, bd), IntMat::zeros(1, 0)),
        ];
        layers.insert(2, build(values, maps));
    }

    // q = 3
    {
        let mut values = vec![zero.clone(); poset.len()];
        values[a] = t(&[3]);
        values[c] = t(&[3]);
        values[d] = t(&[2]);
        values[b] = t(&[2]);
        values[ac] = t(&[3, 2]);
        values[ad] = t(&[3, 2]);
        values[cd] = t(&[3, 2]);
        values[bc] = t(&[3, 2]);
        values[bd] = t(&[2, 2, 2]);
        let maps = vec![
            ((a, ac), col(&[1, 0])),
            ((c, ac), col(&[1, 0])),
            ((a, ad), col(&[1, 0])),
            ((d, ad), col(&[0, 1])),
            ((c, cd), col(&[1, 0])),
            ((d, cd), col(&[0, 1])),
            ((c, bc), col(&[1, 0])),
            ((b, bc), col(&[0, 1])),
            ((d, bd), col(&[0, 1, 0])),
            ((b, bd), col(&[1, 0, 0])),
        ];
        layers.insert(3, build(values, maps));
    }

    // q = 4: only the Klein corner survives
    {
        let mut values = vec![zero.clone(); poset.len()];
        values[bd] = t(&[2, 2]);
        let maps = vec![
            ((a, ac), IntMat::zeros(0, 0)),
            ((c, ac), IntMat::zeros(0, 0)),
            ((a, ad), IntMat::zeros(0, 0)),
            ((d, ad), IntMat::zeros(0, 0)),
            ((c, cd), IntMat::zeros(0, 0)),
            ((d, cd), IntMat::zeros(0, 0)),
            ((c, bc), IntMat::zeros(0, 0)),
            ((b, bc), IntMat::zeros(0, 0)),
            ((d, bd), IntMat::zeros(2, 0)),
            ((b, bd), IntMat::zeros(2, 0)),
        ];
        layers.insert(4, build(values, maps));
    }

    // q = 5
    {
        let mut values = vec![zero.clone(); poset.len()];
        values[a] = t(&[3]);
        values[c] = t(&[3]);
        values[d] = t(&[2]);
        values[b] = t(&[2]);
        values[ac] = t(&[3, 2, 2]);
        values[ad] = t(&[2]);
        values[cd] = t(&[3, 2]);
        values[bc] = t(&[2]);
        values[bd] = t(&[2, 2, 2, 2]);
        let maps = vec![
            ((a, ac), col(&[1, 0, 0])),
            ((c, ac), col(&[2, 0, 0])),
            ((a, ad), col(&[0])),
            ((d, ad), col(&[1])),
            ((c, cd), col(&[1, 0])),
            ((d, cd), col(&[0, 1])),
            ((c, bc), col(&[0])),
            ((b, bc), col(&[1])),
            ((d, bd), col(&[0, 1, 0, 0])),
            ((b, bd), col(&[1, 0, 0, 0])),
        ];
        layers.insert(5, build(values, maps));
    }

    let graded = GradedDiagram::new(poset.clone(), layers).expect("fixture layers share the poset");
    BianchiFixtures {
        poset,
        graded,
        notes: BIANCHI_NOTES,
    }
}

/// Statement-only record of the sufficient condition for the kernel functor
/// to lift relations at a subgroup. Machine-checking its hypothesis needs
/// group-presentation algorithms, which are out of scope; finite instances
/// should run the relation-lifting checker directly.
pub fn amalgamation_hypothesis_note() -> &'static str {
    "Sufficient condition (not machine-checked): if for every finite subset J \
of the ray below U, the subgroup generated by max J is the free product of \
the members of max J amalgamated over their common intersection, and that \
intersection belongs to the poset, then the kernel functor lifts relations \
at U. Checking the hypothesis requires group-presentation algorithms; use \
the direct relation-lifting checker on finite instances instead."
}
