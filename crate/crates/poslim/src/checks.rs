//! The four acyclicity decision procedures — injective-comparison
//! ("cofibrant"), relation-lifting ("pseudo-projective"), surjective-
//! comparison ("fibrant"), tuple-realization ("pseudo-injective") — plus
//! zero-class certificates and the randomized cross-check harness tying
//! them together.

use crate::abgrp::{FgAbGroup, Hom, Ring, Subgroup};
use crate::derived::{is_acyclic, Side};
use crate::diagram::{Diagram, FormalSum, Variance};
use crate::matrix::IntMat;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Only the bounded automorphism searches of the Mackey checker can be
    /// inconclusive; the four main procedures are always decisive.
    Undetermined,
}

impl Verdict {
    pub fn as_bool(self) -> bool {
        self == Verdict::Holds
    }

    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Undetermined, _) | (_, Undetermined) => Undetermined,
            _ => Holds,
        }
    }
}

/// A concrete, re-verifiable reason for a failure.
#[derive(Clone, Debug)]
pub enum FailureWitness {
    /// A nonzero class of the colimit over the strict ray that dies in the
    /// object: components sum to zero yet the class is nonzero.
    EpsKernelClass { at: usize, class: FormalSum },
    /// A relation over the union of rays below an antichain whose component
    /// at `component` escapes the boundary image there.
    EscapedComponent {
        at: usize,
        antichain: Vec<usize>,
        component: usize,
        relation: FormalSum,
    },
    /// A compatible tuple over the strict ray not hit by any single element.
    NotEpi { at: usize, tuple: FormalSum },
    /// A tuple of boundary-kernel elements over an antichain that no single
    /// element realizes.
    UnreachableTuple {
        at: usize,
        antichain: Vec<usize>,
        tuple: FormalSum,
    },
    /// A violated clause of a Mackey-structure validation.
    MackeyClause {
        clause: &'static str,
        i: usize,
        j: usize,
        k: Option<usize>,
    },
    /// An edge that fails injectivity in a monicity check.
    NotMonic { lo: usize, hi: usize },
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub witness: Option<FailureWitness>,
}

impl CheckReport {
    pub fn holds() -> Self {
        CheckReport {
            verdict: Verdict::Holds,
            witness: None,
        }
    }

    pub fn fails(witness: FailureWitness) -> Self {
        CheckReport {
            verdict: Verdict::Fails,
            witness: Some(witness),
        }
    }

    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Is the comparison map from the colimit over the strict ray below `i`
/// injective?
pub fn is_cofibrant_at(d: &Diagram, i: usize) -> CheckReport {
    assert_eq!(d.variance(), Variance::Covariant);
    let eps = d.eps_map(i);
    let kernel = eps.kernel();
    let colim = eps.src();
    for t in 0..kernel.gens().cols() {
        let col = IntMat::from_col(&kernel.gens().col(t));
        if !colim.is_zero_elem(&col) {
            // colimit generators are the stacked generators of the ray
            // objects, so the column splits into a formal sum
            let members: Vec<usize> = (0..d.poset().len())
                .filter(|&j| d.poset().lt(j, i))
                .collect();
            let class = unstack(d, &members, &col);
            return CheckReport::fails(FailureWitness::EpsKernelClass { at: i, class });
        }
    }
    CheckReport::holds()
}

/// Conjunction over all elements, reporting the least failing element in
/// rank order.
pub fn is_cofibrant(d: &Diagram) -> CheckReport {
    for i in d.poset().rank_order() {
        let r = is_cofibrant_at(d, i);
        if !r.is_true() {
            return r;
        }
    }
    CheckReport::holds()
}

/// Relation-lifting at `i`: for every antichain A of the non-strict ray,
/// every relation over the union of the rays below A has its components at
/// the members of A inside the boundary images there. Subgroup projection
/// and containment decide this exactly; no elements are enumerated.
pub fn is_pseudo_projective_at(d: &Diagram, i: usize) -> CheckReport {
    assert_eq!(d.variance(), Variance::Covariant);
    for antichain in d.poset().antichains_below(i) {
        if antichain.members.is_empty() {
            continue;
        }
        let closure: Vec<usize> = (0..d.poset().len())
            .filter(|&j| antichain.members.iter().any(|&a| d.poset().leq(j, a)))
            .collect();
        let (kernel, offsets) = relation_kernel(d, &closure, i);
        for &a in &antichain.members {
            let slot = closure
                .iter()
                .position(|&j| j == a)
                .expect("member of closure");
            let na = d.object(a).ngens();
            let rows: Vec<usize> = (offsets[slot]..offsets[slot] + na).collect();
            let proj = Subgroup::new(d.object(a).clone(), kernel.select_rows(&rows));
            let target = d.boundary_image(a);
            if !target.contains(&proj).expect("same ambient") {
                // at least one kernel generator escapes; find it for the witness
                for t in 0..kernel.cols() {
                    let col = IntMat::from_col(&kernel.col(t));
                    let comp = IntMat::from_fn(na, 1, |r, _| col[(offsets[slot] + r, 0)].clone());
                    if !target.contains_element(&comp) {
                        let relation = unstack(d, &closure, &col);
                        return CheckReport::fails(FailureWitness::EscapedComponent {
                            at: i,
                            antichain: antichain.members.clone(),
                            component: a,
                            relation,
                        });
                    }
                }
                unreachable!("an escaping span has an escaping generator");
            }
        }
    }
    CheckReport::holds()
}

pub fn is_pseudo_projective(d: &Diagram) -> CheckReport {
    for i in d.poset().rank_order() {
        let r = is_pseudo_projective_at(d, i);
        if !r.is_true() {
            return r;
        }
    }
    CheckReport::holds()
}

/// Generators of the kernel of the summing map from the direct sum over
/// `members` into the object at `i`, plus the generator offsets of the
/// summands.
fn relation_kernel(d: &Diagram, members: &[usize], i: usize) -> (IntMat, Vec<usize>) {
    let mut offsets = Vec::with_capacity(members.len());
    let mut total = 0;
    for &j in members {
        offsets.push(total);
        total += d.object(j).ngens();
    }
    let mut mat = IntMat::zeros(d.object(i).ngens(), 0);
    for &j in members {
        mat = mat.hstack(d.arrow(j, i).matrix());
    }
    let stacked = mat.hstack(&d.object(i).effective_rels());
    let k = stacked.kernel_basis();
    let idx: Vec<usize> = (0..total).collect();
    (k.select_rows(&idx), offsets)
}

/// Is the comparison map onto the inverse limit of the strict ray below `i`
/// surjective?
pub fn is_fibrant_at(d: &Diagram, i: usize) -> CheckReport {
    assert_eq!(d.variance(), Variance::Contravariant);
    let cmp = d.lim_map(i);
    if cmp.is_surjective() {
        return CheckReport::holds();
    }
    // some generator of the limit escapes; translate it back to a
    // compatible tuple over the ray
    let members: Vec<usize> = (0..d.poset().len())
        .filter(|&j| d.poset().lt(j, i))
        .collect();
    let below = d.restrict(&members);
    let (lim, basis) = below.limit_direct();
    let image_span = cmp.matrix().hstack(&lim.effective_rels());
    let lattice = basis
        .kernel_subgroup
        .gens()
        .hstack(&basis.kernel_subgroup.ambient().effective_rels());
    let lattice_basis = lattice.column_lattice_basis();
    for t in 0..lim.ngens() {
        let mut e = IntMat::zeros(lim.ngens(), 1);
        e[(t, 0)] = BigInt::one();
        let hit = match d.ring() {
            Ring::Q => image_span.solve_rational(&e).is_some(),
            _ => image_span.solve_exact(&e).is_some(),
        };
        if !hit {
            let tuple_col = IntMat::from_col(&lattice_basis.col(t));
            let tuple = unstack(d, &members, &tuple_col);
            return CheckReport::fails(FailureWitness::NotEpi { at: i, tuple });
        }
    }
    unreachable!("a non-surjective map misses some generator")
}

pub fn is_fibrant(d: &Diagram) -> CheckReport {
    for i in d.poset().rank_order() {
        let r = is_fibrant_at(d, i);
        if !r.is_true() {
            return r;
        }
    }
    CheckReport::holds()
}

/// Tuple-realization at `i`: for every antichain A of the non-strict ray,
/// every tuple of boundary-kernel elements over A is the simultaneous image
/// of a single element of the object at `i`.
pub fn is_pseudo_injective_at(d: &Diagram, i: usize) -> CheckReport {
    assert_eq!(d.variance(), Variance::Contravariant);
    for antichain in d.poset().antichains_below(i) {
        let members = &antichain.members;
        if members.is_empty() {
            continue;
        }
        let parts: Vec<&FgAbGroup> = members.iter().map(|&a| d.object(a)).collect();
        let (total, offsets) = FgAbGroup::direct_sum(&parts);
        // tuple map from the object at i
        let mut tmat = IntMat::zeros(total.ngens(), d.object(i).ngens());
        for (slot, &a) in members.iter().enumerate() {
            let arrow = d.arrow(a, i); // G(i) -> G(a)
            for r in 0..d.object(a).ngens() {
                for c in 0..d.object(i).ngens() {
                    tmat[(offsets[slot] + r, c)] = arrow.matrix()[(r, c)].clone();
                }
            }
        }
        // blockwise arrows are well defined componentwise
        let tuple_map = Hom::new_trusted(d.object(i).clone(), total.clone(), tmat, BigInt::one());
        let image = tuple_map.image();
        // block-embedded boundary kernels
        for (slot, &a) in members.iter().enumerate() {
            let bk = d.boundary_kernel(a);
            for t in 0..bk.gens().cols() {
                let mut col = IntMat::zeros(total.ngens(), 1);
                for r in 0..d.object(a).ngens() {
                    col[(offsets[slot] + r, 0)] = bk.gens()[(r, t)].clone();
                }
                if !image.contains_element(&col) {
                    let tuple = unstack(d, members, &col);
                    return CheckReport::fails(FailureWitness::UnreachableTuple {
                        at: i,
                        antichain: members.clone(),
                        tuple,
                    });
                }
            }
        }
    }
    CheckReport::holds()
}

pub fn is_pseudo_injective(d: &Diagram) -> CheckReport {
    for i in d.poset().rank_order() {
        let r = is_pseudo_injective_at(d, i);
        if !r.is_true() {
            return r;
        }
    }
    CheckReport::holds()
}

fn unstack(d: &Diagram, members: &[usize], col: &IntMat) -> FormalSum {
    let mut sum = FormalSum::zero();
    let mut off = 0;
    for &j in members {
        let n = d.object(j).ngens();
        let v = IntMat::from_fn(n, 1, |r, _| col[(off + r, 0)].clone());
        if !v.is_zero() {
            sum.add_at(j, &v);
        }
        off += n;
    }
    sum
}

#[derive(Debug, Error, Clone)]
pub enum CertifyError {
    #[error(
        "input is not a relation: components must live strictly below the target and sum to zero"
    )]
    NotARelation,
    #[error("component at element {0} is not a sum of images from below; relation lifting fails at the target")]
    NoDecomposition(usize),
}

/// A certificate that a relation class dies in the colimit over the strict
/// ray: a sequence of rewrites, each pushing the maximal support of the
/// current representative strictly down, ending at zero.
#[derive(Clone, Debug)]
pub struct RewriteTrace {
    pub at: usize,
    /// Representatives x^0, x^1, ..., x^N with x^N = 0.
    pub states: Vec<FormalSum>,
    /// Step n records the witnesses y_{k,j} with k < j over the maximal
    /// support of x^n.
    pub steps: Vec<BTreeMap<(usize, usize), IntMat>>,
    /// The trace certifies `scale * input`; always 1 except over Q, where
    /// clearing witness denominators may rescale the class (a nonzero
    /// rational multiple of a class vanishes iff the class does).
    pub scale: BigInt,
}

/// Rewrite a relation at `i` down to zero, certifying that its class in the
/// colimit over the strict ray vanishes. Relation lifting is consulted
/// lazily: a step fails with `NoDecomposition` exactly when some maximal
/// component escapes its boundary image.
pub fn certify_zero_class(
    d: &Diagram,
    i: usize,
    input: &FormalSum,
) -> Result<RewriteTrace, CertifyError> {
    assert_eq!(d.variance(), Variance::Covariant);
    // precondition: support strictly below i, images summing to zero
    for &j in input.components.keys() {
        if !d.poset().lt(j, i) {
            return Err(CertifyError::NotARelation);
        }
    }
    if !relation_sums_to_zero(d, i, input) {
        return Err(CertifyError::NotARelation);
    }

    let mut scale = BigInt::one();
    let mut states = vec![input.clone()];
    let mut steps: Vec<BTreeMap<(usize, usize), IntMat>> = Vec::new();
    let mut current = input.clone();

    // strict support descent drops the maximal rank each round, so the
    // poset height bounds the loop
    for _round in 0..=d.poset().len() + 1 {
        let supp = current.support(d);
        if supp.is_empty() {
            return Ok(RewriteTrace {
                at: i,
                states,
                steps,
                scale,
            });
        }
        let maxima = d.poset().maxima(&supp).members;
        let mut witnesses: BTreeMap<(usize, usize), IntMat> = BTreeMap::new();
        for &j in &maxima {
            let below: Vec<usize> = (0..d.poset().len())
                .filter(|&k| d.poset().lt(k, j))
                .collect();
            let mut span = IntMat::zeros(d.object(j).ngens(), 0);
            for &k in &below {
                span = span.hstack(d.arrow(k, j).matrix());
            }
            span = span.hstack(&d.object(j).effective_rels());
            let xj = current.component(j, d.object(j).ngens());
            let solution = match d.ring() {
                Ring::Q => span.solve_rational(&xj),
                _ => span.solve_exact(&xj).map(|s| (s, BigInt::one())),
            };
            let Some((sol, den)) = solution else {
                return Err(CertifyError::NoDecomposition(j));
            };
            if !den.is_one() {
                // rescale the whole computation so witnesses stay integral;
                // the numerators then decompose the rescaled component
                rescale(&mut states, &mut steps, &mut current, &mut witnesses, &den);
                scale *= &den;
            }
            let mut off = 0;
            for &k in &below {
                let nk = d.object(k).ngens();
                let y = IntMat::from_fn(nk, 1, |r, _| sol[(off + r, 0)].clone());
                if !y.is_zero() {
                    witnesses.insert((k, j), y);
                }
                off += nk;
            }
        }
        // apply the rewrite: maximal components are replaced by their
        // decompositions pushed one level down
        let mut next = current.clone();
        for (&(k, j), y) in &witnesses {
            next.add_at(k, y);
            let pushed = d.arrow(k, j).apply(y);
            next.add_at(j, &-&pushed);
        }
        debug_assert!(relation_sums_to_zero(d, i, &next));
        states.push(next.clone());
        steps.push(witnesses);
        current = next;
    }
    unreachable!("support descent terminates within the poset height")
}

fn rescale(
    states: &mut [FormalSum],
    steps: &mut [BTreeMap<(usize, usize), IntMat>],
    current: &mut FormalSum,
    witnesses: &mut BTreeMap<(usize, usize), IntMat>,
    den: &BigInt,
) {
    let scale_sum = |f: &mut FormalSum| {
        for v in f.components.values_mut() {
            *v = v.scale(den);
        }
    };
    for s in states.iter_mut() {
        scale_sum(s);
    }
    for step in steps.iter_mut() {
        for v in step.values_mut() {
            *v = v.scale(den);
        }
    }
    scale_sum(current);
    for v in witnesses.values_mut() {
        *v = v.scale(den);
    }
}

fn relation_sums_to_zero(d: &Diagram, i: usize, f: &FormalSum) -> bool {
    let n = d.object(i).ngens();
    let mut acc = IntMat::zeros(n, 1);
    for (&j, v) in f.components.iter() {
        let img = d.arrow(j, i).apply(v);
        acc = &acc + &img;
    }
    d.object(i).is_zero_elem(&acc)
}

impl RewriteTrace {
    /// Re-verify every invariant of the certificate against the diagram:
    /// the first state is the (scaled) input, each difference has the
    /// two-term witness form, supports strictly descend, every state stays
    /// a relation, and the final state is zero.
    pub fn verify(&self, d: &Diagram, input: &FormalSum) -> Result<(), String> {
        let first = self.states.first().ok_or("empty trace")?;
        let mut scaled = input.clone();
        for v in scaled.components.values_mut() {
            *v = v.scale(&self.scale);
        }
        if !formal_sums_equal(d, first, &scaled) {
            return Err("first state is not the scaled input".into());
        }
        for (n, step) in self.steps.iter().enumerate() {
            let cur = &self.states[n];
            let next = &self.states[n + 1];
            // two-term form
            let mut expect = cur.clone();
            let supp = cur.support(d);
            let maxima = d.poset().maxima(&supp).members;
            for (&(k, j), y) in step {
                if !d.poset().lt(k, j) {
                    return Err(format!("witness indices not increasing at step {n}"));
                }
                if !maxima.contains(&j) {
                    return Err(format!(
                        "witness target {j} is not maximal in the support at step {n}"
                    ));
                }
                expect.add_at(k, y);
                let pushed = d.arrow(k, j).apply(y);
                expect.add_at(j, &-&pushed);
            }
            if !formal_sums_equal(d, &expect, next) {
                return Err(format!("step {n} difference is not of witness form"));
            }
            // strict support descent
            let next_supp = next.support(d);
            for &s in &next_supp {
                if !supp.iter().any(|&t| d.poset().lt(s, t)) {
                    return Err(format!("support does not strictly descend at step {n}"));
                }
            }
            if !relation_sums_to_zero(d, self.at, next) {
                return Err(format!("state {} is not a relation", n + 1));
            }
        }
        let last = self.states.last().expect("nonempty");
        if !last.support(d).is_empty() {
            return Err("terminal state is nonzero".into());
        }
        Ok(())
    }
}

fn formal_sums_equal(d: &Diagram, a: &FormalSum, b: &FormalSum) -> bool {
    let keys: std::collections::BTreeSet<usize> = a
        .components
        .keys()
        .chain(b.components.keys())
        .copied()
        .collect();
    keys.into_iter().all(|j| {
        let n = d.object(j).ngens();
        let diff = &a.component(j, n) - &b.component(j, n);
        d.object(j).is_zero_elem(&diff)
    })
}

/// Parameters of the randomized cross-check corpus.
#[derive(Clone, Debug)]
pub struct CrosscheckParams {
    pub seed: u64,
    pub count: usize,
    pub max_poset: usize,
    pub max_rank: usize,
    pub max_torsion: u64,
    pub max_entry: i64,
}

impl Default for CrosscheckParams {
    fn default() -> Self {
        CrosscheckParams {
            seed: 0,
            count: 500,
            max_poset: 6,
            max_rank: 3,
            max_torsion: 6,
            max_entry: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub index: usize,
    pub law: String,
    pub instance: String,
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub instances: usize,
    pub violations: Vec<Violation>,
}

/// Run the implication laws over a seeded random corpus, covariant and
/// contravariant. Any violation indicates an implementation bug (the laws
/// are theorems) and carries the serialized instance.
///
/// The laws, per instance:
/// 1. relation lifting at `i` implies an injective comparison at `i`
///    (pointwise, one direction only — the converse is false pointwise:
///    on a chain with a zero middle object the comparison map at the top
///    is injective from a zero colimit while lifting fails there);
/// 2. lifting everywhere on the ray below `i` is equivalent to injective
///    comparisons everywhere on that ray (at maximal elements this is the
///    global equivalence);
/// 3. lifting everywhere implies all higher derived colimits vanish;
/// 4. the duals of 1–3: realization at `i` implies a surjective comparison
///    at `i`; ray-bundled equivalence; vanishing higher derived limits.
pub fn crosscheck_theorems(params: &CrosscheckParams) -> CrosscheckReport {
    let mut violations = Vec::new();
    for index in 0..params.count {
        let f = crate::corpus::random_diagram(params, index as u64, Variance::Covariant);
        let serialize = || crate::io::diagram_to_json(&f);
        let n = f.poset().len();
        let pp: Vec<bool> = (0..n)
            .map(|i| is_pseudo_projective_at(&f, i).is_true())
            .collect();
        let cof: Vec<bool> = (0..n).map(|i| is_cofibrant_at(&f, i).is_true()).collect();
        for i in 0..n {
            if pp[i] && !cof[i] {
                violations.push(Violation {
                    index,
                    law: format!(
                        "relation lifting at {} without injective comparison there",
                        f.poset().id(i)
                    ),
                    instance: serialize(),
                });
            }
            let ray: Vec<usize> = (0..n).filter(|&j| f.poset().leq(j, i)).collect();
            let pp_ray = ray.iter().all(|&j| pp[j]);
            let cof_ray = ray.iter().all(|&j| cof[j]);
            if pp_ray != cof_ray {
                violations.push(Violation {
                    index,
                    law: format!(
                        "ray-bundled lifting and comparison disagree at {} (lift={pp_ray}, cmp={cof_ray})",
                        f.poset().id(i)
                    ),
                    instance: serialize(),
                });
            }
        }
        if pp.iter().all(|&b| b) {
            if let Err((deg, h)) = is_acyclic(&f, Side::Colim) {
                violations.push(Violation {
                    index,
                    law: format!("lifting holds yet derived colimit {deg} = {h}"),
                    instance: serialize(),
                });
            }
        }

        let g = crate::corpus::random_diagram(params, index as u64, Variance::Contravariant);
        let serialize_g = || crate::io::diagram_to_json(&g);
        let m = g.poset().len();
        let pi: Vec<bool> = (0..m)
            .map(|i| is_pseudo_injective_at(&g, i).is_true())
            .collect();
        let fib: Vec<bool> = (0..m).map(|i| is_fibrant_at(&g, i).is_true()).collect();
        for i in 0..m {
            if pi[i] && !fib[i] {
                violations.push(Violation {
                    index,
                    law: format!(
                        "tuple realization at {} without surjective comparison there",
                        g.poset().id(i)
                    ),
                    instance: serialize_g(),
                });
            }
            let ray: Vec<usize> = (0..m).filter(|&j| g.poset().leq(j, i)).collect();
            let pi_ray = ray.iter().all(|&j| pi[j]);
            let fib_ray = ray.iter().all(|&j| fib[j]);
            if pi_ray != fib_ray {
                violations.push(Violation {
                    index,
                    law: format!(
                        "ray-bundled realization and comparison disagree at {} (real={pi_ray}, cmp={fib_ray})",
                        g.poset().id(i)
                    ),
                    instance: serialize_g(),
                });
            }
        }
        if fib.iter().all(|&b| b) {
            if let Err((deg, h)) = is_acyclic(&g, Side::Lim) {
                violations.push(Violation {
                    index,
                    law: format!("surjective comparisons everywhere yet derived limit {deg} = {h}"),
                    instance: serialize_g(),
                });
            }
        }
    }
    CrosscheckReport {
        instances: params.count,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinPoset;

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn zg() -> FgAbGroup {
        FgAbGroup::free(Ring::Z, 1)
    }

    fn scalar(v: i64) -> IntMat {
        IntMat::from_rows(&[vec![v]])
    }

    fn two_chain(map: i64) -> Diagram {
        let p = FinPoset::from_covers(ids(&["j", "i"]), &[("j".into(), "i".into())]).unwrap();
        let mut e = BTreeMap::new();
        e.insert((0, 1), scalar(map));
        Diagram::new(p, Variance::Covariant, vec![zg(), zg()], e).unwrap()
    }

    #[test]
    fn cofibrancy_on_two_chains() {
        // zero edge kills the class of 1
        let d0 = two_chain(0);
        let r = is_cofibrant_at(&d0, 1);
        assert!(!r.is_true());
        match r.witness {
            Some(FailureWitness::EpsKernelClass { at, class }) => {
                assert_eq!(at, 1);
                // re-verify: sums to zero in F(i), nonzero in the colimit
                assert!(super::relation_sums_to_zero(&d0, 1, &class));
                assert!(!class.support(&d0).is_empty());
            }
            w => panic!("wrong witness {w:?}"),
        }
        // injective edge is fine
        let d2 = two_chain(2);
        assert!(is_cofibrant_at(&d2, 1).is_true());
        assert!(is_cofibrant(&d2).is_true());
    }

    #[test]
    fn pseudo_projectivity_on_two_chains() {
        let d0 = two_chain(0);
        let r = is_pseudo_projective_at(&d0, 1);
        assert!(!r.is_true());
        match r.witness {
            Some(FailureWitness::EscapedComponent {
                at,
                component,
                relation,
                ..
            }) => {
                assert_eq!(at, 1);
                assert_eq!(component, 0);
                // re-verify directly against the definition
                assert!(super::relation_sums_to_zero(&d0, 1, &relation));
                let comp = relation.component(0, 1);
                assert!(!d0.boundary_image(0).contains_element(&comp));
            }
            w => panic!("wrong witness {w:?}"),
        }

        let d2 = two_chain(2);
        assert!(is_pseudo_projective_at(&d2, 1).is_true());
        assert!(is_pseudo_projective(&d2).is_true());
    }

    #[test]
    fn fibrancy_examples() {
        // reduction onto Z/2 is epi onto the limit
        let p = FinPoset::from_covers(ids(&["j", "i"]), &[("j".into(), "i".into())]).unwrap();
        let mut e = BTreeMap::new();
        e.insert((0, 1), scalar(1));
        let d = Diagram::new(
            p.clone(),
            Variance::Contravariant,
            vec![FgAbGroup::cyclic(Ring::Z, 2), zg()],
            e,
        )
        .unwrap();
        assert!(is_fibrant_at(&d, 1).is_true());
        // minimal elements are trivially fibrant
        assert!(is_fibrant_at(&d, 0).is_true());

        // multiplication by two misses 1 in the limit
        let mut e2 = BTreeMap::new();
        e2.insert((0, 1), scalar(2));
        let d2 = Diagram::new(p, Variance::Contravariant, vec![zg(), zg()], e2).unwrap();
        let r = is_fibrant_at(&d2, 1);
        assert!(!r.is_true());
        match r.witness {
            Some(FailureWitness::NotEpi { at, tuple }) => {
                assert_eq!(at, 1);
                // the escaping tuple is genuinely unreachable: no x with 2x
                // hitting it
                let target = tuple.component(0, 1);
                let span = d2
                    .arrow(0, 1)
                    .matrix()
                    .hstack(&d2.object(0).effective_rels());
                assert!(span.solve_exact(&target).is_none());
            }
            w => panic!("wrong witness {w:?}"),
        }
    }

    #[test]
    fn pseudo_injectivity_examples() {
        // two incomparable lower elements, diagonal from Z: unreachable
        let p = FinPoset::from_covers(
            ids(&["j1", "j2", "i"]),
            &[("j1".into(), "i".into()), ("j2".into(), "i".into())],
        )
        .unwrap();
        let mut e = BTreeMap::new();
        e.insert((0, 2), scalar(1));
        e.insert((1, 2), scalar(1));
        let d = Diagram::new(
            p.clone(),
            Variance::Contravariant,
            vec![zg(), zg(), zg()],
            e,
        )
        .unwrap();
        let r = is_pseudo_injective_at(&d, 2);
        assert!(!r.is_true());
        assert!(matches!(
            r.witness,
            Some(FailureWitness::UnreachableTuple { .. })
        ));

        // from Z^2 by the two projections: realizable
        let z2 = FgAbGroup::free(Ring::Z, 2);
        let mut e2 = BTreeMap::new();
        e2.insert((0, 2), IntMat::from_rows(&[vec![1, 0]]));
        e2.insert((1, 2), IntMat::from_rows(&[vec![0, 1]]));
        let d2 = Diagram::new(p, Variance::Contravariant, vec![zg(), zg(), z2], e2).unwrap();
        assert!(is_pseudo_injective_at(&d2, 2).is_true());
        assert!(is_pseudo_injective(&d2).is_true());
    }

    #[test]
    fn singleton_antichain_at_center_is_trivial() {
        // the condition over the antichain {i} reads: boundary kernel at i
        // reachable through the identity, which always holds
        let p = FinPoset::from_covers(ids(&["i"]), &[]).unwrap();
        let d = Diagram::constant(p, Variance::Contravariant, FgAbGroup::cyclic(Ring::Z, 4));
        assert!(is_pseudo_injective_at(&d, 0).is_true());
    }

    #[test]
    fn certify_zero_input() {
        let d = two_chain(2);
        let trace = certify_zero_class(&d, 1, &FormalSum::zero()).unwrap();
        assert_eq!(trace.states.len(), 1);
        trace.verify(&d, &FormalSum::zero()).unwrap();
    }

    #[test]
    fn certify_rejects_non_relations() {
        let d = two_chain(2);
        // x = 1 at j: image 2 is nonzero in F(i)
        let x = FormalSum::single(0, scalar(1));
        assert!(matches!(
            certify_zero_class(&d, 1, &x),
            Err(CertifyError::NotARelation)
        ));
        // components not strictly below the target
        let y = FormalSum::single(1, scalar(0));
        assert!(matches!(
            certify_zero_class(&d, 1, &y),
            Err(CertifyError::NotARelation)
        ));
    }

    #[test]
    fn certify_square_cancellation() {
        // identity edges on the square: (1 at m1, -1 at m2) rewrites down to
        // the bottom and cancels
        let p = FinPoset::from_covers(
            ids(&["bot", "m1", "m2", "top"]),
            &[
                ("bot".into(), "m1".into()),
                ("bot".into(), "m2".into()),
                ("m1".into(), "top".into()),
                ("m2".into(), "top".into()),
            ],
        )
        .unwrap();
        let d = Diagram::constant(p, Variance::Covariant, zg());
        let mut x = FormalSum::zero();
        x.add_at(1, &scalar(1));
        x.add_at(2, &scalar(-1));
        let trace = certify_zero_class(&d, 3, &x).unwrap();
        trace.verify(&d, &x).unwrap();
        assert!(trace.states.last().unwrap().support(&d).is_empty());
    }

    #[test]
    fn certify_reports_no_decomposition() {
        // zero edge: x = (1 at j) has zero image, yet 1 is not a sum from
        // below
        let d = two_chain(0);
        let x = FormalSum::single(0, scalar(1));
        assert!(matches!(
            certify_zero_class(&d, 1, &x),
            Err(CertifyError::NoDecomposition(0))
        ));
    }

    #[test]
    fn crosscheck_smoke() {
        let params = CrosscheckParams {
            count: 25,
            ..CrosscheckParams::default()
        };
        let report = crosscheck_theorems(&params);
        assert_eq!(report.instances, 25);
        assert!(
            report.violations.is_empty(),
            "violations: {:?}",
            report.violations
        );
    }

    #[test]
    fn crosscheck_empty_corpus() {
        let params = CrosscheckParams {
            count: 0,
            ..CrosscheckParams::default()
        };
        let report = crosscheck_theorems(&params);
        assert_eq!(report.instances, 0);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn acyclic_but_not_cofibrant_is_consistent() {
        // a poset with a maximum is always acyclic, while the zero edge
        // breaks cofibrancy; no implication runs in that direction
        let d = two_chain(0);
        assert!(is_acyclic(&d, Side::Colim).is_ok());
        assert!(!is_cofibrant(&d).is_true());
    }

    #[test]
    fn checks_over_modular_coefficients() {
        // two-chain over Z/4 with multiplication by 2: the kernel of the
        // edge is 2(Z/4), so the comparison map is not injective and
        // lifting fails; the identity edge is fine on both counts
        let p = FinPoset::from_covers(vec!["j".into(), "i".into()], &[("j".into(), "i".into())])
            .unwrap();
        let z4 = FgAbGroup::free(Ring::Zmod(4), 1);
        let mk = |m: i64| {
            let mut e = BTreeMap::new();
            e.insert((0, 1), scalar(m));
            Diagram::new(
                p.clone(),
                Variance::Covariant,
                vec![z4.clone(), z4.clone()],
                e,
            )
            .unwrap()
        };
        let doubling = mk(2);
        assert!(!is_cofibrant_at(&doubling, 1).is_true());
        assert!(!is_pseudo_projective_at(&doubling, 1).is_true());
        // the poset has a maximum, so the colimit is the top value
        assert!(crate::derived::higher_colim(&doubling, 0).canon().torsion == vec![4.into()]);

        let identity = mk(1);
        assert!(is_cofibrant(&identity).is_true());
        assert!(is_pseudo_projective(&identity).is_true());
        assert!(is_acyclic(&identity, Side::Colim).is_ok());

        // contravariant: x3 is a unit mod 4, so the comparison onto the
        // limit is surjective
        let mut e = BTreeMap::new();
        e.insert((0, 1), scalar(3));
        let contra = Diagram::new(
            p,
            Variance::Contravariant,
            vec![z4.clone(), z4.clone()],
            e,
        )
        .unwrap();
        assert!(is_fibrant(&contra).is_true());
        assert!(is_pseudo_injective(&contra).is_true());
        assert!(is_acyclic(&contra, Side::Lim).is_ok());
    }
}
