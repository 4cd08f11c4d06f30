//! Finitely generated abelian groups in presented form, and exact maps
//! between them.
//!
//! A group is `Z^ngens / colspan(rels)` read over a coefficient ring
//! (`Z`, `Q`, or `Z/m`); every decision — membership, kernel, image,
//! canonical form, solvability — reduces to Smith normal form of integer
//! matrices. Over `Q` homomorphisms may carry a denominator; over `Z` and
//! `Z/m` the denominator is always 1.

use crate::matrix::{IntMat, Snf};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Coefficient ring. `Zmod(m)` requires `m >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
    Zmod(u64),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Zmod(m) => write!(f, "Z/{m}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbgrpError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient group mismatch")]
    AmbientMismatch,
    #[error("matrix does not define a homomorphism: column {col} of the relation image escapes the target relations")]
    NotWellDefined { col: usize },
    #[error("no solution")]
    NoSolution,
}

/// Canonical form: free rank plus invariant factors `d1 | d2 | ...` (each >= 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CanonicalForm {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Least common multiple of the invariant factors (1 for a free group).
    pub fn exponent(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc.lcm(d))
    }

    /// Primes dividing any invariant factor; `None` in the set encodes the
    /// free part.
    pub fn torsion_primes(&self) -> std::collections::BTreeSet<u64> {
        let mut out = std::collections::BTreeSet::new();
        for d in &self.torsion {
            let mut d = d.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= d {
                if (&d % &p).is_zero() {
                    out.insert(u64::try_from(&p).expect("prime fits u64"));
                    while (&d % &p).is_zero() {
                        d = &d / &p;
                    }
                }
                p += 1;
            }
            if d > BigInt::one() {
                out.insert(u64::try_from(&d).expect("prime fits u64"));
            }
        }
        out
    }
}

#[derive(Clone)]
struct GroupCache {
    snf: OnceLock<Arc<Snf>>,
    canon: OnceLock<CanonicalForm>,
}

impl GroupCache {
    fn new() -> Self {
        GroupCache {
            snf: OnceLock::new(),
            canon: OnceLock::new(),
        }
    }
}

/// A finitely generated abelian group presented by generators and relations.
#[derive(Clone)]
pub struct FgAbGroup {
    ring: Ring,
    ngens: usize,
    rels: IntMat,
    cache: GroupCache,
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup[{} over {}]", self, self.ring)
    }
}

impl fmt::Display for FgAbGroup {
    /// Invariant-factor rendering, e.g. `Z (+) Z/2 (+) Z/6` printed as
    /// `Z ⊕ Z/2 ⊕ Z/6`; the zero group prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canon();
        if c.is_zero() {
            return write!(f, "0");
        }
        let free_symbol = if self.ring == Ring::Q { "Q" } else { "Z" };
        let mut parts: Vec<String> = (0..c.free_rank).map(|_| free_symbol.to_string()).collect();
        for d in &c.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl PartialEq for FgAbGroup {
    /// Two presentations compare equal iff their canonical forms match.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.canon() == other.canon()
    }
}
impl Eq for FgAbGroup {}

impl FgAbGroup {
    pub fn presented(ring: Ring, ngens: usize, rels: IntMat) -> Self {
        assert_eq!(rels.rows(), ngens, "relation rows must equal ngens");
        if let Ring::Zmod(m) = ring {
            assert!(m >= 2, "Z/m needs m >= 2");
        }
        FgAbGroup {
            ring,
            ngens,
            rels,
            cache: GroupCache::new(),
        }
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        FgAbGroup::presented(ring, rank, IntMat::zeros(rank, 0))
    }

    pub fn zero(ring: Ring) -> Self {
        FgAbGroup::free(ring, 0)
    }

    /// Canonical presentation with the given free rank and torsion factors.
    pub fn from_invariants(ring: Ring, free_rank: usize, torsion: &[u64]) -> Self {
        let n = free_rank + torsion.len();
        let mut rels = IntMat::zeros(n, torsion.len());
        for (j, d) in torsion.iter().enumerate() {
            rels[(free_rank + j, j)] = BigInt::from(*d);
        }
        FgAbGroup::presented(ring, n, rels)
    }

    pub fn cyclic(ring: Ring, d: u64) -> Self {
        FgAbGroup::from_invariants(ring, 0, &[d])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn rels(&self) -> &IntMat {
        &self.rels
    }

    /// Relations including `m * I` over `Z/m`.
    pub fn effective_rels(&self) -> IntMat {
        match self.ring {
            Ring::Zmod(m) => self
                .rels
                .hstack(&IntMat::identity(self.ngens).scale(&BigInt::from(m))),
            _ => self.rels.clone(),
        }
    }

    fn snf(&self) -> Arc<Snf> {
        self.cache
            .snf
            .get_or_init(|| Arc::new(self.effective_rels().snf()))
            .clone()
    }

    pub fn canon(&self) -> &CanonicalForm {
        self.cache.canon.get_or_init(|| {
            let s = self.snf();
            let diag = s.diagonal();
            let free_rank = self.ngens - diag.len();
            let torsion = if self.ring == Ring::Q {
                Vec::new()
            } else {
                diag.into_iter().filter(|d| d > &BigInt::one()).collect()
            };
            CanonicalForm { free_rank, torsion }
        })
    }

    pub fn is_zero_group(&self) -> bool {
        self.canon().is_zero()
    }

    /// Same generators-and-relations data, byte for byte.
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        self.ring == other.ring && self.ngens == other.ngens && self.rels == other.rels
    }

    /// Same presented group: equal generator count and mutually contained
    /// relation spans. This is the interface-compatibility notion used when
    /// composing and comparing homomorphisms; identical matrices short-cut
    /// the span checks.
    pub fn same_group(&self, other: &FgAbGroup) -> bool {
        if self.ring != other.ring || self.ngens != other.ngens {
            return false;
        }
        if self.rels == other.rels {
            return true;
        }
        let a = self.effective_rels();
        let b = other.effective_rels();
        span_contains(&self.ring, &a, &b) && span_contains(&self.ring, &b, &a)
    }

    /// Is the coordinate vector the zero element of the presented group?
    pub fn is_zero_elem(&self, v: &IntMat) -> bool {
        assert_eq!(v.rows(), self.ngens);
        assert_eq!(v.cols(), 1);
        let s = self.snf();
        let c = &s.u * v;
        let nz = s.rank();
        for i in 0..self.ngens {
            if i < nz {
                if self.ring == Ring::Q {
                    continue; // torsion is invisible over Q
                }
                if !(&c[(i, 0)] % &s.d[(i, i)]).is_zero() {
                    return false;
                }
            } else if !c[(i, 0)].is_zero() {
                return false;
            }
        }
        true
    }

    /// Deterministic canonical coordinates: torsion coordinates reduced into
    /// `0..d_i`, free coordinates as-is.
    pub fn canon_coords(&self, v: &IntMat) -> Vec<BigInt> {
        let s = self.snf();
        let c = &s.u * v;
        let nz = s.rank();
        (0..self.ngens)
            .map(|i| {
                if i < nz {
                    if self.ring == Ring::Q {
                        BigInt::zero()
                    } else {
                        c[(i, 0)].mod_floor(&s.d[(i, i)])
                    }
                } else {
                    c[(i, 0)].clone()
                }
            })
            .collect()
    }

    /// All elements of a finite group (panics on infinite ones).
    pub fn enumerate_elements(&self) -> Vec<IntMat> {
        let c = self.canon();
        assert_eq!(c.free_rank, 0, "cannot enumerate an infinite group");
        let s = self.snf();
        let nz = s.rank();
        let mut coords = vec![BigInt::zero(); self.ngens];
        let mut out = Vec::new();
        loop {
            let col = IntMat::from_col(&coords);
            out.push(&s.uinv * &col);
            // odometer over torsion coordinates
            let mut i = 0;
            loop {
                if i == nz {
                    return out;
                }
                coords[i] += 1;
                if coords[i] < s.d[(i, i)] {
                    break;
                }
                coords[i] = BigInt::zero();
                i += 1;
            }
        }
    }

    /// Direct sum; returns the sum plus the generator offset of each summand.
    /// The empty sum defaults to the zero group over Z; use
    /// [`FgAbGroup::direct_sum_in`] when the ring matters.
    pub fn direct_sum(parts: &[&FgAbGroup]) -> (FgAbGroup, Vec<usize>) {
        let ring = parts.first().map_or(Ring::Z, |g| g.ring.clone());
        Self::direct_sum_in(ring, parts)
    }

    /// Direct sum over an explicit ring (all parts must match).
    pub fn direct_sum_in(ring: Ring, parts: &[&FgAbGroup]) -> (FgAbGroup, Vec<usize>) {
        assert!(
            parts.iter().all(|g| g.ring == ring),
            "mixed rings in direct sum"
        );
        let rels: Vec<&IntMat> = parts.iter().map(|g| &g.rels).collect();
        let rel_stack: Vec<IntMat> = rels.iter().map(|r| (*r).clone()).collect();
        let refs: Vec<&IntMat> = rel_stack.iter().collect();
        let big = IntMat::block_diag(&refs);
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for g in parts {
            offsets.push(acc);
            acc += g.ngens;
        }
        (FgAbGroup::presented(ring, acc, big), offsets)
    }

    /// Quotient by a subgroup of this group.
    pub fn quotient(&self, s: &Subgroup) -> Result<FgAbGroup, AbgrpError> {
        if !s.ambient.same_group(self) {
            return Err(AbgrpError::AmbientMismatch);
        }
        Ok(FgAbGroup::presented(
            self.ring.clone(),
            self.ngens,
            self.rels.hstack(&s.gens),
        ))
    }
}

/// Ring-aware span membership: is every column of `target` in the column
/// span of `cols` (integrally for Z and Z/m, rationally for Q)?
fn span_contains(ring: &Ring, cols: &IntMat, target: &IntMat) -> bool {
    match ring {
        Ring::Q => cols.solve_rational(target).is_some(),
        _ => cols.solve_exact(target).is_some(),
    }
}

/// A subgroup of an ambient presented group, given by generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FgAbGroup,
    gens: IntMat,
}

impl Subgroup {
    pub fn new(ambient: FgAbGroup, gens: IntMat) -> Self {
        assert_eq!(
            gens.rows(),
            ambient.ngens,
            "generator rows must match ambient"
        );
        Subgroup { ambient, gens }
    }

    pub fn zero(ambient: FgAbGroup) -> Self {
        let n = ambient.ngens;
        Subgroup::new(ambient, IntMat::zeros(n, 0))
    }

    pub fn full(ambient: FgAbGroup) -> Self {
        let n = ambient.ngens;
        Subgroup::new(ambient, IntMat::identity(n))
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn gens(&self) -> &IntMat {
        &self.gens
    }

    fn span_with_rels(&self) -> IntMat {
        self.gens.hstack(&self.ambient.effective_rels())
    }

    pub fn contains_element(&self, v: &IntMat) -> bool {
        span_contains(self.ambient.ring(), &self.span_with_rels(), v)
    }

    pub fn contains(&self, other: &Subgroup) -> Result<bool, AbgrpError> {
        if !self.ambient.same_group(&other.ambient) {
            return Err(AbgrpError::AmbientMismatch);
        }
        Ok(span_contains(
            self.ambient.ring(),
            &self.span_with_rels(),
            &other.gens,
        ))
    }

    pub fn equals(&self, other: &Subgroup) -> Result<bool, AbgrpError> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup, AbgrpError> {
        if !self.ambient.same_group(&other.ambient) {
            return Err(AbgrpError::AmbientMismatch);
        }
        Ok(Subgroup::new(
            self.ambient.clone(),
            self.gens.hstack(&other.gens),
        ))
    }

    pub fn is_zero_subgroup(&self) -> bool {
        (0..self.gens.cols()).all(|j| {
            let col = IntMat::from_col(&self.gens.col(j));
            self.ambient.is_zero_elem_modulo_torsion(&col)
        })
    }

    /// The subgroup as an abstract group, with the inclusion into the ambient.
    ///
    /// Computed from a lattice basis of span(gens) + span(rels); the ambient
    /// relations expressed in that basis present the subgroup.
    pub fn as_group(&self) -> (FgAbGroup, Hom) {
        let lattice = self.span_with_rels();
        let basis = lattice.column_lattice_basis();
        let rels_in_basis = basis
            .solve_exact(&self.ambient.effective_rels())
            .expect("ambient relations lie in the lattice");
        let grp = FgAbGroup::presented(self.ambient.ring.clone(), basis.cols(), rels_in_basis);
        let incl = Hom::new_trusted(grp.clone(), self.ambient.clone(), basis, BigInt::one());
        (grp, incl)
    }

    /// Express ambient-coordinate columns in the `as_group` generators.
    /// Returns the coefficient matrix and a denominator (1 unless over Q).
    pub fn express(&self, cols: &IntMat) -> Option<(IntMat, BigInt)> {
        let basis = self.span_with_rels().column_lattice_basis();
        match self.ambient.ring() {
            Ring::Q => basis.solve_rational(cols),
            _ => basis.solve_exact(cols).map(|x| (x, BigInt::one())),
        }
    }
}

impl FgAbGroup {
    /// Zero test that over Q ignores torsion (an alias of `is_zero_elem`,
    /// split out for clarity at subgroup call sites).
    fn is_zero_elem_modulo_torsion(&self, v: &IntMat) -> bool {
        self.is_zero_elem(v)
    }
}

/// A homomorphism between presented groups: an integer matrix (columns are
/// images of the source generators) with a denominator that is 1 except
/// over Q.
#[derive(Clone)]
pub struct Hom {
    src: FgAbGroup,
    dst: FgAbGroup,
    mat: IntMat,
    den: BigInt,
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "Hom[{:?} : {} -> {}]", self.mat, self.src, self.dst)
        } else {
            write!(
                f,
                "Hom[{:?}/{} : {} -> {}]",
                self.mat, self.den, self.src, self.dst
            )
        }
    }
}

impl Hom {
    pub fn new(
        src: FgAbGroup,
        dst: FgAbGroup,
        mat: IntMat,
        den: BigInt,
    ) -> Result<Self, AbgrpError> {
        if mat.rows() != dst.ngens || mat.cols() != src.ngens {
            return Err(AbgrpError::ShapeMismatch(format!(
                "matrix {}x{} against dst gens {} x src gens {}",
                mat.rows(),
                mat.cols(),
                dst.ngens,
                src.ngens
            )));
        }
        if src.ring != dst.ring {
            return Err(AbgrpError::ShapeMismatch("mixed coefficient rings".into()));
        }
        assert!(den.is_positive(), "denominator must be positive");
        if src.ring != Ring::Q && !den.is_one() {
            return Err(AbgrpError::ShapeMismatch(
                "denominators are only allowed over Q".into(),
            ));
        }
        // well-definedness: the relations of the source must die in the target
        let image_of_rels = &mat * &src.effective_rels();
        let dst_rels = dst.effective_rels();
        for j in 0..image_of_rels.cols() {
            let col = IntMat::from_col(&image_of_rels.col(j));
            if !span_contains(&src.ring, &dst_rels, &col) {
                return Err(AbgrpError::NotWellDefined { col: j });
            }
        }
        let (mat, den) = reduce(mat, den);
        Ok(Hom { src, dst, mat, den })
    }

    /// Construct without the well-definedness solve. For maps that are well
    /// defined by construction (cone legs, block inclusions, composites of
    /// validated maps); shapes are still checked.
    pub fn new_trusted(src: FgAbGroup, dst: FgAbGroup, mat: IntMat, den: BigInt) -> Self {
        assert_eq!(mat.rows(), dst.ngens, "trusted hom: row mismatch");
        assert_eq!(mat.cols(), src.ngens, "trusted hom: col mismatch");
        assert_eq!(src.ring, dst.ring, "trusted hom: ring mismatch");
        let (mat, den) = reduce(mat, den);
        Hom { src, dst, mat, den }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Hom {
            src: g.clone(),
            dst: g.clone(),
            mat: IntMat::identity(g.ngens),
            den: BigInt::one(),
        }
    }

    pub fn zero(src: &FgAbGroup, dst: &FgAbGroup) -> Self {
        assert_eq!(src.ring, dst.ring);
        Hom {
            src: src.clone(),
            dst: dst.clone(),
            mat: IntMat::zeros(dst.ngens, src.ngens),
            den: BigInt::one(),
        }
    }

    pub fn src(&self) -> &FgAbGroup {
        &self.src
    }

    pub fn dst(&self) -> &FgAbGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &IntMat {
        &self.mat
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// `self ∘ other`: apply `other` first. Requires matching presentations
    /// at the interface.
    pub fn compose(&self, other: &Hom) -> Result<Hom, AbgrpError> {
        if !other.dst.same_group(&self.src) {
            return Err(AbgrpError::ShapeMismatch(
                "compose interface mismatch".into(),
            ));
        }
        let (mat, den) = reduce(&self.mat * &other.mat, &self.den * &other.den);
        Ok(Hom {
            src: other.src.clone(),
            dst: self.dst.clone(),
            mat,
            den,
        })
    }

    pub fn add(&self, other: &Hom) -> Result<Hom, AbgrpError> {
        if !self.src.same_group(&other.src) || !self.dst.same_group(&other.dst) {
            return Err(AbgrpError::ShapeMismatch("add endpoint mismatch".into()));
        }
        let l = self.mat.scale(&other.den);
        let r = other.mat.scale(&self.den);
        let (mat, den) = reduce(&l + &r, &self.den * &other.den);
        Ok(Hom {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat,
            den,
        })
    }

    pub fn negate(&self) -> Hom {
        Hom {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat: -&self.mat,
            den: self.den.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Hom) -> Hom {
        assert_eq!(self.src.ring, other.src.ring);
        let (src, _) = FgAbGroup::direct_sum(&[&self.src, &other.src]);
        let (dst, _) = FgAbGroup::direct_sum(&[&self.dst, &other.dst]);
        let l = self.mat.scale(&other.den);
        let r = other.mat.scale(&self.den);
        let (mat, den) = reduce(IntMat::block_diag(&[&l, &r]), &self.den * &other.den);
        Hom { src, dst, mat, den }
    }

    /// Apply to an element (column vector in source coordinates). Only legal
    /// when the result has integral coordinates (always true over Z, Z/m).
    pub fn apply(&self, v: &IntMat) -> IntMat {
        let w = &self.mat * v;
        if self.den.is_one() {
            return w;
        }
        IntMat::from_fn(w.rows(), 1, |i, _| {
            let (q, r) = w[(i, 0)].div_rem(&self.den);
            assert!(r.is_zero(), "non-integral image; use rational context");
            q
        })
    }

    /// Equality as maps on the presented groups: the difference kills every
    /// source generator.
    pub fn eq_as_homs(&self, other: &Hom) -> bool {
        if !self.src.same_group(&other.src) || !self.dst.same_group(&other.dst) {
            return false;
        }
        let l = self.mat.scale(&other.den);
        let r = other.mat.scale(&self.den);
        let diff = &l - &r;
        let rels = self.dst.effective_rels();
        (0..diff.cols()).all(|j| {
            let col = IntMat::from_col(&diff.col(j));
            span_contains(&self.dst.ring, &rels, &col)
        })
    }

    pub fn is_zero_hom(&self) -> bool {
        self.eq_as_homs(&Hom::zero(&self.src, &self.dst))
    }

    /// Image subgroup of the target.
    pub fn image(&self) -> Subgroup {
        Subgroup::new(self.dst.clone(), self.mat.clone())
    }

    /// Kernel subgroup of the source, computed on the presented quotient:
    /// generators of `{x : mat x = 0 in dst}`.
    pub fn kernel(&self) -> Subgroup {
        let stacked = self.mat.hstack(&self.dst.effective_rels());
        let k = stacked.kernel_basis();
        let idx: Vec<usize> = (0..self.src.ngens).collect();
        Subgroup::new(self.src.clone(), k.select_rows(&idx))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero_subgroup()
    }

    pub fn is_surjective(&self) -> bool {
        let span = self.mat.hstack(&self.dst.effective_rels());
        span_contains(&self.dst.ring, &span, &IntMat::identity(self.dst.ngens))
    }

    /// Flags plus a verified two-sided inverse when the map is an isomorphism.
    pub fn classify(&self) -> Classification {
        let injective = self.is_injective();
        let surjective = self.is_surjective();
        let inverse = if injective && surjective {
            let inv = solve_right(self, &Hom::identity(&self.dst))
                .expect("bijective maps of presented groups admit a matrix inverse");
            debug_assert!(inv
                .compose(self)
                .unwrap()
                .eq_as_homs(&Hom::identity(&self.src)));
            debug_assert!(self
                .compose(&inv)
                .unwrap()
                .eq_as_homs(&Hom::identity(&self.dst)));
            Some(inv)
        } else {
            None
        };
        Classification {
            injective,
            surjective,
            inverse,
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

pub struct Classification {
    pub injective: bool,
    pub surjective: bool,
    pub inverse: Option<Hom>,
}

impl Classification {
    pub fn is_isomorphism(&self) -> bool {
        self.inverse.is_some()
    }
}

fn reduce(mat: IntMat, den: BigInt) -> (IntMat, BigInt) {
    if den.is_one() {
        return (mat, den);
    }
    let g = mat.content().gcd(&den);
    if g.is_one() || g.is_zero() {
        return (mat, den);
    }
    let m = IntMat::from_fn(mat.rows(), mat.cols(), |i, j| &mat[(i, j)] / &g);
    (m, den / g)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("no solution")]
    NoSolution,
}

/// Find `beta : c.src -> f.src` with `f ∘ beta = c`, exactly over the ring.
///
/// The unknown matrix is constrained both by the divisibility equations and
/// by well-definedness on the source presentation; the returned solution is
/// the deterministic minimal one produced by SNF back-substitution.
pub fn solve_right(f: &Hom, c: &Hom) -> Result<Hom, SolveError> {
    if !f.dst.same_group(&c.dst) {
        return Err(SolveError::ShapeMismatch);
    }
    let x = &f.src; // beta: A -> X
    let a = &c.src;
    let b = &f.dst;
    let rx = x.effective_rels();
    let ra = a.effective_rels();
    let rb = b.effective_rels();
    let (nx, na, nb) = (x.ngens, a.ngens, b.ngens);
    let (kx, ka, kb) = (rx.cols(), ra.cols(), rb.cols());

    // unknowns: vec(beta) by columns (nx * na), then Y (kb * na), then Z (kx * ka)
    let nvars = nx * na + kb * na + kx * ka;
    let neqs = nb * na + nx * ka;
    let mut sys = IntMat::zeros(neqs, nvars);
    let mut rhs = IntMat::zeros(neqs, 1);

    // E1: for each source generator g of A:  F * beta_g + R_B * Y_g = den_f * C_g
    for g in 0..na {
        for row in 0..nb {
            let e = g * nb + row;
            for t in 0..nx {
                sys[(e, g * nx + t)] = f.mat[(row, t)].clone();
            }
            for t in 0..kb {
                sys[(e, nx * na + g * kb + t)] = rb[(row, t)].clone();
            }
            rhs[(e, 0)] = &c.mat[(row, g)] * &f.den;
        }
    }
    // E2: for each relation r of A:  beta * (R_A)_r + R_X * Z_r = 0
    for r in 0..ka {
        for row in 0..nx {
            let e = nb * na + r * nx + row;
            for g in 0..na {
                sys[(e, g * nx + row)] = ra[(g, r)].clone();
            }
            for t in 0..kx {
                sys[(e, nx * na + kb * na + r * kx + t)] = rx[(row, t)].clone();
            }
        }
    }

    let (sol, solden) = match x.ring {
        Ring::Q => sys.solve_rational(&rhs).ok_or(SolveError::NoSolution)?,
        _ => (
            sys.solve_exact(&rhs).ok_or(SolveError::NoSolution)?,
            BigInt::one(),
        ),
    };
    let beta_mat = IntMat::from_fn(nx, na, |i, j| sol[(j * nx + i, 0)].clone());
    let den = &solden * &c.den;
    let beta =
        Hom::new(x.clone(), a_to_x_src(a), beta_mat, den).map_err(|_| SolveError::NoSolution)?;
    // the E2 block guarantees well-definedness; the constructor re-checks
    debug_assert!(f.compose(&beta).unwrap().eq_as_homs(c));
    return Ok(beta);

    fn a_to_x_src(a: &FgAbGroup) -> FgAbGroup {
        a.clone()
    }
}

/// Find `g : f.dst -> c.dst` with `g ∘ f = c`, exactly over the ring.
pub fn solve_left(f: &Hom, c: &Hom) -> Result<Hom, SolveError> {
    if !f.src.same_group(&c.src) {
        return Err(SolveError::ShapeMismatch);
    }
    let b = &f.dst; // g: B -> C
    let cc = &c.dst;
    let a = &f.src;
    let rb = b.effective_rels();
    let rc = cc.effective_rels();
    let (nb, nc, na) = (b.ngens, cc.ngens, a.ngens);
    let (kb, kc) = (rb.cols(), rc.cols());

    // unknowns: vec(g) by columns (nc * nb), then Y (kc * na), then Z (kc * kb)
    let nvars = nc * nb + kc * na + kc * kb;
    let neqs = nc * na + nc * kb;
    let mut sys = IntMat::zeros(neqs, nvars);
    let mut rhs = IntMat::zeros(neqs, 1);

    // E1: for each generator gcol of A:  g * (F_gcol) + R_C * Y_gcol = den_f * C_gcol
    for gc in 0..na {
        for row in 0..nc {
            let e = gc * nc + row;
            for i in 0..nb {
                // coefficient of g[(row, i)] is F[(i, gc)]
                sys[(e, i * nc + row)] = f.mat[(i, gc)].clone();
            }
            for t in 0..kc {
                sys[(e, nc * nb + gc * kc + t)] = rc[(row, t)].clone();
            }
            rhs[(e, 0)] = &c.mat[(row, gc)] * &f.den;
        }
    }
    // E2: for each relation r of B:  g * (R_B)_r + R_C * Z_r = 0
    for r in 0..kb {
        for row in 0..nc {
            let e = nc * na + r * nc + row;
            for i in 0..nb {
                sys[(e, i * nc + row)] = rb[(i, r)].clone();
            }
            for t in 0..kc {
                sys[(e, nc * nb + kc * na + r * kc + t)] = rc[(row, t)].clone();
            }
        }
    }

    let (sol, solden) = match b.ring {
        Ring::Q => sys.solve_rational(&rhs).ok_or(SolveError::NoSolution)?,
        _ => (
            sys.solve_exact(&rhs).ok_or(SolveError::NoSolution)?,
            BigInt::one(),
        ),
    };
    let g_mat = IntMat::from_fn(nc, nb, |i, j| sol[(j * nc + i, 0)].clone());
    let den = &solden * &c.den;
    let g = Hom::new(b.clone(), cc.clone(), g_mat, den).map_err(|_| SolveError::NoSolution)?;
    debug_assert!(g.compose(f).unwrap().eq_as_homs(c));
    Ok(g)
}

/// Basis of the homogeneous solution space of `h ∘ f = 0` with `h` a
/// well-defined map `f.dst -> c_dst`; used by the bounded automorphism
/// search in the Mackey checker.
pub fn solve_left_homogeneous_basis(f: &Hom, c_dst: &FgAbGroup) -> Vec<Hom> {
    let b = &f.dst;
    let rb = b.effective_rels();
    let rc = c_dst.effective_rels();
    let (nb, nc, na) = (b.ngens(), c_dst.ngens(), f.src.ngens());
    let (kb, kc) = (rb.cols(), rc.cols());
    let nvars = nc * nb + kc * na + kc * kb;
    let neqs = nc * na + nc * kb;
    let mut sys = IntMat::zeros(neqs, nvars);
    for gc in 0..na {
        for row in 0..nc {
            let e = gc * nc + row;
            for i in 0..nb {
                sys[(e, i * nc + row)] = f.mat[(i, gc)].clone();
            }
            for t in 0..kc {
                sys[(e, nc * nb + gc * kc + t)] = rc[(row, t)].clone();
            }
        }
    }
    for r in 0..kb {
        for row in 0..nc {
            let e = nc * na + r * nc + row;
            for i in 0..nb {
                sys[(e, i * nc + row)] = rb[(i, r)].clone();
            }
            for t in 0..kc {
                sys[(e, nc * nb + kc * na + r * kc + t)] = rc[(row, t)].clone();
            }
        }
    }
    let k = sys.kernel_basis();
    let mut out = Vec::new();
    for j in 0..k.cols() {
        let m = IntMat::from_fn(nc, nb, |i, g| k[(g * nc + i, j)].clone());
        if m.is_zero() {
            continue;
        }
        if let Ok(h) = Hom::new(b.clone(), c_dst.clone(), m, BigInt::one()) {
            if !h.is_zero_hom() {
                out.push(h);
            }
        }
    }
    out
}

/// Basis of the homogeneous solution space of `f ∘ h = 0` with `h` a
/// well-defined endomorphism-shaped map `a -> x`; used by the bounded
/// automorphism search in the Mackey checker.
pub fn solve_right_homogeneous_basis(f: &Hom, a: &FgAbGroup) -> Vec<Hom> {
    let x = &f.src;
    let rx = x.effective_rels();
    let ra = a.effective_rels();
    let rb = f.dst.effective_rels();
    let (nx, na, nb) = (x.ngens(), a.ngens(), f.dst.ngens());
    let (kx, ka, kb) = (rx.cols(), ra.cols(), rb.cols());
    let nvars = nx * na + kb * na + kx * ka;
    let neqs = nb * na + nx * ka;
    let mut sys = IntMat::zeros(neqs, nvars);
    for g in 0..na {
        for row in 0..nb {
            let e = g * nb + row;
            for t in 0..nx {
                sys[(e, g * nx + t)] = f.mat[(row, t)].clone();
            }
            for t in 0..kb {
                sys[(e, nx * na + g * kb + t)] = rb[(row, t)].clone();
            }
        }
    }
    for r in 0..ka {
        for row in 0..nx {
            let e = nb * na + r * nx + row;
            for g in 0..na {
                sys[(e, g * nx + row)] = ra[(g, r)].clone();
            }
            for t in 0..kx {
                sys[(e, nx * na + kb * na + r * kx + t)] = rx[(row, t)].clone();
            }
        }
    }
    let k = sys.kernel_basis();
    let mut out = Vec::new();
    for j in 0..k.cols() {
        let m = IntMat::from_fn(nx, na, |i, g| k[(g * nx + i, j)].clone());
        if m.is_zero() {
            continue;
        }
        if let Ok(h) = Hom::new(a.clone(), x.clone(), m, BigInt::one()) {
            if !h.is_zero_hom() {
                out.push(h);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbGroup {
        FgAbGroup::free(Ring::Z, 1)
    }

    fn zmod(d: u64) -> FgAbGroup {
        FgAbGroup::cyclic(Ring::Z, d)
    }

    fn hom(src: &FgAbGroup, dst: &FgAbGroup, rows: &[Vec<i64>]) -> Hom {
        Hom::new(
            src.clone(),
            dst.clone(),
            IntMat::from_rows(rows),
            BigInt::one(),
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_of_scrambled_presentation() {
        // Z/2 (+) Z/4 presented with a unimodular change of generators
        let straight = FgAbGroup::from_invariants(Ring::Z, 0, &[2, 4]);
        let scrambled =
            FgAbGroup::presented(Ring::Z, 2, IntMat::from_rows(&[vec![2, 4], vec![2, 8]]));
        assert_eq!(straight, scrambled);
        assert_eq!(scrambled.to_string(), "Z/2 ⊕ Z/4");
    }

    #[test]
    fn quotient_examples() {
        let g = z();
        let two = Subgroup::new(g.clone(), IntMat::from_rows(&[vec![2]]));
        let q = g.quotient(&two).unwrap();
        assert_eq!(q, zmod(2));

        // Z^2 / <(2,-3)> = Z
        let z2 = FgAbGroup::free(Ring::Z, 2);
        let line = Subgroup::new(z2.clone(), IntMat::from_rows(&[vec![2], vec![-3]]));
        assert_eq!(z2.quotient(&line).unwrap(), z());

        let whole = Subgroup::full(g.clone());
        assert!(g.quotient(&whole).unwrap().is_zero_group());
    }

    #[test]
    fn image_and_kernel() {
        let g = z();
        let times2 = hom(&g, &g, &[vec![2]]);
        assert!(times2
            .image()
            .contains_element(&IntMat::from_rows(&[vec![4]])));
        assert!(!times2
            .image()
            .contains_element(&IntMat::from_rows(&[vec![3]])));

        let reduction = hom(&g, &zmod(2), &[vec![1]]);
        let k = reduction.kernel();
        assert!(k.contains_element(&IntMat::from_rows(&[vec![2]])));
        assert!(!k.contains_element(&IntMat::from_rows(&[vec![1]])));
    }

    #[test]
    fn sum_in_z6() {
        let g = zmod(6);
        let two = Subgroup::new(g.clone(), IntMat::from_rows(&[vec![2]]));
        let three = Subgroup::new(g.clone(), IntMat::from_rows(&[vec![3]]));
        let s = two.sum(&three).unwrap();
        let one = Subgroup::new(g.clone(), IntMat::from_rows(&[vec![1]]));
        assert!(s.equals(&one).unwrap());
        // brute force over the 6 elements: the sum hits everything
        for v in g.enumerate_elements() {
            assert!(s.contains_element(&v));
        }
    }

    #[test]
    fn solve_right_examples() {
        let g = z();
        let f = hom(&g, &g, &[vec![2]]);
        let c6 = hom(&g, &g, &[vec![6]]);
        let beta = solve_right(&f, &c6).unwrap();
        assert!(f.compose(&beta).unwrap().eq_as_homs(&c6));
        assert_eq!(beta.matrix(), &IntMat::from_rows(&[vec![3]]));

        let c3 = hom(&g, &g, &[vec![3]]);
        assert!(matches!(solve_right(&f, &c3), Err(SolveError::NoSolution)));

        // f: Z -> Z/4 reduction, c: multiply by 2 then reduce; any beta = 2 mod 4
        let z4 = zmod(4);
        let f = hom(&g, &z4, &[vec![1]]);
        let c = hom(&g, &z4, &[vec![2]]);
        let beta = solve_right(&f, &c).unwrap();
        assert!(f.compose(&beta).unwrap().eq_as_homs(&c));
        let r: BigInt = beta.matrix()[(0, 0)].mod_floor(&BigInt::from(4));
        assert_eq!(r, BigInt::from(2));
    }

    #[test]
    fn classify_examples() {
        let z3 = zmod(3);
        let one = hom(&z3, &z3, &[vec![1]]);
        let c = one.classify();
        assert!(c.is_isomorphism());
        assert!(c.inverse.unwrap().eq_as_homs(&one));

        // x2 on Z/3 has inverse x2 (2*2 = 4 = 1 mod 3)
        let two = hom(&z3, &z3, &[vec![2]]);
        let c = two.classify();
        let inv = c.inverse.unwrap();
        assert!(inv.eq_as_homs(&two));

        let g = z();
        let dbl = hom(&g, &g, &[vec![2]]);
        let c = dbl.classify();
        assert!(c.injective && !c.surjective && c.inverse.is_none());
    }

    #[test]
    fn kernel_image_adjunction() {
        // quotient(src, kernel(f)) iso image(f) as canonical forms
        let z2g = FgAbGroup::free(Ring::Z, 2);
        let f = hom(&z2g, &zmod(4), &[vec![2, 1]]);
        let (ker_ok, _) = (f.kernel(), ());
        let q = z2g.quotient(&ker_ok).unwrap();
        let (im, _) = f.image().as_group();
        assert_eq!(q.canon(), im.canon());
    }

    #[test]
    fn hom_algebra_laws() {
        let g = z();
        let f = hom(&g, &g, &[vec![5]]);
        let id = Hom::identity(&g);
        assert!(f.compose(&id).unwrap().eq_as_homs(&f));
        assert!(f.add(&f.negate()).unwrap().is_zero_hom());

        let a = hom(&g, &g, &[vec![2]]);
        let b = hom(&g, &g, &[vec![3]]);
        let s = a.direct_sum(&b);
        assert_eq!(s.matrix(), &IntMat::from_rows(&[vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn rational_automorphisms() {
        let q1 = FgAbGroup::free(Ring::Q, 1);
        let double = Hom::new(
            q1.clone(),
            q1.clone(),
            IntMat::from_rows(&[vec![2]]),
            BigInt::one(),
        )
        .unwrap();
        let c = double.classify();
        assert!(c.is_isomorphism());
        let inv = c.inverse.unwrap();
        assert_eq!(inv.den(), &BigInt::from(2));
        assert!(double
            .compose(&inv)
            .unwrap()
            .eq_as_homs(&Hom::identity(&q1)));
    }

    #[test]
    fn membership_matches_bruteforce_on_small_groups() {
        // Z/4 (+) Z/4 has order 16 <= 64; compare subgroup membership against
        // exhaustive closure
        let g = FgAbGroup::from_invariants(Ring::Z, 0, &[4, 4]);
        let s = Subgroup::new(g.clone(), IntMat::from_rows(&[vec![2], vec![1]]));
        let mut reachable: std::collections::BTreeSet<Vec<BigInt>> =
            std::collections::BTreeSet::new();
        // closure of the single generator
        let gen = IntMat::from_rows(&[vec![2], vec![1]]);
        let mut cur = IntMat::zeros(2, 1);
        for _ in 0..=16 {
            reachable.insert(g.canon_coords(&cur));
            cur = &cur + &gen;
        }
        for v in g.enumerate_elements() {
            let brute = reachable.contains(&g.canon_coords(&v));
            assert_eq!(s.contains_element(&v), brute);
        }
    }

    #[test]
    fn modular_coefficients() {
        // over Z/4 the presentation <x | 2x> is Z/2
        let g = FgAbGroup::presented(Ring::Zmod(4), 1, IntMat::from_rows(&[vec![2]]));
        assert_eq!(g.canon(), FgAbGroup::cyclic(Ring::Zmod(4), 2).canon());
        // a free generator over Z/4 is Z/4, not Z
        let f = FgAbGroup::free(Ring::Zmod(4), 1);
        assert_eq!(f.canon().torsion, vec![BigInt::from(4)]);
        assert_eq!(f.canon().free_rank, 0);
        // x3 is invertible mod 4, x2 is not
        let three = Hom::new(f.clone(), f.clone(), IntMat::from_rows(&[vec![3]]), BigInt::one())
            .unwrap();
        assert!(three.is_isomorphism());
        let inv = three.classify().inverse.unwrap();
        assert!(three.compose(&inv).unwrap().eq_as_homs(&Hom::identity(&f)));
        let two = Hom::new(f.clone(), f, IntMat::from_rows(&[vec![2]]), BigInt::one()).unwrap();
        assert!(!two.is_injective() && !two.is_surjective());
    }

    use proptest::prelude::*;

    fn unimodular2(a: i64, b: i64, c: i64) -> IntMat {
        // product of elementary matrices, always determinant 1
        let e1 = IntMat::from_rows(&[vec![1, a], vec![0, 1]]);
        let e2 = IntMat::from_rows(&[vec![1, 0], vec![b, 1]]);
        let e3 = IntMat::from_rows(&[vec![1, c], vec![0, 1]]);
        &(&e1 * &e2) * &e3
    }

    proptest! {
        #[test]
        fn canonical_form_survives_generator_changes(
            d1 in 1u64..=6, d2 in 1u64..=6,
            a in -3i64..=3, b in -3i64..=3, c in -3i64..=3,
        ) {
            // rewrite diag(d1, d2) through a unimodular change of generators
            let rels = IntMat::from_rows(&[vec![d1 as i64, 0], vec![0, d2 as i64]]);
            let t = unimodular2(a, b, c);
            let straight = FgAbGroup::presented(Ring::Z, 2, rels.clone());
            let scrambled = FgAbGroup::presented(Ring::Z, 2, &t * &rels);
            prop_assert_eq!(straight.canon(), scrambled.canon());
        }

        #[test]
        fn kernel_image_adjunction_randomized(
            m00 in -3i64..=3, m01 in -3i64..=3, m10 in -3i64..=3, m11 in -3i64..=3,
            d in 1u64..=6,
        ) {
            // quotient by the kernel is the image, for maps Z^2 -> Z/d (+) Z
            let src = FgAbGroup::free(Ring::Z, 2);
            let dst = FgAbGroup::from_invariants(Ring::Z, 1, &[d]);
            let f = Hom::new(
                src.clone(),
                dst,
                IntMat::from_rows(&[vec![m00, m01], vec![m10, m11]]),
                BigInt::one(),
            )
            .unwrap();
            let q = src.quotient(&f.kernel()).unwrap();
            let (im, _) = f.image().as_group();
            prop_assert_eq!(q.canon(), im.canon());
        }
    }
}
