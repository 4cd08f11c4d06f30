//! Dense integer matrices with exact arithmetic and Smith normal form.
//!
//! Everything downstream (canonical forms, kernels, images, homology,
//! witness searches) reduces to the primitives here: `snf`, `solve_exact`,
//! `solve_rational`, `kernel_basis` and `column_lattice_basis`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMat({}x{})[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from nested rows of machine integers; rows must share a length.
    pub fn from_rows<T: Into<i64> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from((*v).into());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_col(col: &[BigInt]) -> IntMat {
        IntMat::from_fn(col.len(), 1, |i, _| col[i].clone())
    }

    pub fn scale(&self, k: &BigInt) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * k)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        IntMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "vstack col mismatch");
        IntMat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn block_diag(blocks: &[&IntMat]) -> IntMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMat::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    /// Selects the listed columns, in order.
    pub fn select_cols(&self, idx: &[usize]) -> IntMat {
        IntMat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// Selects the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMat {
        IntMat::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Greatest common divisor of all entries (0 for the zero matrix).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for v in &self.data {
            g = g.gcd(v);
        }
        g
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[b * self.cols + j] * k;
            self.data[a * self.cols + j] += v;
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + b] * k;
            self.data[i * self.cols + a] += v;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.data[a * self.cols + j].clone();
            self.data[a * self.cols + j] = v;
        }
    }

    /// Smith normal form `u * self * v = d` with all four transforms tracked.
    pub fn snf(&self) -> Snf {
        let m = self.rows;
        let n = self.cols;
        let mut d = self.clone();
        let mut u = IntMat::identity(m);
        let mut uinv = IntMat::identity(m);
        let mut v = IntMat::identity(n);
        let mut vinv = IntMat::identity(n);

        // Elementary ops are mirrored on the transforms so that
        // u * self * v == d stays invariant:
        //   row op E on d  =>  u <- E u,  uinv <- uinv E^{-1}
        //   col op E on d  =>  v <- v E,  vinv <- E^{-1} vinv
        macro_rules! rswap {
            ($a:expr, $b:expr) => {{
                d.swap_rows($a, $b);
                u.swap_rows($a, $b);
                uinv.swap_cols($a, $b);
            }};
        }
        macro_rules! cswap {
            ($a:expr, $b:expr) => {{
                d.swap_cols($a, $b);
                v.swap_cols($a, $b);
                vinv.swap_rows($a, $b);
            }};
        }
        // row[a] += k*row[b]; inverse op on uinv is col[b] -= k*col[a]
        macro_rules! radd {
            ($a:expr, $b:expr, $k:expr) => {{
                let k = $k;
                d.add_row($a, $b, &k);
                u.add_row($a, $b, &k);
                uinv.add_col($b, $a, &(-k));
            }};
        }
        macro_rules! cadd {
            ($a:expr, $b:expr, $k:expr) => {{
                let k = $k;
                d.add_col($a, $b, &k);
                v.add_col($a, $b, &k);
                vinv.add_row($b, $a, &(-k));
            }};
        }
        macro_rules! rneg {
            ($a:expr) => {{
                d.negate_row($a);
                u.negate_row($a);
                for i in 0..m {
                    let w = -uinv[(i, $a)].clone();
                    uinv[(i, $a)] = w;
                }
            }};
        }

        let lim = m.min(n);
        let mut t = 0;
        while t < lim {
            // minimal-absolute-value pivot in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[(i, j)].is_zero()
                        && pivot.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            rswap!(t, pi);
            cswap!(t, pj);
            if d[(t, t)].is_negative() {
                rneg!(t);
            }

            'reduce: loop {
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() {
                        let q = trunc_div(&d[(i, t)], &d[(t, t)]);
                        radd!(i, t, -q);
                        if !d[(i, t)].is_zero() {
                            // remainder is strictly smaller: promote it to pivot
                            rswap!(t, i);
                            if d[(t, t)].is_negative() {
                                rneg!(t);
                            }
                            continue 'reduce;
                        }
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() {
                        let q = trunc_div(&d[(t, j)], &d[(t, t)]);
                        cadd!(j, t, -q);
                        if !d[(t, j)].is_zero() {
                            cswap!(t, j);
                            if d[(t, t)].is_negative() {
                                rneg!(t);
                            }
                            continue 'reduce;
                        }
                    }
                }
                // row t and column t are clean; enforce divisibility of the
                // trailing block by the pivot
                let p = d[(t, t)].clone();
                let mut bad = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        if !(&d[(i, j)] % &p).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => {
                        radd!(t, i, BigInt::one());
                        continue 'reduce;
                    }
                    None => break 'reduce,
                }
            }
            t += 1;
        }

        Snf {
            d,
            u,
            uinv,
            v,
            vinv,
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.data[i * self.cols + a].clone();
            self.data[i * self.cols + a] = v;
        }
    }

    /// Basis of the column lattice in column-style Hermite form, with
    /// entries reduced along the way. Direct column elimination keeps the
    /// coefficients small where extracting the basis from Smith transforms
    /// would let them swell.
    pub fn column_lattice_basis(&self) -> IntMat {
        let mut a = self.clone();
        let (n, m) = (a.rows, a.cols);
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut c = 0;
        for row in 0..n {
            if c >= m {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for j in c..m {
                    if !a[(row, j)].is_zero()
                        && best.is_none_or(|b: usize| a[(row, j)].abs() < a[(row, b)].abs())
                    {
                        best = Some(j);
                    }
                }
                let Some(b) = best else { break };
                a.swap_cols(c, b);
                if a[(row, c)].is_negative() {
                    a.negate_col(c);
                }
                let mut clean = true;
                for j in c + 1..m {
                    if !a[(row, j)].is_zero() {
                        let q = &a[(row, j)] / &a[(row, c)];
                        if !q.is_zero() {
                            a.add_col(j, c, &-q);
                        }
                        if !a[(row, j)].is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            if !a[(row, c)].is_zero() {
                // reduce the earlier pivot columns at this row for size control
                let p = a[(row, c)].clone();
                for &pc in &pivot_cols {
                    let q = a[(row, pc)].div_floor(&p);
                    if !q.is_zero() {
                        a.add_col(pc, c, &-q);
                    }
                }
                pivot_cols.push(c);
                c += 1;
            }
        }
        a.select_cols(&pivot_cols)
    }

    /// Integer basis of `{x : self * x = 0}`, columns of the result.
    /// The basis also spans the rational kernel. The raw Smith-transform
    /// columns are rewritten in Hermite form so entries stay small.
    pub fn kernel_basis(&self) -> IntMat {
        let s = self.snf();
        let nz = s.rank();
        let idx: Vec<usize> = (nz..self.cols).collect();
        let raw = s.v.select_cols(&idx);
        if raw.cols() == 0 {
            return raw;
        }
        raw.column_lattice_basis()
    }

    /// Exact integer solution of `self * x = rhs` (multi-column rhs),
    /// deterministic (free coordinates are zero).
    pub fn solve_exact(&self, rhs: &IntMat) -> Option<IntMat> {
        let (x, den) = self.solve_rational(rhs)?;
        if den.is_one() {
            Some(x)
        } else {
            None
        }
    }

    /// Rational solution `self * (x/den) = rhs` with den > 0 minimal for the
    /// produced numerators; `None` when the system is inconsistent over Q.
    pub fn solve_rational(&self, rhs: &IntMat) -> Option<(IntMat, BigInt)> {
        assert_eq!(self.rows, rhs.rows(), "solve shape mismatch");
        let s = self.snf();
        let c = &s.u * rhs;
        let nz = s.rank();
        // consistency: rows past the rank must vanish
        for i in nz..self.rows {
            for j in 0..rhs.cols() {
                if !c[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        let mut den = BigInt::one();
        for i in 0..nz {
            den = den.lcm(&s.d[(i, i)]);
        }
        let mut y = IntMat::zeros(self.cols, rhs.cols());
        for i in 0..nz {
            let f = &den / &s.d[(i, i)];
            for j in 0..rhs.cols() {
                y[(i, j)] = &c[(i, j)] * &f;
            }
        }
        let x = &s.v * &y;
        Some(normalize_den(x, den))
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        self.snf().rank()
    }
}

/// Reduce (x, den) by the gcd of den and all entries; den kept positive.
fn normalize_den(x: IntMat, den: BigInt) -> (IntMat, BigInt) {
    let mut g = den.clone();
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            g = g.gcd(&x[(i, j)]);
        }
    }
    if g.is_one() || g.is_zero() {
        return (x, den);
    }
    let xr = IntMat::from_fn(x.rows(), x.cols(), |i, j| &x[(i, j)] / &g);
    (xr, den / g)
}

fn trunc_div(a: &BigInt, b: &BigInt) -> BigInt {
    // truncated quotient; exactness is re-checked by the caller
    a / b
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMat {
    type Output = IntMat;
    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "mul shape mismatch");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs.data[k * rhs.cols + j];
                    out.data[i * rhs.cols + j] += v;
                }
            }
        }
        out
    }
}

impl Add for &IntMat {
    type Output = IntMat;
    fn add(self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &IntMat {
    type Output = IntMat;
    fn sub(self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Neg for &IntMat {
    type Output = IntMat;
    fn neg(self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with
/// `u`, `v` unimodular and `d` diagonal, each entry dividing the next.
pub struct Snf {
    pub d: IntMat,
    pub u: IntMat,
    pub uinv: IntMat,
    pub v: IntMat,
    pub vinv: IntMat,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let lim = self.d.rows().min(self.d.cols());
        (0..lim).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// The nonzero diagonal entries d1 | d2 | ...
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}
