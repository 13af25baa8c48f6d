//! Dense integer matrices and exact normal forms.
//!
//! Everything here works over [`Z`], so results are exact regardless of
//! coefficient growth. Smith and Hermite forms optionally track the unimodular
//! transforms; those are what the cohomology engine uses to name generators.

use std::fmt;

use crate::integer::Z;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Z>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Z::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Z::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Z) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend(r.as_ref().iter().map(|&v| Z::from(v)));
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Z>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Z]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Z] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Z] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Z> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<Z>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Z::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }

    pub fn scale(&self, c: &Z) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Z]) -> Vec<Z> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Z::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Z {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Z) {
        if c.is_zero() {
            return;
        }
        debug_assert_ne!(dst, src);
        let cols = self.cols;
        let (d0, s0) = (dst * cols, src * cols);
        for j in 0..cols {
            let s = &self.data[s0 + j];
            if s.is_zero() {
                continue;
            }
            let t = s * c;
            self.data[d0 + j] += &t;
        }
    }

    /// `col[dst] += c * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Z) {
        if c.is_zero() {
            return;
        }
        debug_assert_ne!(dst, src);
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let t = s * c;
            self.data[i * self.cols + dst] += &t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for v in self.row_mut(i) {
            *v = -&*v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -&*v;
        }
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Z::to_i64).collect()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Z;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Z {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Z {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Which unimodular transforms a Smith normal form computation records.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmithTransforms {
    pub left: bool,
    pub left_inverse: bool,
    pub right: bool,
}

impl SmithTransforms {
    pub const NONE: SmithTransforms = SmithTransforms { left: false, left_inverse: false, right: false };
    pub const ALL: SmithTransforms = SmithTransforms { left: true, left_inverse: true, right: true };
}

/// `left · A · right = diag(diagonal, 0, ...)` with `d_1 | d_2 | ...`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<Z>,
    pub left: Option<Matrix>,
    pub left_inverse: Option<Matrix>,
    pub right: Option<Matrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors different from one.
    pub fn nontrivial_factors(&self) -> Vec<Z> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct SmithCalc {
    a: Matrix,
    p: Option<Matrix>,
    pinv: Option<Matrix>,
    q: Option<Matrix>,
}

impl SmithCalc {
    fn row_axpy(&mut self, dst: usize, src: usize, c: &Z) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(p) = &mut self.p {
            p.add_row_multiple(dst, src, c);
        }
        if let Some(pinv) = &mut self.pinv {
            pinv.add_col_multiple(src, dst, &-c);
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, c: &Z) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(q) = &mut self.q {
            q.add_col_multiple(dst, src, c);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(p) = &mut self.p {
            p.swap_rows(i, j);
        }
        if let Some(pinv) = &mut self.pinv {
            pinv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(q) = &mut self.q {
            q.swap_cols(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(p) = &mut self.p {
            p.negate_row(i);
        }
        if let Some(pinv) = &mut self.pinv {
            pinv.negate_col(i);
        }
    }

    fn min_abs_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if v.is_one() || *v == Z::from(-1) {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if v.cmp_abs(&self.a[(bi, bj)]).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `t` outside the pivot; returns once both are zero.
    fn clear_cross(&mut self, t: usize) {
        let (m, n) = (self.a.rows, self.a.cols);
        loop {
            let pivot = self.a[(t, t)].clone();
            for i in t + 1..m {
                if !self.a[(i, t)].is_zero() {
                    let q = self.a[(i, t)].div_round(&pivot);
                    self.row_axpy(i, t, &-q);
                }
            }
            for j in t + 1..n {
                if !self.a[(t, j)].is_zero() {
                    let q = self.a[(t, j)].div_round(&pivot);
                    self.col_axpy(j, t, &-q);
                }
            }
            // smallest leftover in the cross becomes the new pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t + 1..m {
                let v = &self.a[(i, t)];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.cmp_abs(&self.a[(bi, bj)]).is_lt()) {
                    best = Some((i, t));
                }
            }
            for j in t + 1..n {
                let v = &self.a[(t, j)];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.cmp_abs(&self.a[(bi, bj)]).is_lt()) {
                    best = Some((t, j));
                }
            }
            match best {
                None => return,
                Some((i, j)) => {
                    if i != t {
                        self.swap_rows(t, i);
                    }
                    if j != t {
                        self.swap_cols(t, j);
                    }
                }
            }
        }
    }

    fn run(&mut self) -> Vec<Z> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut diagonal = Vec::new();
        for t in 0..m.min(n) {
            let Some((i, j)) = self.min_abs_in_block(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                self.clear_cross(t);
                let pivot = self.a[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| {
                        let v = &self.a[(i, j)];
                        !v.is_zero() && !pivot.divides(v)
                    })
                });
                match offender {
                    Some(i) => self.row_axpy(t, i, &Z::ONE),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            diagonal.push(self.a[(t, t)].clone());
        }
        diagonal
    }
}

pub fn smith(a: &Matrix, transforms: SmithTransforms) -> Smith {
    let mut calc = SmithCalc {
        a: a.clone(),
        p: transforms.left.then(|| Matrix::identity(a.rows)),
        pinv: transforms.left_inverse.then(|| Matrix::identity(a.rows)),
        q: transforms.right.then(|| Matrix::identity(a.cols)),
    };
    let diagonal = calc.run();
    Smith { diagonal, left: calc.p, left_inverse: calc.pinv, right: calc.q }
}

/// Row-style Hermite normal form `transform · A = h`.
///
/// `h` is in reduced row echelon form over Z: pivots positive, entries above
/// each pivot in `0..pivot`, zero rows at the bottom.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Option<Matrix>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_rows(a: &Matrix, track: bool) -> Hermite {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut u = track.then(|| Matrix::identity(m));
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                let v = &h[(i, j)];
                if !v.is_zero() && best.is_none_or(|b| v.cmp_abs(&h[(b, j)]).is_lt()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            if let Some(u) = &mut u {
                u.swap_rows(r, b);
            }
            let pivot = h[(r, j)].clone();
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -h[(i, j)].div_round(&pivot);
                h.add_row_multiple(i, r, &q);
                if let Some(u) = &mut u {
                    u.add_row_multiple(i, r, &q);
                }
                if !h[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, j)].is_zero() {
            continue;
        }
        if h[(r, j)].is_negative() {
            h.negate_row(r);
            if let Some(u) = &mut u {
                u.negate_row(r);
            }
        }
        let pivot = h[(r, j)].clone();
        for i in 0..r {
            let (q, _) = h[(i, j)].div_mod_floor(&pivot);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-&q);
                if let Some(u) = &mut u {
                    u.add_row_multiple(i, r, &-&q);
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    Hermite { h, pivots, transform: u }
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn column_basis(gens: &Matrix) -> Matrix {
    let herm = hermite_rows(&gens.transpose(), false);
    herm.h.submatrix(0, herm.rank(), 0, gens.rows).transpose()
}

/// Canonical basis (as columns) of the integer kernel `{x : A x = 0}`.
///
/// The kernel of an integer matrix is always saturated.
pub fn kernel(a: &Matrix) -> Matrix {
    let herm = hermite_rows(&a.transpose(), true);
    let u = herm.transform.expect("tracked");
    let rank = herm.pivots.len();
    let vectors = u.submatrix(rank, a.cols, 0, a.cols).transpose();
    if vectors.cols() == 0 {
        return vectors;
    }
    column_basis(&vectors)
}

/// Solves `basis · c = v` for every column `v` of `vectors`, if an integral
/// solution exists. `basis` must have full column rank.
pub fn express_in_basis(basis: &Matrix, vectors: &Matrix) -> Option<Matrix> {
    let k = basis.cols;
    let snf = smith(basis, SmithTransforms { left: true, left_inverse: false, right: true });
    assert_eq!(snf.rank(), k, "basis must have full column rank");
    let p = snf.left.as_ref().expect("tracked");
    let q = snf.right.as_ref().expect("tracked");
    let pv = p.mul(vectors);
    let mut y = Matrix::zeros(k, vectors.cols);
    for j in 0..vectors.cols {
        for i in 0..basis.rows {
            let v = &pv[(i, j)];
            if i < k {
                let d = &snf.diagonal[i];
                if !d.divides(v) {
                    return None;
                }
                y[(i, j)] = v.div_exact(d);
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(q.mul(&y))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &Matrix) -> Z {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows;
    if n == 0 {
        return Z::ONE;
    }
    let mut m = a.clone();
    let mut sign = 1;
    let mut prev = Z::ONE;
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Z::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                m[(i, j)] = num.div_exact(&prev);
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Large prime below 2^31; products of two residues fit in a `u64`.
pub const RANK_PRIME: u64 = 2_147_483_629;

/// Rank of a dense residue matrix over F_p (consumed).
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&v| v * inv % p).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if y != 0 {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
