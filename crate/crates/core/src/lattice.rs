//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! The column lattice of a matrix `A` is `{A y : y ∈ Z^cols}`. Hermite
//! normal form (column style) gives a canonical basis of it and lets us
//! decide membership and pick canonical coset representatives; Smith normal
//! form gives the structure of the cokernel `Z^rows / A Z^cols`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row slices. All rows must share one length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            for (j, &v) in r.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum::<BigInt>()
            })
            .collect())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * &m[(n - 1, n - 1)])
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

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Column-style Hermite normal form: `A · U = [H | 0]`.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Row of the pivot of each column of `h`, strictly increasing.
    pub pivot_rows: Vec<usize>,
}

impl HermiteBasis {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn pivot(&self, c: usize) -> &BigInt {
        &self.h[(self.pivot_rows[c], c)]
    }
}

/// Index of the entry with smallest absolute value among the nonzero ones;
/// ties go to the first.
fn smallest_nonzero<'a>(entries: impl Iterator<Item = (usize, &'a BigInt)>) -> Option<usize> {
    let mut best: Option<(usize, &BigInt)> = None;
    for (idx, v) in entries {
        if v.is_zero() {
            continue;
        }
        match best {
            Some((_, b)) if v.abs() >= b.abs() => {}
            _ => best = Some((idx, v)),
        }
    }
    best.map(|(i, _)| i)
}

pub fn hnf(a: &IntMatrix) -> HermiteBasis {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();
    let mut k = 0;

    for i in 0..rows {
        if k == cols {
            break;
        }
        while let Some(p) = smallest_nonzero((k..cols).map(|j| (j, &m[(i, j)]))) {
            m.swap_cols(k, p);
            u.swap_cols(k, p);
            let mut done = true;
            for j in k + 1..cols {
                if m[(i, j)].is_zero() {
                    continue;
                }
                let q = -m[(i, j)].div_floor(&m[(i, k)]);
                m.add_col_multiple(j, k, &q);
                u.add_col_multiple(j, k, &q);
                if !m[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[(i, k)].is_zero() {
            continue;
        }
        if m[(i, k)].is_negative() {
            m.negate_col(k);
            u.negate_col(k);
        }
        for c in 0..k {
            let q = -m[(i, c)].div_floor(&m[(i, k)]);
            m.add_col_multiple(c, k, &q);
            u.add_col_multiple(c, k, &q);
        }
        pivot_rows.push(i);
        k += 1;
    }

    let mut h = IntMatrix::zeros(rows, k);
    for i in 0..rows {
        for j in 0..k {
            h[(i, j)] = m[(i, j)].clone();
        }
    }
    HermiteBasis { h, u, pivot_rows }
}

/// Smith normal form `U · A · V = S` with the inverse transforms kept
/// alongside, so that `A = U⁻¹ · S · V⁻¹` can be checked exactly.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_r`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Every row op on `s` is mirrored on `u`, with the inverse op applied to
    // the columns of `u_inv`; same for column ops and `v`, `v_inv`.
    let row_swap =
        |s: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, a: usize, b: usize| {
            s.swap_rows(a, b);
            u.swap_rows(a, b);
            ui.swap_cols(a, b);
        };
    let col_swap =
        |s: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a: usize, b: usize| {
            s.swap_cols(a, b);
            v.swap_cols(a, b);
            vi.swap_rows(a, b);
        };
    let row_add = |s: &mut IntMatrix,
                   u: &mut IntMatrix,
                   ui: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   q: &BigInt| {
        s.add_row_multiple(dst, src, q);
        u.add_row_multiple(dst, src, q);
        ui.add_col_multiple(src, dst, &-q);
    };
    let col_add = |s: &mut IntMatrix,
                   v: &mut IntMatrix,
                   vi: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   q: &BigInt| {
        s.add_col_multiple(dst, src, q);
        v.add_col_multiple(dst, src, q);
        vi.add_row_multiple(src, dst, &-q);
    };

    for t in 0..rows.min(cols) {
        let entries: Vec<(usize, &BigInt)> = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .map(|(i, j)| (i * cols + j, &s.data[i * cols + j]))
            .collect();
        let Some(flat) = smallest_nonzero(entries.into_iter()) else {
            break;
        };
        row_swap(&mut s, &mut u, &mut u_inv, t, flat / cols);
        col_swap(&mut s, &mut v, &mut v_inv, t, flat % cols);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                row_add(&mut s, &mut u, &mut u_inv, i, t, &q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                col_add(&mut s, &mut v, &mut v_inv, j, t, &q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Row and column are cleared; enforce divisibility of the rest.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        row_add(&mut s, &mut u, &mut u_inv, t, i, &BigInt::one());
                        continue;
                    }
                }
            }
            // Bring the smallest remaining entry of row/column t to the corner.
            let cand: Vec<(usize, &BigInt)> = std::iter::once((t * cols + t, &s[(t, t)]))
                .chain((t + 1..rows).map(|i| (i * cols + t, &s.data[i * cols + t])))
                .chain((t + 1..cols).map(|j| (t * cols + j, &s.data[t * cols + j])))
                .collect();
            let flat = smallest_nonzero(cand.into_iter()).expect("corner is nonzero");
            let (i, j) = (flat / cols, flat % cols);
            if i != t {
                row_swap(&mut s, &mut u, &mut u_inv, t, i);
            }
            if j != t {
                col_swap(&mut s, &mut v, &mut v_inv, t, j);
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }

    SmithDecomposition {
        u,
        s,
        v,
        u_inv,
        v_inv,
    }
}

fn check_len(a: &IntMatrix, x: &[BigInt]) -> Result<()> {
    if x.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            got: x.len(),
        });
    }
    Ok(())
}

/// Finds `y` with `A · y = x`, or `None` when `x` is not in the column lattice.
pub fn lattice_solve(a: &IntMatrix, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    check_len(a, x)?;
    Ok(solve_with(&hnf(a), x))
}

pub(crate) fn solve_with(basis: &HermiteBasis, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut residual = x.to_vec();
    let mut z = vec![BigInt::zero(); basis.u.cols];
    for (c, &p) in basis.pivot_rows.iter().enumerate() {
        let (q, r) = residual[p].div_rem(basis.pivot(c));
        if !r.is_zero() {
            return None;
        }
        for (i, res) in residual.iter_mut().enumerate().skip(p) {
            *res -= &q * &basis.h[(i, c)];
        }
        z[c] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(basis.u.mul_vec(&z).expect("shape"))
}

/// Canonical representative of `x + col-lattice(A)`.
pub fn reduce_mod_lattice(a: &IntMatrix, x: &[BigInt]) -> Result<Vec<BigInt>> {
    check_len(a, x)?;
    Ok(reduce_with(&hnf(a), x).0)
}

/// Returns the representative together with `y` such that `x - rep = A · y`.
pub(crate) fn reduce_with(basis: &HermiteBasis, x: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut rep = x.to_vec();
    let mut z = vec![BigInt::zero(); basis.u.cols];
    for (c, &p) in basis.pivot_rows.iter().enumerate() {
        let q = rep[p].div_floor(basis.pivot(c));
        if q.is_zero() {
            continue;
        }
        for (i, r) in rep.iter_mut().enumerate().skip(p) {
            *r -= &q * &basis.h[(i, c)];
        }
        z[c] = q;
    }
    let y = basis.u.mul_vec(&z).expect("shape");
    (rep, y)
}

/// Structure of `Z^rows / A Z^cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Cokernel {
    pub fn from_smith(rows: usize, d: &SmithDecomposition) -> Cokernel {
        let factors = d.invariant_factors();
        Cokernel {
            free_rank: rows - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }
}

impl fmt::Display for Cokernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 || self.torsion.is_empty() {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" (+) "))
    }
}

pub fn cokernel_structure(a: &IntMatrix) -> Cokernel {
    Cokernel::from_smith(a.rows, &snf(a))
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
