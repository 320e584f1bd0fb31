//! Exact integer matrices over arbitrary-precision integers and the Smith
//! normal form. No wraparound is possible: all arithmetic is on `BigInt`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
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
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::malformed("ragged matrix"));
        }
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(e));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
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

    /// row[i] -= q * row[k]
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            if !self.data[k * self.cols + j].is_zero() {
                let t = q * &self.data[k * self.cols + j];
                self.data[i * self.cols + j] -= t;
            }
        }
    }

    /// col[j] -= q * col[k]
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            if !self.data[i * self.cols + k].is_zero() {
                let t = q * &self.data[i * self.cols + k];
                self.data[i * self.cols + j] -= t;
            }
        }
    }

    /// row[k] += row[i]
    fn row_add(&mut self, k: usize, i: usize) {
        for j in 0..self.cols {
            if !self.data[i * self.cols + j].is_zero() {
                let t = self.data[i * self.cols + j].clone();
                self.data[k * self.cols + j] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let t = -self.data[i * self.cols + j].clone();
            self.data[i * self.cols + j] = t;
        }
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal satisfying the
/// divisibility chain. `u`/`v` are present when requested.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub d: IntMat,
    pub u: Option<IntMat>,
    pub v: Option<IntMat>,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in chain order.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Full Smith normal form with both transformation matrices.
pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    smith_with(m, true, true)
}

/// Smith normal form, optionally skipping `u` / `v` when the caller only
/// needs the divisors or one-sided coordinates.
pub fn smith_with(mat: &IntMat, want_u: bool, want_v: bool) -> SmithDecomposition {
    let (rows, cols) = (mat.rows(), mat.cols());
    let mut d = mat.clone();
    let mut u = want_u.then(|| IntMat::identity(rows));
    let mut v = want_v.then(|| IntMat::identity(cols));
    let steps = rows.min(cols);
    let mut rank = 0;

    'stage: for k in 0..steps {
        loop {
            // smallest nonzero entry of the working submatrix as pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = d.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => e.abs() < d.get(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'stage };
            d.swap_rows(k, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(k, pi);
            }
            d.swap_cols(k, pj);
            if let Some(v) = v.as_mut() {
                v.swap_cols(k, pj);
            }

            let mut dirty = false;
            for i in k + 1..rows {
                if !d.get(i, k).is_zero() {
                    let q = d.get(i, k) / d.get(k, k);
                    if !q.is_zero() {
                        d.row_sub(i, k, &q);
                        if let Some(u) = u.as_mut() {
                            u.row_sub(i, k, &q);
                        }
                    }
                    if !d.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !d.get(k, j).is_zero() {
                    let q = d.get(k, j) / d.get(k, k);
                    if !q.is_zero() {
                        d.col_sub(j, k, &q);
                        if let Some(v) = v.as_mut() {
                            v.col_sub(j, k, &q);
                        }
                    }
                    if !d.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue; // smaller residues appeared, re-pick the pivot
            }

            // pivot must divide everything that remains
            let mut fix: Option<usize> = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    d.row_add(k, i);
                    if let Some(u) = u.as_mut() {
                        u.row_add(k, i);
                    }
                }
                None => {
                    rank = k + 1;
                    break;
                }
            }
        }
    }

    for k in 0..rank {
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            if let Some(u) = u.as_mut() {
                u.negate_row(k);
            }
        }
    }
    SmithDecomposition { d, u, v, rank }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMat) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(Error::contract("determinant of a non-square matrix"));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, &t / &prev);
            }
        }
        for i in k + 1..n {
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    Ok(a.get(n - 1, n - 1) * sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(rows: &[Vec<i64>]) -> SmithDecomposition {
        let m = IntMat::from_rows(rows).unwrap();
        let s = smith_normal_form(&m);
        let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
        assert_eq!(u.mul(&m).mul(v), s.d, "u*m*v != d");
        assert_eq!(determinant(u).unwrap().abs(), BigInt::one());
        assert_eq!(determinant(v).unwrap().abs(), BigInt::one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero(), "off-diagonal at ({i},{j})");
                }
            }
        }
        for i in 1..s.rank {
            assert!(
                (s.d.get(i, i) % s.d.get(i - 1, i - 1)).is_zero(),
                "divisibility chain broken at {i}"
            );
        }
        for i in s.rank..s.d.rows().min(s.d.cols()) {
            assert!(s.d.get(i, i).is_zero());
        }
        s
    }

    #[test]
    fn classic_two_by_two() {
        let s = check_snf(&[vec![2, 0], vec![0, 3]]);
        let divs = s.divisors();
        assert_eq!(divs, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let m = IntMat::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
        assert_eq!(s.u.unwrap(), IntMat::identity(2));
        assert_eq!(s.v.unwrap(), IntMat::identity(2));
    }

    #[test]
    fn empty_row_matrix() {
        let m = IntMat::zeros(0, 3);
        let s = smith_normal_form(&m);
        assert_eq!(s.rank, 0);
        assert_eq!(s.v.unwrap(), IntMat::identity(3));
    }

    #[test]
    fn known_divisors() {
        let s = check_snf(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let divs: Vec<i64> = s
            .divisors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(divs, vec![1, 3, 21]);
    }

    #[test]
    fn random_matrices_reconstruct() {
        // deterministic xorshift so the test is reproducible
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let rows = 1 + (next() % 6) as usize;
            let cols = 1 + (next() % 8) as usize;
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| (next() % 11) as i64 - 5).collect())
                .collect();
            check_snf(&m);
        }
    }

    #[test]
    fn determinant_matches_cofactor_small() {
        let m = IntMat::from_rows(&[vec![3, 1], vec![4, 2]]).unwrap();
        assert_eq!(determinant(&m).unwrap(), BigInt::from(2));
        let m3 = IntMat::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).unwrap();
        assert_eq!(determinant(&m3).unwrap(), BigInt::from(-3));
    }
}
