//! Linear algebra over `Z_m` for arbitrary (composite) `m`, built on the
//! Howell normal form: an echelon generating set closed under the property
//! that every span element supported on later columns is generated by the
//! rows with later pivots. That closure is what makes kernel extraction and
//! membership tests work over non-prime moduli.

use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extended gcd on signed values: returns (g, s, t) with s*a + t*b = g.
fn extgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = extgcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

fn modinv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = extgcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some((s.rem_euclid(m as i128)) as u64)
}

/// A unit u (mod m) with u*v = gcd(v, m) (mod m).
fn unit_multiplier(v: u64, m: u64) -> u64 {
    let g = gcd(v, m);
    let (v1, m1) = (v / g, m / g);
    let u0 = modinv(v1 % m1.max(1), m1.max(1)).unwrap_or(1).max(1);
    let mut u = u0 % m;
    if u == 0 {
        u = m1 % m;
    }
    for k in 0..m {
        let cand = (u0 + k * m1) % m;
        if cand != 0 && gcd(cand, m) == 1 {
            return cand;
        }
    }
    debug_assert!(false, "no unit multiplier for v={v} m={m}");
    u
}

/// Row-echelon generating set over `Z_m` with the Howell closure property.
#[derive(Debug, Clone)]
pub struct Howell {
    m: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,       // sorted by pivot column
    pivot_cols: Vec<usize>,
}

impl Howell {
    pub fn new(m: u64, cols: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::contract("modulus must be at least 2"));
        }
        Ok(Howell {
            m,
            cols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn mul_row(&self, row: &[u64], c: u64) -> Vec<u64> {
        row.iter()
            .map(|&x| ((x as u128 * c as u128) % self.m as u128) as u64)
            .collect()
    }

    fn combine(&self, a: &[u64], ca: i128, b: &[u64], cb: i128) -> Vec<u64> {
        let m = self.m as i128;
        a.iter()
            .zip(b)
            .map(|(&x, &y)| ((ca * x as i128 + cb * y as i128).rem_euclid(m)) as u64)
            .collect()
    }

    fn leading(row: &[u64]) -> Option<usize> {
        row.iter().position(|&x| x != 0)
    }

    /// Scale so the leading entry becomes gcd(lead, m).
    fn normalize(&self, row: Vec<u64>) -> Vec<u64> {
        let j = Self::leading(&row).expect("normalize of zero row");
        let u = unit_multiplier(row[j], self.m);
        self.mul_row(&row, u)
    }

    /// Inserts a row, maintaining echelon shape and Howell closure.
    pub fn insert(&mut self, row: Vec<u64>) {
        let mut queue = vec![row];
        while let Some(mut row) = queue.pop() {
            for x in row.iter_mut() {
                *x %= self.m;
            }
            loop {
                let Some(j) = Self::leading(&row) else { break };
                match self.pivot_cols.binary_search(&j) {
                    Ok(idx) => {
                        let p = self.rows[idx][j];
                        if row[j] % p == 0 {
                            let q = row[j] / p;
                            row = self.combine(&row, 1, &self.rows[idx], -(q as i128));
                        } else {
                            let (g, s, t) = extgcd(p as i128, row[j] as i128);
                            let new_pivot =
                                self.combine(&self.rows[idx], s, &row, t);
                            let repl = self.combine(
                                &self.rows[idx],
                                (row[j] as i128) / g,
                                &row,
                                -((p as i128) / g),
                            );
                            debug_assert_eq!(Self::leading(&new_pivot), Some(j));
                            self.rows[idx] = self.normalize(new_pivot);
                            let ann = self.annihilator(idx);
                            if let Some(a) = ann {
                                queue.push(a);
                            }
                            row = repl;
                        }
                    }
                    Err(idx) => {
                        let nr = self.normalize(row);
                        self.rows.insert(idx, nr);
                        self.pivot_cols.insert(idx, j);
                        if let Some(a) = self.annihilator(idx) {
                            queue.push(a);
                        }
                        break;
                    }
                }
            }
        }
    }

    /// (m / gcd(pivot, m)) times a row: in the span, supported strictly to
    /// the right of the row's pivot. None when it vanishes.
    fn annihilator(&self, idx: usize) -> Option<Vec<u64>> {
        let j = self.pivot_cols[idx];
        let p = self.rows[idx][j];
        let f = self.m / gcd(p, self.m);
        if f % self.m == 0 {
            return None;
        }
        let a = self.mul_row(&self.rows[idx], f % self.m);
        if a.iter().all(|&x| x == 0) {
            None
        } else {
            Some(a)
        }
    }

    /// Reduce entries above pivots into canonical range.
    pub fn canonicalize(&mut self) {
        for idx in 0..self.rows.len() {
            let j = self.pivot_cols[idx];
            let p = self.rows[idx][j];
            for idx2 in 0..idx {
                let q = self.rows[idx2][j] / p;
                if q != 0 {
                    let pivot_row = self.rows[idx].clone();
                    self.rows[idx2] =
                        self.combine(&self.rows[idx2], 1, &pivot_row, -(q as i128));
                }
            }
        }
    }

    /// Remainder of `v` after greedy elimination against the basis.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = v.iter().map(|&x| x % self.m).collect();
        for (idx, &j) in self.pivot_cols.iter().enumerate() {
            if v[j] != 0 {
                let p = self.rows[idx][j];
                if v[j] % p == 0 {
                    let q = v[j] / p;
                    v = self.combine(&v, 1, &self.rows[idx], -(q as i128));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Generators of `{x in Z_m^cols : A x = 0}` given the constraint rows of A.
pub fn kernel_mod(constraints: &[Vec<u64>], cols: usize, m: u64) -> Result<Vec<Vec<u64>>> {
    let mut h = Howell::new(m, cols)?;
    for r in constraints {
        debug_assert_eq!(r.len(), cols);
        h.insert(r.clone());
    }
    let p = h.rows().len();
    // rows (column_i of the reduced constraints | e_i): the span is
    // {(A x, x)}; rows supported only on the tail give the kernel.
    let mut aug = Howell::new(m, p + cols)?;
    for i in 0..cols {
        let mut row = vec![0u64; p + cols];
        for (ri, hr) in h.rows().iter().enumerate() {
            row[ri] = hr[i];
        }
        row[p + i] = 1;
        aug.insert(row);
    }
    aug.canonicalize();
    let gens = aug
        .rows()
        .iter()
        .filter(|r| r[..p].iter().all(|&x| x == 0))
        .map(|r| r[p..].to_vec())
        .collect();
    Ok(gens)
}

/// Solves `sum_i x_i * columns[i] = b (mod m)`.
pub fn solve_mod(columns: &[Vec<u64>], b: &[u64], m: u64) -> Result<Option<Vec<u64>>> {
    let q = columns.len();
    let p = b.len();
    let mut aug = Howell::new(m, p + q)?;
    for (i, col) in columns.iter().enumerate() {
        debug_assert_eq!(col.len(), p);
        let mut row = vec![0u64; p + q];
        row[..p].copy_from_slice(col);
        row[p + i] = 1;
        aug.insert(row);
    }
    let mut v = vec![0u64; p + q];
    for (i, &x) in b.iter().enumerate() {
        v[i] = x % m;
    }
    let red = aug.reduce(&v);
    if red[..p].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    Ok(Some(red[p..].iter().map(|&x| (m - x % m) % m).collect()))
}
