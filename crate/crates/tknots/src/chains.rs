//! Chain complexes of shadow biquandles and of local biquandles, with the
//! degenerate subcomplex quotiented away by basis restriction: bases hold
//! only nondegenerate generators and boundary images drop degenerate terms.
//!
//! Homology over Z comes from Smith normal forms of the boundary matrices;
//! homology with Z_m coefficients is computed independently with Howell-form
//! kernel/image linear algebra, so composite moduli work.

use crate::algebra::ShadowBiquandle;
use crate::cocycles::{CochainTable, CochainTheory};
use crate::error::{Error, Result};
use crate::howell::{kernel_mod, solve_mod, Howell};
use crate::matrix::{smith_with, IntMat};
use crate::tribracket::HorizontalTribracket;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

/// Which chain theory a complex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoryKind {
    Sb,
    Lb,
}

/// A basis generator: region slot plus the word of operator entries.
/// For the SB theory the word holds biquandle elements, for the LB theory
/// the fibers `y_i` of `((x,y_1),...,(x,y_n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub base: usize,
    pub word: Vec<usize>,
}

impl Gen {
    pub fn new(base: usize, word: Vec<usize>) -> Self {
        Gen { base, word }
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    /// Degenerate iff two consecutive word entries coincide.
    pub fn is_degenerate(&self) -> bool {
        self.word.windows(2).any(|w| w[0] == w[1])
    }
}

/// Sparse integer chain in the quotient basis of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalChain {
    pub degree: usize,
    coeffs: BTreeMap<usize, i64>,
}

impl FormalChain {
    pub fn zero(degree: usize) -> Self {
        FormalChain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, index: usize, coeff: i64) {
        let e = self.coeffs.entry(index).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&index);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn coeff(&self, index: usize) -> i64 {
        self.coeffs.get(&index).copied().unwrap_or(0)
    }
}

enum Backing {
    Sb(ShadowBiquandle),
    Lb(HorizontalTribracket),
}

/// A chain complex computed up to a degree cap: ordered nondegenerate
/// generator bases and sparse boundary matrices, with `d . d = 0` verified
/// generator by generator at construction.
pub struct ChainTheory {
    kind: TheoryKind,
    backing: Backing,
    cap: usize,
    gens: Vec<Vec<Gen>>,
    index: Vec<HashMap<Gen, usize>>,
    columns: Vec<Vec<Vec<(usize, i64)>>>, // columns[n][j]: sparse column of d_n
}

const MAX_TOTAL_GENERATORS: usize = 500_000;

impl ChainTheory {
    /// Shadow-biquandle complex of `(B, X)` up to degree `cap`.
    pub fn sb(sb: ShadowBiquandle, cap: usize) -> Result<Self> {
        let (base, word) = (sb.x_size(), sb.b_size());
        Self::build(TheoryKind::Sb, Backing::Sb(sb), base, word, cap)
    }

    /// Local-biquandle complex of a tribracket up to degree `cap`.
    pub fn lb(tri: HorizontalTribracket, cap: usize) -> Result<Self> {
        let k = tri.size();
        Self::build(TheoryKind::Lb, Backing::Lb(tri), k, k, cap)
    }

    fn build(
        kind: TheoryKind,
        backing: Backing,
        base_size: usize,
        word_size: usize,
        cap: usize,
    ) -> Result<Self> {
        if cap < 1 {
            return Err(Error::contract("degree cap must be at least 1"));
        }
        let mut total = 0usize;
        let mut count = base_size * word_size;
        for _ in 1..=cap {
            total = total.saturating_add(count);
            count = count.saturating_mul(word_size.saturating_sub(1).max(1));
        }
        if total > MAX_TOTAL_GENERATORS {
            return Err(Error::contract(format!(
                "degree cap {cap} needs {total} generators, over the limit"
            )));
        }

        let mut gens: Vec<Vec<Gen>> = vec![Vec::new()];
        let mut index: Vec<HashMap<Gen, usize>> = vec![HashMap::new()];
        for n in 1..=cap {
            let mut level = Vec::new();
            let mut word = vec![0usize; n];
            'enumerate: loop {
                let g = Gen::new(word[0], word[1..].to_vec());
                let _ = g;
                break 'enumerate;
            }
            // lexicographic enumeration: base, then word entries
            let mut counters = vec![0usize; n + 1];
            loop {
                let base = counters[0];
                if base == base_size {
                    break;
                }
                word.clear();
                word.extend_from_slice(&counters[1..]);
                let g = Gen::new(base, word.clone());
                if !g.is_degenerate() {
                    level.push(g);
                }
                // odometer: last word slot fastest
                let mut i = n;
                loop {
                    counters[i] += 1;
                    let limit = if i == 0 { base_size } else { word_size };
                    if counters[i] == limit && i > 0 {
                        counters[i] = 0;
                        i -= 1;
                    } else {
                        break;
                    }
                }
            }
            let map = level
                .iter()
                .enumerate()
                .map(|(i, g)| (g.clone(), i))
                .collect();
            gens.push(level);
            index.push(map);
        }

        let mut theory = ChainTheory {
            kind,
            backing,
            cap,
            gens,
            index,
            columns: Vec::new(),
        };
        let mut columns = vec![Vec::new()];
        for n in 1..=cap {
            let mut cols = Vec::with_capacity(theory.gens[n].len());
            for g in &theory.gens[n] {
                let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                if n >= 2 {
                    for (t, c) in theory.boundary_raw(g) {
                        if t.is_degenerate() {
                            continue;
                        }
                        let idx = theory.index[n - 1][&t];
                        let e = col.entry(idx).or_insert(0);
                        *e += c;
                    }
                }
                cols.push(col.into_iter().filter(|&(_, c)| c != 0).collect());
            }
            columns.push(cols);
        }
        theory.columns = columns;

        // d . d = 0 on every generator
        for n in 2..=cap {
            for j in 0..theory.gens[n].len() {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(row, c) in &theory.columns[n][j] {
                    for &(row2, c2) in &theory.columns[n - 1][row] {
                        *acc.entry(row2).or_insert(0) += c * c2;
                    }
                }
                if acc.values().any(|&c| c != 0) {
                    return Err(Error::Axioms(format!(
                        "boundary of boundary nonzero at degree {n} generator {j}"
                    )));
                }
            }
        }
        Ok(theory)
    }

    pub fn kind(&self) -> TheoryKind {
        self.kind
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn sb_structure(&self) -> Option<&ShadowBiquandle> {
        match &self.backing {
            Backing::Sb(sb) => Some(sb),
            Backing::Lb(_) => None,
        }
    }

    pub fn lb_structure(&self) -> Option<&HorizontalTribracket> {
        match &self.backing {
            Backing::Lb(t) => Some(t),
            Backing::Sb(_) => None,
        }
    }

    pub fn gen_count(&self, n: usize) -> usize {
        self.gens.get(n).map_or(0, |g| g.len())
    }

    pub fn gens(&self, n: usize) -> &[Gen] {
        &self.gens[n]
    }

    pub fn gen_index(&self, g: &Gen) -> Option<usize> {
        self.index.get(g.degree())?.get(g).copied()
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n < 1 || n > self.cap {
            return Err(Error::contract(format!(
                "degree {n} outside computed range 1..={}",
                self.cap
            )));
        }
        Ok(())
    }

    /// Alternating-sum boundary of one generator in the unquotiented
    /// complex: degenerate terms are kept. Degree-1 generators map to zero
    /// (the degree-0 module is zero).
    pub fn boundary_raw(&self, g: &Gen) -> Vec<(Gen, i64)> {
        let n = g.degree();
        let mut terms = Vec::new();
        if n < 2 {
            return terms;
        }
        for i in 1..=n {
            let sign = if i % 2 == 1 { -1 } else { 1 };
            let mut w1 = Vec::with_capacity(n - 1);
            w1.extend_from_slice(&g.word[..i - 1]);
            w1.extend_from_slice(&g.word[i..]);
            terms.push((Gen::new(g.base, w1), sign));

            let ai = g.word[i - 1];
            let (base2, w2) = match &self.backing {
                Backing::Sb(sb) => {
                    let bq = sb.biquandle();
                    let bs = sb.bset();
                    let mut w = Vec::with_capacity(n - 1);
                    for j in 0..i - 1 {
                        w.push(bq.under(g.word[j], ai));
                    }
                    for j in i..n {
                        w.push(bq.over(g.word[j], ai));
                    }
                    (bs.act(g.base, ai), w)
                }
                Backing::Lb(t) => {
                    let mut w = Vec::with_capacity(n - 1);
                    for j in 0..i - 1 {
                        w.push(t.bracket(g.base, g.word[j], ai));
                    }
                    for j in i..n {
                        w.push(t.bracket(g.base, ai, g.word[j]));
                    }
                    (ai, w)
                }
            };
            terms.push((Gen::new(base2, w2), -sign));
        }
        terms
    }

    /// Boundary of one nondegenerate generator in the quotient complex.
    pub fn boundary_gen(&self, g: &Gen) -> Result<FormalChain> {
        let n = g.degree();
        self.check_degree(n)?;
        if g.is_degenerate() {
            return Err(Error::contract("boundary of a degenerate generator"));
        }
        let idx = self
            .gen_index(g)
            .ok_or_else(|| Error::contract("generator out of range"))?;
        let mut out = FormalChain::zero(n - 1);
        for &(row, c) in &self.columns[n][idx] {
            out.add(row, c);
        }
        Ok(out)
    }

    /// Boundary of a chain, linearly.
    pub fn boundary(&self, c: &FormalChain) -> Result<FormalChain> {
        self.check_degree(c.degree)?;
        let mut out = FormalChain::zero(c.degree - 1);
        for (idx, coeff) in c.iter() {
            for &(row, c2) in &self.columns[c.degree][idx] {
                out.add(row, coeff * c2);
            }
        }
        Ok(out)
    }

    /// Dense boundary matrix of degree `n` (rows: degree n-1 basis).
    pub fn boundary_matrix(&self, n: usize) -> Result<IntMat> {
        self.check_degree(n)?;
        let rows = if n == 1 { 0 } else { self.gen_count(n - 1) };
        let mut m = IntMat::zeros(rows, self.gen_count(n));
        for (j, col) in self.columns[n].iter().enumerate() {
            for &(i, c) in col {
                m.set(i, j, BigInt::from(c));
            }
        }
        Ok(m)
    }

    fn boundary_rows_mod(&self, n: usize, m: u64) -> Vec<Vec<u64>> {
        let rows = if n == 1 { 0 } else { self.gen_count(n - 1) };
        let mut out = vec![vec![0u64; self.gen_count(n)]; rows];
        for (j, col) in self.columns[n].iter().enumerate() {
            for &(i, c) in col {
                out[i][j] = c.rem_euclid(m as i64) as u64;
            }
        }
        out
    }

    /// Transposed boundary rows mod m: one row per degree-(n+1) generator.
    fn coboundary_rows_mod(&self, n: usize, m: u64) -> Vec<Vec<u64>> {
        let q = self.gen_count(n);
        self.columns[n + 1]
            .iter()
            .map(|col| {
                let mut row = vec![0u64; q];
                for &(i, c) in col {
                    row[i] = c.rem_euclid(m as i64) as u64;
                }
                row
            })
            .collect()
    }

    /// Evaluates a cochain on a chain of matching degree, mod the cochain's
    /// modulus.
    pub fn evaluate(&self, theta: &CochainTable, c: &FormalChain) -> Result<u64> {
        self.check_cochain(theta, c.degree)?;
        let m = theta.modulus as i128;
        let mut acc: i128 = 0;
        for (idx, coeff) in c.iter() {
            let g = &self.gens[c.degree][idx];
            acc += coeff as i128 * theta.eval(g.base, &g.word) as i128;
        }
        Ok(acc.rem_euclid(m) as u64)
    }

    fn check_cochain(&self, theta: &CochainTable, degree: usize) -> Result<()> {
        let ok = matches!(
            (self.kind, theta.theory),
            (TheoryKind::Sb, CochainTheory::Sb) | (TheoryKind::Lb, CochainTheory::Lb)
        );
        if !ok {
            return Err(Error::contract("cochain theory does not match the complex"));
        }
        if theta.degree != degree {
            return Err(Error::contract(format!(
                "cochain degree {} does not match {degree}",
                theta.degree
            )));
        }
        Ok(())
    }

    /// `delta theta = 0`: theta vanishes on the boundary of every
    /// nondegenerate generator one degree up.
    pub fn is_cocycle(&self, theta: &CochainTable, n: usize, m: u64) -> Result<bool> {
        self.check_cochain(theta, n)?;
        if theta.modulus != m {
            return Err(Error::contract("modulus mismatch"));
        }
        self.check_degree(n + 1)?;
        for (j, h) in self.gens[n + 1].iter().enumerate() {
            let _ = h;
            let mut acc: i128 = 0;
            for &(row, c) in &self.columns[n + 1][j] {
                let g = &self.gens[n][row];
                acc += c as i128 * theta.eval(g.base, &g.word) as i128;
            }
            if acc.rem_euclid(m as i128) != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Is theta the coboundary of some cochain one degree down?
    pub fn is_coboundary(&self, theta: &CochainTable, n: usize, m: u64) -> Result<bool> {
        self.check_cochain(theta, n)?;
        if theta.modulus != m {
            return Err(Error::contract("modulus mismatch"));
        }
        self.check_degree(n)?;
        let dense: Vec<u64> = self.gens[n]
            .iter()
            .map(|g| theta.eval(g.base, &g.word) % m)
            .collect();
        if n == 1 {
            // the degree-0 module is zero, so only the zero cochain bounds
            return Ok(dense.iter().all(|&v| v == 0));
        }
        // delta psi = psi . d_n: columns indexed by the degree-(n-1) basis
        let cols: Vec<Vec<u64>> = {
            let rows = self.boundary_rows_mod(n, m);
            rows
        };
        Ok(solve_mod(&cols, &dense, m)?.is_some())
    }

    /// Generating set of the cocycle group `ker delta^n` mod m.
    pub fn cocycle_basis(&self, n: usize, m: u64) -> Result<Vec<CochainTable>> {
        self.check_degree(n + 1)?;
        if m < 2 {
            return Err(Error::contract("modulus must be at least 2"));
        }
        let rows = self.coboundary_rows_mod(n, m);
        let gens = kernel_mod(&rows, self.gen_count(n), m)?;
        let theory = match self.kind {
            TheoryKind::Sb => CochainTheory::Sb,
            TheoryKind::Lb => CochainTheory::Lb,
        };
        let mut out = Vec::new();
        for v in gens {
            let mut t = CochainTable::new(theory, n, m)?;
            for (j, &val) in v.iter().enumerate() {
                if val != 0 {
                    let g = &self.gens[n][j];
                    t.set(g.base, g.word.clone(), val);
                }
            }
            out.push(t);
        }
        Ok(out)
    }

    /// Integral homology at degree `n` (needs boundaries up to `n+1`).
    pub fn homology_z(&self, n: usize) -> Result<AbelianGroupPresentation> {
        self.check_degree(n)?;
        self.check_degree(n + 1)?;
        let q = self.gen_count(n);
        let rank_n = if n == 1 {
            0
        } else {
            smith_with(&self.boundary_matrix(n)?, false, false).rank
        };
        let snf_next = smith_with(&self.boundary_matrix(n + 1)?, true, false);
        let r_plus = snf_next.rank;
        let divisors = snf_next.divisors();
        let mut torsion = Vec::new();
        for d in &divisors {
            if *d > BigInt::from(1) {
                let v = d
                    .to_u64()
                    .ok_or_else(|| Error::contract("torsion divisor exceeds u64"))?;
                torsion.push(v);
            }
        }
        Ok(AbelianGroupPresentation {
            degree: n,
            free_rank: q - rank_n - r_plus,
            torsion,
            coords: Some(CoordData {
                u: snf_next.u.expect("u requested"),
                divisors,
                r_plus,
            }),
        })
    }

    /// Coordinates of a cycle's homology class in the presentation computed
    /// by [`Self::homology_z`]: torsion slots reduced mod their divisor,
    /// then the free block.
    pub fn class_coords(
        &self,
        pres: &AbelianGroupPresentation,
        cycle: &FormalChain,
    ) -> Result<Vec<BigInt>> {
        if cycle.degree != pres.degree {
            return Err(Error::contract("cycle degree does not match presentation"));
        }
        if !self.boundary(cycle)?.is_zero() {
            return Err(Error::contract("chain is not a cycle"));
        }
        let data = pres
            .coords
            .as_ref()
            .ok_or_else(|| Error::contract("presentation carries no coordinate data"))?;
        let q = self.gen_count(pres.degree);
        let mut z = vec![BigInt::zero(); q];
        for (idx, c) in cycle.iter() {
            z[idx] = BigInt::from(c);
        }
        let c = data.u.mul_vec(&z);
        let mut out = Vec::new();
        for i in 0..data.r_plus {
            let d = &data.divisors[i];
            if *d > BigInt::from(1) {
                out.push(c[i].mod_floor(d));
            }
        }
        for item in c.iter().take(q).skip(data.r_plus) {
            out.push(item.clone());
        }
        Ok(out)
    }

    /// Homology with Z_m coefficients, by Howell-form kernel/image
    /// computation and an integral presentation of the quotient.
    pub fn homology_mod(&self, n: usize, m: u64) -> Result<AbelianGroupPresentation> {
        self.check_degree(n)?;
        self.check_degree(n + 1)?;
        if m < 2 {
            return Err(Error::contract("modulus must be at least 2"));
        }
        let q = self.gen_count(n);
        let kernel = kernel_mod(&self.boundary_rows_mod(n, m), q, m)?;
        let k = kernel.len();
        if k == 0 {
            return Ok(AbelianGroupPresentation {
                degree: n,
                free_rank: 0,
                torsion: Vec::new(),
                coords: None,
            });
        }
        // image generators, Howell-reduced
        let mut ih = Howell::new(m, q)?;
        for col in self.coboundary_rows_mod(n, m) {
            ih.insert(col);
        }
        // relations: image coordinates, combinations of kernel generators
        // that vanish mod m, and the order-m relations of each generator
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for row in ih.rows() {
            let coords = solve_mod(&kernel, row, m)?.ok_or_else(|| {
                Error::Axioms("image vector not inside the kernel".to_string())
            })?;
            relations.push(coords.iter().map(|&x| x as i64).collect());
        }
        let lift_constraints: Vec<Vec<u64>> = (0..q)
            .map(|j| kernel.iter().map(|g| g[j]).collect())
            .collect();
        for c in kernel_mod(&lift_constraints, k, m)? {
            relations.push(c.iter().map(|&x| x as i64).collect());
        }
        for i in 0..k {
            let mut r = vec![0i64; k];
            r[i] = m as i64;
            relations.push(r);
        }
        // presentation matrix: k rows, one column per relation
        let mut rel = IntMat::zeros(k, relations.len());
        for (j, r) in relations.iter().enumerate() {
            for (i, &v) in r.iter().enumerate() {
                rel.set(i, j, BigInt::from(v));
            }
        }
        let s = smith_with(&rel, false, false);
        if s.rank != k {
            return Err(Error::Axioms(
                "mod-m homology presentation has unexpected free part".to_string(),
            ));
        }
        let mut torsion = Vec::new();
        for d in s.divisors() {
            if d > BigInt::from(1) {
                torsion.push(
                    d.to_u64()
                        .ok_or_else(|| Error::contract("torsion divisor exceeds u64"))?,
                );
            }
        }
        Ok(AbelianGroupPresentation {
            degree: n,
            free_rank: 0,
            torsion,
            coords: None,
        })
    }
}

/// Free rank plus torsion divisor chain, with optional data for expressing
/// cycle classes in coordinates (integral presentations only).
#[derive(Debug, Clone)]
pub struct AbelianGroupPresentation {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    coords: Option<CoordData>,
}

#[derive(Debug, Clone)]
struct CoordData {
    u: IntMat,
    divisors: Vec<BigInt>,
    r_plus: usize,
}

impl AbelianGroupPresentation {
    pub fn has_coords(&self) -> bool {
        self.coords.is_some()
    }
}

/// `mu((x, a_1..a_n)) = (x, x*a_1, ..., x*a_n)` read as an LB generator.
pub fn mu_gen(sb: &ShadowBiquandle, g: &Gen) -> Result<Gen> {
    if !sb.strongly_connected() {
        return Err(Error::contract("mu needs a strongly connected B-set"));
    }
    let bs = sb.bset();
    let word = g.word.iter().map(|&a| bs.act(g.base, a)).collect();
    Ok(Gen::new(g.base, word))
}

/// `eta(((x,y_1),...,(x,y_n))) = (x, x searrow y_1, ..., x searrow y_n)`.
pub fn eta_gen(sb: &ShadowBiquandle, g: &Gen) -> Result<Gen> {
    if !sb.strongly_connected() {
        return Err(Error::contract("eta needs a strongly connected B-set"));
    }
    let bs = sb.bset();
    let word = g.word.iter().map(|&y| bs.searrow(g.base, y)).collect();
    Ok(Gen::new(g.base, word))
}

/// Pushes a chain through a generator map between two theories.
pub fn map_chain(
    from: &ChainTheory,
    to: &ChainTheory,
    c: &FormalChain,
    f: impl Fn(&Gen) -> Result<Gen>,
) -> Result<FormalChain> {
    let mut out = FormalChain::zero(c.degree);
    for (idx, coeff) in c.iter() {
        let g = &from.gens(c.degree)[idx];
        let h = f(g)?;
        let hidx = to
            .gen_index(&h)
            .ok_or_else(|| Error::contract("mapped generator missing in target basis"))?;
        out.add(hidx, coeff);
    }
    Ok(out)
}

/// Canonical invariant-factor chain of a finite abelian group given as any
/// multiset of cyclic orders.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &d in orders {
        let mut d = d;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                let mut e = 0;
                while d % p == 0 {
                    d /= p;
                    e += 1;
                }
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if d > 1 {
            by_prime.entry(d).or_default().push(1);
        }
    }
    let max_len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; max_len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, e) in exps.into_iter().enumerate() {
            factors[slot] *= p.pow(e);
        }
    }
    factors.retain(|&f| f > 1);
    factors.reverse(); // ascending divisor chain
    factors
}
