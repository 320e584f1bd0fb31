//! Finite biquandles, B-sets and shadow biquandles as validated lookup tables.
//!
//! Elements are dense indices `0..m-1`; ring-valued constructions keep a
//! separate label list. All tables are validated exhaustively at construction
//! time and inverse tables are precomputed, so downstream code can assume a
//! well-formed structure and do O(1) lookups.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One failed axiom instance: a stable axiom name plus the witness tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

/// Outcome of an exhaustive axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        AxiomReport {
            passed: violations.is_empty(),
            violations,
        }
    }
}

fn push(violations: &mut Vec<Violation>, axiom: &str, witness: &[usize]) {
    violations.push(Violation {
        axiom: axiom.to_string(),
        witness: witness.to_vec(),
    });
}

/// Rejects ragged tables and out-of-range entries before any axiom checking.
fn validate_table(table: &[Vec<usize>], rows: usize, cols: usize, range: usize) -> Result<()> {
    if table.len() != rows {
        return Err(Error::malformed(format!(
            "table has {} rows, expected {rows}",
            table.len()
        )));
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::malformed(format!(
                "row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (c, &e) in row.iter().enumerate() {
            if e >= range {
                return Err(Error::malformed(format!(
                    "entry [{r}][{c}] = {e} out of range 0..{range}"
                )));
            }
        }
    }
    Ok(())
}

fn flatten(table: &[Vec<usize>]) -> Vec<usize> {
    table.iter().flatten().copied().collect()
}

/// Checks that `f(0..n)` hits every value in `0..n`, reporting duplicate pairs.
fn permutation_violations(
    n: usize,
    f: impl Fn(usize) -> usize,
    axiom: &str,
    fixed: &[usize],
    violations: &mut Vec<Violation>,
) {
    let mut seen_at = vec![usize::MAX; n];
    for a in 0..n {
        let v = f(a);
        if seen_at[v] != usize::MAX {
            let mut w = fixed.to_vec();
            w.extend_from_slice(&[seen_at[v], a]);
            push(violations, axiom, &w);
        } else {
            seen_at[v] = a;
        }
    }
}

/// A finite biquandle `(B, under, over)` with precomputed inverse tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBiquandle {
    size: usize,
    under: Vec<usize>,     // under[a*m + b] = a underline-* b
    over: Vec<usize>,      // over[a*m + b]  = a overline-* b
    under_inv: Vec<usize>, // under_inv[c*m + b] = a  with  a underline-* b = c
    over_inv: Vec<usize>,
    s_inv: Vec<(usize, usize)>, // s_inv[c*m + d] = (a, b) with S(a,b) = (c,d)
}

/// Exhaustively checks the biquandle axioms on a pair of operation tables.
///
/// Malformed tables (ragged, size mismatch, out-of-range entries) are an
/// `Err`; axiom failures come back in the report with every witness listed.
pub fn check_biquandle(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<AxiomReport> {
    let m = under.len();
    if m == 0 {
        return Err(Error::malformed("empty operation table"));
    }
    validate_table(under, m, m, m)?;
    validate_table(over, m, m, m)?;
    let u = flatten(under);
    let o = flatten(over);
    let uu = |a: usize, b: usize| u[a * m + b];
    let oo = |a: usize, b: usize| o[a * m + b];

    let mut violations = Vec::new();
    for a in 0..m {
        if uu(a, a) != oo(a, a) {
            push(&mut violations, "diagonal", &[a]);
        }
    }
    for b in 0..m {
        permutation_violations(m, |a| uu(a, b), "under_bijective", &[b], &mut violations);
        permutation_violations(m, |a| oo(a, b), "over_bijective", &[b], &mut violations);
    }
    // S(a,b) = (b over-* a, a under-* b) must permute all pairs
    permutation_violations(
        m * m,
        |i| {
            let (a, b) = (i / m, i % m);
            oo(b, a) * m + uu(a, b)
        },
        "s_bijective",
        &[],
        &mut violations,
    );
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if uu(uu(a, b), uu(c, b)) != uu(uu(a, c), oo(b, c)) {
                    push(&mut violations, "exchange_uu", &[a, b, c]);
                }
                if oo(uu(a, b), uu(c, b)) != uu(oo(a, c), oo(b, c)) {
                    push(&mut violations, "exchange_uo", &[a, b, c]);
                }
                if oo(oo(a, b), oo(c, b)) != oo(oo(a, c), uu(b, c)) {
                    push(&mut violations, "exchange_oo", &[a, b, c]);
                }
            }
        }
    }
    Ok(AxiomReport::from_violations(violations))
}

impl FiniteBiquandle {
    /// Validates the tables and builds the structure with inverse tables.
    pub fn new(under: Vec<Vec<usize>>, over: Vec<Vec<usize>>) -> Result<Self> {
        let report = check_biquandle(&under, &over)?;
        if !report.passed {
            return Err(Error::Axioms(format!(
                "biquandle axioms failed: {} violations, first {:?}",
                report.violations.len(),
                report.violations[0]
            )));
        }
        let m = under.len();
        let u = flatten(&under);
        let o = flatten(&over);
        let mut under_inv = vec![0; m * m];
        let mut over_inv = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                under_inv[u[a * m + b] * m + b] = a;
                over_inv[o[a * m + b] * m + b] = a;
            }
        }
        let mut s_inv = vec![(0, 0); m * m];
        for a in 0..m {
            for b in 0..m {
                let c = o[b * m + a];
                let d = u[a * m + b];
                s_inv[c * m + d] = (a, b);
            }
        }
        Ok(FiniteBiquandle {
            size: m,
            under: u,
            over: o,
            under_inv,
            over_inv,
            s_inv,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `a underline-* b`
    pub fn under(&self, a: usize, b: usize) -> usize {
        self.under[a * self.size + b]
    }

    /// `a overline-* b`
    pub fn over(&self, a: usize, b: usize) -> usize {
        self.over[a * self.size + b]
    }

    /// `a underline-*^{-1} b`
    pub fn under_inv(&self, a: usize, b: usize) -> usize {
        self.under_inv[a * self.size + b]
    }

    /// `a overline-*^{-1} b`
    pub fn over_inv(&self, a: usize, b: usize) -> usize {
        self.over_inv[a * self.size + b]
    }

    /// The unique `(a, b)` with `S(a,b) = (b over-* a, a under-* b) = (c, d)`.
    pub fn solve_s(&self, c: usize, d: usize) -> (usize, usize) {
        self.s_inv[c * self.size + d]
    }

    /// True when the over operation is trivial (`a over-* b = a`).
    pub fn is_quandle(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.over(a, b) == a))
    }

    pub fn under_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.under(a, b)).collect())
            .collect()
    }

    pub fn over_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.over(a, b)).collect())
            .collect()
    }
}

/// Exhaustively checks the B-set axioms of an action table against a
/// validated biquandle.
pub fn check_bset(bq: &FiniteBiquandle, action: &[Vec<usize>]) -> Result<AxiomReport> {
    let k = action.len();
    if k == 0 {
        return Err(Error::malformed("empty action table"));
    }
    let m = bq.size();
    if action[0].len() != m {
        return Err(Error::malformed(format!(
            "action has {} columns, biquandle size is {m}",
            action[0].len()
        )));
    }
    validate_table(action, k, m, k)?;
    let act = flatten(action);
    let f = |x: usize, a: usize| act[x * m + a];

    let mut violations = Vec::new();
    for a in 0..m {
        permutation_violations(k, |x| f(x, a), "action_bijective", &[a], &mut violations);
    }
    for x in 0..k {
        for a in 0..m {
            for b in 0..m {
                if f(f(x, a), bq.over(b, a)) != f(f(x, b), bq.under(a, b)) {
                    push(&mut violations, "action_compatible", &[x, a, b]);
                }
            }
        }
    }
    Ok(AxiomReport::from_violations(violations))
}

/// A finite B-set: the region-label carrier `X` with its biquandle action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBSet {
    size: usize,
    bq_size: usize,
    action: Vec<usize>,     // action[x*m + a] = x * a
    action_inv: Vec<usize>, // action_inv[y*m + a] = x  with  x * a = y
    searrow: Option<Vec<usize>>, // searrow[x*k + y] = a with x * a = y
}

impl FiniteBSet {
    pub fn new(bq: &FiniteBiquandle, action: Vec<Vec<usize>>) -> Result<Self> {
        let report = check_bset(bq, &action)?;
        if !report.passed {
            return Err(Error::Axioms(format!(
                "B-set axioms failed: {} violations, first {:?}",
                report.violations.len(),
                report.violations[0]
            )));
        }
        let k = action.len();
        let m = bq.size();
        let act = flatten(&action);
        let mut action_inv = vec![0; k * m];
        for x in 0..k {
            for a in 0..m {
                action_inv[act[x * m + a] * m + a] = x;
            }
        }
        let mut bset = FiniteBSet {
            size: k,
            bq_size: m,
            action: act,
            action_inv,
            searrow: None,
        };
        bset.searrow = build_searrow(&bset);
        Ok(bset)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `x * a`
    pub fn act(&self, x: usize, a: usize) -> usize {
        self.action[x * self.bq_size + a]
    }

    /// `x *^{-1} a`
    pub fn act_inv(&self, x: usize, a: usize) -> usize {
        self.action_inv[x * self.bq_size + a]
    }

    pub fn strongly_connected(&self) -> bool {
        self.searrow.is_some()
    }

    /// `x searrow y`: the unique `a` with `x * a = y`. Panics unless the
    /// B-set is strongly connected; gate on [`Self::strongly_connected`].
    pub fn searrow(&self, x: usize, y: usize) -> usize {
        let t = self
            .searrow
            .as_ref()
            .expect("searrow on a B-set that is not strongly connected");
        t[x * self.size + y]
    }

    pub fn action_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.bq_size).map(|a| self.act(x, a)).collect())
            .collect()
    }
}

/// Builds the searrow table iff every row `a -> x * a` is a bijection onto X.
///
/// Returns `None` when some row is not bijective (which includes every case
/// with `|B| != |X|`); the flag on the structure simply stays false.
fn build_searrow(bset: &FiniteBSet) -> Option<Vec<usize>> {
    let (k, m) = (bset.size, bset.bq_size);
    if k != m {
        return None;
    }
    let mut table = vec![usize::MAX; k * k];
    for x in 0..k {
        for a in 0..m {
            let y = bset.act(x, a);
            if table[x * k + y] != usize::MAX {
                return None; // row not injective
            }
            table[x * k + y] = a;
        }
    }
    Some(table)
}

/// A shadow biquandle: a biquandle together with a B-set over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowBiquandle {
    biquandle: FiniteBiquandle,
    bset: FiniteBSet,
    labels: Option<Vec<String>>,
}

/// Recomputes strong-connectivity data on a shadow biquandle. Constructors
/// already do this; the standalone form exists for structures deserialized
/// or assembled piecewise.
pub fn build_strong_connectivity(mut sb: ShadowBiquandle) -> ShadowBiquandle {
    sb.bset.searrow = build_searrow(&sb.bset);
    sb
}

impl ShadowBiquandle {
    pub fn new(biquandle: FiniteBiquandle, action: Vec<Vec<usize>>) -> Result<Self> {
        let bset = FiniteBSet::new(&biquandle, action)?;
        Ok(ShadowBiquandle {
            biquandle,
            bset,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn biquandle(&self) -> &FiniteBiquandle {
        &self.biquandle
    }

    pub fn bset(&self) -> &FiniteBSet {
        &self.bset
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Biquandle element count `|B|`.
    pub fn b_size(&self) -> usize {
        self.biquandle.size()
    }

    /// Region carrier count `|X|`.
    pub fn x_size(&self) -> usize {
        self.bset.size()
    }

    pub fn strongly_connected(&self) -> bool {
        self.bset.strongly_connected()
    }
}

/// The dihedral quandle of order `n` as a shadow biquandle:
/// `a under-* b = 2b - a (mod n)`, trivial over operation, `X = Z_n` with
/// the same action.
pub fn dihedral(n: usize) -> Result<ShadowBiquandle> {
    if n == 0 {
        return Err(Error::malformed("dihedral order must be positive"));
    }
    let under: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (2 * b + n - a % n) % n).collect())
        .collect();
    let over: Vec<Vec<usize>> = (0..n).map(|a| vec![a; n]).collect();
    let bq = FiniteBiquandle::new(under.clone(), over)?;
    ShadowBiquandle::new(bq, under)
}

/// Residue ring Z_n[t]/(p) with t invertible, elements enumerated as base-n
/// digit vectors of length deg(p), least degree first.
#[derive(Debug, Clone)]
pub struct AlexanderRing {
    pub n: u64,
    pub modulus: Vec<u64>, // constant term first, monic, length deg+1
    deg: usize,
    size: usize,
}

impl AlexanderRing {
    pub fn new(n: u64, p: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::malformed("coefficient modulus must be positive"));
        }
        let reduced: Vec<u64> = p.iter().map(|&c| c.rem_euclid(n as i64) as u64).collect();
        let deg = match reduced.iter().rposition(|&c| c != 0 || n == 1) {
            Some(d) => d,
            None => return Err(Error::malformed("zero modulus polynomial")),
        };
        if deg == 0 {
            return Err(Error::malformed("zero-degree modulus polynomial"));
        }
        if n > 1 && reduced[deg] != 1 {
            return Err(Error::malformed("modulus polynomial must be monic"));
        }
        if gcd(reduced[0], n) != 1 && n > 1 {
            return Err(Error::malformed(
                "constant term of the modulus must be a unit (t must be invertible)",
            ));
        }
        let size = (n as usize).checked_pow(deg as u32).filter(|&s| s <= 4096);
        let size = size.ok_or_else(|| Error::malformed("quotient ring too large"))?;
        Ok(AlexanderRing {
            n,
            modulus: reduced[..=deg].to_vec(),
            deg,
            size,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn coeffs(&self, mut e: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.deg];
        for c in out.iter_mut() {
            *c = (e % self.n as usize) as u64;
            e /= self.n as usize;
        }
        out
    }

    fn index(&self, coeffs: &[u64]) -> usize {
        debug_assert_eq!(coeffs.len(), self.deg);
        coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.n as usize + c as usize)
    }

    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.n).collect();
        self.index(&sum)
    }

    pub(crate) fn neg(&self, a: usize) -> usize {
        let ca = self.coeffs(a);
        let neg: Vec<u64> = ca.iter().map(|&x| (self.n - x % self.n) % self.n).collect();
        self.index(&neg)
    }

    /// Multiply by t: shift and reduce by the monic modulus.
    pub(crate) fn mul_t(&self, a: usize) -> usize {
        let ca = self.coeffs(a);
        let top = ca[self.deg - 1];
        let mut out = vec![0u64; self.deg];
        for i in 1..self.deg {
            out[i] = ca[i - 1];
        }
        // t^deg = -(c_0 + c_1 t + ...) from the modulus
        for i in 0..self.deg {
            let sub = (top * self.modulus[i]) % self.n;
            out[i] = (out[i] + self.n - sub) % self.n;
        }
        self.index(&out)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        // b written in digits; a * b = sum of digit * t^i * a
        let cb = self.coeffs(b);
        let mut acc = 0usize;
        let mut shifted = a;
        for (i, &digit) in cb.iter().enumerate() {
            if i > 0 {
                shifted = self.mul_t(shifted);
            }
            let mut term = 0usize;
            for _ in 0..digit {
                term = self.add(term, shifted);
            }
            acc = self.add(acc, term);
        }
        acc
    }

    /// `ta + (1-t)b`
    fn alexander_op(&self, a: usize, b: usize) -> usize {
        let ta = self.mul_t(a);
        let tb = self.mul_t(b);
        self.add(ta, self.add(b, self.neg(tb)))
    }

    pub fn label(&self, e: usize) -> String {
        let c = self.coeffs(e);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if var.is_empty() {
                parts.push(format!("{ci}"));
            } else if ci == 1 {
                parts.push(var);
            } else {
                parts.push(format!("{ci}{var}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Alexander quandle over `Z_n[t^{±1}]/(p)` as a shadow biquandle:
/// `a under-* b = ta + (1-t)b`, trivial over operation, `X` the ring itself.
/// `p` is the modulus polynomial, constant term first.
pub fn alexander(n: u64, p: &[i64]) -> Result<ShadowBiquandle> {
    let ring = AlexanderRing::new(n, p)?;
    let size = ring.size();
    let under: Vec<Vec<usize>> = (0..size)
        .map(|a| (0..size).map(|b| ring.alexander_op(a, b)).collect())
        .collect();
    let over: Vec<Vec<usize>> = (0..size).map(|a| vec![a; size]).collect();
    let bq = FiniteBiquandle::new(under.clone(), over)?;
    let labels = (0..size).map(|e| ring.label(e)).collect();
    Ok(ShadowBiquandle::new(bq, under)?.with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mutate_under(sb: &ShadowBiquandle, a: usize, b: usize, v: usize) -> Vec<Vec<usize>> {
        let mut t = sb.biquandle().under_table();
        t[a][b] = v;
        t
    }

    #[test]
    fn dihedral_tables() {
        let sb = dihedral(3).unwrap();
        assert_eq!(sb.biquandle().under(1, 0), 2); // 2*0 - 1 = -1 = 2 mod 3
        assert_eq!(sb.biquandle().over(1, 0), 1);
        assert!(sb.biquandle().is_quandle());
    }

    #[test]
    fn singleton_biquandle_passes() {
        let report = check_biquandle(&[vec![0]], &[vec![0]]).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn mutated_dihedral_rejected_with_bijectivity_witness() {
        let sb = dihedral(3).unwrap();
        let under = mutate_under(&sb, 0, 0, 1);
        let report = check_biquandle(&under, &sb.biquandle().over_table()).unwrap();
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "under_bijective" && v.witness[0] == 0));
    }

    #[test]
    fn ragged_table_is_malformed_not_a_violation() {
        let under = vec![vec![0, 1], vec![0]];
        let over = vec![vec![0, 1], vec![1, 0]];
        assert!(check_biquandle(&under, &over).is_err());
    }

    #[test]
    fn latin_quandle_action_is_valid_bset() {
        // Lemma: a latin quandle acting on itself by its own operation
        let sb = dihedral(3).unwrap();
        let report = check_bset(sb.biquandle(), &sb.biquandle().under_table()).unwrap();
        assert!(report.passed);
        assert!(sb.strongly_connected());
    }

    #[test]
    fn trivial_action_is_valid_bset() {
        let sb = dihedral(4).unwrap();
        let action: Vec<Vec<usize>> = (0..4).map(|x| vec![x; 4]).collect();
        let report = check_bset(sb.biquandle(), &action).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn dihedral_even_not_strongly_connected() {
        let sb = dihedral(4).unwrap();
        assert!(!sb.strongly_connected());
        let report = check_bset(sb.biquandle(), &sb.bset().action_table()).unwrap();
        assert!(report.passed); // compatibility still holds
    }

    #[test]
    fn searrow_closed_forms() {
        // dihedral: x searrow y = (x + y) / 2
        let sb = dihedral(3).unwrap();
        assert_eq!(sb.bset().searrow(0, 1), 2);
        let sb5 = dihedral(5).unwrap();
        assert_eq!(sb5.bset().searrow(1, 2), 4); // 3 * 3 = 9 = 4 mod 5

        // alexander Z_5, t = 3: x searrow y = 2(2x + y) mod 5
        let al = alexander(5, &[-3, 1]).unwrap();
        assert!(al.strongly_connected());
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(al.bset().searrow(x, y), (2 * (2 * x + y)) % 5);
            }
        }
        assert_eq!(al.bset().searrow(1, 0), 4);
    }

    #[test]
    fn solve_s_examples() {
        let sb = dihedral(3).unwrap();
        assert_eq!(sb.biquandle().solve_s(1, 2), (0, 1));
        let sb5 = dihedral(5).unwrap();
        assert_eq!(sb5.biquandle().solve_s(0, 0), (0, 0));
        // quandle case: b = c, a = d under-*^{-1} c
        for c in 0..5 {
            for d in 0..5 {
                let (a, b) = sb5.biquandle().solve_s(c, d);
                assert_eq!(b, c);
                assert_eq!(a, sb5.biquandle().under_inv(d, c));
            }
        }
    }

    #[test]
    fn solve_s_round_trips() {
        for sb in [dihedral(4).unwrap(), alexander(5, &[-2, 1]).unwrap()] {
            let bq = sb.biquandle();
            for a in 0..bq.size() {
                for b in 0..bq.size() {
                    let (c, d) = (bq.over(b, a), bq.under(a, b));
                    assert_eq!(bq.solve_s(c, d), (a, b));
                }
            }
        }
    }

    #[test]
    fn alexander_examples() {
        // Z_5 with t = 2: a under-* b = 2a - b
        let al = alexander(5, &[-2, 1]).unwrap();
        assert_eq!(al.b_size(), 5);
        assert_eq!(al.biquandle().under(1, 0), 2);
        assert!(al.strongly_connected());

        // t = 1 makes 1 - t = 0: never strongly connected
        let flat = alexander(5, &[-1, 1]).unwrap();
        assert!(!flat.strongly_connected());

        // F_4 = Z_2[t]/(t^2+t+1): 1 - t = 1 + t is a unit
        let f4 = alexander(2, &[1, 1, 1]).unwrap();
        assert_eq!(f4.b_size(), 4);
        assert!(f4.strongly_connected());
    }

    #[test]
    fn alexander_bad_moduli_rejected() {
        assert!(alexander(5, &[0, 5]).is_err()); // zero polynomial mod 5
        assert!(alexander(5, &[3]).is_err()); // degree zero
        assert!(alexander(4, &[2, 1]).is_err()); // constant term not a unit mod 4
        assert!(alexander(5, &[1, 2]).is_err()); // not monic
    }

    #[test]
    fn alexander_ring_labels() {
        let ring = AlexanderRing::new(2, &[1, 1, 1]).unwrap();
        let labels: Vec<String> = (0..4).map(|e| ring.label(e)).collect();
        assert_eq!(labels, vec!["0", "1", "t", "1+t"]);
    }

    #[test]
    fn dihedral_zero_rejected() {
        assert!(dihedral(0).is_err());
    }

    fn strongly_connected_builtins() -> Vec<ShadowBiquandle> {
        vec![
            dihedral(3).unwrap(),
            dihedral(5).unwrap(),
            dihedral(7).unwrap(),
            alexander(5, &[-2, 1]).unwrap(),
            alexander(5, &[-3, 1]).unwrap(),
            alexander(2, &[1, 1, 1]).unwrap(),
        ]
    }

    #[test]
    fn shadow_identities_hold_exhaustively() {
        // the three two-inverse identities on every validated instance
        for sb in strongly_connected_builtins() {
            let bq = sb.biquandle();
            let bs = sb.bset();
            let (m, k) = (bq.size(), bs.size());
            for x in 0..k {
                for a in 0..m {
                    for b in 0..m {
                        let lhs1 = bs.act_inv(bs.act_inv(x, bq.under(a, b)), b);
                        let rhs1 = bs.act_inv(bs.act_inv(x, bq.over(b, a)), a);
                        assert_eq!(lhs1, rhs1);

                        let boa = bq.over_inv(b, a);
                        let lhs2 = bs.act(bs.act_inv(x, a), boa);
                        let rhs2 = bs.act_inv(bs.act(x, b), bq.under(a, boa));
                        assert_eq!(lhs2, rhs2);

                        let aub = bq.under_inv(a, b);
                        let lhs3 = bs.act(bs.act_inv(x, b), aub);
                        let rhs3 = bs.act_inv(bs.act(x, a), bq.over(b, aub));
                        assert_eq!(lhs3, rhs3);
                    }
                }
            }
        }
    }

    #[test]
    fn searrow_identities_hold_exhaustively() {
        // the four searrow identities on every strongly connected instance
        for sb in strongly_connected_builtins() {
            let bq = sb.biquandle();
            let bs = sb.bset();
            let k = bs.size();
            for x in 0..k {
                for y in 0..k {
                    assert_eq!(bs.act(x, bs.searrow(x, y)), y);
                    assert_eq!(bs.act_inv(y, bs.searrow(x, y)), x);
                }
                for a in 0..bq.size() {
                    assert_eq!(bs.searrow(bs.act_inv(x, a), x), a);
                    assert_eq!(bs.searrow(x, bs.act(x, a)), a);
                }
            }
        }
    }

    #[test]
    fn inverse_tables_round_trip() {
        for sb in strongly_connected_builtins() {
            let bq = sb.biquandle();
            let bs = sb.bset();
            for a in 0..bq.size() {
                for b in 0..bq.size() {
                    assert_eq!(bq.under_inv(bq.under(a, b), b), a);
                    assert_eq!(bq.under(bq.under_inv(a, b), b), a);
                    assert_eq!(bq.over_inv(bq.over(a, b), b), a);
                    assert_eq!(bq.over(bq.over_inv(a, b), b), a);
                }
            }
            for x in 0..bs.size() {
                for a in 0..bq.size() {
                    assert_eq!(bs.act_inv(bs.act(x, a), a), x);
                    assert_eq!(bs.act(bs.act_inv(x, a), a), x);
                }
            }
        }
    }
}
