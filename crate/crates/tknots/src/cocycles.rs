//! Cocycle value tables mod m, the Mochizuki family over dihedral quandles,
//! and its transported forms.
//!
//! Division by n in the polynomial formulas is exact integer division: the
//! numerator is computed in Z (arbitrary precision) and must be divisible by
//! n; a failed divisibility check is reported as an error rather than being
//! absorbed by modular inversion.

use crate::algebra::ShadowBiquandle;
use crate::error::{Error, Result};
use crate::tribracket::HorizontalTribracket;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Which cochain complex a table belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CochainTheory {
    #[serde(rename = "sb")]
    Sb,
    #[serde(rename = "lb")]
    Lb,
    #[serde(rename = "n")]
    N,
}

/// A cochain as a finite value table mod m, keyed by `(base, word)` tuples.
/// Degenerate tuples (equal consecutive word entries, for SB/LB) and missing
/// keys evaluate to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainTable {
    pub theory: CochainTheory,
    pub degree: usize,
    pub modulus: u64,
    values: BTreeMap<(usize, Vec<usize>), u64>,
}

impl CochainTable {
    pub fn new(theory: CochainTheory, degree: usize, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::contract("cochain modulus must be at least 2"));
        }
        Ok(CochainTable {
            theory,
            degree,
            modulus,
            values: BTreeMap::new(),
        })
    }

    pub fn set(&mut self, base: usize, word: Vec<usize>, value: u64) {
        let v = value % self.modulus;
        if v == 0 {
            self.values.remove(&(base, word));
        } else {
            self.values.insert((base, word), v);
        }
    }

    pub fn eval(&self, base: usize, word: &[usize]) -> u64 {
        self.values
            .get(&(base, word.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, Vec<usize>), &u64)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise scalar multiple mod m.
    pub fn scale(&self, c: u64) -> Self {
        let mut out = self.clone();
        out.values = self
            .values
            .iter()
            .filter_map(|(k, &v)| {
                let nv = (v as u128 * c as u128 % self.modulus as u128) as u64;
                (nv != 0).then(|| (k.clone(), nv))
            })
            .collect();
        out
    }
}

fn word_degenerate(word: &[usize]) -> bool {
    word.windows(2).any(|w| w[0] == w[1])
}

fn is_odd_prime(n: u64) -> bool {
    n >= 3 && n % 2 == 1 && (3..n).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(lead) * ((a)^n + (b)^n - 2(c)^n) / n  mod n`, numerator in Z.
fn poly_value(n: u64, lead: i64, a: i64, b: i64, c: i64) -> Result<u64> {
    let n_i = BigInt::from(n);
    let pw = |base: i64| BigInt::from(base).pow(n as u32);
    let num = pw(a) + pw(b) - 2 * pw(c);
    let rem: BigInt = &num % &n_i;
    if !rem.is_zero() {
        return Err(Error::Axioms(format!(
            "numerator {num} not divisible by {n}"
        )));
    }
    let val = (BigInt::from(lead) * (num / &n_i)) % &n_i;
    let val: BigInt = ((val % &n_i) + &n_i) % &n_i;
    Ok(val.to_u64().expect("reduced value fits"))
}

/// The polynomial 2-cocycle value `(x-y)((2z-y)^n + y^n - 2z^n)/n` mod n.
pub fn mochizuki_value(n: u64, x: i64, y: i64, z: i64) -> Result<u64> {
    poly_value(n, x - y, 2 * z - y, y, z)
}

/// Degree-2 cocycle of the dihedral(n) shadow complex, n an odd prime.
pub fn mochizuki_2cocycle(n: u64) -> Result<CochainTable> {
    if !is_odd_prime(n) {
        return Err(Error::contract(format!("{n} is not an odd prime")));
    }
    let mut table = CochainTable::new(CochainTheory::Sb, 2, n)?;
    let k = n as i64;
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                if y == z {
                    continue;
                }
                let v = mochizuki_value(n, x, y, z)?;
                table.set(x as usize, vec![y as usize, z as usize], v);
            }
        }
    }
    Ok(table)
}

/// Degree-3 cocycle `(x, a, b, c) -> theta_n(a, b, c)`: the region slot is
/// ignored.
pub fn mochizuki_3cocycle(n: u64) -> Result<CochainTable> {
    if !is_odd_prime(n) {
        return Err(Error::contract(format!("{n} is not an odd prime")));
    }
    let mut table = CochainTable::new(CochainTheory::Sb, 3, n)?;
    let k = n as i64;
    for x in 0..k {
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let word = vec![a as usize, b as usize, c as usize];
                    if word_degenerate(&word) {
                        continue;
                    }
                    let v = mochizuki_value(n, a, b, c)?;
                    table.set(x as usize, word, v);
                }
            }
        }
    }
    Ok(table)
}

/// Transport of an SB cochain to the LB complex along the searrow map:
/// `theta'((x,y_1),...,(x,y_n)) = theta(x, x searrow y_1, ..., x searrow y_n)`,
/// so that `theta = theta' o mu_n` holds exactly.
pub fn transport_mu(theta: &CochainTable, sb: &ShadowBiquandle) -> Result<CochainTable> {
    if theta.theory != CochainTheory::Sb {
        return Err(Error::contract("transport_mu expects an SB cochain"));
    }
    if !sb.strongly_connected() {
        return Err(Error::contract(
            "transport needs a strongly connected shadow biquandle",
        ));
    }
    let bs = sb.bset();
    let k = bs.size();
    let d = theta.degree;
    let mut out = CochainTable::new(CochainTheory::Lb, d, theta.modulus)?;
    let mut word = vec![0usize; d];
    let mut counter = vec![0usize; d];
    'outer: for x in 0..k {
        counter.iter_mut().for_each(|c| *c = 0);
        loop {
            for (w, &c) in word.iter_mut().zip(&counter) {
                *w = c;
            }
            if !word_degenerate(&word) {
                let pre: Vec<usize> = word.iter().map(|&y| bs.searrow(x, y)).collect();
                out.set(x, word.clone(), theta.eval(x, &pre));
            }
            // odometer over words
            let mut i = 0;
            loop {
                if i == d {
                    if x + 1 == k {
                        break 'outer;
                    }
                    continue 'outer;
                }
                counter[i] += 1;
                if counter[i] == k {
                    counter[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Rescaled local-biquandle forms of the Mochizuki family (the exported
/// defaults; they equal 4 times the transported tables mod n):
/// degree 2: `(x-y)((x-y+2z)^n + (x+y)^n - 2(x+z)^n)/n` on ((x,y),(x,z));
/// degree 3: `(y-z)((x-z+2w)^n + (x+z)^n - 2(x+w)^n)/n` on ((x,y),(x,z),(x,w)).
pub fn closed_form_lb(n: u64, degree: usize) -> Result<CochainTable> {
    if !is_odd_prime(n) {
        return Err(Error::contract(format!("{n} is not an odd prime")));
    }
    let mut table = CochainTable::new(CochainTheory::Lb, degree, n)?;
    let k = n as i64;
    match degree {
        2 => {
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        if y == z {
                            continue;
                        }
                        let v = poly_value(n, x - y, x - y + 2 * z, x + y, x + z)?;
                        table.set(x as usize, vec![y as usize, z as usize], v);
                    }
                }
            }
        }
        3 => {
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        for w in 0..k {
                            let word = vec![y as usize, z as usize, w as usize];
                            if word_degenerate(&word) {
                                continue;
                            }
                            let v = poly_value(n, y - z, x - z + 2 * w, x + z, x + w)?;
                            table.set(x as usize, word, v);
                        }
                    }
                }
            }
        }
        _ => return Err(Error::contract("local closed forms exist in degrees 2 and 3")),
    }
    Ok(table)
}

/// Rescaled ternary-complex forms:
/// degree 1: `(x-y)((-x+y+2z)^n + (x+y)^n - 2(y+z)^n)/n` on (x,y,z);
/// degree 2: `(x-z)((-y+z+2w)^n + (y+z)^n - 2(z+w)^n)/n` on (x,y,z,w).
pub fn closed_form_n(n: u64, degree: usize) -> Result<CochainTable> {
    if !is_odd_prime(n) {
        return Err(Error::contract(format!("{n} is not an odd prime")));
    }
    let mut table = CochainTable::new(CochainTheory::N, degree, n)?;
    let k = n as i64;
    match degree {
        1 => {
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        let v = poly_value(n, x - y, -x + y + 2 * z, x + y, y + z)?;
                        table.set(x as usize, vec![y as usize, z as usize], v);
                    }
                }
            }
        }
        2 => {
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        for w in 0..k {
                            let v = poly_value(n, x - z, -y + z + 2 * w, y + z, z + w)?;
                            table.set(
                                x as usize,
                                vec![y as usize, z as usize, w as usize],
                                v,
                            );
                        }
                    }
                }
            }
        }
        _ => return Err(Error::contract("ternary closed forms exist in degrees 1 and 2")),
    }
    Ok(table)
}

/// Checks `closed = 4 * transported` pointwise over all nondegenerate tuples.
pub fn verify_rescaling(closed: &CochainTable, transported: &CochainTable) -> bool {
    if closed.modulus != transported.modulus || closed.degree != transported.degree {
        return false;
    }
    let four = transported.scale(4 % closed.modulus);
    four == *closed
}

/// Checks that the ternary closed form is the solve-third composition of the
/// local closed form: degree 1 against LB degree 2, degree 2 against LB
/// degree 3.
pub fn verify_composition(
    n_form: &CochainTable,
    lb_form: &CochainTable,
    tri: &HorizontalTribracket,
) -> Result<bool> {
    let k = tri.size();
    let m = n_form.modulus;
    if m != lb_form.modulus {
        return Ok(false);
    }
    match (n_form.degree, lb_form.degree) {
        (1, 2) => {
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        let mid = tri.solve_third(x, y, z);
                        let lhs = n_form.eval(x, &[y, z]);
                        let rhs = lb_form.eval(x, &[y, mid]);
                        if lhs != rhs % m {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        (2, 3) => {
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        for w in 0..k {
                            let mid1 = tri.solve_third(x, y, z);
                            let inner = tri.solve_third(y, z, w);
                            let mid2 = tri.solve_third(x, y, inner);
                            let lhs = n_form.eval(x, &[y, z, w]);
                            let rhs = lb_form.eval(x, &[y, mid1, mid2]);
                            if lhs != rhs % m {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        _ => return Err(Error::contract("composition degrees must be (1,2) or (2,3)")),
    }
    Ok(true)
}
