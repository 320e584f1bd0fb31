//! Horizontal tribrackets (knot-theoretic ternary quasigroups) and the local
//! biquandle operations they induce on each fiber `{x} x X`.

use crate::algebra::{AxiomReport, ShadowBiquandle, Violation};
use crate::error::{Error, Result};

/// A ternary operation table on `0..k-1` that is latin in every slot and
/// satisfies the mixed associativity law, with precomputed slot inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizontalTribracket {
    size: usize,
    table: Vec<usize>, // table[(x*k + y)*k + z] = [x,y,z]
    inv_first: Vec<usize>,  // inv_first[(y*k + z)*k + w] = x with [x,y,z] = w
    inv_second: Vec<usize>, // inv_second[(x*k + z)*k + w] = y with [x,y,z] = w
    inv_third: Vec<usize>,  // inv_third[(x*k + y)*k + w] = z with [x,y,z] = w
}

/// An element `(x, y)` of the fiber `{x} x X` a local biquandle acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalPair {
    pub base: usize,
    pub fiber: usize,
}

impl LocalPair {
    pub fn new(base: usize, fiber: usize) -> Self {
        LocalPair { base, fiber }
    }
}

/// Exhaustively checks the latin conditions (each slot solvable uniquely) and
/// the mixed associativity law over all quadruples.
pub fn check_tribracket(table: &[Vec<Vec<usize>>]) -> Result<AxiomReport> {
    let k = table.len();
    if k == 0 {
        return Err(Error::malformed("empty tribracket table"));
    }
    for (x, plane) in table.iter().enumerate() {
        if plane.len() != k {
            return Err(Error::malformed(format!("plane {x} has wrong row count")));
        }
        for (y, row) in plane.iter().enumerate() {
            if row.len() != k {
                return Err(Error::malformed(format!("row [{x}][{y}] has wrong length")));
            }
            for (z, &e) in row.iter().enumerate() {
                if e >= k {
                    return Err(Error::malformed(format!(
                        "entry [{x}][{y}][{z}] = {e} out of range"
                    )));
                }
            }
        }
    }
    let t = |x: usize, y: usize, z: usize| table[x][y][z];
    let mut violations = Vec::new();
    let mut latin = |slot: &str, f: &dyn Fn(usize, usize, usize) -> usize| {
        for a in 0..k {
            for b in 0..k {
                let mut seen = vec![usize::MAX; k];
                for c in 0..k {
                    let w = f(a, b, c);
                    if seen[w] != usize::MAX {
                        violations.push(Violation {
                            axiom: slot.to_string(),
                            witness: vec![a, b, seen[w], c],
                        });
                    } else {
                        seen[w] = c;
                    }
                }
            }
        }
    };
    latin("h1_third", &|x, y, z| t(x, y, z));
    latin("h1_second", &|x, z, y| t(x, y, z));
    latin("h1_first", &|y, z, x| t(x, y, z));
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                for w in 0..k {
                    let p = t(y, t(x, y, z), t(x, y, w));
                    let q = t(z, t(x, y, z), t(x, z, w));
                    let r = t(w, t(x, y, w), t(x, z, w));
                    if p != q || q != r {
                        violations.push(Violation {
                            axiom: "h2".to_string(),
                            witness: vec![x, y, z, w],
                        });
                    }
                }
            }
        }
    }
    Ok(AxiomReport {
        passed: violations.is_empty(),
        violations,
    })
}

impl HorizontalTribracket {
    pub fn new(table: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let report = check_tribracket(&table)?;
        if !report.passed {
            return Err(Error::Axioms(format!(
                "tribracket axioms failed: {} violations, first {:?}",
                report.violations.len(),
                report.violations[0]
            )));
        }
        let k = table.len();
        let mut flat = vec![0; k * k * k];
        let mut inv_first = vec![0; k * k * k];
        let mut inv_second = vec![0; k * k * k];
        let mut inv_third = vec![0; k * k * k];
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let w = table[x][y][z];
                    flat[(x * k + y) * k + z] = w;
                    inv_first[(y * k + z) * k + w] = x;
                    inv_second[(x * k + z) * k + w] = y;
                    inv_third[(x * k + y) * k + w] = z;
                }
            }
        }
        Ok(HorizontalTribracket {
            size: k,
            table: flat,
            inv_first,
            inv_second,
            inv_third,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `[x, y, z]`
    pub fn bracket(&self, x: usize, y: usize, z: usize) -> usize {
        self.table[(x * self.size + y) * self.size + z]
    }

    /// The unique `z` with `[x, y, z] = w`.
    pub fn solve_third(&self, x: usize, y: usize, w: usize) -> usize {
        self.inv_third[(x * self.size + y) * self.size + w]
    }

    /// The unique `y` with `[x, y, z] = w`.
    pub fn solve_second(&self, x: usize, z: usize, w: usize) -> usize {
        self.inv_second[(x * self.size + z) * self.size + w]
    }

    /// The unique `x` with `[x, y, z] = w`.
    pub fn solve_first(&self, y: usize, z: usize, w: usize) -> usize {
        self.inv_first[(y * self.size + z) * self.size + w]
    }

    pub fn table(&self) -> Vec<Vec<Vec<usize>>> {
        let k = self.size;
        (0..k)
            .map(|x| {
                (0..k)
                    .map(|y| (0..k).map(|z| self.bracket(x, y, z)).collect())
                    .collect()
            })
            .collect()
    }
}

/// `(x,y) local-under (x,z) = (z, [x,y,z])`. The two pairs must share a base.
pub fn local_under(t: &HorizontalTribracket, p: LocalPair, q: LocalPair) -> Result<LocalPair> {
    if p.base != q.base {
        return Err(Error::contract(format!(
            "local operation on distinct fibers: bases {} and {}",
            p.base, q.base
        )));
    }
    Ok(LocalPair::new(q.fiber, t.bracket(p.base, p.fiber, q.fiber)))
}

/// `(x,y) local-over (x,z) = (z, [x,z,y])`. The two pairs must share a base.
pub fn local_over(t: &HorizontalTribracket, p: LocalPair, q: LocalPair) -> Result<LocalPair> {
    if p.base != q.base {
        return Err(Error::contract(format!(
            "local operation on distinct fibers: bases {} and {}",
            p.base, q.base
        )));
    }
    Ok(LocalPair::new(q.fiber, t.bracket(p.base, q.fiber, p.fiber)))
}

/// The tribracket `[x,y,z] = y * ((x searrow z) over-* (x searrow y))`
/// derived from a strongly connected shadow biquandle. Both defining
/// expressions are evaluated on every triple and must agree.
pub fn corresponding_tribracket(sb: &ShadowBiquandle) -> Result<HorizontalTribracket> {
    if !sb.strongly_connected() {
        return Err(Error::contract(
            "corresponding tribracket needs a strongly connected B-set",
        ));
    }
    let bq = sb.biquandle();
    let bs = sb.bset();
    let k = bs.size();
    let mut table = vec![vec![vec![0; k]; k]; k];
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let (sy, sz) = (bs.searrow(x, y), bs.searrow(x, z));
                let via_y = bs.act(y, bq.over(sz, sy));
                let via_z = bs.act(z, bq.under(sy, sz));
                if via_y != via_z {
                    return Err(Error::Axioms(format!(
                        "defining expressions disagree at ({x},{y},{z}): {via_y} vs {via_z}"
                    )));
                }
                table[x][y][z] = via_y;
            }
        }
    }
    HorizontalTribracket::new(table)
}

/// `[x,y,z] = x - y + z` over `Z_n`.
pub fn dihedral_tribracket(n: usize) -> Result<HorizontalTribracket> {
    if n == 0 {
        return Err(Error::malformed("dihedral order must be positive"));
    }
    let table: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (0..n).map(|z| (x + n - y + z) % n).collect())
                .collect()
        })
        .collect();
    HorizontalTribracket::new(table)
}

/// `[x,y,z] = -tx + ty + z` over `Z_n[t^{±1}]/(p)`, straight from the ring.
pub fn alexander_tribracket(n: u64, p: &[i64]) -> Result<HorizontalTribracket> {
    let ring = crate::algebra::AlexanderRing::new(n, p)?;
    let k = ring.size();
    let table: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    (0..k)
                        .map(|z| {
                            let tx = ring.mul_t(x);
                            let ty = ring.mul_t(y);
                            ring.add(ring.neg(tx), ring.add(ty, z))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    HorizontalTribracket::new(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alexander, dihedral};

    #[test]
    fn dihedral_tribracket_passes_axioms() {
        let t = dihedral_tribracket(3).unwrap();
        assert_eq!(t.bracket(1, 2, 0), 2); // 1 - 2 + 0 = -1 = 2 mod 3
        assert_eq!(t.bracket(0, 0, 2), 2); // first two slots cancel
    }

    #[test]
    fn alexander_tribracket_closed_form() {
        // Z_5, t = 2: [x,y,z] = -2x + 2y + z
        let t = alexander_tribracket(5, &[-2, 1]).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    assert_eq!(t.bracket(x, y, z), (8 * x + 2 * y + z) % 5);
                }
            }
        }
        assert_eq!(t.bracket(1, 1, 4), 4);
    }

    #[test]
    fn duplicate_entry_breaks_latin_condition() {
        let mut table = dihedral_tribracket(3).unwrap().table();
        table[0][0][1] = table[0][0][0];
        let report = check_tribracket(&table).unwrap();
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "h1_third" && v.witness[0] == 0 && v.witness[1] == 0));
    }

    #[test]
    fn corresponding_tribracket_matches_closed_forms() {
        let t3 = corresponding_tribracket(&dihedral(3).unwrap()).unwrap();
        assert_eq!(t3.bracket(0, 1, 2), 1);
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    assert_eq!(t3.bracket(x, y, z), (x + 3 - y + z) % 3);
                }
            }
        }
        let t5 = corresponding_tribracket(&dihedral(5).unwrap()).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    assert_eq!(t5.bracket(x, y, z), (x + 5 - y + z) % 5);
                }
            }
        }
        let ta = corresponding_tribracket(&alexander(5, &[-2, 1]).unwrap()).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    assert_eq!(ta.bracket(x, y, z), (8 * x + 2 * y + z) % 5);
                }
            }
        }
    }

    #[test]
    fn corresponding_tribracket_fixes_diagonal() {
        for sb in [dihedral(7).unwrap(), alexander(2, &[1, 1, 1]).unwrap()] {
            let t = corresponding_tribracket(&sb).unwrap();
            for x in 0..t.size() {
                assert_eq!(t.bracket(x, x, x), x);
            }
        }
    }

    #[test]
    fn corresponding_tribracket_requires_strong_connectivity() {
        assert!(corresponding_tribracket(&dihedral(4).unwrap()).is_err());
    }

    #[test]
    fn local_operation_examples() {
        let t = dihedral_tribracket(3).unwrap();
        let p = local_under(&t, LocalPair::new(0, 1), LocalPair::new(0, 2)).unwrap();
        assert_eq!(p, LocalPair::new(2, 1));
        let q = local_over(&t, LocalPair::new(0, 2), LocalPair::new(0, 1)).unwrap();
        assert_eq!(q, LocalPair::new(1, 1));

        let ta = alexander_tribracket(5, &[-2, 1]).unwrap();
        let r = local_under(&ta, LocalPair::new(1, 0), LocalPair::new(1, 3)).unwrap();
        assert_eq!(r, LocalPair::new(3, 1));
        let s = local_over(&ta, LocalPair::new(1, 3), LocalPair::new(1, 0)).unwrap();
        assert_eq!(s, LocalPair::new(0, 1));
    }

    #[test]
    fn local_operations_agree_on_diagonal() {
        let t = dihedral_tribracket(5).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                let p = LocalPair::new(x, y);
                assert_eq!(
                    local_under(&t, p, p).unwrap(),
                    local_over(&t, p, p).unwrap()
                );
            }
        }
    }

    #[test]
    fn local_base_mismatch_is_contract_error() {
        let t = dihedral_tribracket(3).unwrap();
        assert!(local_under(&t, LocalPair::new(0, 1), LocalPair::new(1, 2)).is_err());
        assert!(local_over(&t, LocalPair::new(0, 1), LocalPair::new(1, 2)).is_err());
    }

    #[test]
    fn solve_third_examples() {
        let t = dihedral_tribracket(3).unwrap();
        assert_eq!(t.solve_third(0, 1, 0), 1);
        // matches -x + y + w on all triples
        for x in 0..3 {
            for y in 0..3 {
                for w in 0..3 {
                    assert_eq!(t.solve_third(x, y, w), (3 - x + y + w) % 3);
                }
            }
        }
    }

    #[test]
    fn slot_inverses_round_trip() {
        for t in [
            dihedral_tribracket(4).unwrap(),
            alexander_tribracket(5, &[-3, 1]).unwrap(),
        ] {
            let k = t.size();
            for x in 0..k {
                for y in 0..k {
                    for z in 0..k {
                        let w = t.bracket(x, y, z);
                        assert_eq!(t.solve_third(x, y, w), z);
                        assert_eq!(t.solve_second(x, z, w), y);
                        assert_eq!(t.solve_first(y, z, w), x);
                    }
                }
            }
        }
    }

    #[test]
    fn local_operations_are_fiberwise_bijections() {
        for t in [
            dihedral_tribracket(7).unwrap(),
            alexander_tribracket(5, &[-2, 1]).unwrap(),
        ] {
            let k = t.size();
            for x in 0..k {
                for z in 0..k {
                    let q = LocalPair::new(x, z);
                    let mut seen_u = vec![false; k * k];
                    let mut seen_o = vec![false; k * k];
                    for y in 0..k {
                        let p = LocalPair::new(x, y);
                        let u = local_under(&t, p, q).unwrap();
                        let o = local_over(&t, p, q).unwrap();
                        assert!(!seen_u[u.base * k + u.fiber]);
                        assert!(!seen_o[o.base * k + o.fiber]);
                        seen_u[u.base * k + u.fiber] = true;
                        seen_o[o.base * k + o.fiber] = true;
                    }
                }
            }
        }
    }

    #[test]
    fn local_operations_satisfy_exchange_laws_within_fibers() {
        // biquandle-shaped identities restricted to one fiber at a time
        for t in [
            dihedral_tribracket(5).unwrap(),
            alexander_tribracket(2, &[1, 1, 1]).unwrap(),
        ] {
            let k = t.size();
            for x in 0..k {
                for a in 0..k {
                    for b in 0..k {
                        let (pa, pb) = (LocalPair::new(x, a), LocalPair::new(x, b));
                        // diagonal law
                        assert_eq!(
                            local_under(&t, pa, pa).unwrap(),
                            local_over(&t, pa, pa).unwrap()
                        );
                        for c in 0..k {
                            let pc = LocalPair::new(x, c);
                            let uu1 = local_under(
                                &t,
                                local_under(&t, pa, pb).unwrap(),
                                local_under(&t, pc, pb).unwrap(),
                            )
                            .unwrap();
                            let uu2 = local_under(
                                &t,
                                local_under(&t, pa, pc).unwrap(),
                                local_over(&t, pb, pc).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(uu1, uu2);
                            let uo1 = local_over(
                                &t,
                                local_under(&t, pa, pb).unwrap(),
                                local_under(&t, pc, pb).unwrap(),
                            )
                            .unwrap();
                            let uo2 = local_under(
                                &t,
                                local_over(&t, pa, pc).unwrap(),
                                local_over(&t, pb, pc).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(uo1, uo2);
                            let oo1 = local_over(
                                &t,
                                local_over(&t, pa, pb).unwrap(),
                                local_over(&t, pc, pb).unwrap(),
                            )
                            .unwrap();
                            let oo2 = local_over(
                                &t,
                                local_over(&t, pa, pc).unwrap(),
                                local_under(&t, pb, pc).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(oo1, oo2);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theorem_level_derivation_passes_for_all_builtins() {
        for sb in [
            dihedral(3).unwrap(),
            dihedral(5).unwrap(),
            dihedral(7).unwrap(),
            alexander(5, &[-2, 1]).unwrap(),
            alexander(5, &[-3, 1]).unwrap(),
            alexander(2, &[1, 1, 1]).unwrap(),
        ] {
            // construction re-checks H1+H2 and both defining expressions
            corresponding_tribracket(&sb).unwrap();
        }
    }
}
