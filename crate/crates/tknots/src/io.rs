//! JSON formats for structures, diagrams, cochains and invariant results.
//!
//! Structure files: `{"kind":"biquandle","size":m,"under":[[..]],"over":[[..]]}`,
//! `{"kind":"shadow","biquandle":{..},"action":[[..]]}`, constructor forms
//! `{"kind":"dihedral","n":3}`, `{"kind":"alexander","n":5,"p":[-2,1]}`
//! (coefficients constant term first), `{"kind":"tribracket","size":k,
//! "table":[[[..]]]}`, `{"kind":"dihedral_tribracket","n":3}` and
//! `{"kind":"alexander_tribracket","n":5,"p":[..]}`.
//!
//! Diagrams: `{"kind":"pd","crossings":[[1,4,2,5],..]}` and
//! `{"kind":"surface","sheets":s,"regions":r,"double_curves":[[u1,u2,o1,o2],..],
//! "adjacency":[[s,r1,r2],..],"triple_points":[[sign,r1,b1,m1,t1],..]}`.
//!
//! Cochains: `{"theory":"sb","degree":n,"mod":m,"values":[[[x,..],v],..]}`,
//! with a dense fallback `{"dense":[..],"size":k}` over base-and-word tuples
//! in lexicographic order (degenerate tuples skipped). serde_json keeps maps
//! sorted, so emitted JSON is canonical.

use crate::algebra::{self, AxiomReport, FiniteBiquandle, ShadowBiquandle};
use crate::chains::AbelianGroupPresentation;
use crate::cocycles::{CochainTable, CochainTheory};
use crate::diagrams::surface::{SurfaceCode, TriplePoint};
use crate::diagrams::{InvariantResult, PDCode};
use crate::error::{Error, Result};
use crate::tribracket::{self, HorizontalTribracket};
use serde_json::{json, Value};

/// A parsed structure file.
pub enum Structure {
    Biquandle(FiniteBiquandle),
    Shadow(ShadowBiquandle),
    Tribracket(HorizontalTribracket),
}

/// Raw tables from a structure file, before any validation. Used by the
/// axiom-check path, which must accept invalid tables.
pub enum RawStructure {
    Biquandle {
        under: Vec<Vec<usize>>,
        over: Vec<Vec<usize>>,
    },
    Shadow {
        under: Vec<Vec<usize>>,
        over: Vec<Vec<usize>>,
        action: Vec<Vec<usize>>,
    },
    Tribracket {
        table: Vec<Vec<Vec<usize>>>,
    },
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name)
        .ok_or_else(|| Error::malformed(format!("missing field '{name}'")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::malformed(format!("{what} must be a nonnegative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::malformed(format!("{what} must be an integer")))
}

fn parse_table2(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::malformed(format!("{what} must be an array of rows")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::malformed(format!("{what} row must be an array")))?
                .iter()
                .map(|e| as_usize(e, what))
                .collect()
        })
        .collect()
}

fn parse_table3(v: &Value, what: &str) -> Result<Vec<Vec<Vec<usize>>>> {
    let planes = v
        .as_array()
        .ok_or_else(|| Error::malformed(format!("{what} must be a 3d array")))?;
    planes.iter().map(|p| parse_table2(p, what)).collect()
}

fn parse_coeffs(v: &Value) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| Error::malformed("'p' must be a coefficient array"))?
        .iter()
        .map(|c| as_i64(c, "coefficient"))
        .collect()
}

fn kind_of(v: &Value) -> Result<&str> {
    field(v, "kind")?
        .as_str()
        .ok_or_else(|| Error::malformed("'kind' must be a string"))
}

/// Parses and validates a structure file (constructors included).
pub fn parse_structure(v: &Value) -> Result<Structure> {
    match kind_of(v)? {
        "biquandle" => {
            let under = parse_table2(field(v, "under")?, "under")?;
            let over = parse_table2(field(v, "over")?, "over")?;
            Ok(Structure::Biquandle(FiniteBiquandle::new(under, over)?))
        }
        "shadow" => {
            let bq = match parse_structure(field(v, "biquandle")?)? {
                Structure::Biquandle(b) => b,
                Structure::Shadow(sb) => sb.biquandle().clone(),
                Structure::Tribracket(_) => {
                    return Err(Error::malformed("'biquandle' field holds a tribracket"))
                }
            };
            let action = parse_table2(field(v, "action")?, "action")?;
            Ok(Structure::Shadow(ShadowBiquandle::new(bq, action)?))
        }
        "dihedral" => {
            let n = as_usize(field(v, "n")?, "n")?;
            Ok(Structure::Shadow(algebra::dihedral(n)?))
        }
        "alexander" => {
            let n = as_usize(field(v, "n")?, "n")? as u64;
            let p = parse_coeffs(field(v, "p")?)?;
            Ok(Structure::Shadow(algebra::alexander(n, &p)?))
        }
        "tribracket" => {
            let table = parse_table3(field(v, "table")?, "table")?;
            Ok(Structure::Tribracket(HorizontalTribracket::new(table)?))
        }
        "dihedral_tribracket" => {
            let n = as_usize(field(v, "n")?, "n")?;
            Ok(Structure::Tribracket(tribracket::dihedral_tribracket(n)?))
        }
        "alexander_tribracket" => {
            let n = as_usize(field(v, "n")?, "n")? as u64;
            let p = parse_coeffs(field(v, "p")?)?;
            Ok(Structure::Tribracket(tribracket::alexander_tribracket(
                n, &p,
            )?))
        }
        k => Err(Error::malformed(format!("unknown structure kind '{k}'"))),
    }
}

/// Parses the raw tables of a structure file without validating axioms.
/// Constructor kinds are expanded to their tables.
pub fn parse_raw_structure(v: &Value) -> Result<RawStructure> {
    match kind_of(v)? {
        "biquandle" => Ok(RawStructure::Biquandle {
            under: parse_table2(field(v, "under")?, "under")?,
            over: parse_table2(field(v, "over")?, "over")?,
        }),
        "shadow" => {
            let inner = parse_raw_structure(field(v, "biquandle")?)?;
            let (under, over) = match inner {
                RawStructure::Biquandle { under, over } => (under, over),
                RawStructure::Shadow { under, over, .. } => (under, over),
                RawStructure::Tribracket { .. } => {
                    return Err(Error::malformed("'biquandle' field holds a tribracket"))
                }
            };
            Ok(RawStructure::Shadow {
                under,
                over,
                action: parse_table2(field(v, "action")?, "action")?,
            })
        }
        "tribracket" => Ok(RawStructure::Tribracket {
            table: parse_table3(field(v, "table")?, "table")?,
        }),
        // constructors validate on construction; expand to tables
        _ => match parse_structure(v)? {
            Structure::Biquandle(b) => Ok(RawStructure::Biquandle {
                under: b.under_table(),
                over: b.over_table(),
            }),
            Structure::Shadow(sb) => Ok(RawStructure::Shadow {
                under: sb.biquandle().under_table(),
                over: sb.biquandle().over_table(),
                action: sb.bset().action_table(),
            }),
            Structure::Tribracket(t) => Ok(RawStructure::Tribracket { table: t.table() }),
        },
    }
}

pub fn shadow_to_json(sb: &ShadowBiquandle) -> Value {
    json!({
        "kind": "shadow",
        "biquandle": {
            "kind": "biquandle",
            "size": sb.b_size(),
            "under": sb.biquandle().under_table(),
            "over": sb.biquandle().over_table(),
        },
        "action": sb.bset().action_table(),
        "strongly_connected": sb.strongly_connected(),
    })
}

pub fn tribracket_to_json(t: &HorizontalTribracket) -> Value {
    json!({
        "kind": "tribracket",
        "size": t.size(),
        "table": t.table(),
    })
}

/// A parsed diagram file.
pub enum Diagram {
    Pd(PDCode),
    Surface(SurfaceCode),
}

pub fn parse_diagram(v: &Value) -> Result<Diagram> {
    match kind_of(v)? {
        "pd" => {
            let rows = field(v, "crossings")?
                .as_array()
                .ok_or_else(|| Error::malformed("'crossings' must be an array"))?;
            let mut crossings = Vec::new();
            for row in rows {
                let t = row
                    .as_array()
                    .ok_or_else(|| Error::malformed("crossing must be an array"))?;
                if t.len() != 4 {
                    return Err(Error::malformed("crossing tuple arity must be 4"));
                }
                let mut c = [0usize; 4];
                for (i, e) in t.iter().enumerate() {
                    c[i] = as_usize(e, "edge id")?;
                }
                crossings.push(c);
            }
            Ok(Diagram::Pd(PDCode::new(crossings)))
        }
        "surface" => {
            let sheets = as_usize(field(v, "sheets")?, "sheets")?;
            let regions = as_usize(field(v, "regions")?, "regions")?;
            let mut double_curves = Vec::new();
            for row in field(v, "double_curves")?
                .as_array()
                .ok_or_else(|| Error::malformed("'double_curves' must be an array"))?
            {
                let t = row
                    .as_array()
                    .filter(|t| t.len() == 4)
                    .ok_or_else(|| Error::malformed("double curve must be [u1,u2,o1,o2]"))?;
                let mut c = [0usize; 4];
                for (i, e) in t.iter().enumerate() {
                    c[i] = as_usize(e, "sheet id")?;
                }
                double_curves.push(c);
            }
            let mut adjacency = Vec::new();
            for row in field(v, "adjacency")?
                .as_array()
                .ok_or_else(|| Error::malformed("'adjacency' must be an array"))?
            {
                let t = row
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| Error::malformed("adjacency must be [s,r1,r2]"))?;
                adjacency.push([
                    as_usize(&t[0], "sheet id")?,
                    as_usize(&t[1], "region id")?,
                    as_usize(&t[2], "region id")?,
                ]);
            }
            let mut triple_points = Vec::new();
            for row in field(v, "triple_points")?
                .as_array()
                .ok_or_else(|| Error::malformed("'triple_points' must be an array"))?
            {
                let t = row
                    .as_array()
                    .filter(|t| t.len() == 5)
                    .ok_or_else(|| Error::malformed("triple point must be [sign,r1,b1,m1,t1]"))?;
                triple_points.push(TriplePoint {
                    sign: as_i64(&t[0], "sign")? as i8,
                    region: as_usize(&t[1], "region id")?,
                    bottom: as_usize(&t[2], "sheet id")?,
                    middle: as_usize(&t[3], "sheet id")?,
                    top: as_usize(&t[4], "sheet id")?,
                });
            }
            let code = SurfaceCode {
                sheets,
                regions,
                double_curves,
                adjacency,
                triple_points,
            };
            code.validate()?;
            Ok(Diagram::Surface(code))
        }
        k => Err(Error::malformed(format!("unknown diagram kind '{k}'"))),
    }
}

fn theory_tag(t: CochainTheory) -> &'static str {
    match t {
        CochainTheory::Sb => "sb",
        CochainTheory::Lb => "lb",
        CochainTheory::N => "n",
    }
}

fn parse_theory_tag(s: &str) -> Result<CochainTheory> {
    match s {
        "sb" => Ok(CochainTheory::Sb),
        "lb" => Ok(CochainTheory::Lb),
        "n" => Ok(CochainTheory::N),
        _ => Err(Error::malformed(format!("unknown cochain theory '{s}'"))),
    }
}

pub fn cochain_to_json(t: &CochainTable) -> Value {
    let values: Vec<Value> = t
        .entries()
        .map(|((base, word), &v)| {
            let mut tuple = vec![*base];
            tuple.extend_from_slice(word);
            json!([tuple, v])
        })
        .collect();
    json!({
        "theory": theory_tag(t.theory),
        "degree": t.degree,
        "mod": t.modulus,
        "values": values,
    })
}

/// Word length of a cochain tuple: degree entries for SB/LB tables,
/// degree+1 for the ternary-complex tables.
fn word_len(theory: CochainTheory, degree: usize) -> usize {
    match theory {
        CochainTheory::Sb | CochainTheory::Lb => degree,
        CochainTheory::N => degree + 1,
    }
}

pub fn parse_cochain(v: &Value) -> Result<CochainTable> {
    let theory = parse_theory_tag(
        field(v, "theory")?
            .as_str()
            .ok_or_else(|| Error::malformed("'theory' must be a string"))?,
    )?;
    let degree = as_usize(field(v, "degree")?, "degree")?;
    let modulus = as_usize(field(v, "mod")?, "mod")? as u64;
    let mut table = CochainTable::new(theory, degree, modulus)?;
    let wl = word_len(theory, degree);
    if let Some(values) = v.get("values") {
        for entry in values
            .as_array()
            .ok_or_else(|| Error::malformed("'values' must be an array"))?
        {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::malformed("value entry must be [tuple, value]"))?;
            let tuple: Vec<usize> = pair[0]
                .as_array()
                .ok_or_else(|| Error::malformed("tuple must be an array"))?
                .iter()
                .map(|e| as_usize(e, "tuple entry"))
                .collect::<Result<_>>()?;
            if tuple.len() != wl + 1 {
                return Err(Error::malformed(format!(
                    "tuple length {} does not match degree {degree}",
                    tuple.len()
                )));
            }
            let value = as_usize(&pair[1], "cochain value")? as u64;
            table.set(tuple[0], tuple[1..].to_vec(), value);
        }
        return Ok(table);
    }
    if let Some(dense) = v.get("dense") {
        let size = as_usize(field(v, "size")?, "size")?;
        let vals: Vec<u64> = dense
            .as_array()
            .ok_or_else(|| Error::malformed("'dense' must be an array"))?
            .iter()
            .map(|e| as_usize(e, "dense value").map(|x| x as u64))
            .collect::<Result<_>>()?;
        // lexicographic tuples over 0..size, degenerate word tuples skipped
        // for the SB/LB quotient complexes
        let skip_degenerate = !matches!(theory, CochainTheory::N);
        let mut tuples = Vec::new();
        let mut counters = vec![0usize; wl + 1];
        loop {
            if counters[0] == size {
                break;
            }
            let word = &counters[1..];
            if !(skip_degenerate && word.windows(2).any(|w| w[0] == w[1])) {
                tuples.push((counters[0], word.to_vec()));
            }
            let mut i = wl;
            loop {
                counters[i] += 1;
                if counters[i] == size && i > 0 {
                    counters[i] = 0;
                    i -= 1;
                } else {
                    break;
                }
            }
        }
        if vals.len() != tuples.len() {
            return Err(Error::malformed(format!(
                "dense table has {} entries, expected {}",
                vals.len(),
                tuples.len()
            )));
        }
        for ((base, word), val) in tuples.into_iter().zip(vals) {
            table.set(base, word, val);
        }
        return Ok(table);
    }
    Err(Error::malformed("cochain needs 'values' or 'dense'"))
}

pub fn report_to_json(r: &AxiomReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

pub fn presentation_to_json(p: &AbelianGroupPresentation, coefficients: &str) -> Value {
    json!({
        "degree": p.degree,
        "coefficients": coefficients,
        "free_rank": p.free_rank,
        "torsion": p.torsion,
    })
}

pub fn invariants_to_json(inv: &InvariantResult) -> Value {
    let phi: Vec<Value> = inv.phi.iter().map(|(v, m)| json!([v, m])).collect();
    let classes: Vec<Value> = inv
        .classes
        .iter()
        .map(|(coords, m)| json!([coords, m]))
        .collect();
    json!({
        "colorings": inv.colorings,
        "phi": phi,
        "classes": classes,
    })
}
