use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tknots::algebra::{check_biquandle, check_bset, FiniteBiquandle, ShadowBiquandle};
use tknots::chains::{map_chain, mu_gen, ChainTheory};
use tknots::cocycles::{
    closed_form_lb, closed_form_n, mochizuki_2cocycle, mochizuki_3cocycle, transport_mu,
    CochainTable, CochainTheory,
};
use tknots::diagrams::{self, surface};
use tknots::error::{Error, Result};
use tknots::io::{self, Diagram, RawStructure, Structure};
use tknots::tribracket::{check_tribracket, corresponding_tribracket, HorizontalTribracket};
use tknots::battery;

/// Shadow-biquandle and local-biquandle toolkit: axiom checking, derived
/// tribrackets, (co)homology, diagram colorings and cocycle invariants.
/// All I/O is canonical JSON. Computation is deterministic; TKNOTS_SEED is
/// reserved and unused.
#[derive(Parser)]
#[command(name = "tknots", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Sb,
    Lb,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Sb,
    Lb,
    N,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check the axioms of a structure file
    Check { input: PathBuf },
    /// Derive the corresponding tribracket of a strongly connected shadow
    /// biquandle
    DeriveTribracket {
        input: PathBuf,
        /// Write the tribracket JSON here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Homology presentation of a structure's chain complex
    Homology {
        input: PathBuf,
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        degree: usize,
        /// Coefficients Z_m instead of Z
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Degree cap of the complex (default: degree + 1)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Generating set of the cocycle group mod m
    Cocycles {
        input: PathBuf,
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long)]
        degree: usize,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Emit a cochain of the polynomial cocycle family
    Mochizuki {
        /// Odd prime order of the dihedral structure
        #[arg(long)]
        n: u64,
        /// Cochain degree: 2|3 for sb/lb forms, 1|2 for the ternary form
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        form: FormArg,
    },
    /// Enumerate colorings of a diagram
    Colorings {
        diagram: PathBuf,
        structure: PathBuf,
        #[arg(long, value_enum, default_value = "sb")]
        theory: TheoryArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include the colorings themselves, not only the count
        #[arg(long)]
        list: bool,
    },
    /// Cocycle invariant: count, phi multiset and homology-class multiset
    Invariant {
        diagram: PathBuf,
        structure: PathBuf,
        /// Cochain file path, or inline `mochizuki:N`
        #[arg(long)]
        cocycle: String,
        #[arg(long, value_enum, default_value = "sb")]
        theory: TheoryArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run both pipelines and assert the correspondence equalities
    Compare {
        diagram: PathBuf,
        structure: PathBuf,
        /// Cochain file path, or inline `mochizuki:N`
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the lemma/theorem verification battery
    Verify {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn need_shadow(s: Structure, what: &str) -> Result<ShadowBiquandle> {
    match s {
        Structure::Shadow(sb) => Ok(sb),
        _ => Err(Error::contract(format!("{what} needs a shadow structure"))),
    }
}

/// Builds the requested chain theory from a structure file: `sb` needs a
/// shadow structure; `lb` accepts a tribracket directly or derives the
/// corresponding one from a strongly connected shadow structure.
fn chain_theory(s: Structure, theory: TheoryArg, cap: usize) -> Result<ChainTheory> {
    match theory {
        TheoryArg::Sb => ChainTheory::sb(need_shadow(s, "the sb theory")?, cap),
        TheoryArg::Lb => {
            let tri = match s {
                Structure::Tribracket(t) => t,
                Structure::Shadow(sb) => corresponding_tribracket(&sb)?,
                Structure::Biquandle(_) => {
                    return Err(Error::contract(
                        "the lb theory needs a tribracket or shadow structure",
                    ))
                }
            };
            ChainTheory::lb(tri, cap)
        }
    }
}

enum CocycleSpec {
    Mochizuki(u64),
    File(PathBuf),
}

fn parse_cocycle_spec(s: &str) -> Result<CocycleSpec> {
    if let Some(rest) = s.strip_prefix("mochizuki:") {
        let n: u64 = rest
            .parse()
            .map_err(|_| Error::malformed(format!("bad mochizuki order '{rest}'")))?;
        Ok(CocycleSpec::Mochizuki(n))
    } else {
        Ok(CocycleSpec::File(PathBuf::from(s)))
    }
}

/// Resolves a cocycle spec against the diagram degree and theory side. For
/// the lb side a `mochizuki:N` spec is transported along the searrow map so
/// the correspondence hypothesis holds exactly.
fn resolve_cocycle(
    spec: &CocycleSpec,
    degree: usize,
    theory: TheoryArg,
    sb: Option<&ShadowBiquandle>,
) -> Result<CochainTable> {
    match spec {
        CocycleSpec::File(path) => {
            let table = io::parse_cochain(&read_json(path)?)?;
            let want = match theory {
                TheoryArg::Sb => CochainTheory::Sb,
                TheoryArg::Lb => CochainTheory::Lb,
            };
            if table.theory != want || table.degree != degree {
                return Err(Error::contract(
                    "cochain theory/degree does not match the request",
                ));
            }
            Ok(table)
        }
        CocycleSpec::Mochizuki(n) => {
            let base = match degree {
                2 => mochizuki_2cocycle(*n)?,
                3 => mochizuki_3cocycle(*n)?,
                d => return Err(Error::contract(format!("no mochizuki cochain at degree {d}"))),
            };
            match theory {
                TheoryArg::Sb => Ok(base),
                TheoryArg::Lb => {
                    let sb = sb.ok_or_else(|| {
                        Error::contract("transporting mochizuki:N needs a shadow structure")
                    })?;
                    if sb.b_size() != *n as usize {
                        return Err(Error::contract(format!(
                            "mochizuki:{n} does not match a structure of size {}",
                            sb.b_size()
                        )));
                    }
                    transport_mu(&base, sb)
                }
            }
        }
    }
}

fn check_command(input: &Path) -> Result<i32> {
    let raw = io::parse_raw_structure(&read_json(input)?)?;
    let report = match raw {
        RawStructure::Biquandle { under, over } => check_biquandle(&under, &over)?,
        RawStructure::Shadow {
            under,
            over,
            action,
        } => {
            let bq_report = check_biquandle(&under, &over)?;
            if !bq_report.passed {
                bq_report
            } else {
                let bq = FiniteBiquandle::new(under, over)?;
                check_bset(&bq, &action)?
            }
        }
        RawStructure::Tribracket { table } => check_tribracket(&table)?,
    };
    print_json(&io::report_to_json(&report));
    Ok(if report.passed { 0 } else { 1 })
}

fn colorings_command(
    diagram: &Path,
    structure: &Path,
    theory: TheoryArg,
    jobs: usize,
    list: bool,
) -> Result<i32> {
    let diag = io::parse_diagram(&read_json(diagram)?)?;
    let s = io::parse_structure(&read_json(structure)?)?;
    let out = match (&diag, theory) {
        (Diagram::Pd(pd), TheoryArg::Sb) => {
            let ds = diagrams::build_structure(pd)?;
            let sb = need_shadow(s, "sb colorings")?;
            let cols = diagrams::enumerate_sb_colorings(&ds, &sb, jobs);
            let mut v = json!({"colorings": cols.len(), "theory": "sb"});
            if list {
                v["list"] = cols
                    .iter()
                    .map(|c| json!({"arcs": c.arcs, "regions": c.regions}))
                    .collect();
            }
            v
        }
        (Diagram::Pd(pd), TheoryArg::Lb) => {
            let ds = diagrams::build_structure(pd)?;
            let tri = tribracket_of(s)?;
            let cols = diagrams::enumerate_lb_colorings(&ds, &tri, jobs);
            let mut v = json!({"colorings": cols.len(), "theory": "lb"});
            if list {
                v["list"] = cols
                    .iter()
                    .map(|c| json!({"pairs": c.arcs, "regions": c.regions}))
                    .collect();
            }
            v
        }
        (Diagram::Surface(sc), TheoryArg::Sb) => {
            let sb = need_shadow(s, "sb colorings")?;
            let cols = surface::enumerate_surface_sb(sc, &sb, jobs)?;
            let mut v = json!({"colorings": cols.len(), "theory": "sb"});
            if list {
                v["list"] = cols
                    .iter()
                    .map(|c| json!({"sheets": c.sheets, "regions": c.regions}))
                    .collect();
            }
            v
        }
        (Diagram::Surface(sc), TheoryArg::Lb) => {
            let tri = tribracket_of(s)?;
            let cols = surface::enumerate_surface_lb(sc, &tri, jobs)?;
            let mut v = json!({"colorings": cols.len(), "theory": "lb"});
            if list {
                v["list"] = cols
                    .iter()
                    .map(|c| json!({"pairs": c.pairs, "regions": c.regions}))
                    .collect();
            }
            v
        }
    };
    print_json(&out);
    Ok(0)
}

fn tribracket_of(s: Structure) -> Result<HorizontalTribracket> {
    match s {
        Structure::Tribracket(t) => Ok(t),
        Structure::Shadow(sb) => corresponding_tribracket(&sb),
        Structure::Biquandle(_) => Err(Error::contract(
            "lb colorings need a tribracket or shadow structure",
        )),
    }
}

fn invariant_command(
    diagram: &Path,
    structure: &Path,
    cocycle: &str,
    theory: TheoryArg,
    jobs: usize,
) -> Result<i32> {
    let diag = io::parse_diagram(&read_json(diagram)?)?;
    let s = io::parse_structure(&read_json(structure)?)?;
    let spec = parse_cocycle_spec(cocycle)?;
    let degree = match diag {
        Diagram::Pd(_) => 2,
        Diagram::Surface(_) => 3,
    };
    let sb_for_transport = match &s {
        Structure::Shadow(sb) => Some(sb.clone()),
        _ => None,
    };
    let theta = resolve_cocycle(&spec, degree, theory, sb_for_transport.as_ref())?;
    let theory_obj = chain_theory(s, theory, degree + 1)?;
    let inv = match (&diag, theory) {
        (Diagram::Pd(pd), TheoryArg::Sb) => {
            let ds = diagrams::build_structure(pd)?;
            diagrams::invariants_sb(&ds, &theory_obj, &theta, jobs)?
        }
        (Diagram::Pd(pd), TheoryArg::Lb) => {
            let ds = diagrams::build_structure(pd)?;
            diagrams::invariants_lb(&ds, &theory_obj, &theta, jobs)?
        }
        (Diagram::Surface(sc), TheoryArg::Sb) => {
            surface::invariants_sb(sc, &theory_obj, &theta, jobs)?
        }
        (Diagram::Surface(sc), TheoryArg::Lb) => {
            surface::invariants_lb(sc, &theory_obj, &theta, jobs)?
        }
    };
    print_json(&io::invariants_to_json(&inv));
    Ok(0)
}

fn compare_command(diagram: &Path, structure: &Path, cocycle: &str, jobs: usize) -> Result<i32> {
    let diag = io::parse_diagram(&read_json(diagram)?)?;
    let sb = need_shadow(io::parse_structure(&read_json(structure)?)?, "compare")?;
    if !sb.strongly_connected() {
        return Err(Error::contract(
            "compare needs a strongly connected shadow biquandle",
        ));
    }
    let tri = corresponding_tribracket(&sb)?;
    let spec = parse_cocycle_spec(cocycle)?;
    let degree = match diag {
        Diagram::Pd(_) => 2,
        Diagram::Surface(_) => 3,
    };
    let theta = resolve_cocycle(&spec, degree, TheoryArg::Sb, Some(&sb))?;
    let theta_lb = transport_mu(&theta, &sb)?;
    let sbt = ChainTheory::sb(sb.clone(), degree + 1)?;
    let lbt = ChainTheory::lb(tri.clone(), degree + 1)?;

    let (inv_sb, inv_lb, bijection_ok, chain_map_ok) = match &diag {
        Diagram::Pd(pd) => {
            let ds = diagrams::build_structure(pd)?;
            let sb_cols = diagrams::enumerate_sb_colorings(&ds, &sb, jobs);
            let lb_cols = diagrams::enumerate_lb_colorings(&ds, &tri, jobs);
            let mut images = Vec::new();
            let mut chain_ok = true;
            for c in &sb_cols {
                let c2 = diagrams::translate_sb_to_lb(&ds, &sb, c)?;
                let w = diagrams::chain_w_sb(&ds, c, &sbt)?;
                let w2 = diagrams::chain_w_lb(&ds, &c2, &lbt)?;
                chain_ok &= map_chain(&sbt, &lbt, &w, |g| mu_gen(&sb, g))? == w2;
                images.push(c2);
            }
            images.sort_unstable();
            let bij = images == lb_cols;
            (
                diagrams::invariants_sb(&ds, &sbt, &theta, jobs)?,
                diagrams::invariants_lb(&ds, &lbt, &theta_lb, jobs)?,
                bij,
                chain_ok,
            )
        }
        Diagram::Surface(sc) => {
            let sb_cols = surface::enumerate_surface_sb(sc, &sb, jobs)?;
            let lb_cols = surface::enumerate_surface_lb(sc, &tri, jobs)?;
            let mut images = Vec::new();
            let mut chain_ok = true;
            for c in &sb_cols {
                let c2 = surface::translate_sb_to_lb(sc, c);
                let w = surface::chain_w_sb(sc, c, &sbt)?;
                let w2 = surface::chain_w_lb(sc, &c2, &lbt)?;
                chain_ok &= map_chain(&sbt, &lbt, &w, |g| mu_gen(&sb, g))? == w2;
                images.push(c2);
            }
            images.sort_unstable();
            let bij = images == lb_cols;
            (
                surface::invariants_sb(sc, &sbt, &theta, jobs)?,
                surface::invariants_lb(sc, &lbt, &theta_lb, jobs)?,
                bij,
                chain_ok,
            )
        }
    };
    let counts_equal = inv_sb.colorings == inv_lb.colorings;
    let phi_equal = inv_sb.phi == inv_lb.phi;
    let all_ok = counts_equal && phi_equal && bijection_ok && chain_map_ok;
    print_json(&json!({
        "colorings_sb": inv_sb.colorings,
        "colorings_lb": inv_lb.colorings,
        "counts_equal": counts_equal,
        "bijection_ok": bijection_ok,
        "chain_map_ok": chain_map_ok,
        "phi_equal": phi_equal,
        "phi_sb": inv_sb.phi.iter().map(|(v, m)| json!([v, m])).collect::<Vec<_>>(),
        "phi_lb": inv_lb.phi.iter().map(|(v, m)| json!([v, m])).collect::<Vec<_>>(),
    }));
    Ok(if all_ok { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { input } => check_command(&input),
        Command::DeriveTribracket { input, output } => {
            let sb = need_shadow(
                io::parse_structure(&read_json(&input)?)?,
                "derive-tribracket",
            )?;
            let tri = corresponding_tribracket(&sb)?;
            let v = io::tribracket_to_json(&tri);
            match output {
                Some(path) => std::fs::write(path, serde_json::to_string_pretty(&v)?)?,
                None => print_json(&v),
            }
            Ok(0)
        }
        Command::Homology {
            input,
            theory,
            degree,
            modulus,
            cap,
        } => {
            let cap = cap.unwrap_or(degree + 1).max(degree + 1);
            let t = chain_theory(io::parse_structure(&read_json(&input)?)?, theory, cap)?;
            let (pres, coeff) = match modulus {
                None => (t.homology_z(degree)?, "Z".to_string()),
                Some(m) => (t.homology_mod(degree, m)?, format!("Z/{m}")),
            };
            print_json(&io::presentation_to_json(&pres, &coeff));
            Ok(0)
        }
        Command::Cocycles {
            input,
            theory,
            degree,
            modulus,
        } => {
            let t = chain_theory(
                io::parse_structure(&read_json(&input)?)?,
                theory,
                degree + 1,
            )?;
            let basis = t.cocycle_basis(degree, modulus)?;
            let items: Vec<Value> = basis.iter().map(io::cochain_to_json).collect();
            print_json(&json!({"count": items.len(), "basis": items}));
            Ok(0)
        }
        Command::Mochizuki { n, degree, form } => {
            let table = match form {
                FormArg::Sb => match degree {
                    2 => mochizuki_2cocycle(n)?,
                    3 => mochizuki_3cocycle(n)?,
                    d => {
                        return Err(Error::contract(format!(
                            "sb form exists in degrees 2 and 3, not {d}"
                        )))
                    }
                },
                FormArg::Lb => closed_form_lb(n, degree)?,
                FormArg::N => closed_form_n(n, degree)?,
            };
            print_json(&io::cochain_to_json(&table));
            Ok(0)
        }
        Command::Colorings {
            diagram,
            structure,
            theory,
            jobs,
            list,
        } => colorings_command(&diagram, &structure, theory, jobs, list),
        Command::Invariant {
            diagram,
            structure,
            cocycle,
            theory,
            jobs,
        } => invariant_command(&diagram, &structure, &cocycle, theory, jobs),
        Command::Compare {
            diagram,
            structure,
            cocycle,
            jobs,
        } => compare_command(&diagram, &structure, &cocycle, jobs),
        Command::Verify { jobs } => {
            let results = battery::run(jobs);
            let mut items = Vec::new();
            let mut all = true;
            for (name, ok, err) in &results {
                eprintln!("{}: {}", name, if *ok { "pass" } else { "FAIL" });
                if let Some(e) = err {
                    eprintln!("  error: {e}");
                }
                all &= ok;
                items.push(json!({"name": name, "passed": ok}));
            }
            print_json(&json!({"passed": all, "items": items}));
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn error_code(e: &Error) -> &'static str {
    match e {
        Error::Malformed(_) => "malformed",
        Error::Axioms(_) => "axioms",
        Error::Contract(_) => "contract",
        Error::Json(_) => "json",
        Error::Io(_) => "io",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let v = json!({"error": {"code": error_code(&e), "message": e.to_string()}});
            eprintln!("{}", serde_json::to_string(&v).expect("serializable"));
            ExitCode::from(2)
        }
    }
}
