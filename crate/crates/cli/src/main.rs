//! Command-line front end: parse basis elements from the text grammar, run
//! the Hopf and Brion operations, and drive the verification suite.

use std::fmt::Display;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use brion_core::checks::{self, Bounds};
use brion_core::dual;
use brion_core::error::Error;
use brion_core::fock;
use brion_core::formal::{Decomposition, FormalSum, GroundSet};
use brion_core::geometry::{self, LatticePolytope};
use brion_core::hopf::{self, BasisElement, CheckReport, MonoidTag};
use brion_core::poset::Poset;
use brion_core::text::{parse_element, parse_maybe_dual};

#[derive(Parser)]
#[command(
    name = "brion",
    about = "Hopf monoids of permutahedra, associahedra, orbit polytopes and posets; \
             the Brion morphism and its dual",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write poset terms of the result as Graphviz DOT to this file.
    #[arg(long, value_name = "FILE")]
    dot: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two basis elements of the same monoid on disjoint ground sets.
    Product {
        left: String,
        right: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Apply the coproduct Δ_{S,T} to a basis element.
    Coproduct {
        element: String,
        /// Comma-separated labels of S.
        #[arg(long = "S", value_name = "LABELS")]
        s: String,
        /// Comma-separated labels of T (defaults to the complement of S).
        #[arg(long = "T", value_name = "LABELS")]
        t: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Apply the Brion map to a polytope basis element.
    Brion {
        element: String,
        /// Return the unlabeled (Hopf-algebra-level) image.
        #[arg(long)]
        fock: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the geometric Brion map on a polytope given as JSON
    /// {"ground": [...], "vertices": [[...], ...]} (file path or `-`).
    BrionGeometric {
        input: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Dual product of two dual basis elements (closed formula on atoms).
    DualProduct {
        left: String,
        right: String,
        /// Use brute-force dualization of the coproduct instead.
        #[arg(long)]
        brute: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Lie bracket of two atomic dual elements.
    Bracket {
        left: String,
        right: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Dual Brion map of an unlabeled poset class (given as a labeled poset).
    DualBrion {
        element: String,
        #[arg(long, value_enum)]
        target: Target,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Perm,
    Assoc,
    Orbit,
}

impl From<Target> for MonoidTag {
    fn from(t: Target) -> MonoidTag {
        match t {
            Target::Perm => MonoidTag::Perm,
            Target::Assoc => MonoidTag::Assoc,
            Target::Orbit => MonoidTag::Orbit,
        }
    }
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Coassociativity and compatibility for all four monoids.
    HopfAxioms {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Both Brion morphism squares for the three polytope monoids.
    BrionMorphism {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Antisymmetry and Jacobi for the primitive Lie monoids.
    LieAxioms {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Primitivity is exactly single-factor-ness.
    Primitives {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// The Catalan identity and parity corollary.
    Catalan {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// The Witt bracket relations.
    Witt {
        #[arg(long, default_value_t = 6)]
        max_grade: usize,
    },
    /// Closed dual products against brute-force dualization.
    DualProducts {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Everything, at the acceptance scales.
    All {
        /// Overrides the ground-set bounds (oracle, axioms, species, dual
        /// poset checks); specialized grade bounds keep their defaults.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                Error::BoundExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn ground_from_csv(csv: &str) -> GroundSet {
    GroundSet::new(
        csv.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from),
    )
}

fn decomposition_for(
    element: &BasisElement,
    s: &str,
    t: Option<&str>,
) -> brion_core::Result<Decomposition> {
    let ground = element.ground();
    let s_set = ground_from_csv(s);
    match t {
        None => Decomposition::of_subset(&ground, s_set),
        Some(t) => {
            let d = Decomposition::new(s_set, ground_from_csv(t))?;
            if d.ground() != ground {
                return Err(Error::GroundMismatch(format!(
                    "S ⊔ T = {} but the element lives on {ground}",
                    d.ground()
                )));
            }
            Ok(d)
        }
    }
}

fn print_sum<K>(sum: &FormalSum<K>, out: &OutputOpts) -> brion_core::Result<()>
where
    K: Ord + Display + serde::Serialize,
{
    if out.json {
        println!(
            "{}",
            serde_json::to_string_pretty(sum).expect("serializable sum")
        );
    } else {
        println!("{sum}");
    }
    Ok(())
}

fn render_tensor_text(sum: &FormalSum<(BasisElement, BasisElement)>) -> String {
    if sum.is_zero() {
        return "0".to_string();
    }
    sum.iter()
        .map(|((l, r), c)| {
            let coeff = if num_one(c) {
                String::new()
            } else {
                format!("{}·", brion_core::formal::format_rational(c))
            };
            format!("{coeff}{l} ⊗ {r}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn num_one(r: &brion_core::formal::Rational) -> bool {
    *r == brion_core::formal::rat(1)
}

fn write_dot_for_posets(
    sum: &FormalSum<Poset>,
    path: &std::path::Path,
) -> brion_core::Result<()> {
    let mut out = String::from("digraph brion {\n  rankdir=BT;\n  edge [arrowhead=none];\n");
    for (i, (p, c)) in sum.iter().enumerate() {
        out.push_str(&format!(
            "  subgraph cluster_{i} {{\n    label=\"coeff {}\";\n",
            brion_core::formal::format_rational(c)
        ));
        for l in p.ground().iter() {
            out.push_str(&format!("    \"t{i}_{l}\" [label=\"{l}\"];\n"));
        }
        for (a, b) in p.covers() {
            out.push_str(&format!("    \"t{i}_{a}\" -> \"t{i}_{b}\";\n"));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    std::fs::write(path, out)
        .map_err(|e| Error::InvalidInput(format!("cannot write DOT file: {e}")))
}

fn print_reports(reports: &[CheckReport]) -> ExitCode {
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut all_ok = true;
    for r in reports {
        println!(
            "{:width$}  {}  ({} cases)",
            r.name,
            if r.passed() { "PASS" } else { "FAIL" },
            r.cases,
        );
        if !r.passed() {
            all_ok = false;
            for f in r.failures.iter().take(10) {
                println!("    {f}");
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> brion_core::Result<ExitCode> {
    match cli.command {
        Command::Product { left, right, out } => {
            let x = parse_element(&left)?;
            let y = parse_element(&right)?;
            let p = hopf::product(&x, &y)?;
            if out.json {
                println!("{}", serde_json::to_string_pretty(&p).expect("serializable"));
            } else {
                println!("{p}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Coproduct { element, s, t, out } => {
            let x = parse_element(&element)?;
            let d = decomposition_for(&x, &s, t.as_deref())?;
            let sum = hopf::coproduct(&x, &d)?;
            if out.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&sum).expect("serializable")
                );
            } else {
                println!("{}", render_tensor_text(&sum));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Brion { element, fock, out } => {
            let x = parse_element(&element)?;
            if fock {
                let class = fock::unlabel_element(&x)?;
                let sum = if class.is_atom() {
                    fock::brion_fock(&class)?
                } else {
                    fock::unlabel_poset_sum(&hopf::brion(&x)?)?
                };
                if let Some(path) = &out.dot {
                    let labeled = sum.map_keys(|class| class.to_poset());
                    write_dot_for_posets(&labeled, path)?;
                }
                print_sum(&sum, &out)?;
            } else {
                let sum = hopf::brion(&x)?;
                if let Some(path) = &out.dot {
                    write_dot_for_posets(&sum, path)?;
                }
                print_sum(&sum, &out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::BrionGeometric { input, out } => {
            let data = if input == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(&input)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {input}: {e}")))?
            };
            let poly: LatticePolytope = serde_json::from_str(&data).map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("bad polytope JSON: {e}"),
            })?;
            let sum = geometry::brion_geometric(&poly)?;
            if let Some(path) = &out.dot {
                write_dot_for_posets(&sum, path)?;
            }
            print_sum(&sum, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DualProduct {
            left,
            right,
            brute,
            out,
        } => {
            let (x, _) = parse_maybe_dual(&left)?;
            let (y, _) = parse_maybe_dual(&right)?;
            let sum = if brute {
                dual::dual_product_bruteforce(&x, &y)?
            } else {
                dual::dual_product_formula(&x, &y)?
            };
            print_sum(&sum, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket { left, right, out } => {
            let (x, _) = parse_maybe_dual(&left)?;
            let (y, _) = parse_maybe_dual(&right)?;
            // The closed formulas cover atomic primitives; fall back to the
            // brute-force commutator for anything else in range.
            let sum = match dual::lie_bracket(&x, &y) {
                Ok(sum) => sum,
                Err(Error::InvalidInput(_)) => dual::lie_bracket_bruteforce(&x, &y)?,
                Err(e) => return Err(e),
            };
            print_sum(&sum, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DualBrion {
            element,
            target,
            out,
        } => {
            let (x, _) = parse_maybe_dual(&element)?;
            let BasisElement::Poset { poset } = &x else {
                return Err(Error::InvalidInput(
                    "dual-brion expects a poset element, e.g. poset{a<b}".into(),
                ));
            };
            let class = poset.canonical_form()?;
            let sum = fock::dual_brion(&class, MonoidTag::from(target))?;
            print_sum(&sum, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { what } => {
            let reports = match what {
                VerifyWhat::HopfAxioms { max_n } => vec![checks::check_hopf_axioms(max_n)?],
                VerifyWhat::BrionMorphism { max_n } => {
                    vec![checks::check_brion_morphism_all(max_n)?]
                }
                VerifyWhat::LieAxioms { max_n } => vec![checks::check_lie_axioms(max_n)?],
                VerifyWhat::Primitives { max_n } => vec![checks::check_primitives(max_n)?],
                VerifyWhat::Catalan { max_n } => vec![checks::check_catalan(max_n)?],
                VerifyWhat::Witt { max_grade } => {
                    vec![checks::check_witt(max_grade, max_grade.min(5))?]
                }
                VerifyWhat::DualProducts { max_n } => vec![checks::check_dual_products(max_n)?],
                VerifyWhat::All { max_n, seed } => {
                    let mut bounds = Bounds {
                        seed,
                        ..Bounds::default()
                    };
                    if let Some(n) = max_n {
                        bounds.oracle_n = n;
                        bounds.species_n = n;
                        bounds.axioms_n = n;
                        bounds.dual_poset_n = n;
                    }
                    checks::run_all(&bounds)?
                }
            };
            Ok(print_reports(&reports))
        }
    }
}

