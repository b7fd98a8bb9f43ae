//! Command-line front end: parse spectra, vectors, and matrices; invoke the
//! library; emit JSON/CSV/pm-text artifacts.
//!
//! Exit codes: 0 = success/affirmative, 1 = well-formed mathematical
//! negative (not a member, not realizable, verification failed),
//! 2 = input or usage error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::traits::Signed;
use serde::Serialize;

use spectratope::polyhedra::VertexEnumOptions;
use spectratope::*;

type CliResult<T> = std::result::Result<T, String>;

#[derive(Parser)]
#[command(name = "spectratope", version, about = "Exact Perron spectracone/spectratope computations and nonnegative spectrum realization")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
    Pm,
    Decimal,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Region {
    /// W(S) = C(S) ∩ [-1,1]^n
    #[default]
    W,
    /// P(S): the x₁ = 1 slice
    Tope,
    /// P¹(S): the projected spectratope
    P1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureId {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Walsh matrix of order 2^n.
    Walsh {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value_t = 6)]
        decimal: u32,
    },
    /// Print a normalized Hadamard matrix of the given order.
    Hadamard {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value_t = 6)]
        decimal: u32,
    },
    /// Perron-similarity classification of a matrix (exit 1 when it is not one).
    Classify {
        /// JSON matrix file, or - for stdin.
        #[arg(long)]
        matrix: String,
    },
    /// H-representation of the spectracone C(S).
    Cone {
        #[arg(long)]
        matrix: String,
    },
    /// H-representation of the spectratope P(S).
    Tope {
        #[arg(long)]
        matrix: String,
    },
    /// H-representation of the projected spectratope P¹(S).
    Project {
        #[arg(long)]
        matrix: String,
    },
    /// Spectracone membership test (exit 1 when not a member).
    Membership {
        /// Walsh exponent n: test against C(H_n) by the row-coefficient criterion.
        #[arg(long, conflicts_with = "matrix")]
        walsh: Option<u32>,
        /// JSON matrix file, or - for stdin: test directly via S·D_x·S^{-1}.
        #[arg(long)]
        matrix: Option<String>,
        /// Comma-separated rational coordinates.
        #[arg(long)]
        vector: String,
    },
    /// Exact simplex volume of a polytope attached to S.
    Volume {
        #[arg(long)]
        matrix: Option<String>,
        /// Shortcut: use the Walsh matrix of order 2^n.
        #[arg(long, conflicts_with = "matrix")]
        walsh: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        set: Region,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        #[arg(long, default_value_t = 64)]
        max_rows: usize,
        /// Skip the unboundedness pre-check (caller asserts the set is a polytope).
        #[arg(long)]
        assume_bounded: bool,
    },
    /// Vertex enumeration for a polytope attached to S.
    Vertices {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, conflicts_with = "matrix")]
        walsh: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        set: Region,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        #[arg(long, default_value_t = 64)]
        max_rows: usize,
        #[arg(long)]
        assume_bounded: bool,
    },
    /// Realize a spectrum by a nonnegative matrix (exit 1 when no route applies).
    Realize {
        /// Comma-separated rational eigenvalues, e.g. "1,-1/4,-1/4,-1/2".
        #[arg(long)]
        spectrum: String,
    },
    /// Re-check a realization certificate (exit 1 when any check fails).
    Verify {
        /// Certificate JSON file, or - for stdin.
        #[arg(long)]
        certificate: String,
        #[arg(long)]
        spectrum: String,
    },
    /// Association-scheme data: a basis permutation, an index product, or a group matrix.
    Scheme {
        #[arg(long)]
        n: u32,
        /// 1-based basis index: print P_nk.
        #[arg(long)]
        k: Option<usize>,
        /// With --k: print the index of P_nk·P_nl.
        #[arg(long, requires = "k")]
        l: Option<usize>,
        /// Comma-separated coefficients: print the group matrix M_x.
        #[arg(long, conflicts_with_all = ["k", "l"])]
        vector: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value_t = 6)]
        decimal: u32,
    },
    /// Plot-ready CSV for the paper-style region figures.
    Figure {
        #[arg(long, value_enum)]
        which: FigureId,
        /// Parameter a of the n=3 basis S_a (fig2 only).
        #[arg(long, default_value = "1/2")]
        a: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn load_matrix(source: &str) -> CliResult<RatMatrix> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("--matrix {source}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("--matrix {source}: {e}"))
}

fn parse_vector(flag: &str, s: &str) -> CliResult<RatVector> {
    parse_rational_list(s).map_err(|e| format!("--{flag} {s:?}: {e}"))
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn matrix_body(m: &RatMatrix, format: Format, decimal: u32) -> CliResult<String> {
    match format {
        Format::Json => json(m),
        Format::Csv => Ok((0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")),
        Format::Pm => to_pm_text(m)
            .map(|t| t.trim_end().to_string())
            .map_err(|e| e.to_string()),
        Format::Decimal => Ok((0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|v| to_decimal(v, decimal))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")),
    }
}

fn region_hrep(s: &RatMatrix, set: Region) -> spectratope::Result<HRep> {
    match set {
        Region::W => wpolytope_hrep(s),
        Region::Tope => spectratope_hrep(s),
        Region::P1 => project_p1(s),
    }
}

fn region_name(set: Region) -> &'static str {
    match set {
        Region::W => "w",
        Region::Tope => "tope",
        Region::P1 => "p1",
    }
}

fn basis_arg(matrix: &Option<String>, walsh_n: &Option<u32>) -> CliResult<RatMatrix> {
    match (matrix, walsh_n) {
        (Some(m), None) => load_matrix(m),
        (None, Some(n)) => Ok(walsh(*n).map_err(|e| e.to_string())?.into_matrix()),
        _ => Err("exactly one of --matrix and --walsh is required".into()),
    }
}

#[derive(Serialize)]
struct MembershipOutput {
    member: bool,
    #[serde(with = "spectratope::rational::serde_rational_vec")]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    coefficients: RatVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<RatMatrix>,
}

#[derive(Serialize)]
struct ClassifyOutput {
    is_perron_similarity: bool,
    perron_indices: Vec<usize>,
    strong_index: Option<usize>,
    relative_gain_array: RatMatrix,
}

#[derive(Serialize)]
struct VerticesOutput {
    set: &'static str,
    dim: usize,
    vertices: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct VolumeOutput {
    set: &'static str,
    vertex_count: usize,
    volume: String,
}

#[derive(Serialize)]
struct RealizeFailure {
    realizable: bool,
    reason: String,
}

fn format_vertices(vertices: &[RatVector]) -> Vec<Vec<String>> {
    vertices
        .iter()
        .map(|v| v.iter().map(format_rational).collect())
        .collect()
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let out = cli.out;
    match cli.cmd {
        Cmd::Walsh { n, format, decimal } => {
            let w = walsh(n).map_err(|e| e.to_string())?;
            emit(&out, &matrix_body(w.matrix(), format, decimal)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hadamard {
            order,
            format,
            decimal,
        } => {
            let h = hadamard_of_order(order).map_err(|e| e.to_string())?;
            emit(&out, &matrix_body(h.matrix(), format, decimal)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify { matrix } => {
            let s = load_matrix(&matrix)?;
            let c = classify(&s).map_err(|e| e.to_string())?;
            let rga = relative_gain_array(&s).map_err(|e| e.to_string())?;
            let body = json(&ClassifyOutput {
                is_perron_similarity: c.is_perron_similarity(),
                perron_indices: c.perron_indices().to_vec(),
                strong_index: c.strong_index(),
                relative_gain_array: rga,
            })?;
            emit(&out, &body)?;
            Ok(if c.is_perron_similarity() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Cone { matrix } => {
            let h = spectracone_hrep(&load_matrix(&matrix)?).map_err(|e| e.to_string())?;
            emit(&out, &json(&h)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tope { matrix } => {
            let h = spectratope_hrep(&load_matrix(&matrix)?).map_err(|e| e.to_string())?;
            emit(&out, &json(&h)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Project { matrix } => {
            let h = project_p1(&load_matrix(&matrix)?).map_err(|e| e.to_string())?;
            emit(&out, &json(&h)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Membership {
            walsh: walsh_n,
            matrix,
            vector,
        } => {
            let v = parse_vector("vector", &vector)?;
            let output = match (walsh_n, matrix) {
                (Some(n), None) => {
                    // Coefficients of v over the Walsh rows: x = 2^{-n} H_n v;
                    // membership is exactly x ≥ 0.
                    let h = walsh(n).map_err(|e| e.to_string())?.into_matrix();
                    let order = h.rows();
                    let coeffs: RatVector = h
                        .mul_vec(&v)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .map(|c| c / rat_int(order as i64))
                        .collect();
                    let member = walsh_cone_membership(n, &v).map_err(|e| e.to_string())?;
                    MembershipOutput {
                        member,
                        coefficients: coeffs,
                        witness: None,
                    }
                }
                (None, Some(m)) => {
                    let s = load_matrix(&m)?;
                    let (member, witness) =
                        cone_membership_direct(&s, &v).map_err(|e| e.to_string())?;
                    MembershipOutput {
                        member,
                        coefficients: Vec::new(),
                        witness: Some(witness),
                    }
                }
                _ => return Err("exactly one of --walsh and --matrix is required".into()),
            };
            let member = output.member;
            emit(&out, &json(&output)?)?;
            Ok(if member {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Volume {
            matrix,
            walsh: walsh_n,
            set,
            max_dim,
            max_rows,
            assume_bounded,
        } => {
            let s = basis_arg(&matrix, &walsh_n)?;
            let hrep = region_hrep(&s, set).map_err(|e| e.to_string())?;
            let opts = VertexEnumOptions {
                max_dim,
                max_rows,
                check_bounded: !assume_bounded,
            };
            let vertices = enumerate_vertices_with(&hrep, &opts).map_err(|e| e.to_string())?;
            let spec = SimplexSpec::new(vertices.clone()).map_err(|e| e.to_string())?;
            let volume = simplex_volume(&spec).map_err(|e| e.to_string())?;
            let body = json(&VolumeOutput {
                set: region_name(set),
                vertex_count: vertices.len(),
                volume: format_rational(&volume),
            })?;
            emit(&out, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Vertices {
            matrix,
            walsh: walsh_n,
            set,
            max_dim,
            max_rows,
            assume_bounded,
        } => {
            let s = basis_arg(&matrix, &walsh_n)?;
            let hrep = region_hrep(&s, set).map_err(|e| e.to_string())?;
            let opts = VertexEnumOptions {
                max_dim,
                max_rows,
                check_bounded: !assume_bounded,
            };
            let vertices = enumerate_vertices_with(&hrep, &opts).map_err(|e| e.to_string())?;
            let body = json(&VerticesOutput {
                set: region_name(set),
                dim: hrep.dim,
                vertices: format_vertices(&vertices),
            })?;
            emit(&out, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Realize { spectrum } => {
            let values = parse_vector("spectrum", &spectrum)?;
            match realize_auto(&values) {
                Ok(cert) => {
                    emit(&out, &json(&cert)?)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ (Error::ConditionsFail(_) | Error::NotSupported(_))) => {
                    let body = json(&RealizeFailure {
                        realizable: false,
                        reason: e.to_string(),
                    })?;
                    emit(&out, &body)?;
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Cmd::Verify {
            certificate,
            spectrum,
        } => {
            let text = if certificate == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| format!("stdin: {e}"))?;
                buf
            } else {
                std::fs::read_to_string(&certificate)
                    .map_err(|e| format!("--certificate {certificate}: {e}"))?
            };
            let cert: RealizationCertificate =
                serde_json::from_str(&text).map_err(|e| format!("--certificate: {e}"))?;
            let values = parse_vector("spectrum", &spectrum)?;
            let s = Spectrum::new(values).map_err(|e| e.to_string())?;
            let report = verify_certificate(&cert, &s);
            let passed = report.passed;
            emit(&out, &json(&report)?)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Scheme {
            n,
            k,
            l,
            vector,
            format,
            decimal,
        } => {
            match (k, l, vector) {
                (Some(k), Some(l), None) => {
                    let j = scheme_index_product(n, k, l).map_err(|e| e.to_string())?;
                    emit(&out, &json(&serde_json::json!({ "product_index": j }))?)?;
                }
                (Some(k), None, None) => {
                    let p = perm_basis(n, k).map_err(|e| e.to_string())?;
                    emit(&out, &matrix_body(&p.as_matrix(), format, decimal)?)?;
                }
                (None, None, Some(x)) => {
                    let coeffs = parse_vector("vector", &x)?;
                    let m = group_matrix(n, &coeffs).map_err(|e| e.to_string())?;
                    emit(&out, &matrix_body(&m, format, decimal)?)?;
                }
                _ => return Err("pass --k, --k with --l, or --vector".into()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Figure { which, a } => {
            let body = figure_csv(which, &a)?;
            emit(&out, &body)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// CSV with one line per vertex and per inequality row of each plotted
/// region: `region,vertex,<coords>` / `region,ineq,<normal>,<offset>`.
fn figure_csv(which: FigureId, a_text: &str) -> CliResult<String> {
    let mut lines = vec!["region,kind,values".to_string()];
    let region = |name: &str, hrep: &HRep, lines: &mut Vec<String>| -> CliResult<()> {
        let vertices = enumerate_vertices(hrep).map_err(|e| format!("{name}: {e}"))?;
        for v in &vertices {
            lines.push(format!(
                "{name},vertex,{}",
                v.iter().map(format_rational).collect::<Vec<_>>().join(",")
            ));
        }
        for row in &hrep.rows {
            lines.push(format!(
                "{name},ineq,{},{}",
                row.normal
                    .iter()
                    .map(format_rational)
                    .collect::<Vec<_>>()
                    .join(","),
                format_rational(&row.offset)
            ));
        }
        Ok(())
    };
    match which {
        FigureId::Fig1 => {
            let h1 = walsh(1).map_err(|e| e.to_string())?.into_matrix();
            region("W(H1)", &wpolytope_hrep(&h1).map_err(|e| e.to_string())?, &mut lines)?;
            region(
                "P(H1)",
                &spectratope_hrep(&h1).map_err(|e| e.to_string())?,
                &mut lines,
            )?;
            region("P1(H1)", &project_p1(&h1).map_err(|e| e.to_string())?, &mut lines)?;
        }
        FigureId::Fig2 => {
            let a = parse_rational(a_text).map_err(|e| format!("--a {a_text:?}: {e}"))?;
            if a.is_negative() || a > rat_int(1) {
                return Err(format!("--a {a_text:?}: must lie in [0, 1]"));
            }
            let s = direct_sum(&[
                RatMatrix::from_i64(&[&[1, 1], &[1, -1]]),
                RatMatrix::identity(1),
            ])
            .map_err(|e| e.to_string())?;
            // SP swaps the last two columns of S
            let p = PermutationSpec::new(vec![0, 2, 1]).map_err(|e| e.to_string())?;
            let sp = s.mul(&p.as_matrix()).map_err(|e| e.to_string())?;
            let sa = spectratope::realize::n3_basis(&a);
            region("P1(S)", &project_p1(&s).map_err(|e| e.to_string())?, &mut lines)?;
            region("P1(SP)", &project_p1(&sp).map_err(|e| e.to_string())?, &mut lines)?;
            region("P1(Sa)", &project_p1(&sa).map_err(|e| e.to_string())?, &mut lines)?;
        }
        FigureId::Fig3 => {
            let h2 = walsh(2).map_err(|e| e.to_string())?.into_matrix();
            region("P1(H2)", &project_p1(&h2).map_err(|e| e.to_string())?, &mut lines)?;
        }
    }
    Ok(lines.join("\n"))
}
