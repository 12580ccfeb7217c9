use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use scattering::analysis::{euler_series, gw_coefficients, Framing};
use scattering::permissible::classify_all;
use scattering::series::parse_rational;
use scattering::{Direction, Rational, ScatteringDiagram};
use scattering_cli::document::DiagramDocument;
use scattering_cli::{render, verify};

#[derive(Parser)]
#[command(
    name = "scattering",
    version,
    about = "Scattering diagrams of commutators in the tropical vertex group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a commutator into walls and print the diagram.
    Scatter {
        /// Multiplicity of (1+tx) in the first generator.
        #[arg(long, requires = "l2", conflicts_with_all = ["p1", "p2"])]
        l1: Option<u32>,
        /// Multiplicity of (1+ty) in the second generator.
        #[arg(long, requires = "l1")]
        l2: Option<u32>,
        /// Coefficients of p1(tx), constant term first, e.g. 1,2,1 or 1,1/2.
        #[arg(long, requires = "p2", value_delimiter = ',')]
        p1: Option<Vec<String>>,
        /// Coefficients of p2(ty), constant term first.
        #[arg(long, requires = "p1", value_delimiter = ',')]
        p2: Option<Vec<String>>,
        /// Truncation order: total degree in x and y.
        #[arg(long, default_value_t = 10)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Logarithmic coefficients c^k of one wall function.
    Gw {
        #[arg(long)]
        l1: u32,
        #[arg(long)]
        l2: u32,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// Framed Kronecker-quiver Euler characteristics of one wall.
    Quiver {
        /// Number of arrows; the diagram uses l1 = l2 = m.
        #[arg(long)]
        m: u32,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// Classify primitive directions with a + b <= max-degree.
    Permissible {
        #[arg(long)]
        l1: u32,
        #[arg(long)]
        l2: u32,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        /// Also report whether the computed wall is nontrivial at this order.
        #[arg(long)]
        order: Option<u32>,
        /// Include non-permissible directions.
        #[arg(long)]
        all: bool,
    },
    /// Run the built-in acceptance checks.
    Verify {
        /// Run only checks whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

/// Argument errors exit with 2, verification failures with 1.
enum Failure {
    Usage(String),
    Verification,
}

impl From<scattering::Error> for Failure {
    fn from(e: scattering::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}

fn parse_list(v: &[String]) -> Result<Vec<Rational>, Failure> {
    Ok(v.iter()
        .map(|s| parse_rational(s))
        .collect::<scattering::Result<_>>()?)
}

fn require_order(order: u32) -> Result<(), Failure> {
    if order < 2 {
        return Err(Failure::Usage(format!(
            "order must be at least 2 (no wall appears below degree 2), got {order}"
        )));
    }
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Scatter {
            l1,
            l2,
            p1,
            p2,
            order,
            format,
            out,
        } => {
            require_order(order)?;
            let d = match (l1, l2, p1, p2) {
                (Some(l1), Some(l2), None, None) => ScatteringDiagram::kronecker(l1, l2, order)?,
                (None, None, Some(p1), Some(p2)) => {
                    ScatteringDiagram::polynomial(&parse_list(&p1)?, &parse_list(&p2)?, order)?
                }
                _ => return Err(Failure::Usage("give either --l1/--l2 or --p1/--p2".into())),
            };
            let text = match format {
                Format::Json => DiagramDocument::from_diagram(&d).to_json(),
                Format::Text => render::text(&d),
                Format::Svg => render::svg(&d),
            };
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Gw {
            l1,
            l2,
            a,
            b,
            order,
        } => {
            Direction::interior(a, b)?;
            require_order(order)?;
            let d = ScatteringDiagram::kronecker(l1, l2, order)?;
            let c = gw_coefficients(&d.wall_function(a, b)?, a, b)?;
            println!("# log f_({a},{b}) = sum_k k c^k z^k for (l1,l2)=({l1},{l2}), order {order}");
            println!("{:>3}  c^k", "k");
            for (k, v) in c.iter() {
                println!("{k:>3}  {v}");
            }
        }
        Command::Quiver { m, a, b, order } => {
            Direction::interior(a, b)?;
            require_order(order)?;
            let d = ScatteringDiagram::kronecker(m, m, order)?;
            let back = euler_series(&d, a, b, Framing::Back)?;
            let front = euler_series(&d, a, b, Framing::Front)?;
            println!("# framed moduli of the {m}-Kronecker quiver, dimension (k*{a}, k*{b}), order {order}");
            let cells: Vec<(u32, String, String, bool)> = (1..=back.max_k())
                .map(|k| {
                    let (x, y) = (back.chi(k).unwrap(), front.chi(k).unwrap());
                    let integral = back.is_integral(k).unwrap() && front.is_integral(k).unwrap();
                    (k, x.to_string(), y.to_string(), integral)
                })
                .collect();
            let w = cells
                .iter()
                .flat_map(|c| [c.1.len(), c.2.len()])
                .max()
                .unwrap_or(0)
                .max(5);
            println!("{:>3}  {:>w$}  {:>w$}  integral", "k", "chi_B", "chi_F");
            for (k, x, y, integral) in cells {
                println!(
                    "{k:>3}  {x:>w$}  {y:>w$}  {}",
                    if integral { "yes" } else { "no" }
                );
            }
        }
        Command::Permissible {
            l1,
            l2,
            max_degree,
            order,
            all,
        } => {
            let diagram = order
                .map(|n| {
                    require_order(n)?;
                    Ok::<_, Failure>(ScatteringDiagram::kronecker(l1, l2, n)?)
                })
                .transpose()?;
            let rows = classify_all(l1, l2, max_degree)?;
            println!("# primitive (a,b) with a+b <= {max_degree} for (l1,l2)=({l1},{l2})");
            for (dir, c) in rows {
                if !all && !c.is_permissible() {
                    continue;
                }
                let mut line = format!("{:<9} {}", dir.to_string(), c);
                if let Some(d) = &diagram {
                    let f = d.wall_function(dir.a(), dir.b())?;
                    let status = if !f.is_one() {
                        "nontrivial".to_string()
                    } else if f.order() == 0 {
                        "out of reach".to_string()
                    } else {
                        format!("trivial to z^{}", f.order())
                    };
                    line = format!("{line:<25} {status}");
                }
                println!("{}", line.trim_end());
            }
        }
        Command::Verify {
            filter,
            inject_fault,
        } => {
            let reports = verify::run(filter.as_deref(), inject_fault.as_deref());
            if reports.is_empty() {
                return Err(Failure::Usage("no check matches the filter".into()));
            }
            for r in &reports {
                println!("{}", r.line());
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            println!("{} passed, {failed} failed", reports.len() - failed);
            if failed > 0 {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}
