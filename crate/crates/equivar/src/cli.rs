//! Command-line interface.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use equivar_core::rat::{format, parse};
use equivar_core::{
    check_related, equivariant_module_generators, integrate_pair, invariant_ring_generators,
    is_invariant, molien, molien_equivariant, reduce, EquivariantGens, Invariance, InvariantGens,
    MatGroup, MultiPoly, PhaseAction, PhasePoly, PolyAction, Rat, Relatedness, VectorFieldAction,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::formats::*;
use crate::CliError;

/// Environment variable that overrides the group-closure cap.
pub const CAP_ENV: &str = "EQUIVAR_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "equivar",
    version,
    about = "Invariants, equivariants and orbit-space reduction for finite matrix groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Print a human-readable report instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// Group JSON file.
    #[arg(long)]
    pub group: PathBuf,
}

#[derive(Debug, Args)]
pub struct InvArg {
    /// Invariant generators from an earlier `invariants` run; computed when absent.
    #[arg(long)]
    pub invariants: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators of the invariant ring.
    Invariants {
        #[command(flatten)]
        group: GroupArg,
        /// Highest degree searched (default |G|).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bound: Option<u32>,
    },
    /// Generators of the equivariant vector fields over the invariant ring.
    Equivariants {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        inv: InvArg,
        /// Highest degree searched (default |G| - 1).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bound: Option<u32>,
    },
    /// Molien series and its first coefficients.
    Molien {
        #[command(flatten)]
        group: GroupArg,
        /// Report dimensions for degrees 0..=DEGREES.
        #[arg(long, default_value_t = 8)]
        degrees: u32,
        /// Use the series for equivariant fields.
        #[arg(long)]
        equivariant: bool,
    },
    /// Write an invariant polynomial (or equivariant field) in the generators.
    Express {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        inv: InvArg,
        #[arg(long, required_unless_present = "field", conflicts_with = "field")]
        poly: Option<PathBuf>,
        #[arg(long)]
        field: Option<PathBuf>,
        /// Module generators from an earlier `equivariants` run; used with --field.
        #[arg(long, requires = "field")]
        equivariants: Option<PathBuf>,
    },
    /// Relations among the invariant generators.
    Relations {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        inv: InvArg,
        /// Highest weighted degree (default twice the largest generator degree).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bound: Option<u32>,
    },
    /// Push an invariant vector field down to the orbit space.
    Reduce {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        inv: InvArg,
        #[arg(long)]
        field: PathBuf,
    },
    /// Check invariance of a polynomial, vector field or phase polynomial.
    CheckInvariance {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, group = "object", required = true)]
        poly: Option<PathBuf>,
        #[arg(long, group = "object")]
        field: Option<PathBuf>,
        #[arg(long, group = "object")]
        phase: Option<PathBuf>,
    },
    /// Check that a reduced system is related to a field through the Hilbert map.
    CheckRelated {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        inv: InvArg,
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        reduced: PathBuf,
    },
    /// Integrate a field and its reduction with RK4 and compare.
    IntegrateCheck {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        inv: InvArg,
        #[arg(long)]
        field: PathBuf,
        /// Reduced system; computed from the field when absent.
        #[arg(long)]
        reduced: Option<PathBuf>,
        /// Initial point, comma separated rationals such as "1/2,-1".
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

/// What a successful run produced. `ok` is false when a check command
/// completed but the check itself failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn cap_override() -> Result<Option<usize>, CliError> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::parse(format!("{CAP_ENV} must be a positive integer, got {v:?}"))
        }),
        Err(_) => Ok(None),
    }
}

fn load_group(arg: &GroupArg) -> Result<MatGroup, CliError> {
    read_json::<GroupJson>(&arg.group)?.to_group(cap_override()?)
}

fn load_invariants(group: &MatGroup, arg: &InvArg) -> Result<InvariantGens, CliError> {
    match &arg.invariants {
        Some(path) => read_json::<InvariantsJson>(path)?.to_gens(group),
        None => Ok(invariant_ring_generators(group, None)?),
    }
}

fn load_poly(path: &Path) -> Result<MultiPoly, CliError> {
    read_json::<PolyJson>(path)?.to_poly()
}

fn load_field(path: &Path) -> Result<equivar_core::PolyVectorField, CliError> {
    field_from_json(&read_json::<Vec<PolyJson>>(path)?)
}

fn parse_point(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|t| {
            parse(t.trim()).ok_or_else(|| CliError::parse(format!("bad coordinate {t:?} in --x0")))
        })
        .collect()
}

fn to_pretty<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Orbit-space polynomials print with `P1..Pk` instead of `x1..xk`.
fn in_p(p: &MultiPoly) -> String {
    p.to_string().replace('x', "P")
}

fn dims_text(out: &mut String, label: &str, dims: &[usize]) {
    out.push_str(label);
    for (d, c) in dims.iter().enumerate() {
        out.push_str(&std::format!("  {d}: {c}\n"));
    }
}

fn levels_text(out: &mut String, levels: &[LevelJson]) {
    out.push_str("degree  molien  products  new\n");
    for l in levels {
        out.push_str(&std::format!(
            "{:>6}  {:>6}  {:>8}  {:>3}\n",
            l.degree,
            l.molien,
            l.products,
            l.new_generators
        ));
    }
}

fn outcome<T: Serialize>(
    cli: &Cli,
    value: &T,
    text: impl FnOnce() -> String,
    ok: bool,
) -> Result<Outcome, CliError> {
    let body = if cli.text { text() } else { to_pretty(value)? };
    Ok(Outcome { body, ok })
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Invariants { group, bound } => {
            let g = load_group(group)?;
            let inv = invariant_ring_generators(&g, *bound)?;
            let out = InvariantsJson::new(&inv, &molien(&g)?);
            outcome(
                cli,
                &out,
                || {
                    let mut s = std::format!("group order {}\n", g.order());
                    for (p, d) in inv.gens().iter().zip(inv.degrees()) {
                        s.push_str(&std::format!("p (degree {d}) = {p}\n"));
                    }
                    levels_text(&mut s, &out.table);
                    s
                },
                true,
            )
        }
        Command::Equivariants { group, inv, bound } => {
            let g = load_group(group)?;
            let inv = load_invariants(&g, inv)?;
            let eg = equivariant_module_generators(&g, &inv, *bound)?;
            let out = EquivariantsJson::new(&eg, &molien_equivariant(&g)?);
            outcome(
                cli,
                &out,
                || {
                    let mut s = std::format!("group order {}\n", g.order());
                    for (v, d) in eg.vgens().iter().zip(eg.degrees()) {
                        let comps: Vec<String> = v.comps().iter().map(|c| c.to_string()).collect();
                        s.push_str(&std::format!("V (degree {d}) = ({})\n", comps.join(", ")));
                    }
                    levels_text(&mut s, &out.table);
                    s
                },
                true,
            )
        }
        Command::Molien {
            group,
            degrees,
            equivariant,
        } => {
            let g = load_group(group)?;
            let m = if *equivariant {
                molien_equivariant(&g)?
            } else {
                molien(&g)?
            };
            let dims = m.dimensions(*degrees as usize + 1);
            let series = MolienJson::from_series(&m);
            let out = json!({
                "numer": series.numer,
                "denom": series.denom,
                "dimensions": dims,
            });
            outcome(
                cli,
                &out,
                || {
                    let mut s = std::format!(
                        "numerator   {}\ndenominator {}\n",
                        series.numer.join(" "),
                        series.denom.join(" ")
                    );
                    dims_text(&mut s, "dimensions\n", &dims);
                    s
                },
                true,
            )
        }
        Command::Express {
            group,
            inv,
            poly,
            field,
            equivariants,
        } => {
            let g = load_group(group)?;
            let inv = load_invariants(&g, inv)?;
            if let Some(path) = poly {
                let f = inv.express(&load_poly(path)?)?;
                let out = json!({ "expression": PolyJson::from_poly(&f) });
                return outcome(cli, &out, || std::format!("{}\n", in_p(&f)), true);
            }
            let path = field
                .as_ref()
                .ok_or_else(|| CliError::parse("express needs --poly or --field"))?;
            let eg: EquivariantGens = match equivariants {
                Some(p) => read_json::<EquivariantsJson>(p)?.to_gens(&inv)?,
                None => equivariant_module_generators(&g, &inv, None)?,
            };
            let coeffs = eg.express_equivariant(&load_field(path)?)?;
            let out = json!({ "coefficients": polys_to_json(&coeffs) });
            outcome(
                cli,
                &out,
                || {
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(a, f)| std::format!("F{} = {}\n", a + 1, in_p(f)))
                        .collect()
                },
                true,
            )
        }
        Command::Relations { group, inv, bound } => {
            let g = load_group(group)?;
            let inv = load_invariants(&g, inv)?;
            let d_max =
                bound.unwrap_or_else(|| 2 * inv.degrees().iter().copied().max().unwrap_or(1));
            let rels = inv.relations(d_max);
            let out = RelationsJson::new(&rels);
            outcome(
                cli,
                &out,
                || {
                    rels.rels()
                        .iter()
                        .zip(rels.degrees())
                        .map(|(r, d)| std::format!("(degree {d}) {} = 0\n", in_p(r)))
                        .collect()
                },
                true,
            )
        }
        Command::Reduce { group, inv, field } => {
            let g = load_group(group)?;
            let inv = load_invariants(&g, inv)?;
            let y = reduce(&load_field(field)?, &inv)?;
            let out = ReducedJson {
                k: y.k(),
                comps: polys_to_json(y.comps()),
            };
            outcome(
                cli,
                &out,
                || {
                    y.comps()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| std::format!("dP{}/dt = {}\n", i + 1, in_p(c)))
                        .collect()
                },
                true,
            )
        }
        Command::CheckInvariance {
            group,
            poly,
            field,
            phase,
        } => {
            let g = load_group(group)?;
            let verdict = if let Some(p) = poly {
                match is_invariant::<PolyAction>(&g, &load_poly(p)?)? {
                    Invariance::Invariant => None,
                    Invariance::Violated {
                        element,
                        difference,
                    } => Some((element, vec![difference])),
                }
            } else if let Some(p) = field {
                match is_invariant::<VectorFieldAction>(&g, &load_field(p)?)? {
                    Invariance::Invariant => None,
                    Invariance::Violated {
                        element,
                        difference,
                    } => Some((element, difference.into_comps())),
                }
            } else if let Some(p) = phase {
                let q = PhasePoly::new(g.dim(), load_poly(p)?)?;
                match is_invariant::<PhaseAction>(&g, &q)? {
                    Invariance::Invariant => None,
                    Invariance::Violated {
                        element,
                        difference,
                    } => Some((element, vec![difference.into_poly()])),
                }
            } else {
                return Err(CliError::parse(
                    "check-invariance needs --poly, --field or --phase",
                ));
            };
            match verdict {
                None => outcome(
                    cli,
                    &json!({ "invariant": true }),
                    || "invariant\n".into(),
                    true,
                ),
                Some((element, diff)) => {
                    let out = json!({
                        "invariant": false,
                        "element": element,
                        "difference": polys_to_json(&diff),
                    });
                    outcome(
                        cli,
                        &out,
                        || std::format!("not invariant under element {element}\n"),
                        false,
                    )
                }
            }
        }
        Command::CheckRelated {
            group,
            inv,
            field,
            reduced,
        } => {
            let g = load_group(group)?;
            let inv = load_invariants(&g, inv)?;
            let y = read_json::<ReducedInput>(reduced)?.comps()?;
            match check_related(&load_field(field)?, &y, &inv)? {
                Relatedness::Related => outcome(
                    cli,
                    &json!({ "related": true }),
                    || "related\n".into(),
                    true,
                ),
                Relatedness::NotRelated { index, difference } => {
                    let out = json!({
                        "related": false,
                        "index": index,
                        "difference": PolyJson::from_poly(&difference),
                    });
                    outcome(
                        cli,
                        &out,
                        || std::format!("not related in component {}: {difference}\n", index + 1),
                        false,
                    )
                }
            }
        }
        Command::IntegrateCheck {
            group,
            inv,
            field,
            reduced,
            x0,
            t_end,
            step,
            tol,
        } => {
            let g = load_group(group)?;
            let inv = load_invariants(&g, inv)?;
            let x = load_field(field)?;
            let y = match reduced {
                Some(p) => read_json::<ReducedInput>(p)?.comps()?,
                None => reduce(&x, &inv)?.into_comps(),
            };
            let point = parse_point(x0)?;
            let rep = integrate_pair(&x, &y, &inv, &point, *t_end, *step)?;
            let pass = rep.max_defect <= *tol;
            let out = json!({
                "x0": point.iter().map(format).collect::<Vec<_>>(),
                "t_end": t_end,
                "steps": rep.t_grid.len() - 1,
                "max_defect": rep.max_defect,
                "tol": tol,
                "pass": pass,
            });
            outcome(
                cli,
                &out,
                || {
                    std::format!(
                        "max_defect {:e} over {} steps: {}\n",
                        rep.max_defect,
                        rep.t_grid.len() - 1,
                        if pass { "PASS" } else { "FAIL" }
                    )
                },
                pass,
            )
        }
    }
}

/// Runs and writes the body to `--out` or stdout; returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(o) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &o.body).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                }),
                None => {
                    print!("{}", o.body);
                    Ok(())
                }
            };
            match written {
                Ok(()) if o.ok => 0,
                Ok(()) => 1,
                Err(e) => {
                    eprint!("{}", e.to_json());
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprint!("{}", e.to_json());
            e.exit_code()
        }
    }
}
