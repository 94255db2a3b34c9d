//! JSON file formats.
//!
//! Rationals are always strings (`"3"`, `"-1/2"`) so that no value passes
//! through a float. Phase polynomials use the polynomial form with `2n`
//! variables: indices `0..n` are `x`, `n..2n` are `ξ`.

use equivar_core::rat::{format, parse};
use equivar_core::{
    EquivariantGens, Error, InvariantGens, MatGroup, MolienSeries, MultiPoly, PolyVectorField,
    RatMatrix, RelationSet,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    /// Terms are listed highest graded-lex monomial first.
    pub fn from_poly(p: &MultiPoly) -> PolyJson {
        PolyJson {
            nvars: p.nvars(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    c: format(c),
                    e: m.exps().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly, CliError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c =
                parse(&t.c).ok_or_else(|| CliError::parse(format!("bad coefficient {:?}", t.c)))?;
            if t.e.len() != self.nvars {
                return Err(CliError::parse(format!(
                    "term has {} exponents but nvars is {}",
                    t.e.len(),
                    self.nvars
                )));
            }
            terms.push((c, t.e.clone()));
        }
        Ok(MultiPoly::from_terms(self.nvars, terms)?)
    }
}

pub fn polys_to_json(ps: &[MultiPoly]) -> Vec<PolyJson> {
    ps.iter().map(PolyJson::from_poly).collect()
}

pub fn polys_from_json(ps: &[PolyJson]) -> Result<Vec<MultiPoly>, CliError> {
    ps.iter().map(PolyJson::to_poly).collect()
}

pub fn field_to_json(v: &PolyVectorField) -> Vec<PolyJson> {
    polys_to_json(v.comps())
}

pub fn field_from_json(v: &[PolyJson]) -> Result<PolyVectorField, CliError> {
    Ok(PolyVectorField::new(polys_from_json(v)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub n: usize,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl GroupJson {
    pub fn from_group(g: &MatGroup) -> GroupJson {
        GroupJson {
            n: g.dim(),
            generators: g
                .generators()
                .map(|m| {
                    m.to_rows()
                        .iter()
                        .map(|row| row.iter().map(format).collect())
                        .collect()
                })
                .collect(),
            cap: None,
        }
    }

    pub fn generator_matrices(&self) -> Result<Vec<RatMatrix>, CliError> {
        let mut out = Vec::with_capacity(self.generators.len());
        for (k, g) in self.generators.iter().enumerate() {
            let mut rows = Vec::with_capacity(g.len());
            for row in g {
                let parsed = row
                    .iter()
                    .map(|s| {
                        parse(s).ok_or_else(|| {
                            CliError::parse(format!("bad entry {s:?} in generator {k}"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(parsed);
            }
            out.push(
                RatMatrix::from_rows(rows)
                    .map_err(|e| CliError::parse(format!("generator {k}: {e}")))?,
            );
        }
        Ok(out)
    }

    /// Closes the group; `cap_override` wins over the file's `cap`.
    pub fn to_group(&self, cap_override: Option<usize>) -> Result<MatGroup, CliError> {
        let cap = cap_override
            .or(self.cap)
            .unwrap_or(equivar_core::DEFAULT_CAP);
        Ok(MatGroup::close(self.n, &self.generator_matrices()?, cap)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MolienJson {
    /// Coefficients, constant term first.
    pub numer: Vec<String>,
    pub denom: Vec<String>,
}

impl MolienJson {
    pub fn from_series(m: &MolienSeries) -> MolienJson {
        MolienJson {
            numer: m.numer().coeffs().iter().map(format).collect(),
            denom: m.denom().coeffs().iter().map(format).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub degree: u32,
    pub molien: usize,
    pub products: usize,
    pub new_generators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub generators: Vec<PolyJson>,
    pub degrees: Vec<u32>,
    pub molien: MolienJson,
    pub table: Vec<LevelJson>,
}

impl InvariantsJson {
    pub fn new(inv: &InvariantGens, molien: &MolienSeries) -> InvariantsJson {
        InvariantsJson {
            generators: polys_to_json(inv.gens()),
            degrees: inv.degrees().to_vec(),
            molien: MolienJson::from_series(molien),
            table: inv
                .levels()
                .iter()
                .map(|l| LevelJson {
                    degree: l.degree,
                    molien: l.molien,
                    products: l.products,
                    new_generators: l.new_generators,
                })
                .collect(),
        }
    }

    /// Rebuilds the generator set, re-checking invariance under `group`.
    pub fn to_gens(&self, group: &MatGroup) -> Result<InvariantGens, CliError> {
        Ok(InvariantGens::from_parts(
            group.clone(),
            polys_from_json(&self.generators)?,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantsJson {
    pub generators: Vec<Vec<PolyJson>>,
    pub degrees: Vec<u32>,
    pub molien: MolienJson,
    pub table: Vec<LevelJson>,
}

impl EquivariantsJson {
    pub fn new(eg: &EquivariantGens, molien: &MolienSeries) -> EquivariantsJson {
        EquivariantsJson {
            generators: eg.vgens().iter().map(field_to_json).collect(),
            degrees: eg.degrees().to_vec(),
            molien: MolienJson::from_series(molien),
            table: eg
                .levels()
                .iter()
                .map(|l| LevelJson {
                    degree: l.degree,
                    molien: l.molien,
                    products: l.products,
                    new_generators: l.new_generators,
                })
                .collect(),
        }
    }

    pub fn to_gens(&self, inv: &InvariantGens) -> Result<EquivariantGens, CliError> {
        let fields = self
            .generators
            .iter()
            .map(|v| field_from_json(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EquivariantGens::from_parts(inv.clone(), fields)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsJson {
    pub weights: Vec<u32>,
    pub relations: Vec<PolyJson>,
    pub degrees: Vec<u32>,
}

impl RelationsJson {
    pub fn new(r: &RelationSet) -> RelationsJson {
        RelationsJson {
            weights: r.weights().to_vec(),
            relations: polys_to_json(r.rels()),
            degrees: r.degrees().to_vec(),
        }
    }
}

/// A reduced system: `k` polynomials in the orbit-space coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedJson {
    pub k: usize,
    pub comps: Vec<PolyJson>,
}

/// `check-related` accepts either a reduced-system object or a bare array.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ReducedInput {
    System(ReducedJson),
    Raw(Vec<PolyJson>),
}

impl ReducedInput {
    pub fn comps(&self) -> Result<Vec<MultiPoly>, CliError> {
        match self {
            ReducedInput::System(r) => {
                if r.comps.len() != r.k {
                    return Err(Error::DimensionMismatch {
                        expected: r.k,
                        found: r.comps.len(),
                    }
                    .into());
                }
                polys_from_json(&r.comps)
            }
            ReducedInput::Raw(ps) => polys_from_json(ps),
        }
    }
}

/// Machine-readable form of a domain error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorJson {
    pub error: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<Vec<PolyJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
}

impl ErrorJson {
    pub fn from_error(e: &Error) -> ErrorJson {
        let mut out = ErrorJson {
            error: e.kind(),
            message: e.to_string(),
            element: None,
            difference: None,
            degree: None,
            cap: None,
            time: None,
        };
        match e {
            Error::NotInvariant {
                element,
                difference,
            } => {
                out.element = Some(*element);
                out.difference = Some(polys_to_json(difference));
            }
            Error::NoSolution { degree } | Error::DimensionMismatchWithMolien { degree, .. } => {
                out.degree = Some(*degree)
            }
            Error::ClosureExceedsCap { cap } => out.cap = Some(*cap),
            Error::NonFiniteState { time } => out.time = Some(*time),
            _ => {}
        }
        out
    }
}
