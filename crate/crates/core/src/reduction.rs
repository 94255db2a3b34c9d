//! Reduction of invariant vector fields to the orbit space.
//!
//! The Hilbert map `σ = (p₁, …, p_k)` sends `ℝⁿ` onto the orbit space inside
//! `ℝᵏ`. An invariant field `X` induces `Y` there with
//! `Y_i(p(x)) = Σ_j X_j(x)·∂p_i/∂x_j(x)`.

use alloc::vec::Vec;

use num_traits::One;

use crate::actions::{require_invariant, PolyVectorField, VectorFieldAction};
use crate::error::{Error, Result};
use crate::invariants::InvariantGens;
use crate::poly::MultiPoly;
use crate::rat::{to_f64, Rat};
use crate::rk4;

/// `Σ_j X_j·∂p/∂x_j`.
pub fn lie_derivative(x: &PolyVectorField, p: &MultiPoly) -> Result<MultiPoly> {
    if p.nvars() != x.dim() {
        return Err(Error::VariableCountMismatch {
            expected: x.dim(),
            found: p.nvars(),
        });
    }
    let mut out = MultiPoly::zero(x.dim());
    for (j, xj) in x.comps().iter().enumerate() {
        out.add_scaled(&xj.try_mul(&p.partial(j)?)?, &Rat::one());
    }
    Ok(out)
}

/// A vector field on the orbit space, as `k` polynomials in `P₁, …, P_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSystem {
    comps: Vec<MultiPoly>,
    source: Option<(PolyVectorField, InvariantGens)>,
}

impl ReducedSystem {
    /// A system given directly, without an upstairs field.
    pub fn from_comps(k: usize, comps: Vec<MultiPoly>) -> Result<ReducedSystem> {
        if comps.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: comps.len(),
            });
        }
        for c in &comps {
            if c.nvars() != k {
                return Err(Error::VariableCountMismatch {
                    expected: k,
                    found: c.nvars(),
                });
            }
        }
        Ok(ReducedSystem {
            comps,
            source: None,
        })
    }

    pub fn k(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<MultiPoly> {
        self.comps
    }

    pub fn source(&self) -> Option<(&PolyVectorField, &InvariantGens)> {
        self.source.as_ref().map(|(x, inv)| (x, inv))
    }
}

/// Pushes an invariant field down through the Hilbert map.
pub fn reduce(x: &PolyVectorField, inv: &InvariantGens) -> Result<ReducedSystem> {
    let n = inv.group().dim();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.dim(),
        });
    }
    require_invariant::<VectorFieldAction>(inv.group(), x)?;
    let mut comps = Vec::with_capacity(inv.len());
    for p in inv.gens() {
        let lie = lie_derivative(x, p)?;
        let y = inv.express(&lie)?;
        if inv.substitute(&y)? != lie {
            return Err(Error::Internal(
                "reduced component does not reproduce the derivative",
            ));
        }
        comps.push(y);
    }
    Ok(ReducedSystem {
        comps,
        source: Some((x.clone(), inv.clone())),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relatedness {
    Related,
    /// `Σ_j X_j·∂p_i/∂x_j - Y_i(p)` is nonzero for component `index`.
    NotRelated {
        index: usize,
        difference: MultiPoly,
    },
}

impl Relatedness {
    pub fn holds(&self) -> bool {
        matches!(self, Relatedness::Related)
    }
}

fn check_shapes(x: &PolyVectorField, y: &[MultiPoly], inv: &InvariantGens) -> Result<()> {
    let n = inv.group().dim();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.dim(),
        });
    }
    let k = inv.len();
    if y.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: y.len(),
        });
    }
    for c in y {
        if c.nvars() != k {
            return Err(Error::VariableCountMismatch {
                expected: k,
                found: c.nvars(),
            });
        }
    }
    Ok(())
}

/// Exact check that `X` upstairs and `Y` on the orbit space are related by
/// the Hilbert map.
pub fn check_related(
    x: &PolyVectorField,
    y: &[MultiPoly],
    inv: &InvariantGens,
) -> Result<Relatedness> {
    check_shapes(x, y, inv)?;
    for (i, (p, yi)) in inv.gens().iter().zip(y).enumerate() {
        let diff = lie_derivative(x, p)?.try_sub(&inv.substitute(yi)?)?;
        if !diff.is_zero() {
            return Ok(Relatedness::NotRelated {
                index: i,
                difference: diff,
            });
        }
    }
    Ok(Relatedness::Related)
}

/// Sampled trajectories of `ẋ = X(x)` and `ṗ = Y(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryReport {
    pub t_grid: Vec<f64>,
    pub x_path: Vec<Vec<f64>>,
    pub p_path: Vec<Vec<f64>>,
    /// Largest `‖σ(x(t)) - p(t)‖∞` over the grid.
    pub max_defect: f64,
}

/// Integrates `X` from `x0` and `Y` from `σ(x0)` with classical RK4.
///
/// The number of steps is `t_end / step` rounded to the nearest integer
/// (at least one); the actual step divides `t_end` evenly.
pub fn integrate_pair(
    x: &PolyVectorField,
    y: &[MultiPoly],
    inv: &InvariantGens,
    x0: &[Rat],
    t_end: f64,
    step: f64,
) -> Result<TrajectoryReport> {
    check_shapes(x, y, inv)?;
    if !(step > 0.0 && t_end > 0.0 && step.is_finite() && t_end.is_finite()) {
        return Err(Error::InvalidIntegration);
    }
    let n = x.dim();
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x0.len(),
        });
    }
    let ratio = t_end / step + 0.5;
    if ratio >= usize::MAX as f64 {
        return Err(Error::InvalidIntegration);
    }
    let steps = (ratio as usize).max(1);
    let h = t_end / steps as f64;

    let p0: Vec<f64> = inv.hilbert_map_eval(x0)?.iter().map(to_f64).collect();
    let x0: Vec<f64> = x0.iter().map(to_f64).collect();
    let xf = rk4::compile(x.comps());
    let yf = rk4::compile(y);
    let sigma = rk4::compile(inv.gens());

    let x_path = rk4::integrate(&xf, &x0, h, steps);
    let p_path = rk4::integrate(&yf, &p0, h, steps);
    let (x_path, p_path) = match (x_path, p_path) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), Ok(_)) | (Ok(_), Err(s)) => {
            return Err(Error::NonFiniteState { time: s as f64 * h })
        }
        (Err(a), Err(b)) => {
            return Err(Error::NonFiniteState {
                time: a.min(b) as f64 * h,
            })
        }
    };

    let mut max_defect = 0.0f64;
    for (xs, ps) in x_path.iter().zip(&p_path) {
        for (s, p) in rk4::eval_all(&sigma, xs).iter().zip(ps) {
            let d = s - p;
            let d = if d < 0.0 { -d } else { d };
            if d > max_defect {
                max_defect = d;
            }
        }
    }
    let t_grid = (0..=steps).map(|s| s as f64 * h).collect();
    Ok(TrajectoryReport {
        t_grid,
        x_path,
        p_path,
        max_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::MatGroup;
    use crate::invariants::invariant_ring_generators;
    use crate::matrix::RatMatrix;
    use crate::rat::{from_frac, from_i64};
    use alloc::vec;

    fn z2() -> InvariantGens {
        let g = MatGroup::from_generators(1, &[RatMatrix::from_i64(1, 1, &[-1])]).unwrap();
        invariant_ring_generators(&g, None).unwrap()
    }

    fn diag() -> InvariantGens {
        let g =
            MatGroup::from_generators(2, &[RatMatrix::from_i64(2, 2, &[-1, 0, 0, -1])]).unwrap();
        invariant_ring_generators(&g, None).unwrap()
    }

    fn cubic() -> PolyVectorField {
        let x = MultiPoly::var(1, 0);
        PolyVectorField::new(vec![&x - &x.pow(3)]).unwrap()
    }

    #[test]
    fn line_reduction() {
        let inv = z2();
        let y = reduce(&cubic(), &inv).unwrap();
        let p = MultiPoly::var(1, 0);
        let expected = &p.scale(&from_i64(2)) - &p.pow(2).scale(&from_i64(2));
        assert_eq!(y.comps(), &[expected]);
        assert!(check_related(&cubic(), y.comps(), &inv).unwrap().holds());
    }

    #[test]
    fn radial_reduction() {
        let inv = diag();
        let x = MultiPoly::var(2, 0);
        let yv = MultiPoly::var(2, 1);
        let r = &(&MultiPoly::one(2) - &x.pow(2)) - &yv.pow(2);
        let field = PolyVectorField::new(vec![&x * &r, &yv * &r]).unwrap();
        let y = reduce(&field, &inv).unwrap();
        let p = |i| MultiPoly::var(3, i);
        let s = &(&MultiPoly::one(3) - &p(0)) - &p(2);
        let two = from_i64(2);
        let by_hand: Vec<MultiPoly> = (0..3).map(|i| (&p(i) * &s).scale(&two)).collect();
        // x²y² is written P₂², not P₁P₃; both agree on the orbit space.
        let rel = &(&p(0) * &p(2)) - &p(1).pow(2);
        let expected = [
            &by_hand[0] + &rel.scale(&two),
            by_hand[1].clone(),
            &by_hand[2] + &rel.scale(&two),
        ];
        assert_eq!(y.comps(), &expected[..]);
        for (a, b) in y.comps().iter().zip(&by_hand) {
            assert_eq!(inv.substitute(a).unwrap(), inv.substitute(b).unwrap());
        }
        assert!(check_related(&field, &by_hand, &inv).unwrap().holds());
    }

    #[test]
    fn wrong_reduction_is_caught() {
        let inv = z2();
        let field = PolyVectorField::new(vec![MultiPoly::var(1, 0)]).unwrap();
        let r = check_related(&field, &[MultiPoly::var(1, 0)], &inv).unwrap();
        assert_eq!(
            r,
            Relatedness::NotRelated {
                index: 0,
                difference: MultiPoly::var(1, 0).pow(2)
            }
        );
        let zero = PolyVectorField::zero(1);
        assert!(check_related(&zero, &[MultiPoly::zero(1)], &inv)
            .unwrap()
            .holds());
        assert!(reduce(&zero, &inv).unwrap().comps()[0].is_zero());
    }

    #[test]
    fn non_invariant_field_is_rejected() {
        let field = PolyVectorField::new(vec![MultiPoly::one(1)]).unwrap();
        assert!(matches!(
            reduce(&field, &z2()),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn numeric_witness() {
        let inv = z2();
        let y = reduce(&cubic(), &inv).unwrap();
        let rep = integrate_pair(&cubic(), y.comps(), &inv, &[from_frac(1, 2)], 1.0, 1e-3).unwrap();
        assert_eq!(rep.t_grid.len(), 1001);
        assert!(rep.max_defect <= 1e-6);

        let zero = PolyVectorField::zero(1);
        let rep =
            integrate_pair(&zero, &[MultiPoly::zero(1)], &inv, &[from_i64(3)], 1.0, 0.1).unwrap();
        assert_eq!(rep.max_defect, 0.0);

        assert_eq!(
            integrate_pair(&cubic(), y.comps(), &inv, &[from_i64(1)], 1.0, 0.0),
            Err(Error::InvalidIntegration)
        );
    }

    #[test]
    fn divergence_is_reported() {
        let inv = z2();
        let x = MultiPoly::var(1, 0);
        let field = PolyVectorField::new(vec![x.pow(5)]).unwrap();
        let y = reduce(&field, &inv).unwrap();
        let r = integrate_pair(&field, y.comps(), &inv, &[from_i64(10)], 10.0, 0.1);
        assert!(matches!(r, Err(Error::NonFiniteState { .. })));
    }
}
