//! Fixed-step classical Runge–Kutta in double precision.
//!
//! Polynomials are converted from exact rationals once, at the boundary.

use alloc::vec;
use alloc::vec::Vec;

use crate::poly::MultiPoly;
use crate::rat::to_f64;

/// A polynomial with `f64` coefficients, evaluated term by term.
#[derive(Debug, Clone)]
pub struct F64Poly {
    terms: Vec<(f64, Vec<u32>)>,
}

impl F64Poly {
    pub fn from_exact(p: &MultiPoly) -> Self {
        F64Poly {
            terms: p
                .terms()
                .map(|(m, c)| (to_f64(c), m.exps().to_vec()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (xi, &e) in x.iter().zip(exps) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }
}

pub fn compile(ps: &[MultiPoly]) -> Vec<F64Poly> {
    ps.iter().map(F64Poly::from_exact).collect()
}

pub fn eval_all(ps: &[F64Poly], x: &[f64]) -> Vec<f64> {
    ps.iter().map(|p| p.eval(x)).collect()
}

fn axpy(x: &[f64], h: f64, k: &[f64]) -> Vec<f64> {
    x.iter().zip(k).map(|(a, b)| a + h * b).collect()
}

/// One RK4 step of `ẏ = f(y)` with step `h`.
pub fn step(f: &[F64Poly], y: &[f64], h: f64) -> Vec<f64> {
    let k1 = eval_all(f, y);
    let k2 = eval_all(f, &axpy(y, h / 2.0, &k1));
    let k3 = eval_all(f, &axpy(y, h / 2.0, &k2));
    let k4 = eval_all(f, &axpy(y, h, &k3));
    let mut out = vec![0.0; y.len()];
    for i in 0..y.len() {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// `steps` RK4 steps from `y0`; returns all `steps + 1` states, or the index
/// of the first non-finite state.
pub fn integrate(f: &[F64Poly], y0: &[f64], h: f64, steps: usize) -> Result<Vec<Vec<f64>>, usize> {
    let mut path = Vec::with_capacity(steps + 1);
    path.push(y0.to_vec());
    for s in 0..steps {
        let next = step(f, &path[s], h);
        if next.iter().any(|v| !v.is_finite()) {
            return Err(s + 1);
        }
        path.push(next);
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::from_i64;

    #[test]
    fn exponential_growth() {
        let x = MultiPoly::var(1, 0);
        let f = compile(&[x]);
        let path = integrate(&f, &[1.0], 0.01, 100).unwrap();
        let err = path[100][0] - core::f64::consts::E;
        assert!(err < 1e-9 && err > -1e-9);
    }

    #[test]
    fn blow_up_is_reported() {
        let x = MultiPoly::var(1, 0);
        let f = compile(&[&(&x * &x) * &x]);
        assert!(integrate(&f, &[10.0], 0.5, 50).is_err());
    }

    #[test]
    fn evaluation() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &(&x * &y).scale(&from_i64(3)) - &y;
        assert_eq!(F64Poly::from_exact(&p).eval(&[2.0, 0.5]), 2.5);
    }
}
