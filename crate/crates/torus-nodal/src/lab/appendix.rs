//! Higher-derivative study of one implicitly defined nodal curve.
//!
//! The field is `sin(ky + x) + eps sin(ky - x) + delta sin(y + kx)` with
//! eigenvalue parameter `1 + k^2` in the two-pi convention.  Near
//! `x = -pi/4` its nodal set contains a branch `y(x)` with `ky + x` small;
//! the branch is convex with curvature of order `eps/k`, yet its fourth
//! derivative picks up a `delta k^3`-sized oscillation, so no higher-order
//! smoothness bound follows from the low-order ones.
//!
//! Two independent routes compute the derivatives:
//! * Taylor jets: solve the curve's Taylor coefficients order by order from
//!   the composed jet of the field (plain f64);
//! * an extended-precision oracle: double-double root solves on a stencil,
//!   first derivative by a fourth-order difference, second by the analytic
//!   implicit formula, third and fourth by differencing that formula.

use super::dd::Dd;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppendixError {
    #[error("parameter below f64 resolvability: {0}")]
    BelowResolution(String),
    #[error("root finder failed at x = {x:.9}: {detail}")]
    RootFinding { x: f64, detail: String },
}

/// The three-wave field of the higher-derivative example.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CurveExampleField {
    pub k: u32,
    pub eps: f64,
    pub delta: f64,
}

impl CurveExampleField {
    pub fn new(k: u32, eps: f64, delta: f64) -> Result<Self, AppendixError> {
        if !(eps >= 1e-12) {
            return Err(AppendixError::BelowResolution(format!(
                "eps = {eps:.3e} below 1e-12; the eps-driven second derivative would sink into rounding"
            )));
        }
        if !(delta >= 1e-13) {
            return Err(AppendixError::BelowResolution(format!(
                "delta = {delta:.3e} below 1e-13; the delta-driven fourth derivative would sink into rounding"
            )));
        }
        Ok(Self { k, eps, delta })
    }

    pub fn eigenvalue(&self) -> u64 {
        1 + (self.k as u64) * (self.k as u64)
    }

    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        let k = self.k as f64;
        (k * y + x).sin() + self.eps * (k * y - x).sin() + self.delta * (y + k * x).sin()
    }

    fn phi_y(&self, x: f64, y: f64) -> f64 {
        let k = self.k as f64;
        k * (k * y + x).cos() + self.eps * k * (k * y - x).cos()
            + self.delta * (y + k * x).cos()
    }

    /// Newton root of `phi(x, .)` from the leading-order guess `y = -x/k`.
    pub fn solve_y(&self, x: f64) -> Result<f64, AppendixError> {
        let k = self.k as f64;
        let mut y = -x / k;
        for _ in 0..60 {
            let v = self.evaluate(x, y);
            let dy = self.phi_y(x, y);
            if dy.abs() < 1e-6 {
                return Err(AppendixError::RootFinding {
                    x,
                    detail: format!("phi_y = {dy:.3e} too small"),
                });
            }
            let step = v / dy;
            y -= step;
            if step.abs() < 1e-17 {
                return Ok(y);
            }
        }
        Err(AppendixError::RootFinding { x, detail: "Newton did not settle".into() })
    }

    fn evaluate_dd(&self, x: Dd, y: Dd) -> Dd {
        let k = self.k as f64;
        let a = y.mul_f64(k).add(x).sin();
        let b = y.mul_f64(k).sub(x).sin();
        let c = y.add(x.mul_f64(k)).sin();
        a.add(b.mul_f64(self.eps)).add(c.mul_f64(self.delta))
    }

    fn phi_y_dd(&self, x: Dd, y: Dd) -> Dd {
        let k = self.k as f64;
        let a = y.mul_f64(k).add(x).cos().mul_f64(k);
        let b = y.mul_f64(k).sub(x).cos().mul_f64(self.eps * k);
        let c = y.add(x.mul_f64(k)).cos().mul_f64(self.delta);
        a.add(b).add(c)
    }

    fn phi_x_dd(&self, x: Dd, y: Dd) -> Dd {
        let k = self.k as f64;
        let a = y.mul_f64(k).add(x).cos();
        let b = y.mul_f64(k).sub(x).cos().mul_f64(-self.eps);
        let c = y.add(x.mul_f64(k)).cos().mul_f64(self.delta * k);
        a.add(b).add(c)
    }

    /// Double-double Newton polish of the f64 root.
    fn solve_y_dd(&self, x: Dd) -> Result<Dd, AppendixError> {
        let mut y = Dd::from_f64(self.solve_y(x.to_f64())?);
        for _ in 0..6 {
            let v = self.evaluate_dd(x, y);
            let dy = self.phi_y_dd(x, y);
            y = y.sub(v.div(dy));
        }
        Ok(y)
    }

    /// Second derivative by the analytic implicit formula, in dd.
    fn y2_formula_dd(&self, x: Dd, y: Dd) -> Dd {
        let k = self.k as f64;
        let u1 = y.mul_f64(k).add(x); // sin(u1) block
        let u2 = y.mul_f64(k).sub(x);
        let u3 = y.add(x.mul_f64(k));
        let (s1, c1) = u1.sin_cos();
        let (s2, c2) = u2.sin_cos();
        let (s3, c3) = u3.sin_cos();
        let eps = self.eps;
        let delta = self.delta;
        let phi_x = c1.add(c2.mul_f64(-eps)).add(c3.mul_f64(delta * k));
        let phi_y = c1.mul_f64(k).add(c2.mul_f64(eps * k)).add(c3.mul_f64(delta));
        let phi_xx = s1.neg().add(s2.mul_f64(-eps)).add(s3.mul_f64(-delta * k * k));
        let phi_xy = s1.mul_f64(-k).add(s2.mul_f64(eps * k)).add(s3.mul_f64(-delta * k));
        let phi_yy =
            s1.mul_f64(-k * k).add(s2.mul_f64(-eps * k * k)).add(s3.mul_f64(-delta));
        let y1 = phi_x.div(phi_y).neg();
        // y'' = -(phi_xx + 2 phi_xy y' + phi_yy y'^2) / phi_y
        let num = phi_xx.add(phi_xy.mul(y1).mul_f64(2.0)).add(phi_yy.mul(y1).mul(y1));
        num.div(phi_y).neg()
    }
}

/// Derivatives of the branch at one abscissa.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CurveDerivatives {
    pub x: f64,
    pub y: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
    pub y4: f64,
}

// --- Taylor-jet route -------------------------------------------------------

/// Truncated Taylor coefficients `c0 + c1 t + ... + c4 t^4`.
type Jet = [f64; 5];

fn jet_add(a: Jet, b: Jet) -> Jet {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]]
}

fn jet_scale(a: Jet, c: f64) -> Jet {
    [a[0] * c, a[1] * c, a[2] * c, a[3] * c, a[4] * c]
}

fn jet_mul(a: Jet, b: Jet) -> Jet {
    let mut out = [0.0; 5];
    for i in 0..5 {
        for j in 0..(5 - i) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// `sin` and `cos` of a jet: split off the constant term and expand the
/// nilpotent remainder.
fn jet_sin_cos(u: Jet) -> (Jet, Jet) {
    let (s0, c0) = u[0].sin_cos();
    let v: Jet = [0.0, u[1], u[2], u[3], u[4]];
    let v2 = jet_mul(v, v);
    let v3 = jet_mul(v2, v);
    let v4 = jet_mul(v2, v2);
    // sin v = v - v^3/6, cos v = 1 - v^2/2 + v^4/24 (exact to order 4)
    let sin_v = jet_add(v, jet_scale(v3, -1.0 / 6.0));
    let cos_v = jet_add(
        jet_add([1.0, 0.0, 0.0, 0.0, 0.0], jet_scale(v2, -0.5)),
        jet_scale(v4, 1.0 / 24.0),
    );
    (
        jet_add(jet_scale(cos_v, s0), jet_scale(sin_v, c0)),
        jet_add(jet_scale(cos_v, c0), jet_scale(sin_v, -s0)),
    )
}

impl CurveExampleField {
    fn phi_jet(&self, x0: f64, y_jet: Jet) -> Jet {
        let k = self.k as f64;
        let x_jet: Jet = [x0, 1.0, 0.0, 0.0, 0.0];
        let u1 = jet_add(jet_scale(y_jet, k), x_jet);
        let u2 = jet_add(jet_scale(y_jet, k), jet_scale(x_jet, -1.0));
        let u3 = jet_add(y_jet, jet_scale(x_jet, k));
        let (s1, _) = jet_sin_cos(u1);
        let (s2, _) = jet_sin_cos(u2);
        let (s3, _) = jet_sin_cos(u3);
        jet_add(jet_add(s1, jet_scale(s2, self.eps)), jet_scale(s3, self.delta))
    }

    /// Solves the curve's Taylor coefficients order by order: each order's
    /// jet coefficient is affine in the unknown, with slope `phi_y`.
    pub fn derivatives_by_jets(&self, x: f64) -> Result<CurveDerivatives, AppendixError> {
        let y0 = self.solve_y(x)?;
        let mut c: Jet = [y0, 0.0, 0.0, 0.0, 0.0];
        for order in 1..=4 {
            let base = self.phi_jet(x, c)[order];
            let mut probe = c;
            probe[order] = 1.0;
            let slope = self.phi_jet(x, probe)[order] - base;
            if slope.abs() < 1e-12 {
                return Err(AppendixError::RootFinding {
                    x,
                    detail: format!("degenerate jet solve at order {order}"),
                });
            }
            c[order] = -base / slope;
        }
        Ok(CurveDerivatives {
            x,
            y: c[0],
            y1: c[1],
            y2: 2.0 * c[2],
            y3: 6.0 * c[3],
            y4: 24.0 * c[4],
        })
    }

    /// Extended-precision oracle: dd root solves on a five-point stencil;
    /// `y'` by the fourth-order central difference, `y''` by the implicit
    /// formula, `y'''` and `y''''` by differencing that formula.
    pub fn derivatives_by_oracle(
        &self,
        x: f64,
        stencil: f64,
    ) -> Result<CurveDerivatives, AppendixError> {
        let h = stencil;
        let xs: Vec<Dd> = (-2..=2).map(|j| Dd::from_f64(x).add_f64(j as f64 * h)).collect();
        let ys: Vec<Dd> =
            xs.iter().map(|&xi| self.solve_y_dd(xi)).collect::<Result<_, _>>()?;
        let y2s: Vec<Dd> = xs
            .iter()
            .zip(&ys)
            .map(|(&xi, &yi)| self.y2_formula_dd(xi, yi))
            .collect();
        // y' = (8(y[3] - y[1]) - (y[4] - y[0])) / (12 h)
        let y1 = ys[3]
            .sub(ys[1])
            .mul_f64(8.0)
            .sub(ys[4].sub(ys[0]))
            .div_f64(12.0 * h)
            .to_f64();
        let y2 = y2s[2].to_f64();
        let y3 = y2s[3].sub(y2s[1]).div_f64(2.0 * h).to_f64();
        let y4 = y2s[3].add(y2s[1]).sub(y2s[2].mul_f64(2.0)).div_f64(h * h).to_f64();
        Ok(CurveDerivatives { x, y: ys[2].to_f64(), y1, y2, y3, y4 })
    }
}
