//! Fundamental solution of the 2D heat equation, its normal derivative, and
//! their closed-form time antiderivatives.
//!
//! Time integration of the Galerkin integrals is done analytically: for a
//! fixed pair of source/observation points the single and double time
//! integrals over mesh intervals reduce to differences of E1 and exponential
//! expressions. Only the spatial integrals are left to quadrature. Around the
//! logarithmic branch of E1 (small `alpha * r^2 / (4 s)`) the four-term
//! differences are regrouped so the `ln` parts cancel exactly instead of
//! numerically.

mod expint;
pub mod quadrature;

pub use expint::{exp_integral_e1, EULER_GAMMA};
pub(crate) use expint::{e1_regularized, e1_unchecked};
pub use quadrature::{GaussRule, TriangleRule};

use std::f64::consts::PI;
use thiserror::Error;

/// Exponent cutoff: any exp argument below -700 is a hard zero. Keeps
/// far-field (large time lag) blocks cheap and free of denormals.
const EXP_UNDERFLOW: f64 = 700.0;

/// Threshold on z = c/s below which the regrouped (cancellation-free)
/// evaluation of E1-based differences is used.
const Z_REGROUP: f64 = 0.5;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("singular kernel evaluation: {0}")]
    Singular(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Fundamental solution U*(x-y, s) of the 2D heat equation with heat
/// capacity `alpha`, as a function of squared distance `r2` and time lag `s`.
///
/// Returns alpha / (4 pi s) * exp(-alpha r2 / (4 s)) for s > 0 and exactly 0
/// for s <= 0 (causality).
#[inline]
pub fn ustar(alpha: f64, r2: f64, s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let arg = -alpha * r2 / (4.0 * s);
    if arg < -EXP_UNDERFLOW {
        return 0.0;
    }
    alpha / (4.0 * PI * s) * arg.exp()
}

/// Normal derivative of U* in the source variable y:
/// alpha^2 ((x-y).n_y) / (8 pi s^2) * exp(-alpha |x-y|^2 / (4 s)), 0 for s <= 0.
#[inline]
pub fn ustar_normal_dy(alpha: f64, x: [f64; 2], y: [f64; 2], n_y: [f64; 2], s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let dx = x[0] - y[0];
    let dy = x[1] - y[1];
    let dot = dx * n_y[0] + dy * n_y[1];
    let r2 = dx * dx + dy * dy;
    let arg = -alpha * r2 / (4.0 * s);
    if arg < -EXP_UNDERFLOW {
        return 0.0;
    }
    alpha * alpha * dot / (8.0 * PI * s * s) * arg.exp()
}

/// Antiderivative F of s -> ustar(alpha, r2, s) with F(0) = 0 for r2 > 0:
/// F(s) = alpha/(4 pi) * E1(alpha r2 / (4 s)).
///
/// For r2 = 0 the log branch alpha/(4 pi) * ln(s) is returned; it is singular
/// at s = 0 and only meaningful inside differences over intervals bounded
/// away from coincidence (see [`ustar_time_integral`]).
pub fn ustar_time_antideriv(alpha: f64, r2: f64, s: f64) -> f64 {
    let scale = alpha / (4.0 * PI);
    if r2 == 0.0 {
        return scale * s.ln();
    }
    if s <= 0.0 {
        return 0.0;
    }
    let z = 0.25 * alpha * r2 / s;
    if z > EXP_UNDERFLOW {
        return 0.0;
    }
    scale * e1_unchecked(z)
}

/// F(s2) - F(s1) = int_{s1}^{s2} ustar(alpha, r2, s) ds, evaluated without
/// cancellation near the log branch.
///
/// Signals `Singular` for a difference spanning the coincident point
/// (r2 = 0 with s1 <= 0 < s2), where the integral diverges.
pub fn ustar_time_integral(alpha: f64, r2: f64, s1: f64, s2: f64) -> Result<f64, KernelError> {
    if s2 < s1 {
        return Ok(-ustar_time_integral(alpha, r2, s2, s1)?);
    }
    if r2 == 0.0 && s1 <= 0.0 && s2 > 0.0 {
        return Err(KernelError::Singular(format!(
            "time integral of the coincident-point kernel spans s=0 (s1={s1}, s2={s2})"
        )));
    }
    Ok(window_single_layer(alpha, r2, (s1, s2), 0.0))
}

/// Antiderivative G of s -> ustar_normal_dy at fixed geometry, G(0) = 0:
/// G(s) = alpha dot / (2 pi r2) * exp(-alpha r2 / (4 s)) for s > 0, where
/// dot = (x-y).n_y. r2 = 0 is rejected (the assembly never requests it: the
/// dot factor vanishes on flat panels first).
pub fn ustar_dny_time_antideriv(
    alpha: f64,
    dot: f64,
    r2: f64,
    s: f64,
) -> Result<f64, KernelError> {
    if r2 <= 0.0 {
        return Err(KernelError::Singular(
            "double-layer time antiderivative needs r2 > 0".into(),
        ));
    }
    if s <= 0.0 {
        return Ok(0.0);
    }
    let z = 0.25 * alpha * r2 / s;
    if z > EXP_UNDERFLOW {
        return Ok(0.0);
    }
    Ok(alpha * dot / (2.0 * PI * r2) * (-z).exp())
}

/// int_{test interval} ustar(alpha, r2, t - jump) dt for a single jump
/// instant; the workhorse of the hypersingular time-jump term and of
/// potential evaluation. Assumes r2 >= 0; diverges (+inf) only when the
/// window touches the coincident point, which callers keep away from.
pub fn single_layer_time_window(alpha: f64, r2: f64, test: (f64, f64), jump: f64) -> f64 {
    let s1 = test.0 - jump;
    let s2 = test.1 - jump;
    if s2 <= 0.0 || s2 <= s1 {
        return 0.0;
    }
    let scale = alpha / (4.0 * PI);
    let c = 0.25 * alpha * r2;
    if c == 0.0 {
        if s1 > 0.0 {
            return scale * (s2 / s1).ln();
        }
        return f64::INFINITY;
    }
    if s1 <= 0.0 {
        let z2 = c / s2;
        if z2 > EXP_UNDERFLOW {
            return 0.0;
        }
        return scale * e1_unchecked(z2);
    }
    let z1 = c / s1;
    let z2 = c / s2;
    if z1 < Z_REGROUP {
        // E1(z2) - E1(z1) with the log parts cancelled analytically.
        scale * ((s2 / s1).ln() + e1_regularized(z2) - e1_regularized(z1))
    } else {
        let a = if z2 > EXP_UNDERFLOW { 0.0 } else { e1_unchecked(z2) };
        let b = if z1 > EXP_UNDERFLOW { 0.0 } else { e1_unchecked(z1) };
        scale * (a - b)
    }
}

/// Signed time lags of a (test, trial) interval pair for the second
/// antiderivative telescoping. Degenerate or purely acausal pairs
/// contribute nothing.
#[inline]
fn lag_table(test: (f64, f64), trial: (f64, f64)) -> [(f64, f64); 4] {
    [
        (1.0, test.1 - trial.0),
        (-1.0, test.1 - trial.1),
        (-1.0, test.0 - trial.0),
        (1.0, test.0 - trial.1),
    ]
}

/// Double time integral of U* over a (test, trial) interval pair:
/// int_{test} int_{trial} ustar(alpha, r2, t - tau) dtau dt.
///
/// Exactly 0 whenever the test interval lies entirely before the trial
/// interval. Diverges logarithmically in r2 for coinciding intervals; the
/// value at r2 = 0 is +inf in that case and finite otherwise.
pub fn single_layer_time_weight(alpha: f64, r2: f64, test: (f64, f64), trial: (f64, f64)) -> f64 {
    let lags = lag_table(test, trial);
    let mut s_min = f64::INFINITY;
    let mut any = false;
    for &(_, s) in &lags {
        if s > 0.0 {
            any = true;
            if s < s_min {
                s_min = s;
            }
        }
    }
    if !any {
        return 0.0;
    }
    let scale = alpha / (4.0 * PI);
    let c = 0.25 * alpha * r2;
    if c == 0.0 {
        // r2 = 0 limit; finite only when the log coefficients cancel.
        let mut coef_log = 0.0;
        let mut val = 0.0;
        for &(sg, s) in &lags {
            if s > 0.0 {
                coef_log += sg * s;
                val += sg * (s * s.ln() - s);
            }
        }
        if coef_log != 0.0 {
            return f64::INFINITY * coef_log.signum();
        }
        return scale * val;
    }
    if c / s_min < Z_REGROUP {
        // F2(s) = scale * ((c+s) E1(c/s) - s e^{-c/s}); expand E1 around the
        // log branch so the telescoped sum never subtracts large logs.
        let mut coef_log = 0.0; // sum sign * (c + s)
        let mut sum_s = 0.0; // sum sign * s
        let mut main = 0.0;
        for &(sg, s) in &lags {
            if s > 0.0 {
                let z = c / s;
                coef_log += sg * (c + s);
                sum_s += sg * s;
                main += sg * ((c + s) * (s.ln() + e1_regularized(z)) - s * f64::exp_m1(-z));
            }
        }
        scale * ((-EULER_GAMMA - c.ln()) * coef_log + main - sum_s)
    } else {
        let mut total = 0.0;
        for &(sg, s) in &lags {
            if s > 0.0 {
                let z = c / s;
                if z <= EXP_UNDERFLOW {
                    total += sg * ((c + s) * e1_unchecked(z) - s * (-z).exp());
                }
            }
        }
        scale * total
    }
}

/// Double time integral of the normal-derivative kernel over a (test, trial)
/// interval pair: int_{test} int_{trial} ustar_normal_dy(.., t - tau) dtau dt,
/// with `dot = (x-y).n_y` and `r2 = |x-y|^2` fixed.
pub fn double_layer_time_weight(
    alpha: f64,
    dot: f64,
    r2: f64,
    test: (f64, f64),
    trial: (f64, f64),
) -> f64 {
    if dot == 0.0 || r2 == 0.0 {
        return 0.0;
    }
    let lags = lag_table(test, trial);
    let mut s_min = f64::INFINITY;
    let mut any = false;
    for &(_, s) in &lags {
        if s > 0.0 {
            any = true;
            if s < s_min {
                s_min = s;
            }
        }
    }
    if !any {
        return 0.0;
    }
    let c = 0.25 * alpha * r2;
    // H(s) = k1 * s e^{-c/s} - k2 * E1(c/s), H' = ustar_dny antiderivative.
    let k1 = alpha * dot / (2.0 * PI * r2);
    let k2 = alpha * alpha * dot / (8.0 * PI);
    if c / s_min < Z_REGROUP {
        let mut em = 0.0; // sum sign * s * expm1(-z)
        let mut sum_s = 0.0; // sum sign * s
        let mut sigma = 0.0; // sum sign
        let mut lr = 0.0; // sum sign * (ln s + R(z))
        for &(sg, s) in &lags {
            if s > 0.0 {
                let z = c / s;
                em += sg * s * f64::exp_m1(-z);
                sum_s += sg * s;
                sigma += sg;
                lr += sg * (s.ln() + e1_regularized(z));
            }
        }
        k1 * (em + sum_s) - k2 * ((-EULER_GAMMA - c.ln()) * sigma + lr)
    } else {
        let mut total = 0.0;
        for &(sg, s) in &lags {
            if s > 0.0 {
                let z = c / s;
                if z <= EXP_UNDERFLOW {
                    total += sg * (k1 * s * (-z).exp() - k2 * e1_unchecked(z));
                }
            }
        }
        total
    }
}
