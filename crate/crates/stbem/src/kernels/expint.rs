//! Exponential integral E1 via power series and continued fraction.
//!
//! The heat-kernel time antiderivatives reduce to E1, so this sits in the
//! innermost assembly loops. Both branches converge to full f64 precision;
//! the series handles z <= 1, the continued fraction everything above.

use super::KernelError;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// E1(z) = int_z^inf exp(-t)/t dt for z > 0.
pub fn exp_integral_e1(z: f64) -> Result<f64, KernelError> {
    if !(z > 0.0) {
        return Err(KernelError::InvalidArgument(format!(
            "exp_integral_e1 requires z > 0, got {z}"
        )));
    }
    Ok(e1_unchecked(z))
}

/// E1 without the domain check; callers guarantee z > 0.
#[inline]
pub(crate) fn e1_unchecked(z: f64) -> f64 {
    if z <= 1.0 {
        -EULER_GAMMA - z.ln() + e1_regularized_series(z)
    } else if z > 740.0 {
        // exp(-z) underflows; E1(z) < exp(-z)/z is a hard zero in f64.
        0.0
    } else {
        e1_continued_fraction(z)
    }
}

/// The entire part R(z) = E1(z) + gamma + ln z = sum_{k>=1} (-1)^{k+1} z^k / (k * k!).
///
/// Exposed because the assembly kernels regroup E1 differences around the
/// logarithmic branch to avoid cancellation; the series converges for all z
/// but is only used for moderate arguments.
#[inline]
pub(crate) fn e1_regularized(z: f64) -> f64 {
    if z <= 1.5 {
        e1_regularized_series(z)
    } else {
        e1_unchecked(z) + EULER_GAMMA + z.ln()
    }
}

#[inline]
fn e1_regularized_series(z: f64) -> f64 {
    // term_k = (-1)^{k+1} z^k / (k * k!), term_{k+1} = term_k * (-z) * k / (k+1)^2
    let mut term = z;
    let mut sum = z;
    let mut k = 1.0_f64;
    loop {
        term *= -z * k / ((k + 1.0) * (k + 1.0));
        sum += term;
        k += 1.0;
        if term.abs() <= sum.abs() * 1e-17 || k > 60.0 {
            break;
        }
    }
    sum
}

/// Modified Lentz evaluation of E1(z) = exp(-z) / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))).
fn e1_continued_fraction(z: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut f = d;
    for k in 1..200 {
        let a = -(k as f64) * (k as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    f * (-z).exp()
}
