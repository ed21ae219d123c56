//! Scalar root finding and the special functions used by the closed forms.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("bracket [{lo}, {hi}] does not straddle a sign change (f(lo) = {flo}, f(hi) = {fhi})")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("argument {x} outside the domain of {function}")]
    Domain { function: &'static str, x: f64 },
    #[error("non-finite value encountered")]
    NonFinite,
}

/// A closed interval `[lo, hi]` on which a root is sought.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }
}

const MAX_ITER: usize = 500;

/// Find a root of `f` inside `bracket`.
///
/// Uses the Illinois variant of regula falsi, falling back to bisection
/// whenever an interpolation step fails to halve the bracket. Returns as soon
/// as `|f(x)| <= tol` or the bracket is narrower than `tol`.
pub fn find_root<F>(f: F, bracket: Bracket, tol: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (bracket.lo.min(bracket.hi), bracket.lo.max(bracket.hi));
    let (mut fa, mut fb) = (f(a), f(b));
    if !fa.is_finite() || !fb.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    if fa.abs() <= tol {
        return Ok(a);
    }
    if fb.abs() <= tol {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::NoSignChange { lo: a, hi: b, flo: fa, fhi: fb });
    }

    let mut bisect_next = false;
    // Which endpoint was retained on the previous step: -1 for a, 1 for b.
    let mut side = 0i8;
    for _ in 0..MAX_ITER {
        let width = b - a;
        let x = if bisect_next {
            a + 0.5 * width
        } else {
            let x = (a * fb - b * fa) / (fb - fa);
            if x.is_finite() && x > a && x < b {
                x
            } else {
                a + 0.5 * width
            }
        };
        let fx = f(x);
        if !fx.is_finite() {
            return Err(NumericsError::NonFinite);
        }
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        let new_width = b - a;
        if new_width <= tol || new_width >= width {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
        bisect_next = new_width > 0.5 * width;
    }
    Err(NumericsError::NoConvergence { iterations: MAX_ITER })
}

/// Grow `hi` geometrically from `start` until `f(hi)` has the sign opposite
/// to `f(lo)`, then return the bracket.
pub fn expand_bracket<F>(f: F, lo: f64, start: f64) -> Result<Bracket, NumericsError>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    let mut hi = start.max(lo + 1.0);
    for _ in 0..2000 {
        let fhi = f(hi);
        if !fhi.is_finite() {
            return Err(NumericsError::NonFinite);
        }
        if fhi.signum() != flo.signum() || fhi == 0.0 {
            return Ok(Bracket::new(lo, hi));
        }
        hi = lo + 2.0 * (hi - lo);
        if !hi.is_finite() {
            break;
        }
    }
    Err(NumericsError::NoSignChange { lo, hi, flo, fhi: f(hi) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// W₀, defined on `[-1/e, ∞)` with `W ≥ -1`.
    Principal,
    /// W₋₁, defined on `[-1/e, 0)` with `W ≤ -1`.
    Lower,
}

const INV_E: f64 = 0.367_879_441_171_442_33;

/// Lambert W: the solution `w` of `w·eʷ = x` on the requested branch.
pub fn lambert_w(x: f64, branch: Branch) -> Result<f64, NumericsError> {
    let domain = || NumericsError::Domain { function: "lambert_w", x };
    if !x.is_finite() {
        return Err(domain());
    }
    // Allow for rounding in arguments computed as (s·eˢ) with s near -1.
    let offset = x + INV_E;
    if offset < -4.0 * f64::EPSILON {
        return Err(domain());
    }
    if branch == Branch::Lower && x >= 0.0 {
        return Err(domain());
    }
    if offset <= 0.0 {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let p = (2.0 * std::f64::consts::E * offset).sqrt();
    let mut w = match branch {
        Branch::Principal => {
            if offset < 0.25 {
                -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
            } else if x < 3.0 {
                x.ln_1p() * (1.0 - x.ln_1p() / (2.0 + x.ln_1p()))
            } else {
                let l = x.ln();
                l - l.ln()
            }
        }
        Branch::Lower => {
            if offset < 0.25 {
                -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p
            } else {
                let l = (-x).ln();
                l - (-l).ln()
            }
        }
    };

    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-300 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        if !step.is_finite() {
            break;
        }
        let next = w - step;
        // Keep iterates on the requested branch.
        let next = match branch {
            Branch::Principal if next < -1.0 => 0.5 * (w - 1.0),
            Branch::Lower if next > -1.0 => 0.5 * (w - 1.0),
            _ => next,
        };
        let done = (next - w).abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs());
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}

/// The upper incomplete gamma function at order zero, Γ(0, x) = E₁(x), for x > 0.
pub fn gamma_upper_zero(x: f64) -> Result<f64, NumericsError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(NumericsError::Domain { function: "gamma_upper_zero", x });
    }
    const EULER: f64 = 0.577_215_664_901_532_9;
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        Ok(-EULER - x.ln() - sum)
    } else {
        // Continued fraction, modified Lentz.
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                return Ok(h * (-x).exp());
            }
        }
        Err(NumericsError::NoConvergence { iterations: 500 })
    }
}

/// Central finite difference of `f` at `x` with step `h`.
pub fn finite_diff<F>(f: F, x: f64, h: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    let d = (f(x + h) - f(x - h)) / (2.0 * h);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(NumericsError::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root_is_exact() {
        let r = find_root(|x| 12.0 - 0.4 * x, Bracket::new(0.0, 100.0), 1e-12).unwrap();
        assert!((r - 30.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        let err = find_root(|x| x * x + 1.0, Bracket::new(-1.0, 1.0), 1e-12).unwrap_err();
        assert!(matches!(err, NumericsError::NoSignChange { .. }));
    }

    #[test]
    fn flat_function_converges_by_width() {
        let f = |x: f64| 1e-3 * (x - 0.7);
        let r = find_root(f, Bracket::new(0.0, 5.0), 1e-14).unwrap();
        assert!((r - 0.7).abs() < 1e-10);
    }

    #[test]
    fn lambert_branch_point() {
        assert_eq!(lambert_w(-INV_E, Branch::Principal).unwrap(), -1.0);
        assert_eq!(lambert_w(-INV_E, Branch::Lower).unwrap(), -1.0);
        assert!(lambert_w(-0.5, Branch::Principal).is_err());
        assert!(lambert_w(0.1, Branch::Lower).is_err());
    }

    #[test]
    fn lambert_round_trips() {
        for &x in &[-0.36, -0.3, -0.1, -1e-6, 1e-8, 0.5, 1.0, 2.5, 10.0, 1e3, 1e10] {
            let w = lambert_w(x, Branch::Principal).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0), "x = {x}");
            assert!(w >= -1.0);
        }
        for &x in &[-0.3678, -0.3, -0.1, -1e-3, -1e-8] {
            let w = lambert_w(x, Branch::Lower).unwrap();
            assert!((w * w.exp() - x).abs() <= 1e-12, "x = {x}");
            assert!(w <= -1.0);
        }
    }

    #[test]
    fn known_gamma_values() {
        // E1(1) and E1(0.5) from standard tables.
        assert!((gamma_upper_zero(1.0).unwrap() - 0.219_383_934_395_520_27).abs() < 1e-14);
        assert!((gamma_upper_zero(0.5).unwrap() - 0.559_773_594_776_160_8).abs() < 1e-14);
        assert!(gamma_upper_zero(0.0).is_err());
    }

    #[test]
    fn finite_difference_of_square() {
        let d = finite_diff(|x| x * x, 3.0, 1e-5).unwrap();
        assert!((d - 6.0).abs() < 1e-8);
    }
}
