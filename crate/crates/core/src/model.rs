//! Agent value distributions and the expected-utility geometry of two-part
//! payments.
//!
//! For a penalty `z` the agent uses the resource iff her realized value is at
//! least `-z`, so her expected utility is `u(z) = E[V·1{V ≥ -z}] - z·P(V < -z)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numerics::{expand_bracket, find_root, lambert_w, Branch, Bracket};
use crate::{Error, Result};

/// The two-part payment `(z, y)`: `penalty` is charged only on a no-show,
/// `upfront` is charged regardless.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoPartPayment {
    pub penalty: f64,
    pub upfront: f64,
}

impl TwoPartPayment {
    pub const ZERO: Self = Self { penalty: 0.0, upfront: 0.0 };

    pub fn new(penalty: f64, upfront: f64) -> Self {
        Self { penalty, upfront }
    }

    pub fn penalty(z: f64) -> Self {
        Self::new(z, 0.0)
    }

    pub fn upfront(y: f64) -> Self {
        Self::new(0.0, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub v: f64,
    pub p: f64,
}

/// An agent's private value distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ValueModel {
    /// Value `w` with probability `p`, otherwise unable to use the resource
    /// at all (value `-∞`).
    Wp { w: f64, p: f64 },
    /// `V ~ U[-a1, a2]`.
    Uniform { a1: f64, a2: f64 },
    /// `V = w - O` with an opportunity cost `O ~ Exp(lambda)`.
    Exponential { w: f64, lambda: f64 },
    /// Finite atoms plus a mass `q_inf` at `-∞`.
    Discrete { atoms: Vec<Atom>, q_inf: f64 },
}

/// A failed modelling assumption or parameter constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A1: the agent must gain from the resource with positive probability.
    NoPositiveValue { expected_positive: f64 },
    /// A2: the positive part must have finite expectation.
    UnboundedPositiveValue,
    /// A3: always using the resource must be unattractive in expectation.
    NonNegativeMean { mean: f64 },
    Parameter(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoPositiveValue { expected_positive } => {
                write!(f, "violates A1: E[V+] = {expected_positive} is not positive")
            }
            Self::UnboundedPositiveValue => write!(f, "violates A2: E[V+] is not finite"),
            Self::NonNegativeMean { mean } => write!(f, "violates A3: E[V] = {mean} ≥ 0"),
            Self::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

/// Utilization-maximizing payment subject to non-negative agent utility and
/// non-negative revenue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FirstBest {
    Bounded { payment: TwoPartPayment, utilization: f64 },
    /// Any penalty is feasible once the up-front payment is lowered far
    /// enough; utilization saturates at `utilization`.
    Unbounded { utilization: f64 },
}

impl FirstBest {
    pub fn utilization(&self) -> f64 {
        match *self {
            Self::Bounded { utilization, .. } | Self::Unbounded { utilization } => utilization,
        }
    }

    /// The penalty, with `+∞` for the unbounded case.
    pub fn penalty(&self) -> f64 {
        match self {
            Self::Bounded { payment, .. } => payment.penalty,
            Self::Unbounded { .. } => f64::INFINITY,
        }
    }

    pub fn payment(&self) -> Option<TwoPartPayment> {
        match self {
            Self::Bounded { payment, .. } => Some(*payment),
            Self::Unbounded { .. } => None,
        }
    }
}

fn root_tol(scale: f64) -> f64 {
    1e-14 * scale.abs().max(1.0)
}

impl ValueModel {
    pub fn wp(w: f64, p: f64) -> Self {
        Self::Wp { w, p }
    }

    pub fn uniform(a1: f64, a2: f64) -> Self {
        Self::Uniform { a1, a2 }
    }

    pub fn exponential(w: f64, lambda: f64) -> Self {
        Self::Exponential { w, lambda }
    }

    /// Atoms given as `(value, probability)` pairs.
    pub fn discrete(atoms: &[(f64, f64)], q_inf: f64) -> Self {
        Self::Discrete {
            atoms: atoms.iter().map(|&(v, p)| Atom { v, p }).collect(),
            q_inf,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut param = |ok: bool, msg: String| {
            if !ok {
                out.push(Violation::Parameter(msg));
            }
        };
        match self {
            Self::Wp { w, p } => {
                param(w.is_finite(), format!("w = {w} must be finite"));
                param((0.0..=1.0).contains(p), format!("p = {p} must lie in [0, 1]"));
            }
            Self::Uniform { a1, a2 } => {
                param(a1.is_finite() && *a1 >= 0.0, format!("a1 = {a1} must be finite and ≥ 0"));
                param(a2.is_finite() && *a2 >= 0.0, format!("a2 = {a2} must be finite and ≥ 0"));
            }
            Self::Exponential { w, lambda } => {
                param(w.is_finite(), format!("w = {w} must be finite"));
                param(
                    lambda.is_finite() && *lambda > 0.0,
                    format!("lambda = {lambda} must be finite and > 0"),
                );
            }
            Self::Discrete { atoms, q_inf } => {
                param((0.0..=1.0).contains(q_inf), format!("q_inf = {q_inf} must lie in [0, 1]"));
                for a in atoms {
                    param(a.v.is_finite(), format!("atom value {} must be finite", a.v));
                    param((0.0..=1.0).contains(&a.p), format!("atom probability {} must lie in [0, 1]", a.p));
                }
                let total: f64 = atoms.iter().map(|a| a.p).sum::<f64>() + q_inf;
                param((total - 1.0).abs() <= 1e-9, format!("probabilities sum to {total}, not 1"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let pos = self.expected_positive();
        if !pos.is_finite() {
            out.push(Violation::UnboundedPositiveValue);
        } else if pos <= 0.0 {
            out.push(Violation::NoPositiveValue { expected_positive: pos });
        }
        let mean = self.mean();
        if mean >= 0.0 {
            out.push(Violation::NonNegativeMean { mean });
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel { agent: None, resource: None, violations })
        }
    }

    /// `E[V]`, which is `-∞` when there is mass at `-∞`.
    pub fn mean(&self) -> f64 {
        match self {
            Self::Wp { w, p } => {
                if *p < 1.0 {
                    f64::NEG_INFINITY
                } else {
                    *w
                }
            }
            Self::Uniform { a1, a2 } => 0.5 * (a2 - a1),
            Self::Exponential { w, lambda } => w - 1.0 / lambda,
            Self::Discrete { atoms, q_inf } => {
                if *q_inf > 0.0 {
                    f64::NEG_INFINITY
                } else {
                    atoms.iter().map(|a| a.v * a.p).sum()
                }
            }
        }
    }

    /// `P(V < x)`.
    pub fn prob_below(&self, x: f64) -> f64 {
        match self {
            Self::Wp { w, p } => {
                if x <= *w {
                    1.0 - p
                } else {
                    1.0
                }
            }
            Self::Uniform { a1, a2 } => ((x + a1) / (a1 + a2)).clamp(0.0, 1.0),
            Self::Exponential { w, lambda } => {
                if x <= *w {
                    (-lambda * (w - x)).exp()
                } else {
                    1.0
                }
            }
            Self::Discrete { atoms, q_inf } => {
                let below: f64 = atoms.iter().filter(|a| a.v < x).map(|a| a.p).sum();
                (q_inf + below).min(1.0)
            }
        }
    }

    /// `E[V·1{V ≥ -z}]`, the agent's expected value from the resource when
    /// she shows up exactly when that beats paying the penalty `z`.
    pub fn agent_welfare(&self, z: f64) -> f64 {
        let c = -z;
        match self {
            Self::Wp { w, p } => {
                if *w >= c {
                    w * p
                } else {
                    0.0
                }
            }
            Self::Uniform { a1, a2 } => {
                let lo = c.max(-a1);
                if lo >= *a2 {
                    0.0
                } else {
                    (a2 * a2 - lo * lo) / (2.0 * (a1 + a2))
                }
            }
            Self::Exponential { w, lambda } => {
                let t = w - c;
                if t < 0.0 {
                    0.0
                } else {
                    let tail = (-lambda * t).exp();
                    (w - 1.0 / lambda) * -(-lambda * t).exp_m1() + t * tail
                }
            }
            Self::Discrete { atoms, .. } => atoms.iter().filter(|a| a.v >= c).map(|a| a.v * a.p).sum(),
        }
    }

    /// `E[V⁺]`.
    pub fn expected_positive(&self) -> f64 {
        match self {
            Self::Discrete { atoms, .. } => atoms.iter().filter(|a| a.v > 0.0).map(|a| a.v * a.p).sum(),
            _ => self.agent_welfare(0.0),
        }
    }

    /// Expected utility `u(z)` for penalty `z` and no up-front payment.
    pub fn utility(&self, z: f64) -> f64 {
        self.agent_welfare(z) - z * self.prob_below(-z)
    }

    /// Expected utility `u(z) - y`.
    pub fn utility_two_part(&self, pay: TwoPartPayment) -> f64 {
        self.utility(pay.penalty) - pay.upfront
    }

    /// Probability of using the resource, `P(V ≥ -z)`.
    pub fn utilization(&self, z: f64) -> f64 {
        match self {
            Self::Wp { w, p } => {
                if *w >= -z {
                    *p
                } else {
                    0.0
                }
            }
            Self::Discrete { atoms, .. } => atoms.iter().filter(|a| a.v >= -z).map(|a| a.p).sum(),
            _ => 1.0 - self.prob_below(-z),
        }
    }

    /// Expected payment to the mechanism, `y + z·P(V < -z)`.
    pub fn revenue(&self, pay: TwoPartPayment) -> f64 {
        pay.upfront + pay.penalty * self.prob_below(-pay.penalty)
    }

    /// Dominant-strategy bid in a second-price auction, `E[V⁺]`.
    pub fn bid_sp(&self) -> f64 {
        self.utility(0.0)
    }

    /// Dominant-strategy bid for a second-price auction with a fixed
    /// penalty `c`: `u(c)`, clipped at zero unless `allow_negative`.
    pub fn bid_spc(&self, c: f64, allow_negative: bool) -> f64 {
        let v = self.utility(c);
        if allow_negative {
            v
        } else {
            v.max(0.0)
        }
    }

    fn assumption_error(&self) -> Error {
        Error::InvalidModel { agent: None, resource: None, violations: self.validate() }
    }

    /// The unique `z⁰ ≥ 0` with `u(z⁰) = 0`; the dominant-strategy bid under
    /// the contingent second price mechanism.
    pub fn zero_crossing(&self) -> Result<f64> {
        match *self {
            Self::Wp { w, p } if w > 0.0 && p > 0.0 && p < 1.0 => Ok(closed_form::wp_zero_crossing(w, p)),
            Self::Uniform { a1, a2 } if a2 > 0.0 && a1 > a2 => Ok(closed_form::uniform_zero_crossing(a1, a2)),
            Self::Exponential { w, lambda } if w > 0.0 && lambda > 0.0 && w * lambda < 1.0 => {
                Ok(closed_form::exponential_zero_crossing(w, lambda))
            }
            Self::Discrete { .. } => {
                self.check()?;
                Ok(self.level_crossing_discrete(0.0))
            }
            _ => Err(self.assumption_error()),
        }
    }

    /// Zero crossing obtained by bracketed root finding on `u`.
    pub fn zero_crossing_numeric(&self) -> Result<f64> {
        self.check()?;
        let u0 = self.utility(0.0);
        let b = expand_bracket(|z| self.utility(z), 0.0, 2.0 * u0 + 1.0)?;
        Ok(find_root(|z| self.utility(z), b, root_tol(u0))?)
    }

    /// The largest `z ≥ 0` with `u(z) ≥ target`, or 0 when `u(0) ≤ target`.
    ///
    /// `target` must exceed `E[V]`.
    pub fn critical_penalty(&self, target: f64) -> f64 {
        let u0 = self.utility(0.0);
        if u0 <= target {
            return 0.0;
        }
        match *self {
            Self::Wp { w, p } => (w * p - target) / (1.0 - p),
            Self::Uniform { a1, a2 } => {
                let disc = a1 * a1 - a2 * a2 + 2.0 * (a1 + a2) * target;
                if disc <= 0.0 {
                    a1
                } else {
                    a1 - disc.sqrt()
                }
            }
            Self::Exponential { w, lambda } => {
                let x = lambda * (target - w);
                if x <= -1.0 {
                    f64::INFINITY
                } else {
                    (-w - x.ln_1p() / lambda).max(0.0)
                }
            }
            Self::Discrete { .. } => self.level_crossing_discrete(target),
        }
    }

    /// Exact level crossing of the piecewise-linear utility of a discrete
    /// model, searched segment by segment between kinks.
    fn level_crossing_discrete(&self, target: f64) -> f64 {
        let Self::Discrete { atoms, q_inf } = self else {
            unreachable!("discrete models only")
        };
        let mut kinks: Vec<f64> = atoms.iter().filter(|a| a.v < 0.0 && a.p > 0.0).map(|a| -a.v).collect();
        kinks.sort_by(f64::total_cmp);
        kinks.dedup();
        let (mut z_prev, mut u_prev) = (0.0, self.utility(0.0));
        if u_prev <= target {
            return 0.0;
        }
        for &k in &kinks {
            let u_k = self.utility(k);
            if u_k <= target {
                return z_prev + (u_prev - target) / (u_prev - u_k) * (k - z_prev);
            }
            z_prev = k;
            u_prev = u_k;
        }
        if *q_inf > 0.0 {
            z_prev + (u_prev - target) / q_inf
        } else {
            f64::INFINITY
        }
    }

    /// Bid under the γ-parametrized contingent second price mechanism: the
    /// coordinate sum `z + y` of the point where the ray
    /// `y = γ/(1-γ)·z` meets the zero-profit curve `y = u(z)`.
    pub fn bid_gamma_csp(&self, gamma: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidParameter(format!("gamma = {gamma} must lie in [0, 1]")));
        }
        if gamma == 0.0 {
            return self.zero_crossing();
        }
        let u0 = self.bid_sp();
        if gamma == 1.0 {
            return Ok(u0);
        }
        let z0 = self.zero_crossing()?;
        let g = |b: f64| self.utility((1.0 - gamma) * b) - gamma * b;
        let hi = (u0 / gamma).min(z0 / (1.0 - gamma));
        Ok(find_root(g, Bracket::new(0.0, hi), root_tol(u0))?)
    }

    /// The first-best payment: the largest penalty compatible with
    /// non-negative agent utility and non-negative revenue.
    pub fn first_best(&self) -> Result<FirstBest> {
        self.check()?;
        let bounded = |z: f64, utilization: f64| FirstBest::Bounded {
            payment: TwoPartPayment::new(z, self.utility(z)),
            utilization,
        };
        Ok(match *self {
            Self::Wp { p, .. } => FirstBest::Unbounded { utilization: p },
            Self::Uniform { a1, a2 } => {
                let z = closed_form::uniform_first_best_penalty(a1, a2);
                bounded(z, self.utilization(z))
            }
            Self::Exponential { w, lambda } => {
                let z = closed_form::exponential_first_best_penalty(w, lambda)?;
                bounded(z, self.utilization(z))
            }
            Self::Discrete { ref atoms, q_inf } => {
                let mut sorted: Vec<Atom> = atoms.iter().copied().filter(|a| a.p > 0.0).collect();
                sorted.sort_by(|a, b| b.v.total_cmp(&a.v));
                // Agent welfare is a step function of z; find the first atom
                // whose inclusion makes it negative.
                let mut welfare = 0.0;
                let mut mass = 0.0;
                let mut i = 0;
                while i < sorted.len() {
                    let v = sorted[i].v;
                    let (mut dw, mut dm) = (0.0, 0.0);
                    while i < sorted.len() && sorted[i].v == v {
                        dw += v * sorted[i].p;
                        dm += sorted[i].p;
                        i += 1;
                    }
                    if welfare + dw < 0.0 {
                        // The supremum -v is not attained; take the largest
                        // double below it.
                        let z = f64::from_bits((-v).to_bits() - 1);
                        return Ok(bounded(z, self.utilization(z)));
                    }
                    welfare += dw;
                    mass += dm;
                }
                debug_assert!(q_inf > 0.0);
                FirstBest::Unbounded { utilization: mass }
            }
        })
    }

    /// Whether the model's utility has a kink at `z` (discrete models only).
    pub fn is_kink(&self, z: f64) -> bool {
        match self {
            Self::Discrete { atoms, .. } => atoms.iter().any(|a| (a.v + z).abs() < 1e-9),
            Self::Wp { w, .. } => (w + z).abs() < 1e-9,
            Self::Uniform { a1, a2 } => (a1 - z).abs() < 1e-9 || (a2 + z).abs() < 1e-9,
            Self::Exponential { w, .. } => (w + z).abs() < 1e-9,
        }
    }

    /// Probability mass at `-∞`.
    pub fn never_show(&self) -> f64 {
        match self {
            Self::Wp { p, .. } => 1.0 - p,
            Self::Discrete { q_inf, .. } => *q_inf,
            _ => 0.0,
        }
    }
}

/// Closed-form bids, zero crossings and first-best penalties for the three
/// parametric families.
pub mod closed_form {
    use super::*;

    pub fn wp_bid_sp(w: f64, p: f64) -> f64 {
        w * p
    }

    pub fn wp_zero_crossing(w: f64, p: f64) -> f64 {
        w * p / (1.0 - p)
    }

    pub fn wp_bid_spc(w: f64, p: f64, c: f64) -> f64 {
        if c >= -w {
            w * p - (1.0 - p) * c
        } else {
            -c
        }
    }

    pub fn wp_bid_gamma(w: f64, p: f64, gamma: f64) -> f64 {
        w * p / (1.0 - p + gamma * p)
    }

    pub fn uniform_utility(a1: f64, a2: f64, z: f64) -> f64 {
        if z <= -a2 {
            -z
        } else if z <= a1 {
            (z * z - 2.0 * a1 * z + a2 * a2) / (2.0 * (a1 + a2))
        } else {
            0.5 * (a2 - a1)
        }
    }

    pub fn uniform_bid_sp(a1: f64, a2: f64) -> f64 {
        a2 * a2 / (2.0 * (a1 + a2))
    }

    pub fn uniform_zero_crossing(a1: f64, a2: f64) -> f64 {
        a1 - (a1 * a1 - a2 * a2).sqrt()
    }

    pub fn uniform_bid_gamma(a1: f64, a2: f64, gamma: f64) -> f64 {
        let k = gamma / (1.0 - gamma);
        let h = a1 + (a1 + a2) * k;
        let z = h - (h * h - a2 * a2).sqrt();
        z / (1.0 - gamma)
    }

    pub fn uniform_first_best_penalty(_a1: f64, a2: f64) -> f64 {
        a2
    }

    pub fn uniform_first_best_utilization(a1: f64, a2: f64) -> f64 {
        2.0 * a2 / (a1 + a2)
    }

    pub fn uniform_first_best_upfront(a1: f64, a2: f64) -> f64 {
        a2 * (a2 - a1) / (a1 + a2)
    }

    pub fn exponential_utility(w: f64, lambda: f64, z: f64) -> f64 {
        if z >= -w {
            w + (-lambda * (w + z)).exp_m1() / lambda
        } else {
            -z
        }
    }

    pub fn exponential_bid_sp(w: f64, lambda: f64) -> f64 {
        w + (-lambda * w).exp_m1() / lambda
    }

    pub fn exponential_zero_crossing(w: f64, lambda: f64) -> f64 {
        -w - (-w * lambda).ln_1p() / lambda
    }

    pub fn exponential_utilization(w: f64, lambda: f64, z: f64) -> f64 {
        1.0 - (-lambda * (w + z)).exp()
    }

    pub fn exponential_bid_gamma(w: f64, lambda: f64, gamma: f64) -> Result<f64> {
        let k = gamma / (1.0 - gamma);
        let c = 1.0 - lambda * w * (1.0 + k);
        let arg = (c / k).exp() / k;
        let s = lambert_w(arg, Branch::Principal)? - c / k;
        let z = s / lambda - w;
        Ok(z / (1.0 - gamma))
    }

    pub fn exponential_first_best_penalty(w: f64, lambda: f64) -> Result<f64> {
        let s = w * lambda - 1.0;
        let x = s * s.exp();
        let wm = lambert_w(x, Branch::Lower)?;
        Ok(-(1.0 + wm) / lambda)
    }
}
