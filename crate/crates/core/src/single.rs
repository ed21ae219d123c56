//! Single-resource mechanisms, each run at its dominant-strategy equilibrium.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::economy::Economy;
use crate::model::{TwoPartPayment, ValueModel};
use crate::{Error, Result, TIE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SingleMechanism {
    /// Second price auction on the up-front payment.
    Sp,
    /// Second price auction with a fixed no-show penalty `c`.
    Spc { c: f64 },
    /// Contingent second price: the second highest bid is the no-show penalty.
    Csp,
    /// Contingent second price with reserve penalty `r`.
    CspR { r: f64 },
    /// The second bid is split into `(1-γ)·b` penalty and `γ·b` up front.
    GammaCsp { gamma: f64 },
    /// Uniformly random winner, no payments.
    Random,
}

impl SingleMechanism {
    pub fn validate(&self) -> Result<()> {
        let bad = |name: &str, v: f64, range: &str| {
            Err(Error::InvalidParameter(format!("{name} = {v} must be {range}")))
        };
        match *self {
            Self::Spc { c } if !(c >= 0.0 && c.is_finite()) => bad("C", c, "finite and ≥ 0"),
            Self::CspR { r } if !(r >= 0.0 && r.is_finite()) => bad("R", r, "finite and ≥ 0"),
            Self::GammaCsp { gamma } if !(0.0..=1.0).contains(&gamma) => bad("gamma", gamma, "in [0, 1]"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SingleMechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sp => write!(f, "SP"),
            Self::Spc { c } => write!(f, "SP+C(C={c})"),
            Self::Csp => write!(f, "CSP"),
            Self::CspR { r } => write!(f, "CSP+R(R={r})"),
            Self::GammaCsp { gamma } => write!(f, "gamma-CSP(gamma={gamma})"),
            Self::Random => write!(f, "Random"),
        }
    }
}

/// Expected outcome of a single-resource mechanism.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub winner: Option<usize>,
    pub payment: TwoPartPayment,
    pub utilization: f64,
    pub expected_revenue: f64,
    pub agent_utilities: Vec<f64>,
    pub bids: Vec<f64>,
}

impl Outcome {
    pub fn unallocated(bids: Vec<f64>) -> Self {
        Self {
            winner: None,
            payment: TwoPartPayment::ZERO,
            utilization: 0.0,
            expected_revenue: 0.0,
            agent_utilities: vec![0.0; bids.len()],
            bids,
        }
    }

    pub fn allocated(e: &Economy, winner: usize, payment: TwoPartPayment, bids: Vec<f64>) -> Self {
        let m = e.agent(winner);
        let mut agent_utilities = vec![0.0; e.len()];
        agent_utilities[winner] = m.utility_two_part(payment);
        Self {
            winner: Some(winner),
            payment,
            utilization: m.utilization(payment.penalty),
            expected_revenue: m.revenue(payment),
            agent_utilities,
            bids,
        }
    }

    /// Expected utility of agent `i` whose true model is `truth`.
    pub fn utility_of(&self, i: usize, truth: &ValueModel) -> f64 {
        if self.winner == Some(i) {
            truth.utility_two_part(self.payment)
        } else {
            0.0
        }
    }
}

/// Dominant-strategy bid of an agent with model `m`.
pub fn dse_bid(mech: SingleMechanism, m: &ValueModel) -> Result<f64> {
    match mech {
        SingleMechanism::Sp => Ok(m.bid_sp()),
        SingleMechanism::Spc { c } => Ok(m.bid_spc(c, false)),
        SingleMechanism::Csp | SingleMechanism::CspR { .. } => m.zero_crossing(),
        SingleMechanism::GammaCsp { gamma } => m.bid_gamma_csp(gamma),
        SingleMechanism::Random => Ok(0.0),
    }
}

/// Index of the highest value among `candidates`, with bids within
/// [`TIE_TOL`] of the maximum broken uniformly at random.
pub(crate) fn pick_max<R: Rng>(values: &[f64], candidates: &[usize], rng: &mut R) -> Option<usize> {
    let best = candidates.iter().map(|&i| values[i]).fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = candidates.iter().copied().filter(|&i| values[i] >= best - TIE_TOL).collect();
    match tied.len() {
        0 => None,
        1 => Some(tied[0]),
        n => Some(tied[rng.gen_range(0..n)]),
    }
}

fn second_bid(bids: &[f64], winner: usize) -> f64 {
    bids.iter()
        .enumerate()
        .filter(|&(j, _)| j != winner)
        .map(|(_, &b)| b)
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn run_single(mech: SingleMechanism, e: &Economy, seed: u64) -> Result<Outcome> {
    mech.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bids: Vec<f64> = match mech {
        SingleMechanism::Csp | SingleMechanism::CspR { .. } => e.zero_crossings().to_vec(),
        SingleMechanism::Random => vec![0.0; e.len()],
        _ => e.agents().iter().map(|m| dse_bid(mech, m)).collect::<Result<_>>()?,
    };

    if mech == SingleMechanism::Random {
        let winner = rng.gen_range(0..e.len());
        return Ok(Outcome::allocated(e, winner, TwoPartPayment::ZERO, bids));
    }

    let candidates: Vec<usize> = match mech {
        SingleMechanism::Spc { .. } => (0..e.len()).filter(|&i| bids[i] > 0.0).collect(),
        _ => (0..e.len()).collect(),
    };
    let Some(winner) = pick_max(&bids, &candidates, &mut rng) else {
        return Ok(Outcome::unallocated(bids));
    };
    let second = if e.len() > 1 { second_bid(&bids, winner) } else { 0.0 };

    let payment = match mech {
        SingleMechanism::Sp => TwoPartPayment::upfront(second),
        SingleMechanism::Spc { c } => TwoPartPayment::new(c, second),
        SingleMechanism::Csp => TwoPartPayment::penalty(second),
        SingleMechanism::CspR { r } => {
            if bids[winner] < r {
                return Ok(Outcome::unallocated(bids));
            }
            TwoPartPayment::penalty(second.max(r))
        }
        SingleMechanism::GammaCsp { gamma } => TwoPartPayment::new((1.0 - gamma) * second, gamma * second),
        SingleMechanism::Random => unreachable!(),
    };
    Ok(Outcome::allocated(e, winner, payment, bids))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example3() -> Economy {
        Economy::new(vec![
            ValueModel::discrete(&[(100.0, 0.2), (-20.0, 0.4)], 0.4),
            ValueModel::discrete(&[(40.0, 0.4), (-10.0, 0.4)], 0.2),
        ])
        .unwrap()
    }

    fn example4(eps: f64) -> Economy {
        Economy::new(vec![ValueModel::wp(1.0 / eps, eps), ValueModel::wp(1.0, 1.0 - eps)]).unwrap()
    }

    #[test]
    fn example3_outcomes() {
        let e = example3();
        let csp = run_single(SingleMechanism::Csp, &e, 0).unwrap();
        assert_eq!(csp.winner, Some(1));
        assert!((csp.payment.penalty - 30.0).abs() < 1e-9);
        assert_eq!(csp.payment.upfront, 0.0);
        assert!((csp.utilization - 0.8).abs() < 1e-9);

        let sp = run_single(SingleMechanism::Sp, &e, 0).unwrap();
        assert_eq!(sp.winner, Some(0));
        assert!((sp.utilization - 0.2).abs() < 1e-9);
        assert!((sp.payment.upfront - 16.0).abs() < 1e-9);

        let r = run_single(SingleMechanism::CspR { r: 100.0 }, &e, 0).unwrap();
        assert_eq!(r.winner, None);
        assert_eq!(r.utilization, 0.0);
    }

    #[test]
    fn example4_outcomes() {
        let e = example4(0.1);
        let csp = run_single(SingleMechanism::Csp, &e, 0).unwrap();
        assert_eq!(csp.winner, Some(1));
        assert!((csp.payment.penalty - 1.0 / 0.9).abs() < 1e-12);
        assert!((csp.utilization - 0.9).abs() < 1e-12);
        assert!((dse_bid(SingleMechanism::Sp, e.agent(0)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_agent() {
        let e = Economy::new(vec![ValueModel::uniform(5.0, 3.0)]).unwrap();
        let o = run_single(SingleMechanism::Csp, &e, 7).unwrap();
        assert_eq!(o.winner, Some(0));
        assert_eq!(o.payment, TwoPartPayment::ZERO);
        assert!((o.utilization - 3.0 / 8.0).abs() < 1e-15);
        let r = run_single(SingleMechanism::CspR { r: 0.5 }, &e, 7).unwrap();
        assert_eq!(r.payment.penalty, 0.5);
        let r = run_single(SingleMechanism::CspR { r: 1.5 }, &e, 7).unwrap();
        assert_eq!(r.winner, None);
    }

    #[test]
    fn ties_are_seeded() {
        let e = Economy::new(vec![ValueModel::wp(1.0, 0.5); 4]).unwrap();
        let winners: std::collections::BTreeSet<_> =
            (0..64).map(|s| run_single(SingleMechanism::Csp, &e, s).unwrap().winner.unwrap()).collect();
        assert_eq!(winners.len(), 4);
        let a = run_single(SingleMechanism::Csp, &e, 11).unwrap();
        let b = run_single(SingleMechanism::Csp, &e, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn spc_excludes_zero_bids() {
        let e = Economy::new(vec![ValueModel::wp(1.0, 0.5), ValueModel::wp(2.0, 0.5)]).unwrap();
        let o = run_single(SingleMechanism::Spc { c: 10.0 }, &e, 0).unwrap();
        assert_eq!(o.winner, None);
        let o = run_single(SingleMechanism::Spc { c: 1.5 }, &e, 0).unwrap();
        assert_eq!(o.winner, Some(1));
        assert_eq!(o.payment, TwoPartPayment::new(1.5, 0.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        let e = example3();
        assert!(run_single(SingleMechanism::Spc { c: -1.0 }, &e, 0).is_err());
        assert!(run_single(SingleMechanism::GammaCsp { gamma: 2.0 }, &e, 0).is_err());
    }
}
