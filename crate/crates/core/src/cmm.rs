//! Contingent menu mechanisms: each agent is summarized by the index of the
//! two-point payment menu that leaves her with zero utility; the highest
//! index wins and pays her preferred point of the runner-up's menu.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::economy::Economy;
use crate::model::{TwoPartPayment, ValueModel};
use crate::numerics::{expand_bracket, find_root};
use crate::single::{pick_max, Outcome};
use crate::{Error, Result};

/// Menu `{(α, γ1/(1-γ1)·α), (qα, γ2/(1-γ2)·qα)}`; a `γ` of one stands for
/// the point on the up-front axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmmSpec {
    pub q: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl CmmSpec {
    /// The menu `{(0, α), (qα, 0)}`.
    pub fn new(q: f64) -> Self {
        Self { q, gamma1: 1.0, gamma2: 0.0 }
    }

    pub fn with_gammas(q: f64, gamma1: f64, gamma2: f64) -> Self {
        Self { q, gamma1, gamma2 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::InvalidParameter(format!("q = {} must be finite and > 0", self.q)));
        }
        for g in [self.gamma1, self.gamma2] {
            if !(0.0..=1.0).contains(&g) {
                return Err(Error::InvalidParameter(format!("gamma = {g} must lie in [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn menu(&self, alpha: f64) -> [TwoPartPayment; 2] {
        fn point(scale: f64, gamma: f64) -> TwoPartPayment {
            if gamma == 1.0 {
                TwoPartPayment::upfront(scale)
            } else {
                TwoPartPayment::new(scale, gamma / (1.0 - gamma) * scale)
            }
        }
        [point(alpha, self.gamma1), point(self.q * alpha, self.gamma2)]
    }
}

/// The agent's utility from her preferred point of menu `alpha`.
pub fn menu_utility(m: &ValueModel, spec: CmmSpec, alpha: f64) -> f64 {
    let [a, b] = spec.menu(alpha);
    m.utility_two_part(a).max(m.utility_two_part(b))
}

/// The menu index at which the agent's menu utility reaches zero.
pub fn zero_crossing_menu(m: &ValueModel, spec: CmmSpec) -> Result<f64> {
    spec.validate()?;
    m.check()?;
    let f = |alpha: f64| menu_utility(m, spec, alpha);
    let u0 = m.bid_sp();
    let b = expand_bracket(f, 0.0, u0.max(1.0))?;
    Ok(find_root(f, b, 1e-14 * u0.max(1.0))?)
}

pub fn run_cmm(e: &Economy, spec: CmmSpec, seed: u64) -> Result<Outcome> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas: Vec<f64> = e.agents().iter().map(|m| zero_crossing_menu(m, spec)).collect::<Result<_>>()?;
    let all: Vec<usize> = (0..e.len()).collect();
    let winner = pick_max(&alphas, &all, &mut rng).expect("economy is non-empty");
    let runner_up = alphas
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != winner)
        .map(|(_, &a)| a)
        .fold(0.0, f64::max);
    let m = e.agent(winner);
    let [a, b] = spec.menu(runner_up);
    let (ua, ub) = (m.utility_two_part(a), m.utility_two_part(b));
    let payment = if ua > ub || (ua == ub && a.penalty >= b.penalty) { a } else { b };
    Ok(Outcome::allocated(e, winner, payment, alphas))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::single::{run_single, SingleMechanism};

    #[test]
    fn menu_at_zero_is_free() {
        let m = ValueModel::exponential(10.0, 0.08);
        assert_eq!(menu_utility(&m, CmmSpec::new(2.0), 0.0), m.bid_sp());
    }

    #[test]
    fn q_one_prefers_the_penalty_point() {
        let m = ValueModel::uniform(5.0, 3.0);
        for alpha in [0.1, 0.5, 1.0, 2.0] {
            assert_eq!(menu_utility(&m, CmmSpec::new(1.0), alpha), m.utility(alpha));
        }
    }

    #[test]
    fn worked_example_indices() {
        let spec = CmmSpec::new(2.0);
        let a1 = zero_crossing_menu(&ValueModel::exponential(10.0, 0.08), spec).unwrap();
        let a2 = zero_crossing_menu(&ValueModel::exponential(15.0, 0.025), spec).unwrap();
        assert!((a1 - 5.06).abs() < 0.02, "{a1}");
        assert!((a2 - 2.49).abs() < 0.02, "{a2}");
    }

    #[test]
    fn worked_example_outcome() {
        let e = Economy::new(vec![ValueModel::exponential(10.0, 0.08), ValueModel::exponential(15.0, 0.025)]).unwrap();
        let o = run_cmm(&e, CmmSpec::new(2.0), 0).unwrap();
        assert_eq!(o.winner, Some(0));
        let m = e.agent(0);
        let [a, b] = CmmSpec::new(2.0).menu(o.bids[1]);
        let best = m.utility_two_part(a).max(m.utility_two_part(b));
        assert_eq!(o.agent_utilities[0], best);
        // The penalty point (2·α₂, 0) is the better one for agent 1.
        assert_eq!(o.payment, b);
        let csp = run_single(SingleMechanism::Csp, &e, 0).unwrap();
        assert!(o.utilization > csp.utilization);
    }

    #[test]
    fn small_q_matches_csp() {
        let e = Economy::new(vec![
            ValueModel::exponential(10.0, 0.08),
            ValueModel::exponential(15.0, 0.025),
            ValueModel::exponential(3.0, 0.2),
        ])
        .unwrap();
        let csp = run_single(SingleMechanism::Csp, &e, 5).unwrap();
        for q in [0.25, 0.5, 1.0] {
            let o = run_cmm(&e, CmmSpec::new(q), 5).unwrap();
            assert_eq!(o.winner, csp.winner);
            assert!((o.payment.penalty - csp.payment.penalty).abs() < 1e-9);
            assert_eq!(o.payment.upfront, 0.0);
        }
    }

    #[test]
    fn single_agent_pays_nothing() {
        let e = Economy::new(vec![ValueModel::exponential(10.0, 0.08)]).unwrap();
        let o = run_cmm(&e, CmmSpec::new(2.0), 0).unwrap();
        assert_eq!(o.payment, TwoPartPayment::ZERO);
        assert!((o.utilization - e.agent(0).utilization(0.0)).abs() < 1e-15);
    }
}
