//! Reference points for the mechanisms: first-best utilization, welfare,
//! the effect of a reserve penalty, and a generic incentive-compatibility
//! probe.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::economy::{Economy, MultiEconomy};
use crate::experiments::derive_seed;
use crate::model::{TwoPartPayment, ValueModel};
use crate::multi::{max_weight_assignment, MultiOutcome, MAX_RESOURCES};
use crate::numerics::gamma_upper_zero;
use crate::single::{pick_max, Outcome};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelfareReport {
    pub agent_welfare: f64,
    pub utilization: f64,
    pub social_welfare: f64,
    pub c: f64,
}

impl WelfareReport {
    /// Welfare of an agent facing penalty `c`, where the penalty is worth
    /// `c` to society whenever the resource is used.
    pub fn new(m: &ValueModel, c: f64) -> Self {
        let agent_welfare = m.agent_welfare(c);
        let utilization = m.utilization(c);
        Self { agent_welfare, utilization, social_welfare: agent_welfare + c * utilization, c }
    }
}

pub fn first_best_single(e: &Economy) -> Result<f64> {
    let mut best: f64 = 0.0;
    for m in e.agents() {
        best = best.max(m.first_best()?.utilization());
    }
    Ok(best)
}

/// Best total first-best utilization over injective assignments.
pub fn first_best_multi(me: &MultiEconomy) -> Result<f64> {
    if me.n_resources() > MAX_RESOURCES {
        return Err(Error::ScaleLimit { what: "resource count", limit: MAX_RESOURCES, got: me.n_resources() });
    }
    let weights = me
        .models()
        .iter()
        .map(|row| row.iter().map(|m| Ok(m.first_best()?.utilization())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let order: Vec<usize> = (0..me.n_agents()).collect();
    Ok(max_weight_assignment(&weights, me.n_resources(), &order).total)
}

pub fn agent_welfare(m: &ValueModel, z: f64) -> f64 {
    m.agent_welfare(z)
}

/// Second price auction with fixed penalty `c` where bids may be negative
/// and the highest bidder is always served.
pub fn run_spc_welfare(e: &Economy, c: f64, seed: u64) -> Result<(Outcome, WelfareReport)> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("C = {c} must be finite and ≥ 0")));
    }
    let bids: Vec<f64> = e.agents().iter().map(|m| m.bid_spc(c, true)).collect();
    let all: Vec<usize> = (0..e.len()).collect();
    let winner = pick_max(&bids, &all, &mut ChaCha8Rng::seed_from_u64(seed)).expect("economy is non-empty");
    let second = bids
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != winner)
        .map(|(_, &b)| b)
        .fold(f64::NEG_INFINITY, f64::max);
    let upfront = if e.len() > 1 { second } else { 0.0 };
    let report = WelfareReport::new(e.agent(winner), c);
    Ok((Outcome::allocated(e, winner, TwoPartPayment::new(c, upfront), bids), report))
}

/// Single-agent type distributions used in the reserve-penalty study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ReserveFamily {
    /// `1/λ ~ U[0, L]`, `w ~ U[0, 1/λ]`.
    Exponential { l: f64 },
    /// `a ~ U[0, 1]`, `b ~ U[0, a/2]`, `V ~ U[-(a-b), b]`.
    Uniform,
}

impl ReserveFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            Self::Exponential { l } if !(l > 0.0 && l.is_finite()) => {
                Err(Error::InvalidParameter(format!("L = {l} must be finite and > 0")))
            }
            _ => Ok(()),
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> ValueModel {
        loop {
            let m = match *self {
                Self::Exponential { l } => {
                    let eta = rng.gen_range(0.0..l);
                    let w = rng.gen_range(0.0..=eta);
                    ValueModel::exponential(w, 1.0 / eta)
                }
                Self::Uniform => {
                    let a: f64 = rng.gen_range(0.0..1.0);
                    let b = rng.gen_range(0.0..=a / 2.0);
                    ValueModel::uniform(a - b, b)
                }
            };
            if m.validate().is_empty() {
                return m;
            }
        }
    }
}

/// Closed-form expected gain in utilization from posting reserve penalty
/// `r` to a single agent drawn from `family`.
pub fn analytic_reserve_gain(family: ReserveFamily, r: f64) -> Result<f64> {
    family.validate()?;
    if r == 0.0 {
        return Ok(0.0);
    }
    match family {
        ReserveFamily::Exponential { l } => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Domain(format!("reserve r = {r} must be > 0")));
            }
            let x = r / l;
            Ok((-1.0 + (-x).exp() - x * gamma_upper_zero(x)?) / std::f64::consts::E)
        }
        ReserveFamily::Uniform => {
            if !(r > 0.0 && r <= 0.5) {
                return Err(Error::Domain(format!("reserve r = {r} must lie in (0, 1/2]")));
            }
            Ok(r * (-r + std::f64::consts::LN_2 + r.ln()))
        }
    }
}

const SHARD: usize = 1 << 16;

/// Monte Carlo estimate of [`analytic_reserve_gain`]: mean and standard
/// error over `trials` sampled agents. Trials are split into fixed shards
/// with derived seeds and merged in shard order.
pub fn numeric_reserve_gain(family: ReserveFamily, r: f64, trials: usize, seed: u64) -> Result<(f64, f64)> {
    family.validate()?;
    if trials < 10_000 {
        return Err(Error::InvalidParameter(format!("trials = {trials} must be at least 10000")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("reserve r = {r} must be ≥ 0")));
    }
    let shards = trials.div_ceil(SHARD);
    let sums: Vec<(f64, f64)> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let count = SHARD.min(trials - s * SHARD);
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, s as u64));
            let (mut sum, mut sq) = (0.0, 0.0);
            for _ in 0..count {
                let m = family.sample(&mut rng);
                let free = m.utilization(0.0);
                let z0 = m.zero_crossing().expect("sampled models are valid");
                let g = if z0 >= r { m.utilization(r) - free } else { -free };
                sum += g;
                sq += g * g;
            }
            (sum, sq)
        })
        .collect();
    let (sum, sq) = sums.iter().fold((0.0, 0.0), |(a, b), &(s, q)| (a + s, b + q));
    let n = trials as f64;
    let mean = sum / n;
    let var = ((sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

/// Largest gain in agent `i`'s true expected utility from reporting one of
/// `alternates` instead of her true model.
pub fn dsic_probe<F>(run: F, e: &Economy, i: usize, alternates: &[ValueModel]) -> Result<f64>
where
    F: Fn(&Economy) -> Result<Outcome>,
{
    let truth = e.agent(i);
    let honest = run(e)?.utility_of(i, truth);
    alternates.iter().try_fold(f64::NEG_INFINITY, |best, alt| {
        let lie = run(&e.with_agent(i, alt.clone())?)?.utility_of(i, truth);
        Ok(best.max(lie - honest))
    })
}

/// [`dsic_probe`] for multi-resource mechanisms; each alternate is a full
/// row of per-resource models.
pub fn dsic_probe_multi<F>(run: F, me: &MultiEconomy, i: usize, alternates: &[Vec<ValueModel>]) -> Result<f64>
where
    F: Fn(&MultiEconomy) -> Result<MultiOutcome>,
{
    let truth = me.row(i);
    let honest = run(me)?.utility_of(i, truth);
    alternates.iter().try_fold(f64::NEG_INFINITY, |best, alt| {
        let lie = run(&me.with_row(i, alt.clone())?)?.utility_of(i, truth);
        Ok(best.max(lie - honest))
    })
}
