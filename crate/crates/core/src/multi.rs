//! Multi-resource mechanisms: the contingent (m+1)-th price mechanism for
//! identical resources, VCG with an optional fixed penalty, the generalized
//! contingent second price mechanism (GCSP) built on minimum
//! competitive-equilibrium penalties, and first-come-first-served.


use rand::seq::SliceRandom;
use rustc_hash::FxHashMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::economy::{Economy, MultiEconomy};
use crate::model::{TwoPartPayment, ValueModel};
use crate::single::pick_max;
use crate::{Error, Result, TIE_TOL, VALUE_TOL};

/// Largest resource count handled by the exact assignment routines.
pub const MAX_RESOURCES: usize = 6;
/// Largest agent count supported by the bitmask recursion.
pub const MAX_AGENTS: usize = 64;

/// Agent → assigned resource.
pub type Assignment = Vec<Option<usize>>;

/// Posted per-resource penalties.
#[derive(Debug, Clone, PartialEq)]
pub struct CePrices {
    pub penalties: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiOutcome {
    pub assignment: Assignment,
    /// Payment faced by each agent (zero for unassigned agents).
    pub payments: Vec<TwoPartPayment>,
    /// Penalty posted on each resource (zero when unassigned).
    pub penalties: Vec<f64>,
    pub per_agent_utilization: Vec<f64>,
    pub total_utilization: f64,
    pub expected_revenue: f64,
    pub agent_utilities: Vec<f64>,
}

impl MultiOutcome {
    fn build<'a, F>(model: F, assignment: Assignment, payments: Vec<TwoPartPayment>, n_resources: usize) -> Self
    where
        F: Fn(usize, usize) -> &'a ValueModel,
    {
        let n = assignment.len();
        let mut penalties = vec![0.0; n_resources];
        let mut per_agent_utilization = vec![0.0; n];
        let mut agent_utilities = vec![0.0; n];
        let mut expected_revenue = 0.0;
        for (i, slot) in assignment.iter().enumerate() {
            if let Some(a) = *slot {
                let m = model(i, a);
                let pay = payments[i];
                penalties[a] = pay.penalty;
                per_agent_utilization[i] = m.utilization(pay.penalty);
                agent_utilities[i] = m.utility_two_part(pay);
                expected_revenue += m.revenue(pay);
            }
        }
        Self {
            total_utilization: per_agent_utilization.iter().sum(),
            assignment,
            payments,
            penalties,
            per_agent_utilization,
            expected_revenue,
            agent_utilities,
        }
    }

    /// Expected utility of agent `i` with true models `row` (one per resource).
    pub fn utility_of(&self, i: usize, row: &[ValueModel]) -> f64 {
        match self.assignment[i] {
            Some(a) => row[a].utility_two_part(self.payments[i]),
            None => 0.0,
        }
    }
}

/// Identical resources: the `m` highest zero crossings win and each pays the
/// `(m+1)`-th highest as penalty. Resource `k` goes to the `k`-th ranked agent.
pub fn run_m_plus_1(e: &Economy, m: usize, seed: u64) -> Result<MultiOutcome> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bids = e.zero_crossings();
    let mut remaining: Vec<usize> = (0..e.len()).collect();
    let mut ranked = Vec::with_capacity(m);
    while ranked.len() < m {
        let Some(i) = pick_max(bids, &remaining, &mut rng) else { break };
        ranked.push(i);
        remaining.retain(|&j| j != i);
    }
    let price = remaining.iter().map(|&i| bids[i]).fold(0.0, f64::max);
    let mut assignment = vec![None; e.len()];
    let mut payments = vec![TwoPartPayment::ZERO; e.len()];
    for (slot, &i) in ranked.iter().enumerate() {
        assignment[i] = Some(slot);
        payments[i] = TwoPartPayment::penalty(price);
    }
    Ok(MultiOutcome::build(|i, _| e.agent(i), assignment, payments, m))
}

/// Options an agent would accept at the given per-resource utilities:
/// indices of resources within tolerance of her best, plus `None` when
/// staying out is also optimal.
fn demand(utilities: &[f64]) -> (Vec<usize>, bool) {
    let best = utilities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let set = if best >= -VALUE_TOL {
        (0..utilities.len()).filter(|&a| utilities[a] >= best - TIE_TOL).collect()
    } else {
        Vec::new()
    };
    (set, best <= VALUE_TOL)
}

/// Whether `(prices, assignment)` is a competitive equilibrium: everyone
/// holds a utility-maximizing option, no resource is assigned twice and
/// unassigned resources are free.
pub fn check_ce(me: &MultiEconomy, prices: &CePrices, assignment: &[Option<usize>]) -> bool {
    let m = me.n_resources();
    if prices.penalties.len() != m || assignment.len() != me.n_agents() {
        return false;
    }
    let mut taken = vec![false; m];
    for a in assignment.iter().flatten() {
        if *a >= m || taken[*a] {
            return false;
        }
        taken[*a] = true;
    }
    if (0..m).any(|a| !taken[a] && prices.penalties[a].abs() > VALUE_TOL) {
        return false;
    }
    (0..me.n_agents()).all(|i| {
        let u: Vec<f64> = (0..m).map(|a| me.model(i, a).utility(prices.penalties[a])).collect();
        let (set, may_abstain) = demand(&u);
        match assignment[i] {
            Some(a) => set.contains(&a),
            None => may_abstain,
        }
    })
}

/// Backtracking search for an injective selection from each agent's demand
/// set that assigns every resource in `must_assign`. Options are tried in
/// the order given.
fn clear_market(options: &[Vec<Option<usize>>], n_resources: usize, must_assign: &[bool]) -> Option<Assignment> {
    fn go(
        i: usize,
        options: &[Vec<Option<usize>>],
        taken: &mut [bool],
        must_assign: &[bool],
        out: &mut Assignment,
    ) -> bool {
        if i == options.len() {
            return must_assign.iter().zip(taken.iter()).all(|(&need, &t)| !need || t);
        }
        for &opt in &options[i] {
            match opt {
                Some(a) if taken[a] => continue,
                Some(a) => {
                    taken[a] = true;
                    out[i] = Some(a);
                    if go(i + 1, options, taken, must_assign, out) {
                        return true;
                    }
                    taken[a] = false;
                }
                None => {
                    out[i] = None;
                    if go(i + 1, options, taken, must_assign, out) {
                        return true;
                    }
                }
            }
        }
        false
    }
    let mut taken = vec![false; n_resources];
    let mut out = vec![None; options.len()];
    go(0, options, &mut taken, must_assign, &mut out).then_some(out)
}

fn demand_options(utilities: &[f64]) -> Vec<Option<usize>> {
    let (set, may_abstain) = demand(utilities);
    let mut opts: Vec<Option<usize>> = set.into_iter().map(Some).collect();
    if may_abstain {
        opts.push(None);
    }
    opts
}

/// Recursive computation of agent-specific critical penalties.
///
/// For agent `i` and resource `j`, solve the economy without `i` and `j`;
/// `i`'s penalty for `j` is the smallest `z ≥ 0` at which no other agent
/// prefers `j` at `z` over what she gets in that smaller economy.
struct CriticalPenalties<'a> {
    me: &'a MultiEconomy,
    z0: Vec<Vec<f64>>,
    memo: FxHashMap<(u64, u8), Vec<f64>>,
    prices: FxHashMap<(u64, u8, usize), f64>,
}

impl<'a> CriticalPenalties<'a> {
    fn new(me: &'a MultiEconomy) -> Result<Self> {
        let z0 = me
            .models()
            .iter()
            .map(|row| row.iter().map(ValueModel::zero_crossing).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(Self { me, z0, memo: FxHashMap::default(), prices: FxHashMap::default() })
    }

    fn members(mut mask: u64) -> impl Iterator<Item = usize> {
        std::iter::from_fn(move || {
            (mask != 0).then(|| {
                let i = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                i
            })
        })
    }

    /// `z[i][j]` for `i` in `agents`, `j` in `resources` (others left at 0).
    fn penalties(&mut self, agents: u64, resources: u8) -> Vec<Vec<f64>> {
        let n = self.me.n_agents();
        let m = self.me.n_resources();
        let mut z = vec![vec![0.0; m]; n];
        for i in Self::members(agents) {
            for j in Self::members(resources as u64) {
                let rest = agents & !(1 << i);
                if rest == 0 {
                    continue;
                }
                z[i][j] = self.price(rest, resources & !(1 << j), j);
            }
        }
        z
    }

    /// Smallest penalty on `j` at which no member of `rest` prefers `j` to
    /// her outcome in `(rest, sub_resources)`.
    fn price(&mut self, rest: u64, sub_resources: u8, j: usize) -> f64 {
        if let Some(&p) = self.prices.get(&(rest, sub_resources, j)) {
            return p;
        }
        let sub = self.utilities(rest, sub_resources);
        let mut price: f64 = 0.0;
        for k in Self::members(rest) {
            let q = if sub[k] == 0.0 { self.z0[k][j] } else { self.me.model(k, j).critical_penalty(sub[k]) };
            price = price.max(q);
        }
        self.prices.insert((rest, sub_resources, j), price);
        price
    }

    /// Each member's utility in the sub-economy `(agents, resources)`.
    fn utilities(&mut self, agents: u64, resources: u8) -> Vec<f64> {
        let n = self.me.n_agents();
        if resources == 0 || agents == 0 {
            return vec![0.0; n];
        }
        if let Some(v) = self.memo.get(&(agents, resources)) {
            return v.clone();
        }
        let z = self.penalties(agents, resources);
        let mut pi = vec![0.0; n];
        for i in Self::members(agents) {
            let best = Self::members(resources as u64)
                .map(|j| self.me.model(i, j).utility(z[i][j]))
                .fold(0.0, f64::max);
            pi[i] = best;
        }
        self.memo.insert((agents, resources), pi.clone());
        pi
    }
}

fn check_scale(me: &MultiEconomy) -> Result<()> {
    if me.n_resources() > MAX_RESOURCES {
        return Err(Error::ScaleLimit { what: "resource count", limit: MAX_RESOURCES, got: me.n_resources() });
    }
    if me.n_agents() > MAX_AGENTS {
        return Err(Error::ScaleLimit { what: "agent count", limit: MAX_AGENTS, got: me.n_agents() });
    }
    Ok(())
}

fn min_ce_seeded(me: &MultiEconomy, rng: Option<&mut ChaCha8Rng>) -> Result<(CePrices, Assignment)> {
    check_scale(me)?;
    let n = me.n_agents();
    let m = me.n_resources();
    let mut solver = CriticalPenalties::new(me)?;
    let all_agents = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let all_resources = ((1u16 << m) - 1) as u8;
    let z = solver.penalties(all_agents, all_resources);

    let mut options: Vec<Vec<Option<usize>>> = (0..n)
        .map(|i| {
            let u: Vec<f64> = (0..m).map(|j| me.model(i, j).utility(z[i][j])).collect();
            demand_options(&u)
        })
        .collect();
    if let Some(rng) = rng {
        for o in &mut options {
            o.shuffle(rng);
        }
    }
    let assignment = clear_market(&options, m, &vec![false; m]).ok_or(Error::NoMarketClearing)?;
    let mut penalties = vec![0.0; m];
    for (i, a) in assignment.iter().enumerate() {
        if let Some(a) = *a {
            penalties[a] = z[i][a];
        }
    }
    Ok((CePrices { penalties }, assignment))
}

/// Minimum competitive-equilibrium penalties and a clearing assignment.
pub fn min_ce_prices(me: &MultiEconomy) -> Result<(CePrices, Assignment)> {
    min_ce_seeded(me, None)
}

/// Exhaustive grid scan for the smallest penalty vector admitting a
/// competitive equilibrium. Oracle for [`min_ce_prices`].
pub fn brute_force_min_ce(me: &MultiEconomy, grid_step: f64, z_max: f64) -> Result<CePrices> {
    let m = me.n_resources();
    if m > 3 {
        return Err(Error::ScaleLimit { what: "resource count", limit: 3, got: m });
    }
    if !(grid_step > 0.0) || !(z_max >= 0.0) {
        return Err(Error::InvalidParameter("grid_step must be > 0 and z_max ≥ 0".into()));
    }
    let k_max = (z_max / grid_step + 1e-9).floor() as usize;
    let n = me.n_agents();
    let mut idx = vec![0usize; m];
    for total in 0..=m * k_max {
        let mut found = None;
        compositions(total, k_max, n, &mut idx, 0, &mut |idx| {
            let penalties: Vec<f64> = idx.iter().map(|&k| k as f64 * grid_step).collect();
            if admits_ce(me, &penalties) {
                found = Some(penalties);
                true
            } else {
                false
            }
        });
        if let Some(penalties) = found {
            return Ok(CePrices { penalties });
        }
    }
    Err(Error::Domain(format!("no competitive equilibrium on the grid up to {z_max}")))
}

/// Visit every vector in `[0, k_max]^len` summing to `total` with at most
/// `nonzero` positive entries; stops early when `visit` returns true.
fn compositions<F: FnMut(&[usize]) -> bool>(
    total: usize,
    k_max: usize,
    nonzero: usize,
    idx: &mut Vec<usize>,
    pos: usize,
    visit: &mut F,
) -> bool {
    if pos + 1 == idx.len() {
        if total > k_max || (total > 0 && nonzero == 0) {
            return false;
        }
        idx[pos] = total;
        return visit(idx);
    }
    for k in 0..=total.min(k_max) {
        if k > 0 && nonzero == 0 {
            break;
        }
        idx[pos] = k;
        if compositions(total - k, k_max, nonzero - usize::from(k > 0), idx, pos + 1, visit) {
            return true;
        }
    }
    false
}

fn admits_ce(me: &MultiEconomy, penalties: &[f64]) -> bool {
    let m = me.n_resources();
    let options: Vec<Vec<Option<usize>>> = (0..me.n_agents())
        .map(|i| {
            let u: Vec<f64> = (0..m).map(|a| me.model(i, a).utility(penalties[a])).collect();
            demand_options(&u)
        })
        .collect();
    let must: Vec<bool> = penalties.iter().map(|&z| z.abs() > VALUE_TOL).collect();
    clear_market(&options, m, &must).is_some()
}

/// Generalized contingent second price: post the minimum CE penalties and
/// give each agent her preferred resource. Ties among clearing assignments
/// are explored in a seeded order.
pub fn run_gcsp(me: &MultiEconomy, seed: u64) -> Result<MultiOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (prices, assignment) = min_ce_seeded(me, Some(&mut rng))?;
    let payments = assignment
        .iter()
        .map(|a| a.map_or(TwoPartPayment::ZERO, |a| TwoPartPayment::penalty(prices.penalties[a])))
        .collect();
    Ok(MultiOutcome::build(|i, a| me.model(i, a), assignment, payments, me.n_resources()))
}

/// Max-weight injective assignment by dynamic programming over resource
/// subsets. Returns the optimum, the assignment, and for each agent the
/// optimum of the economy without her.
pub(crate) struct AssignmentSolution {
    pub total: f64,
    pub assignment: Assignment,
    pub without: Vec<f64>,
}

pub(crate) fn max_weight_assignment(weights: &[Vec<f64>], m: usize, order: &[usize]) -> AssignmentSolution {
    let n = weights.len();
    let full = (1usize << m) - 1;
    let states = 1usize << m;
    // prefix[k][mask]: best using the first k agents of `order` and only
    // resources in `mask`; choice records the resource taken by agent k-1.
    let mut prefix = vec![vec![0.0; states]; n + 1];
    let mut choice = vec![vec![None; states]; n + 1];
    for k in 0..n {
        let w = &weights[order[k]];
        for mask in 0..states {
            let mut best = prefix[k][mask];
            let mut pick = None;
            for a in 0..m {
                if mask >> a & 1 == 1 && w[a] > 0.0 {
                    let v = prefix[k][mask & !(1 << a)] + w[a];
                    if v > best {
                        best = v;
                        pick = Some(a);
                    }
                }
            }
            prefix[k + 1][mask] = best;
            choice[k + 1][mask] = pick;
        }
    }
    let mut suffix = vec![vec![0.0f64; states]; n + 1];
    for k in (0..n).rev() {
        let w = &weights[order[k]];
        for mask in 0..states {
            let mut best = suffix[k + 1][mask];
            for a in 0..m {
                if mask >> a & 1 == 1 && w[a] > 0.0 {
                    best = best.max(suffix[k + 1][mask & !(1 << a)] + w[a]);
                }
            }
            suffix[k][mask] = best;
        }
    }

    let mut assignment = vec![None; n];
    let mut mask = full;
    for k in (1..=n).rev() {
        if let Some(a) = choice[k][mask] {
            assignment[order[k - 1]] = Some(a);
            mask &= !(1 << a);
        }
    }
    let mut without = vec![0.0; n];
    for k in 0..n {
        without[order[k]] = (0..states)
            .map(|s| prefix[k][s] + suffix[k + 1][full & !s])
            .fold(f64::NEG_INFINITY, f64::max);
    }
    AssignmentSolution { total: prefix[n][full], assignment, without }
}

/// VCG on the assigned pairs, with every assigned agent facing the fixed
/// penalty `c`. Bids are `max(u(c), 0)` per resource.
pub fn run_vcg(me: &MultiEconomy, c: f64, seed: u64) -> Result<MultiOutcome> {
    check_scale(me)?;
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("C = {c} must be finite and ≥ 0")));
    }
    let n = me.n_agents();
    let m = me.n_resources();
    let weights: Vec<Vec<f64>> =
        (0..n).map(|i| (0..m).map(|a| me.model(i, a).bid_spc(c, false)).collect()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let sol = max_weight_assignment(&weights, m, &order);
    let payments = (0..n)
        .map(|i| match sol.assignment[i] {
            Some(a) => {
                let others = sol.total - weights[i][a];
                TwoPartPayment::new(c, sol.without[i] - others)
            }
            None => TwoPartPayment::ZERO,
        })
        .collect();
    Ok(MultiOutcome::build(|i, a| me.model(i, a), sol.assignment, payments, m))
}

/// First come first served with a seeded uniformly random arrival order.
pub fn run_fcfs(me: &MultiEconomy, seed: u64) -> MultiOutcome {
    let mut order: Vec<usize> = (0..me.n_agents()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    run_fcfs_with_order(me, &order)
}

/// First come first served in the given arrival order. Each arrival takes
/// the free resource she values most at zero penalty, lowest id on ties.
pub fn run_fcfs_with_order(me: &MultiEconomy, order: &[usize]) -> MultiOutcome {
    let m = me.n_resources();
    let mut free = vec![true; m];
    let mut assignment = vec![None; me.n_agents()];
    for &i in order {
        let mut best: Option<(usize, f64)> = None;
        for a in (0..m).filter(|&a| free[a]) {
            let u = me.model(i, a).bid_sp();
            if u > 0.0 && best.map_or(true, |(_, b)| u > b) {
                best = Some((a, u));
            }
        }
        if let Some((a, _)) = best {
            free[a] = false;
            assignment[i] = Some(a);
        }
    }
    let payments = vec![TwoPartPayment::ZERO; me.n_agents()];
    MultiOutcome::build(|i, a| me.model(i, a), assignment, payments, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example5() -> MultiEconomy {
        MultiEconomy::new(vec![
            vec![ValueModel::wp(200.0, 0.2), ValueModel::wp(20.0, 0.8)],
            vec![ValueModel::wp(50.0, 0.8), ValueModel::wp(80.0, 0.4)],
        ])
        .unwrap()
    }

    pub(crate) fn example6() -> MultiEconomy {
        MultiEconomy::new(vec![
            vec![ValueModel::wp(200.0, 0.2), ValueModel::wp(550.0, 0.1)],
            vec![ValueModel::wp(37.5, 0.8), ValueModel::wp(66.67, 0.6)],
        ])
        .unwrap()
    }

    #[test]
    fn m_plus_1_examples() {
        let e = Economy::new(vec![
            ValueModel::discrete(&[(100.0, 0.2), (-20.0, 0.4)], 0.4),
            ValueModel::discrete(&[(40.0, 0.4), (-10.0, 0.4)], 0.2),
        ])
        .unwrap();
        let o = run_m_plus_1(&e, 2, 0).unwrap();
        assert_eq!(o.payments, vec![TwoPartPayment::ZERO; 2]);
        assert!((o.total_utilization - 0.6).abs() < 1e-12);
        let o = run_m_plus_1(&e, 3, 0).unwrap();
        assert!(o.assignment.iter().all(Option::is_some));
        let o = run_m_plus_1(&e, 1, 0).unwrap();
        assert_eq!(o.assignment, vec![None, Some(0)]);
        assert!((o.penalties[0] - 30.0).abs() < 1e-12);
    }

    #[test]
    fn ce_check_examples() {
        let me = example5();
        let p = CePrices { penalties: vec![30.0, 0.0] };
        assert!(check_ce(&me, &p, &[Some(1), Some(0)]));
        let p = CePrices { penalties: vec![0.0, 0.0] };
        assert!(!check_ce(&me, &p, &[Some(1), Some(0)]));
        assert!(!check_ce(&me, &p, &[Some(0), Some(1)]));
        let one = MultiEconomy::new(vec![vec![ValueModel::wp(1.0, 0.5), ValueModel::wp(3.0, 0.5)]]).unwrap();
        assert!(check_ce(&one, &CePrices { penalties: vec![0.0, 0.0] }, &[Some(1)]));
    }

    #[test]
    fn min_ce_examples() {
        let (p, a) = min_ce_prices(&example5()).unwrap();
        assert!((p.penalties[0] - 30.0).abs() < 1e-9);
        assert!(p.penalties[1].abs() < 1e-9);
        assert_eq!(a, vec![Some(1), Some(0)]);

        let (p, a) = min_ce_prices(&example6()).unwrap();
        assert_eq!(a, vec![Some(0), Some(1)]);
        assert!(p.penalties[0].abs() < 1e-9);
        assert!((p.penalties[1] - 16.67).abs() < 0.01);

        let one = MultiEconomy::new(vec![vec![ValueModel::wp(1.0, 0.5), ValueModel::wp(3.0, 0.5)]]).unwrap();
        let (p, a) = min_ce_prices(&one).unwrap();
        assert_eq!(p.penalties, vec![0.0, 0.0]);
        assert_eq!(a, vec![Some(1)]);
    }

    #[test]
    fn brute_force_examples() {
        let p = brute_force_min_ce(&example5(), 0.5, 100.0).unwrap();
        assert_eq!(p.penalties, vec![30.0, 0.0]);
        let one = MultiEconomy::new(vec![vec![ValueModel::wp(1.0, 0.5), ValueModel::wp(3.0, 0.5)]]).unwrap();
        assert_eq!(brute_force_min_ce(&one, 0.1, 10.0).unwrap().penalties, vec![0.0, 0.0]);
        let single = MultiEconomy::new(vec![vec![ValueModel::wp(1.0, 0.5)], vec![ValueModel::wp(1.0, 0.6)]]).unwrap();
        // Zero crossings 1 and 1.5: the loser's bid, rounded up to the grid.
        assert!((brute_force_min_ce(&single, 0.25, 10.0).unwrap().penalties[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gcsp_examples() {
        assert!((run_gcsp(&example5(), 0).unwrap().total_utilization - 1.6).abs() < 1e-12);
        let o = run_gcsp(&example6(), 0).unwrap();
        assert!((o.total_utilization - 0.8).abs() < 1e-12);
        assert!((o.payments[1].penalty - 16.67).abs() < 0.01);
    }

    #[test]
    fn vcg_examples() {
        let o = run_vcg(&example5(), 0.0, 0).unwrap();
        assert_eq!(o.assignment, vec![Some(0), Some(1)]);
        assert!((o.total_utilization - 0.6).abs() < 1e-12);
        let o = run_vcg(&example6(), 0.0, 0).unwrap();
        assert_eq!(o.assignment, vec![Some(1), Some(0)]);
        assert!((o.payments[0].upfront - 10.0).abs() < 0.01);
        assert!(o.payments[1].upfront.abs() < 1e-9);
        assert!((o.total_utilization - 0.9).abs() < 1e-12);
        let one = MultiEconomy::new(vec![vec![ValueModel::wp(1.0, 0.5), ValueModel::wp(3.0, 0.5)]]).unwrap();
        let o = run_vcg(&one, 0.0, 0).unwrap();
        assert_eq!(o.assignment, vec![Some(1)]);
        assert_eq!(o.payments[0].upfront, 0.0);
    }

    #[test]
    fn fcfs_examples() {
        let me = example5();
        let o = run_fcfs_with_order(&me, &[0, 1]);
        assert_eq!(o.assignment, vec![Some(0), Some(1)]);
        assert!((o.total_utilization - 0.6).abs() < 1e-12);
        let o = run_fcfs_with_order(&me, &[1, 0]);
        assert_eq!(o.assignment, vec![Some(1), Some(0)]);
        assert!((o.total_utilization - 1.6).abs() < 1e-12);
        let one = MultiEconomy::new(vec![vec![ValueModel::wp(1.0, 0.5), ValueModel::wp(3.0, 0.5)]]).unwrap();
        assert_eq!(run_fcfs(&one, 3).assignment, vec![Some(1)]);
    }

    #[test]
    fn scale_limit() {
        let row = vec![ValueModel::wp(1.0, 0.5); 7];
        let me = MultiEconomy::new(vec![row.clone(), row]).unwrap();
        assert!(matches!(min_ce_prices(&me), Err(Error::ScaleLimit { .. })));
        assert!(matches!(run_vcg(&me, 0.0, 0), Err(Error::ScaleLimit { .. })));
    }
}
