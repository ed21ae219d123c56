//! Profile samplers, sweeps over many sampled profiles, paired comparisons
//! and CSV output.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::{first_best_multi, first_best_single, run_spc_welfare};
use crate::cmm::{run_cmm, CmmSpec};
use crate::economy::{default_label, p1p5_upper_bound, Economy, MultiEconomy};
use crate::model::ValueModel;
use crate::multi::{run_fcfs, run_gcsp, run_m_plus_1, run_vcg, MultiOutcome};
use crate::profile::Profile;
use crate::single::{run_single, Outcome, SingleMechanism};
use crate::{Error, Result};

/// Distribution of agent types.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// `1/λ ~ U[0, L]`, `w ~ U[0, 1/λ]`.
    Exponential { l: f64 },
    /// `a1 ~ U[0, a1_max]`, `a2 ~ U[0, a1]`.
    Uniform { a1_max: f64 },
    /// `w ~ U[0, w_max]`, `p ~ U[0, 1]`.
    Wp { w_max: f64 },
}

impl Family {
    fn scale(&self) -> f64 {
        match *self {
            Self::Exponential { l } => l,
            Self::Uniform { a1_max } => a1_max,
            Self::Wp { w_max } => w_max,
        }
    }

    pub fn tag(&self) -> String {
        match *self {
            Self::Exponential { l } => format!("exponential(L={l})"),
            Self::Uniform { a1_max } => format!("uniform(a1_max={a1_max})"),
            Self::Wp { w_max } => format!("wp(w_max={w_max})"),
        }
    }

    /// Draw one valid model, redrawing boundary samples.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> ValueModel {
        let mut rejected = 0usize;
        loop {
            let m = match *self {
                Self::Exponential { l } => {
                    let eta = rng.gen_range(0.0..l);
                    ValueModel::exponential(rng.gen_range(0.0..=eta), 1.0 / eta)
                }
                Self::Uniform { a1_max } => {
                    let a1 = rng.gen_range(0.0..a1_max);
                    ValueModel::uniform(a1, rng.gen_range(0.0..=a1))
                }
                Self::Wp { w_max } => ValueModel::wp(rng.gen_range(0.0..w_max), rng.gen_range(0.0..1.0)),
            };
            if m.validate().is_empty() && m.zero_crossing().is_ok() {
                if rejected > 0 {
                    log::debug!("{}: redrew {rejected} boundary sample(s)", self.tag());
                }
                return m;
            }
            rejected += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub family: Family,
    pub n_agents: usize,
    /// 1 samples a single-resource economy.
    pub n_resources: usize,
}

impl SamplerSpec {
    pub fn new(family: Family, n_agents: usize, n_resources: usize) -> Self {
        Self { family, n_agents, n_resources }
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.family.scale();
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter(format!("sampler scale {s} must be finite and > 0")));
        }
        if self.n_agents == 0 {
            return Err(Error::EmptyEconomy);
        }
        if self.n_resources == 0 {
            return Err(Error::InvalidParameter("n_resources must be at least 1".into()));
        }
        Ok(())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for work item `index` of a run with seed `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base) ^ index)
}

pub fn sample_profile(spec: &SamplerSpec, seed: u64) -> Result<Profile> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if spec.n_resources == 1 {
        let agents = (0..spec.n_agents).map(|_| spec.family.sample(&mut rng)).collect();
        Ok(Profile::Single(Economy::new(agents)?))
    } else {
        let rows = (0..spec.n_agents)
            .map(|_| (0..spec.n_resources).map(|_| spec.family.sample(&mut rng)).collect())
            .collect();
        Ok(Profile::Multi(MultiEconomy::new(rows)?))
    }
}

/// A mechanism or benchmark evaluated in sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Mechanism {
    Single(SingleMechanism),
    Cmm(CmmSpec),
    /// Single or multi-resource first-best utilization.
    FirstBest,
    /// Upper bound for mechanisms with the standard properties.
    P1p5Bound,
    /// Welfare-optimal fixed-penalty second price auction.
    SpcWelfare { c: f64 },
    MPlus1 { m: usize },
    Gcsp,
    Vcg { c: f64 },
    Fcfs,
}

impl Mechanism {
    pub fn tag(&self) -> String {
        match self {
            Self::Single(s) => match s {
                SingleMechanism::Sp => "sp",
                SingleMechanism::Spc { .. } => "spc",
                SingleMechanism::Csp => "csp",
                SingleMechanism::CspR { .. } => "cspr",
                SingleMechanism::GammaCsp { .. } => "gamma_csp",
                SingleMechanism::Random => "random",
            }
            .to_string(),
            Self::Cmm(spec) if spec.gamma1 == 1.0 && spec.gamma2 == 0.0 => "cmm".into(),
            Self::Cmm(spec) => format!("cmm_g{}_{}", spec.gamma1, spec.gamma2),
            Self::FirstBest => "firstbest".into(),
            Self::P1p5Bound => "p1p5".into(),
            Self::SpcWelfare { .. } => "spc_welfare".into(),
            Self::MPlus1 { .. } => "mplus1".into(),
            Self::Gcsp => "gcsp".into(),
            Self::Vcg { .. } => "vcg".into(),
            Self::Fcfs => "fcfs".into(),
        }
    }

    /// Name and value of the mechanism's parameter, if any.
    pub fn param(&self) -> Option<(&'static str, f64)> {
        match *self {
            Self::Single(SingleMechanism::Spc { c }) | Self::SpcWelfare { c } | Self::Vcg { c } => Some(("C", c)),
            Self::Single(SingleMechanism::CspR { r }) => Some(("R", r)),
            Self::Single(SingleMechanism::GammaCsp { gamma }) => Some(("gamma", gamma)),
            Self::Cmm(spec) => Some(("q", spec.q)),
            Self::MPlus1 { m } => Some(("m", m as f64)),
            _ => None,
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self, self.param()) {
            (Self::Cmm(spec), _) => write!(f, "cmm:{}:{}:{}", spec.q, spec.gamma1, spec.gamma2),
            (_, Some((_, v))) => write!(f, "{}:{v}", self.tag()),
            (_, None) => write!(f, "{}", self.tag()),
        }
    }
}

impl FromStr for Mechanism {
    type Err = Error;

    /// `sp`, `spc:C`, `csp`, `cspr:R`, `gamma:G`, `random`, `cmm:Q[:G1:G2]`,
    /// `firstbest`, `p1p5`, `spc_welfare:C`, `mplus1:M`, `gcsp`, `vcg[:C]`,
    /// `fcfs`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let args: Vec<&str> = parts.collect();
        let num = |k: usize| -> Result<f64> {
            let text = args.get(k).ok_or_else(|| Error::InvalidParameter(format!("mechanism `{s}` needs a parameter")))?;
            text.parse().map_err(|_| Error::InvalidParameter(format!("`{text}` in `{s}` is not a number")))
        };
        let opt = |k: usize, default: f64| if args.len() > k { num(k) } else { Ok(default) };
        let max_args = |k: usize| {
            if args.len() > k {
                Err(Error::InvalidParameter(format!("too many parameters in `{s}`")))
            } else {
                Ok(())
            }
        };
        let mech = match name.as_str() {
            "sp" => Self::Single(SingleMechanism::Sp),
            "spc" => Self::Single(SingleMechanism::Spc { c: num(0)? }),
            "csp" => Self::Single(SingleMechanism::Csp),
            "cspr" => Self::Single(SingleMechanism::CspR { r: num(0)? }),
            "gamma" | "gamma_csp" => Self::Single(SingleMechanism::GammaCsp { gamma: num(0)? }),
            "random" => Self::Single(SingleMechanism::Random),
            "cmm" => {
                max_args(3)?;
                Self::Cmm(CmmSpec::with_gammas(opt(0, 2.0)?, opt(1, 1.0)?, opt(2, 0.0)?))
            }
            "firstbest" | "fb" => Self::FirstBest,
            "p1p5" => Self::P1p5Bound,
            "spc_welfare" => Self::SpcWelfare { c: num(0)? },
            "mplus1" => {
                let m = num(0)?;
                if m < 1.0 || m.fract() != 0.0 {
                    return Err(Error::InvalidParameter(format!("m = {m} must be a positive integer")));
                }
                Self::MPlus1 { m: m as usize }
            }
            "gcsp" => Self::Gcsp,
            "vcg" => Self::Vcg { c: opt(0, 0.0)? },
            "fcfs" => Self::Fcfs,
            _ => return Err(Error::InvalidParameter(format!("unknown mechanism `{s}`"))),
        };
        match mech {
            Self::Cmm(spec) => spec.validate()?,
            _ => max_args(usize::from(mech.param().is_some()))?,
        }
        if let Self::Single(s) = mech {
            s.validate()?;
        }
        Ok(mech)
    }
}

/// Result of evaluating one mechanism on one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Human-readable winner description (1-based agent ids).
    pub winner: String,
    pub utilization: f64,
    pub revenue: f64,
}

fn single_winner(o: &Outcome) -> String {
    o.winner.map_or_else(|| "-".into(), |w| (w + 1).to_string())
}

fn multi_winner(o: &MultiOutcome, labels: &[String]) -> String {
    let pairs: Vec<String> = o
        .assignment
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.map(|a| format!("{}:{}", i + 1, labels[a])))
        .collect();
    if pairs.is_empty() {
        "-".into()
    } else {
        pairs.join(";")
    }
}

/// Full outcome of one mechanism on one profile.
#[derive(Debug, Clone, PartialEq)]
pub enum Detail {
    Single(Outcome),
    /// Outcome with the resource labels it refers to.
    Multi(MultiOutcome, Vec<String>),
    /// Utilization of a benchmark that does not allocate.
    Bound(f64),
}

impl Detail {
    pub fn evaluation(&self) -> Evaluation {
        match self {
            Self::Single(o) => {
                Evaluation { winner: single_winner(o), utilization: o.utilization, revenue: o.expected_revenue }
            }
            Self::Multi(o, labels) => Evaluation {
                winner: multi_winner(o, labels),
                utilization: o.total_utilization,
                revenue: o.expected_revenue,
            },
            Self::Bound(u) => Evaluation { winner: "-".into(), utilization: *u, revenue: 0.0 },
        }
    }
}

pub fn run_mechanism(mech: &Mechanism, profile: &Profile, seed: u64) -> Result<Detail> {
    match profile {
        Profile::Single(e) => match *mech {
            Mechanism::Single(s) => Ok(Detail::Single(run_single(s, e, seed)?)),
            Mechanism::Cmm(spec) => Ok(Detail::Single(run_cmm(e, spec, seed)?)),
            Mechanism::FirstBest => Ok(Detail::Bound(first_best_single(e)?)),
            Mechanism::P1p5Bound => Ok(Detail::Bound(p1p5_upper_bound(e))),
            Mechanism::SpcWelfare { c } => Ok(Detail::Single(run_spc_welfare(e, c, seed)?.0)),
            Mechanism::MPlus1 { m } => {
                let labels = (0..m).map(default_label).collect();
                Ok(Detail::Multi(run_m_plus_1(e, m, seed)?, labels))
            }
            Mechanism::Gcsp | Mechanism::Vcg { .. } | Mechanism::Fcfs => {
                run_mechanism(mech, &Profile::Multi(MultiEconomy::duplicated(e, 1)?), seed)
            }
        },
        Profile::Multi(me) => {
            let multi = |o| Detail::Multi(o, me.resources().to_vec());
            match *mech {
                Mechanism::Gcsp => Ok(multi(run_gcsp(me, seed)?)),
                Mechanism::Vcg { c } => Ok(multi(run_vcg(me, c, seed)?)),
                Mechanism::Fcfs => Ok(multi(run_fcfs(me, seed))),
                Mechanism::FirstBest => Ok(Detail::Bound(first_best_multi(me)?)),
                _ => Err(Error::InvalidParameter(format!("{mech} needs a single-resource profile"))),
            }
        }
    }
}

pub fn evaluate(mech: &Mechanism, profile: &Profile, seed: u64) -> Result<Evaluation> {
    run_mechanism(mech, profile, seed).map(|d| d.evaluation())
}

/// One row of sweep output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub profile_id: u64,
    pub seed: u64,
    pub mechanism: String,
    pub param_name: String,
    pub param_value: Option<f64>,
    pub n_agents: usize,
    pub n_resources: usize,
    pub winner: String,
    pub utilization: f64,
    pub revenue: f64,
    pub runtime_ns: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SweepOptions {
    /// Record wall-clock time per evaluation. Off by default so that
    /// repeated runs produce identical output.
    pub timing: bool,
}

pub fn run_sweep(spec: &SamplerSpec, mechanisms: &[Mechanism], n_profiles: usize, base_seed: u64) -> Result<Vec<SweepRecord>> {
    run_sweep_with(spec, mechanisms, n_profiles, base_seed, SweepOptions::default())
}

pub fn run_sweep_with(
    spec: &SamplerSpec,
    mechanisms: &[Mechanism],
    n_profiles: usize,
    base_seed: u64,
    options: SweepOptions,
) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    if n_profiles == 0 {
        return Err(Error::InvalidParameter("n_profiles must be at least 1".into()));
    }
    let per_profile: Vec<Vec<SweepRecord>> = (0..n_profiles as u64)
        .into_par_iter()
        .map(|p| {
            let seed = derive_seed(base_seed, p);
            let profile = sample_profile(spec, seed)?;
            mechanisms
                .iter()
                .map(|mech| {
                    let start = Instant::now();
                    let ev = evaluate(mech, &profile, seed)?;
                    let runtime_ns = if options.timing { start.elapsed().as_nanos() as u64 } else { 0 };
                    let (param_name, param_value) = match mech.param() {
                        Some((n, v)) => (n.to_string(), Some(v)),
                        None => (String::new(), None),
                    };
                    Ok(SweepRecord {
                        profile_id: p,
                        seed,
                        mechanism: mech.tag(),
                        param_name,
                        param_value,
                        n_agents: spec.n_agents,
                        n_resources: spec.n_resources,
                        winner: ev.winner,
                        utilization: ev.utilization,
                        revenue: ev.revenue,
                        runtime_ns,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_profile.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(out: W, records: &[SweepRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Profile(format!("writing CSV: {e}"));
    if records.is_empty() {
        w.write_record([
            "profile_id", "seed", "mechanism", "param_name", "param_value", "n_agents", "n_resources", "winner",
            "utilization", "revenue", "runtime_ns",
        ])
        .map_err(io)?;
    }
    for r in records {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Profile(format!("writing CSV: {e}")))
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<SweepRecord>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Profile(format!("reading CSV: {e}")))
}

/// Mean and standard error of a sample.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub mechanism: String,
    pub param_name: String,
    pub param_value: Option<f64>,
    pub n_agents: usize,
    pub n_resources: usize,
    pub count: usize,
    pub utilization: (f64, f64),
    pub revenue: (f64, f64),
}

/// Mean ± standard error per (mechanism, parameter, size), in order of first
/// appearance.
pub fn summarize(records: &[SweepRecord]) -> Vec<Summary> {
    type Key = (String, String, Option<u64>, usize, usize);
    let mut order: Vec<Key> = Vec::new();
    let mut groups: HashMap<Key, (Vec<f64>, Vec<f64>)> = HashMap::new();
    for r in records {
        let key = (r.mechanism.clone(), r.param_name.clone(), r.param_value.map(f64::to_bits), r.n_agents, r.n_resources);
        let entry = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            (Vec::new(), Vec::new())
        });
        entry.0.push(r.utilization);
        entry.1.push(r.revenue);
    }
    order
        .into_iter()
        .map(|key| {
            let (u, v) = &groups[&key];
            Summary {
                mechanism: key.0,
                param_name: key.1,
                param_value: key.2.map(f64::from_bits),
                n_agents: key.3,
                n_resources: key.4,
                count: u.len(),
                utilization: mean_stderr(u),
                revenue: mean_stderr(v),
            }
        })
        .collect()
}

/// Profile-by-profile comparison of two mechanisms.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub frac_a_strict: f64,
    pub frac_b_strict: f64,
    /// `(profile_id, utilization_a, utilization_b)`.
    pub pairs: Vec<(u64, f64, f64)>,
}

impl Comparison {
    /// Mean and standard error of `utilization_a - utilization_b`.
    pub fn difference(&self) -> (f64, f64) {
        let d: Vec<f64> = self.pairs.iter().map(|&(_, a, b)| a - b).collect();
        mean_stderr(&d)
    }
}

pub const STRICT_TOL: f64 = 1e-9;

pub fn compare_mechanisms(a: &[SweepRecord], b: &[SweepRecord]) -> Result<Comparison> {
    type Key = (u64, u64, usize, usize);
    let key = |r: &SweepRecord| -> Key { (r.profile_id, r.seed, r.n_agents, r.n_resources) };
    let index: HashMap<Key, f64> = b.iter().map(|r| (key(r), r.utilization)).collect();
    if a.len() != b.len() || index.len() != b.len() {
        return Err(Error::MismatchedProfiles);
    }
    let pairs = a
        .iter()
        .map(|r| index.get(&key(r)).map(|&ub| (r.profile_id, r.utilization, ub)).ok_or(Error::MismatchedProfiles))
        .collect::<Result<Vec<_>>>()?;
    let n = pairs.len().max(1) as f64;
    let frac_a_strict = pairs.iter().filter(|p| p.1 > p.2 + STRICT_TOL).count() as f64 / n;
    let frac_b_strict = pairs.iter().filter(|p| p.2 > p.1 + STRICT_TOL).count() as f64 / n;
    Ok(Comparison { frac_a_strict, frac_b_strict, pairs })
}

/// Records of one mechanism tag (and parameter value, if given).
pub fn select(records: &[SweepRecord], mechanism: &Mechanism) -> Vec<SweepRecord> {
    let tag = mechanism.tag();
    let value = mechanism.param().map(|p| p.1);
    records.iter().filter(|r| r.mechanism == tag && r.param_value == value).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let spec = SamplerSpec::new(Family::Exponential { l: 10.0 }, 5, 1);
        let a = sample_profile(&spec, 42).unwrap();
        assert_eq!(a, sample_profile(&spec, 42).unwrap());
        assert_ne!(a, sample_profile(&spec, 43).unwrap());
        let Profile::Single(e) = a else { panic!() };
        for m in e.agents() {
            let ValueModel::Exponential { w, lambda } = *m else { panic!() };
            assert!(w < 1.0 / lambda && 1.0 / lambda <= 10.0);
        }
    }

    #[test]
    fn wp_sampler_stays_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let ValueModel::Wp { w, p } = Family::Wp { w_max: 1.0 }.sample(&mut rng) else { panic!() };
            assert!(p > 0.0 && p < 1.0 && w > 0.0);
        }
    }

    #[test]
    fn mechanism_parsing() {
        for s in ["sp", "spc:1", "csp", "cspr:2.5", "gamma:0.25", "random", "cmm:2", "cmm:2:1:0.5", "firstbest", "p1p5",
            "spc_welfare:1", "mplus1:3", "gcsp", "vcg", "vcg:1", "fcfs"]
        {
            let m: Mechanism = s.parse().unwrap();
            let again: Mechanism = m.to_string().parse().unwrap();
            assert_eq!(m, again, "{s}");
        }
        assert!("spc".parse::<Mechanism>().is_err());
        assert!("gamma:2".parse::<Mechanism>().is_err());
        assert!("nope".parse::<Mechanism>().is_err());
        assert!("csp:1".parse::<Mechanism>().is_err());
    }

    #[test]
    fn sweep_is_reproducible() {
        let spec = SamplerSpec::new(Family::Exponential { l: 10.0 }, 4, 1);
        let mechs: Vec<Mechanism> = ["sp", "csp", "random"].iter().map(|s| s.parse().unwrap()).collect();
        let a = run_sweep(&spec, &mechs, 50, 9).unwrap();
        let b = run_sweep(&spec, &mechs, 50, 9).unwrap();
        assert_eq!(a.len(), 150);
        let (mut ca, mut cb) = (Vec::new(), Vec::new());
        write_csv(&mut ca, &a).unwrap();
        write_csv(&mut cb, &b).unwrap();
        assert_eq!(ca, cb);
        assert_eq!(read_csv(&ca[..]).unwrap(), a);
        let header = String::from_utf8(ca).unwrap();
        assert!(header.starts_with(
            "profile_id,seed,mechanism,param_name,param_value,n_agents,n_resources,winner,utilization,revenue,runtime_ns\n"
        ));
    }

    #[test]
    fn comparison_fractions() {
        let spec = SamplerSpec::new(Family::Exponential { l: 10.0 }, 3, 1);
        let mechs: Vec<Mechanism> = ["sp", "csp"].iter().map(|s| s.parse().unwrap()).collect();
        let recs = run_sweep(&spec, &mechs, 200, 1).unwrap();
        let sp = select(&recs, &mechs[0]);
        let csp = select(&recs, &mechs[1]);
        let c = compare_mechanisms(&csp, &sp).unwrap();
        assert_eq!(c.frac_b_strict, 0.0);
        assert!(c.frac_a_strict > 0.0);
        let same = compare_mechanisms(&csp, &csp).unwrap();
        assert_eq!((same.frac_a_strict, same.frac_b_strict), (0.0, 0.0));
        assert_eq!(compare_mechanisms(&csp, &sp[..10]).unwrap_err(), Error::MismatchedProfiles);
    }

    #[test]
    fn multi_sweep_records_assignments() {
        let spec = SamplerSpec::new(Family::Exponential { l: 10.0 }, 4, 3);
        let mechs: Vec<Mechanism> = ["gcsp", "vcg", "fcfs", "firstbest"].iter().map(|s| s.parse().unwrap()).collect();
        let recs = run_sweep(&spec, &mechs, 20, 0).unwrap();
        assert!(recs.iter().filter(|r| r.mechanism == "gcsp").all(|r| r.winner.contains(':')));
        assert!("csp".parse::<Mechanism>().map(|m| evaluate(&m, &sample_profile(&spec, 0).unwrap(), 0)).unwrap().is_err());
    }
}
