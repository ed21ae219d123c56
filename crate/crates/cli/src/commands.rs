use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use contingent_core::benchmarks::{analytic_reserve_gain, numeric_reserve_gain, ReserveFamily};
use contingent_core::experiments::{
    compare_mechanisms, run_mechanism, run_sweep_with, sample_profile, select, summarize, write_csv, Detail,
    Mechanism, SamplerSpec, SweepOptions, SweepRecord,
};
use contingent_core::profile::{self, Profile};
use contingent_core::{MultiOutcome, Outcome};

use crate::format::{describe, mean_se, num, parse_counts, parse_grid, table};
use crate::{CompareArgs, ReserveArgs, ReserveKind, RunArgs, SamplerArgs, SweepArgs, ValidateArgs};

const QUICK_PROFILES: usize = 500;
const QUICK_TRIALS: usize = 100_000;

fn parse_mechanism(s: &str) -> Result<Mechanism> {
    s.parse().with_context(|| format!("mechanism {s:?}"))
}

fn sampler(args: &SamplerArgs, n: usize) -> Result<SamplerSpec> {
    let Some(family) = args.family() else { bail!("--family is required") };
    let spec = SamplerSpec::new(family, n, args.m);
    spec.validate()?;
    Ok(spec)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

/// CSV to `path`, or standard output.
fn write_records(path: Option<&Path>, records: &[SweepRecord]) -> Result<()> {
    match path {
        Some(p) => write_csv(create(p)?, records)?,
        None => write_csv(io::stdout().lock(), records)?,
    }
    Ok(())
}

fn single_table(o: &Outcome) -> String {
    let rows: Vec<Vec<String>> = o
        .bids
        .iter()
        .zip(&o.agent_utilities)
        .enumerate()
        .map(|(i, (b, u))| vec![(i + 1).to_string(), num(*b), num(*u)])
        .collect();
    let mut out = table(&["agent", "bid", "utility"], &rows);
    let winner = o.winner.map_or_else(|| "none".into(), |w| (w + 1).to_string());
    out += table(
        &["", ""],
        &[
            vec!["winner".into(), winner],
            vec!["penalty".into(), num(o.payment.penalty)],
            vec!["upfront".into(), num(o.payment.upfront)],
            vec!["utilization".into(), num(o.utilization)],
            vec!["revenue".into(), num(o.expected_revenue)],
        ],
    )
    .trim_start();
    out
}

fn multi_table(o: &MultiOutcome, labels: &[String]) -> String {
    let prices: Vec<Vec<String>> = labels.iter().zip(&o.penalties).map(|(l, z)| vec![l.clone(), num(*z)]).collect();
    let mut out = table(&["resource", "penalty"], &prices);
    let rows: Vec<Vec<String>> = (0..o.assignment.len())
        .map(|i| {
            let resource = o.assignment[i].map_or_else(|| "-".into(), |a| labels[a].clone());
            vec![
                (i + 1).to_string(),
                resource,
                num(o.payments[i].penalty),
                num(o.payments[i].upfront),
                num(o.per_agent_utilization[i]),
                num(o.agent_utilities[i]),
            ]
        })
        .collect();
    out += "\n";
    out += &table(&["agent", "resource", "penalty", "upfront", "utilization", "utility"], &rows);
    out += "\n";
    out += &format!("total utilization  {}\nrevenue            {}\n", num(o.total_utilization), num(o.expected_revenue));
    out
}

pub fn run(args: RunArgs) -> Result<()> {
    let mech = parse_mechanism(&args.mechanism)?;
    let seed = args.sampler.seed;
    let profile = match (&args.profile, args.sampler.family()) {
        (Some(path), None) => profile::load(path)?,
        (None, Some(_)) => {
            let Some(n) = args.n else { bail!("--n is required when sampling") };
            let p = sample_profile(&sampler(&args.sampler, n)?, seed)?;
            if let Some(path) = &args.emit_profile {
                profile::save(path, &p)?;
            }
            p
        }
        _ => bail!("give either --profile or --family"),
    };
    let detail = run_mechanism(&mech, &profile, seed)?;
    let body = match &detail {
        Detail::Single(o) => single_table(o),
        Detail::Multi(o, labels) => multi_table(o, labels),
        Detail::Bound(u) => format!("utilization  {}\n", num(*u)),
    };
    print!("mechanism  {mech}\n\n{body}");
    if let Some(path) = &args.output {
        let ev = detail.evaluation();
        let (param_name, param_value) = mech.param().map_or((String::new(), None), |(n, v)| (n.to_string(), Some(v)));
        let record = SweepRecord {
            profile_id: 0,
            seed,
            mechanism: mech.tag(),
            param_name,
            param_value,
            n_agents: profile.n_agents(),
            n_resources: profile.n_resources(),
            winner: ev.winner,
            utilization: ev.utilization,
            revenue: ev.revenue,
            runtime_ns: 0,
        };
        write_records(Some(path), &[record])?;
    }
    Ok(())
}

fn summary_table(records: &[SweepRecord]) -> String {
    let rows: Vec<Vec<String>> = summarize(records)
        .into_iter()
        .map(|s| {
            let mech = match s.param_value {
                Some(v) => format!("{}({}={})", s.mechanism, s.param_name, num(v)),
                None => s.mechanism,
            };
            vec![
                mech,
                s.n_agents.to_string(),
                s.n_resources.to_string(),
                s.count.to_string(),
                mean_se(s.utilization),
                mean_se(s.revenue),
            ]
        })
        .collect();
    table(&["mechanism", "n", "m", "profiles", "utilization", "revenue"], &rows)
}

/// Summary to standard output when the CSV goes to a file, otherwise to
/// standard error.
fn print_summary(text: &str, csv_to_file: bool) {
    if csv_to_file {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

pub fn sweep(args: SweepArgs) -> Result<()> {
    let mechanisms = args.mechanisms.iter().map(|m| parse_mechanism(m)).collect::<Result<Vec<_>>>()?;
    let profiles = if args.quick { QUICK_PROFILES } else { args.profiles };
    let options = SweepOptions { timing: args.timing };
    let mut records = Vec::new();
    for n in parse_counts(&args.n)? {
        let spec = sampler(&args.sampler, n)?;
        log::info!("sweep {} n = {n}: {profiles} profiles", spec.family.tag());
        records.extend(run_sweep_with(&spec, &mechanisms, profiles, args.sampler.seed, options)?);
    }
    write_records(args.output.as_deref(), &records)?;
    print_summary(&summary_table(&records), args.output.is_some());
    Ok(())
}

pub fn compare(args: CompareArgs) -> Result<()> {
    let a = parse_mechanism(&args.a)?;
    let b = parse_mechanism(&args.b)?;
    let mechanisms = if a == b { vec![a] } else { vec![a, b] };
    let profiles = if args.quick { QUICK_PROFILES } else { args.profiles };
    let mut all = Vec::new();
    let mut rows = Vec::new();
    for n in parse_counts(&args.n)? {
        let spec = sampler(&args.sampler, n)?;
        let records = run_sweep_with(&spec, &mechanisms, profiles, args.sampler.seed, SweepOptions::default())?;
        let cmp = compare_mechanisms(&select(&records, &a), &select(&records, &b))?;
        let (diff, se) = cmp.difference();
        rows.push(vec![
            n.to_string(),
            spec.n_resources.to_string(),
            a.to_string(),
            b.to_string(),
            cmp.pairs.len().to_string(),
            cmp.frac_a_strict.to_string(),
            cmp.frac_b_strict.to_string(),
            diff.to_string(),
            se.to_string(),
        ]);
        all.extend(records);
    }
    let header = [
        "n_agents", "n_resources", "mechanism_a", "mechanism_b", "profiles", "frac_a_strict", "frac_b_strict",
        "mean_difference", "stderr_difference",
    ];
    let mut csv = header.join(",") + "\n";
    for r in &rows {
        csv += &(r.join(",") + "\n");
    }
    match &args.output {
        Some(p) => create(p)?.write_all(csv.as_bytes())?,
        None => io::stdout().lock().write_all(csv.as_bytes())?,
    }
    if let Some(p) = &args.pairs {
        write_records(Some(p), &all)?;
    }
    let shown: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let pct = |s: &str| format!("{:.2}%", 100.0 * s.parse::<f64>().unwrap_or(f64::NAN));
            let d = (r[7].parse().unwrap_or(f64::NAN), r[8].parse().unwrap_or(f64::NAN));
            vec![r[0].clone(), r[4].clone(), pct(&r[5]), pct(&r[6]), mean_se(d)]
        })
        .collect();
    let a_wins = format!("{a} strictly higher");
    let b_wins = format!("{b} strictly higher");
    let text = table(&["n", "profiles", &a_wins, &b_wins, "mean difference"], &shown);
    print_summary(&text, args.output.is_some());
    Ok(())
}

pub fn reserve(args: ReserveArgs) -> Result<()> {
    let family = match args.family {
        ReserveKind::Exp => ReserveFamily::Exponential { l: args.l },
        ReserveKind::Uniform => ReserveFamily::Uniform,
    };
    let trials = if args.quick { QUICK_TRIALS } else { args.trials };
    let grid = parse_grid(&args.r, args.points)?;
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for (k, &r) in grid.iter().enumerate() {
        let analytic = analytic_reserve_gain(family, r)?;
        let (mc, se) = numeric_reserve_gain(family, r, trials, args.seed)?;
        let z = if se > 0.0 { (mc - analytic) / se } else { 0.0 };
        rows.push(vec![num(r), num(analytic), mean_se((mc, se)), format!("{z:.2}")]);
        let record = |mechanism: &str, gain: f64, se: f64| SweepRecord {
            profile_id: k as u64,
            seed: args.seed,
            mechanism: mechanism.into(),
            param_name: "r".into(),
            param_value: Some(r),
            n_agents: 1,
            n_resources: 1,
            winner: "-".into(),
            utilization: gain,
            revenue: se,
            runtime_ns: 0,
        };
        records.push(record("reserve_analytic", analytic, 0.0));
        records.push(record("reserve_mc", mc, se));
    }
    if let Some(p) = &args.output {
        write_records(Some(p), &records)?;
    }
    print!("{}", table(&["r", "analytic gain", "monte carlo gain", "z"], &rows));
    Ok(())
}

pub fn validate(args: ValidateArgs) -> Result<()> {
    let profile = profile::load(&args.profile)?;
    let mut rows = Vec::new();
    let mut push = |agent: usize, resource: &str, m: &contingent_core::ValueModel| -> Result<()> {
        rows.push(vec![
            (agent + 1).to_string(),
            resource.to_string(),
            describe(m),
            num(m.mean()),
            num(m.expected_positive()),
            num(m.zero_crossing()?),
        ]);
        Ok(())
    };
    match &profile {
        Profile::Single(e) => {
            for (i, m) in e.agents().iter().enumerate() {
                push(i, "-", m)?;
            }
        }
        Profile::Multi(me) => {
            for i in 0..me.n_agents() {
                for (j, label) in me.resources().iter().enumerate() {
                    push(i, label, me.model(i, j))?;
                }
            }
        }
    }
    print!("{}", table(&["agent", "resource", "model", "E[V]", "E[V+]", "zero crossing"], &rows));
    println!("\n{}: {} agents, {} resources, A1-A3 hold", args.profile.display(), profile.n_agents(), profile.n_resources());
    Ok(())
}
