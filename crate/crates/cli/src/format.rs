use anyhow::{bail, Context, Result};
use contingent_core::ValueModel;

/// Fixed six-decimal rendering with trailing zeros removed.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

pub fn mean_se((mean, se): (f64, f64)) -> String {
    format!("{} ± {}", num(mean), num(se))
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

/// `2..15` (inclusive), `2,4,8` or `5`.
pub fn parse_counts(s: &str) -> Result<Vec<usize>> {
    let counts: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().with_context(|| format!("agent counts {s:?}"))?;
        let hi: usize = hi.trim().parse().with_context(|| format!("agent counts {s:?}"))?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("agent counts {s:?}"))?
    };
    if counts.is_empty() {
        bail!("agent counts {s:?} are empty");
    }
    Ok(counts)
}

/// `lo..hi` as `points` evenly spaced values, or a comma-separated list.
pub fn parse_grid(s: &str, points: usize) -> Result<Vec<f64>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: f64 = lo.trim().parse().with_context(|| format!("grid {s:?}"))?;
        let hi: f64 = hi.trim().parse().with_context(|| format!("grid {s:?}"))?;
        if !(lo <= hi) {
            bail!("grid {s:?} is empty");
        }
        if points < 2 {
            bail!("a range needs at least 2 points");
        }
        let step = (hi - lo) / (points - 1) as f64;
        Ok((0..points).map(|k| if k + 1 == points { hi } else { lo + step * k as f64 }).collect())
    } else {
        s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>().with_context(|| format!("grid {s:?}"))
    }
}

pub fn describe(m: &ValueModel) -> String {
    match m {
        ValueModel::Wp { w, p } => format!("wp(w={}, p={})", num(*w), num(*p)),
        ValueModel::Uniform { a1, a2 } => format!("uniform(a1={}, a2={})", num(*a1), num(*a2)),
        ValueModel::Exponential { w, lambda } => format!("exponential(w={}, lambda={})", num(*w), num(*lambda)),
        ValueModel::Discrete { atoms, q_inf } => {
            let atoms: Vec<String> = atoms.iter().map(|a| format!("{}@{}", num(a.v), num(a.p))).collect();
            format!("discrete({}; -inf@{})", atoms.join(", "), num(*q_inf))
        }
    }
}
