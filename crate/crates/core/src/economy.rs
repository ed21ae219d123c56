//! Collections of agents and the frontier geometry of their utility curves.

use crate::model::ValueModel;
use crate::{Error, Result, TIE_TOL};

fn validate_agent(model: &ValueModel, agent: usize, resource: Option<String>) -> Result<()> {
    let violations = model.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidModel { agent: Some(agent), resource, violations })
    }
}

/// Agents competing for a single resource.
#[derive(Debug, Clone, PartialEq)]
pub struct Economy {
    agents: Vec<ValueModel>,
    zero_crossings: Vec<f64>,
}

impl Economy {
    pub fn new(agents: Vec<ValueModel>) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::EmptyEconomy);
        }
        for (i, m) in agents.iter().enumerate() {
            validate_agent(m, i, None)?;
        }
        let zero_crossings = agents.iter().map(ValueModel::zero_crossing).collect::<Result<_>>()?;
        Ok(Self { agents, zero_crossings })
    }

    pub fn agents(&self) -> &[ValueModel] {
        &self.agents
    }

    pub fn agent(&self, i: usize) -> &ValueModel {
        &self.agents[i]
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cached zero crossing of each agent.
    pub fn zero_crossings(&self) -> &[f64] {
        &self.zero_crossings
    }

    /// A copy of the economy with agent `i`'s model replaced.
    pub fn with_agent(&self, i: usize, model: ValueModel) -> Result<Self> {
        let mut agents = self.agents.clone();
        agents[i] = model;
        Self::new(agents)
    }

    pub fn into_agents(self) -> Vec<ValueModel> {
        self.agents
    }
}

/// The `k`-th largest agent utility at penalty `z` (`k = 1` is the upper
/// envelope).
pub fn frontier(e: &Economy, z: f64, k: usize) -> Result<f64> {
    if k == 0 || k > e.len() {
        return Err(Error::Index { index: k, len: e.len() });
    }
    let mut u: Vec<f64> = e.agents().iter().map(|m| m.utility(z)).collect();
    u.sort_by(|a, b| b.total_cmp(a));
    Ok(u[k - 1])
}

/// Zero crossing of the upper envelope: the largest agent zero crossing.
pub fn frontier_zero_crossing(e: &Economy) -> f64 {
    e.zero_crossings().iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Highest utilization any mechanism with the standard incentive and
/// participation properties can reach: the best utilization at the frontier
/// zero crossing among the agents attaining it.
pub fn p1p5_upper_bound(e: &Economy) -> f64 {
    let z = frontier_zero_crossing(e);
    e.agents()
        .iter()
        .zip(e.zero_crossings())
        .filter(|(_, &z0)| z0 >= z - TIE_TOL)
        .map(|(m, _)| m.utilization(z))
        .fold(0.0, f64::max)
}

/// Agents × resources, each pair with its own value model.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiEconomy {
    models: Vec<Vec<ValueModel>>,
    resources: Vec<String>,
}

impl MultiEconomy {
    /// `models[i][a]` is agent `i`'s model for resource `a`. Resources are
    /// labelled `a`, `b`, … .
    pub fn new(models: Vec<Vec<ValueModel>>) -> Result<Self> {
        let m = models.first().map_or(0, Vec::len);
        let resources = (0..m).map(default_label).collect();
        Self::with_labels(models, resources)
    }

    pub fn with_labels(models: Vec<Vec<ValueModel>>, resources: Vec<String>) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::EmptyEconomy);
        }
        if resources.is_empty() {
            return Err(Error::InvalidParameter("economy has no resources".into()));
        }
        for (i, row) in models.iter().enumerate() {
            if row.len() != resources.len() {
                return Err(Error::InvalidParameter(format!(
                    "agent {} has {} models for {} resources",
                    i + 1,
                    row.len(),
                    resources.len()
                )));
            }
            for (a, m) in row.iter().enumerate() {
                validate_agent(m, i, Some(resources[a].clone()))?;
            }
        }
        Ok(Self { models, resources })
    }

    /// Every agent gets the same model for each of `m` resources.
    pub fn duplicated(e: &Economy, m: usize) -> Result<Self> {
        Self::new(e.agents().iter().map(|a| vec![a.clone(); m]).collect())
    }

    pub fn n_agents(&self) -> usize {
        self.models.len()
    }

    pub fn n_resources(&self) -> usize {
        self.resources.len()
    }

    pub fn model(&self, agent: usize, resource: usize) -> &ValueModel {
        &self.models[agent][resource]
    }

    pub fn row(&self, agent: usize) -> &[ValueModel] {
        &self.models[agent]
    }

    pub fn models(&self) -> &[Vec<ValueModel>] {
        &self.models
    }

    pub fn resources(&self) -> &[String] {
        &self.resources
    }

    pub fn with_row(&self, agent: usize, row: Vec<ValueModel>) -> Result<Self> {
        let mut models = self.models.clone();
        models[agent] = row;
        Self::with_labels(models, self.resources.clone())
    }
}

/// `a`, `b`, …, `z`, then `r27`, `r28`, … .
pub fn default_label(index: usize) -> String {
    if index < 26 {
        char::from(b'a' + index as u8).to_string()
    } else {
        format!("r{}", index + 1)
    }
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

    #[test]
    fn frontier_examples() {
        let e = example3();
        assert!((frontier(&e, 0.0, 1).unwrap() - 20.0).abs() < 1e-12);
        assert!((frontier(&e, 0.0, 2).unwrap() - 16.0).abs() < 1e-12);
        assert!((frontier(&e, 40.0, 1).unwrap() - 4.0).abs() < 1e-12);
        assert!(frontier(&e, 0.0, 3).is_err());
        assert!(frontier(&e, 0.0, 0).is_err());
    }

    #[test]
    fn zero_crossing_and_bound() {
        let e = example3();
        assert!((frontier_zero_crossing(&e) - 60.0).abs() < 1e-12);
        assert!((p1p5_upper_bound(&e) - 0.8).abs() < 1e-12);
        let twins = Economy::new(vec![ValueModel::wp(1.0, 0.5); 2]).unwrap();
        assert_eq!(frontier_zero_crossing(&twins), 1.0);
        let single = Economy::new(vec![ValueModel::exponential(10.0, 0.08)]).unwrap();
        let z0 = single.zero_crossings()[0];
        let expected = 1.0 - (-0.08 * (10.0 + z0)).exp();
        assert!((p1p5_upper_bound(&single) - expected).abs() < 1e-15);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Economy::new(vec![]).unwrap_err(), Error::EmptyEconomy);
        let err = Economy::new(vec![ValueModel::wp(1.0, 0.5), ValueModel::exponential(10.0, 0.2)]).unwrap_err();
        assert_eq!(err.to_string(), "agent 2: violates A3: E[V] = 5 ≥ 0");
        let err = MultiEconomy::new(vec![vec![ValueModel::wp(1.0, 0.5)], vec![]]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }
}
