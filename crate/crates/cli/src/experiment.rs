//! Evaluates a config over its sweep points.

use mmwave_core::montecarlo::{Scenario, Simulator};

use crate::config::ExperimentConfig;
use crate::error::{config_err, Result};
use crate::quantity::Quantity;

/// One CSV row. Closed-form rows carry no interval, trial count or seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub sweep_param: Option<String>,
    pub sweep_value: Option<f64>,
    pub quantity: Quantity,
    pub value: f64,
    pub ci: Option<(f64, f64)>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub value: Option<f64>,
    pub scenario: Scenario,
    /// Seed of this point's simulations.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub rows: Vec<ResultRow>,
    pub points: usize,
    /// Tier ordering conventions broken by some sweep point.
    pub warnings: Vec<String>,
}

/// Resolves the sweep into scenarios and checks every quantity against
/// every point before anything runs.
pub fn points(config: &ExperimentConfig) -> Result<Vec<Point>> {
    config.validate()?;
    let points: Vec<Point> = match &config.sweep {
        None => vec![Point { value: None, scenario: config.scenario.clone(), seed: config.seed }],
        Some(sweep) => sweep
            .values()
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let scenario = sweep.param.apply(&config.scenario, v)?;
                Ok(Point { value: Some(v), scenario, seed: config.seed.wrapping_add(i as u64) })
            })
            .collect::<Result<_>>()?,
    };
    for point in &points {
        for q in &config.quantities {
            q.check(&point.scenario).map_err(|e| match point.value {
                Some(v) => config_err(format!("at sweep value {v}: {e}")),
                None => e,
            })?;
        }
    }
    Ok(points)
}

/// Rows of one sweep point, in the config's quantity order.
pub fn evaluate_point(config: &ExperimentConfig, point: &Point) -> Result<Vec<ResultRow>> {
    let kinds: Vec<_> = config.quantities.iter().filter_map(Quantity::estimator).collect();
    let run = if kinds.is_empty() {
        None
    } else {
        Some(Simulator::new(&point.scenario, &kinds)?.run(config.trials, point.seed)?)
    };
    let sweep_param = config.sweep.as_ref().map(|s| s.param.to_string());
    let mut rows = Vec::with_capacity(config.quantities.len());
    for q in &config.quantities {
        let mut row = ResultRow {
            sweep_param: sweep_param.clone(),
            sweep_value: point.value,
            quantity: *q,
            value: 0.0,
            ci: None,
            trials: None,
            seed: None,
        };
        match (q.estimator(), &run) {
            (Some(kind), Some(run)) => {
                let est = run.estimate(&kind).expect("every estimator was run");
                row.value = est.p_hat;
                row.ci = Some((est.ci_low, est.ci_high));
                row.trials = Some(est.trials);
                row.seed = Some(est.master_seed);
            }
            _ => row.value = q.evaluate(&point.scenario)?,
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Evaluates every quantity at every point. Points run one after another;
/// the trials inside a point run on the rayon pool.
pub fn run(config: &ExperimentConfig) -> Result<RunOutput> {
    let points = points(config)?;
    let mut warnings: Vec<String> = Vec::new();
    for point in &points {
        if let Scenario::HetNet(sc) = &point.scenario {
            for w in sc.ordering_warnings() {
                if !warnings.contains(&w) {
                    warnings.push(w);
                }
            }
        }
    }
    let mut rows = Vec::new();
    for point in &points {
        rows.extend(evaluate_point(config, point)?);
    }
    Ok(RunOutput { rows, points: points.len(), warnings })
}
