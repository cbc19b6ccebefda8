//! Partial-domination experiment on random connected k-uniform families.
//!
//! Attempt `a` grows a connected family of size `m`, sets
//! `θ = 1 - β(F) / (m (n-k))` so the family meets the β hypothesis exactly,
//! draws one random `S`, and separately runs the Las Vegas search. The
//! single draws are compared with the per-attempt bound `ε(1-ε)θ` by a
//! one-sided normal test on the Poisson-binomial success count.

use std::collections::BTreeMap;
use std::fmt;

use statrs::distribution::{ContinuousCDF, Normal};

use randcomplex::domination::{
    c_epsilon, meets_domination_bounds, random_connected_family, success_probability_bound,
    theta_of,
};
use randcomplex::simplex::simplex_count;
use randcomplex::{find_partial_dominating_set, gamma, sample_partial_dominating_set, RngSeed};

use crate::error::LabResult;

/// One-sided confidence level of the success-rate test.
pub const RATE_CONFIDENCE: f64 = 0.99;

#[derive(Clone, Debug, PartialEq)]
pub struct DominationReport {
    pub n: u32,
    pub k: u32,
    pub m: usize,
    pub epsilon: f64,
    pub attempts: usize,
    /// Families with `θ <= 0` or failing the β hypothesis.
    pub rejected_inputs: usize,
    pub accepted: usize,
    /// Single draws meeting both bounds.
    pub successes: usize,
    pub mean_theta: f64,
    /// Mean of `ε(1-ε)θ` over accepted families.
    pub mean_bound: f64,
    /// Lower acceptance limit for `successes`.
    pub success_floor: f64,
    pub rate_test_passed: bool,
    pub las_vegas_found: usize,
    pub las_vegas_exhausted: usize,
    /// Returned sets that are not subsets of `F` or miss a bound.
    pub las_vegas_bad: usize,
    /// Failed draws before success, keyed by count.
    pub retry_histogram: BTreeMap<u64, usize>,
}

impl DominationReport {
    pub fn success_rate(&self) -> f64 {
        if self.accepted == 0 {
            0.0
        } else {
            self.successes as f64 / self.accepted as f64
        }
    }

    pub fn mean_retries(&self) -> f64 {
        let total: u64 = self.retry_histogram.iter().map(|(r, c)| r * *c as u64).sum();
        if self.las_vegas_found == 0 {
            0.0
        } else {
            total as f64 / self.las_vegas_found as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.las_vegas_bad == 0 && self.rate_test_passed
    }
}

impl fmt::Display for DominationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {}, k = {}, m = {}, epsilon = {}",
            self.n, self.k, self.m, self.epsilon
        )?;
        writeln!(
            f,
            "attempts: {} (accepted {}, rejected inputs {})",
            self.attempts, self.accepted, self.rejected_inputs
        )?;
        writeln!(f, "mean theta: {:.4}", self.mean_theta)?;
        writeln!(
            f,
            "single-draw success rate: {:.4} (bound {:.4}; successes {} vs floor {:.1}) {}",
            self.success_rate(),
            self.mean_bound,
            self.successes,
            self.success_floor,
            if self.rate_test_passed { "ok" } else { "BELOW" }
        )?;
        writeln!(
            f,
            "las vegas: {} found, {} exhausted, {} bad; mean retries {:.2}, max retries {}",
            self.las_vegas_found,
            self.las_vegas_exhausted,
            self.las_vegas_bad,
            self.mean_retries(),
            self.retry_histogram.keys().next_back().copied().unwrap_or(0)
        )?;
        write!(f, "retry histogram:")?;
        for (r, c) in &self.retry_histogram {
            write!(f, " {r}:{c}")?;
        }
        Ok(())
    }
}

pub fn run_domination_experiment(
    n: u32,
    k: u32,
    m: usize,
    epsilon: f64,
    attempts: usize,
    seed: u64,
) -> LabResult<DominationReport> {
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(randcomplex::Error::EpsilonOutOfRange(epsilon).into());
    }
    let required = c_epsilon(epsilon) + k as f64;
    if n as f64 <= required {
        return Err(randcomplex::Error::TooFewVertices { n, required }.into());
    }
    if k < 1 {
        return Err(randcomplex::Error::DimensionOutOfRange { k, n }.into());
    }
    let available = simplex_count(n, k as isize - 1);
    if m > available {
        return Err(randcomplex::Error::FamilyTooLarge { m, available }.into());
    }

    let master = RngSeed(seed);
    let mut report = DominationReport {
        n,
        k,
        m,
        epsilon,
        attempts,
        rejected_inputs: 0,
        accepted: 0,
        successes: 0,
        mean_theta: 0.0,
        mean_bound: 0.0,
        success_floor: 0.0,
        rate_test_passed: false,
        las_vegas_found: 0,
        las_vegas_exhausted: 0,
        las_vegas_bad: 0,
        retry_histogram: BTreeMap::new(),
    };
    let mut bound_sum = 0.0;
    let mut bound_var = 0.0;
    let mut theta_sum = 0.0;

    for a in 0..attempts as u64 {
        let family = random_connected_family(n, k, m, master.derive(&[a, 0]))?;
        let theta = match theta_of(&family) {
            Some(t) if t > 0.0 => t,
            _ => {
                report.rejected_inputs += 1;
                continue;
            }
        };
        let outcome = match find_partial_dominating_set(
            &family,
            epsilon,
            theta,
            master.derive(&[a, 2]),
            None,
        ) {
            Err(randcomplex::Error::BetaHypothesis { .. }) => {
                report.rejected_inputs += 1;
                continue;
            }
            other => other,
        };
        report.accepted += 1;
        theta_sum += theta;
        let b = success_probability_bound(epsilon, theta);
        bound_sum += b;
        bound_var += b * (1.0 - b);

        let draw = sample_partial_dominating_set(&family, epsilon, master.derive(&[a, 1]))?;
        let covered = gamma(&family, &draw)?.len();
        if meets_domination_bounds(&family, &draw, covered, epsilon, theta) {
            report.successes += 1;
        }

        match outcome {
            Ok(out) => {
                report.las_vegas_found += 1;
                *report.retry_histogram.entry(out.retries).or_default() += 1;
                let subset = out.selected.iter().all(|r| family.contains(*r));
                let covered = gamma(&family, &out.selected)?.len();
                if !subset
                    || covered != out.gamma_size
                    || !meets_domination_bounds(&family, &out.selected, covered, epsilon, theta)
                {
                    report.las_vegas_bad += 1;
                }
            }
            Err(randcomplex::Error::RetriesExhausted(_)) => report.las_vegas_exhausted += 1,
            Err(e) => return Err(e.into()),
        }
    }

    if report.accepted > 0 {
        let z = Normal::new(0.0, 1.0)
            .expect("standard normal")
            .inverse_cdf(RATE_CONFIDENCE);
        report.mean_theta = theta_sum / report.accepted as f64;
        report.mean_bound = bound_sum / report.accepted as f64;
        report.success_floor = bound_sum - z * bound_var.sqrt();
        report.rate_test_passed = report.successes as f64 >= report.success_floor;
    }
    Ok(report)
}
