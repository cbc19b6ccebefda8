//! Audit of the expansion bound `b(φ) >= n w(φ) / (k+1)` and, for connected
//! minimal cochains with `m = |supp φ|`, of `b(φ) >= m (n - m - k + 1)`.

use std::fmt;

use randcomplex::{partition_cochain, Cochain, FiniteAbelianGroup, RngSeed};

use crate::error::{LabError, LabResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditMode {
    /// Every nonzero (k-1)-cochain.
    Exhaustive,
    /// `count` uniformly random nonzero cochains.
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub n: u32,
    pub k: u32,
    pub group: String,
    pub checked: usize,
    /// Cochains with `(k+1) b < n w`.
    pub violations: usize,
    /// Smallest `b - n w / (k+1)` seen.
    pub min_slack: f64,
    /// Cochains with slack exactly zero.
    pub tight: usize,
    pub g_n_checked: usize,
    pub g_n_violations: usize,
    /// Slack of the partition cochain, when `(k+1) | n`.
    pub partition_slack: Option<f64>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.g_n_violations == 0
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, k = {}, R = {}", self.n, self.k, self.group)?;
        writeln!(f, "cochains checked: {}", self.checked)?;
        writeln!(f, "violations: {}", self.violations)?;
        writeln!(f, "min slack: {}", self.min_slack)?;
        writeln!(f, "tight cochains: {}", self.tight)?;
        writeln!(
            f,
            "small-support bound: {} checked, {} violations",
            self.g_n_checked, self.g_n_violations
        )?;
        match self.partition_slack {
            Some(s) => write!(f, "partition cochain slack: {s}"),
            None => write!(f, "partition cochain slack: n/a"),
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    violations: usize,
    min_scaled: Option<i64>,
    tight: usize,
    g_n_checked: usize,
    g_n_violations: usize,
}

impl Tally {
    /// Returns the scaled slack `(k+1) b - n w`.
    fn check(&mut self, phi: &Cochain, k: u32, cap: u64) -> LabResult<i64> {
        let n = phi.n() as i64;
        let b = phi.b_count()? as i64;
        let w = phi.weight_bruteforce(cap)? as i64;
        let scaled = (k as i64 + 1) * b - n * w;
        self.checked += 1;
        if scaled < 0 {
            self.violations += 1;
        }
        if scaled == 0 {
            self.tight += 1;
        }
        self.min_scaled = Some(self.min_scaled.map_or(scaled, |s| s.min(scaled)));
        if w as usize == phi.support_size() && phi.is_connected_support()? {
            let m = w;
            self.g_n_checked += 1;
            if b < m * (n - m - k as i64 + 1) {
                self.g_n_violations += 1;
            }
        }
        Ok(scaled)
    }
}

pub fn run_bound_audit(
    n: u32,
    k: u32,
    group: &str,
    mode: AuditMode,
    cap: u64,
) -> LabResult<AuditReport> {
    let g: FiniteAbelianGroup = group.parse()?;
    let degree = k as isize - 1;
    let mut zero = Cochain::zero(&g, n, degree)?;
    let len = zero.values().len();
    let mut tally = Tally::default();

    match mode {
        AuditMode::Exhaustive => {
            let total = (g.order() as f64).powi(len as i32);
            if total > cap as f64 {
                return Err(randcomplex::Error::CapExceeded {
                    required: format!("{}^{len}", g.order()),
                    cap,
                }
                .into());
            }
            // odometer over all codes, skipping the zero cochain
            let mut codes = vec![0u32; len];
            loop {
                let mut i = 0;
                while i < len {
                    codes[i] += 1;
                    if codes[i] < g.order() {
                        break;
                    }
                    codes[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
                for (r, &c) in codes.iter().enumerate() {
                    zero.set(r, g.from_code(c)?);
                }
                tally.check(&zero, k, cap)?;
            }
        }
        AuditMode::Random { count, seed } => {
            let mut rng = RngSeed(seed).rng();
            for _ in 0..count {
                let phi = loop {
                    let c = Cochain::random(&g, n, degree, &mut rng)?;
                    if !c.is_zero() {
                        break c;
                    }
                };
                tally.check(&phi, k, cap)?;
            }
        }
    }

    let partition_slack = if n.is_multiple_of(k + 1) {
        let phi = partition_cochain(&g, n, k)?;
        Some(tally.check(&phi, k, cap)? as f64 / (k + 1) as f64)
    } else {
        None
    };

    let min_scaled = tally
        .min_scaled
        .ok_or_else(|| LabError::Config("no nonzero cochains to audit".into()))?;
    Ok(AuditReport {
        n,
        k,
        group: g.to_string(),
        checked: tally.checked,
        violations: tally.violations,
        min_slack: min_scaled as f64 / (k + 1) as f64,
        tight: tally.tight,
        g_n_checked: tally.g_n_checked,
        g_n_violations: tally.g_n_violations,
        partition_slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small() {
        let rep = run_bound_audit(5, 2, "Z2", AuditMode::Exhaustive, 1 << 20).unwrap();
        assert_eq!(rep.checked, 1023);
        assert!(rep.passed());
        assert!(rep.partition_slack.is_none());
        assert!(rep.min_slack >= 0.0);
    }

    #[test]
    fn partition_is_tight() {
        let rep = run_bound_audit(6, 2, "Z3", AuditMode::Random { count: 20, seed: 3 }, 1 << 20)
            .unwrap();
        assert_eq!(rep.checked, 21);
        assert_eq!(rep.partition_slack, Some(0.0));
        assert_eq!(rep.min_slack, 0.0);
        assert!(rep.tight >= 1);
    }

    #[test]
    fn cap_and_empty() {
        assert!(matches!(
            run_bound_audit(6, 2, "Z2", AuditMode::Exhaustive, 1000),
            Err(LabError::Core(randcomplex::Error::CapExceeded { .. }))
        ));
        assert!(run_bound_audit(5, 2, "Z2", AuditMode::Random { count: 0, seed: 1 }, 1 << 20)
            .is_err());
    }
}
