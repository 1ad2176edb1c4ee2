//! Verification campaign reports and the deterministic trial runner.

use serde::{Deserialize, Serialize};

/// Maximum number of witnesses kept in a report. Only the worst offenders
/// survive; the count of violations is always exact.
pub const MAX_WITNESSES: usize = 5;

/// One failing trial, with its inputs serialized for reproduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub violation: f64,
    pub inputs: String,
}

/// Outcome of one property-check campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub trials: u64,
    pub violations: u64,
    pub max_violation: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub pass: bool,
    pub details: Vec<Witness>,
}

impl VerificationReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serialization cannot fail")
    }

    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| format!("malformed report: {e}"))
    }
}

/// SplitMix64 step; derives per-trial and per-purpose seeds from a campaign
/// seed so that every trial is a pure function of (seed, trial index).
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `trials` independent checks and folds the outcomes into a report.
///
/// `check(trial)` returns `None` when the trial holds and a `Witness` when it
/// does not. Trials are pure functions of their index, so the merged report is
/// identical for any `jobs` value; with `jobs > 1` the index range is split
/// into contiguous chunks executed on scoped threads.
pub fn run_trials<F>(
    check_name: &str,
    trials: u64,
    tolerance: f64,
    seed: u64,
    jobs: usize,
    check: F,
) -> VerificationReport
where
    F: Fn(u64) -> Option<Witness> + Sync,
{
    let mut witnesses: Vec<Witness> = if jobs <= 1 || trials < 2 {
        (0..trials).filter_map(&check).collect()
    } else {
        let jobs = jobs.min(trials as usize);
        let chunk = trials.div_ceil(jobs as u64);
        let mut out: Vec<Vec<Witness>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs as u64)
                .map(|c| {
                    let check = &check;
                    let lo = c * chunk;
                    let hi = ((c + 1) * chunk).min(trials);
                    scope.spawn(move || (lo..hi).filter_map(check).collect::<Vec<_>>())
                })
                .collect();
            for h in handles {
                out.push(h.join().expect("campaign worker panicked"));
            }
        });
        out.into_iter().flatten().collect()
    };

    witnesses.sort_by(|a, b| {
        b.violation
            .partial_cmp(&a.violation)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.trial.cmp(&b.trial))
    });
    let violations = witnesses.len() as u64;
    let max_violation = witnesses.first().map_or(0.0, |w| w.violation);
    witnesses.truncate(MAX_WITNESSES);

    VerificationReport {
        check_name: check_name.to_string(),
        trials,
        violations,
        max_violation,
        tolerance,
        seed,
        pass: violations == 0,
        details: witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_zero_violations() {
        let r = run_trials("demo", 10, 1e-9, 1, 1, |_| None);
        assert!(r.pass);
        assert_eq!(r.violations, 0);
        assert_eq!(r.max_violation, 0.0);

        let r = run_trials("demo", 10, 1e-9, 1, 1, |t| {
            (t % 3 == 0).then(|| Witness {
                trial: t,
                violation: t as f64,
                inputs: format!("t={t}"),
            })
        });
        assert!(!r.pass);
        assert_eq!(r.violations, 4);
        assert_eq!(r.max_violation, 9.0);
        assert_eq!(r.details[0].trial, 9);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let check = |t: u64| {
            (t % 7 == 2).then(|| Witness {
                trial: t,
                violation: (t % 13) as f64,
                inputs: format!("t={t}"),
            })
        };
        let a = run_trials("demo", 100, 1e-9, 5, 1, check);
        let b = run_trials("demo", 100, 1e-9, 5, 4, check);
        assert_eq!(a, b);
        assert_eq!(a.to_toml(), b.to_toml());
    }

    #[test]
    fn report_roundtrip() {
        let r = run_trials("roundtrip", 3, 1e-6, 42, 1, |_| None);
        let text = r.to_toml();
        assert_eq!(VerificationReport::from_toml(&text).unwrap(), r);
    }

    #[test]
    fn mix_seed_spreads() {
        let a = mix_seed(1, 0);
        let b = mix_seed(1, 1);
        let c = mix_seed(2, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, mix_seed(1, 0));
    }
}
