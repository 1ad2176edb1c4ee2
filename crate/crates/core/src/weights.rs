//! Weight sequences μ for spectral functionals.
//!
//! Indices run over ℤ\{0} in the two-sided order μ₁ ≥ μ₂ ≥ … ≥ μ₋₂ ≥ μ₋₁
//! (every positive index dominates every negative index). Families are
//! restricted to closed forms with integral tail bounds; arbitrary user
//! sequences are accepted only as finite lists, whose tails are exactly zero.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightError {
    Parse(String),
    InvalidParameter(String),
    /// The weights are not monotone in the two-sided order; theorem-backed
    /// campaigns reject them at construction.
    NotMonotone(String),
    /// No closed-form tail bound exists (the series may diverge).
    NoTailBound(String),
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::Parse(msg) => write!(f, "cannot parse weights: {msg}"),
            WeightError::InvalidParameter(msg) => write!(f, "invalid weight parameter: {msg}"),
            WeightError::NotMonotone(msg) => write!(f, "weights not monotone: {msg}"),
            WeightError::NoTailBound(msg) => write!(f, "no tail bound: {msg}"),
        }
    }
}

impl std::error::Error for WeightError {}

/// A family of weights μⱼ, j ∈ ℤ\{0}.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSequence {
    /// μₙ = c·n^{−p} for n ≥ 1, zero on negative indices.
    OneSidedPower { c: f64, p: f64 },
    /// μₙ = c·n^{−p}, μ₋ₙ = −c·n^{−p}.
    TwoSidedAntisymmetricPower { c: f64, p: f64 },
    /// Explicit values: `positive[j-1]` is μⱼ, `negative[j-1]` is μ₋ⱼ; all
    /// other indices are zero.
    FiniteList { positive: Vec<f64>, negative: Vec<f64> },
}

impl WeightSequence {
    pub fn one_sided_power(c: f64, p: f64) -> Result<Self, WeightError> {
        validate_power(c, p)?;
        Ok(Self::OneSidedPower { c, p })
    }

    pub fn two_sided_antisymmetric_power(c: f64, p: f64) -> Result<Self, WeightError> {
        validate_power(c, p)?;
        Ok(Self::TwoSidedAntisymmetricPower { c, p })
    }

    pub fn finite_list(positive: Vec<f64>, negative: Vec<f64>) -> Result<Self, WeightError> {
        if positive.iter().chain(negative.iter()).any(|v| !v.is_finite()) {
            return Err(WeightError::InvalidParameter("non-finite weight".into()));
        }
        Ok(Self::FiniteList { positive, negative })
    }

    /// μⱼ. Index 0 is never consulted by ψ (λ₀ = 0); it evaluates to 0.
    pub fn mu(&self, j: i64) -> f64 {
        if j == 0 {
            return 0.0;
        }
        match self {
            WeightSequence::OneSidedPower { c, p } => {
                if j > 0 {
                    c * (j as f64).powf(-p)
                } else {
                    0.0
                }
            }
            WeightSequence::TwoSidedAntisymmetricPower { c, p } => {
                let n = j.unsigned_abs() as f64;
                let v = c * n.powf(-p);
                if j > 0 {
                    v
                } else {
                    -v
                }
            }
            WeightSequence::FiniteList { positive, negative } => {
                let (side, idx) = if j > 0 {
                    (positive, (j - 1) as usize)
                } else {
                    (negative, (-j - 1) as usize)
                };
                side.get(idx).copied().unwrap_or(0.0)
            }
        }
    }

    /// Monotone in the two-sided order μ₁ ≥ μ₂ ≥ … ≥ μ₋₂ ≥ μ₋₁? Closed
    /// families are monotone by construction (c ≥ 0, p > 0); finite lists are
    /// scanned, including the zero padding beyond their support.
    pub fn is_monotone(&self) -> bool {
        match self {
            WeightSequence::OneSidedPower { c, p }
            | WeightSequence::TwoSidedAntisymmetricPower { c, p } => {
                if !(*c >= 0.0 && *p > 0.0) {
                    return false;
                }
                // Family-level argument plus a numerical scan of the leading
                // indices.
                (1..64i64)
                    .all(|n| self.mu(n) >= self.mu(n + 1) && self.mu(-(n + 1)) >= self.mu(-n))
            }
            WeightSequence::FiniteList { positive, negative } => {
                let len = positive.len().max(negative.len()).max(1) as i64;
                let chain_ok = (1..len).all(|n| self.mu(n) >= self.mu(n + 1))
                    && (1..len).all(|n| self.mu(-(n + 1)) >= self.mu(-n));
                // Padding beyond the support: the positive side must stay
                // ≥ 0 and the negative side ≤ 0.
                chain_ok && self.mu(len) >= 0.0 && self.mu(-len) <= 0.0
            }
        }
    }

    /// μ₋ⱼ = −μⱼ for all j.
    pub fn is_antisymmetric(&self) -> bool {
        match self {
            WeightSequence::OneSidedPower { .. } => false,
            WeightSequence::TwoSidedAntisymmetricPower { .. } => true,
            WeightSequence::FiniteList { positive, negative } => {
                let len = positive.len().max(negative.len()) as i64;
                (1..=len).all(|j| self.mu(-j) == -self.mu(j))
            }
        }
    }

    /// Decay exponent p with |μ±ₙ| ≤ c·n^{−p}; `None` for finite lists, whose
    /// support is bounded.
    pub fn decay_exponent(&self) -> Option<f64> {
        match self {
            WeightSequence::OneSidedPower { p, .. }
            | WeightSequence::TwoSidedAntisymmetricPower { p, .. } => Some(*p),
            WeightSequence::FiniteList { .. } => None,
        }
    }

    /// Largest index carrying a nonzero weight, for finite lists.
    pub fn support(&self) -> Option<usize> {
        match self {
            WeightSequence::FiniteList { positive, negative } => {
                Some(positive.len().max(negative.len()))
            }
            _ => None,
        }
    }

    /// Upper bound on Σ_{|j| ≥ m+1} |μⱼ|, exact for finite lists and an
    /// integral bound c·m^{1−p}/(p−1) per side for power families. Requires
    /// p > 1 for the power families.
    pub fn abs_tail_sum_bound(&self, m: usize) -> Result<f64, WeightError> {
        match self {
            WeightSequence::OneSidedPower { c, p } => power_tail(*c, *p, m),
            WeightSequence::TwoSidedAntisymmetricPower { c, p } => {
                Ok(2.0 * power_tail(*c, *p, m)?)
            }
            WeightSequence::FiniteList { positive, negative } => Ok(positive
                .iter()
                .skip(m)
                .chain(negative.iter().skip(m))
                .map(|v| v.abs())
                .sum()),
        }
    }

    /// Upper bound on Σ_{j ∈ ℤ\{0}} |μⱼ|: the exact partial sum over
    /// |j| ≤ 64 plus the closed-form tail.
    pub fn abs_total_sum_bound(&self) -> Result<f64, WeightError> {
        let m = 64;
        let partial: f64 = (1..=m as i64)
            .map(|j| self.mu(j).abs() + self.mu(-j).abs())
            .sum();
        Ok(partial + self.abs_tail_sum_bound(m)?)
    }

    /// Canonical string form, the inverse of [`parse_weights`].
    pub fn spec_string(&self) -> String {
        match self {
            WeightSequence::OneSidedPower { c, p } => format!("osp:{c}:{p}"),
            WeightSequence::TwoSidedAntisymmetricPower { c, p } => format!("tsap:{c}:{p}"),
            WeightSequence::FiniteList { positive, negative } => {
                let pos = positive
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                if negative.is_empty() {
                    format!("list:{pos}")
                } else {
                    let neg = negative
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    format!("list:{pos};{neg}")
                }
            }
        }
    }
}

fn validate_power(c: f64, p: f64) -> Result<(), WeightError> {
    if !c.is_finite() || !p.is_finite() {
        return Err(WeightError::InvalidParameter(format!(
            "non-finite parameters c={c}, p={p}"
        )));
    }
    if c < 0.0 {
        return Err(WeightError::InvalidParameter(format!(
            "c must be nonnegative for a monotone family, got {c}"
        )));
    }
    if p <= 0.0 {
        return Err(WeightError::InvalidParameter(format!(
            "decay exponent must be positive, got {p}"
        )));
    }
    Ok(())
}

fn power_tail(c: f64, p: f64, m: usize) -> Result<f64, WeightError> {
    if p <= 1.0 {
        return Err(WeightError::NoTailBound(format!(
            "power family with p = {p} <= 1 is not absolutely summable"
        )));
    }
    if m == 0 {
        // Σ_{n≥1} n^{−p} ≤ 1 + ∫₁^∞ t^{−p} dt
        return Ok(c * (1.0 + 1.0 / (p - 1.0)));
    }
    Ok(c * (m as f64).powf(1.0 - p) / (p - 1.0))
}

/// Parses `osp:c:p`, `tsap:c:p`, or `list:a,b,…[;x,y,…]` (positive-index
/// values, then optional negative-index values μ₋₁, μ₋₂, …).
pub fn parse_weights(text: &str) -> Result<WeightSequence, WeightError> {
    let (family, rest) = text
        .split_once(':')
        .ok_or_else(|| WeightError::Parse(format!("expected family:params, got `{text}`")))?;
    match family {
        "osp" | "tsap" => {
            let (c_str, p_str) = rest.split_once(':').ok_or_else(|| {
                WeightError::Parse(format!("expected {family}:c:p, got `{text}`"))
            })?;
            let c: f64 = c_str
                .parse()
                .map_err(|_| WeightError::Parse(format!("bad coefficient `{c_str}`")))?;
            let p: f64 = p_str
                .parse()
                .map_err(|_| WeightError::Parse(format!("bad exponent `{p_str}`")))?;
            if family == "osp" {
                WeightSequence::one_sided_power(c, p)
            } else {
                WeightSequence::two_sided_antisymmetric_power(c, p)
            }
        }
        "list" => {
            let (pos_str, neg_str) = match rest.split_once(';') {
                Some((a, b)) => (a, Some(b)),
                None => (rest, None),
            };
            let parse_side = |s: &str| -> Result<Vec<f64>, WeightError> {
                if s.trim().is_empty() {
                    return Ok(Vec::new());
                }
                s.split(',')
                    .map(|v| {
                        v.trim()
                            .parse()
                            .map_err(|_| WeightError::Parse(format!("bad list entry `{v}`")))
                    })
                    .collect()
            };
            WeightSequence::finite_list(parse_side(pos_str)?, parse_side(neg_str.unwrap_or(""))?)
        }
        other => Err(WeightError::Parse(format!("unknown weight family `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_families_index_correctly() {
        let osp = WeightSequence::one_sided_power(1.0, 5.0).unwrap();
        assert_eq!(osp.mu(1), 1.0);
        assert!((osp.mu(2) - 1.0 / 32.0).abs() < 1e-15);
        assert_eq!(osp.mu(-1), 0.0);
        assert_eq!(osp.mu(0), 0.0);

        let tsap = WeightSequence::two_sided_antisymmetric_power(2.0, 2.0).unwrap();
        assert_eq!(tsap.mu(1), 2.0);
        assert_eq!(tsap.mu(-1), -2.0);
        assert_eq!(tsap.mu(-3), -2.0 / 9.0);
        assert!(tsap.is_antisymmetric());
        assert!(!osp.is_antisymmetric());
    }

    #[test]
    fn monotonicity() {
        assert!(WeightSequence::one_sided_power(1.0, 2.0).unwrap().is_monotone());
        assert!(WeightSequence::two_sided_antisymmetric_power(1.0, 2.0)
            .unwrap()
            .is_monotone());
        // The designed counterexample μ = (0, 1).
        let bad = WeightSequence::finite_list(vec![0.0, 1.0], vec![]).unwrap();
        assert!(!bad.is_monotone());
        let good = WeightSequence::finite_list(vec![1.0, 0.5], vec![-1.0]).unwrap();
        assert!(good.is_monotone());
        assert!(!good.is_antisymmetric());
        let anti = WeightSequence::finite_list(vec![1.0, 0.5], vec![-1.0, -0.5]).unwrap();
        assert!(anti.is_antisymmetric());
        // A trailing negative value on the positive side breaks the padding
        // chain μₙ ≥ 0 = μ_{n+1}.
        let neg_tail = WeightSequence::finite_list(vec![1.0, -0.5], vec![]).unwrap();
        assert!(!neg_tail.is_monotone());
    }

    #[test]
    fn tail_bounds_dominate_series_tails() {
        let osp = WeightSequence::one_sided_power(1.0, 2.0).unwrap();
        for m in [1usize, 10, 100] {
            let bound = osp.abs_tail_sum_bound(m).unwrap();
            let actual: f64 = ((m + 1)..=(m + 1_000_000))
                .map(|n| (n as f64).powi(-2))
                .sum();
            assert!(bound >= actual, "m={m}: {bound} < {actual}");
        }
        let tsap = WeightSequence::two_sided_antisymmetric_power(1.0, 2.0).unwrap();
        assert!(
            (tsap.abs_tail_sum_bound(10).unwrap() - 2.0 * osp.abs_tail_sum_bound(10).unwrap())
                .abs()
                < 1e-15
        );
        let total = osp.abs_total_sum_bound().unwrap();
        let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert!(total >= zeta2 && total < zeta2 + 0.01);
    }

    #[test]
    fn finite_list_tails_are_exact() {
        let w = WeightSequence::finite_list(vec![1.0, 0.5, 0.25], vec![-2.0]).unwrap();
        assert_eq!(w.abs_tail_sum_bound(3).unwrap(), 0.0);
        assert_eq!(w.abs_tail_sum_bound(1).unwrap(), 0.75);
        assert_eq!(w.support(), Some(3));
    }

    #[test]
    fn divergent_families_are_rejected_for_tails() {
        let w = WeightSequence::one_sided_power(1.0, 1.0).unwrap();
        assert!(matches!(w.abs_tail_sum_bound(5), Err(WeightError::NoTailBound(_))));
        assert!(WeightSequence::one_sided_power(1.0, -1.0).is_err());
        assert!(WeightSequence::one_sided_power(-1.0, 2.0).is_err());
    }

    #[test]
    fn parsing_roundtrips() {
        for text in ["osp:1:5", "tsap:1:2", "list:0,1", "list:1,0.5;-1"] {
            let w = parse_weights(text).unwrap();
            assert_eq!(parse_weights(&w.spec_string()).unwrap(), w);
        }
        assert_eq!(
            parse_weights("list:1,0.5;-1").unwrap(),
            WeightSequence::finite_list(vec![1.0, 0.5], vec![-1.0]).unwrap()
        );
        assert!(parse_weights("nope:1:2").is_err());
        assert!(parse_weights("osp:1").is_err());
        assert!(parse_weights("list:a,b").is_err());
    }
}
