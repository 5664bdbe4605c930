//! Predicted error envelopes with all unknown constants set to one.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exponent::ExponentPair;

/// Which class of algorithms the envelope describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setting {
    /// Adaptive randomized.
    Randomized,
    /// Non-adaptive randomized.
    RandomizedNonAdaptive,
    Deterministic,
}

impl Setting {
    pub fn id(self) -> &'static str {
        match self {
            Setting::Randomized => "ran",
            Setting::RandomizedNonAdaptive => "ran_non",
            Setting::Deterministic => "det",
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ran" => Ok(Setting::Randomized),
            "ran_non" => Ok(Setting::RandomizedNonAdaptive),
            "det" => Ok(Setting::Deterministic),
            other => Err(Error::Domain(format!("unknown setting `{other}`"))),
        }
    }
}

/// Order of the minimal error for budget `n` on `N1`-row inputs.
///
/// Logarithms are base 2. The column count does not enter.
pub fn predicted_rate(setting: Setting, pair: ExponentPair, n1: usize, n: usize) -> f64 {
    assert!(n1 >= 1 && n >= 1);
    let big = n1 as f64;
    let per_row = n.div_ceil(n1) as f64;
    let scale = big.powf(pair.positive_gap());
    let log_n1 = (big + 1.0).log2();
    let both_inf = pair.p.is_infinite() && pair.q.is_infinite();
    if setting == Setting::Deterministic {
        return scale;
    }
    if !pair.is_adaptive_regime() {
        let log_factor = if both_inf { log_n1.min(per_row).sqrt() } else { 1.0 };
        return scale * per_row.powf(-(1.0 - 1.0 / pair.p_bar())) * log_factor;
    }
    match setting {
        Setting::Randomized => {
            let log_factor = if pair.q.is_infinite() { log_n1.sqrt() } else { 1.0 };
            scale * per_row.powf(-(1.0 - pair.p.recip())) + per_row.powf(-0.5) * log_factor
        }
        _ => scale * per_row.powf(-0.5),
    }
}

/// Exponent of the widest adaptive/non-adaptive gap,
/// `(1/2 − 1/p)(1/p − 1/q)/(1/2 − 1/q)`; zero outside `2 < p < q`.
pub fn gap_exponent(pair: ExponentPair) -> f64 {
    if !pair.is_adaptive_regime() {
        return 0.0;
    }
    let (rp, rq) = (pair.p.recip(), pair.q.recip());
    (0.5 - rp) * (rp - rq) / (0.5 - rq)
}

/// Smallest `C` with `err <= C · predicted` at every point.
pub fn envelope_constant(points: &[(f64, f64)]) -> f64 {
    points.iter().map(|&(err, pred)| err / pred).fold(0.0, f64::max)
}
