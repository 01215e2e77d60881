//! Runtime configuration shared by the analytic pipeline and the CLI.

use crate::numeric::Prec;

#[derive(Debug, Clone)]
pub struct Config {
    /// Decimal digits carried by all floating computations.
    pub precision_digits: u32,
    /// Absolute tolerance for identifying a lattice coordinate with a
    /// torsion point.
    pub tol_identify: f64,
    /// Hard cap on q-expansion length; evaluations needing more terms
    /// fail as precision errors instead of silently degrading.
    pub max_series_terms: usize,
    /// Conductor bound above which reports flag that Stevens' c_E = 1 is
    /// assumed rather than known.
    pub stevens_proven_bound: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_digits: 12,
            tol_identify: 1e-6,
            max_series_terms: 2_000_000,
            stevens_proven_bound: 200,
        }
    }
}

impl Config {
    pub fn prec(&self) -> Prec {
        Prec::from_digits(self.precision_digits)
    }

    /// Tail target for individual series evaluations.
    pub fn series_eps(&self) -> f64 {
        10f64.powi(-(self.precision_digits as i32) - 2)
    }

    /// Doubled-precision variant used by robustness checks.
    pub fn doubled(&self) -> Config {
        Config {
            precision_digits: self.precision_digits * 2,
            max_series_terms: self.max_series_terms * 2,
            ..self.clone()
        }
    }
}
