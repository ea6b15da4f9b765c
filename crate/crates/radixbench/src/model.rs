use std::fmt;

use dfr_core::overflow_model::{
    overflow_fraction, overflow_fraction_enumerated, overflow_fraction_mc,
};

/// How the simulated column was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Simulated {
    MonteCarlo { half_width: f64, trials: u64 },
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelReport {
    pub n: u64,
    pub m: u64,
    pub model: f64,
    pub simulated: f64,
    pub method: Simulated,
}

impl ModelReport {
    pub fn difference(&self) -> f64 {
        self.model - self.simulated
    }
}

/// Evaluates the overflow recursion and, unless `exhaustive` is set, a
/// seeded Monte-Carlo estimate; with `exhaustive` the simulated column is
/// the exact enumeration over all `m^n` assignments.
pub fn model_command(
    n: u64,
    m: u64,
    mc_trials: u64,
    seed: u64,
    exhaustive: bool,
) -> dfr_core::Result<ModelReport> {
    let model = overflow_fraction(n, m)?;
    let (simulated, method) = if exhaustive {
        (overflow_fraction_enumerated(n, m)?, Simulated::Exhaustive)
    } else {
        let mc = overflow_fraction_mc(n, m, mc_trials, seed)?;
        (
            mc.mean,
            Simulated::MonteCarlo {
                half_width: mc.half_width,
                trials: mc.trials,
            },
        )
    };
    Ok(ModelReport {
        n,
        m,
        model,
        simulated,
        method,
    })
}

impl fmt::Display for ModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (label, spread) = match self.method {
            Simulated::MonteCarlo { half_width, trials } => {
                (format!("mc({trials})"), format!("{half_width:.6e}"))
            }
            Simulated::Exhaustive => ("exact".to_owned(), "0".to_owned()),
        };
        writeln!(
            f,
            "{:>10} {:>6} {:>16} {:>16} {:>14} {:>16}",
            "n", "m", "model", label, "half_width", "difference"
        )?;
        writeln!(
            f,
            "{:>10} {:>6} {:>16.9} {:>16.9} {:>14} {:>16.9}",
            self.n,
            self.m,
            self.model,
            self.simulated,
            spread,
            self.difference()
        )
    }
}
