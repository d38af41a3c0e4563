use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dqca_core::{BlochAngles, ComplexValue, ModelParams};

use crate::CliError;

/// Simulate the Dirac quantum cellular automaton and the coined quantum
/// walk on a line, and write the results as CSV.
#[derive(Debug, Parser)]
#[command(name = "dqca-lab", version, allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Final-time amplitudes and probabilities: n,prob,re_R,im_R,re_L,im_L
    Evolve,
    /// Standard deviation per step: t,sigma_exact,sigma_asymptotic
    Sigma,
    /// Coin-lattice entanglement per step: t,entropy[,entropy_asymptotic]
    Entropy {
        /// Add the entropy of the long-time averaged coin state (DQCA only).
        #[arg(long)]
        asymptotic: bool,
    },
    /// Limiting density of x/t against the simulation: y,pdf_analytic,pdf_empirical
    WeakLimit {
        /// Bins for the trailing L1 distance.
        #[arg(long, default_value_t = 50)]
        bins: usize,
    },
    /// Stationary-phase probability against the simulation (DQCA only):
    /// n,prob_exact,prob_approx,rel_err
    StationaryPhase {
        /// Tabulate one of the integrals I1, I2, I3 on a real x-grid instead:
        /// x,re_exact,im_exact,re_approx,im_approx
        #[arg(long, value_enum, ignore_case = true)]
        function: Option<Integral>,
        /// Time step for the integral table (defaults to --steps).
        #[arg(long)]
        t: Option<u64>,
        /// Grid points for the integral table.
        #[arg(long, default_value_t = 401)]
        points: usize,
    },
    /// Dispersion, group velocity and effective Hamiltonian:
    /// p,lambda,v,H00,H01,H01_im
    Dispersion {
        /// Quasi-momenta on [-pi, pi).
        #[arg(long, default_value_t = 1024)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Qw,
    Dqca,
    Meyer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Integral {
    I1,
    I2,
    I3,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = ModelKind::Dqca, global = true)]
    pub model: ModelKind,
    /// Coin angle of the walk (default pi/4) or Meyer's theta (default 0).
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub theta: Option<f64>,
    /// DQCA mass parameter (default 1/sqrt 2).
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub beta: Option<f64>,
    /// Meyer's rho (default asin(1/sqrt 2)).
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = 200, global = true)]
    pub steps: u64,
    /// Initial right amplitude as RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, global = true)]
    pub init_a: Option<ComplexValue>,
    /// Initial left amplitude as RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, global = true)]
    pub init_b: Option<ComplexValue>,
    /// Initial coin on the Bloch sphere as GAMMA,PHI.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, conflicts_with_all = ["init_a", "init_b"], global = true)]
    pub bloch: Option<(f64, f64)>,
    /// Output file (default stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Absolute tolerance of the oscillatory integrals.
    #[arg(long, default_value_t = 1e-8, global = true)]
    pub tol: f64,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated numbers, got `{s}`"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|e| format!("`{v}`: {e}"))
            .and_then(|v| {
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(format!("`{v}` is not finite"))
                }
            })
    };
    Ok((parse(x)?, parse(y)?))
}

fn parse_complex(s: &str) -> Result<ComplexValue, String> {
    parse_pair(s).map(|(re, im)| ComplexValue::new(re, im))
}

impl Common {
    /// The model after checking that only its own parameters were given.
    pub fn model(&self) -> Result<ModelParams, CliError> {
        let reject = |flag: &str, given: bool| {
            if given {
                Err(CliError::Usage(
                    format!("--{flag} does not apply to --model {:?}", self.model).to_lowercase(),
                ))
            } else {
                Ok(())
            }
        };
        let params = match self.model {
            ModelKind::Qw => {
                reject("beta", self.beta.is_some())?;
                reject("rho", self.rho.is_some())?;
                ModelParams::qw(self.theta.unwrap_or(FRAC_PI_4))
            }
            ModelKind::Dqca => {
                reject("theta", self.theta.is_some())?;
                reject("rho", self.rho.is_some())?;
                ModelParams::dqca(self.beta.unwrap_or(FRAC_1_SQRT_2))
            }
            ModelKind::Meyer => {
                reject("beta", self.beta.is_some())?;
                ModelParams::meyer(
                    self.rho.unwrap_or(FRAC_1_SQRT_2.asin()),
                    self.theta.unwrap_or(0.0),
                )
            }
        };
        params.map_err(CliError::from)
    }

    /// Initial coin; the symmetric state `(1, i)/sqrt 2` unless overridden.
    pub fn coin(&self) -> Result<(ComplexValue, ComplexValue), CliError> {
        if let Some((gamma, phi)) = self.bloch {
            return Ok(BlochAngles::new(gamma, phi)?.amplitudes());
        }
        let a = self.init_a.unwrap_or(ComplexValue::new(FRAC_1_SQRT_2, 0.0));
        let b = self.init_b.unwrap_or(ComplexValue::new(0.0, FRAC_1_SQRT_2));
        Ok((a, b))
    }
}
