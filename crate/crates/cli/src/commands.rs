use std::collections::HashMap;

use dqca_core::asymptotics::{
    asymptotic_sigma, i1_stationary, i2_stationary, i3_stationary, i_exact, prob_approx,
    IntegralKind, BOUNDARY_MARGIN,
};
use dqca_core::entanglement::{asymptotic_rho, entropy, reduced_density};
use dqca_core::evolution::{dispersion, effective_hamiltonian, model_group_velocity, step};
use dqca_core::{
    ComplexValue, Error, LatticeUnits, ModelParams, OscillatoryIntegralResult, SpinorField,
    WeakLimitDensity,
};
use rayon::prelude::*;

use crate::args::{Common, Integral};
use crate::output::Table;
use crate::CliError;

type StationaryFn = fn(f64, u64, f64) -> dqca_core::Result<OscillatoryIntegralResult>;

/// Largest tolerated `| ||psi||^2 - 1 |` before a run is declared broken.
pub const NORM_DRIFT: f64 = 1e-9;

/// Validated inputs shared by every subcommand.
pub struct Run {
    pub model: ModelParams,
    pub a: ComplexValue,
    pub b: ComplexValue,
    pub steps: u64,
    pub tol: f64,
}

impl Run {
    pub fn from_args(common: &Common) -> Result<Self, CliError> {
        if !(common.tol.is_finite() && common.tol > 0.0) {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {}",
                common.tol
            )));
        }
        let (a, b) = common.coin()?;
        let run = Run {
            model: common.model()?,
            a,
            b,
            steps: common.steps,
            tol: common.tol,
        };
        run.initial()?;
        Ok(run)
    }

    fn initial(&self) -> Result<SpinorField, CliError> {
        Ok(SpinorField::localized(0, self.a, self.b)?)
    }

    fn dqca_beta(&self, command: &str) -> Result<f64, CliError> {
        match self.model {
            ModelParams::Dqca(d) => Ok(d.beta()),
            _ => Err(CliError::Usage(format!("{command} requires --model dqca"))),
        }
    }

    /// `(1, +-i) / sqrt 2` up to a global phase: the coin for which the
    /// DQCA's limiting density and spread have closed forms.
    fn balanced_coin(&self) -> bool {
        (self.a.norm_sqr() - self.b.norm_sqr()).abs() < 1e-12
            && (self.a * self.b.conj()).re.abs() < 1e-12
    }
}

fn check_norm(field: &SpinorField, t: u64) -> Result<(), CliError> {
    let drift = (field.norm_sqr() - 1.0).abs();
    if drift > NORM_DRIFT || !drift.is_finite() {
        return Err(CliError::Numerical(format!(
            "norm drift {drift:e} at t = {t}"
        )));
    }
    Ok(())
}

/// Steps from the initial coin, checking the norm after every step.
fn for_each_step<F>(run: &Run, mut visit: F) -> Result<SpinorField, CliError>
where
    F: FnMut(u64, &SpinorField) -> Result<(), CliError>,
{
    let mut field = run.initial()?;
    visit(0, &field)?;
    for t in 1..=run.steps {
        field = step(&field, &run.model);
        check_norm(&field, t)?;
        visit(t, &field)?;
    }
    Ok(field)
}

pub fn evolve(run: &Run) -> Result<Table, CliError> {
    let field = for_each_step(run, |_, _| Ok(()))?;
    let mut table = Table::new(&["n", "prob", "re_R", "im_R", "re_L", "im_L"]);
    for (n, [r, l]) in field.sites() {
        table.push(vec![
            n as f64,
            r.norm_sqr() + l.norm_sqr(),
            r.re,
            r.im,
            l.re,
            l.im,
        ]);
    }
    Ok(table)
}

pub fn sigma(run: &Run) -> Result<Table, CliError> {
    let predicted: Box<dyn Fn(f64) -> f64> = match run.model {
        ModelParams::Dqca(d) if run.balanced_coin() => {
            let beta = d.beta();
            Box::new(move |t| asymptotic_sigma(t, beta).unwrap_or(f64::NAN))
        }
        ModelParams::Meyer(m) if m.theta() == 0.0 && run.balanced_coin() => {
            let beta = m.rho().sin();
            Box::new(move |t| asymptotic_sigma(t, beta).unwrap_or(f64::NAN))
        }
        ModelParams::Qw(q) => match WeakLimitDensity::qw(q.theta(), run.a, run.b) {
            Ok(density) => {
                let m1 = density.moment(1)?;
                let m2 = density.moment(2)?;
                let spread = (m2 - m1 * m1).max(0.0).sqrt();
                Box::new(move |t| t * spread)
            }
            Err(_) => Box::new(|_| f64::NAN),
        },
        _ => Box::new(|_| f64::NAN),
    };
    let mut table = Table::new(&["t", "sigma_exact", "sigma_asymptotic"]);
    for_each_step(run, |t, field| {
        table.push(vec![t as f64, field.std_deviation(), predicted(t as f64)]);
        Ok(())
    })?;
    Ok(table)
}

pub fn entropy_table(run: &Run, asymptotic: bool) -> Result<Table, CliError> {
    let limit = if asymptotic {
        let beta = run.dqca_beta("entropy --asymptotic")?;
        Some(entropy(&asymptotic_rho(beta, run.a, run.b)?))
    } else {
        None
    };
    let mut table = match limit {
        Some(_) => Table::new(&["t", "entropy", "entropy_asymptotic"]),
        None => Table::new(&["t", "entropy"]),
    };
    for_each_step(run, |t, field| {
        let mut row = vec![t as f64, entropy(&reduced_density(field))];
        row.extend(limit);
        table.push(row);
        Ok(())
    })?;
    Ok(table)
}

pub fn weak_limit(run: &Run, bins: usize) -> Result<Table, CliError> {
    let density = match run.model {
        ModelParams::Dqca(d) if run.balanced_coin() => WeakLimitDensity::dqca(d.beta())?,
        ModelParams::Dqca(_) => {
            return Err(CliError::Usage(
                "weak-limit for the DQCA needs the coin (1, +-i)/sqrt 2 up to a phase".into(),
            ))
        }
        ModelParams::Qw(q) => WeakLimitDensity::qw(q.theta(), run.a, run.b)?,
        ModelParams::Meyer(_) => {
            return Err(CliError::Usage(
                "weak-limit supports --model dqca and qw".into(),
            ))
        }
    };
    if run.steps == 0 || bins == 0 {
        return Err(CliError::Usage(
            "weak-limit needs --steps and --bins at least 1".into(),
        ));
    }
    let field = for_each_step(run, |_, _| Ok(()))?;
    let probabilities = field.probability();
    let at: HashMap<i64, f64> = probabilities.iter().copied().collect();
    let p = |n: i64| at.get(&n).copied().unwrap_or(0.0);

    let t = run.steps as i64;
    let tf = t as f64;
    let s = density.support_bound();
    let mut table = Table::new(&["y", "pdf_analytic", "pdf_empirical"]);
    for n in -t..=t {
        let y = n as f64 / tf;
        if y.abs() >= s {
            continue;
        }
        // Mass in a window two sites wide, so that walks populating only one
        // parity still give a smooth estimate; divided by its width 2/t.
        let mass = 0.5 * p(n - 1) + p(n) + 0.5 * p(n + 1);
        table.push(vec![y, density.pdf(y)?, mass * tf / 2.0]);
    }
    table.note(
        "l1_distance",
        density.binned_l1(&probabilities, run.steps, bins)?,
    );
    Ok(table)
}

pub fn stationary_phase(run: &Run) -> Result<Table, CliError> {
    let beta = run.dqca_beta("stationary-phase")?;
    let field = for_each_step(run, |_, _| Ok(()))?;
    let t = run.steps;
    let mut table = Table::new(&["n", "prob_exact", "prob_approx", "rel_err"]);
    for n in -(t as i64)..=t as i64 {
        let [r, l] = field.at(n);
        let exact = r.norm_sqr() + l.norm_sqr();
        let approx = prob_approx(n, t, beta, run.a, run.b)?;
        let rel = if exact > 0.0 {
            (approx - exact).abs() / exact
        } else {
            f64::NAN
        };
        table.push(vec![n as f64, exact, approx, rel]);
    }
    Ok(table)
}

pub fn integral_table(
    run: &Run,
    which: Integral,
    t: u64,
    points: usize,
) -> Result<Table, CliError> {
    let beta = run.dqca_beta("stationary-phase --function")?;
    if t == 0 || points < 2 {
        return Err(CliError::Usage(
            "--function needs --t >= 1 and --points >= 2".into(),
        ));
    }
    let (kind, approx): (IntegralKind, StationaryFn) = match which {
        Integral::I1 => (IntegralKind::I1, i1_stationary),
        Integral::I2 => (IntegralKind::I2, i2_stationary),
        Integral::I3 => (IntegralKind::I3, i3_stationary),
    };
    // Validates beta for the stationary-phase branch before the sweep.
    let s = WeakLimitDensity::dqca(beta)?.support_bound();
    let tf = t as f64;
    let rows = (0..points)
        .into_par_iter()
        .map(|k| {
            let x = -tf + 2.0 * tf * k as f64 / (points - 1) as f64;
            let alpha = x / tf;
            let exact = i_exact(kind, alpha, t, beta, run.tol)?.value;
            let approx = if alpha.abs() <= s * (1.0 - BOUNDARY_MARGIN) {
                approx(alpha, t, beta)?.value
            } else {
                ComplexValue::new(0.0, 0.0)
            };
            Ok(vec![x, exact.re, exact.im, approx.re, approx.im])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new(&["x", "re_exact", "im_exact", "re_approx", "im_approx"]);
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

pub fn dispersion_table(run: &Run, points: usize) -> Result<Table, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    if let ModelParams::Meyer(m) = run.model {
        if m.theta() != 0.0 {
            return Err(CliError::Usage(
                "dispersion of the Meyer automaton needs --theta 0".into(),
            ));
        }
    }
    // The DQCA off-diagonal is real; the other symbols need its imaginary part too.
    let complex_offdiag = !matches!(run.model, ModelParams::Dqca(_));
    let mut table = if complex_offdiag {
        Table::new(&["p", "lambda", "v", "H00", "H01", "H01_im"])
    } else {
        Table::new(&["p", "lambda", "v", "H00", "H01"])
    };
    let units = LatticeUnits::default();
    for k in 0..points {
        let p = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / points as f64;
        let lambda = dispersion(p, &run.model)?;
        let v = or_nan_if_singular(model_group_velocity(p, &run.model))?;
        let (h00, h01) = match effective_hamiltonian(p, &run.model, &units) {
            Ok(h) => (h.matrix().get(0, 0).re, h.matrix().get(0, 1)),
            Err(Error::SingularPoint { .. }) => (f64::NAN, ComplexValue::new(f64::NAN, f64::NAN)),
            Err(e) => return Err(e.into()),
        };
        let mut row = vec![p, lambda, v, h00, h01.re];
        if complex_offdiag {
            row.push(h01.im);
        }
        table.push(row);
    }
    Ok(table)
}

fn or_nan_if_singular(r: dqca_core::Result<f64>) -> Result<f64, CliError> {
    match r {
        Ok(x) => Ok(x),
        Err(Error::SingularPoint { .. }) => Ok(f64::NAN),
        Err(e) => Err(e.into()),
    }
}
