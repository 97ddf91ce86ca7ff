use std::fmt::Write as _;
use std::str::FromStr;

use cpn::dynamics::{expectation, FLOW_STEP};
use cpn::linalg;
use cpn::serialize::to_pairs;
use cpn::{
    bloch_vector, canonicalize, chart_transition, generator_basis, to_chart, traceless_decompose,
    Complex64, HamiltonianSystem, HermitianOperator, StateVector, Trajectory,
};
use serde::Serialize;
use serde_json::json;

use crate::config::{self, ScenarioConfig};
use crate::format::{self, csv_real, sig12_unit};
use crate::{CliError, GlobalOptions};

/// Default pass threshold for `picture-check`.
pub const DEFAULT_CHECK_TOL: f64 = 1e-8;

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn hbar(cfg: &ScenarioConfig, opts: &GlobalOptions) -> Result<f64, CliError> {
    let hbar = opts.hbar.unwrap_or(cfg.hbar);
    config::check_hbar(hbar)?;
    Ok(hbar)
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Evolve the scenario's initial state over its time grid.
///
/// With `bloch` set (dimension 2 only) the table holds Bloch components
/// instead of amplitudes.
pub fn evolve(cfg: &ScenarioConfig, opts: &GlobalOptions, bloch: bool) -> Result<String, CliError> {
    let sys = HamiltonianSystem::new(cfg.hamiltonian.clone(), hbar(cfg, opts)?)?;
    let trajectory = sys.sample_trajectory(&cfg.initial_state, &cfg.times, &cfg.observables)?;
    if bloch {
        if cfg.dim != 2 {
            return Err(validation(format!(
                "dim: --bloch needs dimension 2, found {}",
                cfg.dim
            )));
        }
        bloch_table(&trajectory, opts.json)
    } else if opts.json {
        Ok(json_string(&trajectory))
    } else {
        Ok(trajectory_csv(&trajectory))
    }
}

/// Columns `t, re_a0, im_a0, …, re_an, im_an`, then one per observable.
pub fn trajectory_csv(tr: &Trajectory) -> String {
    let dim = tr.states().first().map_or(0, |s| s.dim());
    let mut out = String::from("t");
    for k in 0..dim {
        write!(out, ",re_a{k},im_a{k}").unwrap();
    }
    for (name, _) in tr.expectations() {
        write!(out, ",{name}").unwrap();
    }
    out.push('\n');
    for (i, (t, state)) in tr.times().iter().zip(tr.states()).enumerate() {
        out.push_str(&csv_real(*t));
        for z in state.amplitudes() {
            write!(out, ",{},{}", csv_real(z.re), csv_real(z.im)).unwrap();
        }
        for (_, series) in tr.expectations() {
            write!(out, ",{}", csv_real(series[i])).unwrap();
        }
        out.push('\n');
    }
    out
}

fn bloch_table(tr: &Trajectory, json: bool) -> Result<String, CliError> {
    let vectors = tr
        .points()
        .iter()
        .map(bloch_vector)
        .collect::<Result<Vec<_>, _>>()?;
    if json {
        let rows: Vec<_> = tr
            .times()
            .iter()
            .zip(&vectors)
            .map(|(t, b)| json!({"t": t, "x": b.x, "y": b.y, "z": b.z}))
            .collect();
        return Ok(json_string(&rows));
    }
    let mut out = String::from("t,x,y,z\n");
    for (t, b) in tr.times().iter().zip(&vectors) {
        writeln!(
            out,
            "{},{},{},{}",
            csv_real(*t),
            csv_real(b.x),
            csv_real(b.y),
            csv_real(b.z)
        )
        .unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct PictureReport {
    pub observable: String,
    pub max_picture_deviation: f64,
    pub max_flow_residual: f64,
    pub passed: bool,
}

/// Per-observable maxima over the time grid of
/// `|⟨ψ(t)|L|ψ(t)⟩ − ⟨ψ(0)|L_H(t)|ψ(0)⟩|` and of the expectation-flow residual.
///
/// `perturb = δ` evolves the Schrödinger-picture state with `(1 + δ) H`
/// while the Heisenberg side keeps `H`, so a correct detector must fail.
pub fn picture_reports(
    cfg: &ScenarioConfig,
    opts: &GlobalOptions,
) -> Result<Vec<PictureReport>, CliError> {
    if cfg.observables.is_empty() {
        return Err(validation(
            "observables: picture-check needs at least one observable",
        ));
    }
    let tol = opts.tol.unwrap_or(DEFAULT_CHECK_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(validation(format!("--tol: must be positive, got {tol}")));
    }
    let perturb = opts.perturb.unwrap_or(0.0);
    if !perturb.is_finite() || perturb <= -1.0 {
        return Err(validation(format!(
            "--perturb: must be finite and greater than -1, got {perturb}"
        )));
    }
    let hbar = hbar(cfg, opts)?;
    let sys = HamiltonianSystem::new(cfg.hamiltonian.clone(), hbar)?;
    let flow = if perturb == 0.0 {
        sys.clone()
    } else {
        HamiltonianSystem::new(cfg.hamiltonian.scale(1.0 + perturb), hbar)?
    };
    let v0 = &cfg.initial_state;

    let mut reports = Vec::with_capacity(cfg.observables.len());
    for (name, l) in &cfg.observables {
        let rhs = sys.heisenberg_rhs(l)?;
        let (mut picture, mut residual) = (0.0_f64, 0.0_f64);
        for &t in &cfg.times {
            let psi_t = flow.evolve_state(v0, t)?;
            let heisenberg = expectation(&sys.evolve_operator_heisenberg(l, t)?, v0)?;
            picture = picture.max((expectation(l, &psi_t)? - heisenberg).abs());

            let h = FLOW_STEP;
            let fwd = expectation(l, &flow.evolve_state(v0, t + h)?)?;
            let bwd = expectation(l, &flow.evolve_state(v0, t - h)?)?;
            let bracket = expectation(&rhs, &psi_t)?;
            residual = residual.max(((fwd - bwd) / (2.0 * h) - bracket).abs());
        }
        if !picture.is_finite() || !residual.is_finite() {
            return Err(CliError::Numerical(format!(
                "non-finite deviation for observable {name}"
            )));
        }
        reports.push(PictureReport {
            observable: name.clone(),
            max_picture_deviation: picture,
            max_flow_residual: residual,
            passed: picture < tol && residual < tol,
        });
    }
    Ok(reports)
}

/// Renders the report; the error variant carries the rendered report when
/// any observable exceeds the tolerance.
pub fn picture_check(cfg: &ScenarioConfig, opts: &GlobalOptions) -> Result<String, CliError> {
    let reports = picture_reports(cfg, opts)?;
    let out = if opts.json {
        json_string(&reports)
    } else {
        let mut out = String::from("observable max_picture_deviation max_flow_residual status\n");
        for r in &reports {
            writeln!(
                out,
                "{} {:.3e} {:.3e} {}",
                r.observable,
                r.max_picture_deviation,
                r.max_flow_residual,
                if r.passed { "ok" } else { "FAIL" }
            )
            .unwrap();
        }
        out
    };
    if reports.iter().all(|r| r.passed) {
        Ok(out)
    } else {
        Err(CliError::CheckFailed(out))
    }
}

/// Complex amplitude from text such as `1`, `-0.5`, `2i`, `1+2i` or `3-4j`.
pub fn parse_amplitude(text: &str) -> Result<Complex64, CliError> {
    let trimmed = text.trim();
    let normalized = match trimmed {
        "i" | "+i" => "1i".to_string(),
        "-i" => "-1i".to_string(),
        s => s.replace('j', "i"),
    };
    let z = Complex64::from_str(&normalized)
        .map_err(|_| validation(format!("amplitude '{text}': not a complex number")))?;
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(validation(format!("amplitude '{text}': must be finite")))
    }
}

fn parse_state(amplitudes: &[String]) -> Result<StateVector, CliError> {
    let amps = amplitudes
        .iter()
        .map(|a| parse_amplitude(a))
        .collect::<Result<Vec<_>, _>>()?;
    StateVector::new(amps).map_err(|e| validation(format!("state: {e}")))
}

pub fn bloch(amplitudes: &[String], opts: &GlobalOptions) -> Result<String, CliError> {
    if amplitudes.len() != 2 {
        return Err(validation(format!(
            "state: expected 2 amplitudes, found {}",
            amplitudes.len()
        )));
    }
    let b = bloch_vector(&canonicalize(&parse_state(amplitudes)?))?;
    if opts.json {
        return Ok(json_string(&b));
    }
    Ok(format!(
        "{} {} {}\n",
        sig12_unit(b.x),
        sig12_unit(b.y),
        sig12_unit(b.z)
    ))
}

pub fn chart(
    amplitudes: &[String],
    from: usize,
    to: usize,
    opts: &GlobalOptions,
) -> Result<String, CliError> {
    let p = canonicalize(&parse_state(amplitudes)?);
    let pivot_error = |e: cpn::Error| validation(format!("chart: {e}"));
    let first = to_chart(&p, from).map_err(pivot_error)?;
    let second = chart_transition(&first, to).map_err(pivot_error)?;
    if opts.json {
        let chart = |c: &cpn::ChartCoordinates| json!({"chart": c.chart_index(), "coords": to_pairs(c.coords())});
        return Ok(json_string(
            &json!({"from": chart(&first), "to": chart(&second)}),
        ));
    }
    Ok(format!(
        "{}\n{}\n",
        format::coordinate_tuple(first.coords()),
        format::coordinate_tuple(second.coords())
    ))
}

/// Matrix given as JSON rows of `[re, im]` pairs (or bare reals), inline or
/// as `@path`.
pub fn parse_matrix_arg(arg: &str) -> Result<HermitianOperator, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| validation(format!("matrix file {path}: {e}")))?,
        None => arg.to_string(),
    };
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| validation(format!("matrix: invalid JSON: {e}")))?;
    let rows = value
        .as_array()
        .ok_or_else(|| validation("matrix: expected an array of rows"))?;
    let toml_rows = rows
        .iter()
        .map(json_to_toml)
        .collect::<Result<Vec<_>, _>>()?;
    config::operator(&toml::Value::Array(toml_rows), rows.len(), "matrix")
}

fn json_to_toml(v: &serde_json::Value) -> Result<toml::Value, CliError> {
    match v {
        serde_json::Value::Number(n) => Ok(toml::Value::Float(n.as_f64().unwrap_or(f64::NAN))),
        serde_json::Value::Array(items) => Ok(toml::Value::Array(
            items.iter().map(json_to_toml).collect::<Result<_, _>>()?,
        )),
        other => Err(validation(format!("matrix: unexpected entry {other}"))),
    }
}

pub fn decompose(matrix: &HermitianOperator, opts: &GlobalOptions) -> Result<String, CliError> {
    let basis = generator_basis(matrix.dim())?;
    let coeffs = traceless_decompose(matrix);
    let residual = linalg::max_abs(&(basis.reconstruct(&coeffs)? - matrix.matrix()));
    if opts.json {
        let entries: Vec<_> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"index": i, "generator": basis.label(i), "coefficient": c}))
            .collect();
        return Ok(json_string(
            &json!({"coefficients": entries, "residual": residual}),
        ));
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        writeln!(out, "{i} {} {}", basis.label(i), sig12_unit(*c)).unwrap();
    }
    writeln!(out, "residual {residual:e}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn amplitude_forms() {
        assert_eq!(parse_amplitude("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_amplitude("-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        assert_eq!(parse_amplitude("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_amplitude("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_amplitude("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_amplitude("3-4j").unwrap(), Complex64::new(3.0, -4.0));
        assert!(parse_amplitude("abc").is_err());
    }

    #[test]
    fn bloch_outputs() {
        let o = GlobalOptions::default();
        assert_eq!(bloch(&args(&["1", "0"]), &o).unwrap(), "0 0 1\n");
        assert_eq!(bloch(&args(&["1", "1"]), &o).unwrap(), "1 0 0\n");
        assert_eq!(bloch(&args(&["1", "i"]), &o).unwrap(), "0 1 0\n");
        assert_eq!(bloch(&args(&["0", "0"]), &o).unwrap_err().exit_code(), 2);
        assert_eq!(bloch(&args(&["1"]), &o).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn chart_outputs() {
        let o = GlobalOptions::default();
        assert_eq!(chart(&args(&["1", "2"]), 0, 1, &o).unwrap(), "(2)\n(0.5)\n");
        assert_eq!(
            chart(&args(&["1", "2"]), 1, 1, &o).unwrap(),
            "(0.5)\n(0.5)\n"
        );
        assert_eq!(
            chart(&args(&["0", "1"]), 0, 1, &o).unwrap_err().exit_code(),
            2
        );
        assert_eq!(
            chart(&args(&["1", "0"]), 0, 1, &o).unwrap_err().exit_code(),
            2
        );
        assert_eq!(
            chart(&args(&["1", "2"]), 5, 1, &o).unwrap_err().exit_code(),
            2
        );
    }

    #[test]
    fn decompose_outputs() {
        let o = GlobalOptions::default();
        let sx = parse_matrix_arg("[[0, 1], [1, 0]]").unwrap();
        let out = decompose(&sx, &o).unwrap();
        assert!(
            out.starts_with(
                "0 identity 0\n1 sym(0,1) 1\n2 asym(0,1) 0\n3 diag(1) 0\nresidual 0e0\n"
            ),
            "{out}"
        );

        let id = parse_matrix_arg("[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]")
            .unwrap();
        let out = decompose(&id, &o).unwrap();
        assert!(out.starts_with("0 identity 1.22474487139\n"), "{out}");
        assert!(out.lines().skip(1).take(8).all(|l| l.ends_with(" 0")));

        assert_eq!(
            parse_matrix_arg("[[0, 1], [0, 0]]")
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            parse_matrix_arg("[[0, 1], [1]]").unwrap_err().exit_code(),
            2
        );
        assert_eq!(parse_matrix_arg("nope").unwrap_err().exit_code(), 2);
    }
}
