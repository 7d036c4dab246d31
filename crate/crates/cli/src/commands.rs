//! Command dispatch. Inputs are converted to CGS on entry and results back
//! to the selected system on exit; nothing in between sees SI values.

use std::io::Read;

use clap::ValueEnum;
use serde_json::Value;

use pulsemass::consts::{hbar, omega_from_wavelength, SPEED_OF_LIGHT as C};
use pulsemass::density::{mass_density, FieldSample};
use pulsemass::experiment::{channel_delay, focus_kperp, gain_over_intrinsic, ExperimentConfig};
use pulsemass::gaussian_analytic::summarize;
use pulsemass::kinematics::{
    ensemble_velocity, pairwise_invariant_mass, rest_frame, total_four_momentum, PhotonEnsemble,
    PhotonMode,
};
use pulsemass::spectral::{
    field_components, gaussian_spectral_density, spectral_moments, GaussianPulseParams, Paraxiality,
};

use crate::config::{as_number, Params};
use crate::error::CliError;
use crate::output::{num, CsvTable, JsonReport};
use crate::units::Quantity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    MassDiscrete,
    MassPulse,
    Speed,
    Delay,
    Density,
    Sweep,
    FieldProfile,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::MassDiscrete => "mass-discrete",
            Command::MassPulse => "mass-pulse",
            Command::Speed => "speed",
            Command::Delay => "delay",
            Command::Density => "density",
            Command::Sweep => "sweep",
            Command::FieldProfile => "field-profile",
        }
    }
}

/// Everything a command may touch besides its parameters.
pub struct Context<'a> {
    pub params: Params,
    pub oracle: bool,
    /// Source for `input = "-"`; `None` once standard input was used for the config.
    pub stdin: Option<&'a mut dyn Read>,
    pub warnings: Vec<String>,
}

impl Context<'_> {
    fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }
}

/// Runs `command`, returning the data output (JSON or CSV text).
pub fn execute(command: Command, ctx: &mut Context<'_>) -> Result<String, CliError> {
    if ctx.oracle && command != Command::MassPulse {
        ctx.warn("--oracle only applies to mass-pulse; ignored");
    }
    match command {
        Command::MassDiscrete => mass_discrete(ctx),
        Command::MassPulse => mass_pulse(ctx),
        Command::Speed => speed(ctx),
        Command::Delay => delay(ctx),
        Command::Density => density(ctx),
        Command::Sweep => sweep(ctx),
        Command::FieldProfile => field_profile(ctx),
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

const PULSE_KEYS: [&str; 7] = [
    "lambda",
    "omega0",
    "tau",
    "w",
    "e0",
    "energy",
    "photon_count",
];

fn with_pulse_keys(extra: &[&'static str]) -> Vec<&'static str> {
    PULSE_KEYS.iter().chain(extra).copied().collect()
}

/// Builds the pulse from `tau`, `w`, one of `lambda`/`omega0` and one of
/// `e0`/`energy`/`photon_count`.
fn pulse(p: &Params) -> Result<GaussianPulseParams<f64>, CliError> {
    let tau = p.require("tau", Quantity::Time)?;
    let w = p.require("w", Quantity::Length)?;
    let omega0 = match (
        p.number("lambda", Quantity::Length)?,
        p.number("omega0", Quantity::Dimensionless)?,
    ) {
        (Some(lambda), None) => {
            if !(lambda > 0.0) {
                return Err(config_err("lambda must be positive"));
            }
            omega_from_wavelength(lambda)
        }
        (None, Some(omega0)) => omega0,
        _ => return Err(config_err("give exactly one of lambda, omega0")),
    };
    let amplitude = (
        p.number("e0", Quantity::Field)?,
        p.number("energy", Quantity::Energy)?,
        p.number("photon_count", Quantity::Dimensionless)?,
    );
    let params = match amplitude {
        (Some(e0), None, None) => GaussianPulseParams::new(e0, tau, w, omega0)?,
        (None, Some(energy), None) => GaussianPulseParams::with_energy(energy, tau, w, omega0)?,
        (None, None, Some(n)) => {
            GaussianPulseParams::with_energy(n * hbar::<f64>() * omega0, tau, w, omega0)?
        }
        _ => return Err(config_err("give exactly one of e0, energy, photon_count")),
    };
    Ok(params)
}

/// Records validity warnings for `params`; the closed forms reject the
/// invalid regime themselves.
fn pulse_warnings(ctx: &mut Context<'_>, params: &GaussianPulseParams<f64>) {
    let ratio = params.validity_ratio();
    if ratio.classify() == Paraxiality::Marginal {
        ctx.warn(format!(
            "paraxial validity marginal: lambda/w = {:e}, lambda/(c tau) = {:e}",
            ratio.lambda_over_w, ratio.lambda_over_ctau
        ));
    }
    let density = gaussian_spectral_density(params);
    if density.is_clipped() {
        ctx.warn(format!(
            "spectrum clipped at k_z = 0: weight {:e} of the band lost",
            density.clipped_weight()
        ));
    }
}

fn mass_discrete(ctx: &mut Context<'_>) -> Result<String, CliError> {
    let p = &ctx.params;
    p.reject_unknown(&["photons"])?;
    let units = p.units();
    let list = match p.get("photons") {
        Some(Value::Array(items)) if !items.is_empty() => items,
        Some(Value::Array(_)) => return Err(config_err("photons is empty")),
        Some(_) => return Err(config_err("photons must be an array of objects")),
        None => return Err(config_err("missing required parameter \"photons\"")),
    };
    let mut modes = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let obj = item
            .as_object()
            .ok_or_else(|| config_err(format!("photons[{i}] must be an object")))?;
        let field = |key: &str| -> Result<Option<f64>, CliError> {
            obj.get(key)
                .map(|v| as_number(&format!("photons[{i}].{key}"), v))
                .transpose()
        };
        for key in obj.keys() {
            if !["lambda", "omega", "theta_deg", "phi_deg", "weight"].contains(&key.as_str()) {
                return Err(config_err(format!("photons[{i}]: unknown key {key:?}")));
            }
        }
        let omega = match (field("lambda")?, field("omega")?) {
            (Some(l), None) => {
                let l = units.to_cgs(Quantity::Length, l);
                if !(l > 0.0) {
                    return Err(config_err(format!("photons[{i}].lambda must be positive")));
                }
                omega_from_wavelength(l)
            }
            (None, Some(o)) => o,
            _ => {
                return Err(config_err(format!(
                    "photons[{i}]: give exactly one of lambda, omega"
                )))
            }
        };
        let theta = field("theta_deg")?.unwrap_or(0.0).to_radians();
        let phi = field("phi_deg")?.unwrap_or(0.0).to_radians();
        let weight = field("weight")?.unwrap_or(1.0);
        let mode = PhotonMode::from_angles(omega, theta, phi, weight)
            .map_err(|e| config_err(format!("photons[{i}]: {e}")))?;
        modes.push(mode);
    }
    let ensemble = PhotonEnsemble::new(modes);
    let total = total_four_momentum(&ensemble)?;
    let mass = pairwise_invariant_mass(&ensemble)?;
    let velocity = ensemble_velocity(&total)?;
    let beta_rest = rest_frame(&total).ok().map(|f| f.beta());
    let photons: f64 = ensemble.modes().iter().map(|m| m.weight()).sum();

    let mut r = JsonReport::new(Command::MassDiscrete.name(), units);
    r.num("photon_count", photons)
        .num("energy", units.from_cgs(Quantity::Energy, total.energy()));
    let p_unit = units.from_cgs(Quantity::Mass, 1.0) * units.from_cgs(Quantity::Speed, 1.0);
    r.value(
        "momentum",
        Value::Array(total.momentum().iter().map(|&x| num(x * p_unit)).collect()),
    )
    .num("mass", units.from_cgs(Quantity::Mass, mass))
    .num(
        "rest_energy",
        units.from_cgs(Quantity::Energy, mass * C * C),
    )
    .num("velocity", units.from_cgs(Quantity::Speed, velocity))
    .num("velocity_over_c", velocity / C)
    .value("beta_rest", beta_rest.map_or(Value::Null, num));
    if beta_rest.is_some() && (total.px() != 0.0 || total.py() != 0.0) {
        ctx.warn("total transverse momentum is nonzero; beta_rest is the z-boost only");
    }
    Ok(r.finish())
}

fn mass_pulse(ctx: &mut Context<'_>) -> Result<String, CliError> {
    ctx.params.reject_unknown(&PULSE_KEYS)?;
    let params = pulse(&ctx.params)?;
    pulse_warnings(ctx, &params);
    let units = ctx.params.units();
    let s = summarize(&params)?;
    let ratio = params.validity_ratio();

    let mut r = JsonReport::new(Command::MassPulse.name(), units);
    r.num("energy", units.from_cgs(Quantity::Energy, s.energy))
        .num("photon_count", s.photon_count)
        .num("mass", units.from_cgs(Quantity::Mass, s.mass))
        .num(
            "rest_energy",
            units.from_cgs(Quantity::Energy, s.rest_energy),
        )
        .num("velocity", units.from_cgs(Quantity::Speed, s.velocity()))
        .num(
            "c_minus_v",
            units.from_cgs(Quantity::Speed, s.speed_deficit),
        )
        .num("relative_speed_deficit", s.relative_speed_deficit())
        .num("lambda", units.from_cgs(Quantity::Length, s.lambda))
        .num("lambda_over_w", ratio.lambda_over_w)
        .num("lambda_over_ctau", ratio.lambda_over_ctau);
    if ctx.oracle {
        let density = gaussian_spectral_density(&params);
        let m = spectral_moments(&density)?;
        let mass = m.mass();
        let mut o = serde_json::Map::new();
        o.insert("mass".into(), num(units.from_cgs(Quantity::Mass, mass)));
        o.insert("relative_deviation".into(), num((mass - s.mass) / s.mass));
        o.insert(
            "energy".into(),
            num(units.from_cgs(Quantity::Energy, m.energy)),
        );
        o.insert("photon_count".into(), num(m.photon_count));
        o.insert("nodes_per_axis".into(), Value::from(m.nodes_per_axis));
        o.insert("refinement_levels".into(), Value::from(m.levels));
        o.insert("clipped_weight".into(), num(density.clipped_weight()));
        r.value("oracle", Value::Object(o));
    }
    Ok(r.finish())
}

fn speed(ctx: &mut Context<'_>) -> Result<String, CliError> {
    ctx.params.reject_unknown(&PULSE_KEYS)?;
    let params = pulse(&ctx.params)?;
    pulse_warnings(ctx, &params);
    let units = ctx.params.units();
    let s = summarize(&params)?;
    let mut r = JsonReport::new(Command::Speed.name(), units);
    r.num("velocity", units.from_cgs(Quantity::Speed, s.velocity()))
        .num(
            "c_minus_v",
            units.from_cgs(Quantity::Speed, s.speed_deficit),
        )
        .num("relative_speed_deficit", s.relative_speed_deficit());
    Ok(r.finish())
}

fn experiment_config(p: &Params) -> Result<ExperimentConfig<f64>, CliError> {
    let w_half = p.require("w_half", Quantity::Length)?;
    let f = p.require("f", Quantity::Length)?;
    Ok(ExperimentConfig::new(w_half, f, pulse(p)?)?)
}

fn delay(ctx: &mut Context<'_>) -> Result<String, CliError> {
    ctx.params
        .reject_unknown(&with_pulse_keys(&["w_half", "f"]))?;
    let cfg = experiment_config(&ctx.params)?;
    pulse_warnings(ctx, cfg.source());
    let units = ctx.params.units();
    if cfg.aperture_warning() {
        ctx.warn(format!(
            "w_half/f = {:e} above 0.1; small-angle focusing forms are approximate",
            cfg.aperture_ratio()
        ));
    }
    let d = channel_delay(&cfg);
    if d.diffraction_warning() {
        ctx.warn(format!(
            "f/L_D = {:e}; focusing does not dominate intrinsic diffraction",
            d.f_over_ld
        ));
    }
    let mut r = JsonReport::new(Command::Delay.name(), units);
    r.num("v_channel", units.from_cgs(Quantity::Speed, d.v_channel))
        .num("v_over_c", d.v_channel / C)
        .num("c_minus_v", units.from_cgs(Quantity::Speed, d.slowdown))
        .num("delta_l", units.from_cgs(Quantity::Length, d.delta_l))
        .num("delta_l_mm", d.delta_l * 10.0)
        .num(
            "pulse_length",
            units.from_cgs(Quantity::Length, cfg.source().length()),
        )
        .value("separated", Value::Bool(d.separated))
        .num("m_fdr", units.from_cgs(Quantity::Mass, d.m_fdr))
        .num(
            "k_perp_focus",
            units.from_cgs(Quantity::Wavenumber, focus_kperp(&cfg)),
        )
        .num("f_over_ld", d.f_over_ld)
        .num("gain_over_intrinsic", gain_over_intrinsic(&cfg));
    Ok(r.finish())
}

pub const DENSITY_HEADER: [&str; 10] = ["x", "y", "z", "t", "Ex", "Ey", "Ez", "Hx", "Hy", "Hz"];

fn density(ctx: &mut Context<'_>) -> Result<String, CliError> {
    ctx.params.reject_unknown(&["input"])?;
    let units = ctx.params.units();
    let path = ctx
        .params
        .string("input")?
        .ok_or_else(|| config_err("missing required parameter \"input\" (CSV path or \"-\")"))?
        .to_string();
    let text = if path == "-" {
        let stdin = ctx
            .stdin
            .take()
            .ok_or_else(|| config_err("standard input already holds the configuration"))?;
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{path}: {e}")))?
    };

    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(DENSITY_HEADER) {
        return Err(config_err(format!(
            "density CSV header must be {}, got {}",
            DENSITY_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(DENSITY_HEADER.iter().chain(&["mu"]))?;
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let mut v = [0.0; 10];
        for (j, cell) in record.iter().enumerate() {
            v[j] = cell.parse::<f64>().map_err(|_| {
                config_err(format!(
                    "line {line}: {} = {cell:?} is not a number",
                    DENSITY_HEADER[j]
                ))
            })?;
        }
        let e = [v[4], v[5], v[6]].map(|x| units.to_cgs(Quantity::Field, x));
        let h = [v[7], v[8], v[9]].map(|x| units.to_cgs(Quantity::Magnetic, x));
        let mu = FieldSample::new(e, h)
            .and_then(|s| mass_density(&s))
            .map_err(|err| config_err(format!("line {line}: {err}")))?;
        let mu = crate::output::fmt_float(units.from_cgs(Quantity::MassDensity, mu));
        writer.write_record(record.iter().chain([mu.as_str()]))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// Values from `list_key`, or an evenly spaced grid from `start`, `stop`,
/// `steps` and optional `spacing` (`linear` or `log`). Unconverted.
fn grid(
    p: &Params,
    list_key: &str,
    [start, stop, steps, spacing]: [&str; 4],
) -> Result<Vec<f64>, CliError> {
    if let Some(values) = p.numbers(list_key, Quantity::Dimensionless)? {
        if values.is_empty() {
            return Err(config_err(format!("{list_key} is empty")));
        }
        if [start, stop, steps].iter().any(|k| p.contains(k)) {
            return Err(config_err(format!(
                "give either {list_key} or {start}/{stop}/{steps}, not both"
            )));
        }
        return Ok(values);
    }
    let a = p
        .number(start, Quantity::Dimensionless)?
        .ok_or_else(|| config_err(format!("give {list_key} or {start}/{stop}/{steps}")))?;
    let b = p
        .number(stop, Quantity::Dimensionless)?
        .ok_or_else(|| config_err(format!("missing required parameter {stop:?}")))?;
    let n = p
        .count(steps)?
        .ok_or_else(|| config_err(format!("missing required parameter {steps:?}")))?;
    if n == 0 {
        return Err(config_err(format!("{steps} must be at least 1")));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let last = (n - 1) as f64;
    let log = match p.string(spacing)?.unwrap_or("linear") {
        "linear" => false,
        "log" => true,
        other => {
            return Err(config_err(format!(
                "{spacing} must be linear or log, got {other:?}"
            )))
        }
    };
    if log && !(a > 0.0 && b > 0.0) {
        return Err(config_err("log spacing needs positive endpoints"));
    }
    let mut values: Vec<f64> = (0..n)
        .map(|i| {
            let s = i as f64 / last;
            if log {
                (a.ln() + (b.ln() - a.ln()) * s).exp()
            } else {
                a + (b - a) * s
            }
        })
        .collect();
    values[0] = a;
    values[n - 1] = b;
    Ok(values)
}

const SWEEP_PARAMS: [&str; 9] = [
    "w",
    "tau",
    "lambda",
    "omega0",
    "e0",
    "energy",
    "photon_count",
    "w_half",
    "f",
];

fn sweep(ctx: &mut Context<'_>) -> Result<String, CliError> {
    let p = &ctx.params;
    p.reject_unknown(&with_pulse_keys(&[
        "w_half", "f", "param", "values", "start", "stop", "steps", "spacing",
    ]))?;
    let units = p.units();
    let name = p
        .string("param")?
        .ok_or_else(|| config_err("missing required parameter \"param\""))?
        .to_string();
    if !SWEEP_PARAMS.contains(&name.as_str()) {
        return Err(config_err(format!(
            "cannot sweep {name:?}; choose one of {}",
            SWEEP_PARAMS.join(", ")
        )));
    }
    let values = grid(p, "values", ["start", "stop", "steps", "spacing"])?;
    let with_delay = p.contains("w_half") || p.contains("f") || name == "w_half" || name == "f";

    let mut header = vec![name.as_str(), "mass", "c_minus_v"];
    if with_delay {
        header.push("delta_l");
    }
    let mut table = CsvTable::new(&header);
    let base = p.clone();
    let mut warnings = Vec::new();
    for &v in &values {
        let mut map = serde_json::Map::new();
        for key in SWEEP_PARAMS.iter().chain(&PULSE_KEYS) {
            if let Some(x) = base.get(key) {
                map.insert((*key).to_string(), x.clone());
            }
        }
        map.insert(name.clone(), num(v));
        let point = Params::new(map, units);
        let params = pulse(&point).map_err(|e| at_point(&name, v, e))?;
        let mut probe = Context {
            params: point.clone(),
            oracle: false,
            stdin: None,
            warnings: Vec::new(),
        };
        pulse_warnings(&mut probe, &params);
        warnings.extend(
            probe
                .warnings
                .into_iter()
                .map(|w| format!("{name} = {v:e}: {w}")),
        );
        let s = summarize(&params).map_err(|e| at_point(&name, v, e.into()))?;
        let mut row = vec![
            v,
            units.from_cgs(Quantity::Mass, s.mass),
            units.from_cgs(Quantity::Speed, s.speed_deficit),
        ];
        if with_delay {
            let d = channel_delay(&experiment_config(&point).map_err(|e| at_point(&name, v, e))?);
            row.push(units.from_cgs(Quantity::Length, d.delta_l));
        }
        table.row(&row);
    }
    ctx.warnings.extend(warnings);
    Ok(table.finish())
}

fn at_point(name: &str, v: f64, e: CliError) -> CliError {
    match e {
        CliError::Config(m) => CliError::Config(format!("{name} = {v:e}: {m}")),
        CliError::Numerical(m) => CliError::Numerical(format!("{name} = {v:e}: {m}")),
        other => other,
    }
}

fn field_profile(ctx: &mut Context<'_>) -> Result<String, CliError> {
    let p = &ctx.params;
    p.reject_unknown(&with_pulse_keys(&[
        "r_perp",
        "z",
        "times",
        "t_start",
        "t_stop",
        "t_steps",
        "t_spacing",
    ]))?;
    let units = p.units();
    let params = pulse(p)?;
    let r_perp = p.number("r_perp", Quantity::Length)?.unwrap_or(0.0);
    let z = p.number("z", Quantity::Length)?.unwrap_or(0.0);
    let times = grid(p, "times", ["t_start", "t_stop", "t_steps", "t_spacing"])?;
    let mut table = CsvTable::new(&["r_perp", "z", "t", "field", "envelope"]);
    for &t in &times {
        let sample = field_components(&params, r_perp, z, units.to_cgs(Quantity::Time, t))
            .map_err(|e| at_point("t", t, e.into()))?;
        table.row(&[
            units.from_cgs(Quantity::Length, r_perp),
            units.from_cgs(Quantity::Length, z),
            t,
            units.from_cgs(Quantity::Field, sample.field),
            units.from_cgs(Quantity::Field, sample.envelope()),
        ]);
    }
    pulse_warnings(ctx, &params);
    Ok(table.finish())
}
