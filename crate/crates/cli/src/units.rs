//! Unit conversion at the command-line boundary.
//!
//! The library works in Gaussian-CGS. Every factor below is exact by
//! definition of the SI and CGS units; each is stored either as a
//! multiplier or a divisor so that a round trip costs two correctly rounded
//! operations.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitSystem {
    Si,
    Cgs,
}

impl UnitSystem {
    pub fn name(self) -> &'static str {
        match self {
            UnitSystem::Si => "si",
            UnitSystem::Cgs => "cgs",
        }
    }

    /// Converts an input value of `kind` expressed in this system to CGS.
    pub fn to_cgs(self, kind: Quantity, value: f64) -> f64 {
        match self {
            UnitSystem::Cgs => value,
            UnitSystem::Si => si_scale(kind).to_cgs(value),
        }
    }

    /// Converts a CGS result of `kind` to this system.
    pub fn from_cgs(self, kind: Quantity, value: f64) -> f64 {
        match self {
            UnitSystem::Cgs => value,
            UnitSystem::Si => si_scale(kind).cgs_to_unit(value),
        }
    }

    pub fn unit(self, kind: Quantity) -> &'static str {
        match self {
            UnitSystem::Si => kind.si_unit(),
            UnitSystem::Cgs => kind.cgs_unit(),
        }
    }
}

impl FromStr for UnitSystem {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "si" => Ok(UnitSystem::Si),
            "cgs" => Ok(UnitSystem::Cgs),
            _ => Err(CliError::Config(format!(
                "unknown unit system {s:?}; use si or cgs"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Energy,
    Length,
    Time,
    Intensity,
    /// Electric field amplitude.
    Field,
    /// Magnetic field; CGS `H` in gauss, SI flux density in tesla.
    Magnetic,
    Mass,
    MassDensity,
    Speed,
    /// Angular frequency, wavenumber and pure numbers share one scale in
    /// both systems (rad/s) or need none.
    Dimensionless,
    Wavenumber,
}

impl Quantity {
    pub fn si_unit(self) -> &'static str {
        match self {
            Quantity::Energy => "J",
            Quantity::Length => "m",
            Quantity::Time => "s",
            Quantity::Intensity => "W/m2",
            Quantity::Field => "V/m",
            Quantity::Magnetic => "T",
            Quantity::Mass => "kg",
            Quantity::MassDensity => "kg/m3",
            Quantity::Speed => "m/s",
            Quantity::Dimensionless => "1",
            Quantity::Wavenumber => "1/m",
        }
    }

    pub fn cgs_unit(self) -> &'static str {
        match self {
            Quantity::Energy => "erg",
            Quantity::Length => "cm",
            Quantity::Time => "s",
            Quantity::Intensity => "erg/s/cm2",
            Quantity::Field => "statvolt/cm",
            Quantity::Magnetic => "G",
            Quantity::Mass => "g",
            Quantity::MassDensity => "g/cm3",
            Quantity::Speed => "cm/s",
            Quantity::Dimensionless => "1",
            Quantity::Wavenumber => "1/cm",
        }
    }
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(
            match s.to_ascii_lowercase().replace(['-', ' '], "_").as_str() {
                "energy" => Quantity::Energy,
                "length" => Quantity::Length,
                "time" => Quantity::Time,
                "intensity" => Quantity::Intensity,
                "field" | "field_amplitude" | "electric_field" => Quantity::Field,
                "magnetic" | "magnetic_field" => Quantity::Magnetic,
                "mass" => Quantity::Mass,
                "mass_density" => Quantity::MassDensity,
                "speed" | "velocity" => Quantity::Speed,
                "wavenumber" => Quantity::Wavenumber,
                _ => return Err(CliError::Config(format!("unknown quantity kind {s:?}"))),
            },
        )
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Factor taking a value in some unit to the CGS unit of its kind.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Scale {
    Mul(f64),
    Div(f64),
}

impl Scale {
    fn to_cgs(self, v: f64) -> f64 {
        match self {
            Scale::Mul(f) => v * f,
            Scale::Div(f) => v / f,
        }
    }

    fn cgs_to_unit(self, v: f64) -> f64 {
        match self {
            Scale::Mul(f) => v / f,
            Scale::Div(f) => v * f,
        }
    }
}

/// 1 statvolt/cm in V/m.
const STATVOLT_PER_CM_IN_V_PER_M: f64 = 29_979.245_8;

fn si_scale(kind: Quantity) -> Scale {
    scale(kind, kind.si_unit()).expect("SI unit listed for every kind")
}

fn scale(kind: Quantity, unit: &str) -> Option<Scale> {
    use Quantity::*;
    use Scale::*;
    let s = match (kind, unit) {
        (Energy, "erg") => Mul(1.0),
        (Energy, "J") => Mul(1e7),
        (Energy, "mJ") => Mul(1e4),
        (Energy, "uJ" | "μJ") => Mul(10.0),
        (Length, "cm") => Mul(1.0),
        (Length, "m") => Mul(1e2),
        (Length, "mm") => Div(10.0),
        (Length, "um" | "μm") => Div(1e4),
        (Length, "nm") => Div(1e7),
        (Time, "s") => Mul(1.0),
        (Time, "ns") => Div(1e9),
        (Time, "ps") => Div(1e12),
        (Time, "fs") => Div(1e15),
        (Intensity, "erg/s/cm2") => Mul(1.0),
        (Intensity, "W/cm2") => Mul(1e7),
        (Intensity, "W/m2") => Mul(1e3),
        (Field, "statvolt/cm") => Mul(1.0),
        (Field, "V/m") => Div(STATVOLT_PER_CM_IN_V_PER_M),
        (Magnetic, "G") => Mul(1.0),
        (Magnetic, "T") => Mul(1e4),
        (Mass, "g") => Mul(1.0),
        (Mass, "kg") => Mul(1e3),
        (MassDensity, "g/cm3") => Mul(1.0),
        (MassDensity, "kg/m3") => Div(1e3),
        (Speed, "cm/s") => Mul(1.0),
        (Speed, "m/s") => Mul(1e2),
        (Wavenumber, "1/cm") => Mul(1.0),
        (Wavenumber, "1/m") => Div(1e2),
        (Dimensionless, "1") => Mul(1.0),
        _ => return None,
    };
    Some(s)
}

/// Converts `value` of `kind` from unit `from` to unit `to`.
pub fn convert_units(value: f64, kind: Quantity, from: &str, to: &str) -> Result<f64, CliError> {
    let unknown = |u: &str| CliError::Config(format!("unknown {kind} unit {u:?}"));
    let a = scale(kind, from).ok_or_else(|| unknown(from))?;
    let b = scale(kind, to).ok_or_else(|| unknown(to))?;
    if a == b {
        return Ok(value);
    }
    Ok(b.cgs_to_unit(a.to_cgs(value)))
}
