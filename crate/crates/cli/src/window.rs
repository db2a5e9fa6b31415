use num_bigint::BigInt;
use num_traits::One;
use somos_core::divis::{gap_scan, robinson_report, GapScan, RobinsonReport};
use somos_core::exactring::{fmt_rat, parse_rat};
use somos_core::somos::{extend, extend_through_zeros, SeqWindow, SomosSpec};
use somos_core::{ArithError, Rat};

use crate::args::SpecArgs;
use crate::error::{CliError, CliResult};

pub fn rat(field: &str, s: &str) -> CliResult<Rat> {
    parse_rat(s).map_err(|e| CliError::in_field(field, e))
}

pub fn rat_spec(a: &SpecArgs) -> CliResult<SomosSpec<Rat>> {
    let alpha = rat("alpha", &a.alpha)?;
    let beta = rat("beta", &a.beta)?;
    let initials = if a.init.is_empty() {
        vec![Rat::one(); a.k]
    } else {
        a.init
            .iter()
            .map(|s| rat("init", s))
            .collect::<CliResult<_>>()?
    };
    SomosSpec::new(a.k, alpha, beta, initials).map_err(|e| match e {
        ArithError::InvalidArgument(m) if m.contains("initial") => CliError::config("init", m),
        other => CliError::config("k", other.to_string()),
    })
}

fn hint(mut e: CliError) -> CliError {
    if e.kind == "zero_divisor" {
        e.message
            .push_str(" (--through-zeros continues past zero terms)");
    }
    e
}

/// A numeric window, integral when every term is.
#[derive(Clone, Debug, PartialEq)]
pub enum Window {
    Int(SeqWindow<BigInt>),
    Rat(SeqWindow<Rat>),
}

impl Window {
    /// Runs over ℤ when the data is integral, falling back to ℚ on an
    /// inexact division.
    pub fn build(a: &SpecArgs, lo: i64, hi: i64) -> CliResult<Self> {
        if lo > hi {
            return Err(CliError::config("from", format!("empty window {lo}..{hi}")));
        }
        let spec = rat_spec(a)?;
        let integral = spec.alpha.is_integer()
            && spec.beta.is_integer()
            && spec.initials.iter().all(Rat::is_integer);
        if integral && !a.through_zeros {
            let int_spec = spec.map(|x| x.to_integer());
            match extend(&int_spec, lo, hi) {
                Ok(w) => return Ok(Window::Int(w)),
                Err(f) if f.error == ArithError::NotDivisible => {}
                Err(f) => return Err(hint(f.into())),
            }
        }
        let w = if a.through_zeros {
            extend_through_zeros(&spec, lo, hi)?
        } else {
            extend(&spec, lo, hi).map_err(|f| hint(f.into()))?
        };
        Ok(Self::from_rat(w))
    }

    pub fn from_rat(w: SeqWindow<Rat>) -> Self {
        if w.terms.iter().all(Rat::is_integer) {
            Window::Int(w.map(|x| x.to_integer()))
        } else {
            Window::Rat(w)
        }
    }

    pub fn lo(&self) -> i64 {
        match self {
            Window::Int(w) => w.lo,
            Window::Rat(w) => w.lo,
        }
    }

    pub fn strings(&self) -> Vec<String> {
        match self {
            Window::Int(w) => w.terms.iter().map(|x| x.to_string()).collect(),
            Window::Rat(w) => w.terms.iter().map(fmt_rat).collect(),
        }
    }

    pub fn integral(&self) -> bool {
        matches!(self, Window::Int(_))
    }

    pub fn as_int(&self, what: &str) -> CliResult<&SeqWindow<BigInt>> {
        match self {
            Window::Int(w) => Ok(w),
            Window::Rat(_) => {
                Err(ArithError::InvalidArgument(format!("{what} needs an integer window")).into())
            }
        }
    }

    pub fn to_rat(&self) -> SeqWindow<Rat> {
        match self {
            Window::Int(w) => w.map(|x| Rat::from_integer(x.clone())),
            Window::Rat(w) => w.clone(),
        }
    }

    pub fn gap_scan(&self, p: u64, r_max: u32) -> CliResult<GapScan> {
        Ok(match self {
            Window::Int(w) => gap_scan(w, p, r_max)?,
            Window::Rat(w) => gap_scan(w, p, r_max)?,
        })
    }

    pub fn robinson(&self, primes: &[u64], r_max: u32) -> CliResult<RobinsonReport> {
        Ok(match self {
            Window::Int(w) => robinson_report(w, primes, r_max)?,
            Window::Rat(w) => robinson_report(w, primes, r_max)?,
        })
    }
}
