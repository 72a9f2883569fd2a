use std::fmt::Display;

use tlj::scalars::{parse_literal, Literal};
use tlj::tl::RSpec;
use tlj::{Quadratic, Scalar};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ScalarMode {
    /// Exact when every literal lies in one quadratic field, floats otherwise.
    Auto,
    Exact,
    Float,
}

pub fn literal(name: &str, src: &str) -> Result<Literal, CliError> {
    parse_literal(src).map_err(|e| CliError::Parse(format!("--{name} `{src}`: {e}")))
}

/// Common radicand of exact literals, `Some(1)` when all are rational,
/// `None` when some literal is a float or two fields differ.
fn common_field(lits: &[&Literal]) -> Option<u64> {
    let mut d = 1;
    for l in lits {
        match l.as_exact()?.radicand() {
            Some(r) if r > 1 && d > 1 && r != d => return None,
            Some(r) if r > 1 => d = r,
            _ => {}
        }
    }
    Some(d)
}

/// Parameters of a representation in either scalar backend.
#[derive(Clone, Debug)]
pub enum Params {
    Exact(RSpec<Quadratic>),
    Float(RSpec<f64>),
}

impl Params {
    pub fn is_exact(&self) -> bool {
        matches!(self, Params::Exact(_))
    }

    pub fn to_float(&self) -> RSpec<f64> {
        match self {
            Params::Float(r) => r.clone(),
            Params::Exact(r) => RSpec::with_gauge(r.delta.to_f64(), r.a.to_f64(), r.b.to_f64(), r.gauge.to_f64()),
        }
    }
}

pub struct ParamArgs<'a> {
    pub delta: &'a str,
    pub a: Option<&'a str>,
    pub b: Option<&'a str>,
    pub chromatic: bool,
    pub mode: ScalarMode,
}

impl ParamArgs<'_> {
    pub fn build(&self) -> Result<Params, CliError> {
        let delta = literal("delta", self.delta)?;
        let mut lits = vec![delta.clone()];
        match (self.chromatic, self.a, self.b) {
            (true, None, None) => {}
            (true, _, _) => return Err(CliError::Parse("--chromatic derives a and b; drop --a/--b".into())),
            (false, Some(a), Some(b)) => {
                lits.push(literal("a", a)?);
                lits.push(literal("b", b)?);
            }
            (false, _, _) => return Err(CliError::Parse("give both --a and --b, or --chromatic".into())),
        }
        let field = common_field(&lits.iter().collect::<Vec<_>>());
        let exact = match (self.mode, field) {
            (ScalarMode::Float, _) | (ScalarMode::Auto, None) => false,
            (ScalarMode::Exact, None) => {
                return Err(CliError::Parse("parameters do not lie in a single quadratic field".into()))
            }
            (_, Some(_)) => true,
        };
        fn spec<S: Scalar>(vals: Vec<S>, chromatic: bool) -> Result<RSpec<S>, CliError> {
            let mut it = vals.into_iter();
            let delta = it.next().expect("delta");
            if chromatic {
                RSpec::chromatic(delta).map_err(|e| CliError::Parse(format!("--chromatic: {e}")))
            } else {
                Ok(RSpec::new(delta, it.next().expect("a"), it.next().expect("b")))
            }
        }
        if exact {
            let vals = lits.iter().map(|l| l.as_exact().expect("checked").clone()).collect();
            spec(vals, self.chromatic).map(Params::Exact)
        } else {
            spec(lits.iter().map(Literal::to_f64).collect(), self.chromatic).map(Params::Float)
        }
    }
}

/// A scalar rendered for output: its display form and a float approximation.
pub fn render<S: Scalar + Display>(x: &S) -> (String, f64) {
    let s = if S::EXACT { x.to_string() } else { fmt_f64(x.re_f64()) };
    (s, x.re_f64())
}

/// Shortest round-trip form, switching to exponent notation far from 1.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || (1e-4..1e15).contains(&x.abs()) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}
