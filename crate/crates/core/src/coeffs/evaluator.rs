use std::fmt;
use std::str::FromStr;

use super::{check_normalized, vacuum_unchecked, CoeffError};
use crate::forests::ThompsonElement;
use crate::graphpoly::{vacuum_via_chromatic, vacuum_via_state_sum, vacuum_via_tutte};
use crate::scalars::{Scalar, DEFAULT_TOLERANCE};
use crate::tl::RSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Expansion of both tree images in the diagram basis.
    TlExpansion,
    /// Tutte polynomial of the Thompson graph; needs `ab != 0`.
    Tutte,
    /// Chromatic polynomial of the Thompson graph; chromatic point only.
    Chromatic,
    /// Edge-subset state sum; chromatic point only.
    StateSum,
}

impl Backend {
    pub const ALL: [Backend; 4] = [Self::TlExpansion, Self::Tutte, Self::Chromatic, Self::StateSum];

    pub fn name(self) -> &'static str {
        match self {
            Self::TlExpansion => "tl",
            Self::Tutte => "tutte",
            Self::Chromatic => "chromatic",
            Self::StateSum => "state-sum",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = CoeffError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s || (s == "tl-expansion" && *b == Self::TlExpansion))
            .ok_or_else(|| CoeffError::UnknownBackend(s.to_string()))
    }
}

/// Whether `r` is the chromatic point of its loop value:
/// physical `a^2 = delta/(delta^2-1)` and `b/a = -1/delta`.
pub fn is_chromatic<S: Scalar>(r: &RSpec<S>, tol: f64) -> bool {
    let d = &r.delta;
    let d2m1 = d.clone() * d.clone() - S::one();
    if r.a.is_zero() || d.is_zero() || d2m1.is_zero() {
        return false;
    }
    let ratio_ok = (r.b.clone() * d.clone() / r.a.clone()).approx_eq(&-S::one(), tol);
    let a2 = r.gauge.clone() * r.a.clone() * r.a.clone();
    ratio_ok && a2.approx_eq(&(d.clone() / d2m1), tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VacuumEvaluator<S> {
    pub spec: RSpec<S>,
    pub backend: Backend,
    pub tolerance: f64,
}

impl<S: Scalar> VacuumEvaluator<S> {
    pub fn new(spec: RSpec<S>, backend: Backend) -> Self {
        VacuumEvaluator { spec, backend, tolerance: DEFAULT_TOLERANCE }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    /// Whether this backend can evaluate at the stored parameters.
    pub fn applicable(&self) -> bool {
        match self.backend {
            Backend::TlExpansion => true,
            Backend::Tutte => !self.spec.ab().is_zero(),
            Backend::Chromatic | Backend::StateSum => is_chromatic(&self.spec, self.tolerance),
        }
    }

    pub fn evaluate(&self, g: &ThompsonElement) -> Result<S, CoeffError> {
        check_normalized(&self.spec, self.tolerance)?;
        let r = &self.spec;
        let t = r.delta.clone() * r.delta.clone();
        match self.backend {
            Backend::TlExpansion => Ok(vacuum_unchecked(g, r)),
            Backend::Tutte => Ok(vacuum_via_tutte(g, r)?),
            Backend::Chromatic | Backend::StateSum if !is_chromatic(r, self.tolerance) => {
                Err(CoeffError::NotChromatic)
            }
            Backend::Chromatic => Ok(vacuum_via_chromatic(g, &t)?),
            Backend::StateSum => Ok(vacuum_via_state_sum(g, &t)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forests::enumerate_elements;
    use crate::scalars::Quadratic;

    #[test]
    fn backends_agree_at_chromatic_point() {
        let r = RSpec::chromatic(Quadratic::sqrt_int(3).unwrap()).unwrap();
        assert!(is_chromatic(&r, 0.0));
        let evs: Vec<_> = Backend::ALL.iter().map(|&b| VacuumEvaluator::new(r.clone(), b)).collect();
        assert!(evs.iter().all(|e| e.applicable()));
        for g in enumerate_elements(5) {
            let v: Vec<_> = evs.iter().map(|e| e.evaluate(&g).unwrap()).collect();
            assert!(v.iter().all(|x| *x == v[0]), "{g}");
        }
    }

    #[test]
    fn chromatic_backends_reject_other_points() {
        let r = RSpec::new(2.0, 1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt());
        assert!(!is_chromatic(&r, 1e-9));
        let ev = VacuumEvaluator::new(r.clone(), Backend::Chromatic);
        assert!(!ev.applicable());
        assert_eq!(ev.evaluate(&ThompsonElement::x0()), Err(CoeffError::NotChromatic));
        let v = VacuumEvaluator::new(r, Backend::Tutte).evaluate(&ThompsonElement::x0()).unwrap();
        assert!((v - 11.0 / 12.0).abs() < 1e-12);
        // the float chromatic point, unscaled
        let d = 2f64.sqrt();
        let r = RSpec::new(d, (d / (d * d - 1.0)).sqrt(), -(1.0 / (d * d * d - d)).sqrt());
        assert!(is_chromatic(&r, 1e-12));
        assert_eq!("state-sum".parse::<Backend>().unwrap(), Backend::StateSum);
        assert!("nope".parse::<Backend>().is_err());
    }
}
