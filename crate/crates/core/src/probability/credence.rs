use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::semantics::{Limits, Valuation, ValuationMode, WorldSpace};

/// A probability mass function over the worlds of a [`WorldSpace`].
///
/// Weights are indexed by world in enumeration order, are non-negative and
/// sum to one (exactly, for exact scalars).
#[derive(Clone, Debug)]
pub struct Credence<S> {
    space: Arc<WorldSpace>,
    weights: Vec<S>,
}

impl<S: Scalar> Credence<S> {
    pub fn new(space: Arc<WorldSpace>, weights: Vec<S>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::InvalidCredence(format!(
                "{} weights for {} worlds",
                weights.len(),
                space.len()
            )));
        }
        if let Some(w) = weights.iter().position(Scalar::is_negative) {
            return Err(Error::InvalidCredence(format!(
                "negative weight at world {}",
                space.valuation(w)
            )));
        }
        let total = sum(weights.iter());
        if !total.approx_eq(&S::one()) {
            return Err(Error::InvalidCredence(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { space, weights })
    }

    /// Divides by the total so the result sums to one.
    pub fn normalized(space: Arc<WorldSpace>, weights: Vec<S>) -> Result<Self> {
        let total = sum(weights.iter());
        if total <= S::zero() {
            return Err(Error::InvalidCredence("total weight is not positive".into()));
        }
        let weights = weights.into_iter().map(|w| w / total.clone()).collect();
        Self::new(space, weights)
    }

    pub fn point_mass(space: Arc<WorldSpace>, world: usize) -> Self {
        let mut weights = vec![S::zero(); space.len()];
        weights[world] = S::one();
        Self { space, weights }
    }

    /// Half of the mass on each of two worlds; a point mass if they coincide.
    pub fn split(space: Arc<WorldSpace>, first: usize, second: usize) -> Self {
        if first == second {
            return Self::point_mass(space, first);
        }
        let half = S::from_ratio(1, 2);
        let mut weights = vec![S::zero(); space.len()];
        weights[first] = half.clone();
        weights[second] = half;
        Self { space, weights }
    }

    pub fn uniform(space: Arc<WorldSpace>) -> Self {
        let n = space.len() as u64;
        let weights = vec![S::from_ratio(1, n); space.len()];
        Self { space, weights }
    }

    /// Builds a credence from explicit world weights; unlisted worlds get 0.
    pub fn from_assignments<I>(atoms: &BTreeSet<String>, mode: ValuationMode, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Valuation, S)>,
    {
        let space = Arc::new(WorldSpace::new(atoms, mode, &Limits::default())?);
        let mut weights = vec![S::zero(); space.len()];
        for (v, w) in pairs {
            let i = space.index_of(&v).ok_or_else(|| {
                Error::InvalidCredence(format!("world `{v}` does not match atoms {atoms:?} in {mode} mode"))
            })?;
            weights[i] = weights[i].clone() + w;
        }
        Self::new(space, weights)
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        &self.space
    }

    pub fn atoms(&self) -> &[String] {
        self.space.atoms()
    }

    pub fn mode(&self) -> ValuationMode {
        self.space.mode()
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn weight(&self, world: usize) -> &S {
        &self.weights[world]
    }

    /// Worlds with positive weight, in enumeration order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &S)> {
        self.weights.iter().enumerate().filter(|(_, w)| !w.is_zero())
    }

    /// Multiplies every weight by `factor` and renormalises.
    pub fn rescaled(&self, factor: &S) -> Result<Self> {
        let weights = self.weights.iter().map(|w| w.clone() * factor.clone()).collect();
        Self::normalized(self.space.clone(), weights)
    }

    /// Converts weights into another scalar type via their `n/d` rendering.
    pub fn convert<T: Scalar>(&self) -> Result<Credence<T>> {
        let weights = self
            .weights
            .iter()
            .map(|w| {
                T::parse_scalar(&w.to_string())
                    .ok_or_else(|| Error::InvalidCredence(format!("cannot convert weight {w}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Credence::new(self.space.clone(), weights)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CredenceFile = serde_json::from_str(text).map_err(|e| Error::InvalidCredence(e.to_string()))?;
        let atoms: BTreeSet<String> = raw.atoms.iter().cloned().collect();
        if atoms.len() != raw.atoms.len() {
            return Err(Error::InvalidCredence("duplicate atom in `atoms`".into()));
        }
        let mut pairs = Vec::with_capacity(raw.weights.len());
        for (key, value) in &raw.weights {
            let v = Valuation::parse(key, raw.mode)?;
            let w = S::parse_scalar(value)
                .ok_or_else(|| Error::InvalidCredence(format!("bad weight `{value}` for `{key}`")))?;
            pairs.push((v, w));
        }
        Self::from_assignments(&atoms, raw.mode, pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("credence serialisation cannot fail")
    }
}

pub(crate) fn sum<'a, S: Scalar>(it: impl Iterator<Item = &'a S>) -> S {
    it.fold(S::zero(), |acc, w| acc + w.clone())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CredenceFile {
    atoms: Vec<String>,
    #[serde(default)]
    mode: ValuationMode,
    weights: BTreeMap<String, String>,
}

struct Weights<'a, S>(&'a Credence<S>);

impl<S: Scalar> Serialize for Weights<'_, S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let cr = self.0;
        let mut map = s.serialize_map(None)?;
        for (i, w) in cr.support() {
            map.serialize_entry(&cr.space.valuation(i).to_string(), &w.to_string())?;
        }
        map.end()
    }
}

impl<S: Scalar> Serialize for Credence<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("atoms", self.atoms())?;
        map.serialize_entry("mode", &self.mode())?;
        map.serialize_entry("weights", &Weights(self))?;
        map.end()
    }
}

impl<S: Scalar> fmt::Display for Credence<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .map(|(i, w)| format!("{{{}}}: {w}", self.space.valuation(i)))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    type Q = BigRational;

    fn q(n: u64, d: u64) -> Q {
        Q::from_ratio(n, d)
    }

    const JSON: &str = r#"{"atoms":["a","b"],"mode":"bivalent","weights":{"a=1,b=0":"9/10","a=0,b=0":"1/10"}}"#;

    #[test]
    fn json_round_trip() {
        let cr = Credence::<Q>::from_json(JSON).unwrap();
        assert_eq!(cr.weights(), &[q(1, 10), q(0, 1), q(9, 10), q(0, 1)]);
        let back = Credence::<Q>::from_json(&cr.to_json()).unwrap();
        assert_eq!(back.weights(), cr.weights());
        let compact = serde_json::to_string(&cr).unwrap();
        assert_eq!(
            compact,
            r#"{"atoms":["a","b"],"mode":"bivalent","weights":{"a=0,b=0":"1/10","a=1,b=0":"9/10"}}"#
        );
    }

    #[test]
    fn rejects_bad_files() {
        let short = JSON.replace("1/10", "1/20");
        assert!(matches!(
            Credence::<Q>::from_json(&short),
            Err(Error::InvalidCredence(_))
        ));
        let half = JSON.replace("a=0,b=0", "a=1/2,b=0");
        assert!(Credence::<Q>::from_json(&half).is_err());
        let stray = JSON.replace("a=0,b=0", "a=0,c=0");
        assert!(Credence::<Q>::from_json(&stray).is_err());
        let neg = r#"{"atoms":["a"],"mode":"bivalent","weights":{"a=1":"3/2","a=0":"-1/2"}}"#;
        assert!(Credence::<Q>::from_json(neg).is_err());
    }

    #[test]
    fn mode_defaults_to_trivalent() {
        let cr = Credence::<Q>::from_json(r#"{"atoms":["a"],"weights":{"a=1/2":"1"}}"#).unwrap();
        assert_eq!(cr.mode(), ValuationMode::Trivalent);
        assert_eq!(cr.support().count(), 1);
    }

    #[test]
    fn float_credences_tolerate_rounding() {
        let cr = Credence::<f64>::from_json(r#"{"atoms":["a"],"mode":"bivalent","weights":{"a=1":"0.1","a=0":"0.9"}}"#)
            .unwrap();
        assert_eq!(cr.weights().len(), 2);
        let exact: Credence<Q> = Credence::<Q>::from_json(JSON).unwrap();
        let float: Credence<f64> = exact.convert().unwrap();
        assert!((float.weight(2) - 0.9).abs() < 1e-12);
    }
}
