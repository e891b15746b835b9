//! Measures with prescribed non-ergodic and non-weak-mixing directions.
//!
//! For a concise family `L_1, …, L_n`, the wall measures on `K_i = L_i^⊥`
//! generate under convolution exactly the carriers `K_{i_1} + … + K_{i_r}`;
//! the directions orthogonal to such a sum are already orthogonal to one
//! `K_i`, so both concise sets come back as the input.

use serde_json::{json, Value};

use super::concise::{concise_hull, nonergodic_concise, nonwm_concise, ConciseSet};
use crate::error::{Error, Result};
use crate::linalg::{zero_vector, Subspace};
use crate::measure::{Kind, Raw, Space, SymbolicMeasure};

#[derive(Debug, Clone)]
pub struct Realization {
    /// Reduced measure on `R^d`: the closure without `δ_0`.
    pub measure: SymbolicMeasure,
    /// Input after pruning to a concise family, in canonical order.
    pub target: Vec<Subspace>,
    pub warnings: Vec<String>,
    /// Carrier subspaces of the closure.
    pub closure: Vec<Subspace>,
    pub nonergodic: ConciseSet,
    pub nonwm: ConciseSet,
    pub verified: bool,
    /// Same check after pushing the measure to the torus.
    pub torus_verified: bool,
}

impl Realization {
    pub fn to_json(&self) -> Value {
        json!({
            "measure": crate::measure::codec::measure_to_json(&self.measure),
            "target": self.target.iter().map(Subspace::to_json).collect::<Vec<_>>(),
            "warnings": self.warnings,
            "carrier_closure": self.closure.iter().map(Subspace::to_json).collect::<Vec<_>>(),
            "nonergodic": self.nonergodic.to_json(),
            "nonwm": self.nonwm.to_json(),
            "verified": self.verified,
            "torus_verified": self.torus_verified,
        })
    }
}

fn matches_target(set: &ConciseSet, target: &[Subspace]) -> bool {
    set.families.is_empty() && set.subspaces == target
}

pub fn realize(directions: &[Subspace], cap: usize) -> Result<Realization> {
    let first = directions
        .first()
        .ok_or_else(|| Error::InvalidDirectionSet("the direction set is empty".into()))?;
    let field = first.field().clone();
    let d = first.ambient();
    for l in directions {
        if l.ambient() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: l.ambient(),
            });
        }
        if !crate::scalar::same_field(l.field(), &field) {
            return Err(Error::FieldMismatch);
        }
        if l.is_full() {
            return Err(Error::InvalidDirectionSet(
                "the whole space would need an atom at the identity".into(),
            ));
        }
        if l.is_zero() {
            return Err(Error::InvalidDirectionSet("{0} is not a direction".into()));
        }
    }
    let target = concise_hull(directions.to_vec());
    let mut warnings = Vec::new();
    let mut input = directions.to_vec();
    input.sort();
    input.dedup();
    if input != target {
        warnings.push(format!(
            "input was not concise; pruned {} member(s)",
            input.len() - target.len()
        ));
    }
    let raws = target
        .iter()
        .map(|l| {
            Raw::boxed(
                l.orthocomplement().basis().to_vec(),
                zero_vector(&field, d),
            )
        })
        .collect();
    let sigma = SymbolicMeasure::new(Space::Euclid(d), &field, false, raws)?;
    let closure = sigma.exp(cap)?;
    let identity = closure
        .identity_atom()
        .expect("the closure contains the identity");
    let measure = closure.restrict_components(|i, _| i != identity);
    let carriers: Vec<Subspace> = measure
        .components()
        .iter()
        .filter_map(|c| match c.kind() {
            Kind::Box { carrier } => Some(carrier.subspace().clone()),
            _ => None,
        })
        .collect();
    let nonergodic = nonergodic_concise(&measure, 0)?;
    let nonwm = nonwm_concise(&measure)?;
    let verified = matches_target(&nonergodic, &target) && matches_target(&nonwm, &target);
    let torus = measure.pushforward_quotient()?;
    let torus_verified = matches_target(&nonergodic_concise(&torus, 0)?, &target)
        && matches_target(&nonwm_concise(&torus)?, &target);
    Ok(Realization {
        measure,
        target,
        warnings,
        closure: carriers,
        nonergodic,
        nonwm,
        verified,
        torus_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::DEFAULT_CLOSURE_CAP;
    use crate::scalar::FieldSpec;

    #[test]
    fn axes_in_the_plane() {
        let f = FieldSpec::rationals();
        let l = vec![
            Subspace::span_ints(&f, &[&[1, 0]]),
            Subspace::span_ints(&f, &[&[0, 1]]),
        ];
        let r = realize(&l, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(r.verified && r.torus_verified);
        assert_eq!(r.closure.len(), 3);
    }

    #[test]
    fn line_and_plane_in_space() {
        let f = FieldSpec::rationals();
        let l = vec![
            Subspace::span_ints(&f, &[&[1, 1, 1]]),
            Subspace::span_ints(&f, &[&[1, 0, 0], &[0, 1, 0]]),
        ];
        let r = realize(&l, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(r.verified);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn degenerate_inputs() {
        let f = FieldSpec::rationals();
        assert!(matches!(
            realize(&[Subspace::full(&f, 2)], DEFAULT_CLOSURE_CAP),
            Err(Error::InvalidDirectionSet(_))
        ));
        let r = realize(
            &[
                Subspace::span_ints(&f, &[&[1, 0, 0]]),
                Subspace::span_ints(&f, &[&[1, 0, 0], &[0, 1, 0]]),
            ],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert!(r.verified);
    }
}
