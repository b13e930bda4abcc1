use crate::model_actions::{AnnulusPoint, GapSet};
use crate::pl_core::{CircleHomeo, PlFunction};
use crate::rational::Rational;

use super::annulus::{recover_blocks, FiberProbe, GapRecovery};
use super::oracle::TorusOracle;
use super::RecoveryError;

struct TorusProbe<'a, O: ?Sized>(&'a O);

impl<O: TorusOracle + ?Sized> FiberProbe for TorusProbe<'_, O> {
    fn profile(&self, g: &CircleHomeo, theta0: &Rational) -> Option<PlFunction> {
        self.0.cut_profile(g, theta0)
    }

    fn fixes(&self, g: &CircleHomeo, r: &Rational, theta0: &Rational) -> bool {
        let p = AnnulusPoint::new(r.clone(), theta0.clone()).expect("radius in [0, 1]");
        let t = self.0.chart().to_torus(&p);
        self.0.apply(g, &t) == t
    }
}

/// The invariant circles met by the fiber `θ₀` of the cut annulus, as a `K`
/// whose first and last blocks are the two sides of the cut circle.
pub fn recover_torus_circle<O: TorusOracle + ?Sized>(
    oracle: &O,
    theta0: &Rational,
    budget: usize,
) -> Result<GapRecovery, RecoveryError> {
    let raw = recover_blocks(&TorusProbe(oracle), theta0, budget)?;
    let (first, last) = match (raw.blocks.first(), raw.blocks.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(RecoveryError::EmptyFixedSet),
    };
    if !first.0.is_zero() || last.1 != Rational::one() {
        return Err(RecoveryError::GluedPointMoved);
    }
    Ok(GapRecovery {
        gaps: GapSet::new(raw.blocks)?,
        certified: raw.certified,
        max_width: raw.max_width,
        budget,
        levels: raw.levels,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::model_actions::{ModelParams, Sign, SignAssignment, TorusModel, TorusPoint};
    use crate::rational::q;
    use crate::recovery::{OpaqueTorus, DEFAULT_BUDGET};

    fn glued(k: &GapSet, l: &[Sign]) -> TorusModel {
        TorusModel::Glued(Arc::new(ModelParams::new(k.clone(), SignAssignment(l.to_vec())).unwrap()))
    }

    #[test]
    fn glued_models_round_trip() {
        let b = GapSet::boundary();
        let rec = recover_torus_circle(&glued(&b, &[Sign::Minus]), &q(0, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(rec.gaps, b);
        assert!(rec.certified);
        let k = GapSet::new(vec![(q(0, 1), q(0, 1)), (q(1, 4), q(1, 2)), (q(1, 1), q(1, 1))]).unwrap();
        let rec = recover_torus_circle(&glued(&k, &[Sign::Plus, Sign::Minus]), &q(2, 5), DEFAULT_BUDGET).unwrap();
        assert_eq!(rec.gaps, k);
    }

    #[test]
    fn diagonal_action_cuts_along_the_diagonal() {
        let rec = recover_torus_circle(&TorusModel::Diagonal, &q(1, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(rec.gaps, GapSet::boundary());
        assert!(rec.certified);
        let opaque = recover_torus_circle(&OpaqueTorus(TorusModel::Diagonal), &q(1, 3), DEFAULT_BUDGET).unwrap();
        assert!(!opaque.certified);
        let blocks = opaque.gaps.blocks();
        assert_eq!(blocks.len(), 2);
        assert!(blocks[0].1 <= opaque.max_width);
        assert!(&Rational::one() - &blocks[1].0 <= opaque.max_width);
    }

    struct Shift;

    impl TorusOracle for Shift {
        fn apply(&self, _f: &CircleHomeo, p: &TorusPoint) -> TorusPoint {
            TorusPoint::new(&p.x + &q(1, 2), p.y.clone())
        }
    }

    #[test]
    fn non_model_oracles_fail() {
        assert_eq!(
            recover_torus_circle(&Shift, &q(0, 1), DEFAULT_BUDGET).unwrap_err(),
            RecoveryError::EmptyFixedSet
        );
    }
}
