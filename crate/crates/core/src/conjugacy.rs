//! Deciding when two glued models `φ_{K,λ}` and `φ_{K′,λ′}` are conjugate, and
//! building explicit conjugating maps of the annulus.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::pl_core::IntervalHomeo;

use crate::model_actions::{AnnulusAction, AnnulusMap, AnnulusPoint, GapSet, Sign, SignAssignment};
use crate::pl_core::{bump_family, CircleHomeo, PlError};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockTag {
    Point,
    Interval,
}

/// Point/interval tag of each block of a `K`, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPattern(pub Vec<BlockTag>);

impl BlockPattern {
    pub fn of(k: &GapSet) -> Self {
        BlockPattern(
            k.blocks()
                .iter()
                .map(|(a, b)| if a == b { BlockTag::Point } else { BlockTag::Interval })
                .collect(),
        )
    }

    pub fn reversed(&self) -> Self {
        BlockPattern(self.0.iter().rev().copied().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Increasing,
    Decreasing,
    None,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Increasing => "increasing",
            Orientation::Decreasing => "decreasing",
            Orientation::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConjugacyError {
    #[error("no {0} homeomorphism of [0, 1] maps K onto K′: block patterns differ")]
    PatternMismatch(Orientation),
    #[error("gap index {index} out of range: K has {gaps} gaps")]
    BadIndex { index: usize, gaps: usize },
    #[error("witness recipe is invalid: {0}")]
    BadRecipe(#[from] PlError),
}

/// The PL homeomorphism sending each block of `K` affinely onto its matched
/// block of `K′` and each gap affinely onto the matched gap.
pub fn block_matching_homeo(k: &GapSet, k2: &GapSet, orientation: Orientation) -> Result<IntervalHomeo, ConjugacyError> {
    let (p, p2) = (BlockPattern::of(k), BlockPattern::of(k2));
    let matches = match orientation {
        Orientation::Increasing => p == p2,
        Orientation::Decreasing => p.reversed() == p2,
        Orientation::None => false,
    };
    if !matches {
        return Err(ConjugacyError::PatternMismatch(orientation));
    }
    let n = k.block_count();
    let mut points = Vec::with_capacity(2 * n);
    for (i, (a, b)) in k.blocks().iter().enumerate() {
        let (ta, tb) = match orientation {
            Orientation::Increasing => {
                let (c, d) = &k2.blocks()[i];
                (c.clone(), d.clone())
            }
            _ => {
                let (c, d) = &k2.blocks()[n - 1 - i];
                (d.clone(), c.clone())
            }
        };
        points.push((a.clone(), ta));
        if a != b {
            points.push((b.clone(), tb));
        }
    }
    Ok(IntervalHomeo::new(points)?)
}

/// `(r, θ) ↦ (h(r), θ)`.
pub fn lift_to_annulus(h: &IntervalHomeo) -> AnnulusMap {
    if h.is_identity() {
        AnnulusMap::Identity
    } else {
        AnnulusMap::Radial(h.clone())
    }
}

/// The full turn `(r, θ) ↦ (r, θ + (r - r₁)/(r₂ - r₁))` on the gap cylinder
/// `(r₁, r₂) × S¹`, the identity elsewhere. It carries `φ_{K,λ}` with `λ = +1`
/// on the gap to the same model with `λ = -1` there.
pub fn twist_conjugator(k: &GapSet, gap_index: usize) -> Result<AnnulusMap, ConjugacyError> {
    let (lo, hi) = k.gap(gap_index).ok_or(ConjugacyError::BadIndex {
        index: gap_index,
        gaps: k.gap_count(),
    })?;
    Ok(AnnulusMap::Twist {
        lo: lo.clone(),
        hi: hi.clone(),
        turns: 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistStep {
    pub gap: usize,
    pub lo: Rational,
    pub hi: Rational,
    pub turns: i64,
}

/// Serializable construction of a witness: a radial base map followed by
/// twists on gaps of `K′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecipe {
    pub matching: Orientation,
    pub base: Vec<(Rational, Rational)>,
    pub twists: Vec<TwistStep>,
}

impl WitnessRecipe {
    pub fn build(&self) -> Result<AnnulusMap, ConjugacyError> {
        let base = IntervalHomeo::new(self.base.clone())?;
        let mut map = lift_to_annulus(&base);
        for t in &self.twists {
            if t.lo >= t.hi {
                return Err(ConjugacyError::BadRecipe(PlError::Unsorted));
            }
            map = map.then(AnnulusMap::Twist {
                lo: t.lo.clone(),
                hi: t.hi.clone(),
                turns: t.turns,
            });
        }
        Ok(map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyVerdict {
    pub conjugate: bool,
    pub orientation: Orientation,
    pub witness: Option<AnnulusMap>,
    pub base_homeo: Option<IntervalHomeo>,
    /// Signs on the gaps of `K′` obtained by pushing `λ` through the base map.
    pub transported: Option<SignAssignment>,
    pub recipe: Option<WitnessRecipe>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDocument {
    pub conjugate: bool,
    pub orientation: Orientation,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessRecipe>,
    pub test_family: Vec<String>,
}

impl ConjugacyVerdict {
    fn negative() -> Self {
        ConjugacyVerdict {
            conjugate: false,
            orientation: Orientation::None,
            witness: None,
            base_homeo: None,
            transported: None,
            recipe: None,
        }
    }

    pub fn to_document(&self) -> VerdictDocument {
        VerdictDocument {
            conjugate: self.conjugate,
            orientation: self.orientation,
            witness: self.recipe.clone(),
            test_family: standard_family_labels(),
        }
    }
}

/// Conjugacy of `φ_{K,λ}` and `φ_{K′,λ′}`. The verdict depends only on the
/// block patterns; the signs decide which twists enter the witness.
pub fn decide_conjugacy(k: &GapSet, lambda: &SignAssignment, k2: &GapSet, lambda2: &SignAssignment) -> ConjugacyVerdict {
    let (p, p2) = (BlockPattern::of(k), BlockPattern::of(k2));
    let orientation = if p == p2 {
        Orientation::Increasing
    } else if p.reversed() == p2 {
        Orientation::Decreasing
    } else {
        return ConjugacyVerdict::negative();
    };
    let base = block_matching_homeo(k, k2, orientation).expect("patterns match");
    let gaps = k.gap_count();
    let transported = SignAssignment(
        (0..gaps)
            .map(|j| match orientation {
                Orientation::Increasing => lambda.get(j),
                _ => lambda.get(gaps - 1 - j).negate(),
            })
            .collect(),
    );
    let mut twists = Vec::new();
    for (j, (lo, hi)) in k2.gaps().into_iter().enumerate() {
        let want = lambda2.0.get(j).copied().unwrap_or(transported.get(j));
        let turns = match (transported.get(j), want) {
            (Sign::Plus, Sign::Minus) => 1,
            (Sign::Minus, Sign::Plus) => -1,
            _ => continue,
        };
        twists.push(TwistStep { gap: j, lo, hi, turns });
    }
    let recipe = WitnessRecipe {
        matching: orientation,
        base: base.points().to_vec(),
        twists,
    };
    ConjugacyVerdict {
        conjugate: true,
        orientation,
        witness: Some(recipe.build().expect("recipe from valid data")),
        base_homeo: Some(base),
        transported: Some(transported),
        recipe: Some(recipe),
    }
}

/// Whether `g ∘ A(f) = B(f) ∘ g` holds exactly at every sample point for
/// every test map.
pub fn verify_conjugacy<A, B>(g: &AnnulusMap, a: &A, b: &B, test_maps: &[CircleHomeo], sample_points: &[AnnulusPoint]) -> bool
where
    A: AnnulusAction + ?Sized,
    B: AnnulusAction + ?Sized,
{
    let moved: Vec<AnnulusPoint> = sample_points.iter().map(|x| g.eval(x)).collect();
    test_maps.iter().all(|f| {
        let (af, bf) = (a.image(f), b.image(f));
        sample_points
            .iter()
            .zip(&moved)
            .all(|(x, gx)| g.eval(&af.eval(x)) == bf.eval(gx))
    })
}

/// `R_{1/3}`, `R_{1/2}`, two tent maps fixing a neighbourhood of 0 and the
/// composite `b₀ ∘ R_{1/3} ∘ b₁`.
pub fn standard_test_family() -> Vec<CircleHomeo> {
    let third = CircleHomeo::rotation(&Rational::new(1, 3));
    let bumps = bump_family(&Rational::zero(), &Rational::new(1, 4), 2).expect("valid bump parameters");
    let composite = bumps[0].compose(&third).compose(&bumps[1]);
    vec![
        third,
        CircleHomeo::rotation(&Rational::new(1, 2)),
        bumps[0].clone(),
        bumps[1].clone(),
        composite,
    ]
}

pub fn standard_family_labels() -> Vec<String> {
    ["R(1/3)", "R(1/2)", "bump(0,1/4)#0", "bump(0,1/4)#1", "bump#0∘R(1/3)∘bump#1"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// `n × n` points `(i/(n-1), j/n)`.
pub fn rational_grid(n: usize) -> Vec<AnnulusPoint> {
    let n = n.max(2) as i64;
    let mut out = Vec::with_capacity((n * n) as usize);
    for i in 0..n {
        for j in 0..n {
            out.push(AnnulusPoint::new(Rational::new(i, n - 1), Rational::new(j, n)).expect("radius in [0, 1]"));
        }
    }
    out
}
