use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pl_core::IntervalHomeo;
use crate::rational::Rational;

use super::ModelError;

/// A compact `K ⊆ [0, 1]` containing 0 and 1, stored as finitely many sorted
/// disjoint closed blocks `[a_i, b_i]`. Gaps are the open intervals
/// `(b_i, a_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GapSet {
    blocks: Vec<(Rational, Rational)>,
}

/// Where a radius falls relative to a [`GapSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Block(usize),
    Gap(usize),
}

impl GapSet {
    pub fn new(blocks: Vec<(Rational, Rational)>) -> Result<Self, ModelError> {
        let (Some(first), Some(last)) = (blocks.first(), blocks.last()) else {
            return Err(ModelError::EmptyGapSet);
        };
        if !first.0.is_zero() {
            return Err(ModelError::FirstBlockNotAtZero);
        }
        if last.1 != Rational::one() {
            return Err(ModelError::LastBlockNotAtOne);
        }
        for (i, (a, b)) in blocks.iter().enumerate() {
            if a > b {
                return Err(ModelError::ReversedBlock(i));
            }
        }
        for (i, w) in blocks.windows(2).enumerate() {
            if w[0].1 >= w[1].0 {
                return Err(ModelError::EmptyGap(i));
            }
        }
        Ok(GapSet { blocks })
    }

    /// `K = [0, 1]`, no gaps.
    pub fn full() -> Self {
        GapSet {
            blocks: vec![(Rational::zero(), Rational::one())],
        }
    }

    /// `K = {0, 1}`, one gap `(0, 1)`.
    pub fn boundary() -> Self {
        GapSet {
            blocks: vec![(Rational::zero(), Rational::zero()), (Rational::one(), Rational::one())],
        }
    }

    pub fn blocks(&self) -> &[(Rational, Rational)] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn gap_count(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Gap `j` as `(r₁, r₂)`.
    pub fn gap(&self, j: usize) -> Option<(&Rational, &Rational)> {
        if j + 1 < self.blocks.len() {
            Some((&self.blocks[j].1, &self.blocks[j + 1].0))
        } else {
            None
        }
    }

    pub fn gaps(&self) -> Vec<(Rational, Rational)> {
        self.blocks
            .windows(2)
            .map(|w| (w[0].1.clone(), w[1].0.clone()))
            .collect()
    }

    /// Panics when `r` lies outside `[0, 1]`.
    pub fn locate(&self, r: &Rational) -> Location {
        let idx = self.blocks.partition_point(|b| &b.0 <= r);
        assert!(idx > 0, "radius {r} below 0");
        let i = idx - 1;
        if r <= &self.blocks[i].1 {
            Location::Block(i)
        } else {
            assert!(i + 1 < self.blocks.len(), "radius {r} above 1");
            Location::Gap(i)
        }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        if r.is_negative() || r > &Rational::one() {
            return false;
        }
        matches!(self.locate(r), Location::Block(_))
    }

    /// `h(K)` for a homeomorphism of `[0, 1]`.
    pub fn image(&self, h: &IntervalHomeo) -> GapSet {
        let mut blocks: Vec<(Rational, Rational)> = self
            .blocks
            .iter()
            .map(|(a, b)| {
                let (x, y) = (h.eval(a), h.eval(b));
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        if !h.is_increasing() {
            blocks.reverse();
        }
        GapSet { blocks }
    }
}

/// The sign `λ` carried by a gap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-1",
            Sign::Plus => "+1",
        })
    }
}

impl FromStr for Sign {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-1" => Ok(Sign::Minus),
            "+1" | "1" => Ok(Sign::Plus),
            other => Err(ModelError::BadSign(other.to_string())),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `λ`: one sign per gap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SignAssignment(pub Vec<Sign>);

impl SignAssignment {
    pub fn uniform(sign: Sign, len: usize) -> Self {
        SignAssignment(vec![sign; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> Sign {
        self.0[j]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }
}

/// A validated pair `(K, λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelParams {
    gaps: GapSet,
    signs: SignAssignment,
}

/// JSON form `{"K": [["0","0"],["1/2","1"]], "lambda": ["-1"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    #[serde(rename = "K")]
    pub blocks: Vec<(Rational, Rational)>,
    #[serde(rename = "lambda")]
    pub signs: Vec<Sign>,
}

impl ModelParams {
    pub fn new(gaps: GapSet, signs: SignAssignment) -> Result<Self, ModelError> {
        if signs.len() != gaps.gap_count() {
            return Err(ModelError::SignMismatch {
                gaps: gaps.gap_count(),
                signs: signs.len(),
            });
        }
        Ok(ModelParams { gaps, signs })
    }

    pub fn gaps(&self) -> &GapSet {
        &self.gaps
    }

    pub fn signs(&self) -> &SignAssignment {
        &self.signs
    }

    pub fn to_document(&self) -> ModelDocument {
        ModelDocument {
            blocks: self.gaps.blocks().to_vec(),
            signs: self.signs.0.clone(),
        }
    }

    pub fn from_document(doc: &ModelDocument) -> Result<Self, ModelError> {
        ModelParams::new(GapSet::new(doc.blocks.clone())?, SignAssignment(doc.signs.clone()))
    }
}
