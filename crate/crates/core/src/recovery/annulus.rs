use serde::{Deserialize, Serialize};

use crate::model_actions::{AnnulusPoint, GapSet, ModelDocument, Sign, SignAssignment};
use crate::pl_core::{bump_family, CircleHomeo, ClosedInterval, PlFunction};
use crate::rational::Rational;

use super::enclosure::{extrapolate, Enclosure};
use super::oracle::ActionOracle;
use super::RecoveryError;

/// Number of nested bump radii `2^-k`, `k = 2..=budget+1`, used by default.
pub const DEFAULT_BUDGET: usize = 4;

const SAMPLES: i64 = 4096;
const BISECTION_DEPTH: u32 = 20;
const WINDOW: usize = 4;
const MAX_LEVELS: usize = 40;

/// Fixed points of a finite set of stabilizer elements on one fiber circle,
/// as sorted disjoint closed intervals of radii. Each endpoint is carried as
/// an enclosure, exact on the exact path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedFiberSet {
    components: Vec<(Enclosure, Enclosure)>,
    exact: bool,
}

impl FixedFiberSet {
    fn exact(components: Vec<ClosedInterval>) -> Self {
        FixedFiberSet {
            components: components
                .into_iter()
                .map(|(a, b)| (Enclosure::exact(a), Enclosure::exact(b)))
                .collect(),
            exact: true,
        }
    }

    /// Components with each endpoint reported at the middle of its enclosure.
    pub fn components(&self) -> Vec<ClosedInterval> {
        self.components.iter().map(|(a, b)| (a.mid(), b.mid())).collect()
    }

    pub fn enclosures(&self) -> &[(Enclosure, Enclosure)] {
        &self.components
    }

    /// Whether the set was computed from exact fiber profiles.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn max_width(&self) -> Rational {
        self.components
            .iter()
            .flat_map(|(a, b)| [a.width(), b.width()])
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Access to one fiber circle of a surface action, shared by the annulus and
/// torus recoveries.
pub(crate) trait FiberProbe {
    fn profile(&self, g: &CircleHomeo, theta0: &Rational) -> Option<PlFunction>;
    fn fixes(&self, g: &CircleHomeo, r: &Rational, theta0: &Rational) -> bool;
}

struct AnnulusProbe<'a, O: ?Sized>(&'a O);

impl<O: ActionOracle + ?Sized> FiberProbe for AnnulusProbe<'_, O> {
    fn profile(&self, g: &CircleHomeo, theta0: &Rational) -> Option<PlFunction> {
        self.0.fiber_profile(g, theta0)
    }

    fn fixes(&self, g: &CircleHomeo, r: &Rational, theta0: &Rational) -> bool {
        let p = AnnulusPoint::new(r.clone(), theta0.clone()).expect("radius in [0, 1]");
        self.0.apply(g, &p) == p
    }
}

fn intersect(a: &[ClosedInterval], b: &[ClosedInterval]) -> Vec<ClosedInterval> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let lo = std::cmp::max(&a[i].0, &b[j].0);
        let hi = std::cmp::min(&a[i].1, &b[j].1);
        if lo <= hi {
            out.push((lo.clone(), hi.clone()));
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

pub(crate) fn fixed_on_fiber<P: FiberProbe + ?Sized>(
    probe: &P,
    theta0: &Rational,
    generators: &[CircleHomeo],
) -> Result<FixedFiberSet, RecoveryError> {
    let theta0 = theta0.fract();
    if let Some(index) = generators.iter().position(|g| !g.fixes_neighbourhood(&theta0)) {
        return Err(RecoveryError::GeneratorNotInStabilizer { index, theta0 });
    }
    let profiles: Option<Vec<PlFunction>> = generators.iter().map(|g| probe.profile(g, &theta0)).collect();
    if let Some(profiles) = profiles {
        let mut set = vec![(Rational::zero(), Rational::one())];
        for p in &profiles {
            set = intersect(&set, &p.fixed_components());
        }
        return Ok(FixedFiberSet::exact(set));
    }
    Ok(bisect_fiber(&|r: &Rational| generators.iter().all(|g| probe.fixes(g, r, &theta0))))
}

/// Sampling plus bisection; used when no profile is available. Fixed
/// components narrower than the sampling step can be missed.
fn bisect_fiber(fixed: &dyn Fn(&Rational) -> bool) -> FixedFiberSet {
    let rs: Vec<Rational> = (0..=SAMPLES).map(|i| Rational::new(i, SAMPLES)).collect();
    let flags: Vec<bool> = rs.iter().map(fixed).collect();
    let tol = Rational::dyadic(BISECTION_DEPTH);
    let refine = |mut moved: Rational, mut kept: Rational| {
        while (&kept - &moved).abs() > tol {
            let mid = moved.midpoint(&kept);
            if fixed(&mid) {
                kept = mid;
            } else {
                moved = mid;
            }
        }
        Enclosure::new(moved, kept)
    };
    let mut components = Vec::new();
    let mut i = 0;
    while i < rs.len() {
        if !flags[i] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < rs.len() && flags[j + 1] {
            j += 1;
        }
        let lo = if i == 0 {
            Enclosure::exact(Rational::zero())
        } else {
            refine(rs[i - 1].clone(), rs[i].clone())
        };
        let hi = if j + 1 == rs.len() {
            Enclosure::exact(Rational::one())
        } else {
            refine(rs[j + 1].clone(), rs[j].clone())
        };
        components.push((lo, hi));
        i = j + 1;
    }
    FixedFiberSet {
        components,
        exact: false,
    }
}

/// `{r : oracle(g)(r, θ₀) = (r, θ₀) for every generator g}`.
pub fn fiber_fixed_set<O: ActionOracle + ?Sized>(
    oracle: &O,
    theta0: &Rational,
    generators: &[CircleHomeo],
) -> Result<FixedFiberSet, RecoveryError> {
    fixed_on_fiber(&AnnulusProbe(oracle), theta0, generators)
}

/// Blocks recovered from the fixed sets of nested bump families, before they
/// are validated as a `K`.
pub(crate) struct RawBlocks {
    pub blocks: Vec<ClosedInterval>,
    pub certified: bool,
    pub max_width: Rational,
    pub levels: usize,
}

/// Fixed sets `F(ρ)` for the bumps of radius `ρ = 2^-k`, `k = 2, 3, ...`.
/// Block endpoints of `F(ρ)` move affinely in `ρ` once `ρ` is small, so the
/// limit set is read off by extrapolating the last levels to `ρ = 0`.
pub(crate) fn recover_blocks<P: FiberProbe + ?Sized>(
    probe: &P,
    theta0: &Rational,
    budget: usize,
) -> Result<RawBlocks, RecoveryError> {
    if budget == 0 {
        return Err(RecoveryError::ZeroBudget);
    }
    let theta0 = theta0.fract();
    let mut generators = Vec::new();
    let mut history: Vec<(Rational, FixedFiberSet)> = Vec::new();
    let mut cap = MAX_LEVELS;
    for level in 1..=MAX_LEVELS {
        let rho = Rational::dyadic(level as u32 + 1);
        generators.push(bump_family(&theta0, &rho, 1).expect("radius below 1/2").remove(0));
        let set = fixed_on_fiber(probe, &theta0, &generators)?;
        if level == 1 && !set.is_exact() {
            cap = budget.max(WINDOW);
        }
        history.push((rho, set));
        if level >= budget {
            if let Some(raw) = extrapolate_blocks(&history) {
                return Ok(raw);
            }
        }
        if level >= cap {
            break;
        }
    }
    Ok(unsettled_blocks(&history))
}

fn extrapolate_blocks(history: &[(Rational, FixedFiberSet)]) -> Option<RawBlocks> {
    if history.len() < WINDOW {
        return None;
    }
    let tail = &history[history.len() - WINDOW..];
    let n = tail[0].1.components.len();
    if tail.iter().any(|(_, s)| s.components.len() != n) {
        return None;
    }
    let exact = tail.iter().all(|(_, s)| s.exact);
    let mut limits = Vec::with_capacity(n);
    for i in 0..n {
        let series = |pick: fn(&(Enclosure, Enclosure)) -> &Enclosure| -> Option<Enclosure> {
            let levels: Vec<_> = tail
                .iter()
                .map(|(rho, s)| (rho.clone(), pick(&s.components[i]).clone()))
                .collect();
            extrapolate(&levels, WINDOW)
        };
        limits.push((series(|c| &c.0)?, series(|c| &c.1)?));
    }
    let mut blocks: Vec<ClosedInterval> = Vec::with_capacity(n);
    let mut max_width = Rational::zero();
    for (lo, hi) in limits {
        let (mut a, mut b) = (lo.mid(), hi.mid());
        let mut width = std::cmp::max(lo.width(), hi.width());
        if a > b {
            let hull = lo.hull(&hi);
            width = hull.width();
            a = hull.mid();
            b = a.clone();
        }
        let (zero, one) = (Rational::zero(), Rational::one());
        let a = a.clamp(zero.clone(), one.clone());
        let b = b.clamp(zero, one);
        max_width = std::cmp::max(max_width, width);
        match blocks.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => blocks.push((a, b)),
        }
    }
    Some(RawBlocks {
        blocks,
        certified: exact && max_width.is_zero(),
        max_width,
        levels: history.len(),
    })
}

fn unsettled_blocks(history: &[(Rational, FixedFiberSet)]) -> RawBlocks {
    let (_, last) = history.last().expect("at least one level");
    let mut max_width = Rational::one();
    if let [.., (_, prev), _] = history {
        if prev.components.len() == last.components.len() {
            max_width = last.max_width();
            for ((a0, b0), (a1, b1)) in prev.components.iter().zip(&last.components) {
                let drift = std::cmp::max((&a1.mid() - &a0.mid()).abs(), (&b1.mid() - &b0.mid()).abs());
                max_width = std::cmp::max(max_width, &drift + &drift);
            }
        }
    }
    RawBlocks {
        blocks: last.components(),
        certified: false,
        max_width,
        levels: history.len(),
    }
}

/// `K` recovered from one fiber, with the quality of the recovery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRecovery {
    pub gaps: GapSet,
    pub certified: bool,
    pub max_width: Rational,
    pub budget: usize,
    pub levels: usize,
}

/// JSON form of a [`GapRecovery`] without signs, as reported for the torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRecoveryDocument {
    #[serde(rename = "K")]
    pub blocks: Vec<(Rational, Rational)>,
    pub certified: bool,
    pub max_width: Rational,
    pub theta0: Rational,
    pub budget: usize,
    pub levels: usize,
}

impl GapRecovery {
    pub fn to_document(&self, theta0: &Rational) -> GapRecoveryDocument {
        GapRecoveryDocument {
            blocks: self.gaps.blocks().to_vec(),
            certified: self.certified,
            max_width: self.max_width.clone(),
            theta0: theta0.fract(),
            budget: self.budget,
            levels: self.levels,
        }
    }
}

/// The `K` whose blocks are the limit of the fixed sets `F(ρ)` along the fiber
/// `θ₀`.
pub fn recover_gapset<O: ActionOracle + ?Sized>(
    oracle: &O,
    theta0: &Rational,
    budget: usize,
) -> Result<GapRecovery, RecoveryError> {
    let raw = recover_blocks(&AnnulusProbe(oracle), theta0, budget)?;
    Ok(GapRecovery {
        gaps: GapSet::new(raw.blocks)?,
        certified: raw.certified,
        max_width: raw.max_width,
        budget,
        levels: raw.levels,
    })
}

const RETRY_FRACTIONS: [(i64, i64); 8] = [(1, 3), (2, 3), (1, 5), (4, 5), (1, 7), (6, 7), (2, 9), (7, 9)];

fn displacement_sign<O: ActionOracle + ?Sized>(
    oracle: &O,
    k: &GapSet,
    gap: usize,
    theta0: &Rational,
    check_endpoints: bool,
) -> Result<Sign, RecoveryError> {
    let (lo, hi) = k.gap(gap).ok_or(RecoveryError::BadGap {
        index: gap,
        gaps: k.gap_count(),
    })?;
    let theta0 = theta0.fract();
    let f = bump_family(&theta0, &Rational::new(1, 64), 1).expect("valid bump").remove(0);
    let at = |r: Rational| AnnulusPoint::new(r, theta0.clone()).expect("radius in [0, 1]");
    if check_endpoints {
        for r in [lo, hi] {
            let p = at(r.clone());
            if oracle.apply(&f, &p) != p {
                return Err(RecoveryError::EndpointMoved { gap });
            }
        }
    }
    let width = hi - lo;
    let fractions = std::iter::once((1, 2)).chain(RETRY_FRACTIONS);
    for (n, d) in fractions {
        let r = lo + &(&width * &Rational::new(n, d));
        let img = oracle.apply(&f, &at(r.clone()));
        match img.r.cmp(&r) {
            std::cmp::Ordering::Greater => return Ok(Sign::Plus),
            std::cmp::Ordering::Less => return Ok(Sign::Minus),
            std::cmp::Ordering::Equal => {}
        }
    }
    Err(RecoveryError::Inconclusive { gap })
}

/// Sign of the radial displacement on gap `gap_index` along the fiber `θ₀`
/// under a bump `f ≥ id` fixing a neighbourhood of `θ₀`.
pub fn detect_sign<O: ActionOracle + ?Sized>(
    oracle: &O,
    k: &GapSet,
    gap_index: usize,
    theta0: &Rational,
) -> Result<Sign, RecoveryError> {
    displacement_sign(oracle, k, gap_index, theta0, true)
}

pub fn recover_signs<O: ActionOracle + ?Sized>(
    oracle: &O,
    k: &GapSet,
    theta0: &Rational,
) -> Result<SignAssignment, RecoveryError> {
    (0..k.gap_count())
        .map(|j| detect_sign(oracle, k, j, theta0))
        .collect::<Result<Vec<_>, _>>()
        .map(SignAssignment)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusRecovery {
    pub recovery: GapRecovery,
    pub signs: SignAssignment,
    pub theta0: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryDocument {
    #[serde(flatten)]
    pub model: ModelDocument,
    pub certified: bool,
    pub max_width: Rational,
    pub theta0: Rational,
    pub budget: usize,
    pub levels: usize,
}

impl AnnulusRecovery {
    pub fn to_document(&self) -> RecoveryDocument {
        RecoveryDocument {
            model: ModelDocument {
                blocks: self.recovery.gaps.blocks().to_vec(),
                signs: self.signs.0.clone(),
            },
            certified: self.recovery.certified,
            max_width: self.recovery.max_width.clone(),
            theta0: self.theta0.clone(),
            budget: self.recovery.budget,
            levels: self.recovery.levels,
        }
    }
}

/// `K` and `λ` together. Endpoint checks in the sign test are skipped when
/// `K` is only known up to an enclosure.
pub fn recover_annulus<O: ActionOracle + ?Sized>(
    oracle: &O,
    theta0: &Rational,
    budget: usize,
) -> Result<AnnulusRecovery, RecoveryError> {
    let recovery = recover_gapset(oracle, theta0, budget)?;
    let signs = (0..recovery.gaps.gap_count())
        .map(|j| displacement_sign(oracle, &recovery.gaps, j, theta0, recovery.certified))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AnnulusRecovery {
        recovery,
        signs: SignAssignment(signs),
        theta0: theta0.fract(),
    })
}
