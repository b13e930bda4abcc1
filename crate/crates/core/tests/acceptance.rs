//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use circle_actions::conjugacy::{
    decide_conjugacy, lift_to_annulus, rational_grid, standard_test_family, verify_conjugacy, Orientation,
};
use circle_actions::model_actions::{
    act_a_minus, act_a_plus, act_p, act_phi, act_phi_disc, act_phi_sphere, act_torus_diag, diag_chart, AnnulusMap,
    AnnulusModel, ConjugatedAction, DiscPoint, GapSet, ModelParams, Sign, SignAssignment, SpherePoint, TorusModel,
    TorusPoint,
};
use circle_actions::pl_core::CircleHomeo;
use circle_actions::recovery::{
    default_shrink_schedule, recover_annulus, recover_gapset, recover_line_conjugacy, recover_torus_circle,
    LineModel, DEFAULT_BUDGET,
};
use circle_actions::sampling;
use circle_actions::{q, Rational};

const MORPHISM_PAIRS: usize = 200;
const MORPHISM_POINTS: usize = 50;
const MORPHISM_MAX_BREAKS: usize = 6;
const MORPHISM_DEN: i64 = 64;
const MORPHISM_MAX_GAPS: usize = 4;
const MORPHISM_TARGET: Duration = Duration::from_secs(10);

const CHART_GRID: usize = 20;
const CHART_MAPS: usize = 20;

const ROTATION_ANGLES: usize = 20;
const ROTATION_MODELS: usize = 10;

const DECIDER_DEN: i64 = 8;
const DECIDER_MAX_BLOCKS: usize = 3;
const DECIDER_GRID: usize = 20;
const DECIDER_TARGET: Duration = Duration::from_secs(60);

const ROUND_TRIPS: usize = 50;
const ROUND_TRIP_MAX_GAPS: usize = 5;
const ROUND_TRIP_DEN: i64 = 32;
const CONJUGATED_ROUND_TRIPS: usize = 20;

const TORUS_FIXTURES: usize = 20;

const LINE_MAPS: usize = 10;
const LINE_GRID: i64 = 100;
const LINE_WIDTH_EXP: u32 = 20;

const POLE_MAPS: usize = 100;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_model(rng: &mut ChaCha8Rng, max_gaps: usize, den: i64) -> (GapSet, SignAssignment) {
    let k = sampling::gap_set(rng, max_gaps, den);
    let l = sampling::signs(rng, k.gap_count());
    (k, l)
}

fn group_morphism() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checks = 0usize;
    for pair in 0..MORPHISM_PAIRS {
        let f = sampling::circle_homeo(&mut rng, MORPHISM_MAX_BREAKS, MORPHISM_DEN);
        let g = sampling::circle_homeo(&mut rng, MORPHISM_MAX_BREAKS, MORPHISM_DEN);
        let fg = f.compose(&g);
        let (k, l) = random_model(&mut rng, MORPHISM_MAX_GAPS, MORPHISM_DEN);
        let phi = |h: &CircleHomeo| act_phi(&k, &l, h).unwrap();
        let actions: [(&str, &dyn Fn(&CircleHomeo) -> AnnulusMap); 4] = [
            ("p", &act_p),
            ("a-", &act_a_minus),
            ("a+", &act_a_plus),
            ("phi", &phi),
        ];
        let images: Vec<_> = actions.iter().map(|(n, a)| (*n, a(&fg), a(&f), a(&g))).collect();
        let (tfg, tf, tg) = (act_torus_diag(&fg), act_torus_diag(&f), act_torus_diag(&g));
        for _ in 0..MORPHISM_POINTS {
            let x = sampling::annulus_point(&mut rng, MORPHISM_DEN);
            for (name, afg, af, ag) in &images {
                check(afg.eval(&x) == af.eval(&ag.eval(&x)), || format!("{name} fails at pair {pair}, x = {x}"))?;
                checks += 1;
            }
            let t = TorusPoint::new(x.r.clone(), x.theta.clone());
            check(tfg.eval(&t) == tf.eval(&tg.eval(&t)), || format!("a_T2 fails at pair {pair}"))?;
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < MORPHISM_TARGET, || format!("{checks} exact checks took {elapsed:.2?}, over the target"))?;
    Ok(format!("{checks} exact checks in {elapsed:.2?}"))
}

fn chart_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let grid = rational_grid(CHART_GRID);
    let h = diag_chart();
    let shear = AnnulusMap::Shear(1);
    let mut literal_counterexample = None;
    for i in 0..CHART_MAPS {
        let f = sampling::circle_homeo(&mut rng, MORPHISM_MAX_BREAKS, MORPHISM_DEN);
        let (am, ap, at) = (act_a_minus(&f), act_a_plus(&f), act_torus_diag(&f));
        let flipped = am.clone().conjugated_by(&AnnulusMap::Flip);
        let sheared = ap.clone().conjugated_by(&shear);
        let literal = am.clone().conjugated_by(&shear);
        for x in &grid {
            check(h.forward(&am.eval(x)) == at.eval(&h.forward(x)), || format!("h∘a- ≠ a_T2∘h for map {i} at {x}"))?;
            check(ap.eval(x) == flipped.eval(x), || format!("a+ ≠ T∘a-∘T for map {i} at {x}"))?;
            check(sheared.eval(x) == am.eval(x), || format!("S∘a+∘S⁻¹ ≠ a- for map {i} at {x}"))?;
            if literal_counterexample.is_none() && literal.eval(x) != ap.eval(x) {
                literal_counterexample = Some(format!("map {i} at {x}"));
            }
        }
    }
    let note = match literal_counterexample {
        Some(at) => format!("; the orientation S∘a-∘S⁻¹ = a+ fails ({at}), so a± are conjugate via S as S∘a+∘S⁻¹ = a-"),
        None => String::new(),
    };
    Ok(format!(
        "{} maps × {} points, three identities exact{note}",
        CHART_MAPS,
        grid.len()
    ))
}

fn rotation_equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = rational_grid(CHART_GRID);
    for m in 0..ROTATION_MODELS {
        let (k, l) = random_model(&mut rng, MORPHISM_MAX_GAPS, MORPHISM_DEN);
        for _ in 0..ROTATION_ANGLES {
            let alpha = Rational::new(rng.gen_range(0..997), 997);
            let rot = CircleHomeo::rotation(&alpha);
            let phi = act_phi(&k, &l, &rot).unwrap();
            for x in &grid {
                let want = circle_actions::model_actions::AnnulusPoint::new(x.r.clone(), &x.theta + &alpha).unwrap();
                check(phi.eval(x) == want, || format!("model {m}, α = {alpha}, x = {x}"))?;
            }
        }
    }
    Ok(format!("{ROTATION_MODELS} models × {ROTATION_ANGLES} angles × {} points", grid.len()))
}

/// Every `K` with at most `max_blocks` blocks and endpoints in `(1/den)ℤ`.
fn all_gapsets(max_blocks: usize, den: i64) -> Vec<GapSet> {
    fn extend(prefix: &mut Vec<i64>, blocks: usize, den: i64, out: &mut Vec<Vec<i64>>) {
        // prefix holds endpoints b0, a1, b1, ..., and the last block ends at den
        let needed = 2 * (blocks - 1);
        if prefix.len() == needed {
            out.push(prefix.clone());
            return;
        }
        let lo = match prefix.last() {
            None => 0,
            Some(&v) if prefix.len() % 2 == 1 => v + 1,
            Some(&v) => v,
        };
        for v in lo..=den {
            prefix.push(v);
            extend(prefix, blocks, den, out);
            prefix.pop();
        }
    }
    let mut sets = Vec::new();
    for blocks in 1..=max_blocks {
        let mut raw = Vec::new();
        extend(&mut Vec::new(), blocks, den, &mut raw);
        for cuts in raw {
            let mut ends = vec![0];
            ends.extend(cuts);
            ends.push(den);
            let pairs: Vec<_> = ends.chunks(2).map(|c| (Rational::new(c[0], den), Rational::new(c[1], den))).collect();
            if let Ok(k) = GapSet::new(pairs) {
                sets.push(k);
            }
        }
    }
    sets
}

fn all_signs(len: usize) -> Vec<SignAssignment> {
    (0..1usize << len)
        .map(|mask| {
            SignAssignment(
                (0..len)
                    .map(|j| if mask >> j & 1 == 1 { Sign::Plus } else { Sign::Minus })
                    .collect(),
            )
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Enumerates every bijection between the blocks and keeps the monotone,
/// point-to-point and interval-to-interval ones.
fn brute_force_orientation(k: &GapSet, k2: &GapSet, perms: &[Vec<usize>]) -> Orientation {
    let (a, b) = (k.blocks(), k2.blocks());
    if a.len() != b.len() {
        return Orientation::None;
    }
    let mut increasing = false;
    let mut decreasing = false;
    for p in perms.iter().filter(|p| p.len() == a.len()) {
        let tags_match = (0..a.len()).all(|i| (a[i].0 == a[i].1) == (b[p[i]].0 == b[p[i]].1));
        if !tags_match {
            continue;
        }
        if p.windows(2).all(|w| w[0] < w[1]) {
            increasing = true;
        }
        if p.windows(2).all(|w| w[0] > w[1]) {
            decreasing = true;
        }
    }
    if increasing {
        Orientation::Increasing
    } else if decreasing {
        Orientation::Decreasing
    } else {
        Orientation::None
    }
}

fn decider_vs_brute_force() -> Outcome {
    let start = Instant::now();
    let sets = all_gapsets(DECIDER_MAX_BLOCKS, DECIDER_DEN);
    let perms: Vec<_> = (1..=DECIDER_MAX_BLOCKS).flat_map(permutations).collect();
    let models: Vec<(GapSet, SignAssignment, AnnulusModel)> = sets
        .iter()
        .flat_map(|k| {
            all_signs(k.gap_count()).into_iter().map(move |l| {
                let m = AnnulusModel::phi(ModelParams::new(k.clone(), l.clone()).unwrap());
                (k.clone(), l, m)
            })
        })
        .collect();
    let family = standard_test_family();
    let grid = rational_grid(DECIDER_GRID);
    let check_row = |(k, l, a): &(GapSet, SignAssignment, AnnulusModel)| -> Result<usize, String> {
        let mut positives = 0;
        for (k2, l2, b) in &models {
            let verdict = decide_conjugacy(k, l, k2, l2);
            let expected = brute_force_orientation(k, k2, &perms);
            check(verdict.orientation == expected && verdict.conjugate == (expected != Orientation::None), || {
                format!("K = {:?}, K′ = {:?}: decided {:?}, brute force {:?}", k.blocks(), k2.blocks(), verdict.orientation, expected)
            })?;
            check(verdict.witness.is_some() == verdict.conjugate, || "witness presence".into())?;
            if let Some(g) = &verdict.witness {
                positives += 1;
                check(verify_conjugacy(g, a, b, &family, &grid), || {
                    format!("witness fails for K = {:?} λ = {:?}, K′ = {:?} λ′ = {:?}", k.blocks(), l, k2.blocks(), l2)
                })?;
            }
        }
        Ok(positives)
    };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = models.len().div_ceil(threads);
    let counts: Vec<Result<usize, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = models
            .chunks(chunk)
            .map(|rows| {
                let check_row = &check_row;
                scope.spawn(move || rows.iter().map(check_row).sum::<Result<usize, String>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let positives = counts.into_iter().sum::<Result<usize, String>>()?;
    let pairs = models.len() * models.len();
    let elapsed = start.elapsed();
    let summary = format!(
        "{} sets, {} (K,λ), {pairs} pairs, {positives} witnesses verified on {} maps × {} points in {elapsed:.2?} on {threads} thread(s)",
        sets.len(),
        models.len(),
        family.len(),
        grid.len()
    );
    check(elapsed < DECIDER_TARGET, || format!("{summary}: over the {DECIDER_TARGET:?} target"))?;
    Ok(summary)
}

fn recovery_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..ROUND_TRIPS {
        let (k, l) = random_model(&mut rng, ROUND_TRIP_MAX_GAPS, ROUND_TRIP_DEN);
        let theta0 = Rational::new(rng.gen_range(0..ROUND_TRIP_DEN), ROUND_TRIP_DEN);
        let oracle = AnnulusModel::phi(ModelParams::new(k.clone(), l.clone()).unwrap());
        let rec = recover_annulus(&oracle, &theta0, DEFAULT_BUDGET).map_err(|e| format!("fixture {i}: {e}"))?;
        check(rec.recovery.gaps == k && rec.signs == l && rec.recovery.certified, || {
            format!("fixture {i}: recovered {:?} {:?}, expected {:?} {:?}", rec.recovery.gaps.blocks(), rec.signs, k.blocks(), l)
        })?;
    }
    for i in 0..CONJUGATED_ROUND_TRIPS {
        let (k, l) = random_model(&mut rng, ROUND_TRIP_MAX_GAPS, ROUND_TRIP_DEN);
        let h = sampling::interval_homeo(&mut rng, 5, ROUND_TRIP_DEN);
        let theta0 = Rational::new(rng.gen_range(0..ROUND_TRIP_DEN), ROUND_TRIP_DEN);
        let inner = AnnulusModel::phi(ModelParams::new(k.clone(), l).unwrap());
        let oracle = ConjugatedAction::new(lift_to_annulus(&h), inner);
        let rec = recover_gapset(&oracle, &theta0, DEFAULT_BUDGET).map_err(|e| format!("conjugated {i}: {e}"))?;
        let want = k.image(&h);
        check(rec.gaps == want && rec.certified, || {
            format!("conjugated {i}: recovered {:?}, expected {:?}", rec.gaps.blocks(), want.blocks())
        })?;
    }
    Ok(format!("{ROUND_TRIPS} (K,λ) and {CONJUGATED_ROUND_TRIPS} conjugated oracles recovered exactly"))
}

fn torus_circle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..TORUS_FIXTURES {
        let (k, l) = random_model(&mut rng, ROUND_TRIP_MAX_GAPS, ROUND_TRIP_DEN);
        let theta0 = Rational::new(rng.gen_range(0..ROUND_TRIP_DEN), ROUND_TRIP_DEN);
        let oracle = TorusModel::Glued(Arc::new(ModelParams::new(k.clone(), l).unwrap()));
        let rec = recover_torus_circle(&oracle, &theta0, DEFAULT_BUDGET).map_err(|e| format!("fixture {i}: {e}"))?;
        check(rec.gaps == k && rec.certified, || {
            format!("fixture {i}: recovered {:?}, expected {:?}", rec.gaps.blocks(), k.blocks())
        })?;
    }
    let diag = recover_torus_circle(&TorusModel::Diagonal, &q(1, 3), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    check(diag.gaps == GapSet::boundary(), || "diagonal action".into())?;
    Ok(format!("{TORUS_FIXTURES} glued fixtures and the diagonal action"))
}

fn line_conjugacy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid: Vec<Rational> = (0..LINE_GRID).map(|i| Rational::new(i, LINE_GRID - 1)).collect();
    let schedule = default_shrink_schedule();
    let tol = Rational::dyadic(LINE_WIDTH_EXP);
    let mut exact = 0usize;
    for m in 0..LINE_MAPS {
        let h = sampling::line_homeo(&mut rng, -1, 2, 6, 16);
        let out = recover_line_conjugacy(&LineModel::Conjugation(h.clone()), &grid, &schedule)
            .map_err(|e| format!("map {m}: {e}"))?;
        for p in &out {
            let hx = h.eval(&p.x);
            check(p.enclosure.lo <= hx && hx <= p.enclosure.hi, || format!("map {m}: h({}) outside enclosure", p.x))?;
            check(p.enclosure.width() <= tol, || format!("map {m}: enclosure at {} too wide", p.x))?;
            check(p.width <= tol && (&p.value - &hx).abs() <= p.width, || format!("map {m}: value at {}", p.x))?;
            exact += usize::from(p.exact && p.value == hx);
        }
        check(out.windows(2).all(|w| w[0].value < w[1].value), || format!("map {m}: not increasing"))?;
    }
    Ok(format!(
        "{LINE_MAPS} maps × {LINE_GRID} points, enclosures ≤ 2^-{LINE_WIDTH_EXP}, {exact} values exact"
    ))
}

fn poles_and_cone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..POLE_MAPS {
        let (k, l) = random_model(&mut rng, MORPHISM_MAX_GAPS, MORPHISM_DEN);
        let f = sampling::circle_homeo(&mut rng, MORPHISM_MAX_BREAKS, MORPHISM_DEN);
        let s = act_phi_sphere(&k, &l, &f).unwrap();
        let d = act_phi_disc(&k, &l, &f).unwrap();
        check(s.eval(&SpherePoint::NorthPole) == SpherePoint::NorthPole, || format!("north pole moves for map {i}"))?;
        check(s.eval(&SpherePoint::SouthPole) == SpherePoint::SouthPole, || format!("south pole moves for map {i}"))?;
        check(d.eval(&DiscPoint::Cone) == DiscPoint::Cone, || format!("cone point moves for map {i}"))?;
    }
    Ok(format!("{POLE_MAPS} maps fix both poles and the cone point"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 group morphism", group_morphism),
        ("2 chart identities", chart_identities),
        ("3 rotation equivariance", rotation_equivariance),
        ("4 conjugacy decider vs brute force", decider_vs_brute_force),
        ("5 recovery round trip", recovery_round_trip),
        ("6 torus invariant circle", torus_circle),
        ("7 line conjugacy recovery", line_conjugacy),
        ("8 sphere and disc fixed points", poles_and_cone),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.starts_with(o.as_str())) {
            continue;
        }
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
