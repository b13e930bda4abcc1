use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use circle_actions::conjugacy::{
    decide_conjugacy, lift_to_annulus, rational_grid, standard_family_labels, standard_test_family, verify_conjugacy,
    IntervalHomeo, VerdictDocument, WitnessRecipe,
};
use circle_actions::model_actions::{
    act_a_minus, act_a_plus, act_p, act_phi, act_phi_disc, act_phi_sphere, act_phi_torus, act_torus_diag,
    AnnulusModel, AnnulusPoint, ConjugatedAction, DiscPoint, GapSet, ModelDocument, ModelParams, Sign, SpherePoint,
    TorusModel, TorusPoint,
};
use circle_actions::pl_core::{CircleHomeo, LineHomeo, MapDocument};
use circle_actions::recovery::{
    default_shrink_schedule, recover_annulus, recover_line_conjugacy, recover_signs, recover_torus_circle, ActionOracle, FnOracle,
    LineActionOracle, LineModel, Opaque, OpaqueLine, OpaqueTorus, RecoveryError, TorusOracle, DEFAULT_BUDGET,
};
use circle_actions::Rational;

#[derive(Parser)]
#[command(name = "circle-actions", version, about = "Exact PL model actions on surfaces: evaluation, conjugacy and recovery")]
struct Cli {
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a circle map at a point.
    Eval {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Evaluate the image of a circle map under a model action.
    Act {
        #[arg(long, value_enum)]
        model: ModelKind,
        /// `(K, λ)` document, required by the glued models.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        map: PathBuf,
        /// `r,θ` (annulus, disc, sphere), `x,y` (torus), `cone`, `north` or `south`.
        #[arg(long)]
        point: String,
    },
    /// Decide whether two glued models are conjugate.
    Decide {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Check a witness on the standard test family and a rational grid.
    Verify {
        /// A witness recipe or a verdict document containing one.
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
    /// Recover `(K, λ)` from an annulus oracle fixture.
    RecoverAnnulus {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value = "0")]
        theta0: String,
        /// Take `K` from this document and recover only the signs.
        #[arg(long)]
        gaps: Option<PathBuf>,
    },
    /// Recover the invariant circle data from a torus oracle fixture.
    RecoverTorus {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value = "0")]
        theta0: String,
    },
    /// Recover the conjugating map of a line action on a grid.
    RecoverLine {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long)]
        grid: PathBuf,
        /// JSON list of strictly decreasing radii; defaults to 2^-2, ..., 2^-24.
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    P,
    AMinus,
    APlus,
    Phi,
    TorusDiag,
    PhiTorus,
    PhiDisc,
    PhiSphere,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot parse {what}: {message}")]
    Parse { what: String, message: String },
    #[error("invalid {what}: {message}")]
    Validation { what: String, message: String },
    #[error("{0}")]
    Recovery(#[from] RecoveryError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Recovery(e) if e.is_recovery_failure() => 3,
            _ => 2,
        }
    }
}

fn invalid(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Validation {
        what: what.into(),
        message: e.to_string(),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        what: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_rational(what: &str, s: &str) -> Result<Rational, CliError> {
    s.trim().parse().map_err(|e| CliError::Parse {
        what: what.into(),
        message: format!("{e}: `{s}`"),
    })
}

fn parse_pair(s: &str) -> Result<(Rational, Rational), CliError> {
    let (a, b) = s.split_once(',').ok_or_else(|| CliError::Parse {
        what: "point".into(),
        message: format!("expected `a,b`, got `{s}`"),
    })?;
    Ok((parse_rational("point", a)?, parse_rational("point", b)?))
}

fn read_map(path: &Path) -> Result<CircleHomeo, CliError> {
    let doc: MapDocument = read_json(path)?;
    CircleHomeo::from_document(&doc).map_err(|e| invalid("circle map", e))
}

fn read_model(path: &Path) -> Result<ModelParams, CliError> {
    let doc: ModelDocument = read_json(path)?;
    ModelParams::from_document(&doc).map_err(|e| invalid("(K, λ)", e))
}

fn annulus_point(s: &str) -> Result<AnnulusPoint, CliError> {
    let (r, theta) = parse_pair(s)?;
    AnnulusPoint::new(r, theta).map_err(|e| invalid("point", e))
}

fn pair_value(a: &Rational, b: &Rational) -> Value {
    json!([a.to_string(), b.to_string()])
}

fn eval(map: &Path, point: &str) -> Result<Value, CliError> {
    let f = read_map(map)?;
    let x = parse_rational("point", point)?;
    Ok(json!(f.eval(&x).to_string()))
}

fn act(model: ModelKind, data: Option<&Path>, map: &Path, point: &str) -> Result<Value, CliError> {
    let f = read_map(map)?;
    let params = || -> Result<ModelParams, CliError> {
        let path = data.ok_or_else(|| invalid("request", "this model needs --data with a (K, λ) document"))?;
        read_model(path)
    };
    let point = point.trim();
    Ok(match model {
        ModelKind::P | ModelKind::AMinus | ModelKind::APlus | ModelKind::Phi => {
            let m = match model {
                ModelKind::P => act_p(&f),
                ModelKind::AMinus => act_a_minus(&f),
                ModelKind::APlus => act_a_plus(&f),
                _ => {
                    let p = params()?;
                    act_phi(p.gaps(), p.signs(), &f).map_err(|e| invalid("(K, λ)", e))?
                }
            };
            let y = m.eval(&annulus_point(point)?);
            pair_value(&y.r, &y.theta)
        }
        ModelKind::TorusDiag | ModelKind::PhiTorus => {
            let (x, y) = parse_pair(point)?;
            let m = match model {
                ModelKind::TorusDiag => act_torus_diag(&f),
                _ => {
                    let p = params()?;
                    act_phi_torus(p.gaps(), p.signs(), &f).map_err(|e| invalid("(K, λ)", e))?
                }
            };
            let t = m.eval(&TorusPoint::new(x, y));
            pair_value(&t.x, &t.y)
        }
        ModelKind::PhiDisc => {
            let p = params()?;
            let m = act_phi_disc(p.gaps(), p.signs(), &f).map_err(|e| invalid("(K, λ)", e))?;
            let x = if point == "cone" {
                DiscPoint::Cone
            } else {
                DiscPoint::from_annulus(annulus_point(point)?)
            };
            match m.eval(&x) {
                DiscPoint::Cone => json!("cone"),
                DiscPoint::Polar(y) => pair_value(&y.r, &y.theta),
            }
        }
        ModelKind::PhiSphere => {
            let p = params()?;
            let m = act_phi_sphere(p.gaps(), p.signs(), &f).map_err(|e| invalid("(K, λ)", e))?;
            let x = match point {
                "north" => SpherePoint::NorthPole,
                "south" => SpherePoint::SouthPole,
                _ => SpherePoint::from_annulus(annulus_point(point)?),
            };
            match m.eval(&x) {
                SpherePoint::NorthPole => json!("north"),
                SpherePoint::SouthPole => json!("south"),
                SpherePoint::Polar(y) => pair_value(&y.r, &y.theta),
            }
        }
    })
}

fn decide(left: &Path, right: &Path) -> Result<Value, CliError> {
    let (a, b) = (read_model(left)?, read_model(right)?);
    let verdict = decide_conjugacy(a.gaps(), a.signs(), b.gaps(), b.signs());
    Ok(serde_json::to_value(verdict.to_document()).expect("serializable"))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WitnessInput {
    Recipe(WitnessRecipe),
    Verdict(VerdictDocument),
}

fn verify(witness: &Path, left: &Path, right: &Path, grid: usize) -> Result<Value, CliError> {
    let recipe = match read_json::<WitnessInput>(witness)? {
        WitnessInput::Recipe(r) => r,
        WitnessInput::Verdict(v) => v
            .witness
            .ok_or_else(|| invalid("witness", "verdict document carries no witness"))?,
    };
    let g = recipe.build().map_err(|e| invalid("witness", e))?;
    let (a, b) = (read_model(left)?, read_model(right)?);
    if grid < 2 {
        return Err(invalid("grid", "grid size must be at least 2"));
    }
    let points = rational_grid(grid);
    let ok = verify_conjugacy(
        &g,
        &AnnulusModel::phi(a),
        &AnnulusModel::phi(b),
        &standard_test_family(),
        &points,
    );
    Ok(json!({
        "verified": ok,
        "test_family": standard_family_labels(),
        "grid": grid,
        "points": points.len(),
    }))
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum AnnulusFixtureModel {
    P,
    AMinus,
    APlus,
    Phi,
}

/// An annulus oracle: a model action, optionally conjugated by a radial map
/// and optionally hidden behind pointwise queries.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnulusFixture {
    model: AnnulusFixtureModel,
    #[serde(rename = "K")]
    blocks: Option<Vec<(Rational, Rational)>>,
    lambda: Option<Vec<Sign>>,
    conjugator: Option<Vec<(Rational, Rational)>>,
    #[serde(default)]
    opaque: bool,
}

fn fixture_params(blocks: Option<Vec<(Rational, Rational)>>, lambda: Option<Vec<Sign>>) -> Result<ModelParams, CliError> {
    let doc = ModelDocument {
        blocks: blocks.ok_or_else(|| invalid("fixture", "model needs K"))?,
        signs: lambda.unwrap_or_default(),
    };
    ModelParams::from_document(&doc).map_err(|e| invalid("(K, λ)", e))
}

fn annulus_oracle(fx: AnnulusFixture) -> Result<Box<dyn ActionOracle>, CliError> {
    let model = match fx.model {
        AnnulusFixtureModel::P => AnnulusModel::Product,
        AnnulusFixtureModel::AMinus => AnnulusModel::AMinus,
        AnnulusFixtureModel::APlus => AnnulusModel::APlus,
        AnnulusFixtureModel::Phi => AnnulusModel::phi(fixture_params(fx.blocks, fx.lambda)?),
    };
    let oracle: Box<dyn ActionOracle> = match fx.conjugator {
        Some(points) => {
            let h = IntervalHomeo::new(points).map_err(|e| invalid("conjugator", e))?;
            Box::new(ConjugatedAction::new(lift_to_annulus(&h), model))
        }
        None => Box::new(model),
    };
    Ok(if fx.opaque {
        Box::new(Opaque(FnOracle(move |f: &CircleHomeo, p: &AnnulusPoint| oracle.apply(f, p))))
    } else {
        oracle
    })
}

#[derive(Deserialize)]
struct GapsDocument {
    #[serde(rename = "K")]
    blocks: Vec<(Rational, Rational)>,
}

fn recover_annulus_cmd(oracle: &Path, budget: usize, theta0: &str, gaps: Option<&Path>) -> Result<Value, CliError> {
    let theta0 = parse_rational("theta0", theta0)?;
    let oracle = annulus_oracle(read_json(oracle)?)?;
    if let Some(path) = gaps {
        let doc: GapsDocument = read_json(path)?;
        let k = GapSet::new(doc.blocks).map_err(|e| invalid("K", e))?;
        let signs = recover_signs(&*oracle, &k, &theta0)?;
        let model = ModelDocument {
            blocks: k.blocks().to_vec(),
            signs: signs.0,
        };
        let mut out = serde_json::to_value(model).expect("serializable");
        out["theta0"] = json!(theta0.fract().to_string());
        return Ok(out);
    }
    let rec = recover_annulus(&*oracle, &theta0, budget)?;
    Ok(serde_json::to_value(rec.to_document()).expect("serializable"))
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum TorusFixtureModel {
    Glued,
    Diagonal,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TorusFixture {
    model: TorusFixtureModel,
    #[serde(rename = "K")]
    blocks: Option<Vec<(Rational, Rational)>>,
    lambda: Option<Vec<Sign>>,
    #[serde(default)]
    opaque: bool,
}

fn recover_torus_cmd(oracle: &Path, budget: usize, theta0: &str) -> Result<Value, CliError> {
    let theta0 = parse_rational("theta0", theta0)?;
    let fx: TorusFixture = read_json(oracle)?;
    let model = match fx.model {
        TorusFixtureModel::Diagonal => TorusModel::Diagonal,
        TorusFixtureModel::Glued => TorusModel::Glued(fixture_params(fx.blocks, fx.lambda)?.into()),
    };
    let oracle: Box<dyn TorusOracle> = if fx.opaque {
        Box::new(OpaqueTorus(model))
    } else {
        Box::new(model)
    };
    let rec = recover_torus_circle(&*oracle, &theta0, budget)?;
    Ok(serde_json::to_value(rec.to_document(&theta0)).expect("serializable"))
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum LineFixtureModel {
    Inclusion,
    Conjugation,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LineFixture {
    model: LineFixtureModel,
    h: Option<Vec<(Rational, Rational)>>,
    #[serde(default)]
    opaque: bool,
}

#[derive(Serialize)]
struct LinePointDocument {
    x: Rational,
    value: Rational,
    width: Rational,
    enclosure: (Rational, Rational),
    exact: bool,
}

fn recover_line_cmd(oracle: &Path, grid: &Path, schedule: Option<&Path>) -> Result<Value, CliError> {
    let fx: LineFixture = read_json(oracle)?;
    let model = match fx.model {
        LineFixtureModel::Inclusion => LineModel::Inclusion,
        LineFixtureModel::Conjugation => {
            let points = fx.h.ok_or_else(|| invalid("fixture", "conjugation needs h"))?;
            LineModel::Conjugation(LineHomeo::new(points).map_err(|e| invalid("h", e))?)
        }
    };
    let oracle: Box<dyn LineActionOracle> = if fx.opaque {
        Box::new(OpaqueLine(model))
    } else {
        Box::new(model)
    };
    let grid: Vec<Rational> = read_json(grid)?;
    let schedule = match schedule {
        Some(p) => read_json(p)?,
        None => default_shrink_schedule(),
    };
    let points = recover_line_conjugacy(&*oracle, &grid, &schedule)?;
    let docs: Vec<LinePointDocument> = points
        .into_iter()
        .map(|p| LinePointDocument {
            x: p.x,
            value: p.value,
            width: p.width,
            enclosure: (p.enclosure.lo, p.enclosure.hi),
            exact: p.exact,
        })
        .collect();
    Ok(json!({
        "points": docs,
        "schedule": schedule.len(),
        "min_epsilon": schedule.last().map(|e| e.to_string()),
    }))
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Eval { map, point } => eval(map, point),
        Command::Act { model, data, map, point } => act(*model, data.as_deref(), map, point),
        Command::Decide { left, right } => decide(left, right),
        Command::Verify {
            witness,
            left,
            right,
            grid,
        } => verify(witness, left, right, *grid),
        Command::RecoverAnnulus {
            oracle,
            budget,
            theta0,
            gaps,
        } => recover_annulus_cmd(oracle, *budget, theta0, gaps.as_deref()),
        Command::RecoverTorus { oracle, budget, theta0 } => recover_torus_cmd(oracle, *budget, theta0),
        Command::RecoverLine { oracle, grid, schedule } => recover_line_cmd(oracle, grid, schedule.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
