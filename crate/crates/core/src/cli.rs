//! Command dispatch shared by the binary and the browser demo.
//!
//! Exit status: 0 when every executed check passes, 1 on an invariant
//! violation, 2 on unreadable or malformed input, 3 when an element budget
//! or integer range is exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::{order_from_name, CoxeterSystem, Kind};
use crate::davis::{davis_from_ball, reflections_in_ball, WallRelation};
use crate::elements::{Ball, ElementsError, DEFAULT_BUDGET};
use crate::orbifold::{self, TwoOrbifold};
use crate::raag::{self, DefiningGraph, GraphError};
use crate::verify::{self, Check};
use crate::wall_trees::{self, CongruenceError, TreesConfig};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Classify,
    Ball,
    Davis,
    Walls,
    Trees,
    Verify,
    Raag,
    Orbifold,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Classify,
        Command::Ball,
        Command::Davis,
        Command::Walls,
        Command::Trees,
        Command::Verify,
        Command::Raag,
        Command::Orbifold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Ball => "ball",
            Command::Davis => "davis",
            Command::Walls => "walls",
            Command::Trees => "trees",
            Command::Verify => "verify",
            Command::Raag => "raag",
            Command::Orbifold => "orbifold",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass = 0,
    Violation = 1,
    Input = 2,
    Budget = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub radius: usize,
    pub prime: Option<u32>,
    pub budget: usize,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input: input.into(),
            radius: 8,
            prime: None,
            budget: DEFAULT_BUDGET,
            seed: 0,
            format: Format::Json,
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.budget == 0 {
            return Err("budget must be at least 1".into());
        }
        if let Some(p) = self.prime {
            if p % 2 == 0 {
                return Err(format!("prime {p} is not odd"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub status: Status,
    pub output: String,
    /// Witnesses of failed checks, or the error message.
    pub diagnostics: Vec<String>,
}

/// Reads the input file and dispatches.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    match std::fs::read_to_string(&cfg.input) {
        Ok(text) => run_text(cfg, &text),
        Err(e) => failure(
            Status::Input,
            format!("cannot read {}: {e}", cfg.input.display()),
        ),
    }
}

/// Dispatches on input already in memory.
pub fn run_text(cfg: &RunConfig, text: &str) -> RunOutcome {
    if let Err(e) = cfg.validate() {
        return failure(Status::Input, e);
    }
    match dispatch(cfg, text) {
        Ok(report) => render(cfg, report),
        Err(e) => failure(status_of(&e), e.to_string()),
    }
}

fn failure(status: Status, message: String) -> RunOutcome {
    RunOutcome {
        status,
        output: format!("error: {message}\n"),
        diagnostics: vec![message],
    }
}

pub fn status_of(e: &Error) -> Status {
    let elements = |e: &ElementsError| match e {
        ElementsError::Budget { .. } | ElementsError::Overflow { .. } => Status::Budget,
        ElementsError::NotSpherical(_) => Status::Input,
    };
    match e {
        Error::Parse(_) | Error::Orbifold(_) | Error::Io(_) => Status::Input,
        Error::Coxeter(crate::coxeter::CoxeterError::ClassificationMismatch { .. }) => {
            Status::Violation
        }
        Error::Coxeter(_) => Status::Input,
        Error::Elements(x) => elements(x),
        Error::Graph(GraphError::Elements(x)) => elements(x),
        Error::Graph(GraphError::Verification(_)) => Status::Violation,
        Error::Graph(_) => Status::Input,
        Error::Congruence(CongruenceError::NotOddPrime(_)) => Status::Input,
        Error::Congruence(CongruenceError::Elements(x)) => elements(x),
        Error::Congruence(_) => Status::Budget,
    }
}

struct Report {
    checks: Vec<Check>,
    result: Value,
    dot: Option<String>,
}

fn dispatch(cfg: &RunConfig, text: &str) -> Result<Report, Error> {
    match cfg.command {
        Command::Raag => return raag_report(cfg, &DefiningGraph::parse_any(text)?),
        Command::Orbifold => return orbifold_report(&TwoOrbifold::from_json(text)?),
        _ => {}
    }
    let sys = CoxeterSystem::parse_any(text)?;
    let dot = Some(diagram_dot(&sys));
    let mut report = match cfg.command {
        Command::Classify => classify_report(&sys)?,
        Command::Ball => ball_report(cfg, &sys)?,
        Command::Davis => davis_report(cfg, &sys)?,
        Command::Walls => walls_report(cfg, &sys)?,
        Command::Trees => trees_report(cfg, &sys)?,
        Command::Verify => verify_report(cfg, &sys)?,
        Command::Raag | Command::Orbifold => unreachable!("handled above"),
    };
    if report.dot.is_none() {
        report.dot = dot;
    }
    Ok(report)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn boundary(ball: &Ball) -> Value {
    let growth = ball.growth();
    json!({
        "radius": ball.radius(),
        "exhausted": ball.is_exhausted(),
        "outer_layer": if ball.is_exhausted() { 0 } else { *growth.last().unwrap_or(&0) },
    })
}

fn classify_report(sys: &CoxeterSystem) -> Result<Report, Error> {
    let mut components = Vec::new();
    let mut order: Option<u128> = Some(1);
    for c in sys.components().components {
        let verdict = sys.classify(&c)?;
        let size = verdict
            .name
            .as_deref()
            .and_then(order_from_name)
            .filter(|_| verdict.kind == Kind::PositiveDefinite);
        order = match (order, size) {
            (Some(a), Some(b)) => a.checked_mul(b as u128),
            _ => None,
        };
        components.push(json!({
            "generators": c.iter().map(|&s| sys.labels()[s].clone()).collect::<Vec<_>>(),
            "kind": verdict.kind,
            "name": verdict.name,
        }));
    }
    let whole = sys.classify_all()?;
    let result = json!({
        "rank": sys.rank(),
        "kind": whole.kind,
        "component_count": components.len(),
        "components": components,
        "order": order.map(|o| o.to_string()),
    });
    Ok(Report {
        checks: vec![verify::classification(sys)],
        result,
        dot: None,
    })
}

fn ball_report(cfg: &RunConfig, sys: &CoxeterSystem) -> Result<Report, Error> {
    let ball = Ball::new(sys, cfg.radius, cfg.budget)?;
    let result = json!({
        "size": ball.len(),
        "growth": ball.growth(),
        "boundary": boundary(&ball),
    });
    Ok(Report {
        checks: vec![verify::faithfulness(sys, &ball)?],
        result,
        dot: None,
    })
}

fn davis_report(cfg: &RunConfig, sys: &CoxeterSystem) -> Result<Report, Error> {
    let ball = Ball::new(sys, cfg.radius, cfg.budget)?;
    let complex = davis_from_ball(sys, &ball);
    let mut checks = vec![verify::flags(sys, &complex)];
    if complex.exhaustive {
        let chi = complex.euler_characteristic;
        checks.push(Check {
            name: "contractible_euler_characteristic".into(),
            passed: chi == 1,
            cases: 1,
            witness: (chi != 1).then(|| format!("Euler characteristic {chi} of the whole complex")),
        });
    }
    let result = json!({
        "vertices": complex.vertices.len(),
        "f_vector": complex.f_vector,
        "euler_characteristic": complex.euler_characteristic,
        "boundary": boundary(&ball),
    });
    Ok(Report {
        checks,
        result,
        dot: None,
    })
}

/// Pairs beyond this many walls are not all compared.
const HISTOGRAM_WALLS: usize = 2000;

fn walls_report(cfg: &RunConfig, sys: &CoxeterSystem) -> Result<Report, Error> {
    let ball = Ball::new(sys, cfg.radius, cfg.budget)?;
    let inventory = reflections_in_ball(sys, &ball)?;
    let considered = inventory.len().min(HISTOGRAM_WALLS);
    let (mut cross, mut disjoint) = (0usize, 0usize);
    for i in 0..considered {
        for j in i + 1..considered {
            let rel = crate::davis::wall_relation(sys, &inventory.walls[i], &inventory.walls[j])
                .map_err(|_| ElementsError::Overflow { length: 0 })?;
            match rel {
                WallRelation::Cross => cross += 1,
                WallRelation::Disjoint => disjoint += 1,
                WallRelation::Equal => {}
            }
        }
    }
    let mut checks = vec![verify::wall_length(sys, &ball)?];
    // distinct walls in the inventory never coincide
    let equal = considered * considered.saturating_sub(1) / 2 - cross - disjoint;
    checks.push(Check {
        name: "distinct_walls".into(),
        passed: equal == 0,
        cases: considered,
        witness: (equal > 0).then(|| format!("{equal} inventory pairs are the same wall")),
    });
    let result = json!({
        "walls": inventory.len(),
        "histogram": { "cross": cross, "disjoint": disjoint, "equal": equal },
        "walls_compared": considered,
        "boundary": boundary(&ball),
    });
    Ok(Report {
        checks,
        result,
        dot: None,
    })
}

fn trees_checks(r: &wall_trees::TreesReport) -> Vec<Check> {
    let mk = |name: &str, cases: usize, witness: Option<String>| Check {
        name: name.to_string(),
        passed: witness.is_none(),
        cases,
        witness,
    };
    vec![
        mk(
            "torsion_free_kernel",
            r.subgroup.torsion.checks.len(),
            (!r.subgroup.torsion.torsion_free || r.subgroup.contains_generator).then(|| {
                format!(
                    "reduction mod {} is not injective on a spherical subgroup",
                    r.subgroup.prime
                )
            }),
        ),
        mk(
            "orbits_refine_classes",
            r.orbits.count,
            (!r.orbits.refines_coarse)
                .then(|| "a wall orbit meets two reflection classes mod p".into()),
        ),
        mk(
            "trees_acyclic",
            r.trees.trees,
            (!r.trees.passed()).then(|| {
                format!(
                    "{} interior cycles, {} non-separating walls",
                    r.trees.interior_cycles, r.trees.non_separating_walls
                )
            }),
        ),
        mk(
            "distance_sum",
            r.properness.checked,
            r.properness.first_mismatch.as_ref().map(|m| {
                format!(
                    "chamber {:?}: length {} but distance sum {}",
                    m.chamber, m.length, m.distance_sum
                )
            }),
        ),
        mk(
            "equivariance",
            r.equivariance.checks,
            r.equivariance
                .first_violation
                .as_ref()
                .map(|v| format!("{v:?}")),
        ),
        mk(
            "dichotomy",
            r.dichotomy.pairs,
            r.dichotomy
                .first_cross
                .as_ref()
                .map(|c| format!("gamma {:?} crosses wall {:?}", c.gamma, c.wall)),
        ),
        mk(
            "free_action",
            r.free_action.sampled,
            r.free_action
                .first_counterexample
                .as_ref()
                .map(|c| format!("gamma {:?}: {}", c.gamma, c.reason)),
        ),
        mk(
            "index",
            usize::from(r.index.exhaustive),
            (!r.index.passed()).then(|| {
                format!(
                    "{} kernel elements times image {} is not {}",
                    r.index.ball_in_kernel, r.index.image_order, r.index.ball_size
                )
            }),
        ),
    ]
}

fn trees_config(cfg: &RunConfig) -> TreesConfig {
    TreesConfig {
        radius: cfg.radius,
        prime: cfg.prime,
        budget: cfg.budget,
        seed: cfg.seed,
        ..TreesConfig::default()
    }
}

fn trees_report(cfg: &RunConfig, sys: &CoxeterSystem) -> Result<Report, Error> {
    let analysis = wall_trees::analyze(sys, &trees_config(cfg))?;
    let mut result = to_value(&analysis.report);
    result["boundary"] = boundary(&analysis.ball);
    Ok(Report {
        checks: trees_checks(&analysis.report),
        result,
        dot: Some(analysis.to_dot(sys)),
    })
}

fn verify_report(cfg: &RunConfig, sys: &CoxeterSystem) -> Result<Report, Error> {
    let ball = Ball::new(sys, cfg.radius, cfg.budget)?;
    let complex = davis_from_ball(sys, &ball);
    let mut checks = vec![
        verify::representation(sys),
        verify::classification(sys),
        verify::faithfulness(sys, &ball)?,
        verify::wall_length(sys, &ball)?,
        verify::flags(sys, &complex),
    ];
    let analysis = wall_trees::analyze(sys, &trees_config(cfg))?;
    checks.extend(trees_checks(&analysis.report));
    let result = json!({
        "kind": sys.classify_all()?.kind,
        "ball_size": ball.len(),
        "f_vector": complex.f_vector,
        "prime": analysis.report.subgroup.prime,
        "wall_orbits": analysis.report.orbits.count,
        "dichotomy_pairs": analysis.report.dichotomy.pairs,
        "boundary": boundary(&ball),
    });
    Ok(Report {
        checks,
        result,
        dot: None,
    })
}

fn verification_check(
    name: &str,
    outcome: &Result<raag::DjEmbedding, GraphError>,
) -> Result<Check, Error> {
    match outcome {
        Ok(e) => Ok(Check {
            name: name.into(),
            passed: true,
            cases: e.injectivity.elements,
            witness: None,
        }),
        Err(GraphError::Verification(w)) => Ok(Check {
            name: name.into(),
            passed: false,
            cases: 0,
            witness: Some(w.clone()),
        }),
        Err(GraphError::Elements(e)) => Err(e.clone().into()),
        Err(e) => Err(Error::Io(e.to_string())),
    }
}

/// Coset tables larger than this are abandoned.
const COSET_LIMIT: usize = 200_000;

fn raag_report(cfg: &RunConfig, g: &DefiningGraph) -> Result<Report, Error> {
    if g.is_empty() {
        return Err(GraphError::Parse {
            line: 0,
            message: "graph has no vertices".into(),
        }
        .into());
    }
    let pres = raag::presentation(g);
    let decomposition = raag::decompose(g)?;
    let racg = raag::racg_of(g)?;
    let dj = raag::dj_embedding(g, cfg.radius, COSET_LIMIT);
    let mut checks = vec![
        Check {
            name: "decomposition".into(),
            passed: decomposition.coherent && decomposition.functorial,
            cases: decomposition.factors.len(),
            witness: (!(decomposition.coherent && decomposition.functorial))
                .then(|| "factors disagree with the Coxeter components".into()),
        },
        verification_check("dj_embedding", &dj)?,
    ];
    if let Ok(e) = &dj {
        checks.push(Check {
            name: "dj_index".into(),
            passed: e.verified_index.is_some(),
            cases: 1,
            witness: e
                .verified_index
                .is_none()
                .then(|| format!("coset enumeration exceeded {COSET_LIMIT} cosets")),
        });
    }
    let result = json!({
        "vertices": g.vertices(),
        "presentation": pres.to_text(),
        "abelianization": pres.abelianization(),
        "decomposition": decomposition.factors.iter()
            .map(|f| f.iter().map(|&v| g.vertices()[v].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "racg_kind": racg.classify_all()?.kind,
        "dj": dj.as_ref().ok().map(|e| json!({
            "target": e.target_labels,
            "commuting_pairs": e.commuting_pairs,
            "free_pairs": e.free_pairs,
            "injectivity": e.injectivity,
            "expected_index": e.expected_index,
            "verified_index": e.verified_index,
        })),
        "kahler_candidate": raag::kahler_candidate_raag(g),
        "racg_kahler_candidate": raag::kahler_candidate_coxeter(&racg)?,
    });
    Ok(Report {
        checks,
        result,
        dot: Some(graph_dot(g)),
    })
}

fn orbifold_report(o: &TwoOrbifold) -> Result<Report, Error> {
    let r = orbifold::report(o);
    let checks = vec![Check {
        name: "presentation_consistency".into(),
        passed: r.consistent,
        cases: 1,
        witness: (!r.consistent).then(|| format!("{r:?}")),
    }];
    Ok(Report {
        checks,
        result: to_value(&r),
        dot: None,
    })
}

fn render(cfg: &RunConfig, report: Report) -> RunOutcome {
    let passed = report.checks.iter().all(|c| c.passed);
    let status = if passed {
        Status::Pass
    } else {
        Status::Violation
    };
    let diagnostics: Vec<String> = report
        .checks
        .iter()
        .filter_map(|c| c.witness.as_ref().map(|w| format!("{}: {w}", c.name)))
        .collect();
    let output = match cfg.format {
        Format::Json => {
            let doc = json!({
                "command": cfg.command,
                "config": {
                    "radius": cfg.radius,
                    "prime": cfg.prime,
                    "budget": cfg.budget,
                    "seed": cfg.seed,
                },
                "passed": passed,
                "checks": report.checks,
                "result": report.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Dot => match report.dot {
            Some(d) => d,
            None => {
                return failure(
                    Status::Input,
                    format!("no DOT output for {}", cfg.command.name()),
                )
            }
        },
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{}: {}",
                cfg.command.name(),
                if passed { "PASS" } else { "FAIL" }
            );
            for c in &report.checks {
                match &c.witness {
                    None => {
                        let _ = writeln!(s, "  ok   {} ({} cases)", c.name, c.cases);
                    }
                    Some(w) => {
                        let _ = writeln!(s, "  FAIL {}: {w}", c.name);
                    }
                }
            }
            flatten(&mut s, "", &report.result);
            s
        }
    };
    RunOutcome {
        status,
        output,
        diagnostics,
    }
}

fn flatten(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(out, &p, x);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{path} = [{}]", parts.join(", "));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(out, &format!("{path}[{i}]"), x);
            }
        }
        _ => {
            let _ = writeln!(out, "{path} = {}", scalar(v));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Coxeter diagram: edges where m ≥ 3, labelled unless m = 3.
pub fn diagram_dot(sys: &CoxeterSystem) -> String {
    let mut s = String::from("graph coxeter {\n");
    for l in sys.labels() {
        let _ = writeln!(s, "  {};", quote(l));
    }
    for a in 0..sys.rank() {
        for b in a + 1..sys.rank() {
            let m = sys.order(a, b);
            if !m.is_edge() {
                continue;
            }
            let (la, lb) = (quote(&sys.labels()[a]), quote(&sys.labels()[b]));
            if m == crate::coxeter::Order::Finite(3) {
                let _ = writeln!(s, "  {la} -- {lb};");
            } else {
                let _ = writeln!(s, "  {la} -- {lb} [label={}];", quote(&m.to_string()));
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn graph_dot(g: &DefiningGraph) -> String {
    let mut s = String::from("graph raag {\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {};", quote(v));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(
            s,
            "  {} -- {};",
            quote(&g.vertices()[a]),
            quote(&g.vertices()[b])
        );
    }
    s.push_str("}\n");
    s
}
