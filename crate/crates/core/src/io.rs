//! Instance text format, random instances and the solution document.
//!
//! ```text
//! c comment
//! p fgc <n> <m> <k>
//! e <u> <v> <cost> <S|U>
//! ```
//!
//! Vertices are 1-based in files and 0-based in memory. Edge IDs are the
//! 0-based order of the `e` lines.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::is_feasible_instance;
use crate::graph::{FgcInstance, Safety};
use crate::solver::{ratio, FgcSolution};
use crate::{Cost, EdgeId, VertexId, MAX_EDGE_COST};

fn parse_error(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what} '{field}'")))
}

pub fn parse_instance(text: &str) -> Result<FgcInstance> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId, Cost, Safety)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(parse_error(line, "duplicate header"));
                }
                if fields.len() != 5 || fields[1] != "fgc" {
                    return Err(parse_error(line, "header must be 'p fgc <n> <m> <k>'"));
                }
                let n = number(line, fields[2], "vertex count")?;
                let m = number(line, fields[3], "edge count")?;
                let k: usize = number(line, fields[4], "k")?;
                if k == 0 {
                    return Err(parse_error(line, "k must be at least 1"));
                }
                header = Some((n, m, k, line));
            }
            Some("e") => {
                let Some((n, _, _, _)) = header else {
                    return Err(parse_error(line, "edge before 'p fgc' header"));
                };
                if fields.len() != 5 {
                    return Err(parse_error(line, "edge must be 'e <u> <v> <cost> <S|U>'"));
                }
                let u: usize = number(line, fields[1], "vertex")?;
                let v: usize = number(line, fields[2], "vertex")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(parse_error(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_error(line, format!("self-loop at vertex {u}")));
                }
                let cost: Cost = number(line, fields[3], "cost")?;
                if !(0..=MAX_EDGE_COST).contains(&cost) {
                    return Err(parse_error(line, format!("cost {cost} outside 0..={MAX_EDGE_COST}")));
                }
                let safety = match fields[4] {
                    "S" => Safety::Safe,
                    "U" => Safety::Unsafe,
                    other => return Err(parse_error(line, format!("safety must be S or U, got '{other}'"))),
                };
                edges.push((u - 1, v - 1, cost, safety));
            }
            Some(other) => return Err(parse_error(line, format!("unknown line type '{other}'"))),
        }
    }
    let Some((n, m, k, line)) = header else {
        return Err(parse_error(text.lines().count().max(1), "missing 'p fgc' header"));
    };
    if edges.len() != m {
        return Err(parse_error(line, format!("header declares {m} edges, found {}", edges.len())));
    }
    FgcInstance::new(n, k, edges).map_err(|e| parse_error(line, e.to_string()))
}

pub fn serialize_instance(instance: &FgcInstance) -> String {
    let mut out = format!("p fgc {} {} {}\n", instance.n(), instance.m(), instance.k());
    for e in instance.edges() {
        let tag = if e.safety.is_safe() { 'S' } else { 'U' };
        out.push_str(&format!("e {} {} {} {}\n", e.u + 1, e.v + 1, e.cost, tag));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub safe_probability: f64,
    pub max_cost: Cost,
    pub seed: u64,
    pub require_feasible: bool,
}

/// Resampling rounds before falling back to a safe spanning tree.
pub const GENERATION_ATTEMPTS: usize = 32;

/// Random multigraph instance, fully determined by the config.
///
/// The stream is ChaCha8 seeded with `seed`. Each edge draws `u`, then `v`
/// among the other `n - 1` vertices, then its cost in `1..=max_cost`, then
/// its safety. With `require_feasible`, up to [`GENERATION_ATTEMPTS`] fresh
/// samples are tried; after that the first `n - 1` edges of the last sample
/// are replaced by a random spanning tree of safe edges.
pub fn generate(config: &GeneratorConfig) -> Result<FgcInstance> {
    let GeneratorConfig { n, m, k, safe_probability, max_cost, seed, require_feasible } = *config;
    if n < 2 || m < 1 || k < 1 {
        return Err(Error::InvalidInput("generator needs n >= 2, m >= 1, k >= 1".into()));
    }
    if !(0.0..=1.0).contains(&safe_probability) {
        return Err(Error::InvalidInput("safe probability must lie in [0, 1]".into()));
    }
    if !(1..=MAX_EDGE_COST).contains(&max_cost) {
        return Err(Error::InvalidInput(format!("max cost must lie in 1..={MAX_EDGE_COST}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = || -> Vec<(VertexId, VertexId, Cost, Safety)> {
        (0..m)
            .map(|_| {
                let u = rng.gen_range(0..n);
                let mut v = rng.gen_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                let cost = rng.gen_range(1..=max_cost);
                let safety = if rng.gen_bool(safe_probability) { Safety::Safe } else { Safety::Unsafe };
                (u, v, cost, safety)
            })
            .collect()
    };
    let mut edges = Vec::new();
    for _ in 0..if require_feasible { GENERATION_ATTEMPTS } else { 1 } {
        edges = sample();
        let instance = FgcInstance::new(n, k, edges.iter().copied())?;
        if !require_feasible || is_feasible_instance(&instance) {
            return Ok(instance);
        }
    }
    if m + 1 < n {
        return Err(Error::GenerationFailed { attempts: GENERATION_ATTEMPTS });
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges[i - 1] = (order[i], parent, edges[i - 1].2, Safety::Safe);
    }
    let instance = FgcInstance::new(n, k, edges)?;
    debug_assert!(is_feasible_instance(&instance));
    Ok(instance)
}

/// Solution document; field names are part of the output contract.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub status: String,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<Cost>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arb_cost: Option<Cost>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt: Option<Cost>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

impl SolutionDocument {
    pub fn solved(solution: &FgcSolution, opt: Option<Cost>) -> Self {
        SolutionDocument {
            status: "ok".into(),
            k: solution.k,
            root: Some(solution.root),
            edges: Some(solution.edges.clone()),
            cost: Some(solution.cost),
            arb_cost: Some(solution.arborescence_cost),
            factor: Some(solution.guarantee_factor),
            opt,
            ratio: opt.map(|o| ratio(solution.cost, o)),
        }
    }

    pub fn infeasible(k: usize) -> Self {
        SolutionDocument {
            status: "infeasible".into(),
            k,
            root: None,
            edges: None,
            cost: None,
            arb_cost: None,
            factor: None,
            opt: None,
            ratio: None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}
