//! Reports: one JSON model rendered as JSON, CSV (flattened leaves) or
//! human-readable lines.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use seqspace::positivity::NORM_TOL;
use seqspace::SpaceSpec;

use crate::config::{RunConfig, SCHEMA};

#[derive(Clone, Copy)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Serialize)]
struct Budget {
    restarts: usize,
    steps: usize,
}

#[derive(Serialize)]
struct Tolerances {
    tol: f64,
    norm_tol: f64,
}

#[derive(Serialize)]
pub struct Report {
    schema: &'static str,
    command: &'static str,
    /// sha256 of the canonical JSON of everything that determines the result.
    config_hash: String,
    seed: u64,
    budget: Budget,
    tolerances: Tolerances,
    space: Option<SpaceSpec>,
    inputs: Value,
    result: Value,
}

impl Report {
    pub fn new(command: &'static str, cfg: &RunConfig, inputs: Value, result: Value) -> Self {
        let budget = Budget {
            restarts: cfg.restarts,
            steps: cfg.steps,
        };
        let tolerances = Tolerances {
            tol: cfg.tol,
            norm_tol: NORM_TOL,
        };
        let canonical = json!({
            "schema": SCHEMA,
            "command": command,
            "space": cfg.space,
            "inputs": inputs,
            "seed": cfg.seed,
            "budget": budget,
            "tolerances": tolerances,
        });
        let config_hash = hex::encode(Sha256::digest(canonical.to_string().as_bytes()));
        Report {
            schema: SCHEMA,
            command,
            config_hash,
            seed: cfg.seed,
            budget,
            tolerances,
            space: cfg.space.clone(),
            inputs,
            result,
        }
    }

    pub fn render(&self, format: Format) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        match format {
            Format::Json => serde_json::to_string_pretty(&v).expect("reports serialize") + "\n",
            Format::Csv => {
                let mut out = String::from("key,value\n");
                for (k, val) in leaves(&v) {
                    out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&val)));
                }
                out
            }
            Format::Human => {
                let mut out = String::new();
                for (k, val) in leaves(&v["result"]) {
                    out.push_str(&format!("{}: {val}\n", if k.is_empty() { "result" } else { &k }));
                }
                for key in ["command", "config_hash", "seed", "budget", "tolerances"] {
                    for (k, val) in leaves(&v[key]) {
                        let k = if k.is_empty() {
                            key.to_string()
                        } else {
                            format!("{key}.{k}")
                        };
                        out.push_str(&format!("# {k}: {val}\n"));
                    }
                }
                out
            }
        }
    }
}

fn leaves(v: &Value) -> Vec<(String, String)> {
    fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if path.is_empty() {
                k.to_string()
            } else {
                format!("{path}.{k}")
            }
        };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| walk(x, join(k), out)),
            Value::Array(a) => a
                .iter()
                .enumerate()
                .for_each(|(i, x)| walk(x, join(&i.to_string()), out)),
            Value::String(s) => out.push((path, s.clone())),
            other => out.push((path, other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
