//! WebAssembly bindings for the demo page in `www/`.
//!
//! Vertex arrays handed to JavaScript are 0-based cyclic orders.

use std::time::Duration;

use hdec::oracle::{brute_force_decompose, MAX_ORACLE_N};
use hdec::{
    parse_instance, seeded_instance, serialize_certificate, serialize_instance, solve_instance, Algorithm, Certificate,
    EngineConfig, Instance, Kind, Outcome, SolveBudget,
};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Demo {
    inst: Instance,
    cert: Option<Certificate>,
}

fn order(c: &hdec::HamCycle) -> Vec<u32> {
    c.order().iter().map(|&v| v as u32).collect()
}

#[wasm_bindgen]
impl Demo {
    /// A random instance, the same one `hdec generate` writes for these flags.
    #[wasm_bindgen(constructor)]
    pub fn new(n: usize, directed: bool, seed: u32) -> Result<Demo, String> {
        let kind = if directed { Kind::Directed } else { Kind::Undirected };
        let inst = seeded_instance(n, kind, seed as u64).map_err(|e| e.to_string())?;
        Ok(Demo { inst, cert: None })
    }

    /// Parses an instance in the text format used by the command-line tool.
    #[wasm_bindgen(js_name = fromText)]
    pub fn from_text(text: &str) -> Result<Demo, String> {
        let inst = parse_instance(text).map_err(|e| e.to_string())?;
        Ok(Demo { inst, cert: None })
    }

    pub fn n(&self) -> usize {
        self.inst.n()
    }

    pub fn directed(&self) -> bool {
        self.inst.kind() == Kind::Directed
    }

    pub fn x(&self) -> Vec<u32> {
        order(self.inst.x())
    }

    pub fn y(&self) -> Vec<u32> {
        order(self.inst.y())
    }

    /// Empty until a decomposition has been found.
    pub fn z(&self) -> Vec<u32> {
        self.cert.as_ref().map(|c| order(&c.z)).unwrap_or_default()
    }

    pub fn w(&self) -> Vec<u32> {
        self.cert.as_ref().map(|c| order(&c.w)).unwrap_or_default()
    }

    #[wasm_bindgen(js_name = instanceText)]
    pub fn instance_text(&self) -> String {
        serialize_instance(&self.inst)
    }

    #[wasm_bindgen(js_name = certificateText)]
    pub fn certificate_text(&self) -> String {
        self.cert.as_ref().map(serialize_certificate).unwrap_or_default()
    }

    /// Runs the iterative solver and returns a one-line report.
    pub fn solve(&mut self, local_search: bool, seed: u32, time_limit_ms: u32) -> String {
        let mut config = EngineConfig::new(if local_search { Algorithm::IlpLs } else { Algorithm::Ilp });
        config.seed = seed as u64;
        config.budget =
            SolveBudget { max_decisions: None, time_limit: Some(Duration::from_millis(time_limit_ms as u64)) };
        let out = solve_instance(&self.inst, &config);
        let s = out.stats();
        let verdict = match &out {
            Outcome::Decomposition(..) => "decomposition found",
            Outcome::NonExistent(_) => "no decomposition other than x, y",
            Outcome::BudgetExceeded(_) => "budget exhausted",
        };
        self.cert = out.certificate().cloned();
        format!(
            "{verdict}: {} solver calls, {} cuts, {:.1} ms",
            s.iterations,
            s.cuts_added,
            s.total_time.as_secs_f64() * 1e3
        )
    }

    /// Counts every decomposition by exhaustive search and keeps the first.
    pub fn oracle(&mut self) -> Result<String, String> {
        if self.inst.n() > MAX_ORACLE_N {
            return Err(format!("exhaustive search is limited to {MAX_ORACLE_N} vertices"));
        }
        let r = brute_force_decompose(&self.inst, 1).map_err(|e| e.to_string())?;
        self.cert = r.witnesses.into_iter().next();
        Ok(match r.count_pairs {
            0 => "no decomposition other than x, y".to_string(),
            1 => "exactly one decomposition".to_string(),
            k => format!("{k} decompositions"),
        })
    }
}
