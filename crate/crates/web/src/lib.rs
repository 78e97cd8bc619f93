//! wasm-bindgen bindings for the browser demo.
//!
//! Three operations back the static page in `www/`:
//!
//! * [`eval_instance`]: evaluate the whole bound catalog plus the
//!   structural certificates on a user-supplied instance (same JSON format
//!   as the CLI's instance files);
//! * [`search_trace`]: run a seeded hill climb against one bound and
//!   return the accepted-step trace for plotting;
//! * [`counterexamples`]: the registry of exact counterexamples, evaluated.
//!
//! Everything is seed-driven; no entropy is consumed, so the module needs
//! no JS randomness shims. Results travel as JSON strings. The exported
//! functions are thin wrappers over [`api`], which is plain Rust and is
//! what the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde::Serialize;

    use bwlab_cli::report::{CertificateReport, InstanceFile};
    use bwlab_core::{
        eval_bound, hill_climb, implication_chain_check, known_counterexamples, pairing_report,
        psd_certificate, sample_instance, stream_rng, BoundId, BoundStatus, SampleDist,
        SearchConfig, Tolerance, TripleInstance, ALL_BOUNDS,
    };

    fn status_name(status: BoundStatus) -> &'static str {
        match status {
            BoundStatus::Proved => "proved",
            BoundStatus::Conjectured => "conjectured",
            BoundStatus::KnownFalse => "known_false",
        }
    }

    #[derive(Serialize)]
    struct BoundRow {
        bound: String,
        status: &'static str,
        lhs_formula: &'static str,
        rhs_formula: &'static str,
        applicable: bool,
        reason: Option<String>,
        lhs: Option<f64>,
        rhs: Option<f64>,
        slack: Option<f64>,
        ratio: Option<f64>,
        holds: Option<bool>,
        rank_b: Option<usize>,
    }

    #[derive(Serialize)]
    struct EvalResponse {
        shape: String,
        bounds: Vec<BoundRow>,
        certificates: CertificateReport,
    }

    fn bound_rows(t: &TripleInstance, tol: Tolerance) -> Vec<BoundRow> {
        ALL_BOUNDS
            .iter()
            .map(|&id| {
                let base = BoundRow {
                    bound: id.as_str().to_string(),
                    status: status_name(id.status()),
                    lhs_formula: id.lhs_formula(),
                    rhs_formula: id.rhs_formula(),
                    applicable: false,
                    reason: None,
                    lhs: None,
                    rhs: None,
                    slack: None,
                    ratio: None,
                    holds: None,
                    rank_b: None,
                };
                match eval_bound(id, t, tol) {
                    Ok(r) => BoundRow {
                        applicable: true,
                        lhs: Some(r.lhs),
                        rhs: Some(r.rhs),
                        slack: Some(r.slack),
                        ratio: r.ratio,
                        holds: Some(r.holds),
                        rank_b: r.rank_b,
                        ..base
                    },
                    Err(e) => BoundRow {
                        reason: Some(e.to_string()),
                        ..base
                    },
                }
            })
            .collect()
    }

    /// Catalog evaluation plus certificates for an instance-file JSON.
    pub fn eval_instance(instance_json: &str) -> Result<String, String> {
        let file: InstanceFile =
            serde_json::from_str(instance_json).map_err(|e| e.to_string())?;
        let t = file.to_instance("web:user")?;
        let tol = Tolerance::default();
        let cert = psd_certificate(t.a(), t.c()).map_err(|e| e.to_string())?;
        let pairing = pairing_report(t.a(), t.c()).map_err(|e| e.to_string())?;
        let response = EvalResponse {
            shape: format!("{}x{}", t.shape().0, t.shape().1),
            bounds: bound_rows(&t, tol),
            certificates: CertificateReport::new(&cert, &pairing, implication_chain_check(&t)),
        };
        Ok(serde_json::to_string(&response).expect("response serializes"))
    }

    #[derive(Serialize)]
    struct SearchResponse {
        bound: String,
        status: &'static str,
        shape: String,
        trials: u32,
        steps: u32,
        seed: u32,
        best_ratio: f64,
        terminated: String,
        trace: Vec<(u64, f64)>,
        best_lhs: Option<f64>,
        best_rhs: Option<f64>,
        best_instance: InstanceFile,
    }

    /// Seeded hill climb; returns the accepted-step ratio trace.
    pub fn search_trace(
        bound: &str,
        m: u32,
        n: u32,
        trials: u32,
        steps: u32,
        seed: u32,
    ) -> Result<String, String> {
        let bound = BoundId::parse(bound).ok_or_else(|| format!("unknown bound {bound:?}"))?;
        if m == 0 || n == 0 {
            return Err("shape dimensions must be positive".to_string());
        }
        let shape = (m as usize, n as usize);
        if !bound.searchable_on(shape) {
            return Err(format!("bound {bound} is not searchable on shape {m}x{n}"));
        }
        let config = SearchConfig {
            bound,
            shape,
            trials: trials as usize,
            ascent_steps: steps as usize,
            step_size: 0.25,
            rng_seed: seed as u64,
            dist: SampleDist::ComplexGaussian,
        };
        let record = hill_climb(&config);
        let best = eval_bound(bound, &record.best_instance, Tolerance::default()).ok();
        let response = SearchResponse {
            bound: config.bound.as_str().to_string(),
            status: status_name(config.bound.status()),
            shape: format!("{m}x{n}"),
            trials,
            steps,
            seed,
            best_ratio: record.best_ratio,
            terminated: record.terminated.as_str().to_string(),
            trace: record.trace.iter().map(|&(i, r)| (i as u64, r)).collect(),
            best_lhs: best.as_ref().map(|r| r.lhs),
            best_rhs: best.as_ref().map(|r| r.rhs),
            best_instance: InstanceFile::from_instance(&record.best_instance),
        };
        Ok(serde_json::to_string(&response).expect("response serializes"))
    }

    #[derive(Serialize)]
    struct CounterexampleRow {
        id: String,
        bound: String,
        lhs: f64,
        rhs: f64,
        expected_lhs: f64,
        expected_rhs: f64,
        holds: bool,
        instance: InstanceFile,
    }

    /// The registry counterexamples, evaluated on the spot.
    pub fn counterexamples() -> String {
        let rows: Vec<CounterexampleRow> = known_counterexamples()
            .iter()
            .map(|entry| {
                let r = eval_bound(entry.bound, &entry.instance, Tolerance::default())
                    .expect("registry instances are applicable");
                CounterexampleRow {
                    id: entry.id.to_string(),
                    bound: entry.bound.as_str().to_string(),
                    lhs: r.lhs,
                    rhs: r.rhs,
                    expected_lhs: entry.expected_lhs,
                    expected_rhs: entry.expected_rhs,
                    holds: r.holds,
                    instance: InstanceFile::from_instance(&entry.instance),
                }
            })
            .collect();
        serde_json::to_string(&rows).expect("rows serialize")
    }

    /// A seeded random instance in the instance-file format, ready to
    /// paste into the evaluator.
    pub fn sample_instance_json(m: u32, n: u32, seed: u32) -> Result<String, String> {
        if m == 0 || n == 0 {
            return Err("shape dimensions must be positive".to_string());
        }
        let mut rng = stream_rng(seed as u64, 0);
        let t = sample_instance(
            SampleDist::ComplexGaussian,
            m as usize,
            n as usize,
            &mut rng,
            format!("web:seed:{seed}"),
        );
        Ok(serde_json::to_string_pretty(&InstanceFile::from_instance(&t)).expect("serializes"))
    }
}

#[wasm_bindgen(js_name = evalInstance)]
pub fn eval_instance(instance_json: &str) -> Result<String, JsValue> {
    api::eval_instance(instance_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = searchTrace)]
pub fn search_trace(
    bound: &str,
    m: u32,
    n: u32,
    trials: u32,
    steps: u32,
    seed: u32,
) -> Result<String, JsValue> {
    api::search_trace(bound, m, n, trials, steps, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn counterexamples() -> String {
    api::counterexamples()
}

#[wasm_bindgen(js_name = sampleInstance)]
pub fn sample_instance_json(m: u32, n: u32, seed: u32) -> Result<String, JsValue> {
    api::sample_instance_json(m, n, seed).map_err(|e| JsValue::from_str(&e))
}
