//! Randomized sampling and derivative-free local ascent on the ratio
//! LHS/RHS of a catalog bound, plus the registry of exact counterexamples
//! and equality witnesses.
//!
//! Every catalog bound is degree-(2,2,2) homogeneous in (A, B, C), so the
//! ratio landscape lives on a product of unit spheres; the climber
//! perturbs one operand at a time with a Gaussian step, renormalizes it to
//! unit Frobenius norm, and accepts only strict improvements.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bounds::{eval_bound, BoundId, Tolerance};
use crate::commutator::{Operand, TripleInstance};
use crate::error::Result;
use crate::matrix::CMat;

/// Ratios above `1 + VIOLATION_MARGIN` count as violations; the margin
/// separates genuine violations from float noise at the equality surface.
pub const VIOLATION_MARGIN: f64 = 1e-8;

/// The climb stops once step halving drives the step size below this.
pub const PLATEAU_STEP: f64 = 1e-8;

/// Consecutive rejected steps before the step size is halved.
pub const REJECTIONS_PER_HALVING: u32 = 20;

/// Matrix-entry distribution for sampled instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleDist {
    ComplexGaussian,
    RealGaussian,
    /// Each operand is a product of Gaussian factors with inner dimension
    /// `r` (clamped to the operand's min dimension), so its rank is at
    /// most `r`.
    LowRank(usize),
    /// Complex Gaussian, each operand renormalized to unit Frobenius norm.
    UnitSphere,
}

impl SampleDist {
    pub fn as_str(self) -> String {
        match self {
            SampleDist::ComplexGaussian => "complex_gaussian".into(),
            SampleDist::RealGaussian => "real_gaussian".into(),
            SampleDist::LowRank(r) => format!("low_rank_{r}"),
            SampleDist::UnitSphere => "unit_sphere".into(),
        }
    }

    pub fn parse(s: &str) -> Option<SampleDist> {
        match s {
            "complex_gaussian" => Some(SampleDist::ComplexGaussian),
            "real_gaussian" => Some(SampleDist::RealGaussian),
            "unit_sphere" => Some(SampleDist::UnitSphere),
            _ => s
                .strip_prefix("low_rank_")
                .and_then(|r| r.parse::<usize>().ok())
                .filter(|&r| r >= 1)
                .map(SampleDist::LowRank),
        }
    }

    fn is_real(self) -> bool {
        matches!(self, SampleDist::RealGaussian)
    }
}

/// Search configuration; identical configs (seed included) reproduce
/// bit-identical records.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub bound: BoundId,
    pub shape: (usize, usize),
    pub trials: usize,
    pub ascent_steps: usize,
    pub step_size: f64,
    pub rng_seed: u64,
    pub dist: SampleDist,
}

impl SearchConfig {
    pub fn new(bound: BoundId, shape: (usize, usize)) -> Self {
        Self {
            bound,
            shape,
            trials: 1000,
            ascent_steps: 1000,
            step_size: 0.25,
            rng_seed: 42,
            dist: SampleDist::ComplexGaussian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    BudgetExhausted,
    Plateau,
    ViolationFound,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::BudgetExhausted => "budget_exhausted",
            Termination::Plateau => "plateau",
            Termination::ViolationFound => "violation_found",
        }
    }
}

/// Outcome of one hill climb.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchRecord {
    pub best_instance: TripleInstance,
    pub best_ratio: f64,
    /// `(iteration, ratio)` at the start (iteration 0) and at every
    /// accepted step; the ratios are strictly increasing.
    pub trace: Vec<(usize, f64)>,
    pub terminated: Termination,
    pub rng_seed: u64,
}

fn gaussian(rng: &mut impl Rng, complex: bool) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    if complex {
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    } else {
        Complex64::new(re, 0.0)
    }
}

/// Matrix with independent standard Gaussian entries (complex or real).
pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize, complex: bool) -> CMat {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        data.push(gaussian(rng, complex));
    }
    CMat::new(rows, cols, data).expect("Gaussian draws are finite")
}

fn draw_operand(rng: &mut impl Rng, dist: SampleDist, rows: usize, cols: usize) -> CMat {
    match dist {
        SampleDist::ComplexGaussian => gaussian_matrix(rng, rows, cols, true),
        SampleDist::RealGaussian => gaussian_matrix(rng, rows, cols, false),
        SampleDist::LowRank(r) => {
            let inner = r.min(rows.min(cols)).max(1);
            let left = gaussian_matrix(rng, rows, inner, true);
            let right = gaussian_matrix(rng, inner, cols, true);
            left.matmul(&right)
        }
        SampleDist::UnitSphere => {
            let g = gaussian_matrix(rng, rows, cols, true);
            let norm = g.frob_norm();
            if norm == 0.0 {
                g
            } else {
                g.scaled(Complex64::new(1.0 / norm, 0.0))
            }
        }
    }
}

/// Draws one operand triple: A, C are m x n and B is n x m.
pub fn sample_instance(
    dist: SampleDist,
    m: usize,
    n: usize,
    rng: &mut impl Rng,
    provenance: impl Into<String>,
) -> TripleInstance {
    assert!(m >= 1 && n >= 1, "shape dimensions must be positive");
    let a = draw_operand(rng, dist, m, n);
    let b = draw_operand(rng, dist, n, m);
    let c = draw_operand(rng, dist, m, n);
    TripleInstance::new(a, b, c, provenance).expect("shapes agree by construction")
}

/// RNG for a given (seed, stream) pair; streams keep independent runs
/// reproducible regardless of evaluation order.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The maximized quantity: `eval_bound(...).ratio`. `None` when the RHS is
/// zero (a rejected point for the climber) or the bound does not apply.
pub fn ratio_objective(bound: BoundId, t: &TripleInstance) -> Option<f64> {
    eval_bound(bound, t, Tolerance::default())
        .ok()
        .and_then(|r| r.ratio)
}

/// Hill climb from the best of `config.trials` random draws.
pub fn hill_climb(config: &SearchConfig) -> SearchRecord {
    let (m, n) = config.shape;
    let mut sampler = stream_rng(config.rng_seed, 0);
    let mut best: Option<(TripleInstance, f64)> = None;
    for draw in 0..config.trials.max(1) {
        let t = sample_instance(
            config.dist,
            m,
            n,
            &mut sampler,
            format!("seed:{}:shape:{m}x{n}:draw:{draw}", config.rng_seed),
        );
        let ratio = ratio_objective(config.bound, &t);
        match (ratio, &best) {
            (Some(r), Some((_, cur))) if r > *cur => best = Some((t, r)),
            (Some(r), None) => best = Some((t, r)),
            _ => {}
        }
    }
    let (start, start_ratio) = match best {
        Some((t, r)) => (t, r),
        // All trials had an undefined ratio; not reachable with continuous
        // distributions, but keep a defined starting point anyway.
        None => {
            let t = sample_instance(
                config.dist,
                m,
                n,
                &mut sampler,
                format!("seed:{}:shape:{m}x{n}:fallback", config.rng_seed),
            );
            (t, f64::NEG_INFINITY)
        }
    };
    ascend(start, start_ratio, config)
}

/// Hill climb from a caller-provided starting instance (used to probe the
/// neighborhood of registry witnesses).
pub fn hill_climb_from(start: TripleInstance, config: &SearchConfig) -> SearchRecord {
    let ratio = ratio_objective(config.bound, &start).unwrap_or(f64::NEG_INFINITY);
    ascend(start, ratio, config)
}

fn ascend(start: TripleInstance, start_ratio: f64, config: &SearchConfig) -> SearchRecord {
    let mut rng = stream_rng(config.rng_seed, 1);
    let complex = !config.dist.is_real();
    let mut current = start;
    let mut current_ratio = start_ratio;
    let mut trace = vec![(0usize, current_ratio)];
    let mut step_size = config.step_size;
    let mut rejections = 0u32;

    let violation = |ratio: f64| ratio > 1.0 + VIOLATION_MARGIN;

    if violation(current_ratio) {
        return SearchRecord {
            best_instance: current,
            best_ratio: current_ratio,
            trace,
            terminated: Termination::ViolationFound,
            rng_seed: config.rng_seed,
        };
    }

    let mut terminated = Termination::BudgetExhausted;
    for step in 1..=config.ascent_steps {
        if step_size < PLATEAU_STEP {
            terminated = Termination::Plateau;
            break;
        }
        let which = match rng.random_range(0..3u8) {
            0 => Operand::A,
            1 => Operand::B,
            _ => Operand::C,
        };
        let target = match which {
            Operand::A => current.a(),
            Operand::B => current.b(),
            Operand::C => current.c(),
        };
        let noise = gaussian_matrix(&mut rng, target.rows(), target.cols(), complex);
        let perturbed = target.add(&noise.scaled(Complex64::new(step_size, 0.0)));
        let norm = perturbed.frob_norm();
        let accepted = if norm == 0.0 {
            false
        } else {
            let candidate = current
                .replace(
                    which,
                    perturbed.scaled(Complex64::new(1.0 / norm, 0.0)),
                )
                .expect("perturbation preserves shape");
            match ratio_objective(config.bound, &candidate) {
                Some(r) if r > current_ratio => {
                    current = candidate;
                    current_ratio = r;
                    trace.push((step, r));
                    true
                }
                _ => false,
            }
        };
        if accepted {
            rejections = 0;
            if violation(current_ratio) {
                terminated = Termination::ViolationFound;
                break;
            }
        } else {
            rejections += 1;
            if rejections >= REJECTIONS_PER_HALVING {
                step_size *= 0.5;
                rejections = 0;
            }
        }
    }

    SearchRecord {
        best_instance: current,
        best_ratio: current_ratio,
        trace,
        terminated,
        rng_seed: config.rng_seed,
    }
}

/// One registry counterexample: an exact instance falsifying a catalog
/// bound, with the two sides it is expected to produce.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub id: &'static str,
    pub bound: BoundId,
    pub instance: TripleInstance,
    pub expected_lhs: f64,
    pub expected_rhs: f64,
}

/// The two exact counterexamples: `CE_REMARK` falsifies FALSE_KRON_B with
/// sides (1, 0); `CE_RANK` falsifies RANK_K with sides (4.5, 4).
pub fn known_counterexamples() -> Vec<Counterexample> {
    let remark_a = CMat::from_real_rows(&[&[-1.0, -1.0], &[0.0, 0.0]]).expect("static");
    let remark = TripleInstance::new(
        remark_a.clone(),
        remark_a,
        CMat::diag_real(&[2.0, 1.0]),
        "registry:CE_REMARK",
    )
    .expect("static");

    let rank = TripleInstance::new(
        CMat::from_real_rows(&[&[0.0, -1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])
            .expect("static"),
        CMat::diag_real(&[1.0, 0.5, 0.5]),
        CMat::from_real_rows(&[&[-1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[-1.0, 0.0, 0.0]])
            .expect("static"),
        "registry:CE_RANK",
    )
    .expect("static");

    vec![
        Counterexample {
            id: "CE_REMARK",
            bound: BoundId::FalseKronB,
            instance: remark,
            expected_lhs: 1.0,
            expected_rhs: 0.0,
        },
        Counterexample {
            id: "CE_RANK",
            bound: BoundId::RankK,
            instance: rank,
            expected_lhs: 4.5,
            expected_rhs: 4.0,
        },
    ]
}

/// Registry equality witnesses: instances attaining a bound with zero
/// slack (ratio exactly 1).
pub fn equality_witnesses() -> Vec<(BoundId, TripleInstance)> {
    // (E_12, E_21, I_2): the two-matrix commutator is diag(1, -1).
    let e12 = CMat::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).expect("static");
    let e21 = CMat::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).expect("static");
    let gbw = TripleInstance::new(e12, e21, CMat::identity(2), "registry:EQ_GBW").expect("static");

    // Orthonormal column pair with a row vector B: the commutator is a
    // rotation of B, so both sides equal ||B||_F^2.
    let vec = TripleInstance::new(
        CMat::col_real(&[1.0, 0.0]),
        CMat::from_real_rows(&[&[0.6, -0.8]]).expect("static"),
        CMat::col_real(&[0.0, 1.0]),
        "registry:EQ_GBW_VEC",
    )
    .expect("static");

    vec![(BoundId::Gbw, gbw), (BoundId::GbwVec, vec)]
}

/// Evaluates a counterexample registry against its expected sides at the
/// given absolute tolerance. Returns per-entry `(id, lhs, rhs, ok)`.
pub fn check_counterexamples(
    entries: &[Counterexample],
    abs_tol: f64,
) -> Result<Vec<(String, f64, f64, bool)>> {
    let mut out = Vec::with_capacity(entries.len());
    for entry in entries {
        let report = eval_bound(entry.bound, &entry.instance, Tolerance::default())?;
        let ok = (report.lhs - entry.expected_lhs).abs() <= abs_tol
            && (report.rhs - entry.expected_rhs).abs() <= abs_tol
            && !report.holds;
        out.push((entry.id.to_string(), report.lhs, report.rhs, ok));
    }
    Ok(out)
}
