//! The inequality catalog: every commutator norm bound handled by this
//! crate, with uniform left/right-hand-side evaluation, slack and ratio
//! reporting, and truth-status metadata.
//!
//! All bounds compare `||ABC - CBA||_F^2` (which reduces to
//! `||AB - BA||_F^2` for the two-matrix family, encoded by instances with
//! square shape and C = I) against a closed-form right-hand side. The
//! catalog is closed: exactly the eleven entries below, no dynamic rows.

use crate::commutator::{gen_commutator, kron_commutator_sq, kron_diff_sq, TripleInstance};
use crate::error::{Error, Result};
use crate::matrix::CMat;
use crate::svd::{ky_fan_22, singular_values_sq, spectral_norm};

/// Singular values of B above `1e-10 * sigma_1(B)` count toward its
/// numerical rank.
pub const RANK_REL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    /// `||AB-BA||^2 <= 2 ||A||_F^2 ||B||_F^2` (square, C = I).
    Bw,
    /// `||AB-BA||^2 <= 2 ||A||_(2,2)^2 ||B||_F^2` (square, C = I).
    BwKyFan,
    /// `||AB-BA||^2 <= ||A (x) B - B (x) A||_F^2` (square, C = I).
    BwKron,
    /// `||ABC-CBA||^2 <= 2 ||C||_2^2 ||A||_(2,2)^2 ||B||_F^2`.
    Gbw,
    /// `||ABC-CBA||^2 <= ||C||_2^2 ||A||_(2,2)^2 ||B||_F^2` (m = 1 or n = 1).
    GbwVec,
    /// `||ABC-CBA||^2 <= (||B||_F^2 / 2) ||A (x) C - C (x) A||_F^2`
    /// (m = 1 or n = 1; the vector-shape sharpening).
    VecKron,
    /// `||ABC-CBA||^2 <= ||C||_2^2 ||A (x) B - B (x) A||_F^2`; false in
    /// general, see the registry counterexample.
    FalseKronB,
    /// `||ABC-CBA||^2 <= 2 ||B||_2^2 ||A||_(2,2)^2 ||C||_F^2` for
    /// m, n >= 2; open conjecture.
    Conj,
    /// `||ABC-CBA||^2 <= ||B||_2^2 ||A (x) C - C (x) A||_F^2`; holds if
    /// the conjecture does (and unconditionally when rank(B) <= 2).
    ConjKron,
    /// `||ABC-CBA||^2 <= (||B||_F^2 / 2) ||A (x) C - C (x) A||_F^2`, all
    /// shapes.
    Gstbw,
    /// `||ABC-CBA||^2 <= (||B||_F^2 / k) ||A (x) C - C (x) A||_F^2` with
    /// k = rank(B); false for k >= 3, see the registry counterexample.
    RankK,
}

pub const ALL_BOUNDS: [BoundId; 11] = [
    BoundId::Bw,
    BoundId::BwKyFan,
    BoundId::BwKron,
    BoundId::Gbw,
    BoundId::GbwVec,
    BoundId::VecKron,
    BoundId::FalseKronB,
    BoundId::Conj,
    BoundId::ConjKron,
    BoundId::Gstbw,
    BoundId::RankK,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Proved,
    Conjectured,
    KnownFalse,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Bw => "BW",
            BoundId::BwKyFan => "BW_KYFAN",
            BoundId::BwKron => "BW_KRON",
            BoundId::Gbw => "GBW",
            BoundId::GbwVec => "GBW_VEC",
            BoundId::VecKron => "VEC_KRON",
            BoundId::FalseKronB => "FALSE_KRON_B",
            BoundId::Conj => "CONJ",
            BoundId::ConjKron => "CONJ_KRON",
            BoundId::Gstbw => "GSTBW",
            BoundId::RankK => "RANK_K",
        }
    }

    pub fn parse(s: &str) -> Option<BoundId> {
        ALL_BOUNDS
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
    }

    pub fn status(self) -> BoundStatus {
        match self {
            BoundId::Bw
            | BoundId::BwKyFan
            | BoundId::BwKron
            | BoundId::Gbw
            | BoundId::GbwVec
            | BoundId::VecKron
            | BoundId::Gstbw => BoundStatus::Proved,
            BoundId::Conj | BoundId::ConjKron => BoundStatus::Conjectured,
            BoundId::FalseKronB | BoundId::RankK => BoundStatus::KnownFalse,
        }
    }

    /// Documented closed form of the right-hand side.
    pub fn rhs_formula(self) -> &'static str {
        match self {
            BoundId::Bw => "2 ||A||_F^2 ||B||_F^2",
            BoundId::BwKyFan => "2 ||A||_(2,2)^2 ||B||_F^2",
            BoundId::BwKron => "||A(x)B - B(x)A||_F^2",
            BoundId::Gbw => "2 ||C||_2^2 ||A||_(2,2)^2 ||B||_F^2",
            BoundId::GbwVec => "||C||_2^2 ||A||_(2,2)^2 ||B||_F^2",
            BoundId::VecKron => "(||B||_F^2 / 2) ||A(x)C - C(x)A||_F^2",
            BoundId::FalseKronB => "||C||_2^2 ||A(x)B - B(x)A||_F^2",
            BoundId::Conj => "2 ||B||_2^2 ||A||_(2,2)^2 ||C||_F^2",
            BoundId::ConjKron => "||B||_2^2 ||A(x)C - C(x)A||_F^2",
            BoundId::Gstbw => "(||B||_F^2 / 2) ||A(x)C - C(x)A||_F^2",
            BoundId::RankK => "(||B||_F^2 / rank(B)) ||A(x)C - C(x)A||_F^2",
        }
    }

    /// Documented closed form of the left-hand side.
    pub fn lhs_formula(self) -> &'static str {
        match self {
            BoundId::Bw | BoundId::BwKyFan | BoundId::BwKron => "||AB - BA||_F^2",
            _ => "||ABC - CBA||_F^2",
        }
    }

    /// Checks the applicability predicate against an instance; returns the
    /// human-readable reason when it fails.
    pub fn applicability(self, t: &TripleInstance) -> std::result::Result<(), String> {
        let (m, n) = t.shape();
        match self {
            BoundId::Bw | BoundId::BwKyFan | BoundId::BwKron => {
                if m != n {
                    Err(format!("requires a square shape, got {m}x{n}"))
                } else if !t.c().is_identity() {
                    Err("requires C = I (two-matrix commutator encoding)".into())
                } else {
                    Ok(())
                }
            }
            BoundId::GbwVec | BoundId::VecKron => {
                if m == 1 || n == 1 {
                    Ok(())
                } else {
                    Err(format!("requires m = 1 or n = 1, got {m}x{n}"))
                }
            }
            BoundId::Conj => {
                if m >= 2 && n >= 2 {
                    Ok(())
                } else {
                    Err(format!("requires m, n >= 2, got {m}x{n}"))
                }
            }
            BoundId::RankK => {
                if t.b().is_zero() {
                    Err("requires B != 0 (rank divides the bound)".into())
                } else {
                    Ok(())
                }
            }
            BoundId::Gbw | BoundId::FalseKronB | BoundId::ConjKron | BoundId::Gstbw => Ok(()),
        }
    }
}

impl BoundId {
    /// Whether randomized search on this bound makes sense at the given
    /// shape. The two-matrix family is excluded: its C = I encoding is
    /// reachable only through explicit instances, never through sampling.
    pub fn searchable_on(self, (m, n): (usize, usize)) -> bool {
        match self {
            BoundId::Bw | BoundId::BwKyFan | BoundId::BwKron => false,
            BoundId::GbwVec | BoundId::VecKron => m == 1 || n == 1,
            BoundId::Conj => m >= 2 && n >= 2,
            _ => true,
        }
    }
}

impl std::fmt::Display for BoundId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Absolute/relative tolerance pair for the `holds` verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn uniform(tol: f64) -> Self {
        Self { abs: tol, rel: tol }
    }
}

/// Both sides of one bound on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub bound: BoundId,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    /// `lhs / rhs`; `None` when the right-hand side is zero (reported
    /// explicitly, never coerced to infinity).
    pub ratio: Option<f64>,
    /// `slack >= -(abs_tol + rel_tol * rhs)`.
    pub holds: bool,
    /// Numerical rank of B; populated for RANK_K only.
    pub rank_b: Option<usize>,
}

/// Numerical rank of `b`: singular values above `1e-10 * sigma_1`.
pub fn numerical_rank(b: &CMat) -> usize {
    let sq = singular_values_sq(b);
    let top = sq.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    let floor = (RANK_REL * RANK_REL) * top;
    sq.iter().filter(|&&s| s > floor).count()
}

fn rhs_value(id: BoundId, t: &TripleInstance) -> (f64, Option<usize>) {
    let a = t.a();
    let b = t.b();
    let c = t.c();
    match id {
        BoundId::Bw => (2.0 * a.frob_norm_sq() * b.frob_norm_sq(), None),
        BoundId::BwKyFan => {
            let kf = ky_fan_22(a);
            (2.0 * kf * kf * b.frob_norm_sq(), None)
        }
        BoundId::BwKron => (kron_commutator_sq(a, b), None),
        BoundId::Gbw => {
            let sc = spectral_norm(c);
            let kf = ky_fan_22(a);
            (2.0 * sc * sc * kf * kf * b.frob_norm_sq(), None)
        }
        BoundId::GbwVec => {
            let sc = spectral_norm(c);
            let kf = ky_fan_22(a);
            (sc * sc * kf * kf * b.frob_norm_sq(), None)
        }
        BoundId::VecKron | BoundId::Gstbw => {
            (0.5 * b.frob_norm_sq() * kron_diff_sq(a, c), None)
        }
        BoundId::FalseKronB => {
            let sc = spectral_norm(c);
            (sc * sc * kron_commutator_sq(a, b), None)
        }
        BoundId::Conj => {
            let sb = spectral_norm(b);
            let kf = ky_fan_22(a);
            (2.0 * sb * sb * kf * kf * c.frob_norm_sq(), None)
        }
        BoundId::ConjKron => {
            let sb = spectral_norm(b);
            (sb * sb * kron_diff_sq(a, c), None)
        }
        BoundId::RankK => {
            let k = numerical_rank(b);
            (b.frob_norm_sq() / k as f64 * kron_diff_sq(a, c), Some(k))
        }
    }
}

/// Evaluates one catalog bound on an instance.
pub fn eval_bound(id: BoundId, t: &TripleInstance, tol: Tolerance) -> Result<InequalityReport> {
    if let Err(reason) = id.applicability(t) {
        return Err(Error::NotApplicable {
            bound: id.as_str(),
            reason,
        });
    }
    let lhs = gen_commutator(t).frob_norm_sq();
    let (rhs, rank_b) = rhs_value(id, t);
    let slack = rhs - lhs;
    let ratio = (rhs != 0.0).then(|| lhs / rhs);
    let holds = slack >= -(tol.abs + tol.rel * rhs);
    Ok(InequalityReport {
        bound: id,
        lhs,
        rhs,
        slack,
        ratio,
        holds,
        rank_b,
    })
}

/// Result of trying one catalog entry inside [`eval_all`].
#[derive(Debug, Clone, PartialEq)]
pub enum BoundOutcome {
    Evaluated(InequalityReport),
    Skipped { bound: BoundId, reason: String },
}

/// Evaluates every applicable catalog bound; inapplicable entries are
/// reported with the reason rather than dropped.
pub fn eval_all(t: &TripleInstance, tol: Tolerance) -> Vec<BoundOutcome> {
    ALL_BOUNDS
        .iter()
        .map(|&id| match eval_bound(id, t, tol) {
            Ok(report) => BoundOutcome::Evaluated(report),
            Err(Error::NotApplicable { reason, .. }) => BoundOutcome::Skipped { bound: id, reason },
            Err(e) => unreachable!("eval_bound only fails on applicability: {e}"),
        })
        .collect()
}

/// Verifies the right-hand-side orderings that chain the catalog entries
/// together, pointwise on one instance:
///
/// * on vector shapes the sharpened bound's RHS is exactly half the
///   general one's;
/// * `||B||_2^2 ||A(x)C - C(x)A||_F^2` equals
///   `2 ||B||_2^2 (||A||_F^2 ||C||_F^2 - |(A,C)|^2)` (a norm identity,
///   checked with 1e-10 slack);
/// * the rank-agnostic Kronecker bound's RHS is exactly
///   `(||B||_F^2 / 2) ||A(x)C - C(x)A||_F^2`.
pub fn implication_chain_check(t: &TripleInstance) -> bool {
    let (m, n) = t.shape();
    let tol = Tolerance::default();

    if m == 1 || n == 1 {
        let vec_rhs = rhs_value(BoundId::GbwVec, t).0;
        let gen_rhs = rhs_value(BoundId::Gbw, t).0;
        if (gen_rhs - 2.0 * vec_rhs).abs() > 1e-10 * (1.0 + gen_rhs.abs()) {
            return false;
        }
    }

    let sb = spectral_norm(t.b());
    let kron = kron_diff_sq(t.a(), t.c());
    let inner = t.a().frob_inner(t.c()).norm_sqr();
    let closed = 2.0 * (t.a().frob_norm_sq() * t.c().frob_norm_sq() - inner);
    if sb * sb * kron > sb * sb * closed + 1e-10 * (1.0 + sb * sb * closed) {
        return false;
    }

    let gstbw_rhs = rhs_value(BoundId::Gstbw, t).0;
    if (gstbw_rhs - 0.5 * t.b().frob_norm_sq() * kron).abs() > tol.abs {
        return false;
    }

    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remark_triple() -> TripleInstance {
        let a = CMat::from_real_rows(&[&[-1.0, -1.0], &[0.0, 0.0]]).unwrap();
        let c = CMat::diag_real(&[2.0, 1.0]);
        TripleInstance::new(a.clone(), a, c, "test").unwrap()
    }

    fn rank_triple() -> TripleInstance {
        let a = CMat::from_real_rows(&[&[0.0, -1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])
            .unwrap();
        let b = CMat::diag_real(&[1.0, 0.5, 0.5]);
        let c = CMat::from_real_rows(&[&[-1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[-1.0, 0.0, 0.0]])
            .unwrap();
        TripleInstance::new(a, b, c, "test").unwrap()
    }

    #[test]
    fn gbw_on_rank_triple() {
        let r = eval_bound(BoundId::Gbw, &rank_triple(), Tolerance::default()).unwrap();
        assert!((r.lhs - 4.5).abs() < 1e-13);
        assert!((r.rhs - 9.0).abs() < 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn false_kron_b_on_remark_triple() {
        let r = eval_bound(BoundId::FalseKronB, &remark_triple(), Tolerance::default()).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-14);
        assert_eq!(r.rhs, 0.0);
        assert!(!r.holds);
        assert_eq!(r.ratio, None);
    }

    #[test]
    fn rank_k_on_rank_triple() {
        let r = eval_bound(BoundId::RankK, &rank_triple(), Tolerance::default()).unwrap();
        assert_eq!(r.rank_b, Some(3));
        assert!((r.lhs - 4.5).abs() < 1e-13);
        assert!((r.rhs - 4.0).abs() < 1e-12);
        assert!(!r.holds);
    }

    #[test]
    fn gbw_vec_equality_family() {
        let a = CMat::col_real(&[1.0, 0.0]);
        let c = CMat::col_real(&[0.0, 1.0]);
        let b = CMat::from_real_rows(&[&[3.0, -2.0]]).unwrap();
        let t = TripleInstance::new(a, b.clone(), c, "test").unwrap();
        let r = eval_bound(BoundId::GbwVec, &t, Tolerance::default()).unwrap();
        assert!((r.lhs - b.frob_norm_sq()).abs() < 1e-13);
        assert_eq!(r.ratio, Some(1.0));
        assert!(r.holds);
    }

    #[test]
    fn bw_equality_witness() {
        let a = CMat::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let b = CMat::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap();
        let t = TripleInstance::new(a, b, CMat::identity(2), "test").unwrap();
        for id in [BoundId::Bw, BoundId::BwKyFan, BoundId::Gbw] {
            let r = eval_bound(id, &t, Tolerance::default()).unwrap();
            assert!((r.lhs - 2.0).abs() < 1e-13, "{id}: lhs {}", r.lhs);
            assert!((r.rhs - 2.0).abs() < 1e-12, "{id}: rhs {}", r.rhs);
            assert!(r.slack.abs() < 1e-12);
            assert!(r.holds);
        }
    }

    #[test]
    fn bw_family_requires_identity_c() {
        let t = remark_triple();
        assert!(matches!(
            eval_bound(BoundId::Bw, &t, Tolerance::default()),
            Err(Error::NotApplicable { .. })
        ));
        // GBW_VEC needs a vector shape.
        assert!(matches!(
            eval_bound(BoundId::GbwVec, &t, Tolerance::default()),
            Err(Error::NotApplicable { .. })
        ));
        // RANK_K needs a nonzero B.
        let z = rank_triple()
            .replace(crate::commutator::Operand::B, CMat::zeros(3, 3))
            .unwrap();
        assert!(matches!(
            eval_bound(BoundId::RankK, &z, Tolerance::default()),
            Err(Error::NotApplicable { .. })
        ));
    }

    #[test]
    fn eval_all_on_rank_triple() {
        let outcomes = eval_all(&rank_triple(), Tolerance::default());
        assert_eq!(outcomes.len(), ALL_BOUNDS.len());
        for outcome in &outcomes {
            match outcome {
                BoundOutcome::Evaluated(r) => match r.bound {
                    BoundId::RankK => assert!(!r.holds),
                    BoundId::Conj => {
                        assert!((r.rhs - 10.0).abs() < 1e-12);
                        assert!(r.holds);
                    }
                    _ => assert!(r.holds, "{} should hold", r.bound),
                },
                BoundOutcome::Skipped { bound, .. } => {
                    assert!(
                        matches!(
                            bound,
                            BoundId::Bw
                                | BoundId::BwKyFan
                                | BoundId::BwKron
                                | BoundId::GbwVec
                                | BoundId::VecKron
                        ),
                        "{bound} unexpectedly skipped"
                    );
                }
            }
        }
    }

    #[test]
    fn eval_all_on_zero_and_scalar_triples() {
        let zero = TripleInstance::new(
            CMat::zeros(2, 2),
            CMat::zeros(2, 2),
            CMat::zeros(2, 2),
            "zero",
        )
        .unwrap();
        for outcome in eval_all(&zero, Tolerance::default()) {
            if let BoundOutcome::Evaluated(r) = outcome {
                assert_eq!(r.lhs, 0.0);
                assert!(r.holds);
            }
        }

        let scalar = TripleInstance::new(
            CMat::from_real_rows(&[&[2.0]]).unwrap(),
            CMat::from_real_rows(&[&[-3.0]]).unwrap(),
            CMat::from_real_rows(&[&[0.5]]).unwrap(),
            "scalar",
        )
        .unwrap();
        for outcome in eval_all(&scalar, Tolerance::default()) {
            if let BoundOutcome::Evaluated(r) = outcome {
                assert!(r.lhs.abs() < 1e-15, "{}: scalars commute", r.bound);
            }
        }
    }

    #[test]
    fn chain_check_examples() {
        assert!(implication_chain_check(&rank_triple()));
        assert!(implication_chain_check(&remark_triple()));

        // a = c kills both sides of the Kronecker bounds.
        let a = CMat::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let t = TripleInstance::new(a.clone(), a.conj_transpose(), a.clone(), "a=c").unwrap();
        assert!(implication_chain_check(&t));
        let r = eval_bound(BoundId::ConjKron, &t, Tolerance::default()).unwrap();
        assert_eq!(r.rhs, 0.0);
        assert!(r.lhs.abs() < 1e-15);
    }

    #[test]
    fn numerical_rank_cases() {
        assert_eq!(numerical_rank(&CMat::diag_real(&[1.0, 0.5, 0.5])), 3);
        assert_eq!(numerical_rank(&CMat::zeros(3, 3)), 0);
        let rank1 =
            CMat::col_real(&[1.0, 2.0]).matmul(&CMat::from_real_rows(&[&[3.0, -1.0]]).unwrap());
        assert_eq!(numerical_rank(&rank1), 1);
    }

    #[test]
    fn bound_id_round_trip() {
        for id in ALL_BOUNDS {
            assert_eq!(BoundId::parse(id.as_str()), Some(id));
        }
        assert_eq!(BoundId::parse("nope"), None);
    }
}
