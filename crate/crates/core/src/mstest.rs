//! Multiplier-sequence semantics: applying a sequence to a polynomial
//! through a simple set, the classical binomial-image test, sequence
//! property laws, and counterexample falsification for arbitrary bases.
//!
//! A falsification verdict is one-sided by construction: a found
//! counterexample is a certificate (real-rooted input, certified non-real
//! image), while `NoneFoundWithinBudget` is evidence only, and the report
//! carries the budget so downstream claims stay honest.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bases::{BasisDescriptor, RationalSimpleSet};
use crate::basischange::{expand_in_basis, reconstruct};
use crate::experiments::en_max_bound;
use crate::poly::{Degree, Poly, RationalPoly};
use crate::realroots::{is_real_rooted, RealRootCertificate, Verdict};
use crate::scalar::{ratio, rational_string, rational_vec, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("sequence prefix must be nonempty")]
    EmptyPrefix,
    #[error("a geometric tail requires a nonzero final prefix term")]
    GeometricZeroAnchor,
    #[error("geometric extrapolation requires nonzero first two terms")]
    ZeroLeadingTerms,
    #[error("monotonicity checks require nonnegative terms")]
    NegativeTerms,
}

/// Rule generating every term past the stored prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    /// All later terms are zero.
    Zeros,
    /// The last prefix value repeats forever.
    Constant,
    /// Each term is the previous one times `ratio`.
    Geometric {
        #[serde(with = "rational_string")]
        ratio: Rational,
    },
}

/// A candidate multiplier sequence: a finite exact-rational prefix plus a
/// tail rule. Wire form: `{"prefix":["1/8","1","2"],"tail":{"kind":"zeros"}}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaSequence {
    #[serde(with = "rational_vec")]
    prefix: Vec<Rational>,
    tail: Tail,
}

impl GammaSequence {
    pub fn new(prefix: Vec<Rational>, tail: Tail) -> Result<Self, SequenceError> {
        if prefix.is_empty() {
            return Err(SequenceError::EmptyPrefix);
        }
        if matches!(tail, Tail::Geometric { .. })
            && prefix.last().expect("nonempty").is_zero()
        {
            return Err(SequenceError::GeometricZeroAnchor);
        }
        Ok(GammaSequence { prefix, tail })
    }

    /// Prefix from machine integers with a zero tail; the common test shape.
    pub fn from_ints(prefix: &[i64]) -> Self {
        GammaSequence::new(prefix.iter().map(|&n| ratio(n, 1)).collect(), Tail::Zeros)
            .expect("nonempty integer prefix")
    }

    pub fn constant(c: Rational) -> Self {
        GammaSequence::new(vec![c], Tail::Constant).expect("nonempty")
    }

    /// Pure geometric sequence `gamma_0 * r^k`.
    pub fn geometric(gamma0: Rational, r: Rational) -> Result<Self, SequenceError> {
        GammaSequence::new(vec![gamma0], Tail::Geometric { ratio: r })
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// gamma_k: prefix value for stored indices, tail rule beyond.
    pub fn gamma_at(&self, k: usize) -> Rational {
        if k < self.prefix.len() {
            return self.prefix[k].clone();
        }
        let last = self.prefix.last().expect("nonempty").clone();
        match &self.tail {
            Tail::Zeros => Rational::zero(),
            Tail::Constant => last,
            Tail::Geometric { ratio } => {
                let mut v = last;
                for _ in self.prefix.len()..=k {
                    v = v * ratio.clone();
                }
                v
            }
        }
    }

    /// Termwise m-th power; the tail rule transforms along.
    pub fn power_sequence(&self, m: u32) -> GammaSequence {
        assert!(m >= 1, "power must be at least 1");
        let pow = |v: &Rational| -> Rational {
            let mut acc = Rational::one();
            for _ in 0..m {
                acc = acc * v.clone();
            }
            acc
        };
        GammaSequence {
            prefix: self.prefix.iter().map(&pow).collect(),
            tail: match &self.tail {
                Tail::Zeros => Tail::Zeros,
                Tail::Constant => Tail::Constant,
                Tail::Geometric { ratio } => Tail::Geometric { ratio: pow(ratio) },
            },
        }
    }

    /// True when every term equals the first one.
    pub fn is_constant_sequence(&self) -> bool {
        let first = &self.prefix[0];
        self.prefix.iter().all(|v| v == first)
            && match &self.tail {
                Tail::Zeros => first.is_zero(),
                Tail::Constant => true,
                Tail::Geometric { ratio } => ratio.is_one(),
            }
    }
}

impl<'de> Deserialize<'de> for GammaSequence {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            #[serde(with = "rational_vec")]
            prefix: Vec<Rational>,
            tail: Tail,
        }
        let w = Wire::deserialize(de)?;
        GammaSequence::new(w.prefix, w.tail).map_err(serde::de::Error::custom)
    }
}

/// Applies the sequence to `f` through the simple set `Q`: expand, scale
/// coefficient `k` by `gamma_k`, reassemble in standard coefficients.
pub fn apply_sequence(
    seq: &GammaSequence,
    f: &RationalPoly,
    basis: &RationalSimpleSet,
) -> RationalPoly {
    let coeffs = expand_in_basis(f, basis);
    let scaled: Vec<Rational> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.clone() * seq.gamma_at(k))
        .collect();
    reconstruct(&scaled, basis)
}

/// Outcome of the classical binomial-image test.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyaSchurOutcome {
    /// Every image up to the bound certified real-rooted. Evidence up to
    /// that degree, not a proof for all n.
    Pass,
    FailAt {
        n: usize,
        image: RationalPoly,
        cert: RealRootCertificate,
    },
}

impl PolyaSchurOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, PolyaSchurOutcome::Pass)
    }
}

/// Certifies the images of `(1+x)^n` under the sequence (standard basis)
/// for n = 1..=bound, reporting the first failure with its certificate.
///
/// On every pass the binomial-normalized Newton inequalities collapse to
/// Turan's inequality for the sequence itself; that bridge is asserted
/// here, so a Pass carries it.
pub fn polya_schur_check(seq: &GammaSequence, bound: usize) -> PolyaSchurOutcome {
    assert!(bound >= 1, "degree bound must be at least 1");
    let std = RationalSimpleSet::standard();
    let one_plus_x = Poly::new(vec![Rational::one(), Rational::one()]);
    for n in 1..=bound {
        let image = apply_sequence(seq, &one_plus_x.pow(n as u32), &std);
        let cert = is_real_rooted(&image);
        match cert.verdict {
            Verdict::HasNonRealRoot => {
                return PolyaSchurOutcome::FailAt { n, image, cert };
            }
            Verdict::AllRealRooted | Verdict::DegenerateZeroPoly => {
                // Newton bridge: image real-rooted forces
                // gamma_k^2 >= gamma_{k-1} gamma_{k+1} for 1 <= k <= n-1.
                if cert.verdict == Verdict::AllRealRooted {
                    for k in 1..n {
                        let gk = seq.gamma_at(k);
                        let lhs = gk.clone() * gk;
                        let rhs = seq.gamma_at(k - 1) * seq.gamma_at(k + 1);
                        assert!(
                            lhs >= rhs,
                            "Newton bridge violated at n={n}, k={k}: implementation bug"
                        );
                    }
                }
            }
        }
    }
    PolyaSchurOutcome::Pass
}

/// Turan's inequality `gamma_k^2 - gamma_(k-1) gamma_(k+1) >= 0` for
/// k = 1..=bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TuranOutcome {
    Pass,
    FailAt(usize),
}

pub fn turan_check(seq: &GammaSequence, bound: usize) -> TuranOutcome {
    assert!(bound >= 1);
    for k in 1..=bound {
        let gk = seq.gamma_at(k);
        if gk.clone() * gk < seq.gamma_at(k - 1) * seq.gamma_at(k + 1) {
            return TuranOutcome::FailAt(k);
        }
    }
    TuranOutcome::Pass
}

/// Sign-pattern classification of the nonzero terms up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignPattern {
    AllSameSign,
    Alternating,
    /// First index at which neither pattern can still hold.
    Neither(usize),
}

pub fn sign_pattern_check(seq: &GammaSequence, bound: usize) -> SignPattern {
    let mut same_sign_viable = true;
    let mut alternating_viable = true;
    let mut first_sign: Option<(usize, bool)> = None; // (index, is_positive)
    for k in 0..=bound {
        let g = seq.gamma_at(k);
        if g.is_zero() {
            continue;
        }
        let pos = g.is_positive();
        match first_sign {
            None => first_sign = Some((k, pos)),
            Some((k0, pos0)) => {
                if pos != pos0 {
                    same_sign_viable = false;
                }
                // alternating means the sign is tied to index parity
                let expected = if (k - k0) % 2 == 0 { pos0 } else { !pos0 };
                if pos != expected {
                    alternating_viable = false;
                }
                if !same_sign_viable && !alternating_viable {
                    return SignPattern::Neither(k);
                }
            }
        }
    }
    if same_sign_viable {
        SignPattern::AllSameSign
    } else {
        SignPattern::Alternating
    }
}

/// Once a zero follows a nonzero term, every later term must be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroPatternOutcome {
    Pass,
    FailAt(usize),
}

pub fn zero_pattern_check(seq: &GammaSequence, bound: usize) -> ZeroPatternOutcome {
    let mut seen_nonzero = false;
    let mut zero_after_nonzero = false;
    for k in 0..=bound {
        let g = seq.gamma_at(k);
        if g.is_zero() {
            if seen_nonzero {
                zero_after_nonzero = true;
            }
        } else {
            if zero_after_nonzero {
                return ZeroPatternOutcome::FailAt(k);
            }
            seen_nonzero = true;
        }
    }
    ZeroPatternOutcome::Pass
}

/// Result of the geometric-progression extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometricCheck {
    /// First three terms are not in geometric progression; the law does
    /// not apply.
    NotGeometricStart,
    /// First three terms have common ratio `alpha`; a classical multiplier
    /// sequence must then satisfy `gamma_k = gamma_0 alpha^k` everywhere,
    /// so any violation certifies "not a classical multiplier sequence".
    Extrapolation {
        alpha: Rational,
        /// Prefix indices where the prediction fails.
        violations: Vec<usize>,
        /// Whether the tail rule agrees with the prediction.
        tail_consistent: bool,
    },
}

impl GeometricCheck {
    /// No certified violation of the geometric law.
    pub fn is_clean(&self) -> bool {
        match self {
            GeometricCheck::NotGeometricStart => true,
            GeometricCheck::Extrapolation {
                violations,
                tail_consistent,
                ..
            } => violations.is_empty() && *tail_consistent,
        }
    }
}

pub fn geometric_extrapolation(seq: &GammaSequence) -> Result<GeometricCheck, SequenceError> {
    let g0 = seq.gamma_at(0);
    let g1 = seq.gamma_at(1);
    if g0.is_zero() || g1.is_zero() {
        return Err(SequenceError::ZeroLeadingTerms);
    }
    let alpha = g1.clone() / g0.clone();
    let g2 = seq.gamma_at(2);
    if g2 / g1 != alpha {
        return Ok(GeometricCheck::NotGeometricStart);
    }
    let mut violations = Vec::new();
    let mut predicted = g0.clone() * alpha.clone() * alpha.clone();
    for k in 3..seq.prefix().len() {
        predicted = predicted.clone() * alpha.clone();
        if seq.gamma_at(k) != predicted {
            violations.push(k);
        }
    }
    let tail_consistent = match seq.tail() {
        Tail::Geometric { ratio } => *ratio == alpha,
        Tail::Constant => alpha.is_one(),
        // the prediction gamma_0 alpha^k is never zero
        Tail::Zeros => false,
    };
    Ok(GeometricCheck::Extrapolation {
        alpha,
        violations,
        tail_consistent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonotoneOutcome {
    Pass,
    FailAt(usize),
}

fn require_nonnegative(seq: &GammaSequence, bound: usize) -> Result<(), SequenceError> {
    for k in 0..=bound {
        if seq.gamma_at(k).is_negative() {
            return Err(SequenceError::NegativeTerms);
        }
    }
    Ok(())
}

/// Verifies `gamma_(k+1) <= gamma_k` for k >= 1 (nonincreasing after the
/// first term), reporting the index of the first offending term.
pub fn monotone_after_first_check(
    seq: &GammaSequence,
    bound: usize,
) -> Result<MonotoneOutcome, SequenceError> {
    require_nonnegative(seq, bound)?;
    for k in 2..=bound {
        if seq.gamma_at(k) > seq.gamma_at(k - 1) {
            return Ok(MonotoneOutcome::FailAt(k));
        }
    }
    Ok(MonotoneOutcome::Pass)
}

/// Companion check: `gamma_(k+1) >= gamma_k` from the start.
pub fn nondecreasing_check(
    seq: &GammaSequence,
    bound: usize,
) -> Result<MonotoneOutcome, SequenceError> {
    require_nonnegative(seq, bound)?;
    for k in 1..=bound {
        if seq.gamma_at(k) < seq.gamma_at(k - 1) {
            return Ok(MonotoneOutcome::FailAt(k));
        }
    }
    Ok(MonotoneOutcome::Pass)
}

/// Search outcome: either a fully certified counterexample or an explicit
/// budget-exhausted record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FalsifyOutcome {
    CounterexampleFound {
        f: RationalPoly,
        image: RationalPoly,
        cert: RealRootCertificate,
    },
    NoneFoundWithinBudget,
}

/// Full record of one falsification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsificationReport {
    pub sequence: GammaSequence,
    pub basis: BasisDescriptor,
    pub degree_budget: usize,
    pub trials: usize,
    pub outcome: FalsifyOutcome,
}

impl FalsificationReport {
    pub fn found(&self) -> bool {
        matches!(self.outcome, FalsifyOutcome::CounterexampleFound { .. })
    }
}

/// Root grid for randomized trial polynomials; small values keep exact
/// coefficient growth bounded.
pub fn trial_root_grid() -> Vec<Rational> {
    [
        (-3, 1),
        (-2, 1),
        (-1, 1),
        (-1, 2),
        (0, 1),
        (1, 2),
        (1, 1),
        (2, 1),
        (3, 1),
    ]
    .iter()
    .map(|&(n, d)| ratio(n, d))
    .collect()
}

/// How many times an image is fed back as a further candidate. Repeated
/// application reaches the termwise powers of the sequence, so a
/// counterexample against a power sequence surfaces for the base sequence
/// at the same budget.
const IMAGE_CHAIN_DEPTH: usize = 4;

/// Detects a generalized Hermite set with positive parameter by its first
/// three members (q_0 = 1, q_1 = x, q_2 = x^2 - alpha).
fn hermite_like_alpha(basis: &RationalSimpleSet) -> Option<Rational> {
    if basis.poly_at(0) != RationalPoly::one() || basis.poly_at(1) != RationalPoly::x() {
        return None;
    }
    let q2 = basis.poly_at(2);
    if !q2.coeff(1).is_zero() || !q2.coeff(2).is_one() {
        return None;
    }
    let alpha = -q2.coeff(0);
    alpha.is_positive().then_some(alpha)
}

/// Structured candidates, in fixed enumeration order: monomial and
/// binomial powers, sequence- and basis-aware witness quadratics, an
/// alpha-scaled even quartic for Hermite-like sets with positive
/// parameter, then `q_n + b q_(n-2)` with `b` on a grid anchored inside
/// the real-rootedness region when its upper edge can be bracketed.
fn structured_candidates(
    seq: &GammaSequence,
    basis: &RationalSimpleSet,
    budget: usize,
) -> Vec<RationalPoly> {
    let mut out = Vec::new();
    let x = RationalPoly::x();
    let one_plus_x = Poly::new(vec![Rational::one(), Rational::one()]);
    let x_minus_one = Poly::new(vec![-Rational::one(), Rational::one()]);
    for n in 1..=budget {
        out.push(x.pow(n as u32));
    }
    for n in 1..=budget {
        out.push(one_plus_x.pow(n as u32));
    }
    for n in 1..=budget {
        out.push(x_minus_one.pow(n as u32));
    }
    if budget >= 2 {
        // double-root quadratic witnesses
        out.push(Poly::new(vec![ratio(1, 1), ratio(4, 1), ratio(4, 1)]));
        let a = seq.gamma_at(1) + Rational::one();
        let b = seq.gamma_at(1) + ratio(2, 1);
        if !a.is_zero() {
            let c = b.clone() * b.clone() / (ratio(4, 1) * a.clone());
            out.push(Poly::new(vec![c, b, a]));
        }
    }
    if budget >= 4 {
        if let Some(alpha) = hermite_like_alpha(basis) {
            // even quartic engineered against peaked sequences: real-rooted
            // for every alpha > 0, its expansion keeps the low-degree
            // coefficients alive after truncation.
            let w = ratio(59, 10) * alpha.clone();
            let p = ratio(6, 1) * alpha.clone() * alpha.clone();
            out.push(Poly::new(vec![
                p,
                Rational::zero(),
                -w,
                Rational::zero(),
                Rational::one(),
            ]));
        }
    }
    for n in 2..=budget {
        let qn = basis.poly_at(n);
        let qn2 = basis.poly_at(n - 2);
        let grid: Vec<Rational> = match en_max_bound(basis, n, &ratio(1, 64)) {
            Ok(bound) if bound.lo.is_positive() => {
                let lo = bound.lo;
                vec![
                    lo.clone(),
                    lo.clone() / ratio(2, 1),
                    lo.clone() / ratio(4, 1),
                    -(lo.clone() / ratio(4, 1)),
                    -(lo.clone() / ratio(2, 1)),
                    -lo,
                ]
            }
            _ => [
                (1, 8),
                (1, 2),
                (1, 1),
                (2, 1),
                (8, 1),
                (-1, 8),
                (-1, 2),
                (-1, 1),
                (-2, 1),
                (-8, 1),
            ]
            .iter()
            .map(|&(p, q)| ratio(p, q))
            .collect(),
        };
        for b in grid {
            out.push(&qn + &qn2.scale(&b));
        }
    }
    out
}

/// Tests one certified-real-rooted candidate, feeding real-rooted images
/// back through the sequence up to a fixed depth.
fn test_candidate(
    seq: &GammaSequence,
    basis: &RationalSimpleSet,
    candidate: RationalPoly,
) -> Option<(RationalPoly, RationalPoly, RealRootCertificate)> {
    let cert = is_real_rooted(&candidate);
    if cert.verdict != Verdict::AllRealRooted {
        return None;
    }
    let mut current = candidate;
    for _ in 0..IMAGE_CHAIN_DEPTH {
        let image = apply_sequence(seq, &current, basis);
        let icert = is_real_rooted(&image);
        match icert.verdict {
            Verdict::HasNonRealRoot => return Some((current, image, icert)),
            Verdict::DegenerateZeroPoly => return None,
            Verdict::AllRealRooted => {
                if image.degree() <= Degree::Of(1) || image == current {
                    return None;
                }
                current = image;
            }
        }
    }
    None
}

/// Searches for a certified counterexample to "`seq` is a Q-multiplier
/// sequence": a real-rooted `f` whose image is certified non-real-rooted.
///
/// Structured candidates run first (every counterexample worth reproducing
/// is structured), then `trials` random root-grid products, deterministic
/// in `seed`. The first counterexample in enumeration order is reported.
pub fn falsify(
    seq: &GammaSequence,
    basis: &RationalSimpleSet,
    degree_budget: usize,
    trials: usize,
    seed: u64,
) -> FalsificationReport {
    assert!(degree_budget >= 1, "degree budget must be at least 1");
    let report = |outcome: FalsifyOutcome| FalsificationReport {
        sequence: seq.clone(),
        basis: basis.descriptor_up_to(degree_budget),
        degree_budget,
        trials,
        outcome,
    };

    for candidate in structured_candidates(seq, basis, degree_budget) {
        if let Some((f, image, cert)) = test_candidate(seq, basis, candidate) {
            return report(FalsifyOutcome::CounterexampleFound { f, image, cert });
        }
    }

    let grid = trial_root_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let degree = rng.gen_range(1..=degree_budget);
        let roots: Vec<Rational> = (0..degree)
            .map(|_| grid[rng.gen_range(0..grid.len())].clone())
            .collect();
        let candidate = RationalPoly::from_roots(&roots);
        if let Some((f, image, cert)) = test_candidate(seq, basis, candidate) {
            return report(FalsifyOutcome::CounterexampleFound { f, image, cert });
        }
    }
    report(FalsifyOutcome::NoneFoundWithinBudget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn pi(coeffs: &[i64]) -> RationalPoly {
        Poly::new(coeffs.iter().map(|&n| ratio(n, 1)).collect())
    }

    fn peaked() -> GammaSequence {
        GammaSequence::new(
            vec![ratio(1, 8), ratio(1, 1), ratio(2, 1)],
            Tail::Zeros,
        )
        .unwrap()
    }

    #[test]
    fn gamma_at_prefix_and_tails() {
        assert_eq!(peaked().gamma_at(7), ratio(0, 1));
        let g = GammaSequence::new(
            vec![ratio(3, 1)],
            Tail::Geometric { ratio: ratio(2, 1) },
        )
        .unwrap();
        assert_eq!(g.gamma_at(5), ratio(96, 1));
        let c = GammaSequence::constant(ratio(7, 2));
        assert_eq!(c.gamma_at(0), ratio(7, 2));
        assert_eq!(c.gamma_at(23), ratio(7, 2));
    }

    #[test]
    fn construction_validation() {
        assert_eq!(
            GammaSequence::new(vec![], Tail::Zeros).unwrap_err(),
            SequenceError::EmptyPrefix
        );
        assert_eq!(
            GammaSequence::new(
                vec![ratio(1, 1), ratio(0, 1)],
                Tail::Geometric { ratio: ratio(2, 1) }
            )
            .unwrap_err(),
            SequenceError::GeometricZeroAnchor
        );
    }

    #[test]
    fn power_sequence_cases() {
        let squared = peaked().power_sequence(2);
        assert_eq!(squared.prefix(), &[ratio(1, 64), ratio(1, 1), ratio(4, 1)]);
        assert_eq!(squared.tail(), &Tail::Zeros);
        assert_eq!(peaked().power_sequence(1), peaked());
        let g = GammaSequence::geometric(ratio(1, 1), ratio(2, 1)).unwrap();
        assert_eq!(
            g.power_sequence(3).tail(),
            &Tail::Geometric { ratio: ratio(8, 1) }
        );
    }

    #[test]
    fn apply_sequence_cases() {
        let std = RationalSimpleSet::standard();
        // peaked sequence on (1+x)^3: 1/8 + 3x + 6x^2
        let f = pi(&[1, 1]).pow(3);
        let image = apply_sequence(&peaked(), &f, &std);
        assert_eq!(
            image,
            Poly::new(vec![ratio(1, 8), ratio(3, 1), ratio(6, 1)])
        );
        // constant sequence scales
        let c = GammaSequence::constant(ratio(-5, 3));
        let g = pi(&[2, 0, 7, 1]);
        assert_eq!(apply_sequence(&c, &g, &std), g.scale(&ratio(-5, 3)));
        // {1,2,3} on x^2 through Q3: 3 q_2 - q_0 = 3x^2 + 2
        let image = apply_sequence(
            &GammaSequence::from_ints(&[1, 2, 3]),
            &pi(&[0, 0, 1]),
            &RationalSimpleSet::q3(),
        );
        assert_eq!(image, pi(&[2, 0, 3]));
    }

    #[test]
    fn polya_schur_outcomes() {
        assert!(polya_schur_check(&peaked(), 12).passed());
        // {1,1,-1} padded with zeros: images 1 + nx - C(n,2) x^2 stay real
        let g = GammaSequence::new(
            vec![ratio(1, 1), ratio(1, 1), ratio(-1, 1)],
            Tail::Zeros,
        )
        .unwrap();
        assert!(polya_schur_check(&g, 2).passed());
        // Turan violation at k=1 forces a failure; it shows at n=2
        let bad = GammaSequence::from_ints(&[1, 1, 2]);
        match polya_schur_check(&bad, 8) {
            PolyaSchurOutcome::FailAt { n, image, cert } => {
                assert_eq!(n, 2);
                assert_eq!(image, pi(&[1, 2, 2]));
                assert_eq!(cert.verdict, Verdict::HasNonRealRoot);
            }
            PolyaSchurOutcome::Pass => panic!("expected failure"),
        }
    }

    #[test]
    fn polya_schur_geometric_any_nonzero_ratio() {
        // gamma_0 r^k maps (1+x)^n to (1 + r x)^n, real-rooted for any r != 0
        for (n, d) in [(2i64, 1i64), (1, 2), (-3, 1), (-1, 5)] {
            let g = GammaSequence::geometric(ratio(1, 1), ratio(n, d)).unwrap();
            assert!(polya_schur_check(&g, 20).passed(), "ratio {n}/{d}");
        }
    }

    #[test]
    fn turan_cases() {
        assert_eq!(turan_check(&peaked(), 10), TuranOutcome::Pass);
        assert_eq!(
            turan_check(&GammaSequence::from_ints(&[1, 1, 2]), 5),
            TuranOutcome::FailAt(1)
        );
        let g = GammaSequence::geometric(ratio(3, 1), ratio(-5, 2)).unwrap();
        assert_eq!(turan_check(&g, 12), TuranOutcome::Pass);
    }

    #[test]
    fn sign_pattern_cases() {
        let alt = GammaSequence::new(
            vec![ratio(1, 1), ratio(-2, 1), ratio(3, 1), ratio(-4, 1)],
            Tail::Zeros,
        )
        .unwrap();
        assert_eq!(sign_pattern_check(&alt, 10), SignPattern::Alternating);
        let with_gap = GammaSequence::from_ints(&[1, 0, 2]);
        assert_eq!(sign_pattern_check(&with_gap, 10), SignPattern::AllSameSign);
        let neither = GammaSequence::new(
            vec![ratio(1, 1), ratio(1, 1), ratio(-1, 1)],
            Tail::Zeros,
        )
        .unwrap();
        assert_eq!(sign_pattern_check(&neither, 10), SignPattern::Neither(2));
    }

    #[test]
    fn zero_pattern_cases() {
        assert_eq!(zero_pattern_check(&peaked(), 20), ZeroPatternOutcome::Pass);
        assert_eq!(
            zero_pattern_check(&GammaSequence::from_ints(&[1, 0, 1]), 5),
            ZeroPatternOutcome::FailAt(2)
        );
        let leading = GammaSequence::from_ints(&[0, 0, 5, 6]);
        assert_eq!(zero_pattern_check(&leading, 10), ZeroPatternOutcome::Pass);
    }

    #[test]
    fn geometric_extrapolation_cases() {
        let g = GammaSequence::new(
            vec![ratio(3, 1), ratio(6, 1), ratio(12, 1)],
            Tail::Geometric { ratio: ratio(2, 1) },
        )
        .unwrap();
        match geometric_extrapolation(&g).unwrap() {
            GeometricCheck::Extrapolation {
                alpha,
                violations,
                tail_consistent,
            } => {
                assert_eq!(alpha, ratio(2, 1));
                assert!(violations.is_empty());
                assert!(tail_consistent);
            }
            other => panic!("unexpected {other:?}"),
        }

        let broken = GammaSequence::from_ints(&[1, 1, 1, 5]);
        match geometric_extrapolation(&broken).unwrap() {
            GeometricCheck::Extrapolation {
                alpha, violations, ..
            } => {
                assert_eq!(alpha, ratio(1, 1));
                assert_eq!(violations, vec![3]);
            }
            other => panic!("unexpected {other:?}"),
        }

        // a geometric-law violation comes with a classical-test failure
        match polya_schur_check(&broken, 8) {
            PolyaSchurOutcome::FailAt { n, .. } => assert!(n <= 8),
            PolyaSchurOutcome::Pass => panic!("violating sequence passed the classical test"),
        }

        assert_eq!(
            geometric_extrapolation(&GammaSequence::from_ints(&[1, 2, 5])).unwrap(),
            GeometricCheck::NotGeometricStart
        );
        assert_eq!(
            geometric_extrapolation(&GammaSequence::from_ints(&[0, 1, 2])).unwrap_err(),
            SequenceError::ZeroLeadingTerms
        );
    }

    #[test]
    fn monotone_cases() {
        let g = GammaSequence::from_ints(&[5, 3, 2, 2]);
        assert_eq!(
            monotone_after_first_check(&g, 10).unwrap(),
            MonotoneOutcome::Pass
        );
        assert_eq!(
            monotone_after_first_check(&peaked(), 10).unwrap(),
            MonotoneOutcome::FailAt(2)
        );
        let c = GammaSequence::constant(ratio(4, 1));
        assert_eq!(
            monotone_after_first_check(&c, 10).unwrap(),
            MonotoneOutcome::Pass
        );
        assert_eq!(nondecreasing_check(&c, 10).unwrap(), MonotoneOutcome::Pass);
        assert_eq!(
            nondecreasing_check(&peaked(), 10).unwrap(),
            MonotoneOutcome::FailAt(3)
        );
        let neg = GammaSequence::from_ints(&[1, -1]);
        assert_eq!(
            monotone_after_first_check(&neg, 3).unwrap_err(),
            SequenceError::NegativeTerms
        );
    }

    #[test]
    fn falsify_q3_finds_x_squared() {
        let report = falsify(
            &GammaSequence::from_ints(&[1, 2, 3]),
            &RationalSimpleSet::q3(),
            2,
            0,
            0,
        );
        match &report.outcome {
            FalsifyOutcome::CounterexampleFound { f, image, cert } => {
                assert_eq!(f, &pi(&[0, 0, 1]));
                assert_eq!(image, &pi(&[2, 0, 3]));
                assert_eq!(cert.verdict, Verdict::HasNonRealRoot);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn falsify_constant_sequence_finds_nothing() {
        for basis in [
            RationalSimpleSet::standard(),
            RationalSimpleSet::q1(),
            RationalSimpleSet::hermite(ratio(1, 1)).unwrap(),
        ] {
            let report = falsify(&GammaSequence::constant(ratio(5, 2)), &basis, 4, 50, 7);
            assert!(!report.found(), "basis {basis}");
        }
    }

    #[test]
    fn falsify_peaked_against_negative_hermite() {
        let basis = RationalSimpleSet::hermite(ratio(-1, 1)).unwrap();
        let report = falsify(&peaked(), &basis, 4, 0, 0);
        match &report.outcome {
            FalsifyOutcome::CounterexampleFound { f, image, .. } => {
                assert_eq!(f, &pi(&[0, 0, 1]));
                // gamma_2 x^2 + alpha (gamma_0 - gamma_2) = 2x^2 + 15/8
                assert_eq!(
                    image,
                    &Poly::new(vec![ratio(15, 8), ratio(0, 1), ratio(2, 1)])
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn falsify_is_deterministic() {
        let seq = GammaSequence::from_ints(&[1, 3, 4, 1]);
        let basis = RationalSimpleSet::q2();
        let a = falsify(&seq, &basis, 5, 40, 123);
        let b = falsify(&seq, &basis, 5, 40, 123);
        assert_eq!(a, b);
    }

    #[test]
    fn sequence_json_round_trip() {
        let g = peaked();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"prefix":["1/8","1","2"],"tail":{"kind":"zeros"}}"#);
        let back: GammaSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);

        let geo: GammaSequence = serde_json::from_str(
            r#"{"prefix":["3"],"tail":{"kind":"geometric","ratio":"1/2"}}"#,
        )
        .unwrap();
        assert_eq!(geo.gamma_at(2), parse_rational("3/4").unwrap());

        // invalid wire data is rejected at the boundary
        let bad: Result<GammaSequence, _> =
            serde_json::from_str(r#"{"prefix":[],"tail":{"kind":"zeros"}}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let report = falsify(
            &GammaSequence::from_ints(&[1, 2, 3]),
            &RationalSimpleSet::q3(),
            2,
            0,
            0,
        );
        let json = serde_json::to_string(&report).unwrap();
        let back: FalsificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["outcome"]["kind"], "counterexample_found");
        assert_eq!(v["basis"]["kind"], "q3");
        assert_eq!(v["outcome"]["f"]["coeffs"], serde_json::json!(["0", "0", "1"]));
    }
}
