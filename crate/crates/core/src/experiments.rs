//! Numeric reproduction machinery: the extremal bound of the
//! `q_n + b q_(n-2)` real-rootedness region, and convergence traces for
//! the alpha-deformed bases.
//!
//! "Locally uniform convergence" is operationalized as max-gap decay on a
//! finite sample grid with an explicit factor-per-decade test: the
//! underlying bound is linear in 1/alpha, so requiring a factor >= 5 per
//! decade of alpha is sound with slack. A finite artifact cannot quantify
//! over compacta; the grid is caller-supplied and defaults to 21 points on
//! [-2, 2].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bases::{BasisDescriptor, RationalSimpleSet};
use crate::basischange::{alpha_deformed_basis, expand_in_basis};
use crate::mstest::GammaSequence;
use crate::poly::{Degree, RationalPoly};
use crate::realroots::{is_real_rooted, RealRootCertificate, Verdict};
use crate::scalar::{ratio, rational_string, rational_vec, Rational};

use num_traits::{One, Signed, Zero};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExperimentsError {
    /// The hypothesis "q_n real-rooted with simple zeros" failed.
    #[error("q_{n} is not real-rooted with simple zeros")]
    NotSimpleRealRooted { n: usize },
    /// Doubling exceeded the cap without leaving the region; the basis
    /// violates the boundedness argument.
    #[error("no upper bound found below 2^{cap_log2}")]
    NoUpperBoundFound { cap_log2: u32 },
    #[error("convergence checks need at least two schedule entries")]
    ScheduleTooShort,
}

/// Doubling cap for the upper-edge search.
pub const EN_DOUBLING_CAP_LOG2: u32 = 40;

/// Default bracket tolerance.
pub fn default_en_tolerance() -> Rational {
    ratio(1, 1024)
}

/// Certified bracket around the upper edge of
/// `E_n = { b | q_n + b q_(n-2) is real-rooted }`:
/// `lo` is certified inside, `hi` certified outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnBound {
    pub n: usize,
    pub basis: BasisDescriptor,
    #[serde(with = "rational_string")]
    pub lo: Rational,
    #[serde(with = "rational_string")]
    pub hi: Rational,
    #[serde(with = "rational_string")]
    pub width: Rational,
}

fn en_member(basis: &RationalSimpleSet, n: usize, b: &Rational) -> RealRootCertificate {
    let f = &basis.poly_at(n) + &basis.poly_at(n - 2).scale(b);
    is_real_rooted(&f)
}

/// Brackets `max E_n` to width <= `tol` by exact bisection, starting from
/// `lo = 0` (inside, since q_n is real-rooted) and doubling `hi` until it
/// leaves the region. Every membership query is a Sturm certificate, and
/// both endpoints are re-verified independently before the bound is
/// returned.
pub fn en_max_bound(
    basis: &RationalSimpleSet,
    n: usize,
    tol: &Rational,
) -> Result<EnBound, ExperimentsError> {
    assert!(n >= 2, "E_n needs n >= 2");
    assert!(tol.is_positive(), "tolerance must be positive");
    let qn_cert = is_real_rooted(&basis.poly_at(n));
    let simple = qn_cert.verdict == Verdict::AllRealRooted
        && qn_cert.squarefree_degree == n
        && qn_cert.distinct_real_roots == n;
    if !simple {
        return Err(ExperimentsError::NotSimpleRealRooted { n });
    }

    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    let mut doublings = 0u32;
    while en_member(basis, n, &hi).is_real_rooted() {
        lo = hi.clone();
        hi = hi * ratio(2, 1);
        doublings += 1;
        if doublings > EN_DOUBLING_CAP_LOG2 {
            return Err(ExperimentsError::NoUpperBoundFound {
                cap_log2: EN_DOUBLING_CAP_LOG2,
            });
        }
    }
    let two = ratio(2, 1);
    while hi.clone() - lo.clone() > *tol {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if en_member(basis, n, &mid).is_real_rooted() {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // report-time re-verification of both endpoints
    assert_eq!(en_member(basis, n, &lo).verdict, Verdict::AllRealRooted);
    assert_eq!(en_member(basis, n, &hi).verdict, Verdict::HasNonRealRoot);
    let width = hi.clone() - lo.clone();
    Ok(EnBound {
        n,
        basis: basis.descriptor_up_to(n),
        lo,
        hi,
        width,
    })
}

/// One schedule entry of a convergence trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub alpha: Rational,
    /// Coefficients of f in the alpha-deformed basis.
    pub coeffs: Vec<Rational>,
    /// The deformed basis polynomials p_0..p_n, standard coefficients.
    pub deformed: Vec<RationalPoly>,
}

/// Expansion data of one polynomial across a whole alpha schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub f: RationalPoly,
    pub source: String,
    pub target: String,
    /// Target-basis polynomials b_0..b_n.
    pub target_polys: Vec<RationalPoly>,
    /// Coefficients m_k of f in the target basis.
    pub target_coeffs: Vec<Rational>,
    pub rows: Vec<TraceRow>,
}

/// Wire form: per-alpha rows of rational strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceWire {
    pub source: String,
    pub target: String,
    #[serde(with = "rational_vec")]
    pub alphas: Vec<Rational>,
    pub rows: Vec<Vec<String>>,
    pub target_coeffs: Vec<String>,
}

impl ConvergenceTrace {
    pub fn to_wire(&self) -> TraceWire {
        TraceWire {
            source: self.source.clone(),
            target: self.target.clone(),
            alphas: self.rows.iter().map(|r| r.alpha.clone()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| r.coeffs.iter().map(|c| c.to_string()).collect())
                .collect(),
            target_coeffs: self.target_coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Expands `f` in the alpha-deformed basis for every schedule entry and
/// records the coefficients next to the target expansion `m_k`.
///
/// The schedule must be strictly increasing with every entry above one.
/// The leading-coefficient law `c_(alpha,n) = m_n` holds exactly and is
/// asserted on every row.
pub fn deformed_expansion_trace(
    f: &RationalPoly,
    source: &RationalSimpleSet,
    target: &RationalSimpleSet,
    schedule: &[Rational],
) -> ConvergenceTrace {
    assert!(!f.is_zero(), "trace needs a nonzero polynomial");
    assert!(!schedule.is_empty(), "schedule must be nonempty");
    for w in schedule.windows(2) {
        assert!(w[0] < w[1], "schedule must be strictly increasing");
    }
    assert!(
        schedule.iter().all(|a| *a > Rational::one()),
        "schedule entries must exceed one"
    );
    let n = match f.degree() {
        Degree::Of(n) => n,
        Degree::MinusInfinity => unreachable!(),
    };
    let target_coeffs = expand_in_basis(f, target);
    let rows = schedule
        .iter()
        .map(|alpha| {
            let deformed_set = alpha_deformed_basis(source, target, alpha, n)
                .expect("schedule entries are positive");
            let coeffs = expand_in_basis(f, &deformed_set);
            assert_eq!(
                coeffs[n], target_coeffs[n],
                "leading deformed coefficient must equal m_n exactly"
            );
            TraceRow {
                alpha: alpha.clone(),
                coeffs,
                deformed: (0..=n).map(|k| deformed_set.poly_at(k)).collect(),
            }
        })
        .collect();
    ConvergenceTrace {
        f: f.clone(),
        source: source.name().to_string(),
        target: target.name().to_string(),
        target_polys: (0..=n).map(|k| target.poly_at(k)).collect(),
        target_coeffs,
        rows,
    }
}

/// Default sample grid: 21 equispaced rational points on [-2, 2].
pub fn default_grid() -> Vec<Rational> {
    (0..21).map(|k| ratio(-2, 1) + ratio(k, 5)).collect()
}

/// Max |p(x)| over the grid.
fn grid_sup(p: &RationalPoly, grid: &[Rational]) -> Rational {
    let mut best = Rational::zero();
    for x in grid {
        let v = p.eval(x).abs();
        if v > best {
            best = v;
        }
    }
    best
}

/// Decay record between two consecutive schedule entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayStep {
    pub from_alpha: Rational,
    pub to_alpha: Rational,
    pub old_gap: Rational,
    pub new_gap: Rational,
    pub ok: bool,
}

fn decays(old_gap: Rational, new_gap: Rational, from: &Rational, to: &Rational) -> DecayStep {
    let ok = new_gap.clone() * ratio(5, 1) <= old_gap;
    DecayStep {
        from_alpha: from.clone(),
        to_alpha: to.clone(),
        old_gap,
        new_gap,
        ok,
    }
}

/// Verification report for the three convergence claims.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Per basis degree k: decay of max-grid gap |p_k - b_k|.
    pub basis_gaps: Vec<Vec<DecayStep>>,
    /// Per k < n: decay of |c_(alpha,k) - m_k|; k = n is exact equality.
    pub coeff_gaps: Vec<Vec<DecayStep>>,
    /// Decay of the max-grid gap between the weighted deformed sum and the
    /// weighted target sum.
    pub image_gaps: Vec<DecayStep>,
    pub pass: bool,
}

/// Checks, for each consecutive schedule pair, that every gap shrinks by a
/// factor of at least five: (a) deformed basis members against target
/// members, (b) deformed coefficients against target coefficients, with
/// exact equality at the leading index, and (c) the sequence-weighted sums.
pub fn claim_convergence_check(
    trace: &ConvergenceTrace,
    grid: &[Rational],
    seq: &GammaSequence,
) -> Result<ConvergenceReport, ExperimentsError> {
    if trace.rows.len() < 2 {
        return Err(ExperimentsError::ScheduleTooShort);
    }
    assert!(!grid.is_empty(), "sample grid must be nonempty");
    let n = trace.target_polys.len() - 1;
    let mut pass = true;

    let weighted_target = {
        let mut acc = RationalPoly::zero();
        for (k, b) in trace.target_polys.iter().enumerate() {
            let w = trace.target_coeffs[k].clone() * seq.gamma_at(k);
            acc = &acc + &b.scale(&w);
        }
        acc
    };

    let mut basis_gaps = vec![Vec::new(); n + 1];
    let mut coeff_gaps = vec![Vec::new(); n + 1];
    let mut image_gaps = Vec::new();

    for pair in trace.rows.windows(2) {
        let (old, new) = (&pair[0], &pair[1]);
        for k in 0..=n {
            let old_gap = grid_sup(&(&old.deformed[k] - &trace.target_polys[k]), grid);
            let new_gap = grid_sup(&(&new.deformed[k] - &trace.target_polys[k]), grid);
            let step = decays(old_gap, new_gap, &old.alpha, &new.alpha);
            pass &= step.ok;
            basis_gaps[k].push(step);
        }
        for k in 0..=n {
            if k == n {
                // leading law is exact at every alpha
                let exact = old.coeffs[k] == trace.target_coeffs[k]
                    && new.coeffs[k] == trace.target_coeffs[k];
                pass &= exact;
                coeff_gaps[k].push(DecayStep {
                    from_alpha: old.alpha.clone(),
                    to_alpha: new.alpha.clone(),
                    old_gap: Rational::zero(),
                    new_gap: Rational::zero(),
                    ok: exact,
                });
                continue;
            }
            let old_gap = (old.coeffs[k].clone() - trace.target_coeffs[k].clone()).abs();
            let new_gap = (new.coeffs[k].clone() - trace.target_coeffs[k].clone()).abs();
            let step = decays(old_gap, new_gap, &old.alpha, &new.alpha);
            pass &= step.ok;
            coeff_gaps[k].push(step);
        }
        let weighted_at = |row: &TraceRow| {
            let mut acc = RationalPoly::zero();
            for (k, p) in row.deformed.iter().enumerate() {
                let w = row.coeffs[k].clone() * seq.gamma_at(k);
                acc = &acc + &p.scale(&w);
            }
            acc
        };
        let old_gap = grid_sup(&(&weighted_at(old) - &weighted_target), grid);
        let new_gap = grid_sup(&(&weighted_at(new) - &weighted_target), grid);
        let step = decays(old_gap, new_gap, &old.alpha, &new.alpha);
        pass &= step.ok;
        image_gaps.push(step);
    }

    Ok(ConvergenceReport {
        basis_gaps,
        coeff_gaps,
        image_gaps,
        pass,
    })
}
