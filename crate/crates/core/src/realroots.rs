//! Certified real-rootedness decisions via Sturm chains.
//!
//! Everything is decided by exact sign-variation counts: no floating point
//! touches any verdict. Real-rootedness of `f` is decided on its squarefree
//! part `f / gcd(f, f')`, the standard exact bridge between "only real
//! zeros counted with multiplicity" and Sturm's distinct-root count.
//!
//! Sign variations use the drop-zeros convention, under which the count at
//! a point `x` equals its right limit; interval counts are therefore over
//! half-open intervals `(lo, hi]`. Signs at the infinite endpoints come
//! from leading-coefficient parity, never from evaluating at large
//! arguments.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Degree, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootsError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoints must satisfy lo < hi")]
    BadInterval,
    #[error("polynomial is not certified real-rooted")]
    NotRealRooted,
}

/// Outcome of a real-rootedness decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AllRealRooted,
    HasNonRealRoot,
    DegenerateZeroPoly,
}

/// Root-count evidence backing a [`Verdict`].
///
/// `verdict == AllRealRooted` iff `distinct_real_roots == squarefree_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRootCertificate {
    pub verdict: Verdict,
    pub distinct_real_roots: usize,
    pub squarefree_degree: usize,
    pub sturm_chain_length: usize,
}

impl RealRootCertificate {
    pub fn is_real_rooted(&self) -> bool {
        self.verdict == Verdict::AllRealRooted
    }
}

/// One isolating cell for a distinct real root.
///
/// Half-open `(lo, hi]` when `lo < hi`; `lo == hi` marks an exact rational
/// root. Half-openness is what makes the cells of one isolation run
/// pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: PartialEq> IsolatingInterval<T> {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Interval endpoint on the extended line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: PartialOrd> Endpoint<T> {
    fn strictly_below(&self, other: &Self) -> bool {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) | (PosInf, _) | (_, NegInf) => false,
            (NegInf, _) | (_, PosInf) => true,
            (Finite(a), Finite(b)) => a < b,
        }
    }
}

fn sign_of<T: Scalar>(x: &T) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p` at an endpoint; infinite endpoints use leading-coefficient
/// parity.
fn sign_at<T: Scalar>(p: &Poly<T>, at: &Endpoint<T>) -> i8 {
    match at {
        Endpoint::Finite(x) => sign_of(&p.eval(x)),
        Endpoint::PosInf => p.leading_coeff().map_or(0, sign_of),
        Endpoint::NegInf => match (p.leading_coeff(), p.degree()) {
            (Some(lc), Degree::Of(d)) => {
                let s = sign_of(lc);
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        },
    }
}

/// Sign variations of the chain at an endpoint, zeros dropped.
fn variations_at<T: Scalar>(chain: &[Poly<T>], at: &Endpoint<T>) -> usize {
    let mut count = 0;
    let mut prev: i8 = 0;
    for p in chain {
        let s = sign_at(p, at);
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Canonical Sturm sequence of `f`: starts `f, f'`, each next entry is the
/// negated Euclidean remainder, terminating at a nonzero constant or at
/// `gcd(f, f')` when `f` is not squarefree. Remainders are scaled monic
/// (a positive scaling, which preserves all sign-variation counts).
pub fn sturm_chain<T: Scalar>(f: &Poly<T>) -> Result<Vec<Poly<T>>, RootsError> {
    if f.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    let mut chain = vec![f.clone()];
    let d = f.derivative();
    if d.is_zero() {
        return Ok(chain);
    }
    chain.push(d);
    loop {
        let prev = &chain[chain.len() - 2];
        let last = &chain[chain.len() - 1];
        let (_, r) = prev.div_rem(last).expect("chain entries are nonzero");
        if r.is_zero() {
            return Ok(chain);
        }
        let neg = -&r;
        // abs-leading normalization: positive scale, sign pattern intact
        let lc = neg.leading_coeff().expect("nonzero remainder").clone();
        let scaled = neg.scale(&(T::one() / lc.abs()));
        chain.push(scaled);
    }
}

/// Number of distinct real roots of `f` in the half-open interval
/// `(lo, hi]`, by Sturm sign-variation difference on the squarefree part.
pub fn count_real_roots<T: Scalar>(
    f: &Poly<T>,
    lo: &Endpoint<T>,
    hi: &Endpoint<T>,
) -> Result<usize, RootsError> {
    if f.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    if !lo.strictly_below(hi) {
        return Err(RootsError::BadInterval);
    }
    let s = f.squarefree_part();
    if s.degree() == Degree::Of(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&s)?;
    Ok(count_in(&chain, lo, hi))
}

fn count_in<T: Scalar>(chain: &[Poly<T>], lo: &Endpoint<T>, hi: &Endpoint<T>) -> usize {
    variations_at(chain, lo).saturating_sub(variations_at(chain, hi))
}

/// Decides whether every complex zero of `f` is real, with evidence.
///
/// Degree <= 1 (including nonzero constants, vacuously) is real-rooted;
/// the zero polynomial gets its own verdict because sequence application
/// can annihilate a polynomial outright.
pub fn is_real_rooted<T: Scalar>(f: &Poly<T>) -> RealRootCertificate {
    if f.is_zero() {
        return RealRootCertificate {
            verdict: Verdict::DegenerateZeroPoly,
            distinct_real_roots: 0,
            squarefree_degree: 0,
            sturm_chain_length: 0,
        };
    }
    let s = f.squarefree_part();
    let sf_degree = match s.degree() {
        Degree::Of(d) => d,
        Degree::MinusInfinity => unreachable!("squarefree part of nonzero f is nonzero"),
    };
    let chain = sturm_chain(&s).expect("squarefree part is nonzero");
    let distinct = count_in(&chain, &Endpoint::NegInf, &Endpoint::PosInf);
    let verdict = if distinct == sf_degree {
        Verdict::AllRealRooted
    } else {
        Verdict::HasNonRealRoot
    };
    RealRootCertificate {
        verdict,
        distinct_real_roots: distinct,
        squarefree_degree: sf_degree,
        sturm_chain_length: chain.len(),
    }
}

/// Cauchy root bound: every root of `f` has magnitude strictly below the
/// returned value.
fn root_bound<T: Scalar>(f: &Poly<T>) -> T {
    let lc = f.leading_coeff().expect("nonzero").clone();
    let mut max = T::zero();
    let n = f.coeffs().len() - 1;
    for c in &f.coeffs()[..n] {
        let m = c.abs() / lc.abs();
        if m > max {
            max = m;
        }
    }
    T::one() + max
}

pub const DEFAULT_ISOLATION_WIDTH_DENOM: i64 = 1024;

/// Isolates the distinct real roots of `f` into disjoint rational cells of
/// width below 1/1024.
pub fn isolate_real_roots<T: Scalar>(
    f: &Poly<T>,
) -> Result<Vec<IsolatingInterval<T>>, RootsError> {
    let width = T::one() / T::from_int(DEFAULT_ISOLATION_WIDTH_DENOM);
    isolate_real_roots_with_width(f, &width)
}

/// Isolates the distinct real roots of `f` into disjoint cells of width
/// below `width`. Exact rational roots come back as point cells; this only
/// affects reporting precision, never any verdict.
pub fn isolate_real_roots_with_width<T: Scalar>(
    f: &Poly<T>,
    width: &T,
) -> Result<Vec<IsolatingInterval<T>>, RootsError> {
    if f.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    let mut s = f.squarefree_part();
    let mut out: Vec<IsolatingInterval<T>> = Vec::new();
    if s.degree() == Degree::Of(0) {
        return Ok(out);
    }
    let bound = root_bound(&s);
    let mut chain = sturm_chain(&s)?;
    let two = T::from_int(2);
    // worklist of (lo, hi] cells; endpoints are never roots of the current s
    let mut work = vec![(-bound.clone(), bound)];
    while let Some((mut lo, mut hi)) = work.pop() {
        if s.degree() == Degree::MinusInfinity || s.degree() == Degree::Of(0) {
            continue;
        }
        // deflated linear leftovers have an exact root
        if s.degree() == Degree::Of(1) {
            let r = -s.coeff(0) / s.coeff(1);
            if lo < r && r <= hi {
                out.push(IsolatingInterval {
                    lo: r.clone(),
                    hi: r,
                });
                s = Poly::one();
            }
            continue;
        }
        let n = count_in(
            &chain,
            &Endpoint::Finite(lo.clone()),
            &Endpoint::Finite(hi.clone()),
        );
        match n {
            0 => {}
            1 => {
                // bisect until narrow enough or an exact hit
                loop {
                    if s.degree() == Degree::Of(1) {
                        let r = -s.coeff(0) / s.coeff(1);
                        out.push(IsolatingInterval {
                            lo: r.clone(),
                            hi: r,
                        });
                        s = Poly::one();
                        break;
                    }
                    if hi.clone() - lo.clone() < *width {
                        out.push(IsolatingInterval { lo, hi });
                        break;
                    }
                    let mid = (lo.clone() + hi.clone()) / two.clone();
                    if s.eval(&mid).is_zero() {
                        out.push(IsolatingInterval {
                            lo: mid.clone(),
                            hi: mid.clone(),
                        });
                        let (q, r) =
                            s.div_rem(&Poly::new(vec![-mid, T::one()])).expect("linear");
                        debug_assert!(r.is_zero());
                        s = q;
                        chain = match sturm_chain(&s) {
                            Ok(c) => c,
                            Err(_) => break,
                        };
                        break;
                    }
                    let left = count_in(
                        &chain,
                        &Endpoint::Finite(lo.clone()),
                        &Endpoint::Finite(mid.clone()),
                    );
                    if left == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
            }
            _ => {
                let mid = (lo.clone() + hi.clone()) / two.clone();
                if s.eval(&mid).is_zero() {
                    out.push(IsolatingInterval {
                        lo: mid.clone(),
                        hi: mid.clone(),
                    });
                    let (q, r) = s
                        .div_rem(&Poly::new(vec![-mid.clone(), T::one()]))
                        .expect("linear");
                    debug_assert!(r.is_zero());
                    s = q;
                    chain = sturm_chain(&s)?;
                }
                work.push((lo, mid.clone()));
                work.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("ordered field"));
    Ok(out)
}

/// True iff `f` (which must certify real-rooted) has no root in `(0, inf)`.
pub fn all_roots_nonpositive<T: Scalar>(f: &Poly<T>) -> Result<bool, RootsError> {
    let cert = is_real_rooted(f);
    if cert.verdict != Verdict::AllRealRooted {
        return Err(RootsError::NotRealRooted);
    }
    if f.degree() == Degree::Of(0) {
        return Ok(true);
    }
    Ok(count_real_roots(f, &Endpoint::Finite(T::zero()), &Endpoint::PosInf)? == 0)
}
