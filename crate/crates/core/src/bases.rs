//! Simple sets of polynomials: named generators of bases `q_k` with
//! `deg q_k = k`.
//!
//! Every built-in family the toolkit works with lives here: the standard
//! monomials, generalized Hermite `H^(alpha)` (defined by the recurrence
//! `H_{k+1} = x H_k - alpha k H_{k-1}`, which reproduces the identity
//! `x^2 = H_2 + alpha H_0` and reduces to the probabilists' Hermite
//! polynomials at alpha = 1), the three mixed bases Q1/Q2/Q3, truncated
//! geometric sums, Laguerre and Legendre, plus affine-transformed and
//! explicit custom sets.
//!
//! Generation is memoized per set; the memo is a `RwLock`-guarded vector
//! so concurrent readers are safe, and generated polynomials are immutable
//! values. The `deg q_k = k` invariant is enforced on every generation.

use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Degree, Poly, RationalPoly};
use crate::scalar::{rational_string, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("generalized Hermite parameter alpha must be nonzero")]
    ZeroAlpha,
    #[error("affine scale must be nonzero")]
    ZeroScale,
    #[error("per-degree multipliers must all be nonzero")]
    ZeroMultiplier,
    #[error("multiplier list must be nonempty")]
    EmptyMultipliers,
    #[error("custom basis entry {index} has degree {found} instead of {index}")]
    BadCustomDegree { index: usize, found: String },
}

type Rule<T> = dyn Fn(usize, &[Poly<T>]) -> Poly<T> + Send + Sync;

struct Inner<T> {
    name: String,
    rule: Box<Rule<T>>,
    memo: RwLock<Vec<Poly<T>>>,
    descriptor: Option<BasisDescriptor>,
}

/// A simple set of polynomials: a deterministic, memoized map
/// `k -> q_k` with `deg q_k = k`.
#[derive(Clone)]
pub struct SimpleSet<T> {
    inner: Arc<Inner<T>>,
}

impl<T> fmt::Debug for SimpleSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleSet({})", self.inner.name)
    }
}

impl<T> fmt::Display for SimpleSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.name)
    }
}

impl<T: Scalar> SimpleSet<T> {
    fn from_rule(
        name: String,
        descriptor: Option<BasisDescriptor>,
        rule: impl Fn(usize, &[Poly<T>]) -> Poly<T> + Send + Sync + 'static,
    ) -> Self {
        SimpleSet {
            inner: Arc::new(Inner {
                name,
                rule: Box::new(rule),
                memo: RwLock::new(Vec::new()),
                descriptor,
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// The basis polynomial q_k, in standard coefficients.
    pub fn poly_at(&self, k: usize) -> Poly<T> {
        {
            let memo = self.inner.memo.read().expect("memo lock");
            if let Some(p) = memo.get(k) {
                return p.clone();
            }
        }
        let mut memo = self.inner.memo.write().expect("memo lock");
        while memo.len() <= k {
            let next = memo.len();
            let p = (self.inner.rule)(next, &memo);
            assert_eq!(
                p.degree(),
                Degree::Of(next),
                "simple-set invariant violated: {} produced degree {} at index {next}",
                self.inner.name,
                p.degree(),
            );
            memo.push(p);
        }
        memo[k].clone()
    }

    /// Leading coefficient of q_k (nonzero by the degree invariant).
    pub fn leading_coeff_at(&self, k: usize) -> T {
        self.poly_at(k)
            .leading_coeff()
            .expect("deg q_k = k implies nonzero")
            .clone()
    }

    /// Standard monomial basis q_k = x^k.
    pub fn standard() -> Self {
        SimpleSet::from_rule(
            "standard".into(),
            Some(BasisDescriptor::Standard),
            |k, _| Poly::monomial(T::one(), k),
        )
    }

    /// Generalized Hermite set H^(alpha):
    /// `H_0 = 1, H_1 = x, H_{k+1} = x H_k - alpha k H_{k-1}`.
    pub fn generalized_hermite(alpha: T) -> Result<Self, BasisError> {
        if alpha.is_zero() {
            return Err(BasisError::ZeroAlpha);
        }
        let descriptor = None; // concrete alias attaches one below
        Ok(SimpleSet::from_rule(
            format!("generalized_hermite({alpha})"),
            descriptor,
            move |k, prev| match k {
                0 => Poly::one(),
                1 => Poly::x(),
                _ => {
                    let x = Poly::x();
                    let step = T::from_int((k - 1) as i64) * alpha.clone();
                    &(&x * &prev[k - 1]) - &prev[k - 2].scale(&step)
                }
            },
        ))
    }

    /// Q1 = {1, x, x + x^2, x^3, x^4, ...}.
    pub fn q1() -> Self {
        SimpleSet::from_rule("q1".into(), Some(BasisDescriptor::Q1), |k, _| match k {
            2 => Poly::new(vec![T::zero(), T::one(), T::one()]),
            _ => Poly::monomial(T::one(), k),
        })
    }

    /// Q2 = {1, x + 1, x^2 + x + 1, x^3, x^4, ...}.
    pub fn q2() -> Self {
        SimpleSet::from_rule("q2".into(), Some(BasisDescriptor::Q2), |k, _| match k {
            1 => Poly::new(vec![T::one(), T::one()]),
            2 => Poly::new(vec![T::one(), T::one(), T::one()]),
            _ => Poly::monomial(T::one(), k),
        })
    }

    /// Q3 = {1, x, 1 + x^2, x^3, x^4, ...}.
    pub fn q3() -> Self {
        SimpleSet::from_rule("q3".into(), Some(BasisDescriptor::Q3), |k, _| match k {
            2 => Poly::new(vec![T::one(), T::zero(), T::one()]),
            _ => Poly::monomial(T::one(), k),
        })
    }

    /// Truncated-sum set: q_k = 1 + x + ... + x^k for k <= j, x^k after.
    pub fn truncated_sum(j: usize) -> Self {
        SimpleSet::from_rule(
            format!("truncated_sum({j})"),
            Some(BasisDescriptor::TruncatedSum { j }),
            move |k, _| {
                if k <= j {
                    Poly::new(vec![T::one(); k + 1])
                } else {
                    Poly::monomial(T::one(), k)
                }
            },
        )
    }

    /// Laguerre polynomials:
    /// `L_0 = 1, L_1 = 1 - x, (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
    pub fn laguerre() -> Self {
        SimpleSet::from_rule(
            "laguerre".into(),
            Some(BasisDescriptor::Laguerre),
            |k, prev| match k {
                0 => Poly::one(),
                1 => Poly::new(vec![T::one(), -T::one()]),
                _ => {
                    let m = T::from_int((k - 1) as i64);
                    let front = Poly::new(vec![
                        T::from_int(2) * m.clone() + T::one(),
                        -T::one(),
                    ]);
                    let raw = &(&front * &prev[k - 1]) - &prev[k - 2].scale(&m);
                    raw.scale(&(T::one() / (m + T::one())))
                }
            },
        )
    }

    /// Legendre polynomials:
    /// `P_0 = 1, P_1 = x, (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}`.
    pub fn legendre() -> Self {
        SimpleSet::from_rule(
            "legendre".into(),
            Some(BasisDescriptor::Legendre),
            |k, prev| match k {
                0 => Poly::one(),
                1 => Poly::x(),
                _ => {
                    let m = T::from_int((k - 1) as i64);
                    let lead = Poly::monomial(T::from_int(2) * m.clone() + T::one(), 1);
                    let raw = &(&lead * &prev[k - 1]) - &prev[k - 2].scale(&m);
                    raw.scale(&(T::one() / (m + T::one())))
                }
            },
        )
    }

    /// Explicit finite list; beyond it the tail defaults to x^k. Each entry
    /// must have exact degree equal to its index.
    pub fn custom(polys: Vec<Poly<T>>) -> Result<Self, BasisError> {
        for (index, p) in polys.iter().enumerate() {
            if p.degree() != Degree::Of(index) {
                return Err(BasisError::BadCustomDegree {
                    index,
                    found: p.degree().to_string(),
                });
            }
        }
        Ok(SimpleSet::from_rule(
            format!("custom[{}]", polys.len()),
            None,
            move |k, _| match polys.get(k) {
                Some(p) => p.clone(),
                None => Poly::monomial(T::one(), k),
            },
        ))
    }

    /// Finite materialized list with no implicit tail: requesting a degree
    /// beyond the list is a caller bug and panics.
    pub(crate) fn materialized(name: String, polys: Vec<Poly<T>>) -> Self {
        let bound = polys.len();
        SimpleSet::from_rule(name, None, move |k, _| match polys.get(k) {
            Some(p) => p.clone(),
            None => panic!("basis materialized only up to degree {}", bound - 1),
        })
    }

    /// Affine-transformed set: `q̂_k = c_k q_k(a x + b)` with every `c_k`
    /// nonzero and `a` nonzero. `scales` supplies `c_k` per degree, its
    /// last entry repeating for all higher degrees.
    pub fn affine_transform(
        &self,
        scales: Vec<T>,
        a: T,
        b: T,
    ) -> Result<Self, BasisError> {
        if a.is_zero() {
            return Err(BasisError::ZeroScale);
        }
        if scales.is_empty() {
            return Err(BasisError::EmptyMultipliers);
        }
        if scales.iter().any(|c| c.is_zero()) {
            return Err(BasisError::ZeroMultiplier);
        }
        let src = self.clone();
        let name = format!("affine({}; a={a}, b={b})", self.inner.name);
        Ok(SimpleSet::from_rule(name, None, move |k, _| {
            let c = scales[k.min(scales.len() - 1)].clone();
            src.poly_at(k)
                .compose_affine(&a, &b)
                .expect("a validated nonzero")
                .scale(&c)
        }))
    }
}

/// The exact simple set used by all certified code paths.
pub type RationalSimpleSet = SimpleSet<Rational>;

/// Wire descriptor for the built-in bases, e.g.
/// `{"kind":"generalized_hermite","alpha":"-1/2"}` or `{"kind":"q2"}`.
/// `custom` carries an explicit finite list (tail defaults to x^k).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisDescriptor {
    Standard,
    GeneralizedHermite {
        #[serde(with = "rational_string")]
        alpha: Rational,
    },
    Q1,
    Q2,
    Q3,
    TruncatedSum {
        j: usize,
    },
    Laguerre,
    Legendre,
    Custom {
        polys: Vec<RationalPoly>,
    },
}

impl BasisDescriptor {
    /// Instantiates the described basis over the exact rationals.
    pub fn build(&self) -> Result<RationalSimpleSet, BasisError> {
        Ok(match self {
            BasisDescriptor::Standard => SimpleSet::standard(),
            BasisDescriptor::GeneralizedHermite { alpha } => {
                SimpleSet::generalized_hermite(alpha.clone())?.tagged(self.clone())
            }
            BasisDescriptor::Q1 => SimpleSet::q1(),
            BasisDescriptor::Q2 => SimpleSet::q2(),
            BasisDescriptor::Q3 => SimpleSet::q3(),
            BasisDescriptor::TruncatedSum { j } => SimpleSet::truncated_sum(*j),
            BasisDescriptor::Laguerre => SimpleSet::laguerre(),
            BasisDescriptor::Legendre => SimpleSet::legendre(),
            BasisDescriptor::Custom { polys } => SimpleSet::custom(polys.clone())?,
        })
    }
}

impl RationalSimpleSet {
    /// Rewraps a set with a wire descriptor that the generic constructors
    /// could not attach (parameters live in the descriptor's own types).
    fn tagged(self, descriptor: BasisDescriptor) -> Self {
        let name = self.inner.name.clone();
        let src = self.clone();
        SimpleSet {
            inner: Arc::new(Inner {
                name,
                rule: Box::new(move |k, _| src.poly_at(k)),
                memo: RwLock::new(Vec::new()),
                descriptor: Some(descriptor),
            }),
        }
    }

    /// Generalized Hermite set carrying its wire descriptor.
    pub fn hermite(alpha: Rational) -> Result<Self, BasisError> {
        let d = BasisDescriptor::GeneralizedHermite {
            alpha: alpha.clone(),
        };
        Ok(SimpleSet::generalized_hermite(alpha)?.tagged(d))
    }

    /// The wire descriptor of this set, when it was built from one;
    /// derived sets (affine images, deformations) report the polynomials
    /// they actually exposed up to `n` as an explicit custom list.
    pub fn descriptor_up_to(&self, n: usize) -> BasisDescriptor {
        if let Some(d) = &self.inner.descriptor {
            return d.clone();
        }
        BasisDescriptor::Custom {
            polys: (0..=n).map(|k| self.poly_at(k)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn pi(coeffs: &[i64]) -> RationalPoly {
        Poly::new(coeffs.iter().map(|&n| ratio(n, 1)).collect())
    }

    fn p(coeffs: &[(i64, i64)]) -> RationalPoly {
        Poly::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn standard_monomials() {
        let q = RationalSimpleSet::standard();
        assert_eq!(q.poly_at(0), pi(&[1]));
        assert_eq!(q.poly_at(3), pi(&[0, 0, 0, 1]));
        assert_eq!(q.poly_at(7).degree(), Degree::Of(7));
    }

    #[test]
    fn generalized_hermite_recurrence() {
        let h1 = RationalSimpleSet::generalized_hermite(ratio(1, 1)).unwrap();
        assert_eq!(h1.poly_at(1), pi(&[0, 1]));
        assert_eq!(h1.poly_at(2), pi(&[-1, 0, 1]));
        let hm1 = RationalSimpleSet::generalized_hermite(ratio(-1, 1)).unwrap();
        assert_eq!(hm1.poly_at(3), pi(&[0, 3, 0, 1]));
        assert_eq!(
            RationalSimpleSet::generalized_hermite(ratio(0, 1)).unwrap_err(),
            BasisError::ZeroAlpha
        );
    }

    #[test]
    fn hermite_identity_x_squared() {
        // x^2 = H_2 + alpha * H_0 for any nonzero alpha
        for (n, d) in [(1, 1), (-2, 1), (1, 2), (-7, 3)] {
            let alpha = ratio(n, d);
            let h = RationalSimpleSet::generalized_hermite(alpha.clone()).unwrap();
            let lhs = pi(&[0, 0, 1]);
            let rhs = &h.poly_at(2) + &h.poly_at(0).scale(&alpha);
            assert_eq!(lhs, rhs, "alpha = {alpha}");
        }
    }

    #[test]
    fn mixed_bases_match_their_definitions() {
        assert_eq!(RationalSimpleSet::q1().poly_at(2), pi(&[0, 1, 1]));
        assert_eq!(RationalSimpleSet::q2().poly_at(1), pi(&[1, 1]));
        assert_eq!(RationalSimpleSet::q2().poly_at(2), pi(&[1, 1, 1]));
        assert_eq!(RationalSimpleSet::q3().poly_at(2), pi(&[1, 0, 1]));
        assert_eq!(RationalSimpleSet::q3().poly_at(5), pi(&[0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn truncated_sum_family() {
        let t2 = RationalSimpleSet::truncated_sum(2);
        assert_eq!(t2.poly_at(1), pi(&[1, 1]));
        assert_eq!(t2.poly_at(2), pi(&[1, 1, 1]));
        assert_eq!(t2.poly_at(3), pi(&[0, 0, 0, 1]));
        let t0 = RationalSimpleSet::truncated_sum(0);
        for k in 1..6 {
            assert_eq!(t0.poly_at(k), Poly::monomial(ratio(1, 1), k));
        }
    }

    #[test]
    fn classical_orthogonal_values() {
        let lag = RationalSimpleSet::laguerre();
        assert_eq!(lag.poly_at(0), pi(&[1]));
        assert_eq!(lag.poly_at(2), p(&[(1, 1), (-2, 1), (1, 2)]));
        let leg = RationalSimpleSet::legendre();
        assert_eq!(leg.poly_at(0), pi(&[1]));
        assert_eq!(leg.poly_at(2), p(&[(-1, 2), (0, 1), (3, 2)]));
    }

    #[test]
    fn affine_transform_cases() {
        let std = RationalSimpleSet::standard();
        let same = std
            .affine_transform(vec![ratio(1, 1)], ratio(1, 1), ratio(0, 1))
            .unwrap();
        for k in 0..5 {
            assert_eq!(same.poly_at(k), std.poly_at(k));
        }
        let shifted = std
            .affine_transform(vec![ratio(1, 1)], ratio(2, 1), ratio(1, 1))
            .unwrap();
        assert_eq!(shifted.poly_at(2), pi(&[1, 4, 4]));
        let h1 = RationalSimpleSet::generalized_hermite(ratio(1, 1)).unwrap();
        let doubled = h1
            .affine_transform(vec![ratio(2, 1)], ratio(1, 1), ratio(0, 1))
            .unwrap();
        assert_eq!(doubled.poly_at(2), pi(&[-2, 0, 2]));

        assert_eq!(
            std.affine_transform(vec![ratio(1, 1)], ratio(0, 1), ratio(0, 1))
                .unwrap_err(),
            BasisError::ZeroScale
        );
        assert_eq!(
            std.affine_transform(vec![ratio(1, 1), ratio(0, 1)], ratio(1, 1), ratio(0, 1))
                .unwrap_err(),
            BasisError::ZeroMultiplier
        );
    }

    #[test]
    fn custom_validation() {
        let ok = RationalSimpleSet::custom(vec![pi(&[2]), pi(&[1, 3])]).unwrap();
        assert_eq!(ok.poly_at(1), pi(&[1, 3]));
        assert_eq!(ok.poly_at(4), Poly::monomial(ratio(1, 1), 4));
        let bad = RationalSimpleSet::custom(vec![pi(&[2]), pi(&[1, 0, 3])]);
        assert!(matches!(bad, Err(BasisError::BadCustomDegree { index: 1, .. })));
    }

    #[test]
    fn descriptor_json_round_trip() {
        let d = BasisDescriptor::GeneralizedHermite {
            alpha: ratio(-1, 2),
        };
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"kind":"generalized_hermite","alpha":"-1/2"}"#);
        let back: BasisDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.build().unwrap().poly_at(2), p(&[(1, 2), (0, 1), (1, 1)]));

        let q2: BasisDescriptor = serde_json::from_str(r#"{"kind":"q2"}"#).unwrap();
        assert_eq!(q2, BasisDescriptor::Q2);
        assert_eq!(q2.build().unwrap().poly_at(2), pi(&[1, 1, 1]));
    }

    #[test]
    fn memo_supports_concurrent_readers() {
        let h = RationalSimpleSet::generalized_hermite(ratio(1, 1)).unwrap();
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let set = h.clone();
                std::thread::spawn(move || {
                    for k in 0..20 {
                        let p = set.poly_at((k + i) % 20);
                        assert!(!p.is_zero());
                    }
                })
            })
            .collect();
        for handle in handles {
            handle.join().unwrap();
        }
        assert_eq!(h.poly_at(2), pi(&[-1, 0, 1]));
    }

    #[test]
    fn degree_invariant_enforced_on_generation() {
        for set in [
            RationalSimpleSet::standard(),
            RationalSimpleSet::q1(),
            RationalSimpleSet::q2(),
            RationalSimpleSet::q3(),
            RationalSimpleSet::truncated_sum(3),
            RationalSimpleSet::laguerre(),
            RationalSimpleSet::legendre(),
            RationalSimpleSet::generalized_hermite(ratio(-3, 7)).unwrap(),
        ] {
            for k in 0..12 {
                assert_eq!(set.poly_at(k).degree(), Degree::Of(k), "{set} at {k}");
            }
        }
    }
}
