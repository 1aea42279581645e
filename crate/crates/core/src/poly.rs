//! Dense univariate polynomial arithmetic over an ordered field scalar.
//!
//! Everything here is exact when instantiated with [`crate::Rational`]:
//! no rounding enters any operation, so downstream root-counting verdicts
//! are certificates. Coefficients are stored constant-term first with no
//! trailing zeros; the zero polynomial is the empty coefficient vector and
//! its degree is the distinguished [`Degree::MinusInfinity`] marker.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Degree of a polynomial; the zero polynomial gets its own marker so no
/// arithmetic silently treats it as degree `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    /// Degree of the zero polynomial.
    MinusInfinity,
    /// Degree of a nonzero polynomial.
    Of(usize),
}

impl Degree {
    /// Finite degree, or `None` for the zero polynomial.
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Of(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Of(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Affine substitution x -> a*x + b requires a != 0.
    #[error("affine scale must be nonzero")]
    ZeroScale,
    /// gcd(0, 0) is undefined.
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
}

/// Dense univariate polynomial with coefficients in `T`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from raw coefficients (constant term first),
    /// dropping trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// c * x^k.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Monic product of (x - r) over the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut f = Poly::one();
        for r in roots {
            f = &f * &Poly::new(vec![-r.clone(), T::one()]);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Of(self.coeffs.len() - 1)
        }
    }

    /// Coefficients, constant term first, no trailing zeros.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation at a scalar point.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// f(a*x + b), computed exactly by Horner over polynomials.
    pub fn compose_affine(&self, a: &T, b: &T) -> Result<Self, PolyError> {
        if a.is_zero() {
            return Err(PolyError::ZeroScale);
        }
        let inner = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Poly::constant(c.clone());
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; `None` when the divisor is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dlead = divisor.leading_coeff()?.clone();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Some((Poly::zero(), self.clone()));
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![T::zero(); qlen];
        for qi in (0..qlen).rev() {
            let lead = rem[qi + ddeg].clone();
            if lead.is_zero() {
                continue;
            }
            let q = lead / dlead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = rem[qi + j].clone() - q.clone() * d.clone();
                rem[qi + j] = t;
            }
            quot[qi] = q;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// True when `divisor` divides self with zero remainder.
    pub fn divisible_by(&self, divisor: &Self) -> bool {
        match self.div_rem(divisor) {
            Some((_, r)) => r.is_zero(),
            None => false,
        }
    }

    /// Leading coefficient scaled to one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor via the Euclidean remainder sequence.
    pub fn gcd(f: &Self, g: &Self) -> Result<Self, PolyError> {
        if f.is_zero() && g.is_zero() {
            return Err(PolyError::BothZero);
        }
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            // Monic normalization keeps coefficient growth in check.
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// f / gcd(f, f'): shares f's distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(self, &self.derivative()).expect("self is nonzero");
        let (q, r) = self.div_rem(&g).expect("gcd is nonzero");
        debug_assert!(r.is_zero());
        q
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = t;
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (k, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// The exact polynomial used everywhere in the toolkit.
pub type RationalPoly = Poly<Rational>;

// Wire form: {"coeffs": ["1/8", "1", "2"]}, constant term first, rational
// strings in lowest terms. Round-trips bit-exactly.
impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            coeffs: Vec<&'a str>,
        }
        let strings: Vec<String> = self.coeffs().iter().map(format_rational).collect();
        Wire {
            coeffs: strings.iter().map(|s| s.as_str()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RationalPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            coeffs: Vec<String>,
        }
        let wire = Wire::deserialize(de)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_traits::Zero;

    fn p(coeffs: &[(i64, i64)]) -> RationalPoly {
        Poly::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    fn pi(coeffs: &[i64]) -> RationalPoly {
        Poly::new(coeffs.iter().map(|&n| ratio(n, 1)).collect())
    }

    #[test]
    fn add_cases() {
        // (x+1) + (x-1) = 2x
        assert_eq!(&pi(&[1, 1]) + &pi(&[-1, 1]), pi(&[0, 2]));
        // f + 0 = f
        let f = pi(&[3, 0, 7]);
        assert_eq!(&f + &Poly::zero(), f);
        // (x^2+x) + (-x^2) = x, trailing zeros drop
        assert_eq!(&pi(&[0, 1, 1]) + &pi(&[0, 0, -1]), pi(&[0, 1]));
    }

    #[test]
    fn mul_cases() {
        // (x-1)(x+1) = x^2 - 1
        assert_eq!(&pi(&[-1, 1]) * &pi(&[1, 1]), pi(&[-1, 0, 1]));
        // f * 1 = f
        let f = pi(&[2, 5, 1]);
        assert_eq!(&f * &Poly::one(), f);
        // (x-1/2)(x-1/3) = x^2 - 5/6 x + 1/6
        let got = &p(&[(-1, 2), (1, 1)]) * &p(&[(-1, 3), (1, 1)]);
        assert_eq!(got, p(&[(1, 6), (-5, 6), (1, 1)]));
        // degree adds for nonzero inputs
        assert_eq!(got.degree(), Degree::Of(2));
    }

    #[test]
    fn compose_affine_cases() {
        // x^2 at a=2, b=1 -> 4x^2 + 4x + 1
        let f = pi(&[0, 0, 1]);
        assert_eq!(
            f.compose_affine(&ratio(2, 1), &ratio(1, 1)).unwrap(),
            pi(&[1, 4, 4])
        );
        // identity substitution
        let g = pi(&[7, -2, 0, 5]);
        assert_eq!(g.compose_affine(&ratio(1, 1), &ratio(0, 1)).unwrap(), g);
        // x^2 - 1 at a=1/2 -> x^2/4 - 1
        assert_eq!(
            pi(&[-1, 0, 1])
                .compose_affine(&ratio(1, 2), &ratio(0, 1))
                .unwrap(),
            p(&[(-1, 1), (0, 1), (1, 4)])
        );
        assert_eq!(
            f.compose_affine(&ratio(0, 1), &ratio(1, 1)),
            Err(PolyError::ZeroScale)
        );
    }

    #[test]
    fn derivative_cases() {
        assert_eq!(pi(&[0, 0, 0, 1]).derivative(), pi(&[0, 0, 3]));
        assert_eq!(pi(&[9]).derivative(), Poly::zero());
        // x^2 - (2/3)x -> 2x - 2/3
        assert_eq!(
            p(&[(0, 1), (-2, 3), (1, 1)]).derivative(),
            p(&[(-2, 3), (2, 1)])
        );
        assert_eq!(Poly::<Rational>::zero().degree(), Degree::MinusInfinity);
    }

    #[test]
    fn gcd_cases() {
        // gcd((x-1)^2 (x+2), (x-1)(x-3)) = x - 1
        let a = &pi(&[-1, 1]).pow(2) * &pi(&[2, 1]);
        let b = &pi(&[-1, 1]) * &pi(&[-3, 1]);
        assert_eq!(RationalPoly::gcd(&a, &b).unwrap(), pi(&[-1, 1]));
        // gcd(f, 0) = monic f
        let f = pi(&[2, 4]);
        assert_eq!(
            RationalPoly::gcd(&f, &Poly::zero()).unwrap(),
            p(&[(1, 2), (1, 1)])
        );
        // coprime
        assert_eq!(
            RationalPoly::gcd(&pi(&[1, 0, 1]), &pi(&[-1, 0, 1])).unwrap(),
            Poly::one()
        );
        assert_eq!(
            RationalPoly::gcd(&Poly::zero(), &Poly::zero()),
            Err(PolyError::BothZero)
        );
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let f = &pi(&[-1, 1]).pow(3) * &pi(&[2, 1]);
        let s = f.squarefree_part();
        assert_eq!(s.monic(), (&pi(&[-1, 1]) * &pi(&[2, 1])).monic());
    }

    #[test]
    fn eval_and_roots() {
        let f = RationalPoly::from_roots(&[ratio(1, 2), ratio(-3, 1)]);
        assert!(f.eval(&ratio(1, 2)).is_zero());
        assert!(f.eval(&ratio(-3, 1)).is_zero());
        assert!(!f.eval(&ratio(0, 1)).is_zero());
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(pi(&[1, 4, 4]).to_string(), "4*x^2 + 4*x + 1");
        assert_eq!(p(&[(1, 8), (3, 1), (6, 1)]).to_string(), "6*x^2 + 3*x + 1/8");
        assert_eq!(pi(&[0, -1]).to_string(), "-x");
        assert_eq!(RationalPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let f = p(&[(1, 8), (1, 1), (2, 1)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"coeffs":["1/8","1","2"]}"#);
        let back: RationalPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let zero: RationalPoly = serde_json::from_str(r#"{"coeffs":[]}"#).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn generic_scalar_instantiation_compiles() {
        let f: Poly<f64> = Poly::new(vec![1.0, 0.0, 1.0]);
        assert_eq!(f.eval(&2.0), 5.0);
        assert_eq!(f.derivative(), Poly::new(vec![0.0, 2.0]));
    }
}
