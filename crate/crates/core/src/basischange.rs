//! Expansion of polynomials in arbitrary simple sets, triangular expansion
//! matrices between bases, and the alpha-deformed interpolating bases.
//!
//! Expansion pivots through the standard basis (each q_k is stored in
//! standard coefficients, so expanding is a single triangular peel); two
//! such solves compose to any Q -> B conversion with identical exact
//! results.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bases::SimpleSet;
use crate::poly::{Degree, Poly};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChangeError {
    #[error("deformation parameter alpha must be positive")]
    NonpositiveAlpha,
}

/// Lower-triangular change-of-basis data: `q_k = sum_{j<=k} a[k][j] b_j`
/// for all `k <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionMatrix<T> {
    rows: Vec<Vec<T>>,
    source: String,
    target: String,
}

impl<T: Scalar> ExpansionMatrix<T> {
    /// Row `k`: the B-coefficients of q_k, length k+1.
    pub fn row(&self, k: usize) -> &[T] {
        &self.rows[k]
    }

    pub fn entry(&self, k: usize, j: usize) -> T {
        if j <= k {
            self.rows[k][j].clone()
        } else {
            T::zero()
        }
    }

    /// Highest expanded degree.
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    /// Matrix product, for composing conversions Q -> B -> C.
    pub fn compose(&self, rhs: &ExpansionMatrix<T>) -> ExpansionMatrix<T> {
        let n = self.order().min(rhs.order());
        let rows = (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|j| {
                        let mut acc = T::zero();
                        for m in j..=k {
                            acc = acc + self.entry(k, m) * rhs.entry(m, j);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        ExpansionMatrix {
            rows,
            source: self.source.clone(),
            target: rhs.target.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(k, row)| {
            row.iter()
                .enumerate()
                .all(|(j, a)| if j == k { a.is_one() } else { a.is_zero() })
        })
    }
}

/// Exact coefficients of `f` in the simple set `Q`: returns `c_0..c_n`
/// with `f = sum c_k q_k`, `n = deg f`. The zero polynomial expands to an
/// empty list.
pub fn expand_in_basis<T: Scalar>(f: &Poly<T>, basis: &SimpleSet<T>) -> Vec<T> {
    let Degree::Of(n) = f.degree() else {
        return Vec::new();
    };
    let mut coeffs = vec![T::zero(); n + 1];
    let mut rem = f.clone();
    for k in (0..=n).rev() {
        let lead = rem.coeff(k);
        if lead.is_zero() {
            continue;
        }
        let qk = basis.poly_at(k);
        let c = lead / qk.leading_coeff().expect("deg q_k = k").clone();
        rem = &rem - &qk.scale(&c);
        coeffs[k] = c;
    }
    debug_assert!(rem.is_zero(), "triangular peel must terminate exactly");
    coeffs
}

/// Inverse of [`expand_in_basis`]: assembles `sum c_k q_k` in standard
/// coefficients.
pub fn reconstruct<T: Scalar>(coeffs: &[T], basis: &SimpleSet<T>) -> Poly<T> {
    let mut acc = Poly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &basis.poly_at(k).scale(c);
    }
    acc
}

/// The expansion matrix of `Q` in `B` up to degree `n`.
pub fn expansion_matrix<T: Scalar>(
    source: &SimpleSet<T>,
    target: &SimpleSet<T>,
    n: usize,
) -> ExpansionMatrix<T> {
    let rows = (0..=n)
        .map(|k| expand_in_basis(&source.poly_at(k), target))
        .collect();
    ExpansionMatrix {
        rows,
        source: source.name().to_string(),
        target: target.name().to_string(),
    }
}

/// The alpha-deformed simple set interpolating between `Q` and `B`:
///
/// `p_k = sum_{j<=k} a[k][j] b_j / (a[k][k] alpha^(k-j))`
///
/// where `a` is the expansion matrix of Q in B. Each p_k is monic in B
/// (its b_k-coefficient is exactly one). Only degrees `<= n` are
/// materialized; requesting beyond that bound panics.
pub fn alpha_deformed_basis<T: Scalar>(
    source: &SimpleSet<T>,
    target: &SimpleSet<T>,
    alpha: &T,
    n: usize,
) -> Result<SimpleSet<T>, ChangeError> {
    if !alpha.is_positive() {
        return Err(ChangeError::NonpositiveAlpha);
    }
    let a = expansion_matrix(source, target, n);
    let mut polys = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let akk = a.entry(k, k);
        let mut p = Poly::zero();
        let mut alpha_pow = T::one(); // alpha^(k-j), built up from j = k down
        for j in (0..=k).rev() {
            let coeff = a.entry(k, j) / (akk.clone() * alpha_pow.clone());
            if !coeff.is_zero() {
                p = &p + &target.poly_at(j).scale(&coeff);
            }
            alpha_pow = alpha_pow * alpha.clone();
        }
        polys.push(p);
    }
    let name = format!(
        "deformed({} -> {}; alpha={alpha}, n={n})",
        source.name(),
        target.name()
    );
    Ok(SimpleSet::materialized(name, polys))
}

/// Wire form of an expansion matrix: rows of rational strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionMatrixWire {
    pub source: String,
    pub target: String,
    pub rows: Vec<Vec<String>>,
}

impl ExpansionMatrix<Rational> {
    pub fn to_wire(&self) -> ExpansionMatrixWire {
        ExpansionMatrixWire {
            source: self.source.clone(),
            target: self.target.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn from_wire(wire: &ExpansionMatrixWire) -> Result<Self, String> {
        let rows = wire
            .rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(ExpansionMatrix {
            rows,
            source: wire.source.clone(),
            target: wire.target.clone(),
        })
    }
}
