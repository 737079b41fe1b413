//! Truncated power series with exact integer coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::AffineType;

/// `Σ_{d ≤ D} c_d q^d`; coefficients above `D` are never read or produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncSeries {
    max_degree: usize,
    #[serde(with = "crate::exact::decimal::seq")]
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn zero(max_degree: usize) -> Self {
        Self {
            max_degree,
            coeffs: vec![BigInt::zero(); max_degree + 1],
        }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Takes the first `max_degree + 1` coefficients, padding with zeros.
    pub fn from_coeffs(max_degree: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut s = Self::zero(max_degree);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_i64(max_degree: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(max_degree, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &BigInt {
        &self.coeffs[d]
    }

    fn same_truncation(&self, other: &Self) -> Result<()> {
        if self.max_degree == other.max_degree {
            Ok(())
        } else {
            Err(Error::TruncationMismatch {
                left: self.max_degree,
                right: other.max_degree,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        Ok(Self::from_coeffs(
            self.max_degree,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        Ok(Self::from_coeffs(
            self.max_degree,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        let mut out = Self::zero(self.max_degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.max_degree - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        let mut acc = Self::one(self.max_degree);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f(q) ↦ f(q^r)`: coefficient `d` moves to degree `r·d`.
    pub fn substitute(&self, r: usize) -> Self {
        assert!(r >= 1, "substitution q -> q^0 is not a series map");
        let mut out = Self::zero(self.max_degree);
        for (d, c) in self.coeffs.iter().enumerate() {
            if d * r > self.max_degree {
                break;
            }
            out.coeffs[d * r] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.max_degree, self.coeffs.iter().map(|x| x * c))
    }

    /// Divides every coefficient by `c`, failing unless all divisions are exact.
    pub fn div_exact(&self, c: &BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Self::zero(self.max_degree);
        for (slot, x) in out.coeffs.iter_mut().zip(&self.coeffs) {
            let (q, rem) = x.div_rem(c);
            if !rem.is_zero() {
                return Err(Error::InexactDivision {
                    value: x.to_string(),
                    divisor: c.to_string(),
                });
            }
            *slot = q;
        }
        Ok(out)
    }
}

/// `P(q) = Π 1/(1-q^i)` via the pentagonal number recurrence.
pub fn partition_series(max_degree: usize) -> TruncSeries {
    let mut p = vec![BigInt::zero(); max_degree + 1];
    p[0] = BigInt::one();
    for n in 1..=max_degree {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[n] = acc;
    }
    TruncSeries {
        max_degree,
        coeffs: p,
    }
}

/// `T(q) = Σ q^i/(1-q^i)`: coefficient `d` is the number of divisors of `d`.
pub fn divisor_series(max_degree: usize) -> TruncSeries {
    let mut tau = vec![BigInt::zero(); max_degree + 1];
    for i in 1..=max_degree {
        for m in (i..=max_degree).step_by(i) {
            tau[m] += 1;
        }
    }
    TruncSeries {
        max_degree,
        coeffs: tau,
    }
}

/// `P(q)^k P(q^r)^{ℓ-k}`, the graded dimension of `B`.
pub fn dimension_series(t: &AffineType, max_degree: usize) -> TruncSeries {
    let p = partition_series(max_degree);
    let r = t.r() as usize;
    p.pow(i64::from(t.k()))
        .and_then(|a| a.mul(&p.substitute(r).pow(i64::from(t.ell() - t.k()))?))
        .expect("nonnegative exponents, equal truncation")
}

/// `(a(q), b(q)) = (T(q^r), T(q) − T(q^r)) · P(q)^k P(q^r)^{ℓ−k}`.
pub fn ab_series(t: &AffineType, max_degree: usize) -> (TruncSeries, TruncSeries) {
    let tq = divisor_series(max_degree);
    let tqr = tq.substitute(t.r() as usize);
    let dim = dimension_series(t, max_degree);
    let a = tqr.mul(&dim).expect("equal truncation");
    let b = tq
        .sub(&tqr)
        .and_then(|x| x.mul(&dim))
        .expect("equal truncation");
    (a, b)
}

/// `N(q) = T(q) P(q)^{p−1}`.
pub fn cartan_series(p: u32, max_degree: usize) -> Result<TruncSeries> {
    if p < 2 {
        return Err(Error::InvalidModulus {
            p,
            reason: "p must be at least 2".into(),
        });
    }
    divisor_series(max_degree).mul(&partition_series(max_degree).pow(i64::from(p - 1))?)
}

/// `N(q) = (T(q) − T(q²)) P(q)^{(p−1)/2}` for odd `p ≥ 3`.
pub fn spin_cartan_series(p: u32, max_degree: usize) -> Result<TruncSeries> {
    check_spin_modulus(p)?;
    let tq = divisor_series(max_degree);
    tq.sub(&tq.substitute(2))?
        .mul(&partition_series(max_degree).pow(i64::from((p - 1) / 2))?)
}

pub(crate) fn check_spin_modulus(p: u32) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidModulus {
            p,
            reason: "spin blocks need an odd p >= 3".into(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    T,
    U,
}

/// A series in `q` whose coefficients are polynomials in two markers `t`, `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVarSeries {
    max_degree: usize,
    /// `coeffs[d][(i, j)]` is the coefficient of `q^d t^i u^j`.
    coeffs: Vec<BTreeMap<(u32, u32), BigInt>>,
}

impl TwoVarSeries {
    pub fn one(max_degree: usize) -> Self {
        let mut coeffs = vec![BTreeMap::new(); max_degree + 1];
        coeffs[0].insert((0, 0), BigInt::one());
        Self { max_degree, coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Coefficient of `q^d t^i u^j`.
    pub fn coeff(&self, d: usize, i: u32, j: u32) -> BigInt {
        self.coeffs[d].get(&(i, j)).cloned().unwrap_or_default()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BTreeMap::new(); self.max_degree + 1];
        for (d1, p1) in self.coeffs.iter().enumerate() {
            for (d2, p2) in other.coeffs[..=self.max_degree - d1].iter().enumerate() {
                for (&(i1, j1), c1) in p1 {
                    for (&(i2, j2), c2) in p2 {
                        let slot: &mut BigInt = out[d1 + d2].entry((i1 + i2, j1 + j2)).or_default();
                        *slot += c1 * c2;
                    }
                }
            }
        }
        for poly in &mut out {
            poly.retain(|_, c: &mut BigInt| !c.is_zero());
        }
        Self {
            max_degree: self.max_degree,
            coeffs: out,
        }
    }

    /// `1 + s q^m x + s² q^{2m} x² + …` for `s = ±1`: `1/(1 − s q^m x)` truncated.
    fn geometric(max_degree: usize, m: usize, marker: Marker, sign: i64) -> Self {
        let mut s = Self::one(max_degree);
        let mut j = 1u32;
        while m * j as usize <= max_degree {
            let key = match marker {
                Marker::T => (j, 0),
                Marker::U => (0, j),
            };
            s.coeffs[m * j as usize].insert(key, BigInt::from(sign.pow(j)));
            j += 1;
        }
        s
    }

    /// `1 − q^m x`.
    fn binomial_factor(max_degree: usize, m: usize, marker: Marker) -> Self {
        let mut s = Self::one(max_degree);
        if m <= max_degree {
            let key = match marker {
                Marker::T => (1, 0),
                Marker::U => (0, 1),
            };
            s.coeffs[m].insert(key, BigInt::from(-1));
        }
        s
    }

    /// `∂/∂marker` followed by `t = u = 1`.
    pub fn marker_derivative(&self, marker: Marker) -> TruncSeries {
        TruncSeries::from_coeffs(
            self.max_degree,
            self.coeffs.iter().map(|poly| {
                poly.iter()
                    .map(|(&(i, j), c)| {
                        c * BigInt::from(match marker {
                            Marker::T => i,
                            Marker::U => j,
                        })
                    })
                    .sum::<BigInt>()
            }),
        )
    }

    /// `t = u = 1`.
    pub fn at_one(&self) -> TruncSeries {
        TruncSeries::from_coeffs(
            self.max_degree,
            self.coeffs.iter().map(|poly| poly.values().sum::<BigInt>()),
        )
    }
}

/// `G(q,t,u) = (Π_n 1/(1 − q^{nr} t))^ℓ (Π_n (1 − q^{nr} u)/(1 − q^n u))^k`.
///
/// The coefficient of `q^d t^h u^i` counts partitions of `d` with `h` parts
/// divisible by `r` colored from `ℓ` colors and `i` other parts colored from
/// `k` colors.
pub fn coloring_series(t: &AffineType, max_degree: usize) -> TwoVarSeries {
    let r = t.r() as usize;
    let mut divisible = TwoVarSeries::one(max_degree);
    let mut other = TwoVarSeries::one(max_degree);
    for n in 1..=max_degree {
        if n * r <= max_degree {
            divisible = divisible.mul(&TwoVarSeries::geometric(max_degree, n * r, Marker::T, 1));
            other = other.mul(&TwoVarSeries::binomial_factor(max_degree, n * r, Marker::U));
        }
        other = other.mul(&TwoVarSeries::geometric(max_degree, n, Marker::U, 1));
    }
    let mut g = TwoVarSeries::one(max_degree);
    for _ in 0..t.ell() {
        g = g.mul(&divisible);
    }
    for _ in 0..t.k() {
        g = g.mul(&other);
    }
    g
}

/// `a(q) = (1/ℓ) ∂_t G |_{t=u=1}` and `b(q) = (1/k) ∂_u G |_{t=u=1}` (zero when `k = 0`).
pub fn ab_from_coloring(t: &AffineType, max_degree: usize) -> Result<(TruncSeries, TruncSeries)> {
    let g = coloring_series(t, max_degree);
    let a = g
        .marker_derivative(Marker::T)
        .div_exact(&BigInt::from(t.ell()))?;
    let b = if t.k() == 0 {
        TruncSeries::zero(max_degree)
    } else {
        g.marker_derivative(Marker::U)
            .div_exact(&BigInt::from(t.k()))?
    };
    Ok((a, b))
}
