//! Elements of the cyclotomic fields `ℚ(ζ_r)` for `r ∈ {1, 2, 3}`.
//!
//! A value is stored as `a + b·ζ` over the basis `{1, ζ}`. For `r ≤ 2` the
//! root of unity is rational (`ζ₁ = 1`, `ζ₂ = -1`) and is folded into `a`, so
//! `b` is always zero. For `r = 3` products are reduced with `ζ² = -1 - ζ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNumber {
    order: u8,
    a: Rational,
    b: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn check_order(order: u8) -> Result<()> {
    if (1..=3).contains(&order) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(order))
    }
}

impl CycNumber {
    /// `a + b·ζ_r`, reduced to the canonical form for `r`.
    pub fn new(order: u8, a: Rational, b: Rational) -> Result<Self> {
        check_order(order)?;
        Ok(match order {
            1 => Self {
                order,
                a: a + b,
                b: Rational::zero(),
            },
            2 => Self {
                order,
                a: a - b,
                b: Rational::zero(),
            },
            _ => Self { order, a, b },
        })
    }

    pub fn from_rational(order: u8, a: Rational) -> Self {
        assert!((1..=3).contains(&order), "cyclotomic order {order}");
        Self {
            order,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(order: u8, a: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(a)))
    }

    pub fn zero(order: u8) -> Self {
        Self::from_rational(order, Rational::zero())
    }

    pub fn one(order: u8) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// `ζ_r^e` for any integer exponent.
    pub fn zeta_pow(order: u8, e: i64) -> Self {
        let r = i64::from(order);
        match (order, e.rem_euclid(r)) {
            (_, 0) => Self::one(order),
            (2, _) => Self::from_int(order, -1),
            (3, 1) => Self {
                order,
                a: Rational::zero(),
                b: Rational::one(),
            },
            // ζ² = -1 - ζ
            (3, _) => Self {
                order,
                a: -Rational::one(),
                b: -Rational::one(),
            },
            _ => unreachable!("order checked at construction"),
        }
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    /// Coefficient of `1`.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `ζ`.
    pub fn zeta_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Same value viewed in a different field; only valid for rational values.
    pub fn with_order(&self, order: u8) -> Option<Self> {
        check_order(order).ok()?;
        self.to_rational()
            .map(|q| Self::from_rational(order, q.clone()))
    }

    /// Complex conjugate; `ζ₃ ↦ ζ₃² = -1 - ζ₃`.
    pub fn conj(&self) -> Self {
        if self.order < 3 {
            return self.clone();
        }
        Self {
            order: 3,
            a: &self.a - &self.b,
            b: -self.b.clone(),
        }
    }

    /// Field norm down to `ℚ`.
    pub fn norm(&self) -> Rational {
        if self.order < 3 {
            return self.a.clone();
        }
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            order: self.order,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            order: self.order,
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        if self.b.is_zero() && other.b.is_zero() {
            return Ok(Self::from_rational(self.order, &self.a * &other.a));
        }
        // (a + bζ)(c + dζ) = ac - bd + (ad + bc - bd)ζ
        let bd = &self.b * &other.b;
        Ok(Self {
            order: self.order,
            a: &self.a * &other.a - &bd,
            b: &self.a * &other.b + &self.b * &other.a - bd,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_rational(self.order, self.a.recip()));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Self {
            order: self.order,
            a: &c.a / &n,
            b: &c.b / &n,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        if other.b.is_zero() {
            if other.a.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self {
                order: self.order,
                a: &self.a / &other.a,
                b: &self.b / &other.a,
            });
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            order: self.order,
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// Field arithmetic in `ℚ(ζ_r)`, failing on mixed orders or division by zero.
pub fn cyc_arith(x: &CycNumber, y: &CycNumber, op: ArithOp) -> Result<CycNumber> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

// Operator impls panic on order mismatch; callers that cannot guarantee a
// common order use the checked_* methods.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a CycNumber> for &'a CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &'a CycNumber) -> CycNumber {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$checked(&rhs).expect("cyclotomic order mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -self.clone()
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = |q: &Rational| {
            if q.is_one() {
                String::new()
            } else {
                format!("{q}*")
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}z3", coeff(&-self.b.clone()))
            } else {
                write!(f, "{}z3", coeff(&self.b))
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {}z3", self.a, coeff(&-self.b.clone()))
        } else {
            write!(f, "{} + {}z3", self.a, coeff(&self.b))
        }
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
