//! Exact scalar and matrix arithmetic.

mod cyclotomic;
mod matrix;

pub use cyclotomic::{cyc_arith, ArithOp, CycNumber};
pub use matrix::{monomial_basis, ExactMatrix};

use crate::error::Result;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn det_exact(m: &ExactMatrix) -> Result<CycNumber> {
    m.det()
}

pub fn sym_power(m: &ExactMatrix, k: usize) -> Result<ExactMatrix> {
    m.sym_power(k)
}

pub fn kron(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.kron(b)
}

pub fn invert(m: &ExactMatrix) -> Result<ExactMatrix> {
    m.invert()
}

/// `C(n, k)` as an arbitrary-precision integer.
pub fn binomial(n: u64, k: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Serializes big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub mod seq {
        use num_bigint::BigInt;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(ToString::to_string))
        }
    }
}
