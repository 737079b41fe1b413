//! Partitions, multiplicity notation, the exponents `a_λ`, `b_λ`, and the
//! colored partitions that label the bases of the degree-`d` part of `B`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, Rational};
use crate::roots::AffineType;

/// A partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicities(&self) -> Multiplicities {
        let mut mult = BTreeMap::new();
        for &p in &self.parts {
            *mult.entry(p).or_insert(0) += 1;
        }
        Multiplicities { mult }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `λ = (1^{r₁} 2^{r₂} …)`: part size ↦ multiplicity (only nonzero ones).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicities {
    pub mult: BTreeMap<u32, u32>,
}

impl Multiplicities {
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (&p, &m) in self.mult.iter().rev() {
            parts.extend(std::iter::repeat_n(p, m as usize));
        }
        Partition { parts }
    }
}

/// All partitions of `d` in reverse lexicographic order: `(4), (3,1), (2,2), …`.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// `(a_λ, b_λ)` for the given type.
///
/// Both share the coloring count `Π_{r|i} C(ℓ+r_i−1, r_i) · Π_{r∤i} C(k+r_i−1, r_i)`;
/// `a_λ` multiplies it by `Σ_{r|i} r_i/ℓ` and `b_λ` by `Σ_{r∤i} r_i/k`. An empty
/// sum contributes zero, which in particular makes `b_λ = 0` when `k = 0`.
pub fn exponents(t: &AffineType, lambda: &Partition) -> Result<(BigInt, BigInt)> {
    let r = t.r();
    let (ell, k) = (u64::from(t.ell()), u64::from(t.k()));
    let mut colorings = BigInt::from(1);
    let mut divisible = 0u64;
    let mut other = 0u64;
    for (&part, &m) in &lambda.multiplicities().mult {
        let m = u64::from(m);
        if part % r == 0 {
            colorings *= binomial(ell + m - 1, m);
            divisible += m;
        } else {
            colorings *= binomial(k + m - 1, m);
            other += m;
        }
    }
    let scaled = |count: u64, colors: u64| -> Result<BigInt> {
        if count == 0 {
            return Ok(BigInt::zero());
        }
        let q = Rational::new(&colorings * BigInt::from(count), BigInt::from(colors));
        if !q.is_integer() {
            return Err(Error::NotInteger(format!(
                "exponent {q} for {lambda} in {t}"
            )));
        }
        Ok(q.to_integer())
    };
    Ok((scaled(divisible, ell)?, scaled(other, k)?))
}

/// `(a(d), b(d)) = Σ_{λ ⊢ d} (a_λ, b_λ)`.
pub fn exponent_totals(t: &AffineType, d: u32) -> Result<(BigInt, BigInt)> {
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    for lambda in enumerate_partitions(d) {
        let (x, y) = exponents(t, &lambda)?;
        a += x;
        b += y;
    }
    Ok((a, b))
}

/// A partition whose parts carry colors from `I`, with `d_color | part` and
/// colors weakly increasing along runs of equal parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColoredPartition {
    entries: Vec<(u32, usize)>,
}

impl ColoredPartition {
    /// Sorts entries into canonical order (part descending, color ascending).
    pub fn new(mut entries: Vec<(u32, usize)>) -> Self {
        entries.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Self { entries }
    }

    pub fn entries(&self) -> &[(u32, usize)] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|e| e.0).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.entries.iter().map(|e| e.0).collect(),
        }
    }

    pub fn colors(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.1).collect()
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, c)| format!("{p}_{c}"))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Ω(λ)`: admissible colorings of `λ`, in lexicographic order on the color tuple.
pub fn colorings(lambda: &Partition, colors: &[(usize, u32)]) -> Vec<ColoredPartition> {
    fn go(
        parts: &[u32],
        colors: &[(usize, u32)],
        pos: usize,
        cur: &mut Vec<(u32, usize)>,
        out: &mut Vec<ColoredPartition>,
    ) {
        if pos == parts.len() {
            out.push(ColoredPartition {
                entries: cur.clone(),
            });
            return;
        }
        let part = parts[pos];
        let floor = match cur.last() {
            Some(&(p, c)) if p == part => Some(c),
            _ => None,
        };
        for &(c, d) in colors {
            if !part.is_multiple_of(d) || floor.is_some_and(|f| c < f) {
                continue;
            }
            cur.push((part, c));
            go(parts, colors, pos + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda.parts(), colors, 0, &mut Vec::new(), &mut out);
    out
}

/// Colored partitions of degree `d` for `(color, period)` pairs sorted by color.
pub fn enumerate_colored(colors: &[(usize, u32)], d: u32) -> Vec<ColoredPartition> {
    enumerate_partitions(d)
        .iter()
        .flat_map(|lambda| colorings(lambda, colors))
        .collect()
}

/// The shared basis index list of the degree-`d` part of `B`: partitions in
/// reverse lexicographic order, then colorings lexicographically.
pub fn enumerate_basis(t: &AffineType, d: u32) -> Vec<ColoredPartition> {
    enumerate_colored(&t.root_data().colors(), d)
}
