//! Blocks of symmetric groups: `p`-cores, grouping of partitions by core,
//! and Cartan determinant exponents `N(d)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, Rational};
use crate::partitions::{enumerate_partitions, Partition};
use crate::series::{cartan_series, check_spin_modulus, spin_cartan_series};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRecord {
    pub n: u32,
    pub p: u32,
    #[serde(serialize_with = "display")]
    pub core: Partition,
    pub weight: u32,
    pub member_count: usize,
    pub cartan_exponent: u64,
    #[serde(with = "crate::exact::decimal")]
    pub cartan_det: BigInt,
}

fn display<S: serde::Serializer>(x: &Partition, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// β-set of `λ` with `len` beads: `λ_i + len − i` for `i = 1..len`.
fn beta_set(lambda: &Partition, len: usize) -> BTreeSet<u32> {
    let parts = lambda.parts();
    (0..len)
        .map(|i| parts.get(i).copied().unwrap_or(0) + (len - 1 - i) as u32)
        .collect()
}

fn from_beta_set(beads: &BTreeSet<u32>) -> Partition {
    let parts = beads
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &b)| b - (beads.len() - 1 - i) as u32)
        .collect();
    Partition::new(parts)
}

/// Slides beads down by `p` until none can move. `pick` chooses which of the
/// movable beads goes next.
fn slide(lambda: &Partition, p: u32, mut pick: impl FnMut(&[u32]) -> usize) -> Partition {
    let len = lambda.len().max(lambda.size() as usize);
    let mut beads = beta_set(lambda, len);
    loop {
        let movable: Vec<u32> = beads
            .iter()
            .copied()
            .filter(|&b| b >= p && !beads.contains(&(b - p)))
            .collect();
        if movable.is_empty() {
            break;
        }
        let b = movable[pick(&movable)];
        beads.remove(&b);
        beads.insert(b - p);
    }
    from_beta_set(&beads)
}

/// `(core, weight)` of `λ` at `p`.
pub fn p_core(lambda: &Partition, p: u32) -> Result<(Partition, u32)> {
    if p < 2 {
        return Err(Error::InvalidModulus {
            p,
            reason: "p must be at least 2".into(),
        });
    }
    let core = slide(lambda, p, |_| 0);
    let weight = (lambda.size() - core.size()) / p;
    Ok((core, weight))
}

/// Exponent `N(d)` from the sum over partitions of `d`; `spin` selects the
/// superblock version, which needs odd `p ≥ 3`.
pub fn cartan_exponent(p: u32, d: u32, spin: bool) -> Result<u64> {
    if spin {
        check_spin_modulus(p)?;
    } else if p < 2 {
        return Err(Error::InvalidModulus {
            p,
            reason: "p must be at least 2".into(),
        });
    }
    let shift = u64::from(if spin { (p - 3) / 2 } else { p - 2 });
    let mut total = Rational::zero();
    for lambda in enumerate_partitions(d) {
        let mult = lambda.multiplicities().mult;
        let counted: u64 = mult
            .iter()
            .filter(|(&part, _)| !spin || part % 2 == 1)
            .map(|(_, &r)| u64::from(r))
            .sum();
        let numer = if spin { 2 * counted } else { counted };
        let mut term = BigInt::from(numer);
        for &r in mult.values() {
            term *= binomial(shift + u64::from(r), u64::from(r));
        }
        total += Rational::new(term, BigInt::from(p - 1));
    }
    if !total.is_integer() {
        return Err(Error::NotInteger(total.to_string()));
    }
    total
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::NotInteger(total.to_string()))
}

/// Exponent `N(d)` read from the generating function.
pub fn cartan_exponent_series(p: u32, d: u32, spin: bool) -> Result<u64> {
    let s = if spin {
        spin_cartan_series(p, d as usize)?
    } else {
        cartan_series(p, d as usize)?
    };
    s.coeff(d as usize)
        .to_u64()
        .ok_or_else(|| Error::NotInteger(s.coeff(d as usize).to_string()))
}

/// One record per `p`-core occurring among the partitions of `n`, in order
/// of first appearance in reverse-lexicographic order.
pub fn enumerate_blocks(n: u32, p: u32) -> Result<Vec<BlockRecord>> {
    let mut blocks: Vec<BlockRecord> = Vec::new();
    for lambda in enumerate_partitions(n) {
        let (core, weight) = p_core(&lambda, p)?;
        if let Some(b) = blocks.iter_mut().find(|b| b.core == core) {
            b.member_count += 1;
            continue;
        }
        let exponent = cartan_exponent(p, weight, false)?;
        let from_series = cartan_exponent_series(p, weight, false)?;
        assert_eq!(exponent, from_series, "N({weight}) at p = {p}");
        blocks.push(BlockRecord {
            n,
            p,
            core,
            weight,
            member_count: 1,
            cartan_exponent: exponent,
            cartan_det: BigInt::from(p).pow(exponent as u32),
        });
    }
    Ok(blocks)
}
