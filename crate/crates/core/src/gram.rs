//! The polynomial algebra `B = ℚ(ζ_r)[y_n^(i) : i ∈ I, d_i | n]`, the
//! Shapovalov form `(.,.)_S` and the contravariant form `(.,.)_K` on it, the
//! `x`, `y`, `z` bases of each graded piece, and the Gram matrices `M`, `N`.
//!
//! Both forms are computed from the adjointness rules by stripping one
//! variable from the left argument:
//!
//! ```text
//! (y_n^(i) f, g)_S = (d_i/n) (f, Σ_{j ∈ I(n)} a_ij^(n) ∂g/∂y_n^(j))_S
//! (y_n^(i) f, g)_K = (d_i/n) (f, ∂g/∂y_n^(i))_K
//! ```
//!
//! with `(1, 1) = 1`. Pair values on monomials are memoized per context.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::{all_pass, Check};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, ExactMatrix, Rational};
use crate::partitions::{enumerate_colored, exponent_totals, ColoredPartition, Partition};
use crate::roots::{a_matrix_with, AMatrix, AffineType, FiniteRootData};

/// Monomial in the `y` variables: `(degree n, color i)` factors sorted by
/// degree descending, then color ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct YMonomial(Vec<(u32, usize)>);

impl YMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut factors: Vec<(u32, usize)>) -> Self {
        factors.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Self(factors)
    }

    pub fn factors(&self) -> &[(u32, usize)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.0).sum()
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut f = self.0.clone();
        f.extend_from_slice(&other.0);
        Self::new(f)
    }

    fn count(&self, var: (u32, usize)) -> usize {
        self.0.iter().filter(|&&f| f == var).count()
    }

    fn without(&self, var: (u32, usize)) -> Self {
        let mut f = self.0.clone();
        let at = f.iter().position(|&x| x == var).expect("variable present");
        f.remove(at);
        Self(f)
    }
}

impl From<&ColoredPartition> for YMonomial {
    fn from(c: &ColoredPartition) -> Self {
        Self(c.entries().to_vec())
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let vars: Vec<String> = self.0.iter().map(|(n, i)| format!("y{n}_{i}")).collect();
        f.write_str(&vars.join("*"))
    }
}

/// Finite linear combination of [`YMonomial`]s; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPolynomial {
    order: u8,
    terms: BTreeMap<YMonomial, CycNumber>,
}

impl BPolynomial {
    pub fn zero(order: u8) -> Self {
        Self {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(order: u8, m: YMonomial, c: CycNumber) -> Self {
        let mut p = Self::zero(order);
        p.add_term(m, c);
        p
    }

    pub fn one(order: u8) -> Self {
        Self::monomial(order, YMonomial::one(), CycNumber::one(order))
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<YMonomial, CycNumber> {
        &self.terms
    }

    pub fn coeff(&self, m: &YMonomial) -> CycNumber {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(self.order))
    }

    pub fn add_term(&mut self, m: YMonomial, c: CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let mut out = Self::zero(self.order);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(YMonomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }
}

impl fmt::Display for BPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Shapovalov,
    Contravariant,
}

type MemoKey = (FormKind, YMonomial, YMonomial);

/// Type, root data and memo shared by every form evaluation on one type.
pub struct FormContext {
    ty: AffineType,
    root_data: FiniteRootData,
    order: u8,
    /// `A^(n)` for residues `n = 1, …, r`.
    a_matrices: Vec<AMatrix>,
    memo: DashMap<MemoKey, CycNumber>,
}

impl FormContext {
    pub fn new(ty: &AffineType) -> Self {
        Self::with_root_data(ty, ty.root_data())
    }

    pub fn with_root_data(ty: &AffineType, root_data: FiniteRootData) -> Self {
        let a_matrices = (1..=ty.r())
            .map(|n| a_matrix_with(ty, &root_data, n))
            .collect();
        Self {
            ty: ty.clone(),
            order: ty.r() as u8,
            root_data,
            a_matrices,
            memo: DashMap::new(),
        }
    }

    pub fn ty(&self) -> &AffineType {
        &self.ty
    }

    pub fn root_data(&self) -> &FiniteRootData {
        &self.root_data
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn colors(&self) -> Vec<(usize, u32)> {
        self.root_data.colors()
    }

    pub fn basis(&self, d: u32) -> Vec<ColoredPartition> {
        enumerate_colored(&self.colors(), d)
    }

    pub fn a_matrix(&self, n: u32) -> &AMatrix {
        let r = self.ty.r();
        &self.a_matrices[((n + r - 1) % r) as usize]
    }

    /// Coefficients of `z_n^(i) = Σ_j (d_i/d_j) a_ij^(n) y_n^(j)`, i.e. the
    /// rows of `D A^(n) D⁻¹` with `D = diag(d_j)`. This is the element whose
    /// `K`-pairings reproduce the `S`-pairings of `y_n^(i)`; it differs from
    /// `A^(n)` itself only when `I(n)` mixes periods, and has the same determinant.
    pub fn z_matrix(&self, n: u32) -> ExactMatrix {
        let a = self.a_matrix(n);
        let d: Vec<u32> = a.index_set.iter().map(|&i| self.root_data.d(i)).collect();
        ExactMatrix::from_fn(self.order, d.len(), d.len(), |p, q| {
            a.matrix
                .get(p, q)
                .scale(&Rational::new(BigInt::from(d[p]), BigInt::from(d[q])))
        })
    }

    fn position_in(&self, n: u32, color: usize) -> Option<usize> {
        self.a_matrix(n).index_set.iter().position(|&c| c == color)
    }

    /// Terms `(j, c)` of the adjoint of `y_n^(i)` up to the `d_i/n` factor.
    fn kernel(&self, kind: FormKind, n: u32, i: usize) -> Vec<(usize, CycNumber)> {
        match kind {
            FormKind::Contravariant => vec![(i, CycNumber::one(self.order))],
            FormKind::Shapovalov => {
                let a = self.a_matrix(n);
                let Some(p) = self.position_in(n, i) else {
                    return Vec::new();
                };
                a.index_set
                    .iter()
                    .zip(a.matrix.row(p))
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&j, c)| (j, c.clone()))
                    .collect()
            }
        }
    }

    /// Form value on a pair of monomials.
    pub fn pair(&self, kind: FormKind, left: &YMonomial, right: &YMonomial) -> CycNumber {
        self.pair_impl(kind, left, right, true)
    }

    /// Same recursion with no memo; used to cross-check the memoized path.
    pub fn pair_unmemoized(
        &self,
        kind: FormKind,
        left: &YMonomial,
        right: &YMonomial,
    ) -> CycNumber {
        self.pair_impl(kind, left, right, false)
    }

    fn pair_impl(
        &self,
        kind: FormKind,
        left: &YMonomial,
        right: &YMonomial,
        memo: bool,
    ) -> CycNumber {
        let zero = CycNumber::zero(self.order);
        if left.0.len() != right.0.len() {
            return zero;
        }
        if left.0.is_empty() {
            return CycNumber::one(self.order);
        }
        // every step removes one variable of equal degree from each side
        if left.0.iter().zip(&right.0).any(|(a, b)| a.0 != b.0) {
            return zero;
        }
        let key = (kind, left.clone(), right.clone());
        if memo {
            if let Some(v) = self.memo.get(&key) {
                return v.clone();
            }
        }
        let (n, i) = left.0[0];
        let rest = YMonomial(left.0[1..].to_vec());
        let mut acc = zero;
        for (j, a) in self.kernel(kind, n, i) {
            let count = right.count((n, j));
            if count == 0 {
                continue;
            }
            let inner = self.pair_impl(kind, &rest, &right.without((n, j)), memo);
            if inner.is_zero() {
                continue;
            }
            let coeff = a.scale(&Rational::from_integer(BigInt::from(count)));
            acc = &acc + &(&coeff * &inner);
        }
        let value = acc.scale(&Rational::new(
            BigInt::from(self.root_data.d(i)),
            BigInt::from(n),
        ));
        if memo {
            self.memo.insert(key, value.clone());
        }
        value
    }

    /// Bilinear extension of [`FormContext::pair`].
    pub fn form(&self, kind: FormKind, f: &BPolynomial, g: &BPolynomial) -> CycNumber {
        let mut acc = CycNumber::zero(self.order);
        for (m1, c1) in f.terms() {
            for (m2, c2) in g.terms() {
                if m1.degree() != m2.degree() {
                    continue;
                }
                let v = self.pair(kind, m1, m2);
                if !v.is_zero() {
                    acc = &acc + &(&(c1 * c2) * &v);
                }
            }
        }
        acc
    }

    pub fn form_s(&self, f: &BPolynomial, g: &BPolynomial) -> CycNumber {
        self.form(FormKind::Shapovalov, f, g)
    }

    pub fn form_k(&self, f: &BPolynomial, g: &BPolynomial) -> CycNumber {
        self.form(FormKind::Contravariant, f, g)
    }

    fn check_color(&self, n: u32, i: usize) -> Result<u32> {
        let d = *self
            .root_data
            .period
            .get(&i)
            .filter(|_| self.ty.index_set().contains(&i))
            .ok_or_else(|| Error::InvalidRootData(format!("{i} is not a color of {}", self.ty)))?;
        if n == 0 || !n.is_multiple_of(d) {
            return Err(Error::Divisibility {
                part: n,
                color: i,
                period: d,
            });
        }
        Ok(d)
    }

    /// `x_n^(i) = Σ_{k₁+2k₂+… = n/d_i} Π_j (y_{j·d_i}^(i))^{k_j} / k_j!`.
    pub fn x_in_y(&self, n: u32, i: usize) -> Result<BPolynomial> {
        let d = self.check_color(n, i)?;
        let mut out = BPolynomial::zero(self.order);
        for mu in crate::partitions::enumerate_partitions(n / d) {
            let mut denom = BigInt::one();
            for &k in mu.multiplicities().mult.values() {
                denom *= factorial(k);
            }
            let factors = mu.parts().iter().map(|&j| (j * d, i)).collect();
            out.add_term(
                YMonomial::new(factors),
                CycNumber::from_rational(self.order, Rational::new(BigInt::one(), denom)),
            );
        }
        Ok(out)
    }

    /// `x_λ^(i) = Π_t x_{λ_t}^(i_t)`.
    pub fn x_product(&self, c: &ColoredPartition) -> Result<BPolynomial> {
        c.entries()
            .iter()
            .try_fold(BPolynomial::one(self.order), |acc, &(n, i)| {
                Ok(acc.mul(&self.x_in_y(n, i)?))
            })
    }

    pub fn z_in_y(&self, n: u32, i: usize) -> Result<BPolynomial> {
        self.check_color(n, i)?;
        let z = self.z_matrix(n);
        let a = self.a_matrix(n);
        let p = self.position_in(n, i).expect("checked color");
        let mut out = BPolynomial::zero(self.order);
        for (q, &j) in a.index_set.iter().enumerate() {
            out.add_term(YMonomial(vec![(n, j)]), z.get(p, q).clone());
        }
        Ok(out)
    }

    /// `z_λ^(i) = Π_t z_{λ_t}^(i_t)`.
    pub fn z_product(&self, c: &ColoredPartition) -> Result<BPolynomial> {
        c.entries()
            .iter()
            .try_fold(BPolynomial::one(self.order), |acc, &(n, i)| {
                Ok(acc.mul(&self.z_in_y(n, i)?))
            })
    }

    /// `Q_λ = S^{r_s}(Z^(s)) ⊗ … ⊗ S^{r_1}(Z^(1))`, largest part first, where
    /// `Z^(n)` is [`FormContext::z_matrix`]; rows and columns follow `Ω(λ)`.
    pub fn q_block(&self, lambda: &Partition) -> ExactMatrix {
        let mut block = ExactMatrix::identity(self.order, 1);
        for (&n, &m) in lambda.multiplicities().mult.iter().rev() {
            let s = self
                .z_matrix(n)
                .sym_power(m as usize)
                .expect("square by construction");
            block = block.kron(&s).expect("same order");
        }
        block
    }

    /// `(P, Q)` with `x_a = Σ_b P_ab y_b` and `z_a = Σ_b Q_ab y_b` over the
    /// degree-`d` basis.
    pub fn transition_matrices(&self, d: u32) -> Result<(ExactMatrix, ExactMatrix)> {
        let basis = self.basis(d);
        let index = basis_index(&basis);
        let size = basis.len();
        let mut p = ExactMatrix::zeros(self.order, size, size);
        for (a, c) in basis.iter().enumerate() {
            for (m, coeff) in self.x_product(c)?.terms() {
                p.set(a, index[m], coeff.clone());
            }
        }
        let mut q = ExactMatrix::zeros(self.order, size, size);
        let mut offset = 0;
        while offset < size {
            let shape = basis[offset].shape();
            let block = self.q_block(&shape);
            for i in 0..block.rows() {
                debug_assert_eq!(basis[offset + i].shape(), shape);
                for j in 0..block.cols() {
                    q.set(offset + i, offset + j, block.get(i, j).clone());
                }
            }
            offset += block.rows();
        }
        Ok((p, q))
    }

    /// `(M, N)`: Gram matrices of `(.,.)_S` and `(.,.)_K` on the `x` basis.
    pub fn gram_matrices(&self, d: u32) -> Result<(ExactMatrix, ExactMatrix)> {
        let basis = self.basis(d);
        let xs: Vec<BPolynomial> = basis
            .iter()
            .map(|c| self.x_product(c))
            .collect::<Result<_>>()?;
        let gram = |kind: FormKind| {
            let rows: Vec<Vec<CycNumber>> = (0..xs.len())
                .into_par_iter()
                .map(|a| xs.iter().map(|xb| self.form(kind, &xs[a], xb)).collect())
                .collect();
            ExactMatrix::from_rows(self.order, rows)
        };
        Ok((gram(FormKind::Shapovalov)?, gram(FormKind::Contravariant)?))
    }

    /// `(y_λ, f)_S = (z_λ, f)_K` for every pair of basis monomials of degree `d`.
    pub fn y_z_adjointness_holds(&self, d: u32) -> Result<bool> {
        let basis = self.basis(d);
        for u in &basis {
            let z = self.z_product(u)?;
            let yu = YMonomial::from(u);
            for v in &basis {
                let f = BPolynomial::monomial(self.order, v.into(), CycNumber::one(self.order));
                if self.pair(FormKind::Shapovalov, &yu, &v.into()) != self.form_k(&z, &f) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn basis_index(basis: &[ColoredPartition]) -> HashMap<YMonomial, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(pos, c)| (YMonomial::from(c), pos))
        .collect()
}

/// Everything computed for one `(type, d)` verification.
#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub d: u32,
    pub basis: Vec<String>,
    pub m: ExactMatrix,
    pub n: ExactMatrix,
    pub p: ExactMatrix,
    pub q: ExactMatrix,
    pub det_m: CycNumber,
    pub det_n: CycNumber,
    #[serde(with = "crate::exact::decimal")]
    pub predicted_a: BigInt,
    #[serde(with = "crate::exact::decimal")]
    pub predicted_b: BigInt,
    #[serde(with = "crate::exact::decimal")]
    pub predicted_det: BigInt,
    pub identity_ok: bool,
    pub checks: Vec<Check>,
}

impl GramReport {
    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }

    pub fn factored_prediction(&self, t: &AffineType) -> String {
        format!(
            "{}^{} * {}^{}",
            t.alpha(),
            self.predicted_a,
            t.beta(),
            self.predicted_b
        )
    }
}

/// `α^a · β^b`.
pub fn predicted_determinant(t: &AffineType, a: &BigInt, b: &BigInt) -> BigInt {
    let exp = |x: &BigInt| u32::try_from(x).expect("exponent fits in u32");
    BigInt::from(t.alpha()).pow(exp(a)) * BigInt::from(t.beta()).pow(exp(b))
}

/// Builds `M`, `N`, `P`, `Q` at degree `d` and checks `det N = 1`,
/// `M = P Q P⁻¹ N`, and `det M = α^{a(d)} β^{b(d)}`. Failed checks are
/// recorded in the report rather than returned as errors.
pub fn verify(t: &AffineType, d: u32) -> Result<GramReport> {
    verify_with(&FormContext::new(t), d)
}

pub fn verify_with(ctx: &FormContext, d: u32) -> Result<GramReport> {
    let t = ctx.ty();
    let basis = ctx.basis(d);
    let (m, n) = ctx.gram_matrices(d)?;
    let (p, q) = ctx.transition_matrices(d)?;
    let det_m = m.det()?;
    let det_n = n.det()?;
    let identity = p
        .mul(&q)
        .and_then(|pq| pq.mul(&p.invert()?))
        .and_then(|x| x.mul(&n))?;
    let identity_ok = identity == m;
    let (a, b) = exponent_totals(t, d)?;
    let predicted_det = predicted_determinant(t, &a, &b);

    let mut checks: Vec<Check> = ctx
        .root_data()
        .consistency(t)
        .into_iter()
        .map(|(name, ok)| Check::flag(format!("root_data.{name}"), ok))
        .collect();
    checks.extend([
        Check::flag("M_integral", m.to_integers().is_some()),
        Check::flag("M_symmetric", m.is_symmetric()),
        Check::flag("N_integral", n.to_integers().is_some()),
        Check::new("det_N", 1, &det_n),
        Check::flag("M_eq_PQPinvN", identity_ok),
        Check::new("det_M", &predicted_det, &det_m),
    ]);
    if d <= 4 {
        let ok = ctx.y_z_adjointness_holds(d)?;
        checks.push(Check::flag("y_z_adjointness", ok));
    }
    Ok(GramReport {
        ty: t.to_string(),
        d,
        basis: basis.iter().map(ToString::to_string).collect(),
        m,
        n,
        p,
        q,
        det_m,
        det_n,
        predicted_a: a,
        predicted_b: b,
        predicted_det,
        identity_ok,
        checks,
    })
}
