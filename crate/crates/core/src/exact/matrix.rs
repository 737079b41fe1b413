//! Dense matrices over `ℚ(ζ_r)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{CycNumber, Rational};
use crate::error::{Error, Result};

/// Row-major dense matrix; every entry lives in the same field `ℚ(ζ_order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    order: u8,
    data: Vec<CycNumber>,
}

impl ExactMatrix {
    pub fn zeros(order: u8, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            order,
            data: vec![CycNumber::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u8, n: usize) -> Self {
        let mut m = Self::zeros(order, n, n);
        for i in 0..n {
            m.set(i, i, CycNumber::one(order));
        }
        m
    }

    pub fn from_rows(order: u8, rows: Vec<Vec<CycNumber>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for x in row {
                if x.order() != order {
                    return Err(Error::OrderMismatch {
                        left: order,
                        right: x.order(),
                    });
                }
                data.push(x);
            }
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            order,
            data,
        })
    }

    pub fn from_integers(order: u8, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            order,
            rows.iter()
                .map(|r| r.iter().map(|&x| CycNumber::from_int(order, x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(
        order: u8,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycNumber,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.order(), order, "entry ({i},{j}) has wrong order");
                data.push(x);
            }
        }
        Self {
            rows,
            cols,
            order,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycNumber) {
        assert_eq!(x.order(), self.order);
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[CycNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// All entries as rational integers, if they are.
    pub fn to_integers(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(CycNumber::to_integer).collect())
            .collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_order(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.row(k).iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Bareiss elimination with row pivoting. Every division
    /// is exact in the field, and the result does not depend on pivot choice.
    pub fn det(&self) -> Result<CycNumber> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(CycNumber::one(self.order));
        }
        let mut a: Vec<Vec<CycNumber>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = CycNumber::one(self.order);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(CycNumber::zero(self.order)),
                }
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in bottom.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let num = &(&row[j] * pivot) - &(&lead * &pivot_row[j]);
                    row[j] = num.checked_div(&prev)?;
                }
                row[k] = CycNumber::zero(self.order);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a: Vec<Vec<CycNumber>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<CycNumber>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            CycNumber::one(self.order)
                        } else {
                            CycNumber::zero(self.order)
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&i| !a[i][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let scale = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &scale;
                inv[col][j] = &inv[col][j] * &scale;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[col][j]);
                    }
                    if !inv[col][j].is_zero() {
                        inv[i][j] = &inv[i][j] - &(&f * &inv[col][j]);
                    }
                }
            }
        }
        Self::from_rows(self.order, inv)
    }

    /// Kronecker product; entry `(ia·m + ib, ja·m' + jb)` is `a[ia][ja]·b[ib][jb]`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.require_order(other)?;
        let (m, mc) = (other.rows, other.cols);
        Ok(Self::from_fn(
            self.order,
            self.rows * m,
            self.cols * mc,
            |i, j| {
                let a = self.get(i / m, j / mc);
                if a.is_zero() {
                    return CycNumber::zero(self.order);
                }
                a * other.get(i % m, j % mc)
            },
        ))
    }

    /// Matrix of the map induced on degree-`k` monomials by `v_i ↦ Σ_j m[i][j] v_j`.
    ///
    /// Rows and columns are indexed by weakly increasing index tuples in
    /// lexicographic order (see [`monomial_basis`]); row `I` holds the expansion
    /// of `Π_t (Σ_j m[i_t][j] v_j)` in that basis.
    pub fn sym_power(&self, k: usize) -> Result<Self> {
        self.require_square()?;
        let basis = monomial_basis(self.rows, k);
        let index: HashMap<&[usize], usize> = basis
            .iter()
            .enumerate()
            .map(|(pos, t)| (t.as_slice(), pos))
            .collect();
        let mut out = Self::zeros(self.order, basis.len(), basis.len());
        for (row, tuple) in basis.iter().enumerate() {
            let mut poly: BTreeMap<Vec<usize>, CycNumber> = BTreeMap::new();
            poly.insert(Vec::new(), CycNumber::one(self.order));
            for &i in tuple {
                let mut next: BTreeMap<Vec<usize>, CycNumber> = BTreeMap::new();
                for (mono, c) in &poly {
                    for (j, a) in self.row(i).iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let mut m = mono.clone();
                        let at = m.partition_point(|&x| x <= j);
                        m.insert(at, j);
                        let term = c * a;
                        next.entry(m)
                            .and_modify(|e| *e = &*e + &term)
                            .or_insert(term);
                    }
                }
                poly = next;
            }
            for (mono, c) in poly {
                out.set(row, index[mono.as_slice()], c);
            }
        }
        Ok(out)
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().map(|x| x.scale(q)).collect(),
        }
    }
}

/// Weakly increasing tuples of length `k` over `0..n`, in lexicographic order.
pub fn monomial_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            go(n, k, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_string_rows();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}
