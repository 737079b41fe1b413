//! Affine ADE types, their twisted finite root data and the matrices `A^(n)`.
//!
//! Node numbering follows the standard Kac numbering of the finite diagram
//! `X_N`, except for `E_6` under `E_6^(2)` (chain `1-2-3-5-6` with `4`
//! attached to `3`) and `A_{2ℓ}` under `A_{2ℓ}^(2)` (chain
//! `ℓ-1, …, 1, 0, ℓ+1, …, 2ℓ`). With these numberings the nodes of the
//! index set `I` are exactly one representative of each `μ`-orbit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{CycNumber, ExactMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        })
    }
}

/// The eight columns of the type table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Column {
    /// `A_ℓ^(1)`, ℓ ≥ 1
    AUntwisted,
    /// `D_ℓ^(1)`, ℓ ≥ 4
    DUntwisted,
    /// `E_ℓ^(1)`, ℓ ∈ {6, 7, 8}
    EUntwisted,
    /// `A_{2ℓ-1}^(2)`, ℓ ≥ 3
    AOddTwisted,
    /// `A_{2ℓ}^(2)`, ℓ ≥ 1
    AEvenTwisted,
    /// `D_{ℓ+1}^(2)`, ℓ ≥ 2
    DTwisted,
    /// `E_6^(2)`
    E6Twisted,
    /// `D_4^(3)`
    D4Triality,
}

/// A validated affine type `X_N^(r)` with its table constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineType {
    family: Family,
    rank: u32,
    r: u32,
    column: Column,
    ell: u32,
    k: u32,
    alpha: i64,
    beta: i64,
    a0: u32,
    epsilon: usize,
    index_set: Vec<usize>,
}

impl AffineType {
    pub fn new(family: Family, rank: u32, r: u32) -> Result<Self> {
        use Column::*;
        let unsupported = || Error::UnsupportedType(format!("{family}{rank}^{r}"));
        let (column, ell) = match (family, r) {
            (Family::A, 1) if rank >= 1 => (AUntwisted, rank),
            (Family::D, 1) if rank >= 4 => (DUntwisted, rank),
            (Family::E, 1) if (6..=8).contains(&rank) => (EUntwisted, rank),
            (Family::A, 2) if rank.is_multiple_of(2) && rank >= 2 => (AEvenTwisted, rank / 2),
            (Family::A, 2) if rank % 2 == 1 && rank >= 5 => (AOddTwisted, rank.div_ceil(2)),
            (Family::D, 2) if rank >= 3 => (DTwisted, rank - 1),
            (Family::E, 2) if rank == 6 => (E6Twisted, 4),
            (Family::D, 3) if rank == 4 => (D4Triality, 2),
            _ => return Err(unsupported()),
        };
        let l = i64::from(ell);
        let (k, alpha, beta) = match column {
            AUntwisted => (0, l + 1, 1),
            DUntwisted => (0, 4, 1),
            EUntwisted => (0, 9 - l, 1),
            AOddTwisted => (ell - 1, 2, l),
            AEvenTwisted => (ell, 1, 2 * l + 1),
            DTwisted => (1, 2, 2),
            E6Twisted => (2, 1, 3),
            D4Triality => (1, 1, 2),
        };
        let (a0, epsilon) = if column == AEvenTwisted {
            (2, ell as usize)
        } else {
            (1, 0)
        };
        let index_set = (0..=ell as usize).filter(|&i| i != epsilon).collect();
        Ok(Self {
            family,
            rank,
            r,
            column,
            ell,
            k,
            alpha,
            beta,
            a0,
            epsilon,
            index_set,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }
    /// Rank `N` of the finite diagram `X_N`.
    pub fn rank(&self) -> u32 {
        self.rank
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn column(&self) -> Column {
        self.column
    }
    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn alpha(&self) -> i64 {
        self.alpha
    }
    pub fn beta(&self) -> i64 {
        self.beta
    }
    pub fn a0(&self) -> u32 {
        self.a0
    }
    pub fn epsilon(&self) -> usize {
        self.epsilon
    }
    /// `I = {0, 1, …, ℓ} − {ε}` in increasing order.
    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    pub fn root_data(&self) -> FiniteRootData {
        finite_root_data(self)
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}^{}", self.family, self.rank, self.r)
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_type(s)
    }
}

/// Parses `<letter><N>^<r>`, e.g. `A4^2`, case-insensitively.
pub fn parse_type(s: &str) -> Result<AffineType> {
    let syntax = |reason: &str| Error::TypeSyntax {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let mut chars = t.chars();
    let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('D') => Family::D,
        Some('E') => Family::E,
        Some(_) => return Err(Error::UnsupportedType(t.to_string())),
        None => return Err(syntax("empty type string")),
    };
    let rest = chars.as_str();
    let (rank, r) = rest
        .split_once('^')
        .ok_or_else(|| syntax("expected <letter><N>^<r>"))?;
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    if !digits(rank) || !digits(r) {
        return Err(syntax("N and r must be positive integers"));
    }
    let rank: u32 = rank.parse().map_err(|_| syntax("N out of range"))?;
    let r: u32 = r.parse().map_err(|_| syntax("r out of range"))?;
    AffineType::new(family, rank, r)
}

/// Simple roots of `X_N` with the form `(.|.)'`, the twist `μ` and derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteRootData {
    /// Node labels; positions index `gram` and `mu`.
    pub nodes: Vec<usize>,
    /// `gram[p][q] = (α'_{nodes[p]} | α'_{nodes[q]})'`.
    pub gram: Vec<Vec<i64>>,
    /// `mu[p]` is the label of `μ(nodes[p])`.
    pub mu: Vec<usize>,
    /// `μ`-orbits of node labels, each sorted, ordered by smallest label.
    pub orbits: Vec<Vec<usize>>,
    /// `d_i = r / |orbit of i|` for every node label.
    pub period: BTreeMap<usize, u32>,
    /// `c_i` for `i ∈ I`.
    pub c: BTreeMap<usize, u32>,
    r: u32,
    index_set: Vec<usize>,
}

#[derive(Deserialize)]
struct RootDataFixture {
    nodes: Vec<usize>,
    gram: Vec<Vec<i64>>,
    mu: Vec<usize>,
}

impl FiniteRootData {
    /// Builds root data from explicit nodes, Gram matrix and twist. Only the
    /// shape is validated here; see [`FiniteRootData::consistency`] for the
    /// algebraic invariants.
    pub fn from_parts(
        t: &AffineType,
        nodes: Vec<usize>,
        gram: Vec<Vec<i64>>,
        mu: Vec<usize>,
    ) -> Result<Self> {
        let invalid = |m: String| Error::InvalidRootData(m);
        let n = nodes.len();
        let mut sorted = nodes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return Err(invalid("duplicate node labels".into()));
        }
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(invalid(format!("gram must be {n}x{n}")));
        }
        let mut image = mu.clone();
        image.sort_unstable();
        if mu.len() != n || image != sorted {
            return Err(invalid(
                "mu must be a permutation of the node labels".into(),
            ));
        }
        for i in t.index_set() {
            if !nodes.contains(i) {
                return Err(invalid(format!("index node {i} missing")));
            }
        }
        let pos: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(p, &l)| (l, p)).collect();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut period = BTreeMap::new();
        for &start in &sorted {
            if orbits.iter().any(|o| o.contains(&start)) {
                continue;
            }
            let mut orbit = vec![start];
            let mut cur = mu[pos[&start]];
            while cur != start {
                orbit.push(cur);
                cur = mu[pos[&cur]];
            }
            if !t.r().is_multiple_of(orbit.len() as u32) {
                return Err(invalid(format!(
                    "orbit of node {start} has size {}, which does not divide r = {}",
                    orbit.len(),
                    t.r()
                )));
            }
            let d = t.r() / orbit.len() as u32;
            orbit.sort_unstable();
            for &l in &orbit {
                period.insert(l, d);
            }
            orbits.push(orbit);
        }
        let c = t
            .index_set()
            .iter()
            .map(|&i| {
                let ci = if t.column() == Column::AEvenTwisted && i == 0 {
                    2
                } else {
                    1
                };
                (i, ci)
            })
            .collect();
        Ok(Self {
            nodes,
            gram,
            mu,
            orbits,
            period,
            c,
            r: t.r(),
            index_set: t.index_set().to_vec(),
        })
    }

    /// Reads `{"nodes": [...], "gram": [[...]], "mu": [...]}`; any other
    /// fields (such as the derived ones written by `info --format json`) are
    /// ignored and recomputed.
    pub fn from_json(t: &AffineType, json: &str) -> Result<Self> {
        let fx: RootDataFixture =
            serde_json::from_str(json).map_err(|e| Error::InvalidRootData(e.to_string()))?;
        Self::from_parts(t, fx.nodes, fx.gram, fx.mu)
    }

    pub fn position(&self, label: usize) -> usize {
        self.nodes
            .iter()
            .position(|&l| l == label)
            .unwrap_or_else(|| panic!("no node {label}"))
    }

    /// `(α'_i | α'_j)'` by label.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.gram[self.position(i)][self.position(j)]
    }

    /// `μ^k` applied to a node label.
    pub fn mu_pow(&self, label: usize, k: u32) -> usize {
        (0..k).fold(label, |l, _| self.mu[self.position(l)])
    }

    pub fn d(&self, label: usize) -> u32 {
        self.period[&label]
    }

    /// `(color, d_color)` for every `i ∈ I`, in the order of `I`.
    pub fn colors(&self) -> Vec<(usize, u32)> {
        self.index_set.iter().map(|&i| (i, self.d(i))).collect()
    }

    /// `I(n) = {i ∈ I : d_i | n}`.
    pub fn index_set_at(&self, n: u32) -> Vec<usize> {
        self.index_set
            .iter()
            .copied()
            .filter(|&i| n.is_multiple_of(self.d(i)))
            .collect()
    }

    pub fn gram_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_integers(1, &self.gram).expect("rectangular by construction")
    }

    /// Order of `μ` as a permutation.
    pub fn mu_order(&self) -> u32 {
        (1..=6)
            .find(|&k| self.nodes.iter().all(|&l| self.mu_pow(l, k) == l))
            .unwrap_or(0)
    }

    pub fn mu_is_isometry(&self) -> bool {
        self.nodes.iter().all(|&i| {
            self.nodes
                .iter()
                .all(|&j| self.pairing(self.mu_pow(i, 1), self.mu_pow(j, 1)) == self.pairing(i, j))
        })
    }

    /// Named algebraic invariants of the root data against the table row.
    pub fn consistency(&self, t: &AffineType) -> Vec<(&'static str, bool)> {
        let n = self.nodes.len();
        let symmetric = (0..n).all(|p| (0..n).all(|q| self.gram[p][q] == self.gram[q][p]));
        let diagonal = (0..n).all(|p| self.gram[p][p] == 2);
        let k = self.index_set.iter().filter(|&&i| self.d(i) == 1).count() as u32;
        let reps = self.orbits.len() == self.index_set.len()
            && self
                .orbits
                .iter()
                .all(|o| o.iter().filter(|l| self.index_set.contains(l)).count() == 1);
        let det = self.gram_matrix().det().ok().and_then(|d| d.to_integer());
        let expected = BigInt::from(t.alpha()) * BigInt::from(t.beta()).pow(t.r() - 1);
        vec![
            ("gram_symmetric", symmetric),
            ("gram_diagonal_two", diagonal),
            ("mu_isometry", self.mu_is_isometry()),
            ("mu_order_r", self.mu_order() == t.r()),
            ("index_set_orbit_representatives", reps),
            (
                "k_matches_table",
                if t.r() == 1 { t.k() == 0 } else { k == t.k() },
            ),
            ("det_gram_alpha_beta", det == Some(expected)),
        ]
    }
}

fn chain_edges(labels: &[usize]) -> Vec<(usize, usize)> {
    labels.windows(2).map(|w| (w[0], w[1])).collect()
}

fn build(
    t: &AffineType,
    nodes: Vec<usize>,
    edges: &[(usize, usize)],
    twist: &[(usize, usize)],
) -> FiniteRootData {
    let mut sorted = nodes;
    sorted.sort_unstable();
    let n = sorted.len();
    let pos = |l: usize| sorted.iter().position(|&x| x == l).expect("edge node");
    let mut gram = vec![vec![0i64; n]; n];
    for (p, row) in gram.iter_mut().enumerate() {
        row[p] = 2;
    }
    for &(a, b) in edges {
        gram[pos(a)][pos(b)] = -1;
        gram[pos(b)][pos(a)] = -1;
    }
    let mu = sorted
        .iter()
        .map(|&l| twist.iter().find(|(a, _)| *a == l).map_or(l, |&(_, b)| b))
        .collect();
    FiniteRootData::from_parts(t, sorted, gram, mu).expect("built-in root data is well formed")
}

/// Root data of `X_N` in the numbering described at the top of this module.
pub fn finite_root_data(t: &AffineType) -> FiniteRootData {
    use Column::*;
    let l = t.ell() as usize;
    match t.column() {
        AUntwisted => {
            let nodes: Vec<usize> = (1..=l).collect();
            build(t, nodes.clone(), &chain_edges(&nodes), &[])
        }
        DUntwisted => {
            let nodes: Vec<usize> = (1..=l).collect();
            let mut edges = chain_edges(&nodes[..l - 1]);
            edges.push((l - 2, l));
            build(t, nodes, &edges, &[])
        }
        EUntwisted => {
            let nodes: Vec<usize> = (1..=l).collect();
            let mut edges = chain_edges(&nodes[..l - 1]);
            edges.push((l - 3, l));
            build(t, nodes, &edges, &[])
        }
        AOddTwisted => {
            let nodes: Vec<usize> = (1..2 * l).collect();
            let twist: Vec<_> = nodes.iter().map(|&i| (i, 2 * l - i)).collect();
            build(t, nodes.clone(), &chain_edges(&nodes), &twist)
        }
        AEvenTwisted => {
            let chain: Vec<usize> = (0..l).rev().chain(l + 1..=2 * l).collect();
            let mut twist = Vec::new();
            for i in 0..l {
                twist.push((i, l + 1 + i));
                twist.push((l + 1 + i, i));
            }
            build(t, chain.clone(), &chain_edges(&chain), &twist)
        }
        DTwisted => {
            let nodes: Vec<usize> = (1..=l + 1).collect();
            let mut edges = chain_edges(&nodes[..l - 1]);
            edges.push((l - 1, l));
            edges.push((l - 1, l + 1));
            build(t, nodes, &edges, &[(l, l + 1), (l + 1, l)])
        }
        E6Twisted => build(
            t,
            (1..=6).collect(),
            &[(1, 2), (2, 3), (3, 5), (5, 6), (3, 4)],
            &[(1, 6), (6, 1), (2, 5), (5, 2)],
        ),
        D4Triality => build(
            t,
            (1..=4).collect(),
            &[(1, 2), (2, 3), (2, 4)],
            &[(1, 3), (3, 4), (4, 1)],
        ),
    }
}

/// `A^(n)` restricted to `I(n)`, over `ℚ(ζ_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AMatrix {
    pub n: u32,
    pub index_set: Vec<usize>,
    pub matrix: ExactMatrix,
}

impl AMatrix {
    pub fn det(&self) -> CycNumber {
        self.matrix.det().expect("A^(n) is square")
    }
}

/// `a_{ij}^(n) = (1/d_i) (α'_i | Σ_{k<r} ζ^{nk} μ^k α'_j)'` with `ζ = ω^{a₀}`
/// a primitive `r`-th root of unity; `i, j` range over `I(n)`.
pub fn a_matrix(t: &AffineType, n: u32) -> AMatrix {
    a_matrix_with(t, &finite_root_data(t), n)
}

pub fn a_matrix_with(t: &AffineType, rd: &FiniteRootData, n: u32) -> AMatrix {
    let order = t.r() as u8;
    let index_set = rd.index_set_at(n);
    let matrix = ExactMatrix::from_fn(order, index_set.len(), index_set.len(), |p, q| {
        let (i, j) = (index_set[p], index_set[q]);
        let mut acc = CycNumber::zero(order);
        for k in 0..t.r() {
            let pairing = rd.pairing(i, rd.mu_pow(j, k));
            if pairing != 0 {
                let root = CycNumber::zeta_pow(order, i64::from(n) * i64::from(k));
                acc = &acc + &root.scale(&Rational::from_integer(pairing.into()));
            }
        }
        acc.scale(&Rational::new(BigInt::one(), BigInt::from(rd.d(i))))
    });
    AMatrix {
        n,
        index_set,
        matrix,
    }
}

/// `det A^(n)`, checked against `α` (when `r | n`) or `β` (otherwise).
pub fn det_a(t: &AffineType, n: u32) -> Result<i64> {
    let det = a_matrix(t, n).det();
    let value = det
        .to_integer()
        .and_then(|v| v.to_i64())
        .ok_or_else(|| Error::NotInteger(det.to_string()))?;
    let expected = if n.is_multiple_of(t.r()) {
        t.alpha()
    } else {
        t.beta()
    };
    if value != expected {
        return Err(Error::DeterminantMismatch {
            ty: t.to_string(),
            n,
            expected,
            computed: det.to_string(),
        });
    }
    Ok(value)
}
