//! Reductive groups, their modules, and torus weight data.
//!
//! Every classical factor is realized by explicit rational matrices in a
//! basis of root vectors plus a diagonal Cartan subalgebra, so torus weights
//! can be read off the diagonals of the Cartan generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{int, Rational};
use crate::linalg::{span_coordinates, QMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid group factor: {0}")]
    InvalidGroup(String),
    #[error("{irrep} is not available for factor {factor}")]
    InvalidPairing { factor: String, irrep: String },
    #[error("group factor index {0} out of range")]
    FactorIndex(usize),
    #[error("weight {weight:?} has length {len}, torus rank is {rank}")]
    WeightLength { weight: Vec<i64>, len: usize, rank: usize },
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("modules belong to different groups")]
    GroupMismatch,
    #[error("weight multiset is not symmetric under negation")]
    AsymmetricWeights,
    #[error("zero weight has odd multiplicity {0}")]
    OddZeroMultiplicity(usize),
}

/// One simple or toral factor of a connected reductive group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupFactor {
    Torus {
        rank: usize,
    },
    /// `SL(n)`.
    Sl {
        n: usize,
    },
    /// `SO(n)` in split form.
    So {
        n: usize,
    },
    /// `Sp(2n)`; `n` is half the size of the defining matrices.
    Sp {
        n: usize,
    },
}

impl GroupFactor {
    pub fn validate(&self) -> Result<(), ModelError> {
        let ok = match *self {
            GroupFactor::Torus { rank } => rank >= 1,
            GroupFactor::Sl { n } | GroupFactor::So { n } => n >= 2,
            GroupFactor::Sp { n } => n >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(ModelError::InvalidGroup(self.to_string()))
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            GroupFactor::Torus { rank } => rank,
            GroupFactor::Sl { n } => n * n - 1,
            GroupFactor::So { n } => n * (n - 1) / 2,
            GroupFactor::Sp { n } => 2 * n * n + n,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            GroupFactor::Torus { rank } => rank,
            GroupFactor::Sl { n } => n - 1,
            GroupFactor::So { n } => n / 2,
            GroupFactor::Sp { n } => n,
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, GroupFactor::Torus { .. })
    }

    /// Dimension of a maximal unipotent subgroup.
    pub fn unipotent_dim(&self) -> usize {
        (self.dim() - self.rank()) / 2
    }

    /// Defining matrices: Lie basis plus the indices of the Cartan elements.
    fn lie_algebra(&self) -> (Vec<QMatrix>, Vec<usize>) {
        match *self {
            GroupFactor::Torus { rank } => ((0..rank).map(|_| QMatrix::zeros(1, 1)).collect(), (0..rank).collect()),
            GroupFactor::Sl { n } => sl_basis(n),
            GroupFactor::So { n } => so_basis(n),
            GroupFactor::Sp { n } => sp_basis(n),
        }
    }
}

impl fmt::Display for GroupFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupFactor::Torus { rank } => write!(f, "T{rank}"),
            GroupFactor::Sl { n } => write!(f, "SL{n}"),
            GroupFactor::So { n } => write!(f, "SO{n}"),
            GroupFactor::Sp { n } => write!(f, "Sp{}", 2 * n),
        }
    }
}

fn sl_basis(n: usize) -> (Vec<QMatrix>, Vec<usize>) {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(QMatrix::unit(n, i, j));
            }
        }
    }
    let start = basis.len();
    for i in 0..n - 1 {
        basis.push(QMatrix::unit(n, i, i).sub(&QMatrix::unit(n, i + 1, i + 1)));
    }
    let cartan = (start..basis.len()).collect();
    (basis, cartan)
}

/// `so(n)` preserving the antidiagonal form: spanned by `E_ij − E_{j'i'}`
/// where `i' = n − 1 − i`.
fn so_basis(n: usize) -> (Vec<QMatrix>, Vec<usize>) {
    let bar = |i: usize| n - 1 - i;
    let l = n / 2;
    let mut basis = Vec::new();
    let mut cartan = Vec::new();
    for i in 0..l {
        cartan.push(basis.len());
        basis.push(QMatrix::unit(n, i, i).sub(&QMatrix::unit(n, bar(i), bar(i))));
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || i + j == n - 1 {
                continue;
            }
            // (i, j) and (j', i') give the same element up to sign
            if (i, j) > (bar(j), bar(i)) {
                continue;
            }
            basis.push(QMatrix::unit(n, i, j).sub(&QMatrix::unit(n, bar(j), bar(i))));
        }
    }
    (basis, cartan)
}

/// `sp(2n)` preserving `[[0, I], [−I, 0]]`.
fn sp_basis(n: usize) -> (Vec<QMatrix>, Vec<usize>) {
    let d = 2 * n;
    let mut basis = Vec::new();
    let mut cartan = Vec::new();
    for i in 0..n {
        cartan.push(basis.len());
        basis.push(QMatrix::unit(d, i, i).sub(&QMatrix::unit(d, n + i, n + i)));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(QMatrix::unit(d, i, j).sub(&QMatrix::unit(d, n + j, n + i)));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let upper = if i == j {
                QMatrix::unit(d, i, n + i)
            } else {
                QMatrix::unit(d, i, n + j).add(&QMatrix::unit(d, j, n + i))
            };
            let lower = if i == j {
                QMatrix::unit(d, n + i, i)
            } else {
                QMatrix::unit(d, n + i, j).add(&QMatrix::unit(d, n + j, i))
            };
            basis.push(upper);
            basis.push(lower);
        }
    }
    (basis, cartan)
}

/// A connected reductive group as a product of factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub factors: Vec<GroupFactor>,
}

impl GroupDescriptor {
    pub fn new(factors: Vec<GroupFactor>) -> Result<Self, ModelError> {
        if factors.is_empty() {
            return Err(ModelError::InvalidGroup("no factors".into()));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(GroupDescriptor { factors })
    }

    pub fn torus(rank: usize) -> Self {
        GroupDescriptor::new(vec![GroupFactor::Torus { rank }]).expect("valid torus")
    }

    pub fn sl(n: usize) -> Self {
        GroupDescriptor::new(vec![GroupFactor::Sl { n }]).expect("valid SL")
    }

    pub fn so(n: usize) -> Self {
        GroupDescriptor::new(vec![GroupFactor::So { n }]).expect("valid SO")
    }

    pub fn sp(n: usize) -> Self {
        GroupDescriptor::new(vec![GroupFactor::Sp { n }]).expect("valid Sp")
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(GroupFactor::dim).sum()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(GroupFactor::rank).sum()
    }

    pub fn is_torus(&self) -> bool {
        self.factors.iter().all(GroupFactor::is_torus)
    }

    pub fn unipotent_dim(&self) -> usize {
        self.factors.iter().map(GroupFactor::unipotent_dim).sum()
    }

    /// Offsets of each factor in the Lie basis and in torus coordinates.
    fn offsets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.factors.len());
        let (mut b, mut t) = (0, 0);
        for f in &self.factors {
            out.push((b, t));
            b += f.dim();
            t += f.rank();
        }
        out
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Built-in irreducible building blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Irrep {
    /// Defining representation of a classical factor.
    Standard,
    /// Adjoint representation of the factor.
    Adjoint,
    /// One-dimensional trivial representation.
    Trivial,
    /// Explicit weights of a torus factor, one row per basis vector.
    Weights { weights: Vec<Vec<i64>> },
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrep::Standard => write!(f, "standard"),
            Irrep::Adjoint => write!(f, "adjoint"),
            Irrep::Trivial => write!(f, "trivial"),
            Irrep::Weights { weights } => write!(f, "weights {weights:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summand {
    /// Index of the group factor acting on this summand.
    #[serde(default)]
    pub factor: usize,
    pub irrep: Irrep,
    #[serde(default = "one")]
    pub multiplicity: usize,
    #[serde(default)]
    pub dual: bool,
}

fn one() -> usize {
    1
}

impl Summand {
    pub fn new(factor: usize, irrep: Irrep, multiplicity: usize) -> Self {
        Summand {
            factor,
            irrep,
            multiplicity,
            dual: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ModuleDescriptor {
    pub summands: Vec<Summand>,
}

/// Torus weights of a module, one vector per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightData {
    pub torus_rank: usize,
    pub weights: Vec<Vec<i64>>,
}

impl WeightData {
    pub fn new(torus_rank: usize, weights: Vec<Vec<i64>>) -> Result<Self, ModelError> {
        for w in &weights {
            if w.len() != torus_rank {
                return Err(ModelError::WeightLength {
                    weight: w.clone(),
                    len: w.len(),
                    rank: torus_rank,
                });
            }
        }
        Ok(WeightData { torus_rank, weights })
    }

    /// Rank-one weights from a list of integers.
    pub fn rank_one(ws: &[i64]) -> Self {
        WeightData {
            torus_rank: 1,
            weights: ws.iter().map(|&w| vec![w]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Dimension of the fixed space `V^T`, the multiplicity of the zero weight.
    pub fn dim_fixed(&self) -> usize {
        self.weights.iter().filter(|w| w.iter().all(|&x| x == 0)).count()
    }

    pub fn nonzero(&self) -> WeightData {
        WeightData {
            torus_rank: self.torus_rank,
            weights: self
                .weights
                .iter()
                .filter(|w| w.iter().any(|&x| x != 0))
                .cloned()
                .collect(),
        }
    }

    pub fn negated(&self) -> WeightData {
        WeightData {
            torus_rank: self.torus_rank,
            weights: self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn concat(&self, other: &WeightData) -> WeightData {
        assert_eq!(self.torus_rank, other.torus_rank);
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        WeightData {
            torus_rank: self.torus_rank,
            weights,
        }
    }

    /// Weights of `V ⊕ V*`.
    pub fn with_dual(&self) -> WeightData {
        self.concat(&self.negated())
    }

    /// Multiplicity of each distinct weight.
    pub fn counts(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Sorted copy, the canonical form of the multiset.
    pub fn sorted(&self) -> WeightData {
        let mut weights = self.weights.clone();
        weights.sort();
        WeightData {
            torus_rank: self.torus_rank,
            weights,
        }
    }

    pub fn same_multiset(&self, other: &WeightData) -> bool {
        self.torus_rank == other.torus_rank && self.counts() == other.counts()
    }

    /// Weights as rational row vectors.
    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.weights
            .iter()
            .map(|w| w.iter().map(|&x| int(x)).collect())
            .collect()
    }

    /// Rank of the lattice spanned by the weights.
    pub fn rank(&self) -> usize {
        crate::linalg::rank_of_vectors(&self.rational_rows())
    }
}

/// Whether the weight multiset is invariant under negation.
///
/// Necessary for a module to be orthogonal; for torus modules it is also
/// sufficient.
pub fn is_orthogonal(w: &WeightData) -> bool {
    w.same_multiset(&w.negated())
}

/// All Lagrangian torus submodules `W'` of `U` with `U ≅ W' ⊕ W'*`.
///
/// For every pair `{λ, −λ}` of multiplicity `c` one picks `j` copies of `λ`
/// and `c − j` of `−λ`; half of the zero weights are kept.
pub fn lagrangian_choices(u: &WeightData) -> Result<Vec<WeightData>, ModelError> {
    if !is_orthogonal(u) {
        return Err(ModelError::AsymmetricWeights);
    }
    let zero = u.dim_fixed();
    if zero % 2 == 1 {
        return Err(ModelError::OddZeroMultiplicity(zero));
    }
    let counts = u.nonzero().counts();
    // one representative per ± class: the lexicographically larger one
    let classes: Vec<(Vec<i64>, usize)> = counts
        .iter()
        .filter(|(w, _)| {
            let neg: Vec<i64> = w.iter().map(|x| -x).collect();
            **w > neg
        })
        .map(|(w, &c)| (w.clone(), c))
        .collect();
    let mut out: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; u.torus_rank]; zero / 2]];
    for (w, c) in &classes {
        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(out.len() * (c + 1));
        for partial in &out {
            for j in 0..=*c {
                let mut choice = partial.clone();
                choice.extend(std::iter::repeat_n(w.clone(), j));
                choice.extend(std::iter::repeat_n(neg.clone(), c - j));
                next.push(choice);
            }
        }
        out = next;
    }
    let mut result: Vec<WeightData> = out
        .into_iter()
        .map(|weights| {
            WeightData {
                torus_rank: u.torus_rank,
                weights,
            }
            .sorted()
        })
        .collect();
    result.sort_by(|a, b| a.weights.cmp(&b.weights));
    result.dedup();
    Ok(result)
}

/// A group acting on a module by explicit Lie algebra matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepAction {
    pub group: GroupDescriptor,
    pub dim_v: usize,
    /// Action matrices of the Lie basis, one per basis element of the Lie algebra.
    pub lie_basis: Vec<QMatrix>,
    /// Lie basis indices of the Cartan generators, in torus coordinate order.
    pub torus_indices: Vec<usize>,
    pub weight_data: WeightData,
}

/// Lie algebra basis of the whole group, with the Cartan indices.
pub fn group_lie_basis(g: &GroupDescriptor) -> (Vec<Vec<QMatrix>>, Vec<usize>) {
    let mut per_factor = Vec::new();
    let mut cartan = Vec::new();
    for (f, (boff, _)) in g.factors.iter().zip(g.offsets()) {
        let (basis, c) = f.lie_algebra();
        cartan.extend(c.into_iter().map(|i| i + boff));
        per_factor.push(basis);
    }
    (per_factor, cartan)
}

/// Matrices of the adjoint action of a Lie basis on itself.
pub fn adjoint_matrices(basis: &[QMatrix]) -> Vec<QMatrix> {
    let d = basis.len();
    basis
        .iter()
        .map(|a| {
            let mut m = QMatrix::zeros(d, d);
            for (j, b) in basis.iter().enumerate() {
                let coords = span_coordinates(basis, &a.commutator(b)).expect("Lie algebra is closed under brackets");
                for (i, c) in coords.into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            m
        })
        .collect()
}

/// Nonzero weights of the adjoint representation in torus coordinates.
pub fn roots(g: &GroupDescriptor) -> Vec<Vec<i64>> {
    let t = g.rank();
    let mut out = Vec::new();
    for (f, (_, toff)) in g.factors.iter().zip(g.offsets()) {
        if f.is_torus() {
            continue;
        }
        let (basis, cartan) = f.lie_algebra();
        let ad = adjoint_matrices(&basis);
        for i in 0..basis.len() {
            let mut w = vec![0i64; t];
            for (k, &c) in cartan.iter().enumerate() {
                let v = ad[c].get(i, i);
                w[toff + k] = i64::try_from(v.to_integer()).expect("small root");
            }
            if w.iter().any(|&x| x != 0) {
                out.push(w);
            }
        }
    }
    out
}

/// Matrices of one summand copy acting through its own factor.
fn summand_matrices(factor: &GroupFactor, irrep: &Irrep) -> Result<Vec<QMatrix>, ModelError> {
    let bad = || ModelError::InvalidPairing {
        factor: factor.to_string(),
        irrep: irrep.to_string(),
    };
    match (factor, irrep) {
        (_, Irrep::Trivial) => Ok((0..factor.dim()).map(|_| QMatrix::zeros(1, 1)).collect()),
        (GroupFactor::Torus { rank }, Irrep::Weights { weights }) => {
            for w in weights {
                if w.len() != *rank {
                    return Err(ModelError::WeightLength {
                        weight: w.clone(),
                        len: w.len(),
                        rank: *rank,
                    });
                }
            }
            if weights.is_empty() {
                return Err(bad());
            }
            let d = weights.len();
            Ok((0..*rank)
                .map(|k| {
                    let mut m = QMatrix::zeros(d, d);
                    for (i, w) in weights.iter().enumerate() {
                        m.set(i, i, int(w[k]));
                    }
                    m
                })
                .collect())
        }
        (GroupFactor::Torus { rank }, Irrep::Adjoint) => Ok((0..*rank).map(|_| QMatrix::zeros(*rank, *rank)).collect()),
        (GroupFactor::Torus { .. }, Irrep::Standard) => Err(bad()),
        (_, Irrep::Weights { .. }) => Err(bad()),
        (_, Irrep::Standard) => Ok(factor.lie_algebra().0),
        (_, Irrep::Adjoint) => Ok(adjoint_matrices(&factor.lie_algebra().0)),
    }
}

/// Builds explicit action matrices and weight data for a module.
pub fn build_action(g: &GroupDescriptor, m: &ModuleDescriptor) -> Result<RepAction, ModelError> {
    for f in &g.factors {
        f.validate()?;
    }
    let dim_g = g.dim();
    let offsets = g.offsets();
    let (_, cartan) = group_lie_basis(g);
    let mut action = RepAction {
        group: g.clone(),
        dim_v: 0,
        lie_basis: vec![QMatrix::zeros(0, 0); dim_g],
        torus_indices: cartan,
        weight_data: WeightData {
            torus_rank: g.rank(),
            weights: Vec::new(),
        },
    };
    for s in &m.summands {
        if s.multiplicity == 0 {
            return Err(ModelError::ZeroMultiplicity);
        }
        let factor = g.factors.get(s.factor).ok_or(ModelError::FactorIndex(s.factor))?;
        let (boff, _) = offsets[s.factor];
        let mut mats = summand_matrices(factor, &s.irrep)?;
        if s.dual {
            mats = mats.iter().map(|a| a.transpose().neg()).collect();
        }
        let d = mats[0].nrows();
        let mut full: Vec<QMatrix> = vec![QMatrix::zeros(d, d); dim_g];
        for (k, a) in mats.into_iter().enumerate() {
            full[boff + k] = a;
        }
        let piece = action_from_matrices(g, full, action.torus_indices.clone());
        for _ in 0..s.multiplicity {
            action = direct_sum(&action, &piece)?;
        }
    }
    Ok(action)
}

/// Wraps explicit matrices, reading weights off the Cartan diagonals.
fn action_from_matrices(g: &GroupDescriptor, lie_basis: Vec<QMatrix>, torus_indices: Vec<usize>) -> RepAction {
    let dim_v = lie_basis.first().map_or(0, QMatrix::nrows);
    let weights = (0..dim_v)
        .map(|i| {
            torus_indices
                .iter()
                .map(|&t| {
                    let v = lie_basis[t].get(i, i);
                    assert!(v.is_integer(), "Cartan eigenvalues are integral");
                    i64::try_from(v.to_integer()).expect("small weight")
                })
                .collect()
        })
        .collect();
    RepAction {
        group: g.clone(),
        dim_v,
        lie_basis,
        torus_indices,
        weight_data: WeightData {
            torus_rank: g.rank(),
            weights,
        },
    }
}

/// The dual module, acting by negative transposes.
pub fn dual(a: &RepAction) -> RepAction {
    RepAction {
        group: a.group.clone(),
        dim_v: a.dim_v,
        lie_basis: a.lie_basis.iter().map(|m| m.transpose().neg()).collect(),
        torus_indices: a.torus_indices.clone(),
        weight_data: a.weight_data.negated(),
    }
}

/// Block-diagonal direct sum of two modules of the same group.
pub fn direct_sum(a: &RepAction, b: &RepAction) -> Result<RepAction, ModelError> {
    if a.group != b.group {
        return Err(ModelError::GroupMismatch);
    }
    Ok(RepAction {
        group: a.group.clone(),
        dim_v: a.dim_v + b.dim_v,
        lie_basis: a
            .lie_basis
            .iter()
            .zip(&b.lie_basis)
            .map(|(x, y)| x.block_diag(y))
            .collect(),
        torus_indices: a.torus_indices.clone(),
        weight_data: a.weight_data.concat(&b.weight_data),
    })
}

impl RepAction {
    pub fn dim_g(&self) -> usize {
        self.lie_basis.len()
    }

    /// True when every bracket of two action matrices lies in their span.
    pub fn check_closure(&self) -> bool {
        let basis: Vec<QMatrix> = self.lie_basis.iter().filter(|m| !m.is_zero()).cloned().collect();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                if span_coordinates(&basis, &a.commutator(b)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// True when the Cartan generators are diagonal with the recorded weights.
    pub fn check_weights(&self) -> bool {
        self.weight_data.dim() == self.dim_v
            && self.torus_indices.iter().enumerate().all(|(k, &t)| {
                let m = &self.lie_basis[t];
                m.is_diagonal() && (0..self.dim_v).all(|i| *m.get(i, i) == int(self.weight_data.weights[i][k]))
            })
    }

    /// Structure constants `[X_a, X_b] = Σ_c C[a][b][c] X_c` of the group's Lie algebra.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rational>>> {
        let (per_factor, _) = group_lie_basis(&self.group);
        let mut flat: Vec<(usize, QMatrix)> = Vec::new();
        for (f, basis) in per_factor.into_iter().enumerate() {
            for m in basis {
                flat.push((f, m));
            }
        }
        let d = flat.len();
        let mut out = vec![vec![vec![Rational::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let (fa, ma) = &flat[a];
                let (fb, mb) = &flat[b];
                if fa != fb {
                    continue;
                }
                let idx: Vec<usize> = (0..d).filter(|&k| flat[k].0 == *fa).collect();
                let local: Vec<QMatrix> = idx.iter().map(|&k| flat[k].1.clone()).collect();
                let coords = span_coordinates(&local, &ma.commutator(mb)).expect("closed bracket");
                for (k, c) in idx.into_iter().zip(coords) {
                    out[a][b][k] = c;
                }
            }
        }
        out
    }

    /// `SO(3)` on `k` copies of `C^3` by real skew-symmetric generators.
    ///
    /// Its moment map is the cross product `v × ξ`. The Cartan generator is
    /// not diagonal in this basis, so the weight data is that of the
    /// isomorphic split-form module.
    pub fn so3_euclidean(copies: usize) -> RepAction {
        let l = |i: usize, j: usize| QMatrix::unit(3, i, j).sub(&QMatrix::unit(3, j, i));
        // L_x, L_y, L_z with (L_a)_{bc} = -ε_{abc}
        let single = vec![l(2, 1), l(0, 2), l(1, 0)];
        let mut lie_basis = single.clone();
        for _ in 1..copies {
            lie_basis = lie_basis.iter().zip(&single).map(|(a, b)| a.block_diag(b)).collect();
        }
        RepAction {
            group: GroupDescriptor::so(3),
            dim_v: 3 * copies,
            lie_basis,
            torus_indices: vec![2],
            weight_data: WeightData::rank_one(&[1, 0, -1].repeat(copies)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(summands: Vec<Summand>) -> ModuleDescriptor {
        ModuleDescriptor { summands }
    }

    #[test]
    fn dimensions_of_classical_groups() {
        assert_eq!(GroupDescriptor::sl(3).dim(), 8);
        assert_eq!(GroupDescriptor::so(5).dim(), 10);
        assert_eq!(GroupDescriptor::so(4).rank(), 2);
        assert_eq!(GroupDescriptor::sp(2).dim(), 10);
        assert_eq!(GroupDescriptor::sl(2).unipotent_dim(), 1);
        assert!(GroupDescriptor::new(vec![GroupFactor::Sl { n: 1 }]).is_err());
        for g in [
            GroupDescriptor::sl(3),
            GroupDescriptor::so(4),
            GroupDescriptor::so(5),
            GroupDescriptor::sp(2),
        ] {
            let (basis, _) = group_lie_basis(&g);
            assert_eq!(basis[0].len(), g.dim());
        }
    }

    #[test]
    fn torus_weights_become_diagonal_matrices() {
        let g = GroupDescriptor::torus(1);
        let a = build_action(
            &g,
            &module(vec![Summand::new(
                0,
                Irrep::Weights {
                    weights: vec![vec![1], vec![-1]],
                },
                1,
            )]),
        )
        .unwrap();
        assert_eq!(a.lie_basis, vec![QMatrix::from_i64(&[&[1, 0], &[0, -1]])]);
        assert_eq!(a.weight_data, WeightData::rank_one(&[1, -1]));
    }

    #[test]
    fn sl2_adjoint_and_so3_standard() {
        let ad = build_action(
            &GroupDescriptor::sl(2),
            &module(vec![Summand::new(0, Irrep::Adjoint, 1)]),
        )
        .unwrap();
        assert_eq!(ad.lie_basis.len(), 3);
        assert!(ad.weight_data.same_multiset(&WeightData::rank_one(&[2, 0, -2])));
        let so3 = build_action(
            &GroupDescriptor::so(3),
            &module(vec![Summand::new(0, Irrep::Standard, 1)]),
        )
        .unwrap();
        assert!(so3.weight_data.same_multiset(&WeightData::rank_one(&[1, 0, -1])));
        assert!(so3.check_weights() && ad.check_weights());
    }

    #[test]
    fn every_builtin_action_is_closed_and_diagonal() {
        let cases = vec![
            (GroupDescriptor::sl(3), Irrep::Standard),
            (GroupDescriptor::sl(3), Irrep::Adjoint),
            (GroupDescriptor::so(4), Irrep::Standard),
            (GroupDescriptor::so(5), Irrep::Adjoint),
            (GroupDescriptor::sp(2), Irrep::Standard),
            (GroupDescriptor::sp(2), Irrep::Adjoint),
        ];
        for (g, irrep) in cases {
            let a = build_action(&g, &module(vec![Summand::new(0, irrep.clone(), 1)])).unwrap();
            assert!(a.check_closure(), "{g} {irrep}");
            assert!(a.check_weights(), "{g} {irrep}");
            assert!(is_orthogonal(&a.weight_data.with_dual()));
        }
    }

    #[test]
    fn dual_and_sum() {
        let g = GroupDescriptor::sl(2);
        let std = build_action(&g, &module(vec![Summand::new(0, Irrep::Standard, 1)])).unwrap();
        let d = dual(&std);
        assert_eq!(dual(&d), std);
        assert!(d.weight_data.same_multiset(&std.weight_data));
        let ad = build_action(&g, &module(vec![Summand::new(0, Irrep::Adjoint, 1)])).unwrap();
        assert_eq!(direct_sum(&std, &ad).unwrap().dim_v, 5);
        let t = build_action(
            &GroupDescriptor::torus(1),
            &module(vec![Summand::new(0, Irrep::Weights { weights: vec![vec![1]] }, 1)]),
        )
        .unwrap();
        assert_eq!(direct_sum(&std, &t), Err(ModelError::GroupMismatch));
        let empty = build_action(&g, &ModuleDescriptor::default()).unwrap();
        assert_eq!(direct_sum(&std, &empty).unwrap(), std);
    }

    #[test]
    fn invalid_pairings_are_rejected() {
        let err = build_action(
            &GroupDescriptor::torus(1),
            &module(vec![Summand::new(0, Irrep::Standard, 1)]),
        );
        assert!(matches!(err, Err(ModelError::InvalidPairing { .. })));
        let err = build_action(
            &GroupDescriptor::sl(2),
            &module(vec![Summand::new(0, Irrep::Weights { weights: vec![vec![1]] }, 1)]),
        );
        assert!(matches!(err, Err(ModelError::InvalidPairing { .. })));
        let err = build_action(
            &GroupDescriptor::torus(2),
            &module(vec![Summand::new(0, Irrep::Weights { weights: vec![vec![1]] }, 1)]),
        );
        assert!(matches!(err, Err(ModelError::WeightLength { .. })));
    }

    #[test]
    fn orthogonality_and_lagrangians() {
        assert!(is_orthogonal(&WeightData::rank_one(&[1, -1])));
        assert!(!is_orthogonal(&WeightData::rank_one(&[1, 1])));
        assert!(is_orthogonal(&WeightData::rank_one(&[2, 0, -2])));
        let choices = lagrangian_choices(&WeightData::rank_one(&[1, 1, -1, -1])).unwrap();
        assert!(choices.contains(&WeightData::rank_one(&[-1, 1])));
        assert!(choices.contains(&WeightData::rank_one(&[1, 1])));
        assert_eq!(choices.len(), 3);
        let two = lagrangian_choices(&WeightData::rank_one(&[2, -2])).unwrap();
        assert_eq!(two, vec![WeightData::rank_one(&[-2]), WeightData::rank_one(&[2])]);
        assert_eq!(
            lagrangian_choices(&WeightData::rank_one(&[0, 1, -1])),
            Err(ModelError::OddZeroMultiplicity(1))
        );
        assert_eq!(
            lagrangian_choices(&WeightData::rank_one(&[1, 1])),
            Err(ModelError::AsymmetricWeights)
        );
    }

    #[test]
    fn euclidean_so3_is_closed() {
        let a = RepAction::so3_euclidean(2);
        assert_eq!(a.dim_v, 6);
        assert!(a.check_closure());
    }
}
