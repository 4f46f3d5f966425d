//! Matrix-class predicates and the class-chain classifier.
//!
//! Everything here is pure matrix algebra on [`SymMat`]: Stieltjes and
//! diagonal-dominance tests, blocking columns, ultrametric and type-D
//! patterns, the block sign-pattern decomposition, and the chain level
//! (largest face dimension below which every face of the underlying simplex
//! is nonobtuse).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mat::{ones, rebase_gramian, MatError, SymMat};
use crate::scalar::{Scalar, Sign};

/// SPD with nonpositive off-diagonal entries.
pub fn is_stieltjes<S: Scalar>(m: &SymMat<S>) -> bool {
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            if i != j && m.get(i, j).sign() == Sign::Positive {
                return false;
            }
        }
    }
    m.is_spd()
}

/// Solution of `A x = e` together with its sign summary. The solution is
/// entrywise nonnegative exactly when the inverse is weakly diagonally
/// dominant.
#[derive(Clone, Debug)]
pub struct EquilibriumPotential<S> {
    pub x: Vec<S>,
    pub negative_indices: Vec<usize>,
}

impl<S> EquilibriumPotential<S> {
    pub fn is_nonnegative(&self) -> bool {
        self.negative_indices.is_empty()
    }
}

pub fn equilibrium_potential<S: Scalar>(
    a: &SymMat<S>,
) -> Result<EquilibriumPotential<S>, MatError> {
    let x = a.solve(&ones(a.n()))?;
    let negative_indices = x
        .iter()
        .enumerate()
        .filter(|(_, v)| v.sign() == Sign::Negative)
        .map(|(i, _)| i)
        .collect();
    Ok(EquilibriumPotential {
        x,
        negative_indices,
    })
}

/// Entry `a_ij` (`i != j`) is minimal in its row when `a_ij <= a_ik` for all
/// `k != i`; the diagonal is excluded from the comparison and ties count.
fn minimal_in_row<S: Scalar>(a: &SymMat<S>, i: usize, j: usize) -> bool {
    let v = a.get(i, j);
    (0..a.n()).all(|k| k == i || v.le_tol(a.get(i, k)))
}

/// Column indices (0-based) none of whose off-diagonal entries is minimal in
/// its row. Matrices with no blocking column are nonblocking.
pub fn blocking_columns<S: Scalar>(a: &SymMat<S>) -> Vec<usize> {
    let n = a.n();
    (0..n)
        .filter(|&j| (0..n).all(|i| i == j || !minimal_in_row(a, i, j)))
        .collect()
}

pub fn is_nonblocking<S: Scalar>(a: &SymMat<S>) -> bool {
    blocking_columns(a).is_empty()
}

/// For a matrix with a blocking column, produces a 3-element index set whose
/// principal submatrix has a blocking column: take the row holding the
/// smallest entry of the blocking column, then a strictly smaller witness in
/// that row. Returns `None` when the matrix itself is nonblocking.
pub fn minimal_blocking_submatrix<S: Scalar>(a: &SymMat<S>) -> Option<[usize; 3]> {
    let n = a.n();
    let blocking = blocking_columns(a);
    let &col = blocking.first()?;
    debug_assert!(n >= 3);
    let row_min = (0..n)
        .filter(|&i| i != col)
        .min_by(|&x, &y| a.get(x, col).cmp_tol(a.get(y, col)))?;
    let witness = (0..n)
        .find(|&k| k != row_min && a.get(row_min, k).lt_tol(a.get(row_min, col)))?;
    debug_assert!(witness != col);
    let mut idx = [row_min, witness, col];
    idx.sort_unstable();
    Some(idx)
}

/// Symmetric ultrametric: nonnegative, each diagonal entry maximal in its
/// row, and no 3x3 principal submatrix has a unique minimal off-diagonal
/// entry.
pub fn is_ultrametric<S: Scalar>(a: &SymMat<S>) -> bool {
    let n = a.n();
    if !a.is_nonnegative() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j).gt_tol(a.get(i, i)) {
                return false;
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let e = [a.get(i, j), a.get(i, k), a.get(j, k)];
                let min = e
                    .iter()
                    .min_by(|x, y| x.cmp_tol(y))
                    .expect("three entries");
                if e.iter().filter(|v| v.eq_tol(min)).count() < 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Strictly ultrametric: `a_ij >= min(a_ik, a_kj)` for all triples and a
/// strictly dominant diagonal.
pub fn is_strictly_ultrametric<S: Scalar>(a: &SymMat<S>) -> bool {
    let n = a.n();
    if !a.is_nonnegative() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !a.get(i, i).gt_tol(a.get(i, j)) {
                return false;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let m = if a.get(i, k).le_tol(a.get(k, j)) {
                    a.get(i, k)
                } else {
                    a.get(k, j)
                };
                if a.get(i, j).lt_tol(m) {
                    return false;
                }
            }
        }
    }
    true
}

/// Type-D staircase `a_ij = alpha_min(i,j)` with strictly increasing alpha.
/// Returns the alpha vector (the diagonal) on success.
pub fn type_d_profile<S: Scalar>(a: &SymMat<S>) -> Option<Vec<S>> {
    let n = a.n();
    let alpha: Vec<S> = (0..n).map(|i| a.get(i, i).clone()).collect();
    for w in alpha.windows(2) {
        if !w[0].lt_tol(&w[1]) {
            return None;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let expect = &alpha[i.min(j)];
            if !a.get(i, j).eq_tol(expect) {
                return None;
            }
        }
    }
    Some(alpha)
}

pub fn is_type_d<S: Scalar>(a: &SymMat<S>) -> bool {
    type_d_profile(a).is_some()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignPatternError {
    #[error("positive off-diagonal entries do not form a partial matching (index {0} has several positive partners)")]
    NoMatching(usize),
}

/// `pi(A) = D - C` with `D >= 0` block diagonal (1x1 and 2x2 blocks) and
/// `C >= 0`. Succeeds exactly when the positive off-diagonal entries form a
/// partial matching.
#[derive(Clone, Debug)]
pub struct SignPattern<S: Scalar> {
    pub permutation: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub d: SymMat<S>,
    pub c: SymMat<S>,
}

pub fn sign_pattern_decomposition<S: Scalar>(
    ainv: &SymMat<S>,
) -> Result<SignPattern<S>, SignPatternError> {
    let n = ainv.n();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if ainv.get(i, j).sign() == Sign::Positive {
                if partner[i].is_some() {
                    return Err(SignPatternError::NoMatching(i));
                }
                if partner[j].is_some() {
                    return Err(SignPatternError::NoMatching(j));
                }
                partner[i] = Some(j);
                partner[j] = Some(i);
            }
        }
    }
    let mut permutation = Vec::with_capacity(n);
    let mut pairs = Vec::new();
    let mut placed = vec![false; n];
    for i in 0..n {
        if placed[i] {
            continue;
        }
        match partner[i] {
            Some(j) => {
                pairs.push((permutation.len(), permutation.len() + 1));
                permutation.push(i);
                permutation.push(j);
                placed[i] = true;
                placed[j] = true;
            }
            None => {
                permutation.push(i);
                placed[i] = true;
            }
        }
    }
    let p = ainv.permuted(&permutation);
    let in_block = |i: usize, j: usize| {
        i == j || pairs.iter().any(|&(a, b)| (i, j) == (a, b) || (i, j) == (b, a))
    };
    let d = SymMat::from_fn(n, |i, j| {
        if in_block(i, j) {
            p.get(i, j).clone()
        } else {
            S::zero()
        }
    });
    let c = SymMat::from_fn(n, |i, j| {
        if in_block(i, j) {
            S::zero()
        } else {
            -p.get(i, j).clone()
        }
    });
    debug_assert!(c.is_nonnegative());
    Ok(SignPattern {
        permutation,
        pairs,
        d,
        c,
    })
}

/// Inverse is a weakly diagonally dominant Stieltjes matrix, i.e. the
/// underlying simplex is nonobtuse.
pub fn is_inverse_mdd<S: Scalar>(a: &SymMat<S>) -> Result<bool, MatError> {
    if !a.is_spd() {
        return Ok(false);
    }
    let inv = a.inverse()?;
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            if i != j && inv.get(i, j).sign() == Sign::Positive {
                return Ok(false);
            }
        }
    }
    let e = ones::<S>(n);
    let xe = inv.mul_vec(&e);
    Ok(xe.iter().all(|v| v.sign() != Sign::Negative))
}

/// Nonnegative and pointwise weakly diagonally dominant SPD matrix, i.e. the
/// underlying simplex has only nonobtuse triangular facets.
pub fn is_ddd<S: Scalar>(a: &SymMat<S>) -> bool {
    a.is_spd() && a.is_nonnegative() && is_pointwise_wdd(a)
}

pub fn is_pointwise_wdd<S: Scalar>(a: &SymMat<S>) -> bool {
    let n = a.n();
    (0..n).all(|i| (0..n).all(|j| a.get(i, j).le_tol(a.get(i, i))))
}

/// Gramian of the face spanned by `labels` (vertex labels of the underlying
/// simplex: 0 is the matrix's base vertex, `1..=n` its columns), based at
/// `labels[0]`. Faces avoiding the base are reached through one base change.
pub fn face_gramian<S: Scalar>(a: &SymMat<S>, labels: &[usize]) -> SymMat<S> {
    assert!(labels.len() >= 2);
    let (mat, relabel): (SymMat<S>, Box<dyn Fn(usize) -> usize>) = if labels[0] == 0 {
        (a.clone(), Box::new(|l| l))
    } else {
        let b = labels[0];
        (
            rebase_gramian(a, b),
            Box::new(move |l| if l == 0 { b } else { l }),
        )
    };
    let cols: Vec<usize> = labels[1..].iter().map(|&l| relabel(l) - 1).collect();
    mat.principal(&cols)
}

/// Largest `k <= n` such that every k-dimensional face of the underlying
/// simplex is nonobtuse. Level 1 always holds (segments are formally
/// nonobtuse); level n means the simplex itself is nonobtuse.
pub fn chain_level<S: Scalar>(a: &SymMat<S>) -> Result<usize, MatError> {
    a.ldlt()?;
    let n = a.n();
    let mut level = 1usize;
    for k in 2..=n {
        if all_faces_nonobtuse(a, k)? {
            level = k;
        } else {
            break;
        }
    }
    Ok(level)
}

/// Every k-dimensional face (k+1 vertex labels out of 0..=n) is nonobtuse.
pub fn all_faces_nonobtuse<S: Scalar>(a: &SymMat<S>, k: usize) -> Result<bool, MatError> {
    let n = a.n();
    debug_assert!(k >= 2 && k <= n);
    if k == n {
        return is_inverse_mdd(a);
    }
    let mut subset: Vec<usize> = (0..=k).collect();
    loop {
        let face = face_gramian(a, &subset);
        if !is_inverse_mdd(&face)? {
            return Ok(false);
        }
        // next (k+1)-subset of {0..n} in lexicographic order
        let mut i = k + 1;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            if subset[i] != i + n - k {
                subset[i] += 1;
                for j in (i + 1)..=k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Membership verdicts across the class chain plus witnesses.
#[derive(Clone, Debug)]
pub struct ClassReport<S: Scalar> {
    pub n: usize,
    pub spd: bool,
    pub nonnegative: bool,
    pub pointwise_wdd: bool,
    pub inverse_stieltjes: Option<bool>,
    pub inverse_wdd: Option<bool>,
    pub in_m: Option<bool>,
    pub in_mdd: Option<bool>,
    pub in_ddd: bool,
    pub chain_level: Option<usize>,
    pub ultrametric: bool,
    pub strictly_ultrametric: bool,
    pub type_d: bool,
    pub type_d_alpha: Option<Vec<S>>,
    pub blocking_columns: Option<Vec<usize>>,
    pub equilibrium_potential: Option<Vec<S>>,
    pub sign_pattern: Option<SignPatternSummary>,
}

/// Serializable slice of a sign-pattern decomposition.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SignPatternSummary {
    pub ok: bool,
    pub permutation: Option<Vec<usize>>,
    pub pairs: Option<Vec<(usize, usize)>>,
}

impl<S: Scalar> ClassReport<S> {
    pub fn analyze(a: &SymMat<S>) -> ClassReport<S> {
        let n = a.n();
        let spd = a.is_spd();
        let nonnegative = a.is_nonnegative();
        let pointwise_wdd = is_pointwise_wdd(a);
        let inverse = if spd { a.inverse().ok() } else { None };
        let inverse_stieltjes = inverse.as_ref().map(|inv| {
            (0..n).all(|i| (0..n).all(|j| i == j || inv.get(i, j).sign() != Sign::Positive))
        });
        let potential = if spd {
            equilibrium_potential(a).ok()
        } else {
            None
        };
        let inverse_wdd = potential.as_ref().map(|p| p.is_nonnegative());
        let in_m = inverse_stieltjes;
        let in_mdd = match (inverse_stieltjes, inverse_wdd) {
            (Some(s), Some(w)) => Some(s && w),
            _ => None,
        };
        let chain = if spd { chain_level(a).ok() } else { None };
        let alpha = type_d_profile(a);
        let sign_pattern = inverse.as_ref().map(|inv| {
            match sign_pattern_decomposition(inv) {
                Ok(sp) => SignPatternSummary {
                    ok: true,
                    permutation: Some(sp.permutation),
                    pairs: Some(sp.pairs),
                },
                Err(_) => SignPatternSummary {
                    ok: false,
                    permutation: None,
                    pairs: None,
                },
            }
        });
        ClassReport {
            n,
            spd,
            nonnegative,
            pointwise_wdd,
            inverse_stieltjes,
            inverse_wdd,
            in_m,
            in_mdd,
            in_ddd: spd && nonnegative && pointwise_wdd,
            chain_level: chain,
            ultrametric: is_ultrametric(a),
            strictly_ultrametric: is_strictly_ultrametric(a),
            type_d: alpha.is_some(),
            type_d_alpha: alpha,
            blocking_columns: if nonnegative {
                Some(blocking_columns(a))
            } else {
                None
            },
            equilibrium_potential: potential.map(|p| p.x),
            sign_pattern,
        }
    }

    pub fn dto(&self) -> ClassReportDto {
        ClassReportDto {
            n: self.n,
            spd: self.spd,
            nonnegative: self.nonnegative,
            pointwise_wdd: self.pointwise_wdd,
            inverse_stieltjes: self.inverse_stieltjes,
            inverse_wdd: self.inverse_wdd,
            in_m: self.in_m,
            in_mdd: self.in_mdd,
            in_ddd: self.in_ddd,
            chain_level: self.chain_level,
            ultrametric: self.ultrametric,
            strictly_ultrametric: self.strictly_ultrametric,
            type_d: self.type_d,
            type_d_alpha: self
                .type_d_alpha
                .as_ref()
                .map(|v| v.iter().map(|s| s.to_literal()).collect()),
            blocking_columns: self.blocking_columns.clone(),
            equilibrium_potential: self
                .equilibrium_potential
                .as_ref()
                .map(|v| v.iter().map(|s| s.to_literal()).collect()),
            sign_pattern: self.sign_pattern.clone(),
        }
    }
}

/// JSON form of a class report; all numbers are literal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassReportDto {
    pub n: usize,
    pub spd: bool,
    pub nonnegative: bool,
    pub pointwise_wdd: bool,
    pub inverse_stieltjes: Option<bool>,
    pub inverse_wdd: Option<bool>,
    pub in_m: Option<bool>,
    pub in_mdd: Option<bool>,
    pub in_ddd: bool,
    pub chain_level: Option<usize>,
    pub ultrametric: bool,
    pub strictly_ultrametric: bool,
    pub type_d: bool,
    pub type_d_alpha: Option<Vec<String>>,
    pub blocking_columns: Option<Vec<usize>>,
    pub equilibrium_potential: Option<Vec<String>>,
    pub sign_pattern: Option<SignPatternSummary>,
}
