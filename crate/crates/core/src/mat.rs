//! Dense symmetric-matrix kernel.
//!
//! Everything is dense; problem sizes stay around a dozen. The positive
//! definite path factors `A = L D L^T` with unit lower-triangular `L` and
//! positive diagonal `D`, which keeps all pivot decisions inside the scalar
//! field even when the Cholesky factor itself would be irrational. General
//! invertible systems go through LU with partial pivoting.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Scalar, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is not positive definite (pivot {pivot} is not positive)")]
    NotPositiveDefinite { pivot: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("input rows do not form a square matrix")]
    NotSquare,
    #[error("input matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Dense symmetric matrix over a scalar backend.
#[derive(Clone, PartialEq)]
pub struct SymMat<S> {
    n: usize,
    a: Vec<S>,
}

pub type RatMat = SymMat<crate::scalar::Rat>;

impl<S: Scalar> SymMat<S> {
    pub fn zero(n: usize) -> Self {
        SymMat {
            n,
            a: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds from full rows, verifying squareness and symmetry.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatError::NotSquare);
        }
        let m = SymMat {
            n,
            a: rows.into_iter().flatten().collect(),
        };
        for i in 0..n {
            for j in (i + 1)..n {
                if !m.get(i, j).eq_tol(m.get(j, i)) {
                    return Err(MatError::NotSymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    /// Builds from integer rows; panics on shape errors (test helper).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| S::from_int(k)).collect())
                .collect(),
        )
        .expect("integer rows must form a symmetric matrix")
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.a[i * self.n + j] = v;
    }

    /// Symmetric assignment of both mirror entries.
    pub fn set_sym(&mut self, i: usize, j: usize, v: S) {
        self.a[i * self.n + j] = v.clone();
        self.a[j * self.n + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Largest absolute entry; the float backend uses it as pivot scale.
    fn magnitude(&self) -> S {
        let mut m = S::zero();
        for v in &self.a {
            let av = v.abs();
            if av.cmp_tol(&m) == std::cmp::Ordering::Greater {
                m = av;
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.n {
                    acc = acc + self.get(i, j).clone() * x[j].clone();
                }
                acc
            })
            .collect()
    }

    /// `x^T A y`.
    pub fn quad_form(&self, x: &[S], y: &[S]) -> S {
        let ay = self.mul_vec(y);
        dot(x, &ay)
    }

    /// Principal submatrix on the given (strictly increasing not required) indices.
    pub fn principal(&self, idx: &[usize]) -> SymMat<S> {
        SymMat::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// Simultaneous row/column permutation: `B[i][j] = A[p[i]][p[j]]`.
    pub fn permuted(&self, p: &[usize]) -> SymMat<S> {
        assert_eq!(p.len(), self.n);
        SymMat::from_fn(self.n, |i, j| self.get(p[i], p[j]).clone())
    }

    /// `L D L^T` factorization; fails unless the matrix is positive definite.
    pub fn ldlt(&self) -> Result<Ldlt<S>, MatError> {
        let n = self.n;
        let scale = self.magnitude();
        let mut l = SymMat::<S>::identity(n);
        let mut d: Vec<S> = Vec::with_capacity(n);
        for k in 0..n {
            let mut pivot = self.get(k, k).clone();
            for m in 0..k {
                pivot = pivot - l.get(k, m).clone() * l.get(k, m).clone() * d[m].clone();
            }
            if pivot.sign_rel(&scale) != Sign::Positive {
                return Err(MatError::NotPositiveDefinite { pivot: k });
            }
            for i in (k + 1)..n {
                let mut v = self.get(i, k).clone();
                for m in 0..k {
                    v = v - l.get(i, m).clone() * l.get(k, m).clone() * d[m].clone();
                }
                l.set(i, k, v / pivot.clone());
            }
            d.push(pivot);
        }
        Ok(Ldlt { l, d })
    }

    pub fn is_spd(&self) -> bool {
        self.ldlt().is_ok()
    }

    /// Upper-triangular Cholesky factor with positive diagonal.
    pub fn cholesky_upper(&self) -> Result<CholeskyFactor<S>, MatError> {
        Ok(CholeskyFactor {
            ldlt: self.ldlt()?,
        })
    }

    /// Solves `A x = b` for invertible symmetric `A` via LU with partial pivoting.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>, MatError> {
        if b.len() != self.n {
            return Err(MatError::Dimension {
                expected: self.n,
                got: b.len(),
            });
        }
        let cols = self.solve_many(&[b.to_vec()])?;
        Ok(cols.into_iter().next().unwrap())
    }

    /// Solves for several right-hand sides with one elimination.
    pub fn solve_many(&self, bs: &[Vec<S>]) -> Result<Vec<Vec<S>>, MatError> {
        let n = self.n;
        let scale = self.magnitude();
        let mut m = self.rows();
        let mut rhs: Vec<Vec<S>> = bs.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            // partial pivot: largest magnitude in column k
            let mut best = k;
            for r in (k + 1)..n {
                if m[r][k].abs().cmp_tol(&m[best][k].abs()) == std::cmp::Ordering::Greater {
                    best = r;
                }
            }
            if m[best][k].sign_rel(&scale) == Sign::Zero {
                return Err(MatError::Singular);
            }
            m.swap(k, best);
            perm.swap(k, best);
            for b in rhs.iter_mut() {
                b.swap(k, best);
            }
            for r in (k + 1)..n {
                let f = m[r][k].clone() / m[k][k].clone();
                if f.is_zero() {
                    continue;
                }
                for c in k..n {
                    m[r][c] = m[r][c].clone() - f.clone() * m[k][c].clone();
                }
                for b in rhs.iter_mut() {
                    b[r] = b[r].clone() - f.clone() * b[k].clone();
                }
            }
        }
        let mut out = Vec::with_capacity(rhs.len());
        for b in rhs {
            let mut x = vec![S::zero(); n];
            for k in (0..n).rev() {
                let mut acc = b[k].clone();
                for c in (k + 1)..n {
                    acc = acc - m[k][c].clone() * x[c].clone();
                }
                x[k] = acc / m[k][k].clone();
            }
            out.push(x);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<SymMat<S>, MatError> {
        let n = self.n;
        let basis: Vec<Vec<S>> = (0..n).map(|j| basis_vec(n, j)).collect();
        let cols = self.solve_many(&basis)?;
        // exact arithmetic yields an exactly symmetric inverse; the float
        // backend gets symmetrized to keep downstream predicates coherent
        let half = S::one() / S::from_int(2);
        Ok(SymMat::from_fn(n, |i, j| {
            (cols[j][i].clone() + cols[i][j].clone()) * half.clone()
        }))
    }

    pub fn determinant(&self) -> S {
        let n = self.n;
        let scale = self.magnitude();
        let mut m = self.rows();
        let mut det = S::one();
        for k in 0..n {
            let mut best = k;
            for r in (k + 1)..n {
                if m[r][k].abs().cmp_tol(&m[best][k].abs()) == std::cmp::Ordering::Greater {
                    best = r;
                }
            }
            if m[best][k].sign_rel(&scale) == Sign::Zero {
                return S::zero();
            }
            if best != k {
                m.swap(k, best);
                det = -det;
            }
            det = det * m[k][k].clone();
            for r in (k + 1)..n {
                let f = m[r][k].clone() / m[k][k].clone();
                if f.is_zero() {
                    continue;
                }
                for c in k..n {
                    m[r][c] = m[r][c].clone() - f.clone() * m[k][c].clone();
                }
            }
        }
        det
    }

    /// Entrywise nonnegativity.
    pub fn is_nonnegative(&self) -> bool {
        self.a.iter().all(|v| v.sign() != Sign::Negative)
    }

    pub fn to_literals(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_literal()).collect())
            .collect()
    }

    pub fn from_literals(rows: &[Vec<String>]) -> Result<Self, MatLiteralError> {
        let parsed: Result<Vec<Vec<S>>, _> = rows
            .iter()
            .map(|r| r.iter().map(|s| S::parse_literal(s)).collect())
            .collect();
        Self::from_rows(parsed.map_err(MatLiteralError::Scalar)?)
            .map_err(MatLiteralError::Shape)
    }
}

#[derive(Debug, Error)]
pub enum MatLiteralError {
    #[error(transparent)]
    Scalar(crate::scalar::ParseScalarError),
    #[error(transparent)]
    Shape(MatError),
}

impl<S: Scalar> fmt::Debug for SymMat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMat {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `A = L D L^T` with unit lower-triangular `L` and positive diagonal `D`.
#[derive(Clone, Debug)]
pub struct Ldlt<S: Scalar> {
    pub l: SymMat<S>,
    pub d: Vec<S>,
}

impl<S: Scalar> Ldlt<S> {
    pub fn reconstruct(&self) -> SymMat<S> {
        let n = self.d.len();
        SymMat::from_fn(n, |i, j| {
            let mut acc = S::zero();
            for m in 0..n {
                acc = acc
                    + self.l.get(i, m).clone() * self.l.get(j, m).clone() * self.d[m].clone();
            }
            acc
        })
    }
}

/// Upper-triangular Cholesky factor `R` with `R^T R = A`, represented as
/// `R = sqrt(D) L^T` so that signs, products and the factorized matrix stay
/// inside the scalar field.
#[derive(Clone, Debug)]
pub struct CholeskyFactor<S: Scalar> {
    ldlt: Ldlt<S>,
}

impl<S: Scalar> CholeskyFactor<S> {
    pub fn n(&self) -> usize {
        self.ldlt.d.len()
    }

    pub fn ldlt(&self) -> &Ldlt<S> {
        &self.ldlt
    }

    /// Sign of entry `R[i][j]` (exact: equals the sign of `L[j][i]`).
    pub fn entry_sign(&self, i: usize, j: usize) -> Sign {
        if j < i {
            Sign::Zero
        } else if j == i {
            Sign::Positive
        } else {
            self.ldlt.l.get(j, i).sign()
        }
    }

    /// All entries of `R` nonnegative, decided in the scalar field.
    pub fn is_nonnegative(&self) -> bool {
        let n = self.n();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.entry_sign(i, j) == Sign::Negative {
                    return false;
                }
            }
        }
        true
    }

    /// `R^T R`, computed exactly (equals the factored matrix).
    pub fn rt_r(&self) -> SymMat<S> {
        self.ldlt.reconstruct()
    }

    /// Floating rendition of `R`.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let s = self.ldlt.d[i].to_f64().sqrt();
                (0..n)
                    .map(|j| {
                        if j < i {
                            0.0
                        } else if j == i {
                            s
                        } else {
                            s * self.ldlt.l.get(j, i).to_f64()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact `R` when every pivot is a perfect square in the field.
    pub fn exact_rows(&self) -> Option<Vec<Vec<S>>> {
        let n = self.n();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let s = self.ldlt.d[i].sqrt_exact()?;
            out.push(
                (0..n)
                    .map(|j| {
                        if j < i {
                            S::zero()
                        } else if j == i {
                            s.clone()
                        } else {
                            s.clone() * self.ldlt.l.get(j, i).clone()
                        }
                    })
                    .collect(),
            );
        }
        Some(out)
    }
}

pub fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    assert_eq!(x.len(), y.len());
    let mut acc = S::zero();
    for (a, b) in x.iter().zip(y) {
        acc = acc + a.clone() * b.clone();
    }
    acc
}

/// All-ones vector.
pub fn ones<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::one(); n]
}

/// Standard basis vector `e_j`.
pub fn basis_vec<S: Scalar>(n: usize, j: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[j] = S::one();
    v
}

/// Change of base vertex on a vertex Gramian, as pure matrix algebra.
///
/// Column `j` (1-based among the matrix columns, i.e. `1..=n`) becomes the
/// new base; the old base takes its place. Uses the identity
/// `(v_k - v_j)^T (v_m - v_j) = g_km - g_kj - g_jm + g_jj`.
pub fn rebase_gramian<S: Scalar>(g: &SymMat<S>, j: usize) -> SymMat<S> {
    assert!(j >= 1 && j <= g.n(), "rebase column out of range");
    let p = j - 1; // 0-based column of the new base
    let gjj = g.get(p, p).clone();
    SymMat::from_fn(g.n(), |i, k| {
        if i == p && k == p {
            gjj.clone()
        } else if i == p {
            gjj.clone() - g.get(p, k).clone()
        } else if k == p {
            gjj.clone() - g.get(i, p).clone()
        } else {
            g.get(i, k).clone() - g.get(i, p).clone() - g.get(p, k).clone() + gjj.clone()
        }
    })
}

/// Tests simultaneous row/column permutation equivalence by enumeration.
/// Fine for the desk scales this crate targets.
pub fn permutation_equivalent<S: Scalar>(a: &SymMat<S>, b: &SymMat<S>) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_search(a, b, &mut perm, 0)
}

fn permute_search<S: Scalar>(
    a: &SymMat<S>,
    b: &SymMat<S>,
    perm: &mut Vec<usize>,
    k: usize,
) -> bool {
    let n = a.n();
    if k == n {
        return true;
    }
    for i in k..n {
        perm.swap(k, i);
        // prefix check: rows 0..=k of the permuted A must match B
        let ok = (0..=k).all(|r| {
            (0..=k).all(|c| a.get(perm[r], perm[c]).eq_tol(b.get(r, c)))
        });
        if ok && permute_search(a, b, perm, k + 1) {
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// Wire format of a matrix literal: array of rows of numeric strings.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(transparent)]
pub struct MatrixLiteral(pub Vec<Vec<String>>);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rq, Fp, Rat};

    fn fig_triangle_gram() -> RatMat {
        SymMat::from_int_rows(&[&[1, 2], &[2, 5]])
    }

    #[test]
    fn cholesky_identity() {
        let i3 = RatMat::identity(3);
        let r = i3.cholesky_upper().unwrap();
        assert_eq!(r.exact_rows().unwrap(), RatMat::identity(3).rows());
    }

    #[test]
    fn cholesky_of_regular_gramian_is_nonnegative() {
        // I + ee^T in three dimensions: first pivot 2, so R11 = sqrt(2)
        let a = RatMat::from_int_rows(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]);
        let r = a.cholesky_upper().unwrap();
        assert!(r.is_nonnegative());
        assert_eq!(r.rt_r(), a);
        let f = r.to_f64_rows();
        assert!((f[0][0] - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.exact_rows().is_none());
    }

    #[test]
    fn cholesky_two_by_two_closed_form() {
        let a = RatMat::from_int_rows(&[&[1, -1], &[-1, 2]]);
        let r = a.cholesky_upper().unwrap();
        let rows = r.exact_rows().unwrap();
        assert_eq!(rows[0], vec![rat(1), rat(-1)]);
        assert_eq!(rows[1], vec![rat(0), rat(1)]);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = RatMat::from_int_rows(&[&[1, 2], &[2, 1]]);
        assert!(matches!(
            a.cholesky_upper(),
            Err(MatError::NotPositiveDefinite { .. })
        ));
        assert!(!a.is_spd());
    }

    #[test]
    fn solve_identity_and_path_gramian() {
        let i3 = RatMat::identity(3);
        assert_eq!(i3.solve(&ones(3)).unwrap(), ones::<Rat>(3));

        // Gramian of the unit path 4-simplex at its second vertex
        let g1 = RatMat::from_int_rows(&[
            &[1, 0, 0, 0],
            &[0, 1, 1, 1],
            &[0, 1, 2, 2],
            &[0, 1, 2, 3],
        ]);
        assert_eq!(
            g1.solve(&ones(4)).unwrap(),
            vec![rat(1), rat(1), rat(0), rat(0)]
        );
    }

    #[test]
    fn solve_first_basis_column() {
        let g = fig_triangle_gram();
        assert_eq!(
            g.solve(&basis_vec(2, 0)).unwrap(),
            vec![rat(5), rat(-2)]
        );
    }

    #[test]
    fn inverse_matches_known_pairs() {
        let g = fig_triangle_gram();
        assert_eq!(
            g.inverse().unwrap(),
            SymMat::from_int_rows(&[&[5, -2], &[-2, 1]])
        );
        let gv = RatMat::from_int_rows(&[&[1, -1], &[-1, 2]]);
        assert_eq!(
            gv.inverse().unwrap(),
            SymMat::from_int_rows(&[&[2, 1], &[1, 1]])
        );
        assert_eq!(RatMat::identity(3).inverse().unwrap(), RatMat::identity(3));
    }

    #[test]
    fn spd_examples() {
        assert!(RatMat::identity(4).is_spd());
        assert!(fig_triangle_gram().is_spd());
        assert!(!RatMat::from_int_rows(&[&[1, 2], &[2, 1]]).is_spd());
    }

    /// Independent oracle: all leading principal minors positive.
    fn spd_by_minors(a: &RatMat) -> bool {
        (1..=a.n()).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            a.principal(&idx).determinant().is_positive()
        })
    }

    #[test]
    fn spd_agrees_with_minor_oracle_on_small_grid() {
        // all symmetric 3x3 matrices with entries in {-2..2}
        let vals: Vec<i64> = vec![-2, -1, 0, 1, 2];
        let mut count = 0usize;
        for d0 in &vals {
            for d1 in &vals {
                for d2 in &vals {
                    for o01 in &vals {
                        for o02 in &vals {
                            for o12 in &vals {
                                let a = RatMat::from_int_rows(&[
                                    &[*d0, *o01, *o02],
                                    &[*o01, *d1, *o12],
                                    &[*o02, *o12, *d2],
                                ]);
                                assert_eq!(a.is_spd(), spd_by_minors(&a));
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(count, 5usize.pow(6));
    }

    #[test]
    fn rebase_triangle_gramian() {
        let gu = fig_triangle_gram();
        let gv = rebase_gramian(&gu, 1);
        assert_eq!(gv, SymMat::from_int_rows(&[&[1, -1], &[-1, 2]]));
        // involution up to the same column choice
        assert_eq!(rebase_gramian(&gv, 1), gu);
    }

    #[test]
    fn permutation_equivalence_detects_relabeling() {
        let a = RatMat::from_int_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let p = a.permuted(&[2, 0, 1]);
        assert!(permutation_equivalent(&a, &p));
        let b = RatMat::from_int_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 5]]);
        assert!(!permutation_equivalent(&a, &b));
    }

    #[test]
    fn float_backend_runs_the_same_kernel() {
        let a = SymMat::<Fp>::from_rows(vec![
            vec![Fp::new(1.0), Fp::new(2.0)],
            vec![Fp::new(2.0), Fp::new(5.0)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(inv.get(0, 0).eq_tol(&Fp::new(5.0)));
        assert!(inv.get(0, 1).eq_tol(&Fp::new(-2.0)));
        assert!(a.is_spd());
        let near_singular = SymMat::<Fp>::from_rows(vec![
            vec![Fp::new(1.0), Fp::new(1.0)],
            vec![Fp::new(1.0), Fp::new(1.0 + 1e-14)],
        ])
        .unwrap();
        assert!(matches!(near_singular.solve(&ones(2)), Err(MatError::Singular)));
    }

    #[test]
    fn literal_round_trip() {
        let g = RatMat::from_rows(vec![
            vec![rq(3, 4), rq(1, 2)],
            vec![rq(1, 2), rat(2)],
        ])
        .unwrap();
        let lit = g.to_literals();
        assert_eq!(lit[0][0], "3/4");
        let back = RatMat::from_literals(&lit).unwrap();
        assert_eq!(back, g);
    }
}
