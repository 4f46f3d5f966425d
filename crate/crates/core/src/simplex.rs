//! The simplex side of the bridge: vertices, vertex Gramians, base changes,
//! inward normals, dihedral angles, radii, and projections onto faces.
//!
//! Simplices carry an optional diagonal metric (positive weights per
//! coordinate axis). Reconstruction from a Gramian places the base vertex at
//! the origin and uses the `L D L^T` factor: the coordinates stay rational
//! and the metric absorbs the would-be square roots, so every inner product
//! of a reconstructed simplex is still exact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mat::{basis_vec, dot, ones, rebase_gramian, MatError, RatMat, SymMat};
use crate::scalar::{Rat, Scalar, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error("vertices are affinely dependent")]
    Degenerate,
    #[error("vertex {got} has dimension {dim}, expected {expected}")]
    VertexDimension { got: usize, dim: usize, expected: usize },
    #[error("need n+1 vertices in n-space, got {verts} vertices of dimension {dim}")]
    VertexCount { verts: usize, dim: usize },
    #[error("metric weights must be positive")]
    NonpositiveMetric,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("order must be a permutation of the non-base vertex labels")]
    BadOrder,
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// An n-simplex: n+1 affinely independent vertices in n-space, with a
/// diagonal metric defining the inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    n: usize,
    verts: Vec<Vec<Rat>>,
    metric: Vec<Rat>,
}

impl Simplex {
    pub fn new(verts: Vec<Vec<Rat>>) -> Result<Self, SimplexError> {
        let n = verts.len().saturating_sub(1);
        Self::with_metric(verts, vec![Rat::one(); n])
    }

    pub fn with_metric(verts: Vec<Vec<Rat>>, metric: Vec<Rat>) -> Result<Self, SimplexError> {
        if verts.is_empty() {
            return Err(SimplexError::VertexCount { verts: 0, dim: 0 });
        }
        let n = verts.len() - 1;
        for v in &verts {
            if v.len() != n {
                return Err(SimplexError::VertexDimension {
                    got: verts.iter().position(|w| w.len() != n).unwrap(),
                    dim: v.len(),
                    expected: n,
                });
            }
        }
        if metric.len() != n || metric.iter().any(|m| m.sign() != Sign::Positive) {
            return Err(SimplexError::NonpositiveMetric);
        }
        let s = Simplex { n, verts, metric };
        if s.n > 0 && !s.gram_matrix_at(0).is_spd() {
            return Err(SimplexError::Degenerate);
        }
        Ok(s)
    }

    /// Integer-coordinate constructor (test and generator helper).
    pub fn from_int_vertices(verts: &[&[i64]]) -> Result<Self, SimplexError> {
        Self::new(
            verts
                .iter()
                .map(|v| v.iter().map(|&k| Rat::from_int(k)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.verts
    }

    pub fn vertex(&self, i: usize) -> &[Rat] {
        &self.verts[i]
    }

    pub fn metric(&self) -> &[Rat] {
        &self.metric
    }

    pub fn has_unit_metric(&self) -> bool {
        self.metric.iter().all(|m| m == &Rat::one())
    }

    /// Metric inner product of two coordinate vectors.
    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.n {
            acc = acc + self.metric[i].clone() * x[i].clone() * y[i].clone();
        }
        acc
    }

    /// `v_to - v_from` as a coordinate vector.
    pub fn edge(&self, from: usize, to: usize) -> Vec<Rat> {
        sub(&self.verts[to], &self.verts[from])
    }

    pub fn squared_edge(&self, i: usize, j: usize) -> Rat {
        let e = self.edge(i, j);
        self.inner(&e, &e)
    }

    pub fn squared_distance(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let d = sub(y, x);
        self.inner(&d, &d)
    }

    pub fn centroid(&self) -> Vec<Rat> {
        let np1 = Rat::from_int(self.n as i64 + 1);
        (0..self.n)
            .map(|c| {
                let mut acc = Rat::zero();
                for v in &self.verts {
                    acc = acc + v[c].clone();
                }
                acc / np1.clone()
            })
            .collect()
    }

    fn gram_matrix_at(&self, base: usize) -> RatMat {
        let order: Vec<usize> = (0..=self.n).filter(|&k| k != base).collect();
        self.gram_matrix(base, &order)
    }

    fn gram_matrix(&self, base: usize, order: &[usize]) -> RatMat {
        let edges: Vec<Vec<Rat>> = order.iter().map(|&k| self.edge(base, k)).collect();
        SymMat::from_fn(self.n, |i, j| self.inner(&edges[i], &edges[j]))
    }

    /// Vertex Gramian at `base` with the remaining labels in ascending order.
    pub fn gramian(&self, base: usize) -> Result<VertexGramian, SimplexError> {
        if base > self.n {
            return Err(SimplexError::BadIndex(base));
        }
        let order: Vec<usize> = (0..=self.n).filter(|&k| k != base).collect();
        self.gramian_ordered(base, &order)
    }

    /// Vertex Gramian at `base` with an explicit column order.
    pub fn gramian_ordered(
        &self,
        base: usize,
        order: &[usize],
    ) -> Result<VertexGramian, SimplexError> {
        if base > self.n {
            return Err(SimplexError::BadIndex(base));
        }
        let mut seen = vec![false; self.n + 1];
        seen[base] = true;
        for &k in order {
            if k > self.n || seen[k] {
                return Err(SimplexError::BadOrder);
            }
            seen[k] = true;
        }
        if order.len() != self.n {
            return Err(SimplexError::BadOrder);
        }
        Ok(VertexGramian {
            base,
            order: order.to_vec(),
            mat: self.gram_matrix(base, order),
        })
    }

    /// All n+1 vertex Gramians in base order.
    pub fn all_gramians(&self) -> Vec<VertexGramian> {
        (0..=self.n)
            .map(|b| self.gramian(b).expect("valid base"))
            .collect()
    }

    /// Barycentric coordinates of `x` with respect to the n+1 vertices.
    pub fn barycentric(&self, x: &[Rat]) -> Vec<Rat> {
        let g = self.gram_matrix_at(0);
        let dx = sub(x, &self.verts[0]);
        let rhs: Vec<Rat> = (1..=self.n)
            .map(|k| self.inner(&dx, &self.edge(0, k)))
            .collect();
        let t = g.solve(&rhs).expect("nondegenerate simplex");
        let mut bary = Vec::with_capacity(self.n + 1);
        let mut sum = Rat::zero();
        for v in &t {
            sum = sum + v.clone();
        }
        bary.push(Rat::one() - sum);
        bary.extend(t);
        bary
    }

    /// Point with the given barycentric coordinates.
    pub fn point_from_barycentric(&self, bary: &[Rat]) -> Vec<Rat> {
        assert_eq!(bary.len(), self.n + 1);
        let mut p = vec![Rat::zero(); self.n];
        for (b, v) in bary.iter().zip(&self.verts) {
            for c in 0..self.n {
                p[c] = p[c].clone() + b.clone() * v[c].clone();
            }
        }
        p
    }

    /// Orthogonal projection of `x` onto the affine hull of a face, plus the
    /// barycentric coordinates of the foot over the face vertices.
    /// `x` projects onto the face itself iff every coordinate is >= 0.
    pub fn project_onto_face(&self, x: &[Rat], face: &[usize]) -> FaceProjection {
        assert!(!face.is_empty(), "face needs at least one vertex");
        let p0 = &self.verts[face[0]];
        let dirs: Vec<Vec<Rat>> = face[1..].iter().map(|&k| self.edge(face[0], k)).collect();
        if dirs.is_empty() {
            return FaceProjection {
                foot: p0.clone(),
                barycentric: vec![Rat::one()],
            };
        }
        let g = SymMat::from_fn(dirs.len(), |i, j| self.inner(&dirs[i], &dirs[j]));
        let dx = sub(x, p0);
        let rhs: Vec<Rat> = dirs.iter().map(|d| self.inner(&dx, d)).collect();
        let t = g.solve(&rhs).expect("face vertices affinely independent");
        let mut foot = p0.clone();
        for (ti, d) in t.iter().zip(&dirs) {
            for c in 0..self.n {
                foot[c] = foot[c].clone() + ti.clone() * d[c].clone();
            }
        }
        let mut bary = Vec::with_capacity(face.len());
        let mut sum = Rat::zero();
        for v in &t {
            sum = sum + v.clone();
        }
        bary.push(Rat::one() - sum);
        bary.extend(t);
        FaceProjection {
            foot,
            barycentric: bary,
        }
    }

    /// Squared volume times `(n!)^2`, i.e. `det` of a vertex Gramian.
    pub fn gram_determinant(&self) -> Rat {
        self.gram_matrix_at(0).determinant()
    }

    pub fn to_literal(&self) -> SimplexLiteral {
        SimplexLiteral {
            n: self.n,
            vertices: self
                .verts
                .iter()
                .map(|v| v.iter().map(|c| c.to_literal()).collect())
                .collect(),
            metric: if self.has_unit_metric() {
                None
            } else {
                Some(self.metric.iter().map(|m| m.to_literal()).collect())
            },
        }
    }

    pub fn from_literal(lit: &SimplexLiteral) -> Result<Self, SimplexError> {
        let verts: Result<Vec<Vec<Rat>>, _> = lit
            .vertices
            .iter()
            .map(|v| v.iter().map(|s| Rat::parse_literal(s)).collect())
            .collect();
        let verts = verts.map_err(|_| SimplexError::Degenerate)?;
        if verts.len() != lit.n + 1 {
            return Err(SimplexError::VertexCount {
                verts: verts.len(),
                dim: lit.n,
            });
        }
        match &lit.metric {
            None => Self::new(verts),
            Some(m) => {
                let metric: Result<Vec<Rat>, _> =
                    m.iter().map(|s| Rat::parse_literal(s)).collect();
                Self::with_metric(verts, metric.map_err(|_| SimplexError::NonpositiveMetric)?)
            }
        }
    }
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

/// Wire format of a simplex literal.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SimplexLiteral {
    pub n: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<String>>,
}

/// Projection of a point onto a face.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceProjection {
    pub foot: Vec<Rat>,
    pub barycentric: Vec<Rat>,
}

impl FaceProjection {
    /// Foot lies on the face (closed).
    pub fn inside(&self) -> bool {
        self.barycentric.iter().all(|b| b.sign() != Sign::Negative)
    }

    /// Foot lies in the relative interior of the face.
    pub fn strictly_inside(&self) -> bool {
        self.barycentric.iter().all(|b| b.sign() == Sign::Positive)
    }
}

/// An SPD matrix tagged with the vertex labels it describes: entry `(i, j)`
/// is the inner product of the edges from `base` to `order[i]` and `order[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexGramian {
    base: usize,
    order: Vec<usize>,
    mat: RatMat,
}

impl VertexGramian {
    /// Wraps a bare SPD matrix with the canonical labeling `0; 1..n`.
    pub fn from_matrix(mat: RatMat) -> Result<Self, MatError> {
        mat.ldlt()?;
        let n = mat.n();
        Ok(VertexGramian {
            base: 0,
            order: (1..=n).collect(),
            mat,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn matrix(&self) -> &RatMat {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    /// Vertex label at a local index: 0 is the base, `i >= 1` is column `i`.
    pub fn label_of_local(&self, local: usize) -> usize {
        if local == 0 {
            self.base
        } else {
            self.order[local - 1]
        }
    }

    /// Local index of a vertex label.
    pub fn local_of_label(&self, label: usize) -> Option<usize> {
        if label == self.base {
            return Some(0);
        }
        self.order.iter().position(|&l| l == label).map(|p| p + 1)
    }

    /// Change of base vertex without coordinates. `local = 0` returns the
    /// Gramian unchanged; `local = j >= 1` makes column `j`'s vertex the new
    /// base, with the old base taking its column slot.
    pub fn rebase(&self, local: usize) -> VertexGramian {
        assert!(local <= self.n(), "rebase index out of range");
        if local == 0 {
            return self.clone();
        }
        let mut order = self.order.clone();
        let new_base = order[local - 1];
        order[local - 1] = self.base;
        VertexGramian {
            base: new_base,
            order,
            mat: rebase_gramian(&self.mat, local),
        }
    }

    /// Gramian of the face spanned by the given vertex labels, based at the
    /// first label. Faces not containing the current base are reached through
    /// one base change; everything else is a principal submatrix.
    pub fn face_matrix(&self, labels: &[usize]) -> RatMat {
        assert!(labels.len() >= 2, "face needs at least an edge");
        let at_base = if labels[0] == self.base {
            self.clone()
        } else {
            let local = self
                .local_of_label(labels[0])
                .expect("label addresses a vertex of this Gramian");
            self.rebase(local)
        };
        let cols: Vec<usize> = labels[1..]
            .iter()
            .map(|&l| {
                at_base
                    .local_of_label(l)
                    .expect("label addresses a vertex of this Gramian")
                    - 1
            })
            .collect();
        at_base.mat.principal(&cols)
    }

    /// The underlying simplex, reconstructed with the base at the origin and
    /// the Cholesky gauge: vertex `order[j]` spans coordinates `0..=j`. The
    /// metric carries the pivots so all inner products remain exact. Each
    /// coordinate axis is rescaled to integer coordinates (compensated in the
    /// metric), which keeps the arithmetic small in later Gram solves.
    pub fn reconstruct(&self) -> Result<Simplex, MatError> {
        use num::{BigInt, BigRational, Integer, One};
        let f = self.mat.ldlt()?;
        let n = self.n();
        // per-axis scale: clear the denominators of the factor column
        let mut scale = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in i..n {
                lcm = lcm.lcm(f.l.get(j, i).inner().denom());
            }
            scale.push(Rat::from_big(BigRational::from(lcm)));
        }
        let mut verts = vec![vec![Rat::zero(); n]];
        for j in 0..n {
            let mut v = vec![Rat::zero(); n];
            for i in 0..=j {
                v[i] = f.l.get(j, i).clone() * scale[i].clone();
            }
            verts.push(v);
        }
        let metric = f
            .d
            .into_iter()
            .zip(&scale)
            .map(|(d, s)| d / (s.clone() * s.clone()))
            .collect();
        Simplex::with_metric(verts, metric).map_err(|_| MatError::Singular)
    }
}

/// Inner products of all n+1 inward facet normals plus the facet heights.
///
/// Index 0 is the facet opposite the Gramian's base vertex; index `j >= 1`
/// is the facet opposite the vertex in column `j`. The lower-right `n x n`
/// block equals the inverse Gramian, and row 0 is forced by the identity
/// `q_0 = -(q_1 + ... + q_n)`, so every row of the matrix sums to zero.
#[derive(Clone, Debug)]
pub struct NormalData<S: Scalar> {
    pub mat: SymMat<S>,
    pub heights: Vec<f64>,
}

pub fn normal_data<S: Scalar>(g: &SymMat<S>) -> Result<NormalData<S>, MatError> {
    let n = g.n();
    let inv = g.inverse()?;
    let mut m = SymMat::<S>::zero(n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i + 1, j + 1, inv.get(i, j).clone());
        }
    }
    for j in 0..n {
        let mut s = S::zero();
        for i in 0..n {
            s = s + inv.get(i, j).clone();
        }
        m.set_sym(0, j + 1, -s);
    }
    let e = ones::<S>(n);
    m.set(0, 0, inv.quad_form(&e, &e));
    let heights = (0..=n)
        .map(|j| 1.0 / m.get(j, j).to_f64().sqrt())
        .collect();
    Ok(NormalData { mat: m, heights })
}

/// Facet pairs sorted by angle type: obtuse pairs have a positive normal
/// inner product, right pairs a vanishing one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DihedralReport {
    pub obtuse: Vec<(usize, usize)>,
    pub right: Vec<(usize, usize)>,
}

impl DihedralReport {
    pub fn is_nonobtuse(&self) -> bool {
        self.obtuse.is_empty()
    }

    /// Number of obtuse partners per facet index.
    pub fn per_facet_counts(&self, facets: usize) -> Vec<usize> {
        let mut c = vec![0usize; facets];
        for &(i, j) in &self.obtuse {
            c[i] += 1;
            c[j] += 1;
        }
        c
    }
}

pub fn dihedral_report<S: Scalar>(g: &SymMat<S>) -> Result<DihedralReport, MatError> {
    let nd = normal_data(g)?;
    Ok(dihedral_report_from_normals(&nd))
}

pub fn dihedral_report_from_normals<S: Scalar>(nd: &NormalData<S>) -> DihedralReport {
    let m = &nd.mat;
    let mut rep = DihedralReport::default();
    for i in 0..m.n() {
        for j in (i + 1)..m.n() {
            match m.get(i, j).sign() {
                Sign::Positive => rep.obtuse.push((i, j)),
                Sign::Zero => rep.right.push((i, j)),
                Sign::Negative => {}
            }
        }
    }
    rep
}

/// Inradius and circumradius of the underlying simplex.
///
/// The circumradius comes from `r_c = (1/2) sqrt(v^T A^{-1} v)` with
/// `v = sum_j a_jj e_j`. The inradius uses `1/r_i = ||q_0|| + sum_j ||q_j||`,
/// the sum of reciprocal facet heights; the quadratic forms are evaluated in
/// the scalar field and only the final square roots run in floating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Radii {
    pub inradius: f64,
    pub circumradius: f64,
}

pub fn radii<S: Scalar>(g: &SymMat<S>) -> Result<Radii, MatError> {
    let n = g.n();
    let inv = g.inverse()?;
    let v: Vec<S> = (0..n).map(|j| g.get(j, j).clone()).collect();
    let circum = 0.5 * inv.quad_form(&v, &v).to_f64().sqrt();
    let e = ones::<S>(n);
    let mut inv_r = inv.quad_form(&e, &e).to_f64().sqrt();
    for j in 0..n {
        inv_r += inv.get(j, j).to_f64().sqrt();
    }
    Ok(Radii {
        inradius: 1.0 / inv_r,
        circumradius: circum,
    })
}

/// `e_j` in the coordinate space of a Gramian (test convenience).
pub fn gram_basis(n: usize, j: usize) -> Vec<Rat> {
    basis_vec(n, j)
}

/// Multiset of squared pairwise distances, sorted (congruence fingerprint).
pub fn squared_distance_multiset(s: &Simplex) -> Vec<Rat> {
    let mut out = Vec::new();
    for i in 0..=s.n() {
        for j in (i + 1)..=s.n() {
            out.push(s.squared_edge(i, j));
        }
    }
    out.sort();
    out
}

/// Dot product helper re-exported for the geometry modules.
pub fn vec_dot(x: &[Rat], y: &[Rat]) -> Rat {
    dot(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rq};

    pub fn fig_triangle() -> Simplex {
        Simplex::from_int_vertices(&[&[0, 0], &[1, 0], &[2, 1]]).unwrap()
    }

    /// Unit path 4-simplex: 0, e1, e1+e2, e1+e2+e3, e1+e2+e3+e4.
    pub fn unit_path_4() -> Simplex {
        Simplex::from_int_vertices(&[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[1, 1, 1, 0],
            &[1, 1, 1, 1],
        ])
        .unwrap()
    }

    /// Two unit-cube corners glued along a shared right-isosceles face.
    pub fn glued_corners() -> Simplex {
        Simplex::from_int_vertices(&[&[0, 1, 0], &[1, 0, 0], &[1, 2, 0], &[1, 1, 1]]).unwrap()
    }

    fn regular_gramian(n: usize) -> RatMat {
        SymMat::from_fn(n, |i, j| if i == j { rat(2) } else { rat(1) })
    }

    #[test]
    fn triangle_gramians_match_both_bases() {
        let t = fig_triangle();
        let gu = t.gramian(0).unwrap();
        assert_eq!(gu.matrix(), &SymMat::from_int_rows(&[&[1, 2], &[2, 5]]));
        let gv = t.gramian(1).unwrap();
        assert_eq!(gv.matrix(), &SymMat::from_int_rows(&[&[1, -1], &[-1, 2]]));
    }

    #[test]
    fn segment_gramian() {
        let s = Simplex::from_int_vertices(&[&[0], &[1]]).unwrap();
        assert_eq!(s.gramian(0).unwrap().matrix(), &RatMat::identity(1));
    }

    #[test]
    fn degenerate_vertices_rejected() {
        assert_eq!(
            Simplex::from_int_vertices(&[&[0, 0], &[1, 0], &[2, 0]]).unwrap_err(),
            SimplexError::Degenerate
        );
    }

    #[test]
    fn rebase_reproduces_other_vertex() {
        let t = fig_triangle();
        let gu = t.gramian(0).unwrap();
        let gv = gu.rebase(1);
        assert_eq!(gv.base(), 1);
        assert_eq!(gv.matrix(), t.gramian(1).unwrap().matrix());
        // identity rebase
        assert_eq!(gu.rebase(0).matrix(), gu.matrix());
        // applying twice returns a permutation-equivalent copy
        assert_eq!(gv.rebase(1).matrix(), gu.matrix());
    }

    #[test]
    fn rebase_walks_the_unit_path() {
        use crate::mat::permutation_equivalent;
        let s = unit_path_4();
        let g0 = s.gramian(0).unwrap();
        let g1_direct = s.gramian(1).unwrap();
        let g1 = g0.rebase(1);
        assert!(permutation_equivalent(g1.matrix(), g1_direct.matrix()));
        let g2 = g0.rebase(2);
        assert!(permutation_equivalent(
            g2.matrix(),
            s.gramian(2).unwrap().matrix()
        ));
    }

    #[test]
    fn reconstruct_identity_gives_unit_corner() {
        let g = VertexGramian::from_matrix(RatMat::identity(3)).unwrap();
        let s = g.reconstruct().unwrap();
        assert_eq!(s.vertex(0), &[rat(0), rat(0), rat(0)]);
        for j in 1..=3 {
            assert_eq!(s.squared_edge(0, j), rat(1));
        }
        assert_eq!(
            s.gramian(0).unwrap().matrix(),
            &RatMat::identity(3)
        );
    }

    #[test]
    fn reconstruct_triangle_is_congruent() {
        let g = VertexGramian::from_matrix(SymMat::from_int_rows(&[&[1, 2], &[2, 5]])).unwrap();
        let s = g.reconstruct().unwrap();
        assert_eq!(s.gramian(0).unwrap().matrix(), g.matrix());
        assert_eq!(
            squared_distance_multiset(&s),
            squared_distance_multiset(&fig_triangle())
        );
    }

    #[test]
    fn reconstruct_regular_tetrahedron_edges() {
        let g = VertexGramian::from_matrix(regular_gramian(3)).unwrap();
        let s = g.reconstruct().unwrap();
        for i in 0..=3 {
            for j in (i + 1)..=3 {
                assert_eq!(s.squared_edge(i, j), rat(2));
            }
        }
    }

    #[test]
    fn normal_data_of_unit_corner() {
        let nd = normal_data(&RatMat::identity(2)).unwrap();
        let expect = SymMat::from_int_rows(&[&[2, -1, -1], &[-1, 1, 0], &[-1, 0, 1]]);
        assert_eq!(nd.mat, expect);
        // heights are reciprocal normal lengths
        assert!((nd.heights[0] - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!((nd.heights[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normal_rows_sum_to_zero() {
        let t = fig_triangle();
        let nd = normal_data(t.gramian(0).unwrap().matrix()).unwrap();
        for i in 0..3 {
            let mut s = rat(0);
            for j in 0..3 {
                s = s + nd.mat.get(i, j).clone();
            }
            assert_eq!(s, rat(0));
        }
    }

    #[test]
    fn regular_simplex_has_all_negative_normal_products() {
        let nd = normal_data(&regular_gramian(3)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(nd.mat.get(i, j).sign(), Sign::Negative);
                }
            }
        }
        let rep = dihedral_report(&regular_gramian(3)).unwrap();
        assert!(rep.obtuse.is_empty() && rep.right.is_empty());
    }

    #[test]
    fn obtuse_triangle_has_one_obtuse_pair() {
        let rep = dihedral_report(fig_triangle().gramian(0).unwrap().matrix()).unwrap();
        assert_eq!(rep.obtuse, vec![(0, 2)]);
        assert!(rep.right.is_empty());
    }

    #[test]
    fn glued_corners_has_one_obtuse_pair_between_unit_faces() {
        let s = glued_corners();
        let g = s.gramian(0).unwrap();
        assert_eq!(
            g.matrix(),
            &SymMat::from_int_rows(&[&[2, 0, 1], &[0, 2, 1], &[1, 1, 2]])
        );
        let rep = dihedral_report(g.matrix()).unwrap();
        assert_eq!(rep.obtuse.len(), 1);
        // the obtuse pair is between the facets opposite vertices 1 and 2,
        // which are the two equilateral faces
        assert_eq!(rep.obtuse[0], (1, 2));
    }

    #[test]
    fn radii_of_unit_right_triangle() {
        let r = radii(&RatMat::identity(2)).unwrap();
        assert!((r.circumradius - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!((r.inradius - 1.0 / (2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn radii_of_regular_tetrahedron_and_segment() {
        let r = radii(&regular_gramian(3)).unwrap();
        assert!((r.circumradius - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let seg = radii(&RatMat::identity(1)).unwrap();
        assert!((seg.circumradius - 0.5).abs() < 1e-15);
    }

    #[test]
    fn radii_invariant_under_rebase() {
        let s = glued_corners();
        let r0 = radii(s.gramian(0).unwrap().matrix()).unwrap();
        for b in 1..=3 {
            let rb = radii(s.gramian(b).unwrap().matrix()).unwrap();
            assert!((r0.circumradius - rb.circumradius).abs() < 1e-9);
            assert!((r0.inradius - rb.inradius).abs() < 1e-9);
        }
    }

    #[test]
    fn projection_onto_vertex_and_faces() {
        let s = glued_corners();
        // projecting a face vertex onto the face returns the vertex itself
        let p = s.project_onto_face(&s.vertex(1).to_vec(), &[1, 2]);
        assert_eq!(p.foot, s.vertex(1));
        assert_eq!(p.barycentric, vec![rat(1), rat(0)]);

        // vertex 1 onto its opposite facet {0, 2, 3}: the foot lies on the
        // plane -x+y+z = 1 but outside the face, with one negative weight
        let q = s.project_onto_face(&s.vertex(1).to_vec(), &[0, 2, 3]);
        assert_eq!(q.barycentric, vec![rq(2, 3), rq(-1, 3), rq(2, 3)]);
        assert!(!q.inside());
        let f = &q.foot;
        assert_eq!(
            -f[0].clone() + f[1].clone() + f[2].clone(),
            rat(1)
        );
    }

    #[test]
    fn regular_vertex_projects_onto_centroid() {
        let g = VertexGramian::from_matrix(regular_gramian(3)).unwrap();
        let s = g.reconstruct().unwrap();
        let p = s.project_onto_face(&s.vertex(0).to_vec(), &[1, 2, 3]);
        assert_eq!(p.barycentric, vec![rq(1, 3), rq(1, 3), rq(1, 3)]);
        assert!(p.inside());
    }

    #[test]
    fn gram_determinant_is_base_invariant() {
        let s = glued_corners();
        let d0 = s.gramian(0).unwrap().matrix().determinant();
        for b in 1..=3 {
            assert_eq!(s.gramian(b).unwrap().matrix().determinant(), d0.clone());
        }
    }

    #[test]
    fn face_matrix_via_principal_or_rebase() {
        let s = unit_path_4();
        let g0 = s.gramian(0).unwrap();
        // face containing the base: principal submatrix
        let f = g0.face_matrix(&[0, 1, 2]);
        assert_eq!(f, s.gramian(0).unwrap().matrix().principal(&[0, 1]));
        // face avoiding the base: route through a base change
        let f2 = g0.face_matrix(&[1, 2, 3]);
        let direct = SymMat::from_fn(2, |i, j| {
            let e1 = s.edge(1, [2, 3][i]);
            let e2 = s.edge(1, [2, 3][j]);
            s.inner(&e1, &e2)
        });
        assert_eq!(f2, direct);
    }

    #[test]
    fn simplex_literal_round_trip() {
        let s = glued_corners();
        let lit = s.to_literal();
        let back = Simplex::from_literal(&lit).unwrap();
        assert_eq!(back, s);
        // metric simplices keep their metric
        let g = VertexGramian::from_matrix(regular_gramian(3)).unwrap();
        let m = g.reconstruct().unwrap();
        let lit2 = m.to_literal();
        assert!(lit2.metric.is_some());
        assert_eq!(Simplex::from_literal(&lit2).unwrap(), m);
    }
}
