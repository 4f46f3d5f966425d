//! Dual-hull machinery and sub-orthocentric geometry.
//!
//! For a nonobtuse simplex S the dual hull S* is the set of points that
//! project orthogonally onto every facet; it splits into S and one cell per
//! facet. Independently, the altitude feet cut S into per-facet cells whose
//! removal leaves the sub-orthocentric set S_*. Both constructions run in
//! exact arithmetic: sub-orthocentric membership is a codimension-one
//! condition a floating sign test cannot certify.
//!
//! Convention notes: half-space and cylinder membership are closed, interiors
//! are strict. For a line segment the sub-orthocentric set is its midpoint by
//! convention; the general cell construction does not reduce to that case, so
//! segments are special-cased wherever facets of triangles come up.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{is_inverse_mdd, is_nonblocking};
use crate::mat::MatError;
use crate::scalar::{Rat, Scalar, Sign};
use crate::simplex::{dihedral_report, normal_data, Simplex, SimplexError, VertexGramian};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("the simplex has an obtuse dihedral angle; the dual hull is undefined")]
    NotNonobtuse,
    #[error("point lies outside the simplex")]
    PointOutsideSimplex,
    #[error("operation needs dimension >= {min}, got {got}")]
    Dimension { min: usize, got: usize },
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// Number of closed facet half-spaces containing `x` (boundaries included).
pub fn nu(s: &Simplex, x: &[Rat]) -> usize {
    s.barycentric(x)
        .iter()
        .filter(|b| b.sign() != Sign::Negative)
        .count()
}

/// Position of a point relative to the cylinder over facet `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CylinderSide {
    /// Inside the cylinder, on the simplex side of the facet plane.
    InteriorPlus,
    /// Inside the cylinder, on the far side of the facet plane.
    ExteriorMinus,
    /// On the facet plane itself (and inside the cylinder).
    OnFacetPlane,
    /// Does not project onto the facet.
    OutsideCylinder,
}

pub fn cylinder_side(s: &Simplex, x: &[Rat], j: usize) -> CylinderSide {
    let facet: Vec<usize> = (0..=s.n()).filter(|&k| k != j).collect();
    let proj = s.project_onto_face(x, &facet);
    if !proj.inside() {
        return CylinderSide::OutsideCylinder;
    }
    match s.barycentric(x)[j].sign() {
        Sign::Positive => CylinderSide::InteriorPlus,
        Sign::Zero => CylinderSide::OnFacetPlane,
        Sign::Negative => CylinderSide::ExteriorMinus,
    }
}

/// Cell of the dual hull decomposition `S* = S ∪ S*_0 ∪ ... ∪ S*_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CellKind {
    InsideSimplex,
    FacetCell { facet: usize },
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualHullCell {
    #[serde(flatten)]
    pub kind: CellKind,
    /// Half-space count at the query point.
    pub nu: usize,
}

/// Assigns `x` to a cell of the dual hull of a nonobtuse simplex.
pub fn dual_hull_cell(s: &Simplex, x: &[Rat]) -> Result<DualHullCell, DualError> {
    let g = s.gramian(0)?;
    if !dihedral_report(g.matrix())?.is_nonobtuse() {
        return Err(DualError::NotNonobtuse);
    }
    let bary = s.barycentric(x);
    let count = bary.iter().filter(|b| b.sign() != Sign::Negative).count();
    let mut exterior = Vec::new();
    for j in 0..=s.n() {
        match cylinder_side(s, x, j) {
            CylinderSide::OutsideCylinder => {
                return Ok(DualHullCell {
                    kind: CellKind::Outside,
                    nu: count,
                })
            }
            CylinderSide::ExteriorMinus => exterior.push(j),
            _ => {}
        }
    }
    let kind = match exterior.len() {
        0 => CellKind::InsideSimplex,
        1 => CellKind::FacetCell {
            facet: exterior[0],
        },
        // exterior cylinders have pairwise disjoint interiors, so two strict
        // memberships can only meet outside the dual hull decomposition
        _ => CellKind::Outside,
    };
    Ok(DualHullCell { kind, nu: count })
}

/// One altitude-foot cell `S_l`: either an explicit simplex sharing facet
/// `F_l` with S (given by its apex), or degenerate because `F_l` makes a
/// right dihedral angle with some other facet.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Degenerate,
    Apex(Vec<Rat>),
}

/// Altitude feet and degeneracy flags of a nonobtuse simplex: everything
/// membership queries need, without constructing the cell apexes.
#[derive(Clone, Debug)]
pub struct SubOrthoFrame {
    simplex: Simplex,
    /// `feet[j]` is the orthogonal projection of vertex j onto facet j.
    pub feet: Vec<Vec<Rat>>,
    /// `degenerate[l]` iff facet l makes a right dihedral angle with some
    /// other facet.
    pub degenerate: Vec<bool>,
}

/// Altitude feet plus the explicit per-facet cells.
#[derive(Clone, Debug)]
pub struct SubOrthoCells {
    frame: SubOrthoFrame,
    pub cells: Vec<Cell>,
}

/// Feet and degeneracy flags. Needs `n >= 2` and a nonobtuse simplex.
pub fn suborthocentric_frame(s: &Simplex) -> Result<SubOrthoFrame, DualError> {
    let n = s.n();
    if n < 2 {
        return Err(DualError::Dimension { min: 2, got: n });
    }
    let g = s.gramian(0)?;
    let nd = normal_data(g.matrix())?;
    if !crate::simplex::dihedral_report_from_normals(&nd).is_nonobtuse() {
        return Err(DualError::NotNonobtuse);
    }
    let feet: Vec<Vec<Rat>> = (0..=n)
        .map(|j| {
            let facet: Vec<usize> = (0..=n).filter(|&k| k != j).collect();
            s.project_onto_face(s.vertex(j), &facet).foot
        })
        .collect();
    let degenerate: Vec<bool> = (0..=n)
        .map(|l| (0..=n).any(|i| i != l && nd.mat.get(l, i).sign() == Sign::Zero))
        .collect();
    Ok(SubOrthoFrame {
        simplex: s.clone(),
        feet,
        degenerate,
    })
}

/// Computes the explicit cells by successive half-space clipping.
pub fn suborthocentric_cells(s: &Simplex) -> Result<SubOrthoCells, DualError> {
    let frame = suborthocentric_frame(s)?;
    let n = s.n();
    let mut cells = Vec::with_capacity(n + 1);
    for l in 0..=n {
        if frame.degenerate[l] {
            cells.push(Cell::Degenerate);
        } else {
            cells.push(Cell::Apex(clip_cell_apex(s, &frame.feet, l)));
        }
    }
    Ok(SubOrthoCells { frame, cells })
}

/// Apex of `S_l` (the intersection of the joins `conv{foot_j, F_l}`), built
/// by clipping one join simplex with the facet hyperplanes of the others.
/// Each cut keeps the part containing `F_l`, which stays a simplex with
/// facet `F_l`; its apex moves along the edge toward the facet vertex
/// opposite the cutting hyperplane.
fn clip_cell_apex(s: &Simplex, feet: &[Vec<Rat>], l: usize) -> Vec<Rat> {
    let n = s.n();
    let facet: Vec<usize> = (0..=n).filter(|&k| k != l).collect();
    let mut apex = feet[facet[0]].clone();
    for &j in &facet[1..] {
        for &u in &facet {
            // hyperplane through foot_j and the facet vertices other than u
            let mut pts: Vec<&[Rat]> = vec![&feet[j]];
            for &w in &facet {
                if w != u {
                    pts.push(s.vertex(w));
                }
            }
            let phi_u = affine_side(&pts, s.vertex(u));
            debug_assert!(
                phi_u.sign() != Sign::Zero,
                "facet vertex on join hyperplane"
            );
            let phi_apex = affine_side(&pts, &apex);
            // normalize orientation: positive side holds u
            let (pa, pu) = if phi_u.sign() == Sign::Positive {
                (phi_apex, phi_u)
            } else {
                (-phi_apex, -phi_u)
            };
            if pa.sign() == Sign::Negative {
                // new apex on the segment from the apex to u
                let t = pa.clone() / (pa - pu);
                let u_pt = s.vertex(u);
                apex = apex
                    .iter()
                    .zip(u_pt)
                    .map(|(a, b)| a.clone() + t.clone() * (b.clone() - a.clone()))
                    .collect();
            }
        }
    }
    apex
}

/// Signed side of `x` relative to the hyperplane through `pts` (n points in
/// n-space): the determinant of the difference matrix. Affine in `x`.
fn affine_side(pts: &[&[Rat]], x: &[Rat]) -> Rat {
    let n = x.len();
    debug_assert_eq!(pts.len(), n);
    let rows: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(pts[0])
                .map(|(a, b)| a.clone() - b.clone())
                .collect()
        })
        .chain(std::iter::once(
            x.iter()
                .zip(pts[0])
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
        .collect();
    det_rows(rows)
}

fn det_rows(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| m[r][k].sign() != Sign::Zero);
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det = det * m[k][k].clone();
        for r in (k + 1)..n {
            let f = m[r][k].clone() / m[k][k].clone();
            if f.sign() == Sign::Zero {
                continue;
            }
            for c in k..n {
                m[r][c] = m[r][c].clone() - f.clone() * m[k][c].clone();
            }
        }
    }
    det
}

impl SubOrthoFrame {
    pub fn n(&self) -> usize {
        self.simplex.n()
    }

    pub fn is_degenerate(&self, l: usize) -> bool {
        self.degenerate[l]
    }

    pub fn all_degenerate(&self) -> bool {
        self.degenerate.iter().all(|&d| d)
    }

    /// Barycentric coordinates of `x` in the simplex with the given apex over
    /// facet `F_l`; apex weight first.
    fn apex_barycentric(&self, l: usize, apex: &[Rat], x: &[Rat]) -> Vec<Rat> {
        let s = &self.simplex;
        let n = s.n();
        let facet: Vec<usize> = (0..=n).filter(|&k| k != l).collect();
        let dirs: Vec<Vec<Rat>> = facet
            .iter()
            .map(|&k| {
                s.vertex(k)
                    .iter()
                    .zip(apex)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        let g = crate::mat::SymMat::from_fn(n, |i, j| s.inner(&dirs[i], &dirs[j]));
        let dx: Vec<Rat> = x
            .iter()
            .zip(apex)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        let rhs: Vec<Rat> = dirs.iter().map(|d| s.inner(&dx, d)).collect();
        let t = g.solve(&rhs).expect("cell simplex is nondegenerate");
        let mut sum = Rat::zero();
        for v in &t {
            sum = sum + v.clone();
        }
        let mut bary = vec![Rat::one() - sum];
        bary.extend(t);
        bary
    }

    /// Strict interior of cell `S_l` through the join route: interior of a
    /// finite intersection of convex bodies is the intersection of their
    /// interiors, so no explicit apex is needed.
    pub fn in_cell_interior_by_joins(&self, l: usize, x: &[Rat]) -> bool {
        if self.degenerate[l] {
            return false;
        }
        let n = self.n();
        (0..=n).filter(|&j| j != l).all(|j| {
            self.apex_barycentric(l, &self.feet[j], x)
                .iter()
                .all(|b| b.sign() == Sign::Positive)
        })
    }

    /// Closed membership in cell `S_l` through the join route.
    pub fn in_cell_closed_by_joins(&self, l: usize, x: &[Rat]) -> bool {
        if self.degenerate[l] {
            return false;
        }
        let n = self.n();
        (0..=n).filter(|&j| j != l).all(|j| {
            self.apex_barycentric(l, &self.feet[j], x)
                .iter()
                .all(|b| b.sign() != Sign::Negative)
        })
    }

    /// Membership in the sub-orthocentric set `S_*`: the simplex minus the
    /// interiors of all nondegenerate cells and of their facets.
    pub fn contains_suborthocentric(&self, x: &[Rat]) -> Result<bool, DualError> {
        let bary = self.simplex.barycentric(x);
        if bary.iter().any(|b| b.sign() == Sign::Negative) {
            return Err(DualError::PointOutsideSimplex);
        }
        for l in 0..=self.n() {
            if self.degenerate[l] {
                continue;
            }
            if self.in_cell_interior_by_joins(l, x) {
                return Ok(false);
            }
            // relative interior of facet F_l
            if bary[l].sign() == Sign::Zero
                && bary
                    .iter()
                    .enumerate()
                    .all(|(i, b)| i == l || b.sign() == Sign::Positive)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl SubOrthoCells {
    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn frame(&self) -> &SubOrthoFrame {
        &self.frame
    }

    pub fn feet(&self) -> &[Vec<Rat>] {
        &self.frame.feet
    }

    pub fn is_degenerate(&self, l: usize) -> bool {
        matches!(self.cells[l], Cell::Degenerate)
    }

    pub fn all_degenerate(&self) -> bool {
        self.cells.iter().all(|c| matches!(c, Cell::Degenerate))
    }

    /// Strict interior of cell `S_l` via the explicit apex simplex.
    pub fn in_cell_interior(&self, l: usize, x: &[Rat]) -> bool {
        match &self.cells[l] {
            Cell::Degenerate => false,
            Cell::Apex(apex) => {
                let bary = self.frame.apex_barycentric(l, apex, x);
                bary.iter().all(|b| b.sign() == Sign::Positive)
            }
        }
    }

    /// Closed membership in cell `S_l` via the explicit apex simplex.
    pub fn in_cell_closed(&self, l: usize, x: &[Rat]) -> bool {
        match &self.cells[l] {
            Cell::Degenerate => false,
            Cell::Apex(apex) => {
                let bary = self.frame.apex_barycentric(l, apex, x);
                bary.iter().all(|b| b.sign() != Sign::Negative)
            }
        }
    }

    /// Independent membership route through the joins; cross-checks the
    /// clipped apex construction.
    pub fn in_cell_closed_by_joins(&self, l: usize, x: &[Rat]) -> bool {
        self.frame.in_cell_closed_by_joins(l, x)
    }

    /// Membership in `S_*` via the explicit cells.
    pub fn contains_suborthocentric(&self, x: &[Rat]) -> Result<bool, DualError> {
        let bary = self.frame.simplex.barycentric(x);
        if bary.iter().any(|b| b.sign() == Sign::Negative) {
            return Err(DualError::PointOutsideSimplex);
        }
        for l in 0..=self.n() {
            if self.is_degenerate(l) {
                continue;
            }
            if self.in_cell_interior(l, x) {
                return Ok(false);
            }
            if bary[l].sign() == Sign::Zero
                && bary
                    .iter()
                    .enumerate()
                    .all(|(i, b)| i == l || b.sign() == Sign::Positive)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Membership of `x` in the sub-orthocentric set of a nonobtuse simplex,
/// decided through the join route (no cell construction). For a line
/// segment the set is its midpoint.
pub fn in_suborthocentric_set(s: &Simplex, x: &[Rat]) -> Result<bool, DualError> {
    if s.n() == 1 {
        let t = s.barycentric(x);
        if t.iter().any(|v| v.sign() == Sign::Negative) {
            return Err(DualError::PointOutsideSimplex);
        }
        let a = s.vertex(0);
        let b = s.vertex(1);
        let two = Rat::from_int(2);
        let mid = (a[0].clone() + b[0].clone()) / two;
        return Ok(x[0] == mid);
    }
    suborthocentric_frame(s)?.contains_suborthocentric(x)
}

/// A simplex with nonobtuse facets, each of whose vertices projects into the
/// sub-orthocentric set of its opposite facet. Facets are analyzed in their
/// own frame: the foot transfers through its barycentric coordinates into a
/// congruent reconstruction of the facet.
pub fn is_suborthocentric_simplex(s: &Simplex) -> Result<bool, DualError> {
    let n = s.n();
    if n == 1 {
        return Ok(true);
    }
    let g0 = s.gramian(0)?;
    for j in 0..=n {
        let facet: Vec<usize> = (0..=n).filter(|&k| k != j).collect();
        let face_mat = g0.face_matrix(&facet);
        if !is_inverse_mdd(&face_mat)? {
            return Ok(false);
        }
        let proj = s.project_onto_face(s.vertex(j), &facet);
        if !proj.inside() {
            return Ok(false);
        }
        let frame = VertexGramian::from_matrix(face_mat)?.reconstruct()?;
        let foot = frame.point_from_barycentric(&proj.barycentric);
        if !in_suborthocentric_set(&frame, &foot)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Triangle taxonomy from squared edge lengths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFlags {
    pub equilateral: bool,
    pub right: bool,
    pub strongly_isosceles: bool,
    pub nonobtuse: bool,
    pub obtuse: bool,
}

pub fn classify_triangle(s: &Simplex) -> Result<TriangleFlags, DualError> {
    if s.n() != 2 {
        return Err(DualError::Dimension { min: 2, got: s.n() });
    }
    let e = [
        s.squared_edge(0, 1),
        s.squared_edge(0, 2),
        s.squared_edge(1, 2),
    ];
    let sums = [
        (e[0].clone() + e[1].clone(), &e[2]),
        (e[0].clone() + e[2].clone(), &e[1]),
        (e[1].clone() + e[2].clone(), &e[0]),
    ];
    let right = sums.iter().any(|(s2, t)| &s2 == t);
    let obtuse = sums.iter().any(|(s2, t)| s2 < t);
    let max = e.iter().max().expect("three edges");
    let strongly_isosceles = e.iter().filter(|v| v == &max).count() >= 2;
    Ok(TriangleFlags {
        equilateral: e[0] == e[1] && e[1] == e[2],
        right,
        strongly_isosceles,
        nonobtuse: !obtuse,
        obtuse,
    })
}

/// Tetrahedron taxonomy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetrahedronFlags {
    /// All four faces are nonobtuse triangles.
    pub nonobtuse_facets: bool,
    /// No obtuse dihedral angle.
    pub nonobtuse: bool,
    /// Some pair of opposite edges is orthogonal (two altitudes meet).
    pub semi_orthocentric: bool,
    /// All pairs of opposite edges orthogonal (all altitudes concurrent).
    pub orthocentric: bool,
    /// Nonobtuse faces and a nonblocking vertex Gramian.
    pub sub_orthocentric: bool,
    /// Has a spanning tree of mutually orthogonal edges.
    pub orthogonal: bool,
    /// The orthogonal spanning tree can be a path.
    pub path: bool,
    /// The orthogonal spanning tree can be a star.
    pub cube_corner: bool,
    /// Strongly isosceles faces with three maximal edges at one vertex.
    pub type_i: bool,
    /// Strongly isosceles faces with four equal maximal edges over an
    /// opposite pair.
    pub type_ii: bool,
}

pub fn classify_tetrahedron(s: &Simplex) -> Result<TetrahedronFlags, DualError> {
    if s.n() != 3 {
        return Err(DualError::Dimension { min: 3, got: s.n() });
    }
    let g = s.gramian(0)?;
    let rep = dihedral_report(g.matrix())?;
    let nonobtuse = rep.is_nonobtuse();
    let faces: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    let mut nonobtuse_facets = true;
    let mut faces_si = true;
    for f in &faces {
        let e = [
            s.squared_edge(f[0], f[1]),
            s.squared_edge(f[0], f[2]),
            s.squared_edge(f[1], f[2]),
        ];
        let obtuse = e[0].clone() + e[1].clone() < e[2]
            || e[0].clone() + e[2].clone() < e[1]
            || e[1].clone() + e[2].clone() < e[0];
        if obtuse {
            nonobtuse_facets = false;
        }
        let max = e.iter().max().expect("three edges");
        if e.iter().filter(|v| v == &max).count() < 2 {
            faces_si = false;
        }
    }

    // opposite edge pairs
    let pairs: [((usize, usize), (usize, usize)); 3] =
        [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    let mut ortho_pairs = 0;
    for ((a, b), (c, d)) in pairs {
        let e1 = s.edge(a, b);
        let e2 = s.edge(c, d);
        if s.inner(&e1, &e2).sign() == Sign::Zero {
            ortho_pairs += 1;
        }
    }

    // spanning trees of the 4-vertex edge graph
    let all_edges: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut orthogonal = false;
    let mut path = false;
    let mut cube_corner = false;
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                let tree = [all_edges[i], all_edges[j], all_edges[k]];
                let mut deg = [0usize; 4];
                for (a, b) in tree {
                    deg[a] += 1;
                    deg[b] += 1;
                }
                // three edges on four vertices form a tree iff no vertex is
                // isolated (a 3-cycle leaves one vertex out)
                if deg.contains(&0) {
                    continue;
                }
                let vecs: Vec<Vec<Rat>> = tree.iter().map(|&(a, b)| s.edge(a, b)).collect();
                let ortho = (0..3).all(|p| {
                    ((p + 1)..3).all(|q| s.inner(&vecs[p], &vecs[q]).sign() == Sign::Zero)
                });
                if ortho {
                    orthogonal = true;
                    if deg.contains(&3) {
                        cube_corner = true;
                    } else {
                        path = true;
                    }
                }
            }
        }
    }

    // edge-length patterns over strongly isosceles faces
    let sq = |a: usize, b: usize| s.squared_edge(a, b);
    let all_sq = [sq(0, 1), sq(0, 2), sq(0, 3), sq(1, 2), sq(1, 3), sq(2, 3)];
    let global_max = all_sq.iter().max().expect("six edges").clone();
    let mut type_i = false;
    for v in 0..4 {
        let at_v: Vec<Rat> = (0..4).filter(|&w| w != v).map(|w| sq(v, w)).collect();
        if at_v.iter().all(|e| *e == global_max) {
            type_i = true;
        }
    }
    type_i = type_i && faces_si;
    let mut type_ii = false;
    for ((a, b), (c, d)) in pairs {
        let m = sq(a, b);
        let k = sq(c, d);
        let lateral: Vec<Rat> = all_edges
            .iter()
            .filter(|&&e| e != (a, b) && e != (c, d))
            .map(|&(x, y)| sq(x, y))
            .collect();
        let l = lateral[0].clone();
        if lateral.iter().all(|e| *e == l) && m <= l && k <= l {
            type_ii = true;
        }
    }
    type_ii = type_ii && faces_si;

    Ok(TetrahedronFlags {
        nonobtuse_facets,
        nonobtuse,
        semi_orthocentric: ortho_pairs >= 1,
        orthocentric: ortho_pairs == 3,
        sub_orthocentric: nonobtuse_facets && is_nonblocking(g.matrix()),
        orthogonal,
        path,
        cube_corner,
        type_i,
        type_ii,
    })
}

/// Everything the geometry verbs report about one simplex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeometryReport {
    pub n: usize,
    /// One entry per vertex: barycentric coordinates of its projection onto
    /// the opposite facet and whether the foot lands inside.
    pub vertex_projections: Vec<VertexProjection>,
    pub obtuse_pairs: Vec<(usize, usize)>,
    pub right_pairs: Vec<(usize, usize)>,
    pub nonobtuse: bool,
    /// Per-facet cell of the sub-orthocentric decomposition (nonobtuse only).
    pub suborthocentric_cells: Option<Vec<CellReport>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexProjection {
    pub vertex: usize,
    pub inside: bool,
    pub barycentric: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "kebab-case")]
pub enum CellReport {
    Degenerate { facet: usize },
    Simplex { facet: usize, apex: Vec<String> },
}

pub fn geometry_report(s: &Simplex) -> Result<GeometryReport, DualError> {
    let n = s.n();
    let g = s.gramian(0)?;
    let rep = dihedral_report(g.matrix())?;
    let mut projections = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let facet: Vec<usize> = (0..=n).filter(|&k| k != j).collect();
        let p = s.project_onto_face(s.vertex(j), &facet);
        projections.push(VertexProjection {
            vertex: j,
            inside: p.inside(),
            barycentric: p.barycentric.iter().map(|b| b.to_literal()).collect(),
        });
    }
    let cells = if rep.is_nonobtuse() && n >= 2 {
        let c = suborthocentric_cells(s)?;
        Some(
            c.cells
                .iter()
                .enumerate()
                .map(|(facet, cell)| match cell {
                    Cell::Degenerate => CellReport::Degenerate { facet },
                    Cell::Apex(apex) => CellReport::Simplex {
                        facet,
                        apex: apex.iter().map(|v| v.to_literal()).collect(),
                    },
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(GeometryReport {
        n,
        vertex_projections: projections,
        nonobtuse: rep.is_nonobtuse(),
        obtuse_pairs: rep.obtuse,
        right_pairs: rep.right,
        suborthocentric_cells: cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{RatMat, SymMat};
    use crate::scalar::{rat, rq};

    fn unit_right_triangle() -> Simplex {
        Simplex::from_int_vertices(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    /// Equilateral triangle with side sqrt(2), via metric reconstruction.
    fn equilateral() -> Simplex {
        let g = RatMat::from_int_rows(&[&[2, 1], &[1, 2]]);
        VertexGramian::from_matrix(g)
            .unwrap()
            .reconstruct()
            .unwrap()
    }

    fn glued_corners() -> Simplex {
        Simplex::from_int_vertices(&[&[0, 1, 0], &[1, 0, 0], &[1, 2, 0], &[1, 1, 1]]).unwrap()
    }

    fn unit_path_tetrahedron() -> Simplex {
        Simplex::from_int_vertices(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]).unwrap()
    }

    fn cube_corner() -> Simplex {
        Simplex::from_int_vertices(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()
    }

    #[test]
    fn nu_counts_half_spaces() {
        let t = unit_right_triangle();
        let c = t.centroid();
        assert_eq!(nu(&t, &c), 3);
        for v in 0..=2 {
            assert_eq!(nu(&t, &t.vertex(v).to_vec()), 3);
        }
        // over the hypotenuse, still inside two half-spaces
        assert_eq!(nu(&t, &[rat(1), rat(1)]), 2);
        // far corner regions see only one
        assert_eq!(nu(&t, &[rat(-1), rat(-1)]), 1);
    }

    #[test]
    fn cylinder_sides_of_right_triangle() {
        let t = unit_right_triangle();
        let c = t.centroid();
        for j in 0..=2 {
            assert_eq!(cylinder_side(&t, &c, j), CylinderSide::InteriorPlus);
        }
        // reflection across the hypotenuse: exterior for facet 0, interior
        // for the legs
        let refl = [rat(1), rat(1)];
        assert_eq!(cylinder_side(&t, &refl, 0), CylinderSide::ExteriorMinus);
        assert_eq!(cylinder_side(&t, &refl, 1), CylinderSide::InteriorPlus);
        assert_eq!(cylinder_side(&t, &refl, 2), CylinderSide::InteriorPlus);
        // beyond a vertex: outside at least two cylinders
        let far = [rat(3), rat(-1)];
        let outside = (0..=2)
            .filter(|&j| cylinder_side(&t, &far, j) == CylinderSide::OutsideCylinder)
            .count();
        assert!(outside >= 2);
        // on a leg's plane
        assert_eq!(
            cylinder_side(&t, &[rq(1, 2), rat(0)], 2),
            CylinderSide::OnFacetPlane
        );
    }

    #[test]
    fn dual_hull_cells_of_right_triangle() {
        let t = unit_right_triangle();
        let c = t.centroid();
        let cell = dual_hull_cell(&t, &c).unwrap();
        assert_eq!(cell.kind, CellKind::InsideSimplex);
        assert_eq!(cell.nu, 3);
        let refl = dual_hull_cell(&t, &[rat(1), rat(1)]).unwrap();
        assert_eq!(refl.kind, CellKind::FacetCell { facet: 0 });
        assert_eq!(refl.nu, 2);
        let out = dual_hull_cell(&t, &[rat(3), rat(-1)]).unwrap();
        assert_eq!(out.kind, CellKind::Outside);
    }

    #[test]
    fn dual_hull_undefined_for_obtuse() {
        let t = Simplex::from_int_vertices(&[&[0, 0], &[1, 0], &[2, 1]]).unwrap();
        assert_eq!(
            dual_hull_cell(&t, &[rat(0), rat(0)]).unwrap_err(),
            DualError::NotNonobtuse
        );
    }

    #[test]
    fn equilateral_cells_meet_at_orthocenter() {
        // A=(0,0), B=(1,0), C=(1/2, sqrt(3)/2), written exactly with the
        // metric (1, 3/4) and C=(1/2, 1)
        let s = Simplex::with_metric(
            vec![
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rq(1, 2), rat(1)],
            ],
            vec![rat(1), rq(3, 4)],
        )
        .unwrap();
        let cells = suborthocentric_cells(&s).unwrap();
        assert!(!cells.all_degenerate());
        // the cell over edge AB has its apex at the orthocenter (1/2, 1/3)
        match &cells.cells[2] {
            Cell::Apex(a) => assert_eq!(a, &vec![rq(1, 2), rq(1, 3)]),
            Cell::Degenerate => panic!("equilateral cells are nondegenerate"),
        }
        // S_* is the union of the vertex-orthocenter segments
        let ortho = vec![rq(1, 2), rq(1, 3)];
        assert!(cells.contains_suborthocentric(&ortho).unwrap());
        // midpoint of the segment from A to the orthocenter
        let half_way = vec![rq(1, 4), rq(1, 6)];
        assert!(cells.contains_suborthocentric(&half_way).unwrap());
        // interior point off all three segments
        let off = vec![rq(1, 2), rq(1, 6)];
        assert!(!cells.contains_suborthocentric(&off).unwrap());
        // facet interiors are excluded, vertices stay
        assert!(!cells
            .contains_suborthocentric(&vec![rq(1, 2), rat(0)])
            .unwrap());
        assert!(cells
            .contains_suborthocentric(&vec![rat(0), rat(0)])
            .unwrap());
    }

    #[test]
    fn join_route_agrees_with_clipped_apex() {
        let s = equilateral();
        let cells = suborthocentric_cells(&s).unwrap();
        for i in -2..=8 {
            for j in -2..=8 {
                let x = vec![rq(i, 6), rq(j, 6)];
                for l in 0..=2 {
                    assert_eq!(
                        cells.in_cell_closed(l, &x),
                        cells.in_cell_closed_by_joins(l, &x),
                        "cell {l} at {x:?}"
                    );
                    assert_eq!(
                        cells.in_cell_interior(l, &x),
                        cells.frame().in_cell_interior_by_joins(l, &x),
                        "interior of cell {l} at {x:?}"
                    );
                }
                let inside = s.barycentric(&x).iter().all(|b| b.sign() != Sign::Negative);
                if inside {
                    assert_eq!(
                        cells.contains_suborthocentric(&x).unwrap(),
                        cells.frame().contains_suborthocentric(&x).unwrap(),
                        "set membership at {x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn orthocentric_tetrahedron_cells_share_the_orthocenter() {
        // the cube corner is orthocentric with orthocenter at the corner:
        // the right-angle facets give degenerate cells, and the slanted
        // facet's cell is the join of the orthocenter with that facet
        let s = cube_corner();
        let cells = suborthocentric_cells(&s).unwrap();
        assert!(cells.is_degenerate(1) && cells.is_degenerate(2) && cells.is_degenerate(3));
        match &cells.cells[0] {
            Cell::Apex(a) => assert_eq!(a, &vec![rat(0), rat(0), rat(0)]),
            Cell::Degenerate => panic!("slanted facet cell must be solid"),
        }
        // its sub-orthocentric set is the union of the three right faces
        assert!(in_suborthocentric_set(&s, &[rq(1, 4), rq(1, 4), rat(0)]).unwrap());
        assert!(!in_suborthocentric_set(&s, &[rq(1, 8), rq(1, 8), rq(1, 8)]).unwrap());
        assert!(!in_suborthocentric_set(&s, &[rq(1, 3), rq(1, 3), rq(1, 3)]).unwrap());
    }

    #[test]
    fn path_tetrahedron_cells_all_degenerate() {
        let s = unit_path_tetrahedron();
        let cells = suborthocentric_cells(&s).unwrap();
        assert!(cells.all_degenerate());
        // so the sub-orthocentric set is the whole tetrahedron
        let c = s.centroid();
        assert!(cells.contains_suborthocentric(&c).unwrap());
        assert!(in_suborthocentric_set(&s, &s.vertex(0).to_vec()).unwrap());
    }

    #[test]
    fn segment_set_is_the_midpoint() {
        let s = Simplex::from_int_vertices(&[&[0], &[1]]).unwrap();
        assert!(in_suborthocentric_set(&s, &[rq(1, 2)]).unwrap());
        assert!(!in_suborthocentric_set(&s, &[rq(1, 4)]).unwrap());
        assert_eq!(
            in_suborthocentric_set(&s, &[rat(2)]).unwrap_err(),
            DualError::PointOutsideSimplex
        );
    }

    #[test]
    fn right_triangle_set_is_the_legs() {
        let t = unit_right_triangle();
        let cells = suborthocentric_cells(&t).unwrap();
        // cells over the legs are degenerate, the hypotenuse cell fills the
        // whole triangle
        assert!(cells.is_degenerate(1));
        assert!(cells.is_degenerate(2));
        assert!(!cells.is_degenerate(0));
        // the legs remain, the open interior and hypotenuse interior go
        assert!(in_suborthocentric_set(&t, &[rq(1, 2), rat(0)]).unwrap());
        assert!(in_suborthocentric_set(&t, &[rat(0), rq(1, 3)]).unwrap());
        assert!(!in_suborthocentric_set(&t, &[rq(1, 4), rq(1, 4)]).unwrap());
        assert!(!in_suborthocentric_set(&t, &[rq(1, 2), rq(1, 2)]).unwrap());
    }

    #[test]
    fn suborthocentric_simplex_examples() {
        // regular simplices qualify in every dimension we try
        for n in 2..=4 {
            let g = SymMat::from_fn(n, |i, j| if i == j { rat(2) } else { rat(1) });
            let s = VertexGramian::from_matrix(g)
                .unwrap()
                .reconstruct()
                .unwrap();
            assert!(is_suborthocentric_simplex(&s).unwrap(), "regular n={n}");
        }
        // glued corners: two vertices project outside their opposite facets
        assert!(!is_suborthocentric_simplex(&glued_corners()).unwrap());
        // path tetrahedron: nonblocking Gramian, qualifies
        assert!(is_suborthocentric_simplex(&unit_path_tetrahedron()).unwrap());
        // non-equilateral acute triangle: segment facets demand midpoints
        let acute = Simplex::from_int_vertices(&[&[0, 0], &[5, 0], &[2, 4]]).unwrap();
        assert!(!is_suborthocentric_simplex(&acute).unwrap());
        assert!(is_suborthocentric_simplex(&equilateral()).unwrap());
    }

    #[test]
    fn triangle_taxonomy() {
        let eq = classify_triangle(&equilateral()).unwrap();
        assert!(eq.equilateral && eq.strongly_isosceles && eq.nonobtuse && !eq.right);
        let rt = classify_triangle(&unit_right_triangle()).unwrap();
        // the hypotenuse is a unique longest edge, so the right isosceles
        // triangle is not strongly isosceles
        assert!(rt.right && !rt.strongly_isosceles && !rt.obtuse && !rt.equilateral);
        // two longest edges equal: strongly isosceles, and indeed acute
        let iso = Simplex::from_int_vertices(&[&[0, 0], &[2, 0], &[1, 3]]).unwrap();
        let fl = classify_triangle(&iso).unwrap();
        assert!(fl.strongly_isosceles && fl.nonobtuse && !fl.equilateral);
        // sides 1, 2, sqrt(5.05): squared lengths 1, 4, 101/20
        let s = Simplex::with_metric(
            vec![
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rq(-1, 40), rat(1)],
            ],
            vec![rat(1), rq(6399, 1600)],
        )
        .unwrap();
        let ob = classify_triangle(&s).unwrap();
        assert!(ob.obtuse && !ob.right && !ob.strongly_isosceles && !ob.nonobtuse);
    }

    #[test]
    fn tetrahedron_taxonomy() {
        let cc = classify_tetrahedron(&cube_corner()).unwrap();
        assert!(cc.cube_corner && cc.orthogonal && cc.orthocentric && cc.sub_orthocentric);
        assert!(cc.semi_orthocentric && cc.nonobtuse && !cc.path);

        let path = classify_tetrahedron(&unit_path_tetrahedron()).unwrap();
        assert!(path.path && path.orthogonal && path.semi_orthocentric);
        assert!(path.sub_orthocentric && !path.orthocentric && !path.cube_corner);

        let glued = classify_tetrahedron(&glued_corners()).unwrap();
        assert!(glued.nonobtuse_facets && !glued.nonobtuse);
        // one opposite-edge pair is orthogonal, so two altitudes do meet
        assert!(glued.semi_orthocentric && !glued.orthocentric);
        assert!(!glued.sub_orthocentric && !glued.orthogonal);
        assert!(!glued.type_i && !glued.type_ii);

        // regular tetrahedron is of both isosceles types
        let g = SymMat::from_fn(3, |i, j| if i == j { rat(2) } else { rat(1) });
        let reg = VertexGramian::from_matrix(g)
            .unwrap()
            .reconstruct()
            .unwrap();
        let rf = classify_tetrahedron(&reg).unwrap();
        assert!(rf.type_i && rf.type_ii && rf.sub_orthocentric && rf.orthocentric);
    }

    #[test]
    fn geometry_report_shape() {
        let s = glued_corners();
        let rep = geometry_report(&s).unwrap();
        assert_eq!(rep.vertex_projections.len(), 4);
        assert_eq!(rep.obtuse_pairs.len(), 1);
        assert!(!rep.nonobtuse);
        assert!(rep.suborthocentric_cells.is_none());
        let inside = rep.vertex_projections.iter().filter(|p| p.inside).count();
        assert_eq!(inside, 2);

        let rep2 = geometry_report(&unit_path_tetrahedron()).unwrap();
        assert!(rep2.nonobtuse);
        assert!(rep2.suborthocentric_cells.is_some());
    }
}
