//! Constructive completely positive factorizations.
//!
//! A vertex Gramian of a nonobtuse simplex factors as `U^T U` with `U`
//! nonnegative upper triangular in any column order; geometrically the
//! simplex embeds in the nonnegative orthant with the base vertex at the
//! origin. When only the facets are nonobtuse (dimension at least three), a
//! suitable column order still exists: the last vertex is placed over a
//! sub-face chain chosen so that its projection keeps nonnegative
//! coordinates. Nonnegativity of `U` is certified on the rational `L D L^T`
//! data; floating point appears only in the emitted factor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::is_inverse_mdd;
use crate::mat::{CholeskyFactor, MatError, RatMat};
use crate::scalar::{Rat, Scalar, Sign};
use crate::simplex::{Simplex, SimplexError, VertexGramian};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CpError {
    #[error("the underlying simplex is not nonobtuse")]
    NotNonobtuse,
    #[error("negative factor entry on a nonobtuse Gramian; this contradicts the embedding theorem")]
    NegativeEntry,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no vertex ordering yields a nonnegative factor")]
    ExhaustedOrderings,
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// Nonnegative upper-triangular factor of a (column-reordered) vertex
/// Gramian, together with the vertex ordering that realized it. The first
/// label is the base vertex; the rest are the column labels in factor order.
#[derive(Clone, Debug)]
pub struct CpFactor {
    pub ordering: Vec<usize>,
    pub factor: CholeskyFactor<Rat>,
}

impl CpFactor {
    /// `U^T U`, exactly; equals the Gramian with columns in factor order.
    pub fn factored_matrix(&self) -> RatMat {
        self.factor.rt_r()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.factor.to_f64_rows()
    }

    pub fn dto(&self) -> CpFactorDto {
        CpFactorDto {
            ordering: self.ordering.clone(),
            factor: self
                .to_f64_rows()
                .iter()
                .map(|row| row.iter().map(|v| format!("{v}")).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CpFactorDto {
    pub ordering: Vec<usize>,
    pub factor: Vec<Vec<String>>,
}

/// Column permutation applied to a Gramian matrix (0-based column indices).
fn permute_columns(g: &RatMat, cols: &[usize]) -> RatMat {
    RatMat::from_fn(g.n(), |i, j| g.get(cols[i], cols[j]).clone())
}

/// Cholesky factor of a nonobtuse-simplex Gramian, certified nonnegative.
///
/// The natural column order works: every prefix of vertices spans a face of
/// a nonobtuse simplex, and each next vertex projects into the face spanned
/// so far, so its partial coordinates are convex combinations of nonnegative
/// ones.
pub fn nonneg_cholesky(g: &VertexGramian) -> Result<CpFactor, CpError> {
    let factor = g.matrix().cholesky_upper()?;
    if factor.is_nonnegative() {
        let mut ordering = vec![g.base()];
        ordering.extend_from_slice(g.order());
        return Ok(CpFactor { ordering, factor });
    }
    if is_inverse_mdd(g.matrix())? {
        Err(CpError::NegativeEntry)
    } else {
        Err(CpError::NotNonobtuse)
    }
}

/// Brute-force search over column orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fallback {
    BruteForce,
    Off,
}

/// Factors a vertex Gramian of a simplex with nonobtuse facets (dimension at
/// least three), even when the simplex itself has obtuse dihedral angles.
///
/// The ordering is found constructively: choose the last vertex `w`, let `F`
/// be its opposite facet (which contains the base), and pick a facet `G` of
/// `F` through the base such that the projection of `w` onto `F` lies in the
/// interior cylinder over `G`. Ordering the columns as `G`'s vertices, then
/// the vertex of `F` opposite `G`, then `w` makes every Cholesky column
/// nonnegative. A brute-force fallback over all orderings guards the
/// construction.
pub fn cp_factor_nonobtuse_facets(
    g: &VertexGramian,
    fallback: Fallback,
) -> Result<CpFactor, CpError> {
    let n = g.n();
    if n < 3 {
        return Err(CpError::NotApplicable(format!(
            "needs dimension >= 3, got {n}"
        )));
    }
    for j in 0..=n {
        let facet: Vec<usize> = (0..=n).map(|l| g.label_of_local(l)).filter(|&l| l != g.label_of_local(j)).collect();
        if !is_inverse_mdd(&g.face_matrix(&facet))? {
            return Err(CpError::NotApplicable(format!(
                "facet opposite vertex {} is obtuse",
                g.label_of_local(j)
            )));
        }
    }
    // the natural order often works outright (always, for nonobtuse input)
    let natural = g.matrix().cholesky_upper()?;
    if natural.is_nonnegative() {
        let mut ordering = vec![g.base()];
        ordering.extend_from_slice(g.order());
        return Ok(CpFactor {
            ordering,
            factor: natural,
        });
    }
    if let Some(cp) = constructive_ordering(g)? {
        return Ok(cp);
    }
    match fallback {
        Fallback::BruteForce => brute_force_ordering(g)?.ok_or(CpError::ExhaustedOrderings),
        Fallback::Off => Err(CpError::ExhaustedOrderings),
    }
}

/// The pigeonhole ordering search, in local indices (0 = base).
fn constructive_ordering(g: &VertexGramian) -> Result<Option<CpFactor>, CpError> {
    let n = g.n();
    let s: Simplex = g.reconstruct()?;
    for w in 1..=n {
        let f_locals: Vec<usize> = (0..=n).filter(|&l| l != w).collect();
        let pi = s.project_onto_face(s.vertex(w), &f_locals);
        // affine coordinates of the projection over F's vertices
        let coords = &pi.barycentric;
        for (zi, &z) in f_locals.iter().enumerate() {
            if z == 0 {
                continue;
            }
            // the side of F's sub-face opposite z: coordinate of z must not
            // be negative
            if coords[zi].sign() == Sign::Negative {
                continue;
            }
            // projection of the foot onto the sub-face G = F minus z
            let g_locals: Vec<usize> = f_locals.iter().copied().filter(|&l| l != z).collect();
            let onto_g = s.project_onto_face(&pi.foot, &g_locals);
            if !onto_g.inside() {
                continue;
            }
            // ordering: G's non-base vertices, then z, then w
            let mut cols: Vec<usize> = g_locals.iter().copied().filter(|&l| l != 0).collect();
            cols.push(z);
            cols.push(w);
            let perm: Vec<usize> = cols.iter().map(|&l| l - 1).collect();
            let factor = permute_columns(g.matrix(), &perm).cholesky_upper()?;
            if factor.is_nonnegative() {
                let mut ordering = vec![g.base()];
                ordering.extend(cols.iter().map(|&l| g.label_of_local(l)));
                return Ok(Some(CpFactor { ordering, factor }));
            }
        }
    }
    Ok(None)
}

fn brute_force_ordering(g: &VertexGramian) -> Result<Option<CpFactor>, CpError> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let factor = permute_columns(g.matrix(), &perm).cholesky_upper()?;
        if factor.is_nonnegative() {
            let mut ordering = vec![g.base()];
            ordering.extend(perm.iter().map(|&c| g.label_of_local(c + 1)));
            return Ok(Some(CpFactor { ordering, factor }));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
