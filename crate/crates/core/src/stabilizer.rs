//! Stabilizer subalgebras of gl(n), group membership, and the Spencer map δ.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{binomial, AlternatingForm, MultiIndex};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// A linear subspace of n×n matrices, canonical under row-major flattening.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixSubspace {
    n: usize,
    space: Subspace,
}

impl MatrixSubspace {
    pub fn span(n: usize, matrices: &[Matrix]) -> Self {
        let flat: Vec<Vec<Scalar>> = matrices
            .iter()
            .map(|m| {
                assert_eq!((m.rows(), m.cols()), (n, n), "matrix size");
                m.flat().to_vec()
            })
            .collect();
        MatrixSubspace {
            n,
            space: Subspace::span(n * n, &flat),
        }
    }

    pub fn from_subspace(n: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient(), n * n);
        MatrixSubspace { n, space }
    }

    pub fn zero(n: usize) -> Self {
        MatrixSubspace::from_subspace(n, Subspace::zero(n * n))
    }

    /// All of gl(n).
    pub fn gl(n: usize) -> Self {
        MatrixSubspace::from_subspace(n, Subspace::full(n * n))
    }

    /// Antisymmetric matrices.
    pub fn so(n: usize) -> Self {
        let mut gens = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                gens.push(Matrix::unit(n, a, b).sub(&Matrix::unit(n, b, a)));
            }
        }
        MatrixSubspace::span(n, &gens)
    }

    /// Matrices whose first k columns vanish.
    pub fn first_columns_zero(n: usize, k: usize) -> Self {
        let gens: Vec<Matrix> = (0..n)
            .flat_map(|r| (k..n).map(move |c| Matrix::unit(n, r, c)))
            .collect();
        MatrixSubspace::span(n, &gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.codim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.space
            .basis()
            .iter()
            .map(|v| Matrix::from_flat(self.n, v))
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.space.contains(m.flat())
    }

    pub fn is_subspace_of(&self, other: &MatrixSubspace) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    pub fn intersection(&self, other: &MatrixSubspace) -> MatrixSubspace {
        MatrixSubspace::from_subspace(self.n, self.space.intersection(&other.space))
    }

    pub fn sum(&self, other: &MatrixSubspace) -> MatrixSubspace {
        MatrixSubspace::from_subspace(self.n, self.space.sum(&other.space))
    }

    /// The image under x ↦ g x g⁻¹.
    pub fn conjugate(&self, g: &Matrix) -> MatrixSubspace {
        let inv = g.inverse().expect("invertible conjugator");
        let images: Vec<Matrix> = self.basis().iter().map(|x| g.mul(x).mul(&inv)).collect();
        MatrixSubspace::span(self.n, &images)
    }

    /// True when [s, W] ⊆ W for every s in `gens`.
    pub fn bracket_invariant(&self, gens: &[Matrix]) -> bool {
        let basis = self.basis();
        gens.iter()
            .all(|s| basis.iter().all(|x| self.contains(&s.bracket(x))))
    }

    /// True when the subspace is a Lie subalgebra.
    pub fn is_bracket_closed(&self) -> bool {
        let basis = self.basis();
        basis
            .iter()
            .enumerate()
            .all(|(i, x)| basis[i + 1..].iter().all(|y| self.contains(&x.bracket(y))))
    }
}

impl fmt::Debug for MatrixSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixSubspace(dim {} in gl({}))", self.dim(), self.n)
    }
}

/// Rows: coefficients of restrict(x.α, k) for each α; columns: the entries x[a][b]
/// in row-major order. Its kernel is {x : restrict(x.α, k) = 0 ∀α}.
pub fn action_matrix(forms: &[AlternatingForm], n: usize, k: usize) -> Result<Matrix> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for form in forms {
        if form.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: form.dim(),
            });
        }
        let keys = MultiIndex::all(k.min(n), form.grade());
        let base = rows.len();
        rows.extend((0..keys.len()).map(|_| vec![Scalar::zero(); n * n]));
        for a in 0..n {
            for b in 0..n {
                let image = form.gl_act(&Matrix::unit(n, a, b))?;
                for (r, key) in keys.iter().enumerate() {
                    let c = image.coefficient(key);
                    if !c.is_zero() {
                        rows[base + r][a * n + b] = c;
                    }
                }
            }
        }
    }
    Ok(Matrix::from_rows_with_cols(rows, n * n))
}

/// {x ∈ gl(n) : x.α = 0 for every listed α}.
pub fn stabilizer(forms: &[AlternatingForm], n: usize) -> Result<MatrixSubspace> {
    restricted_stabilizer(forms, n, n)
}

/// {x ∈ gl(n) : restrict(x.α, k) = 0 for every listed α}.
pub fn restricted_stabilizer(
    forms: &[AlternatingForm],
    n: usize,
    k: usize,
) -> Result<MatrixSubspace> {
    let a = action_matrix(forms, n, k)?;
    Ok(MatrixSubspace::from_subspace(n, Subspace::kernel(&a)))
}

/// True iff the pullback of every listed form under `g` equals the form.
pub fn membership(g: &Matrix, forms: &[AlternatingForm]) -> Result<bool> {
    for f in forms {
        if f.pullback(g)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimensions attached to the skew-symmetrization δ : g ⊗ (ℝⁿ)* → ℝⁿ ⊗ Λ²(ℝⁿ)*.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub n: usize,
    pub dim_g: usize,
    /// dim g⁽¹⁾, the first prolongation.
    pub dim_kernel: usize,
    pub dim_image: usize,
    /// dim h⁰(g) = n·C(n,2) − dim image δ.
    pub dim_h0: usize,
}

impl TorsionReport {
    pub fn rank_nullity_holds(&self) -> bool {
        self.dim_kernel + self.dim_image == self.n * self.dim_g
            && self.dim_h0 + self.dim_image == self.n * binomial(self.n, 2)
    }
}

/// The matrix of δ on the basis {x_b ⊗ eˡ}.
///
/// A basis element sends e_l to x_b; its skew part has components
/// c^j_{kl} − c^j_{lk} with c^j_{kl} = (x_b)^j_k δ_{l,l'}.
pub fn spencer_matrix(g: &MatrixSubspace) -> Matrix {
    let n = g.n();
    let basis = g.basis();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
        .collect();
    let cols = basis.len() * n;
    let mut m = Matrix::zeros(n * pairs.len(), cols);
    for (b, x) in basis.iter().enumerate() {
        for lp in 0..n {
            let col = b * n + lp;
            for j in 0..n {
                for (p, &(k, l)) in pairs.iter().enumerate() {
                    let mut v = Scalar::zero();
                    if l == lp {
                        v += &x[(j, k)];
                    }
                    if k == lp {
                        v -= &x[(j, l)];
                    }
                    if !v.is_zero() {
                        m[(j * pairs.len() + p, col)] = v;
                    }
                }
            }
        }
    }
    m
}

pub fn torsion_report(g: &MatrixSubspace) -> TorsionReport {
    let n = g.n();
    let rank = spencer_matrix(g).rank();
    TorsionReport {
        n,
        dim_g: g.dim(),
        dim_kernel: n * g.dim() - rank,
        dim_image: rank,
        dim_h0: n * binomial(n, 2) - rank,
    }
}

/// Checks dim h⁰(g) = (dim so(n) − dim g)·n for g ⊆ so(n).
pub fn subgroup_quotient_dim_check(g: &MatrixSubspace) -> Result<bool> {
    let n = g.n();
    let so = MatrixSubspace::so(n);
    if !g.is_subspace_of(&so) {
        return Err(Error::NotInSo(n));
    }
    let report = torsion_report(g);
    Ok(report.dim_h0 == (so.dim() - g.dim()) * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibration::catalog;
    use crate::scalar::int;

    #[test]
    fn volume_form_stabilizer_is_sl() {
        for n in 2..5 {
            let s = stabilizer(&[AlternatingForm::volume(n)], n).unwrap();
            assert_eq!(s.dim(), n * n - 1);
            assert!(s.basis().iter().all(|x| x.trace().is_zero()));
        }
    }

    #[test]
    fn so_n_has_vanishing_torsion_and_prolongation() {
        for n in [3, 4, 7] {
            let r = torsion_report(&MatrixSubspace::so(n));
            assert_eq!((r.dim_h0, r.dim_kernel), (0, 0), "n = {n}");
            assert!(r.rank_nullity_holds());
        }
    }

    #[test]
    fn gl_n_has_full_image_and_large_prolongation() {
        let r = torsion_report(&MatrixSubspace::gl(3));
        assert_eq!(r.dim_h0, 0);
        // gl(n)^(1) = Sym²(ℝⁿ)* ⊗ ℝⁿ
        assert_eq!(r.dim_kernel, 3 * 6);
    }

    #[test]
    fn quotient_check_rejects_non_orthogonal() {
        assert_eq!(
            subgroup_quotient_dim_check(&MatrixSubspace::gl(3)),
            Err(Error::NotInSo(3))
        );
        assert_eq!(
            subgroup_quotient_dim_check(&MatrixSubspace::so(4)),
            Ok(true)
        );
    }

    #[test]
    fn first_columns_zero_dimension() {
        assert_eq!(MatrixSubspace::first_columns_zero(7, 3).dim(), 28);
        assert_eq!(
            MatrixSubspace::first_columns_zero(7, 0),
            MatrixSubspace::gl(7)
        );
    }

    #[test]
    fn membership_examples() {
        let cat = catalog();
        let forms = [cat.phi0.clone(), cat.star_phi0.clone()];
        assert!(membership(&Matrix::diagonal(&[1, 1, 1, -1, -1, -1, -1]), &forms).unwrap());
        assert!(membership(
            &Matrix::diagonal(&[-1, -1, -1, -1, 1, 1, 1, 1]),
            std::slice::from_ref(&cat.psi0)
        )
        .unwrap());
        assert!(!membership(
            &Matrix::identity(7).scale(&int(-1)),
            std::slice::from_ref(&cat.phi0)
        )
        .unwrap());
    }

    #[test]
    fn conjugation_by_identity_is_trivial() {
        let so = MatrixSubspace::so(4);
        assert_eq!(so.conjugate(&Matrix::identity(4)), so);
        assert!(so.is_bracket_closed());
    }

    #[test]
    fn sd_triple_stabilizer_is_three_dimensional() {
        let s = stabilizer(&catalog().sd_triple, 4).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.is_subspace_of(&MatrixSubspace::so(4)));
        assert!(s.is_bracket_closed());
    }
}
