//! The canonical flag h₀ ⊇ h₁ ⊇ … ⊇ h_n, Cartan characters, polar dimensions
//! on the quotient S = F/G, and the tangent-space model of the thickening steps.
//!
//! At a flat basepoint, T S is modelled as (ℝⁿ ⊕ gl(n)) / (0 ⊕ g). Everything
//! below is computed upstairs in ℝⁿ ⊕ gl(n) with subspaces containing 0 ⊕ g,
//! and dimensions are reduced by dim g at the end.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::Result;
use crate::exterior::AlternatingForm;
use crate::group::Group;
use crate::integral::ideal_constraint_system;
use crate::linalg::Subspace;
use crate::scalar::Scalar;
use crate::stabilizer::{restricted_stabilizer, MatrixSubspace};

/// One level of the flag: k, dim h_k and c_k = codim(h_k, gl(n)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagLevel {
    pub k: usize,
    pub dim: usize,
    pub codim: usize,
}

/// Polar dimension on S and extension rank of the k-th flag element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagDims {
    pub k: usize,
    pub polar: usize,
    pub extension_rank: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReport {
    pub n: usize,
    /// Levels k = 0..=n; the last is codim(g).
    pub levels: Vec<FlagLevel>,
    /// Σ_{k<n} c_k.
    pub cartan_sum: usize,
    /// Codimension of the integral-element variety (rank of the ideal system).
    pub ideal_codim: usize,
    /// Cartan's test holds with equality.
    pub regular: bool,
    pub nested: bool,
    pub monotone: bool,
    /// Matrices with the first k columns zero lie in h_k, for all k.
    pub contains_first_columns_zero: bool,
    /// The stabilizer lies in every h_k.
    pub contains_stabilizer: bool,
}

impl FlagReport {
    /// (c_0, …, c_{n−1}).
    pub fn characters(&self) -> Vec<usize> {
        self.levels[..self.n].iter().map(|l| l.codim).collect()
    }

    /// c_n = codim(h_n), reported separately from the Cartan sum.
    pub fn top_codim(&self) -> usize {
        self.levels[self.n].codim
    }
}

/// Builds the report from an explicit flag and ideal codimension.
pub fn report_from_flag(flag: &[MatrixSubspace], ideal_codim: usize) -> FlagReport {
    let n = flag.len() - 1;
    let levels: Vec<FlagLevel> = flag
        .iter()
        .enumerate()
        .map(|(k, h)| FlagLevel {
            k,
            dim: h.dim(),
            codim: h.codim(),
        })
        .collect();
    let cartan_sum = levels[..n].iter().map(|l| l.codim).sum();
    let top = &flag[n];
    FlagReport {
        n,
        cartan_sum,
        ideal_codim,
        regular: cartan_sum == ideal_codim,
        nested: flag.windows(2).all(|w| w[1].is_subspace_of(&w[0])),
        monotone: levels.windows(2).all(|w| w[0].codim <= w[1].codim),
        contains_first_columns_zero: flag
            .iter()
            .enumerate()
            .all(|(k, h)| MatrixSubspace::first_columns_zero(n, k).is_subspace_of(h)),
        contains_stabilizer: flag.iter().all(|h| top.is_subspace_of(h)),
        levels,
    }
}

/// h_k for an arbitrary list of forms.
pub fn compute_hk(k: usize, forms: &[AlternatingForm], n: usize) -> Result<MatrixSubspace> {
    restricted_stabilizer(forms, n, k)
}

/// The full report for an arbitrary list of invariant forms.
pub fn flag_report(forms: &[AlternatingForm], n: usize) -> Result<FlagReport> {
    let flag = (0..=n)
        .map(|k| compute_hk(k, forms, n))
        .collect::<Result<Vec<_>>>()?;
    let codim = ideal_constraint_system(forms, n)?.rank();
    Ok(report_from_flag(&flag, codim))
}

pub fn character_sequence(group: Group) -> Result<FlagReport> {
    let codim = ideal_constraint_system(&group.forms(), group.n())?.rank();
    Ok(report_from_flag(&group.data().flag, codim))
}

/// dim S = n + n² − dim g.
pub fn dim_s(group: Group) -> usize {
    let n = group.n();
    n + n * n - group.algebra().dim()
}

/// Polar dimension n + dim h_k − dim g and extension rank polar − (k+1).
pub fn flag_dims(group: Group, k: usize) -> FlagDims {
    let polar = group.n() + group.hk(k).dim() - group.algebra().dim();
    FlagDims {
        k,
        polar,
        extension_rank: polar as i64 - (k as i64 + 1),
    }
}

/// Upstairs model ℝⁿ ⊕ gl(n), flattened as (vector, row-major matrix).
fn lift(n: usize, vectors: &[Vec<Scalar>], matrices: &MatrixSubspace) -> Subspace {
    let total = n + n * n;
    let mut gens: Vec<Vec<Scalar>> = vectors
        .iter()
        .map(|v| {
            let mut full = v.clone();
            full.resize(total, Scalar::default());
            full
        })
        .collect();
    for b in matrices.subspace().basis() {
        let mut full = vec![Scalar::default(); n];
        full.extend(b.iter().cloned());
        gens.push(full);
    }
    Subspace::span(total, &gens)
}

fn unit_vectors(n: usize, count: usize) -> Vec<Vec<Scalar>> {
    (0..count)
        .map(|i| {
            let mut v = vec![Scalar::default(); n];
            v[i] = crate::scalar::one();
            v
        })
        .collect()
}

/// Dimensions of the thickening step at flag index s with transversal W.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickeningDims {
    pub s: usize,
    /// dim(H(Ē_s) ∩ T Z_s) on S.
    pub intersection: usize,
    /// dim(H(Ē_s) + T Z_s) on S.
    pub span: usize,
    /// dim Z_s.
    pub dim_z: usize,
}

/// H(Ē_s) = ℝⁿ ⊕ h_s and T Z_s = span(e_0..e_s) ⊕ (W + g), both mod 0 ⊕ g.
pub fn thickening_dims(group: Group, s: usize, w: &MatrixSubspace) -> ThickeningDims {
    let n = group.n();
    let g = group.algebra();
    let h = lift(n, &unit_vectors(n, n), group.hk(s));
    let tz = lift(n, &unit_vectors(n, s + 1), &w.sum(g));
    let dg = g.dim();
    ThickeningDims {
        s,
        intersection: h.intersection(&tz).dim() - dg,
        span: h.sum(&tz).dim() - dg,
        dim_z: tz.dim() - dg,
    }
}

/// Certificates for each level of a chain; `z_expected` lists known dim Z values.
pub fn thickening_check(
    group: Group,
    levels: &[(usize, MatrixSubspace)],
    z_expected: &[usize],
) -> Vec<Certificate> {
    let tag = group.tag();
    let total = dim_s(group);
    let mut out = vec![Certificate::compare(
        format!("{tag}.dim_S"),
        "dimension of the quotient S = F/G",
        total,
        match group {
            Group::G2 => 42usize,
            Group::Spin7 => 51,
        },
    )];
    for (i, (s, w)) in levels.iter().enumerate() {
        let d = thickening_dims(group, *s, w);
        out.push(Certificate::compare(
            format!("{tag}.thicken.s{s}.intersection"),
            "polar space meets the thickening in one more dimension",
            d.intersection,
            s + 1,
        ));
        out.push(Certificate::compare(
            format!("{tag}.thicken.s{s}.transverse"),
            "polar space and thickening together span T S",
            d.span,
            total,
        ));
        let expected_z = z_expected.get(i).copied().unwrap_or(s + 1 + w.dim());
        out.push(Certificate::compare(
            format!("{tag}.thicken.s{s}.dim_Z"),
            "dimension of the thickening manifold Z",
            d.dim_z,
            expected_z,
        ));
    }
    out
}
