//! Linear conditions on connection parameters cutting out the transverse
//! integral elements, and polar spaces of integral elements.
//!
//! A torsion-free coframe has dη^j = −θ^j_k ∧ η^k with θ^j_k = p^j_{kl} η^l,
//! so dη^j only sees the skew parts q^j_{kl} = p^j_{[kl]}, k < l. For each
//! generator α, d(α̂) = Σ_j dη^j ∧ (e_j ⌟ α) is linear in those variables and
//! vanishing on a transverse n-plane gives one equation per (p+1)-index.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exterior::{binomial, AlternatingForm, MultiIndex, Vector};
use crate::group::Group;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{int, ratio, Scalar};
use crate::stabilizer::torsion_report;

/// Coefficient of η^{kl} in dη^j is this multiple of q^j_{kl}:
/// −p^j_{kl} η^l∧η^k collected onto k < l gives p^j_{kl} − p^j_{lk} = 2 q^j_{kl}.
pub const STRUCTURE_CONSTANT: i64 = 2;

/// The skew part p^j_{[kl]} with k < l (0-based offsets).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamVariable {
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl ParamVariable {
    pub fn new(j: usize, k: usize, l: usize) -> Self {
        assert!(k < l, "skew variable needs k < l");
        ParamVariable { j, k, l }
    }

    /// Position in the ordering (j, then (k, l) lexicographically).
    pub fn position(&self, n: usize) -> usize {
        let pair = self.k * (2 * n - self.k - 1) / 2 + (self.l - self.k - 1);
        self.j * binomial(n, 2) + pair
    }

    pub fn label(&self, base: usize) -> String {
        format!("p^{}_[{}{}]", self.j + base, self.k + base, self.l + base)
    }
}

impl fmt::Display for ParamVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label(0))
    }
}

/// All n·C(n,2) skew variables, in system column order.
pub fn variables(n: usize) -> Vec<ParamVariable> {
    let mut out = Vec::with_capacity(n * binomial(n, 2));
    for j in 0..n {
        for k in 0..n {
            for l in k + 1..n {
                out.push(ParamVariable::new(j, k, l));
            }
        }
    }
    out
}

/// A form whose coefficients are linear expressions in the skew variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamForm {
    n: usize,
    grade: usize,
    terms: BTreeMap<MultiIndex, BTreeMap<ParamVariable, Scalar>>,
}

impl ParamForm {
    pub fn zero(n: usize, grade: usize) -> Self {
        ParamForm {
            n,
            grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The linear expression multiplying η^I.
    pub fn coefficient(&self, idx: &MultiIndex) -> BTreeMap<ParamVariable, Scalar> {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    fn add(&mut self, idx: MultiIndex, var: ParamVariable, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let expr = self.terms.entry(idx.clone()).or_default();
        let slot = expr.entry(var).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            expr.remove(&var);
            if expr.is_empty() {
                self.terms.remove(&idx);
            }
        }
    }

    /// (self) ∧ a for a constant-coefficient form a.
    pub fn wedge_form(&self, a: &AlternatingForm) -> Result<ParamForm> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.dim(),
            });
        }
        let mut out = ParamForm::zero(self.n, self.grade + a.grade());
        let mut buf = Vec::new();
        for (ki, expr) in &self.terms {
            for (ka, ca) in a.terms() {
                if ka.indices().iter().any(|&i| ki.contains(i)) {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(ki.indices());
                buf.extend_from_slice(ka.indices());
                let (sign, idx) = MultiIndex::sorted(&buf).expect("disjoint");
                for (var, c) in expr {
                    let v = c * ca;
                    out.add(idx.clone(), *var, if sign < 0 { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    pub fn sum(mut self, other: &ParamForm) -> ParamForm {
        for (idx, expr) in &other.terms {
            for (var, c) in expr {
                self.add(idx.clone(), *var, c.clone());
            }
        }
        self
    }

    /// Substitutes values for the variables (indexed by `position`).
    pub fn substitute(&self, values: &[Scalar]) -> AlternatingForm {
        let terms = self.terms.iter().map(|(idx, expr)| {
            let c: Scalar = expr
                .iter()
                .map(|(var, c)| c * &values[var.position(self.n)])
                .sum();
            (idx.indices().to_vec(), c)
        });
        AlternatingForm::from_terms(self.n, self.grade, terms).expect("valid indices")
    }
}

/// dη^j with θ substituted: Σ_{k<l} 2 q^j_{kl} η^{kl}.
pub fn structure_expansion(n: usize, j: usize) -> ParamForm {
    let mut out = ParamForm::zero(n, 2);
    for k in 0..n {
        for l in k + 1..n {
            out.add(
                MultiIndex::new(vec![k, l]).expect("k < l"),
                ParamVariable::new(j, k, l),
                int(STRUCTURE_CONSTANT),
            );
        }
    }
    out
}

/// d(α̂) = Σ_j dη^j ∧ (e_j ⌟ α).
pub fn exterior_derivative(alpha: &AlternatingForm) -> Result<ParamForm> {
    let n = alpha.dim();
    let mut out = ParamForm::zero(n, alpha.grade() + 1);
    for j in 0..n {
        let contracted = alpha.interior(&Vector::basis(n, j))?;
        if contracted.is_zero() {
            continue;
        }
        out = out.sum(&structure_expansion(n, j).wedge_form(&contracted)?);
    }
    Ok(out)
}

/// Which generator and which multi-index produced a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowTag {
    pub generator: usize,
    pub index: MultiIndex,
}

/// Linear equations in the skew variables, one row per (generator, index).
#[derive(Clone, Debug)]
pub struct ParamLinearSystem {
    n: usize,
    variables: Vec<ParamVariable>,
    matrix: Matrix,
    provenance: Vec<RowTag>,
}

impl ParamLinearSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variables(&self) -> &[ParamVariable] {
        &self.variables
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn provenance(&self) -> &[RowTag] {
        &self.provenance
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Rank of the rows produced by the first `count` generators.
    pub fn rank_of_generators(&self, count: usize) -> usize {
        let rows: Vec<Vec<Scalar>> = self
            .provenance
            .iter()
            .enumerate()
            .filter(|(_, t)| t.generator < count)
            .map(|(r, _)| self.matrix.row(r).to_vec())
            .collect();
        Matrix::from_rows_with_cols(rows, self.variables.len()).rank()
    }

    /// Ranks after each generator is appended: the cumulative split.
    pub fn cumulative_ranks(&self, generators: usize) -> Vec<usize> {
        (1..=generators)
            .map(|g| self.rank_of_generators(g))
            .collect()
    }
}

/// Builds the system for d(α̂) = 0 over all generators.
pub fn ideal_constraint_system(
    generators: &[AlternatingForm],
    n: usize,
) -> Result<ParamLinearSystem> {
    let vars = variables(n);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut provenance = Vec::new();
    for (g, alpha) in generators.iter().enumerate() {
        if alpha.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: alpha.dim(),
            });
        }
        let d = exterior_derivative(alpha)?;
        for idx in MultiIndex::all(n, alpha.grade() + 1) {
            let mut row = vec![Scalar::zero(); vars.len()];
            for (var, c) in d.coefficient(&idx) {
                row[var.position(n)] = c;
            }
            rows.push(row);
            provenance.push(RowTag {
                generator: g,
                index: idx,
            });
        }
    }
    Ok(ParamLinearSystem {
        n,
        matrix: Matrix::from_rows_with_cols(rows, vars.len()),
        variables: vars,
        provenance,
    })
}

/// True iff every value of the listed variables extends to a solution.
pub fn coordinate_freedom(system: &ParamLinearSystem, coords: &[ParamVariable]) -> Result<bool> {
    let n = system.n();
    let mut chosen = vec![false; system.variables.len()];
    for v in coords {
        if v.j >= n || v.l >= n || v.k >= v.l {
            return Err(Error::UnknownVariable(v.to_string()));
        }
        chosen[v.position(n)] = true;
    }
    let rest: Vec<usize> = (0..chosen.len()).filter(|&i| !chosen[i]).collect();
    let reduced = system.matrix.select_columns(&rest);
    Ok(reduced.rank() == system.rank())
}

/// Skew-variable values for the constant connection θ = x ⊗ w, i.e.
/// p^j_{kl} = x^j_k w_l.
pub fn values_for_product(x: &Matrix, w: &[Scalar]) -> Vec<Scalar> {
    let n = x.rows();
    variables(n)
        .iter()
        .map(|v| (&x[(v.j, v.k)] * &w[v.l] - &x[(v.j, v.l)] * &w[v.k]) * ratio(1, 2))
        .collect()
}

/// Compares the ideal-system rank with dim h⁰(g).
pub fn strong_admissibility_check(group: Group) -> Result<Certificate> {
    let system = ideal_constraint_system(&group.forms(), group.n())?;
    let rank = system.rank();
    let h0 = torsion_report(group.algebra()).dim_h0;
    Ok(strong_admissibility_certificate(group.tag(), rank, h0))
}

pub fn strong_admissibility_certificate(tag: &str, rank: usize, h0: usize) -> Certificate {
    Certificate::compare(
        format!("{tag}.strongly_admissible"),
        "rank of the ideal system equals the intrinsic torsion dimension",
        rank,
        h0,
    )
    .with_detail(format!("constraint rank {rank}, dim h0 {h0}"))
}

/// {v : gʲ(v, E…) = 0 for every component}. An empty E imposes nothing.
pub fn polar_space(gens: &[AlternatingForm], e: &[Vector], n: usize) -> Result<Subspace> {
    if e.is_empty() {
        return Ok(Subspace::full(n));
    }
    let rows: Vec<Vec<Scalar>> = e.iter().map(|v| v.0.clone()).collect();
    if Matrix::from_rows_with_cols(rows, n).rank() != e.len() {
        return Err(Error::DependentVectors);
    }
    let mut functionals = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.grade() != e.len() + 1 {
            return Err(Error::Arity {
                expected: g.grade() - 1,
                got: e.len(),
            });
        }
        let row: Vec<Scalar> = (0..n)
            .map(|i| {
                let mut args = vec![Vector::basis(n, i)];
                args.extend(e.iter().cloned());
                g.evaluate(&args)
            })
            .collect::<Result<_>>()?;
        functionals.push(row);
    }
    Ok(Subspace::kernel(&Matrix::from_rows_with_cols(
        functionals,
        n,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibration::{catalog, RationalSampler};
    use crate::exterior::Labels;
    use crate::stabilizer::stabilizer;

    #[test]
    fn variable_positions_match_ordering() {
        for n in [4, 7, 8] {
            for (i, v) in variables(n).iter().enumerate() {
                assert_eq!(v.position(n), i);
            }
        }
        assert_eq!(variables(7).len(), 147);
        assert_eq!(variables(8).len(), 224);
    }

    #[test]
    fn structure_expansion_coefficient() {
        let s = structure_expansion(7, 2);
        let c = s.coefficient(&MultiIndex::new(vec![0, 3]).unwrap());
        assert_eq!(c.get(&ParamVariable::new(2, 0, 3)), Some(&int(2)));
        assert_eq!(c.len(), 1);
        assert!(s.substitute(&vec![Scalar::zero(); 147]).is_zero());
    }

    #[test]
    fn empty_generator_list_has_rank_zero() {
        let s = ideal_constraint_system(&[], 7).unwrap();
        assert_eq!(s.rank(), 0);
        assert!(coordinate_freedom(&s, &variables(7)).unwrap());
    }

    #[test]
    fn stabilizer_valued_connections_solve_the_system() {
        // θ = x ⊗ w with x in the stabilizer of α gives d(α̂) = −w ∧ (x.α) = 0.
        let cat = catalog();
        let mut sampler = RationalSampler::new(5);
        let g2 = stabilizer(std::slice::from_ref(&cat.phi0), 7).unwrap();
        let system =
            ideal_constraint_system(&[cat.phi0.clone(), cat.star_phi0.clone()], 7).unwrap();
        for x in g2.basis().iter().take(4) {
            let w = sampler.vector(7).0;
            let vals = values_for_product(x, &w);
            assert!(system.matrix().mul_vec(&vals).iter().all(Zero::is_zero));
        }
        // a volume form yields no equations at all
        let vol = ideal_constraint_system(&[AlternatingForm::volume(5)], 5).unwrap();
        assert_eq!(vol.matrix().rows(), 0);
    }

    #[test]
    fn non_stabilizer_connection_violates_the_system() {
        let cat = catalog();
        let system = ideal_constraint_system(std::slice::from_ref(&cat.phi0), 7).unwrap();
        let x = Matrix::identity(7);
        let w: Vec<Scalar> = Vector::basis(7, 0).0;
        let vals = values_for_product(&x, &w);
        assert!(!system.matrix().mul_vec(&vals).iter().all(Zero::is_zero));
    }

    #[test]
    fn polar_examples() {
        let g = Labels::G2;
        let cat = catalog();
        let h = polar_space(cat.chi0.components(), &[g.e(1), g.e(2)], 7).unwrap();
        assert_eq!(h, Subspace::span(7, &[g.e(1).0, g.e(2).0, g.e(3).0]));
        assert_eq!(polar_space(cat.chi0.components(), &[], 7).unwrap().dim(), 7);
        assert_eq!(
            polar_space(cat.chi0.components(), &[g.e(1), g.e(1)], 7),
            Err(Error::DependentVectors)
        );
    }

    #[test]
    fn unknown_variable_rejected() {
        let s = ideal_constraint_system(&[], 4).unwrap();
        let bad = ParamVariable { j: 9, k: 0, l: 1 };
        assert!(matches!(
            coordinate_freedom(&s, &[bad]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn mismatched_sides_fail() {
        let c = strong_admissibility_certificate("test", 48, 49);
        assert!(!c.passed);
        assert!(c.detail.unwrap().contains("48"));
    }
}
