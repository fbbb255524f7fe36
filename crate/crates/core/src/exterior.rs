//! Sparse exterior algebra on ℝⁿ with the standard metric and orientation.
//!
//! Indices are 0-based offsets internally. [`Labels`] maps the coordinate
//! labels used when transcribing a formula (1..7 on ℝ⁷, 0..7 on ℝ⁸) onto
//! those offsets, so `Labels::G2.dx(&[1, 2, 3])` is dx¹²³.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

pub const MAX_DIM: usize = 9;

/// A strictly increasing tuple of coordinate offsets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Accepts only strictly increasing indices.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(indices));
        }
        Ok(MultiIndex(indices))
    }

    /// Sorts arbitrary indices, returning the sign of the sorting permutation.
    /// `None` when an index repeats.
    pub fn sorted(indices: &[usize]) -> Option<(i8, MultiIndex)> {
        let mut v = indices.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, MultiIndex(v)))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// All strictly increasing p-tuples drawn from `0..n`, in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p);
        fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == p {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, p, cur, out);
                cur.pop();
            }
        }
        rec(0, n, p, &mut cur, &mut out);
        out
    }

    /// Renders with a label base, e.g. `123` for offsets `[0,1,2]` and base 1.
    pub fn label(&self, base: usize) -> String {
        self.0.iter().map(|i| (i + base).to_string()).collect()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A vector in ℝⁿ with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zero(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    /// Standard basis vector at an offset.
    pub fn basis(n: usize, offset: usize) -> Self {
        let mut v = Vector::zero(n);
        v.0[offset] = Scalar::one();
        v
    }

    pub fn from_i64(vals: &[i64]) -> Self {
        Vector(vals.iter().map(|&v| scalar::int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        crate::linalg::dot(&self.0, &other.0)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// Coordinate labelling for transcribing formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Labels {
    pub dim: usize,
    pub base: usize,
}

impl Labels {
    /// ℝ⁷ with coordinates x¹..x⁷.
    pub const G2: Labels = Labels { dim: 7, base: 1 };
    /// ℝ⁸ with coordinates x⁰..x⁷.
    pub const SPIN7: Labels = Labels { dim: 8, base: 0 };
    /// ℝ⁴ with coframe ω¹..ω⁴.
    pub const R4: Labels = Labels { dim: 4, base: 1 };

    pub fn offset(&self, label: usize) -> usize {
        assert!(
            label >= self.base && label < self.base + self.dim,
            "label {label} out of range"
        );
        label - self.base
    }

    /// The monomial dx^{l₁…l_p}, with sign if the labels are out of order.
    pub fn dx(&self, labels: &[usize]) -> AlternatingForm {
        let offsets: Vec<usize> = labels.iter().map(|&l| self.offset(l)).collect();
        AlternatingForm::monomial(self.dim, &offsets)
    }

    /// Σ cᵢ dx^{Iᵢ} where each `I` is written as a digit string, e.g. `"0235"`.
    pub fn terms(&self, terms: &[(i64, &str)]) -> AlternatingForm {
        terms.iter().fold(
            AlternatingForm::zero(self.dim, grade_of(terms)),
            |acc, (c, s)| {
                let labels: Vec<usize> = s
                    .chars()
                    .map(|ch| ch.to_digit(10).unwrap() as usize)
                    .collect();
                acc + self.dx(&labels).scale(&scalar::int(*c))
            },
        )
    }

    pub fn e(&self, label: usize) -> Vector {
        Vector::basis(self.dim, self.offset(label))
    }
}

fn grade_of(terms: &[(i64, &str)]) -> usize {
    terms.first().map_or(0, |(_, s)| s.len())
}

/// A constant-coefficient alternating p-form on ℝⁿ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlternatingForm {
    dim: usize,
    grade: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl AlternatingForm {
    pub fn zero(dim: usize, grade: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        AlternatingForm {
            dim,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// The constant 0-form `c`.
    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = AlternatingForm::zero(dim, 0);
        f.add_term(MultiIndex(Vec::new()), c);
        f
    }

    /// dx^{i₁} ∧ … ∧ dx^{i_p} for offsets in any order.
    pub fn monomial(dim: usize, offsets: &[usize]) -> Self {
        assert!(offsets.iter().all(|&i| i < dim), "offset out of range");
        let mut f = AlternatingForm::zero(dim, offsets.len());
        if let Some((sign, idx)) = MultiIndex::sorted(offsets) {
            f.add_term(idx, scalar::int(sign as i64));
        }
        f
    }

    pub fn from_terms<I>(dim: usize, grade: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if grade > dim {
            return Err(Error::GradeTooLarge { grade, dim });
        }
        let mut f = AlternatingForm::zero(dim, grade);
        for (idx, c) in terms {
            if idx.len() != grade || idx.iter().any(|&i| i >= dim) {
                return Err(Error::InvalidIndex(idx));
            }
            if let Some((sign, key)) = MultiIndex::sorted(&idx) {
                f.add_term(key, c * scalar::int(sign as i64));
            }
        }
        Ok(f)
    }

    /// The volume form dx^{0…n−1}.
    pub fn volume(dim: usize) -> Self {
        AlternatingForm::monomial(dim, &(0..dim).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient at offsets given in any order (with permutation sign).
    pub fn coefficient_at(&self, offsets: &[usize]) -> Scalar {
        match MultiIndex::sorted(offsets) {
            Some((sign, idx)) => self.coefficient(&idx) * scalar::int(sign as i64),
            None => Scalar::zero(),
        }
    }

    fn add_term(&mut self, idx: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> AlternatingForm {
        let mut out = AlternatingForm::zero(self.dim, self.grade);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * s);
        }
        out
    }

    fn check_same(&self, other: &AlternatingForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &AlternatingForm) -> Result<AlternatingForm> {
        self.check_same(other)?;
        if self.grade != other.grade && !self.is_zero() && !other.is_zero() {
            return Err(Error::DimensionMismatch {
                expected: self.grade,
                got: other.grade,
            });
        }
        let grade = if self.is_zero() {
            other.grade
        } else {
            self.grade
        };
        let mut out = self.clone();
        out.grade = grade;
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Exterior product with the sign from sorting the concatenated index.
    pub fn wedge(&self, other: &AlternatingForm) -> Result<AlternatingForm> {
        self.check_same(other)?;
        let grade = self.grade + other.grade;
        if grade > self.dim {
            return Err(Error::GradeTooLarge {
                grade,
                dim: self.dim,
            });
        }
        let mut out = AlternatingForm::zero(self.dim, grade);
        let mut buf = Vec::with_capacity(grade);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if kb.0.iter().any(|i| ka.contains(*i)) {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(&ka.0);
                buf.extend_from_slice(&kb.0);
                let (sign, idx) = MultiIndex::sorted(&buf).expect("disjoint");
                let c = ca * cb;
                out.add_term(idx, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Contraction in the leading slot: (v ⌟ a)(w…) = a(v, w…).
    pub fn interior(&self, v: &Vector) -> Result<AlternatingForm> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        if self.grade == 0 {
            return Err(Error::GradeZero);
        }
        let mut out = AlternatingForm::zero(self.dim, self.grade - 1);
        for (k, c) in &self.terms {
            for (pos, &i) in k.0.iter().enumerate() {
                let vi = &v.0[i];
                if vi.is_zero() {
                    continue;
                }
                let mut rest = k.0.clone();
                rest.remove(pos);
                let term = c * vi;
                out.add_term(MultiIndex(rest), if pos % 2 == 1 { -term } else { term });
            }
        }
        Ok(out)
    }

    /// Hodge star for the standard metric and the increasing-coordinate orientation.
    pub fn hodge(&self) -> AlternatingForm {
        let mut out = AlternatingForm::zero(self.dim, self.dim - self.grade);
        for (k, c) in &self.terms {
            let comp: Vec<usize> = (0..self.dim).filter(|i| !k.contains(*i)).collect();
            let mut full = k.0.clone();
            full.extend_from_slice(&comp);
            let (sign, _) = MultiIndex::sorted(&full).expect("permutation");
            out.add_term(
                MultiIndex(comp),
                if sign < 0 { -c.clone() } else { c.clone() },
            );
        }
        out
    }

    /// Full alternating evaluation on `grade` vectors.
    pub fn evaluate(&self, vs: &[Vector]) -> Result<Scalar> {
        if vs.len() != self.grade {
            return Err(Error::Arity {
                expected: self.grade,
                got: vs.len(),
            });
        }
        if let Some(v) = vs.iter().find(|v| v.dim() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        let mut total = Scalar::zero();
        for (k, c) in &self.terms {
            let rows: Vec<Vec<Scalar>> =
                k.0.iter()
                    .map(|&i| vs.iter().map(|v| v.0[i].clone()).collect())
                    .collect();
            let det = if rows.is_empty() {
                Scalar::one()
            } else {
                Matrix::from_rows(rows).determinant()
            };
            total += c * det;
        }
        Ok(total)
    }

    /// Coefficient-space inner product Σ a_I b_I.
    pub fn inner(&self, other: &AlternatingForm) -> Scalar {
        self.terms
            .iter()
            .filter_map(|(k, a)| other.terms.get(k).map(|b| a * b))
            .sum()
    }

    /// Infinitesimal action: (x.a)(v₁…v_p) = Σᵢ a(v₁…x vᵢ…v_p).
    ///
    /// On monomials this replaces each factor dxⁱ by Σⱼ xⁱⱼ dxʲ in turn, with
    /// `xⁱⱼ` the entry in row i, column j.
    pub fn gl_act(&self, x: &Matrix) -> Result<AlternatingForm> {
        if x.rows() != self.dim || x.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.rows(),
            });
        }
        let mut out = AlternatingForm::zero(self.dim, self.grade);
        let mut buf;
        for (k, c) in &self.terms {
            for (slot, &i) in k.0.iter().enumerate() {
                for j in 0..self.dim {
                    let xij = &x[(i, j)];
                    if xij.is_zero() || (j != i && k.contains(j)) {
                        continue;
                    }
                    buf = k.0.clone();
                    buf[slot] = j;
                    let (sign, idx) = MultiIndex::sorted(&buf).expect("distinct");
                    let term = c * xij;
                    out.add_term(idx, if sign < 0 { -term } else { term });
                }
            }
        }
        Ok(out)
    }

    /// Pullback under the linear map g: dxⁱ ↦ Σⱼ gⁱⱼ dxʲ.
    pub fn pullback(&self, g: &Matrix) -> Result<AlternatingForm> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: g.rows(),
            });
        }
        let images: Vec<AlternatingForm> = (0..self.dim)
            .map(|i| {
                let terms = (0..self.dim).map(|j| (vec![j], g[(i, j)].clone()));
                AlternatingForm::from_terms(self.dim, 1, terms).expect("1-form")
            })
            .collect();
        let mut out = AlternatingForm::zero(self.dim, self.grade);
        for (k, c) in &self.terms {
            let mut prod = AlternatingForm::constant(self.dim, c.clone());
            for &i in &k.0 {
                prod = prod.wedge(&images[i])?;
            }
            out = out.try_add(&prod)?;
        }
        out.grade = self.grade;
        Ok(out)
    }

    /// Pullback to the span of the first k coordinate vectors.
    pub fn restrict(&self, k: usize) -> AlternatingForm {
        let mut out = AlternatingForm::zero(self.dim, self.grade);
        for (idx, c) in &self.terms {
            if idx.0.iter().all(|&i| i < k) {
                out.terms.insert(idx.clone(), c.clone());
            }
        }
        out
    }

    /// Re-reads the form on a larger space with every index moved up by `shift`.
    pub fn embed(&self, dim: usize, shift: usize) -> Result<AlternatingForm> {
        if self.dim + shift > dim || dim > MAX_DIM {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim + shift,
            });
        }
        let mut out = AlternatingForm::zero(dim, self.grade);
        for (k, c) in &self.terms {
            out.terms.insert(
                MultiIndex(k.0.iter().map(|i| i + shift).collect()),
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Coefficient vector over `MultiIndex::all(dim, grade)`.
    pub fn coefficient_vector(&self) -> Vec<Scalar> {
        MultiIndex::all(self.dim, self.grade)
            .iter()
            .map(|k| self.coefficient(k))
            .collect()
    }

    /// Renders with coordinate labels starting at `base`.
    pub fn render(&self, base: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() || k.is_empty() {
                s.push_str(&scalar::display(&mag));
                if !k.is_empty() {
                    s.push('·');
                }
            }
            if !k.is_empty() {
                s.push_str("dx");
                s.push_str(&k.label(base));
            }
        }
        s
    }
}

impl std::ops::Add for AlternatingForm {
    type Output = AlternatingForm;
    fn add(self, rhs: AlternatingForm) -> AlternatingForm {
        self.try_add(&rhs).expect("incompatible forms")
    }
}

impl std::ops::Sub for AlternatingForm {
    type Output = AlternatingForm;
    fn sub(self, rhs: AlternatingForm) -> AlternatingForm {
        self.try_add(&rhs.scale(&scalar::int(-1)))
            .expect("incompatible forms")
    }
}

impl std::ops::Neg for AlternatingForm {
    type Output = AlternatingForm;
    fn neg(self) -> AlternatingForm {
        self.scale(&scalar::int(-1))
    }
}

impl fmt::Debug for AlternatingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form<{},{}>({})", self.dim, self.grade, self.render(0))
    }
}

/// Wedge shorthand for transcription code; panics on incompatible inputs.
pub fn w(a: &AlternatingForm, b: &AlternatingForm) -> AlternatingForm {
    a.wedge(b).expect("wedge of transcribed forms")
}

/// Determinant of the Gram matrix ⟨vᵢ, vⱼ⟩.
pub fn gram_norm_sq(vs: &[Vector]) -> Scalar {
    let rows: Vec<Vec<Scalar>> = vs
        .iter()
        .map(|a| vs.iter().map(|b| a.dot(b)).collect())
        .collect();
    if rows.is_empty() {
        return Scalar::one();
    }
    Matrix::from_rows(rows).determinant()
}

/// The simple p-vector v₁∧…∧v_p written as a form (coefficients are p×p minors).
pub fn simple_multivector(vs: &[Vector]) -> Result<AlternatingForm> {
    let n = vs.first().map_or(0, Vector::dim);
    let mut acc = AlternatingForm::constant(n.max(1), Scalar::one());
    for v in vs {
        let one = AlternatingForm::from_terms(
            n,
            1,
            v.0.iter().enumerate().map(|(i, c)| (vec![i], c.clone())),
        )?;
        acc = acc.wedge(&one)?;
    }
    Ok(acc)
}

/// A form with values in ℝⁿ: one component per frame vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorValuedForm {
    components: Vec<AlternatingForm>,
}

impl VectorValuedForm {
    pub fn new(components: Vec<AlternatingForm>) -> Result<Self> {
        let first = components.first().ok_or(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        })?;
        let (n, p) = (first.dim(), first.grade());
        if components.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: components.len(),
            });
        }
        for c in &components {
            if c.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.dim(),
                });
            }
            if c.grade() != p && !c.is_zero() {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    got: c.grade(),
                });
            }
        }
        let components = components
            .into_iter()
            .map(|mut c| {
                c.grade = p;
                c
            })
            .collect();
        Ok(VectorValuedForm { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn grade(&self) -> usize {
        self.components[0].grade()
    }

    pub fn components(&self) -> &[AlternatingForm] {
        &self.components
    }

    pub fn component(&self, offset: usize) -> &AlternatingForm {
        &self.components[offset]
    }

    pub fn evaluate(&self, vs: &[Vector]) -> Result<Vector> {
        self.components
            .iter()
            .map(|c| c.evaluate(vs))
            .collect::<Result<Vec<_>>>()
            .map(Vector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    const G: Labels = Labels::G2;

    fn form_strategy(n: usize, p: usize) -> impl Strategy<Value = AlternatingForm> {
        let keys = MultiIndex::all(n, p);
        proptest::collection::vec(-3i64..=3, keys.len()).prop_map(move |coefs| {
            AlternatingForm::from_terms(
                n,
                p,
                keys.iter()
                    .zip(coefs)
                    .filter(|(_, c)| *c != 0 && (c % 2 == 0 || *c == 1))
                    .map(|(k, c)| (k.indices().to_vec(), int(c))),
            )
            .unwrap()
        })
    }

    fn vec_strategy(n: usize) -> impl Strategy<Value = Vector> {
        proptest::collection::vec(-4i64..=4, n).prop_map(|v| Vector::from_i64(&v))
    }

    fn matrix_strategy(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
            Matrix::from_rows(
                v.chunks(n)
                    .map(|r| r.iter().map(|&x| int(x)).collect())
                    .collect(),
            )
        })
    }

    #[test]
    fn wedge_signs() {
        assert!(w(&G.dx(&[1]), &G.dx(&[1])).is_zero());
        assert_eq!(w(&G.dx(&[1]), &G.dx(&[2])), G.dx(&[1, 2]));
        assert_eq!(w(&G.dx(&[2]), &G.dx(&[1])), -G.dx(&[1, 2]));
    }

    #[test]
    fn wedge_rejects_mismatch() {
        let a = Labels::G2.dx(&[1]);
        let b = Labels::SPIN7.dx(&[1]);
        assert!(matches!(a.wedge(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn interior_examples() {
        assert_eq!(
            G.dx(&[4, 5, 6, 7]).interior(&G.e(4)).unwrap(),
            G.dx(&[5, 6, 7])
        );
        assert!(G.dx(&[1, 2, 3]).interior(&G.e(7)).unwrap().is_zero());
        // second slot picks up a sign
        assert_eq!(G.dx(&[1, 2, 3]).interior(&G.e(2)).unwrap(), -G.dx(&[1, 3]));
        let zero = AlternatingForm::constant(7, int(1));
        assert_eq!(zero.interior(&G.e(1)), Err(Error::GradeZero));
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(G.dx(&[1, 2, 3]).hodge(), G.dx(&[4, 5, 6, 7]));
        assert_eq!(G.dx(&[4, 5, 6, 7]).hodge(), G.dx(&[1, 2, 3]));
        assert_eq!(Labels::R4.dx(&[1, 3]).hodge(), -Labels::R4.dx(&[2, 4]));
    }

    #[test]
    fn evaluate_examples() {
        let f = G.dx(&[1, 2, 3]);
        assert_eq!(f.evaluate(&[G.e(1), G.e(2), G.e(3)]).unwrap(), int(1));
        assert_eq!(f.evaluate(&[G.e(2), G.e(1), G.e(3)]).unwrap(), int(-1));
        assert!(matches!(
            f.evaluate(&[G.e(1)]),
            Err(Error::Arity {
                expected: 3,
                got: 1
            })
        ));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram_norm_sq(&[G.e(1), G.e(2), G.e(3)]), int(1));
        assert_eq!(gram_norm_sq(&[G.e(1), G.e(1)]), int(0));
        assert_eq!(
            gram_norm_sq(&[G.e(1).scale(&int(2)), G.e(2).scale(&int(3))]),
            int(36)
        );
    }

    #[test]
    fn restrict_examples() {
        let f = G.dx(&[1, 2, 3]) + G.dx(&[1, 4, 5]);
        assert_eq!(f.restrict(3), G.dx(&[1, 2, 3]));
        assert!(f.restrict(2).is_zero());
    }

    #[test]
    fn identity_scales_by_grade() {
        let f = G.dx(&[1, 2, 3]) + G.dx(&[1, 4, 5]);
        assert_eq!(f.gl_act(&Matrix::identity(7)).unwrap(), f.scale(&int(3)));
    }

    #[test]
    fn pullback_by_negative_identity() {
        let f = G.dx(&[1, 2, 3]) + G.dx(&[2, 4, 6]);
        let minus = Matrix::identity(7).scale(&int(-1));
        assert_eq!(f.pullback(&minus).unwrap(), -f.clone());
        assert_eq!(f.pullback(&Matrix::identity(7)).unwrap(), f);
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let f = G.dx(&[1, 2]) + G.dx(&[2, 1]);
        assert!(f.is_zero());
        assert_eq!(f.len(), 0);
    }

    #[test]
    fn labels_terms_parse_digit_strings() {
        let s = Labels::SPIN7;
        assert_eq!(
            s.terms(&[(1, "0123"), (-1, "1023")]),
            s.dx(&[0, 1, 2, 3]).scale(&int(2))
        );
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(a in form_strategy(6, 2), b in form_strategy(6, 3)) {
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            // (−1)^{2·3} = +1
            prop_assert_eq!(ab, ba);
        }

        #[test]
        fn odd_forms_anticommute(a in form_strategy(6, 1), b in form_strategy(6, 3)) {
            prop_assert_eq!(a.wedge(&b).unwrap(), -b.wedge(&a).unwrap());
        }

        #[test]
        fn wedge_associative(a in form_strategy(6, 1), b in form_strategy(6, 2), c in form_strategy(6, 2)) {
            let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn double_hodge_sign(a in form_strategy(7, 3), b in form_strategy(6, 3)) {
            prop_assert_eq!(a.hodge().hodge(), a.clone());
            // p(n−p) = 9 on ℝ⁶
            prop_assert_eq!(b.hodge().hodge(), -b.clone());
        }

        #[test]
        fn hodge_inner_product(a in form_strategy(5, 2), b in form_strategy(5, 2)) {
            let top = a.wedge(&b.hodge()).unwrap();
            let vol = AlternatingForm::volume(5);
            prop_assert_eq!(top.inner(&vol), a.inner(&b));
        }

        #[test]
        fn interior_matches_evaluation(a in form_strategy(6, 3), v in vec_strategy(6), x in vec_strategy(6), y in vec_strategy(6)) {
            let lhs = a.interior(&v).unwrap().evaluate(&[x.clone(), y.clone()]).unwrap();
            let rhs = a.evaluate(&[v, x, y]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gram_equals_simple_norm(u in vec_strategy(6), v in vec_strategy(6), x in vec_strategy(6)) {
            let vs = [u, v, x];
            let simple = simple_multivector(&vs).unwrap();
            prop_assert_eq!(gram_norm_sq(&vs), simple.inner(&simple));
            prop_assert!(gram_norm_sq(&vs) >= int(0));
        }

        #[test]
        fn evaluation_is_pairing_with_simple_vector(a in form_strategy(6, 3), u in vec_strategy(6), v in vec_strategy(6), x in vec_strategy(6)) {
            let vs = [u, v, x];
            prop_assert_eq!(a.evaluate(&vs).unwrap(), a.inner(&simple_multivector(&vs).unwrap()));
        }

        #[test]
        fn gl_act_is_derivation(x in matrix_strategy(5), a in form_strategy(5, 2), b in form_strategy(5, 2)) {
            let lhs = a.wedge(&b).unwrap().gl_act(&x).unwrap();
            let rhs = a.gl_act(&x).unwrap().wedge(&b).unwrap() + a.wedge(&b.gl_act(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gl_act_matches_evaluation(x in matrix_strategy(5), a in form_strategy(5, 2), u in vec_strategy(5), v in vec_strategy(5)) {
            let xu = Vector(x.mul_vec(&u.0));
            let xv = Vector(x.mul_vec(&v.0));
            let lhs = a.gl_act(&x).unwrap().evaluate(&[u.clone(), v.clone()]).unwrap();
            let rhs = a.evaluate(&[xu, v.clone()]).unwrap() + a.evaluate(&[u, xv]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pullback_matches_evaluation(g in matrix_strategy(4), a in form_strategy(4, 2), u in vec_strategy(4), v in vec_strategy(4)) {
            let gu = Vector(g.mul_vec(&u.0));
            let gv = Vector(g.mul_vec(&v.0));
            prop_assert_eq!(a.pullback(&g).unwrap().evaluate(&[u, v]).unwrap(), a.evaluate(&[gu, gv]).unwrap());
        }
    }
}
