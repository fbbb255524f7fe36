//! The canonical calibration data on ℝ⁷ and ℝ⁸ and the identities they satisfy.
//!
//! Forms are transcribed from their standard coordinate expressions. Anything
//! that can be derived (the Hodge dual, the contraction χ₀, the τ-forms) is
//! derived, and the printed expansions are kept only as oracles to compare
//! against.

use std::sync::OnceLock;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{
    gram_norm_sq, w, AlternatingForm, Labels, MultiIndex, Vector, VectorValuedForm,
};
use crate::linalg::Matrix;
use crate::scalar::{self, int, Scalar};

const G: Labels = Labels::G2;
const S: Labels = Labels::SPIN7;
const Q: Labels = Labels::R4;

/// φ₀ = dx¹²³ + dx¹∧(dx⁴⁵+dx⁶⁷) + dx²∧(dx⁴⁶−dx⁵⁷) + dx³∧(−dx⁴⁷−dx⁵⁶).
pub fn phi0() -> AlternatingForm {
    G.dx(&[1, 2, 3])
        + w(&G.dx(&[1]), &(G.dx(&[4, 5]) + G.dx(&[6, 7])))
        + w(&G.dx(&[2]), &(G.dx(&[4, 6]) - G.dx(&[5, 7])))
        + w(&G.dx(&[3]), &(-G.dx(&[4, 7]) - G.dx(&[5, 6])))
}

/// The printed coordinate expression of *φ₀.
pub fn star_phi0_printed() -> AlternatingForm {
    G.dx(&[4, 5, 6, 7])
        + w(&G.dx(&[2, 3]), &(G.dx(&[4, 5]) + G.dx(&[6, 7])))
        + w(&G.dx(&[3, 1]), &(G.dx(&[4, 6]) - G.dx(&[5, 7])))
        + w(&G.dx(&[1, 2]), &(-G.dx(&[4, 7]) - G.dx(&[5, 6])))
}

/// The printed expansion of χ₀, component j at offset j−1: χ₀ = Σ χ₀ⱼ ∂ⱼ.
pub fn chi0_printed() -> Vec<AlternatingForm> {
    let table: [(i64, [(i64, &str); 4]); 7] = [
        (-1, [(1, "357"), (-1, "346"), (-1, "256"), (-1, "247")]),
        (-1, [(1, "367"), (1, "345"), (1, "156"), (1, "147")]),
        (1, [(1, "267"), (1, "245"), (1, "157"), (-1, "146")]),
        (-1, [(1, "567"), (1, "235"), (-1, "136"), (-1, "127")]),
        (1, [(1, "467"), (1, "234"), (-1, "137"), (1, "126")]),
        (-1, [(1, "457"), (1, "237"), (1, "134"), (1, "125")]),
        (1, [(1, "456"), (1, "236"), (1, "135"), (-1, "124")]),
    ];
    table
        .iter()
        .map(|(sign, terms)| G.terms(terms).scale(&int(*sign)))
        .collect()
}

/// The printed grouped expression of Ψ₀ on ℝ⁸.
pub fn psi0_printed() -> AlternatingForm {
    S.dx(&[0, 1, 2, 3])
        + S.dx(&[4, 5, 6, 7])
        + w(
            &(S.dx(&[0, 1]) + S.dx(&[2, 3])),
            &(S.dx(&[4, 5]) + S.dx(&[6, 7])),
        )
        + w(
            &(S.dx(&[0, 2]) + S.dx(&[3, 1])),
            &(S.dx(&[4, 6]) + S.dx(&[7, 5])),
        )
        + w(
            &(S.dx(&[0, 3]) + S.dx(&[1, 2])),
            &(S.dx(&[7, 4]) + S.dx(&[6, 5])),
        )
}

/// The printed table of τ¹..τ⁷ (index j at position j−1).
///
/// This transcription does not satisfy the Cayley identity; see
/// [`tau_table_discrepancies`]. It is kept as an oracle only.
pub fn tau_printed() -> Vec<AlternatingForm> {
    let t = |terms: &[(i64, &str)]| S.terms(terms);
    let tau1 = w(&t(&[(1, "03"), (-1, "12")]), &t(&[(1, "46"), (1, "57")]))
        - w(&t(&[(1, "02"), (1, "13")]), &t(&[(1, "47"), (-1, "56")]));
    let tau2 = w(&t(&[(1, "01"), (-1, "23")]), &t(&[(1, "47"), (-1, "56")]))
        - w(&t(&[(1, "03"), (-1, "12")]), &t(&[(1, "45"), (-1, "67")]));
    let tau3 = w(&t(&[(1, "02"), (1, "13")]), &t(&[(1, "45"), (-1, "67")]))
        - w(&t(&[(1, "01"), (-1, "23")]), &t(&[(1, "46"), (1, "57")]));
    let tau4 = t(&[
        (1, "1234"),
        (-1, "0235"),
        (1, "0136"),
        (-1, "0127"),
        (1, "0567"),
        (-1, "1467"),
        (1, "2457"),
        (-1, "3456"),
    ]);
    let tau5 = t(&[
        (1, "1235"),
        (1, "0234"),
        (1, "0137"),
        (1, "0126"),
        (-1, "1567"),
        (-1, "0467"),
        (-1, "3457"),
        (-1, "2456"),
    ]);
    let tau6 = t(&[
        (1, "1236"),
        (1, "0237"),
        (-1, "0134"),
        (-1, "0125"),
        (-1, "2567"),
        (-1, "3467"),
        (1, "0457"),
        (1, "1456"),
    ]);
    let tau7 = t(&[
        (1, "1237"),
        (-1, "0236"),
        (-1, "0135"),
        (1, "0124"),
        (-1, "3567"),
        (1, "2467"),
        (1, "1457"),
        (-1, "0456"),
    ]);
    vec![tau1, tau2, tau3, tau4, tau5, tau6, tau7]
}

/// τʲ = xⱼ.Ψ₀ for the rotation xⱼ = E_{j0} − E_{0j} carrying e₀ towards eⱼ.
///
/// This is the 4-form ⟨Im(u×v×w×z), eⱼ⟩ up to the overall sign convention,
/// and it satisfies the Cayley identity exactly.
pub fn tau_from_psi(psi: &AlternatingForm, j: usize) -> AlternatingForm {
    let x = Matrix::unit(8, j, 0).sub(&Matrix::unit(8, 0, j));
    psi.gl_act(&x).expect("8×8 generator")
}

/// (j, multi-index, derived coefficient, printed coefficient) wherever the
/// printed τ table disagrees with the derived forms.
pub fn tau_table_discrepancies() -> Vec<(usize, MultiIndex, Scalar, Scalar)> {
    let cat = catalog();
    let mut out = Vec::new();
    for (j, printed) in (1..8).zip(tau_printed()) {
        let derived = cat.tau0.component(j);
        for idx in MultiIndex::all(8, 4) {
            let (d, p) = (derived.coefficient(&idx), printed.coefficient(&idx));
            if d != p {
                out.push((j, idx, d, p));
            }
        }
    }
    out
}

/// ω₀ = dx¹⁶ − dx²⁵ − dx³⁴.
pub fn su3_omega0() -> AlternatingForm {
    G.dx(&[1, 6]) - G.dx(&[2, 5]) - G.dx(&[3, 4])
}

/// Real and imaginary parts of Υ₀ = (dx¹ + i dx⁶)(dx² − i dx⁵)(dx³ − i dx⁴).
pub fn su3_upsilon0() -> (AlternatingForm, AlternatingForm) {
    // Υ₀ = (a₁ + i b₁)(a₂ + i b₂)(a₃ + i b₃)
    let (a1, b1) = (G.dx(&[1]), G.dx(&[6]));
    let (a2, b2) = (G.dx(&[2]), -G.dx(&[5]));
    let (a3, b3) = (G.dx(&[3]), -G.dx(&[4]));
    let m = |x: &AlternatingForm, y: &AlternatingForm, z: &AlternatingForm| w(&w(x, y), z);
    let re = m(&a1, &a2, &a3) - m(&a1, &b2, &b3) - m(&b1, &a2, &b3) - m(&b1, &b2, &a3);
    let im = m(&a1, &a2, &b3) + m(&a1, &b2, &a3) + m(&b1, &a2, &a3) - m(&b1, &b2, &b3);
    (re, im)
}

/// Ω₁ = ω¹²+ω³⁴, Ω₂ = ω¹³−ω²⁴, Ω₃ = ω¹⁴+ω²³ on ℝ⁴.
pub fn sd_triple() -> [AlternatingForm; 3] {
    [
        Q.dx(&[1, 2]) + Q.dx(&[3, 4]),
        Q.dx(&[1, 3]) - Q.dx(&[2, 4]),
        Q.dx(&[1, 4]) + Q.dx(&[2, 3]),
    ]
}

/// Checks Ω_j ∧ Ω_k = 2δ_{jk}·vol; returns the first failing pair (1-based).
pub fn check_sd_triple(triple: &[AlternatingForm; 3]) -> Result<()> {
    let vol = AlternatingForm::volume(4);
    for j in 0..3 {
        if triple[j].dim() != 4 || triple[j].grade() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: triple[j].dim(),
            });
        }
        for k in j..3 {
            let expected = if j == k { 2 } else { 0 };
            if triple[j].wedge(&triple[k])? != vol.scale(&int(expected)) {
                return Err(Error::TripleRelation {
                    j: j + 1,
                    k: k + 1,
                    expected,
                });
            }
        }
    }
    Ok(())
}

/// Ψ = dy⁰¹²³ + ½Ω₁∧Ω₁ + (dy⁰¹+dy²³)∧Ω₁ + (dy⁰²+dy³¹)∧Ω₂ − (dy⁰³+dy¹²)∧Ω₃,
/// with y in slots 0–3 and the ℝ⁴ factor in slots 4–7.
pub fn build_spin7_from_sd_triple(triple: &[AlternatingForm; 3]) -> Result<AlternatingForm> {
    check_sd_triple(triple)?;
    let om: Vec<AlternatingForm> = triple
        .iter()
        .map(|o| o.embed(8, 4))
        .collect::<Result<_>>()?;
    let y = |a: usize, b: usize| S.dx(&[a, b]);
    Ok(S.dx(&[0, 1, 2, 3])
        + w(&om[0], &om[0]).scale(&scalar::ratio(1, 2))
        + w(&(y(0, 1) + y(2, 3)), &om[0])
        + w(&(y(0, 2) + y(3, 1)), &om[1])
        - w(&(y(0, 3) + y(1, 2)), &om[2]))
}

/// The canonical calibration data, built once and validated against the
/// printed oracles.
#[derive(Clone, Debug)]
pub struct CalibrationCatalog {
    pub phi0: AlternatingForm,
    pub star_phi0: AlternatingForm,
    /// χ₀ⱼ = −eⱼ ⌟ *φ₀, component j at offset j−1.
    pub chi0: VectorValuedForm,
    pub psi0: AlternatingForm,
    /// τʲ at offset j; the e₀ component is zero.
    pub tau0: VectorValuedForm,
    pub su3_dx7: AlternatingForm,
    pub su3_omega0: AlternatingForm,
    pub su3_upsilon0_re: AlternatingForm,
    pub su3_upsilon0_im: AlternatingForm,
    pub sd_triple: [AlternatingForm; 3],
}

fn first_mismatch(
    component: &str,
    computed: &AlternatingForm,
    expected: &AlternatingForm,
    base: usize,
) -> Result<()> {
    let keys = computed
        .terms()
        .chain(expected.terms())
        .map(|(k, _)| k.clone());
    for k in keys {
        let (c, e) = (computed.coefficient(&k), expected.coefficient(&k));
        if c != e {
            return Err(Error::CatalogMismatch {
                component: component.into(),
                index: k.label(base),
                computed: scalar::display(&c),
                expected: scalar::display(&e),
            });
        }
    }
    Ok(())
}

impl CalibrationCatalog {
    pub fn build() -> Result<Self> {
        let phi0 = phi0();
        let star_phi0 = phi0.hodge();
        first_mismatch("*phi0", &star_phi0, &star_phi0_printed(), 1)?;

        let chi: Vec<AlternatingForm> = (1..=7)
            .map(|j| Ok(-star_phi0.interior(&G.e(j))?))
            .collect::<Result<_>>()?;
        for (j, (c, p)) in chi.iter().zip(chi0_printed()).enumerate() {
            first_mismatch(&format!("chi0[{}]", j + 1), c, &p, 1)?;
        }
        let chi0 = VectorValuedForm::new(chi)?;

        let psi0 = w(&S.dx(&[0]), &phi0.embed(8, 1)?) + star_phi0.embed(8, 1)?;
        first_mismatch("psi0", &psi0, &psi0_printed(), 0)?;

        let mut tau = vec![AlternatingForm::zero(8, 4)];
        tau.extend((1..8).map(|j| tau_from_psi(&psi0, j)));
        let tau0 = VectorValuedForm::new(tau)?;

        let (re, im) = su3_upsilon0();
        let sd = sd_triple();
        check_sd_triple(&sd)?;
        Ok(CalibrationCatalog {
            phi0,
            star_phi0,
            chi0,
            psi0,
            tau0,
            su3_dx7: G.dx(&[7]),
            su3_omega0: su3_omega0(),
            su3_upsilon0_re: re,
            su3_upsilon0_im: im,
            sd_triple: sd,
        })
    }

    /// The τ components τ¹..τ⁷ (dropping the zero e₀ slot).
    pub fn tau_components(&self) -> &[AlternatingForm] {
        &self.tau0.components()[1..]
    }
}

/// The shared catalog. Construction failures are programming errors.
pub fn catalog() -> &'static CalibrationCatalog {
    static CATALOG: OnceLock<CalibrationCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| CalibrationCatalog::build().expect("calibration catalog is consistent"))
}

/// The two-fold cross product on ℝ⁷: ⟨u×v, w⟩ = φ₀(u, v, w).
pub fn cross2(u: &Vector, v: &Vector) -> Result<Vector> {
    let phi = &catalog().phi0;
    (0..7)
        .map(|i| phi.evaluate(&[u.clone(), v.clone(), Vector::basis(7, i)]))
        .collect::<Result<Vec<_>>>()
        .map(Vector)
}

/// The triple cross product on ℝ⁸: ⟨u×v×w, z⟩ = Ψ₀(u, v, w, z).
pub fn triple_cross(u: &Vector, v: &Vector, x: &Vector) -> Result<Vector> {
    let psi = &catalog().psi0;
    (0..8)
        .map(|i| psi.evaluate(&[u.clone(), v.clone(), x.clone(), Vector::basis(8, i)]))
        .collect::<Result<Vec<_>>>()
        .map(Vector)
}

/// Parts of φ₀(u,v,w)² + |χ₀(u,v,w)|² − |u∧v∧w|².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub calibration_sq: Scalar,
    pub complement_sq: Scalar,
    pub gram: Scalar,
}

impl Residual {
    pub fn value(&self) -> Scalar {
        &self.calibration_sq + &self.complement_sq - &self.gram
    }
}

fn residual(
    form: &AlternatingForm,
    components: &[AlternatingForm],
    vs: &[Vector],
) -> Result<Residual> {
    let c = form.evaluate(vs)?;
    let mut comp = Scalar::zero();
    for f in components {
        let v = f.evaluate(vs)?;
        comp += &v * &v;
    }
    Ok(Residual {
        calibration_sq: &c * &c,
        complement_sq: comp,
        gram: gram_norm_sq(vs),
    })
}

/// The associator identity on ℝ⁷, split into its three parts.
pub fn assoc_parts(u: &Vector, v: &Vector, x: &Vector) -> Result<Residual> {
    let cat = catalog();
    residual(
        &cat.phi0,
        cat.chi0.components(),
        &[u.clone(), v.clone(), x.clone()],
    )
}

pub fn assoc_residual(u: &Vector, v: &Vector, x: &Vector) -> Result<Scalar> {
    assoc_parts(u, v, x).map(|r| r.value())
}

/// The Cayley identity on ℝ⁸, split into its three parts.
pub fn cayley_parts(u: &Vector, v: &Vector, x: &Vector, z: &Vector) -> Result<Residual> {
    let cat = catalog();
    residual(
        &cat.psi0,
        cat.tau_components(),
        &[u.clone(), v.clone(), x.clone(), z.clone()],
    )
}

pub fn cayley_residual(u: &Vector, v: &Vector, x: &Vector, z: &Vector) -> Result<Scalar> {
    cayley_parts(u, v, x, z).map(|r| r.value())
}

/// Seeded pseudorandom rationals p/q with p ∈ [−9, 9] and q ∈ [1, 4].
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        let p = self.rng.random_range(-9i64..=9);
        let q = self.rng.random_range(1i64..=4);
        scalar::ratio(p, q)
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        Vector((0..n).map(|_| self.scalar()).collect())
    }

    pub fn vectors(&mut self, n: usize, count: usize) -> Vec<Vector> {
        (0..count).map(|_| self.vector(n)).collect()
    }
}

/// Checks x.χ₀ʲ = Σ_k xʲ_k χ₀ᵏ for every j (x acting in the standard representation).
pub fn chi_equivariant(x: &Matrix) -> Result<bool> {
    let chi = catalog().chi0.components();
    for j in 0..7 {
        let lhs = chi[j].gl_act(x)?;
        let mut rhs = AlternatingForm::zero(7, 3);
        for (k, c) in chi.iter().enumerate() {
            rhs = rhs + c.scale(&x[(j, k)]);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves x.τʲ = Σ_k ρ(x)ʲ_k τᵏ for the 7×7 matrix ρ(x), if one exists.
pub fn tau_representation(x: &Matrix) -> Result<Option<Matrix>> {
    let tau = catalog().tau_components();
    let cols: Vec<Vec<Scalar>> = tau
        .iter()
        .map(AlternatingForm::coefficient_vector)
        .collect();
    let basis = Matrix::from_rows(cols).transpose();
    let mut rho = Matrix::zeros(7, 7);
    for (j, t) in tau.iter().enumerate() {
        let image = t.gl_act(x)?.coefficient_vector();
        let Some(c) = basis.solve(&image) else {
            return Ok(None);
        };
        for (k, v) in c.into_iter().enumerate() {
            rho[(j, k)] = v;
        }
    }
    Ok(Some(rho))
}
