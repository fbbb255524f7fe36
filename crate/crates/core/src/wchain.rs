//! Invariant transversal chains W_{d₁} ⊂ W_{d₂} ⊂ … ⊂ gl(n).
//!
//! Each W_d must meet its flag subalgebra h_s trivially, have dimension c_s,
//! and be invariant under conjugation by the involution R (and, for Spin(7),
//! under the bracket action of the embedded su(2)). The search decomposes
//! gl(n) into jointly invariant blocks and looks for nested sums of blocks by
//! backtracking; any sum of invariant blocks is automatically invariant, so
//! only transversality has to be tested while searching.

use serde::{Deserialize, Serialize};

use crate::calibration::catalog;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{EchelonBuilder, Matrix};
use crate::scalar::{self, int, Scalar};
use crate::stabilizer::{action_matrix, stabilizer, MatrixSubspace};

pub const FORMAT: &str = "calibex.wchain/1";

/// Which coordinate block of ℝ⁸ carries the su(2) action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Su2Slots {
    /// Slots 0–3: the directions of the initial Cayley flag element.
    Leading,
    /// Slots 4–7.
    Trailing,
}

/// su(2) = stabilizer of the self-dual triple, embedded block-diagonally in gl(8).
pub fn su2_generators(slots: Su2Slots) -> Vec<Matrix> {
    let su2 = stabilizer(&catalog().sd_triple, 4).expect("triple on ℝ⁴");
    let offset = match slots {
        Su2Slots::Leading => 0,
        Su2Slots::Trailing => 4,
    };
    su2.basis()
        .iter()
        .map(|s| {
            let mut m = Matrix::zeros(8, 8);
            for r in 0..4 {
                for c in 0..4 {
                    m[(offset + r, offset + c)] = s[(r, c)].clone();
                }
            }
            m
        })
        .collect()
}

/// The symmetry data a chain must respect.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub involution: Matrix,
    pub su2: Vec<Matrix>,
}

impl Symmetry {
    pub fn for_group(group: Group, slots: Su2Slots) -> Self {
        Symmetry {
            involution: group.involution(),
            su2: match group {
                Group::G2 => Vec::new(),
                Group::Spin7 => su2_generators(slots),
            },
        }
    }

    pub fn preserves(&self, w: &MatrixSubspace) -> bool {
        w.conjugate(&self.involution) == *w && w.bracket_invariant(&self.su2)
    }
}

/// Sub-verdicts of a transversality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalVerdict {
    pub dim: usize,
    pub expected_dim: usize,
    pub intersection_dim: usize,
    pub r_invariant: bool,
    pub su2_invariant: Option<bool>,
}

impl TransversalVerdict {
    pub fn passed(&self) -> bool {
        self.dim == self.expected_dim
            && self.intersection_dim == 0
            && self.r_invariant
            && self.su2_invariant.unwrap_or(true)
    }
}

/// Checks (i) dim W = c_s, (ii) W ∩ h_s = 0, (iii) R W R⁻¹ = W, (iv) [su(2), W] ⊆ W.
pub fn verify_transversal(
    w: &MatrixSubspace,
    s: usize,
    group: Group,
    sym: &Symmetry,
) -> TransversalVerdict {
    let h = group.hk(s);
    TransversalVerdict {
        dim: w.dim(),
        expected_dim: h.codim(),
        intersection_dim: w.intersection(h).dim(),
        r_invariant: w.conjugate(&sym.involution) == *w,
        su2_invariant: (!sym.su2.is_empty()).then(|| w.bracket_invariant(&sym.su2)),
    }
}

pub fn transversal_certificate(claim_id: String, v: &TransversalVerdict) -> Certificate {
    let mut detail = format!(
        "dim {} (expected {}), dim W∩h_s {}, R-invariant {}",
        v.dim, v.expected_dim, v.intersection_dim, v.r_invariant
    );
    if let Some(su2) = v.su2_invariant {
        detail.push_str(&format!(", su(2)-invariant {su2}"));
    }
    Certificate::holds(
        claim_id,
        "transversal subspace to the flag subalgebra",
        v.passed(),
    )
    .with_detail(detail)
}

/// W₁: x·diag(I₃, 0).
pub fn g2_w1() -> MatrixSubspace {
    MatrixSubspace::span(7, &[Matrix::diagonal(&[1, 1, 1, 0, 0, 0, 0])])
}

/// W₅: the displayed five-parameter family of 7×7 matrices.
pub fn g2_w5() -> MatrixSubspace {
    let entries: [&[(usize, usize)]; 5] = [
        &[(0, 0), (1, 1), (2, 2)],
        &[(0, 3), (1, 3), (2, 3)],
        &[(4, 1), (4, 2), (5, 2)],
        &[(5, 0), (6, 0), (6, 1)],
        &[(4, 0), (5, 1), (6, 2)],
    ];
    let gens: Vec<Matrix> = entries
        .iter()
        .map(|cells| {
            let mut m = Matrix::zeros(7, 7);
            for &(r, c) in *cells {
                m[(r, c)] = int(1);
            }
            m
        })
        .collect();
    MatrixSubspace::span(7, &gens)
}

/// One invariant block of gl(n), with its span.
#[derive(Clone, Debug)]
pub struct Block {
    pub basis: Vec<Matrix>,
    pub span: MatrixSubspace,
}

impl Block {
    fn new(n: usize, basis: Vec<Matrix>) -> Self {
        let span = MatrixSubspace::span(n, &basis);
        assert_eq!(span.dim(), basis.len(), "block basis is independent");
        Block { basis, span }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Splits a block into R-conjugation eigenspaces when it is not already invariant.
fn split_by_involution(n: usize, block: Vec<Matrix>, r: &Matrix) -> Vec<Vec<Matrix>> {
    let span = MatrixSubspace::span(n, &block);
    if span.conjugate(r) == span {
        return vec![block];
    }
    let conj: Vec<Matrix> = block.iter().map(|x| r.mul(x).mul(r)).collect();
    let plus: Vec<Matrix> = block.iter().zip(&conj).map(|(x, y)| x.add(y)).collect();
    let minus: Vec<Matrix> = block.iter().zip(&conj).map(|(x, y)| x.sub(y)).collect();
    [plus, minus]
        .into_iter()
        .map(|part| MatrixSubspace::span(n, &part).basis())
        .filter(|b| !b.is_empty())
        .collect()
}

/// Decomposes gl(n) into blocks invariant under the symmetry.
///
/// Without su(2) the blocks are the elementary matrices. With su(2) acting on
/// V = V_triv ⊕ V₄, gl(V) = V⊗V* splits into: E_ab on V_triv × V_triv; rows and
/// columns linking V_triv to V₄ (4-dimensional each); and gl(V₄) = commutant
/// ⊕ su(2)·commutant, i.e. four trivial lines and four adjoint triples.
pub fn invariant_blocks(n: usize, sym: &Symmetry) -> Vec<Block> {
    let unit = |a: usize, b: usize| Matrix::unit(n, a, b);
    let mut raw: Vec<Vec<Matrix>> = Vec::new();
    if sym.su2.is_empty() {
        for a in 0..n {
            for b in 0..n {
                raw.push(vec![unit(a, b)]);
            }
        }
    } else {
        let moved: Vec<usize> = (0..n)
            .filter(|&i| {
                sym.su2
                    .iter()
                    .any(|s| (0..n).any(|j| !s[(i, j)].is_zero_entry()))
            })
            .collect();
        let fixed: Vec<usize> = (0..n).filter(|i| !moved.contains(i)).collect();
        for &a in &fixed {
            for &b in &fixed {
                raw.push(vec![unit(a, b)]);
            }
        }
        for &a in &fixed {
            raw.push(moved.iter().map(|&b| unit(a, b)).collect());
        }
        for &b in &fixed {
            raw.push(moved.iter().map(|&a| unit(a, b)).collect());
        }
        let commutant = commutant_on(n, &moved, &sym.su2);
        for c in &commutant {
            raw.push(vec![c.clone()]);
        }
        for c in &commutant {
            raw.push(sym.su2.iter().map(|s| s.mul(c)).collect());
        }
    }
    let mut blocks: Vec<Block> = raw
        .into_iter()
        .flat_map(|b| split_by_involution(n, b, &sym.involution))
        .map(|b| Block::new(n, b))
        .collect();
    for b in &blocks {
        assert!(sym.preserves(&b.span), "block is not invariant");
    }
    blocks.sort_by(|a, b| {
        (a.dim(), a.span.subspace().pivots()).cmp(&(b.dim(), b.span.subspace().pivots()))
    });
    blocks
}

trait EntryZero {
    fn is_zero_entry(&self) -> bool;
}

impl EntryZero for Scalar {
    fn is_zero_entry(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Matrices supported on `slots × slots` that commute with every generator.
fn commutant_on(n: usize, slots: &[usize], gens: &[Matrix]) -> Vec<Matrix> {
    let m = slots.len();
    let cell = |r: usize, c: usize| Matrix::unit(n, slots[r], slots[c]);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for s in gens {
        let images: Vec<Matrix> = (0..m * m).map(|i| s.bracket(&cell(i / m, i % m))).collect();
        for entry in 0..n * n {
            rows.push(images.iter().map(|x| x.flat()[entry].clone()).collect());
        }
    }
    Matrix::from_rows_with_cols(rows, m * m)
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut x = Matrix::zeros(n, n);
            for (i, c) in v.into_iter().enumerate() {
                x[(slots[i / m], slots[i % m])] = c;
            }
            x
        })
        .collect()
}

/// A level of a chain: W of dimension `dim`, transversal to h_s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WLevel {
    pub dim: usize,
    pub s: usize,
    pub space: MatrixSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WChain {
    pub group: Group,
    pub su2_slots: Option<Su2Slots>,
    pub levels: Vec<WLevel>,
}

/// (target dimension, flag index) pairs.
pub fn targets(group: Group) -> Vec<(usize, usize)> {
    match group {
        Group::G2 => vec![(1, 3), (5, 4), (15, 5), (28, 6)],
        Group::Spin7 => vec![(1, 4), (5, 5), (15, 6), (35, 7)],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(WChain),
    /// Exhausted the search; `deepest` levels were completed on the best branch.
    NotFound {
        deepest: usize,
    },
}

struct Search<'a> {
    n: usize,
    blocks: &'a [Block],
    targets: &'a [(usize, usize)],
    /// Action matrices whose kernels are h_s, per level.
    actions: Vec<Matrix>,
    deepest: usize,
}

impl Search<'_> {
    fn image(&self, level: usize, x: &Matrix) -> Vec<Scalar> {
        self.actions[level].mul_vec(x.flat())
    }

    /// Rank of W plus every unused block from `start` on, modulo h_s.
    fn reachable(
        &self,
        level: usize,
        echelon: &EchelonBuilder,
        used: &[bool],
        start: usize,
    ) -> usize {
        let mut e = echelon.clone();
        let target = self.targets[level].0;
        for (i, b) in self.blocks.iter().enumerate().skip(start) {
            if used[i] {
                continue;
            }
            for x in &b.basis {
                e.push(&self.image(level, x));
                if e.rank() >= target {
                    return e.rank();
                }
            }
        }
        e.rank()
    }

    fn run(
        &mut self,
        level: usize,
        chosen: &mut Vec<Matrix>,
        echelon: EchelonBuilder,
        used: &mut Vec<bool>,
        start: usize,
        done: &mut Vec<usize>,
    ) -> bool {
        let (target, _) = self.targets[level];
        if chosen.len() == target {
            done.push(chosen.len());
            self.deepest = self.deepest.max(level + 1);
            if level + 1 == self.targets.len() {
                return true;
            }
            let mut next = EchelonBuilder::new(self.actions[level + 1].rows());
            let independent = chosen.iter().all(|x| {
                let img = self.image(level + 1, x);
                next.push(&img)
            });
            if independent && self.run(level + 1, chosen, next, used, 0, done) {
                return true;
            }
            done.pop();
            return false;
        }
        if self.reachable(level, &echelon, used, start) < target {
            return false;
        }
        for i in start..self.blocks.len() {
            if used[i] || chosen.len() + self.blocks[i].dim() > target {
                continue;
            }
            let mut e = echelon.clone();
            let ok = self.blocks[i]
                .basis
                .iter()
                .all(|x| e.push(&self.image(level, x)));
            if !ok {
                continue;
            }
            used[i] = true;
            let before = chosen.len();
            chosen.extend(self.blocks[i].basis.iter().cloned());
            if self.run(level, chosen, e, used, i + 1, done) {
                return true;
            }
            chosen.truncate(before);
            used[i] = false;
        }
        false
    }
}

/// Backtracking search over sums of invariant blocks.
///
/// `warm_start` fixes the first levels (they must be nested and transversal);
/// the search extends them with blocks.
pub fn search_with(
    group: Group,
    sym: &Symmetry,
    su2_slots: Option<Su2Slots>,
    targets: &[(usize, usize)],
    warm_start: &[MatrixSubspace],
) -> Result<SearchOutcome> {
    let n = group.n();
    let forms = group.forms();
    let actions = targets
        .iter()
        .map(|&(_, s)| action_matrix(&forms, n, s))
        .collect::<Result<Vec<_>>>()?;
    let blocks = invariant_blocks(n, sym);

    // Warm-start levels are taken as given; the search resumes after them.
    let mut chosen: Vec<Matrix> = Vec::new();
    let mut fixed_levels = 0;
    for (i, w) in warm_start.iter().enumerate() {
        if i >= targets.len() || w.dim() != targets[i].0 {
            return Err(Error::ChainFormat(format!(
                "warm-start level {i} has the wrong dimension"
            )));
        }
        let prev = MatrixSubspace::span(n, &chosen);
        if !prev.is_subspace_of(w) {
            return Err(Error::ChainFormat(format!(
                "warm-start level {i} is not nested"
            )));
        }
        chosen = w.basis();
        fixed_levels = i + 1;
    }
    let mut search = Search {
        n,
        blocks: &blocks,
        targets,
        actions,
        deepest: fixed_levels,
    };
    let mut echelon =
        EchelonBuilder::new(search.actions[fixed_levels.min(targets.len() - 1)].rows());
    if fixed_levels < targets.len() {
        for x in &chosen {
            if !echelon.push(&search.image(fixed_levels, x)) {
                return Ok(SearchOutcome::NotFound {
                    deepest: fixed_levels,
                });
            }
        }
    }
    let mut used = vec![false; blocks.len()];
    let mut done = Vec::new();
    let found = fixed_levels == targets.len()
        || search.run(fixed_levels, &mut chosen, echelon, &mut used, 0, &mut done);
    if !found {
        return Ok(SearchOutcome::NotFound {
            deepest: search.deepest,
        });
    }
    let _ = search.n;
    let levels = targets
        .iter()
        .enumerate()
        .map(|(i, &(d, s))| WLevel {
            dim: d,
            s,
            space: if i < fixed_levels {
                warm_start[i].clone()
            } else {
                MatrixSubspace::span(n, &chosen[..d])
            },
        })
        .collect();
    Ok(SearchOutcome::Found(WChain {
        group,
        su2_slots,
        levels,
    }))
}

/// The chain search with each group's default symmetry and targets. G₂ starts
/// from the displayed W₁ and W₅.
pub fn search_w_chain(group: Group) -> Result<SearchOutcome> {
    match group {
        Group::G2 => search_with(
            group,
            &Symmetry::for_group(group, Su2Slots::Leading),
            None,
            &targets(group),
            &[g2_w1(), g2_w5()],
        ),
        Group::Spin7 => search_with(
            group,
            &Symmetry::for_group(group, Su2Slots::Leading),
            Some(Su2Slots::Leading),
            &targets(group),
            &[],
        ),
    }
}

impl WChain {
    pub fn symmetry(&self) -> Symmetry {
        Symmetry::for_group(self.group, self.su2_slots.unwrap_or(Su2Slots::Leading))
    }

    /// One certificate per level plus one for nesting.
    pub fn certificates(&self) -> Vec<Certificate> {
        let sym = self.symmetry();
        let tag = self.group.tag();
        let mut out: Vec<Certificate> = self
            .levels
            .iter()
            .map(|l| {
                let v = verify_transversal(&l.space, l.s, self.group, &sym);
                transversal_certificate(format!("{tag}.wchain.W{}.s{}", l.dim, l.s), &v)
            })
            .collect();
        let nested = self
            .levels
            .windows(2)
            .all(|w| w[0].space.is_subspace_of(&w[1].space));
        out.push(Certificate::holds(
            format!("{tag}.wchain.nested"),
            "the transversal subspaces form a nested chain",
            nested,
        ));
        out
    }

    pub fn verified(&self) -> bool {
        self.certificates().iter().all(|c| c.passed)
    }

    pub fn to_file(&self) -> WChainFile {
        let sym = self.symmetry();
        let mut invariance = vec!["involution_conjugation".to_string()];
        if !sym.su2.is_empty() {
            invariance.push("su2_bracket".to_string());
        }
        WChainFile {
            format: FORMAT.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            group: self.group,
            invariance,
            involution: encode(&sym.involution),
            su2_slots: self.su2_slots,
            su2_generators: sym.su2.iter().map(encode).collect(),
            levels: self
                .levels
                .iter()
                .map(|l| LevelFile {
                    dim: l.dim,
                    flag_index: l.s,
                    basis: l.space.basis().iter().map(encode).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<WChain> {
        let file: WChainFile =
            serde_json::from_str(text).map_err(|e| Error::ChainFormat(e.to_string()))?;
        file.into_chain()
    }
}

type EncodedMatrix = Vec<Vec<[String; 2]>>;

fn encode(m: &Matrix) -> EncodedMatrix {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| [x.numer().to_string(), x.denom().to_string()])
                .collect()
        })
        .collect()
}

fn decode(n: usize, m: &EncodedMatrix) -> Result<Matrix> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::ChainFormat(format!("expected a {n}×{n} matrix")));
    }
    let rows = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|[a, b]| scalar::pair::from_strings(a, b).map_err(Error::ChainFormat))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

/// JSON form of a chain; rationals are `["num", "den"]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WChainFile {
    pub format: String,
    pub tool_version: String,
    pub group: Group,
    pub invariance: Vec<String>,
    pub involution: EncodedMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub su2_slots: Option<Su2Slots>,
    #[serde(default)]
    pub su2_generators: Vec<EncodedMatrix>,
    pub levels: Vec<LevelFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelFile {
    pub dim: usize,
    pub flag_index: usize,
    pub basis: Vec<EncodedMatrix>,
}

impl WChainFile {
    pub fn into_chain(self) -> Result<WChain> {
        if self.format != FORMAT {
            return Err(Error::ChainFormat(format!(
                "unknown format {:?}",
                self.format
            )));
        }
        let n = self.group.n();
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let basis = l
                    .basis
                    .iter()
                    .map(|m| decode(n, m))
                    .collect::<Result<Vec<_>>>()?;
                let space = MatrixSubspace::span(n, &basis);
                if space.dim() != l.dim {
                    return Err(Error::ChainFormat(format!(
                        "level of dimension {} has a basis spanning {}",
                        l.dim,
                        space.dim()
                    )));
                }
                Ok(WLevel {
                    dim: l.dim,
                    s: l.flag_index,
                    space,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WChain {
            group: self.group,
            su2_slots: self.su2_slots,
            levels,
        })
    }
}
