//! Truncated (co)simplicial modules, the Dold-Kan constructions in both
//! directions, normalized complexes, and the relation cosimplicial object of
//! a group presentation together with its partial-sum trivialization θ.
//!
//! Everything is truncated: levels are stored up to an explicit bound, and
//! all downstream results are expected to be independent of raising it.
//! Structure maps are plain integer matrices; `validate` checks the full set
//! of (co)simplicial identities mechanically, which is also how the index
//! conventions here were fixed in the first place.

use crate::complex::{ChainComplex, CochainComplex};
use crate::error::{Error, Result};
use crate::functor::PolyFunctor;
use crate::group::Presentation;
use crate::snf::{inverse, kernel_basis, snf_with, solve, SnfOpts};
use crate::{Int, IntMatrix};
use std::collections::HashMap;

/// Levels `V^0..V^trunc`, cofaces `d^i: V^n -> V^{n+1}` (`0 <= i <= n+1`),
/// codegeneracies `s^i: V^{n+1} -> V^n` (`0 <= i <= n`).
#[derive(Clone, Debug)]
pub struct CosimplicialModule {
    ranks: Vec<usize>,
    cofaces: Vec<Vec<IntMatrix>>,
    codegeneracies: Vec<Vec<IntMatrix>>,
}

impl CosimplicialModule {
    pub fn new(
        ranks: Vec<usize>,
        cofaces: Vec<Vec<IntMatrix>>,
        codegeneracies: Vec<Vec<IntMatrix>>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::invalid("a cosimplicial module needs level 0"));
        }
        let levels = ranks.len();
        if cofaces.len() != levels - 1 || codegeneracies.len() != levels - 1 {
            return Err(Error::invalid("structure maps must cover every adjacent level pair"));
        }
        for n in 0..levels - 1 {
            if cofaces[n].len() != n + 2 {
                return Err(Error::invalid(format!("level {n} needs {} cofaces", n + 2)));
            }
            if codegeneracies[n].len() != n + 1 {
                return Err(Error::invalid(format!("level {n} needs {} codegeneracies", n + 1)));
            }
            for (i, d) in cofaces[n].iter().enumerate() {
                if d.rows() != ranks[n + 1] || d.cols() != ranks[n] {
                    return Err(Error::invalid(format!("coface d^{i} at level {n} has wrong shape")));
                }
            }
            for (i, s) in codegeneracies[n].iter().enumerate() {
                if s.rows() != ranks[n] || s.cols() != ranks[n + 1] {
                    return Err(Error::invalid(format!(
                        "codegeneracy s^{i} into level {n} has wrong shape"
                    )));
                }
            }
        }
        Ok(CosimplicialModule { ranks, cofaces, codegeneracies })
    }

    /// The constant object: every level `Z^rank`, all structure maps identity.
    pub fn constant(rank: usize, trunc: usize) -> Self {
        let ranks = vec![rank; trunc + 1];
        let cofaces = (0..trunc).map(|n| vec![IntMatrix::identity(rank); n + 2]).collect();
        let codegeneracies = (0..trunc).map(|n| vec![IntMatrix::identity(rank); n + 1]).collect();
        CosimplicialModule { ranks, cofaces, codegeneracies }
    }

    pub fn truncation(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d^i: V^n -> V^{n+1}`.
    pub fn coface(&self, n: usize, i: usize) -> &IntMatrix {
        &self.cofaces[n][i]
    }

    /// `s^i: V^{n+1} -> V^n`.
    pub fn codegeneracy(&self, n: usize, i: usize) -> &IntMatrix {
        &self.codegeneracies[n][i]
    }

    /// Checks every cosimplicial identity expressible within the truncation.
    pub fn validate(&self) -> Result<()> {
        let top = self.truncation();
        for n in 0..top.saturating_sub(1) {
            // d^j d^i = d^i d^{j-1} for i < j
            for j in 1..=n + 2 {
                for i in 0..j {
                    let lhs = self.coface(n + 1, j).mul(self.coface(n, i));
                    let rhs = self.coface(n + 1, i).mul(self.coface(n, j - 1));
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "cosimplicial identity d^{j} d^{i} = d^{i} d^{} fails at level {n}",
                            j - 1
                        )));
                    }
                }
            }
            // s^j s^i = s^i s^{j+1} for i <= j
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.codegeneracy(n, j).mul(self.codegeneracy(n + 1, i));
                    let rhs = self.codegeneracy(n, i).mul(self.codegeneracy(n + 1, j + 1));
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "cosimplicial identity s^{j} s^{i} = s^{i} s^{} fails at level {n}",
                            j + 1
                        )));
                    }
                }
            }
        }
        // mixed identities s^j d^i
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let got = self.codegeneracy(n, j).mul(self.coface(n, i));
                    let want = if i == j || i == j + 1 {
                        IntMatrix::identity(self.ranks[n])
                    } else if i < j {
                        self.coface(n - 1, i).mul(self.codegeneracy(n - 1, j - 1))
                    } else {
                        self.coface(n - 1, i - 1).mul(self.codegeneracy(n - 1, j))
                    };
                    if got != want {
                        return Err(Error::invalid(format!(
                            "cosimplicial identity s^{j} d^{i} fails at level {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies a polynomial functor levelwise; identities are preserved by
    /// functoriality.
    pub fn map_levels(&self, phi: &PolyFunctor) -> CosimplicialModule {
        CosimplicialModule {
            ranks: self.ranks.iter().map(|&r| phi.rank_at(r)).collect(),
            cofaces: self
                .cofaces
                .iter()
                .map(|v| v.iter().map(|m| phi.apply_map(m)).collect())
                .collect(),
            codegeneracies: self
                .codegeneracies
                .iter()
                .map(|v| v.iter().map(|m| phi.apply_map(m)).collect())
                .collect(),
        }
    }
}

/// Levels `V_0..V_trunc`, faces `d_i: V_{n+1} -> V_n` (`0 <= i <= n+1`),
/// degeneracies `s_i: V_n -> V_{n+1}` (`0 <= i <= n`).
#[derive(Clone, Debug)]
pub struct SimplicialModule {
    ranks: Vec<usize>,
    faces: Vec<Vec<IntMatrix>>,
    degeneracies: Vec<Vec<IntMatrix>>,
}

impl SimplicialModule {
    pub fn new(
        ranks: Vec<usize>,
        faces: Vec<Vec<IntMatrix>>,
        degeneracies: Vec<Vec<IntMatrix>>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::invalid("a simplicial module needs level 0"));
        }
        let levels = ranks.len();
        if faces.len() != levels - 1 || degeneracies.len() != levels - 1 {
            return Err(Error::invalid("structure maps must cover every adjacent level pair"));
        }
        for n in 0..levels - 1 {
            if faces[n].len() != n + 2 {
                return Err(Error::invalid(format!("level {} needs {} faces", n + 1, n + 2)));
            }
            if degeneracies[n].len() != n + 1 {
                return Err(Error::invalid(format!("level {n} needs {} degeneracies", n + 1)));
            }
            for (i, d) in faces[n].iter().enumerate() {
                if d.rows() != ranks[n] || d.cols() != ranks[n + 1] {
                    return Err(Error::invalid(format!("face d_{i} into level {n} has wrong shape")));
                }
            }
            for (i, s) in degeneracies[n].iter().enumerate() {
                if s.rows() != ranks[n + 1] || s.cols() != ranks[n] {
                    return Err(Error::invalid(format!(
                        "degeneracy s_{i} out of level {n} has wrong shape"
                    )));
                }
            }
        }
        Ok(SimplicialModule { ranks, faces, degeneracies })
    }

    pub fn constant(rank: usize, trunc: usize) -> Self {
        let ranks = vec![rank; trunc + 1];
        let faces = (0..trunc).map(|n| vec![IntMatrix::identity(rank); n + 2]).collect();
        let degeneracies = (0..trunc).map(|n| vec![IntMatrix::identity(rank); n + 1]).collect();
        SimplicialModule { ranks, faces, degeneracies }
    }

    pub fn truncation(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_i: V_{n+1} -> V_n`.
    pub fn face(&self, n: usize, i: usize) -> &IntMatrix {
        &self.faces[n][i]
    }

    /// `s_i: V_n -> V_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &IntMatrix {
        &self.degeneracies[n][i]
    }

    /// Checks every simplicial identity expressible within the truncation.
    pub fn validate(&self) -> Result<()> {
        let top = self.truncation();
        for n in 0..top.saturating_sub(1) {
            // d_i d_j = d_{j-1} d_i for i < j
            for j in 1..=n + 2 {
                for i in 0..j {
                    let lhs = self.face(n, i).mul(self.face(n + 1, j));
                    let rhs = self.face(n, j - 1).mul(self.face(n + 1, i));
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "simplicial identity d_{i} d_{j} fails above level {n}"
                        )));
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i for i <= j
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.degeneracy(n + 1, i).mul(self.degeneracy(n, j));
                    let rhs = self.degeneracy(n + 1, j + 1).mul(self.degeneracy(n, i));
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "simplicial identity s_{i} s_{j} fails at level {n}"
                        )));
                    }
                }
            }
        }
        // mixed identities d_i s_j
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let got = self.face(n, i).mul(self.degeneracy(n, j));
                    let want = if i == j || i == j + 1 {
                        IntMatrix::identity(self.ranks[n])
                    } else if i < j {
                        self.degeneracy(n - 1, j - 1).mul(self.face(n - 1, i))
                    } else {
                        self.degeneracy(n - 1, j).mul(self.face(n - 1, i - 1))
                    };
                    if got != want {
                        return Err(Error::invalid(format!(
                            "simplicial identity d_{i} s_{j} fails at level {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn map_levels(&self, phi: &PolyFunctor) -> SimplicialModule {
        SimplicialModule {
            ranks: self.ranks.iter().map(|&r| phi.rank_at(r)).collect(),
            faces: self
                .faces
                .iter()
                .map(|v| v.iter().map(|m| phi.apply_map(m)).collect())
                .collect(),
            degeneracies: self
                .degeneracies
                .iter()
                .map(|v| v.iter().map(|m| phi.apply_map(m)).collect())
                .collect(),
        }
    }
}

/// The cochain complex with components `V^n` and differential `Σ (-1)^i d^i`.
pub fn nonnormalized_cochain(v: &CosimplicialModule) -> Result<CochainComplex> {
    let mut diffs = Vec::new();
    for n in 0..v.truncation() {
        diffs.push(alternating_sum(&v.cofaces[n]));
    }
    CochainComplex::new(v.ranks.clone(), diffs)
}

/// The chain complex with components `V_n` and differential `Σ (-1)^i d_i`.
pub fn nonnormalized_chain(v: &SimplicialModule) -> Result<ChainComplex> {
    let mut diffs = Vec::new();
    for n in 0..v.truncation() {
        diffs.push(alternating_sum(&v.faces[n]));
    }
    ChainComplex::new(v.ranks.clone(), diffs)
}

fn alternating_sum(maps: &[IntMatrix]) -> IntMatrix {
    let mut acc = maps[0].clone();
    for (i, m) in maps.iter().enumerate().skip(1) {
        acc = if i % 2 == 1 { acc.sub(m) } else { acc.add(m) };
    }
    acc
}

/// Conormalization: `N^n = ⋂_{i<n} Ker s^i`, with the restricted alternating
/// coface sum as differential. The kernel lattice is saturated, so expressing
/// the differential in the kernel bases is an exact solve.
pub fn normalized_cochain(v: &CosimplicialModule) -> Result<CochainComplex> {
    let top = v.truncation();
    let mut kernels: Vec<IntMatrix> = Vec::with_capacity(top + 1);
    kernels.push(IntMatrix::identity(v.rank(0)));
    for n in 1..=top {
        let stack: Vec<&IntMatrix> = v.codegeneracies[n - 1].iter().collect();
        kernels.push(kernel_basis(&IntMatrix::vstack(&stack)));
    }
    let ranks: Vec<usize> = kernels.iter().map(|k| k.cols()).collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let d = alternating_sum(&v.cofaces[n]).mul(&kernels[n]);
        let expressed = solve(&kernels[n + 1], &d).ok_or_else(|| {
            Error::internal("conormalized differential escapes the kernel lattice")
        })?;
        diffs.push(expressed);
    }
    CochainComplex::new(ranks, diffs)
}

/// Normalization as a split quotient: `N_n = V_n / (image of degeneracies)`,
/// realized by a section/retraction pair extracted from the Smith form of the
/// stacked degeneracies (whose image is always a direct summand).
pub fn normalized_chain(v: &SimplicialModule) -> Result<ChainComplex> {
    let top = v.truncation();
    let mut rho: Vec<IntMatrix> = Vec::with_capacity(top + 1); // N_n -> V_n
    let mut pi: Vec<IntMatrix> = Vec::with_capacity(top + 1); // V_n -> N_n
    rho.push(IntMatrix::identity(v.rank(0)));
    pi.push(IntMatrix::identity(v.rank(0)));
    for n in 1..=top {
        let stack: Vec<&IntMatrix> = v.degeneracies[n - 1].iter().collect();
        let s = IntMatrix::hstack(&stack);
        let snf = snf_with(&s, SnfOpts { u: true, u_inv: true, ..SnfOpts::NONE });
        if !(0..snf.rank).all(|i| snf.d.at(i, i) == &Int::from(1)) {
            return Err(Error::internal("degeneracy image is not a split summand"));
        }
        let u = snf.u.as_ref().unwrap();
        let u_inv = snf.u_inv.as_ref().unwrap();
        rho.push(u_inv.column_range(snf.rank, v.rank(n)));
        pi.push(u.row_range(snf.rank, v.rank(n)));
    }
    let ranks: Vec<usize> = rho.iter().map(|r| r.cols()).collect();
    let mut diffs = Vec::new();
    for n in 1..=top {
        let boundary = alternating_sum(&v.faces[n - 1]);
        diffs.push(pi[n - 1].mul(&boundary).mul(&rho[n]));
    }
    ChainComplex::new(ranks, diffs)
}

/// The cosimplicial module `DK^•(f)` of a map `f: Z^{u0} -> Z^{u1}` viewed as
/// a two-term cochain complex in degrees 0, 1. Level `n` is
/// `(Z^{u1})^n ⊕ Z^{u0}` with coordinates `(x_0, ..., x_{n-1}, y)`:
/// `d^0` prepends a zero block, `d^i` duplicates `x_{i-1}` for `1 <= i <= n`,
/// `d^{n+1}` sends `y` to `(x, f(y), y)`, and `s^i` deletes `x_i`. These index
/// conventions are the unique ones satisfying the cosimplicial identities,
/// which `validate` confirms mechanically.
pub fn dk_of_map(f: &IntMatrix, trunc: usize) -> CosimplicialModule {
    let u1 = f.rows();
    let u0 = f.cols();
    let ranks: Vec<usize> = (0..=trunc).map(|n| n * u1 + u0).collect();
    let id1 = IntMatrix::identity(u1);
    let id0 = IntMatrix::identity(u0);
    let mut cofaces = Vec::new();
    let mut codegeneracies = Vec::new();
    for n in 0..trunc {
        let mut ds = Vec::new();
        for i in 0..=n + 1 {
            let mut m = IntMatrix::zeros((n + 1) * u1 + u0, n * u1 + u0);
            m.insert_block((n + 1) * u1, n * u1, &id0);
            if i == n + 1 {
                for p in 0..n {
                    m.insert_block(p * u1, p * u1, &id1);
                }
                m.insert_block(n * u1, n * u1, f);
            } else {
                for p in 0..=n {
                    let src = match p.cmp(&i) {
                        std::cmp::Ordering::Less => Some(p),
                        std::cmp::Ordering::Equal => (i > 0).then(|| i - 1),
                        std::cmp::Ordering::Greater => Some(p - 1),
                    };
                    if let Some(src) = src {
                        m.insert_block(p * u1, src * u1, &id1);
                    }
                }
            }
            ds.push(m);
        }
        cofaces.push(ds);
        let mut ss = Vec::new();
        for i in 0..=n {
            let mut m = IntMatrix::zeros(n * u1 + u0, (n + 1) * u1 + u0);
            m.insert_block(n * u1, (n + 1) * u1, &id0);
            for p in 0..n {
                let src = if p < i { p } else { p + 1 };
                m.insert_block(p * u1, src * u1, &id1);
            }
            ss.push(m);
        }
        codegeneracies.push(ss);
    }
    CosimplicialModule { ranks, cofaces, codegeneracies }
}

/// All order-preserving surjections out of `[n]`, as value sequences of
/// length `n+1`, sorted by (target size, lexicographic order).
fn surjections(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            out.push(cur.clone());
            return;
        }
        let v = *cur.last().unwrap();
        cur.push(v);
        rec(n, cur, out);
        cur.pop();
        cur.push(v + 1);
        rec(n, cur, out);
        cur.pop();
    }
    rec(n, &mut cur, &mut out);
    out.sort_by(|a, b| (a.last(), a.as_slice()).cmp(&(b.last(), b.as_slice())));
    out
}

/// The simplicial module `DK_•(U)` of a chain complex:
/// `DK_n = ⊕_{σ: [n]↠[k]} U_k`, with the structure map of `α: [m] -> [n]`
/// acting blockwise — identity where `σ∘α` is onto `[k]`, the boundary
/// `∂_k` where it misses exactly the top element, zero otherwise.
pub fn dk_chain(u: &ChainComplex, trunc: usize) -> SimplicialModule {
    let level: Vec<Vec<Vec<usize>>> = (0..=trunc).map(surjections).collect();
    let offsets: Vec<(Vec<usize>, usize)> = level
        .iter()
        .map(|surjs| {
            let mut offs = Vec::with_capacity(surjs.len());
            let mut total = 0usize;
            for s in surjs {
                offs.push(total);
                total += u.rank(*s.last().unwrap());
            }
            (offs, total)
        })
        .collect();
    let ranks: Vec<usize> = offsets.iter().map(|(_, t)| *t).collect();

    // X(α): DK_n -> DK_m for α: [m] -> [n]
    let induced = |m: usize, n: usize, alpha: &[usize]| -> IntMatrix {
        debug_assert_eq!(alpha.len(), m + 1);
        let dst_index: HashMap<&[usize], usize> =
            level[m].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut out = IntMatrix::zeros(ranks[m], ranks[n]);
        for (si, sigma) in level[n].iter().enumerate() {
            let k = *sigma.last().unwrap();
            let rho: Vec<usize> = alpha.iter().map(|&a| sigma[a]).collect();
            let Some(&ti) = dst_index.get(rho.as_slice()) else {
                continue;
            };
            let l = *rho.last().unwrap();
            let block = if l == k {
                IntMatrix::identity(u.rank(k))
            } else if l + 1 == k {
                u.differential_into(k - 1)
            } else {
                continue;
            };
            out.insert_block(offsets[m].0[ti], offsets[n].0[si], &block);
        }
        out
    };

    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    for n in 0..trunc {
        // d_i = (δ_i)^* with δ_i: [n] -> [n+1] skipping i
        let fs = (0..=n + 1)
            .map(|i| {
                let delta: Vec<usize> = (0..=n).map(|j| if j < i { j } else { j + 1 }).collect();
                induced(n, n + 1, &delta)
            })
            .collect();
        faces.push(fs);
        // s_i = (σ_i)^* with σ_i: [n+1] -> [n] repeating i
        let ss = (0..=n)
            .map(|i| {
                let sig: Vec<usize> = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
                induced(n + 1, n, &sig)
            })
            .collect();
        degeneracies.push(ss);
    }
    SimplicialModule { ranks, faces, degeneracies }
}

/// The relation cosimplicial object of a presentation `p: Z^f ↠ A`, in
/// explicit kernel bases, together with the partial-sum coordinate change θ
/// that conjugates it into `DK^•(φ_p)` where `φ_p: ker(p) ↪ Z^f`.
#[derive(Clone, Debug)]
pub struct RelationCosimplicial {
    cosimplicial: CosimplicialModule,
    comparison: CosimplicialModule,
    kernel_bases: Vec<IntMatrix>,
    theta: Vec<IntMatrix>,
    theta_inv: Vec<IntMatrix>,
}

impl RelationCosimplicial {
    /// The relation object `n ↦ Ker((Z^f)^{n+1} -> A)` in kernel bases.
    pub fn cosimplicial(&self) -> &CosimplicialModule {
        &self.cosimplicial
    }

    /// `DK^•(φ_p)`, the comparison object θ conjugates into.
    pub fn comparison(&self) -> &CosimplicialModule {
        &self.comparison
    }

    /// Basis of `Ker((Z^f)^{n+1} -> A)` as columns in the ambient module.
    pub fn kernel_basis_at(&self, n: usize) -> &IntMatrix {
        &self.kernel_bases[n]
    }

    pub fn theta(&self, n: usize) -> &IntMatrix {
        &self.theta[n]
    }

    pub fn theta_inv(&self, n: usize) -> &IntMatrix {
        &self.theta_inv[n]
    }

    /// Does θ conjugate every structure map into the comparison object?
    pub fn theta_intertwines(&self) -> bool {
        let top = self.cosimplicial.truncation();
        for n in 0..top {
            for i in 0..=n + 1 {
                let lhs = self.theta[n + 1].mul(self.cosimplicial.coface(n, i)).mul(&self.theta_inv[n]);
                if &lhs != self.comparison.coface(n, i) {
                    return false;
                }
            }
            for i in 0..=n {
                let lhs = self.theta[n].mul(self.cosimplicial.codegeneracy(n, i)).mul(&self.theta_inv[n + 1]);
                if &lhs != self.comparison.codegeneracy(n, i) {
                    return false;
                }
            }
        }
        true
    }
}

/// `(Z^f)^{blocks} -> (Z^f)^{blocks+1}`, inserting a zero block at `at`.
fn insert_zero_block(f: usize, blocks: usize, at: usize) -> IntMatrix {
    let id = IntMatrix::identity(f);
    let mut m = IntMatrix::zeros(f * (blocks + 1), f * blocks);
    for p in 0..blocks {
        let dst = if p < at { p } else { p + 1 };
        m.insert_block(dst * f, p * f, &id);
    }
    m
}

/// `(Z^f)^{blocks+1} -> (Z^f)^{blocks}`, adding blocks `at` and `at+1`.
fn fold_adjacent_blocks(f: usize, blocks: usize, at: usize) -> IntMatrix {
    let id = IntMatrix::identity(f);
    let mut m = IntMatrix::zeros(f * blocks, f * (blocks + 1));
    for p in 0..=blocks {
        let dst = if p <= at { p.min(at) } else { p - 1 };
        m.insert_block(dst * f, p * f, &id);
    }
    m
}

/// `(x_0, ..., x_n) ↦ (x_0, x_0+x_1, ..., x_0+...+x_n)` blockwise.
fn partial_sums(f: usize, blocks: usize) -> IntMatrix {
    let id = IntMatrix::identity(f);
    let mut m = IntMatrix::zeros(f * blocks, f * blocks);
    for dst in 0..blocks {
        for src in 0..=dst {
            m.insert_block(dst * f, src * f, &id);
        }
    }
    m
}

/// Builds the relation cosimplicial object of `p` up to `trunc`: level `n` is
/// the kernel of the fold map `(Z^f)^{n+1} -> A`, cofaces insert a zero block,
/// codegeneracies add adjacent blocks, all expressed in fixed kernel bases.
/// θ_n maps a kernel element to its partial sums: the first `n` blocks are
/// free coordinates and the total sum lands in `ker(p)`, expressed in the
/// kernel-embedding basis. Surjectivity of `p` is guaranteed by construction
/// of [`Presentation`].
pub fn relation_cosimplicial(p: &Presentation, trunc: usize) -> Result<RelationCosimplicial> {
    let f = p.source_rank();
    let b = p.kernel_embedding();
    let r = b.cols();
    let kernel_bases: Vec<IntMatrix> = (0..=trunc).map(|n| p.kernel_of_fold(n + 1)).collect();
    for (n, k) in kernel_bases.iter().enumerate() {
        if k.cols() != f * n + r {
            return Err(Error::internal(format!(
                "relation kernel at level {n} has rank {}, expected {}",
                k.cols(),
                f * n + r
            )));
        }
    }
    let ranks: Vec<usize> = kernel_bases.iter().map(|k| k.cols()).collect();

    let express = |basis: &IntMatrix, image: IntMatrix| -> Result<IntMatrix> {
        solve(basis, &image)
            .ok_or_else(|| Error::internal("structure map escapes the kernel lattice"))
    };

    let mut cofaces = Vec::new();
    let mut codegeneracies = Vec::new();
    for n in 0..trunc {
        let mut ds = Vec::new();
        for i in 0..=n + 1 {
            let amb = insert_zero_block(f, n + 1, i);
            ds.push(express(&kernel_bases[n + 1], amb.mul(&kernel_bases[n]))?);
        }
        cofaces.push(ds);
        let mut ss = Vec::new();
        for i in 0..=n {
            let amb = fold_adjacent_blocks(f, n + 1, i);
            ss.push(express(&kernel_bases[n], amb.mul(&kernel_bases[n + 1]))?);
        }
        codegeneracies.push(ss);
    }
    let cosimplicial = CosimplicialModule::new(ranks, cofaces, codegeneracies)?;

    let mut theta = Vec::new();
    let mut theta_inv = Vec::new();
    for n in 0..=trunc {
        let sums = partial_sums(f, n + 1).mul(&kernel_bases[n]);
        // the first n blocks of partial sums are free; the last is the total,
        // which lies in ker(p) and is re-expressed through its basis
        let free = IntMatrix::identity(f * n);
        let target = IntMatrix::block_diag(&[&free, &b]);
        let th = solve(&target, &sums)
            .ok_or_else(|| Error::internal("partial sums escape the kernel of p"))?;
        let ti = inverse(&th)
            .map_err(|_| Error::internal("partial-sum coordinate change is not unimodular"))?;
        theta.push(th);
        theta_inv.push(ti);
    }
    let comparison = dk_of_map(&b, trunc);
    Ok(RelationCosimplicial { cosimplicial, comparison, kernel_bases, theta, theta_inv })
}
