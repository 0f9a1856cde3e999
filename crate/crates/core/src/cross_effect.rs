//! Cross effects `Φ(A_1|...|A_k)` of polynomial functors, realized as direct
//! summands of `Φ(A_1 ⊕ ... ⊕ A_k)` via explicit embedding/projection pairs.
//!
//! Two routes compute the same summand. The fast route picks out the
//! coordinate labels whose multidegree is positive in every block — valid for
//! every functor expressible here, because tensor, symmetric and exterior
//! powers act diagonally on the multidegree decomposition and Kuhn duality
//! transposes that diagonal action. The generic route forms the
//! inclusion-exclusion idempotent `e = Σ_S (-1)^{k-|S|} Φ(diag_S)` and splits
//! its image off by Smith normal form. Tests require the two to produce equal
//! image lattices.

use crate::error::{Error, Result};
use crate::functor::{Label, PolyFunctor};
use crate::snf::{image_basis, kernel_basis, lattice_eq, snf_with, SnfOpts};
use crate::{Int, IntMatrix};
use num_traits::{One, Zero};

/// A direct summand of an ambient free module `Φ(Z^N)`: a section `ρ`
/// (ambient x rank) and retraction `π` (rank x ambient) with `π ρ = 1`.
#[derive(Clone, Debug)]
pub struct CrossEffectSummand {
    ambient_rank: usize,
    rho: IntMatrix,
    pi: IntMatrix,
    labels: Option<Vec<Label>>,
}

impl CrossEffectSummand {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.rho.cols()
    }

    /// Embedding of the summand into the ambient module.
    pub fn rho(&self) -> &IntMatrix {
        &self.rho
    }

    /// Projection of the ambient module onto the summand.
    pub fn pi(&self) -> &IntMatrix {
        &self.pi
    }

    /// When the summand is spanned by coordinate basis vectors, the labels of
    /// those vectors, in ambient basis order. Blocks of induced maps can then
    /// be computed directly by [`PolyFunctor::apply_on`] without forming the
    /// ambient matrix.
    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }
}

/// Letter -> block index for an ambient direct sum with the given block ranks.
fn block_of_letter(parts: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(parts.iter().sum());
    for (b, &n) in parts.iter().enumerate() {
        out.extend(std::iter::repeat(b).take(n));
    }
    out
}

/// The block inclusion `⊕_{i in keep} A_i -> ⊕_i A_i` as a 0/1 matrix.
pub fn block_inclusion(parts: &[usize], keep: &[usize]) -> IntMatrix {
    let n: usize = parts.iter().sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0usize, |acc, &p| {
            let o = *acc;
            *acc += p;
            Some(o)
        })
        .collect();
    let sub: usize = keep.iter().map(|&b| parts[b]).sum();
    let mut m = IntMatrix::zeros(n, sub);
    let mut col = 0;
    for &b in keep {
        for i in 0..parts[b] {
            m.set(offsets[b] + i, col, Int::one());
            col += 1;
        }
    }
    m
}

/// The block projection `⊕_i A_i -> ⊕_{i in keep} A_i`, transpose of the
/// inclusion.
pub fn block_projection(parts: &[usize], keep: &[usize]) -> IntMatrix {
    block_inclusion(parts, keep).transpose()
}

/// The cross effect `Φ(A_1|...|A_k)` with `A_i = Z^{parts[i]}`, as a summand
/// of `Φ(Z^{Σ parts})`, via the multidegree fast path.
pub fn cross_effect(phi: &PolyFunctor, parts: &[usize]) -> Result<CrossEffectSummand> {
    if parts.is_empty() {
        return Err(Error::invalid("cross effect needs at least one block"));
    }
    let n: usize = parts.iter().sum();
    let k = parts.len();
    let block_of = block_of_letter(parts);
    let basis = phi.basis_at(n);
    let mut kept_labels = Vec::new();
    let mut kept_idx = Vec::new();
    let mut touched = vec![false; k];
    for (i, label) in basis.iter().enumerate() {
        touched.iter_mut().for_each(|t| *t = false);
        for &letter in label {
            touched[block_of[letter]] = true;
        }
        if touched.iter().all(|&t| t) {
            kept_idx.push(i);
            kept_labels.push(label.clone());
        }
    }
    let ambient = basis.len();
    let r = kept_idx.len();
    let mut rho = IntMatrix::zeros(ambient, r);
    let mut pi = IntMatrix::zeros(r, ambient);
    for (j, &i) in kept_idx.iter().enumerate() {
        rho.set(i, j, Int::one());
        pi.set(j, i, Int::one());
    }
    Ok(CrossEffectSummand { ambient_rank: ambient, rho, pi, labels: Some(kept_labels) })
}

/// The same summand through the inclusion-exclusion idempotent, splitting its
/// image with Smith normal form. Slower but makes no structural assumption
/// beyond polynomiality; kept as the validation path.
pub fn cross_effect_idempotent(phi: &PolyFunctor, parts: &[usize]) -> Result<CrossEffectSummand> {
    if parts.is_empty() {
        return Err(Error::invalid("cross effect needs at least one block"));
    }
    let n: usize = parts.iter().sum();
    let k = parts.len();
    let block_of = block_of_letter(parts);
    let ambient = phi.rank_at(n);
    let mut e = IntMatrix::zeros(ambient, ambient);
    for mask in 0u32..(1u32 << k) {
        let diag = IntMatrix::from_fn(n, n, |i, j| {
            if i == j && mask & (1 << block_of[i]) != 0 {
                Int::one()
            } else {
                Int::zero()
            }
        });
        let term = phi.apply_map(&diag);
        let sign_negative = (k - mask.count_ones() as usize) % 2 == 1;
        e = if sign_negative { e.sub(&term) } else { e.add(&term) };
    }
    debug_assert_eq!(e.mul(&e), e, "inclusion-exclusion did not produce an idempotent");

    let snf = snf_with(&e, SnfOpts { u: true, u_inv: true, ..SnfOpts::NONE });
    if !(0..snf.rank).all(|i| snf.d.at(i, i).is_one()) {
        return Err(Error::internal("cross-effect idempotent image is not a direct summand"));
    }
    let u = snf.u.as_ref().unwrap();
    let u_inv = snf.u_inv.as_ref().unwrap();
    // image of e is spanned by the first r columns of u^{-1}; the projection
    // reads coordinates through u e, whose rows past r vanish
    let rho = u_inv.column_range(0, snf.rank);
    let pi = u.mul(&e).row_range(0, snf.rank);
    debug_assert_eq!(pi.mul(&rho), IntMatrix::identity(snf.rank));
    debug_assert_eq!(rho.mul(&pi), e);
    Ok(CrossEffectSummand { ambient_rank: ambient, rho, pi, labels: None })
}

/// Checks `Φ(⊕ A_i) = ⊕_{∅≠T} Φ(A_{t_1}|...|A_{t_s})`: the sub-tuple ranks
/// must sum to the ambient rank and the concatenated embeddings must form a
/// unimodular matrix.
pub fn decomposition_check(phi: &PolyFunctor, parts: &[usize]) -> Result<bool> {
    if parts.is_empty() {
        return Err(Error::invalid("cross effect needs at least one block"));
    }
    let n: usize = parts.iter().sum();
    let k = parts.len();
    let ambient = phi.rank_at(n);
    let mut total = 0usize;
    let mut embedded: Vec<IntMatrix> = Vec::new();
    for mask in 1u32..(1u32 << k) {
        let keep: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).collect();
        let sub_parts: Vec<usize> = keep.iter().map(|&b| parts[b]).collect();
        let summand = cross_effect(phi, &sub_parts)?;
        total += summand.rank();
        if summand.rank() > 0 {
            let em = phi.apply_map(&block_inclusion(parts, &keep));
            embedded.push(em.mul(summand.rho()));
        }
    }
    if total != ambient {
        return Ok(false);
    }
    let refs: Vec<&IntMatrix> = embedded.iter().collect();
    let joined = if refs.is_empty() {
        IntMatrix::zeros(ambient, 0)
    } else {
        IntMatrix::hstack(&refs)
    };
    Ok(ambient == 0 || crate::snf::is_unimodular(&joined))
}

/// `⋂_{j=1}^{n-1} Ker Φ(pr^j) = Φ(A_1|...|A_{n-1}) ⊕ Φ(A_1|...|A_n)`:
/// computes the left side as a kernel lattice, the right side as a summand,
/// verifies they agree, and returns the summand.
pub fn kernel_intersection(phi: &PolyFunctor, parts: &[usize]) -> Result<CrossEffectSummand> {
    let k = parts.len();
    if k < 2 {
        return Err(Error::invalid("kernel intersection needs at least two blocks"));
    }
    // left side: stack the induced projections killing slot j, j = 1..n-1
    let mut stacked: Vec<IntMatrix> = Vec::new();
    for j in 0..k - 1 {
        let keep: Vec<usize> = (0..k).filter(|&b| b != j).collect();
        stacked.push(phi.apply_map(&block_projection(parts, &keep)));
    }
    let refs: Vec<&IntMatrix> = stacked.iter().collect();
    let kernel = kernel_basis(&IntMatrix::vstack(&refs));

    // right side: the two cross effects, the first embedded along em^n
    let head = cross_effect(phi, &parts[..k - 1])?;
    let full = cross_effect(phi, parts)?;
    let keep_head: Vec<usize> = (0..k - 1).collect();
    let em = phi.apply_map(&block_inclusion(parts, &keep_head));
    let pr = phi.apply_map(&block_projection(parts, &keep_head));
    let head_rho = em.mul(head.rho());
    let head_pi = head.pi().mul(&pr);
    let rho = IntMatrix::hstack(&[&head_rho, full.rho()]);
    let pi = IntMatrix::vstack(&[&head_pi, full.pi()]);
    debug_assert_eq!(pi.mul(&rho), IntMatrix::identity(head.rank() + full.rank()));

    if !lattice_eq(&kernel, &rho) {
        return Err(Error::internal(
            "kernel intersection does not match the two-summand decomposition",
        ));
    }
    let labels = match (head.labels(), full.labels()) {
        (Some(a), Some(b)) => {
            let mut l: Vec<Label> = a.to_vec();
            l.extend_from_slice(b);
            Some(l)
        }
        _ => None,
    };
    Ok(CrossEffectSummand { ambient_rank: full.ambient_rank(), rho, pi, labels })
}

/// Lattice spanned by all cross-effect summands over subsets avoiding `slot`.
/// Equals `Im Φ(em^slot)` — the image identity of the projection lemma.
pub fn span_avoiding_slot(phi: &PolyFunctor, parts: &[usize], slot: usize) -> Result<IntMatrix> {
    let k = parts.len();
    let mut cols: Vec<IntMatrix> = Vec::new();
    for mask in 1u32..(1u32 << k) {
        if mask & (1 << slot) != 0 {
            continue;
        }
        let keep: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).collect();
        let sub_parts: Vec<usize> = keep.iter().map(|&b| parts[b]).collect();
        let summand = cross_effect(phi, &sub_parts)?;
        if summand.rank() > 0 {
            let em = phi.apply_map(&block_inclusion(parts, &keep));
            cols.push(em.mul(summand.rho()));
        }
    }
    let n: usize = parts.iter().sum();
    let refs: Vec<&IntMatrix> = cols.iter().collect();
    let joined = if refs.is_empty() {
        IntMatrix::zeros(phi.rank_at(n), 0)
    } else {
        IntMatrix::hstack(&refs)
    };
    Ok(image_basis(&joined))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{divided_power, ext_power, sym_power, tensor_power};

    #[test]
    fn sym_cross_effect_ranks() {
        assert_eq!(cross_effect(&sym_power(2), &[1, 1]).unwrap().rank(), 1);
        assert_eq!(cross_effect(&sym_power(3), &[1, 1]).unwrap().rank(), 2);
        assert_eq!(cross_effect(&sym_power(2), &[2]).unwrap().rank(), 3);
    }

    #[test]
    fn zero_block_kills_the_cross_effect() {
        for phi in [tensor_power(2), sym_power(2), ext_power(2), divided_power(2)] {
            assert_eq!(cross_effect(&phi, &[1, 0, 1]).unwrap().rank(), 0);
            assert_eq!(cross_effect(&phi, &[2, 0]).unwrap().rank(), 0);
        }
    }

    #[test]
    fn degree_bounds_the_cross_effects() {
        // the (d+1)-st cross effect of a degree-d functor vanishes
        for d in 1..4 {
            let parts = vec![1usize; d + 1];
            for phi in [tensor_power(d), sym_power(d), ext_power(d), divided_power(d)] {
                assert_eq!(cross_effect(&phi, &parts).unwrap().rank(), 0, "{phi} at {parts:?}");
            }
        }
    }

    #[test]
    fn fast_and_idempotent_paths_agree() {
        for d in 1..4 {
            for parts in [vec![1, 1], vec![2, 1], vec![1, 1, 1], vec![2, 2]] {
                for phi in [
                    tensor_power(d),
                    sym_power(d),
                    ext_power(d),
                    divided_power(d),
                    ext_power(d).kuhn_dual(),
                ] {
                    let fast = cross_effect(&phi, &parts).unwrap();
                    let idem = cross_effect_idempotent(&phi, &parts).unwrap();
                    assert_eq!(fast.rank(), idem.rank(), "{phi} at {parts:?}");
                    assert!(
                        lattice_eq(fast.rho(), idem.rho()),
                        "image lattices differ for {phi} at {parts:?}"
                    );
                    // summand contracts
                    for s in [&fast, &idem] {
                        assert_eq!(s.pi().mul(s.rho()), IntMatrix::identity(s.rank()));
                        let e = s.rho().mul(s.pi());
                        assert_eq!(e.mul(&e), e);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_sums_to_ambient() {
        assert!(decomposition_check(&sym_power(2), &[1, 1]).unwrap());
        assert!(decomposition_check(&tensor_power(2), &[1, 1, 1]).unwrap());
        assert!(decomposition_check(&ext_power(2), &[2, 1]).unwrap());
        assert!(decomposition_check(&divided_power(3), &[1, 2]).unwrap());
        // single block: the only cross effect is the reduced functor itself
        assert!(decomposition_check(&sym_power(3), &[2]).unwrap());
    }

    #[test]
    fn tensor_square_rank_budget() {
        // over [1,1,1]: three singletons (1 each), three pairs (2 each), one
        // triple (0) — 3*1 + 3*2 + 0 = 9 = rank of (Z^3)⊗(Z^3)
        let phi = tensor_power(2);
        let mut total = 0;
        for parts in [&[1][..], &[1, 1][..], &[1, 1, 1][..]] {
            let r = cross_effect(&phi, parts).unwrap().rank();
            match parts.len() {
                1 => {
                    assert_eq!(r, 1);
                    total += 3 * r;
                }
                2 => {
                    assert_eq!(r, 2);
                    total += 3 * r;
                }
                _ => {
                    assert_eq!(r, 0);
                    total += r;
                }
            }
        }
        assert_eq!(total, 9);
    }

    #[test]
    fn kernel_intersection_examples() {
        let s = kernel_intersection(&sym_power(2), &[1, 1]).unwrap();
        assert_eq!(s.rank(), 2);
        let s = kernel_intersection(&ext_power(2), &[1, 1]).unwrap();
        assert_eq!(s.rank(), 1);
        // additive functor: second cross effect vanishes, kernel is Φ(A_1)
        let s = kernel_intersection(&tensor_power(1), &[1, 1]).unwrap();
        assert_eq!(s.rank(), 1);
        // S³(A|B) has rank 2 (x²y, xy²), S³(A|B|C) has rank 1 (xyz)
        let s = kernel_intersection(&sym_power(3), &[1, 1, 1]).unwrap();
        assert_eq!(s.rank(), 2 + 1);
    }

    #[test]
    fn image_of_block_inclusion_matches_summand_span() {
        for phi in [sym_power(2), ext_power(2), tensor_power(2)] {
            let parts = [1usize, 1];
            for slot in 0..2 {
                let keep: Vec<usize> = (0..2).filter(|&b| b != slot).collect();
                let em = phi.apply_map(&block_inclusion(&parts, &keep));
                let expected = span_avoiding_slot(&phi, &parts, slot).unwrap();
                assert!(lattice_eq(&image_basis(&em), &expected), "{phi} slot {slot}");
            }
        }
    }

    #[test]
    fn block_matrices() {
        let em = block_inclusion(&[2, 1], &[1]);
        assert_eq!(em, IntMatrix::from_i64_rows(&[&[0], &[0], &[1]]));
        let pr = block_projection(&[2, 1], &[0]);
        assert_eq!(pr, IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]));
        assert!(cross_effect(&sym_power(2), &[]).is_err());
    }
}
