//! Higher limits of a polynomial functor composed with the relation functor
//! over the category of free presentations of a group.
//!
//! For a surjection `p: Z^f ↠ A` with kernel embedding `φ: R ↪ Z^f`, the
//! functor sending a presentation to `Φ(R)` has derived limits computed by an
//! explicit finite cochain complex: the mapping cone of a comparison map
//! between two cross-effect complexes, shifted down by one. When `A` is free
//! the kernel of its identity presentation vanishes and the cone degenerates
//! to the shifted cross-effect complex of `id_A`. Because the components are
//! cross effects of a degree-`d` functor, everything vanishes strictly above
//! degree `d+1`, so all cohomology here is honest, not a truncation artifact.

use crate::complex::CochainComplex;
use crate::cross_effect::{cross_effect, CrossEffectSummand};
use crate::error::{Error, Result};
use crate::functor::PolyFunctor;
use crate::group::{FinAbGroup, Presentation};
use crate::IntMatrix;

/// `Δ^{i,n}_φ: A^{⊕n} ⊕ B -> A^{⊕(n+1)} ⊕ B` for `φ: B -> A` and
/// `0 <= i <= n`: duplicates the `i`-th `A`-block when `i < n`, and sends
/// `(a, b)` to `(a, φ(b), b)` when `i = n`.
pub fn delta(i: usize, n: usize, phi: &IntMatrix) -> IntMatrix {
    assert!(i <= n, "delta index {i} out of range at level {n}");
    let a = phi.rows();
    let b = phi.cols();
    let id_a = IntMatrix::identity(a);
    let mut m = IntMatrix::zeros((n + 1) * a + b, n * a + b);
    m.insert_block((n + 1) * a, n * a, &IntMatrix::identity(b));
    if i == n {
        for q in 0..n {
            m.insert_block(q * a, q * a, &id_a);
        }
        m.insert_block(n * a, n * a, phi);
    } else {
        for q in 0..=n {
            let src = if q <= i { q } else { q - 1 };
            m.insert_block(q * a, src * a, &id_a);
        }
    }
    m
}

/// `A^{⊕n} -> A^{⊕(n+1)}` duplicating block `i` (`0 <= i < n`).
pub fn duplicate_block(i: usize, n: usize, a: usize) -> IntMatrix {
    assert!(i < n, "cannot duplicate block {i} among {n}");
    let id = IntMatrix::identity(a);
    let mut m = IntMatrix::zeros((n + 1) * a, n * a);
    for q in 0..=n {
        let src = if q <= i { q } else { q - 1 };
        m.insert_block(q * a, src * a, &id);
    }
    m
}

/// `A^{⊕n} -> A^{⊕(n+1)}` appending a zero block.
pub fn append_zero_block(n: usize, a: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros((n + 1) * a, n * a);
    m.insert_block(0, 0, &IntMatrix::identity(n * a));
    m
}

/// `pr: A^{⊕n} ⊕ B -> A^{⊕n}`, forgetting the `B` coordinate.
pub fn pr_b(n: usize, a: usize, b: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n * a, n * a + b);
    m.insert_block(0, 0, &IntMatrix::identity(n * a));
    m
}

/// `em: A^{⊕n} -> A^{⊕n} ⊕ B`, including with `B` coordinate zero.
pub fn em_b(n: usize, a: usize, b: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n * a + b, n * a);
    m.insert_block(0, 0, &IntMatrix::identity(n * a));
    m
}

/// `Φ_[n|1](A, B)`: the cross-effect summand of `Φ(A^{⊕n} ⊕ B)` jointly
/// positive in all `n+1` slots.
pub fn mixed_cross_effect(
    phi: &PolyFunctor,
    a: usize,
    n: usize,
    b: usize,
) -> Result<CrossEffectSummand> {
    let mut parts = vec![a; n];
    parts.push(b);
    cross_effect(phi, &parts)
}

fn summand_labels(s: &CrossEffectSummand) -> Result<&[crate::functor::Label]> {
    s.labels()
        .ok_or_else(|| Error::internal("cross-effect summand carries no label basis"))
}

fn h_between(
    phi: &PolyFunctor,
    i: usize,
    n: usize,
    f: &IntMatrix,
    src: &CrossEffectSummand,
    dst: &CrossEffectSummand,
) -> Result<IntMatrix> {
    Ok(phi.apply_on(&delta(i, n, f), summand_labels(dst)?, summand_labels(src)?))
}

/// `h^i_φ: Φ_[n|1](A,B) -> Φ_[n+1|1](A,B)`, the matrix of `Φ(Δ^{i,n}_φ)`
/// compressed onto the fixed cross-effect summand bases.
pub fn h_map(phi: &PolyFunctor, i: usize, n: usize, f: &IntMatrix) -> Result<IntMatrix> {
    let src = mixed_cross_effect(phi, f.rows(), n, f.cols())?;
    let dst = mixed_cross_effect(phi, f.rows(), n + 1, f.cols())?;
    h_between(phi, i, n, f, &src, &dst)
}

fn complex_from_summands(
    phi: &PolyFunctor,
    f: &IntMatrix,
    summands: &[CrossEffectSummand],
) -> Result<CochainComplex> {
    let ranks: Vec<usize> = summands.iter().map(|s| s.rank()).collect();
    let mut diffs = Vec::new();
    for n in 0..summands.len() - 1 {
        let mut d = IntMatrix::zeros(ranks[n + 1], ranks[n]);
        for i in 0..=n {
            let h = h_between(phi, i, n, f, &summands[n], &summands[n + 1])?;
            d = if i % 2 == 0 { d.add(&h) } else { d.sub(&h) };
        }
        diffs.push(d);
    }
    // the constructor re-checks ∂∘∂ = 0, which is exactly the sign-convention
    // self-check for the alternating sum of h-maps
    CochainComplex::new(ranks, diffs)
}

/// The cross-effect cochain complex `C_Φ(φ)` of `φ: B -> A`:
/// degree-`n` component `Φ_[n|1](A, B)`, differential `Σ_{i=0}^n (-1)^i h^i_φ`.
/// Components vanish in degrees `>= deg Φ`, so any truncation at least that
/// deep captures the whole complex.
pub fn c_phi(phi: &PolyFunctor, f: &IntMatrix, trunc: usize) -> Result<CochainComplex> {
    let summands = (0..=trunc)
        .map(|n| mixed_cross_effect(phi, f.rows(), n, f.cols()))
        .collect::<Result<Vec<_>>>()?;
    complex_from_summands(phi, f, &summands)
}

/// Which construction produced a [`LimitComplex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `A` free: the shifted complex `C_Φ(id_A)[-1]`.
    Free,
    /// Arbitrary presentation: mapping cone of `C_Φ(φ_p) -> C_Φ(id_F)`, shifted.
    Cone,
}

impl std::fmt::Display for Route {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Free => write!(out, "free"),
            Route::Cone => write!(out, "cone"),
        }
    }
}

/// A cochain complex computing `lim^i Φ R_A`, remembering how it was built.
#[derive(Clone, Debug)]
pub struct LimitComplex {
    complex: CochainComplex,
    route: Route,
    presentation: Option<Presentation>,
    degree: usize,
}

impl LimitComplex {
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// `lim^i Φ R_A`.
    pub fn limit(&self, i: usize) -> FinAbGroup {
        self.complex.cohomology(i)
    }

    /// All limits for `0 <= i <= deg Φ + 1`; the final entry witnesses the
    /// vanishing above the functor degree.
    pub fn limits(&self) -> Vec<FinAbGroup> {
        (0..=self.degree + 1).map(|i| self.limit(i)).collect()
    }
}

/// `lim^i Φ R_A` for free `A = Z^rank`: the identity presentation has zero
/// kernel, so the limits are the cohomology of `C_Φ(id_A)` shifted up one
/// degree, with `lim^0 = 0` structurally.
pub fn limit_complex_free(phi: &PolyFunctor, rank: usize) -> Result<LimitComplex> {
    let trunc = phi.degree() + crate::truncation_slack();
    let c = c_phi(phi, &IntMatrix::identity(rank), trunc)?;
    let mut ranks = vec![0];
    ranks.extend_from_slice(c.ranks());
    let mut diffs = vec![IntMatrix::zeros(c.rank(0), 0)];
    for n in 0..c.top_degree() {
        diffs.push(c.differential_out_of(n));
    }
    Ok(LimitComplex {
        complex: CochainComplex::new(ranks, diffs)?,
        route: Route::Free,
        presentation: None,
        degree: phi.degree(),
    })
}

/// `lim^i Φ R_A` over an arbitrary presentation `p: Z^f ↠ A`: the mapping
/// cone of the comparison `C_Φ(φ_p) -> C_Φ(id_F)` induced by `1 ⊕ φ_p`,
/// shifted so that degree `n` is `Φ_[n|1](F,R) ⊕ Φ_[n](F)`.
pub fn limit_complex_via_cone(phi: &PolyFunctor, p: &Presentation) -> Result<LimitComplex> {
    let deg = phi.degree();
    let trunc = deg + 1 + crate::truncation_slack();
    let f = p.source_rank();
    let emb = p.kernel_embedding();
    let r = emb.cols();
    let id_f = IntMatrix::identity(f);

    let xs = (0..=trunc)
        .map(|n| mixed_cross_effect(phi, f, n, r))
        .collect::<Result<Vec<_>>>()?;
    let ys = (0..=trunc)
        .map(|n| mixed_cross_effect(phi, f, n, f))
        .collect::<Result<Vec<_>>>()?;
    let x = complex_from_summands(phi, &emb, &xs)?;
    let y = complex_from_summands(phi, &id_f, &ys)?;

    // degree n of the shifted cone is X^n ⊕ Y^{n-1}
    let mut ranks = vec![x.rank(0)];
    for n in 1..=trunc {
        ranks.push(x.rank(n) + y.rank(n - 1));
    }
    let mut diffs = Vec::new();
    for n in 0..trunc {
        let mut d = IntMatrix::zeros(ranks[n + 1], ranks[n]);
        d.insert_block(0, 0, &x.differential_out_of(n).neg());
        // comparison in degree n: Φ of the blockwise map 1_{F^n} ⊕ φ_p
        let compare = IntMatrix::block_diag(&[&IntMatrix::identity(n * f), &emb]);
        let g = phi.apply_on(&compare, summand_labels(&ys[n])?, summand_labels(&xs[n])?);
        d.insert_block(x.rank(n + 1), 0, &g);
        if n >= 1 {
            d.insert_block(x.rank(n + 1), x.rank(n), &y.differential_out_of(n - 1));
        }
        diffs.push(d);
    }
    Ok(LimitComplex {
        complex: CochainComplex::new(ranks, diffs)?,
        route: Route::Cone,
        presentation: Some(p.clone()),
        degree: deg,
    })
}

/// Convenience wrapper returning the groups `lim^i Φ R_{Z^rank}`, `i` from 0
/// to `deg Φ + 1`.
pub fn limits_free(phi: &PolyFunctor, rank: usize) -> Result<Vec<FinAbGroup>> {
    Ok(limit_complex_free(phi, rank)?.limits())
}

/// Convenience wrapper returning `lim^i Φ R_A` over the given presentation.
pub fn limits_via_cone(phi: &PolyFunctor, p: &Presentation) -> Result<Vec<FinAbGroup>> {
    Ok(limit_complex_via_cone(phi, p)?.limits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{antisym_power, divided_power, ext_power, sym_power, tensor_power};
    use crate::group::{parse_group, FinAbGroup, PresentedGroup};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn g(s: &str) -> FinAbGroup {
        parse_group(s).unwrap()
    }

    #[test]
    fn delta_at_top_index_with_zero_map_inserts_zero_block() {
        // Δ^{n,n}_0 (a, b) = (a, 0, b)
        let phi = IntMatrix::zeros(1, 1);
        let d = delta(1, 1, &phi);
        assert_eq!(d, m(&[&[1, 0], &[0, 0], &[0, 1]]));
    }

    #[test]
    fn delta_duplicates_interior_blocks() {
        let phi = m(&[&[3]]);
        // Δ^{0,1}: (a, b) ↦ (a, a, b)
        assert_eq!(delta(0, 1, &phi), m(&[&[1, 0], &[1, 0], &[0, 1]]));
        // Δ^{1,1}: (a, b) ↦ (a, 3b, b)
        assert_eq!(delta(1, 1, &phi), m(&[&[1, 0], &[0, 3], &[0, 1]]));
    }

    #[test]
    fn projection_after_top_delta_is_one_plus_phi() {
        let phi = m(&[&[2, 1], &[0, 5]]);
        for n in 0..=3 {
            let lhs = pr_b(n + 1, 2, 2).mul(&delta(n, n, &phi));
            let rhs = IntMatrix::block_diag(&[&IntMatrix::identity(2 * n), &phi]);
            assert_eq!(lhs, rhs, "level {n}");
        }
    }

    #[test]
    fn delta_satisfies_the_cosimplicial_equation() {
        let phi = m(&[&[2, 1], &[1, 1], &[0, 3]]);
        for n in 0..=3 {
            for j in 1..=n + 1 {
                for i in 0..j {
                    let lhs = delta(j, n + 1, &phi).mul(&delta(i, n, &phi));
                    let rhs = delta(i, n + 1, &phi).mul(&delta(j - 1, n, &phi));
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn h_maps_inherit_the_cosimplicial_equation() {
        let phi = m(&[&[2], &[1]]);
        let s2 = sym_power(2);
        for n in 0..=2 {
            for j in 1..=n + 1 {
                for i in 0..j {
                    let lhs = h_map(&s2, j, n + 1, &phi)
                        .unwrap()
                        .mul(&h_map(&s2, i, n, &phi).unwrap());
                    let rhs = h_map(&s2, i, n + 1, &phi)
                        .unwrap()
                        .mul(&h_map(&s2, j - 1, n, &phi).unwrap());
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn h_maps_double_the_duplicated_slot_for_symmetric_powers() {
        // S³ over φ = id_Z: Φ_[1|1] has basis {a²b, ab²}, Φ_[2|1] has {a₀a₁b};
        // duplicating the a-slot doubles a²b, substituting b doubles ab²
        let id = IntMatrix::identity(1);
        let s3 = sym_power(3);
        assert_eq!(h_map(&s3, 0, 1, &id).unwrap(), m(&[&[2, 0]]));
        assert_eq!(h_map(&s3, 1, 1, &id).unwrap(), m(&[&[0, 2]]));
    }

    #[test]
    fn cross_effect_complex_of_sym2_over_z() {
        let c = c_phi(&sym_power(2), &IntMatrix::identity(1), 2).unwrap();
        assert_eq!(c.ranks(), &[1, 1, 0]);
        assert_eq!(c.differential_out_of(0), m(&[&[2]]));
    }

    #[test]
    fn cross_effect_complex_of_zero_source_vanishes_in_degree_zero() {
        // φ: 0 -> A gives Φ(B) = Φ(0) = 0 in degree 0
        let c = c_phi(&sym_power(2), &IntMatrix::zeros(2, 0), 2).unwrap();
        assert_eq!(c.rank(0), 0);
    }

    #[test]
    fn free_route_symmetric_squares() {
        // lim^i S² R_Z = [0, 0, Z/2]
        let l = limit_complex_free(&sym_power(2), 1).unwrap();
        assert_eq!(l.route(), Route::Free);
        assert_eq!(l.limits(), vec![g("0"), g("0"), g("Z/2"), g("0")]);
    }

    #[test]
    fn free_route_symmetric_cubes() {
        // lim^i S³ R_Z = [0, 0, Z/3, Z/2, 0]
        let l = limits_free(&sym_power(3), 1).unwrap();
        let want = vec![g("0"), g("0"), g("Z/3"), g("Z/2"), g("0")];
        assert_eq!(l, want);
    }

    #[test]
    fn free_route_tensor_and_exterior() {
        // lim² ⊗² R_Z = Z
        assert_eq!(limits_free(&tensor_power(2), 1).unwrap(), vec![g("0"), g("0"), g("Z"), g("0")]);
        // lim² Λ² R_{Z²} = S²(Z²) = Z³
        assert_eq!(
            limits_free(&ext_power(2), 2).unwrap(),
            vec![g("0"), g("0"), g("Z^3"), g("0")]
        );
    }

    #[test]
    fn top_limit_of_symmetric_powers_is_the_antisymmetric_power() {
        for d in [2, 3] {
            for r in [1, 2] {
                let lims = limits_free(&sym_power(d), r).unwrap();
                let expect = antisym_power(d, &g(&format!("Z^{r}")));
                assert_eq!(lims[d], expect, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn cone_route_on_identity_presentation_matches_free_route() {
        for phi in [sym_power(2), ext_power(2), divided_power(2), tensor_power(2)] {
            for r in [1, 2] {
                let p = Presentation::canonical(&g(&format!("Z^{r}")));
                let cone = limits_via_cone(&phi, &p).unwrap();
                let free = limits_free(&phi, r).unwrap();
                assert_eq!(cone, free, "functor {phi} rank {r}");
            }
        }
    }

    #[test]
    fn cone_route_on_torsion_group() {
        // lim^i S² R_{Z/4} over the canonical presentation Z ↠ Z/4
        let p = Presentation::canonical(&g("Z/4"));
        let l = limit_complex_via_cone(&sym_power(2), &p).unwrap();
        assert_eq!(l.route(), Route::Cone);
        assert_eq!(l.limits(), vec![g("0"), g("Z/8"), g("Z/2"), g("0")]);
    }

    #[test]
    fn cone_rank_bookkeeping() {
        // degree-n rank is rank Φ_[n|1](F,R) + rank Φ_[n](F)
        let p = Presentation::canonical(&g("Z/4"));
        let phi = sym_power(2);
        let l = limit_complex_via_cone(&phi, &p).unwrap();
        for n in 0..=phi.degree() {
            let x = mixed_cross_effect(&phi, 1, n, 1).unwrap().rank();
            let y = if n >= 1 { mixed_cross_effect(&phi, 1, n - 1, 1).unwrap().rank() } else { 0 };
            assert_eq!(l.complex().rank(n), x + y, "degree {n}");
        }
    }

    #[test]
    fn limits_are_independent_of_the_presentation() {
        // Z presented by Z² and Z³
        let target = PresentedGroup::new(1, IntMatrix::zeros(1, 0)).unwrap();
        let p2 = Presentation::new(target.clone(), m(&[&[1, 1]])).unwrap();
        let p3 = Presentation::new(target, m(&[&[1, 1, 1]])).unwrap();
        for phi in [sym_power(2), sym_power(3)] {
            let a = limits_via_cone(&phi, &p2).unwrap();
            let b = limits_via_cone(&phi, &p3).unwrap();
            let free = limits_free(&phi, 1).unwrap();
            assert_eq!(a, b, "functor {phi}");
            assert_eq!(a, free, "functor {phi}");
        }
    }

    #[test]
    fn identity_functor_limit_recovers_the_group() {
        // lim^1 of the relation functor itself is A
        for s in ["Z/4", "Z + Z/2", "Z/6"] {
            let p = Presentation::canonical(&g(s));
            let lims = limits_via_cone(&tensor_power(1), &p).unwrap();
            assert_eq!(lims, vec![g("0"), g(s), g("0")], "group {s}");
        }
    }

    #[test]
    fn limits_vanish_above_the_functor_degree() {
        let p = Presentation::canonical(&g("Z + Z/2"));
        for phi in [sym_power(2), ext_power(2), divided_power(3)] {
            let l = limit_complex_via_cone(&phi, &p).unwrap();
            assert!(l.limit(phi.degree() + 1).is_trivial(), "functor {phi}");
            // nothing lives above deg+1 at all
            assert_eq!(l.complex().rank(phi.degree() + 1), 0, "functor {phi}");
        }
    }
}
