//! Derived functors of polynomial functors in the sense of Dold and Puppe,
//! the duality-based predictions for higher limits, and the assembly of the
//! homology of the Eilenberg-MacLane space K(Z,3) from symmetric-power limits.

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::functor::{sym_power, PolyFunctor};
use crate::group::FinAbGroup;
use crate::limits::limits_free;
use crate::simplicial::{dk_chain, normalized_chain};
use crate::IntMatrix;
use std::collections::HashMap;

/// The groups `L_iΦ(A, q)` for `0 <= i <= i_max`, with the inputs remembered.
#[derive(Clone, Debug)]
pub struct DerivedFunctorResult {
    functor: PolyFunctor,
    group: FinAbGroup,
    q: usize,
    values: Vec<FinAbGroup>,
}

impl DerivedFunctorResult {
    pub fn functor(&self) -> &PolyFunctor {
        &self.functor
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `L_iΦ(A, q)`, indexed from 0.
    pub fn values(&self) -> &[FinAbGroup] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &FinAbGroup {
        &self.values[i]
    }
}

/// `L_iΦ(A, q)` for `q ∈ {0, 1}`: a free resolution of `A` is placed in
/// degrees `q, q+1`, turned into a simplicial module by the inverse Dold-Kan
/// construction, `Φ` is applied levelwise, and the homotopy is read off the
/// normalized chain complex. For free `A` and `q = 1` the model has level `n`
/// equal to `A^{⊕n}`.
pub fn derived(
    phi: &PolyFunctor,
    a: &FinAbGroup,
    q: usize,
    i_max: usize,
) -> Result<DerivedFunctorResult> {
    derived_with_slack(phi, a, q, i_max, 0)
}

/// [`derived`] with `extra` additional simplicial levels on top of the
/// minimum (`i_max + 1`) and the environment slack — exposed so truncation
/// robustness is testable.
pub fn derived_with_slack(
    phi: &PolyFunctor,
    a: &FinAbGroup,
    q: usize,
    i_max: usize,
    extra: usize,
) -> Result<DerivedFunctorResult> {
    if q > 1 {
        return Err(Error::invalid(format!("level q = {q} is not supported; use 0 or 1")));
    }
    let free = a.free_rank();
    let tors = a.torsion().len();
    let mut boundary = IntMatrix::zeros(free + tors, tors);
    for (j, t) in a.torsion().iter().enumerate() {
        boundary.set(free + j, j, t.clone());
    }
    let resolution = if q == 0 {
        ChainComplex::new(vec![free + tors, tors], vec![boundary])?
    } else {
        ChainComplex::new(
            vec![0, free + tors, tors],
            vec![IntMatrix::zeros(0, free + tors), boundary],
        )?
    };
    let trunc = i_max + 1 + extra + crate::truncation_slack();
    let model = dk_chain(&resolution, trunc).map_levels(phi);
    let normalized = normalized_chain(&model)?;
    let values = (0..=i_max).map(|i| normalized.homology(i)).collect();
    Ok(DerivedFunctorResult { functor: phi.clone(), group: a.clone(), q, values })
}

/// Assembles one predicted limit from the derived functors of the Kuhn dual:
/// the extension term contributes the torsion dual of `L_{i-1}` and the hom
/// term the free dual of `L_i`.
fn assemble(l: &DerivedFunctorResult, i: usize) -> FinAbGroup {
    let ext = if i >= 1 { l.value(i - 1).ext_dual() } else { FinAbGroup::trivial() };
    let hom = if i < l.values().len() {
        l.value(i).hom_dual()
    } else {
        // derived functors of a degree-d functor on a one-dimensional model
        // vanish above d, so entries past the computed range contribute 0
        FinAbGroup::trivial()
    };
    ext.direct_sum(&hom)
}

/// Predicted `lim^i Φ R_A` for free `A = Z^rank`, `0 <= i <= deg Φ + 1`,
/// assembled from `L_iΦ^#(A^∨, 1)`: the predicted group is the extension of
/// the free dual of `L_i` by the torsion dual of `L_{i-1}`, which splits as
/// an abstract group because the free dual is free. This is an isomorphism-
/// type prediction only; no naturality is claimed.
pub fn duality_predicted_limits(phi: &PolyFunctor, rank: usize) -> Result<Vec<FinAbGroup>> {
    let deg = phi.degree();
    let l = derived(&phi.kuhn_dual(), &FinAbGroup::free(rank), 1, deg)?;
    Ok((0..=deg + 1).map(|i| assemble(&l, i)).collect())
}

/// Predicted `lim^i Φ R_A` for finite `A`, assembled from `L_iΦ^#(A^⋄, 0)`
/// the same way; the hom term always vanishes here because the derived
/// functors of a finite group at level 0 are finite.
pub fn torsion_predicted_limits(phi: &PolyFunctor, a: &FinAbGroup) -> Result<Vec<FinAbGroup>> {
    if a.free_rank() > 0 {
        return Err(Error::invalid("the torsion prediction needs a finite group"));
    }
    let deg = phi.degree();
    let l = derived(&phi.kuhn_dual(), &a.ext_dual(), 0, deg)?;
    Ok((0..=deg + 1).map(|i| assemble(&l, i)).collect())
}

/// One homology group of K(Z,3) with the symmetric-power limits that build it.
#[derive(Clone, Debug)]
pub struct K3Row {
    pub n: usize,
    pub homology: FinAbGroup,
    /// The nonzero `lim^{n-2d+1} S^d R_Z` summands, keyed by `d`.
    pub contributions: Vec<(usize, FinAbGroup)>,
}

/// `H_n(K(Z,3), Z) = ⊕_{d >= 2} lim^{n-2d+1} S^d R_Z` for `4 <= n <= n_max`
/// (negative upper indices contribute nothing).
pub fn k3_homology(n_max: usize) -> Result<Vec<K3Row>> {
    let mut limits_by_d: HashMap<usize, Vec<FinAbGroup>> = HashMap::new();
    let mut rows = Vec::new();
    for n in 4..=n_max {
        let mut homology = FinAbGroup::trivial();
        let mut contributions = Vec::new();
        for d in 2..=(n + 1) / 2 {
            let i = n + 1 - 2 * d;
            let lims = match limits_by_d.entry(d) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(limits_free(&sym_power(d), 1)?)
                }
            };
            // the limit complex has nothing above degree d+1
            let value = if i < lims.len() { lims[i].clone() } else { FinAbGroup::trivial() };
            if !value.is_trivial() {
                contributions.push((d, value.clone()));
            }
            homology = homology.direct_sum(&value);
        }
        rows.push(K3Row { n, homology, contributions });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{divided_power, ext_power, tensor_power};
    use crate::group::{parse_group, Presentation};
    use crate::limits::limits_via_cone;

    fn g(s: &str) -> FinAbGroup {
        parse_group(s).unwrap()
    }

    fn groups(l: &DerivedFunctorResult) -> Vec<FinAbGroup> {
        l.values().to_vec()
    }

    #[test]
    fn rejects_unsupported_level() {
        assert!(derived(&sym_power(2), &g("Z"), 2, 1).is_err());
    }

    #[test]
    fn free_group_at_level_zero_is_constant() {
        let l = derived(&sym_power(2), &g("Z^2"), 0, 2).unwrap();
        assert_eq!(groups(&l), vec![g("Z^3"), g("0"), g("0")]);
    }

    #[test]
    fn divided_power_of_torsion_at_level_zero() {
        // Γ²(Z/4) = Z/8 with first derived functor Z/2
        let l = derived(&divided_power(2), &g("Z/4"), 0, 2).unwrap();
        assert_eq!(groups(&l), vec![g("Z/8"), g("Z/2"), g("0")]);
    }

    #[test]
    fn divided_cube_of_z_at_level_one() {
        let l = derived(&divided_power(3), &g("Z"), 1, 3).unwrap();
        assert_eq!(groups(&l), vec![g("0"), g("Z/3"), g("Z/2"), g("0")]);
    }

    #[test]
    fn divided_powers_interpolate_exterior_powers() {
        // L_dΓ^d(A, 1) = Λ^d(A) and L_0 = 0
        for d in [2, 3] {
            for r in [1, 2] {
                let l = derived(&divided_power(d), &g(&format!("Z^{r}")), 1, d).unwrap();
                let exterior = FinAbGroup::free(ext_power(d).rank_at(r));
                assert_eq!(l.value(d), &exterior, "d={d} r={r}");
                assert!(l.value(0).is_trivial(), "d={d} r={r}");
            }
        }
    }

    #[test]
    fn first_derived_divided_cube_is_three_torsion() {
        for r in [1, 2] {
            let l = derived(&divided_power(3), &g(&format!("Z^{r}")), 1, 1).unwrap();
            let want: Vec<String> = std::iter::repeat("Z/3".to_string()).take(r).collect();
            assert_eq!(l.value(1), &g(&want.join(" + ")), "r={r}");
        }
    }

    #[test]
    fn tensor_square_concentrates_in_its_degree() {
        let l = derived(&tensor_power(2), &g("Z^2"), 1, 3).unwrap();
        assert_eq!(groups(&l), vec![g("0"), g("0"), g("Z^4"), g("0")]);
    }

    #[test]
    fn truncation_robustness() {
        let base = derived(&divided_power(2), &g("Z^2"), 1, 2).unwrap();
        let wide = derived_with_slack(&divided_power(2), &g("Z^2"), 1, 2, 1).unwrap();
        assert_eq!(groups(&base), groups(&wide));
        let base = derived(&divided_power(2), &g("Z/4"), 0, 2).unwrap();
        let wide = derived_with_slack(&divided_power(2), &g("Z/4"), 0, 2, 1).unwrap();
        assert_eq!(groups(&base), groups(&wide));
    }

    #[test]
    fn duality_prediction_matches_free_limits_for_squares() {
        for phi in [sym_power(2), ext_power(2), tensor_power(2), divided_power(2)] {
            for r in [1, 2] {
                let pred = duality_predicted_limits(&phi, r).unwrap();
                let real = limits_free(&phi, r).unwrap();
                assert_eq!(pred, real, "functor {phi} rank {r}");
            }
        }
    }

    #[test]
    fn duality_prediction_matches_free_limits_for_symmetric_cube() {
        let pred = duality_predicted_limits(&sym_power(3), 1).unwrap();
        assert_eq!(pred, vec![g("0"), g("0"), g("Z/3"), g("Z/2"), g("0")]);
    }

    #[test]
    fn torsion_prediction_matches_the_cone() {
        let p = Presentation::canonical(&g("Z/4"));
        let pred = torsion_predicted_limits(&sym_power(2), &g("Z/4")).unwrap();
        let real = limits_via_cone(&sym_power(2), &p).unwrap();
        assert_eq!(pred, real);
        assert_eq!(pred, vec![g("0"), g("Z/8"), g("Z/2"), g("0")]);
    }

    #[test]
    fn torsion_prediction_for_the_identity_functor() {
        let pred = torsion_predicted_limits(&tensor_power(1), &g("Z/4")).unwrap();
        assert_eq!(pred, vec![g("0"), g("Z/4"), g("0")]);
    }

    #[test]
    fn eilenberg_maclane_homology_of_k_z_3() {
        let rows = k3_homology(8).unwrap();
        let values: Vec<FinAbGroup> = rows.iter().map(|r| r.homology.clone()).collect();
        assert_eq!(values, vec![g("0"), g("Z/2"), g("0"), g("Z/3"), g("Z/2")]);
        // n = 5 is pure two-torsion from the symmetric square
        assert_eq!(rows[1].contributions, vec![(2, g("Z/2"))]);
        // n = 7 is pure three-torsion from the symmetric cube
        assert_eq!(rows[3].contributions, vec![(3, g("Z/3"))]);
    }
}

