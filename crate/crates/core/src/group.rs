//! Finitely generated abelian groups in invariant-factor normal form, group
//! presentations, and homology of integer complexes.
//!
//! A [`FinAbGroup`] is always stored normalized: `Z^free + Z/d_1 + ... + Z/d_k`
//! with `2 <= d_1 | d_2 | ... | d_k`. Normalization goes through Smith normal
//! form of a diagonal matrix, so no integer factorization is ever needed.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::snf::{image_basis, kernel_basis, snf_with, SnfOpts};
use crate::{Int, IntMatrix};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// A finitely generated abelian group, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`; by convention `cyclic(0)` is the infinite cyclic group.
    pub fn cyclic(n: Int) -> Self {
        Self::from_parts(0, vec![n])
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning `Z`) plus a
    /// free rank into invariant-factor form.
    pub fn from_parts(free_rank: usize, torsion: Vec<Int>) -> Self {
        let mut free = free_rank;
        let mut finite: Vec<Int> = Vec::new();
        for t in torsion {
            let t = t.abs();
            if t.is_zero() {
                free += 1;
            } else if !t.is_one() {
                finite.push(t);
            }
        }
        // invariant factors of a diagonal matrix, without factoring integers
        let n = finite.len();
        let diag = Matrix::from_fn(n, n, |i, j| if i == j { finite[i].clone() } else { Int::zero() });
        let snf = snf_with(&diag, SnfOpts::NONE);
        let torsion = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        FinAbGroup { free_rank: free, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k`, each at least 2.
    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = Int::one();
        for t in &self.torsion {
            o *= t;
        }
        Some(o)
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        FinAbGroup::from_parts(self.free_rank + other.free_rank, torsion)
    }

    /// `Hom(-, Z)`: kills torsion, keeps the free part.
    pub fn hom_dual(&self) -> FinAbGroup {
        FinAbGroup::free(self.free_rank)
    }

    /// `Ext(-, Z)`: kills the free part, keeps torsion.
    pub fn ext_dual(&self) -> FinAbGroup {
        FinAbGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    pub fn torsion_part(&self) -> FinAbGroup {
        self.ext_dual()
    }

    pub fn free_part(&self) -> FinAbGroup {
        self.hom_dual()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            terms.push(format!("Z/{t}"));
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group(s)
    }
}

/// Parses a group literal: terms `Z`, `Z^r`, `Z/n`, `0` joined by `+`.
/// Whitespace is insignificant. `Z/1` is the trivial group and is dropped.
pub fn parse_group(input: &str) -> Result<FinAbGroup> {
    let bytes = input.as_bytes();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let digits = |pos: &mut usize| -> Result<&str> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return Err(Error::parse(start, "expected a number"));
        }
        Ok(&input[start..*pos])
    };

    let mut free = 0usize;
    let mut torsion: Vec<Int> = Vec::new();
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::parse(pos, "empty group literal"));
    }
    loop {
        skip_ws(&mut pos);
        match bytes.get(pos) {
            Some(b'0') => {
                pos += 1;
                if bytes.get(pos).is_some_and(|b| b.is_ascii_digit()) {
                    return Err(Error::parse(pos, "unexpected digit after '0'"));
                }
            }
            Some(b'Z') => {
                pos += 1;
                match bytes.get(pos) {
                    Some(b'^') => {
                        pos += 1;
                        let start = pos;
                        let ds = digits(&mut pos)?;
                        let r: usize = ds
                            .parse()
                            .map_err(|_| Error::parse(start, "rank too large"))?;
                        free += r;
                    }
                    Some(b'/') => {
                        pos += 1;
                        let start = pos;
                        let ds = digits(&mut pos)?;
                        let n: Int = ds.parse().expect("digit string");
                        if n.is_zero() {
                            return Err(Error::parse(
                                start,
                                "modulus must be positive (write Z for the infinite cyclic group)",
                            ));
                        }
                        torsion.push(n);
                    }
                    _ => free += 1,
                }
            }
            Some(_) => {
                return Err(Error::parse(pos, "expected 'Z', 'Z^r', 'Z/n', or '0'"));
            }
            None => return Err(Error::parse(pos, "expected a group term")),
        }
        skip_ws(&mut pos);
        match bytes.get(pos) {
            None => break,
            Some(b'+') => pos += 1,
            Some(_) => return Err(Error::parse(pos, "expected '+' or end of input")),
        }
    }
    Ok(FinAbGroup::from_parts(free, torsion))
}

/// Cokernel of an integer matrix, i.e. `Z^rows / column span`.
pub fn cokernel_of(m: &IntMatrix) -> FinAbGroup {
    let snf = snf_with(m, SnfOpts::NONE);
    FinAbGroup::from_parts(m.rows() - snf.rank, snf.diagonal())
}

/// Homology `ker(d_out) / im(d_in)` at the middle of
/// `Z^a --d_in--> Z^b --d_out--> Z^c`, requiring `d_out * d_in = 0`.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FinAbGroup> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::invalid(format!(
            "homology_at: middle ranks disagree ({} vs {})",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::invalid("homology_at: maps do not compose to zero"));
    }
    let k = kernel_basis(d_out);
    // the kernel lattice is saturated, so the image of d_in factors through it
    let x = crate::snf::solve(&k, d_in)
        .ok_or_else(|| Error::internal("image does not lie in kernel lattice"))?;
    Ok(cokernel_of(&x))
}

/// An abelian group given by generators and relations: the cokernel of
/// `relations: Z^m -> Z^generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    generators: usize,
    relations: IntMatrix,
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::invalid(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(PresentedGroup { generators, relations })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn group(&self) -> FinAbGroup {
        cokernel_of(&self.relations)
    }
}

/// A surjection `p: Z^f -> A` onto a presented group, the raw datum from
/// which the relation functor is built. `map` has one column per free
/// generator upstairs, expressed in the generators of `A`.
#[derive(Clone, Debug)]
pub struct Presentation {
    target: PresentedGroup,
    map: IntMatrix,
}

impl Presentation {
    pub fn new(target: PresentedGroup, map: IntMatrix) -> Result<Self> {
        if map.rows() != target.generators() {
            return Err(Error::invalid(format!(
                "presentation map has {} rows for {} target generators",
                map.rows(),
                target.generators()
            )));
        }
        // surjectivity: map columns and relations together must span Z^g
        let joined = IntMatrix::hstack(&[&map, target.relations()]);
        if !cokernel_of(&joined).is_trivial() {
            return Err(Error::invalid("presentation map is not surjective"));
        }
        Ok(Presentation { target, map })
    }

    /// The canonical presentation of a normalized group: one generator per
    /// summand, relations the diagonal torsion matrix, map the identity.
    pub fn canonical(group: &FinAbGroup) -> Presentation {
        let fr = group.free_rank();
        let k = group.torsion().len();
        let g = fr + k;
        let mut relations = IntMatrix::zeros(g, k);
        for (i, t) in group.torsion().iter().enumerate() {
            relations.set(fr + i, i, t.clone());
        }
        let target = PresentedGroup { generators: g, relations };
        Presentation { target, map: IntMatrix::identity(g) }
    }

    /// The canonical presentation padded with redundant generators: the map
    /// becomes `[I | c]`, where each extra column `c_j` maps to an arbitrary
    /// element. Still surjective, but the kernel grows.
    pub fn with_redundant_generators(group: &FinAbGroup, extra: &IntMatrix) -> Result<Presentation> {
        let base = Presentation::canonical(group);
        if extra.rows() != base.target.generators() {
            return Err(Error::invalid(format!(
                "redundant generator columns have {} rows for {} target generators",
                extra.rows(),
                base.target.generators()
            )));
        }
        let map = IntMatrix::hstack(&[&base.map, extra]);
        Ok(Presentation { target: base.target, map })
    }

    pub fn target(&self) -> &PresentedGroup {
        &self.target
    }

    pub fn group(&self) -> FinAbGroup {
        self.target.group()
    }

    pub fn map(&self) -> &IntMatrix {
        &self.map
    }

    /// Number of free generators upstairs.
    pub fn source_rank(&self) -> usize {
        self.map.cols()
    }

    /// Basis of `ker(p)` as columns of an `f x r` matrix.
    pub fn kernel_embedding(&self) -> IntMatrix {
        self.kernel_of_fold(1)
    }

    /// Basis of the kernel of the fold map `(Z^f)^copies -> A` sending
    /// `(x_1, ..., x_c)` to `p(x_1) + ... + p(x_c)`.
    pub fn kernel_of_fold(&self, copies: usize) -> IntMatrix {
        let f = self.source_rank();
        // x is in the kernel iff sum(P x_i) lies in the relation lattice:
        // solve [P ... P | -M] (x, y) = 0 and project to the x block
        let p_blocks: Vec<IntMatrix> = (0..copies).map(|_| self.map.clone()).collect();
        let mut blocks: Vec<&IntMatrix> = p_blocks.iter().collect();
        let neg_rel = self.target.relations().neg();
        blocks.push(&neg_rel);
        let stacked = IntMatrix::hstack(&blocks);
        let ker = kernel_basis(&stacked);
        let x_part = ker.row_range(0, f * copies);
        // the projection can be degenerate; re-extract an honest basis
        image_basis(&x_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snf::lattice_eq;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn g(s: &str) -> FinAbGroup {
        parse_group(s).unwrap()
    }

    #[test]
    fn normalization_merges_invariant_factors() {
        // Z/4 + Z/6 = Z/2 + Z/12 by CRT on invariant factors
        assert_eq!(FinAbGroup::from_parts(1, vec![4.into(), 6.into()]), g("Z + Z/2 + Z/12"));
        assert_eq!(FinAbGroup::from_parts(0, vec![2.into(), 3.into()]), g("Z/6"));
        assert_eq!(FinAbGroup::from_parts(0, vec![0.into(), 1.into()]), g("Z"));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "Z", "Z^3", "Z/2", "Z + Z/2 + Z/4", "Z^2 + Z/9"] {
            let grp = g(s);
            assert_eq!(grp.to_string(), s);
            assert_eq!(g(&grp.to_string()), grp);
        }
        // non-canonical spellings normalize
        assert_eq!(g("Z^1").to_string(), "Z");
        assert_eq!(g("Z/1").to_string(), "0");
        assert_eq!(g(" Z/6+Z/4 ").to_string(), "Z/2 + Z/12");
        assert_eq!(g("0 + Z").to_string(), "Z");
    }

    #[test]
    fn parse_errors_carry_positions() {
        for (input, at) in [("", 0), ("Z/", 2), ("Z/0", 2), ("Q", 0), ("Z +", 3), ("Z Z", 2), ("01", 1)] {
            match parse_group(input) {
                Err(Error::Parse { pos, .. }) => assert_eq!(pos, at, "input {input:?}"),
                other => panic!("expected parse error for {input:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn duals() {
        let a = g("Z^2 + Z/4 + Z/12");
        assert_eq!(a.hom_dual(), g("Z^2"));
        assert_eq!(a.ext_dual(), g("Z/4 + Z/12"));
        assert_eq!(a.order(), None);
        assert_eq!(g("Z/4 + Z/2").order(), Some(8.into()));
    }

    #[test]
    fn cokernel_of_worked_example() {
        assert_eq!(cokernel_of(&m(&[&[2, 4], &[6, 8]])), g("Z/2 + Z/4"));
        assert_eq!(cokernel_of(&IntMatrix::zeros(3, 0)), g("Z^3"));
    }

    #[test]
    fn homology_of_small_complex() {
        // Z --2--> Z --> 0
        let d_in = m(&[&[2]]);
        let d_out = IntMatrix::zeros(0, 1);
        assert_eq!(homology_at(&d_in, &d_out).unwrap(), g("Z/2"));

        // 0 --> Z --0--> Z: homology at the middle Z is all of it
        let d_in = IntMatrix::zeros(1, 0);
        let d_out = m(&[&[0]]);
        assert_eq!(homology_at(&d_in, &d_out).unwrap(), g("Z"));

        // non-composing maps are rejected
        let err = homology_at(&m(&[&[1]]), &m(&[&[1]])).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn presented_group_collapses() {
        let p = PresentedGroup::new(2, m(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(p.group(), g("Z/6"));
    }

    #[test]
    fn presentation_requires_surjectivity() {
        let target = PresentedGroup::new(1, IntMatrix::zeros(1, 0)).unwrap();
        assert!(Presentation::new(target.clone(), m(&[&[2]])).is_err());
        assert!(Presentation::new(target, m(&[&[1]])).is_ok());
    }

    #[test]
    fn canonical_presentation_kernel() {
        let a = g("Z/2");
        let p = Presentation::canonical(&a);
        assert_eq!(p.group(), a);
        assert_eq!(p.source_rank(), 1);
        let k = p.kernel_embedding();
        assert!(lattice_eq(&k, &m(&[&[2]])));

        // two copies folding onto Z/2: kernel is the even-sum sublattice
        let k2 = p.kernel_of_fold(2);
        assert_eq!(k2.cols(), 2);
        assert!(lattice_eq(&k2, &m(&[&[1, 0], &[1, 2]])));
    }

    #[test]
    fn redundant_generators_stay_surjective() {
        let a = g("Z + Z/4");
        let p = Presentation::with_redundant_generators(&a, &m(&[&[3], &[1]])).unwrap();
        assert_eq!(p.source_rank(), 3);
        assert_eq!(p.group(), a);
        // kernel rank grows by the number of redundant generators
        assert_eq!(p.kernel_embedding().cols(), 1 + 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_presentation_round_trip(free in 0usize..3, t1 in 0i64..7, t2 in 0i64..7) {
            let a = FinAbGroup::from_parts(free, vec![t1.into(), t2.into()]);
            let p = Presentation::canonical(&a);
            prop_assert_eq!(p.group(), a.clone());
            // kernel of p has rank f - free_rank(A)
            prop_assert_eq!(p.kernel_embedding().cols(), p.source_rank() - a.free_rank());
        }

        #[test]
        fn cokernel_invariant_under_column_ops(seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % 11) as i64 - 5
            };
            let a = IntMatrix::from_fn(3, 3, |_, _| Int::from(next()));
            let mut b = a.clone();
            let q = Int::from(next());
            b.col_sub_multiple(0, 2, &q);
            prop_assert_eq!(cokernel_of(&a), cokernel_of(&b));
        }
    }
}
