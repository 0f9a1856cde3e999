//! Bounded complexes of finitely generated free abelian groups.
//!
//! Both directions are represented: [`ChainComplex`] with differentials
//! lowering degree (homological) and [`CochainComplex`] with differentials
//! raising degree (cohomological). Construction verifies that consecutive
//! differentials compose to zero; a violation is reported as
//! [`Error::NotAComplex`] at the middle degree of the failing composite.

use crate::error::{Error, Result};
use crate::group::{homology_at, FinAbGroup};
use crate::IntMatrix;

/// `C_0 <- C_1 <- ... <- C_top` with `diffs[i]: C_{i+1} -> C_i`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::invalid("a complex needs at least one module"));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::invalid(format!(
                "{} modules need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(Error::invalid(format!(
                    "differential into degree {i} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i].mul(&diffs[i + 1]).is_zero() {
                return Err(Error::NotAComplex { degree: i + 1 });
            }
        }
        Ok(ChainComplex { ranks, diffs })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_{i+1}: C_{i+1} -> C_i`; zero-width/height matrices past the ends.
    pub fn differential_into(&self, i: usize) -> IntMatrix {
        self.diffs.get(i).cloned().unwrap_or_else(|| IntMatrix::zeros(self.rank(i), 0))
    }

    pub fn homology(&self, i: usize) -> FinAbGroup {
        if i > self.top_degree() {
            return FinAbGroup::trivial();
        }
        let d_in = self.differential_into(i);
        let d_out = if i == 0 {
            IntMatrix::zeros(0, self.rank(0))
        } else {
            self.diffs[i - 1].clone()
        };
        homology_at(&d_in, &d_out).expect("validated complex")
    }

    pub fn all_homology(&self) -> Vec<FinAbGroup> {
        (0..=self.top_degree()).map(|i| self.homology(i)).collect()
    }
}

/// `C^0 -> C^1 -> ... -> C^top` with `diffs[i]: C^i -> C^{i+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::invalid("a complex needs at least one module"));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::invalid(format!(
                "{} modules need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(Error::invalid(format!(
                    "differential out of degree {i} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i + 1].mul(&diffs[i]).is_zero() {
                return Err(Error::NotAComplex { degree: i + 1 });
            }
        }
        Ok(CochainComplex { ranks, diffs })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂^i: C^i -> C^{i+1}`; zero-width/height matrices past the ends.
    pub fn differential_out_of(&self, i: usize) -> IntMatrix {
        self.diffs.get(i).cloned().unwrap_or_else(|| IntMatrix::zeros(0, self.rank(i)))
    }

    pub fn cohomology(&self, i: usize) -> FinAbGroup {
        if i > self.top_degree() {
            return FinAbGroup::trivial();
        }
        let d_out = self.differential_out_of(i);
        let d_in = if i == 0 {
            IntMatrix::zeros(self.rank(0), 0)
        } else {
            self.diffs[i - 1].clone()
        };
        homology_at(&d_in, &d_out).expect("validated complex")
    }

    pub fn all_cohomology(&self) -> Vec<FinAbGroup> {
        (0..=self.top_degree()).map(|i| self.cohomology(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn g(s: &str) -> FinAbGroup {
        parse_group(s).unwrap()
    }

    #[test]
    fn chain_homology_of_multiplication_by_two() {
        // C_1 = Z --2--> C_0 = Z
        let c = ChainComplex::new(vec![1, 1], vec![m(&[&[2]])]).unwrap();
        assert_eq!(c.homology(0), g("Z/2"));
        assert_eq!(c.homology(1), g("0"));
        assert_eq!(c.homology(7), g("0"));
    }

    #[test]
    fn cochain_cohomology_mirrors() {
        // C^0 = Z --3--> C^1 = Z
        let c = CochainComplex::new(vec![1, 1], vec![m(&[&[3]])]).unwrap();
        assert_eq!(c.cohomology(0), g("0"));
        assert_eq!(c.cohomology(1), g("Z/3"));
    }

    #[test]
    fn three_term_complex() {
        // C_2=Z --(1,-1)--> C_1=Z^2 --(2,2)--> C_0=Z: exact in the middle,
        // cokernel Z/2 at the bottom
        let d1 = m(&[&[1], &[-1]]);
        let d0 = m(&[&[2, 2]]);
        let c = ChainComplex::new(vec![1, 2, 1], vec![d0, d1]).unwrap();
        assert_eq!(c.all_homology(), vec![g("Z/2"), g("0"), g("0")]);
    }

    #[test]
    fn square_nonzero_is_rejected() {
        let err = ChainComplex::new(vec![1, 1, 1], vec![m(&[&[1]]), m(&[&[1]])]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex { degree: 1 }));
        let err = CochainComplex::new(vec![1, 1, 1], vec![m(&[&[2]]), m(&[&[3]])]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex { degree: 1 }));
    }

    #[test]
    fn shape_mismatch_is_invalid() {
        let err = ChainComplex::new(vec![1, 2], vec![m(&[&[1]])]).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn single_module_complex() {
        let c = ChainComplex::new(vec![4], vec![]).unwrap();
        assert_eq!(c.homology(0), g("Z^4"));
        let cc = CochainComplex::new(vec![3], vec![]).unwrap();
        assert_eq!(cc.cohomology(0), g("Z^3"));
    }
}
