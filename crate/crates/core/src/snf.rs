//! Smith normal form over an exact integer-like ring, with the transforms
//! needed to extract kernels, images, and cokernels of integer matrices.
//!
//! `u * m * v = d` where `u`, `v` are unimodular and `d` is diagonal with
//! non-negative entries forming a divisibility chain `d_0 | d_1 | ...`.
//! Inverse transforms are maintained alongside (each elementary operation is
//! mirrored by its inverse), so `u_inv` and `v_inv` are exact, not solved for.
//! Every consumer states which transforms it needs; skipping unused ones
//! matters when the input has hundreds of rows.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default)]
pub struct SnfOpts {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl SnfOpts {
    pub const ALL: SnfOpts = SnfOpts { u: true, u_inv: true, v: true, v_inv: true };
    pub const NONE: SnfOpts = SnfOpts { u: false, u_inv: false, v: false, v_inv: false };
}

/// Result of a Smith normal form computation. Transforms are present exactly
/// when requested: `u * m * v = d`, `u_inv * u = 1`, `v * v_inv = 1`.
#[derive(Clone, Debug)]
pub struct Snf<T: Scalar> {
    pub d: Matrix<T>,
    pub rank: usize,
    pub u: Option<Matrix<T>>,
    pub u_inv: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
    pub v_inv: Option<Matrix<T>>,
}

impl<T: Scalar> Snf<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.at(i, i).clone()).collect()
    }
}

/// Normalized extended gcd: `(g, x, y)` with `g = x*a + y*b` and `g >= 0`.
fn egcd<T: Scalar>(a: &T, b: &T) -> (T, T, T) {
    let ext = a.extended_gcd(b);
    let (mut g, mut x, mut y) = (ext.gcd, ext.x, ext.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    debug_assert_eq!(g, T::mul_ref(&x, a) + T::mul_ref(&y, b));
    debug_assert!(!g.is_zero() || (a.is_zero() && b.is_zero()));
    (g, x, y)
}

struct Work<T> {
    d: Matrix<T>,
    u: Option<Matrix<T>>,
    u_inv: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
    v_inv: Option<Matrix<T>>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(a, b);
        }
    }

    /// row_r -= q * row_t
    fn row_sub(&mut self, r: usize, t: usize, q: &T) {
        self.d.row_sub_multiple(r, t, q);
        if let Some(u) = &mut self.u {
            u.row_sub_multiple(r, t, q);
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse acts on columns: col_t += q * col_r
            let neg = -q.clone();
            ui.col_sub_multiple(t, r, &neg);
        }
    }

    /// col_c -= q * col_t
    fn col_sub(&mut self, c: usize, t: usize, q: &T) {
        self.d.col_sub_multiple(c, t, q);
        if let Some(v) = &mut self.v {
            v.col_sub_multiple(c, t, q);
        }
        if let Some(vi) = &mut self.v_inv {
            let neg = -q.clone();
            vi.row_sub_multiple(t, c, &neg);
        }
    }

    /// Unimodular transform on rows (t, r) replacing the pivot with the gcd of
    /// `d[t][t]` and `d[r][t]`.
    fn row_gcd(&mut self, t: usize, r: usize) {
        let a = self.d.at(t, t).clone();
        let b = self.d.at(r, t).clone();
        let (g, x, y) = egcd(&a, &b);
        let bs = b / g.clone();
        let as_ = a / g.clone();
        let nbs = -bs.clone();
        self.d.row_transform(t, r, &x, &y, &nbs, &as_);
        if let Some(u) = &mut self.u {
            u.row_transform(t, r, &x, &y, &nbs, &as_);
        }
        if let Some(ui) = &mut self.u_inv {
            let ny = -y.clone();
            ui.col_transform(t, r, &as_, &bs, &ny, &x);
        }
    }

    /// Column analogue of `row_gcd` for the entry `d[t][c]`.
    fn col_gcd(&mut self, t: usize, c: usize) {
        let a = self.d.at(t, t).clone();
        let b = self.d.at(t, c).clone();
        let (g, x, y) = egcd(&a, &b);
        let bs = b / g.clone();
        let as_ = a / g.clone();
        let nbs = -bs.clone();
        self.d.col_transform(t, c, &x, &y, &nbs, &as_);
        if let Some(v) = &mut self.v {
            v.col_transform(t, c, &x, &y, &nbs, &as_);
        }
        if let Some(vi) = &mut self.v_inv {
            let ny = -y.clone();
            vi.row_transform(t, c, &as_, &bs, &ny, &x);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.d.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(r);
        }
    }

    /// Clears row and column `t`, leaving the pivot as the gcd of everything
    /// it absorbed. Loops because column operations can refill the column.
    fn clear_position(&mut self, t: usize) {
        let rows = self.d.rows();
        let cols = self.d.cols();
        loop {
            for r in t + 1..rows {
                if self.d.at(r, t).is_zero() {
                    continue;
                }
                let a = self.d.at(t, t).clone();
                let b = self.d.at(r, t).clone();
                if !a.is_zero() && (b.clone() % a.clone()).is_zero() {
                    let q = b / a;
                    self.row_sub(r, t, &q);
                } else {
                    self.row_gcd(t, r);
                }
            }
            for c in t + 1..cols {
                if self.d.at(t, c).is_zero() {
                    continue;
                }
                let a = self.d.at(t, t).clone();
                let b = self.d.at(t, c).clone();
                if !a.is_zero() && (b.clone() % a.clone()).is_zero() {
                    let q = b / a;
                    self.col_sub(c, t, &q);
                } else {
                    self.col_gcd(t, c);
                }
            }
            let col_clear = (t + 1..rows).all(|r| self.d.at(r, t).is_zero());
            let row_clear = (t + 1..cols).all(|c| self.d.at(t, c).is_zero());
            if col_clear && row_clear {
                break;
            }
        }
    }
}

pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> Snf<T> {
    snf_with(m, SnfOpts::ALL)
}

pub fn snf_with<T: Scalar>(m: &Matrix<T>, opts: SnfOpts) -> Snf<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        d: m.clone(),
        u: opts.u.then(|| Matrix::identity(rows)),
        u_inv: opts.u_inv.then(|| Matrix::identity(rows)),
        v: opts.v.then(|| Matrix::identity(cols)),
        v_inv: opts.v_inv.then(|| Matrix::identity(cols)),
    };

    let mut rank = 0;
    'pivots: for t in 0..rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining submatrix keeps
        // coefficient growth down; a unit short-circuits the scan.
        let mut pivot: Option<(usize, usize, T)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                let e = w.d.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if a.is_one() {
                    pivot = Some((i, j, a));
                    break 'scan;
                }
                match &pivot {
                    Some((_, _, best)) if *best <= a => {}
                    _ => pivot = Some((i, j, a)),
                }
            }
        }
        let Some((pi, pj, _)) = pivot else {
            break 'pivots;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        w.clear_position(t);
        if w.d.at(t, t).is_negative() {
            w.negate_row(t);
        }
        rank = t + 1;
    }

    // enforce the divisibility chain d_i | d_{i+1} by repeated sweeps
    if rank > 1 {
        loop {
            let mut changed = false;
            for i in 0..rank - 1 {
                let a = w.d.at(i, i).clone();
                let b = w.d.at(i + 1, i + 1).clone();
                if (b % a).is_zero() {
                    continue;
                }
                // fold column i+1 into column i, then restore diagonal shape
                let minus_one = -T::one();
                w.col_sub(i, i + 1, &minus_one);
                w.clear_position(i);
                if w.d.at(i, i).is_negative() {
                    w.negate_row(i);
                }
                if w.d.at(i + 1, i + 1).is_negative() {
                    w.negate_row(i + 1);
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
    }

    #[cfg(debug_assertions)]
    {
        if let (Some(u), Some(v)) = (&w.u, &w.v) {
            debug_assert_eq!(u.mul(m).mul(v), w.d, "snf transform identity violated");
        }
        if let (Some(u), Some(ui)) = (&w.u, &w.u_inv) {
            debug_assert_eq!(ui.mul(u), Matrix::identity(rows));
        }
        if let (Some(v), Some(vi)) = (&w.v, &w.v_inv) {
            debug_assert_eq!(v.mul(vi), Matrix::identity(cols));
        }
    }

    Snf { d: w.d, rank, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

/// Basis of the integer kernel `{x : m x = 0}` as matrix columns. The kernel
/// of an integer matrix is a saturated sublattice, so this basis extends to a
/// basis of the ambient lattice.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let snf = snf_with(m, SnfOpts { v: true, ..SnfOpts::NONE });
    snf.v.unwrap().column_range(snf.rank, m.cols())
}

/// Basis of the column span of `m` as a lattice in Z^rows.
pub fn image_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let snf = snf_with(m, SnfOpts { u_inv: true, ..SnfOpts::NONE });
    let ui = snf.u_inv.unwrap();
    let mut out = Matrix::zeros(m.rows(), snf.rank);
    for k in 0..snf.rank {
        let dk = snf.d.at(k, k);
        for i in 0..m.rows() {
            out.set(i, k, T::mul_ref(ui.at(i, k), dk));
        }
    }
    out
}

/// Solves `m x = rhs` over the integers, if a solution exists.
pub fn solve<T: Scalar>(m: &Matrix<T>, rhs: &Matrix<T>) -> Option<Matrix<T>> {
    assert_eq!(m.rows(), rhs.rows(), "solve: row mismatch");
    let snf = snf_with(m, SnfOpts { u: true, v: true, ..SnfOpts::NONE });
    let y = snf.u.as_ref().unwrap().mul(rhs);
    let mut z = Matrix::zeros(m.cols(), rhs.cols());
    for i in 0..m.rows() {
        if i < snf.rank {
            let di = snf.d.at(i, i);
            for j in 0..rhs.cols() {
                let (q, r) = y.at(i, j).div_rem(di);
                if !r.is_zero() {
                    return None;
                }
                z.set(i, j, q);
            }
        } else {
            for j in 0..rhs.cols() {
                if !y.at(i, j).is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.v.as_ref().unwrap().mul(&z))
}

/// Exact inverse of a unimodular integer matrix.
pub fn inverse<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::invalid("inverse of a non-square matrix"));
    }
    let snf = snf_with(m, SnfOpts { u: true, v: true, ..SnfOpts::NONE });
    let unit = snf.rank == m.rows() && (0..snf.rank).all(|i| snf.d.at(i, i).is_one());
    if !unit {
        return Err(Error::invalid("matrix is not unimodular"));
    }
    // u m v = 1 implies m^{-1} = v u
    Ok(snf.v.unwrap().mul(&snf.u.unwrap()))
}

pub fn is_unimodular<T: Scalar>(m: &Matrix<T>) -> bool {
    if !m.is_square() {
        return false;
    }
    let snf = snf_with(m, SnfOpts::NONE);
    snf.rank == m.rows() && (0..snf.rank).all(|i| snf.d.at(i, i).is_one())
}

/// Does the column span of `inner` lie inside the column span of `outer`?
pub fn lattice_contains<T: Scalar>(outer: &Matrix<T>, inner: &Matrix<T>) -> bool {
    solve(outer, inner).is_some()
}

/// Equality of column-span lattices.
pub fn lattice_eq<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    a.rows() == b.rows() && lattice_contains(a, b) && lattice_contains(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, IntMatrix};
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    // oracle for the worked example: d_0 must be the gcd of all entries and
    // the product of the diagonal must match |det| for a square matrix
    #[test]
    fn smith_form_of_worked_example() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        // gcd of entries = 2, |det| = 8, so the diagonal is forced to (2, 4)
        assert_eq!(snf.diagonal(), vec![Int::from(2), Int::from(4)]);
        assert_eq!(snf.rank, 2);
        let umv = snf.u.as_ref().unwrap().mul(&a).mul(snf.v.as_ref().unwrap());
        assert_eq!(umv, snf.d);
        assert_eq!(snf.u.as_ref().unwrap().determinant().abs(), Int::from(1));
        assert_eq!(snf.v.as_ref().unwrap().determinant().abs(), Int::from(1));
    }

    #[test]
    fn identity_and_zero() {
        let id5 = IntMatrix::identity(5);
        let snf = smith_normal_form(&id5);
        assert_eq!(snf.rank, 5);
        assert!(snf.diagonal().iter().all(|d| d.is_one()));

        let z = IntMatrix::zeros(3, 4);
        let snf = smith_normal_form(&z);
        assert_eq!(snf.rank, 0);

        let empty = IntMatrix::zeros(0, 4);
        let snf = smith_normal_form(&empty);
        assert_eq!(snf.rank, 0);
        assert_eq!(kernel_basis(&empty), IntMatrix::identity(4));
    }

    #[test]
    fn divisibility_chain_nontrivial() {
        let a = m(&[&[2, 0, 0], &[0, 6, 0], &[0, 0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![Int::from(1), Int::from(6), Int::from(6)]);
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 1, 1], &[0, 2, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());

        let rhs = m(&[&[3], &[4]]);
        let x = solve(&a, &rhs).expect("solvable");
        assert_eq!(a.mul(&x), rhs);

        let bad = m(&[&[0], &[1]]); // second coordinate must be even
        assert!(solve(&a, &bad).is_none());
    }

    #[test]
    fn image_basis_spans_columns() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let im = image_basis(&a);
        assert!(lattice_eq(&im, &a));
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = m(&[&[1, 2], &[1, 3]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), IntMatrix::identity(2));
        assert!(inverse(&m(&[&[2, 0], &[0, 1]])).is_err());
    }

    fn random_unimodular(n: usize, seed: &mut u64) -> IntMatrix {
        // product of elementary operations on the identity
        let mut m = IntMatrix::identity(n);
        let mut next = || {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (*seed >> 33) as usize
        };
        for _ in 0..3 * n {
            let a = next() % n;
            let b = next() % n;
            let c = Int::from((next() % 5) as i64) - Int::from(2);
            if a != b {
                let neg = -c;
                m.row_sub_multiple(a, b, &neg);
            }
        }
        m
    }

    #[test]
    fn invariant_under_unimodular_change_of_basis() {
        let a = m(&[&[4, 2, 0], &[0, 6, 9], &[2, 2, 2]]);
        let mut seed = 42u64;
        for _ in 0..10 {
            let p = random_unimodular(3, &mut seed);
            let q = random_unimodular(3, &mut seed);
            let b = p.mul(&a).mul(&q);
            assert_eq!(smith_normal_form(&a).diagonal(), smith_normal_form(&b).diagonal());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snf_contract(rows in 0usize..5, cols in 0usize..5, seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % 19) as i64 - 9
            };
            let a = IntMatrix::from_fn(rows, cols, |_, _| Int::from(next()));
            let snf = smith_normal_form(&a);
            let u = snf.u.as_ref().unwrap();
            let v = snf.v.as_ref().unwrap();
            prop_assert_eq!(u.mul(&a).mul(v), snf.d.clone());
            // diagonal, non-negative, divisibility chain
            for i in 0..snf.d.rows() {
                for j in 0..snf.d.cols() {
                    if i != j {
                        prop_assert!(snf.d.at(i, j).is_zero());
                    }
                }
            }
            let diag = snf.diagonal();
            for w in diag.windows(2) {
                prop_assert!((w[1].clone() % w[0].clone()).is_zero());
            }
            prop_assert!(diag.iter().all(|d| *d > Int::from(0)));
            if rows > 0 {
                prop_assert_eq!(u.determinant().abs(), Int::from(1));
            }
            if cols > 0 {
                prop_assert_eq!(v.determinant().abs(), Int::from(1));
            }
            // kernel really is the kernel
            let k = kernel_basis(&a);
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.cols(), cols - snf.rank);
        }
    }
}
