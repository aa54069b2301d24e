//! Smith normal form over a Euclidean cover with tracked transforms.
//!
//! Pivoting picks the smallest-norm nonzero entry of the active block, ties
//! broken by row-major position, so results are reproducible.

use super::Mat;
use num_traits::Signed;

use crate::ring::{Cover, Elem};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry canonical and dividing the next.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    pub d: Mat,
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Columns spanning the kernel of `A` (a basis, since the cover is a PID).
    pub fn kernel(&self) -> Mat {
        let idx: Vec<usize> = (self.rank..self.v.cols()).collect();
        self.v.select_cols(&idx)
    }

    /// Solves `A x = b`, returning `None` when `b` is outside the column span.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        let c = self.d.cover();
        let ub = self.u.mul_vec(b);
        let mut y = vec![c.zero(); self.v.cols()];
        for (i, val) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(val, &self.d[(i, i)]);
                if !c.is_zero(&r) {
                    return None;
                }
                y[i] = q;
            } else if !c.is_zero(val) {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

struct Calc {
    c: Cover,
    d: Mat,
    u: Mat,
    u_inv: Mat,
    v: Mat,
    v_inv: Mat,
}

impl Calc {
    fn row_add(&mut self, target: usize, source: usize, q: &Elem) {
        self.d.add_row_multiple(target, source, q);
        self.u.add_row_multiple(target, source, q);
        self.u_inv.add_col_multiple(source, target, &self.c.neg(q));
    }

    fn col_add(&mut self, target: usize, source: usize, q: &Elem) {
        self.d.add_col_multiple(target, source, q);
        self.v.add_col_multiple(target, source, q);
        self.v_inv.add_row_multiple(source, target, &self.c.neg(q));
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_scale(&mut self, i: usize, unit: &Elem) {
        let inv = self.c.unit_inverse(unit);
        self.d.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }

    /// Quotient with the remainder of least absolute value, which keeps
    /// integer entries from drifting upward during elimination.
    fn quotient(&self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        let (q, r) = self.c.div_rem(a, b);
        if let (Elem::Int(qv), Elem::Int(rv), Elem::Int(bv)) = (&q, &r, b) {
            if rv.abs() * 2 > bv.abs() {
                let step: i32 = if rv.is_positive() == bv.is_positive() { 1 } else { -1 };
                return (Elem::Int(qv + step), Elem::Int(rv - bv * step));
            }
        }
        (q, r)
    }

    fn smallest(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), u128)> = None;
        for (i, j) in cells {
            let e = &self.d[(i, j)];
            if self.c.is_zero(e) {
                continue;
            }
            let n = self.c.norm(e);
            if best.map_or(true, |(_, bn)| n < bn) {
                best = Some(((i, j), n));
            }
        }
        best.map(|(p, _)| p)
    }

    fn place(&mut self, t: usize, (i, j): (usize, usize)) {
        self.row_swap(t, i);
        self.col_swap(t, j);
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = self.d.shape();
        let mut t = 0;
        while t < rows.min(cols) {
            let block = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
            let Some(p) = self.smallest(block) else { break };
            self.place(t, p);
            loop {
                let pivot = self.d[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.c.is_zero(&self.d[(i, t)]) {
                        continue;
                    }
                    let (q, r) = self.quotient(&self.d[(i, t)], &pivot);
                    self.row_add(i, t, &self.c.neg(&q));
                    dirty |= !self.c.is_zero(&r);
                }
                for j in t + 1..cols {
                    if self.c.is_zero(&self.d[(t, j)]) {
                        continue;
                    }
                    let (q, r) = self.quotient(&self.d[(t, j)], &pivot);
                    self.col_add(j, t, &self.c.neg(&q));
                    dirty |= !self.c.is_zero(&r);
                }
                if dirty {
                    let line = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                    let p = self.smallest(line).expect("pivot line is nonzero");
                    self.place(t, p);
                    continue;
                }
                let stray = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.c.divides(&pivot, &self.d[(i, j)]));
                match stray {
                    Some((i, _)) => self.row_add(t, i, &self.c.one()),
                    None => break,
                }
            }
            let (_, unit) = self.c.normalize(&self.d[(t, t)]);
            if !self.c.is_one(&unit) {
                self.row_scale(t, &unit);
            }
            t += 1;
        }
        t
    }
}

pub fn smith_normal_form(a: &Mat) -> SnfResult {
    let c = a.cover();
    let (rows, cols) = a.shape();
    let mut calc = Calc {
        c,
        d: a.clone(),
        u: Mat::identity(c, rows),
        u_inv: Mat::identity(c, rows),
        v: Mat::identity(c, cols),
        v_inv: Mat::identity(c, cols),
    };
    let rank = calc.run();
    SnfResult { u: calc.u, u_inv: calc.u_inv, v: calc.v, v_inv: calc.v_inv, d: calc.d, rank }
}

/// Basis of `{x : A x = 0}` as columns.
pub fn kernel_basis(a: &Mat) -> Mat {
    smith_normal_form(a).kernel()
}

pub fn solve(a: &Mat, b: &[Elem]) -> Option<Vec<Elem>> {
    smith_normal_form(a).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Mat {
        Mat::from_ints(Cover::Integers, rows)
    }

    fn check(a: &Mat) -> SnfResult {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Mat::identity(a.cover(), a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), Mat::identity(a.cover(), a.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(a.cover().divides(&w[0], &w[1]));
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&ints(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![Elem::int(1), Elem::int(6)]);
    }

    #[test]
    fn identity_is_fixed() {
        let id = Mat::identity(Cover::Integers, 3);
        let s = check(&id);
        assert_eq!(s.d, id);
        assert_eq!(s.u, id);
        assert_eq!(s.v, id);
    }

    #[test]
    fn row_vector() {
        let s = check(&ints(&[&[4, 6]]));
        assert_eq!(s.d, ints(&[&[2, 0]]));
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let s = check(&Mat::zeros(Cover::Integers, r, c));
            assert_eq!(s.rank, 0);
        }
    }

    #[test]
    fn kernel_and_solve() {
        let a = ints(&[&[2, 4, 6], &[1, 2, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        let b = vec![Elem::int(4), Elem::int(2)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve(&a, &[Elem::int(1), Elem::int(1)]).is_none());
    }

    #[test]
    fn polynomial_snf() {
        let c = Cover::PolyOver(5);
        let x = c.var();
        let x1 = c.add(&x, &c.one());
        let a = Mat::from_rows(c, vec![vec![c.mul(&x, &x1), x.clone()], vec![x1.clone(), c.zero()]]);
        let s = check(&a);
        assert_eq!(s.rank, 2);
        assert_eq!(s.diagonal()[0], c.one());
    }

    #[test]
    fn transforms_outgrow_machine_integers() {
        let a = ints(&[
            &[-50, -27, 35, 21, 50, -29],
            &[13, 20, -10, -34, -32, -27],
            &[-34, 17, -1, 40, -38, 49],
            &[36, -41, -43, -2, -50, -37],
            &[-27, -16, 40, 18, -42, -48],
            &[6, -2, 47, -10, 19, 39],
        ]);
        let s = check(&a);
        assert_eq!(s.rank, 6);
    }
}
