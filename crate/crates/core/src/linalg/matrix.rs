use std::fmt;
use std::ops::{Index, IndexMut};

use crate::ring::{Cover, Elem};

/// Dense row-major matrix over a cover ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    cover: Cover,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(cover: Cover, rows: usize, cols: usize) -> Mat {
        Mat { cover, rows, cols, data: vec![cover.zero(); rows * cols] }
    }

    pub fn identity(cover: Cover, n: usize) -> Mat {
        let mut m = Mat::zeros(cover, n, n);
        for i in 0..n {
            m[(i, i)] = cover.one();
        }
        m
    }

    pub fn from_rows(cover: Cover, rows: Vec<Vec<Elem>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { cover, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Integer-literal convenience constructor.
    pub fn from_ints(cover: Cover, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            cover,
            rows.iter().map(|r| r.iter().map(|&v| cover.from_i64(v)).collect()).collect(),
        )
    }

    pub fn from_cols(cover: Cover, rows: usize, cols: &[Vec<Elem>]) -> Mat {
        let mut m = Mat::zeros(cover, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, e) in col.iter().enumerate() {
                m[(i, j)] = e.clone();
            }
        }
        m
    }

    pub fn diagonal(cover: Cover, diag: &[Elem]) -> Mat {
        let mut m = Mat::zeros(cover, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn scalar(cover: Cover, n: usize, s: &Elem) -> Mat {
        let mut m = Mat::zeros(cover, n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn cover(&self) -> Cover {
        self.cover
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.cover.is_zero(e))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let c = self.cover;
        let mut out = Mat::zeros(c, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if c.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !c.is_zero(b) {
                        out[(i, j)] = c.mul_add(&out[(i, j)], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        let c = self.cover;
        (0..self.rows)
            .map(|i| {
                let mut acc = c.zero();
                for (k, x) in v.iter().enumerate() {
                    acc = c.mul_add(&acc, &self[(i, k)], x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        let c = self.cover;
        Mat {
            cover: c,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| c.add(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        self.map(|c, e| c.neg(e))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn map(&self, f: impl Fn(Cover, &Elem) -> Elem) -> Mat {
        Mat {
            cover: self.cover,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| f(self.cover, e)).collect(),
        }
    }

    pub fn scale(&self, s: &Elem) -> Mat {
        self.map(|c, e| c.mul(s, e))
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cover, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in hcat");
        let mut out = Mat::zeros(self.cover, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn hcat_all(cover: Cover, rows: usize, parts: &[&Mat]) -> Mat {
        parts.iter().fold(Mat::zeros(cover, rows, 0), |acc, m| acc.hcat(m))
    }

    pub fn vcat(&self, other: &Mat) -> Mat {
        self.transpose().hcat(&other.transpose()).transpose()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.cover, idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(r, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.cover, self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out[(i, c)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn top_rows(&self, n: usize) -> Mat {
        self.select_rows(&(0..n).collect::<Vec<_>>())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let c = self.cover;
        let mut out = Mat::zeros(c, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if c.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = c.mul(a, &other[(k, l)]);
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.cover, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Column-major flattening into a single column vector.
    pub fn vectorize(&self) -> Vec<Elem> {
        (0..self.cols).flat_map(|j| self.col(j)).collect()
    }

    pub fn unvectorize(cover: Cover, rows: usize, cols: usize, v: &[Elem]) -> Mat {
        assert_eq!(v.len(), rows * cols);
        let mut out = Mat::zeros(cover, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                out[(i, j)] = v[j * rows + i].clone();
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += q * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, q: &Elem) {
        let c = self.cover;
        if c.is_zero(q) {
            return;
        }
        for j in 0..self.cols {
            let s = self[(source, j)].clone();
            if !c.is_zero(&s) {
                self[(target, j)] = c.mul_add(&self[(target, j)], q, &s);
            }
        }
    }

    /// `col[target] += q * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, q: &Elem) {
        let c = self.cover;
        if c.is_zero(q) {
            return;
        }
        for i in 0..self.rows {
            let s = self[(i, source)].clone();
            if !c.is_zero(&s) {
                self[(i, target)] = c.mul_add(&self[(i, target)], q, &s);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, u: &Elem) {
        for j in 0..self.cols {
            self[(i, j)] = self.cover.mul(&self[(i, j)], u);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, u: &Elem) {
        for i in 0..self.rows {
            self[(i, j)] = self.cover.mul(&self[(i, j)], u);
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Elem;

    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
