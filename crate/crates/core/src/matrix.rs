//! Dense matrices over a [`Field`] with exact Gauss-Jordan elimination.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};

/// A row-major dense matrix. Zero-row matrices are allowed (empty null spaces).
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Result of reducing a matrix to canonical reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rref: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Present iff the input was square.
    pub det: Option<Fe>,
}

impl Mat {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&x| !field.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fe::ONE;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("rows have different lengths".into()));
        }
        Mat::new(field, rows.len(), cols, rows.concat())
    }

    /// Rows of raw element codes; convenient for literal matrices.
    pub fn from_codes<R: AsRef<[u32]>>(field: &Field, rows: &[R]) -> Result<Mat> {
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&c| Fe::from_code(c)).collect())
            .collect();
        Mat::from_rows(field, &rows)
    }

    /// The `k x n` matrix with entry `(i, j) = alpha_j^i`.
    pub fn vandermonde(field: &Field, alpha: &[Fe], k: usize) -> Result<Mat> {
        if alpha.iter().any(|&a| !field.contains(a)) {
            return Err(Error::FieldMismatch);
        }
        if has_duplicates(alpha) {
            return Err(Error::DuplicateEvaluationPoint);
        }
        let n = alpha.len();
        let mut m = Mat::zeros(field, k, n);
        for (j, &a) in alpha.iter().enumerate() {
            let mut x = Fe::ONE;
            for i in 0..k {
                m.data[i * n + j] = x;
                x = field.mul(x, a);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fe]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        self.row_iter()
            .map(|r| r.iter().map(|x| x.code()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(t, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch("addends differ in shape".into()));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Mat { data, ..self.clone() })
    }

    pub fn scale(&self, c: Fe) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Mat> {
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(Error::ShapeMismatch("submatrix index out of range".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Ok(Mat {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Mat> {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    /// Gauss-Jordan elimination to the canonical RREF: pivots are the leftmost
    /// nonzero entries, equal to one, and their columns are otherwise zero.
    pub fn eliminate(&self) -> Elimination {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut det = Fe::ONE;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.swap(p * cols + j, r * cols + j);
                }
                det = f.neg(det);
            }
            let pv = a[r * cols + c];
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("pivot is nonzero");
            for j in c..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = a[i * cols + c];
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let sub = f.mul(factor, a[r * cols + j]);
                    a[i * cols + j] = f.sub(a[i * cols + j], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let det = self
            .is_square()
            .then_some(if rank == rows { det } else { Fe::ZERO });
        Elimination {
            rref: Mat {
                field: f.clone(),
                rows,
                cols,
                data: a,
            },
            rank,
            pivots,
            det,
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank
    }

    pub fn det(&self) -> Result<Fe> {
        self.eliminate()
            .det
            .ok_or_else(|| Error::ShapeMismatch("determinant of a non-square matrix".into()))
    }

    pub fn invert(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(&self.field, n))?;
        let e = aug.eliminate();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        e.rref.submatrix(&rows, &cols)
    }

    /// Basis of `{x : self * x^T = 0}` as rows, one per free column in
    /// increasing order.
    pub fn nullspace(&self) -> Mat {
        let f = &self.field;
        let e = self.eliminate();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut out = Mat::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            out.data[b * self.cols + fc] = Fe::ONE;
            for (r, &pc) in e.pivots.iter().enumerate() {
                out.data[b * self.cols + pc] = f.neg(e.rref.get(r, fc));
            }
        }
        out
    }

    /// Text grid with right-aligned columns, using the field's element codec.
    pub fn render(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(|&x| self.field.format(x)).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Fe;

    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat<{}> {}x{} {:?}", self.field, self.rows, self.cols, self.to_codes())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn has_duplicates(xs: &[Fe]) -> bool {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn unit_upper_triangular() {
        let f = gf(11);
        let e = Mat::from_codes(&f, &[[1, 1], [0, 1]]).unwrap().eliminate();
        assert_eq!(e.rank, 2);
        assert_eq!(e.det, Some(Fe::ONE));
    }

    #[test]
    fn proportional_rows() {
        let f = gf(7);
        let m = Mat::from_codes(&f, &[[1, 2], [2, 4]]).unwrap();
        let e = m.eliminate();
        assert_eq!(e.rank, 1);
        assert_eq!(e.det, Some(Fe::ZERO));
        assert_eq!(m.invert(), Err(Error::Singular));
    }

    #[test]
    fn vandermonde_det_gf13() {
        let f = gf(13);
        let alpha = [Fe::from_code(1), Fe::from_code(4), Fe::from_code(5)];
        let v = Mat::vandermonde(&f, &alpha, 3).unwrap();
        assert_eq!(v.det().unwrap(), Fe::from_code(12));
    }

    #[test]
    fn vandermonde_matches_example_generator_block() {
        let f = gf(11);
        let alpha: Vec<Fe> = [0, 1, 2, 4, 5].map(Fe::from_code).to_vec();
        let v = Mat::vandermonde(&f, &alpha, 4).unwrap();
        let expected = Mat::from_codes(
            &f,
            &[[1, 1, 1, 1, 1], [0, 1, 2, 4, 5], [0, 1, 4, 5, 3], [0, 1, 8, 9, 4]],
        )
        .unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn vandermonde_rejects_duplicates() {
        let f = gf(5);
        let alpha = [Fe::from_code(1), Fe::from_code(1)];
        assert_eq!(
            Mat::vandermonde(&f, &alpha, 2).unwrap_err(),
            Error::DuplicateEvaluationPoint
        );
    }

    #[test]
    fn invert_mixing_matrix_gf13() {
        let f = gf(13);
        let a = Mat::from_codes(&f, &[[10, 9, 1], [3, 1, 0], [1, 0, 0]]).unwrap();
        assert_eq!(a.det().unwrap(), Fe::from_code(12));
        let inv = a.invert().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Mat::identity(&f, 3));
        assert_eq!(Mat::identity(&f, 3).invert().unwrap(), Mat::identity(&f, 3));
    }

    #[test]
    fn shapes() {
        let f = gf(7);
        let x = Mat::from_codes(&f, &[[1, 2, 3, 4], [5, 6, 0, 1], [2, 2, 2, 2], [3, 1, 4, 1]]).unwrap();
        assert_eq!(Mat::identity(&f, 4).matmul(&x).unwrap(), x);
        assert_eq!(x.select_columns(&[1, 2, 3]).unwrap().shape(), (4, 3));
        assert!(matches!(
            x.matmul(&Mat::zeros(&f, 3, 3)),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(Mat::new(&f, 2, 2, vec![Fe::ZERO; 3]), Err(Error::ShapeMismatch(_))));
        let other = Mat::identity(&gf(5), 4);
        assert_eq!(x.matmul(&other), Err(Error::FieldMismatch));
    }

    #[test]
    fn nullspace_small_cases() {
        let f2 = gf(2);
        let n = Mat::from_codes(&f2, &[[1, 1]]).unwrap().nullspace();
        assert_eq!(n, Mat::from_codes(&f2, &[[1, 1]]).unwrap());
        let f = gf(11);
        assert_eq!(Mat::identity(&f, 3).nullspace().rows(), 0);
    }

    #[test]
    fn nullspace_of_grl_generator() {
        let f = gf(11);
        let g = Mat::from_codes(
            &f,
            &[
                [1, 1, 1, 1, 1, 0, 0, 0],
                [0, 1, 2, 4, 5, 1, 8, 1],
                [0, 1, 4, 5, 3, 4, 1, 0],
                [0, 1, 8, 9, 4, 1, 0, 0],
            ],
        )
        .unwrap();
        let n = g.nullspace();
        assert_eq!(n.shape(), (4, 8));
        assert!(g.matmul(&n.transpose()).unwrap().is_zero());
        assert_eq!(n.rank(), 4);
    }

    /// For `len` points: rows of powers `0..=len-2` followed by power `len+1`.
    fn skipped_row_det(f: &Field, pts: &[Fe]) -> Fe {
        let len = pts.len();
        let n = len + 2;
        let mut rows = Vec::new();
        for pw in (0..=n - 4).chain(std::iter::once(n - 1)) {
            rows.push(pts.iter().map(|&a| f.powu(a, pw as u64)).collect::<Vec<_>>());
        }
        Mat::from_rows(f, &rows).unwrap().det().unwrap()
    }

    fn distinct_points(f: &Field, picks: &[u32]) -> Vec<Fe> {
        let mut out: Vec<Fe> = Vec::new();
        for &c in picks {
            let x = Fe::from_code(c % f.order());
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn skipped_row_vandermonde_identity(
            p in prop::sample::select(vec![7u64, 11, 13, 17, 19, 23]),
            picks in prop::collection::vec(0u32..1000, 3..12),
            len in 3usize..=6,
        ) {
            let f = Field::prime(p).unwrap();
            let pts = distinct_points(&f, &picks);
            prop_assume!(pts.len() >= len);
            let pts = &pts[..len];
            let mut sum_sq = Fe::ZERO;
            let mut e2 = Fe::ZERO;
            let mut vdm = Fe::ONE;
            for i in 0..len {
                sum_sq = f.add(sum_sq, f.mul(pts[i], pts[i]));
                for j in i + 1..len {
                    e2 = f.add(e2, f.mul(pts[i], pts[j]));
                    vdm = f.mul(vdm, f.sub(pts[j], pts[i]));
                }
            }
            let rhs = f.mul(f.add(sum_sq, e2), vdm);
            prop_assert_eq!(skipped_row_det(&f, pts), rhs);
        }

        #[test]
        fn rank_invariants(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            rows in 1usize..5,
            cols in 1usize..6,
            seed in prop::collection::vec(0u32..1000, 64),
        ) {
            let f = Field::prime(p).unwrap();
            let data: Vec<Fe> = seed[..rows * cols].iter().map(|&c| Fe::from_code(c % f.order())).collect();
            let m = Mat::new(&f, rows, cols, data).unwrap();
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let ns = m.nullspace();
            prop_assert_eq!(ns.rows(), cols - m.rank());
            if ns.rows() > 0 {
                prop_assert!(m.matmul(&ns.transpose()).unwrap().is_zero());
            }
            // an invertible lower-unitriangular row operation keeps the rank
            let mut p_mat = Mat::identity(&f, rows);
            for i in 0..rows {
                for j in 0..i {
                    p_mat.data[i * rows + j] = Fe::from_code(seed[40 + i + j] % f.order());
                }
            }
            prop_assert_eq!(p_mat.matmul(&m).unwrap().rank(), m.rank());
            let e = m.eliminate();
            prop_assert_eq!(e.rref.eliminate().rref, e.rref);
        }

        #[test]
        fn inverse_roundtrip(seed in prop::collection::vec(0u32..13, 9)) {
            let f = Field::prime(13).unwrap();
            let m = Mat::new(&f, 3, 3, seed.iter().map(|&c| Fe::from_code(c)).collect()).unwrap();
            match m.invert() {
                Ok(inv) => {
                    prop_assert_eq!(m.matmul(&inv).unwrap(), Mat::identity(&f, 3));
                    prop_assert_ne!(m.det().unwrap(), Fe::ZERO);
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::Singular);
                    prop_assert_eq!(m.det().unwrap(), Fe::ZERO);
                }
            }
        }
    }
}
