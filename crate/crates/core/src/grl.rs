//! Generalized Roth-Lempel codes: parameter records, generator and
//! parity-check matrices, and the symmetric-function quantities their
//! criteria are stated in.
//!
//! A GRL code of dimension `k` evaluates `f(x) = f_0 + ... + f_{k-1} x^{k-1}`
//! at distinct points `alpha_i` with nonzero column multipliers `v_i`, then
//! appends `l` coordinates `(f_{k-l}, ..., f_{k-1}) * A` for an invertible
//! `l x l` mixing matrix `A`.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::matrix::{has_duplicates, Mat};

/// A validated GRL parameter record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrlSpec {
    field: Field,
    alpha: Vec<Fe>,
    v: Vec<Fe>,
    a: Mat,
    k: usize,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::SpecInvariantViolated(msg.into())
}

impl GrlSpec {
    pub fn new(field: &Field, alpha: Vec<Fe>, v: Vec<Fe>, a: Mat, k: usize) -> Result<GrlSpec> {
        if a.field() != field
            || alpha.iter().chain(&v).any(|&x| !field.contains(x))
        {
            return Err(Error::FieldMismatch);
        }
        if has_duplicates(&alpha) {
            return Err(invalid("alpha entries must be distinct"));
        }
        if v.len() != alpha.len() {
            return Err(invalid(format!(
                "v has {} entries but alpha has {}",
                v.len(),
                alpha.len()
            )));
        }
        if v.iter().any(|x| x.is_zero()) {
            return Err(invalid("v entries must be nonzero"));
        }
        if !a.is_square() || a.rows() == 0 {
            return Err(invalid("mixing matrix A must be square and nonempty"));
        }
        let (n, l, q) = (alpha.len(), a.rows(), field.order() as usize);
        if !(l <= k && k < n && n <= q) {
            return Err(invalid(format!(
                "parameters must satisfy l+1 <= k+1 <= n <= q, got l={l}, k={k}, n={n}, q={q}"
            )));
        }
        if a.det()?.is_zero() {
            return Err(invalid("mixing matrix A must be invertible"));
        }
        Ok(GrlSpec {
            field: field.clone(),
            alpha,
            v,
            a,
            k,
        })
    }

    /// All column multipliers equal to one.
    pub fn unscaled(field: &Field, alpha: Vec<Fe>, a: Mat, k: usize) -> Result<GrlSpec> {
        let v = vec![Fe::ONE; alpha.len()];
        GrlSpec::new(field, alpha, v, a, k)
    }

    pub fn with_v(&self, v: Vec<Fe>) -> Result<GrlSpec> {
        GrlSpec::new(&self.field, self.alpha.clone(), v, self.a.clone(), self.k)
    }

    pub fn with_mixing(&self, a: Mat) -> Result<GrlSpec> {
        GrlSpec::new(&self.field, self.alpha.clone(), self.v.clone(), a, self.k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &[Fe] {
        &self.alpha
    }

    pub fn v(&self) -> &[Fe] {
        &self.v
    }

    pub fn mixing(&self) -> &Mat {
        &self.a
    }

    /// Number of evaluation points.
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.a.rows()
    }

    /// Code length `n + l`.
    pub fn length(&self) -> usize {
        self.n() + self.l()
    }

    /// The `k x (n + l)` generator: column `j < n` is
    /// `v_j (1, alpha_j, ..., alpha_j^{k-1})^T`; the last `l` columns are zero
    /// except in the bottom `l` rows, which hold `A`.
    pub fn generator(&self) -> Mat {
        let f = &self.field;
        let (n, k, l) = (self.n(), self.k, self.l());
        let mut rows = vec![vec![Fe::ZERO; n + l]; k];
        for (j, (&a, &v)) in self.alpha.iter().zip(&self.v).enumerate() {
            let mut x = v;
            for row in rows.iter_mut() {
                row[j] = x;
                x = f.mul(x, a);
            }
        }
        for t in 0..l {
            rows[k - l + t][n..].copy_from_slice(self.a.row(t));
        }
        Mat::from_rows(f, &rows).expect("rectangular")
    }

    /// The `(n + 3 - k) x (n + 3)` parity-check matrix for `l = 3`: column
    /// `i < n` is `(u_i / v_i)(1, alpha_i, ..., alpha_i^{n-k+2})^T`, and the
    /// bottom three rows of the tail block hold `B = M^T (A^T)^{-1}`.
    pub fn parity_check(&self) -> Result<Mat> {
        if self.l() != 3 {
            return Err(Error::WrongMixingSize(self.l()));
        }
        let f = &self.field;
        let n = self.n();
        let rows_h = n + 3 - self.k;
        let u = ui_coefficients(f, &self.alpha)?;
        let b = mixing_dual_block(&self.a, &m_matrix(f, &self.alpha)?)?;
        let mut rows = vec![vec![Fe::ZERO; n + 3]; rows_h];
        for i in 0..n {
            let mut x = f.div(u.u[i], self.v[i])?;
            for row in rows.iter_mut() {
                row[i] = x;
                x = f.mul(x, self.alpha[i]);
            }
        }
        for t in 0..3 {
            rows[rows_h - 3 + t][n..].copy_from_slice(b.row(t));
        }
        Mat::from_rows(f, &rows)
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::from_generator(&self.generator()).expect("generator has rank k")
    }
}

/// `B = M^T (A^T)^{-1}`, so that `A B^T = M` for symmetric `M`.
pub fn mixing_dual_block(a: &Mat, m: &Mat) -> Result<Mat> {
    m.transpose().matmul(&a.transpose().invert()?)
}

/// Elementary symmetric data of a set of distinct elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymSums {
    /// Sum of the elements.
    pub e1: Fe,
    /// Sum of products of unordered pairs.
    pub e2: Fe,
    pub sum_sq: Fe,
    /// `sum_sq + e2`, equal to `e1^2 - e2` and to the complete homogeneous
    /// sum of degree two.
    pub sq_plus_e2: Fe,
    /// `sum_sq - e2`.
    pub sq_minus_e2: Fe,
}

impl SymSums {
    pub fn of(field: &Field, subset: &[Fe]) -> Result<SymSums> {
        if has_duplicates(subset) {
            return Err(Error::DuplicateElement);
        }
        Ok(SymSums::of_distinct(field, subset))
    }

    pub(crate) fn of_distinct(f: &Field, subset: &[Fe]) -> SymSums {
        let mut e1 = Fe::ZERO;
        let mut e2 = Fe::ZERO;
        let mut sum_sq = Fe::ZERO;
        for &x in subset {
            e2 = f.add(e2, f.mul(e1, x));
            e1 = f.add(e1, x);
            sum_sq = f.add(sum_sq, f.mul(x, x));
        }
        SymSums {
            e1,
            e2,
            sum_sq,
            sq_plus_e2: f.add(sum_sq, e2),
            sq_minus_e2: f.sub(sum_sq, e2),
        }
    }
}

/// `u_i = prod_{j != i} (alpha_i - alpha_j)^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UiVector {
    pub u: Vec<Fe>,
}

impl UiVector {
    /// `sum_i u_i alpha_i^j`.
    pub fn power_sum(&self, field: &Field, alpha: &[Fe], j: u64) -> Fe {
        field.sum(
            self.u
                .iter()
                .zip(alpha)
                .map(|(&u, &a)| field.mul(u, field.powu(a, j))),
        )
    }
}

pub fn ui_coefficients(field: &Field, alpha: &[Fe]) -> Result<UiVector> {
    if alpha.len() < 2 {
        return Err(invalid("u-coefficients need at least two points"));
    }
    if has_duplicates(alpha) {
        return Err(Error::DuplicateElement);
    }
    let u = alpha
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = field.product(
                alpha
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &aj)| field.sub(ai, aj)),
            );
            field.inv(prod)
        })
        .collect::<Result<_>>()?;
    Ok(UiVector { u })
}

/// The symmetric matrix `[[0, 0, -1], [0, -1, -e1], [-1, -e1, -h]]` over all
/// evaluation points, where `e1 = sum u_i alpha_i^n` and
/// `h = sum u_i alpha_i^{n+1} = sum alpha^2 + e2`.
pub fn m_matrix(field: &Field, alpha: &[Fe]) -> Result<Mat> {
    let s = SymSums::of(field, alpha)?;
    let m1 = field.neg(Fe::ONE);
    let ne1 = field.neg(s.e1);
    let nr = field.neg(s.sq_plus_e2);
    Mat::from_rows(
        field,
        &[
            vec![Fe::ZERO, Fe::ZERO, m1],
            vec![Fe::ZERO, m1, ne1],
            vec![m1, ne1, nr],
        ],
    )
}

/// Row layouts of the three-parameter anti-triangular mixing matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// Rows `(mu, delta, 1), (tau, 1, 0), (1, 0, 0)`.
    Cor33,
    /// Rows `(mu, tau, 1), (delta, 1, 0), (1, 0, 0)`.
    #[serde(rename = "selfdual")]
    SelfDual,
}

/// Always invertible, with determinant `-1`.
pub fn special_a(field: &Field, mu: Fe, delta: Fe, tau: Fe, layout: Layout) -> Mat {
    let (o, z) = (Fe::ONE, Fe::ZERO);
    let rows = match layout {
        Layout::Cor33 => [[mu, delta, o], [tau, o, z], [o, z, z]],
        Layout::SelfDual => [[mu, tau, o], [delta, o, z], [o, z, z]],
    };
    let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.to_vec()).collect();
    Mat::from_rows(field, &rows).expect("3x3")
}

/// Systematic form `(I_k | B)` of a Reed-Solomon generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCauchyData {
    /// `prod_{s <= k, s != i} (alpha_i - alpha_s)` for `i <= k`.
    pub etas_left: Vec<Fe>,
    /// `prod_{s <= k} (alpha_{k+j} - alpha_s)` for `j <= N - k`.
    pub etas_right: Vec<Fe>,
    /// `B[i][j] = eta_{k+j} eta_i^{-1} / (alpha_{k+j} - alpha_i)`.
    pub b: Mat,
}

impl RsCauchyData {
    pub fn generator(&self) -> Mat {
        let k = self.b.rows();
        Mat::identity(self.b.field(), k)
            .hstack(&self.b)
            .expect("same row count")
    }
}

pub fn rs_systematic(field: &Field, alpha: &[Fe], k: usize) -> Result<RsCauchyData> {
    if has_duplicates(alpha) {
        return Err(Error::DuplicateElement);
    }
    if k == 0 || k >= alpha.len() {
        return Err(invalid(format!(
            "systematic form needs 0 < k < N, got k={k}, N={}",
            alpha.len()
        )));
    }
    let f = field;
    let (head, tail) = alpha.split_at(k);
    let etas_left: Vec<Fe> = head
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            f.product(
                head.iter()
                    .enumerate()
                    .filter(|&(s, _)| s != i)
                    .map(|(_, &as_)| f.sub(ai, as_)),
            )
        })
        .collect();
    let etas_right: Vec<Fe> = tail
        .iter()
        .map(|&x| f.product(head.iter().map(|&as_| f.sub(x, as_))))
        .collect();
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let inv_eta = f.inv(etas_left[i])?;
        let row = tail
            .iter()
            .zip(&etas_right)
            .map(|(&x, &eta)| f.div(f.mul(eta, inv_eta), f.sub(x, head[i])))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(RsCauchyData {
        etas_left,
        etas_right,
        b: Mat::from_rows(f, &rows)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn fes(codes: &[u32]) -> Vec<Fe> {
        codes.iter().map(|&c| Fe::from_code(c)).collect()
    }

    fn gf11_mds_spec() -> GrlSpec {
        let f = gf(11);
        let a = special_a(&f, Fe::from_code(1), Fe::from_code(8), Fe::from_code(4), Layout::Cor33);
        GrlSpec::unscaled(&f, fes(&[0, 1, 2, 4, 5]), a, 4).unwrap()
    }

    fn gf13_selfdual_spec() -> GrlSpec {
        let f = gf(13);
        let a = special_a(&f, Fe::from_code(10), Fe::from_code(3), Fe::from_code(9), Layout::SelfDual);
        GrlSpec::new(&f, fes(&[1, 4, 5, 6, 9]), fes(&[6, 3, 1, 3, 6]), a, 4).unwrap()
    }

    #[test]
    fn sym_sums_table_rows() {
        let f = gf(11);
        let j = SymSums::of(&f, &fes(&[0, 1, 2])).unwrap();
        assert_eq!((j.e1, j.e2), (Fe::from_code(3), Fe::from_code(2)));
        let i = SymSums::of(&f, &fes(&[1, 2])).unwrap();
        assert_eq!(i.sum_sq, Fe::from_code(5));
        assert_eq!(i.e2, Fe::from_code(2));
        assert_eq!(i.sq_plus_e2, Fe::from_code(7));
        let single = SymSums::of(&f, &fes(&[6])).unwrap();
        assert_eq!((single.e1, single.e2, single.sq_plus_e2), (Fe::from_code(6), Fe::ZERO, Fe::from_code(3)));
        assert_eq!(SymSums::of(&f, &fes(&[1, 1])).unwrap_err(), Error::DuplicateElement);
    }

    #[test]
    fn u_coefficients_examples() {
        let u = ui_coefficients(&gf(13), &fes(&[1, 4, 5, 6, 9])).unwrap();
        assert_eq!(u.u, fes(&[12, 3, 9, 3, 12]));
        let u = ui_coefficients(&gf(19), &fes(&[2, 3, 6, 16, 17])).unwrap();
        assert_eq!(u.u, fes(&[5, 4, 17, 5, 7]));
        // (0-1)(0-2) = 2 -> 3; (1-0)(1-2) = -1 -> 4; (2-0)(2-1) = 2 -> 3
        let u = ui_coefficients(&gf(5), &fes(&[0, 1, 2])).unwrap();
        assert_eq!(u.u, fes(&[3, 4, 3]));
        assert_eq!(ui_coefficients(&gf(5), &fes(&[1, 1])).unwrap_err(), Error::DuplicateElement);
    }

    #[test]
    fn gf11_mds_generator() {
        let g = gf11_mds_spec().generator();
        let expected = Mat::from_codes(
            g.field(),
            &[
                [1, 1, 1, 1, 1, 0, 0, 0],
                [0, 1, 2, 4, 5, 1, 8, 1],
                [0, 1, 4, 5, 3, 4, 1, 0],
                [0, 1, 8, 9, 4, 1, 0, 0],
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn gf13_selfdual_generator() {
        let g = gf13_selfdual_spec().generator();
        let expected = Mat::from_codes(
            g.field(),
            &[
                [6, 3, 1, 3, 6, 0, 0, 0],
                [6, 12, 5, 5, 2, 10, 9, 1],
                [6, 9, 12, 4, 5, 3, 1, 0],
                [6, 10, 8, 11, 6, 1, 0, 0],
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn identity_mixing_tail() {
        let f = gf(7);
        let spec = GrlSpec::unscaled(&f, fes(&[1, 2, 3, 4, 5]), Mat::identity(&f, 3), 4).unwrap();
        let g = spec.generator();
        let tail = g.submatrix(&[1, 2, 3], &[5, 6, 7]).unwrap();
        assert_eq!(tail, Mat::identity(&f, 3));
        assert!(g.submatrix(&[0], &[5, 6, 7]).unwrap().is_zero());
        // B = M^T when A = I
        let h = spec.parity_check().unwrap();
        let b = h.submatrix(&[1, 2, 3], &[5, 6, 7]).unwrap();
        assert_eq!(b, m_matrix(&f, spec.alpha()).unwrap());
    }

    #[test]
    fn general_l_generator() {
        let f = gf(7);
        let a = Mat::from_codes(&f, &[[2, 1], [1, 1]]).unwrap();
        let spec = GrlSpec::unscaled(&f, fes(&[0, 1, 2, 3]), a.clone(), 3).unwrap();
        let g = spec.generator();
        assert_eq!(g.shape(), (3, 6));
        assert_eq!(g.submatrix(&[1, 2], &[4, 5]).unwrap(), a);
        assert_eq!(spec.parity_check().unwrap_err(), Error::WrongMixingSize(2));
    }

    #[test]
    fn spec_validation() {
        let f = gf(7);
        let a = Mat::identity(&f, 3);
        let err = GrlSpec::unscaled(&f, fes(&[1, 1, 2, 3, 4]), a.clone(), 4).unwrap_err();
        assert_eq!(err, Error::SpecInvariantViolated("alpha entries must be distinct".into()));
        assert!(GrlSpec::new(&f, fes(&[1, 2, 3, 4, 5]), fes(&[1, 0, 1, 1, 1]), a.clone(), 4).is_err());
        // k + 1 <= n
        assert!(GrlSpec::unscaled(&f, fes(&[1, 2, 3, 4]), a.clone(), 4).is_err());
        // l <= k
        assert!(GrlSpec::unscaled(&f, fes(&[1, 2, 3, 4]), a.clone(), 2).is_err());
        let singular = Mat::from_codes(&f, &[[1, 2, 0], [2, 4, 0], [0, 0, 1]]).unwrap();
        assert!(GrlSpec::unscaled(&f, fes(&[1, 2, 3, 4, 5]), singular, 4).is_err());
        let other_field = Mat::identity(&gf(5), 3);
        assert_eq!(
            GrlSpec::unscaled(&f, fes(&[1, 2, 3, 4, 5]), other_field, 4).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn m_matrix_examples() {
        let f = gf(13);
        // e1 = 12, sum_sq = 3, e2 = 12
        let m = m_matrix(&f, &fes(&[1, 4, 5, 6, 9])).unwrap();
        assert_eq!(m, Mat::from_codes(&f, &[[0, 0, 12], [0, 12, 1], [12, 1, 11]]).unwrap());
        let f = gf(19);
        // e1 = 6, sum_sq = 5, e2 = 6
        let m = m_matrix(&f, &fes(&[2, 3, 6, 16, 17])).unwrap();
        assert_eq!(m, Mat::from_codes(&f, &[[0, 0, 18], [0, 18, 13], [18, 13, 8]]).unwrap());
        // e1 = 0 over GF(7): {1, 2, 4} sums to 7; R = 21 - 14 = 0
        let f = gf(7);
        let m = m_matrix(&f, &fes(&[1, 2, 4])).unwrap();
        assert_eq!(m, Mat::from_codes(&f, &[[0, 0, 6], [0, 6, 0], [6, 0, 0]]).unwrap());
    }

    #[test]
    fn special_a_layouts() {
        let f = gf(11);
        let a = special_a(&f, Fe::from_code(1), Fe::from_code(8), Fe::from_code(4), Layout::Cor33);
        assert_eq!(a, Mat::from_codes(&f, &[[1, 8, 1], [4, 1, 0], [1, 0, 0]]).unwrap());
        let f = gf(13);
        let a = special_a(&f, Fe::from_code(10), Fe::from_code(3), Fe::from_code(9), Layout::SelfDual);
        assert_eq!(a, Mat::from_codes(&f, &[[10, 9, 1], [3, 1, 0], [1, 0, 0]]).unwrap());
        // (A A^T)[0][0] = mu^2 + tau^2 + 1 = 182 = 0 mod 13
        let aat = a.matmul(&a.transpose()).unwrap();
        assert_eq!(aat.get(0, 0), f.from_int(182));
    }

    #[test]
    fn rs_systematic_gf5() {
        let f = gf(5);
        let alpha = fes(&[0, 1, 2, 3]);
        let d = rs_systematic(&f, &alpha, 2).unwrap();
        assert_eq!(d.etas_left, fes(&[4, 1]));
        assert_eq!(d.etas_right[0], Fe::from_code(2));
        assert_eq!(d.b.get(0, 0), Fe::from_code(4));
        let vdm = Mat::vandermonde(&f, &alpha, 2).unwrap();
        assert_eq!(vdm.eliminate().rref, d.generator().eliminate().rref);
        let single = rs_systematic(&f, &alpha, 3).unwrap();
        assert_eq!(single.b.shape(), (3, 1));
    }

    #[test]
    fn gf13_selfdual_parity_check() {
        let spec = gf13_selfdual_spec();
        let g = spec.generator();
        let h = spec.parity_check().unwrap();
        assert_eq!(h.shape(), (4, 8));
        assert!(g.matmul(&h.transpose()).unwrap().is_zero());
        assert_eq!(h.rank(), 4);
        // last row has self inner product 3 * 2 + 1 = 7, so the code is not self-dual
        let gram = g.matmul(&g.transpose()).unwrap();
        assert_eq!(gram.get(3, 3), Fe::from_code(7));
        assert_ne!(g.eliminate().rref, h.eliminate().rref);
    }

    #[test]
    fn small_power_sum_by_hand() {
        // alpha = (0, 1, 2) over GF(11): u = (1/2, -1, 1/2), sum u alpha^4 = -1 + 8 = 7
        let f = gf(11);
        let alpha = fes(&[0, 1, 2]);
        let u = ui_coefficients(&f, &alpha).unwrap();
        assert_eq!(u.power_sum(&f, &alpha, 4), Fe::from_code(7));
        let s = SymSums::of(&f, &alpha).unwrap();
        assert_eq!((s.sq_plus_e2, s.sq_minus_e2), (Fe::from_code(7), Fe::from_code(3)));
    }

    #[test]
    fn scaling_is_a_monomial_map() {
        let spec = gf13_selfdual_spec();
        let unscaled = spec.with_v(vec![Fe::ONE; 5]).unwrap();
        let mut scale = spec.v().to_vec();
        scale.extend([Fe::ONE; 3]);
        let id: Vec<usize> = (0..8).collect();
        assert_eq!(unscaled.code().apply_monomial(&id, &scale).unwrap(), spec.code());
    }

    fn distinct(f: &Field, picks: &[u32]) -> Vec<Fe> {
        let mut out = Vec::new();
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
        fn power_sum_branches(
            p in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19]),
            picks in prop::collection::vec(0u32..1000, 24),
            n in 3usize..=8,
        ) {
            let f = Field::prime(p).unwrap();
            let alpha = distinct(&f, &picks);
            let n = n.min(alpha.len());
            prop_assume!(n >= 3);
            let alpha = &alpha[..n];
            let u = ui_coefficients(&f, alpha).unwrap();
            prop_assert!(u.u.iter().all(|x| !x.is_zero()));
            for j in 0..=(n as u64 - 2) {
                prop_assert_eq!(u.power_sum(&f, alpha, j), Fe::ZERO);
            }
            let s = SymSums::of(&f, alpha).unwrap();
            prop_assert_eq!(u.power_sum(&f, alpha, n as u64 - 1), Fe::ONE);
            prop_assert_eq!(u.power_sum(&f, alpha, n as u64), s.e1);
            prop_assert_eq!(u.power_sum(&f, alpha, n as u64 + 1), s.sq_plus_e2);
            // Newton identities
            prop_assert_eq!(s.sq_plus_e2, f.sub(f.mul(s.e1, s.e1), s.e2));
            prop_assert_eq!(s.sum_sq, f.sub(f.mul(s.e1, s.e1), f.add(s.e2, s.e2)));
            // M is symmetric with det in {1, -1}
            let m = m_matrix(&f, alpha).unwrap();
            prop_assert_eq!(m.transpose(), m.clone());
            let det = m.det().unwrap();
            prop_assert!(det == Fe::ONE || det == f.neg(Fe::ONE));
        }

        #[test]
        fn special_a_determinant(
            p in prop::sample::select(vec![2u64, 3, 7, 13]),
            x in prop::collection::vec(0u32..1000, 3),
            cor in any::<bool>(),
        ) {
            let f = Field::prime(p).unwrap();
            let [mu, delta, tau] = [0, 1, 2].map(|i| Fe::from_code(x[i] % p as u32));
            let layout = if cor { Layout::Cor33 } else { Layout::SelfDual };
            prop_assert_eq!(special_a(&f, mu, delta, tau, layout).det().unwrap(), f.neg(Fe::ONE));
        }

        #[test]
        fn parity_check_annihilates_generator(
            (p, m) in prop::sample::select(vec![(7u64, 1u32), (2, 3), (11, 1), (13, 1), (19, 1)]),
            picks in prop::collection::vec(0u32..1000, 30),
            v_picks in prop::collection::vec(1u32..1000, 12),
            a_picks in prop::collection::vec(0u32..1000, 9),
            n_pick in 0usize..100,
            k_pick in 0usize..100,
        ) {
            let f = Field::new(p, m, None).unwrap();
            let q = f.order();
            let alpha = distinct(&f, &picks);
            prop_assume!(alpha.len() >= 4);
            let n = 4 + n_pick % (alpha.len().min(9) - 3);
            let alpha = alpha[..n].to_vec();
            let k = 3 + k_pick % (n - 3);
            let v: Vec<Fe> = v_picks[..n].iter().map(|&c| Fe::from_code(1 + c % (q - 1))).collect();
            let codes: Vec<Vec<u32>> = a_picks.chunks(3).map(|r| r.iter().map(|c| c % q).collect()).collect();
            let a = Mat::from_codes(&f, &codes).unwrap();
            prop_assume!(!a.det().unwrap().is_zero());
            let spec = GrlSpec::new(&f, alpha, v, a.clone(), k).unwrap();
            let h = spec.parity_check().unwrap();
            prop_assert_eq!(h.shape(), (n + 3 - k, n + 3));
            prop_assert!(spec.generator().matmul(&h.transpose()).unwrap().is_zero());
            prop_assert_eq!(h.rank(), n + 3 - k);
            let m = m_matrix(&f, spec.alpha()).unwrap();
            let b = mixing_dual_block(&a, &m).unwrap();
            prop_assert_eq!(a.matmul(&b.transpose()).unwrap(), m);
        }

        #[test]
        fn rs_systematic_row_space(
            p in prop::sample::select(vec![7u64, 11, 13, 17]),
            picks in prop::collection::vec(0u32..1000, 16),
            big_n in 3usize..9,
            k_pick in 0usize..100,
        ) {
            let f = Field::prime(p).unwrap();
            let alpha = distinct(&f, &picks);
            prop_assume!(alpha.len() >= big_n);
            let alpha = &alpha[..big_n];
            let k = 1 + k_pick % (big_n - 1);
            let d = rs_systematic(&f, alpha, k).unwrap();
            let vdm = Mat::vandermonde(&f, alpha, k).unwrap();
            prop_assert_eq!(vdm.eliminate().rref, d.generator());
        }
    }
}
