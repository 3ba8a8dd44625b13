//! Linear codes: duals, exact distance and weight distribution, MDS/AMDS
//! classification, self-duality, Schur squares and monomial maps.

use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::matrix::Mat;

/// Default cap on the number of projective classes enumerated.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// `A_w` = number of codewords of Hamming weight `w`, for `w = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Least nonzero weight carried by some codeword.
    pub fn min_weight(&self) -> Option<usize> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| match w {
                0 => c.to_string(),
                1 if c == 1 => "x".to_string(),
                1 => format!("{c}x"),
                _ if c == 1 => format!("x^{w}"),
                _ => format!("{c}x^{w}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeClass {
    /// `d = n - k + 1`.
    Mds,
    /// `d = n - k`.
    Amds,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub class: CodeClass,
    /// Both the code and its dual are AMDS.
    pub nmds: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match (self.class, self.nmds) {
            (_, true) => "NMDS",
            (CodeClass::Mds, _) => "MDS",
            (CodeClass::Amds, _) => "AMDS",
            (CodeClass::Other, _) => "other",
        };
        write!(f, "[{},{},{}] {}", self.n, self.k, self.d, label)
    }
}

/// One-sided non-GRS certificate from the Schur-square dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonGrsWitness {
    pub certified: bool,
    pub schur_dim: usize,
    /// `2k - 1`, the Schur-square dimension of any GRS code with `2k - 1 <= n`.
    pub threshold: usize,
}

#[derive(Clone, Default)]
struct Cache {
    wef: OnceLock<WeightEnumerator>,
    schur_dim: OnceLock<usize>,
    parity: OnceLock<Mat>,
}

/// A nonzero linear code, stored by the canonical RREF of a generator.
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    gen: Mat,
    cache: Cache,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{},{}] over {} {:?}", self.n, self.k, self.field, self.gen.to_codes())
    }
}

/// Number of projective points of `GF(q)^k`, i.e. `(q^k - 1)/(q - 1)`.
pub fn projective_count(q: u32, k: usize) -> u128 {
    (0..k).fold(0u128, |acc, _| acc.saturating_mul(q as u128).saturating_add(1))
}

impl LinearCode {
    /// The row space of `g`. Rank-deficient inputs are allowed.
    pub fn from_generator(g: &Mat) -> Result<LinearCode> {
        let e = g.eliminate();
        if e.rank == 0 {
            return Err(Error::ZeroCode);
        }
        let rows: Vec<usize> = (0..e.rank).collect();
        let cols: Vec<usize> = (0..g.cols()).collect();
        let gen = e.rref.submatrix(&rows, &cols)?;
        Ok(LinearCode {
            field: g.field().clone(),
            n: g.cols(),
            k: e.rank,
            gen,
            cache: Cache::default(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Canonical RREF generator (`k x n`).
    pub fn generator(&self) -> &Mat {
        &self.gen
    }

    /// A parity-check matrix: the canonical null-space basis of the generator.
    /// Has zero rows when `k = n`.
    pub fn parity_check(&self) -> &Mat {
        self.cache.parity.get_or_init(|| self.gen.nullspace())
    }

    pub fn dual(&self) -> Result<LinearCode> {
        if self.k == self.n {
            return Err(Error::ZeroCode);
        }
        LinearCode::from_generator(self.parity_check())
    }

    fn check_budget(&self, budget: u64) -> Result<()> {
        let required = projective_count(self.field.order(), self.k);
        if required > budget as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        Ok(())
    }

    /// Exact weight distribution, enumerating one codeword per nonzero
    /// scalar class (leading message coefficient equal to one) and scaling
    /// the counts by `q - 1`.
    pub fn weight_enumerator(&self, budget: u64) -> Result<WeightEnumerator> {
        if let Some(w) = self.cache.wef.get() {
            return Ok(w.clone());
        }
        self.check_budget(budget)?;
        let wef = self.enumerate_projective();
        Ok(self.cache.wef.get_or_init(|| wef).clone())
    }

    pub fn min_distance(&self, budget: u64) -> Result<usize> {
        Ok(self
            .weight_enumerator(budget)?
            .min_weight()
            .expect("a nonzero code has a nonzero codeword"))
    }

    fn enumerate_projective(&self) -> WeightEnumerator {
        let f = &self.field;
        let (n, k, q) = (self.n, self.k, f.order() as usize);
        // scaled[j][c] = c * row_j
        let scaled: Vec<Vec<Vec<Fe>>> = (0..k)
            .map(|j| {
                f.elements()
                    .map(|c| self.gen.row(j).iter().map(|&x| f.mul(c, x)).collect())
                    .collect()
            })
            .collect();
        let mut counts = vec![0u64; n + 1];
        for lead in 0..k {
            let free = k - 1 - lead;
            let total = (q as u64).pow(free as u32);
            let partial = (0..total)
                .into_par_iter()
                .fold(
                    || (vec![0u64; n + 1], vec![Fe::ZERO; n]),
                    |(mut acc, mut word), mut t| {
                        word.copy_from_slice(self.gen.row(lead));
                        for row in scaled.iter().skip(lead + 1) {
                            let c = (t % q as u64) as usize;
                            t /= q as u64;
                            if c != 0 {
                                for (w, &x) in word.iter_mut().zip(&row[c]) {
                                    *w = f.add(*w, x);
                                }
                            }
                        }
                        acc[word.iter().filter(|x| !x.is_zero()).count()] += 1;
                        (acc, word)
                    },
                )
                .map(|(acc, _)| acc)
                .reduce(
                    || vec![0u64; n + 1],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                );
            counts.iter_mut().zip(partial).for_each(|(x, y)| *x += y);
        }
        for c in counts.iter_mut().skip(1) {
            *c *= (q - 1) as u64;
        }
        counts[0] = 1;
        WeightEnumerator { counts }
    }

    /// MDS/AMDS status. The dual distance for NMDS comes from
    /// [`LinearCode::min_dependent_columns`].
    pub fn classify(&self, budget: u64) -> Result<Classification> {
        let d = self.min_distance(budget)?;
        let class = if d == self.n - self.k + 1 {
            CodeClass::Mds
        } else if d == self.n - self.k {
            CodeClass::Amds
        } else {
            CodeClass::Other
        };
        let nmds = class == CodeClass::Amds && self.min_dependent_columns() == Some(self.k);
        Ok(Classification {
            n: self.n,
            k: self.k,
            d,
            class,
            nmds,
        })
    }

    /// Every `k`-subset of generator columns has full rank.
    pub fn all_k_columns_independent(&self) -> bool {
        (0..self.n).combinations(self.k).all(|cols| {
            self.gen
                .select_columns(&cols)
                .expect("indices in range")
                .rank()
                == self.k
        })
    }

    /// Size of the smallest linearly dependent set of generator columns,
    /// which is the minimum distance of the dual; `None` if all `n` columns
    /// are independent (`k = n`).
    pub fn min_dependent_columns(&self) -> Option<usize> {
        (1..=self.n).find(|&s| {
            (0..self.n).combinations(s).any(|cols| {
                self.gen
                    .select_columns(&cols)
                    .expect("indices in range")
                    .rank()
                    < s
            })
        })
    }

    /// Dimension of the span of all componentwise products of generator rows.
    pub fn schur_square_dim(&self) -> usize {
        *self.cache.schur_dim.get_or_init(|| {
            let f = &self.field;
            let mut rows = Vec::with_capacity(self.k * (self.k + 1) / 2);
            for i in 0..self.k {
                for j in i..self.k {
                    rows.push(
                        self.gen
                            .row(i)
                            .iter()
                            .zip(self.gen.row(j))
                            .map(|(&a, &b)| f.mul(a, b))
                            .collect::<Vec<_>>(),
                    );
                }
            }
            Mat::from_rows(f, &rows).expect("equal row lengths").rank()
        })
    }

    /// Certifies non-GRS when `2k - 1 <= n` and the Schur square is larger
    /// than `2k - 1`. An uncertified result says nothing.
    pub fn non_grs_witness(&self) -> NonGrsWitness {
        let threshold = 2 * self.k - 1;
        let schur_dim = self.schur_square_dim();
        NonGrsWitness {
            certified: threshold <= self.n && schur_dim > threshold,
            schur_dim,
            threshold,
        }
    }

    pub fn is_self_dual(&self) -> bool {
        self.n == 2 * self.k
            && self
                .gen
                .matmul(&self.gen.transpose())
                .expect("compatible shapes")
                .is_zero()
    }

    /// Column `j` of the image is `scale[j]` times column `perm[j]` of the
    /// original generator.
    pub fn apply_monomial(&self, perm: &[usize], scale: &[Fe]) -> Result<LinearCode> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidPermutation(self.n));
        }
        if scale.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "{} scale entries for length {}",
                scale.len(),
                self.n
            )));
        }
        if scale.iter().any(|s| s.is_zero()) {
            return Err(Error::ZeroScale);
        }
        if scale.iter().any(|&s| !self.field.contains(s)) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut data = Vec::with_capacity(self.k * self.n);
        for i in 0..self.k {
            for (j, &src) in perm.iter().enumerate() {
                data.push(f.mul(scale[j], self.gen.get(i, src)));
            }
        }
        LinearCode::from_generator(&Mat::new(f, self.k, self.n, data)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn gf11_mds() -> LinearCode {
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
        LinearCode::from_generator(&g).unwrap()
    }

    fn gf8_matrix(rows: &[&[&str]]) -> Mat {
        let f = Field::new(2, 3, None).unwrap();
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|t| f.parse(t).unwrap()).collect())
            .collect();
        Mat::from_rows(&f, &rows).unwrap()
    }

    fn g41() -> LinearCode {
        let g = gf8_matrix(&[
            &["1", "1", "1", "1", "1", "0", "1"],
            &["0", "1", "w", "w^3", "0", "1", "w^5"],
            &["0", "1", "w^2", "w^6", "1", "w^6", "w^2"],
        ]);
        LinearCode::from_generator(&g).unwrap()
    }

    /// Brute-force weight distribution over every message vector.
    fn naive_enumerator(c: &LinearCode) -> Vec<u64> {
        let f = c.field();
        let (n, k, q) = (c.len(), c.dim(), f.order() as u64);
        let mut counts = vec![0u64; n + 1];
        for t in 0..q.pow(k as u32) {
            let mut word = vec![Fe::ZERO; n];
            let mut rest = t;
            for i in 0..k {
                let coef = Fe::from_code((rest % q) as u32);
                rest /= q;
                for j in 0..n {
                    word[j] = f.add(word[j], f.mul(coef, c.generator().get(i, j)));
                }
            }
            counts[word.iter().filter(|x| !x.is_zero()).count()] += 1;
        }
        counts
    }

    #[test]
    fn row_space_determines_the_code() {
        let c = gf11_mds();
        let f = c.field().clone();
        let p = Mat::from_codes(&f, &[[1, 2, 0, 0], [0, 1, 0, 3], [5, 0, 1, 0], [0, 0, 0, 7]]).unwrap();
        let g2 = p.matmul(c.generator()).unwrap();
        assert_eq!(LinearCode::from_generator(&g2).unwrap(), c);
        let single = Mat::from_codes(&f, &[[0, 3, 0, 1]]).unwrap();
        assert_eq!(LinearCode::from_generator(&single).unwrap().dim(), 1);
        assert_eq!(
            LinearCode::from_generator(&Mat::zeros(&f, 2, 3)).unwrap_err(),
            Error::ZeroCode
        );
    }

    #[test]
    fn gf11_mds_parameters() {
        let c = gf11_mds();
        assert_eq!(c.min_distance(DEFAULT_BUDGET).unwrap(), 5);
        let cl = c.classify(DEFAULT_BUDGET).unwrap();
        assert_eq!(cl.class, CodeClass::Mds);
        assert_eq!(cl.to_string(), "[8,4,5] MDS");
        assert!(c.all_k_columns_independent());
        let w = c.non_grs_witness();
        assert_eq!((w.certified, w.schur_dim, w.threshold), (true, 8, 7));
    }

    #[test]
    fn g41_is_nmds() {
        let c = g41();
        assert_eq!((c.len(), c.dim()), (7, 3));
        let wef = c.weight_enumerator(DEFAULT_BUDGET).unwrap();
        assert_eq!(wef.counts, vec![1, 0, 0, 0, 7, 126, 168, 210]);
        assert_eq!(wef.to_string(), "1 + 7x^4 + 126x^5 + 168x^6 + 210x^7");
        let cl = c.classify(DEFAULT_BUDGET).unwrap();
        assert!(cl.nmds);
        assert_eq!(cl.to_string(), "[7,3,4] NMDS");
    }

    #[test]
    fn trivial_codes() {
        let f2 = gf(2);
        let one = LinearCode::from_generator(&Mat::from_codes(&f2, &[[1]]).unwrap()).unwrap();
        assert_eq!(one.weight_enumerator(10).unwrap().counts, vec![1, 1]);
        let rep = LinearCode::from_generator(&Mat::from_codes(&f2, &[[1, 1, 1]]).unwrap()).unwrap();
        assert_eq!(rep.min_distance(10).unwrap(), 3);
        let even = rep.dual().unwrap();
        assert_eq!(even.dim(), 2);
        assert_eq!(even.weight_enumerator(10).unwrap().counts, vec![1, 0, 3, 0]);
        let full = LinearCode::from_generator(&Mat::identity(&f2, 3)).unwrap();
        assert_eq!(full.dual().unwrap_err(), Error::ZeroCode);
        let f7 = gf(7);
        let rep7 = LinearCode::from_generator(&Mat::from_codes(&f7, &[[2, 3, 4, 5]]).unwrap()).unwrap();
        assert_eq!(rep7.min_distance(10).unwrap(), 4);
        assert_eq!(rep7.schur_square_dim(), 1);
        assert!(!rep7.non_grs_witness().certified);
    }

    #[test]
    fn budget_exceeded_reports_requirement() {
        let c = gf11_mds();
        assert_eq!(
            c.min_distance(100).unwrap_err(),
            Error::BudgetExceeded {
                required: 1464,
                budget: 100
            }
        );
    }

    #[test]
    fn rs_schur_square_gf8() {
        let f = Field::new(2, 3, None).unwrap();
        let alpha: Vec<Fe> = f.nonzero_elements().collect();
        let rs = LinearCode::from_generator(&Mat::vandermonde(&f, &alpha, 3).unwrap()).unwrap();
        assert_eq!(rs.schur_square_dim(), 5);
        let w = rs.non_grs_witness();
        assert!(!w.certified);
        assert_eq!(w.threshold, 5);
    }

    #[test]
    fn self_dual_small() {
        let f2 = gf(2);
        let c = LinearCode::from_generator(&Mat::from_codes(&f2, &[[1, 1]]).unwrap()).unwrap();
        assert!(c.is_self_dual());
        assert!(!gf11_mds().is_self_dual());
    }

    #[test]
    fn monomial_errors() {
        let c = gf11_mds();
        let ones = vec![Fe::ONE; 8];
        let id: Vec<usize> = (0..8).collect();
        assert_eq!(c.apply_monomial(&id, &ones).unwrap(), c);
        let mut zero = ones.clone();
        zero[3] = Fe::ZERO;
        assert_eq!(c.apply_monomial(&id, &zero).unwrap_err(), Error::ZeroScale);
        let bad = [0, 0, 1, 2, 3, 4, 5, 6];
        assert_eq!(c.apply_monomial(&bad, &ones).unwrap_err(), Error::InvalidPermutation(8));
    }

    #[test]
    fn enumeration_matches_naive_on_small_codes() {
        for c in [gf11_mds().dual().unwrap(), g41(), g41().dual().unwrap()] {
            let wef = c.weight_enumerator(DEFAULT_BUDGET).unwrap();
            assert_eq!(wef.counts, naive_enumerator(&c));
        }
    }

    #[test]
    fn dual_distance_two_routes() {
        for c in [gf11_mds(), g41()] {
            let d_dual = c.dual().unwrap().min_distance(DEFAULT_BUDGET).unwrap();
            assert_eq!(c.min_dependent_columns(), Some(d_dual));
        }
    }

    fn random_code(p: u64, k: usize, n: usize, seed: &[u32]) -> Option<LinearCode> {
        let f = Field::prime(p).unwrap();
        let data = seed[..k * n].iter().map(|&c| Fe::from_code(c % p as u32)).collect();
        LinearCode::from_generator(&Mat::new(&f, k, n, data).unwrap()).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn code_invariants(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            k in 1usize..4,
            extra in 1usize..4,
            seed in prop::collection::vec(0u32..1000, 32),
            perm_seed in prop::collection::vec(0usize..100, 8),
            scale_seed in prop::collection::vec(1u32..1000, 8),
        ) {
            let n = k + extra;
            let Some(c) = random_code(p, k, n, &seed) else { return Ok(()); };
            let q = p as u128;
            let wef = c.weight_enumerator(DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(wef.counts[0], 1);
            prop_assert_eq!(wef.total(), q.pow(c.dim() as u32));
            for &a in &wef.counts[1..] {
                prop_assert_eq!(a % (p - 1), 0);
            }
            prop_assert_eq!(&wef.counts, &naive_enumerator(&c));
            // column-independence MDS oracle agrees with enumeration
            let mds = c.classify(DEFAULT_BUDGET).unwrap().class == CodeClass::Mds;
            prop_assert_eq!(mds, c.all_k_columns_independent());
            if c.dim() < n {
                let dual = c.dual().unwrap();
                prop_assert_eq!(dual.dual().unwrap(), c.clone());
                prop_assert!(c.generator().matmul(&dual.generator().transpose()).unwrap().is_zero());
                if mds {
                    prop_assert_eq!(dual.classify(DEFAULT_BUDGET).unwrap().class, CodeClass::Mds);
                }
            }
            // random monomial map
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, perm_seed[i] % (i + 1));
            }
            let scale: Vec<Fe> = (0..n).map(|j| Fe::from_code(1 + scale_seed[j] % (p as u32 - 1))).collect();
            let image = c.apply_monomial(&perm, &scale).unwrap();
            prop_assert_eq!(image.weight_enumerator(DEFAULT_BUDGET).unwrap(), wef);
        }

        #[test]
        fn grs_schur_square_dimension(
            p in prop::sample::select(vec![5u64, 7, 11, 13, 17, 19]),
            k in 1usize..6,
            picks in prop::collection::vec(0u32..1000, 20),
            scale_seed in prop::collection::vec(1u32..1000, 20),
        ) {
            let f = Field::prime(p).unwrap();
            let mut alpha: Vec<Fe> = Vec::new();
            for &c in &picks {
                let x = Fe::from_code(c % p as u32);
                if !alpha.contains(&x) {
                    alpha.push(x);
                }
            }
            prop_assume!(alpha.len() > k);
            let n = alpha.len();
            let g = Mat::vandermonde(&f, &alpha, k).unwrap();
            let scale: Vec<Fe> = (0..n).map(|j| Fe::from_code(1 + scale_seed[j] % (p as u32 - 1))).collect();
            let id: Vec<usize> = (0..n).collect();
            let grs = LinearCode::from_generator(&g).unwrap().apply_monomial(&id, &scale).unwrap();
            prop_assert_eq!(grs.schur_square_dim(), n.min(2 * k - 1));
            prop_assert!(!grs.non_grs_witness().certified);
        }
    }
}
