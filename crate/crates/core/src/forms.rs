//! Integral symmetric bilinear forms and Z₂ quadratic forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use crate::Error;

/// A square symmetric matrix of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSymmetricForm {
    matrix: Vec<Vec<BigInt>>,
}

impl IntegerSymmetricForm {
    pub fn new(matrix: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidForm("matrix is not square".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidForm(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(IntegerSymmetricForm { matrix })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, Error> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Parses a JSON array of integer rows.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let rows: Vec<Vec<i64>> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("expected a JSON array of integer rows: {e}")))?;
        Self::from_rows(&rows)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (i, &d) in entries.iter().enumerate() {
            m[i][i] = BigInt::from(d);
        }
        IntegerSymmetricForm { matrix: m }
    }

    /// The even form [[0,1],[1,0]].
    pub fn hyperbolic() -> Self {
        Self::from_rows(&[vec![0, 1], vec![1, 0]]).expect("symmetric")
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    /// Entry (i, j), 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.matrix[i - 1][j - 1]
    }

    /// Rows as machine integers, when every entry fits.
    pub fn to_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.matrix
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut out = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = self.matrix[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                out[n + i][n + j] = other.matrix[i][j].clone();
            }
        }
        IntegerSymmetricForm { matrix: out }
    }

    /// Uᵀ A U.
    pub fn congruent(&self, u: &[Vec<BigInt>]) -> Result<Self, Error> {
        let n = self.dim();
        if u.len() != n || u.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("change-of-basis matrix has the wrong shape"));
        }
        let mut au = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                au[i][j] = (0..n).map(|k| &self.matrix[i][k] * &u[k][j]).sum();
            }
        }
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = (0..n).map(|k| &u[k][i] * &au[k][j]).sum();
            }
        }
        IntegerSymmetricForm::new(out)
    }

    pub fn is_even(&self) -> bool {
        (0..self.dim()).all(|i| (&self.matrix[i][i] % 2u32).is_zero())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.matrix.clone())
    }

    /// |det| = 1.
    pub fn is_nonsingular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// p − q over the rationals; the radical contributes nothing.
    pub fn signature(&self) -> i64 {
        let (p, q, _) = self.inertia();
        p as i64 - q as i64
    }

    /// Counts of positive, negative and zero directions.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| Rational::from(x.clone())).collect())
            .collect();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            if let Some(idx) = active.iter().position(|&i| !a[i][i].is_zero()) {
                let p = active.remove(idx);
                let pivot = a[p][p].clone();
                if pivot.is_negative() {
                    neg += 1;
                } else {
                    pos += 1;
                }
                for &j in &active {
                    let f = &a[j][p] / &pivot;
                    for &k in &active {
                        let delta = &f * &a[p][k];
                        a[j][k] -= &delta;
                    }
                }
                continue;
            }
            let pair = active.iter().enumerate().find_map(|(x, &i)| {
                active[x + 1..]
                    .iter()
                    .find(|&&j| !a[i][j].is_zero())
                    .map(|&j| (i, j))
            });
            let Some((i, j)) = pair else {
                break;
            };
            // [[0, b], [b, 0]] block: one positive and one negative direction
            pos += 1;
            neg += 1;
            active.retain(|&x| x != i && x != j);
            let b = a[i][j].clone();
            for &k in &active {
                for &l in &active {
                    let delta = (&a[k][i] * &a[j][l] + &a[k][j] * &a[i][l]) / b.clone();
                    a[k][l] -= &delta;
                }
            }
        }
        (pos, neg, n - pos - neg)
    }
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// E8 as the T(2,3,5) Dynkin graph: a chain 1-2-3-4-5-6-7 with node 8
/// attached to node 5, diagonal 2.
pub fn e8_form() -> IntegerSymmetricForm {
    let mut m = e8_printed_rows();
    m[6][7] = 0;
    m[7][6] = 0;
    IntegerSymmetricForm::from_rows(&m).expect("symmetric")
}

/// The 8×8 block matrix whose lower-right block is
/// [[2,1,0,1],[1,2,1,0],[0,1,2,1],[1,0,1,2]]. That block closes the 4-cycle
/// 5-6-7-8, so the determinant is −16 and the signature 6.
pub fn e8_form_as_printed() -> IntegerSymmetricForm {
    IntegerSymmetricForm::from_rows(&e8_printed_rows()).expect("symmetric")
}

fn e8_printed_rows() -> Vec<Vec<i64>> {
    let a = [[2, 1, 0, 0], [1, 2, 1, 0], [0, 1, 2, 1], [0, 0, 1, 2]];
    let b = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]];
    let c = [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]];
    let d = [[2, 1, 0, 1], [1, 2, 1, 0], [0, 1, 2, 1], [1, 0, 1, 2]];
    let mut rows = Vec::with_capacity(8);
    for r in 0..4 {
        rows.push(a[r].iter().chain(b[r].iter()).copied().collect());
    }
    for r in 0..4 {
        rows.push(c[r].iter().chain(d[r].iter()).copied().collect());
    }
    rows
}

/// A Z₂ quadratic refinement μ of an alternating Z₂ form λ, with vectors
/// written as bitmasks over the basis (bit i = coordinate i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2QuadraticForm {
    dim: usize,
    lambda: Vec<u64>,
    mu: u64,
}

/// JSON layout: `{"lambda": [[0,1],[1,0]], "mu": [1,1]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Z2FormSpec {
    pub lambda: Vec<Vec<u8>>,
    pub mu: Vec<u8>,
}

pub const MAX_Z2_DIM: usize = 64;

impl Z2QuadraticForm {
    /// λ must be symmetric with zero diagonal, μ one bit per basis vector.
    pub fn new(lambda: &[Vec<u8>], mu: &[u8]) -> Result<Self, Error> {
        let dim = lambda.len();
        if dim > MAX_Z2_DIM {
            return Err(Error::InvalidForm(format!(
                "dimension {dim} exceeds {MAX_Z2_DIM}"
            )));
        }
        if !dim.is_multiple_of(2) {
            return Err(Error::InvalidForm(format!("dimension {dim} is odd")));
        }
        if lambda.iter().any(|r| r.len() != dim) || mu.len() != dim {
            return Err(Error::InvalidForm("shape mismatch between λ and μ".into()));
        }
        if lambda.iter().flatten().chain(mu).any(|&x| x > 1) {
            return Err(Error::InvalidForm("entries must be 0 or 1".into()));
        }
        let mut rows = vec![0u64; dim];
        for i in 0..dim {
            if lambda[i][i] != 0 {
                return Err(Error::InvalidForm(format!(
                    "λ has nonzero diagonal at {}",
                    i + 1
                )));
            }
            for j in 0..dim {
                if lambda[i][j] != lambda[j][i] {
                    return Err(Error::InvalidForm("λ is not symmetric".into()));
                }
                if lambda[i][j] == 1 {
                    rows[i] |= 1 << j;
                }
            }
        }
        let mu_bits = mu
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        Ok(Z2QuadraticForm {
            dim,
            lambda: rows,
            mu: mu_bits,
        })
    }

    pub fn from_spec(spec: &Z2FormSpec) -> Result<Self, Error> {
        Self::new(&spec.lambda, &spec.mu)
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let spec: Z2FormSpec = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "expected {{\"lambda\": [[..]], \"mu\": [..]}}: {e}"
            ))
        })?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> Z2FormSpec {
        Z2FormSpec {
            lambda: (0..self.dim)
                .map(|i| {
                    (0..self.dim)
                        .map(|j| ((self.lambda[i] >> j) & 1) as u8)
                        .collect()
                })
                .collect(),
            mu: (0..self.dim).map(|i| ((self.mu >> i) & 1) as u8).collect(),
        }
    }

    /// The hyperbolic plane with μ(b), μ(c) as given.
    pub fn hyperbolic(mu_b: u8, mu_c: u8) -> Self {
        Self::new(&[vec![0, 1], vec![1, 0]], &[mu_b, mu_c]).expect("valid plane")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, Error> {
        let spec_a = self.to_spec();
        let spec_b = other.to_spec();
        let n = self.dim + other.dim;
        let mut lambda = vec![vec![0u8; n]; n];
        for i in 0..self.dim {
            lambda[i][..self.dim].copy_from_slice(&spec_a.lambda[i]);
        }
        for i in 0..other.dim {
            lambda[self.dim + i][self.dim..].copy_from_slice(&spec_b.lambda[i]);
        }
        let mu: Vec<u8> = spec_a.mu.iter().chain(&spec_b.mu).copied().collect();
        Self::new(&lambda, &mu)
    }

    pub fn lambda(&self, x: u64, y: u64) -> u8 {
        let mut acc = 0u32;
        for i in 0..self.dim {
            if (x >> i) & 1 == 1 {
                acc ^= (self.lambda[i] & y).count_ones() & 1;
            }
        }
        acc as u8
    }

    /// μ extended from the basis by μ(x+y) = μ(x) + μ(y) + λ(x,y).
    pub fn mu(&self, x: u64) -> u8 {
        let mut acc = (self.mu & x).count_ones() & 1;
        for i in 0..self.dim {
            if (x >> i) & 1 == 1 {
                let later = x & u64::MAX.checked_shl(i as u32 + 1).unwrap_or(0);
                acc ^= (self.lambda[i] & later).count_ones() & 1;
            }
        }
        acc as u8
    }

    /// Rank of λ over Z₂.
    pub fn rank(&self) -> usize {
        z2_rank(self.lambda.clone())
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rank() == self.dim
    }

    /// Greedy symplectic basis {(b_j, c_j)} with λ(b_j, c_j) = 1 and all
    /// other pairings zero.
    pub fn symplectic_basis(&self) -> Result<Vec<(u64, u64)>, Error> {
        if !self.is_nonsingular() {
            return Err(Error::DegenerateForm(format!(
                "λ has rank {} in dimension {}",
                self.rank(),
                self.dim
            )));
        }
        let mut pool: Vec<u64> = (0..self.dim).map(|i| 1u64 << i).collect();
        let mut basis = Vec::with_capacity(self.dim / 2);
        while let Some(b) = pool.pop() {
            let Some(pos) = pool.iter().position(|&w| self.lambda(b, w) == 1) else {
                return Err(Error::DegenerateForm("no symplectic partner found".into()));
            };
            let c = pool.remove(pos);
            for w in pool.iter_mut() {
                let mut v = *w;
                if self.lambda(*w, c) == 1 {
                    v ^= b;
                }
                if self.lambda(*w, b) == 1 {
                    v ^= c;
                }
                *w = v;
            }
            pool.retain(|&w| w != 0);
            basis.push((b, c));
        }
        Ok(basis)
    }

    /// Σ μ(b_j) μ(c_j) over a symplectic basis.
    pub fn arf(&self) -> Result<u8, Error> {
        let basis = self.symplectic_basis()?;
        Ok(basis
            .iter()
            .fold(0, |acc, &(b, c)| acc ^ (self.mu(b) & self.mu(c))))
    }

    /// The same form written in the basis f_i = rows[i] (bitmasks).
    pub fn change_basis(&self, rows: &[u64]) -> Result<Self, Error> {
        if rows.len() != self.dim || z2_rank(rows.to_vec()) != self.dim {
            return Err(Error::invalid("change of basis must be invertible over Z₂"));
        }
        let lambda: Vec<Vec<u8>> = rows
            .iter()
            .map(|&x| rows.iter().map(|&y| self.lambda(x, y)).collect())
            .collect();
        let mu: Vec<u8> = rows.iter().map(|&x| self.mu(x)).collect();
        Self::new(&lambda, &mu)
    }

    /// Number of vectors with μ = 0, by enumeration.
    pub fn count_mu_zero(&self) -> u64 {
        assert!(self.dim <= 24, "enumeration limited to dimension 24");
        (0..1u64 << self.dim).filter(|&x| self.mu(x) == 0).count() as u64
    }
}

fn z2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&i| (rows[i] >> bit) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && (*r >> bit) & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_signatures() {
        assert_eq!(IntegerSymmetricForm::diagonal(&[1]).signature(), 1);
        assert_eq!(IntegerSymmetricForm::diagonal(&[1, -1]).signature(), 0);
        assert_eq!(IntegerSymmetricForm::hyperbolic().signature(), 0);
        assert_eq!(
            IntegerSymmetricForm::diagonal(&[0, 3, -2, -5]).inertia(),
            (1, 2, 1)
        );
        assert!(IntegerSymmetricForm::from_rows(&[vec![1, 2], vec![0, 1]]).is_err());
    }

    #[test]
    fn e8_properties() {
        let e8 = e8_form();
        assert_eq!(e8.signature(), 8);
        assert_eq!(e8.determinant(), BigInt::from(1));
        assert!(e8.is_even());
        assert!(e8.is_nonsingular());
        assert_eq!(e8.entry(1, 1), &BigInt::from(2));
        assert_eq!(e8.entry(4, 5), &BigInt::from(1));
        assert_eq!(e8.entry(5, 4), &BigInt::from(1));
    }

    #[test]
    fn printed_block_matrix_is_not_unimodular() {
        let m = e8_form_as_printed();
        assert_eq!(m.determinant(), BigInt::from(-16));
        assert_eq!(m.signature(), 6);
        assert!(m.is_even());
    }

    /// Counts positive and negative eigenvalues with a cyclic Jacobi sweep.
    fn eigen_signature(form: &IntegerSymmetricForm) -> i64 {
        use num_traits::ToPrimitive;
        let n = form.dim();
        let mut a: Vec<Vec<f64>> = form
            .matrix()
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect())
            .collect();
        for _ in 0..100 {
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-14 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        (0..n)
            .map(|i| {
                if a[i][i] > 1e-9 {
                    1
                } else if a[i][i] < -1e-9 {
                    -1
                } else {
                    0
                }
            })
            .sum()
    }

    #[test]
    fn e8_against_floating_eigenvalues() {
        assert_eq!(eigen_signature(&e8_form()), 8);
        assert_eq!(eigen_signature(&e8_form_as_printed()), 6);
    }

    #[test]
    fn z2_examples() {
        assert_eq!(Z2QuadraticForm::hyperbolic(0, 0).arf().unwrap(), 0);
        let one = Z2QuadraticForm::hyperbolic(1, 1);
        assert_eq!(one.arf().unwrap(), 1);
        assert_eq!(one.direct_sum(&one).unwrap().arf().unwrap(), 0);
        let zero = Z2QuadraticForm::new(&[vec![0, 0], vec![0, 0]], &[1, 0]).unwrap();
        assert!(matches!(zero.arf(), Err(Error::DegenerateForm(_))));
        assert!(Z2QuadraticForm::new(&[vec![1, 0], vec![0, 0]], &[0, 0]).is_err());
    }

    #[test]
    fn refinement_rule_holds_on_all_pairs() {
        let q = Z2QuadraticForm::hyperbolic(1, 0)
            .direct_sum(&Z2QuadraticForm::hyperbolic(1, 1))
            .unwrap();
        for x in 0..16u64 {
            for y in 0..16u64 {
                assert_eq!(q.mu(x ^ y), q.mu(x) ^ q.mu(y) ^ q.lambda(x, y));
            }
        }
    }

    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<BigInt>> {
        let mut u: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        for &(i, j, k) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            for r in 0..n {
                let v = &u[r][j] * k;
                u[r][i] += v;
            }
        }
        u
    }

    fn symmetric(n: usize, vals: &[i64]) -> IntegerSymmetricForm {
        let mut m = vec![vec![0i64; n]; n];
        let mut it = vals.iter().cycle();
        for i in 0..n {
            for j in i..n {
                let v = *it.next().unwrap();
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        IntegerSymmetricForm::from_rows(&m).unwrap()
    }

    fn random_z2(dim: usize, seed_bits: &[u8]) -> Z2QuadraticForm {
        let mut lambda = vec![vec![0u8; dim]; dim];
        let mut it = seed_bits.iter().cycle();
        for i in 0..dim {
            for j in i + 1..dim {
                let b = *it.next().unwrap() & 1;
                lambda[i][j] = b;
                lambda[j][i] = b;
            }
        }
        let mu: Vec<u8> = (0..dim).map(|_| *it.next().unwrap() & 1).collect();
        Z2QuadraticForm::new(&lambda, &mu).unwrap()
    }

    proptest! {
        #[test]
        fn congruence_invariance(
            n in 1usize..=6,
            vals in proptest::collection::vec(-2i64..=2, 21),
            ops in proptest::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..12),
        ) {
            let a = symmetric(n, &vals);
            let u = unimodular(n, &ops);
            let b = a.congruent(&u).unwrap();
            prop_assert_eq!(b.signature(), a.signature());
            prop_assert_eq!(b.determinant(), a.determinant());
        }

        #[test]
        fn block_additivity(
            n in 1usize..=4, m in 1usize..=4,
            va in proptest::collection::vec(-3i64..=3, 10),
            vb in proptest::collection::vec(-3i64..=3, 10),
        ) {
            let a = symmetric(n, &va);
            let b = symmetric(m, &vb);
            prop_assert_eq!(a.direct_sum(&b).signature(), a.signature() + b.signature());
        }

        #[test]
        fn arf_matches_majority_count(
            half in 1usize..=3,
            bits in proptest::collection::vec(0u8..=1, 21),
        ) {
            let q = random_z2(2 * half, &bits);
            if q.is_nonsingular() {
                let zeros = q.count_mu_zero();
                let majority = zeros * 2 > 1 << q.dim();
                prop_assert_eq!(q.arf().unwrap() == 0, majority);
            } else {
                prop_assert!(q.arf().is_err());
            }
        }

        #[test]
        fn arf_is_basis_independent(
            half in 1usize..=3,
            bits in proptest::collection::vec(0u8..=1, 21),
            ops in proptest::collection::vec((0usize..6, 0usize..6), 0..16),
        ) {
            let q = random_z2(2 * half, &bits);
            prop_assume!(q.is_nonsingular());
            let n = q.dim();
            let mut rows: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
            for (i, j) in ops {
                let (i, j) = (i % n, j % n);
                if i != j {
                    rows[i] ^= rows[j];
                }
            }
            let moved = q.change_basis(&rows).unwrap();
            prop_assert_eq!(moved.arf().unwrap(), q.arf().unwrap());
        }
    }
}
