//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`]. Rank and determinant use
//! fraction-free (Bareiss) elimination; kernels and integer solutions go
//! through a column-style Hermite reduction `M·U = L` with `U` unimodular.
//! Pivots are always the first nonzero entry in row-major order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries must fill rows x cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(rows.len(), cols, data)
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        bareiss(self.clone()).rank
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return BigInt::one();
        }
        let elim = bareiss(self.clone());
        if elim.rank < self.rows {
            return BigInt::zero();
        }
        let last = elim.matrix[(self.rows - 1, self.cols - 1)].clone();
        if elim.swaps % 2 == 1 {
            -last
        } else {
            last
        }
    }

    /// Whether the matrix is upper triangular (all entries below the
    /// diagonal vanish).
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self[(i, j)].is_zero()))
    }

    /// A basis of the integer lattice `{v : M·v = 0}`.
    ///
    /// The basis is returned in Hermite normal form (as rows): each vector
    /// has a positive leading entry and entries above later pivots are
    /// reduced. Since the kernel lattice is saturated every returned vector
    /// is primitive.
    pub fn kernel_lattice_basis(&self) -> Vec<Vec<BigInt>> {
        let echelon = ColumnEchelon::compute(self);
        let kernel: Vec<Vec<BigInt>> = (echelon.pivots.len()..self.cols)
            .map(|j| echelon.transform.column(j))
            .collect();
        row_hermite_form(kernel)
    }

    /// One integer solution of `M·x = b`, or `None` when no integer solution
    /// exists.
    pub fn solve_particular(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let echelon = ColumnEchelon::compute(self);
        let l = &echelon.reduced;
        let mut y = vec![BigInt::zero(); self.cols];
        for (k, &(row, col)) in echelon.pivots.iter().enumerate() {
            debug_assert_eq!(col, k);
            let mut rest = b[row].clone();
            for (j, yj) in y.iter().enumerate().take(k) {
                rest -= &l[(row, j)] * yj;
            }
            let (q, r) = rest.div_rem(&l[(row, col)]);
            if !r.is_zero() {
                return None;
            }
            y[k] = q;
        }
        let x = echelon.transform.mul_vec(&y);
        if self.mul_vec(&x).as_slice() != b {
            return None;
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

struct Bareiss {
    matrix: IntMatrix,
    rank: usize,
    swaps: usize,
}

fn bareiss(mut m: IntMatrix) -> Bareiss {
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut swaps = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                m.data.swap(p * cols + j, rank * cols + j);
            }
            swaps += 1;
        }
        let pivot = m[(rank, col)].clone();
        for r in rank + 1..rows {
            let factor = m[(r, col)].clone();
            for j in col..cols {
                let v = (&pivot * &m[(r, j)] - &factor * &m[(rank, j)]) / &prev;
                m[(r, j)] = v;
            }
            for j in 0..col {
                m[(r, j)] = BigInt::zero();
            }
        }
        prev = pivot;
        rank += 1;
    }
    Bareiss {
        matrix: m,
        rank,
        swaps,
    }
}

/// `M·U = L` with `U` unimodular and `L` in column echelon form: column `k`
/// of `L` has its first nonzero entry at row `pivots[k].0`, strictly below
/// the pivot row of column `k - 1`; columns past the pivots are zero.
struct ColumnEchelon {
    reduced: IntMatrix,
    transform: IntMatrix,
    pivots: Vec<(usize, usize)>,
}

impl ColumnEchelon {
    fn compute(m: &IntMatrix) -> Self {
        let mut l = m.clone();
        let mut u = IntMatrix::identity(m.cols);
        let mut pivots = Vec::new();
        let mut pc = 0;
        for row in 0..m.rows {
            if pc == m.cols {
                break;
            }
            // gcd-combine every entry of this row into column `pc`
            for j in pc..m.cols {
                if l[(row, j)].is_zero() {
                    continue;
                }
                if j == pc {
                    continue;
                }
                let a = l[(row, pc)].clone();
                let b = l[(row, j)].clone();
                let ext = a.extended_gcd(&b);
                let (g, s, t) = (ext.gcd, ext.x, ext.y);
                let a_g = &a / &g;
                let b_g = &b / &g;
                combine_columns(&mut l, pc, j, &s, &t, &b_g, &a_g);
                combine_columns(&mut u, pc, j, &s, &t, &b_g, &a_g);
            }
            if l[(row, pc)].is_zero() {
                continue;
            }
            if l[(row, pc)].is_negative() {
                negate_column(&mut l, pc);
                negate_column(&mut u, pc);
            }
            pivots.push((row, pc));
            pc += 1;
        }
        ColumnEchelon {
            reduced: l,
            transform: u,
            pivots,
        }
    }
}

/// `(c_p, c_j) <- (s·c_p + t·c_j, -b'·c_p + a'·c_j)`, a determinant-one
/// column operation when `s·a' + t·b' = 1`.
fn combine_columns(
    m: &mut IntMatrix,
    p: usize,
    j: usize,
    s: &BigInt,
    t: &BigInt,
    b_g: &BigInt,
    a_g: &BigInt,
) {
    for i in 0..m.rows {
        let cp = m[(i, p)].clone();
        let cj = m[(i, j)].clone();
        m[(i, p)] = s * &cp + t * &cj;
        m[(i, j)] = a_g * &cj - b_g * &cp;
    }
}

fn negate_column(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows {
        let v = -&m[(i, j)];
        m[(i, j)] = v;
    }
}

/// Row Hermite normal form of a full-rank list of integer row vectors.
fn row_hermite_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)))
                .unwrap();
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let q = row[col].div_floor(&pivot_row[col]);
            if q.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    rows
}

/// Exact rational vector; entries are kept in lowest terms by
/// [`BigRational`] itself.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatVector(pub Vec<BigRational>);

impl RatVector {
    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![BigRational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Entries as machine integers, if all are integral and fit.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0
            .iter()
            .map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn add_scaled(&mut self, scale: &BigRational, other: &[BigRational]) {
        assert_eq!(self.0.len(), other.len());
        for (x, y) in self.0.iter_mut().zip(other) {
            *x += scale * y;
        }
    }
}

/// Rank of a list of rational row vectors.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = rows.to_vec();
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts back to machine integers; panics if an entry does not fit.
pub fn to_i64s(v: &[BigInt]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    v.iter()
        .map(|x| x.to_i64().expect("entry does not fit in i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        to_bigints(v)
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(IntMatrix::identity(3).rank(), 3);
        assert_eq!(IntMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(IntMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        // 2(12-1) - 1(4-0) = 18
        assert_eq!(m.determinant(), BigInt::from(18));
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).determinant(), BigInt::zero());
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(IntMatrix::identity(4).kernel_lattice_basis().is_empty());
    }

    #[test]
    fn kernel_of_difference_row() {
        let m = IntMatrix::from_rows(&[[1, -1]]);
        assert_eq!(m.kernel_lattice_basis(), vec![big(&[1, 1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2, -1), not (4, -2)
        let m = IntMatrix::from_rows(&[[2, 4]]);
        assert_eq!(m.kernel_lattice_basis(), vec![big(&[2, -1])]);
    }

    #[test]
    fn solve_identity_and_parity() {
        let b = big(&[3, -7, 2]);
        assert_eq!(IntMatrix::identity(3).solve_particular(&b), Some(b.clone()));
        assert_eq!(IntMatrix::from_rows(&[[2]]).solve_particular(&big(&[1])), None);
    }

    #[test]
    fn solve_inconsistent() {
        let m = IntMatrix::from_rows(&[[1, 1], [1, 1]]);
        assert_eq!(m.solve_particular(&big(&[1, 2])), None);
        let x = m.solve_particular(&big(&[5, 5])).unwrap();
        assert_eq!(m.mul_vec(&x), big(&[5, 5]));
    }

    #[test]
    fn rational_rank_matches_integer_rank() {
        let rows = vec![
            RatVector::from_ints(&[1, 2, 3]).0,
            RatVector::from_ints(&[2, 4, 6]).0,
            RatVector::from_ints(&[0, 1, 1]).0,
        ];
        assert_eq!(rational_rank(&rows), 2);
    }
}
