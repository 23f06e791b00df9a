//! Dense matrices over a semiring instance: arithmetic, the dominance
//! order, monomial and invertibility tests, permutation matrices, and the
//! standard basis.
//!
//! Indices are 1-based in the public interface and in the file formats,
//! matching the usual mathematical convention `1 <= i <= m`, `1 <= j <= n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{SemiringId, Value};

/// A cell `(i, j)` of the index set `{1..m} x {1..n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisCell {
    pub row: usize,
    pub col: usize,
}

impl BasisCell {
    pub fn new(row: usize, col: usize) -> Self {
        BasisCell { row, col }
    }
}

impl fmt::Display for BasisCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Dense `m x n` matrix; every entry belongs to the same semiring instance
/// and both dimensions are positive. Matrices are immutable values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    id: SemiringId,
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl Matrix {
    pub fn new(id: SemiringId, rows: usize, cols: usize, data: Vec<Value>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!(
                "dimensions must be positive, got {rows} x {cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries for a {rows} x {cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        for v in &data {
            if v.id() != id {
                return Err(Error::SemiringMismatch {
                    left: id,
                    right: v.id(),
                });
            }
        }
        Ok(Matrix {
            id,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(id: SemiringId, rows: Vec<Vec<Value>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(id, m, n, rows.into_iter().flatten().collect())
    }

    /// Build from a function of 1-based cell coordinates.
    pub fn from_fn(
        id: SemiringId,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Value,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(id, rows, cols, data)
    }

    pub fn zero(id: SemiringId, rows: usize, cols: usize) -> Result<Self> {
        Matrix::from_fn(id, rows, cols, |_, _| id.zero())
    }

    pub fn identity(id: SemiringId, k: usize) -> Result<Self> {
        Matrix::from_fn(id, k, k, |i, j| if i == j { id.one() } else { id.zero() })
    }

    /// The standard basis matrix with `one` at `cell` and `zero` elsewhere.
    pub fn basis_matrix(cell: BasisCell, rows: usize, cols: usize, id: SemiringId) -> Result<Self> {
        if cell.row == 0 || cell.row > rows || cell.col == 0 || cell.col > cols {
            return Err(Error::OutOfBounds(format!(
                "{cell} not inside {rows} x {cols}"
            )));
        }
        Matrix::from_fn(id, rows, cols, |i, j| {
            if i == cell.row && j == cell.col {
                id.one()
            } else {
                id.zero()
            }
        })
    }

    pub fn id(&self) -> SemiringId {
        self.id
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 1-based coordinates.
    pub fn entry(&self, i: usize, j: usize) -> &Value {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "entry ({i},{j}) out of bounds for {} x {}",
            self.rows,
            self.cols
        );
        &self.data[(i - 1) * self.cols + (j - 1)]
    }

    pub fn at(&self, cell: BasisCell) -> &Value {
        self.entry(cell.row, cell.col)
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = BasisCell> {
        let (m, n) = (self.rows, self.cols);
        (1..=m).flat_map(move |i| (1..=n).map(move |j| BasisCell::new(i, j)))
    }

    pub fn row(&self, i: usize) -> Vec<Value> {
        (1..=self.cols).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Value> {
        (1..=self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.id != other.id {
            return Err(Error::SemiringMismatch {
                left: self.id,
                right: other.id,
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{} x {} vs {} x {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.id, self.rows, self.cols, data)
    }

    /// Semiring matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.id != other.id {
            return Err(Error::SemiringMismatch {
                left: self.id,
                right: other.id,
            });
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {} x {} by {} x {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 1..=self.rows {
            for v in 1..=other.cols {
                let mut acc = self.id.zero();
                for j in 1..=self.cols {
                    acc = acc.add(&self.entry(i, j).mul(other.entry(j, v))?)?;
                }
                data.push(acc);
            }
        }
        Matrix::new(self.id, self.rows, other.cols, data)
    }

    pub fn scale(&self, alpha: &Value) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|v| alpha.mul(v))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.id, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.id, self.cols, self.rows, |i, j| {
            self.entry(j, i).clone()
        })
        .expect("transpose preserves validity")
    }

    /// Dominance order: `self` is dominated by `other` when every entry of
    /// `self` is below the corresponding entry of `other`; equivalently
    /// `self + other = other`.
    pub fn dominated_by(&self, other: &Self) -> Result<bool> {
        self.require_same_shape(other)?;
        for (a, b) in self.data.iter().zip(&other.data) {
            if !a.leq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Value::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// Cells holding nonzero entries.
    pub fn support(&self) -> BTreeSet<BasisCell> {
        self.cells().filter(|c| !self.at(*c).is_zero()).collect()
    }

    /// Exactly one nonzero entry in each row and each column (so only
    /// square matrices qualify).
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut cols_seen = vec![false; self.cols + 1];
        for i in 1..=self.rows {
            let nonzero: Vec<usize> = (1..=self.cols)
                .filter(|&j| !self.entry(i, j).is_zero())
                .collect();
            match nonzero.as_slice() {
                [j] if !cols_seen[*j] => cols_seen[*j] = true,
                _ => return false,
            }
        }
        true
    }

    /// Invertible over these semirings means monomial with every nonzero
    /// entry a unit.
    pub fn is_invertible(&self) -> bool {
        self.is_monomial()
            && self
                .data
                .iter()
                .all(|v| v.is_zero() || v.is_unit())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "inverse of a {} x {} matrix",
                self.rows, self.cols
            )));
        }
        if !self.is_invertible() {
            return Err(Error::NotInvertible(
                "matrix is not monomial with unit entries".into(),
            ));
        }
        let mut inv = vec![self.id.zero(); self.rows * self.cols];
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                let v = self.entry(i, j);
                if !v.is_zero() {
                    inv[(j - 1) * self.cols + (i - 1)] = v.inv()?;
                }
            }
        }
        Matrix::new(self.id, self.rows, self.cols, inv)
    }

    /// A diagonal matrix from the given entries (all of which must be
    /// nonzero for the result to be invertible; not enforced here).
    pub fn diagonal(id: SemiringId, entries: &[Value]) -> Result<Self> {
        let k = entries.len();
        Matrix::from_fn(id, k, k, |i, j| {
            if i == j {
                entries[i - 1].clone()
            } else {
                id.zero()
            }
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation of `{1..k}` stored as the list of images `pi(1), ..,
/// pi(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k + 1];
        for &img in &images {
            if img == 0 || img > k || seen[img] {
                return Err(Error::NotAPermutation(k));
            }
            seen[img] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of `l` (1-based).
    pub fn apply(&self, l: usize) -> usize {
        self.0[l - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (l, &img) in self.0.iter().enumerate() {
            inv[img - 1] = l + 1;
        }
        Permutation(inv)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

/// The permutation matrix with `one` at `(l, pi(l))` for each `l`.
pub fn permutation_matrix(pi: &Permutation, id: SemiringId) -> Result<Matrix> {
    let k = pi.len();
    if k == 0 {
        return Err(Error::ShapeMismatch("empty permutation".into()));
    }
    Matrix::from_fn(id, k, k, |i, j| {
        if pi.apply(i) == j {
            id.one()
        } else {
            id.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{b2, mp};

    #[test]
    fn max_plus_product() {
        let a = Matrix::from_rows(
            SemiringId::MaxPlusZ,
            vec![
                vec![Value::int(0), Value::int(1)],
                vec![Value::neg_inf(), Value::int(0)],
            ],
        )
        .unwrap();
        let x = mp(vec![vec![0], vec![2]]);
        assert_eq!(a.mul(&x).unwrap(), mp(vec![vec![3], vec![2]]));
    }

    #[test]
    fn entrywise_sum_is_or_over_b2() {
        let a = b2(vec![vec![1, 0], vec![0, 1]]);
        let b = b2(vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(a.add(&b).unwrap(), b2(vec![vec![1, 1], vec![0, 1]]));
    }

    #[test]
    fn identity_is_neutral() {
        let a = mp(vec![vec![1, -2], vec![0, 3]]);
        let i = Matrix::identity(SemiringId::MaxPlusZ, 2).unwrap();
        assert_eq!(i.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&i).unwrap(), a);
    }

    #[test]
    fn dominance() {
        let small = b2(vec![vec![1, 0], vec![0, 0]]);
        let big = b2(vec![vec![1, 1], vec![0, 0]]);
        assert!(small.dominated_by(&big).unwrap());
        assert!(!big.dominated_by(&small).unwrap());
        assert!(big.dominated_by(&big).unwrap());
        assert!(!mp(vec![vec![2]]).dominated_by(&mp(vec![vec![1]])).unwrap());
    }

    #[test]
    fn monomial_and_invertible() {
        let swap = b2(vec![vec![0, 1], vec![1, 0]]);
        assert!(swap.is_invertible());
        assert_eq!(swap.inverse().unwrap(), swap);

        let upper = b2(vec![vec![1, 1], vec![0, 1]]);
        assert!(!upper.is_monomial());
        assert!(!upper.is_invertible());

        // Monomial but not invertible: 2 is not a unit in (N, max, *).
        let m = Matrix::from_rows(
            SemiringId::MaxTimesN,
            vec![
                vec![Value::nat(2), Value::nat(0)],
                vec![Value::nat(0), Value::nat(1)],
            ],
        )
        .unwrap();
        assert!(m.is_monomial());
        assert!(!m.is_invertible());
        assert!(m.inverse().is_err());
    }

    #[test]
    fn inverse_of_scaled_permutation() {
        let a = Matrix::from_rows(
            SemiringId::MaxPlusZ,
            vec![
                vec![Value::neg_inf(), Value::int(3)],
                vec![Value::int(-1), Value::neg_inf()],
            ],
        )
        .unwrap();
        assert!(a.is_invertible());
        let inv = a.inverse().unwrap();
        assert_eq!(
            a.mul(&inv).unwrap(),
            Matrix::identity(SemiringId::MaxPlusZ, 2).unwrap()
        );
        assert_eq!(
            inv.mul(&a).unwrap(),
            Matrix::identity(SemiringId::MaxPlusZ, 2).unwrap()
        );
    }

    #[test]
    fn permutation_matrices() {
        let pi = Permutation::from_images(vec![2, 1]).unwrap();
        let p = permutation_matrix(&pi, SemiringId::B2).unwrap();
        assert_eq!(p, b2(vec![vec![0, 1], vec![1, 0]]));
        assert_eq!(
            permutation_matrix(&Permutation::identity(3), SemiringId::B2).unwrap(),
            Matrix::identity(SemiringId::B2, 3).unwrap()
        );
        let q = permutation_matrix(&pi.inverse(), SemiringId::B2).unwrap();
        assert_eq!(
            p.mul(&q).unwrap(),
            Matrix::identity(SemiringId::B2, 2).unwrap()
        );
        assert!(Permutation::from_images(vec![1, 1]).is_err());
    }

    #[test]
    fn basis_matrix_and_support() {
        let e12 = Matrix::basis_matrix(BasisCell::new(1, 2), 2, 2, SemiringId::B2).unwrap();
        assert_eq!(e12, b2(vec![vec![0, 1], vec![0, 0]]));
        let a = b2(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.nonzero_count(), 2);
        let sup: Vec<BasisCell> = a.support().into_iter().collect();
        assert_eq!(sup, vec![BasisCell::new(1, 2), BasisCell::new(2, 1)]);
        assert!(Matrix::basis_matrix(BasisCell::new(3, 1), 2, 2, SemiringId::B2).is_err());
    }

    // E_ij * P_n(pi) = E_{i, pi(j)}, evaluated for the transposition.
    #[test]
    fn basis_shift_by_permutation() {
        let e12 = Matrix::basis_matrix(BasisCell::new(1, 2), 2, 2, SemiringId::B2).unwrap();
        let p = permutation_matrix(&Permutation::from_images(vec![2, 1]).unwrap(), SemiringId::B2)
            .unwrap();
        let e11 = Matrix::basis_matrix(BasisCell::new(1, 1), 2, 2, SemiringId::B2).unwrap();
        assert_eq!(e12.mul(&p).unwrap(), e11);
    }

    // E_ij E_uv = delta_ju E_iv over all 3x3 index combinations.
    #[test]
    fn kronecker_identity_exhaustive() {
        let id = SemiringId::B2;
        for i in 1..=3 {
            for j in 1..=3 {
                for u in 1..=3 {
                    for v in 1..=3 {
                        let left = Matrix::basis_matrix(BasisCell::new(i, j), 3, 3, id)
                            .unwrap()
                            .mul(&Matrix::basis_matrix(BasisCell::new(u, v), 3, 3, id).unwrap())
                            .unwrap();
                        let right = if j == u {
                            Matrix::basis_matrix(BasisCell::new(i, v), 3, 3, id).unwrap()
                        } else {
                            Matrix::zero(id, 3, 3).unwrap()
                        };
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_moves_basis_cells() {
        // P_m(rho^-1) E_ij P_n(sigma) = E_{rho(i), sigma(j)}
        let id = SemiringId::B2;
        let rho = Permutation::from_images(vec![2, 3, 1]).unwrap();
        let sigma = Permutation::from_images(vec![2, 1]).unwrap();
        let pm = permutation_matrix(&rho.inverse(), id).unwrap();
        let pn = permutation_matrix(&sigma, id).unwrap();
        for i in 1..=3 {
            for j in 1..=2 {
                let e = Matrix::basis_matrix(BasisCell::new(i, j), 3, 2, id).unwrap();
                let moved = pm.mul(&e).unwrap().mul(&pn).unwrap();
                let expect = Matrix::basis_matrix(
                    BasisCell::new(rho.apply(i), sigma.apply(j)),
                    3,
                    2,
                    id,
                )
                .unwrap();
                assert_eq!(moved, expect);
            }
        }
    }

    #[test]
    fn zero_sized_rejected() {
        assert!(Matrix::zero(SemiringId::B2, 0, 2).is_err());
        assert!(Matrix::zero(SemiringId::B2, 2, 0).is_err());
    }
}
