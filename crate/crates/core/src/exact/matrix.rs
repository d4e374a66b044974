use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T> Matrix<T> {
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
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

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        (r < self.rows && c < self.cols).then(|| &self.data[r * self.cols + c])
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::from_raw(self.rows, self.cols, self.data.iter().map(f).collect())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small machine integers.
    pub fn from_i64_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int_scalar::<T>(v)).collect())
                .collect(),
        )
        .expect("literal matrix must be non-empty and rectangular")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_raw(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(vec![T::one(); n])
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in diag.into_iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.data.iter().enumerate().all(|(idx, v)| {
                if idx / self.cols == idx % self.cols {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
    }

    /// Entrywise `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        self.data[r * self.cols + c] = value;
    }

    /// Exact product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(T::matmul(self, rhs))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtract", |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, rhs: &Self, what: &str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix::from_raw(self.rows, self.cols, data))
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|v| v.clone() * factor.clone())
    }

    /// Conjugate transpose. Entries are real, so this is the plain transpose.
    pub fn conj_transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c].clone());
            }
        }
        Matrix::from_raw(self.cols, self.rows, data)
    }

    /// `self† · self`.
    pub fn gram(&self) -> Self {
        T::matmul(&self.conj_transpose(), self)
    }

    pub fn trace(&self) -> Result<T> {
        self.require_square()?;
        Ok((0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone()))
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Exact rank by fraction-free (Bareiss) elimination on an integer
    /// row-scaled copy.
    pub fn rank(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..m).map(|r| T::integer_row(self.row(r))).collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..m {
                for j in col + 1..n {
                    let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                    a[i][j] = v / &prev;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Whether `A^d = 0` for this `d x d` matrix, tested by repeated squaring.
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.require_square()?;
        let mut power = self.clone();
        let mut exp = 1usize;
        while exp < self.rows {
            if power.is_zero() {
                return Ok(true);
            }
            power = T::matmul(&power, &power);
            exp *= 2;
        }
        Ok(power.is_zero())
    }

    /// Smallest `m <= d` with `A^m = 0`, found by repeated multiplication.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        self.require_square()?;
        let mut power = self.clone();
        for m in 1..=self.rows {
            if power.is_zero() {
                return Ok(Some(m));
            }
            power = T::matmul(&power, self);
        }
        Ok(None)
    }

    /// Vertical concatenation of equally wide blocks.
    pub fn vstack(blocks: &[&Self]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("nothing to stack".into()))?;
        let cols = first.cols;
        if let Some(b) = blocks.iter().find(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack a {}-column block under {cols} columns",
                b.cols
            )));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Ok(Matrix::from_raw(rows, cols, data))
    }

    /// Copy of the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.rows || c0 + cols > self.cols || rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "block {rows}x{cols} at ({r0}, {c0}) does not fit in {}x{}",
                self.rows, self.cols
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            data.extend_from_slice(&self.row(r)[c0..c0 + cols]);
        }
        Ok(Matrix::from_raw(rows, cols, data))
    }

    /// Pads `self` into a larger zero matrix at offset `(r0, c0)`.
    pub fn embed(&self, rows: usize, cols: usize, r0: usize, c0: usize) -> Result<Self> {
        if r0 + self.rows > rows || c0 + self.cols > cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} block at ({r0}, {c0}) does not fit in {rows}x{cols}",
                self.rows, self.cols
            )));
        }
        let mut out = Self::zeros(rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[(r0 + r) * cols + c0 + c] = self.data[r * self.cols + c].clone();
            }
        }
        Ok(out)
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = self.embed(rows, cols, 0, 0).expect("fits by construction");
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.data[(self.rows + r) * cols + self.cols + c] = other[(r, c)].clone();
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(T::to_rational)
    }

    /// Integer matrix `Z` and positive denominator `D` with `self = Z / D`;
    /// `D` is the least common multiple of the entry denominators.
    pub fn to_integer_lift(&self) -> (IntMatrix, BigInt) {
        let rat = self.to_rational();
        let den = rat
            .data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let z = rat.map(|x| x.numer() * (&den / x.denom()));
        (z, den)
    }

    pub fn to_json_value(&self) -> Value {
        let data: Vec<Value> = (0..self.rows)
            .map(|r| Value::Array(self.row(r).iter().map(T::to_json).collect()))
            .collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "data": data })
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let dim = |key: &str| -> Result<usize> {
            value
                .get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| Error::Parse(format!("matrix is missing integer field {key:?}")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let data = value
            .get("data")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix is missing array field \"data\"".into()))?;
        if data.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix declares {rows} rows but has {}",
                data.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (r, row) in data.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("row {r} is not an array")))?;
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, matrix declares {cols} columns",
                    row.len()
                )));
            }
            for v in row {
                entries.push(T::from_json(v)?);
            }
        }
        Self::new(rows, cols, entries)
    }
}

impl IntMatrix {
    /// Divides out the positive gcd of all entries. Zero stays zero.
    pub fn primitive_part(mut self) -> IntMatrix {
        let g = self.data.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in &mut self.data {
                *x /= &g;
            }
        }
        self
    }
}

fn int_scalar<T: Scalar>(v: i64) -> T {
    // Build from repeated doubling so the trait needs no `From<i64>` bound.
    let mut acc = T::zero();
    let mut base = T::one();
    let mut n = v.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        n >>= 1;
    }
    if v < 0 {
        -acc
    } else {
        acc
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str("]")
    }
}

impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        Self::from_json_value(&value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(rows: &[[i64; 2]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn small_int_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-4i64..=4, n * n)
            .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
    }

    #[test]
    fn identity_is_neutral() {
        let m = IntMatrix::from_i64_rows(&[[1, -2, 3], [0, 5, 7], [-1, 1, 9]]);
        assert_eq!(IntMatrix::identity(3).mul(&m).unwrap(), m);
    }

    #[test]
    fn nilpotent_squares_to_zero() {
        let n = int(&[[0, 1], [0, 0]]);
        assert!(n.mul(&n).unwrap().is_zero());
        let m = int(&[[1, -1], [1, -1]]);
        assert_eq!(m.mul(&m).unwrap(), IntMatrix::zeros(2, 2));
    }

    #[test]
    fn mul_rejects_mismatched_shapes() {
        let a = IntMatrix::zeros(2, 3);
        let err = a.mul(&a).unwrap_err();
        assert_eq!(err.code(), "dimension-mismatch");
    }

    #[test]
    fn rational_product_is_reduced() {
        let half = RatMatrix::identity(2).scale(&BigRational::new(1.into(), 2.into()));
        let p = half.mul(&half.scale(&BigRational::from_integer(2.into()))).unwrap();
        assert_eq!(p, half);
        assert!(p.entries().iter().all(|x| x.denom() > &BigInt::zero()));
    }

    #[test]
    fn transpose_examples() {
        let p1 = IntMatrix::diagonal(vec![(-1).into(), 1.into(), 1.into()]);
        assert_eq!(p1.conj_transpose(), p1);
        assert_eq!(int(&[[0, 1], [0, 0]]).conj_transpose(), int(&[[0, 0], [1, 0]]));
        let r = IntMatrix::zeros(2, 3).conj_transpose();
        assert_eq!((r.rows(), r.cols()), (3, 2));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntMatrix::identity(5).rank(), 5);
        assert_eq!(IntMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(int(&[[1, -1], [1, -1]]).rank(), 1);
        let r = RatMatrix::from_i64_rows(&[[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(r.rank(), 2);
        assert_eq!(IntMatrix::from_i64_rows(&[[0, 0, 1], [0, 2, 0], [3, 0, 0]]).rank(), 3);
    }

    #[test]
    fn nilpotency_examples() {
        assert!(int(&[[0, 1], [0, 0]]).is_nilpotent().unwrap());
        assert!(!IntMatrix::identity(2).is_nilpotent().unwrap());
        let mut upper = RatMatrix::zeros(15, 15);
        for r in 0..15 {
            for c in r + 1..15 {
                upper.set(r, c, BigRational::new(((r * c) as i64 + 1).into(), 7.into()));
            }
        }
        assert!(upper.is_nilpotent().unwrap());
        assert_eq!(upper.nilpotency_index().unwrap(), Some(15));
        assert_eq!(IntMatrix::zeros(2, 3).is_nilpotent().unwrap_err().code(), "not-square");
    }

    // Exhaustive oracle over all 2x2 matrices with entries in {-1, 0, 1}.
    #[test]
    fn nilpotency_matches_power_oracle_2x2() {
        let vals = [-1i64, 0, 1];
        for a in vals {
            for b in vals {
                for c in vals {
                    for d in vals {
                        let m = int(&[[a, b], [c, d]]);
                        let m2 = m.mul(&m).unwrap();
                        let oracle = m.is_zero() || m2.is_zero();
                        assert_eq!(m.is_nilpotent().unwrap(), oracle, "{m:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn lift_and_primitive_part() {
        let r = RatMatrix::from_rows(vec![vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(2.into(), 3.into()),
        ]])
        .unwrap();
        let (z, d) = r.to_integer_lift();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(z, IntMatrix::from_i64_rows(&[[3, 4]]));
        let p = IntMatrix::from_i64_rows(&[[4, -6], [0, 8]]).primitive_part();
        assert_eq!(p, IntMatrix::from_i64_rows(&[[2, -3], [0, 4]]));
    }

    #[test]
    fn json_accepts_mixed_entry_forms() {
        let v: Value = serde_json::json!({"rows": 2, "cols": 2, "data": [[1, "-3"], ["6/4", "0/5"]]});
        let m = RatMatrix::from_json_value(&v).unwrap();
        assert_eq!(m[(1, 0)], BigRational::new(3.into(), 2.into()));
        assert!(m[(1, 1)].is_zero());
        assert!(IntMatrix::from_json_value(&v).is_err());
        let float: Value = serde_json::json!({"rows": 1, "cols": 1, "data": [[0.5]]});
        assert_eq!(RatMatrix::from_json_value(&float).unwrap_err().code(), "parse");
        let ragged: Value = serde_json::json!({"rows": 2, "cols": 2, "data": [[1, 2], [3]]});
        assert_eq!(IntMatrix::from_json_value(&ragged).unwrap_err().code(), "dimension-mismatch");
    }

    #[test]
    fn huge_integers_round_trip_as_strings() {
        let big: BigInt = BigInt::from(10).pow(30);
        let m = IntMatrix::new(1, 1, vec![big.clone()]).unwrap();
        let v = m.to_json_value();
        assert_eq!(v["data"][0][0], Value::String(big.to_string()));
        assert_eq!(IntMatrix::from_json_value(&v).unwrap(), m);
    }

    proptest! {
        #[test]
        fn mul_is_associative(a in small_int_matrix(3), b in small_int_matrix(3), c in small_int_matrix(3)) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn transpose_is_involution(a in small_int_matrix(3)) {
            prop_assert_eq!(a.conj_transpose().conj_transpose(), a);
        }

        #[test]
        fn rational_kernel_matches_integer_kernel(a in small_int_matrix(3), b in small_int_matrix(3), k in 1i64..7) {
            // Scaling both operands by 1/k scales the product by 1/k^2.
            let inv = BigRational::new(1.into(), k.into());
            let p = a.to_rational().scale(&inv).mul(&b.to_rational().scale(&inv)).unwrap();
            let expect = a.mul(&b).unwrap().to_rational().scale(&(inv.clone() * inv));
            prop_assert_eq!(p, expect);
        }

        #[test]
        fn rank_agrees_with_rational_elimination(a in small_int_matrix(4)) {
            prop_assert_eq!(a.rank(), gauss_rank(&a.to_rational()));
        }

        #[test]
        fn json_round_trip(a in small_int_matrix(3), k in 1i64..5) {
            let r = a.to_rational().scale(&BigRational::new(1.into(), k.into()));
            let text = serde_json::to_string(&r).unwrap();
            let back: RatMatrix = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, r);
        }
    }

    // Textbook Gaussian elimination over Q, independent of the Bareiss path.
    fn gauss_rank(m: &RatMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            let pivot_row = a[rank].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && !row[col].is_zero() {
                    let f = row[col].clone() / &pivot_row[col];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= y * &f;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
