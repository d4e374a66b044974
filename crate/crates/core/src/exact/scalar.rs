use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Entry type of a dense exact matrix.
///
/// Implemented for [`BigInt`] and [`BigRational`]. The multiplication kernel
/// lives on the trait so each scalar kind can use its own fast path.
pub trait Scalar:
    Clone + Eq + Hash + fmt::Debug + fmt::Display + Zero + One + Signed + Send + Sync + 'static
{
    /// Product kernel; dimensions are already checked by the caller.
    fn matmul(lhs: &Matrix<Self>, rhs: &Matrix<Self>) -> Matrix<Self>;

    /// A positive multiple of `row` with integer entries.
    fn integer_row(row: &[Self]) -> Vec<BigInt>;

    fn to_rational(&self) -> BigRational;

    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;
}

fn int_kernel(lhs: &Matrix<BigInt>, rhs: &Matrix<BigInt>) -> Vec<BigInt> {
    let (n, m, p) = (lhs.rows(), lhs.cols(), rhs.cols());
    let mut out = vec![BigInt::zero(); n * p];
    let a = lhs.entries();
    let b = rhs.entries();
    for i in 0..n {
        let acc = &mut out[i * p..(i + 1) * p];
        for k in 0..m {
            let x = &a[i * m + k];
            if x.is_zero() {
                continue;
            }
            let brow = &b[k * p..(k + 1) * p];
            for (slot, y) in acc.iter_mut().zip(brow) {
                if !y.is_zero() {
                    *slot += x * y;
                }
            }
        }
    }
    out
}

impl Scalar for BigInt {
    fn matmul(lhs: &Matrix<Self>, rhs: &Matrix<Self>) -> Matrix<Self> {
        Matrix::from_raw(lhs.rows(), rhs.cols(), int_kernel(lhs, rhs))
    }

    fn integer_row(row: &[Self]) -> Vec<BigInt> {
        row.to_vec()
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn to_json(&self) -> Value {
        match self.to_i64() {
            Some(v) => Value::from(v),
            None => Value::String(self.to_string()),
        }
    }

    fn from_json(value: &Value) -> Result<Self> {
        let r = BigRational::from_json(value)?;
        if !r.is_integer() {
            return Err(Error::Parse(format!("expected an integer, found {r}")));
        }
        Ok(r.to_integer())
    }
}

impl Scalar for BigRational {
    // Lift both operands to integer matrices over a common denominator,
    // multiply there, and reduce once per output entry.
    fn matmul(lhs: &Matrix<Self>, rhs: &Matrix<Self>) -> Matrix<Self> {
        let (za, da) = lhs.to_integer_lift();
        let (zb, db) = rhs.to_integer_lift();
        let den = da * db;
        let data = int_kernel(&za, &zb)
            .into_iter()
            .map(|z| {
                if z.is_zero() {
                    BigRational::zero()
                } else {
                    BigRational::new(z, den.clone())
                }
            })
            .collect();
        Matrix::from_raw(lhs.rows(), rhs.cols(), data)
    }

    fn integer_row(row: &[Self]) -> Vec<BigInt> {
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        row.iter()
            .map(|x| x.numer() * (&l / x.denom()))
            .collect()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn to_json(&self) -> Value {
        if self.is_integer() {
            self.numer().to_json()
        } else {
            Value::String(format_ratio(self))
        }
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Number(n) => {
                if let Some(v) = n.as_i64() {
                    Ok(BigRational::from_integer(v.into()))
                } else if let Some(v) = n.as_u64() {
                    Ok(BigRational::from_integer(v.into()))
                } else {
                    Err(Error::Parse(format!(
                        "non-integer JSON number {n}; write rationals as \"p/q\" strings"
                    )))
                }
            }
            Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("expected a number or string, found {other}"))),
        }
    }
}

/// Parses `"p"` or `"p/q"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(int(p)?, q))
        }
    }
}

/// Always renders `p/q`, including integers (`3/1`).
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
