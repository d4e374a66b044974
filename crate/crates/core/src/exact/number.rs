use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `⌊√n⌋` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeInput(n.to_string()));
    }
    Ok(n.sqrt())
}

/// Smallest `c >= 0` with `c² >= n`.
pub fn ceil_sqrt(n: &BigInt) -> Result<BigInt> {
    let r = isqrt(n)?;
    Ok(if &(&r * &r) == n { r } else { r + 1 })
}

/// Writes `n` as a sum of four squares `a² + b² + c² + d²` with
/// `a >= b >= c >= d >= 0`.
///
/// The result is the first tuple met when scanning `a` downward from `⌊√n⌋`,
/// then `b` downward from `min(a, ⌊√(n - a²)⌋)`, and so on. Branches whose
/// remainder cannot be covered by the smaller squares are cut, which does
/// not change which tuple comes first. The three nested scans bound the cost
/// by `O(n^{3/2})` bigint steps; in practice a tuple turns up after a handful
/// of steps, and the `c² - 4·T_ii` inputs the reduction produces are small.
pub fn four_square_decompose(n: &BigInt) -> Result<[BigInt; 4]> {
    if n.is_negative() {
        return Err(Error::NegativeInput(n.to_string()));
    }
    let three = BigInt::from(3);
    let two = BigInt::from(2);
    let mut a = n.sqrt();
    loop {
        let r1 = n - &a * &a;
        // b, c, d <= a, so r1 <= 3a²; smaller a only makes this worse.
        if r1 > &three * &a * &a {
            break;
        }
        let mut b = a.clone().min(r1.sqrt());
        loop {
            let r2 = &r1 - &b * &b;
            if r2 > &two * &b * &b {
                break;
            }
            let mut c = b.clone().min(r2.sqrt());
            loop {
                let r3 = &r2 - &c * &c;
                if r3 > &c * &c {
                    break;
                }
                let d = r3.sqrt();
                if &d * &d == r3 {
                    return Ok([a, b, c, d]);
                }
                if c.is_zero() {
                    break;
                }
                c -= 1;
            }
            if b.is_zero() {
                break;
            }
            b -= 1;
        }
        if a.is_zero() {
            break;
        }
        a -= 1;
    }
    unreachable!("every non-negative integer is a sum of four squares")
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
