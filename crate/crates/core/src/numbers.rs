//! Exact integer helpers with overflow detection.

use crate::error::{Error, Result};

/// `C(a, b)`, defined as 0 when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> Result<u64> {
    if b < 0 || a < 0 || b > a {
        return Ok(0);
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc: u128 = 1;
    for k in 1..=b {
        // acc * (a - b + k) is divisible by k at every step
        acc = acc * (a - b + k) as u128 / k as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial"));
        }
    }
    Ok(acc as u64)
}

/// `C(2n, n)`.
pub fn central_binomial(n: u64) -> Result<u64> {
    binomial(2 * n as i64, n as i64).map_err(|_| Error::Overflow("central_binomial"))
}

/// `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Result<u64> {
    let b = binomial(2 * n as i64, n as i64).map_err(|_| Error::Overflow("catalan"))?;
    Ok(b / (n + 1))
}

pub fn pow2(e: u32) -> Result<u64> {
    1u64.checked_shl(e)
        .filter(|_| e < 64)
        .ok_or(Error::Overflow("power of two"))
}
