//! Slow reference implementations used as ground truth by the tests.
//!
//! Nothing here calls into [`crate::walsh`], [`crate::erasure`] or
//! [`crate::codec`]; only the field tables are shared.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Evaluates the unique polynomial of degree `< points.len()` through
/// `(points[i], values[i])` at `x`, by the textbook Lagrange sum. O(k²).
pub fn naive_interpolate_eval(points: &[usize], values: &[Elem], x: usize, field: &Field) -> Result<Elem> {
    if points.len() != values.len() {
        return Err(Error::BadLength { expected: points.len(), actual: values.len() });
    }
    for (i, &p) in points.iter().enumerate() {
        if points[..i].contains(&p) {
            return Err(Error::DuplicatePosition(p));
        }
    }
    let x = x as Elem;
    let mut acc = 0;
    for (i, (&u, &v)) in points.iter().zip(values).enumerate() {
        let u = u as Elem;
        let mut num = 1;
        let mut den = 1;
        for (j, &y) in points.iter().enumerate() {
            if i != j {
                let y = y as Elem;
                num = field.mul(num, x ^ y);
                den = field.mul(den, u ^ y);
            }
        }
        acc ^= field.mul(v, field.div(num, den));
    }
    Ok(acc)
}

/// `out[x] = Σ_y v[y]·(−1)^popcount(x & y)`, by the double loop.
pub fn naive_walsh(v: &[i64]) -> Result<Vec<i64>> {
    if !v.len().is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(v.len()));
    }
    Ok((0..v.len())
        .map(|x| {
            v.iter()
                .enumerate()
                .map(|(y, &val)| if (x & y).count_ones() % 2 == 0 { val } else { -val })
                .sum()
        })
        .collect())
}

/// Horner evaluation of the polynomial with `coeffs` (constant term first) at
/// every field point.
pub fn naive_encode(coeffs: &[Elem], field: &Field) -> Vec<Elem> {
    (0..field.q() as Elem)
        .map(|x| coeffs.iter().rev().fold(0, |acc, &c| field.mul(acc, x) ^ c))
        .collect()
}
