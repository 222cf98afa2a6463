//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Solves `A X = B` for a square nonsingular integer `A`, returning the
/// columns of `X`. Fails with [`Error::NonIntegral`] if some solution
/// coordinate is not an integer.
///
/// Forward elimination is Bareiss' one-step scheme, so every intermediate
/// entry is a minor of `[A | B]` and all divisions are exact. Back
/// substitution on the resulting triangular system then reproduces the
/// solution exactly whenever it is integral.
pub fn solve_integral(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let d = a.len();
    let k = b.first().map_or(0, |row| row.len());
    if b.len() != d || a.iter().any(|row| row.len() != d) {
        return Err(Error::SizeMismatch {
            left: d,
            right: b.len(),
        });
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    let width = d + k;
    let mut prev = BigInt::from(1);

    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::Singular(d))?;
        m.swap(col, pivot);
        for r in col + 1..d {
            for c in col + 1..width {
                let v = &m[col][col] * &m[r][c] - &m[r][col] * &m[col][c];
                debug_assert!((&v % &prev).is_zero());
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }

    let mut x = vec![vec![BigInt::zero(); d]; k];
    for (rhs, xs) in x.iter_mut().enumerate() {
        for row in (0..d).rev() {
            let mut acc = m[row][d + rhs].clone();
            for c in row + 1..d {
                acc -= &m[row][c] * &xs[c];
            }
            let (q, r) = acc.div_rem(&m[row][row]);
            if !r.is_zero() {
                return Err(Error::NonIntegral);
            }
            xs[row] = q;
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn solves_with_pivoting() {
        let a = ints(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        // x = (1, -2, 4)
        let b = ints(&[&[0], &[-1], &[7]]);
        let x = solve_integral(&a, &b).unwrap();
        assert_eq!(x, ints(&[&[1, -2, 4]]));
    }

    #[test]
    fn detects_singular_and_fractional() {
        let a = ints(&[&[1, 2], &[2, 4]]);
        let b = ints(&[&[1], &[2]]);
        assert_eq!(solve_integral(&a, &b), Err(Error::Singular(2)));

        let a = ints(&[&[2, 0], &[0, 1]]);
        let b = ints(&[&[1], &[1]]);
        assert_eq!(solve_integral(&a, &b), Err(Error::NonIntegral));
    }
}
