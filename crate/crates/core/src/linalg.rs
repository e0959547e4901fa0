//! Dense exact linear algebra over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;
pub type Matrix = Vec<Vec<Rational>>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Rational], m: &Matrix) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); cols];
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in m[k].iter().enumerate() {
            if !y.is_zero() {
                out[j] += x * y;
            }
        }
    }
    out
}

/// Matrix times column vector.
pub fn mul_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// First index where `a > b`, if any.
pub fn first_excess(a: &[Rational], b: &[Rational]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x > y)
}

/// First `(row, col)` where `a > b`, if any.
pub fn first_excess_matrix(a: &Matrix, b: &Matrix) -> Option<(usize, usize)> {
    a.iter()
        .zip(b)
        .enumerate()
        .find_map(|(i, (ra, rb))| first_excess(ra, rb).map(|j| (i, j)))
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
pub fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `a x = b` when the solution is unique; `None` when the system is
/// singular or inconsistent.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut m = vectors.to_vec();
    row_reduce(&mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
        assert_eq!(mul_vec(&a, &x), vec![int(3), int(5)]);
    }

    #[test]
    fn singular_and_inconsistent_systems() {
        let a = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&a, &[int(1), int(2)]).is_none());
        assert!(solve(&a, &[int(1), int(3)]).is_none());
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn overdetermined_but_consistent() {
        let a = vec![vec![int(1)], vec![int(2)]];
        assert_eq!(solve(&a, &[int(3), int(6)]), Some(vec![int(3)]));
        assert_eq!(solve(&a, &[int(3), int(5)]), None);
    }

    #[test]
    fn products() {
        let a = vec![vec![ratio(1, 2), ratio(1, 2)], vec![int(0), int(1)]];
        assert_eq!(mul(&a, &identity(2)), a);
        assert_eq!(vec_mul(&[int(1), int(0)], &a), vec![ratio(1, 2), ratio(1, 2)]);
    }
}
