//! Dense Gaussian elimination over an arbitrary scalar field.

use crate::exactnum::Scalar;

/// Row-reduce `a` in place, treating only the first `ncols` columns as pivot
/// candidates. Returns the pivot columns.
pub fn rref<Q: Scalar>(a: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][col].is_negligible()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = Q::one() / a[r][col].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_negligible() {
                let f = a[i][col].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_negligible() {
                        *d = d.clone() - f.clone() * s.clone();
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Solve A y = b where each row of `a` is `[A_row | b]` and A has `n` columns.
/// Returns the solution with free variables set to zero, or None if inconsistent.
pub fn solve_augmented<Q: Scalar>(a: &mut [Vec<Q>], n: usize) -> Option<Vec<Q>> {
    let pivots = rref(a, n);
    for row in a.iter().skip(pivots.len()) {
        if !row[n].is_negligible() {
            return None;
        }
    }
    let mut y = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        y[c] = a[r][n].clone();
    }
    Some(y)
}

/// Basis of the right nullspace {v : A v = 0} of an m × n matrix.
pub fn nullspace<Q: Scalar>(a: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = a.to_vec();
    let pivots = rref(&mut m, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn r(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn solves_rational_system() {
        let mut a = vec![vec![r(2), r(1), r(5)], vec![r(1), r(-1), r(1)]];
        let y = solve_augmented(&mut a, 2).unwrap();
        assert_eq!(y, vec![r(2), r(1)]);
    }

    #[test]
    fn detects_inconsistency() {
        let mut a = vec![vec![r(1), r(1), r(1)], vec![r(2), r(2), r(3)]];
        assert!(solve_augmented(&mut a, 2).is_none());
    }

    #[test]
    fn nullspace_in_floats() {
        let a = vec![vec![1.0f64, 2.0, 3.0], vec![2.0, 4.0, 6.0]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: f64 = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!(s.abs() < 1e-12);
        }
    }
}
