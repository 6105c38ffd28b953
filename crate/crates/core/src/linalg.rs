//! Dense complex LU with partial pivoting for the small fixed-size systems
//! produced by the vectorized Bloch equations.

use num_complex::Complex64;

pub type Matrix<const N: usize> = [[Complex64; N]; N];
pub type Vector<const N: usize> = [Complex64; N];

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Packed LU factors: unit lower triangle below the diagonal, U on and above.
#[derive(Debug, Clone)]
pub struct Lu<const N: usize> {
    factors: Matrix<N>,
    pivots: [usize; N],
    norm1: f64,
}

/// Returned when a pivot is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singular;

impl<const N: usize> Lu<N> {
    pub fn factor(a: &Matrix<N>) -> Result<Self, Singular> {
        let norm1 = norm1(a);
        let mut m = *a;
        let mut pivots = [0usize; N];
        for k in 0..N {
            let mut p = k;
            let mut best = m[k][k].norm();
            for (i, row) in m.iter().enumerate().skip(k + 1) {
                let mag = row[k].norm();
                if mag > best {
                    best = mag;
                    p = i;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Singular);
            }
            pivots[k] = p;
            m.swap(k, p);
            let pivot_row = m[k];
            let inv = pivot_row[k].inv();
            for row in m.iter_mut().skip(k + 1) {
                let l = row[k] * inv;
                row[k] = l;
                if l != ZERO {
                    for j in k + 1..N {
                        row[j] -= l * pivot_row[j];
                    }
                }
            }
        }
        Ok(Lu {
            factors: m,
            pivots,
            norm1,
        })
    }

    pub fn solve(&self, b: &Vector<N>) -> Vector<N> {
        let m = &self.factors;
        let mut x = *b;
        for k in 0..N {
            x.swap(k, self.pivots[k]);
        }
        for i in 0..N {
            let mut s = x[i];
            for j in 0..i {
                s -= m[i][j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..N).rev() {
            let mut s = x[i];
            for j in i + 1..N {
                s -= m[i][j] * x[j];
            }
            x[i] = s / m[i][i];
        }
        x
    }

    /// Solves Aᴴx = b.
    pub fn solve_adjoint(&self, b: &Vector<N>) -> Vector<N> {
        let m = &self.factors;
        let mut x = *b;
        // Uᴴ is lower triangular
        for i in 0..N {
            let mut s = x[i];
            for j in 0..i {
                s -= m[j][i].conj() * x[j];
            }
            x[i] = s / m[i][i].conj();
        }
        // Lᴴ is unit upper triangular
        for i in (0..N).rev() {
            let mut s = x[i];
            for j in i + 1..N {
                s -= m[j][i].conj() * x[j];
            }
            x[i] = s;
        }
        for k in (0..N).rev() {
            x.swap(k, self.pivots[k]);
        }
        x
    }

    /// Hager–Higham estimate of ‖A⁻¹‖₁ (a lower bound, usually within a
    /// small factor of the true value).
    pub fn inverse_norm1_estimate(&self) -> f64 {
        let n = N as f64;
        let mut x = [Complex64::new(1.0 / n, 0.0); N];
        let mut estimate = 0.0;
        let mut last_j = usize::MAX;
        for iteration in 0..5 {
            let y = self.solve(&x);
            let y_norm = vec_norm1(&y);
            if iteration > 0 && y_norm <= estimate {
                break;
            }
            estimate = y_norm;
            let signs: Vector<N> = std::array::from_fn(|i| {
                let mag = y[i].norm();
                if mag == 0.0 {
                    ONE
                } else {
                    y[i] / mag
                }
            });
            let z = self.solve_adjoint(&signs);
            let (j, z_max) = z.iter().enumerate().map(|(i, v)| (i, v.norm())).fold(
                (0, f64::NEG_INFINITY),
                |acc, cur| if cur.1 > acc.1 { cur } else { acc },
            );
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if iteration > 0 && (z_max <= ztx || j == last_j) {
                break;
            }
            last_j = j;
            x = [ZERO; N];
            x[j] = ONE;
        }
        // alternating-sign probe guards against the cases the power-like
        // iteration misses
        let alt: Vector<N> = std::array::from_fn(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let denom = if N > 1 { (N - 1) as f64 } else { 1.0 };
            Complex64::new(sign * (1.0 + i as f64 / denom), 0.0)
        });
        let alt_est = 2.0 * vec_norm1(&self.solve(&alt)) / (3.0 * n);
        estimate.max(alt_est)
    }

    /// Estimated one-norm condition number κ₁(A).
    pub fn condition_estimate(&self) -> f64 {
        self.norm1 * self.inverse_norm1_estimate()
    }
}

/// Factors `a`, estimates its condition and solves `a x = b`. Fails with the
/// condition estimate (infinite for an exact zero pivot) when it exceeds
/// `max_condition`.
pub fn solve_checked<const N: usize>(
    a: &Matrix<N>,
    b: &Vector<N>,
    max_condition: f64,
) -> Result<Vector<N>, f64> {
    let lu = Lu::factor(a).map_err(|_| f64::INFINITY)?;
    let condition = lu.condition_estimate();
    if !(condition <= max_condition) {
        return Err(condition);
    }
    Ok(lu.solve(b))
}

pub fn norm1<const N: usize>(a: &Matrix<N>) -> f64 {
    (0..N)
        .map(|j| a.iter().map(|row| row[j].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn vec_norm1<const N: usize>(v: &Vector<N>) -> f64 {
    v.iter().map(|x| x.norm()).sum()
}

pub fn mat_vec<const N: usize>(a: &Matrix<N>, x: &Vector<N>) -> Vector<N> {
    std::array::from_fn(|i| a[i].iter().zip(x).map(|(aij, xj)| aij * xj).sum())
}
