//! Small numerical kernels shared by the solver, integrators and quadratures.

use crate::algebra::C64;
use std::ops::{Add, Mul};

/// Lagrange weights of the four nodes 0,1,2,3 evaluated at position `p`.
#[inline]
pub fn lagrange4(p: f64) -> [f64; 4] {
    let (a, b, c, d) = (p, p - 1.0, p - 2.0, p - 3.0);
    [-b * c * d / 6.0, a * c * d / 2.0, -a * b * d / 2.0, a * b * c / 6.0]
}

/// Stencil start and local coordinate for cubic interpolation on a uniform grid
/// of `n` nodes with spacing `h` starting at `x0`.
#[inline]
pub fn cubic_stencil(n: usize, x0: f64, h: f64, x: f64) -> (usize, f64) {
    let mut q = (x - x0) / h;
    let r = q.round();
    if (q - r).abs() < 1e-9 {
        q = r;
    }
    let i = q.floor() as isize;
    let start = (i - 1).clamp(0, n as isize - 4) as usize;
    (start, q - start as f64)
}

/// Cubic interpolation of uniformly sampled data (needs at least four samples).
pub fn interp_uniform<T>(values: &[T], x0: f64, h: f64, x: f64) -> T
where
    T: Copy + Mul<f64, Output = T> + Add<Output = T>,
{
    let (s, p) = cubic_stencil(values.len(), x0, h, x);
    let w = lagrange4(p);
    values[s] * w[0] + values[s + 1] * w[1] + values[s + 2] * w[2] + values[s + 3] * w[3]
}

/// Cubic interpolation on an arbitrary increasing abscissa.
pub fn interp_nonuniform(xs: &[f64], ys: &[C64], x: f64) -> C64 {
    let n = xs.len();
    let i = xs.partition_point(|&v| v <= x).saturating_sub(1);
    let start = (i as isize - 1).clamp(0, n as isize - 4) as usize;
    let mut acc = C64::new(0.0, 0.0);
    for j in start..start + 4 {
        let mut w = 1.0;
        for m in start..start + 4 {
            if m != j {
                w *= (x - xs[m]) / (xs[j] - xs[m]);
            }
        }
        acc += ys[j] * w;
    }
    acc
}

/// Running integral of uniformly sampled `f` with fourth-order local rules.
pub fn cumulative_integral(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for j in 1..n {
            out[j] = out[j - 1] + 0.5 * h * (f[j - 1] + f[j]);
        }
        return out;
    }
    let last = n - 1;
    for j in 0..last {
        let piece = if j == 0 {
            9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]
        } else if j == last - 1 {
            f[j - 2] - 5.0 * f[j - 1] + 19.0 * f[j] + 9.0 * f[j + 1]
        } else {
            -f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]
        };
        out[j + 1] = out[j] + piece * h / 24.0;
    }
    out
}

/// Composite fourth-order integral of uniformly sampled complex data.
pub fn integrate_complex(f: &[C64], h: f64) -> C64 {
    let re: Vec<f64> = f.iter().map(|z| z.re).collect();
    let im: Vec<f64> = f.iter().map(|z| z.im).collect();
    let a = cumulative_integral(&re, h);
    let b = cumulative_integral(&im, h);
    C64::new(*a.last().unwrap_or(&0.0), *b.last().unwrap_or(&0.0))
}

/// Fourth-order first derivative on a uniform grid, one-sided near the ends.
pub fn derivative4(f: &[C64], h: f64) -> Vec<C64> {
    let n = f.len();
    assert!(n >= 5, "derivative4 needs at least five samples");
    let s = 1.0 / (12.0 * h);
    let mut d = vec![C64::new(0.0, 0.0); n];
    d[0] = (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * s;
    d[1] = (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * s;
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * s;
    }
    let m = n - 1;
    d[m - 1] = (f[m] * 3.0 + f[m - 1] * 10.0 - f[m - 2] * 18.0 + f[m - 3] * 6.0 - f[m - 4]) * s;
    d[m] = (f[m] * 25.0 - f[m - 1] * 48.0 + f[m - 2] * 36.0 - f[m - 3] * 16.0 + f[m - 4] * 3.0) * s;
    d
}

/// One-sided fourth-order derivative at the first sample.
pub fn left_derivative4(f: &[C64], h: f64) -> C64 {
    (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) / (12.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_reproduces_cubics() {
        let xs: Vec<f64> = (0..10).map(|i| 0.3 * i as f64).collect();
        let p = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x - 0.25 * x * x * x;
        let v: Vec<f64> = xs.iter().map(|&x| p(x)).collect();
        for &x in &[0.0, 0.1, 1.37, 2.69, 2.7] {
            assert!((interp_uniform(&v, 0.0, 0.3, x) - p(x)).abs() < 1e-12);
        }
        assert_eq!(interp_uniform(&v, 0.0, 0.3, 0.3 * 4.0), v[4]);
    }

    #[test]
    fn cumulative_integral_is_fourth_order() {
        let err = |n: usize| {
            let h = 2.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|j| (j as f64 * h).exp()).collect();
            let c = cumulative_integral(&f, h);
            (c[n] - (2f64.exp() - 1.0)).abs()
        };
        let ratio = err(40) / err(80);
        assert!(ratio > 13.0, "ratio {ratio}");
    }

    #[test]
    fn derivative_is_exact_on_quartics() {
        let h = 0.1;
        let f: Vec<C64> = (0..12).map(|j| C64::new((j as f64 * h).powi(4), j as f64 * h)).collect();
        let d = derivative4(&f, h);
        for (j, dj) in d.iter().enumerate() {
            let x = j as f64 * h;
            assert!((dj - C64::new(4.0 * x * x * x, 1.0)).norm() < 1e-10);
        }
    }
}
