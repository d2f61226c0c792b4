//! Polynomial roots from the eigenvalues of the companion matrix, polished by Newton steps.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::poly::ComplexPoly;

const NEWTON_STEPS: usize = 3;
const SCHUR_MAX_ITER: usize = 10_000;

/// Complex Schur form of the companion matrix of the monic polynomial with
/// low-order coefficients `monic[0..n]`; its diagonal holds the roots.
fn companion_eigenvalues(monic: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = monic.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -monic[i]
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let (_, t) = Schur::try_new(m, f64::EPSILON, SCHUR_MAX_ITER)?.unpack();
    Some(t.diagonal().iter().copied().collect())
}

fn polish(p: &ComplexPoly<f64>, dp: &ComplexPoly<f64>, mut z: Complex64) -> Complex64 {
    for _ in 0..NEWTON_STEPS {
        let v = p.eval(z);
        let d = dp.eval(z);
        if v.norm() == 0.0 || d.norm() == 0.0 {
            break;
        }
        let next = z - v / d;
        // near multiple roots Newton may wander; keep only improving steps
        if next.is_finite() && p.eval(next).norm() < v.norm() {
            z = next;
        } else {
            break;
        }
    }
    z
}

/// All roots of `p` with multiplicity; empty for constants and for the zero polynomial.
///
/// Exact zero roots are split off first. Returns `None` only if the Schur
/// iteration fails to converge.
pub fn try_roots(p: &ComplexPoly<f64>) -> Option<Vec<Complex64>> {
    let Some(deg) = p.degree() else {
        return Some(Vec::new());
    };
    let c = p.coeffs();
    let zeros = c.iter().take_while(|v| v.norm() == 0.0).count();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if deg == zeros {
        return Some(out);
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c[zeros..deg].iter().map(|v| v / lead).collect();
    let raw = if monic.len() == 1 { vec![-monic[0]] } else { companion_eigenvalues(&monic)? };
    let dp = p.derivative();
    out.extend(raw.into_iter().map(|z| polish(p, &dp, z)));
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Some(out)
}

/// Backward-error style residual `|p(r)|/max(max|c_k|, Σ|c_k||r|ᵏ)`.
pub fn relative_residual(p: &ComplexPoly<f64>, r: Complex64) -> f64 {
    let terms: f64 = p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r.norm() + c.norm());
    p.eval(r).norm() / p.max_abs_coeff().max(terms).max(f64::MIN_POSITIVE)
}

/// [`try_roots`], panicking on the (never observed) Schur non-convergence.
pub fn roots(p: &ComplexPoly<f64>) -> Vec<Complex64> {
    try_roots(p).expect("companion matrix Schur iteration did not converge")
}
