//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection and
//! eigenvectors by inverse iteration.

use crate::error::{Error, Result};

const PIVOT_GUARD: f64 = 1e-300;
const SEQUENCE_RESCALE: f64 = 1e150;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::Numerical("non-finite matrix entry".into()));
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues strictly below `shift`: the count of negative
    /// pivots in the LDLᵀ factorization of T − shift·I.
    pub fn count_below(&self, shift: f64) -> usize {
        let mut count = 0;
        let mut pivot = self.diag[0] - shift;
        if pivot < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let guarded = if pivot.abs() < PIVOT_GUARD { PIVOT_GUARD.copysign(pivot) } else { pivot };
            pivot = self.diag[i] - shift - self.off[i - 1] * self.off[i - 1] / guarded;
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Eigenvalues ≥ `shift`, counted as sign agreements of consecutive
    /// leading principal minors p₀ = 1, p_k = (d_k − shift) p_{k−1} − e²_{k−1} p_{k−2}.
    /// A zero minor takes the sign opposite to its predecessor.
    pub fn sign_agreements(&self, shift: f64) -> usize {
        let mut prev2 = 0.0f64;
        let mut prev = 1.0f64;
        let mut prev_sign = 1.0f64;
        let mut agreements = 0;
        for i in 0..self.diag.len() {
            let e2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            let mut cur = (self.diag[i] - shift) * prev - e2 * prev2;
            let sign = if cur == 0.0 { -prev_sign } else { cur.signum() };
            if sign == prev_sign {
                agreements += 1;
            }
            if cur.abs() > SEQUENCE_RESCALE || (cur != 0.0 && cur.abs() < 1.0 / SEQUENCE_RESCALE) {
                let s = 1.0 / cur.abs();
                cur *= s;
                prev *= s;
            }
            prev2 = prev;
            prev = cur;
            prev_sign = sign;
        }
        agreements
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based) inside `[lo, hi]`, which must
    /// contain it. Bisection stops at an absolute width of `tol`.
    pub fn bisect(&self, index: usize, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
        if self.count_below(lo) > index || self.count_below(hi) <= index {
            return Err(Error::Numerical(format!("eigenvalue {index} not bracketed by [{lo}, {hi}]")));
        }
        for _ in 0..400 {
            if hi - lo <= tol {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Numerical(format!("bisection for eigenvalue {index} did not converge")))
    }

    /// Unit eigenvector for an (accurate) eigenvalue by inverse iteration.
    pub fn inverse_iteration(&self, eigenvalue: f64, iterations: usize) -> Result<Vec<f64>> {
        let n = self.diag.len();
        let scale = self.gershgorin().1.abs().max(self.gershgorin().0.abs()).max(1.0);
        let shift = eigenvalue + 1e-13 * scale;
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
        normalize(&mut v);
        for _ in 0..iterations.max(1) {
            v = solve_shifted(&self.diag, &self.off, shift, &v)?;
            normalize(&mut v);
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("inverse iteration produced non-finite values".into()));
        }
        Ok(v)
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Solves (T − shift·I) x = rhs by Gaussian elimination with partial pivoting.
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 1 {
        let d = diag[0] - shift;
        let d = if d == 0.0 { PIVOT_GUARD } else { d };
        return Ok(vec![rhs[0] / d]);
    }
    // rows hold (sub, main, super, second-super) after pivoting
    let mut main: Vec<f64> = diag.iter().map(|d| d - shift).collect();
    let mut sup: Vec<f64> = off.to_vec();
    sup.push(0.0);
    let mut sub: Vec<f64> = off.to_vec();
    let mut sup2 = vec![0.0; n];
    let mut b = rhs.to_vec();
    for i in 0..n - 1 {
        if sub[i].abs() > main[i].abs() {
            // swap rows i and i+1
            let (m0, s0, t0) = (main[i], sup[i], sup2[i]);
            main[i] = sub[i];
            sup[i] = main[i + 1];
            sup2[i] = sup[i + 1];
            main[i + 1] = s0;
            sup[i + 1] = t0;
            b.swap(i, i + 1);
            sub[i] = m0;
        }
        let pivot = if main[i] == 0.0 { PIVOT_GUARD } else { main[i] };
        main[i] = pivot;
        let factor = sub[i] / pivot;
        main[i + 1] -= factor * sup[i];
        if i + 1 < n - 1 {
            sup[i + 1] -= factor * sup2[i];
        }
        b[i + 1] -= factor * b[i];
    }
    if main[n - 1] == 0.0 {
        main[n - 1] = PIVOT_GUARD;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = b[n - 1] / main[n - 1];
    x[n - 2] = (b[n - 2] - sup[n - 2] * x[n - 1]) / main[n - 2];
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (b[i] - sup[i] * x[i + 1] - sup2[i] * x[i + 2]) / main[i];
    }
    Ok(x)
}
