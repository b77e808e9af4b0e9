//! Shared machinery for the grid-based solvers: node/weight extraction with
//! even-symmetry reduction, Chebyshev design matrices, and weighted least
//! squares.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polybase::{Basis, Polynomial};

use super::ApproxProblem;

/// A concrete discretization of an ApproxProblem: the nodes the solver works
/// on, their quadrature weights, and the (possibly even-reduced) Chebyshev
/// basis.
pub(crate) struct DiscreteSetup {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub even: bool,
    pub degree: usize,
    pub interval: (f64, f64),
    /// Number of basis functions: degree+1, or floor(degree/2)+1 when even.
    pub basis_size: usize,
}

impl DiscreteSetup {
    pub fn from_problem(problem: &ApproxProblem) -> Self {
        Self::build(problem, false)
    }

    /// Like `from_problem`, but with the panel edges added as constraint
    /// points (weight 0). Residual maxima of sup-norm problems sit exactly
    /// on interval endpoints and often on panel edges; interior Gauss nodes
    /// alone miss them by the edge-clustering gap.
    pub fn for_sup(problem: &ApproxProblem) -> Self {
        Self::build(problem, true)
    }

    fn build(problem: &ApproxProblem, include_edges: bool) -> Self {
        let even = problem.even_reduced();
        let (mut nodes, mut weights): (Vec<f64>, Vec<f64>) = if even {
            // Positive half with doubled weights; the graded grid on a
            // symmetric interval is symmetric, so this loses nothing.
            problem
                .grid
                .nodes()
                .iter()
                .zip(problem.grid.weights())
                .filter(|(&x, _)| x > 0.0)
                .map(|(&x, &w)| (x, 2.0 * w))
                .unzip()
        } else {
            (
                problem.grid.nodes().to_vec(),
                problem.grid.weights().to_vec(),
            )
        };
        if include_edges {
            let mut edges: Vec<f64> = problem
                .grid
                .panels()
                .iter()
                .flat_map(|&(a, b)| [a, b])
                .filter(|&e| !even || e >= 0.0)
                .filter(|&e| problem.target.eval(e).is_ok())
                .collect();
            edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
            edges.dedup();
            for e in edges {
                nodes.push(e);
                weights.push(0.0);
            }
        }
        // Keep nodes ordered; sign-change diagnostics rely on it.
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&i, &j| nodes[i].partial_cmp(&nodes[j]).unwrap());
        nodes = order.iter().map(|&i| nodes[i]).collect();
        weights = order.iter().map(|&i| weights[i]).collect();
        let basis_size = if even {
            problem.degree / 2 + 1
        } else {
            problem.degree + 1
        };
        Self {
            nodes,
            weights,
            even,
            degree: problem.degree,
            interval: problem.interval,
            basis_size,
        }
    }

    fn canonical(&self, x: f64) -> f64 {
        let (lo, hi) = self.interval;
        (2.0 * x - (lo + hi)) / (hi - lo)
    }

    /// Basis values at x: T_0..T_n, or T_0, T_2, ..., T_2m when even.
    pub fn basis_row(&self, x: f64) -> Vec<f64> {
        let t = self.canonical(x);
        let top = if self.even {
            2 * (self.basis_size - 1)
        } else {
            self.basis_size - 1
        };
        let mut all = Vec::with_capacity(top + 1);
        all.push(1.0);
        if top >= 1 {
            all.push(t);
        }
        for _ in 2..=top {
            let next = 2.0 * t * all[all.len() - 1] - all[all.len() - 2];
            all.push(next);
        }
        if self.even {
            (0..self.basis_size).map(|k| all[2 * k]).collect()
        } else {
            all
        }
    }

    pub fn design_matrix(&self) -> DMatrix<f64> {
        let rows: Vec<f64> = self
            .nodes
            .iter()
            .flat_map(|&x| self.basis_row(x))
            .collect();
        DMatrix::from_row_slice(self.nodes.len(), self.basis_size, &rows)
    }

    pub fn target_values(&self, problem: &ApproxProblem) -> Result<Vec<Complex64>> {
        self.nodes.iter().map(|&x| problem.target.eval(x)).collect()
    }

    /// Embeds solved basis coefficients into a full Chebyshev polynomial on
    /// the problem interval.
    pub fn assemble(&self, coeffs: &[Complex64]) -> Polynomial {
        let mut full = vec![Complex64::new(0.0, 0.0); self.degree + 1];
        for (k, c) in coeffs.iter().enumerate() {
            let idx = if self.even { 2 * k } else { k };
            full[idx] = *c;
        }
        Polynomial::new(full, Basis::ChebyshevFirstKind, self.interval)
            .expect("assembled coefficients are nonempty")
    }
}

/// Solves min_c sum_i w_i |f_i - (A c)_i|^2 for complex f with a real design
/// matrix; the real and imaginary parts decouple.
pub(crate) fn weighted_lsq(
    a: &DMatrix<f64>,
    w: &[f64],
    f: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    let b = a.ncols();
    let mut m = DMatrix::zeros(b, b);
    let mut rhs_re = DVector::zeros(b);
    let mut rhs_im = DVector::zeros(b);
    for i in 0..n {
        let wi = w[i];
        let row = a.row(i);
        for p in 0..b {
            let wp = wi * row[p];
            rhs_re[p] += wp * f[i].re;
            rhs_im[p] += wp * f[i].im;
            for q in p..b {
                m[(p, q)] += wp * row[q];
            }
        }
    }
    for p in 0..b {
        for q in 0..p {
            m[(p, q)] = m[(q, p)];
        }
    }
    let solve = |rhs: &DVector<f64>| -> Result<DVector<f64>> {
        if let Some(chol) = m.clone().cholesky() {
            return Ok(chol.solve(rhs));
        }
        m.clone()
            .svd(true, true)
            .solve(rhs, 1e-14)
            .map_err(|e| Error::Domain(format!("least-squares solve failed: {e}")))
    };
    let cre = solve(&rhs_re)?;
    let cim = solve(&rhs_im)?;
    Ok((0..b).map(|k| Complex64::new(cre[k], cim[k])).collect())
}

/// Residuals f_i - (A c)_i.
pub(crate) fn residuals(
    a: &DMatrix<f64>,
    coeffs: &[Complex64],
    f: &[Complex64],
) -> Vec<Complex64> {
    (0..a.nrows())
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, c) in coeffs.iter().enumerate() {
                acc += c * a[(i, k)];
            }
            f[i] - acc
        })
        .collect()
}

/// Locations where a real residual changes sign along the ordered nodes,
/// ignoring magnitudes below `floor`.
pub(crate) fn sign_change_locations(nodes: &[f64], r: &[f64], floor: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for (&x, &v) in nodes.iter().zip(r) {
        if v.abs() <= floor {
            continue;
        }
        if let Some((px, pv)) = prev {
            if pv.signum() != v.signum() {
                out.push(0.5 * (px + x));
            }
        }
        prev = Some((x, v));
    }
    out
}
