use num_traits::Zero;
use serde::Serialize;

use super::ratmat::RatMat;
use super::LieError;
use crate::scalars::Rat;

/// A finite-dimensional Lie algebra over the rationals, given by structure
/// constants: `[x_i, x_j] = sum_k c[i][j][k] x_k`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rat>>>,
    labels: Vec<String>,
}

impl LieAlgebra {
    pub fn new(dim: usize, c: Vec<Vec<Vec<Rat>>>, labels: Vec<String>) -> Self {
        assert_eq!(c.len(), dim);
        assert!(c.iter().all(|ci| ci.len() == dim && ci.iter().all(|cij| cij.len() == dim)));
        assert_eq!(labels.len(), dim);
        LieAlgebra { dim, c, labels }
    }

    pub fn abelian(dim: usize) -> Self {
        let c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        let labels = (0..dim).map(|i| format!("x{i}")).collect();
        LieAlgebra::new(dim, c, labels)
    }

    /// Derives structure constants from a family of matrices that is closed
    /// under commutators.
    pub fn from_matrix_basis(mats: &[RatMat], labels: Vec<String>) -> Result<Self, LieError> {
        let dim = mats.len();
        assert!(dim >= 1);
        let n = mats[0].rows();
        assert!(mats.iter().all(|m| m.rows() == n && m.cols() == n));
        // columns of B are the vectorized basis matrices
        let b = RatMat::from_fn(n * n, dim, |rc, k| {
            mats[k].get(rc / n, rc % n).clone()
        });
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let comm = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
                let rhs: Vec<Rat> =
                    (0..n * n).map(|rc| comm.get(rc / n, rc % n).clone()).collect();
                let x = b.solve(&rhs).ok_or_else(|| {
                    LieError::NotClosed(format!("[{i},{j}] is outside the span"))
                })?;
                // the solution must be exact, not just least-squares-like
                let back = b.apply(&x);
                if back != rhs {
                    return Err(LieError::NotClosed(format!("[{i},{j}] solve mismatch")));
                }
                c[i][j] = x;
            }
        }
        Ok(LieAlgebra::new(dim, c, labels))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    pub fn constants_mut(&mut self) -> &mut Vec<Vec<Vec<Rat>>> {
        &mut self.c
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let scale = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &scale * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Subalgebra spanned by a subset of the basis; errors when the subset
    /// is not closed under the bracket.
    pub fn subalgebra(&self, indices: &[usize]) -> Result<LieAlgebra, LieError> {
        let k = indices.len();
        let mut c = vec![vec![vec![Rat::zero(); k]; k]; k];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                for t in 0..self.dim {
                    let v = &self.c[i][j][t];
                    if v.is_zero() {
                        continue;
                    }
                    match indices.iter().position(|&s| s == t) {
                        Some(tt) => c[a][b][tt] = v.clone(),
                        None => {
                            return Err(LieError::NotClosed(format!(
                                "bracket [{},{}] leaves the span",
                                self.labels[i], self.labels[j]
                            )))
                        }
                    }
                }
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(LieAlgebra::new(k, c, labels))
    }
}

/// A finite-dimensional module: one action matrix per algebra basis vector.
#[derive(Clone, Debug)]
pub struct LieModule {
    dim: usize,
    action: Vec<RatMat>,
}

impl LieModule {
    pub fn new(dim: usize, action: Vec<RatMat>) -> Self {
        assert!(action.iter().all(|m| m.rows() == dim && m.cols() == dim));
        LieModule { dim, action }
    }

    pub fn trivial(g: &LieAlgebra, dim: usize) -> Self {
        LieModule::new(dim, vec![RatMat::zero(dim, dim); g.dim()])
    }

    /// Adjoint module: `rho(x_i) e_j = [x_i, x_j]`.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        let d = g.dim();
        let action = (0..d)
            .map(|i| RatMat::from_fn(d, d, |k, j| g.constant(i, j, k).clone()))
            .collect();
        LieModule::new(d, action)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &RatMat {
        &self.action[i]
    }

    pub fn action_matrices(&self) -> &[RatMat] {
        &self.action
    }

    /// Action of an arbitrary algebra element given in coordinates.
    pub fn action_of(&self, coords: &[Rat]) -> RatMat {
        let mut out = RatMat::zero(self.dim, self.dim);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    /// Restriction along a subset of basis indices of the acting algebra.
    pub fn restrict(&self, indices: &[usize]) -> LieModule {
        LieModule::new(self.dim, indices.iter().map(|&i| self.action[i].clone()).collect())
    }
}

/// Violation listing for the algebra and module axioms; all checks exact.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub antisymmetry_violations: Vec<String>,
    pub jacobi_violations: Vec<String>,
    pub compatibility_violations: Vec<String>,
    pub valid: bool,
}

pub fn validate_structures(g: &LieAlgebra, module: Option<&LieModule>) -> StructureReport {
    let d = g.dim();
    let mut antisymmetry_violations = Vec::new();
    let mut jacobi_violations = Vec::new();
    let mut compatibility_violations = Vec::new();

    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let sum = g.constant(i, j, k) + g.constant(j, i, k);
                if !sum.is_zero() {
                    antisymmetry_violations.push(format!("c[{i}][{j}][{k}] + c[{j}][{i}][{k}] != 0"));
                }
            }
        }
    }

    // [x_i, [x_j, x_k]] + [x_j, [x_k, x_i]] + [x_k, [x_i, x_j]] = 0
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                for l in 0..d {
                    let mut acc = Rat::zero();
                    for m in 0..d {
                        acc += g.constant(j, k, m) * g.constant(i, m, l);
                        acc += g.constant(k, i, m) * g.constant(j, m, l);
                        acc += g.constant(i, j, m) * g.constant(k, m, l);
                    }
                    if !acc.is_zero() {
                        jacobi_violations.push(format!("jacobi ({i},{j},{k}) -> {l}"));
                    }
                }
            }
        }
    }

    if let Some(m) = module {
        for i in 0..d {
            for j in 0..d {
                let lhs = {
                    let coords: Vec<Rat> = (0..d).map(|k| g.constant(i, j, k).clone()).collect();
                    m.action_of(&coords)
                };
                let rhs = m.action(i).mul(m.action(j)).sub(&m.action(j).mul(m.action(i)));
                if lhs != rhs {
                    compatibility_violations.push(format!("rho([x{i},x{j}]) != [rho x{i}, rho x{j}]"));
                }
            }
        }
    }

    let valid = antisymmetry_violations.is_empty()
        && jacobi_violations.is_empty()
        && compatibility_violations.is_empty();
    StructureReport {
        antisymmetry_violations,
        jacobi_violations,
        compatibility_violations,
        valid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::scalars::rat_int;

    #[test]
    fn sl2_is_valid_and_adjoint_compatible() {
        let g = catalog::sl2();
        let report = validate_structures(&g, Some(&LieModule::adjoint(&g)));
        assert!(report.valid, "{report:?}");
    }

    #[test]
    fn perturbed_constant_breaks_jacobi() {
        let mut g = catalog::sl3();
        g.constants_mut()[0][1][2] += rat_int(1);
        let report = validate_structures(&g, None);
        assert!(!report.jacobi_violations.is_empty());
        assert!(!report.valid);
    }

    #[test]
    fn nilradical_is_closed_but_borel_complement_is_not() {
        let g = catalog::sl2();
        // e alone is closed
        assert!(g.subalgebra(&[0]).is_ok());
        // {e, f} is not: [e, f] = h
        assert!(g.subalgebra(&[0, 2]).is_err());
    }
}
