use num_traits::Zero;

use super::algebra::{LieAlgebra, LieModule};
use super::ratmat::RatMat;
use super::LieError;
use crate::scalars::Rat;

/// The cochain complex on `Lambda^k g* (x) M` with the standard convention
///
/// ```text
/// (df)(x_0,..,x_k) = sum_i (-1)^i x_i . f(.. x_i ..)
///   + sum_{i<j} (-1)^(i+j) f([x_i, x_j], .. x_i .. x_j ..)
/// ```
///
/// Basis of degree `k`: pairs (S, a) with `S` a k-subset of the algebra
/// basis (bitmasks in increasing numeric order) and `a` a module index;
/// the column index is `subset_position * dim M + a`.
#[derive(Clone, Debug)]
pub struct CEComplex {
    g_dim: usize,
    m_dim: usize,
    dims: Vec<usize>,
    diffs: Vec<RatMat>,
}

pub(crate) fn subsets_of_weight(d: usize, k: usize) -> Vec<usize> {
    (0usize..1 << d).filter(|s| s.count_ones() as usize == k).collect()
}

fn bits_of(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|b| mask & (1 << b) != 0).collect()
}

impl CEComplex {
    /// Builds every differential and verifies `d . d = 0` exactly.
    pub fn build(g: &LieAlgebra, m: &LieModule) -> Result<CEComplex, LieError> {
        assert_eq!(
            m.action_matrices().len(),
            g.dim(),
            "one action matrix per algebra basis vector"
        );
        let gd = g.dim();
        let md = m.dim();
        let dims: Vec<usize> =
            (0..=gd).map(|k| subsets_of_weight(gd, k).len() * md).collect();

        let mut diffs = Vec::with_capacity(gd);
        for k in 0..gd {
            let src = subsets_of_weight(gd, k);
            let tgt = subsets_of_weight(gd, k + 1);
            let mut mat = RatMat::zero(tgt.len() * md, src.len() * md);

            for (ti, &tmask) in tgt.iter().enumerate() {
                let t_bits = bits_of(tmask);
                // action faces
                for (i, &xi) in t_bits.iter().enumerate() {
                    let smask = tmask & !(1 << xi);
                    let spos = src.iter().position(|&s| s == smask).unwrap();
                    let rho = m.action(xi);
                    let neg = i % 2 == 1;
                    for b in 0..md {
                        for a in 0..md {
                            let e = rho.get(b, a);
                            if e.is_zero() {
                                continue;
                            }
                            let cur = mat.get(ti * md + b, spos * md + a).clone();
                            let v = if neg { cur - e } else { cur + e };
                            mat.set(ti * md + b, spos * md + a, v);
                        }
                    }
                }
                // bracket faces
                for i in 0..t_bits.len() {
                    for j in i + 1..t_bits.len() {
                        let (xi, xj) = (t_bits[i], t_bits[j]);
                        let rest = tmask & !(1 << xi) & !(1 << xj);
                        for t in 0..gd {
                            let c = g.constant(xi, xj, t);
                            if c.is_zero() || rest & (1 << t) != 0 {
                                continue;
                            }
                            let smask = rest | (1 << t);
                            let spos = src.iter().position(|&s| s == smask).unwrap();
                            // sign: (-1)^(i+j) times the sign of inserting
                            // x_t at its sorted position in `rest`
                            let ins = (rest & ((1 << t) - 1)).count_ones() as usize;
                            let neg = (i + j + ins) % 2 == 1;
                            for a in 0..md {
                                let cur = mat.get(ti * md + a, spos * md + a).clone();
                                let v = if neg { cur - c } else { cur + c };
                                mat.set(ti * md + a, spos * md + a, v);
                            }
                        }
                    }
                }
            }
            diffs.push(mat);
        }

        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].mul(&diffs[k]).is_zero() {
                return Err(LieError::NotAComplex(k));
            }
        }

        Ok(CEComplex { g_dim: gd, m_dim: md, dims, diffs })
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn m_dim(&self) -> usize {
        self.m_dim
    }

    pub fn cochain_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, k: usize) -> &RatMat {
        &self.diffs[k]
    }

    /// Exact cohomology dimensions in every degree `0..=dim g`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let top = self.g_dim;
        let ranks: Vec<usize> = self.diffs.iter().map(RatMat::rank).collect();
        (0..=top)
            .map(|k| {
                let cocycles = if k < top { self.dims[k] - ranks[k] } else { self.dims[top] };
                let coboundaries = if k == 0 { 0 } else { ranks[k - 1] };
                cocycles - coboundaries
            })
            .collect()
    }

    /// Basis of the degree-`q` cocycles.
    pub fn cocycle_basis(&self, q: usize) -> Vec<Vec<Rat>> {
        if q < self.diffs.len() {
            self.diffs[q].kernel_basis()
        } else {
            (0..self.dims[q])
                .map(|i| {
                    let mut v = vec![Rat::zero(); self.dims[q]];
                    v[i] = num_traits::One::one();
                    v
                })
                .collect()
        }
    }

    /// Basis of the degree-`q` coboundaries.
    pub fn coboundary_basis(&self, q: usize) -> Vec<Vec<Rat>> {
        if q == 0 {
            Vec::new()
        } else {
            self.diffs[q - 1].image_basis()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    #[test]
    fn cochain_dims_are_binomials() {
        let g = catalog::heisenberg();
        let m = LieModule::trivial(&g, 2);
        let cx = CEComplex::build(&g, &m).unwrap();
        assert_eq!(cx.cochain_dims(), &[2, 6, 6, 2]);
    }

    #[test]
    fn degree_zero_kernel_is_invariants() {
        // adjoint module of sl2: invariants are the center, which is 0
        let g = catalog::sl2();
        let m = LieModule::adjoint(&g);
        let cx = CEComplex::build(&g, &m).unwrap();
        assert_eq!(cx.cocycle_basis(0).len(), 0);
        // trivial module: everything is invariant
        let t = LieModule::trivial(&g, 3);
        let cx = CEComplex::build(&g, &t).unwrap();
        assert_eq!(cx.cocycle_basis(0).len(), 3);
    }

    #[test]
    fn one_dim_abelian_trivial_module() {
        let g = catalog::abelian(1);
        let m = LieModule::trivial(&g, 1);
        let cx = CEComplex::build(&g, &m).unwrap();
        assert_eq!(cx.cohomology_dims(), vec![1, 1]);
    }

    #[test]
    fn sl2_trivial_module_whitehead() {
        let g = catalog::sl2();
        let m = LieModule::trivial(&g, 1);
        let cx = CEComplex::build(&g, &m).unwrap();
        assert_eq!(cx.cohomology_dims(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn heisenberg_trivial_module_betti() {
        let g = catalog::heisenberg();
        let m = LieModule::trivial(&g, 1);
        let cx = CEComplex::build(&g, &m).unwrap();
        assert_eq!(cx.cohomology_dims(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn euler_characteristic_vanishes() {
        let g = catalog::borel_sl3();
        let m = LieModule::trivial(&g, 2);
        let cx = CEComplex::build(&g, &m).unwrap();
        let chi_c: i64 = cx
            .cochain_dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let chi_h: i64 = cx
            .cohomology_dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(chi_c, 0);
        assert_eq!(chi_h, chi_c);
    }
}
