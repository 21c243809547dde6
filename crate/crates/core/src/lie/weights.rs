//! Highest-weight modules for sl2 and sl3. The sl2 family is the explicit
//! `(lambda+1)`-dimensional module; sl3 modules are carved out of tensor
//! products of the two fundamental representations as the submodule
//! generated by the highest-weight vector, with the Weyl dimension formula
//! as an independent oracle on the result.

use num_traits::{One, Zero};

use super::algebra::LieModule;
use super::catalog::sl3_matrices;
use super::ratmat::{RatMat, SpanBuilder};
use super::LieError;
use crate::scalars::{rat_int, Rat};

/// Dominant weights of the two catalog algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Sl2(u32),
    Sl3(u32, u32),
}

/// Closed-form dimension of the irreducible module.
pub fn weyl_dimension(w: Weight) -> usize {
    match w {
        Weight::Sl2(l) => l as usize + 1,
        Weight::Sl3(a, b) => {
            let (a, b) = (a as usize, b as usize);
            (a + 1) * (b + 1) * (a + b + 2) / 2
        }
    }
}

/// Number of Weyl group elements of each length, for the symmetric group
/// `S_(rank+1)` with length = inversion count.
pub fn weyl_length_counts(rank: usize) -> Vec<usize> {
    let n = rank + 1;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counts = vec![0usize; rank * n / 2 + 1];
    loop {
        let inv = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        counts[inv] += 1;
        // next permutation in lexicographic order
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    counts
}

/// The explicit sl2 module of highest weight `lambda` in the basis order
/// (e, h, f): `e v_k = (lambda - k + 1) v_(k-1)`, `h v_k = (lambda - 2k) v_k`,
/// `f v_k = (k+1) v_(k+1)`.
pub fn sl2_highest_weight_module(lambda: u32) -> LieModule {
    let d = lambda as usize + 1;
    let mut e = RatMat::zero(d, d);
    let mut h = RatMat::zero(d, d);
    let mut f = RatMat::zero(d, d);
    for k in 0..d {
        h.set(k, k, rat_int(lambda as i64 - 2 * k as i64));
        if k + 1 < d {
            f.set(k + 1, k, rat_int(k as i64 + 1));
            e.set(k, k + 1, rat_int(lambda as i64 - k as i64));
        }
    }
    LieModule::new(d, vec![e, h, f])
}

fn kron(a: &RatMat, b: &RatMat) -> RatMat {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    RatMat::from_fn(ar * br, ac * bc, |i, j| {
        a.get(i / br, j / bc) * b.get(i % br, j % bc)
    })
}

/// Action on a tensor product: `rho (x) 1 + 1 (x) rho'`.
fn tensor_action(a: &RatMat, dim_a: usize, b: &RatMat, dim_b: usize) -> RatMat {
    let ia = RatMat::identity(dim_a);
    let ib = RatMat::identity(dim_b);
    kron(a, &ib).add(&kron(&ia, b))
}

/// sl3 module of highest weight `(a, b)`: the submodule of
/// `V^(x a) (x) (V*)^(x b)` generated by the highest-weight vector, as a
/// module in its own coordinates. Errors when the closure's dimension
/// disagrees with the Weyl formula.
pub fn sl3_highest_weight_module(a: u32, b: u32) -> Result<LieModule, LieError> {
    let mats = sl3_matrices();
    let n_ops = mats.len();

    // assemble the tensor representation and the highest-weight vector
    let mut dim = 1usize;
    let mut ops: Vec<RatMat> = (0..n_ops).map(|_| RatMat::zero(1, 1)).collect();
    let mut hw_index = 0usize;
    for step in 0..(a + b) {
        let dual = step >= a;
        let factor: Vec<RatMat> = mats
            .iter()
            .map(|m| if dual { m.transpose().neg() } else { m.clone() })
            .collect();
        let factor_hw = if dual { 2 } else { 0 };
        if step == 0 {
            ops = factor;
            dim = 3;
            hw_index = factor_hw;
        } else {
            ops = ops
                .iter()
                .zip(&factor)
                .map(|(t, f)| tensor_action(t, dim, f, 3))
                .collect();
            hw_index = hw_index * 3 + factor_hw;
            dim *= 3;
        }
    }
    if a + b == 0 {
        // trivial module
        return Ok(LieModule::new(1, vec![RatMat::zero(1, 1); n_ops]));
    }

    // span closure of the highest-weight vector under all basis operators
    let mut hw = vec![Rat::zero(); dim];
    hw[hw_index] = Rat::one();
    let mut span = SpanBuilder::new();
    span.insert(&hw);
    let mut frontier = vec![hw];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for op in &ops {
                let w = op.apply(v);
                if w.iter().any(|x| !x.is_zero()) && span.insert(&w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }

    let sub_dim = span.dim();
    let expected = weyl_dimension(Weight::Sl3(a, b));
    if sub_dim != expected {
        return Err(LieError::DimensionOracleMismatch { expected, got: sub_dim });
    }

    // express the restricted operators in the span basis
    let basis = span.basis();
    let mut action = Vec::with_capacity(n_ops);
    for op in &ops {
        let mut m = RatMat::zero(sub_dim, sub_dim);
        for (j, bv) in basis.iter().enumerate() {
            let w = op.apply(bv);
            let coords = span
                .coordinates(&w)
                .ok_or_else(|| LieError::NotClosed("submodule closure".into()))?;
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        action.push(m);
    }
    Ok(LieModule::new(sub_dim, action))
}

/// Builds the highest-weight module for either catalog algebra.
pub fn highest_weight_module(w: Weight) -> Result<LieModule, LieError> {
    match w {
        Weight::Sl2(l) => Ok(sl2_highest_weight_module(l)),
        Weight::Sl3(a, b) => sl3_highest_weight_module(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra::validate_structures;
    use crate::lie::catalog;

    #[test]
    fn sl2_modules_are_modules_of_the_right_size() {
        let g = catalog::sl2();
        for lambda in 0..=4 {
            let m = sl2_highest_weight_module(lambda);
            assert_eq!(m.dim(), weyl_dimension(Weight::Sl2(lambda)));
            assert!(validate_structures(&g, Some(&m)).valid, "lambda={lambda}");
        }
    }

    #[test]
    fn sl3_modules_match_the_weyl_oracle() {
        let g = catalog::sl3();
        for (a, b, dim) in [(0, 0, 1), (1, 0, 3), (0, 1, 3), (1, 1, 8)] {
            let m = sl3_highest_weight_module(a, b).unwrap();
            assert_eq!(m.dim(), dim, "({a},{b})");
            assert!(validate_structures(&g, Some(&m)).valid, "({a},{b})");
        }
    }

    #[test]
    fn weyl_lengths_by_inversion_count() {
        assert_eq!(weyl_length_counts(1), vec![1, 1]);
        assert_eq!(weyl_length_counts(2), vec![1, 2, 2, 1]);
    }
}
