//! The catalog of small algebras and modules the experiments run over:
//! sl2 and sl3 with their Borels and nilpotent radicals, the Heisenberg
//! algebra, and abelian algebras.

use super::algebra::{LieAlgebra, LieModule};
use super::ratmat::RatMat;
use crate::scalars::{rat_int, Rat};
use num_traits::Zero;

fn elementary(n: usize, i: usize, j: usize) -> RatMat {
    let mut m = RatMat::zero(n, n);
    m.set(i, j, rat_int(1));
    m
}

/// Defining 2x2 matrices of sl2 in the basis order (e, h, f).
pub fn sl2_matrices() -> Vec<RatMat> {
    let e = elementary(2, 0, 1);
    let f = elementary(2, 1, 0);
    let mut h = RatMat::zero(2, 2);
    h.set(0, 0, rat_int(1));
    h.set(1, 1, rat_int(-1));
    vec![e, h, f]
}

/// sl2 with basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_matrix_basis(
        &sl2_matrices(),
        vec!["e".into(), "h".into(), "f".into()],
    )
    .expect("sl2 closes")
}

/// Index of the nilpotent radical of the standard Borel inside [`sl2`].
pub fn sl2_nilradical_indices() -> Vec<usize> {
    vec![0]
}

/// Defining 3x3 matrices of sl3 in the basis order
/// (e1, e2, e12, h1, h2, f1, f2, f12).
pub fn sl3_matrices() -> Vec<RatMat> {
    let e1 = elementary(3, 0, 1);
    let e2 = elementary(3, 1, 2);
    let e12 = elementary(3, 0, 2);
    let mut h1 = RatMat::zero(3, 3);
    h1.set(0, 0, rat_int(1));
    h1.set(1, 1, rat_int(-1));
    let mut h2 = RatMat::zero(3, 3);
    h2.set(1, 1, rat_int(1));
    h2.set(2, 2, rat_int(-1));
    let f1 = elementary(3, 1, 0);
    let f2 = elementary(3, 2, 1);
    let f12 = elementary(3, 2, 0);
    vec![e1, e2, e12, h1, h2, f1, f2, f12]
}

pub fn sl3() -> LieAlgebra {
    LieAlgebra::from_matrix_basis(
        &sl3_matrices(),
        vec![
            "e1".into(),
            "e2".into(),
            "e12".into(),
            "h1".into(),
            "h2".into(),
            "f1".into(),
            "f2".into(),
            "f12".into(),
        ],
    )
    .expect("sl3 closes")
}

/// Indices of the nilpotent radical (strictly upper triangular part).
pub fn sl3_nilradical_indices() -> Vec<usize> {
    vec![0, 1, 2]
}

/// Borel of sl2 with basis (n, h) = (e, h), nilradical first.
pub fn borel_sl2() -> LieAlgebra {
    let mats = sl2_matrices();
    LieAlgebra::from_matrix_basis(
        &[mats[0].clone(), mats[1].clone()],
        vec!["e".into(), "h".into()],
    )
    .expect("borel closes")
}

/// Borel of sl3 with basis (e1, e2, e12, h1, h2), nilradical first.
pub fn borel_sl3() -> LieAlgebra {
    let mats = sl3_matrices();
    LieAlgebra::from_matrix_basis(
        &mats[..5].to_vec(),
        vec!["e1".into(), "e2".into(), "e12".into(), "h1".into(), "h2".into()],
    )
    .expect("borel closes")
}

/// Heisenberg algebra: basis (x, y, z) with [x, y] = z central.
pub fn heisenberg() -> LieAlgebra {
    let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
    c[0][1][2] = rat_int(1);
    c[1][0][2] = rat_int(-1);
    LieAlgebra::new(3, c, vec!["x".into(), "y".into(), "z".into()])
}

pub fn abelian(dim: usize) -> LieAlgebra {
    LieAlgebra::abelian(dim)
}

/// The natural module of a matrix-defined algebra: the defining
/// representation itself.
pub fn natural_module(mats: &[RatMat]) -> LieModule {
    let dim = mats[0].rows();
    LieModule::new(dim, mats.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra::validate_structures;
    use crate::scalars::rat_int;

    #[test]
    fn catalog_algebras_are_valid() {
        for (name, g) in [
            ("sl2", sl2()),
            ("sl3", sl3()),
            ("borel_sl2", borel_sl2()),
            ("borel_sl3", borel_sl3()),
            ("heisenberg", heisenberg()),
            ("abelian3", abelian(3)),
        ] {
            let report = validate_structures(&g, None);
            assert!(report.valid, "{name}: {report:?}");
        }
    }

    #[test]
    fn sl2_constants_match_the_standard_relations() {
        let g = sl2();
        // [h, e] = 2e
        assert_eq!(g.constant(1, 0, 0), &rat_int(2));
        // [h, f] = -2f
        assert_eq!(g.constant(1, 2, 2), &rat_int(-2));
        // [e, f] = h
        assert_eq!(g.constant(0, 2, 1), &rat_int(1));
    }

    #[test]
    fn natural_modules_are_compatible() {
        let g = sl3();
        let v = natural_module(&sl3_matrices());
        assert!(validate_structures(&g, Some(&v)).valid);
    }
}
