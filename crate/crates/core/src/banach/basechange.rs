//! Scalar extension along the unramified extension with residue field
//! `F_{p^e}`, and the dimension-invariance checks for kernels, cokernels
//! and complex cohomology.
//!
//! A map over the extension is represented over the base field by replacing
//! each entry `a` with an `e x e` block. To make the extension genuinely
//! nontrivial, rows and columns are rescaled by seeded random units of
//! `F_{p^e}` (via their regular representations) before blowing up; these
//! rescalings are isomorphisms over the extension, so every dimension must
//! come back exactly `e` times larger.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::decompose::decompose;
use super::gf::{GfElem, GfExt};
use super::mat::{BoundedMap, NormedModule, SeriesMat};
use super::{complex_cohomology, BanachError};
use crate::scalars::TruncSeries;

#[derive(Clone, Debug, Serialize)]
pub struct BaseChangeReport {
    pub extension_degree: usize,
    pub dims_before: Vec<usize>,
    pub dims_after: Vec<usize>,
    pub invariant: bool,
    pub seed: u64,
}

fn random_unit(gf: &GfExt, rng: &mut ChaCha8Rng) -> GfElem {
    let order = gf.prime().pow(gf.degree() as u32);
    loop {
        let a = gf.from_code(rng.gen_range(0..order));
        if !gf.is_zero(&a) {
            return a;
        }
    }
}

/// Blows an `m x n` series matrix up to `em x en`, with entry `(i, j)`
/// multiplied by the unit `left[i] * right[j]` of the extension field.
fn blow_up(
    gf: &GfExt,
    mat: &SeriesMat,
    left: &[GfElem],
    right: &[GfElem],
) -> SeriesMat {
    let e = gf.degree();
    let p = mat.prime();
    let prec = mat.min_prec();
    let mut out = SeriesMat::zero(p, mat.rows() * e, mat.cols() * e, prec);
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            let a = mat.get(i, j);
            if a.is_zero() {
                continue;
            }
            let unit = gf.mul(&left[i], &right[j]);
            let block = gf.regular_representation(&unit);
            for (bi, row) in block.iter().enumerate() {
                for (bj, &c) in row.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let scaled = a.checked_mul(&TruncSeries::monomial(p, c as i64, 0, prec))
                        .expect("same prime");
                    out.set(i * e + bi, j * e + bj, scaled);
                }
            }
        }
    }
    out
}

fn units(gf: &GfExt, count: usize, rng: &mut ChaCha8Rng) -> Vec<GfElem> {
    (0..count).map(|_| random_unit(gf, rng)).collect()
}

fn inverses(gf: &GfExt, us: &[GfElem]) -> Vec<GfElem> {
    us.iter().map(|u| gf.inv(u)).collect()
}

/// Extends scalars of a single map and asserts that kernel and cokernel
/// dimensions are unchanged. Reported dims are `[dim ker, dim coker]`.
pub fn base_change_map_check(
    f: &BoundedMap,
    e: usize,
    seed: u64,
    ambient: i64,
) -> Result<BaseChangeReport, BanachError> {
    assert!(e >= 1, "extension degree must be at least 1");
    let gf = GfExt::new(f.entries().prime(), e);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = units(&gf, f.entries().rows(), &mut rng);
    let right = units(&gf, f.entries().cols(), &mut rng);

    let dec = decompose(f, ambient)?;
    let dims_before = vec![dec.dim_kernel(), dec.dim_cokernel()];

    let big = blow_up(&gf, f.entries(), &left, &right);
    let big_map = BoundedMap::new(
        NormedModule::new(big.cols()),
        NormedModule::new(big.rows()),
        big,
    );
    let big_dec = decompose(&big_map, ambient)?;
    let (bk, bc) = (big_dec.dim_kernel(), big_dec.dim_cokernel());
    let divisible = bk % e == 0 && bc % e == 0;
    let dims_after = vec![bk / e, bc / e];
    let invariant = divisible && dims_after == dims_before;
    Ok(BaseChangeReport { extension_degree: e, dims_before, dims_after, invariant, seed })
}

/// Extends scalars of a whole complex, conjugating each differential by
/// random diagonal units so that the composite relations survive, and
/// asserts cohomology dimensions are unchanged.
pub fn base_change_complex_check(
    modules: &[NormedModule],
    diffs: &[BoundedMap],
    e: usize,
    seed: u64,
    ambient: i64,
) -> Result<BaseChangeReport, BanachError> {
    assert!(e >= 1);
    assert_eq!(diffs.len() + 1, modules.len(), "k+1 terms need k differentials");
    let p = diffs
        .first()
        .map(|d| d.entries().prime())
        .unwrap_or(2);
    let gf = GfExt::new(p, e);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let before = complex_cohomology(modules, diffs, ambient)?;

    // One diagonal unit per basis vector of each term; d' = D_{i+1} d D_i^{-1}.
    let scalings: Vec<Vec<GfElem>> = modules
        .iter()
        .map(|md| units(&gf, md.rank().max(1), &mut rng))
        .collect();

    let mut big_modules = Vec::with_capacity(modules.len());
    for md in modules {
        big_modules.push(NormedModule::new(md.rank() * e));
    }
    let mut big_diffs = Vec::with_capacity(diffs.len());
    for (i, d) in diffs.iter().enumerate() {
        let left = &scalings[i + 1];
        let right = inverses(&gf, &scalings[i]);
        let big = blow_up(&gf, d.entries(), left, &right);
        big_diffs.push(BoundedMap::new(
            big_modules[i].clone(),
            big_modules[i + 1].clone(),
            big,
        ));
    }
    let after = complex_cohomology(&big_modules, &big_diffs, ambient)?;

    let divisible = after.h_dims.iter().all(|&d| d % e == 0);
    let dims_after: Vec<usize> = after.h_dims.iter().map(|&d| d / e).collect();
    let invariant = divisible && dims_after == before.h_dims;
    Ok(BaseChangeReport {
        extension_degree: e,
        dims_before: before.h_dims,
        dims_after,
        invariant,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 2;
    const N: i64 = 8;

    fn ts(lead: i64, digits: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(P, lead, digits, N)
    }

    #[test]
    fn identity_map_dims_unchanged() {
        let f = BoundedMap::identity(NormedModule::new(3), P, N);
        let report = base_change_map_check(&f, 2, 7, N).unwrap();
        assert!(report.invariant, "{report:?}");
        assert_eq!(report.dims_before, vec![0, 0]);
    }

    #[test]
    fn rank_one_map_dims_unchanged() {
        let one = ts(0, &[1]);
        let entries = SeriesMat::from_rows(
            P,
            vec![
                vec![one.clone(), one.clone()],
                vec![one.clone(), one.clone()],
            ],
        );
        let f = BoundedMap::new(NormedModule::new(2), NormedModule::new(2), entries);
        let report = base_change_map_check(&f, 2, 3, N).unwrap();
        assert!(report.invariant, "{report:?}");
        assert_eq!(report.dims_before, vec![1, 1]);
    }
}
