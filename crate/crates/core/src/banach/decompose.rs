use super::mat::{BoundedMap, NormedModule, SeriesMat};
use super::BanachError;
use crate::scalars::{TruncSeries, Valuation};

/// Full kernel/image/cokernel data for a bounded map, together with a
/// bounded section of `source -> image(f)` and its operator valuation (the
/// quantitative content of strictness; every finite-rank map is strict, so
/// the valuation rather than a flag carries the information).
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<TruncSeries>>,
    pub image_basis: Vec<Vec<TruncSeries>>,
    pub cokernel_basis: Vec<Vec<TruncSeries>>,
    /// Map target -> source with `f . section = id` on the image, exactly.
    pub section: BoundedMap,
    pub section_valuation: Valuation,
}

impl Decomposition {
    pub fn dim_kernel(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn dim_cokernel(&self) -> usize {
        self.cokernel_basis.len()
    }
}

/// Result of a recorded Gauss-Jordan pass: `transform * input = reduced`,
/// with one nonzero entry per pivot column.
struct Elimination {
    reduced: SeriesMat,
    transform: SeriesMat,
    /// (row, col) per pivot, in elimination order.
    pivots: Vec<(usize, usize)>,
}

/// Gauss-Jordan elimination pivoting on the entry of minimal valuation
/// (ties broken by lowest row, then column index). A remaining entry that is
/// zero at a precision below `ambient` cannot be certified zero and aborts
/// with `PrecisionExhausted`; zeros at full ambient precision are exact by
/// the model's semantics.
fn eliminate(mat: &SeriesMat, ambient: i64) -> Result<Elimination, BanachError> {
    let (m, n) = (mat.rows(), mat.cols());
    let p = mat.prime();
    let mut w = mat.clone();
    let mut e = SeriesMat::identity(p, m, ambient);
    let mut row_active = vec![true; m];
    let mut col_active = vec![true; n];
    let mut pivots = Vec::new();

    loop {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for i in 0..m {
            if !row_active[i] {
                continue;
            }
            for j in 0..n {
                if !col_active[j] {
                    continue;
                }
                let entry = w.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                let v = entry.val();
                if best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            // No certified-nonzero entry remains; make sure every remaining
            // zero really is known to ambient precision.
            for i in 0..m {
                if !row_active[i] {
                    continue;
                }
                for j in 0..n {
                    if !col_active[j] {
                        continue;
                    }
                    let prec = w.get(i, j).precision();
                    if prec < ambient {
                        return Err(BanachError::PrecisionExhausted {
                            row: i,
                            col: j,
                            prec,
                            ambient,
                        });
                    }
                }
            }
            break;
        };

        let pivot = w.get(pi, pj).clone();
        for i in 0..m {
            if i == pi {
                continue;
            }
            let entry = w.get(i, pj).clone();
            if entry.is_zero() {
                continue;
            }
            let mult = entry.checked_div(&pivot)?;
            for j in 0..n {
                let upd = w.get(i, j) - &(&mult * w.get(pi, j));
                w.set(i, j, upd);
            }
            for j in 0..m {
                let upd = e.get(i, j) - &(&mult * e.get(pi, j));
                e.set(i, j, upd);
            }
            // The eliminated entry is exactly zero in the field; forcing the
            // canonical zero at ambient precision keeps truncation noise from
            // masquerading as uncertainty.
            w.set(i, pj, TruncSeries::zero(p, ambient));
        }
        row_active[pi] = false;
        col_active[pj] = false;
        pivots.push((pi, pj));
    }

    Ok(Elimination { reduced: w, transform: e, pivots })
}

/// Rank certified at `ambient` precision.
pub fn matrix_rank(mat: &SeriesMat, ambient: i64) -> Result<usize, BanachError> {
    Ok(eliminate(mat, ambient)?.pivots.len())
}

pub(crate) use matrix_rank as rank_of;

/// Left inverse of a full-column-rank matrix: returns `g` with
/// `g * mat = id`, built from the recorded elimination so that its valuation
/// reflects the pivot valuations.
fn left_inverse(mat: &SeriesMat, ambient: i64) -> Result<SeriesMat, BanachError> {
    let elim = eliminate(mat, ambient)?;
    if elim.pivots.len() < mat.cols() {
        return Err(BanachError::NotInvertible);
    }
    let p = mat.prime();
    let mut dplus = SeriesMat::zero(p, mat.cols(), mat.rows(), ambient);
    for &(ri, cj) in &elim.pivots {
        dplus.set(cj, ri, elim.reduced.get(ri, cj).invert()?);
    }
    dplus.checked_mul(&elim.transform)
}

/// Inverse of a square matrix, or `NotInvertible`.
pub fn invert_square(mat: &SeriesMat, ambient: i64) -> Result<SeriesMat, BanachError> {
    if mat.rows() != mat.cols() {
        return Err(BanachError::ShapeMismatch("invert of non-square".into()));
    }
    left_inverse(mat, ambient)
}

/// Standard basis vectors at the non-pivot rows of an elimination. The
/// product of Jordan pivots equals (up to sign) the minor of the input on
/// the pivot rows and pivot columns, so that minor is invertible and these
/// vectors complement the column span.
fn standard_complement(p: u64, dim: usize, elim: &Elimination, ambient: i64) -> Vec<Vec<TruncSeries>> {
    let pivot_rows: Vec<usize> = elim.pivots.iter().map(|&(r, _)| r).collect();
    (0..dim)
        .filter(|i| !pivot_rows.contains(i))
        .map(|i| {
            let mut v = vec![TruncSeries::zero(p, ambient); dim];
            v[i] = TruncSeries::one(p, ambient);
            v
        })
        .collect()
}

/// Computes kernel, image and cokernel bases and a bounded section via
/// elimination with minimal-valuation pivoting. `ambient` is the precision
/// at which zero decisions are certified; pass the working precision `N` of
/// the experiment.
pub fn decompose(f: &BoundedMap, ambient: i64) -> Result<Decomposition, BanachError> {
    let a = f.entries();
    let (m, n) = (a.rows(), a.cols());
    let p = a.prime();
    let elim = eliminate(a, ambient)?;
    let rank = elim.pivots.len();

    let mut pivot_cols: Vec<usize> = elim.pivots.iter().map(|&(_, c)| c).collect();
    pivot_cols.sort_unstable();
    let pivot_col_of = |j: usize| pivot_cols.binary_search(&j).is_ok();
    // Pivot row paired with a given pivot column.
    let row_for_col = |j: usize| -> usize {
        elim.pivots.iter().find(|&&(_, c)| c == j).map(|&(r, _)| r).unwrap()
    };

    // Kernel: one vector per free column, solving against the reduced form.
    let mut kernel_basis = Vec::new();
    for jf in 0..n {
        if pivot_col_of(jf) {
            continue;
        }
        let mut v = vec![TruncSeries::zero(p, ambient); n];
        v[jf] = TruncSeries::one(p, ambient);
        for &jp in &pivot_cols {
            let rp = row_for_col(jp);
            let num = elim.reduced.get(rp, jf);
            if !num.is_zero() {
                v[jp] = num.checked_div(elim.reduced.get(rp, jp))?.neg_value();
            }
        }
        kernel_basis.push(v);
    }

    // Image: the original columns at the pivot positions.
    let image_basis: Vec<Vec<TruncSeries>> = pivot_cols.iter().map(|&j| a.col(j)).collect();
    let image_mat = SeriesMat::from_cols(p, m, &image_basis);

    // Cokernel: standard vectors at the non-pivot rows complement the image.
    let cokernel_basis = standard_complement(p, m, &elim, ambient);

    // Section: place the left inverse of the image matrix onto the source
    // coordinates of the pivot columns.
    let section_mat = if rank == 0 {
        SeriesMat::zero(p, n, m, ambient)
    } else {
        let b_plus = left_inverse(&image_mat, ambient)?;
        let mut placement = SeriesMat::zero(p, n, rank, ambient);
        for (k, &j) in pivot_cols.iter().enumerate() {
            placement.set(j, k, TruncSeries::one(p, ambient));
        }
        placement.checked_mul(&b_plus)?
    };
    let section_valuation = if rank == 0 { Valuation::Infinite } else { section_mat.min_val() };
    let section = BoundedMap::new(f.target().clone(), f.source().clone(), section_mat);

    Ok(Decomposition {
        rank,
        kernel_basis,
        image_basis,
        cokernel_basis,
        section,
        section_valuation,
    })
}

/// Quasi-inverse data: `g` together with the exact ranks of the two defects.
#[derive(Clone, Debug)]
pub struct QuasiInverse {
    pub g: BoundedMap,
    /// rank of `f . g - id` (zero when f is surjective).
    pub fg_defect_rank: usize,
    /// rank of `g . f - id`.
    pub gf_defect_rank: usize,
    pub dim_kernel: usize,
    pub dim_cokernel: usize,
}

/// Builds `g` from the section and a projector onto the image along the
/// chosen cokernel complement; reports the exact defect ranks, which satisfy
/// `rank(fg - id) <= dim coker` and `rank(gf - id) <= dim ker + dim coker`.
pub fn quasi_inverse(f: &BoundedMap, ambient: i64) -> Result<QuasiInverse, BanachError> {
    let a = f.entries();
    let (m, n) = (a.rows(), a.cols());
    let p = a.prime();
    let dec = decompose(f, ambient)?;
    let r = dec.rank;

    let g_mat = if r == 0 {
        SeriesMat::zero(p, n, m, ambient)
    } else {
        let mut bc_cols = dec.image_basis.clone();
        bc_cols.extend(dec.cokernel_basis.iter().cloned());
        let bc = SeriesMat::from_cols(p, m, &bc_cols);
        let x = invert_square(&bc, ambient)?;
        // Projector onto the image along the cokernel complement.
        let mut x_top = SeriesMat::zero(p, r, m, ambient);
        for i in 0..r {
            for j in 0..m {
                x_top.set(i, j, x.get(i, j).clone());
            }
        }
        let image_mat = SeriesMat::from_cols(p, m, &dec.image_basis);
        let projector = image_mat.checked_mul(&x_top)?;
        dec.section.entries().checked_mul(&projector)?
    };

    let g = BoundedMap::new(f.target().clone(), f.source().clone(), g_mat);
    let fg = f.compose(&g)?;
    let gf = g.compose(f)?;
    let id_m = SeriesMat::identity(p, m, ambient);
    let id_n = SeriesMat::identity(p, n, ambient);
    // Composites carry slightly less precision than the inputs (section
    // entries with negative valuation cost digits); certify their ranks at
    // the precision they actually carry.
    let fg_def = fg.entries().sub(&id_m);
    let gf_def = gf.entries().sub(&id_n);
    let fg_defect_rank = rank_of(&fg_def, fg_def.min_prec().min(ambient))?;
    let gf_defect_rank = rank_of(&gf_def, gf_def.min_prec().min(ambient))?;

    Ok(QuasiInverse {
        g,
        fg_defect_rank,
        gf_defect_rank,
        dim_kernel: dec.dim_kernel(),
        dim_cokernel: dec.dim_cokernel(),
    })
}

/// A complement of a subspace, with the valuation of the inverse of the
/// direct-sum change of basis as the quantitative splitting constant.
#[derive(Clone, Debug)]
pub struct Split {
    pub complement_basis: Vec<Vec<TruncSeries>>,
    pub change_of_basis: SeriesMat,
    pub inverse_valuation: Valuation,
}

/// Completes an independent family to a direct-sum decomposition of the
/// ambient module by standard basis vectors, mirroring the lifting of
/// quotient basis vectors at norm 1.
pub fn split_subspace(
    v0_basis: &[Vec<TruncSeries>],
    space: &NormedModule,
    p: u64,
    ambient: i64,
) -> Result<Split, BanachError> {
    let dim = space.rank();
    let k = v0_basis.len();
    let v0 = SeriesMat::from_cols(p, dim, v0_basis);
    let elim = eliminate(&v0, ambient)?;
    if elim.pivots.len() < k {
        return Err(BanachError::DependentBasis);
    }
    let complement_basis = standard_complement(p, dim, &elim, ambient);
    let mut cols = v0_basis.to_vec();
    cols.extend(complement_basis.iter().cloned());
    let change_of_basis = SeriesMat::from_cols(p, dim, &cols);
    let inverse = invert_square(&change_of_basis, ambient)?;
    Ok(Split {
        complement_basis,
        change_of_basis,
        inverse_valuation: inverse.min_val(),
    })
}
