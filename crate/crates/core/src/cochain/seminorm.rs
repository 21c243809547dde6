use serde::Serialize;

use super::table::Cochain;
use crate::scalars::Valuation;

/// Scale-by-scale profile of a cochain's finite differences, and the fitted
/// analyticity defect `d_val`: differences at scale `i` have valuation at
/// least `v_c * p^i - d_val`. A `None` defect means every difference
/// vanishes (constant-per-coset table), making the bound vacuous.
#[derive(Clone, Debug, Serialize)]
pub struct SeminormReport {
    pub v_c: i64,
    pub d_val: Option<i64>,
    /// (scale i, worst difference valuation at that scale)
    pub profile: Vec<(u32, Valuation)>,
}

/// Exhaustive seminorm over every representable shift scale `i` in
/// `[l, l+m)`: for each scale, each argument of each tuple is shifted by
/// elements of the image of `G_i` in the quotient, and the worst difference
/// valuation is recorded.
pub fn c_analytic_seminorm(f: &Cochain, v_c: i64) -> SeminormReport {
    assert!(v_c >= 1);
    let window = *f.window();
    let n = f.degree();
    let mut profile = Vec::new();
    let mut d_val: Option<i64> = None;

    for i in window.l..window.l + window.m {
        let shifts = window.subgroup_indices(i);
        let mut worst = Valuation::Infinite;
        if n == 0 {
            // no arguments to shift; differences vanish identically
            profile.push((i, worst));
            continue;
        }
        let tuples = window.tuple_count(n);
        let shift_tuples = shifts.len().pow(n as u32);
        let mut shifted = vec![0usize; n];
        for flat in 0..tuples {
            let args = window.tuple_of(flat, n);
            let base = f.value_flat(flat);
            for s in 0..shift_tuples {
                if s == 0 {
                    continue; // identity shift
                }
                let mut code = s;
                for k in 0..n {
                    shifted[k] = window.mul(args[k], shifts[code % shifts.len()]);
                    code /= shifts.len();
                }
                let other = f.value(&shifted);
                for (a, b) in base.iter().zip(other) {
                    worst = worst.min((a - b).val());
                }
            }
        }
        profile.push((i, worst));
        if let Valuation::Finite(w) = worst {
            let defect = v_c * (window.p.pow(i)) as i64 - w;
            d_val = Some(d_val.map_or(defect, |d| d.max(defect)));
        }
    }

    SeminormReport { v_c, d_val, profile }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::window::LevelWindow;
    use crate::scalars::TruncSeries;

    const P: u64 = 3;
    const N: i64 = 8;

    #[test]
    fn constant_cochain_is_vacuous() {
        let w = LevelWindow::new(P, 1, 0, 2);
        let f = Cochain::from_fn(w, 1, 1, |_| vec![TruncSeries::one(P, N)]);
        let report = c_analytic_seminorm(&f, 1);
        assert!(report.d_val.is_none());
        assert!(report.profile.iter().all(|&(_, w)| w == Valuation::Infinite));
    }

    #[test]
    fn finest_scale_jump_costs_linearly_in_vc() {
        // delta table: an order-1 jump visible at every scale including the
        // finest, so d_val = v_c * p^(l+m-1).
        let w = LevelWindow::new(P, 1, 0, 2);
        let f = Cochain::delta(w, 1, 1, P, N, &[1], 0);
        for v_c in [1i64, 2, 3] {
            let report = c_analytic_seminorm(&f, v_c);
            assert_eq!(report.d_val, Some(v_c * 3), "v_c={v_c}");
        }
    }
}
