use super::element::{Chart, CongruenceElement};
use super::pmat::PMat;
use super::GroupError;

fn vp(p: u64, mut k: u64) -> u32 {
    let mut v = 0;
    while k % p == 0 {
        k /= p;
        v += 1;
    }
    v
}

fn mod_inverse_u64(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not a unit modulo {m}");
    t.rem_euclid(m as i128) as u64
}

/// Minimal level at which log/exp converge with integral truncated terms:
/// 1 for odd p, 2 for p = 2.
fn series_domain(p: u64) -> u32 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// p-th root domain: the root lives one level down, so the input level must
/// be one more than the series domain.
fn root_domain(p: u64) -> u32 {
    series_domain(p) + 1
}

/// Truncated matrix logarithm, exact mod `p^N` as a function of the
/// canonical representative. Requires level >= 1 (>= 2 for p = 2).
pub fn log_mat(g: &CongruenceElement) -> Result<PMat, GroupError> {
    let chart = *g.chart();
    let (p, big_n) = (chart.p, chart.big_n);
    let j = g.observed_level();
    let need = series_domain(p);
    if j < need {
        return Err(GroupError::OutOfDomain { need, got: j });
    }

    // Include every k whose term can contribute below p^N. The term
    // valuation k*j - v_p(k) is not monotone (it dips at powers of p), so
    // scan the whole safe range and keep the largest contributing index.
    let cap = 4 * big_n as u64 + 8;
    let mut terms = 1u64;
    for k in 2..=cap {
        if (k as i64) * (j as i64) - (vp(p, k) as i64) < big_n as i64 {
            terms = k;
        }
    }
    let headroom: u32 = (1..=terms).map(|k| vp(p, k)).max().unwrap_or(0);
    let big_m = check_modulus(p, big_n + headroom)?;

    let one = PMat::identity(chart.n, big_m);
    let x = g.matrix().lift_to(big_m).sub(&one);
    let mut power = x.clone();
    let mut acc = PMat::zero(chart.n, big_m);
    for k in 1..=terms {
        let v = vp(p, k);
        let unit = k / p.pow(v);
        let term = power
            .exact_div(p, v)
            .expect("term integrality on the convergence domain")
            .scale(mod_inverse_u64(unit, big_m));
        if k % 2 == 1 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
        if k < terms {
            power = power.mul(&x);
        }
    }
    Ok(acc.reduce_to(chart.modulus()))
}

/// Truncated matrix exponential; inverse to [`log_mat`] on the common
/// domain. Requires min entry valuation >= 1 (>= 2 for p = 2).
pub fn exp_mat(chart: &Chart, x: &PMat) -> Result<CongruenceElement, GroupError> {
    let (p, big_n) = (chart.p, chart.big_n);
    assert_eq!(x.modulus(), chart.modulus());
    let vx = x.min_entry_valuation(p, big_n);
    let need = series_domain(p);
    if vx < need {
        return Err(GroupError::OutOfDomain { need, got: vx });
    }

    // Include every k whose term k*vx - v_p(k!) can contribute below p^N;
    // like the logarithm, the valuation dips at powers of p.
    let cap = 4 * big_n as u64 + 8;
    let mut terms = 1u64;
    let mut vfac = 0u32;
    for k in 2..=cap {
        vfac += vp(p, k);
        if (k as i64) * (vx as i64) - (vfac as i64) < big_n as i64 {
            terms = k;
        }
    }
    let headroom: u32 = (1..=terms).map(|k| vp(p, k)).sum();
    let big_m = check_modulus(p, big_n + headroom)?;

    let x_lift = x.lift_to(big_m);
    let mut acc = PMat::identity(chart.n, big_m);
    let mut term = PMat::identity(chart.n, big_m);
    for k in 1..=terms {
        let v = vp(p, k);
        let unit = k / p.pow(v);
        term = term
            .mul(&x_lift)
            .exact_div(p, v)
            .expect("term integrality on the convergence domain")
            .scale(mod_inverse_u64(unit, big_m));
        acc = acc.add(&term);
    }
    let mat = acc.reduce_to(chart.modulus());
    CongruenceElement::from_matrix(chart.at_level(chart.j.min(vx)), mat)
}

fn check_modulus(p: u64, digits: u32) -> Result<u64, GroupError> {
    let m = (p as u128).checked_pow(digits);
    match m {
        Some(m) if m < 1 << 62 => Ok(m as u64),
        _ => Err(GroupError::IncompatibleParams(format!(
            "p^{digits} exceeds the 62-bit arithmetic budget"
        ))),
    }
}

/// p-th root by successive refinement: returns `eta` one level down with
/// `eta^p = g` exactly mod `p^N`. Requires level >= 2 (>= 3 for p = 2).
pub fn pth_root(g: &CongruenceElement) -> Result<CongruenceElement, GroupError> {
    let chart = *g.chart();
    let (p, big_n) = (chart.p, chart.big_n);
    let j = g.observed_level();
    let need = root_domain(p);
    if j < need {
        return Err(GroupError::OutOfDomain { need, got: j });
    }
    let m = chart.modulus();
    let one = PMat::identity(chart.n, m);

    // initial guess 1 + (g - 1)/p, correct mod p^(j+1)
    let x = g.matrix().sub(&one);
    let mut eta = one.add(&x.exact_div(p, 1).ok_or(GroupError::OutOfDomain { need, got: j })?);

    let mut last_level = 0u32;
    for _ in 0..(2 * big_n + 4) {
        let eta_inv = eta
            .inverse_unipotent()
            .ok_or(GroupError::NoConvergence)?;
        let defect = eta_inv.pow(p as u64).mul(g.matrix()).sub(&one);
        let level = defect.min_entry_valuation(p, big_n);
        if level >= big_n {
            return CongruenceElement::from_matrix(chart.at_level(j - 1), eta);
        }
        if level <= last_level && last_level > 0 {
            return Err(GroupError::NoConvergence);
        }
        last_level = level;
        let correction = defect.exact_div(p, 1).ok_or(GroupError::NoConvergence)?;
        eta = eta.mul(&one.add(&correction));
    }
    Err(GroupError::NoConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_identity_is_identity() {
        let chart = Chart::new(2, 3, 8, 2);
        let id = chart.identity();
        let eta = pth_root(&id).unwrap();
        assert!(eta.is_identity());
    }

    #[test]
    fn scalar_cube_root_refines() {
        // p = 3, n = 1: g = 1 + 9u has eta = 1 + 3u mod 9 with eta^3 = g.
        let chart = Chart::new(1, 3, 8, 2);
        for u in [1i64, 2, 5, 7] {
            let g = CongruenceElement::from_entries(chart, &[1 + 9 * u]).unwrap();
            let eta = pth_root(&g).unwrap();
            assert_eq!(eta.pow(3).matrix(), g.matrix(), "u = {u}");
            let low = eta.matrix().get(0, 0) % 9;
            assert_eq!(low, (1 + 3 * u).rem_euclid(9) as u64, "u = {u}");
        }
    }

    #[test]
    fn root_domain_boundary() {
        let chart = Chart::new(2, 2, 8, 1);
        let g = CongruenceElement::from_entries(chart, &[1 + 2, 0, 0, 1]).unwrap();
        assert!(matches!(
            pth_root(&g),
            Err(GroupError::OutOfDomain { need: 3, got: 1 })
        ));
    }

    #[test]
    fn log_of_identity_is_zero() {
        let chart = Chart::new(2, 3, 8, 1);
        let x = log_mat(&chart.identity()).unwrap();
        assert!(x.entries().iter().all(|&e| e == 0));
    }

    #[test]
    fn log_domain_boundary_at_two() {
        let chart = Chart::new(1, 2, 8, 1);
        let g = CongruenceElement::from_entries(chart, &[3]).unwrap();
        assert!(matches!(
            log_mat(&g),
            Err(GroupError::OutOfDomain { need: 2, got: 1 })
        ));
    }

    #[test]
    fn exp_log_round_trip_small() {
        let chart = Chart::new(2, 3, 8, 1);
        let g = CongruenceElement::from_entries(chart, &[1 + 3, 9, 3, 1 + 6]).unwrap();
        let x = log_mat(&g).unwrap();
        let back = exp_mat(&chart, &x).unwrap();
        assert_eq!(back.matrix(), g.matrix());
    }
}
