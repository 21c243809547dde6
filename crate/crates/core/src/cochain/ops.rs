use super::action::BoundAction;
use super::table::Cochain;
use super::CochainError;
use crate::scalars::TruncSeries;

/// The inhomogeneous differential: for a degree-`n` table,
///
/// ```text
/// (df)(g_1, .., g_(n+1)) = g_1 . f(g_2, .., g_(n+1))
///   + sum_{k=1..n} (-1)^k f(g_1, .., g_k g_(k+1), .., g_(n+1))
///   + (-1)^(n+1) f(g_1, .., g_n)
/// ```
///
/// Because the bound action represents the finite quotient exactly at the
/// working precision, `d . d = 0` holds on the nose.
pub fn differential(f: &Cochain, action: &BoundAction) -> Result<Cochain, CochainError> {
    if f.window() != action.window() || f.rank() != action.rank() {
        return Err(CochainError::LevelMismatch);
    }
    let window = *f.window();
    let n = f.degree();
    let out_degree = n + 1;
    let len = window.tuple_count(out_degree);
    let mut values = Vec::with_capacity(len);

    let mut folded = Vec::with_capacity(n.max(1));
    for flat in 0..len {
        let args = window.tuple_of(flat, out_degree);
        // first face: the action term
        let tail = &args[1..];
        let mut acc = action.rho(args[0]).apply(f.value(tail));
        // middle faces: fold adjacent arguments
        for k in 1..=n {
            folded.clear();
            folded.extend_from_slice(&args[..k - 1]);
            folded.push(window.mul(args[k - 1], args[k]));
            folded.extend_from_slice(&args[k + 1..]);
            let term = f.value(&folded);
            accumulate(&mut acc, term, k % 2 == 1);
        }
        // last face: drop the final argument
        let head = &args[..n];
        accumulate(&mut acc, f.value(head), out_degree % 2 == 1);
        values.push(acc);
    }

    Ok(Cochain::from_values(window, out_degree, f.rank(), values))
}

fn accumulate(acc: &mut [TruncSeries], term: &[TruncSeries], negate: bool) {
    for (a, t) in acc.iter_mut().zip(term) {
        *a = if negate { &*a - t } else { &*a + t };
    }
}

/// The coboundary of a degree-0 cochain (a module vector):
/// `g -> g.v - v`, a crossed-homomorphism table with `d(df) = 0`.
pub fn coboundary_of_vector(
    action: &BoundAction,
    v: &[TruncSeries],
) -> Result<Cochain, CochainError> {
    let window = *action.window();
    let prec = v.iter().map(TruncSeries::precision).min().unwrap_or(action.prec());
    let mut f = Cochain::zero(window, 0, action.rank(), window.p, prec);
    f.set_value(&[], v.to_vec());
    differential(&f, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::banach::{BoundedMap, NormedModule, SeriesMat};
    use crate::cochain::action::AnalyticAction;
    use crate::cochain::window::LevelWindow;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const P: u64 = 3;
    const N: i64 = 8;

    fn bound_unipotent(d: usize, n: usize, l: u32, m: u32) -> BoundAction {
        let module = NormedModule::new(n);
        let gens: Vec<BoundedMap> = (0..d)
            .map(|k| {
                let entries = SeriesMat::from_fn(P, n, n, |i, j| {
                    if i == j {
                        &TruncSeries::one(P, N) + &TruncSeries::monomial(P, 1, 1, N)
                    } else if j == i + 1 && k == 0 {
                        TruncSeries::monomial(P, 1, 1, N)
                    } else {
                        TruncSeries::zero(P, N)
                    }
                });
                BoundedMap::new(module.clone(), module.clone(), entries)
            })
            .collect();
        AnalyticAction::new(module, gens, true, N)
            .unwrap()
            .bind(LevelWindow::new(P, d, l, m), N)
            .unwrap()
    }

    #[test]
    fn degree_zero_differential_is_orbit_difference() {
        let action = bound_unipotent(1, 2, 0, 2);
        let v = vec![TruncSeries::one(P, N), TruncSeries::one(P, N)];
        let df = coboundary_of_vector(&action, &v).unwrap();
        for g in 0..action.window().order() {
            let expected: Vec<TruncSeries> = action
                .rho(g)
                .apply(&v)
                .iter()
                .zip(&v)
                .map(|(a, b)| a - b)
                .collect();
            assert!(crate::banach::vec_agrees(df.value(&[g]), &expected));
        }
    }

    #[test]
    fn d_squared_vanishes_on_random_tables() {
        let action = bound_unipotent(1, 2, 0, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..8 {
            let f = Cochain::random(*action.window(), 1, 2, P, N, &mut rng);
            let ddf = differential(&differential(&f, &action).unwrap(), &action).unwrap();
            assert!(ddf.is_zero());
        }
    }

    #[test]
    fn crossed_homomorphisms_are_cocycles() {
        let action = bound_unipotent(2, 2, 0, 2);
        let v = vec![TruncSeries::monomial(P, 2, 0, N), TruncSeries::one(P, N)];
        let f = coboundary_of_vector(&action, &v).unwrap();
        let df = differential(&f, &action).unwrap();
        assert!(df.is_zero());
    }
}
