use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::window::LevelWindow;
use super::CochainError;
use crate::banach::{invert_square, BoundedMap, NormedModule, SeriesMat};
use crate::scalars::Valuation;

/// A group action on a normed module, given by one invertible map per chart
/// coordinate of `G = Z_p^d`, together with an optional analyticity
/// certificate `(v_e, v_c)` asserting
/// `val(rho(gamma) - 1) >= -v_e + v_c * p^i` for `gamma` in `G_i`.
#[derive(Clone, Debug)]
pub struct AnalyticAction {
    module: NormedModule,
    generators: Vec<BoundedMap>,
    abelian: bool,
    certificate: Option<(i64, i64)>,
}

impl AnalyticAction {
    /// Validates invertibility of each generator and, when the group is
    /// declared abelian, that the generator maps commute exactly.
    pub fn new(
        module: NormedModule,
        generators: Vec<BoundedMap>,
        abelian: bool,
        ambient: i64,
    ) -> Result<Self, CochainError> {
        assert!(!generators.is_empty());
        for g in &generators {
            if g.source().rank() != module.rank() || g.target().rank() != module.rank() {
                return Err(CochainError::WindowIncompatible(
                    "generator map does not act on the module".into(),
                ));
            }
            invert_square(g.entries(), ambient).map_err(|_| {
                CochainError::WindowIncompatible("generator map is not invertible".into())
            })?;
        }
        if abelian {
            for a in 0..generators.len() {
                for b in a + 1..generators.len() {
                    let ab = generators[a].entries().mul(generators[b].entries());
                    let ba = generators[b].entries().mul(generators[a].entries());
                    if !ab.agrees(&ba) {
                        return Err(CochainError::NonCommuting);
                    }
                }
            }
        }
        Ok(AnalyticAction { module, generators, abelian, certificate: None })
    }

    pub fn with_certificate(mut self, v_e: i64, v_c: i64) -> Self {
        self.certificate = Some((v_e, v_c));
        self
    }

    pub fn module(&self) -> &NormedModule {
        &self.module
    }

    pub fn generators(&self) -> &[BoundedMap] {
        &self.generators
    }

    pub fn abelian(&self) -> bool {
        self.abelian
    }

    pub fn certificate(&self) -> Option<(i64, i64)> {
        self.certificate
    }

    /// Binds the action to a level window at working precision `prec`.
    ///
    /// The binding check is `gen^(p^(l+m)) = 1` at precision, i.e. deeper
    /// levels act trivially on the truncated module; the cached action on
    /// canonical representatives is then an exact representation of `Q`.
    pub fn bind(&self, window: LevelWindow, prec: i64) -> Result<BoundAction, CochainError> {
        if self.generators.len() != window.d {
            return Err(CochainError::WindowIncompatible(format!(
                "{} generators for a rank-{} window",
                self.generators.len(),
                window.d
            )));
        }
        if !self.abelian {
            return Err(CochainError::NonAbelian);
        }
        let p = window.p;
        if self.generators[0].entries().prime() != p {
            return Err(CochainError::WindowIncompatible(
                "group prime and scalar characteristic differ".into(),
            ));
        }
        let rank = self.module.rank();
        let q = window.q();
        let depth = (p as u128).pow(window.l + window.m);
        if depth > u64::MAX as u128 {
            return Err(CochainError::WindowIncompatible("window too deep".into()));
        }

        // level-(l+m) triviality at the working precision
        let id = SeriesMat::identity(p, rank, prec);
        for (k, gen) in self.generators.iter().enumerate() {
            let deep = gen.entries().pow(depth as u64, prec);
            if !deep.sub(&id).is_zero() {
                return Err(CochainError::WindowIncompatible(format!(
                    "generator {k} does not act trivially at depth p^{}; \
                     lower N or deepen the window",
                    window.l + window.m
                )));
            }
        }

        // cache powers of each level-l generator, then all products
        let mut powers: Vec<Vec<SeriesMat>> = Vec::with_capacity(window.d);
        for gen in &self.generators {
            let base = gen.entries().pow(p.pow(window.l) as u64, prec);
            let mut table = Vec::with_capacity(q as usize);
            table.push(SeriesMat::identity(p, rank, prec));
            for e in 1..q {
                table.push(table[(e - 1) as usize].mul(&base));
            }
            powers.push(table);
        }
        let mut rho = Vec::with_capacity(window.order());
        for idx in 0..window.order() {
            let exps = window.exps_of(idx);
            let mut mat = powers[0][exps[0] as usize].clone();
            for k in 1..window.d {
                mat = mat.mul(&powers[k][exps[k] as usize]);
            }
            rho.push(mat);
        }

        Ok(BoundAction { window, rank, prec, rho })
    }
}

/// An action bound to a level window: the exact representation of the finite
/// quotient on the truncated module, with all operator matrices cached.
#[derive(Clone, Debug)]
pub struct BoundAction {
    window: LevelWindow,
    rank: usize,
    prec: i64,
    rho: Vec<SeriesMat>,
}

impl BoundAction {
    pub fn window(&self) -> &LevelWindow {
        &self.window
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn rho(&self, idx: usize) -> &SeriesMat {
        &self.rho[idx]
    }
}

/// Scale profile and fitted certificate for an action.
#[derive(Clone, Debug, Serialize)]
pub enum CertificateOutcome {
    Certified {
        v_e: i64,
        v_c: i64,
        profile: Vec<(u32, Valuation)>,
    },
    Rejected {
        profile: Vec<(u32, Valuation)>,
        reason: String,
    },
}

/// Fits the best integer pair `(v_e, v_c >= 1)` to the observed decay of
/// `val(rho(gamma) - 1)` over sampled `gamma` in `G_i`, `i <= l_max`.
///
/// `v_c` is the floor of the worst consecutive slope
/// `(w_(i+1) - w_i) / (p^(i+1) - p^i)` over finite scales (1 when no two
/// consecutive scales are finite), and `v_e = max(0, max_i(v_c p^i - w_i))`.
/// Rejects when the fitted slope is below 1, i.e. the decay is not at least
/// linear in `p^i`.
pub fn action_certificate(
    action: &AnalyticAction,
    l_max: u32,
    samples: usize,
    seed: u64,
) -> CertificateOutcome {
    assert!(l_max >= 1, "need at least two scales to fit a slope");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = action.generators[0].entries().prime();
    let rank = action.module.rank();
    let prec = action
        .generators
        .iter()
        .map(|g| g.entries().min_prec())
        .min()
        .unwrap();
    let id = SeriesMat::identity(p, rank, prec);

    let mut profile = Vec::new();
    for i in 0..=l_max {
        let scale = p.pow(i);
        let mut w = Valuation::Infinite;
        for _ in 0..samples {
            // at least one unit exponent keeps the sample at scale exactly i
            let mut exps: Vec<u64> = (0..action.generators.len())
                .map(|_| rng.gen_range(0..p.pow(3)))
                .collect();
            let unit_slot = rng.gen_range(0..exps.len());
            if exps[unit_slot] % p == 0 {
                exps[unit_slot] += 1;
            }
            let mut mat = id.clone();
            for (k, gen) in action.generators.iter().enumerate() {
                if exps[k] == 0 {
                    continue;
                }
                mat = mat.mul(&gen.entries().pow(scale * exps[k], prec));
            }
            w = w.min(mat.sub(&id).min_val());
        }
        profile.push((i, w));
    }

    let mut slopes = Vec::new();
    for k in 0..profile.len() - 1 {
        if let (Valuation::Finite(a), Valuation::Finite(b)) = (profile[k].1, profile[k + 1].1) {
            let gap = (p.pow(profile[k].0 + 1) - p.pow(profile[k].0)) as i64;
            slopes.push((b - a).div_euclid(gap));
        }
    }
    let v_c = match slopes.iter().min() {
        Some(&s) if s < 1 => {
            return CertificateOutcome::Rejected {
                profile,
                reason: format!("observed decay slope {s} is below linear"),
            }
        }
        Some(&s) => s,
        None => 1,
    };
    let v_e = profile
        .iter()
        .filter_map(|&(i, w)| w.finite().map(|w| v_c * p.pow(i) as i64 - w))
        .max()
        .unwrap_or(0)
        .max(0);
    CertificateOutcome::Certified { v_e, v_c, profile }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::TruncSeries;

    const P: u64 = 3;
    const N: i64 = 8;

    fn unipotent_action(n: usize) -> AnalyticAction {
        // gen = 1 + t U with U the full Jordan block (unipotent), so
        // gen - 1 = t U is invertible and gen^(p^i) - 1 = t^(p^i) U^(p^i).
        let entries = SeriesMat::from_fn(P, n, n, |i, j| {
            if i == j {
                let mut e = TruncSeries::one(P, N);
                e = &e + &TruncSeries::monomial(P, 1, 1, N);
                e
            } else if j == i + 1 {
                TruncSeries::monomial(P, 1, 1, N)
            } else {
                TruncSeries::zero(P, N)
            }
        });
        let module = NormedModule::new(n);
        AnalyticAction::new(module.clone(), vec![BoundedMap::new(module.clone(), module, entries)], true, N)
            .unwrap()
    }

    #[test]
    fn binds_when_depth_trivializes() {
        let action = unipotent_action(2);
        // gen^(3^2) = 1 + t^9 U^9 = 1 at precision 8 (t^9 truncates, U^9 = 0
        // only after unipotent part; here (gen-1)^9 has valuation 9 >= N)
        let window = LevelWindow::new(P, 1, 0, 2);
        assert!(action.bind(window, N).is_ok());
        // too-shallow window fails: gen^3 - 1 has valuation 3 < 8
        let shallow = LevelWindow::new(P, 1, 0, 1);
        assert!(action.bind(shallow, N).is_err());
    }

    #[test]
    fn certificate_of_unipotent_action() {
        let action = unipotent_action(2);
        match action_certificate(&action, 2, 30, 1) {
            CertificateOutcome::Certified { v_e, v_c, .. } => {
                assert_eq!(v_c, 1);
                assert_eq!(v_e, 0);
            }
            CertificateOutcome::Rejected { reason, .. } => panic!("rejected: {reason}"),
        }
    }

    #[test]
    fn trivial_action_canonical_certificate() {
        let module = NormedModule::new(2);
        let action = AnalyticAction::new(
            module.clone(),
            vec![BoundedMap::identity(module, P, N)],
            true,
            N,
        )
        .unwrap();
        match action_certificate(&action, 2, 10, 0) {
            CertificateOutcome::Certified { v_e, v_c, .. } => {
                assert_eq!((v_e, v_c), (0, 1));
            }
            _ => panic!("trivial action must certify"),
        }
    }

    #[test]
    fn no_decay_is_rejected() {
        // gen - 1 = diag(1, 1): valuation 0 at every scale (gen = 2 = 1+1,
        // p = 3: gen^(3^i) - 1 = 2^(3^i) - 1 != 0 mod 3 stays val 0)
        let module = NormedModule::new(1);
        let entries = SeriesMat::from_fn(P, 1, 1, |_, _| TruncSeries::monomial(P, 2, 0, N));
        let action = AnalyticAction::new(
            module.clone(),
            vec![BoundedMap::new(module.clone(), module, entries)],
            true,
            N,
        )
        .unwrap();
        assert!(matches!(
            action_certificate(&action, 2, 10, 0),
            CertificateOutcome::Rejected { .. }
        ));
    }
}
