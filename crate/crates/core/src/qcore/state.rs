use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::matrix::Mat4;

/// Atomic level. `Ground` is |g⟩ (computational 0), `Excited` is |e⟩ (computational 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Ground,
    Excited,
}

impl Level {
    pub fn index(self) -> usize {
        match self {
            Level::Ground => 0,
            Level::Excited => 1,
        }
    }

    pub fn from_index(i: usize) -> Level {
        if i == 0 {
            Level::Ground
        } else {
            Level::Excited
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    First,
    Second,
}

impl Atom {
    /// Parses the 1-based atom label used in text formats.
    pub fn from_label(label: usize) -> Result<Atom> {
        match label {
            1 => Ok(Atom::First),
            2 => Ok(Atom::Second),
            other => Err(Error::InvalidArgument(format!(
                "atom label must be 1 or 2, got {other}"
            ))),
        }
    }

    pub fn label(self) -> usize {
        match self {
            Atom::First => 1,
            Atom::Second => 2,
        }
    }
}

/// Hilbert space of two atoms and a cavity mode truncated to `F` Fock levels.
///
/// Flat index layout is atom-1 major, cavity minor:
/// `index = (a1 * 2 + a2) * F + n` with `a = 0` for |g⟩ and `a = 1` for |e⟩.
/// All amplitudes with a given atom-1 level are therefore contiguous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    fock_cutoff: usize,
}

impl Space {
    pub const ATOM_COUNT: usize = 2;

    pub fn new(fock_cutoff: usize) -> Result<Space> {
        if fock_cutoff < 1 {
            return Err(Error::InvalidArgument("fock_cutoff must be at least 1".into()));
        }
        Ok(Space { fock_cutoff })
    }

    /// The two atoms alone (a single, frozen cavity level).
    pub fn atoms_only() -> Space {
        Space { fock_cutoff: 1 }
    }

    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }

    pub fn dim(&self) -> usize {
        4 * self.fock_cutoff
    }

    pub fn index(&self, a1: Level, a2: Level, n: usize) -> Result<usize> {
        if n >= self.fock_cutoff {
            return Err(Error::IndexOutOfRange {
                what: "fock number",
                index: n,
                limit: self.fock_cutoff,
            });
        }
        Ok(self.flat(a1.index() * 2 + a2.index(), n))
    }

    /// Flat index from the atomic index `a1 * 2 + a2` and Fock number.
    #[inline]
    pub fn flat(&self, atomic: usize, n: usize) -> usize {
        atomic * self.fock_cutoff + n
    }

    pub fn decompose(&self, index: usize) -> (Level, Level, usize) {
        let atomic = index / self.fock_cutoff;
        (
            Level::from_index(atomic / 2),
            Level::from_index(atomic % 2),
            index % self.fock_cutoff,
        )
    }

    fn check_same(&self, other: &Space) -> Result<()> {
        if self != other {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

pub fn make_space(fock_cutoff: usize) -> Result<Space> {
    Space::new(fock_cutoff)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: Space,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn zeros(space: Space) -> StateVector {
        StateVector {
            space,
            amps: vec![C64::new(0.0, 0.0); space.dim()],
        }
    }

    pub fn basis(space: Space, a1: Level, a2: Level, n: usize) -> Result<StateVector> {
        let idx = space.index(a1, a2, n)?;
        let mut s = StateVector::zeros(space);
        s.amps[idx] = C64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn from_amplitudes(space: Space, amps: Vec<C64>) -> Result<StateVector> {
        if amps.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: amps.len(),
            });
        }
        Ok(StateVector { space, amps })
    }

    /// Product state `atomic ⊗ cavity`, atomic amplitudes in (gg, ge, eg, ee) order.
    pub fn product(space: Space, atomic: &[C64; 4], cavity: &[C64]) -> Result<StateVector> {
        if cavity.len() != space.fock_cutoff() {
            return Err(Error::DimensionMismatch {
                expected: space.fock_cutoff(),
                found: cavity.len(),
            });
        }
        let mut s = StateVector::zeros(space);
        for (a, &ca) in atomic.iter().enumerate() {
            for (n, &cn) in cavity.iter().enumerate() {
                s.amps[space.flat(a, n)] = ca * cn;
            }
        }
        Ok(s)
    }

    /// `atomic ⊗ |n⟩`.
    pub fn with_fock(space: Space, atomic: &[C64; 4], n: usize) -> Result<StateVector> {
        if n >= space.fock_cutoff() {
            return Err(Error::IndexOutOfRange {
                what: "fock number",
                index: n,
                limit: space.fock_cutoff(),
            });
        }
        let mut s = StateVector::zeros(space);
        for (a, &ca) in atomic.iter().enumerate() {
            s.amps[space.flat(a, n)] = ca;
        }
        Ok(s)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn amp(&self, a1: Level, a2: Level, n: usize) -> Result<C64> {
        Ok(self.amps[self.space.index(a1, a2, n)?])
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        self.amps.iter_mut().for_each(|a| *a /= n);
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.space.check_same(&other.space)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, s: C64) -> StateVector {
        StateVector {
            space: self.space,
            amps: self.amps.iter().map(|a| a * s).collect(),
        }
    }

    /// Applies a two-atom operator, identity on the cavity.
    pub fn apply_atomic(&mut self, m: &Mat4) {
        let f = self.space.fock_cutoff();
        for n in 0..f {
            let v = [
                self.amps[n],
                self.amps[f + n],
                self.amps[2 * f + n],
                self.amps[3 * f + n],
            ];
            let w = m.apply(&v);
            for (a, x) in w.into_iter().enumerate() {
                self.amps[a * f + n] = x;
            }
        }
    }

    /// Population in the highest `levels` Fock states.
    pub fn top_population(&self, levels: usize) -> f64 {
        let f = self.space.fock_cutoff();
        let from = f.saturating_sub(levels);
        (0..4)
            .flat_map(|a| (from..f).map(move |n| a * f + n))
            .map(|i| self.amps[i].norm_sqr())
            .sum()
    }

    /// Photon-number distribution of the reduced cavity state.
    pub fn photon_distribution(&self) -> Vec<f64> {
        let f = self.space.fock_cutoff();
        (0..f)
            .map(|n| (0..4).map(|a| self.amps[a * f + n].norm_sqr()).sum())
            .collect()
    }

    /// The atomic amplitudes at Fock level `n`.
    pub fn atomic_slice(&self, n: usize) -> [C64; 4] {
        let f = self.space.fock_cutoff();
        [
            self.amps[n],
            self.amps[f + n],
            self.amps[2 * f + n],
            self.amps[3 * f + n],
        ]
    }
}

pub fn basis_state(space: Space, a1: Level, a2: Level, n: usize) -> Result<StateVector> {
    StateVector::basis(space, a1, a2, n)
}

/// `|⟨a|b⟩|²`, clamped to [0, 1].
pub fn fidelity_pure(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

/// (p_g, p_e) for the readout of atom 1.
pub fn atom1_outcome_probs(state: &StateVector) -> (f64, f64) {
    let half = state.space.dim() / 2;
    let p = |r: &[C64]| r.iter().map(|a| a.norm_sqr()).sum::<f64>();
    let (pg, pe) = (p(&state.amps[..half]), p(&state.amps[half..]));
    let total = pg + pe;
    if total > 0.0 {
        (pg / total, pe / total)
    } else {
        (0.0, 0.0)
    }
}

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Weighted ensemble of pure states sharing one space.
#[derive(Clone, Debug, PartialEq)]
pub struct MixtureState {
    components: Vec<(f64, StateVector)>,
}

impl MixtureState {
    pub fn new(components: Vec<(f64, StateVector)>) -> Result<MixtureState> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidArgument("mixture needs at least one component".into()))?
            .1
            .space;
        let mut total = 0.0;
        for (w, s) in &components {
            if !(*w >= 0.0) {
                return Err(Error::InvalidArgument(format!("mixture weight {w} is negative")));
            }
            first.check_same(&s.space)?;
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidArgument(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        Ok(MixtureState { components })
    }

    pub fn pure(state: StateVector) -> MixtureState {
        MixtureState {
            components: vec![(1.0, state)],
        }
    }

    /// `atomic ⊗ ρ_thermal` over the first `levels` Fock states.
    ///
    /// Zero-weight components are dropped.
    pub fn thermal(space: Space, atomic: &[C64; 4], nbar: f64, levels: usize) -> Result<MixtureState> {
        if levels > space.fock_cutoff() {
            return Err(Error::InvalidArgument(format!(
                "{levels} thermal levels do not fit in Fock cutoff {}",
                space.fock_cutoff()
            )));
        }
        let weights = thermal_weights(nbar, levels)?;
        let components = weights
            .into_iter()
            .enumerate()
            .filter(|(_, w)| *w > 0.0)
            .map(|(n, w)| Ok((w, StateVector::with_fock(space, atomic, n)?)))
            .collect::<Result<Vec<_>>>()?;
        MixtureState::new(components)
    }

    pub fn components(&self) -> &[(f64, StateVector)] {
        &self.components
    }

    pub fn into_components(self) -> Vec<(f64, StateVector)> {
        self.components
    }

    pub fn space(&self) -> Space {
        self.components[0].1.space
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.components.iter().map(|(w, _)| *w)
    }

    /// Weighted atom-1 readout probabilities.
    pub fn atom1_outcome_probs(&self) -> (f64, f64) {
        self.components.iter().fold((0.0, 0.0), |(g, e), (w, s)| {
            let (pg, pe) = atom1_outcome_probs(s);
            (g + w * pg, e + w * pe)
        })
    }
}

/// `⟨target|ρ|target⟩ = Σ wᵢ |⟨target|ψᵢ⟩|²`.
pub fn fidelity_mixture(mix: &MixtureState, target: &StateVector) -> Result<f64> {
    let mut f = 0.0;
    for (w, s) in &mix.components {
        f += w * fidelity_pure(target, s)?;
    }
    Ok(f.clamp(0.0, 1.0))
}

/// Bose-Einstein photon-number weights `n̄ⁿ/(1+n̄)ⁿ⁺¹` for `n < levels`,
/// renormalized after truncation.
pub fn thermal_weights(nbar: f64, levels: usize) -> Result<Vec<f64>> {
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "nbar must be a finite non-negative number, got {nbar}"
        )));
    }
    if levels < 1 {
        return Err(Error::InvalidArgument("thermal levels must be at least 1".into()));
    }
    let ratio = nbar / (1.0 + nbar);
    let raw: Vec<f64> = (0..levels).map(|n| (1.0 - ratio) * ratio.powi(n as i32)).collect();
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|p| p / total).collect())
}

/// Thermal population beyond the first `levels` Fock states, before renormalization.
pub fn thermal_tail(nbar: f64, levels: usize) -> f64 {
    (nbar / (1.0 + nbar)).powi(levels as i32)
}

/// Smallest number of levels whose discarded thermal tail is below `tail_tol`.
pub fn thermal_levels_for(nbar: f64, tail_tol: f64) -> usize {
    (1..)
        .find(|&l| thermal_tail(nbar, l) < tail_tol)
        .expect("thermal tail decays geometrically")
}

#[cfg(test)]
mod tests {
    use super::*;
    use Level::{Excited as E, Ground as G};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn make_space_sizes() {
        assert_eq!(make_space(1).unwrap().dim(), 4);
        assert_eq!(make_space(20).unwrap().dim(), 80);
        assert!(matches!(make_space(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn basis_layout() {
        let s = basis_state(make_space(3).unwrap(), G, G, 0).unwrap();
        assert_eq!(s.amps()[0], c(1.0));
        let s = basis_state(make_space(2).unwrap(), E, G, 0).unwrap();
        assert_eq!(s.amps()[4], c(1.0));
        assert_eq!(s.amps().iter().filter(|a| a.norm() > 0.0).count(), 1);
        let space = make_space(4).unwrap();
        assert!(matches!(
            basis_state(space, G, E, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(space.decompose(space.index(E, G, 3).unwrap()), (E, G, 3));
    }

    #[test]
    fn fidelity_cases() {
        let space = make_space(2).unwrap();
        let gg = basis_state(space, G, G, 0).unwrap();
        let eg = basis_state(space, E, G, 0).unwrap();
        assert_eq!(fidelity_pure(&gg, &gg).unwrap(), 1.0);
        assert_eq!(fidelity_pure(&gg, &eg).unwrap(), 0.0);
        let other = basis_state(make_space(3).unwrap(), G, G, 0).unwrap();
        assert!(matches!(
            fidelity_pure(&gg, &other),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn fidelity_mixture_cases() {
        let space = make_space(2).unwrap();
        let psi = basis_state(space, G, E, 1).unwrap();
        let phi = basis_state(space, E, E, 0).unwrap();
        let single = MixtureState::pure(psi.clone());
        assert_eq!(fidelity_mixture(&single, &psi).unwrap(), 1.0);
        let half = MixtureState::new(vec![(0.5, psi.clone()), (0.5, phi)]).unwrap();
        assert!((fidelity_mixture(&half, &psi).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mixture_rejects_bad_weights_and_spaces() {
        let space = make_space(2).unwrap();
        let psi = basis_state(space, G, G, 0).unwrap();
        assert!(MixtureState::new(vec![(0.7, psi.clone())]).is_err());
        assert!(MixtureState::new(vec![(1.5, psi.clone()), (-0.5, psi.clone())]).is_err());
        let other = basis_state(make_space(3).unwrap(), G, G, 0).unwrap();
        assert!(MixtureState::new(vec![(0.5, psi), (0.5, other)]).is_err());
        assert!(MixtureState::new(vec![]).is_err());
    }

    #[test]
    fn thermal_weight_cases() {
        let w = thermal_weights(0.0, 5).unwrap();
        assert_eq!(w, vec![1.0, 0.0, 0.0, 0.0, 0.0]);

        // nbar = 1: raw p_n = 2^-(n+1); renormalized by 1 - 2^-levels.
        let levels = 8;
        let w = thermal_weights(1.0, levels).unwrap();
        let norm = 1.0 - 0.5f64.powi(levels as i32);
        for (n, p) in w.iter().enumerate() {
            assert!((p * norm - 0.5f64.powi(n as i32 + 1)).abs() < 1e-15);
        }

        let w = thermal_weights(0.5, 15).unwrap();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(thermal_tail(0.5, 15) < 1e-6);
        let p0 = (2.0 / 3.0) / (1.0 - (1.0f64 / 3.0).powi(15));
        assert!((w[0] - p0).abs() < 1e-14);

        assert!(thermal_weights(-0.1, 3).is_err());
        assert!(thermal_weights(f64::NAN, 3).is_err());
        assert_eq!(thermal_levels_for(0.5, 1e-6), 13);
    }

    #[test]
    fn atom1_marginals() {
        let space = make_space(3).unwrap();
        let s = basis_state(space, G, E, 0).unwrap();
        assert_eq!(atom1_outcome_probs(&s), (1.0, 0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::with_fock(space, &[c(h), c(0.0), c(h), c(0.0)], 0).unwrap();
        let (pg, pe) = atom1_outcome_probs(&s);
        assert!((pg - 0.5).abs() < 1e-15 && (pe - 0.5).abs() < 1e-15);
    }

    #[test]
    fn thermal_mixture_drops_empty_components() {
        let space = make_space(12).unwrap();
        let atomic = [c(1.0), c(0.0), c(0.0), c(0.0)];
        let vac = MixtureState::thermal(space, &atomic, 0.0, 2).unwrap();
        assert_eq!(vac.components().len(), 1);
        let hot = MixtureState::thermal(space, &atomic, 0.5, 2).unwrap();
        assert_eq!(hot.components().len(), 2);
        assert!(MixtureState::thermal(space, &atomic, 0.5, 13).is_err());
    }
}
