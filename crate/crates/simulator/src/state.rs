//! Statevector storage and gate application.
//!
//! One amplitude buffer, updated in place; each gate touches exactly the
//! control-satisfying subspace, enumerated over the free bits so the work
//! per gate is `2^{width − 1 − #controls}` pairs.  Updates are sequential
//! and write each amplitude once, so results are bit-reproducible.

use schrobs_linalg::ndarray::Array1;
use schrobs_linalg::{C64, CVector};

use schrobs_circuits::{Gate, GateKind};

use crate::{Result, SimError};

#[derive(Debug, Clone)]
pub struct StateVector {
    pub width: usize,
    pub amps: Vec<C64>,
    /// Physical scale: the represented vector is `norm_factor · amps`.
    pub norm_factor: f64,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero_state(width: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << width];
        amps[0] = C64::new(1.0, 0.0);
        Self { width, amps, norm_factor: 1.0 }
    }

    /// Normalises the given physical vector into amplitudes + scale.
    pub fn from_physical(width: usize, v: &[C64]) -> Result<Self> {
        if v.len() != 1 << width {
            return Err(SimError::ShapeMismatch {
                expected: 1 << width,
                got: v.len(),
            });
        }
        let nf = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nf == 0.0 {
            return Err(SimError::ZeroState);
        }
        Ok(Self {
            width,
            amps: v.iter().map(|z| z / nf).collect(),
            norm_factor: nf,
        })
    }

    pub fn amplitudes(&self) -> CVector {
        Array1::from_vec(self.amps.clone())
    }

    fn masks(&self, g: &Gate) -> (usize, usize) {
        let mut cmask = 0usize;
        let mut cval = 0usize;
        for &(q, pol) in &g.controls {
            cmask |= 1 << q;
            if pol {
                cval |= 1 << q;
            }
        }
        (cmask, cval)
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        debug_assert!(g.max_qubit() < self.width, "gate outside register");
        let (cmask, cval) = self.masks(g);
        let full = (1usize << self.width) - 1;
        if let GateKind::GlobalPhase(theta) = g.kind {
            let ph = C64::from_polar(1.0, theta);
            let free = full & !cmask;
            let mut s = 0usize;
            loop {
                self.amps[s | cval] *= ph;
                s = s.wrapping_sub(free) & free;
                if s == 0 {
                    break;
                }
            }
            return;
        }
        let tmask = 1usize << g.target;
        let free = full & !(cmask | tmask);
        match g.kind {
            // Diagonal kinds touch each index once.
            GateKind::Phase(lambda) => {
                let d1 = C64::from_polar(1.0, lambda);
                let mut s = 0usize;
                loop {
                    self.amps[s | cval | tmask] *= d1;
                    s = s.wrapping_sub(free) & free;
                    if s == 0 {
                        break;
                    }
                }
            }
            GateKind::RZ(theta) => {
                let d0 = C64::from_polar(1.0, -theta / 2.0);
                let d1 = C64::from_polar(1.0, theta / 2.0);
                let mut s = 0usize;
                loop {
                    let i0 = s | cval;
                    self.amps[i0] *= d0;
                    self.amps[i0 | tmask] *= d1;
                    s = s.wrapping_sub(free) & free;
                    if s == 0 {
                        break;
                    }
                }
            }
            _ => {
                let m = g.kind.matrix();
                let mut s = 0usize;
                loop {
                    let i0 = s | cval;
                    let i1 = i0 | tmask;
                    let a = self.amps[i0];
                    let b = self.amps[i1];
                    self.amps[i0] = m[0][0] * a + m[0][1] * b;
                    self.amps[i1] = m[1][0] * a + m[1][1] * b;
                    s = s.wrapping_sub(free) & free;
                    if s == 0 {
                        break;
                    }
                }
            }
        }
    }

    pub fn apply_gates(&mut self, gates: &[Gate]) {
        for g in gates {
            self.apply_gate(g);
        }
    }

    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use schrobs_circuits::{apply_gate_reference, Circuit};

    #[test]
    fn x_flips_lsb() {
        let mut s = StateVector::zero_state(3);
        s.apply_gate(&Gate::new(GateKind::X, 0));
        assert!((s.amps[1].re - 1.0).abs() < 1e-15);
        assert!(s.amps[0].norm() < 1e-15);
    }

    #[test]
    fn hadamard_twice_is_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let v: Vec<C64> = (0..8)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut s = StateVector::from_physical(3, &v).unwrap();
        let before = s.amps.clone();
        s.apply_gate(&Gate::new(GateKind::H, 1));
        s.apply_gate(&Gate::new(GateKind::H, 1));
        for (a, b) in s.amps.iter().zip(before.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn controlled_gate_leaves_unsatisfied_subspace_untouched() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let v: Vec<C64> = (0..16)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut s = StateVector::from_physical(4, &v).unwrap();
        let before = s.amps.clone();
        let g = Gate::new(GateKind::RZ(0.7), 2)
            .controlled_by(0, true)
            .controlled_by(3, false);
        s.apply_gate(&g);
        for i in 0..16usize {
            let fires = (i & 1 == 1) && (i & 8 == 0);
            if !fires {
                assert_eq!(s.amps[i], before[i], "index {i} should be untouched");
            }
        }
    }

    #[test]
    fn agrees_with_reference_applier_on_random_circuits() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let width = 5usize;
        for _ in 0..30 {
            let mut c = Circuit::new(width);
            for _ in 0..25 {
                let kind = match rng.gen_range(0..7) {
                    0 => GateKind::X,
                    1 => GateKind::H,
                    2 => GateKind::Phase(rng.gen_range(-3.0..3.0)),
                    3 => GateKind::RX(rng.gen_range(-3.0..3.0)),
                    4 => GateKind::RY(rng.gen_range(-3.0..3.0)),
                    5 => GateKind::RZ(rng.gen_range(-3.0..3.0)),
                    _ => GateKind::GlobalPhase(rng.gen_range(-3.0..3.0)),
                };
                let target = rng.gen_range(0..width);
                let mut g = Gate::new(kind, target);
                for _ in 0..rng.gen_range(0..3) {
                    let q = rng.gen_range(0..width);
                    if q != target && !g.controls.iter().any(|&(cq, _)| cq == q) {
                        g = g.controlled_by(q, rng.gen());
                    }
                }
                c.push(g).unwrap();
            }
            let v: Vec<C64> = (0..1 << width)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let mut fast = StateVector::from_physical(width, &v).unwrap();
            fast.apply_gates(&c.gates);
            let mut slow = Array1::from_vec(v.clone());
            let nf = fast.norm_factor;
            for g in &c.gates {
                apply_gate_reference(g, &mut slow);
            }
            for i in 0..slow.len() {
                assert!(
                    (fast.amps[i] * nf - slow[i]).norm() < 1e-12,
                    "index {i} mismatch"
                );
            }
        }
    }

    #[test]
    fn norm_stays_unit_over_many_gates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let width = 6usize;
        let v: Vec<C64> = (0..1 << width)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut s = StateVector::from_physical(width, &v).unwrap();
        for _ in 0..100_000 {
            let kind = match rng.gen_range(0..4) {
                0 => GateKind::H,
                1 => GateKind::RX(rng.gen_range(-0.5..0.5)),
                2 => GateKind::RZ(rng.gen_range(-0.5..0.5)),
                _ => GateKind::X,
            };
            let target = rng.gen_range(0..width);
            let mut g = Gate::new(kind, target);
            let q = rng.gen_range(0..width);
            if q != target {
                g = g.controlled_by(q, rng.gen());
            }
            s.apply_gate(&g);
        }
        assert!((s.norm2() - 1.0).abs() < 1e-10);
    }
}
