//! Explicit synthesis of every block: Bell-basis changes, the ladder
//! rotations `W_j`, the split-evolution blocks `V₁/V₂` and their dilated
//! variants, the full per-step unitary with its binary-power control
//! ladder, and the centered Fourier transform.
//!
//! Qubit layout: the auxiliary register sits at the bottom (qubits
//! `0..n_p`), the grid register above it, and (one-dimensional case) the
//! dilation qubit on top.  Within a grid register, ladder index `j` acts on
//! qubit `j − 1` counted from that register's least significant qubit.

use schrobs_fdgrid::{BsParams1D, BsParamsD, SpatialGrid};
use schrobs_schro::PGrid;

use crate::circuit::Circuit;
use crate::gate::{Gate, GateKind};
use crate::{CircuitError, Result};

/// Everything the one-dimensional builders need, pre-reduced to scalars.
#[derive(Debug, Clone, Copy)]
pub struct VbsConfig {
    pub n_x: usize,
    pub n_p: usize,
    pub l_p: f64,
    pub r: f64,
    pub sigma: f64,
    /// `γ₁ = 1/(h² l_p)`.
    pub gamma1: f64,
    /// `γ₂ = 1/(2h)`.
    pub gamma2: f64,
    /// Single boundary-coupling entry; `None` for source-free systems.
    pub beta: Option<f64>,
}

impl VbsConfig {
    pub fn new(
        params: &BsParams1D,
        grid: &SpatialGrid,
        pgrid: &PGrid,
        beta: Option<f64>,
    ) -> Self {
        let h = grid.h();
        Self {
            n_x: grid.n_x,
            n_p: pgrid.n_p,
            l_p: pgrid.l_p,
            r: params.r,
            sigma: params.sigma,
            gamma1: 1.0 / (h * h * pgrid.l_p),
            gamma2: 1.0 / (2.0 * h),
            beta,
        }
    }
}

/// Basis change `B_j(λ)` on a bare grid register: Hadamard and phase on
/// qubit `j`, then the fan of CNOTs from `j` onto the lower qubits.
pub fn bell_basis(j: usize, lambda: f64, n_x: usize) -> Result<Circuit> {
    if j < 1 || j > n_x {
        return Err(CircuitError::LadderIndex { j, n_x });
    }
    let mut c = Circuit::new(n_x).with_register("x", 0, n_x - 1);
    let q = j - 1;
    c.push(Gate::new(GateKind::H, q))?;
    c.push(Gate::new(GateKind::Phase(-lambda), q))?;
    for m in 0..q {
        c.push(Gate::new(GateKind::X, m).controlled_by(q, true))?;
    }
    Ok(c)
}

/// Appends `W_j(γτ, λ)` — the Bell-conjugated multi-controlled RZ that
/// realises `exp(iγτ(e^{iλ}s_j⁻ + e^{−iλ}s_j⁺))` — onto `c`.
///
/// The grid register starts at `x_lo`.  When `block_ctrl` is set, every
/// gate except the cancelling phase pair is additionally controlled by that
/// qubit, which is how the dilated blocks select the physical branch.
fn push_w_gate(
    c: &mut Circuit,
    j: usize,
    gamma_tau: f64,
    lambda: f64,
    x_lo: usize,
    block_ctrl: Option<usize>,
) -> Result<()> {
    let q = x_lo + (j - 1);
    let ctl = |mut g: Gate| -> Gate {
        if let Some(b) = block_ctrl {
            g = g.controlled_by(b, true);
        }
        g
    };
    let fan = |c: &mut Circuit, rev: bool| -> Result<()> {
        let targets: Vec<usize> = if rev {
            (x_lo..q).rev().collect()
        } else {
            (x_lo..q).collect()
        };
        for m in targets {
            c.push(ctl(Gate::new(GateKind::X, m).controlled_by(q, true)))?;
        }
        Ok(())
    };
    fan(c, false)?;
    // The phase pair is left uncontrolled: with the block control off, the
    // two cancel on their own.
    c.push(Gate::new(GateKind::Phase(lambda), q))?;
    c.push(ctl(Gate::new(GateKind::H, q)))?;
    let mut rz = Gate::new(GateKind::RZ(-2.0 * gamma_tau), q);
    for m in x_lo..q {
        rz = rz.controlled_by(m, true);
    }
    c.push(ctl(rz))?;
    c.push(ctl(Gate::new(GateKind::H, q)))?;
    c.push(Gate::new(GateKind::Phase(-lambda), q))?;
    fan(c, true)?;
    Ok(())
}

/// Standalone `W_j` circuit on `n_x` qubits.
pub fn w_gate(j: usize, gamma_tau: f64, lambda: f64, n_x: usize) -> Result<Circuit> {
    if j < 1 || j > n_x {
        return Err(CircuitError::LadderIndex { j, n_x });
    }
    let mut c = Circuit::new(n_x).with_register("x", 0, n_x - 1);
    push_w_gate(&mut c, j, gamma_tau, lambda, 0, None)?;
    Ok(c)
}

/// `V₁(s) = Ph(−2γ₁s)·∏_j W_j(γ₁s, 0)`: approximates `exp(i·s·H₁)`.
pub fn build_v1(s: f64, gamma1: f64, n_x: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n_x).with_register("x", 0, n_x - 1);
    for j in 1..=n_x {
        push_w_gate(&mut c, j, gamma1 * s, 0.0, 0, None)?;
    }
    c.push(Gate::new(GateKind::GlobalPhase(-2.0 * gamma1 * s), 0))?;
    Ok(c)
}

/// `V₂(s) = ∏_j W_j(γ₂s, −π/2)`: approximates `exp(i·s·H₂)`.
pub fn build_v2(s: f64, gamma2: f64, n_x: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n_x).with_register("x", 0, n_x - 1);
    for j in 1..=n_x {
        push_w_gate(&mut c, j, gamma2 * s, -std::f64::consts::FRAC_PI_2, 0, None)?;
    }
    Ok(c)
}

fn tilde_registers(cfg: &VbsConfig, c: Circuit) -> Circuit {
    c.with_register("x", 0, cfg.n_x - 1)
        .with_register("dilation", cfg.n_x, cfg.n_x)
}

/// One dilated diffusion block:
/// `Ṽ₁(τ) = (|0⟩⟨0| ⊗ Ph(−τr/l_p)·V₁((σ²/2)τ) + |1⟩⟨1| ⊗ Ph(−τr/l_p)) · U₁⁽¹⁾(τ)`
/// with the boundary coupling `U₁⁽¹⁾` realised as a grid-controlled RX on
/// the dilation qubit.  Without a source the RX is simply absent.
pub fn build_tilde_v1(tau: f64, cfg: &VbsConfig) -> Result<Circuit> {
    let mut c = Circuit::new(cfg.n_x + 1);
    let dil = cfg.n_x;
    if let Some(beta) = cfg.beta {
        // exp(iθX) on the coupled pair, θ = τβ/(2 l_p), is RX(−2θ).
        let mut rx = Gate::new(GateKind::RX(-tau * beta / cfg.l_p), dil);
        for q in 0..cfg.n_x {
            rx = rx.controlled_by(q, true);
        }
        c.push(rx)?;
    }
    c.push(Gate::new(GateKind::X, dil))?;
    let s1 = 0.5 * cfg.sigma * cfg.sigma * tau;
    for j in 1..=cfg.n_x {
        push_w_gate(&mut c, j, cfg.gamma1 * s1, 0.0, 0, Some(dil))?;
    }
    c.push(Gate::new(GateKind::GlobalPhase(-2.0 * cfg.gamma1 * s1), 0).controlled_by(dil, true))?;
    c.push(Gate::new(GateKind::X, dil))?;
    c.push(Gate::new(GateKind::GlobalPhase(-tau * cfg.r / cfg.l_p), 0))?;
    Ok(tilde_registers(cfg, c))
}

/// One dilated convection block:
/// `Ṽ₂(τ) = (|0⟩⟨0| ⊗ V₂((r−σ²/2)τ) + |1⟩⟨1| ⊗ I) · U₂⁽¹⁾(τ)`.
pub fn build_tilde_v2(tau: f64, cfg: &VbsConfig) -> Result<Circuit> {
    let mut c = Circuit::new(cfg.n_x + 1);
    let dil = cfg.n_x;
    if let Some(beta) = cfg.beta {
        let mut ry = Gate::new(GateKind::RY(-tau * beta), dil);
        for q in 0..cfg.n_x {
            ry = ry.controlled_by(q, true);
        }
        c.push(ry)?;
    }
    c.push(Gate::new(GateKind::X, dil))?;
    let s2 = (cfg.r - 0.5 * cfg.sigma * cfg.sigma) * tau;
    for j in 1..=cfg.n_x {
        push_w_gate(&mut c, j, cfg.gamma2 * s2, -std::f64::consts::FRAC_PI_2, 0, Some(dil))?;
    }
    c.push(Gate::new(GateKind::X, dil))?;
    Ok(tilde_registers(cfg, c))
}

fn shift_up(c: &Circuit, offset: usize, new_width: usize) -> Circuit {
    let mut out = Circuit::new(new_width);
    for g in &c.gates {
        let mut ng = Gate::new(g.kind, g.target + offset);
        for &(q, p) in &g.controls {
            ng = ng.controlled_by(q + offset, p);
        }
        out.push(ng).expect("shifted gate in range");
    }
    out
}

/// Full per-step unitary on `(dilation | grid | auxiliary)`:
/// the controlled powers `Ṽ₁^{2^m}` selected by the auxiliary bits, the
/// constant offset `Ṽ₁^{−N_p/2}` as repeated inverse blocks, then `Ṽ₂`.
pub fn build_vbs(tau: f64, cfg: &VbsConfig) -> Result<Circuit> {
    let n_p = cfg.n_p;
    let width = n_p + cfg.n_x + 1;
    let tv1 = shift_up(&build_tilde_v1(tau, cfg)?, n_p, width);
    let tv2 = shift_up(&build_tilde_v2(tau, cfg)?, n_p, width);
    let mut c = Circuit::new(width)
        .with_register("p", 0, n_p - 1)
        .with_register("x", n_p, n_p + cfg.n_x - 1)
        .with_register("dilation", n_p + cfg.n_x, n_p + cfg.n_x);
    for m in 0..n_p {
        let controlled = tv1.controlled_by(m);
        for _ in 0..(1usize << m) {
            c.append(&controlled)?;
        }
    }
    let tv1_inv = tv1.dagger();
    for _ in 0..(1usize << (n_p - 1)) {
        c.append(&tv1_inv)?;
    }
    c.append(&tv2)?;
    Ok(c)
}

/// Per-axis scalars for the multi-asset builder.
#[derive(Debug, Clone)]
pub struct VbsConfigD {
    pub dim: usize,
    pub n_x: usize,
    pub n_p: usize,
    pub l_p: f64,
    pub r: f64,
    /// `σ_m² ρ_mm / 2` per axis.
    pub diffusion: Vec<f64>,
    /// `r − σ_m²/2` per axis.
    pub convection: Vec<f64>,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl VbsConfigD {
    /// Rejects coupled correlation structures: the per-axis blocks only
    /// cover a diagonal `ρ`.
    pub fn new(params: &BsParamsD, grid: &SpatialGrid, pgrid: &PGrid) -> Result<Self> {
        for m in 0..params.dim {
            for n in 0..params.dim {
                if m != n && params.rho_at(m, n) != 0.0 {
                    return Err(CircuitError::CoupledCorrelation);
                }
            }
        }
        let h = grid.h();
        Ok(Self {
            dim: params.dim,
            n_x: grid.n_x,
            n_p: pgrid.n_p,
            l_p: pgrid.l_p,
            r: params.r,
            diffusion: (0..params.dim)
                .map(|m| 0.5 * params.sigmas[m] * params.sigmas[m] * params.rho_at(m, m))
                .collect(),
            convection: (0..params.dim)
                .map(|m| params.r - 0.5 * params.sigmas[m] * params.sigmas[m])
                .collect(),
            gamma1: 1.0 / (h * h * pgrid.l_p),
            gamma2: 1.0 / (2.0 * h),
        })
    }

    fn axis_lo(&self, m: usize) -> usize {
        // Axis 1 (m = 0) is the most significant grid register.
        self.n_p + (self.dim - 1 - m) * self.n_x
    }
}

fn build_bold_v1(tau: f64, cfg: &VbsConfigD) -> Result<Circuit> {
    let width = cfg.n_p + cfg.dim * cfg.n_x;
    let mut c = Circuit::new(width);
    for m in 0..cfg.dim {
        let lo = cfg.axis_lo(m);
        for j in 1..=cfg.n_x {
            push_w_gate(&mut c, j, cfg.gamma1 * cfg.diffusion[m] * tau, 0.0, lo, None)?;
        }
        c.push(Gate::new(
            GateKind::GlobalPhase(-2.0 * cfg.gamma1 * cfg.diffusion[m] * tau),
            0,
        ))?;
    }
    // Discount phase: the −r·I part of the generator commutes with
    // everything, so one exact phase per applied power carries it.
    c.push(Gate::new(GateKind::GlobalPhase(-tau * cfg.r / cfg.l_p), 0))?;
    Ok(c)
}

fn build_bold_v2(tau: f64, cfg: &VbsConfigD) -> Result<Circuit> {
    let width = cfg.n_p + cfg.dim * cfg.n_x;
    let mut c = Circuit::new(width);
    for m in 0..cfg.dim {
        let lo = cfg.axis_lo(m);
        for j in 1..=cfg.n_x {
            push_w_gate(
                &mut c,
                j,
                cfg.gamma2 * cfg.convection[m] * tau,
                -std::f64::consts::FRAC_PI_2,
                lo,
                None,
            )?;
        }
    }
    Ok(c)
}

/// Multi-asset per-step unitary on `(axis_1 | … | axis_d | auxiliary)`;
/// no dilation qubit (the source is zero by construction).
pub fn build_vbs_ddim(tau: f64, cfg: &VbsConfigD) -> Result<Circuit> {
    let width = cfg.n_p + cfg.dim * cfg.n_x;
    let mut c = Circuit::new(width).with_register("p", 0, cfg.n_p - 1);
    for m in (0..cfg.dim).rev() {
        let lo = cfg.axis_lo(m);
        c = c.with_register(&format!("x{}", m + 1), lo, lo + cfg.n_x - 1);
    }
    let v1 = build_bold_v1(tau, cfg)?;
    let v2 = build_bold_v2(tau, cfg)?;
    for m in 0..cfg.n_p {
        let controlled = v1.controlled_by(m);
        for _ in 0..(1usize << m) {
            c.append(&controlled)?;
        }
    }
    let v1_inv = v1.dagger();
    for _ in 0..(1usize << (cfg.n_p - 1)) {
        c.append(&v1_inv)?;
    }
    c.append(&v2)?;
    Ok(c)
}

/// Centered transform circuit matching `schro::centered_dft`: a parity
/// phase on each side of the standard ladder-and-swap transform, plus a
/// global sign when the half-shift is odd.
pub fn build_qft(n_p: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n_p).with_register("p", 0, n_p - 1);
    let pi = std::f64::consts::PI;
    c.push(Gate::new(GateKind::Phase(pi), 0))?;
    for q in (0..n_p).rev() {
        c.push(Gate::new(GateKind::H, q))?;
        for l in 0..q {
            let angle = pi / (1usize << (q - l)) as f64;
            c.push(Gate::new(GateKind::Phase(angle), q).controlled_by(l, true))?;
        }
    }
    for i in 0..n_p / 2 {
        let (a, b) = (i, n_p - 1 - i);
        c.push(Gate::new(GateKind::X, b).controlled_by(a, true))?;
        c.push(Gate::new(GateKind::X, a).controlled_by(b, true))?;
        c.push(Gate::new(GateKind::X, b).controlled_by(a, true))?;
    }
    c.push(Gate::new(GateKind::Phase(pi), 0))?;
    if n_p == 1 {
        c.push(Gate::new(GateKind::GlobalPhase(pi), 0))?;
    }
    Ok(c)
}

/// Inverse centered transform.
pub fn build_iqft(n_p: usize) -> Result<Circuit> {
    Ok(build_qft(n_p)?.dagger())
}
