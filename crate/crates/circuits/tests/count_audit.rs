//! The CNOT-basis audit against the closed-form tallies, plus the raw-mode
//! inventory and the dump-format round trip.

use proptest::prelude::*;
use schrobs_circuits::{
    build_tilde_v1, build_tilde_v2, build_vbs, count_gates, q_cv1_cnots, q_single, q_v1_cnots,
    q_vbs_cnots, Circuit, CountMode, Gate, GateKind, VbsConfig,
};
use schrobs_fdgrid::{BsParams1D, SpatialGrid};
use schrobs_schro::PGrid;

fn cfg(n_x: usize, n_p: usize) -> VbsConfig {
    let grid = SpatialGrid::new(1e-4f64.ln(), 300f64.ln(), n_x).unwrap();
    let params = BsParams1D::new(0.02, 0.3, 30.0, 1.0).unwrap();
    let pgrid = PGrid::new(4.0, n_p).unwrap();
    VbsConfig::new(&params, &grid, &pgrid, Some(-24.0))
}

#[test]
fn diffusion_block_audit_matches_closed_form() {
    for n_x in 3..=8usize {
        let c = cfg(n_x, 2);
        let circ = build_tilde_v1(1e-3, &c).unwrap();
        let rep = count_gates(&circ, CountMode::CnotBasis);
        assert_eq!(rep.cnot, q_v1_cnots(n_x as u64), "n_x={n_x}");
        assert_eq!(rep.single_qubit, 4 * n_x as u64 + 2, "n_x={n_x}");
    }
}

#[test]
fn convection_block_audit_matches_closed_form() {
    // Same tally as the diffusion block: the two phase gates swap for the
    // rotated-basis pair inside each rung.
    for n_x in 3..=8usize {
        let c = cfg(n_x, 2);
        let circ = build_tilde_v2(1e-3, &c).unwrap();
        let rep = count_gates(&circ, CountMode::CnotBasis);
        assert_eq!(rep.cnot, q_v1_cnots(n_x as u64), "n_x={n_x}");
        assert_eq!(rep.single_qubit, 4 * n_x as u64 + 2, "n_x={n_x}");
    }
}

#[test]
fn controlled_block_audit_uses_reference_tally() {
    for n_x in 3..=8usize {
        let c = cfg(n_x, 2);
        let circ = build_tilde_v1(1e-3, &c).unwrap();
        let controlled = circ.controlled_by(n_x + 1);
        let rep = count_gates(&controlled, CountMode::CnotBasis);
        assert_eq!(rep.cnot, q_cv1_cnots(n_x as u64), "n_x={n_x}");
        assert_eq!(rep.single_qubit, 0, "n_x={n_x}");
    }
}

#[test]
fn per_step_audit_matches_totals() {
    for n_x in [3usize, 5] {
        for n_p in 1..=3usize {
            let c = cfg(n_x, n_p);
            let circ = build_vbs(1e-3, &c).unwrap();
            let rep = count_gates(&circ, CountMode::CnotBasis);
            assert_eq!(
                rep.cnot,
                q_vbs_cnots(n_x as u64, n_p as u64),
                "cnot n_x={n_x} n_p={n_p}"
            );
            assert_eq!(
                rep.single_qubit,
                q_single(n_x as u64, n_p as u64),
                "singles n_x={n_x} n_p={n_p}"
            );
        }
    }
}

#[test]
fn raw_mode_counts_ir_inventory() {
    let c = cfg(3, 2);
    let circ = build_tilde_v1(1e-3, &c).unwrap();
    let rep = count_gates(&circ, CountMode::Raw);
    // 2 polarity X + 2·n_x phase pair entries are the only bare gates.
    assert_eq!(rep.single_qubit, 2 + 2 * 3);
    assert_eq!(rep.by_kind.get("RX/c3").copied(), Some(1));
    assert_eq!(rep.by_kind.get("RZ/c1").copied(), Some(1));
    assert_eq!(rep.by_kind.get("RZ/c2").copied(), Some(1));
    assert_eq!(rep.by_kind.get("RZ/c3").copied(), Some(1));
}

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let kind = prop_oneof![
        Just(GateKind::X),
        Just(GateKind::H),
        (-3.0f64..3.0).prop_map(GateKind::Phase),
        (-3.0f64..3.0).prop_map(GateKind::RX),
        (-3.0f64..3.0).prop_map(GateKind::RY),
        (-3.0f64..3.0).prop_map(GateKind::RZ),
        (-3.0f64..3.0).prop_map(GateKind::GlobalPhase),
    ];
    (kind, 0..width, proptest::collection::vec((0..width, any::<bool>()), 0..3)).prop_map(
        move |(kind, target, raw_ctrls)| {
            let mut g = Gate::new(kind, target);
            for (q, p) in raw_ctrls {
                if q != target && !g.controls.iter().any(|&(cq, _)| cq == q) {
                    g = g.controlled_by(q, p);
                }
            }
            g
        },
    )
}

proptest! {
    #[test]
    fn dump_parse_round_trip(gates in proptest::collection::vec(arb_gate(5), 0..40)) {
        let mut c = Circuit::new(5).with_register("p", 0, 1).with_register("x", 2, 4);
        for g in gates {
            c.push(g).unwrap();
        }
        let text = c.dump();
        let back = Circuit::parse(&text).unwrap();
        prop_assert_eq!(&c, &back);
        prop_assert_eq!(text, back.dump());
    }
}
