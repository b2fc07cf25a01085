//! Circuits: ordered gate lists over a named register map, plus the
//! line-oriented dump format and its parser.

use std::fmt::Write as _;

use crate::gate::{Gate, GateKind};
use crate::{CircuitError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    /// Inclusive qubit span.
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub width: usize,
    pub registers: Vec<Register>,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self { width, registers: Vec::new(), gates: Vec::new() }
    }

    pub fn with_register(mut self, name: &str, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi < self.width, "register out of range");
        self.registers.push(Register { name: name.to_string(), lo, hi });
        self
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        if g.max_qubit() >= self.width {
            return Err(CircuitError::QubitOutOfRange {
                qubit: g.max_qubit(),
                width: self.width,
            });
        }
        if !matches!(g.kind, GateKind::GlobalPhase(_))
            && g.controls.iter().any(|&(q, _)| q == g.target)
        {
            return Err(CircuitError::TargetIsControl { qubit: g.target });
        }
        if let Some(a) = g.kind.angle() {
            if !a.is_finite() {
                return Err(CircuitError::NonFiniteAngle);
            }
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(())
    }

    /// Exact inverse: reversed gate order with per-gate inverses.
    pub fn dagger(&self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// The same circuit with one extra positive control on every gate.
    pub fn controlled_by(&self, qubit: usize) -> Circuit {
        Circuit {
            width: self.width.max(qubit + 1),
            registers: self.registers.clone(),
            gates: self
                .gates
                .iter()
                .cloned()
                .map(|g| g.controlled_by(qubit, true))
                .collect(),
        }
    }

    /// Deterministic line format: `QUBITS`, `REG` lines, then one `GATE`
    /// line per gate with angles at 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "QUBITS {}", self.width).unwrap();
        for r in &self.registers {
            writeln!(out, "REG {} {}..{}", r.name, r.lo, r.hi).unwrap();
        }
        for g in &self.gates {
            write!(out, "GATE {} target={}", g.kind.name(), g.target).unwrap();
            if !g.controls.is_empty() {
                let ctrls: Vec<String> = g
                    .controls
                    .iter()
                    .map(|&(q, p)| format!("{}:{}", q, if p { 1 } else { 0 }))
                    .collect();
                write!(out, " controls={}", ctrls.join(",")).unwrap();
            }
            if let Some(a) = g.kind.angle() {
                write!(out, " angle={:.16e}", a).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut width: Option<usize> = None;
        let mut registers = Vec::new();
        let mut gates = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let head = tok.next().unwrap();
            let bad = |msg: &str| CircuitError::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            match head {
                "QUBITS" => {
                    let n = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("malformed QUBITS"))?;
                    width = Some(n);
                }
                "REG" => {
                    let name = tok.next().ok_or_else(|| bad("missing register name"))?;
                    let span = tok.next().ok_or_else(|| bad("missing register span"))?;
                    let (lo, hi) = span
                        .split_once("..")
                        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                        .ok_or_else(|| bad("malformed register span"))?;
                    registers.push(Register { name: name.to_string(), lo, hi });
                }
                "GATE" => {
                    let kind_name = tok.next().ok_or_else(|| bad("missing gate kind"))?;
                    let mut target = 0usize;
                    let mut controls = Vec::new();
                    let mut angle: Option<f64> = None;
                    for field in tok {
                        if let Some(v) = field.strip_prefix("target=") {
                            target = v.parse().map_err(|_| bad("malformed target"))?;
                        } else if let Some(v) = field.strip_prefix("controls=") {
                            for c in v.split(',') {
                                let (q, p) = c
                                    .split_once(':')
                                    .ok_or_else(|| bad("malformed control"))?;
                                let q = q.parse().map_err(|_| bad("malformed control qubit"))?;
                                let p: u8 = p.parse().map_err(|_| bad("malformed polarity"))?;
                                controls.push((q, p != 0));
                            }
                        } else if let Some(v) = field.strip_prefix("angle=") {
                            angle = Some(v.parse().map_err(|_| bad("malformed angle"))?);
                        } else {
                            return Err(bad("unknown field"));
                        }
                    }
                    let kind = match (kind_name, angle) {
                        ("X", None) => GateKind::X,
                        ("H", None) => GateKind::H,
                        ("PHASE", Some(a)) => GateKind::Phase(a),
                        ("RX", Some(a)) => GateKind::RX(a),
                        ("RY", Some(a)) => GateKind::RY(a),
                        ("RZ", Some(a)) => GateKind::RZ(a),
                        ("GPHASE", Some(a)) => GateKind::GlobalPhase(a),
                        _ => return Err(bad("unknown gate kind or missing angle")),
                    };
                    gates.push(Gate { kind, target, controls });
                }
                _ => return Err(bad("unknown directive")),
            }
        }
        let width = width.ok_or(CircuitError::Parse {
            line: 0,
            msg: "missing QUBITS header".to_string(),
        })?;
        let mut c = Circuit { width, registers, gates: Vec::new() };
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }
}
