// Copyright contributors to the emuq project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! File formats: the circuit text format, state and distribution CSVs,
//! and the machine-parameters config.

use std::fmt::Write as _;

use emuq_core::costmodel::MachineParams;
use emuq_core::emulator::DistributionTable;
use emuq_core::gates::{Gate, GateKind};
use emuq_core::{Circuit, StateVector};

/// Amplitudes at or below this magnitude are omitted from state CSVs.
pub const STATE_DUMP_CUTOFF: f64 = 1e-14;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Parses the one-gate-per-line circuit text format. Lowercase mnemonics,
/// whitespace separated, `#` starts a comment, qubit indices decimal,
/// angles radians. The circuit width is one past the highest qubit index.
///
/// ```text
/// h 0
/// cr 1.5707963267948966 0 2
/// toffoli 0 1 2
/// ```
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut gates: Vec<Gate> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let mnemonic = parts.next().expect("non-empty line has a first token");
        let args: Vec<&str> = parts.collect();

        let qubit = |s: &str| -> Result<usize, ParseError> {
            s.parse::<usize>().map_err(|_| err(line_no, format!("bad qubit index '{s}'")))
        };
        let angle = |s: &str| -> Result<f64, ParseError> {
            s.parse::<f64>().map_err(|_| err(line_no, format!("bad angle '{s}'")))
        };
        let arity = |want: usize| -> Result<(), ParseError> {
            if args.len() == want {
                Ok(())
            } else {
                Err(err(
                    line_no,
                    format!("'{mnemonic}' takes {want} arguments, got {}", args.len()),
                ))
            }
        };
        let distinct = |qs: &[usize]| -> Result<(), ParseError> {
            for (i, q) in qs.iter().enumerate() {
                if qs[..i].contains(q) {
                    return Err(err(line_no, format!("qubit {q} repeated")));
                }
            }
            Ok(())
        };

        let gate = match mnemonic {
            "h" | "x" | "y" | "z" | "s" | "t" => {
                arity(1)?;
                let q = qubit(args[0])?;
                match mnemonic {
                    "h" => Gate::h(q),
                    "x" => Gate::x(q),
                    "y" => Gate::y(q),
                    "z" => Gate::z(q),
                    "s" => Gate::s(q),
                    _ => Gate::t(q),
                }
            }
            "rz" | "rx" => {
                arity(2)?;
                let theta = angle(args[0])?;
                let q = qubit(args[1])?;
                if mnemonic == "rz" {
                    Gate::rz(theta, q)
                } else {
                    Gate::rx(theta, q)
                }
            }
            "cnot" => {
                arity(2)?;
                let (c, t) = (qubit(args[0])?, qubit(args[1])?);
                distinct(&[c, t])?;
                Gate::cnot(c, t)
            }
            "cr" => {
                arity(3)?;
                let theta = angle(args[0])?;
                let (c, t) = (qubit(args[1])?, qubit(args[2])?);
                distinct(&[c, t])?;
                Gate::cr(theta, c, t)
            }
            "toffoli" => {
                arity(3)?;
                let (c1, c2, t) = (qubit(args[0])?, qubit(args[1])?, qubit(args[2])?);
                distinct(&[c1, c2, t])?;
                Gate::toffoli(c1, c2, t)
            }
            "swap" => {
                arity(2)?;
                let (a, b) = (qubit(args[0])?, qubit(args[1])?);
                distinct(&[a, b])?;
                Gate::swap(a, b)
            }
            other => return Err(err(line_no, format!("unknown gate '{other}'"))),
        };
        gates.push(gate);
    }
    if gates.is_empty() {
        return Err(err(0, "circuit file contains no gates"));
    }
    let n = gates.iter().map(Gate::max_qubit).max().unwrap_or(0) + 1;
    let mut circuit = Circuit::new(n, "file");
    for g in gates {
        circuit.push(g);
    }
    Ok(circuit)
}

/// Renders a circuit in the text format. Fails for gates the format
/// cannot express (custom matrices, extra controls beyond the named
/// two-control forms).
pub fn write_circuit(circuit: &Circuit) -> anyhow::Result<String> {
    let mut out = String::new();
    for gate in circuit.gates() {
        let unrepresentable =
            || anyhow::anyhow!("gate {:?} is not representable in the text format", gate.kind);
        let line = match (&gate.kind, gate.controls.as_slice()) {
            (GateKind::H, []) => format!("h {}", gate.target),
            (GateKind::X, []) => format!("x {}", gate.target),
            (GateKind::Y, []) => format!("y {}", gate.target),
            (GateKind::Z, []) => format!("z {}", gate.target),
            (GateKind::S, []) => format!("s {}", gate.target),
            (GateKind::T, []) => format!("t {}", gate.target),
            (GateKind::Rz(theta), []) => format!("rz {theta} {}", gate.target),
            (GateKind::Rx(theta), []) => format!("rx {theta} {}", gate.target),
            (GateKind::X, [c]) => format!("cnot {c} {}", gate.target),
            (GateKind::X, [c1, c2]) => format!("toffoli {c1} {c2} {}", gate.target),
            (GateKind::Phase(theta), [c]) => format!("cr {theta} {c} {}", gate.target),
            (GateKind::Swap(b), []) => format!("swap {} {b}", gate.target),
            _ => return Err(unrepresentable()),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// State dump: `index,re,im`, one row per amplitude above
/// [`STATE_DUMP_CUTOFF`], indices decimal ascending.
pub fn state_csv(state: &StateVector) -> String {
    let mut out = String::from("index,re,im\n");
    for (i, a) in state.amps().iter().enumerate() {
        if a.norm() > STATE_DUMP_CUTOFF {
            let _ = writeln!(out, "{i},{:.17e},{:.17e}", a.re, a.im);
        }
    }
    out
}

/// Distribution dump: `outcome,probability` with 15 significant digits.
pub fn distribution_csv(dist: &DistributionTable) -> String {
    let mut out = String::from("outcome,probability\n");
    for (o, p) in dist.probs().iter().enumerate() {
        let _ = writeln!(out, "{o},{p:.14e}");
    }
    out
}

/// Parses the `key = value` machine-parameters file. Recognized keys:
/// `flops_peak`, `eff_fft`, `b_mem`, `b_net`, `p`. Missing keys keep
/// their defaults; `#` starts a comment.
pub fn parse_machine_params(text: &str) -> anyhow::Result<MachineParams> {
    let mut params = MachineParams::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("line {}: expected 'key = value'", idx + 1))?;
        let key = key.trim();
        let value = value.trim();
        let parse_f64 = || -> anyhow::Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| anyhow::anyhow!("line {}: bad number '{value}'", idx + 1))
        };
        match key {
            "flops_peak" => params.flops_peak = parse_f64()?,
            "eff_fft" => params.eff_fft = parse_f64()?,
            "b_mem" => params.b_mem = parse_f64()?,
            "b_net" => params.b_net = parse_f64()?,
            "p" => {
                params.p = value
                    .parse::<usize>()
                    .map_err(|_| anyhow::anyhow!("line {}: bad node count '{value}'", idx + 1))?
            }
            other => anyhow::bail!("line {}: unknown key '{other}'", idx + 1),
        }
    }
    params
        .validate()
        .map_err(|e| anyhow::anyhow!("invalid machine parameters: {e}"))?;
    Ok(params)
}
