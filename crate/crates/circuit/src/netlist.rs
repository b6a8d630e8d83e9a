//! Combinational netlists over a small gate basis.
//!
//! Gates are stored in topological order: every gate reads only gates with
//! smaller ids. Buses list their bits LSB first.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{CircuitError, Result};

pub type GateId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Input,
    Const(bool),
    And,
    Or,
    Not,
    Xor,
    /// Inputs `[sel, a, b]`: `a` when `sel` is 0, `b` when it is 1.
    Mux2,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Input | GateKind::Const(_) => 0,
            GateKind::Not => 1,
            GateKind::And | GateKind::Or | GateKind::Xor => 2,
            GateKind::Mux2 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Input => "INPUT",
            GateKind::Const(_) => "CONST",
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
            GateKind::Xor => "XOR",
            GateKind::Mux2 => "MUX2",
        }
    }

    /// Whether the gate is logic, as opposed to an input or a constant.
    pub fn is_logic(self) -> bool {
        !matches!(self, GateKind::Input | GateKind::Const(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub inputs: [GateId; 3],
}

impl Gate {
    pub fn fan_in(&self) -> &[GateId] {
        &self.inputs[..self.kind.arity()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bus {
    pub name: String,
    pub bits: Vec<GateId>,
}

impl Bus {
    pub fn width(&self) -> usize {
        self.bits.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Mux,
    Decoder,
    PriorityEncoder,
    LeadingBitCounter,
    Shifter,
    Adder,
    ZeroDetect,
    Logic,
}

/// A named functional unit inside a netlist, kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub kind: BlockKind,
    /// Data inputs for a mux, select lines for a decoder, bits scanned for
    /// a counter.
    pub fan_in: usize,
    pub width: usize,
    pub outputs: Vec<GateId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitMetrics {
    pub gate_count: usize,
    pub depth: u32,
    pub gates_by_kind: BTreeMap<String, usize>,
    pub output_depths: BTreeMap<String, u32>,
    /// `(name, data inputs)` for every multiplexer block.
    pub mux_inputs: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    pub(crate) gates: Vec<Gate>,
    pub(crate) inputs: Vec<Bus>,
    pub(crate) outputs: Vec<Bus>,
    pub(crate) blocks: Vec<Block>,
}

#[derive(Serialize, Deserialize)]
struct GateJson {
    id: GateId,
    kind: String,
    #[serde(rename = "in")]
    inputs: Vec<GateId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<u8>,
}

#[derive(Serialize, Deserialize)]
struct NetlistJson {
    gates: Vec<GateJson>,
    inputs: Vec<Bus>,
    outputs: Vec<Bus>,
    #[serde(default)]
    blocks: Vec<Block>,
}

impl Netlist {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn inputs(&self) -> &[Bus] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Bus] {
        &self.outputs
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn input_width(&self) -> usize {
        self.inputs.iter().map(Bus::width).sum()
    }

    pub fn output_width(&self) -> usize {
        self.outputs.iter().map(Bus::width).sum()
    }

    pub fn output(&self, name: &str) -> Option<&Bus> {
        self.outputs.iter().find(|b| b.name == name)
    }

    /// Evaluates 64 input vectors at once. `inputs` holds one lane word per
    /// input bit (buses in order, LSB first); the result holds one per
    /// output bit.
    pub fn simulate_lanes(&self, inputs: &[u64]) -> Result<Vec<u64>> {
        let expected = self.input_width();
        if inputs.len() != expected {
            return Err(CircuitError::WidthMismatch { expected, got: inputs.len() });
        }
        let mut v = vec![0u64; self.gates.len()];
        for (&id, &x) in self.inputs.iter().flat_map(|b| &b.bits).zip(inputs) {
            v[id as usize] = x;
        }
        for (i, g) in self.gates.iter().enumerate() {
            let [a, b, c] = g.inputs.map(|j| j as usize);
            v[i] = match g.kind {
                GateKind::Input => v[i],
                GateKind::Const(k) => 0u64.wrapping_sub(k as u64),
                GateKind::And => v[a] & v[b],
                GateKind::Or => v[a] | v[b],
                GateKind::Not => !v[a],
                GateKind::Xor => v[a] ^ v[b],
                GateKind::Mux2 => (v[a] & v[c]) | (!v[a] & v[b]),
            };
        }
        Ok(self.outputs.iter().flat_map(|b| &b.bits).map(|&id| v[id as usize]).collect())
    }

    pub fn simulate(&self, inputs: &[bool]) -> Result<Vec<bool>> {
        let lanes: Vec<u64> = inputs.iter().map(|&b| b as u64).collect();
        Ok(self.simulate_lanes(&lanes)?.into_iter().map(|x| x & 1 == 1).collect())
    }

    /// Evaluates whole bus values: each vector holds one value per input
    /// bus, each result one value per output bus.
    pub fn evaluate(&self, vectors: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let mut results = Vec::with_capacity(vectors.len());
        for chunk in vectors.chunks(64) {
            let mut lanes = Vec::with_capacity(self.input_width());
            for (k, bus) in self.inputs.iter().enumerate() {
                for bit in 0..bus.width() {
                    let mut word = 0u64;
                    for (lane, vector) in chunk.iter().enumerate() {
                        let value = *vector.get(k).ok_or(CircuitError::WidthMismatch {
                            expected: self.inputs.len(),
                            got: vector.len(),
                        })?;
                        word |= ((value >> bit) & 1) << lane;
                    }
                    lanes.push(word);
                }
            }
            let out = self.simulate_lanes(&lanes)?;
            for lane in 0..chunk.len() {
                let mut values = Vec::with_capacity(self.outputs.len());
                let mut pos = 0;
                for bus in &self.outputs {
                    let mut value = 0u64;
                    for bit in 0..bus.width() {
                        value |= ((out[pos + bit] >> lane) & 1) << bit;
                    }
                    pos += bus.width();
                    values.push(value);
                }
                results.push(values);
            }
        }
        Ok(results)
    }

    /// Unit-delay arrival level of every gate.
    pub fn levels(&self) -> Vec<u32> {
        let mut level = vec![0u32; self.gates.len()];
        for (i, g) in self.gates.iter().enumerate() {
            if g.kind.is_logic() {
                level[i] = 1 + g.fan_in().iter().map(|&j| level[j as usize]).max().unwrap_or(0);
            }
        }
        level
    }

    pub fn metrics(&self) -> CircuitMetrics {
        let level = self.levels();
        let mut gates_by_kind = BTreeMap::new();
        for g in self.gates.iter().filter(|g| g.kind.is_logic()) {
            *gates_by_kind.entry(g.kind.name().to_string()).or_insert(0) += 1;
        }
        let output_depths: BTreeMap<String, u32> = self
            .outputs
            .iter()
            .map(|b| (b.name.clone(), b.bits.iter().map(|&id| level[id as usize]).max().unwrap_or(0)))
            .collect();
        CircuitMetrics {
            gate_count: gates_by_kind.values().sum(),
            depth: output_depths.values().copied().max().unwrap_or(0),
            gates_by_kind,
            output_depths,
            mux_inputs: self
                .blocks
                .iter()
                .filter(|b| b.kind == BlockKind::Mux)
                .map(|b| (b.name.clone(), b.fan_in))
                .collect(),
        }
    }

    /// Every gate that `roots` depend on, including the roots.
    pub fn fan_in_cone(&self, roots: &[GateId]) -> Vec<bool> {
        let mut seen = vec![false; self.gates.len()];
        let mut stack: Vec<GateId> = roots.to_vec();
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id as usize], true) {
                continue;
            }
            stack.extend_from_slice(self.gates[id as usize].fan_in());
        }
        seen
    }

    pub fn to_json(&self) -> String {
        let gates = self
            .gates
            .iter()
            .enumerate()
            .map(|(id, g)| GateJson {
                id: id as GateId,
                kind: g.kind.name().to_string(),
                inputs: g.fan_in().to_vec(),
                value: match g.kind {
                    GateKind::Const(k) => Some(k as u8),
                    _ => None,
                },
            })
            .collect();
        let doc = NetlistJson {
            gates,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            blocks: self.blocks.clone(),
        };
        serde_json::to_string(&doc).expect("netlist serializes")
    }

    /// Parses and validates the JSON form written by [`Netlist::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: NetlistJson = serde_json::from_str(text)?;
        let bad = |msg: String| CircuitError::InvalidNetlist(msg);
        let mut gates = Vec::with_capacity(doc.gates.len());
        for (pos, g) in doc.gates.iter().enumerate() {
            if g.id as usize != pos {
                return Err(bad(format!("gate at position {pos} has id {}", g.id)));
            }
            let kind = match (g.kind.as_str(), g.value) {
                ("INPUT", _) => GateKind::Input,
                ("CONST", Some(v)) if v <= 1 => GateKind::Const(v == 1),
                ("AND", _) => GateKind::And,
                ("OR", _) => GateKind::Or,
                ("NOT", _) => GateKind::Not,
                ("XOR", _) => GateKind::Xor,
                ("MUX2", _) => GateKind::Mux2,
                (k, _) => return Err(bad(format!("gate {pos}: unknown kind {k}"))),
            };
            if g.inputs.len() != kind.arity() {
                return Err(bad(format!("gate {pos}: {} takes {} inputs", kind.name(), kind.arity())));
            }
            let mut inputs = [0; 3];
            for (slot, &src) in inputs.iter_mut().zip(&g.inputs) {
                if src as usize >= pos {
                    return Err(bad(format!("gate {pos} reads gate {src}, which is not earlier")));
                }
                *slot = src;
            }
            gates.push(Gate { kind, inputs });
        }
        let mut input_seen = vec![false; gates.len()];
        for bus in &doc.inputs {
            for &id in &bus.bits {
                match gates.get(id as usize) {
                    Some(g) if g.kind == GateKind::Input && !input_seen[id as usize] => {
                        input_seen[id as usize] = true;
                    }
                    _ => return Err(bad(format!("input bus {} names gate {id}", bus.name))),
                }
            }
        }
        if let Some(pos) =
            gates.iter().enumerate().position(|(i, g)| g.kind == GateKind::Input && !input_seen[i])
        {
            return Err(bad(format!("input gate {pos} is on no input bus")));
        }
        for id in doc.outputs.iter().flat_map(|b| &b.bits).chain(doc.blocks.iter().flat_map(|b| &b.outputs)) {
            if *id as usize >= gates.len() {
                return Err(bad(format!("reference to missing gate {id}")));
            }
        }
        Ok(Self { gates, inputs: doc.inputs, outputs: doc.outputs, blocks: doc.blocks })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph netlist {\n  rankdir=LR;\n");
        for bus in &self.inputs {
            for (i, id) in bus.bits.iter().enumerate() {
                let _ = writeln!(s, "  g{id} [shape=box,label=\"{}[{i}]\"];", bus.name);
            }
        }
        for (id, g) in self.gates.iter().enumerate() {
            match g.kind {
                GateKind::Input => {}
                GateKind::Const(k) => {
                    let _ = writeln!(s, "  g{id} [shape=plaintext,label=\"{}\"];", k as u8);
                }
                kind => {
                    let _ = writeln!(s, "  g{id} [label=\"{}\"];", kind.name());
                }
            }
            for &src in g.fan_in() {
                let _ = writeln!(s, "  g{src} -> g{id};");
            }
        }
        for bus in &self.outputs {
            for (i, id) in bus.bits.iter().enumerate() {
                let _ = writeln!(s, "  o_{}_{i} [shape=box,label=\"{}[{i}]\"];", bus.name, bus.name);
                let _ = writeln!(s, "  g{id} -> o_{}_{i};", bus.name);
            }
        }
        s.push_str("}\n");
        s
    }
}
