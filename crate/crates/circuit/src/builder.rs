//! Netlist builder with structural hashing and constant folding, plus the
//! component generators shared by all circuits.
//!
//! Signals are gate ids. Multi-bit values are `Vec<GateId>` LSB first
//! unless a function says otherwise.

use std::collections::HashMap;

use crate::netlist::{Block, BlockKind, Bus, Gate, GateId, GateKind, Netlist};

pub type Sig = GateId;

pub struct Builder {
    gates: Vec<Gate>,
    hash: HashMap<Gate, Sig>,
    inputs: Vec<Bus>,
    outputs: Vec<Bus>,
    blocks: Vec<Block>,
}

impl Default for Builder {
    fn default() -> Self {
        Self::new()
    }
}

impl Builder {
    pub fn new() -> Self {
        let mut b = Self {
            gates: Vec::new(),
            hash: HashMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            blocks: Vec::new(),
        };
        b.intern(GateKind::Const(false), [0; 3]);
        b.intern(GateKind::Const(true), [0; 3]);
        b
    }

    pub fn zero(&self) -> Sig {
        0
    }

    pub fn one(&self) -> Sig {
        1
    }

    pub fn constant(&self, bit: bool) -> Sig {
        bit as Sig
    }

    fn konst(&self, s: Sig) -> Option<bool> {
        match self.gates[s as usize].kind {
            GateKind::Const(k) => Some(k),
            _ => None,
        }
    }

    fn is_not_of(&self, a: Sig, b: Sig) -> bool {
        let g = self.gates[a as usize];
        g.kind == GateKind::Not && g.inputs[0] == b
    }

    fn intern(&mut self, kind: GateKind, inputs: [Sig; 3]) -> Sig {
        let gate = Gate { kind, inputs };
        if let Some(&id) = self.hash.get(&gate) {
            return id;
        }
        let id = self.gates.len() as Sig;
        self.gates.push(gate);
        self.hash.insert(gate, id);
        id
    }

    pub fn input(&mut self, name: &str, width: usize) -> Vec<Sig> {
        let bits: Vec<Sig> = (0..width)
            .map(|_| {
                let id = self.gates.len() as Sig;
                self.gates.push(Gate { kind: GateKind::Input, inputs: [0; 3] });
                id
            })
            .collect();
        self.inputs.push(Bus { name: name.to_string(), bits: bits.clone() });
        bits
    }

    pub fn input_bit(&mut self, name: &str) -> Sig {
        self.input(name, 1)[0]
    }

    pub fn output(&mut self, name: &str, bits: &[Sig]) {
        self.outputs.push(Bus { name: name.to_string(), bits: bits.to_vec() });
    }

    pub fn block(&mut self, name: &str, kind: BlockKind, fan_in: usize, outputs: &[Sig]) {
        self.blocks.push(Block {
            name: name.to_string(),
            kind,
            fan_in,
            width: outputs.len(),
            outputs: outputs.to_vec(),
        });
    }

    pub fn finish(self) -> Netlist {
        Netlist { gates: self.gates, inputs: self.inputs, outputs: self.outputs, blocks: self.blocks }
    }

    pub fn not(&mut self, a: Sig) -> Sig {
        if let Some(k) = self.konst(a) {
            return self.constant(!k);
        }
        let g = self.gates[a as usize];
        if g.kind == GateKind::Not {
            return g.inputs[0];
        }
        self.intern(GateKind::Not, [a, 0, 0])
    }

    pub fn and(&mut self, a: Sig, b: Sig) -> Sig {
        match (self.konst(a), self.konst(b)) {
            (Some(false), _) | (_, Some(false)) => return self.zero(),
            (Some(true), _) => return b,
            (_, Some(true)) => return a,
            _ => {}
        }
        if a == b {
            return a;
        }
        if self.is_not_of(a, b) || self.is_not_of(b, a) {
            return self.zero();
        }
        self.intern(GateKind::And, [a.min(b), a.max(b), 0])
    }

    pub fn or(&mut self, a: Sig, b: Sig) -> Sig {
        match (self.konst(a), self.konst(b)) {
            (Some(true), _) | (_, Some(true)) => return self.one(),
            (Some(false), _) => return b,
            (_, Some(false)) => return a,
            _ => {}
        }
        if a == b {
            return a;
        }
        if self.is_not_of(a, b) || self.is_not_of(b, a) {
            return self.one();
        }
        self.intern(GateKind::Or, [a.min(b), a.max(b), 0])
    }

    pub fn xor(&mut self, a: Sig, b: Sig) -> Sig {
        match (self.konst(a), self.konst(b)) {
            (Some(x), Some(y)) => return self.constant(x ^ y),
            (Some(false), _) => return b,
            (_, Some(false)) => return a,
            (Some(true), _) => return self.not(b),
            (_, Some(true)) => return self.not(a),
            _ => {}
        }
        if a == b {
            return self.zero();
        }
        if self.is_not_of(a, b) || self.is_not_of(b, a) {
            return self.one();
        }
        self.intern(GateKind::Xor, [a.min(b), a.max(b), 0])
    }

    pub fn xnor(&mut self, a: Sig, b: Sig) -> Sig {
        let x = self.xor(a, b);
        self.not(x)
    }

    /// `sel ? b : a`.
    pub fn mux(&mut self, sel: Sig, a: Sig, b: Sig) -> Sig {
        if let Some(k) = self.konst(sel) {
            return if k { b } else { a };
        }
        if a == b {
            return a;
        }
        match (self.konst(a), self.konst(b)) {
            (Some(false), Some(true)) => return sel,
            (Some(true), Some(false)) => return self.not(sel),
            (Some(false), _) => return self.and(sel, b),
            (_, Some(false)) => {
                let ns = self.not(sel);
                return self.and(ns, a);
            }
            (Some(true), _) => {
                let ns = self.not(sel);
                return self.or(ns, b);
            }
            (_, Some(true)) => return self.or(sel, a),
            _ => {}
        }
        self.intern(GateKind::Mux2, [sel, a, b])
    }

    fn reduce(&mut self, bits: &[Sig], empty: Sig, op: fn(&mut Self, Sig, Sig) -> Sig) -> Sig {
        if bits.is_empty() {
            return empty;
        }
        let mut level = bits.to_vec();
        while level.len() > 1 {
            level = level.chunks(2).map(|p| if p.len() == 2 { op(self, p[0], p[1]) } else { p[0] }).collect();
        }
        level[0]
    }

    /// Balanced AND tree; 1 for no inputs.
    pub fn and_all(&mut self, bits: &[Sig]) -> Sig {
        self.reduce(bits, 1, Self::and)
    }

    /// Balanced OR tree; 0 for no inputs.
    pub fn or_all(&mut self, bits: &[Sig]) -> Sig {
        self.reduce(bits, 0, Self::or)
    }

    pub fn nor_all(&mut self, bits: &[Sig]) -> Sig {
        let o = self.or_all(bits);
        self.not(o)
    }

    pub fn not_bus(&mut self, a: &[Sig]) -> Vec<Sig> {
        a.iter().map(|&x| self.not(x)).collect()
    }

    pub fn xor_each(&mut self, a: &[Sig], k: Sig) -> Vec<Sig> {
        a.iter().map(|&x| self.xor(x, k)).collect()
    }

    pub fn and_each(&mut self, a: &[Sig], k: Sig) -> Vec<Sig> {
        a.iter().map(|&x| self.and(x, k)).collect()
    }

    pub fn mux_bus(&mut self, sel: Sig, a: &[Sig], b: &[Sig]) -> Vec<Sig> {
        a.iter().zip(b).map(|(&x, &y)| self.mux(sel, x, y)).collect()
    }

    /// Multiplexer with one-hot selects, lowered to a balanced MUX2 tree
    /// whose internal selects are ORs of the one-hot lines on the `b` side.
    pub fn one_hot_mux(&mut self, selects: &[Sig], data: &[Vec<Sig>]) -> Vec<Sig> {
        assert_eq!(selects.len(), data.len());
        assert!(!data.is_empty());
        if data.len() == 1 {
            return data[0].clone();
        }
        let mid = data.len().div_ceil(2);
        let lo = self.one_hot_mux(&selects[..mid], &data[..mid]);
        let hi = self.one_hot_mux(&selects[mid..], &data[mid..]);
        let sel = self.or_all(&selects[mid..]);
        self.mux_bus(sel, &lo, &hi)
    }

    /// One-hot lines `0..lines` for a binary select value.
    pub fn decoder(&mut self, sel: &[Sig], lines: usize) -> Vec<Sig> {
        let inv = self.not_bus(sel);
        (0..lines)
            .map(|i| {
                let lits: Vec<Sig> =
                    (0..sel.len()).map(|k| if (i >> k) & 1 == 1 { sel[k] } else { inv[k] }).collect();
                self.and_all(&lits)
            })
            .collect()
    }

    /// Binary index of the active one-hot line.
    pub fn priority_encode(&mut self, one_hot: &[Sig], width: usize) -> Vec<Sig> {
        (0..width)
            .map(|b| {
                let lines: Vec<Sig> =
                    one_hot.iter().enumerate().filter(|(i, _)| (i >> b) & 1 == 1).map(|(_, &s)| s).collect();
                self.or_all(&lines)
            })
            .collect()
    }

    /// Sklansky parallel-prefix adder. Returns the sum and the carry out.
    pub fn add(&mut self, a: &[Sig], b: &[Sig], cin: Sig) -> (Vec<Sig>, Sig) {
        assert_eq!(a.len(), b.len());
        let n = a.len();
        let p: Vec<Sig> = a.iter().zip(b).map(|(&x, &y)| self.xor(x, y)).collect();
        // Position 0 is the carry in; position i + 1 is bit i.
        let mut gg = vec![cin];
        let mut pp = vec![self.zero()];
        for i in 0..n {
            gg.push(self.and(a[i], b[i]));
            pp.push(p[i]);
        }
        let m = n + 1;
        let mut d = 1;
        while d < m {
            for i in 0..m {
                if (i / d) % 2 == 1 {
                    let j = (i / d) * d - 1;
                    let t = self.and(pp[i], gg[j]);
                    gg[i] = self.or(gg[i], t);
                    pp[i] = self.and(pp[i], pp[j]);
                }
            }
            d *= 2;
        }
        let sum = (0..n).map(|i| self.xor(p[i], gg[i])).collect();
        (sum, gg[n])
    }

    pub fn add_const(&mut self, a: &[Sig], k: u64, cin: Sig) -> (Vec<Sig>, Sig) {
        let b: Vec<Sig> = (0..a.len()).map(|i| self.constant(i < 64 && (k >> i) & 1 == 1)).collect();
        self.add(a, &b, cin)
    }

    /// Logarithmic barrel shifter toward the MSB; vacated bits take `fill`.
    pub fn shift_left(&mut self, data: &[Sig], amount: &[Sig], fill: Sig) -> Vec<Sig> {
        let mut x = data.to_vec();
        for (k, &s) in amount.iter().enumerate() {
            let step = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
            x = (0..x.len())
                .map(|i| {
                    let moved = if i >= step { x[i - step] } else { fill };
                    self.mux(s, x[i], moved)
                })
                .collect();
        }
        x
    }

    /// Logarithmic barrel shifter toward the LSB; vacated bits take `fill`.
    pub fn shift_right(&mut self, data: &[Sig], amount: &[Sig], fill: Sig) -> Vec<Sig> {
        let mut x = data.to_vec();
        for (k, &s) in amount.iter().enumerate() {
            let step = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
            x = (0..x.len())
                .map(|i| {
                    let moved = if step < x.len() - i { x[i + step] } else { fill };
                    self.mux(s, x[i], moved)
                })
                .collect();
        }
        x
    }

    /// Divide-and-conquer leading-zero count of `msb_first`. The result
    /// saturates at the input length and has `log2` of the padded length
    /// bits.
    pub fn leading_zeros(&mut self, msb_first: &[Sig]) -> Vec<Sig> {
        let padded_len = (msb_first.len() + 1).next_power_of_two();
        let mut bits = msb_first.to_vec();
        bits.resize(padded_len, self.one());
        self.lzc(&bits).1
    }

    fn lzc(&mut self, bits: &[Sig]) -> (Sig, Vec<Sig>) {
        if bits.len() == 1 {
            return (self.not(bits[0]), Vec::new());
        }
        let half = bits.len() / 2;
        let (zh, ch) = self.lzc(&bits[..half]);
        let (zl, cl) = self.lzc(&bits[half..]);
        let mut count = self.mux_bus(zh, &ch, &cl);
        count.push(zh);
        (self.and(zh, zl), count)
    }
}
