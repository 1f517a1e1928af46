//! Periodic time-varying trellises in controller canonical form.
//!
//! A trellis has `Q^nu` states and one section per phase. The section used
//! at time `t` is `t mod sections`. Within a section an edge is addressed by
//! `state * Q^k + input`; states and inputs are packed as base-Q integers,
//! least significant digit first. State digits are ordered by encoder row,
//! then by delay slot (slot 1 holds the most recent input of that row).

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::code::{check_symbols, CodeError, SkewConvCode};
use crate::field::{Elem, FiniteField};
use crate::sequence::Sequence;

/// Upper bound on `sections * Q^nu * Q^k` edges kept in memory.
pub const MAX_TRELLIS_EDGES: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrellisError {
    #[error("trellis would have {0} edges, above the supported maximum")]
    TooLarge(u64),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Clone, Debug)]
pub struct Section {
    next: Vec<u32>,
    labels: Vec<Elem>,
    weights: Vec<u32>,
}

/// One edge of a trellis section.
#[derive(Clone, Copy, Debug)]
pub struct Edge<'a> {
    pub from: usize,
    pub input: usize,
    pub to: usize,
    pub label: &'a [Elem],
    pub weight: u32,
}

#[derive(Clone, Debug)]
pub struct Trellis {
    field: Arc<FiniteField>,
    k: usize,
    n: usize,
    memory: usize,
    row_degrees: Vec<usize>,
    num_states: usize,
    num_inputs: usize,
    sections: Vec<Section>,
}

fn unpack(mut x: usize, q: usize, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = x % q;
            x /= q;
            Elem(d as u32)
        })
        .collect()
}

fn pack(digits: &[Elem], q: usize) -> usize {
    digits.iter().rev().fold(0, |acc, d| acc * q + d.0 as usize)
}

impl Trellis {
    /// Generic construction. `step(phase, state_digits, input_digits)` returns
    /// the edge label and the successor's state digits.
    pub(crate) fn build<F>(
        field: Arc<FiniteField>,
        k: usize,
        n: usize,
        memory: usize,
        row_degrees: Vec<usize>,
        phases: usize,
        step: F,
    ) -> Result<Trellis, TrellisError>
    where
        F: Fn(usize, &[Elem], &[Elem]) -> (Vec<Elem>, Vec<Elem>),
    {
        let q = field.size() as u64;
        let nu: usize = row_degrees.iter().sum();
        let edges = q
            .checked_pow((nu + k) as u32)
            .and_then(|e| e.checked_mul(phases as u64))
            .filter(|&e| e <= MAX_TRELLIS_EDGES);
        let Some(_) = edges else {
            return Err(TrellisError::TooLarge(
                q.saturating_pow((nu + k) as u32)
                    .saturating_mul(phases as u64),
            ));
        };
        let q = q as usize;
        let num_states = q.pow(nu as u32);
        let num_inputs = q.pow(k as u32);
        let sections = (0..phases)
            .map(|phase| {
                let mut sec = Section {
                    next: Vec::with_capacity(num_states * num_inputs),
                    labels: Vec::with_capacity(num_states * num_inputs * n),
                    weights: Vec::with_capacity(num_states * num_inputs),
                };
                for s in 0..num_states {
                    let sd = unpack(s, q, nu);
                    for x in 0..num_inputs {
                        let xd = unpack(x, q, k);
                        let (label, next) = step(phase, &sd, &xd);
                        debug_assert_eq!(label.len(), n);
                        sec.weights
                            .push(label.iter().filter(|e| !e.is_zero()).count() as u32);
                        sec.labels.extend_from_slice(&label);
                        sec.next.push(pack(&next, q) as u32);
                    }
                }
                sec
            })
            .collect();
        Ok(Trellis {
            field,
            k,
            n,
            memory,
            row_degrees,
            num_states,
            num_inputs,
            sections,
        })
    }

    /// Controller-canonical trellis of a skew convolutional code. Labels at
    /// time `t` use the coefficients `theta^(t-i)(G_i)`, so there is one
    /// section per phase of the period.
    pub fn from_code(code: &SkewConvCode) -> Result<Trellis, TrellisError> {
        let field = code.field().clone();
        let rows = code.row_degrees().to_vec();
        let offsets: Vec<usize> = rows
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let f = field.clone();
        let n = code.n();
        Trellis::build(
            field,
            code.k(),
            n,
            code.memory(),
            rows.clone(),
            code.period(),
            move |phase, sd, xd| {
                let mut label = vec![Elem::ZERO; n];
                let mut next = vec![Elem::ZERO; sd.len()];
                let mut acc = |x: Elem, row: usize, delay: usize| {
                    if x.is_zero() {
                        return;
                    }
                    let g = code.time_coefficient(phase, delay);
                    for (c, l) in label.iter_mut().enumerate() {
                        *l = f.add(*l, f.mul(x, g.get(row, c)));
                    }
                };
                for (i, (&deg, &off)) in rows.iter().zip(&offsets).enumerate() {
                    acc(xd[i], i, 0);
                    for j in 1..=deg {
                        acc(sd[off + j - 1], i, j);
                    }
                    if deg > 0 {
                        next[off] = xd[i];
                        next[off + 1..off + deg].copy_from_slice(&sd[off..off + deg - 1]);
                    }
                }
                (label, next)
            },
        )
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Encoder memory; the number of zero blocks that terminate a codeword.
    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn row_degrees(&self) -> &[usize] {
        &self.row_degrees
    }

    pub fn state_digits(&self) -> usize {
        self.row_degrees.iter().sum()
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    /// Number of distinct sections (the trellis period).
    pub fn period(&self) -> usize {
        self.sections.len()
    }

    pub fn edges_per_section(&self) -> usize {
        self.num_states * self.num_inputs
    }

    #[inline]
    pub fn edge(&self, t: usize, state: usize, input: usize) -> Edge<'_> {
        let sec = &self.sections[t % self.sections.len()];
        let idx = state * self.num_inputs + input;
        Edge {
            from: state,
            input,
            to: sec.next[idx] as usize,
            label: &sec.labels[idx * self.n..(idx + 1) * self.n],
            weight: sec.weights[idx],
        }
    }

    #[inline]
    pub(crate) fn next_state(&self, t: usize, state: usize, input: usize) -> usize {
        self.sections[t % self.sections.len()].next[state * self.num_inputs + input] as usize
    }

    #[inline]
    pub(crate) fn weight(&self, t: usize, state: usize, input: usize) -> u32 {
        self.sections[t % self.sections.len()].weights[state * self.num_inputs + input]
    }

    #[inline]
    pub(crate) fn label(&self, t: usize, state: usize, input: usize) -> &[Elem] {
        let idx = state * self.num_inputs + input;
        &self.sections[t % self.sections.len()].labels[idx * self.n..(idx + 1) * self.n]
    }

    /// `true` for the zero-weight zero-state to zero-state edges that loops may not use.
    #[inline]
    pub(crate) fn is_idle(&self, t: usize, state: usize, input: usize) -> bool {
        state == 0 && self.weight(t, 0, input) == 0 && self.next_state(t, 0, input) == 0
    }

    /// Register contents of `state` as field elements.
    pub fn state_elements(&self, state: usize) -> Vec<Elem> {
        unpack(state, self.field.size() as usize, self.state_digits())
    }

    pub fn input_index(&self, block: &[Elem]) -> usize {
        pack(block, self.field.size() as usize)
    }

    pub fn input_block(&self, input: usize) -> Vec<Elem> {
        unpack(input, self.field.size() as usize, self.k)
    }

    /// Follows the path from state 0 at time 0 driven by `u`; returns the
    /// emitted labels and the final state.
    pub fn walk(&self, u: &Sequence) -> Result<(Sequence, usize), CodeError> {
        check_symbols(&self.field, u, self.k)?;
        let mut out = Sequence::empty(self.n);
        let mut state = 0;
        for (t, block) in u.blocks().enumerate() {
            let e = self.edge(t, state, self.input_index(block));
            out.push_block(e.label);
            state = e.to;
        }
        Ok((out, state))
    }

    /// Graphviz rendering of `sections` consecutive sections starting at time 0.
    /// Every state is drawn at every time step; with `pretty`, field elements
    /// are written as powers of the primitive element.
    pub fn to_dot(&self, sections: usize, pretty: bool) -> String {
        let fmt_elem = |e: &Elem| {
            if pretty {
                self.field.pretty(*e)
            } else {
                e.0.to_string()
            }
        };
        let state_name = |s: usize| {
            let d = self.state_elements(s);
            if d.is_empty() {
                "-".to_string()
            } else {
                d.iter().map(fmt_elem).collect::<Vec<_>>().join(",")
            }
        };
        let mut out = String::new();
        out.push_str("digraph trellis {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n");
        for t in 0..=sections {
            let _ = write!(out, "  subgraph time_{t} {{\n    rank=same;\n");
            for s in 0..self.num_states {
                let _ = writeln!(out, "    \"t{t}_s{s}\" [label=\"{}\"];", state_name(s));
            }
            out.push_str("  }\n");
        }
        for t in 0..sections {
            for s in 0..self.num_states {
                for x in 0..self.num_inputs {
                    let e = self.edge(t, s, x);
                    let label = e.label.iter().map(fmt_elem).collect::<Vec<_>>().join(" ");
                    let _ = writeln!(
                        out,
                        "  \"t{t}_s{s}\" -> \"t{}_s{}\" [label=\"{label}\"];",
                        t + 1,
                        e.to
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
