//! Causal block sequences `x_0, x_1, ...` of fixed-length blocks over a field.

use thiserror::Error;

use crate::field::{Elem, FiniteField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("block length must be positive")]
    ZeroBlockLength,
    #[error("{symbols} symbols do not split into blocks of {block_len}")]
    Ragged { symbols: usize, block_len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence {
    block_len: usize,
    symbols: Vec<Elem>,
}

impl Sequence {
    pub fn new(block_len: usize, symbols: Vec<Elem>) -> Result<Self, SequenceError> {
        if block_len == 0 {
            return Err(SequenceError::ZeroBlockLength);
        }
        if !symbols.len().is_multiple_of(block_len) {
            return Err(SequenceError::Ragged {
                symbols: symbols.len(),
                block_len,
            });
        }
        Ok(Sequence { block_len, symbols })
    }

    pub fn empty(block_len: usize) -> Self {
        assert!(block_len > 0);
        Sequence {
            block_len,
            symbols: Vec::new(),
        }
    }

    pub fn zeros(block_len: usize, blocks: usize) -> Self {
        assert!(block_len > 0);
        Sequence {
            block_len,
            symbols: vec![Elem::ZERO; block_len * blocks],
        }
    }

    /// Panics on ragged input; intended for literals in tests and examples.
    pub fn from_u32_blocks(blocks: &[&[u32]]) -> Self {
        let block_len = blocks.first().map_or(1, |b| b.len());
        assert!(blocks.iter().all(|b| b.len() == block_len), "ragged blocks");
        let symbols = blocks
            .iter()
            .flat_map(|b| b.iter().map(|&v| Elem(v)))
            .collect();
        Sequence::new(block_len, symbols).expect("well-formed blocks")
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.symbols.len() / self.block_len
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn block(&self, t: usize) -> &[Elem] {
        &self.symbols[t * self.block_len..(t + 1) * self.block_len]
    }

    pub fn block_mut(&mut self, t: usize) -> &mut [Elem] {
        &mut self.symbols[t * self.block_len..(t + 1) * self.block_len]
    }

    pub fn blocks(&self) -> std::slice::ChunksExact<'_, Elem> {
        self.symbols.chunks_exact(self.block_len)
    }

    pub fn symbols(&self) -> &[Elem] {
        &self.symbols
    }

    pub fn push_block(&mut self, block: &[Elem]) {
        assert_eq!(block.len(), self.block_len);
        self.symbols.extend_from_slice(block);
    }

    pub fn truncated(&self, blocks: usize) -> Sequence {
        let end = (blocks * self.block_len).min(self.symbols.len());
        Sequence {
            block_len: self.block_len,
            symbols: self.symbols[..end].to_vec(),
        }
    }

    /// Number of nonzero symbols.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn hamming_distance(&self, other: &Sequence) -> usize {
        assert_eq!(self.symbols.len(), other.symbols.len());
        self.symbols
            .iter()
            .zip(&other.symbols)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn add(&self, field: &FiniteField, other: &Sequence) -> Sequence {
        assert_eq!(
            (self.block_len, self.symbols.len()),
            (other.block_len, other.symbols.len())
        );
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| field.add(a, b))
            .collect();
        Sequence {
            block_len: self.block_len,
            symbols,
        }
    }

    pub fn scale(&self, field: &FiniteField, c: Elem) -> Sequence {
        let symbols = self.symbols.iter().map(|&a| field.mul(c, a)).collect();
        Sequence {
            block_len: self.block_len,
            symbols,
        }
    }

    /// Regroups into blocks of `group * block_len`, zero padding the tail.
    pub fn regroup(&self, group: usize) -> Sequence {
        let new_len = self.block_len * group;
        let mut symbols = self.symbols.clone();
        symbols.resize(symbols.len().div_ceil(new_len) * new_len, Elem::ZERO);
        Sequence {
            block_len: new_len,
            symbols,
        }
    }

    /// Inverse of [`Sequence::regroup`] when `block_len` divides the current one.
    pub fn split(&self, block_len: usize) -> Sequence {
        assert!(block_len > 0 && self.block_len.is_multiple_of(block_len));
        Sequence {
            block_len,
            symbols: self.symbols.clone(),
        }
    }

    /// Encodes block `t` as an integer: base-Q digits, symbol 0 least significant.
    pub fn block_index(&self, t: usize, q: u32) -> usize {
        self.block(t)
            .iter()
            .rev()
            .fold(0usize, |acc, s| acc * q as usize + s.0 as usize)
    }
}
