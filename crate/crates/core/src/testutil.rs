//! Shared fixtures for unit tests.

use rand::Rng;

use crate::code::SkewConvCode;
use crate::field::Elem;
use crate::presets;
use crate::sequence::Sequence;

pub const A: u32 = 2;
pub const A2: u32 = 3;

pub fn example_code(theta_r: u32) -> SkewConvCode {
    presets::unit_memory_gf4(theta_r)
}

pub fn random_sequence<R: Rng>(rng: &mut R, q: u32, block_len: usize, blocks: usize) -> Sequence {
    let symbols = (0..block_len * blocks)
        .map(|_| Elem(rng.gen_range(0..q)))
        .collect();
    Sequence::new(block_len, symbols).unwrap()
}

/// Every sequence of `blocks` blocks of `block_len` symbols over GF(q).
pub fn all_sequences(q: u32, block_len: usize, blocks: usize) -> impl Iterator<Item = Sequence> {
    let digits = block_len * blocks;
    let total = (q as u64).pow(digits as u32);
    (0..total).map(move |mut idx| {
        let symbols = (0..digits)
            .map(|_| {
                let d = (idx % q as u64) as u32;
                idx /= q as u64;
                Elem(d)
            })
            .collect();
        Sequence::new(block_len, symbols).unwrap()
    })
}
