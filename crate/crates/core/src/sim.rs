//! Monte-Carlo error rates over the q-ary symmetric channel.
//!
//! Trial `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so
//! results are identical for any thread count or execution mode.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codespec::AnyCode;
use crate::decoder::{viterbi, QsChannel};
use crate::exec::Execution;
use crate::sequence::Sequence;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig {
    pub eps: f64,
    pub trials: u64,
    /// Information blocks per frame; `memory` zero tail blocks are appended.
    pub frame_len: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub eps: f64,
    pub trials: u64,
    pub frame_len: usize,
    pub seed: u64,
    /// Symbols altered by the channel.
    pub channel_symbol_errors: u64,
    pub channel_symbols: u64,
    /// Decoded information symbols that differ from the transmitted ones.
    pub info_symbol_errors: u64,
    pub info_symbols: u64,
    pub frame_errors: u64,
    /// `info_symbol_errors / info_symbols`
    pub ber: f64,
    /// `frame_errors / trials`
    pub fer: f64,
}

#[derive(Clone, Copy, Default)]
struct Counts {
    channel: u64,
    info: u64,
    frames: u64,
}

pub fn simulate(
    code: &AnyCode,
    cfg: &SimConfig,
    exec: Execution,
) -> Result<SimReport, crate::Error> {
    let q = code.field().size();
    let channel = QsChannel::new(q, cfg.eps)?;
    let tr = code.trellis()?;
    let k = code.k();
    let trial = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let symbols = (0..k * cfg.frame_len)
            .map(|_| crate::Elem(rng.gen_range(0..q)))
            .collect();
        let u = Sequence::new(k, symbols).expect("whole blocks");
        let v = code.encode(&u, true).expect("well-formed input");
        let r = channel.transmit(&mut rng, &v);
        let dec = viterbi(&tr, &r, true).expect("frame matches the trellis");
        let info = dec.info.hamming_distance(&u) as u64;
        Counts {
            channel: r.hamming_distance(&v) as u64,
            info,
            frames: (info > 0) as u64,
        }
    };
    let total = exec.map_reduce(0..cfg.trials as usize, Counts::default(), trial, |a, b| {
        Counts {
            channel: a.channel + b.channel,
            info: a.info + b.info,
            frames: a.frames + b.frames,
        }
    });
    let info_symbols = cfg.trials * (k * cfg.frame_len) as u64;
    let channel_symbols = cfg.trials * (code.n() * (cfg.frame_len + code.memory())) as u64;
    let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    Ok(SimReport {
        eps: cfg.eps,
        trials: cfg.trials,
        frame_len: cfg.frame_len,
        seed: cfg.seed,
        channel_symbol_errors: total.channel,
        channel_symbols,
        info_symbol_errors: total.info,
        info_symbols,
        frame_errors: total.frames,
        ber: ratio(total.info, info_symbols),
        fer: ratio(total.frames, cfg.trials),
    })
}
