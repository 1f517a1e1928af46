//! Trellis decoders: Viterbi (maximum-likelihood sequence) and BCJR
//! (per-block a posteriori probabilities) for the q-ary symmetric channel.
//!
//! Both decoders walk the trellis section `t mod period` at time `t`, so the
//! time-varying coefficients of a skew code are honored. Decoding always
//! starts in state 0. A terminated frame carries `memory` tail blocks whose
//! inputs are forced to zero, which also forces the final state to 0.

use rand::Rng;
use thiserror::Error;

use crate::code::CodeError;
use crate::exec::Execution;
use crate::field::Elem;
use crate::sequence::Sequence;
use crate::trellis::Trellis;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecodeError {
    #[error("received blocks have length {got}, expected {expected}")]
    BlockLength { got: usize, expected: usize },
    #[error("terminated frame has {blocks} blocks, fewer than the memory {memory}")]
    TooShort { blocks: usize, memory: usize },
    #[error("symbol error probability {eps} outside the admissible range {range}")]
    Eps { eps: f64, range: String },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// q-ary symmetric channel: a symbol survives with probability `1 - eps`,
/// otherwise it becomes one of the other `q - 1` symbols uniformly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QsChannel {
    q: u32,
    eps: f64,
}

impl QsChannel {
    /// Accepts `0 <= eps < (q - 1) / q`.
    pub fn new(q: u32, eps: f64) -> Result<Self, DecodeError> {
        let max = (q as f64 - 1.0) / q as f64;
        if !(eps >= 0.0 && eps < max) {
            return Err(DecodeError::Eps {
                eps,
                range: format!("[0, {max})"),
            });
        }
        Ok(QsChannel { q, eps })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `P(received | sent)`.
    #[inline]
    pub fn transition(&self, sent: Elem, received: Elem) -> f64 {
        if sent == received {
            1.0 - self.eps
        } else {
            self.eps / (self.q - 1) as f64
        }
    }

    pub fn transmit<R: Rng + ?Sized>(&self, rng: &mut R, input: &Sequence) -> Sequence {
        let symbols = input
            .symbols()
            .iter()
            .map(|&s| {
                if self.eps > 0.0 && rng.gen::<f64>() < self.eps {
                    let offset = rng.gen_range(1..self.q);
                    Elem((s.0 + offset) % self.q)
                } else {
                    s
                }
            })
            .collect();
        Sequence::new(input.block_len(), symbols).expect("same shape as the input")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViterbiResult {
    pub info: Sequence,
    /// Hamming distance between the received word and the decoded codeword.
    pub metric: u32,
    pub final_state: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BcjrResult {
    /// Per-time argmax of the posteriors (lowest index on ties).
    pub info: Sequence,
    /// `posteriors[t][x]` = P(u_t = x | received), `x` a packed input block.
    pub posteriors: Vec<Vec<f64>>,
    /// Natural log of P(received) under uniform information priors.
    pub log_likelihood: f64,
}

fn frame_shape(
    tr: &Trellis,
    received: &Sequence,
    terminated: bool,
) -> Result<(usize, usize), DecodeError> {
    if received.block_len() != tr.n() {
        return Err(DecodeError::BlockLength {
            got: received.block_len(),
            expected: tr.n(),
        });
    }
    if let Some(s) = received
        .symbols()
        .iter()
        .find(|s| !tr.field().contains(**s))
    {
        return Err(CodeError::InvalidSymbol {
            value: s.0,
            size: tr.field().size(),
        }
        .into());
    }
    let blocks = received.len();
    let info_len = if terminated {
        blocks
            .checked_sub(tr.memory())
            .ok_or(DecodeError::TooShort {
                blocks,
                memory: tr.memory(),
            })?
    } else {
        blocks
    };
    Ok((blocks, info_len))
}

fn distance(a: &[Elem], b: &[Elem]) -> u32 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
}

fn inputs_info(tr: &Trellis, inputs: &[usize]) -> Sequence {
    let mut info = Sequence::empty(tr.k());
    for &x in inputs {
        info.push_block(&tr.input_block(x));
    }
    info
}

/// Hard-decision Viterbi decoding with the Hamming metric.
///
/// Ties between survivors go to the lowest predecessor state, then the lowest
/// input; an unterminated frame ends in the lowest-indexed best state.
pub fn viterbi(
    tr: &Trellis,
    received: &Sequence,
    terminated: bool,
) -> Result<ViterbiResult, DecodeError> {
    const INF: u32 = u32::MAX;
    let (blocks, info_len) = frame_shape(tr, received, terminated)?;
    let (s_count, q_k) = (tr.num_states(), tr.num_inputs());
    let mut metric = vec![INF; s_count];
    metric[0] = 0;
    let mut next = vec![INF; s_count];
    let mut survivors = vec![u32::MAX; blocks * s_count];
    for t in 0..blocks {
        next.fill(INF);
        let rx = received.block(t);
        let allowed = if t < info_len { q_k } else { 1 };
        for (s, &m) in metric.iter().enumerate() {
            if m == INF {
                continue;
            }
            for x in 0..allowed {
                let to = tr.next_state(t, s, x);
                let nm = m + distance(tr.label(t, s, x), rx);
                if nm < next[to] {
                    next[to] = nm;
                    survivors[t * s_count + to] = (s * q_k + x) as u32;
                }
            }
        }
        std::mem::swap(&mut metric, &mut next);
    }
    let final_state = if terminated {
        0
    } else {
        (0..s_count)
            .min_by_key(|&s| (metric[s], s))
            .expect("at least one state")
    };
    let mut inputs = vec![0usize; blocks];
    let mut state = final_state;
    for t in (0..blocks).rev() {
        let sv = survivors[t * s_count + state] as usize;
        inputs[t] = sv % q_k;
        state = sv / q_k;
    }
    inputs.truncate(info_len);
    Ok(ViterbiResult {
        info: inputs_info(tr, &inputs),
        metric: metric[final_state],
        final_state,
    })
}

/// Forward-backward decoding with per-step normalization in the probability
/// domain. Information blocks have uniform priors; tail blocks of a
/// terminated frame are known to be zero.
pub fn bcjr(
    tr: &Trellis,
    received: &Sequence,
    channel: &QsChannel,
    terminated: bool,
) -> Result<BcjrResult, DecodeError> {
    if channel.eps() <= 0.0 || channel.eps().is_nan() {
        let max = (channel.q() as f64 - 1.0) / channel.q() as f64;
        return Err(DecodeError::Eps {
            eps: channel.eps(),
            range: format!("(0, {max})"),
        });
    }
    let (blocks, info_len) = frame_shape(tr, received, terminated)?;
    let (s_count, q_k) = (tr.num_states(), tr.num_inputs());
    let prior = 1.0 / q_k as f64;
    let gamma = |t: usize, s: usize, x: usize| -> f64 {
        let p_x = if t < info_len {
            prior
        } else if x == 0 {
            1.0
        } else {
            0.0
        };
        if p_x == 0.0 {
            return 0.0;
        }
        let label = tr.label(t, s, x);
        p_x * label
            .iter()
            .zip(received.block(t))
            .map(|(&c, &r)| channel.transition(c, r))
            .product::<f64>()
    };

    let mut alpha = vec![vec![0.0f64; s_count]; blocks + 1];
    alpha[0][0] = 1.0;
    let mut log_likelihood = 0.0;
    for t in 0..blocks {
        let (head, tail) = alpha.split_at_mut(t + 1);
        let (cur, nxt) = (&head[t], &mut tail[0]);
        for s in 0..s_count {
            if cur[s] == 0.0 {
                continue;
            }
            for x in 0..q_k {
                let g = gamma(t, s, x);
                if g > 0.0 {
                    nxt[tr.next_state(t, s, x)] += cur[s] * g;
                }
            }
        }
        let norm: f64 = nxt.iter().sum();
        log_likelihood += norm.ln();
        nxt.iter_mut().for_each(|a| *a /= norm);
    }

    let mut beta = vec![vec![0.0f64; s_count]; blocks + 1];
    if terminated {
        beta[blocks][0] = 1.0;
    } else {
        beta[blocks].fill(1.0);
    }
    for t in (0..blocks).rev() {
        let (head, tail) = beta.split_at_mut(t + 1);
        let (cur, nxt) = (&mut head[t], &tail[0]);
        for s in 0..s_count {
            cur[s] = (0..q_k)
                .map(|x| gamma(t, s, x) * nxt[tr.next_state(t, s, x)])
                .sum();
        }
        let norm: f64 = cur.iter().sum();
        if norm > 0.0 {
            cur.iter_mut().for_each(|b| *b /= norm);
        }
    }

    let mut posteriors = Vec::with_capacity(info_len);
    let mut decisions = Vec::with_capacity(info_len);
    for t in 0..info_len {
        let mut post = vec![0.0f64; q_k];
        for s in 0..s_count {
            if alpha[t][s] == 0.0 {
                continue;
            }
            for (x, p) in post.iter_mut().enumerate() {
                *p += alpha[t][s] * gamma(t, s, x) * beta[t + 1][tr.next_state(t, s, x)];
            }
        }
        let total: f64 = post.iter().sum();
        post.iter_mut().for_each(|p| *p /= total);
        let best = (0..q_k).fold(0, |b, x| if post[x] > post[b] { x } else { b });
        decisions.push(best);
        posteriors.push(post);
    }
    Ok(BcjrResult {
        info: inputs_info(tr, &decisions),
        posteriors,
        log_likelihood,
    })
}

/// Viterbi over independent frames.
pub fn viterbi_batch(
    tr: &Trellis,
    frames: &[Sequence],
    terminated: bool,
    exec: Execution,
) -> Vec<Result<ViterbiResult, DecodeError>> {
    exec.map(0..frames.len(), |i| viterbi(tr, &frames[i], terminated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{all_sequences, example_code, random_sequence};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (crate::SkewConvCode, Trellis) {
        let code = example_code(1);
        let tr = Trellis::from_code(&code).unwrap();
        (code, tr)
    }

    #[test]
    fn channel_validation() {
        assert!(QsChannel::new(4, 0.0).is_ok());
        assert!(QsChannel::new(4, 0.74).is_ok());
        assert!(QsChannel::new(4, 0.75).is_err());
        assert!(QsChannel::new(4, -0.1).is_err());
        assert!(QsChannel::new(4, f64::NAN).is_err());
        let ch = QsChannel::new(4, 0.3).unwrap();
        for sent in 0..4 {
            let total: f64 = (0..4).map(|r| ch.transition(Elem(sent), Elem(r))).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn noiseless_viterbi_recovers_input() {
        let (code, tr) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for len in 0..=6 {
            for _ in 0..10 {
                let u = random_sequence(&mut rng, 4, 1, len);
                for terminated in [false, true] {
                    let v = code.encode(&u, terminated).unwrap();
                    let r = viterbi(&tr, &v, terminated).unwrap();
                    assert_eq!(r.info, u);
                    assert_eq!(r.metric, 0);
                }
            }
        }
    }

    #[test]
    fn single_errors_are_corrected() {
        let (code, tr) = setup();
        for u in all_sequences(4, 1, 4) {
            let v = code.encode(&u, true).unwrap();
            for pos in 0..v.symbols().len() {
                for delta in 1..4 {
                    let mut symbols = v.symbols().to_vec();
                    symbols[pos] = Elem(symbols[pos].0 ^ delta);
                    let r = Sequence::new(2, symbols).unwrap();
                    assert_eq!(viterbi(&tr, &r, true).unwrap().info, u);
                }
            }
        }
    }

    #[test]
    fn viterbi_is_maximum_likelihood() {
        let (code, tr) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let r = random_sequence(&mut rng, 4, 2, 5);
            let best = all_sequences(4, 1, 5)
                .map(|u| code.encode(&u, false).unwrap().hamming_distance(&r))
                .min()
                .unwrap();
            let out = viterbi(&tr, &r, false).unwrap();
            assert_eq!(out.metric as usize, best);
            assert_eq!(
                code.encode(&out.info, false).unwrap().hamming_distance(&r),
                best
            );
        }
    }

    #[test]
    fn bcjr_matches_exhaustive_bayes() {
        let (code, tr) = setup();
        let ch = QsChannel::new(4, 0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let u = random_sequence(&mut rng, 4, 1, 3);
            let r = ch.transmit(&mut rng, &code.encode(&u, true).unwrap());
            let out = bcjr(&tr, &r, &ch, true).unwrap();
            let mut post = vec![vec![0.0; 4]; 3];
            let mut evidence = 0.0;
            for cand in all_sequences(4, 1, 3) {
                let v = code.encode(&cand, true).unwrap();
                let like: f64 = v
                    .symbols()
                    .iter()
                    .zip(r.symbols())
                    .map(|(&a, &b)| ch.transition(a, b))
                    .product();
                let joint = like / 64.0;
                evidence += joint;
                for t in 0..3 {
                    post[t][cand.block(t)[0].0 as usize] += joint;
                }
            }
            for t in 0..3 {
                let sum: f64 = out.posteriors[t].iter().sum();
                assert!((sum - 1.0).abs() < 1e-9);
                for x in 0..4 {
                    let expect = post[t][x] / evidence;
                    assert!(
                        (out.posteriors[t][x] - expect).abs() <= 1e-9 * expect.max(1e-300),
                        "t {t} x {x}"
                    );
                }
            }
            assert!((out.log_likelihood - evidence.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn bcjr_near_noiseless_is_confident() {
        let (code, tr) = setup();
        let ch = QsChannel::new(4, 1e-9).unwrap();
        let u = Sequence::from_u32_blocks(&[&[1], &[3], &[0], &[2], &[2]]);
        for terminated in [false, true] {
            let out = bcjr(&tr, &code.encode(&u, terminated).unwrap(), &ch, terminated).unwrap();
            assert_eq!(out.info, u);
            for (t, p) in out.posteriors.iter().enumerate() {
                assert!(p[u.block(t)[0].0 as usize] >= 0.999);
            }
            assert_eq!(
                out.info,
                viterbi(&tr, &code.encode(&u, terminated).unwrap(), terminated)
                    .unwrap()
                    .info
            );
        }
    }

    #[test]
    fn errors() {
        let (_, tr) = setup();
        let bad = Sequence::from_u32_blocks(&[&[1]]);
        assert!(matches!(
            viterbi(&tr, &bad, false),
            Err(DecodeError::BlockLength { .. })
        ));
        let empty = Sequence::empty(2);
        assert!(matches!(
            viterbi(&tr, &empty, true),
            Err(DecodeError::TooShort { .. })
        ));
        let ch = QsChannel::new(4, 0.0).unwrap();
        let r = Sequence::from_u32_blocks(&[&[1, 2]]);
        assert!(matches!(
            bcjr(&tr, &r, &ch, false),
            Err(DecodeError::Eps { .. })
        ));
        let oob = Sequence::from_u32_blocks(&[&[1, 7]]);
        assert!(matches!(
            viterbi(&tr, &oob, false),
            Err(DecodeError::Code(_))
        ));
    }

    #[test]
    fn empty_frames() {
        let (_, tr) = setup();
        let r = viterbi(&tr, &Sequence::empty(2), false).unwrap();
        assert!(r.info.is_empty());
        assert_eq!(r.metric, 0);
    }

    #[test]
    fn batch_matches_single() {
        let (code, tr) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let frames: Vec<Sequence> = (0..8)
            .map(|_| {
                code.encode(&random_sequence(&mut rng, 4, 1, 6), true)
                    .unwrap()
            })
            .collect();
        let seq = viterbi_batch(&tr, &frames, true, Execution::Sequential);
        let par = viterbi_batch(&tr, &frames, true, Execution::Parallel);
        assert_eq!(seq, par);
    }
}
