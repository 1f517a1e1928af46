//! Machine-readable distance analysis of a code.

use serde::Serialize;
use serde_json::Value;

use crate::codespec::{AnyCode, ModuleSide};
use crate::distance::{self, Bounds};
use crate::exec::Execution;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    /// `2n - k + 1`, only for memory-1 codes.
    pub d_free: Option<u32>,
    /// `n - k`
    pub slope: u32,
    pub d_free_met: Option<bool>,
    pub slope_met: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub module_side: ModuleSide,
    pub q: u32,
    pub theta_r: u32,
    pub k: usize,
    pub n: usize,
    pub tau: usize,
    pub mu: usize,
    pub nu: usize,
    pub states: usize,
    pub d_free: Option<u32>,
    pub d_free_start_phase: usize,
    /// Integer when the minimum cycle mean is integral, otherwise a float.
    pub slope: Value,
    /// Exact slope as `"num/den"`.
    pub slope_rational: Option<String>,
    pub lmax: usize,
    /// `d_burst[l - 1]` for `l = 1..=lmax`; `null` when no `l`-loop exists.
    pub d_burst: Vec<Option<u32>>,
    pub catastrophic: bool,
    pub bounds: BoundsReport,
}

pub fn analyze(
    code: &AnyCode,
    lmax: usize,
    exec: Execution,
) -> Result<AnalyzeReport, crate::Error> {
    let tr = code.trellis()?;
    let fd = distance::free_distance(&tr, distance::default_loop_horizon(&tr), exec);
    let slope = distance::slope(&tr)?;
    let d_burst = distance::burst_profile(&tr, lmax, exec);
    let cat = distance::catastrophicity(&tr);
    let Bounds {
        d_free: bd,
        slope: bs,
    } = distance::unit_memory_bounds(code.n(), code.k(), code.memory());
    let slope_value = match slope {
        None => Value::Null,
        Some(r) if *r.denom() == 1 => Value::from(*r.numer()),
        Some(r) => Value::from(*r.numer() as f64 / *r.denom() as f64),
    };
    Ok(AnalyzeReport {
        module_side: code.side(),
        q: code.field().size(),
        theta_r: code.field().theta_r(),
        k: code.k(),
        n: code.n(),
        tau: tr.period(),
        mu: code.memory(),
        nu: code.external_degree(),
        states: tr.num_states(),
        d_free: fd.d_free,
        d_free_start_phase: fd.start_phase,
        slope: slope_value,
        slope_rational: slope.map(|r| format!("{}/{}", r.numer(), r.denom())),
        lmax,
        d_burst,
        catastrophic: cat.catastrophic,
        bounds: BoundsReport {
            d_free: bd,
            slope: bs,
            d_free_met: bd.zip(fd.d_free).map(|(b, d)| b == d),
            slope_met: slope.map(|s| s == (bs as i64).into()),
        },
    })
}
