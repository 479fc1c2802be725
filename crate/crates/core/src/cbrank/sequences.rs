//! Sequences of subgroups converging to a given one, and what their
//! encodings can be.

use serde::Serialize;

use super::q::q_less;
use crate::error::{Error, Result};
use crate::lamplighter::{phi_encoding, QPoint, SubgroupTriple};
use crate::modules::approach_sequence;

/// Subgroups `V_m → V` with `Φ(V_m) = target` for `target < Φ(V)`.
///
/// With `V = (t·e, U, v)`, `e = e(U)` and `b = t / t'`, the terms are
/// `(t·e, U_m, v)` where `U_m` comes from [`approach_sequence`].
pub fn build_approach_sequence(
    v: &SubgroupTriple,
    target: QPoint,
    count: usize,
) -> Result<Vec<SubgroupTriple>> {
    let here = phi_encoding(v)?;
    if !q_less(target, here) {
        return Err(Error::domain(format!("{target} < {here} fails in Q")));
    }
    let b = (here.t / target.t) as usize;
    let seq = approach_sequence(v.u(), b, target.r as usize, count)?;
    seq.into_iter()
        .map(|um| SubgroupTriple::new(v.s(), um, v.v().clone()))
        .collect()
}

/// One group of the subsequence split by encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitGroup {
    pub q: QPoint,
    pub indices: Vec<usize>,
    pub divides: bool,
    /// `t'·r' < t·r`.
    pub strict: bool,
    /// The last term of the group equals the limit.
    pub stabilizes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitClassification {
    pub limit: QPoint,
    pub groups: Vec<LimitGroup>,
}

/// Groups a sequence converging to `v` by `Φ` (first occurrence first) and
/// checks `t' | t` and `t'r' <= tr`, with equality only when the group
/// stabilizes at `v`.
pub fn classify_limit(seq: &[SubgroupTriple], v: &SubgroupTriple) -> Result<LimitClassification> {
    let limit = phi_encoding(v)?;
    let mut groups: Vec<LimitGroup> = Vec::new();
    for (i, vm) in seq.iter().enumerate() {
        let q = phi_encoding(vm)?;
        match groups.iter_mut().find(|g| g.q == q) {
            Some(g) => g.indices.push(i),
            None => groups.push(LimitGroup {
                q,
                indices: vec![i],
                divides: limit.t % q.t == 0,
                strict: q.t * q.r < limit.t * limit.r,
                stabilizes: false,
            }),
        }
    }
    for g in &mut groups {
        g.stabilizes = seq[*g.indices.last().unwrap()] == *v;
        if !g.divides {
            return Err(Error::Consistency(format!(
                "t' = {} does not divide t = {}",
                g.q.t, limit.t
            )));
        }
        if g.q.t * g.q.r > limit.t * limit.r {
            return Err(Error::Consistency(format!(
                "t'r' = {} exceeds tr = {}",
                g.q.t * g.q.r,
                limit.t * limit.r
            )));
        }
        if !g.strict && !g.stabilizes {
            return Err(Error::Consistency(format!(
                "group {} has t'r' = tr but does not stabilize",
                g.q
            )));
        }
    }
    Ok(LimitClassification { limit, groups })
}
