//! Fixtures shared by the benchmarks under `benches/`.

use std::sync::Arc;

use castleqec::{CodeSequence, EvaluationSet, PointedCurve};

/// Evaluation set and code sequence of a curve at its `x` fibration.
pub fn sequence(c: PointedCurve) -> (EvaluationSet, CodeSequence) {
    let c = Arc::new(c);
    let idx = c.generator_index("x").expect("curve has x");
    let e = c.eval_set(idx, None).expect("complete evaluation set");
    let s = CodeSequence::new(&e).expect("sequence");
    (e, s)
}

pub fn suzuki() -> (EvaluationSet, CodeSequence) {
    sequence(PointedCurve::suzuki(2).expect("Suzuki curve over GF(8)"))
}

pub fn norm_trace() -> (EvaluationSet, CodeSequence) {
    sequence(PointedCurve::norm_trace_quotient(2, 3, 7).expect("norm-trace quotient over GF(8)"))
}
