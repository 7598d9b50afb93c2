use thiserror::Error;

use crate::syntax::{classify_theory, Expression, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unsupported expression {0}: the OC measure is undefined on encapsulation")]
    UnsupportedExpression(String),
}

/// The OC measure. It never increases along a transition of an expression
/// without encapsulation, and is rejected on any expression containing one.
pub fn oc_measure(e: &Expression) -> Result<usize, AnalysisError> {
    if classify_theory(e) == Theory::Acp {
        return Err(AnalysisError::UnsupportedExpression(e.to_string()));
    }
    Ok(measure(e))
}

fn measure(e: &Expression) -> usize {
    match e {
        Expression::Deadlock | Expression::Empty => 0,
        Expression::Act(_) => 1,
        Expression::Seq(_, q) if q.is_star() => 0,
        Expression::Seq(_, q) => measure(q) + 1,
        Expression::Alt(p, q) => measure(p).max(measure(q)) + 1,
        Expression::Star(_) => 1,
        Expression::Par(..) => 0,
        Expression::Encap(..) => unreachable!("checked by oc_measure"),
    }
}
