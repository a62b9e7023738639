use rug::ops::Pow;
use rug::{Float, Integer};
use serde::Serialize;

use super::minimax::{solve_minimax, MinimaxObjective, MinimaxProblem};

/// Decimal places carried by closed-form constants.
pub const CONSTANT_DIGITS: u32 = 50;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedConstant {
    pub name: &'static str,
    pub expression: &'static str,
    /// Truncated toward zero after `digits` places.
    pub decimal: String,
    pub digits: u32,
    pub provenance: &'static str,
}

/// `x` truncated to `places` decimals, as fixed-point text.
pub fn fixed_decimal(x: &Float, places: u32) -> String {
    let scale = Integer::from(10).pow(places);
    let scaled = Float::with_val(x.prec(), x * &scale);
    let int = scaled.trunc().to_integer().expect("finite constant");
    let neg = int < 0;
    let digits = int.abs().to_string();
    let padded = format!("{:0>width$}", digits, width = places as usize + 1);
    let (whole, frac) = padded.split_at(padded.len() - places as usize);
    format!("{}{whole}.{frac}", if neg { "-" } else { "" })
}

pub fn named_constants() -> Vec<NamedConstant> {
    let prec = 256;
    let sqrt = |n: u32| Float::with_val(prec, n).sqrt();
    let closed = |name, expression, value: Float| NamedConstant {
        name,
        expression,
        decimal: fixed_decimal(&value, CONSTANT_DIGITS),
        digits: CONSTANT_DIGITS,
        provenance: "closed form, evaluated at 256 bits",
    };
    let appendix = solve_minimax(&MinimaxProblem::new(MinimaxObjective::Appendix1Var));
    vec![
        closed(
            "holque_decay_exponent",
            "7/2 - 2*sqrt(3)",
            Float::with_val(prec, 3.5) - 2 * sqrt(3),
        ),
        closed(
            "zeros_exponent_a",
            "(23 - 2*sqrt(3))/12",
            (Float::with_val(prec, 23) - 2 * sqrt(3)) / 12,
        ),
        closed(
            "earlier_decay_exponent",
            "31/2 - 4*sqrt(15)",
            Float::with_val(prec, 15.5) - 4 * sqrt(15),
        ),
        closed("balancing_alpha", "2/sqrt(3) - 1", 2 / sqrt(3) - 1),
        NamedConstant {
            name: "appendix_minimax",
            expression: "max_xi min_lambda appendix objective",
            decimal: format!("{:.10}", appendix.value),
            digits: 10,
            provenance: "computed by solve_minimax (grid plus golden section, double precision)",
        },
        NamedConstant {
            name: "superseded_exponent",
            expression: "earlier upper bound for the appendix minimax",
            decimal: "0.007359".into(),
            digits: 6,
            provenance: "literature value; exceeds appendix_minimax",
        },
    ]
}
