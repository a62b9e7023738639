use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Local situation at `p` for the normalized local triple-product integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IchinoCase {
    /// `p ∤ q`
    Unramified,
    /// `p | q` and `f = g`
    RamifiedEqual,
    /// `p | q` (squarefree) and `f ≠ g`
    RamifiedDistinct,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IchinoInput {
    pub p: u64,
    /// `ord_p(q)`
    pub n_p: u32,
    /// `ord_p(q / √Q)`
    pub m_p: u32,
    pub case: IchinoCase,
    pub theta: f64,
}

impl IchinoInput {
    pub fn new(p: u64, n_p: u32, m_p: u32, case: IchinoCase) -> Self {
        IchinoInput {
            p,
            n_p,
            m_p,
            case,
            theta: 7.0 / 64.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IchinoLocal {
    Value(Rational),
    /// Strict upper bound only.
    Bound(f64),
}

impl IchinoLocal {
    pub fn kind(&self) -> &'static str {
        match self {
            IchinoLocal::Value(_) => "value",
            IchinoLocal::Bound(_) => "bound",
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            // nearest, where `Rational::to_f64` truncates
            IchinoLocal::Value(q) => rug::Float::with_val(53, q).to_f64(),
            IchinoLocal::Bound(b) => *b,
        }
    }
}

/// `1` if `p ∤ q`; `p^{-1}` if `p | q`, `f ≠ g`; otherwise the bound
/// `10^5 p^{-n_p} τ(p^{m_p})² p^{2θ m_p}` with `τ(p^m) = m + 1`.
pub fn ichino_local(input: &IchinoInput) -> Result<IchinoLocal> {
    let inconsistent = |why: &str| Err(Error::InconsistentLocalData(format!("p = {}: {why}", input.p)));
    if input.p < 2 || !crate::arith::is_prime(input.p) {
        return inconsistent("not a prime");
    }
    if input.m_p > input.n_p {
        return inconsistent("m_p exceeds n_p");
    }
    if !(0.0..0.5).contains(&input.theta) {
        return inconsistent("theta outside [0, 1/2)");
    }
    match input.case {
        IchinoCase::Unramified if input.n_p == 0 => Ok(IchinoLocal::Value(Rational::from(1))),
        IchinoCase::Unramified => inconsistent("unramified case needs n_p = 0"),
        _ if input.n_p == 0 => inconsistent("ramified case needs n_p >= 1"),
        IchinoCase::RamifiedDistinct if input.n_p == 1 => Ok(IchinoLocal::Value(Rational::from((1, input.p)))),
        IchinoCase::RamifiedDistinct => inconsistent("distinct forms need squarefree level"),
        IchinoCase::RamifiedEqual => {
            let p = input.p as f64;
            let m = input.m_p as f64;
            let tau = m + 1.0;
            Ok(IchinoLocal::Bound(
                1e5 * p.powi(-(input.n_p as i32)) * tau * tau * p.powf(2.0 * input.theta * m),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases() {
        assert_eq!(
            ichino_local(&IchinoInput::new(7, 0, 0, IchinoCase::Unramified)).unwrap(),
            IchinoLocal::Value(Rational::from(1))
        );
        assert_eq!(
            ichino_local(&IchinoInput::new(5, 1, 0, IchinoCase::RamifiedDistinct)).unwrap(),
            IchinoLocal::Value(Rational::from((1, 5)))
        );
        let b = ichino_local(&IchinoInput::new(5, 1, 0, IchinoCase::RamifiedEqual)).unwrap();
        assert_eq!(b.kind(), "bound");
        assert_eq!(b.to_f64(), 1e5 / 5.0);
    }

    #[test]
    fn inconsistent_inputs() {
        for input in [
            IchinoInput::new(5, 0, 0, IchinoCase::RamifiedEqual),
            IchinoInput::new(5, 0, 0, IchinoCase::RamifiedDistinct),
            IchinoInput::new(5, 2, 0, IchinoCase::Unramified),
            IchinoInput::new(5, 1, 2, IchinoCase::RamifiedEqual),
            IchinoInput::new(6, 1, 0, IchinoCase::RamifiedEqual),
        ] {
            assert!(
                matches!(ichino_local(&input), Err(Error::InconsistentLocalData(_))),
                "{input:?}"
            );
        }
    }

    #[test]
    fn theta_zero_drops_the_growth_factor() {
        let mut input = IchinoInput::new(3, 4, 2, IchinoCase::RamifiedEqual);
        input.theta = 0.0;
        let got = ichino_local(&input).unwrap().to_f64();
        assert!((got - 1e5 / 81.0 * 9.0).abs() < 1e-9 * got);
    }
}
