//! Closed-form tree numbers for named families and the ledger that checks
//! them against the engines.

mod ledger;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::is_prime;
use crate::bignum::Factorization;

pub use ledger::{
    verify_ledger, Classification, LedgerEntry, LedgerOptions, OracleValue, Scope, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unknown formula '{0}'")]
    UnknownFormula(String),
    #[error("missing parameter '{0}'")]
    MissingParam(&'static str),
    #[error("parameters out of range: {0}")]
    ParamsOutOfRange(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaId {
    L2Char2,
    DihedralOdd,
    DihedralEven,
    Quaternion,
    Semidihedral,
    Extraspecial,
    GL2,
    PpCenter,
    TwoAbelian,
    ThreeAbelianA,
    ThreeAbelianB,
    ThreeAbelianC,
}

impl FormulaId {
    pub const ALL: [FormulaId; 12] = [
        FormulaId::L2Char2,
        FormulaId::DihedralOdd,
        FormulaId::DihedralEven,
        FormulaId::Quaternion,
        FormulaId::Semidihedral,
        FormulaId::Extraspecial,
        FormulaId::GL2,
        FormulaId::PpCenter,
        FormulaId::TwoAbelian,
        FormulaId::ThreeAbelianA,
        FormulaId::ThreeAbelianB,
        FormulaId::ThreeAbelianC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::L2Char2 => "L2_char2",
            FormulaId::DihedralOdd => "dihedral_odd",
            FormulaId::DihedralEven => "dihedral_even",
            FormulaId::Quaternion => "quaternion",
            FormulaId::Semidihedral => "semidihedral",
            FormulaId::Extraspecial => "extraspecial",
            FormulaId::GL2 => "GL2",
            FormulaId::PpCenter => "pp_center",
            FormulaId::TwoAbelian => "two_abelian",
            FormulaId::ThreeAbelianA => "three_abelian_a",
            FormulaId::ThreeAbelianB => "three_abelian_b",
            FormulaId::ThreeAbelianC => "three_abelian_c",
        }
    }

    /// Parameter names, in the order used by the ledger.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FormulaId::L2Char2 | FormulaId::GL2 => &["q"],
            FormulaId::DihedralOdd
            | FormulaId::DihedralEven
            | FormulaId::Quaternion
            | FormulaId::Semidihedral => &["k"],
            FormulaId::Extraspecial => &["p"],
            FormulaId::PpCenter => &["n", "m", "p"],
            FormulaId::TwoAbelian
            | FormulaId::ThreeAbelianA
            | FormulaId::ThreeAbelianB
            | FormulaId::ThreeAbelianC => &["m"],
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| FormulaError::UnknownFormula(s.to_string()))
    }
}

pub type FormulaParams = BTreeMap<String, u64>;

fn get(params: &FormulaParams, key: &'static str) -> Result<u64, FormulaError> {
    params
        .get(key)
        .copied()
        .ok_or(FormulaError::MissingParam(key))
}

fn out_of_range(msg: impl Into<String>) -> FormulaError {
    FormulaError::ParamsOutOfRange(msg.into())
}

/// `base^exp` for a signed exponent that must come out nonnegative.
fn pw(base: u64, exp: i128) -> Result<Factorization, FormulaError> {
    let e = u64::try_from(exp)
        .map_err(|_| out_of_range(format!("negative exponent {exp} on {base}")))?;
    Ok(Factorization::power_of(base, e))
}

fn is_power_of_two(q: u64) -> bool {
    q.is_power_of_two()
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q)
        .find(|d| q % d == 0)
        .expect("q ≥ 2 has a least divisor");
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

/// Evaluates a closed form exactly, as a factorization.
pub fn closed_form(id: FormulaId, params: &FormulaParams) -> Result<Factorization, FormulaError> {
    let f = match id {
        FormulaId::L2Char2 => {
            let q = get(params, "q")?;
            if !is_power_of_two(q) || q < 4 {
                return Err(out_of_range("q must be a power of 2, at least 4"));
            }
            let q = q as i128;
            pw(q as u64, (q - 2) * (q + 1))?
                * pw(q as u64 - 1, (q - 3) * q * (q + 1) / 2)?
                * pw(q as u64 + 1, (q - 1) * (q - 1) * q / 2)?
        }
        FormulaId::DihedralOdd => {
            let k = get(params, "k")?;
            if k < 3 || k % 2 == 0 {
                return Err(out_of_range("k must be odd, at least 3"));
            }
            pw(k, k as i128 - 2)?
        }
        FormulaId::DihedralEven => {
            let k = get(params, "k")?;
            if k < 4 || k % 2 == 1 {
                return Err(out_of_range("k must be even, at least 4"));
            }
            pw(2, (3 * k as i128 + 2) / 2)? * pw(k, k as i128 - 2)?
        }
        FormulaId::Quaternion => {
            let k = get(params, "k")?;
            if k < 2 {
                return Err(out_of_range("k must be at least 2"));
            }
            let k = k as i128;
            pw(2, 5 * k - 1)? * pw(k as u64, 2 * k - 2)?
        }
        FormulaId::Semidihedral => {
            let k = get(params, "k")?;
            if !(4..=40).contains(&k) {
                return Err(out_of_range("k must lie in 4..=40"));
            }
            let k = k as i128;
            pw(2, ((1i128 << (k - 2)) - 1) * (2 * k + 1) + 4)?
        }
        FormulaId::Extraspecial => {
            let p = get(params, "p")?;
            if !is_prime(p) {
                return Err(out_of_range("p must be prime"));
            }
            pw(p, 2 * (p as i128).pow(3) - 5)?
        }
        FormulaId::GL2 => {
            let q = get(params, "q")?;
            if q <= 2 || !is_prime_power(q) {
                return Err(out_of_range("q must be a prime power above 2"));
            }
            let qi = q as i128;
            let q3 = qi.pow(3);
            pw(q, q3 - qi * qi - qi - 2)?
                * pw(q - 1, qi * (3 * q3 + 5) / 2 - 2 * q3 - 2 * qi * qi - 4)?
                * pw(q + 1, qi * (q3 + 3) / 2 - q3 - 2)?
        }
        FormulaId::PpCenter => {
            let (n, m, p) = (get(params, "n")?, get(params, "m")?, get(params, "p")?);
            if !is_prime(p) || m < 2 || n != p * p * m {
                return Err(out_of_range("need p prime, m ≥ 2 and n = p²m"));
            }
            pw(p, n as i128 + m as i128 - p as i128 - 3)? * pw(m, n as i128 - 2)?
        }
        FormulaId::TwoAbelian | FormulaId::ThreeAbelianA => {
            let m = center_order(params)?;
            pw(2, 5 * m - 5)? * pw(m as u64, 4 * m - 2)?
        }
        FormulaId::ThreeAbelianB => {
            let m = center_order(params)?;
            pw(3, 10 * m - 6)? * pw(m as u64, 9 * m - 2)?
        }
        FormulaId::ThreeAbelianC => {
            let m = center_order(params)?;
            pw(2, 4 * m - 4)? * pw(3, 3 * m - 2)? * pw(m as u64, 6 * m - 1)?
        }
    };
    Ok(f)
}

fn center_order(params: &FormulaParams) -> Result<i128, FormulaError> {
    let m = get(params, "m")?;
    if m < 2 {
        return Err(out_of_range("m must be at least 2"));
    }
    Ok(m as i128)
}

/// Convenience: parameters from `(name, value)` pairs.
pub fn params(pairs: &[(&str, u64)]) -> FormulaParams {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(id: FormulaId, pairs: &[(&str, u64)]) -> String {
        closed_form(id, &params(pairs)).unwrap().to_string()
    }

    #[test]
    fn printed_instances() {
        assert_eq!(eval(FormulaId::L2Char2, &[("q", 4)]), "2^20·3^10·5^18");
        assert_eq!(eval(FormulaId::L2Char2, &[("q", 8)]), "2^162·3^392·7^180");
        assert_eq!(eval(FormulaId::Semidihedral, &[("k", 4)]), "2^31");
        assert_eq!(eval(FormulaId::Extraspecial, &[("p", 3)]), "3^49");
        assert_eq!(eval(FormulaId::GL2, &[("q", 3)]), "2^85·3^13");
        assert_eq!(eval(FormulaId::DihedralOdd, &[("k", 5)]), "5^3");
        assert_eq!(eval(FormulaId::DihedralEven, &[("k", 6)]), "2^14·3^4");
        assert_eq!(eval(FormulaId::Quaternion, &[("k", 2)]), "2^11");
        assert_eq!(
            eval(FormulaId::PpCenter, &[("n", 8), ("m", 2), ("p", 2)]),
            "2^11"
        );
        assert_eq!(eval(FormulaId::ThreeAbelianC, &[("m", 2)]), "2^15·3^4");
    }

    #[test]
    fn internal_chains() {
        for m in 2..12u64 {
            let pp = closed_form(
                FormulaId::PpCenter,
                &params(&[("n", 4 * m), ("m", m), ("p", 2)]),
            )
            .unwrap();
            assert_eq!(
                pp,
                closed_form(FormulaId::TwoAbelian, &params(&[("m", m)])).unwrap()
            );
            let pp3 = closed_form(
                FormulaId::PpCenter,
                &params(&[("n", 9 * m), ("m", m), ("p", 3)]),
            )
            .unwrap();
            assert_eq!(
                pp3,
                closed_form(FormulaId::ThreeAbelianB, &params(&[("m", m)])).unwrap()
            );
        }
        assert_eq!(
            eval(FormulaId::PpCenter, &[("n", 27), ("m", 3), ("p", 3)]),
            eval(FormulaId::Extraspecial, &[("p", 3)])
        );
    }

    #[test]
    fn ranges_are_enforced() {
        let bad = [
            (FormulaId::L2Char2, params(&[("q", 6)])),
            (FormulaId::L2Char2, params(&[("q", 2)])),
            (FormulaId::DihedralOdd, params(&[("k", 4)])),
            (FormulaId::DihedralEven, params(&[("k", 5)])),
            (FormulaId::Semidihedral, params(&[("k", 3)])),
            (FormulaId::Extraspecial, params(&[("p", 4)])),
            (FormulaId::GL2, params(&[("q", 6)])),
            (FormulaId::GL2, params(&[("q", 2)])),
            (FormulaId::PpCenter, params(&[("n", 9), ("m", 2), ("p", 2)])),
            (FormulaId::TwoAbelian, params(&[("m", 1)])),
        ];
        for (id, p) in bad {
            assert!(
                matches!(closed_form(id, &p), Err(FormulaError::ParamsOutOfRange(_))),
                "{id} {p:?}"
            );
        }
        assert_eq!(
            closed_form(FormulaId::Quaternion, &FormulaParams::new()),
            Err(FormulaError::MissingParam("k"))
        );
        assert_eq!("GL2".parse::<FormulaId>(), Ok(FormulaId::GL2));
        assert!("nope".parse::<FormulaId>().is_err());
    }
}
