//! Exact arithmetic in the quantum parameter `q`.

mod gcd;
mod laurent;
mod quantum;
mod ratfunc;
mod solve;

pub use gcd::poly_gcd;
pub use laurent::LaurentPoly;
pub(crate) use laurent::PolyAcc;
pub use quantum::{delta, quantum_binom, quantum_int, verify_cor_q, verify_lemma_q};
pub use ratfunc::RatFunc;
pub use solve::{rf_solve, LinearSolution};

use num_rational::BigRational;

use crate::error::Result;

/// Exact value of `p` at `q = q0`; rejects `q0 = 0` and `|q0| = 1`.
pub fn lp_eval(p: &LaurentPoly, q0: &BigRational) -> Result<BigRational> {
    p.eval(q0)
}

/// Parses `a/b` or `a` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    use crate::error::Error;
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&d) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
