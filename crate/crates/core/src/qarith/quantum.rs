//! Quantum integers, quantum binomials and the two identities relating them.

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// `[n] = (qⁿ − q⁻ⁿ)/(q − q⁻¹)`, computed as an exact quotient.
pub fn quantum_int(n: u32) -> LaurentPoly {
    let n = i64::from(n);
    let num = &LaurentPoly::q_pow(n) - &LaurentPoly::q_pow(-n);
    let den = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
    num.div_exact(&den)
        .expect("q^n - q^-n is divisible by q - q^-1")
}

/// The loop value `δ = q + q⁻¹ = [2]`.
pub fn delta() -> LaurentPoly {
    quantum_int(2)
}

/// Quantum binomial `[n]⋯[n−k+1] / [k]⋯[1]`.
///
/// Computed as a running product where each step multiplies by one factor
/// of the numerator and divides exactly by one of the denominator, so every
/// intermediate is itself a quantum binomial. The common factor `q − q⁻¹`
/// cancels, leaving two-term factors `qᵐ − q⁻ᵐ`.
pub fn quantum_binom(n: i64, k: i64) -> Result<LaurentPoly> {
    if k < 0 || k > n {
        return Err(Error::Domain(format!(
            "quantum binomial needs 0 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if let Some(p) = binom_small(n, k) {
        return Ok(p);
    }
    let mut acc = LaurentPoly::one();
    for i in 1..=k {
        let m = n - k + i;
        let top = &LaurentPoly::q_pow(m) - &LaurentPoly::q_pow(-m);
        let bottom = &LaurentPoly::q_pow(i) - &LaurentPoly::q_pow(-i);
        acc = (&acc * &top).div_exact(&bottom).ok_or_else(|| {
            Error::InexactDivision(format!("[{n} choose {k}] at step {i}"))
        })?;
    }
    Ok(acc)
}

/// The same running product on dense `i128` coefficients; `None` on
/// overflow or if a step fails to divide.
fn binom_small(n: i64, k: i64) -> Option<LaurentPoly> {
    // Coefficients of q^low, q^(low+1), ...
    let mut c: Vec<i128> = vec![1];
    let mut low = 0i64;
    for i in 1..=k {
        let m = (n - k + i) as usize;
        // Multiply by q^m - q^-m.
        let mut p = vec![0i128; c.len() + 2 * m];
        for (j, &x) in c.iter().enumerate() {
            p[j + 2 * m] = p[j + 2 * m].checked_add(x)?;
            p[j] = p[j].checked_sub(x)?;
        }
        low -= m as i64;
        // Divide by q^i - q^-i = q^-i (q^2i - 1).
        let w = 2 * i as usize;
        let len = p.len().checked_sub(w)?;
        let mut quot = vec![0i128; len];
        for j in 0..len {
            let carry = if j >= w { quot[j - w] } else { 0 };
            quot[j] = carry.checked_sub(p[j])?;
        }
        if (len..p.len()).any(|j| p[j] != if j >= w { quot[j - w] } else { 0 }) {
            return None;
        }
        c = quot;
        low += i;
    }
    Some(LaurentPoly::from_terms(
        c.into_iter().enumerate().map(|(j, x)| (low + j as i64, num_bigint::BigInt::from(x))),
    ))
}

/// Checks `[k+l] = [k][l+1] − [k−1][l]` exactly. Requires `k ≥ 1`.
pub fn verify_lemma_q(k: u32, l: u32) -> bool {
    assert!(k >= 1, "verify_lemma_q needs k >= 1");
    let lhs = quantum_int(k + l);
    let rhs = &(&quantum_int(k) * &quantum_int(l + 1)) - &(&quantum_int(k - 1) * &quantum_int(l));
    lhs == rhs
}

/// Checks `[k+l choose l] = [l+1][k+l−1 choose l] − [k−1][k+l−1 choose l−1]`
/// exactly. Requires `k, l ≥ 1`.
pub fn verify_cor_q(k: u32, l: u32) -> bool {
    assert!(k >= 1 && l >= 1, "verify_cor_q needs k, l >= 1");
    let (k, l) = (i64::from(k), i64::from(l));
    let binom = |n, m| quantum_binom(n, m).expect("in range");
    let lhs = binom(k + l, l);
    let rhs = &(&quantum_int((l + 1) as u32) * &binom(k + l - 1, l))
        - &(&quantum_int((k - 1) as u32) * &binom(k + l - 1, l - 1));
    lhs == rhs
}
