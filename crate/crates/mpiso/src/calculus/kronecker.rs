//! The binomial inversion identity behind the equivalence of the two
//! definitions of P_m: sum_{k=l}^{m} (-1)^(m-k) C(m,k) C(k,l) equals 1
//! when l = m and 0 otherwise. Evaluated in exact integer arithmetic so
//! the test is an identity check, not a tolerance check.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::multiindex::binomial_big;

/// Exact value of sum_{k=l}^{m} (-1)^(m-k) C(m,k) C(k,l); requires l <= m.
pub fn kronecker_identity_check(m: u32, l: u32) -> Result<i64> {
    if l > m {
        return Err(Error::invalid(format!("need l <= m, got l = {l}, m = {m}")));
    }
    let mut total = BigInt::from(0);
    for k in l..=m {
        let term = BigInt::from(binomial_big(m as u64, k as u64))
            * BigInt::from(binomial_big(k as u64, l as u64));
        if (m - k) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_i64()
        .ok_or_else(|| Error::inconsistent(format!("sum for m = {m}, l = {l} overflows i64")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_behaviour_up_to_twelve() {
        for m in 0..=12u32 {
            for l in 0..=m {
                let expect = if l == m { 1 } else { 0 };
                assert_eq!(kronecker_identity_check(m, l).unwrap(), expect, "m={m} l={l}");
            }
        }
    }

    #[test]
    fn single_term_and_hand_checked_cases() {
        assert_eq!(kronecker_identity_check(5, 5).unwrap(), 1);
        // m=5, l=2: -10*1 + 30*... expands to -10 + 30 - 30 + 10 = 0
        assert_eq!(kronecker_identity_check(5, 2).unwrap(), 0);
        assert_eq!(kronecker_identity_check(0, 0).unwrap(), 1);
    }

    #[test]
    fn l_above_m_rejected() {
        assert!(kronecker_identity_check(3, 4).is_err());
    }

    #[test]
    fn large_orders_stay_exact() {
        // intermediate binomials exceed 2^64 long before m = 80; the
        // alternating sum must still collapse exactly
        for l in [0u32, 1, 37, 79, 80] {
            let expect = if l == 80 { 1 } else { 0 };
            assert_eq!(kronecker_identity_check(80, l).unwrap(), expect);
        }
    }
}
