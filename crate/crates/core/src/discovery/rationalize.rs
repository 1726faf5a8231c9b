//! Rational recognition by continued-fraction convergents.

use rug::{Float, Integer, Rational};

use super::DiscoveryError;

/// Smallest-denominator convergent `p/q` of `x` with `|x - p/q| <= tol` and
/// `q <= max_denominator`.
///
/// The expansion runs on the exact binary value of `x`, so the result does
/// not depend on any rounding inside the continued-fraction loop.
pub fn rationalize(
    x: &Float,
    max_denominator: &Integer,
    tol: &Float,
) -> Result<Rational, DiscoveryError> {
    if *max_denominator < 1 || !(tol.is_finite() && *tol > 0) {
        return Err(DiscoveryError::Usage(
            "rationalize needs max_denominator >= 1 and tol > 0".into(),
        ));
    }
    let exact = x
        .to_rational()
        .ok_or_else(|| DiscoveryError::Usage("cannot rationalize a non-finite value".into()))?;
    let tol = tol.to_rational().expect("finite tolerance");

    // Convergent recurrences seeded with h_{-1}/k_{-1} = 1/0 and h_{-2}/k_{-2} = 0/1.
    let (mut h, mut h_prev) = (Integer::from(1), Integer::new());
    let (mut k, mut k_prev) = (Integer::new(), Integer::from(1));

    let mut rest = exact.clone();
    loop {
        let a = rest.clone().floor().into_numer_denom().0;
        let h_next = Integer::from(&a * &h) + &h_prev;
        let k_next = Integer::from(&a * &k) + &k_prev;
        if k_next > *max_denominator {
            return Err(DiscoveryError::Recognition {
                value: x.to_string_radix(10, Some(25)),
            });
        }
        let candidate = Rational::from((h_next.clone(), k_next.clone()));
        if Rational::from(&exact - &candidate).abs() <= tol {
            return Ok(candidate);
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let frac = rest - Rational::from(a);
        if frac == 0 {
            return Err(DiscoveryError::Recognition {
                value: x.to_string_radix(10, Some(25)),
            });
        }
        rest = frac.recip();
    }
}
