//! Exact rational values and exact comparisons against powers with rational
//! exponents.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

/// `numerator / denominator + additive`, with the fraction kept reduced and
/// the denominator positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalBound {
    numerator: BigInt,
    denominator: BigInt,
    additive: i64,
}

impl RationalBound {
    /// Panics on a zero denominator; callers build these from formulas whose
    /// denominators are positive by construction.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>, additive: i64) -> Self {
        let r = BigRational::new(numerator.into(), denominator.into());
        RationalBound {
            numerator: r.numer().clone(),
            denominator: r.denom().clone(),
            additive,
        }
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Self::with_additive(r, 0)
    }

    pub fn with_additive(r: BigRational, additive: i64) -> Self {
        RationalBound {
            numerator: r.numer().clone(),
            denominator: r.denom().clone(),
            additive,
        }
    }

    pub fn integer(v: i64) -> Self {
        Self::new(v, 1, 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn additive(&self) -> i64 {
        self.additive
    }

    /// The fractional part without the additive term.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }

    /// The full value, additive term included, as one reduced fraction.
    pub fn value(&self) -> BigRational {
        self.ratio() + BigRational::from_integer(BigInt::from(self.additive))
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.value())
    }

    /// Whether the integer `v` is at most this bound.
    pub fn admits(&self, v: u64) -> bool {
        BigRational::from_integer(BigInt::from(v)) <= self.value()
    }
}

impl fmt::Display for RationalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)?;
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)?;
        }
        match self.additive.cmp(&0) {
            Ordering::Greater => write!(f, " + {}", self.additive),
            Ordering::Less => write!(f, " - {}", -self.additive),
            Ordering::Equal => Ok(()),
        }
    }
}

impl Serialize for RationalBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalBound", 4)?;
        st.serialize_field("numerator", &self.numerator.to_string())?;
        st.serialize_field("denominator", &self.denominator.to_string())?;
        st.serialize_field("additive", &self.additive)?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

pub(crate) fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub(crate) fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // scale both down so the quotient survives the conversion
            let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Serializes a rational as the string `"num/den"` (or `"num"` when integral).
pub fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact comparison of a nonnegative `c` with `base^exponent`, for a base
/// `>= 2` and any rational exponent.
pub fn cmp_base_pow(c: &BigRational, base: u32, exponent: &BigRational) -> Ordering {
    assert!(base >= 2, "base must be at least 2");
    if !c.is_positive() {
        return Ordering::Less;
    }
    // compare c^b with base^a, where exponent = a/b and b > 0
    let a = exponent.numer();
    let b = exponent.denom().to_u32().expect("exponent denominator too large");
    let lhs = num_traits::pow(c.clone(), b as usize);
    let base_r = int(base);
    let rhs = if a.is_negative() {
        let e = (-a).to_u64().expect("exponent numerator too large");
        num_traits::pow(base_r, e as usize).recip()
    } else {
        let e = a.to_u64().expect("exponent numerator too large");
        num_traits::pow(base_r, e as usize)
    };
    lhs.cmp(&rhs)
}

/// `c <= base^exponent`, exactly.
pub fn le_base_pow(c: &BigRational, base: u32, exponent: &BigRational) -> bool {
    cmp_base_pow(c, base, exponent) != Ordering::Greater
}

/// `c >= base^exponent`, exactly.
pub fn ge_base_pow(c: &BigRational, base: u32, exponent: &BigRational) -> bool {
    cmp_base_pow(c, base, exponent) != Ordering::Less
}

/// Exact test of `count <= factor * 2^exponent` with `factor > 0`.
pub fn le_scaled_pow2(count: &BigUint, factor: &BigRational, exponent: &BigRational) -> bool {
    assert!(factor.is_positive(), "factor must be positive");
    let c = BigRational::from_integer(BigInt::from(count.clone())) / factor;
    le_base_pow(&c, 2, exponent)
}

/// Rational interval containing `ln(x)` for a rational `x > 0`, from
/// `ln x = 2 atanh(z)` with `z = (x - 1)/(x + 1)` summed to `terms` terms;
/// the ends add a geometric bound on the remaining tail.
pub fn ln_enclosure(x: &BigRational, terms: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "ln needs a positive argument");
    let one = int(1);
    let z = (x - &one) / (x + &one);
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = int(0);
    for k in 0..terms {
        sum += &power / int(2 * k + 1);
        power *= &z2;
    }
    // |tail| <= |z|^(2N+1) / ((2N+1)(1 - z^2))
    let tail = power.abs() / (int(2 * terms + 1) * (&one - &z2));
    let two = int(2);
    let (lo, hi) = (&sum - &tail, &sum + &tail);
    (&two * lo, &two * hi)
}

/// Rational interval containing `log_base(target)`, for `base >= 2`, `target >= 1`.
pub fn log_enclosure(base: u32, target: u32, terms: u32) -> (BigRational, BigRational) {
    assert!(base >= 2 && target >= 1);
    let (t_lo, t_hi) = ln_enclosure(&int(target), terms);
    let (b_lo, b_hi) = ln_enclosure(&int(base), terms);
    assert!(b_lo.is_positive(), "too few terms to separate ln(base) from 0");
    let lo = if t_lo.is_negative() { t_lo / &b_lo } else { t_lo / &b_hi };
    let hi = if t_hi.is_negative() { t_hi / &b_hi } else { t_hi / &b_lo };
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bound_is_reduced_and_displays() {
        let b = RationalBound::new(30, 44, 0);
        assert_eq!(b.numerator(), &BigInt::from(15));
        assert_eq!(b.denominator(), &BigInt::from(22));
        assert_eq!(b.to_string(), "15/22");
        assert_eq!(RationalBound::new(-6, -4, 2).to_string(), "3/2 + 2");
        assert_eq!(RationalBound::new(7, 1, -1).value(), int(6));
        assert!(RationalBound::new(29, 2, 0).admits(14));
        assert!(!RationalBound::new(29, 2, 0).admits(15));
    }

    #[test]
    fn power_comparisons() {
        // 3^(6/3) = 9
        assert!(le_base_pow(&int(9), 3, &ratio(6, 3)));
        assert!(!le_base_pow(&int(10), 3, &ratio(6, 3)));
        // 2^(-1) = 1/2
        assert!(le_base_pow(&ratio(1, 2), 2, &int(-1)));
        assert!(!le_base_pow(&ratio(3, 5), 2, &int(-1)));
        // 2^(1/2) ~ 1.414
        assert!(le_base_pow(&ratio(141, 100), 2, &ratio(1, 2)));
        assert!(!le_base_pow(&ratio(142, 100), 2, &ratio(1, 2)));
        assert!(le_scaled_pow2(&BigUint::from(4u32), &ratio(4, 3), &int(2)));
        assert!(!le_scaled_pow2(&BigUint::from(4u32), &ratio(4, 3), &ratio(1, 2)));
        assert!(ge_base_pow(&int(8), 2, &int(3)));
        assert!(!ge_base_pow(&int(7), 2, &int(3)));
        assert!(ge_base_pow(&int(1), 3, &ratio(-2, 7)));
    }

    #[test]
    fn log_enclosure_brackets_float_value() {
        let (lo, hi) = log_enclosure(3, 8, 60);
        let a = 8f64.ln() / 3f64.ln();
        assert!(ratio_to_f64(&lo) <= a + 1e-12 && a - 1e-12 <= ratio_to_f64(&hi));
        assert!(&hi - &lo <= ratio(1, 1u64 << 40));
        // 3^lo < 8 < 3^hi, checked exactly on coarse rationals around the interval
        let (lo_c, hi_c) = (ratio(1892, 1000), ratio(1893, 1000));
        assert!(lo_c <= lo && hi <= hi_c);
        assert!(!ge_base_pow(&int(8), 3, &hi_c) && ge_base_pow(&int(8), 3, &lo_c));
    }

    proptest! {
        #[test]
        fn integer_powers_agree_with_direct_computation(c in 0u64..5000, base in 2u32..6, e in 0u32..8) {
            let direct = (c as u128) <= (base as u128).pow(e);
            prop_assert_eq!(le_base_pow(&int(c), base, &int(e)), direct);
        }

        #[test]
        fn root_comparison_is_power_comparison(c in 0u64..200, v in 0u32..30) {
            // c <= 3^(v/3)  <=>  c^3 <= 3^v
            let direct = (c as u128).pow(3) <= 3u128.pow(v);
            prop_assert_eq!(le_base_pow(&int(c), 3, &ratio(v, 3)), direct);
        }
    }
}
