//! Conversions between little-endian digit vectors in an arbitrary radix and
//! unbounded integers.

use num_bigint::BigUint;

/// `Σ digits[i] · radix^i`.
pub fn from_digits(digits: &[u32], radix: u32) -> BigUint {
    debug_assert!(radix >= 2);
    // Horner over base-2^32 limbs, most significant digit first.
    let mut limbs: Vec<u32> = Vec::new();
    for &d in digits.iter().rev() {
        let mut carry = d as u64;
        for limb in limbs.iter_mut() {
            let v = *limb as u64 * radix as u64 + carry;
            *limb = v as u32;
            carry = v >> 32;
        }
        if carry != 0 {
            limbs.push(carry as u32);
        }
    }
    BigUint::new(limbs)
}

/// Exactly `width` little-endian digits of `value` in `radix`, or `None` when
/// `value ≥ radix^width`.
pub fn to_digits(value: &BigUint, radix: u32, width: usize) -> Option<Vec<u32>> {
    debug_assert!(radix >= 2);
    let mut limbs = value.to_u32_digits();
    let mut digits = Vec::with_capacity(width);
    for _ in 0..width {
        let mut rem = 0u64;
        for limb in limbs.iter_mut().rev() {
            let cur = (rem << 32) | *limb as u64;
            *limb = (cur / radix as u64) as u32;
            rem = cur % radix as u64;
        }
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        digits.push(rem as u32);
    }
    limbs.is_empty().then_some(digits)
}
