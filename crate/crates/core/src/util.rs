use num_bigint::BigUint;
use num_traits::ToPrimitive;

const KEEP_BITS: u64 = 64;

fn top_bits(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= KEEP_BITS {
        (x.to_u64().expect("fits in 64 bits") as f64, 0)
    } else {
        let shift = bits - KEEP_BITS;
        let top = (x >> shift).to_u64().expect("fits in 64 bits");
        (top as f64, shift as i64)
    }
}

/// `num / den` as the nearest double up to a relative error of a few ulps,
/// for operands of any size. `den` must be nonzero.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(den.bits() > 0, "division by zero");
    let (n, sn) = top_bits(num);
    let (d, sd) = top_bits(den);
    let exp = (sn - sd).clamp(-2000, 2000) as i32;
    n / d * 2f64.powi(exp)
}
