//! Orders of `Sp_{2m}(2)` and `O^±_{2m}(2)`.

use num_bigint::BigUint;
use num_traits::One;

use super::Sign;

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e as usize
}

/// `∏_{i=1}^{k} (2^{2i} − 1)`.
fn product_of_even_mersennes(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * (pow2(2 * i) - 1u32))
}

/// `|Sp_{2m}(2)| = 2^{m²} ∏_{i=1}^{m} (2^{2i} − 1)`.
pub fn sp_order(m: u32) -> BigUint {
    pow2(m * m) * product_of_even_mersennes(m)
}

/// `|O^{ε'}_{2m}(2)| = 2 · 2^{m(m−1)} (2^m − ε') ∏_{i=1}^{m−1} (2^{2i} − 1)`.
pub fn o_order(m: u32, sign: Sign) -> BigUint {
    assert!(m >= 1, "o_order needs m ≥ 1");
    let middle = match sign {
        Sign::Plus => pow2(m) - 1u32,
        Sign::Minus => pow2(m) + 1u32,
    };
    pow2(1 + m * (m - 1)) * middle * product_of_even_mersennes(m - 1)
}
