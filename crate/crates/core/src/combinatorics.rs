//! Exact factorials and binomials.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::scalar::Rational;

const TABLE_SIZE: usize = 64;

fn table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_SIZE);
        t.push(BigInt::one());
        for k in 1..TABLE_SIZE {
            let next = &t[k - 1] * BigInt::from(k);
            t.push(next);
        }
        t
    })
}

pub fn factorial(k: usize) -> BigInt {
    match table().get(k) {
        Some(f) => f.clone(),
        None => (TABLE_SIZE..=k).fold(table()[TABLE_SIZE - 1].clone(), |acc, i| acc * BigInt::from(i)),
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// `a / b` as an exact rational.
pub fn frac(a: BigInt, b: BigInt) -> Rational {
    Rational::new(a, b)
}
