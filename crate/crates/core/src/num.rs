//! Scalar-generic counting: Gaussian binomial coefficients and `q`-numbers.

use num_traits::{FromPrimitive, Num};

/// Integer types usable for exact subspace counts.
///
/// Implemented for the primitive integers (which overflow on large inputs)
/// and for `BigUint`/`BigInt` (which do not).
pub trait CountScalar: Clone + Num + FromPrimitive {}

impl<T: Clone + Num + FromPrimitive> CountScalar for T {}

fn lift<T: CountScalar>(x: u64) -> T {
    T::from_u64(x).expect("small integer fits every count scalar")
}

/// `q^e` in the scalar type.
pub fn q_power<T: CountScalar>(q: u32, e: usize) -> T {
    let base: T = lift(q as u64);
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

/// Number of `k`-subspaces of `F_q^v`; zero when `k` lies outside `0..=v`.
///
/// Evaluated with the `q`-Pascal recurrence
/// `[n, j] = [n-1, j-1] + q^j [n-1, j]`, so no division is ever performed.
pub fn gaussian_binomial<T: CountScalar>(v: i64, k: i64, q: u32) -> T {
    if v < 0 || k < 0 || k > v {
        return T::zero();
    }
    let (v, k) = (v as usize, k as usize);
    // row[j] holds [n, j] for the current n.
    let mut row: Vec<T> = vec![T::zero(); k + 1];
    row[0] = T::one();
    for n in 1..=v {
        for j in (1..=k.min(n)).rev() {
            let stay = q_power::<T>(q, j) * row[j].clone();
            row[j] = row[j - 1].clone() + stay;
        }
    }
    row[k].clone()
}

/// The `q`-analog `[v]_q` of the number `v`.
pub fn q_number<T: CountScalar>(v: i64, q: u32) -> T {
    gaussian_binomial(v, 1, q)
}

/// Lossy `u64` view of a Gaussian binomial used by enumeration guards;
/// saturates instead of overflowing.
pub fn gaussian_binomial_saturating(v: usize, k: usize, q: u32) -> u64 {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    gaussian_binomial::<BigUint>(v as i64, k as i64, q)
        .to_u64()
        .unwrap_or(u64::MAX)
}
