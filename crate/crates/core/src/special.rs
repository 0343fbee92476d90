//! Special functions for the transverse beam profiles.

use crate::scalar::Scalar;

/// Starting order for Miller's backward recurrence at order `n`, argument `x`.
fn miller_start<T: Scalar>(n: u32, x: T) -> u32 {
    let top = x.abs().max(T::lit(f64::from(n))).as_f64();
    let m = top + 30.0 + 10.0 * top.sqrt();
    // even start keeps the normalization sum aligned
    2 * ((m as u32) / 2 + 1)
}

/// Bessel function of the first kind `J_n(x)` for integer `n`.
///
/// Miller's backward recurrence normalized by `J_0 + 2ΣJ_{2k} = 1`.
pub fn bessel_j<T: Scalar>(n: i32, x: T) -> T {
    let order = n.unsigned_abs();
    // J_{−n} = (−1)^n J_n and J_n(−x) = (−1)^n J_n(x)
    let mut sign = T::one();
    if n < 0 && order % 2 == 1 {
        sign = -sign;
    }
    if x < T::zero() && order % 2 == 1 {
        sign = -sign;
    }
    let x = x.abs();
    if x == T::zero() {
        return if order == 0 { sign } else { T::zero() };
    }

    let big = T::max_value().sqrt();
    let small = T::one() / big;
    let two_over_x = T::lit(2.0) / x;
    let m = miller_start(order, x);

    let mut next = T::zero(); // J_{k+1}
    let mut cur = small; // J_k
    let mut sum = T::zero();
    let mut result = T::zero();
    for k in (1..=m).rev() {
        if k % 2 == 0 {
            sum = sum + cur;
        }
        if k == order {
            result = cur;
        }
        let prev = T::lit(f64::from(k)) * two_over_x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > big {
            cur = cur * small;
            next = next * small;
            sum = sum * small;
            result = result * small;
        }
    }
    if order == 0 {
        result = cur;
    }
    let norm = T::lit(2.0) * sum + cur;
    sign * result / norm
}

/// Exponentially scaled modified Bessel function `e^{−x} I_n(x)` for `x ≥ 0`.
///
/// Backward recurrence normalized by `I_0 + 2ΣI_k = e^x`.
pub fn bessel_i_scaled<T: Scalar>(n: i32, x: T) -> T {
    let order = n.unsigned_abs();
    let x = x.abs();
    if x == T::zero() {
        return if order == 0 { T::one() } else { T::zero() };
    }
    let big = T::max_value().sqrt();
    let small = T::one() / big;
    let two_over_x = T::lit(2.0) / x;
    let m = miller_start(order, x);

    let mut next = T::zero();
    let mut cur = small;
    let mut sum = T::zero();
    let mut result = T::zero();
    for k in (1..=m).rev() {
        sum = sum + cur;
        if k == order {
            result = cur;
        }
        let prev = T::lit(f64::from(k)) * two_over_x * cur + next;
        next = cur;
        cur = prev;
        if cur.abs() > big {
            cur = cur * small;
            next = next * small;
            sum = sum * small;
            result = result * small;
        }
    }
    if order == 0 {
        result = cur;
    }
    result / (T::lit(2.0) * sum + cur)
}

/// Generalized Laguerre polynomial `L_p^a(x)`.
pub fn laguerre<T: Scalar>(p: u32, a: T, x: T) -> T {
    let mut prev = T::one();
    if p == 0 {
        return prev;
    }
    let mut cur = T::one() + a - x;
    for k in 1..p {
        let kf = T::lit(f64::from(k));
        let next = ((T::lit(2.0) * kf + T::one() + a - x) * cur - (kf + a) * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `p! / (p + m)!` as a product, without forming either factorial.
pub fn factorial_ratio<T: Scalar>(p: u32, m: u32) -> T {
    (p + 1..=p + m).fold(T::one(), |acc, k| acc / T::lit(f64::from(k)))
}
