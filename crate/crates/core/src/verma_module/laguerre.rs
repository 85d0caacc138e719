use crate::exact_algebra::{LaurentPoly, Scalar};

/// `L_n^α(x)` from the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`, so negative integer
/// `α` needs no Gamma values.
pub fn laguerre(n: u32, alpha: &Scalar, x: &LaurentPoly) -> LaurentPoly {
    let one = LaurentPoly::one();
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = &LaurentPoly::constant(&Scalar::from_int(1) + alpha) - x;
    for k in 1..n {
        let k_s = Scalar::from_int(k as i64);
        let lin = &LaurentPoly::constant(&(&k_s.scale_int(2) + &Scalar::from_int(1)) + alpha) - x;
        let next = &(&lin * &cur) - &prev.scale(&(&k_s + alpha));
        let next = next.scale(&Scalar::ratio(1, k as i64 + 1));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `Π_{t=lo}^{hi} (α + t)`, one when `lo > hi`.
pub fn rising(alpha: &Scalar, lo: i64, hi: i64) -> Scalar {
    (lo..=hi).fold(Scalar::from_int(1), |acc, t| &acc * &(alpha + &Scalar::from_int(t)))
}

pub fn factorial(n: u32) -> Scalar {
    (1..=n as i64).fold(Scalar::from_int(1), |acc, t| acc.scale_int(t))
}
