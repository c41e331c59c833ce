use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// `⌈d · r^{10√r}⌉`, exact.
///
/// For a perfect square `r` the value is an integer. Otherwise it is
/// transcendental and is bracketed by rational intervals of shrinking width
/// until both ends share the same ceiling.
pub fn rank_bound(d: u32, r: u32) -> BigInt {
    let d_big = BigInt::from(d);
    if r <= 1 {
        return d_big;
    }
    let root = r.isqrt();
    if root * root == r {
        return d_big * BigInt::from(r).pow(10 * root);
    }
    let mut bits = 64u32;
    loop {
        let (lo, hi) = bound_interval(d, r, bits);
        let (clo, chi) = (ceil(&lo), ceil(&hi));
        if clo == chi {
            return clo;
        }
        bits *= 2;
    }
}

fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

fn grid(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(q: &Rational, bits: u32) -> Rational {
    let g = grid(bits);
    Rational::new((q * Rational::from_integer(g.clone())).floor().to_integer(), g)
}

fn round_up(q: &Rational, bits: u32) -> Rational {
    let g = grid(bits);
    Rational::new((q * Rational::from_integer(g.clone())).ceil().to_integer(), g)
}

/// Interval containing `2 atanh(y)` for `0 ≤ y ≤ 1/3`.
fn two_atanh(y: &Rational, bits: u32) -> (Rational, Rational) {
    let y2 = y * y;
    let mut term = y.clone();
    let mut sum = Rational::zero();
    let mut k = 0u32;
    let eps = Rational::new(BigInt::one(), grid(bits + 4));
    loop {
        sum += &term / Rational::from_integer(BigInt::from(2 * k + 1));
        term = round_up(&(&term * &y2), bits + 8);
        k += 1;
        // remaining terms are below term / (1 - y²)
        let tail = &term / (Rational::one() - &y2);
        if tail < eps {
            let lo = round_down(&(&sum * Rational::from_integer(2.into())), bits);
            let hi = round_up(&((&sum + &tail) * Rational::from_integer(2.into())), bits);
            // the rounded-up term makes `sum` an over-estimate by at most k·2^-(bits+8)
            let slack = Rational::new(BigInt::from(2 * k), grid(bits + 8));
            return (lo - slack, hi);
        }
    }
}

/// Interval containing `ln r`, `r ≥ 2`.
fn ln_interval(r: u32, bits: u32) -> (Rational, Rational) {
    let third = Rational::new(1.into(), 3.into());
    let (l2lo, l2hi) = two_atanh(&third, bits);
    let k = 31 - r.leading_zeros();
    let m = Rational::new(r.into(), (1u64 << k).into());
    let y = (&m - Rational::one()) / (&m + Rational::one());
    let (lmlo, lmhi) = two_atanh(&y, bits);
    let kk = Rational::from_integer(k.into());
    (&kk * l2lo + lmlo, kk * l2hi + lmhi)
}

/// Interval containing `exp(x)` for `x ≥ 0`.
fn exp_interval(x: &Rational, bits: u32) -> (Rational, Rational) {
    // reduce to y = x / 2^j ≤ 1/2, then square j times
    let mut j = 0u32;
    let mut y = x.clone();
    let half = Rational::new(1.into(), 2.into());
    while y > half {
        y /= Rational::from_integer(2.into());
        j += 1;
    }
    let work = bits + 2 * j + 16;
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut i = 0u32;
    let eps = Rational::new(BigInt::one(), grid(work));
    let (mut lo, mut hi) = loop {
        sum += &term;
        i += 1;
        term = &term * &y / Rational::from_integer(i.into());
        // tail Σ_{m ≥ i} y^m/m! ≤ term / (1 - y/(i+1)) ≤ 2·term
        if term < eps {
            let tail = &term * Rational::from_integer(2.into());
            break (round_down(&sum, work), round_up(&(&sum + tail), work));
        }
    };
    for _ in 0..j {
        lo = round_down(&(&lo * &lo), work);
        hi = round_up(&(&hi * &hi), work);
    }
    (lo, hi)
}

fn bound_interval(d: u32, r: u32, bits: u32) -> (Rational, Rational) {
    let g = grid(bits);
    let scaled = BigInt::from(r) * &g * &g;
    let s = scaled.sqrt();
    let sqrt_lo = Rational::new(s.clone(), g.clone());
    let sqrt_hi = Rational::new(s + 1, g);
    let (ln_lo, ln_hi) = ln_interval(r, bits);
    let ten = Rational::from_integer(10.into());
    let e_lo = round_down(&(&ten * sqrt_lo * ln_lo), bits);
    let e_hi = round_up(&(&ten * sqrt_hi * ln_hi), bits);
    debug_assert!(!e_lo.is_negative());
    let (x_lo, _) = exp_interval(&e_lo, bits);
    let (_, x_hi) = exp_interval(&e_hi, bits);
    let dq = Rational::from_integer(d.into());
    (&dq * x_lo, dq * x_hi)
}

/// Floating-point estimate of `d · r^{10√r}`, for display only.
pub fn rank_bound_f64(d: u32, r: u32) -> f64 {
    let r = f64::from(r);
    f64::from(d) * r.powf(10.0 * r.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn to_f64(q: &Rational) -> f64 {
        q.to_f64().unwrap()
    }

    #[test]
    fn trivial_and_square_cases() {
        assert_eq!(rank_bound(3, 1), BigInt::from(3));
        assert_eq!(rank_bound(1, 1), BigInt::from(1));
        // 4^20 · 5
        assert_eq!(rank_bound(5, 4), BigInt::from(5u64 << 40));
    }

    #[test]
    fn agrees_with_floating_point() {
        for (d, r) in [(3u32, 2u32), (1, 2), (3, 3), (2, 5), (7, 6)] {
            let exact = rank_bound(d, r).to_f64().unwrap();
            let approx = rank_bound_f64(d, r);
            assert!((exact - approx).abs() <= approx * 1e-9 + 1.0, "{d} {r}");
        }
    }

    #[test]
    fn certified_ceilings() {
        // reference values from 50-digit evaluation
        assert_eq!(rank_bound(3, 2), BigInt::from(54242));
        assert_eq!(rank_bound(1, 2), BigInt::from(18081));
        assert_eq!(rank_bound(3, 3), BigInt::from(550939360));
        assert_eq!(rank_bound(2, 5), BigInt::from(8520683523014866u64));
    }

    #[test]
    fn interval_brackets() {
        let (lo, hi) = ln_interval(2, 80);
        assert!(lo < hi);
        assert!((to_f64(&lo) - std::f64::consts::LN_2).abs() < 1e-15);
        let (lo, hi) = exp_interval(&Rational::from_integer(3.into()), 80);
        assert!(lo <= hi);
        assert!((to_f64(&lo) - 3f64.exp()).abs() < 1e-12);
    }
}
