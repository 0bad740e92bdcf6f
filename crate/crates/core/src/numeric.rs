//! Log-space helpers shared by the closed-form predictions.
//!
//! Every probability that can under- or overflow in `f64` is carried as a
//! natural logarithm until the last step. Exponent arguments below
//! [`EXP_FLOOR`] are mapped to an exact zero.

use statrs::function::factorial::ln_factorial;
use statrs::function::gamma::ln_gamma;

/// Exponent arguments below this value evaluate to exactly 0.
pub const EXP_FLOOR: f64 = -700.0;

/// Largest `n` for which binomial coefficients are computed in exact integer
/// arithmetic before taking the logarithm.
const EXACT_CHOOSE_MAX: u64 = 66;

/// `exp(x)`, or 0 when `x < EXP_FLOOR`.
#[inline]
pub fn exp_floor(x: f64) -> f64 {
    if x < EXP_FLOOR {
        0.0
    } else {
        x.exp()
    }
}

fn choose_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1) at every step.
        c = c * u128::from(n - i) / u128::from(i + 1);
    }
    c
}

/// Natural log of `C(n, k)`; `-inf` when `k > n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    if k == 0 {
        return 0.0;
    }
    if n <= EXACT_CHOOSE_MAX {
        return (choose_u128(n, k) as f64).ln();
    }
    if k <= 256 {
        let falling: f64 = (0..k).map(|i| ((n - i) as f64).ln()).sum();
        return falling - ln_factorial(k);
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `C(n, k)` as a float. Exact (up to the final rounding) for `n <= 66`.
pub fn choose(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    if n <= EXACT_CHOOSE_MAX {
        return choose_u128(n, k) as f64;
    }
    exp_floor(ln_choose(n, k))
}

/// Natural log of the multinomial coefficient `n! / (k_1! ... k_j!)` where
/// `n = sum(k_i)`.
pub fn ln_multinomial(parts: &[u64]) -> f64 {
    let n: u64 = parts.iter().sum();
    ln_factorial(n) - parts.iter().map(|&k| ln_factorial(k)).sum::<f64>()
}

/// Log of the Binomial(trials, p) pmf at `k`.
pub fn ln_binomial_pmf(trials: u64, p: f64, k: u64) -> f64 {
    if k > trials {
        return f64::NEG_INFINITY;
    }
    if p <= 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if p >= 1.0 {
        return if k == trials { 0.0 } else { f64::NEG_INFINITY };
    }
    let rest = (trials - k) as f64;
    let tail = if rest == 0.0 { 0.0 } else { rest * (-p).ln_1p() };
    ln_choose(trials, k) + k as f64 * p.ln() + tail
}

/// `ln(sum(exp(x_i)))`, stable for large magnitudes. Empty input gives `-inf`.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    if max == f64::INFINITY {
        return max;
    }
    max + terms.iter().map(|&t| (t - max).exp()).sum::<f64>().ln()
}

/// `1 - (1 - p)^m` without cancellation for tiny `p`.
#[inline]
pub fn hit_probability(p: f64, trials: f64) -> f64 {
    if p >= 1.0 {
        return 1.0;
    }
    -(trials * (-p).ln_1p()).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn small_binomials_are_exact() {
        assert_eq!(choose(4, 2), 6.0);
        assert_eq!(choose(4, 4), 1.0);
        assert_eq!(choose(4, 5), 0.0);
        assert_eq!(choose(42, 21), 538_257_874_440.0);
        assert_eq!(choose(66, 33), 7_219_428_434_016_265_740.0);
    }

    #[test]
    fn log_forms_match_direct_products() {
        // Pascal-triangle oracle up to n = 100 in f64.
        let mut row = vec![1.0f64];
        for n in 1..=100u64 {
            let mut next = vec![1.0; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for k in 0..=n {
                let got = ln_choose(n, k).exp();
                assert!(rel(got, row[k as usize]) < 1e-10, "C({n},{k})");
            }
        }
    }

    #[test]
    fn large_binomials_agree_across_branches() {
        // k = 256 uses the falling-factorial branch, k = 257 log-gamma; the
        // ratio C(n,257)/C(n,256) = (n-256)/257 ties them together.
        let n = 1u64 << 20;
        let ratio = (ln_choose(n, 257) - ln_choose(n, 256)).exp();
        assert!(rel(ratio, (n - 256) as f64 / 257.0) < 1e-8);
    }

    #[test]
    fn binomial_pmf_normalizes() {
        let total: f64 = (0..=40).map(|k| ln_binomial_pmf(40, 0.3, k).exp()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(ln_binomial_pmf(5, 0.0, 0), 0.0);
        assert_eq!(ln_binomial_pmf(5, 1.0, 5), 0.0);
        assert!(ln_binomial_pmf(5, 0.5, 6).is_infinite());
    }

    #[test]
    fn binomial_pmf_matches_direct_product() {
        let (m, p, k) = (30u64, 0.2f64, 7u64);
        let direct = choose(m, k) * p.powi(k as i32) * (1.0 - p).powi((m - k) as i32);
        assert!(rel(ln_binomial_pmf(m, p, k).exp(), direct) < 1e-12);
    }

    #[test]
    fn multinomial_matches_factorials() {
        // 10! / (2! 3! 4! 1!) = 12600
        assert!(rel(ln_multinomial(&[2, 3, 4, 1]).exp(), 12600.0) < 1e-12);
    }

    #[test]
    fn log_sum_exp_handles_extremes() {
        assert_eq!(log_sum_exp(Vec::new()), f64::NEG_INFINITY);
        let v = log_sum_exp([-1000.0, -1000.0]);
        assert!((v - (-1000.0 + 2f64.ln())).abs() < 1e-12);
        assert!((log_sum_exp([0.0, 0.0f64.ln_1p()]) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn exp_floor_underflows_to_zero() {
        assert_eq!(exp_floor(-700.5), 0.0);
        assert!(exp_floor(-699.0) > 0.0);
    }

    #[test]
    fn hit_probability_small_p() {
        let p = 1e-18;
        assert!(rel(hit_probability(p, 1000.0), 1e-15) < 1e-9);
        assert_eq!(hit_probability(0.5, 1.0), 0.5);
    }
}
