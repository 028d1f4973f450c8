//! Prime-power recognition for 64-bit moduli.

const TRIAL_LIMIT: u64 = 1 << 20;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn exact_root(n: u64, k: u32) -> Option<u64> {
    let guess = (n as f64).powf(1.0 / k as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(k) == Some(n))
}

/// `Some((p, n))` with `q = pⁿ`, `p` prime; `None` otherwise.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p < TRIAL_LIMIT && p * p <= q {
        if q % p == 0 {
            let (mut m, mut n) = (q, 0);
            while m % p == 0 {
                m /= p;
                n += 1;
            }
            return (m == 1).then_some((p, n));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // every prime factor exceeds the trial limit, so at most three of them
    if is_prime(q) {
        return Some((q, 1));
    }
    for k in [2, 3] {
        if let Some(r) = exact_root(q, k) {
            if is_prime(r) {
                return Some((r, k));
            }
        }
    }
    None
}

/// `√q` when `q` is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    exact_root(q, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_match_naive_factorisation() {
        for q in 0u64..5000 {
            let naive = (2..=q).find(|d| q % d == 0).and_then(|p| {
                let mut m = q;
                let mut n = 0;
                while m % p == 0 {
                    m /= p;
                    n += 1;
                }
                (m == 1).then_some((p, n))
            });
            assert_eq!(prime_power(q), naive, "q = {q}");
        }
    }

    #[test]
    fn large_values() {
        let p = 4_294_967_291u64; // largest prime below 2³²
        assert_eq!(prime_power(p), Some((p, 1)));
        assert_eq!(prime_power(p * p), Some((p, 2)));
        assert_eq!(prime_power(2_097_143u64.pow(3)), Some((2_097_143, 3)));
        assert_eq!(prime_power(p * 4_294_967_279), None);
        assert_eq!(prime_power(1 << 63), Some((2, 63)));
        assert_eq!(exact_sqrt(49), Some(7));
        assert_eq!(exact_sqrt(50), None);
    }
}
