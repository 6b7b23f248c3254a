//! Small integer helpers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True when `n` is `r^k` for some `k >= 0`.
pub fn is_prime_power_of(mut n: u64, r: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(r) {
        n /= r;
    }
    n == 1
}

/// `(b, e)` with `n = b^e`, `b` prime, or `None`.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    let ps = prime_divisors(n);
    if ps.len() != 1 {
        return None;
    }
    let mut e = 0;
    let mut m = n;
    while m > 1 {
        m /= ps[0];
        e += 1;
    }
    Some((ps[0], e))
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `m`; requires `gcd(a, m) = 1`.
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_divisors(52), vec![2, 13]);
        assert_eq!(as_prime_power(9), Some((3, 2)));
        assert_eq!(as_prime_power(12), None);
        assert!(is_prime_power_of(1, 5) && is_prime_power_of(25, 5) && !is_prime_power_of(10, 5));
        assert_eq!(mult_order(5, 13), 4);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(pow_mod(5, 4, 13), 1);
    }
}
