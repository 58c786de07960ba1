//! Small integer arithmetic helpers (orders stay well below 2^64 in practice,
//! but products of orbit lengths are accumulated in u128 to be safe).

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(n: u128) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// The set of primes dividing `n`, increasing.
pub fn prime_divisors(n: u128) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n as u128) == vec![(n, 1)]
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u64) -> u128 {
    let mut n = n;
    let mut out: u128 = 1;
    while n % p as u128 == 0 {
        n /= p as u128;
        out *= p as u128;
    }
    out
}
