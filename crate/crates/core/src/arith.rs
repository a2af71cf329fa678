//! Small elementary number theory helpers.

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut big: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    out.append(&mut big);
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(euler_phi(14), 6);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(lcm(4, 6), 12);
    }
}
