//! Small integer helpers.

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
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

/// Largest divisor of `n` whose prime factors all lie in `primes`.
pub fn pi_part(mut n: usize, primes: &[usize]) -> usize {
    let mut part = 1;
    for &p in primes {
        if p < 2 {
            continue;
        }
        while n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
    }
    part
}

pub fn is_pi_number(n: usize, primes: &[usize]) -> bool {
    n >= 1 && pi_part(n, primes) == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_parts() {
        assert_eq!(pi_part(15, &[3]), 3);
        assert_eq!(pi_part(147, &[7]), 49);
        assert_eq!(pi_part(147, &[2, 5]), 1);
        assert!(is_pi_number(1, &[]));
        assert!(is_pi_number(21, &[3, 7]));
        assert!(!is_pi_number(21, &[3]));
        assert_eq!(prime_divisors(75), vec![3, 5]);
        assert_eq!(prime_divisors(1), Vec::<usize>::new());
        assert_eq!(lcm(4, 6), 12);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
