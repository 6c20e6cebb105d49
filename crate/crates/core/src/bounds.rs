//! Arithmetic bounds on finite subgroups of GL(n, Q).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::is_prime;

/// Exponent of the largest power of `p` dividing the order of a finite
/// subgroup of GL(n, Q): `sum_j floor(n / (p^j (p - 1)))`.
pub fn e_bound(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pj = 1u64;
    loop {
        let d = pj * (p - 1);
        if d > n {
            return total;
        }
        total += n / d;
        pj *= p;
    }
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Least n such that a cyclic group of order `m` embeds in GL(n, Q).
pub fn min_degree_cyclic(m: u64) -> u64 {
    if m <= 2 {
        return 0;
    }
    let s: u64 = factorize(m)
        .iter()
        .map(|&(p, k)| p.pow(k - 1) * (p - 1))
        .sum();
    if m % 4 == 2 {
        s - 1
    } else {
        s
    }
}

/// `|SL(d, p)| = p^(d(d-1)/2) prod_{i=2..d} (p^i - 1)`.
pub fn sl_order(d: u32, p: u64) -> BigInt {
    let bp = BigInt::from(p);
    let mut r = bp.pow(d * d.saturating_sub(1) / 2);
    for i in 2..=d {
        r *= bp.pow(i) - BigInt::one();
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdReport {
    pub gcd: BigInt,
    pub primes: Vec<u64>,
    /// The gcd did not change over the second half of the primes.
    pub stable: bool,
}

/// gcd of `|SL(d, p)|` over the first `count` odd primes `p > m`.
pub fn gcd_sl_orders(d: u32, m: u64, count: usize) -> Result<GcdReport> {
    if count < 2 {
        return Err(Error::Contract("at least two primes are needed".into()));
    }
    let mut primes = Vec::with_capacity(count);
    let mut p = m + 1;
    while primes.len() < count {
        if p > 2 && is_prime(p as usize) {
            primes.push(p);
        }
        p += 1;
    }
    let mut g = BigInt::zero();
    let mut half_value = BigInt::zero();
    for (i, &p) in primes.iter().enumerate() {
        g = g.gcd(&sl_order(d, p));
        if i + 1 == count / 2 {
            half_value = g.clone();
        }
    }
    Ok(GcdReport {
        stable: g == half_value,
        gcd: g,
        primes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// PSL(2, 2^p), p prime.
    Psl2Even,
    /// PSL(2, 3^p), p odd prime.
    Psl2Three,
    /// PSL(2, p), p > 3 prime with p = ±2 mod 5.
    Psl2Prime,
    /// Sz(2^p), p odd prime.
    Suzuki,
    Psl33,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCandidate {
    pub family: Family,
    pub parameter: u64,
    pub name: String,
    pub cyclic_orders: Vec<u64>,
    pub has_order_13: bool,
}

fn candidate(family: Family, parameter: u64) -> SimpleCandidate {
    let (name, cyclic_orders) = match family {
        Family::Psl2Even => {
            let q = 1u64 << parameter;
            let name = match q {
                4 => "A5".to_string(),
                8 => "SL(2,8)".to_string(),
                _ => format!("PSL(2,{q})"),
            };
            (name, vec![2, q - 1, q + 1])
        }
        Family::Psl2Three => {
            let q = 3u64.pow(parameter as u32);
            (format!("PSL(2,{q})"), vec![3, (q - 1) / 2, q.div_ceil(2)])
        }
        Family::Psl2Prime => {
            let p = parameter;
            (format!("PSL(2,{p})"), vec![p, (p - 1) / 2, p.div_ceil(2)])
        }
        Family::Suzuki => {
            let p = parameter as u32;
            let q = 1u64 << p;
            let s = 1u64 << p.div_ceil(2);
            (format!("Sz({q})"), vec![4, q - 1, q + s + 1, q - s + 1])
        }
        Family::Psl33 => ("PSL(3,3)".to_string(), vec![8, 13]),
    };
    let has_order_13 = cyclic_orders.iter().any(|c| c % 13 == 0);
    SimpleCandidate {
        family,
        parameter,
        name,
        cyclic_orders,
        has_order_13,
    }
}

/// The minimal simple groups (parameters relevant through dimension 14).
pub fn minimal_simple_groups() -> Vec<SimpleCandidate> {
    let mut out = Vec::new();
    for p in [2, 3, 5, 7] {
        out.push(candidate(Family::Psl2Even, p));
    }
    for p in [3, 5, 7] {
        out.push(candidate(Family::Psl2Three, p));
    }
    for p in (7..=61u64).filter(|&p| is_prime(p as usize) && matches!(p % 5, 2 | 3)) {
        out.push(candidate(Family::Psl2Prime, p));
    }
    for p in [3, 5, 7] {
        out.push(candidate(Family::Suzuki, p));
    }
    out.push(candidate(Family::Psl33, 3));
    out.sort_by_key(group_order);
    out
}

/// Order of the simple group.
pub fn group_order(c: &SimpleCandidate) -> u128 {
    let q = |x: u64| x as u128;
    match c.family {
        Family::Psl2Even => {
            let n = q(1u64 << c.parameter);
            n * (n * n - 1)
        }
        Family::Psl2Three => {
            let n = q(3u64.pow(c.parameter as u32));
            n * (n * n - 1) / 2
        }
        Family::Psl2Prime => {
            let n = q(c.parameter);
            n * (n * n - 1) / 2
        }
        Family::Suzuki => {
            let n = q(1u64 << c.parameter);
            n * n * (n * n + 1) * (n - 1)
        }
        Family::Psl33 => 5616,
    }
}

/// Minimal simple groups that can occur in dimension `n`: every forced cyclic
/// order must embed in GL(n, Q), or, for even `n`, in Sp(n + 2, Q).
pub fn filter_minimal_simple(n: u64) -> Result<Vec<SimpleCandidate>> {
    if n > 14 {
        return Err(Error::OutOfScope(format!(
            "bounds are tabulated only through dimension 14, not {n}"
        )));
    }
    let bound = if n.is_multiple_of(2) { n + 2 } else { n };
    Ok(minimal_simple_groups()
        .into_iter()
        .filter(|c| {
            c.cyclic_orders
                .iter()
                .all(|&m| min_degree_cyclic(m) <= bound)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn e_bound_examples() {
        assert_eq!(e_bound(11, 7), 1);
        assert_eq!(e_bound(12, 5), 3);
        assert_eq!(e_bound(4, 7), 0);
        assert_eq!(e_bound(12, 7), 2);
    }

    #[test]
    fn cyclic_degrees() {
        assert_eq!(min_degree_cyclic(13), 12);
        assert_eq!(min_degree_cyclic(9), 6);
        assert_eq!(min_degree_cyclic(6), 2);
        assert_eq!(min_degree_cyclic(1), 0);
        assert_eq!(min_degree_cyclic(2), 0);
        assert_eq!(min_degree_cyclic(4), 2);
    }

    #[test]
    fn sl_gcds() {
        assert_eq!(sl_order(2, 5), BigInt::from(120));
        assert_eq!(gcd_sl_orders(3, 1, 50).unwrap().gcd, BigInt::from(48));
        let five = gcd_sl_orders(5, 1, 50).unwrap();
        assert_eq!(five.gcd, BigInt::from(23040));
        assert!(five.stable);
        // at p = 3 and p = 11 only 2^9 divides (p^2-1)(p^3-1)(p^4-1)(p^5-1)
        assert_eq!(BigInt::from(46080) % &five.gcd, BigInt::zero());
        assert_eq!(gcd_sl_orders(1, 1, 5).unwrap().gcd, BigInt::from(1));
        assert!(gcd_sl_orders(3, 1, 1).is_err());
    }

    #[test]
    fn simple_filter() {
        let names: Vec<String> = filter_minimal_simple(10)
            .unwrap()
            .into_iter()
            .map(|c| c.name)
            .collect();
        assert_eq!(
            names,
            [
                "A5",
                "PSL(2,7)",
                "SL(2,8)",
                "PSL(2,13)",
                "PSL(3,3)",
                "PSL(2,27)",
                "Sz(8)"
            ]
        );
        assert!(filter_minimal_simple(3).unwrap().is_empty());
        assert!(filter_minimal_simple(15).is_err());
    }

    proptest! {
        #[test]
        fn e_bound_monotone(n in 1u64..40, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            prop_assert!(e_bound(n, p) <= e_bound(n + 1, p));
            if p > n + 1 {
                prop_assert_eq!(e_bound(n, p), 0);
            }
        }

        #[test]
        fn prime_power_degrees(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), k in 1u32..4) {
            let m = p.pow(k);
            prop_assume!(m >= 3);
            prop_assert_eq!(min_degree_cyclic(m), p.pow(k - 1) * (p - 1));
        }
    }
}
