//! Small prime-power finite fields with table-driven arithmetic.
//!
//! Elements of GF(p^k) are encoded as integers `0..q` whose base-`p` digits
//! are the coefficients of a polynomial in the generator, lowest degree first.
//! The defining polynomial is the lexicographically smallest monic
//! irreducible of degree `k` whose root is primitive, so encoding `p` (the
//! polynomial `x`) always generates the multiplicative group.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Debug)]
pub struct GaloisField {
    q: u32,
    p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplies two residues `a`, `b` (digit vectors of length k) modulo the
/// monic polynomial with low coefficients `modulus` (length k).
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        // x^k = -modulus(x)
        for (i, &m) in modulus.iter().enumerate() {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl GaloisField {
    fn build(q: u32) -> Result<Self> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::Shape(format!("{q} is not a prime power")))?;
        let qs = q as usize;
        // Search monic degree-k polynomials for one with x primitive.
        let mut chosen = None;
        for code in 0..q {
            let modulus = digits(code, p, k);
            if k > 1 && modulus[0] == 0 {
                continue;
            }
            // order of x modulo the polynomial
            let x = if k == 1 {
                // in the prime field search a primitive root directly
                vec![0]
            } else {
                let mut v = vec![0; k as usize];
                v[1] = 1;
                v
            };
            if k == 1 {
                chosen = Some(vec![0]);
                break;
            }
            let mut cur = x.clone();
            let mut order = 1u32;
            let one = {
                let mut v = vec![0; k as usize];
                v[0] = 1;
                v
            };
            while cur != one && order < q {
                cur = poly_mulmod(&cur, &x, &modulus, p);
                order += 1;
            }
            if cur == one && order == q - 1 {
                chosen = Some(modulus);
                break;
            }
        }
        let modulus = chosen
            .ok_or_else(|| Error::Internal(format!("no primitive polynomial for GF({q})")))?;

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p);
                mul[(a * q + b) as usize] = if k == 1 {
                    (a * b) % p
                } else {
                    undigits(&poly_mulmod(&da, &db, &modulus, p), p)
                };
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        let primitive = if k == 1 {
            (1..q)
                .find(|&g| {
                    let mut x = g;
                    let mut ord = 1;
                    while x != 1 {
                        x = (x * g) % p;
                        ord += 1;
                    }
                    ord == q - 1
                })
                .unwrap_or(1)
        } else {
            p
        };
        Ok(GaloisField {
            q,
            p,
            add,
            mul,
            neg,
            inv,
            primitive,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; zero maps to zero.
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }
}

/// Shared field instance for GF(q). Fields are built once and never freed.
pub fn field(q: u32) -> Result<&'static GaloisField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static GaloisField>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    if let Some(f) = guard.get(&q) {
        return Ok(f);
    }
    let f: &'static GaloisField = Box::leak(Box::new(GaloisField::build(q)?));
    guard.insert(q, f);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_is_a_field() {
        let f = field(8).unwrap();
        assert_eq!(f.characteristic(), 2);
        for a in 1..8 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, a), 0);
        }
        let g = f.primitive();
        let mut x = g;
        let mut seen = vec![x];
        for _ in 0..6 {
            x = f.mul(x, g);
            seen.push(x);
        }
        seen.sort();
        assert_eq!(seen, (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn prime_fields() {
        for q in [5u32, 7, 13] {
            let f = field(q).unwrap();
            assert_eq!(f.mul(q - 1, q - 1), 1);
            assert_eq!(f.neg(1), q - 1);
        }
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(field(6).is_err());
    }
}
