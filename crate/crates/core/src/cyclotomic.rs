//! Exact elements of cyclotomic fields.
//!
//! A value is stored as rational coefficients on the power basis
//! `1, z, ..., z^(phi(n)-1)` of `Q(z)`, `z = exp(2 pi i / n)`, always with the
//! smallest possible conductor `n`. Equal numbers therefore have equal
//! representations.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    c: Vec<BigRational>,
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        let dd = den.len() - 1;
        let mut q = vec![0i64; num.len() - dd];
        for k in (0..q.len()).rev() {
            let c = num[k + dd];
            q[k] = c;
            for (i, &b) in den.iter().enumerate() {
                num[k + i] -= c * b;
            }
        }
        num = q;
    }
    let p = Arc::new(num);
    cache.lock().expect("cache").insert(n, p.clone());
    p
}

/// Remainder of a dense polynomial modulo `Phi_n`.
fn reduce(n: u64, mut dense: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    if dense.len() < d {
        dense.resize(d, BigRational::zero());
        return dense;
    }
    for k in (d..dense.len()).rev() {
        if dense[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[k], BigRational::zero());
        for (i, &b) in phi.iter().enumerate().take(d) {
            if b != 0 {
                dense[k - d + i] -= &c * BigRational::from_integer(BigInt::from(b));
            }
        }
    }
    dense.truncate(d);
    dense
}

fn solve_rational(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
    unknowns: usize,
) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][col].recip();
        for j in col..unknowns {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..unknowns {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
                let v = &f * &b[r];
                b[i] -= v;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = b[i].clone();
    }
    Some(x)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(k))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic { n: 1, c: vec![q] }
    }

    /// `z_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        Self::from_terms(n, &[(k, BigRational::one())])
    }

    /// `sum c * z_n^k` over the given terms.
    pub fn from_terms(n: u64, terms: &[(i64, BigRational)]) -> Self {
        assert!(n >= 1);
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in terms {
            dense[k.rem_euclid(n as i64) as usize] += c;
        }
        Self::normalized(n, reduce(n, dense))
    }

    /// Canonical form: coefficients in the smallest cyclotomic field
    /// containing the value.
    fn normalized(n: u64, c: Vec<BigRational>) -> Self {
        if n == 1 || c[1..].iter().all(Zero::is_zero) {
            return Cyclotomic {
                n: 1,
                c: vec![c.into_iter().next().unwrap_or_else(BigRational::zero)],
            };
        }
        let x = Cyclotomic { n, c };
        for m in divisors(n) {
            if m == n {
                return x;
            }
            if euler_phi(m) == euler_phi(n) && m % 2 == 1 && n == 2 * m {
                // Q(z_m) = Q(z_2m) for odd m: always descend
            } else if !(1..n)
                .filter(|a| a.gcd(&n) == 1 && a % m == 1)
                .all(|a| x.galois_raw(a) == x.c)
            {
                continue;
            }
            if let Some(y) = x.descend(m) {
                return y;
            }
        }
        x
    }

    /// Coefficients over `Q(z_m)` if the value lies there.
    fn descend(&self, m: u64) -> Option<Self> {
        let pm = euler_phi(m) as usize;
        let rows = self.c.len();
        let step = self.n / m;
        let mut a = vec![vec![BigRational::zero(); pm]; rows];
        for i in 0..pm {
            let mut dense = vec![BigRational::zero(); self.n as usize];
            dense[(i as u64 * step % self.n) as usize] = BigRational::one();
            let col = reduce(self.n, dense);
            for (r, v) in col.into_iter().enumerate() {
                a[r][i] = v;
            }
        }
        let sol = solve_rational(a, self.c.clone(), pm)?;
        Some(Cyclotomic { n: m, c: sol })
    }

    fn embed(&self, big: u64) -> Vec<BigRational> {
        if big == self.n {
            return self.c.clone();
        }
        let step = big / self.n;
        let mut dense = vec![BigRational::zero(); big as usize];
        for (k, v) in self.c.iter().enumerate() {
            if !v.is_zero() {
                dense[(k as u64 * step % big) as usize] += v;
            }
        }
        reduce(big, dense)
    }

    fn galois_raw(&self, a: u64) -> Vec<BigRational> {
        let mut dense = vec![BigRational::zero(); self.n as usize];
        for (k, v) in self.c.iter().enumerate() {
            if !v.is_zero() {
                dense[(k as u64 * a % self.n) as usize] += v;
            }
        }
        reduce(self.n, dense)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    /// Image under `z -> z^a` for `a` coprime to the conductor (any `a`
    /// coprime to a multiple of it is accepted).
    pub fn galois(&self, a: i64) -> Self {
        let a = a.rem_euclid(self.n as i64) as u64;
        if self.n == 1 {
            return self.clone();
        }
        assert_eq!(
            a.gcd(&self.n),
            1,
            "Galois exponent must be coprime to the conductor"
        );
        Self::normalized(self.n, self.galois_raw(a))
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.c[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        (self.n == 1).then(|| self.c[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|k| k.to_i64())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    fn binary(
        &self,
        other: &Self,
        f: impl Fn(&[BigRational], &[BigRational]) -> Vec<BigRational>,
    ) -> (u64, Vec<BigRational>) {
        let l = self.n.lcm(&other.n);
        (l, f(&self.embed(l), &other.embed(l)))
    }

    /// Trace down to Q: the sum of all Galois conjugates.
    pub fn trace(&self) -> BigRational {
        // Tr(z_n^k) = mu(m) phi(n) / phi(m) with m = n / gcd(n, k)
        let n = self.n;
        let mut acc = BigRational::zero();
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let m = n / n.gcd(&(k as u64));
            acc += v * BigRational::new(
                BigInt::from(mobius(m) * euler_phi(n) as i64),
                BigInt::from(euler_phi(m)),
            );
        }
        acc
    }
}

fn mobius(mut n: u64) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        if self.n == other.n {
            let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
            return Cyclotomic::normalized(self.n, c);
        }
        let (l, c) = self.binary(other, |a, b| a.iter().zip(b).map(|(x, y)| x + y).collect());
        Cyclotomic::normalized(l, c)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        self + &(-other)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 {
            return other.scale(&self.c[0]);
        }
        if other.n == 1 {
            return self.scale(&other.c[0]);
        }
        let l = self.n.lcm(&other.n);
        let (a, b) = (self.embed(l), other.embed(l));
        let mut dense = vec![BigRational::zero(); 2 * a.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        Cyclotomic::normalized(l, reduce(l, dense))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, other: Cyclotomic) -> Cyclotomic {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let sign = if v.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = v.abs();
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else if k > 0 {
                format!("{mag}*")
            } else {
                mag.to_string()
            };
            let term = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{k}", self.n),
            };
            write!(f, "{sign}{coeff}{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
