//! Dixon–Schneider: class-algebra eigenvectors modulo a prime `l ≡ 1 mod e`,
//! lifted to exact cyclotomic values through eigenvalue multiplicities.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup};

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime has a primitive root")
}

/// Basis (as rows) of the null space of `a` (rows × cols) over F_p.
fn null_space(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Coordinates `x` with `basis^T x = v`, basis given as rows spanning a space containing v.
fn coordinates(basis: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    let d = basis.len();
    let n = v.len();
    // augmented system: n equations, d unknowns
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = basis.iter().map(|b| b[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..d {
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..=d {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut x = vec![0u64; d];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][d];
    }
    x
}

/// Irreducible characters as exact class-value lists (class order of `g`).
pub fn character_values(g: &FiniteGroup) -> Result<Vec<Vec<Cyclotomic>>> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let order = g.order() as u64;
    let e = g.exponent() as u64;
    // prime l = 1 mod e, large enough that degrees are determined by their squares
    let mut l = e + 1;
    while !(is_prime(l as usize) && l * l > 4 * order) {
        l += e;
    }
    let inverse_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();

    // class constants c[i][j][k] = #{x in K_i : x^-1 z_k in K_j}
    let mut consts = vec![vec![vec![0u64; r]; r]; r];
    for (k, kc) in classes.iter().enumerate() {
        let z = kc.representative;
        for (i, ic) in classes.iter().enumerate() {
            for &x in &ic.members {
                let j = g.class_of(g.mul(g.inverse(x), z));
                consts[i][j][k] += 1;
            }
        }
    }

    // split F_l^r into simultaneous eigenspaces of the M_i, (M_i)_{jk} = c_ijk
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for (i, ci) in consts.iter().enumerate().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let d = space.len();
            // matrix of M_i restricted to the space, in its basis
            let images: Vec<Vec<u64>> = space
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|j| (0..r).map(|k| ci[j][k] % l * b[k] % l).sum::<u64>() % l)
                        .collect()
                })
                .collect();
            let a: Vec<Vec<u64>> = images.iter().map(|im| coordinates(&space, im, l)).collect();
            // a[c] = coordinates of M_i b_c; matrix A has columns a[c]
            let mut found = 0;
            for lambda in 0..l {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|row| {
                        (0..d)
                            .map(|col| (a[col][row] + if row == col { l - lambda } else { 0 }) % l)
                            .collect()
                    })
                    .collect();
                let ker = null_space(shifted, d, l);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coef| {
                        (0..r)
                            .map(|t| (0..d).map(|c| coef[c] * space[c][t] % l).sum::<u64>() % l)
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Internal(format!(
                    "class matrix {i} is not diagonalizable mod {l}"
                )));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Internal(format!(
            "found {} eigenvectors for {r} classes",
            spaces.len()
        )));
    }

    let zeta_e = pow_mod(primitive_root(l), (l - 1) / e, l);
    let mut chars = Vec::with_capacity(r);
    for space in &spaces {
        let w0 = space[0][0];
        if w0 == 0 {
            return Err(Error::Internal(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let inv0 = inv_mod(w0, l);
        let w: Vec<u64> = space[0].iter().map(|x| x * inv0 % l).collect();
        // d^2 = |G| / sum_i w_i w_i' / |K_i|
        let s = (0..r).fold(0u64, |acc, i| {
            (acc + w[i] * w[inverse_class[i]] % l * inv_mod(classes[i].size as u64 % l, l)) % l
        });
        let d2 = order % l * inv_mod(s, l) % l;
        let deg = (1..)
            .take_while(|d: &u64| d * d <= order)
            .find(|d| d * d % l == d2)
            .ok_or_else(|| Error::Internal("no degree matches the eigenvector norm".into()))?;
        let modval: Vec<u64> = (0..r)
            .map(|i| deg % l * w[i] % l * inv_mod(classes[i].size as u64 % l, l) % l)
            .collect();
        let mut values = Vec::with_capacity(r);
        for (i, c) in classes.iter().enumerate() {
            let o = c.element_order as u64;
            let zeta = pow_mod(zeta_e, e / o, l);
            let inv_o = inv_mod(o % l, l);
            let mut terms = Vec::new();
            for k in 0..o {
                let mut m = 0u64;
                for j in 0..o {
                    let cj = g.power_class(i, j as i64);
                    let z = pow_mod(zeta, (o - (j * k) % o) % o, l);
                    m = (m + modval[cj] * z) % l;
                }
                m = m * inv_o % l;
                if m > deg {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiplicity {m} exceeds degree {deg}"
                    )));
                }
                if m != 0 {
                    terms.push((k as i64, BigRational::from_integer(BigInt::from(m))));
                }
            }
            values.push(Cyclotomic::from_terms(o, &terms));
        }
        if values[0] != Cyclotomic::from_int(deg as i64) {
            return Err(Error::Internal(
                "identity value differs from the degree".into(),
            ));
        }
        chars.push(values);
    }
    let total: BigInt = chars
        .iter()
        .map(|c| c[0].to_integer().expect("degree").pow(2))
        .sum();
    if total != BigInt::from(order) {
        return Err(Error::Internal(format!(
            "squared degrees sum to {total}, not {order}"
        )));
    }
    Ok(chars)
}
