use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use tfns_core::group::{close_group, Element, Shape, DEFAULT_CAP};
use tfns_core::lattice::{is_bieberbach, Cocycle2, CrystalData, IntegerMatrix, LatticeAction};
use tfns_core::nilpotent::{
    automorphism_from, hall_basis, layer_action, pairing_radical, EndoSpec, PairingTensor,
};

fn matrix(max: usize) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |e| IntegerMatrix::from_i64(r, c, &e))
    })
}

/// Rank over Q by fraction-free elimination.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            let (a, b) = (m[rank][c], m[i][c]);
            for j in 0..cols {
                m[i][j] = a * m[i][j] - b * m[rank][j];
            }
            let g = m[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Generator i goes to g_i g_j^e; every other generator is fixed.
fn transvection(names: &[char], i: usize, j: usize, e: i64) -> EndoSpec {
    let words: Vec<String> = names
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            if k != i {
                return c.to_string();
            }
            let g = if e < 0 {
                names[j].to_ascii_uppercase()
            } else {
                names[j]
            };
            format!("{c}{}", g.to_string().repeat(e.unsigned_abs() as usize))
        })
        .collect();
    let refs: Vec<&str> = words.iter().map(String::as_str).collect();
    EndoSpec::new(names, &refs).unwrap()
}

fn klein() -> LatticeAction {
    let g = close_group(
        Shape::Integer(2),
        &[Element::integer(2, &[1, 0, 0, -1]).unwrap()],
        DEFAULT_CAP,
    )
    .unwrap();
    LatticeAction::natural(Arc::new(g)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_transforms(m in matrix(6)) {
        let s = m.smith();
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.rank, s.diagonal().iter().filter(|d| !d.is_zero()).count());
        if m.rows() == m.cols() {
            let prod = s.diagonal().iter().fold(BigInt::from(1), |a, d| a * d);
            prop_assert_eq!(prod, m.determinant().abs());
        }
    }

    #[test]
    fn kernel_columns_are_killed(m in matrix(5)) {
        let k = m.kernel();
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols() + m.rank(), m.cols());
    }

    #[test]
    fn collection_is_a_group_law(
        a in prop::collection::vec((0usize..3, -3i64..=3), 0..6),
        b in prop::collection::vec((0usize..3, -3i64..=3), 0..6),
        c in prop::collection::vec((0usize..3, -3i64..=3), 0..6),
    ) {
        let h = hall_basis(3, 3).unwrap();
        let (a, b, c) = (h.word(&a).unwrap(), h.word(&b).unwrap(), h.word(&c).unwrap());
        let left = h.multiply(&h.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = h.multiply(&a, &h.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = h.inverse(&a).unwrap();
        prop_assert!(h.multiply(&inv, &a).unwrap().is_identity());
        prop_assert_eq!(h.power(&a, -1).unwrap(), inv);
    }

    #[test]
    fn layer_action_is_functorial(
        i in 0usize..3, di in 1usize..3, e in -2i64..=2,
        j in 0usize..3, dj in 1usize..3, f in -2i64..=2,
        k in 1usize..=3,
    ) {
        let names = ['x', 'y', 'z'];
        let h = hall_basis(3, 3).unwrap();
        let a = automorphism_from(&transvection(&names, i, (i + di) % 3, e), &h).unwrap();
        let b = automorphism_from(&transvection(&names, j, (j + dj) % 3, f), &h).unwrap();
        let ab = layer_action(&a.compose(&b).unwrap(), k).unwrap();
        prop_assert_eq!(ab, layer_action(&a, k).unwrap().mul(&layer_action(&b, k).unwrap()));
    }

    #[test]
    fn radical_dimension(m in 1usize..5, n in 1usize..4, terms in prop::collection::vec((0usize..4, 0usize..4, 0usize..3, -2i64..=2), 0..8)) {
        let terms: Vec<_> = terms.into_iter().filter(|t| t.0 < m && t.1 < m && t.2 < n).collect();
        let t = PairingTensor::from_forms(m, n, &terms).unwrap();
        let r = pairing_radical(&t);
        // rows of the map x -> (c(x, e_j)_k)
        let mut c = vec![vec![vec![0i64; n]; m]; m];
        for &(i, j, k, v) in &terms {
            c[i][j][k] += v;
            c[j][i][k] -= v;
        }
        let rows: Vec<Vec<i64>> = (0..m).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| (0..m).map(|i| c[i][j][k]).collect()).collect();
        prop_assert_eq!(r.cols(), m - rational_rank(&rows));
    }

    #[test]
    fn verdict_ignores_coboundaries(t0 in 0i64..2, t1 in 0i64..2, b in prop::collection::vec(-3i64..=3, 2)) {
        let action = klein();
        let f = Cocycle2::from_translations(&action, &[vec![t0, t1]], 2).unwrap();
        let shifted = f.add_coboundary(&action, &[vec![0, 0], b]).unwrap();
        let v = is_bieberbach(&CrystalData { action, cocycle: shifted }).unwrap();
        // the lift of the reflection is a glide exactly when it translates along the mirror
        prop_assert_eq!(v.torsion_free, t0 == 1);
    }
}

#[test]
fn free_pairing_is_nondegenerate() {
    for m in 1..6 {
        assert_eq!(
            pairing_radical(&PairingTensor::free(m)).cols(),
            if m == 1 { 1 } else { 0 }
        );
    }
}
