//! Free nilpotent groups of class at most 3, realized inside the truncated
//! Magnus algebra Z<X_1..X_m>/(degree > c) and coordinatized by a Hall basis.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::character::RationalCharacter;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{IntegerMatrix, LatticeAction};

mod file;

pub use file::{parse_endo_file, verify_endo_file, EndoFile, EndoVerification, IsotypicLine};

/// Truncated series, coefficients indexed by words of length 0..=c.
type Series = Vec<i64>;

#[derive(Debug)]
struct LayerSolver {
    /// First `rank` rows of U from U A V = D.
    u: Vec<Vec<i64>>,
    d: Vec<i64>,
    v: Vec<Vec<i64>>,
    /// Columns of A: the degree-k part of each basic commutator.
    a: Vec<Vec<i64>>,
}

/// Basic commutators of degree 1..=c in the free group on m generators.
#[derive(Debug)]
pub struct HallBasis {
    m: usize,
    class: usize,
    /// Left-normed index tuples per layer: (j), (j, i) with j > i, (j, i, k) with k >= i.
    layers: Vec<Vec<Vec<usize>>>,
    offsets: Vec<usize>,
    series_len: usize,
    basic_series: Vec<Series>,
    solvers: Vec<LayerSolver>,
}

/// Collected normal form: exponents of the basic commutators in basis order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FNElement {
    m: usize,
    class: usize,
    coords: Vec<i64>,
}

impl FNElement {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Witt's count of basic commutators of degree `k` on `m` generators, k <= 3.
pub fn witt_count(m: usize, k: usize) -> usize {
    match k {
        1 => m,
        2 => (m * m - m) / 2,
        3 => (m * m * m - m) / 3,
        _ => unreachable!("class is capped at 3"),
    }
}

pub fn hall_basis(m: usize, class: usize) -> Result<Arc<HallBasis>> {
    if class == 0 || class > 3 {
        return Err(Error::Contract(format!("class {class} is outside 1..=3")));
    }
    if m == 0 {
        return Err(Error::Contract("need at least one generator".into()));
    }
    let mut layers = vec![(0..m).map(|j| vec![j]).collect::<Vec<_>>()];
    if class >= 2 {
        let mut two = Vec::new();
        for j in 0..m {
            for i in 0..j {
                two.push(vec![j, i]);
            }
        }
        layers.push(two);
    }
    if class >= 3 {
        let mut three = Vec::new();
        for b in &layers[1] {
            for k in b[1]..m {
                three.push(vec![b[0], b[1], k]);
            }
        }
        layers.push(three);
    }
    let mut offsets = vec![0usize; class + 2];
    offsets[1] = 1;
    for d in 1..=class {
        offsets[d + 1] = offsets[d] + m.pow(d as u32);
    }
    let mut basis = HallBasis {
        m,
        class,
        layers,
        offsets,
        series_len: 0,
        basic_series: Vec::new(),
        solvers: Vec::new(),
    };
    basis.series_len = basis.offsets[class + 1];
    let mut basic_series = Vec::new();
    for layer in &basis.layers {
        for b in layer {
            let gens: Vec<Series> = b.iter().map(|&j| basis.generator_series(j)).collect();
            let mut s = gens[0].clone();
            for g in &gens[1..] {
                s = basis.series_commutator(&s, g);
            }
            basic_series.push(s);
        }
    }
    basis.basic_series = basic_series;
    for d in 1..=class {
        let solver = basis.build_solver(d)?;
        basis.solvers.push(solver);
    }
    Ok(Arc::new(basis))
}

impl HallBasis {
    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn layer_ranks(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn hirsch_length(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Left-normed generator tuples of the basic commutators in layer `k`.
    pub fn layer(&self, k: usize) -> &[Vec<usize>] {
        &self.layers[k - 1]
    }

    fn layer_start(&self, k: usize) -> usize {
        self.layers[..k - 1].iter().map(Vec::len).sum()
    }

    fn one(&self) -> Series {
        let mut s = vec![0; self.series_len];
        s[0] = 1;
        s
    }

    fn generator_series(&self, j: usize) -> Series {
        let mut s = self.one();
        s[self.offsets[1] + j] = 1;
        s
    }

    fn series_mul(&self, a: &Series, b: &Series) -> Series {
        let mut out = vec![0i64; self.series_len];
        for da in 0..=self.class {
            let (oa, na) = (self.offsets[da], self.m.pow(da as u32));
            for db in 0..=self.class - da {
                let (ob, nb) = (self.offsets[db], self.m.pow(db as u32));
                let oc = self.offsets[da + db];
                for ia in 0..na {
                    let x = a[oa + ia];
                    if x == 0 {
                        continue;
                    }
                    for ib in 0..nb {
                        let y = b[ob + ib];
                        if y != 0 {
                            out[oc + ia * nb + ib] += x * y;
                        }
                    }
                }
            }
        }
        out
    }

    /// `(1 + u)^e` as the binomial series, valid for negative `e`.
    fn series_pow(&self, s: &Series, e: i64) -> Series {
        let mut u = s.clone();
        u[0] -= 1;
        let mut out = self.one();
        let mut term = self.one();
        let mut binom = 1i64;
        for k in 1..=self.class as i64 {
            term = self.series_mul(&term, &u);
            binom = binom * (e - k + 1) / k;
            if binom == 0 {
                break;
            }
            for (o, t) in out.iter_mut().zip(&term) {
                *o += binom * t;
            }
        }
        out
    }

    fn series_commutator(&self, a: &Series, b: &Series) -> Series {
        let ai = self.series_pow(a, -1);
        let bi = self.series_pow(b, -1);
        self.series_mul(&self.series_mul(&ai, &bi), &self.series_mul(a, b))
    }

    fn homogeneous(&self, s: &Series, d: usize) -> Vec<i64> {
        s[self.offsets[d]..self.offsets[d + 1]].to_vec()
    }

    fn build_solver(&self, d: usize) -> Result<LayerSolver> {
        let start = self.layer_start(d);
        let cols: Vec<Vec<i64>> = (0..self.layers[d - 1].len())
            .map(|j| self.homogeneous(&self.basic_series[start + j], d))
            .collect();
        let rows = self.m.pow(d as u32);
        let big: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let a = IntegerMatrix::from_columns(rows, &big);
        let snf = a.smith();
        let r = cols.len();
        if snf.rank != r {
            return Err(Error::Internal(format!(
                "basic commutators of degree {d} are dependent"
            )));
        }
        let conv = |x: &BigInt| {
            x.to_i64()
                .ok_or_else(|| Error::Internal("solver entry overflows".into()))
        };
        let u = (0..r)
            .map(|i| (0..rows).map(|j| conv(&snf.u[(i, j)])).collect())
            .collect::<Result<_>>()?;
        let v = (0..r)
            .map(|i| (0..r).map(|j| conv(&snf.v[(i, j)])).collect())
            .collect::<Result<_>>()?;
        let dg = snf
            .diagonal()
            .iter()
            .take(r)
            .map(conv)
            .collect::<Result<_>>()?;
        Ok(LayerSolver {
            u,
            d: dg,
            v,
            a: cols,
        })
    }

    fn solve_layer(&self, d: usize, target: &[i64]) -> Result<Vec<i64>> {
        let s = &self.solvers[d - 1];
        let r = s.d.len();
        let mut y = vec![0i64; r];
        for i in 0..r {
            let t: i64 = s.u[i].iter().zip(target).map(|(a, b)| a * b).sum();
            if t % s.d[i] != 0 {
                return Err(Error::Internal("series is not a group element".into()));
            }
            y[i] = t / s.d[i];
        }
        let e: Vec<i64> = (0..r)
            .map(|i| (0..r).map(|j| s.v[i][j] * y[j]).sum())
            .collect();
        for (row, &t) in target.iter().enumerate() {
            let back: i64 = (0..r).map(|j| s.a[j][row] * e[j]).sum();
            if back != t {
                return Err(Error::Internal("series is not a group element".into()));
            }
        }
        Ok(e)
    }

    fn to_series(&self, x: &FNElement) -> Series {
        let mut s = self.one();
        for (j, &e) in x.coords.iter().enumerate() {
            if e != 0 {
                s = self.series_mul(&s, &self.series_pow(&self.basic_series[j], e));
            }
        }
        s
    }

    fn from_series(&self, s: &Series) -> Result<FNElement> {
        let mut cur = s.clone();
        let mut coords = Vec::with_capacity(self.hirsch_length());
        for d in 1..=self.class {
            let e = self.solve_layer(d, &self.homogeneous(&cur, d))?;
            let start = self.layer_start(d);
            let mut p = self.one();
            for (j, &x) in e.iter().enumerate() {
                if x != 0 {
                    p = self.series_mul(&p, &self.series_pow(&self.basic_series[start + j], x));
                }
            }
            cur = self.series_mul(&self.series_pow(&p, -1), &cur);
            coords.extend(e);
        }
        if cur != self.one() {
            return Err(Error::Internal("collection left a remainder".into()));
        }
        Ok(FNElement {
            m: self.m,
            class: self.class,
            coords,
        })
    }

    fn check(&self, x: &FNElement) -> Result<()> {
        if x.m != self.m || x.class != self.class || x.coords.len() != self.hirsch_length() {
            return Err(Error::Contract(
                "element belongs to a different Hall basis".into(),
            ));
        }
        Ok(())
    }

    pub fn identity(&self) -> FNElement {
        FNElement {
            m: self.m,
            class: self.class,
            coords: vec![0; self.hirsch_length()],
        }
    }

    /// The `j`-th basic commutator as an element.
    pub fn basic(&self, j: usize) -> FNElement {
        let mut x = self.identity();
        x.coords[j] = 1;
        x
    }

    pub fn generator(&self, i: usize) -> FNElement {
        self.basic(i)
    }

    /// Element with the given coordinates.
    pub fn element(&self, coords: Vec<i64>) -> Result<FNElement> {
        let x = FNElement {
            m: self.m,
            class: self.class,
            coords,
        };
        self.check(&x)?;
        Ok(x)
    }

    pub fn multiply(&self, a: &FNElement, b: &FNElement) -> Result<FNElement> {
        self.check(a)?;
        self.check(b)?;
        self.from_series(&self.series_mul(&self.to_series(a), &self.to_series(b)))
    }

    pub fn inverse(&self, a: &FNElement) -> Result<FNElement> {
        self.check(a)?;
        self.from_series(&self.series_pow(&self.to_series(a), -1))
    }

    pub fn power(&self, a: &FNElement, e: i64) -> Result<FNElement> {
        self.check(a)?;
        self.from_series(&self.series_pow(&self.to_series(a), e))
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &FNElement, b: &FNElement) -> Result<FNElement> {
        self.check(a)?;
        self.check(b)?;
        self.from_series(&self.series_commutator(&self.to_series(a), &self.to_series(b)))
    }

    /// Product of generator letters; `letters[i] = (generator, exponent sign)`.
    pub fn word(&self, letters: &[(usize, i64)]) -> Result<FNElement> {
        let mut s = self.one();
        for &(g, e) in letters {
            if g >= self.m {
                return Err(Error::Contract(format!("generator {g} out of range")));
            }
            s = self.series_mul(&s, &self.series_pow(&self.generator_series(g), e));
        }
        self.from_series(&s)
    }

    /// Lowest layer containing a non-zero coordinate, or None for the identity.
    pub fn weight(&self, a: &FNElement) -> Option<usize> {
        let first = a.coords.iter().position(|&c| c != 0)?;
        (1..=self.class)
            .rev()
            .find(|&d| self.layer_start(d) <= first)
    }
}

/// One word per generator, letters lower case for generators and upper case
/// for inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoSpec {
    pub names: Vec<char>,
    pub words: Vec<Vec<(usize, i64)>>,
}

impl EndoSpec {
    pub fn new(names: &[char], words: &[&str]) -> Result<Self> {
        if names.len() != words.len() {
            return Err(Error::Shape(format!(
                "{} generators but {} images",
                names.len(),
                words.len()
            )));
        }
        let words = words
            .iter()
            .map(|w| parse_word(names, w))
            .collect::<Result<_>>()?;
        Ok(EndoSpec {
            names: names.to_vec(),
            words,
        })
    }

    pub fn identity(names: &[char]) -> Self {
        EndoSpec {
            names: names.to_vec(),
            words: (0..names.len()).map(|i| vec![(i, 1)]).collect(),
        }
    }
}

/// Parses "w x Y" or "wxY"; "1" and the empty word are the identity.
pub fn parse_word(names: &[char], text: &str) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for ch in text.chars().filter(|c| !c.is_whitespace()) {
        if ch == '1' {
            continue;
        }
        let lower = ch.to_ascii_lowercase();
        let g = names
            .iter()
            .position(|&n| n == lower)
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown letter '{ch}'"),
            })?;
        out.push((g, if ch.is_ascii_uppercase() { -1 } else { 1 }));
    }
    Ok(out)
}

/// Automorphism stored by the images of all basic commutators.
#[derive(Debug, Clone)]
pub struct Automorphism {
    basis: Arc<HallBasis>,
    images: Vec<Series>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis)
            && self.images[..self.basis.m] == other.images[..other.basis.m]
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    fn from_generator_images(basis: &Arc<HallBasis>, gens: Vec<Series>) -> Self {
        let mut images = Vec::with_capacity(basis.hirsch_length());
        for layer in &basis.layers {
            for b in layer {
                let mut s = gens[b[0]].clone();
                for &j in &b[1..] {
                    s = basis.series_commutator(&s, &gens[j]);
                }
                images.push(s);
            }
        }
        Automorphism {
            basis: basis.clone(),
            images,
        }
    }

    pub fn identity(basis: &Arc<HallBasis>) -> Self {
        let gens = (0..basis.m).map(|j| basis.generator_series(j)).collect();
        Self::from_generator_images(basis, gens)
    }

    pub fn basis(&self) -> &Arc<HallBasis> {
        &self.basis
    }

    fn apply_series(&self, x: &FNElement) -> Series {
        let b = &self.basis;
        let mut s = b.one();
        for (j, &e) in x.coords.iter().enumerate() {
            if e != 0 {
                s = b.series_mul(&s, &b.series_pow(&self.images[j], e));
            }
        }
        s
    }

    pub fn apply(&self, x: &FNElement) -> Result<FNElement> {
        self.basis.check(x)?;
        self.basis.from_series(&self.apply_series(x))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if !Arc::ptr_eq(&self.basis, &other.basis) {
            return Err(Error::Contract("automorphisms of different groups".into()));
        }
        let b = &self.basis;
        let gens = (0..b.m)
            .map(|j| {
                let x = b.from_series(&other.images[j])?;
                Ok(self.apply_series(&x))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_generator_images(b, gens))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.basis.m).all(|j| self.images[j] == self.basis.generator_series(j))
    }

    /// Image of generator `j`.
    pub fn generator_image(&self, j: usize) -> Result<FNElement> {
        self.basis.from_series(&self.images[j])
    }

    fn key(&self) -> Vec<i64> {
        self.images[..self.basis.m].concat()
    }
}

/// Induced endomorphism, accepted when its abelianization is unimodular.
pub fn automorphism_from(spec: &EndoSpec, basis: &Arc<HallBasis>) -> Result<Automorphism> {
    if spec.words.len() != basis.m {
        return Err(Error::Shape(format!(
            "{} images for {} generators",
            spec.words.len(),
            basis.m
        )));
    }
    let mut gens = Vec::with_capacity(basis.m);
    for w in &spec.words {
        let mut s = basis.one();
        for &(g, e) in w {
            if g >= basis.m {
                return Err(Error::Contract(format!("generator {g} out of range")));
            }
            s = basis.series_mul(&s, &basis.series_pow(&basis.generator_series(g), e));
        }
        gens.push(s);
    }
    let m = basis.m;
    let entries: Vec<i64> = (0..m)
        .flat_map(|r| gens.iter().map(move |s| s[1 + r]).collect::<Vec<_>>())
        .collect();
    let det = IntegerMatrix::from_i64(m, m, &entries).determinant();
    let det = det.to_i64().unwrap_or(0);
    if det.abs() != 1 {
        return Err(Error::NotAutomorphism { det });
    }
    Ok(Automorphism::from_generator_images(basis, gens))
}

/// Least k <= cap with alpha^k the identity.
pub fn automorphism_order(alpha: &Automorphism, cap: usize) -> Result<usize> {
    let mut power = alpha.clone();
    for k in 1..=cap {
        if power.is_identity() {
            return Ok(k);
        }
        power = alpha.compose(&power)?;
    }
    Err(Error::OrderCap { cap })
}

/// Matrix of alpha on the layer gamma_k / gamma_{k+1}, columns the images of
/// the basic commutators of degree k.
pub fn layer_action(alpha: &Automorphism, k: usize) -> Result<IntegerMatrix> {
    let b = &alpha.basis;
    if k == 0 || k > b.class {
        return Err(Error::Contract(format!(
            "layer {k} is outside 1..={}",
            b.class
        )));
    }
    let start = b.layer_start(k);
    let r = b.layers[k - 1].len();
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let s = &alpha.images[start + j];
        let e = b.solve_layer(k, &b.homogeneous(s, k))?;
        cols.push(e.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
    Ok(IntegerMatrix::from_columns(r, &cols))
}

/// Finite group generated by the automorphisms, elements as automorphisms.
pub fn automorphism_closure(gens: &[Automorphism], cap: usize) -> Result<Vec<Automorphism>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Contract("no automorphisms given".into()))?;
    let id = Automorphism::identity(&first.basis);
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(id.key(), 0);
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = elems[i].compose(g)?;
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(y.key()) {
                if elems.len() == cap {
                    return Err(Error::SizeLimit { cap });
                }
                e.insert(elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    Ok(elems)
}

/// Images of `group`'s generators among the automorphisms generated by
/// `gens`, forming a faithful action on the abelianization.
pub fn find_representation(
    group: &Arc<FiniteGroup>,
    gens: &[Automorphism],
) -> Result<Vec<Automorphism>> {
    let elems = automorphism_closure(gens, crate::group::DEFAULT_CAP)?;
    if elems.len() != group.order() {
        return Err(Error::Contract(format!(
            "automorphisms generate a group of order {}, not {}",
            elems.len(),
            group.order()
        )));
    }
    let orders: Vec<usize> = elems
        .iter()
        .map(|a| automorphism_order(a, group.order()))
        .collect::<Result<_>>()?;
    let layer1: Vec<Vec<i64>> = elems
        .iter()
        .map(|a| layer_action(a, 1).map(|x| x.to_i64().expect("small entries")))
        .collect::<Result<_>>()?;
    let targets: Vec<usize> = group
        .generator_indices()
        .iter()
        .map(|&g| group.element_order(g))
        .collect();
    let rank = gens[0].basis.m;
    let mut choice = vec![0usize; targets.len()];
    fn search(
        pos: usize,
        choice: &mut Vec<usize>,
        targets: &[usize],
        orders: &[usize],
        layer1: &[Vec<i64>],
        group: &Arc<FiniteGroup>,
        rank: usize,
    ) -> bool {
        if pos == targets.len() {
            let images: Vec<Vec<i64>> = choice.iter().map(|&c| layer1[c].clone()).collect();
            return LatticeAction::new(group.clone(), rank, &images)
                .map(|a| crate::lattice::effective_action(&a))
                .unwrap_or(false);
        }
        for c in 0..orders.len() {
            if orders[c] == targets[pos] {
                choice[pos] = c;
                if search(pos + 1, choice, targets, orders, layer1, group, rank) {
                    return true;
                }
            }
        }
        false
    }
    if !search(0, &mut choice, &targets, &orders, &layer1, group, rank) {
        return Err(Error::Contract(format!(
            "no faithful representation of {} found",
            group.name()
        )));
    }
    Ok(choice.iter().map(|&c| elems[c].clone()).collect())
}

/// Lattice action of `group` on layer k, given automorphism images of its generators.
pub fn layer_lattice_action(
    group: &Arc<FiniteGroup>,
    images: &[Automorphism],
    k: usize,
) -> Result<LatticeAction> {
    let mats: Vec<Vec<i64>> = images
        .iter()
        .map(|a| layer_action(a, k).map(|x| x.to_i64().expect("small entries")))
        .collect::<Result<_>>()?;
    let rank = images.first().map_or(0, |a| a.basis.layers[k - 1].len());
    LatticeAction::new(group.clone(), rank, &mats)
}

/// Skew bilinear pairing Q^m x Q^m -> Q^n by structure constants c[i][j][k].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingTensor {
    m: usize,
    n: usize,
    c: Vec<Vec<Vec<i64>>>,
}

impl PairingTensor {
    pub fn new(m: usize, n: usize, c: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if c.len() != m
            || c.iter()
                .any(|r| r.len() != m || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::Shape("structure constants must be m x m x n".into()));
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..n {
                    if c[i][j][k] != -c[j][i][k] {
                        return Err(Error::Contract("pairing is not skew".into()));
                    }
                }
            }
        }
        Ok(PairingTensor { m, n, c })
    }

    /// Sum of forms: each entry `(i, j, k, v)` adds v e_i ∧ e_j to coordinate k.
    pub fn from_forms(m: usize, n: usize, terms: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let mut c = vec![vec![vec![0; n]; m]; m];
        for &(i, j, k, v) in terms {
            c[i][j][k] += v;
            c[j][i][k] -= v;
        }
        Self::new(m, n, c)
    }

    /// The commutator pairing of the free class-2 nilpotent group.
    pub fn free(m: usize) -> Self {
        let n = witt_count(m, 2);
        let mut terms = Vec::new();
        let mut k = 0;
        for j in 0..m {
            for i in 0..j {
                terms.push((j, i, k, 1));
                k += 1;
            }
        }
        Self::from_forms(m, n, &terms).expect("well formed")
    }

    /// Composite with a linear map given by `rows` (n' x n).
    pub fn compose(&self, rows: &[Vec<i64>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Shape(
                "projection width differs from the target rank".into(),
            ));
        }
        let c = (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| {
                        rows.iter()
                            .map(|r| r.iter().zip(&self.c[i][j]).map(|(a, b)| a * b).sum())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(self.m, rows.len(), c)
    }

    pub fn source_rank(&self) -> usize {
        self.m
    }

    pub fn target_rank(&self) -> usize {
        self.n
    }
}

/// Integral basis (as columns) of {x : c(x, y) = 0 for all y}.
pub fn pairing_radical(t: &PairingTensor) -> IntegerMatrix {
    let mut rows = Vec::new();
    for j in 0..t.m {
        for k in 0..t.n {
            rows.push((0..t.m).map(|i| t.c[i][j][k]).collect::<Vec<_>>());
        }
    }
    if rows.is_empty() {
        return IntegerMatrix::identity(t.m);
    }
    IntegerMatrix::from_rows(&rows).kernel()
}

/// Saturated sublattice spanned by the image of sum_g chi(g) g, the rational
/// isotypic component of `chi`.
pub fn isotypic_component(
    action: &LatticeAction,
    chi: &RationalCharacter,
) -> Result<IntegerMatrix> {
    let g = action.group();
    if !Arc::ptr_eq(g, chi.class_function.group()) {
        return Err(Error::GroupMismatch);
    }
    let r = action.rank();
    let mut acc = vec![0i64; r * r];
    for x in 0..g.order() {
        let v = chi.values[g.class_of(x)];
        if v != 0 {
            for (a, m) in acc.iter_mut().zip(action.matrix(x)) {
                *a += v * m;
            }
        }
    }
    let p = IntegerMatrix::from_i64(r, r, &acc);
    let snf = p.smith();
    if snf.rank == 0 {
        return Ok(IntegerMatrix::zero(r, 0));
    }
    Ok(p.saturate_columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wxyz() -> Vec<char> {
        vec!['w', 'x', 'y', 'z']
    }

    fn sigma_tau(basis: &Arc<HallBasis>) -> (Automorphism, Automorphism) {
        let s = EndoSpec::new(&wxyz(), &["W", "wxy", "Y", "yz"]).unwrap();
        let t = EndoSpec::new(&wxyz(), &["X", "xyz", "Z", "YXW"]).unwrap();
        (
            automorphism_from(&s, basis).unwrap(),
            automorphism_from(&t, basis).unwrap(),
        )
    }

    #[test]
    fn ranks() {
        assert_eq!(hall_basis(4, 3).unwrap().layer_ranks(), vec![4, 6, 20]);
        assert_eq!(hall_basis(2, 2).unwrap().layer_ranks(), vec![2, 1]);
        assert_eq!(hall_basis(4, 2).unwrap().hirsch_length(), 10);
        assert!(hall_basis(3, 4).is_err());
    }

    #[test]
    fn commutator_of_generators() {
        let b = hall_basis(3, 3).unwrap();
        let c = b.commutator(&b.generator(1), &b.generator(0)).unwrap();
        assert_eq!(c, b.basic(3));
        let d = b.commutator(&b.generator(0), &b.generator(1)).unwrap();
        assert_eq!(d, b.inverse(&b.basic(3)).unwrap());
        let x = b.word(&[(0, 1), (2, -1), (1, 1)]).unwrap();
        assert!(b
            .multiply(&x, &b.inverse(&x).unwrap())
            .unwrap()
            .is_identity());
        assert_eq!(b.weight(&c), Some(2));
    }

    #[test]
    fn orders() {
        let b = hall_basis(4, 3).unwrap();
        let (s, t) = sigma_tau(&b);
        assert_eq!(automorphism_order(&s, 100).unwrap(), 2);
        assert_eq!(automorphism_order(&t, 100).unwrap(), 3);
        assert_eq!(automorphism_order(&s.compose(&t).unwrap(), 100).unwrap(), 5);
        assert_eq!(
            automorphism_order(&Automorphism::identity(&b), 1).unwrap(),
            1
        );
        let id = automorphism_from(&EndoSpec::identity(&wxyz()), &b).unwrap();
        assert!(id.is_identity());
        let zero = EndoSpec::new(&wxyz(), &["", "1", "", ""]).unwrap();
        assert_eq!(
            automorphism_from(&zero, &b).unwrap_err(),
            Error::NotAutomorphism { det: 0 }
        );
    }

    #[test]
    fn radicals() {
        assert_eq!(pairing_radical(&PairingTensor::free(4)).cols(), 0);
        let single = PairingTensor::from_forms(4, 1, &[(0, 1, 0, 1)]).unwrap();
        assert_eq!(pairing_radical(&single).cols(), 2);
        let symp = PairingTensor::from_forms(4, 1, &[(0, 1, 0, 1), (2, 3, 0, 1)]).unwrap();
        assert_eq!(pairing_radical(&symp).cols(), 0);
    }

    #[test]
    fn a5_layers() {
        use crate::character::{character_table, rationalize};
        use crate::group::catalog::catalog_group;
        let g = Arc::new(catalog_group("A5").unwrap());
        let rt = rationalize(&character_table(g.clone()).unwrap(), &|_| "rho".to_string()).unwrap();
        let b = hall_basis(4, 3).unwrap();
        let (s, t) = sigma_tau(&b);
        let images = find_representation(&g, &[s, t]).unwrap();
        let mut found = Vec::new();
        for k in 1..=3 {
            let action = layer_lattice_action(&g, &images, k).unwrap();
            found.push(rt.format(&rt.match_traces(&action.class_traces()).unwrap()));
            if k == 3 {
                let iso = isotypic_component(&action, rt.get("rho4").unwrap()).unwrap();
                assert_eq!(iso.cols(), 4);
            }
        }
        assert_eq!(found, ["rho4", "rho6", "rho4 + 2 rho5 + rho6"]);
    }
}
