//! Integer lattices with finite group actions, cyclic cohomology and the
//! Bieberbach certifier.

mod format;
mod matrix;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use format::parse_crystal;
pub use matrix::{IntegerMatrix, Smith};

use crate::error::{Error, Result};
use crate::group::{is_prime, Element, FiniteGroup, Shape, Subgroup};

/// A homomorphism `H -> GL(n, Z)`, tabulated on every element of `H`.
#[derive(Debug, Clone)]
pub struct LatticeAction {
    group: Arc<FiniteGroup>,
    rank: usize,
    /// Row-major `rank × rank` matrix per element index.
    matrices: Vec<Vec<i64>>,
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

fn mat_vec(n: usize, a: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum())
        .collect()
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

impl LatticeAction {
    /// Extends matrices given on the group's (sorted) generators to all
    /// elements, checking that every relation is respected.
    pub fn new(
        group: Arc<FiniteGroup>,
        rank: usize,
        generator_images: &[Vec<i64>],
    ) -> Result<Self> {
        let gens = group.generator_indices().to_vec();
        if generator_images.len() != gens.len() {
            return Err(Error::Shape(format!(
                "{} generator matrices supplied, group has {} generators",
                generator_images.len(),
                gens.len()
            )));
        }
        for m in generator_images {
            if m.len() != rank * rank {
                return Err(Error::Shape(format!(
                    "generator matrix must have {} entries",
                    rank * rank
                )));
            }
            let det = IntegerMatrix::from_i64(rank, rank, m).determinant();
            if det.abs() != BigInt::one() {
                return Err(Error::Shape(format!(
                    "matrix is not unimodular (det {det})"
                )));
            }
        }
        let n = group.order();
        let mut matrices: Vec<Option<Vec<i64>>> = vec![None; n];
        matrices[0] = Some(identity(rank));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mx = matrices[x].clone().expect("visited");
            for (s, img) in gens.iter().zip(generator_images) {
                let y = group.mul(x, *s);
                let my = mat_mul(rank, &mx, img);
                match &matrices[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::Shape(
                            "matrices do not respect the group relations".into(),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        matrices[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(LatticeAction {
            group,
            rank,
            matrices: matrices.into_iter().map(|m| m.expect("closed")).collect(),
        })
    }

    /// The natural action of a group of integer matrices.
    pub fn natural(group: Arc<FiniteGroup>) -> Result<Self> {
        let Shape::Integer(rank) = group.shape() else {
            return Err(Error::Shape(
                "natural action needs an integer matrix group".into(),
            ));
        };
        let matrices = group
            .elements()
            .iter()
            .map(|e| e.as_integer().expect("integer").1.to_vec())
            .collect();
        Ok(LatticeAction {
            group,
            rank,
            matrices,
        })
    }

    /// Action of a permutation group of degree `d` on `{x in Z^d : sum x = 0}`
    /// with basis `e_i - e_{d-1}`.
    pub fn deleted_permutation(group: Arc<FiniteGroup>) -> Result<Self> {
        let Shape::Perm(d) = group.shape() else {
            return Err(Error::Shape(
                "deleted permutation lattice needs a permutation group".into(),
            ));
        };
        let r = d - 1;
        let images: Vec<Vec<i64>> = group
            .generators()
            .iter()
            .map(|g| {
                let Element::Perm(p) = g else { unreachable!() };
                let mut m = vec![0i64; r * r];
                // e_i - e_last  ->  e_p(i) - e_p(last)
                let last = p[d - 1] as usize;
                for i in 0..r {
                    let a = p[i] as usize;
                    if a < r {
                        m[a * r + i] += 1;
                    }
                    if last < r {
                        m[last * r + i] -= 1;
                    }
                }
                m
            })
            .collect();
        Self::new(group, r, &images)
    }

    /// Block sum of two actions of the same group.
    pub fn direct_sum(&self, other: &LatticeAction) -> Result<Self> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let (a, b) = (self.rank, other.rank);
        let n = a + b;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(x, y)| {
                let mut m = vec![0i64; n * n];
                for i in 0..a {
                    for j in 0..a {
                        m[i * n + j] = x[i * a + j];
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m[(a + i) * n + a + j] = y[i * b + j];
                    }
                }
                m
            })
            .collect();
        Ok(LatticeAction {
            group: self.group.clone(),
            rank: n,
            matrices,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, g: usize) -> &[i64] {
        &self.matrices[g]
    }

    pub fn integer_matrix(&self, g: usize) -> IntegerMatrix {
        IntegerMatrix::from_i64(self.rank, self.rank, &self.matrices[g])
    }

    pub fn apply(&self, g: usize, v: &[i64]) -> Vec<i64> {
        mat_vec(self.rank, &self.matrices[g], v)
    }

    /// Trace of each class representative, in class order.
    pub fn class_traces(&self) -> Vec<i64> {
        self.group
            .conjugacy_classes()
            .iter()
            .map(|c| {
                (0..self.rank)
                    .map(|i| self.matrices[c.representative][i * self.rank + i])
                    .sum()
            })
            .collect()
    }
}

/// True iff only the identity acts trivially.
pub fn effective_action(action: &LatticeAction) -> bool {
    let id = identity(action.rank);
    (1..action.group.order()).all(|g| action.matrices[g] != id)
}

/// Saturated basis (columns) of the sublattice fixed by `s`.
pub fn fixed_sublattice(action: &LatticeAction, s: &Subgroup) -> IntegerMatrix {
    let n = action.rank;
    let mut stacked = IntegerMatrix::zero(0, n);
    for &g in &s.generators {
        let m = action.integer_matrix(g).sub(&IntegerMatrix::identity(n));
        stacked = stacked.vstack(&m);
    }
    if stacked.rows() == 0 {
        return IntegerMatrix::identity(n);
    }
    stacked.kernel()
}

/// `N = sum_{i<o} c^i` for `c` of order `o`.
fn norm_matrix(action: &LatticeAction, c: usize) -> IntegerMatrix {
    let g = &action.group;
    let n = action.rank;
    let mut acc = vec![0i64; n * n];
    let mut x = 0;
    for _ in 0..g.element_order(c) {
        for (a, b) in acc.iter_mut().zip(&action.matrices[x]) {
            *a += b;
        }
        x = g.mul(x, c);
    }
    IntegerMatrix::from_i64(n, n, &acc)
}

/// `A^C / N A` for the cyclic group generated by `c`.
#[derive(Debug, Clone)]
pub struct CyclicH2 {
    /// Columns span `A^C`.
    pub fixed: IntegerMatrix,
    /// Norm image in fixed-lattice coordinates, Smith-reduced.
    relations: Smith,
    /// Invariant factors different from 1; zero marks a free summand.
    pub invariants: Vec<BigInt>,
}

impl CyclicH2 {
    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Coordinates of a fixed vector in the quotient, one per invariant factor.
    pub fn class_of(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self
            .fixed
            .solve(v)
            .ok_or_else(|| Error::Contract("vector is not fixed by the cyclic subgroup".into()))?;
        let z = self.relations.u.mul_vec(&y);
        let k = self.fixed.cols();
        let mut out = Vec::new();
        for (i, zi) in z.iter().enumerate().take(k) {
            let d = if i < self.relations.rank {
                self.relations.d[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            if d.is_one() {
                continue;
            }
            out.push(if d.is_zero() {
                zi.clone()
            } else {
                zi.mod_floor(&d)
            });
        }
        Ok(out)
    }
}

pub fn h2_cyclic(action: &LatticeAction, c: usize) -> CyclicH2 {
    let s = action.group.subgroup(&[c]);
    let fixed = fixed_sublattice(action, &s);
    let norm = norm_matrix(action, c);
    let k = fixed.cols();
    let cols: Vec<Vec<BigInt>> = norm
        .columns()
        .iter()
        .map(|v| {
            fixed
                .solve(v)
                .expect("norm image lies in the fixed lattice")
        })
        .collect();
    let rel = IntegerMatrix::from_columns(k, &cols);
    let relations = rel.smith();
    let mut invariants = Vec::new();
    for i in 0..k {
        let d = if i < relations.rank {
            relations.d[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if !d.is_one() {
            invariants.push(d);
        }
    }
    CyclicH2 {
        fixed,
        relations,
        invariants,
    }
}

/// Normalized 2-cocycle stored as a full table.
#[derive(Debug, Clone)]
pub struct Cocycle2 {
    order: usize,
    rank: usize,
    values: Vec<i64>,
}

impl Cocycle2 {
    pub fn zero(action: &LatticeAction) -> Self {
        let n = action.group.order();
        Cocycle2 {
            order: n,
            rank: action.rank,
            values: vec![0; n * n * action.rank],
        }
    }

    /// Builds a cocycle from explicit values, unspecified pairs being zero,
    /// and checks normalization and the cocycle identity on every triple.
    pub fn from_entries(
        action: &LatticeAction,
        entries: &HashMap<(usize, usize), Vec<i64>>,
    ) -> Result<Self> {
        let mut f = Self::zero(action);
        for (&(g, h), v) in entries {
            if g >= f.order || h >= f.order || v.len() != f.rank {
                return Err(Error::Shape(format!("bad cocycle entry ({g},{h})")));
            }
            f.values[(g * f.order + h) * f.rank..][..f.rank].copy_from_slice(v);
        }
        f.check(action)?;
        Ok(f)
    }

    /// Cocycle of an affine lift: generator `i` maps to `x -> M x + t_i / den`.
    /// Fails when the lifts do not define a group of the same order mod `Z^n`.
    pub fn from_translations(
        action: &LatticeAction,
        translations: &[Vec<i64>],
        den: i64,
    ) -> Result<Self> {
        let g = &action.group;
        let n = action.rank;
        let gens = g.generator_indices();
        if translations.len() != gens.len() || translations.iter().any(|t| t.len() != n) || den <= 0
        {
            return Err(Error::Shape(
                "one translation vector per generator is required".into(),
            ));
        }
        // translation numerators mod den per element, by breadth-first search
        let mut t: Vec<Option<Vec<i64>>> = vec![None; g.order()];
        t[0] = Some(vec![0; n]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let tx = t[x].clone().expect("visited");
            for (s, ts) in gens.iter().zip(translations) {
                let y = g.mul(x, *s);
                let mv = mat_vec(n, action.matrix(x), ts);
                let ty: Vec<i64> = tx
                    .iter()
                    .zip(&mv)
                    .map(|(a, b)| (a + b).rem_euclid(den))
                    .collect();
                match &t[y] {
                    Some(e) if *e != ty => {
                        return Err(Error::Contract(
                            "affine lift does not close to a group of order |H|".into(),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        t[y] = Some(ty);
                        queue.push_back(y);
                    }
                }
            }
        }
        let t: Vec<Vec<i64>> = t.into_iter().map(|v| v.expect("closed")).collect();
        let mut f = Self::zero(action);
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                let mt = mat_vec(n, action.matrix(a), &t[b]);
                for k in 0..n {
                    let num = t[a][k] + mt[k] - t[ab][k];
                    debug_assert_eq!(num % den, 0);
                    f.values[(a * g.order() + b) * n + k] = num / den;
                }
            }
        }
        f.check(action)?;
        Ok(f)
    }

    /// Adds the coboundary of `b` (one vector per element, `b[0] = 0`).
    pub fn add_coboundary(&self, action: &LatticeAction, b: &[Vec<i64>]) -> Result<Self> {
        let g = &action.group;
        let n = self.rank;
        if b.len() != self.order || !b[0].iter().all(|&x| x == 0) {
            return Err(Error::Shape(
                "coboundary must be normalized with one vector per element".into(),
            ));
        }
        let mut out = self.clone();
        for x in 0..self.order {
            for y in 0..self.order {
                let gb = action.apply(x, &b[y]);
                let xy = g.mul(x, y);
                for k in 0..n {
                    out.values[(x * self.order + y) * n + k] += gb[k] - b[xy][k] + b[x][k];
                }
            }
        }
        Ok(out)
    }

    pub fn value(&self, g: usize, h: usize) -> &[i64] {
        &self.values[(g * self.order + h) * self.rank..][..self.rank]
    }

    fn check(&self, action: &LatticeAction) -> Result<()> {
        let g = &action.group;
        for x in 0..self.order {
            if self
                .value(0, x)
                .iter()
                .chain(self.value(x, 0))
                .any(|&v| v != 0)
            {
                return Err(Error::Contract("cocycle is not normalized".into()));
            }
        }
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = g.mul(a, b);
                for c in 0..self.order {
                    let bc = g.mul(b, c);
                    let af = action.apply(a, self.value(b, c));
                    let ok = (0..self.rank).all(|k| {
                        af[k] - self.value(ab, c)[k] + self.value(a, bc)[k] - self.value(a, b)[k]
                            == 0
                    });
                    if !ok {
                        return Err(Error::Contract(format!(
                            "cocycle identity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Holonomy action plus extension cocycle.
#[derive(Debug, Clone)]
pub struct CrystalData {
    pub action: LatticeAction,
    pub cocycle: Cocycle2,
}

impl CrystalData {
    pub fn split(action: LatticeAction) -> Self {
        let cocycle = Cocycle2::zero(&action);
        CrystalData { action, cocycle }
    }
}

/// `sum_{i<p} f(c^i, c)` for `c` of order `p`.
pub fn restriction_sum(crystal: &CrystalData, c: usize) -> Vec<BigInt> {
    let g = &crystal.action.group;
    let mut acc = vec![0i64; crystal.action.rank];
    let mut x = 0;
    for _ in 0..g.element_order(c) {
        for (a, v) in acc.iter_mut().zip(crystal.cocycle.value(x, c)) {
            *a += v;
        }
        x = g.mul(x, c);
    }
    acc.into_iter().map(BigInt::from).collect()
}

/// Class of the restricted extension to `<c>` in `A^C / N A`; zero iff it splits.
pub fn restriction_class(crystal: &CrystalData, c: usize) -> Result<Vec<BigInt>> {
    let g = &crystal.action.group;
    let o = g.element_order(c);
    if o != 1 && !is_prime(o) {
        return Err(Error::Contract(format!("element of composite order {o}")));
    }
    if o == 1 {
        return Ok(Vec::new());
    }
    let h2 = h2_cyclic(&crystal.action, c);
    h2.class_of(&restriction_sum(crystal, c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BieberbachVerdict {
    pub torsion_free: bool,
    /// Checked prime-order class representatives with their classes.
    pub checks: Vec<(usize, Vec<BigInt>)>,
    /// First representative whose restriction splits.
    pub witness: Option<usize>,
}

pub fn is_bieberbach(crystal: &CrystalData) -> Result<BieberbachVerdict> {
    if crystal.action.rank == 0 {
        return Err(Error::Degenerate("rank-0 lattice".into()));
    }
    if !effective_action(&crystal.action) {
        return Err(Error::NotCrystallographic(
            "some non-identity element acts trivially".into(),
        ));
    }
    let mut checks = Vec::new();
    let mut witness = None;
    for c in crystal.action.group.prime_order_class_representatives() {
        let class = restriction_class(crystal, c)?;
        if class.iter().all(Zero::is_zero) && witness.is_none() {
            witness = Some(c);
        }
        checks.push((c, class));
    }
    Ok(BieberbachVerdict {
        torsion_free: witness.is_none(),
        checks,
        witness,
    })
}

/// `N_H(C)` when the Sylow p-subgroup `C` is cyclic and fixes no non-zero vector.
pub fn split_witness(action: &LatticeAction, p: usize) -> Option<Subgroup> {
    let g = &action.group;
    let c = g.sylow_subgroup(p);
    if c.is_trivial() || !g.is_cyclic(&c) {
        return None;
    }
    if fixed_sublattice(action, &c).cols() != 0 {
        return None;
    }
    Some(g.normalizer(&c))
}

/// Hypothesis pair of the central isolator lemma.
pub fn central_isolator_applies(p: usize, n: usize, g: usize, h: &FiniteGroup) -> bool {
    p > n && is_prime(p) && h.normally_generates(g)
}
