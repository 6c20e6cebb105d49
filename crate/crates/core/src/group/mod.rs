//! Exact finite groups given by generators, closed exhaustively.
//!
//! Elements are addressed by their index in a deterministic element list:
//! breadth-first discovery from the identity, right-multiplying by the
//! sorted generators. All derived data (classes, power maps, subgroups) is
//! expressed in those indices.

pub mod catalog;
mod element;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;

pub use element::{Element, Shape};

use crate::error::{Error, Result};

/// Default closure cap.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest element index in the class.
    pub representative: usize,
    pub size: usize,
    /// Sorted member indices.
    pub members: Vec<usize>,
    /// Order of the representative.
    pub element_order: usize,
}

/// A subgroup, stored as a sorted list of element indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub generators: Vec<usize>,
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    shape: Shape,
    generators: Vec<Element>,
    gen_index: Vec<usize>,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    inverse: Vec<usize>,
    orders: Vec<usize>,
    classes: OnceLock<(Vec<ConjugacyClass>, Vec<usize>)>,
}

/// Closes `generators` under multiplication. All generators must share
/// `shape`; an empty list yields the trivial group of that shape.
pub fn close_group(shape: Shape, generators: &[Element], cap: usize) -> Result<FiniteGroup> {
    FiniteGroup::close("G", shape, generators, cap)
}

impl FiniteGroup {
    pub fn close(name: &str, shape: Shape, generators: &[Element], cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.shape() != shape) {
            return Err(Error::Shape(format!(
                "generator {g:?} does not have shape {shape:?}"
            )));
        }
        let mut gens: Vec<Element> = generators.to_vec();
        gens.sort();
        gens.dedup();
        let id = Element::identity(shape);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let y = elements[i].mul(g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::SizeLimit { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let gen_index = gens.iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup {
            name: name.to_string(),
            shape,
            generators: gens,
            gen_index,
            elements,
            index,
            inverse: Vec::new(),
            orders: Vec::new(),
            classes: OnceLock::new(),
        };
        group.fill_inverses_and_orders();
        Ok(group)
    }

    fn fill_inverses_and_orders(&mut self) {
        let n = self.elements.len();
        let mut orders = vec![0usize; n];
        let mut inverse = vec![0usize; n];
        for i in 0..n {
            if orders[i] != 0 {
                continue;
            }
            // walk the cyclic subgroup once, filling orders of all powers
            let mut powers = vec![0usize];
            let mut x = i;
            while x != 0 {
                powers.push(x);
                x = self.mul(x, i);
            }
            let k = powers.len();
            for (e, &y) in powers.iter().enumerate() {
                if orders[y] == 0 {
                    orders[y] = k / k.gcd(&e);
                }
                inverse[y] = powers[(k - e) % k];
            }
        }
        self.orders = orders;
        self.inverse = inverse;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g^-1 x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.inverse[g], self.mul(x, g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let e = k.rem_euclid(o);
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    fn class_data(&self) -> &(Vec<ConjugacyClass>, Vec<usize>) {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut seen = vec![false; n];
            let mut classes = Vec::new();
            for i in 0..n {
                if seen[i] {
                    continue;
                }
                let mut members = vec![i];
                seen[i] = true;
                let mut head = 0;
                while head < members.len() {
                    let x = members[head];
                    head += 1;
                    for &g in &self.gen_index {
                        let y = self.conjugate(x, g);
                        if !seen[y] {
                            seen[y] = true;
                            members.push(y);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(ConjugacyClass {
                    representative: members[0],
                    size: members.len(),
                    element_order: self.orders[members[0]],
                    members,
                });
            }
            classes.sort_by_key(|c| (c.size, c.element_order, c.representative));
            let mut class_of = vec![0; n];
            for (k, c) in classes.iter().enumerate() {
                for &m in &c.members {
                    class_of[m] = k;
                }
            }
            (classes, class_of)
        })
    }

    /// Conjugacy classes ordered by size, then representative order, then index.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.class_data().0
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_data().1[g]
    }

    /// Index of the class containing `g^k` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let rep = self.conjugacy_classes()[c].representative;
        self.class_of(self.pow(rep, k))
    }

    /// Class of inverses.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_class(c, -1)
    }

    /// Closure of the given element indices inside this group.
    pub fn subgroup(&self, generators: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = generators.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut elements = vec![0usize];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                }
            }
        }
        elements.sort_unstable();
        Subgroup {
            generators: gens,
            elements,
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            generators: self.gen_index.clone(),
            elements: (0..self.order()).collect(),
        }
    }

    pub fn is_cyclic(&self, s: &Subgroup) -> bool {
        s.elements.iter().any(|&g| self.orders[g] == s.order())
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        s.generators.iter().all(|&x| {
            self.gen_index
                .iter()
                .all(|&g| s.contains(self.conjugate(x, g)))
        })
    }

    /// Smallest normal subgroup containing all of `gs`.
    pub fn normal_closure_of(&self, gs: &[usize]) -> Subgroup {
        let mut conj: Vec<usize> = Vec::new();
        for &g in gs {
            let c = self.class_of(g);
            conj.extend_from_slice(&self.conjugacy_classes()[c].members);
        }
        self.subgroup(&conj)
    }

    pub fn normal_closure(&self, g: usize) -> Subgroup {
        self.normal_closure_of(&[g])
    }

    pub fn normally_generates(&self, g: usize) -> bool {
        self.normal_closure(g).order() == self.order()
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inverse[a], self.inverse[b]), self.mul(a, b))
    }

    /// Normal closure of the commutators of generator pairs.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = Vec::new();
        for &a in &self.gen_index {
            for &b in &self.gen_index {
                comms.push(self.commutator(a, b));
            }
        }
        self.normal_closure_of(&comms)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// `{g : g^-1 S g = S}`.
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = if s.generators.is_empty() {
            vec![]
        } else {
            s.generators.clone()
        };
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| gens.iter().all(|&x| s.contains(self.conjugate(x, g))))
            .collect();
        // The member list is already closed; pick a small generating set.
        let mut chosen: Vec<usize> = Vec::new();
        let mut current = self.subgroup(&[]);
        for &g in &members {
            if !current.contains(g) {
                chosen.push(g);
                current = self.subgroup(&chosen);
            }
        }
        debug_assert_eq!(current.elements, members);
        current
    }

    /// One Sylow p-subgroup, grown one p-element at a time inside normalizers.
    pub fn sylow_subgroup(&self, p: usize) -> Subgroup {
        let mut target = 1;
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
            target *= p;
        }
        let mut current = self.subgroup(&[]);
        while current.order() < target {
            let next = (0..self.order()).find(|&x| {
                is_power_of(self.orders[x], p)
                    && !current.contains(x)
                    && current
                        .generators
                        .iter()
                        .all(|&y| current.contains(self.conjugate(y, x)))
            });
            let x = match next {
                Some(x) => x,
                None => break,
            };
            let mut gens = current.generators.clone();
            gens.push(x);
            current = self.subgroup(&gens);
        }
        current
    }

    /// Elements of prime order, one representative per conjugacy class.
    pub fn prime_order_class_representatives(&self) -> Vec<usize> {
        self.conjugacy_classes()
            .iter()
            .filter(|c| is_prime(c.element_order))
            .map(|c| c.representative)
            .collect()
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
