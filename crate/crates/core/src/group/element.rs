use std::fmt;

use crate::error::{Error, Result};
use crate::field::field;

/// A concrete group element in one of three representations.
///
/// Permutations act on `0..d` and compose right-to-left as functions:
/// `(a * b)(i) = a(b(i))`. Matrices multiply in the usual way.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Vec<u16>),
    /// Square matrix over GF(q), row-major, entries encoded as in [`crate::field`].
    FiniteField {
        q: u32,
        n: usize,
        entries: Vec<u32>,
    },
    /// Square integer matrix, row-major.
    Integer {
        n: usize,
        entries: Vec<i64>,
    },
}

/// Representation tag plus degree, used to check generator compatibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Perm(usize),
    FiniteField(u32, usize),
    Integer(usize),
}

impl Element {
    pub fn perm(images: &[usize]) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in images {
            if i >= d || seen[i] {
                return Err(Error::Shape(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Element::Perm(images.iter().map(|&i| i as u16).collect()))
    }

    /// Builds a permutation of degree `d` from disjoint cycles.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p: Vec<usize> = (0..d).collect();
        for c in cycles {
            for i in 0..c.len() {
                if c[i] >= d {
                    return Err(Error::Shape(format!("point {} out of range", c[i])));
                }
                p[c[i]] = c[(i + 1) % c.len()];
            }
        }
        Element::perm(&p)
    }

    pub fn finite_field(q: u32, n: usize, entries: &[u32]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Shape(format!("expected {} entries", n * n)));
        }
        let f = field(q)?;
        if entries.iter().any(|&e| e >= f.order()) {
            return Err(Error::Shape(format!("entry out of range for GF({q})")));
        }
        Ok(Element::FiniteField {
            q,
            n,
            entries: entries.to_vec(),
        })
    }

    pub fn integer(n: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Shape(format!("expected {} entries", n * n)));
        }
        let e = Element::Integer {
            n,
            entries: entries.to_vec(),
        };
        let det = crate::lattice::IntegerMatrix::from_i64(n, n, entries).determinant();
        if det != 1.into() && det != (-1).into() {
            return Err(Error::Shape(format!(
                "integer matrix is not unimodular (det {det})"
            )));
        }
        Ok(e)
    }

    pub fn shape(&self) -> Shape {
        match self {
            Element::Perm(p) => Shape::Perm(p.len()),
            Element::FiniteField { q, n, .. } => Shape::FiniteField(*q, *n),
            Element::Integer { n, .. } => Shape::Integer(*n),
        }
    }

    pub fn identity(shape: Shape) -> Self {
        match shape {
            Shape::Perm(d) => Element::Perm((0..d as u16).collect()),
            Shape::FiniteField(q, n) => {
                let mut entries = vec![0; n * n];
                for i in 0..n {
                    entries[i * n + i] = 1;
                }
                Element::FiniteField { q, n, entries }
            }
            Shape::Integer(n) => {
                let mut entries = vec![0; n * n];
                for i in 0..n {
                    entries[i * n + i] = 1;
                }
                Element::Integer { n, entries }
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Element::identity(self.shape())
    }

    /// Product `self * other`. Panics if the shapes differ; groups check
    /// compatibility once at construction.
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => {
                assert_eq!(a.len(), b.len(), "permutation degree mismatch");
                Element::Perm(b.iter().map(|&i| a[i as usize]).collect())
            }
            (
                Element::FiniteField { q, n, entries: a },
                Element::FiniteField {
                    q: q2,
                    n: n2,
                    entries: b,
                },
            ) => {
                assert!(q == q2 && n == n2, "finite-field matrix shape mismatch");
                let f = field(*q).expect("field checked at construction");
                let n = *n;
                let mut c = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut s = 0;
                        for k in 0..n {
                            s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
                        }
                        c[i * n + j] = s;
                    }
                }
                Element::FiniteField {
                    q: *q,
                    n,
                    entries: c,
                }
            }
            (Element::Integer { n, entries: a }, Element::Integer { n: n2, entries: b }) => {
                assert_eq!(n, n2, "integer matrix size mismatch");
                let n = *n;
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
                Element::Integer { n, entries: c }
            }
            _ => panic!("element representation mismatch"),
        }
    }

    /// Order of the element, by repeated multiplication.
    pub fn order(&self) -> usize {
        let id = Element::identity(self.shape());
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Determinant of a finite-field matrix (2×2 only), used for the SL check.
    pub fn ff_determinant(&self) -> Option<u32> {
        match self {
            Element::FiniteField { q, n: 2, entries } => {
                let f = field(*q).ok()?;
                Some(f.sub(f.mul(entries[0], entries[3]), f.mul(entries[1], entries[2])))
            }
            _ => None,
        }
    }

    /// The integer matrix entries, when this is an integer matrix.
    pub fn as_integer(&self) -> Option<(usize, &[i64])> {
        match self {
            Element::Integer { n, entries } => Some((*n, entries)),
            _ => None,
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "Perm{p:?}"),
            Element::FiniteField { q, entries, .. } => write!(f, "GF({q}){entries:?}"),
            Element::Integer { entries, .. } => write!(f, "Z{entries:?}"),
        }
    }
}
