//! Class functions, character tables and rational characters.

mod dixon;
mod rational;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use rational::{rationalize, CharacterMultiset, RationalCharacter, RationalTable};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// One cyclotomic value per conjugacy class of the owning group.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.conjugacy_classes().len() {
            return Err(Error::Shape(format!(
                "{} values for {} classes",
                values.len(),
                group.conjugacy_classes().len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn from_integers(group: Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        Self::new(
            group,
            values.iter().map(|&v| Cyclotomic::from_int(v)).collect(),
        )
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let r = group.conjugacy_classes().len();
        ClassFunction {
            group,
            values: vec![Cyclotomic::zero(); r],
        }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let r = group.conjugacy_classes().len();
        ClassFunction {
            group,
            values: vec![Cyclotomic::one(); r],
        }
    }

    /// Character of the regular representation.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let mut f = Self::zero(group.clone());
        f.values[0] = Cyclotomic::from_int(group.order() as i64);
        f
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Values as integers when they all are.
    pub fn integer_values(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(Cyclotomic::to_integer).collect()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<Self> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(ClassFunction {
            group: self.group.clone(),
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, k: i64) -> Self {
        let q = BigRational::from_integer(BigInt::from(k));
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(&q)).collect(),
        }
    }

    /// `g -> f(g^k)`.
    pub fn adams(&self, k: i64) -> Self {
        let values = (0..self.values.len())
            .map(|c| self.values[self.group.power_class(c, k)].clone())
            .collect();
        ClassFunction {
            group: self.group.clone(),
            values,
        }
    }

    fn combine(&self, power: usize, sign: i64, divisor: i64) -> Self {
        let q = BigRational::new(BigInt::from(1), BigInt::from(divisor));
        let s = BigRational::from_integer(BigInt::from(sign));
        let adams = self.adams(power as i64);
        let values = self
            .values
            .iter()
            .zip(&adams.values)
            .map(|(v, a)| {
                let mut p = v.clone();
                for _ in 1..power {
                    p = &p * v;
                }
                (&p + &a.scale(&s)).scale(&q)
            })
            .collect();
        ClassFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// `(f(g)^2 - f(g^2)) / 2`.
    pub fn exterior_square(&self) -> Self {
        self.combine(2, -1, 2)
    }

    /// `(f(g)^2 + f(g^2)) / 2`.
    pub fn symmetric_square(&self) -> Self {
        self.combine(2, 1, 2)
    }

    /// Degree-k layer of the free Lie algebra, k in {1, 2, 3}.
    pub fn lie_power(&self, k: usize) -> Result<Self> {
        match k {
            1 => Ok(self.clone()),
            2 => Ok(self.exterior_square()),
            3 => Ok(self.combine(3, -1, 3)),
            _ => Err(Error::Contract(format!("Lie power {k} is outside 1..=3"))),
        }
    }

    /// `(1/|G|) sum_g f(g) conj(h(g))`.
    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic> {
        self.same_group(other)?;
        let classes = self.group.conjugacy_classes();
        let mut acc = Cyclotomic::zero();
        for (i, c) in classes.iter().enumerate() {
            let term = &self.values[i] * &other.values[i].conj();
            acc = &acc + &term.scale(&BigRational::from_integer(BigInt::from(c.size)));
        }
        Ok(acc.scale(&BigRational::new(
            BigInt::from(1),
            BigInt::from(self.group.order()),
        )))
    }

    /// `(1/|G|) sum_g f(g^2)`, defined for irreducible characters.
    pub fn frobenius_schur(&self) -> Result<i64> {
        if self.inner_product(self)? != Cyclotomic::one() {
            return Err(Error::Contract(
                "Frobenius–Schur indicator needs an irreducible character".into(),
            ));
        }
        let sq = self.adams(2);
        let classes = self.group.conjugacy_classes();
        let mut acc = Cyclotomic::zero();
        for (i, c) in classes.iter().enumerate() {
            acc = &acc + &sq.values[i].scale(&BigRational::from_integer(BigInt::from(c.size)));
        }
        let v = acc.scale(&BigRational::new(
            BigInt::from(1),
            BigInt::from(self.group.order()),
        ));
        v.to_i64()
            .ok_or_else(|| Error::Internal(format!("indicator {v} is not an integer")))
    }
}

/// Complete table of irreducible complex characters.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles
            .iter()
            .map(|c| c.degree().to_i64().expect("integer degree"))
            .collect()
    }
}

/// Irreducible characters ordered by degree, the trivial character first,
/// ties broken by the printed value lists.
pub fn character_table(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    let raw = dixon::character_values(&group)?;
    let mut irreducibles: Vec<ClassFunction> = raw
        .into_iter()
        .map(|values| ClassFunction {
            group: group.clone(),
            values,
        })
        .collect();
    let key = |c: &ClassFunction| {
        let trivial = c.values.iter().all(|v| *v == Cyclotomic::one());
        let deg = c.degree().to_i64().unwrap_or(0);
        let printed: Vec<String> = c.values.iter().map(|v| v.to_string()).collect();
        (!trivial, deg, printed)
    };
    irreducibles.sort_by_key(key);
    Ok(CharacterTable {
        group,
        irreducibles,
    })
}
