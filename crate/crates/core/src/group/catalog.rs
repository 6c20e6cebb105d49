//! Concrete realizations of the six minimal perfect groups.

use super::{close_group, Element, FiniteGroup, Shape, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::field::field;

pub const CATALOG_IDS: [&str; 6] = ["A5", "PSL27", "SL28", "SL25", "SL27", "L32N23"];

fn mismatch(group: &str, detail: impl Into<String>) -> Error {
    Error::CatalogMismatch {
        group: group.to_string(),
        detail: detail.into(),
    }
}

fn special_linear(q: u32) -> Result<Vec<Element>> {
    let f = field(q)?;
    let one = 1;
    let m1 = f.neg(one);
    let w = f.primitive();
    Ok(vec![
        Element::finite_field(q, 2, &[one, one, 0, one])?,
        Element::finite_field(q, 2, &[0, one, m1, 0])?,
        Element::finite_field(q, 2, &[w, 0, 0, f.inv(w)])?,
    ])
}

/// Monomial 7×7 matrix sending `e_i` to `signs[i] * e_{perm[i]}`.
fn monomial(perm: &[usize], signs: &[i64]) -> Result<Element> {
    let n = perm.len();
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[perm[i] * n + i] = signs[i];
    }
    Element::integer(n, &m)
}

fn build(id: &str) -> Result<FiniteGroup> {
    let (shape, gens) = match id {
        "A5" => (
            Shape::Perm(5),
            vec![
                Element::from_cycles(5, &[&[0, 1, 2, 3, 4]])?,
                Element::from_cycles(5, &[&[0, 1, 2]])?,
            ],
        ),
        "PSL27" => (
            Shape::Perm(7),
            vec![
                Element::perm(&[1, 2, 3, 4, 5, 6, 0])?,
                Element::perm(&[0, 1, 4, 3, 2, 6, 5])?,
            ],
        ),
        "SL28" => (Shape::FiniteField(8, 2), special_linear(8)?),
        "SL25" => (Shape::FiniteField(5, 2), special_linear(5)?),
        "SL27" => (Shape::FiniteField(7, 2), special_linear(7)?),
        "L32N23" => (
            Shape::Integer(7),
            vec![
                monomial(&[1, 2, 3, 4, 5, 6, 0], &[1; 7])?,
                monomial(&[0, 1, 4, 3, 2, 6, 5], &[1, 1, 1, 1, -1, -1, 1])?,
            ],
        ),
        other => return Err(Error::UnknownGroup(other.to_string())),
    };
    FiniteGroup::close(id, shape, &gens, DEFAULT_CAP)
}

fn expected_order(id: &str) -> usize {
    match id {
        "A5" => 60,
        "PSL27" => 168,
        "SL28" => 504,
        "SL25" => 120,
        "SL27" => 336,
        _ => 1344,
    }
}

/// Builds a catalog group and runs its load-time checks.
pub fn catalog_group(id: &str) -> Result<FiniteGroup> {
    let g = build(id)?;
    let want = expected_order(id);
    if g.order() != want {
        return Err(mismatch(
            id,
            format!("order {} instead of {want}", g.order()),
        ));
    }
    if !g.is_perfect() {
        return Err(mismatch(id, "not perfect"));
    }
    if id == "L32N23" {
        verify_nonsplit(&g)?;
    }
    Ok(g)
}

/// Normal 2^3 of sign changes, quotient of order 168 with 6 classes, and an
/// element of order 8 (an affine group 2^3:L3(2) has none).
fn verify_nonsplit(g: &FiniteGroup) -> Result<()> {
    let id = "L32N23";
    let diag: Vec<usize> = (0..g.order())
        .filter(|&i| {
            let (n, m) = g.element(i).as_integer().expect("integer group");
            (0..n).all(|r| (0..n).all(|c| r == c || m[r * n + c] == 0))
        })
        .collect();
    let sub = g.subgroup(&diag);
    if sub.order() != 8 || !g.is_normal(&sub) || diag.iter().any(|&x| g.element_order(x) > 2) {
        return Err(mismatch(
            id,
            "no elementary abelian normal subgroup of order 8",
        ));
    }
    // quotient map: forget the signs
    let abs: Vec<Element> = g
        .generators()
        .iter()
        .map(|e| {
            let (n, m) = e.as_integer().expect("integer group");
            Element::integer(n, &m.iter().map(|x| x.abs()).collect::<Vec<_>>())
        })
        .collect::<Result<_>>()?;
    let q = close_group(Shape::Integer(7), &abs, DEFAULT_CAP)?;
    if q.order() != 168 || q.conjugacy_classes().len() != 6 {
        return Err(mismatch(id, "quotient is not of order 168 with 6 classes"));
    }
    if !(0..g.order()).any(|x| g.element_order(x) == 8) {
        return Err(mismatch(id, "extension splits"));
    }
    Ok(())
}

/// Catalog id, or `C<n>` for the cyclic group of order n on n points.
pub fn group_by_id(id: &str) -> Result<FiniteGroup> {
    if let Some(n) = id.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
        if n == 0 {
            return Err(Error::UnknownGroup(id.to_string()));
        }
        let cycle: Vec<usize> = (0..n).collect();
        let gens = if n == 1 {
            vec![]
        } else {
            vec![Element::from_cycles(n, &[&cycle])?]
        };
        return FiniteGroup::close(id, Shape::Perm(n), &gens, DEFAULT_CAP);
    }
    catalog_group(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_class_counts() {
        for (id, classes) in [
            ("A5", 5),
            ("PSL27", 6),
            ("SL28", 9),
            ("SL25", 9),
            ("SL27", 11),
        ] {
            let g = catalog_group(id).unwrap();
            assert_eq!(g.conjugacy_classes().len(), classes, "{id}");
            assert_eq!(
                g.conjugacy_classes().iter().map(|c| c.size).sum::<usize>(),
                g.order()
            );
        }
    }

    #[test]
    fn sl28_exponent() {
        assert_eq!(catalog_group("SL28").unwrap().exponent(), 126);
    }

    #[test]
    fn central_element_of_sl25() {
        let g = catalog_group("SL25").unwrap();
        let minus = Element::finite_field(5, 2, &[4, 0, 0, 4]).unwrap();
        let z = g.index_of(&minus).unwrap();
        assert_eq!(g.normal_closure(z).order(), 2);
        assert!(!g.normally_generates(z));
    }

    #[test]
    fn psl27_sylow_seven() {
        let g = catalog_group("PSL27").unwrap();
        let c = g.sylow_subgroup(7);
        assert_eq!(c.order(), 7);
        assert!(g.is_cyclic(&c));
        assert_eq!(g.normalizer(&c).order(), 21);
    }

    #[test]
    fn nonsplit_extension_loads() {
        let g = catalog_group("L32N23").unwrap();
        assert_eq!(g.order(), 1344);
    }

    #[test]
    fn unknown_and_cyclic_ids() {
        assert!(matches!(group_by_id("M11"), Err(Error::UnknownGroup(_))));
        assert_eq!(group_by_id("C4").unwrap().order(), 4);
        assert_eq!(group_by_id("C1").unwrap().order(), 1);
    }
}
