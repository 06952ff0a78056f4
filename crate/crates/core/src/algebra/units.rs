use std::collections::BTreeSet;

use super::element::{gen, gen_star, unit, Element};
use super::normal::canonical;
use crate::analysis::{is_line_point, is_saturated_hereditary, socle_vertices, AnalysisOptions, Verdict3, VertexSet};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{KGraph, KGraphPresentation, VertexId};

/// `u_W = sum of p_v` over the ranges of all legs of `a`, so `u_W a = a = a u_W`.
pub fn local_unit<G: KGraph + ?Sized>(g: &G, a: &Element) -> Result<Element> {
    a.check(g)?;
    let w: BTreeSet<&VertexId> = a.terms().flat_map(|(m, _)| [m.mu.range(), m.nu.range()]).collect();
    w.into_iter().try_fold(Element::zero(g), |acc, v| acc.add(&unit(g, v)?))
}

/// Membership in the graded ideal `I_H`: every monomial of the canonical normal form
/// has its source in `H`.
pub fn in_graded_ideal(g: &KGraphPresentation, a: &Element, h: &VertexSet) -> Result<bool> {
    if !is_saturated_hereditary(g, h)? {
        return Err(Error::NotSaturatedHereditary(
            "an ideal needs a saturated hereditary set",
        ));
    }
    Ok(canonical(g, a)?.terms().all(|(m, _)| h.contains(g, m.source())))
}

/// Membership in the socle, the ideal of the closure of the line points.
pub fn in_socle(g: &KGraphPresentation, a: &Element, opts: AnalysisOptions) -> Result<bool> {
    in_graded_ideal(g, a, &socle_vertices(g, opts)?)
}

/// The matrix unit `e_{i,j}` built along the first coordinate of the unique path at the
/// line point `v`.
pub fn matrix_unit(g: &KGraphPresentation, v: &VertexId, i: u32, j: u32, opts: AnalysisOptions) -> Result<Element> {
    let y = match is_line_point(g, v, opts)?.verdict {
        Verdict3::Yes(y) => y,
        Verdict3::No(_) => return Err(Error::NotLinePoint(v.to_string())),
        Verdict3::Unknown { bound } => return Err(Error::Undecided(format!("{v} is undecided at depth {bound}"))),
    };
    let along = |n: u32| Degree::unit(g.rank(), 1).scaled(n);
    match i.cmp(&j) {
        std::cmp::Ordering::Less => gen(g, &y.segment(g, &along(i), &along(j))?),
        std::cmp::Ordering::Greater => gen_star(g, &y.segment(g, &along(j), &along(i))?),
        std::cmp::Ordering::Equal => unit(g, &y.vertex_at(g, &along(j))?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::t5;
    use crate::algebra::{mul, normal_form};
    use crate::graph::{comb, omega};
    use crate::path::path_from_ids;

    #[test]
    fn local_units() {
        let g = t5();
        let f = path_from_ids(&g, &["f"]).unwrap();
        let a = gen(&g, &f).unwrap();
        let u = local_unit(&g, &a).unwrap();
        assert_eq!(
            u,
            unit(&g, &"w".into())
                .unwrap()
                .add(&unit(&g, &"u1".into()).unwrap())
                .unwrap()
        );
        assert_eq!(mul(&g, &u, &a).unwrap(), a);
        assert_eq!(mul(&g, &a, &u).unwrap(), a);
        assert!(local_unit(&g, &Element::zero(&g)).unwrap().is_empty());
    }

    #[test]
    fn ideals() {
        let g = t5();
        let opts = AnalysisOptions::default();
        let h = VertexSet::from_vertices(&g, [&"u1".into()]).unwrap();
        let f = path_from_ids(&g, &["f"]).unwrap();
        let ff = mul(&g, &gen(&g, &f).unwrap(), &gen_star(&g, &f).unwrap()).unwrap();
        let pw = unit(&g, &"w".into()).unwrap();
        assert!(in_graded_ideal(&g, &ff, &h).unwrap());
        assert!(!in_graded_ideal(&g, &pw, &h).unwrap());
        assert!(in_graded_ideal(&g, &Element::zero(&g), &h).unwrap());
        let bad = VertexSet::from_vertices(&g, [&"w".into()]).unwrap();
        assert!(in_graded_ideal(&g, &pw, &bad).is_err());
        assert!(!in_socle(&g, &pw, opts).unwrap());
        assert!(in_socle(&g, &Element::zero(&g), opts).unwrap());

        let o1 = KGraphPresentation::Omega(omega(1).unwrap());
        let p0 = unit(&o1, &"0".into()).unwrap();
        assert!(in_socle(&o1, &p0, opts).unwrap());
    }

    #[test]
    fn matrix_units_on_omega_and_comb() {
        let opts = AnalysisOptions::default();
        let o1 = KGraphPresentation::Omega(omega(1).unwrap());
        let e = |i, j| matrix_unit(&o1, &"0".into(), i, j, opts).unwrap();
        assert_eq!(mul(&o1, &e(0, 1), &e(1, 2)).unwrap(), e(0, 2));
        assert!(mul(&o1, &e(0, 1), &e(2, 3)).unwrap().is_empty());
        assert_eq!(e(3, 3), unit(&o1, &"3".into()).unwrap());

        let c2 = KGraphPresentation::Level(comb(2).unwrap());
        let e = |i, j| matrix_unit(&c2, &"t1".into(), i, j, opts).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(e(i, j).involution(), e(j, i));
                for l in 0..4 {
                    let prod = mul(&c2, &e(i, j), &e(j, l)).unwrap();
                    let m = Degree::new(vec![i.max(j).max(l)]);
                    assert_eq!(
                        normal_form(&c2, &prod, &m).unwrap(),
                        normal_form(&c2, &e(i, l), &m).unwrap()
                    );
                }
            }
        }
        assert!(matches!(
            matrix_unit(&c2, &"t2".into(), 0, 1, opts),
            Err(Error::NotLinePoint(_))
        ));
    }
}
