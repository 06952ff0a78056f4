//! Exact arithmetic in the Kumjian-Pask algebra `KP_Q(Lambda)`.
//!
//! Elements are finite rational combinations of monomials `s_mu s_nu*` with
//! `s(mu) = s(nu)`. Products are reduced eagerly: `s_nu* s_alpha` expands over the
//! common extensions of `nu` and `alpha`, so every result is again such a span.

mod element;
mod normal;
mod units;

pub use element::{format_scalar, gen, gen_star, parse_scalar, unit, Element, Monomial, Scalar};
pub use normal::{canonical, compress, equals, is_zero, normal_form, CompressReport};
pub use units::{in_graded_ideal, in_socle, local_unit, matrix_unit};

use crate::error::Result;
use crate::graph::KGraph;
use crate::path::{compose, enumerate_paths, factor, Path};

/// A pair `(gamma, eta)` with `nu gamma = alpha eta` of degree `d(nu) v d(alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtensionPair {
    pub gamma: Path,
    pub eta: Path,
}

/// All minimal common extensions of `nu` and `alpha`, so that
/// `s_nu* s_alpha = sum s_gamma s_eta*`.
pub fn common_extensions<G: KGraph + ?Sized>(g: &G, nu: &Path, alpha: &Path) -> Result<Vec<ExtensionPair>> {
    if nu.range() != alpha.range() {
        return Ok(Vec::new());
    }
    let join = nu.degree().join(alpha.degree());
    let rest = join.checked_sub(nu.degree()).expect("join dominates");
    let mut out = Vec::new();
    for gamma in enumerate_paths(g, nu.source(), &rest)? {
        let lambda = compose(g, nu, &gamma)?;
        let (head, eta) = factor(g, &lambda, alpha.degree())?;
        if head == *alpha {
            out.push(ExtensionPair { gamma, eta });
        }
    }
    Ok(out)
}

/// The product `ab`.
pub fn mul<G: KGraph + ?Sized>(g: &G, a: &Element, b: &Element) -> Result<Element> {
    a.check(g)?;
    b.check(g)?;
    let mut out = Element::zero(g);
    for (m1, c1) in a.terms() {
        for (m2, c2) in b.terms() {
            let coeff = c1 * c2;
            for ext in common_extensions(g, &m1.nu, &m2.mu)? {
                let mu = compose(g, &m1.mu, &ext.gamma)?;
                let nu = compose(g, &m2.nu, &ext.eta)?;
                out.add_term(Monomial { mu, nu }, coeff.clone());
            }
        }
    }
    Ok(out)
}

/// Left-to-right product of several factors; the empty product is an error-free zero.
pub fn product<G: KGraph + ?Sized>(g: &G, factors: &[Element]) -> Result<Element> {
    let Some((first, rest)) = factors.split_first() else {
        return Ok(Element::zero(g));
    };
    rest.iter().try_fold(first.clone(), |acc, x| mul(g, &acc, x))
}
