//! Normal forms and equality.
//!
//! For a fixed degree `m` the monomials `s_alpha s_beta*` with `d(beta) = m` are
//! linearly independent, so raising every right leg to a common degree and merging
//! coefficients decides equality.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use super::element::{gen, gen_star, unit, Element, Monomial, Scalar};
use super::mul;
use crate::degree::{Degree, DegreeDelta};
use crate::error::{Error, Result};
use crate::graph::KGraph;
use crate::path::{compose, enumerate_paths, Path};

/// Rewrites `a` so every right leg has degree exactly `m`, using
/// `s_alpha s_beta* = sum over lambda in s(beta) Lambda^(m - d(beta)) of s_{alpha lambda} s_{(beta lambda)*}`.
pub fn normal_form<G: KGraph + ?Sized>(g: &G, a: &Element, m: &Degree) -> Result<Element> {
    a.check(g)?;
    if m.rank() != g.rank() {
        return Err(Error::RankMismatch {
            expected: g.rank(),
            got: m.rank(),
        });
    }
    let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (mono, c) in a.terms() {
        let rest = m
            .checked_sub(mono.nu.degree())
            .ok_or_else(|| Error::NotDominating(m.to_string()))?;
        for lambda in enumerate_paths(g, mono.source(), &rest)? {
            let raised = Monomial {
                mu: compose(g, &mono.mu, &lambda)?,
                nu: compose(g, &mono.nu, &lambda)?,
            };
            *terms.entry(raised).or_insert_with(Scalar::zero) += c;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(a.with_terms(terms))
}

/// The normal form at the join of all right-leg degrees.
pub fn canonical<G: KGraph + ?Sized>(g: &G, a: &Element) -> Result<Element> {
    let m = a
        .terms()
        .fold(Degree::zero(g.rank()), |m, (mono, _)| m.join(mono.nu.degree()));
    normal_form(g, a, &m)
}

pub fn is_zero<G: KGraph + ?Sized>(g: &G, a: &Element) -> Result<bool> {
    Ok(canonical(g, a)?.is_empty())
}

pub fn equals<G: KGraph + ?Sized>(g: &G, a: &Element, b: &Element) -> Result<bool> {
    is_zero(g, &a.sub(b)?)
}

/// `s_mu* a s_nu` together with a check of its zero-graded part.
#[derive(Clone, Debug, Serialize)]
pub struct CompressReport {
    pub element: Element,
    pub zero_component: Element,
    /// `r_{mu,nu}`, the coefficient of `s_mu s_nu*` in the normal form of `a`.
    pub coefficient: String,
    /// The zero-graded part equals `r_{mu,nu} p_{s(mu)}` and the compression is nonzero.
    pub holds: bool,
}

/// Compresses `a` by the monomial `(mu, nu)` of its canonical normal form.
pub fn compress<G: KGraph + ?Sized>(g: &G, mu: &Path, a: &Element, nu: &Path) -> Result<CompressReport> {
    let nf = canonical(g, a)?;
    let mono = Monomial {
        mu: mu.clone(),
        nu: nu.clone(),
    };
    let r = nf.coefficient(&mono);
    if r.is_zero() {
        return Err(Error::NotAMonomial(mu.to_string(), nu.to_string()));
    }
    let element = mul(g, &mul(g, &gen_star(g, mu)?, &nf)?, &gen(g, nu)?)?;
    let zero_component = element.graded_component(&DegreeDelta::zero(g.rank()));
    let expected = unit(g, mu.source())?.scale(&r);
    let holds = equals(g, &zero_component, &expected)? && !is_zero(g, &element)?;
    Ok(CompressReport {
        element,
        zero_component,
        coefficient: super::element::format_scalar(&r),
        holds,
    })
}
