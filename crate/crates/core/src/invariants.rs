//! Polynomial invariants read off the weighted quiver. Exponents are
//! elements of Z_m (or in-degrees), so a polynomial is a multiset of
//! exponent tuples; comparison is on that map, never on text.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arrowweight::{weight_multiset, TensorError, WeightTensor};
use crate::biquandle::{Biquandle, Endomorphism};
use crate::gausscode::GaussDiagram;
use crate::quiver::{build_quiver, QuiverError, WeightedQuiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantKind {
    /// `Σ_v u^{w(v)}`
    WeightPoly,
    /// `Σ_v u^{w(v)} w^{deg+(v)}`
    InDegree,
    /// `Σ_e s^{w(source)} t^{w(target)}`
    TwoVar,
    /// `Σ L(c) x^c` over weight classes `c` of the quotient.
    QuotientLoop,
}

impl InvariantKind {
    pub fn all() -> [InvariantKind; 4] {
        [InvariantKind::WeightPoly, InvariantKind::InDegree, InvariantKind::TwoVar, InvariantKind::QuotientLoop]
    }

    pub fn variables(self) -> &'static [char] {
        match self {
            InvariantKind::WeightPoly => &['u'],
            InvariantKind::InDegree => &['u', 'w'],
            InvariantKind::TwoVar => &['s', 't'],
            InvariantKind::QuotientLoop => &['x'],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::WeightPoly => "weight-poly",
            InvariantKind::InDegree => "indeg",
            InvariantKind::TwoVar => "twovar",
            InvariantKind::QuotientLoop => "qloop",
        }
    }
}

impl FromStr for InvariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        InvariantKind::all()
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown invariant {s:?}; expected weight-poly, indeg, twovar or qloop"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("term {term:?}: {message}")]
    Parse { term: String, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    kind: InvariantKind,
    terms: BTreeMap<Vec<u64>, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub exponents: Vec<u64>,
    pub coeff: u64,
}

impl Polynomial {
    pub fn zero(kind: InvariantKind) -> Self {
        Polynomial { kind, terms: BTreeMap::new() }
    }

    /// Adds `coeff` to the term with the given exponents.
    pub fn add(&mut self, exponents: Vec<u64>, coeff: u64) {
        assert_eq!(exponents.len(), self.kind.variables().len(), "exponent arity");
        if coeff == 0 {
            return;
        }
        *self.terms.entry(exponents).or_insert(0) += coeff;
    }

    pub fn kind(&self) -> InvariantKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u64>, u64> {
        &self.terms
    }

    pub fn coefficient(&self, exponents: &[u64]) -> u64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Sets the exponent of variable `var` to 0 everywhere.
    pub fn collapse(&self, var: usize) -> Polynomial {
        let mut p = Polynomial::zero(self.kind);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e[var] = 0;
            p.add(e, c);
        }
        p
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(e, &c)| TermJson { exponents: e.clone(), coeff: c }).collect()
    }

    /// Canonical text: terms by ascending exponent tuple joined by " + ",
    /// a factor with exponent 0 dropped, "^1" dropped, and a coefficient of
    /// 1 dropped when some factor remains.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let vars = self.kind.variables();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, &c)| {
                let mut mono = String::new();
                for (v, &e) in vars.iter().zip(exps) {
                    match e {
                        0 => {}
                        1 => mono.push(*v),
                        _ => {
                            let _ = fmt::Write::write_fmt(&mut mono, format_args!("{v}^{e}"));
                        }
                    }
                }
                if mono.is_empty() {
                    c.to_string()
                } else if c == 1 {
                    mono
                } else {
                    format!("{c}{mono}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Reads a sum of monomials such as `3u^4w^3`, `4x^2 + 4` or
    /// `10x^0+1x^3`. Exponents are reduced mod `modulus` for the variables
    /// that carry group elements (all but the in-degree variable `w`).
    pub fn parse(kind: InvariantKind, text: &str, modulus: u64) -> Result<Polynomial, PolyError> {
        let vars = kind.variables();
        let mut p = Polynomial::zero(kind);
        let text = text.trim();
        if text == "0" {
            return Ok(p);
        }
        for term in text.split('+') {
            let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let err = |message: &str| PolyError::Parse { term: term.trim().to_string(), message: message.to_string() };
            if t.is_empty() {
                return Err(err("empty term"));
            }
            let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
            let coeff: u64 = if digits == 0 { 1 } else { t[..digits].parse().map_err(|_| err("bad coefficient"))? };
            let mut exps = vec![0u64; vars.len()];
            let mut rest = &t[digits..];
            while let Some(v) = rest.chars().next() {
                let i = vars.iter().position(|&x| x == v).ok_or_else(|| err("unknown variable"))?;
                rest = &rest[v.len_utf8()..];
                let mut e = 1;
                if let Some(r) = rest.strip_prefix('^') {
                    let n = r.chars().take_while(|c| c.is_ascii_digit()).count();
                    if n == 0 {
                        return Err(err("missing exponent"));
                    }
                    e = r[..n].parse().map_err(|_| err("bad exponent"))?;
                    rest = &r[n..];
                }
                let group_valued = !(kind == InvariantKind::InDegree && v == 'w');
                exps[i] += e;
                if group_valued {
                    exps[i] %= modulus.max(1);
                }
            }
            p.add(exps, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Structural equality.
pub fn compare(a: &Polynomial, b: &Polynomial) -> bool {
    a == b
}

/// The requested polynomial read off an already built quiver.
pub fn from_quiver(q: &WeightedQuiver, kind: InvariantKind) -> Polynomial {
    let mut p = Polynomial::zero(kind);
    match kind {
        InvariantKind::WeightPoly => {
            for (_, w) in &q.vertices {
                p.add(vec![*w], 1);
            }
        }
        InvariantKind::InDegree => {
            for ((_, w), deg) in q.vertices.iter().zip(q.in_degrees()) {
                p.add(vec![*w, deg as u64], 1);
            }
        }
        InvariantKind::TwoVar => {
            for e in &q.edges {
                p.add(vec![q.vertices[e.source].1, q.vertices[e.target].1], 1);
            }
        }
        InvariantKind::QuotientLoop => {
            for (w, k) in q.quotient().loop_counts() {
                p.add(vec![w], k as u64);
            }
        }
    }
    p
}

pub fn phi_weight(d: &GaussDiagram, b: &Biquandle, w: &WeightTensor) -> Result<Polynomial, InvariantError> {
    let mut p = Polynomial::zero(InvariantKind::WeightPoly);
    for s in weight_multiset(d, b, w)? {
        p.add(vec![s], 1);
    }
    Ok(p)
}

pub fn phi_indegree(
    d: &GaussDiagram,
    b: &Biquandle,
    endos: &[Endomorphism],
    w: &WeightTensor,
) -> Result<Polynomial, InvariantError> {
    Ok(from_quiver(&build_quiver(d, b, endos, w)?, InvariantKind::InDegree))
}

pub fn phi_twovar(
    d: &GaussDiagram,
    b: &Biquandle,
    endos: &[Endomorphism],
    w: &WeightTensor,
) -> Result<Polynomial, InvariantError> {
    Ok(from_quiver(&build_quiver(d, b, endos, w)?, InvariantKind::TwoVar))
}

pub fn phi_quotient_loop(
    d: &GaussDiagram,
    b: &Biquandle,
    endos: &[Endomorphism],
    w: &WeightTensor,
) -> Result<Polynomial, InvariantError> {
    Ok(from_quiver(&build_quiver(d, b, endos, w)?, InvariantKind::QuotientLoop))
}

/// Any of the four invariants by kind.
pub fn compute(
    kind: InvariantKind,
    d: &GaussDiagram,
    b: &Biquandle,
    endos: &[Endomorphism],
    w: &WeightTensor,
) -> Result<Polynomial, InvariantError> {
    match kind {
        InvariantKind::WeightPoly => phi_weight(d, b, w),
        _ => Ok(from_quiver(&build_quiver(d, b, endos, w)?, kind)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homset::counting_invariant;
    use proptest::prelude::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    fn poly(kind: InvariantKind, terms: &[(&[u64], u64)]) -> Polynomial {
        let mut p = Polynomial::zero(kind);
        for (e, c) in terms {
            p.add(e.to_vec(), *c);
        }
        p
    }

    #[test]
    fn rendering() {
        assert_eq!(poly(InvariantKind::WeightPoly, &[(&[8], 2)]).render(), "2u^8");
        assert_eq!(poly(InvariantKind::TwoVar, &[(&[0, 0], 9)]).render(), "9");
        assert_eq!(poly(InvariantKind::QuotientLoop, &[(&[2], 4), (&[0], 4)]).render(), "4 + 4x^2");
        assert_eq!(poly(InvariantKind::QuotientLoop, &[(&[0], 10), (&[3], 1)]).render(), "10 + x^3");
        assert_eq!(poly(InvariantKind::InDegree, &[(&[1, 3], 3)]).render(), "3uw^3");
        assert_eq!(poly(InvariantKind::TwoVar, &[(&[1, 1], 9)]).render(), "9st");
        assert_eq!(Polynomial::zero(InvariantKind::TwoVar).render(), "0");
    }

    #[test]
    fn parsing_accepts_both_styles() {
        let k = InvariantKind::QuotientLoop;
        let a = Polynomial::parse(k, "10x^0+1x^3", 6).unwrap();
        let b = Polynomial::parse(k, "10 + x^3", 6).unwrap();
        assert!(compare(&a, &b));
        assert_eq!(Polynomial::parse(k, "4x^2 + 4", 4).unwrap().render(), "4 + 4x^2");
        assert_eq!(Polynomial::parse(InvariantKind::InDegree, "3w^3", 8).unwrap().coefficient(&[0, 3]), 3);
        assert!(Polynomial::parse(k, "3y^2", 4).is_err());
        assert!(Polynomial::parse(k, "3x^", 4).is_err());
    }

    #[test]
    fn ex1_polynomials() {
        let g = d("O1-O2-U1-U2-");
        let b = fixtures::ex1();
        let w = fixtures::ex1_tensor();
        let s = b.enumerate_endomorphisms();
        assert_eq!(phi_weight(&g, &b, &w).unwrap().render(), "2u^8");
        assert_eq!(phi_twovar(&g, &b, &s, &w).unwrap().render(), "4s^8t^8");
        assert_eq!(phi_indegree(&g, &b, &s, &w).unwrap().render(), "2u^8w^2");
        assert_eq!(phi_quotient_loop(&g, &b, &s, &w).unwrap().render(), "4x^8");
    }

    #[test]
    fn unknot_and_zero_tensor() {
        for f in fixtures::all() {
            let n = f.biquandle.size() as u64;
            let p = phi_weight(&GaussDiagram::unknot(), &f.biquandle, &f.tensor).unwrap();
            assert_eq!(p, poly(InvariantKind::WeightPoly, &[(&[0], n)]));
            let g = d("O1-O2-U1-U2-");
            let zero = WeightTensor::zero(f.tensor.modulus(), f.biquandle.size());
            let count = counting_invariant(&g, &f.biquandle) as u64;
            assert_eq!(phi_weight(&g, &f.biquandle, &zero).unwrap(), poly(InvariantKind::WeightPoly, &[(&[0], count)]));
            let edges = count * f.endos.len() as u64;
            assert_eq!(
                phi_twovar(&g, &f.biquandle, &f.endos, &zero).unwrap(),
                poly(InvariantKind::TwoVar, &[(&[0, 0], edges)])
            );
        }
    }

    #[test]
    fn sigma_in_degree_on_two_chord_knot() {
        let b = fixtures::sigma3();
        let s = fixtures::endos(&b, fixtures::SIGMA3_ENDOS);
        let p = phi_indegree(&d("O1-O2-U1-U2-"), &b, &s, &fixtures::sigma3_z8_tensor()).unwrap();
        assert_eq!(p.render(), "3u^4w^3");
        assert_eq!(p.collapse(0).render(), "3w^3");
    }

    #[test]
    fn kind_names_round_trip() {
        for k in InvariantKind::all() {
            assert_eq!(k.name().parse::<InvariantKind>().unwrap(), k);
        }
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(terms in proptest::collection::btree_map((0u64..7, 0u64..5), 1u64..20, 0..5)) {
            let mut p = Polynomial::zero(InvariantKind::InDegree);
            for ((a, b), c) in terms {
                p.add(vec![a, b], c);
            }
            let q = Polynomial::parse(InvariantKind::InDegree, &p.render(), 7).unwrap();
            prop_assert_eq!(p, q);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn coefficient_sums(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = crate::random::random_diagram(&mut rng, 5);
            for f in fixtures::all() {
                let q = build_quiver(&g, &f.biquandle, &f.endos, &f.tensor).unwrap();
                let v = q.vertex_count() as u64;
                let e = v * f.endos.len() as u64;
                prop_assert_eq!(from_quiver(&q, InvariantKind::WeightPoly).coefficient_sum(), v);
                prop_assert_eq!(from_quiver(&q, InvariantKind::InDegree).coefficient_sum(), v);
                prop_assert_eq!(from_quiver(&q, InvariantKind::TwoVar).coefficient_sum(), e);
                prop_assert!(from_quiver(&q, InvariantKind::QuotientLoop).coefficient_sum() <= e);
                prop_assert_eq!(v as usize, counting_invariant(&g, &f.biquandle));
            }
        }
    }
}
