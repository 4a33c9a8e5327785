//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Variables are positional (`x0, x1, ...`); callers that care about names
//! (the `a17`-style basis parameters) keep their own name table and pass a
//! naming function when rendering. Terms are keyed by monomial in graded
//! lexicographic order, so equality is structural and the leading term is
//! simply the largest key.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::gauss::GaussianRational;

/// Exponent vector with trailing zeros stripped, so equal monomials are
/// structurally equal regardless of how many variables were in play.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Box::new([]))
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0u32; index + 1];
        exps[index] = 1;
        Monomial(exps.into_boxed_slice())
    }

    fn normalized(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Variables with nonzero exponent, ascending.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let len = self.0.len().max(rhs.0.len());
        let exps = (0..len)
            .map(|i| self.exponent(i) + rhs.exponent(i))
            .collect();
        Monomial::normalized(exps)
    }

    fn without_var(&self, index: usize) -> Monomial {
        let mut exps = self.0.to_vec();
        if index < exps.len() {
            exps[index] = 0;
        }
        Monomial::normalized(exps)
    }

    fn with_exponent(&self, index: usize, e: u32) -> Monomial {
        let mut exps = self.0.to_vec();
        if exps.len() <= index {
            exps.resize(index + 1, 0);
        }
        exps[index] = e;
        Monomial::normalized(exps)
    }
}

/// Graded lexicographic: higher total degree first, ties broken by the
/// earliest variable with the larger exponent (`x0 > x1 > ...`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianRational::one())
    }

    pub fn var(index: usize) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(index), GaussianRational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// Terms from the leading monomial down.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn as_constant(&self) -> Option<&GaussianRational> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Monomial::one()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Variables appearing anywhere in the polynomial, ascending.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars.sort_unstable();
        vars
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Scaled so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p == c*v` for a single variable `v`: returns `(v, c)`.
    pub fn single_variable(&self) -> Option<(usize, &GaussianRational)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let mut vars = m.vars();
        let v = vars.next()?;
        if vars.next().is_some() || m.exponent(v) != 1 {
            return None;
        }
        Some((v, c))
    }

    /// `p == c*v + r` with a constant `c != 0` and `r` free of `v`:
    /// returns `(c, r)`.
    pub fn linear_with_constant_coeff(&self, var: usize) -> Option<(GaussianRational, Polynomial)> {
        let mut coeff = GaussianRational::zero();
        let mut rest = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                rest.add_term(m.clone(), c.clone());
            } else if e == 1 && m.degree() == 1 {
                coeff = c.clone();
            } else {
                return None;
            }
        }
        if coeff.is_zero() {
            None
        } else {
            Some((coeff, rest))
        }
    }

    /// `p == v^2 - c` with a constant `c`: returns `(v, c)`.
    pub fn square_minus_constant(&self) -> Option<(usize, GaussianRational)> {
        let (lead, lead_coeff) = self.leading()?;
        let mut vars = lead.vars();
        let v = vars.next()?;
        if vars.next().is_some() || lead.exponent(v) != 2 {
            return None;
        }
        let mut c = GaussianRational::zero();
        for (m, k) in &self.terms {
            if m == lead {
                continue;
            }
            if m.is_one() {
                c = -(k.checked_div(lead_coeff).expect("nonzero leading"));
            } else {
                return None;
            }
        }
        Some((v, c))
    }

    /// Substitutes `replacement` for `var`. Errors if the replacement
    /// mentions `var` itself.
    pub fn substitute(&self, var: usize, replacement: &Polynomial) -> Result<Polynomial> {
        if replacement.contains_var(var) {
            return Err(Error::SelfReferentialSubstitution);
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
            } else {
                let base = Polynomial::from_terms([(m.without_var(var), c.clone())]);
                out = &out + &(&base * &replacement.pow(e));
            }
        }
        Ok(out)
    }

    /// Rewrites `var^2 -> c` until the degree in `var` is at most 1.
    pub fn reduce_square(&self, var: usize, c: &GaussianRational) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, k) in &self.terms {
            let e = m.exponent(var);
            if e < 2 {
                out.add_term(m.clone(), k.clone());
            } else {
                out.add_term(m.with_exponent(var, e % 2), k * &c.pow(e / 2));
            }
        }
        out
    }

    /// Evaluates at a full assignment indexed by variable.
    pub fn evaluate(&self, values: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in m.vars() {
                term = &term * &values[v].pow(m.exponent(v));
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Deterministic total order: compare term lists from the leading
    /// monomial down, then coefficients. Not a ring order; used for stable
    /// sorting and canonical orbit representatives.
    pub fn cmp_order(&self, other: &Polynomial) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }

    /// Renders with a caller-supplied variable namer, leading term first:
    /// `a27^2 - 1`, `a37*a67 - a47*a57 + a27`.
    pub fn text(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mono_text = |m: &Monomial| -> String {
            m.vars()
                .map(|v| {
                    let e = m.exponent(v);
                    if e == 1 {
                        name(v)
                    } else {
                        format!("{}^{}", name(v), e)
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        let coeff_text = |c: &GaussianRational| -> String {
            let t = c.to_string();
            if t.contains(' ') {
                format!("({t})")
            } else {
                t
            }
        };
        let mut out = String::new();
        for (idx, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_display_negative();
            let abs = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if m.is_one() {
                out.push_str(&coeff_text(&abs));
            } else if abs.is_one() {
                out.push_str(&mono_text(m));
            } else {
                out.push_str(&format!("{}*{}", coeff_text(&abs), mono_text(m)));
            }
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(v: usize) -> String {
        format!("x{v}")
    }

    #[test]
    fn graded_lex_order() {
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        let x0x1 = x0.mul(&x1);
        let x0sq = x0.mul(&x0);
        assert!(x0 > x1);
        assert!(x0sq > x0x1);
        assert!(x0x1 > x0);
        // Same degree, earlier variable dominates.
        let x1sq = x1.mul(&x1);
        assert!(x0x1 > x1sq);
    }

    #[test]
    fn substitution_chain_reaches_constant() {
        // x0*x1*x2 - x1^2 - x2^2 - 1 with x2 := 0 then x1 := 0 gives -1.
        let p = &(&(&Polynomial::var(0) * &Polynomial::var(1)) * &Polynomial::var(2))
            - &(&(&Polynomial::var(1) * &Polynomial::var(1))
                + &(&(&Polynomial::var(2) * &Polynomial::var(2)) + &Polynomial::one()));
        let q = p.substitute(2, &Polynomial::zero()).unwrap();
        let r = q.substitute(1, &Polynomial::zero()).unwrap();
        assert_eq!(r, Polynomial::constant(GaussianRational::from_int(-1)));
    }

    #[test]
    fn substitute_var_to_zero_and_root() {
        let x = Polynomial::var(0);
        assert_eq!(x.substitute(0, &Polynomial::zero()).unwrap(), Polynomial::zero());
        let p = &(&x * &x) - &Polynomial::one();
        assert_eq!(p.substitute(0, &Polynomial::one()).unwrap(), Polynomial::zero());
    }

    #[test]
    fn substitute_rejects_self_reference() {
        let p = Polynomial::var(0);
        let r = &Polynomial::var(0) + &Polynomial::one();
        assert!(matches!(
            p.substitute(0, &r),
            Err(Error::SelfReferentialSubstitution)
        ));
    }

    #[test]
    fn shape_queries() {
        let p = Polynomial::var(3).scale(&GaussianRational::from_int(2));
        assert_eq!(p.single_variable().map(|(v, _)| v), Some(3));

        // x1 + x0*x2 is linear in x1 with constant coefficient.
        let q = &Polynomial::var(1) + &(&Polynomial::var(0) * &Polynomial::var(2));
        let (c, r) = q.linear_with_constant_coeff(1).unwrap();
        assert_eq!(c, GaussianRational::one());
        assert_eq!(r, &Polynomial::var(0) * &Polynomial::var(2));
        assert!(q.linear_with_constant_coeff(0).is_none());

        let sq = &(&Polynomial::var(2) * &Polynomial::var(2)) - &Polynomial::one();
        let (v, c) = sq.square_minus_constant().unwrap();
        assert_eq!(v, 2);
        assert_eq!(c, GaussianRational::one());
    }

    #[test]
    fn monic_normalization() {
        let p = &(-&Polynomial::var(0)) + &Polynomial::constant(GaussianRational::from_int(5));
        let m = p.monic();
        assert_eq!(m.leading().unwrap().1, &GaussianRational::one());
        assert_eq!(m.constant_term(), GaussianRational::from_int(-5));
    }

    #[test]
    fn rendering() {
        let p = &(&Polynomial::var(0) * &Polynomial::var(1))
            - &Polynomial::constant(GaussianRational::from_int(1));
        assert_eq!(p.text(&name), "x0*x1 - 1");
        let q = &(&Polynomial::var(0) * &Polynomial::var(0)) + &Polynomial::var(1);
        assert_eq!(q.text(&name), "x0^2 + x1");
        assert_eq!(Polynomial::zero().text(&name), "0");
    }

    #[test]
    fn reduce_square_rewrites_even_powers() {
        // x0^3 with x0^2 -> -1 becomes -x0.
        let p = Polynomial::var(0).pow(3);
        let r = p.reduce_square(0, &GaussianRational::from_int(-1));
        assert_eq!(r, -&Polynomial::var(0));
    }
}
