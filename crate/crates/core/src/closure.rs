//! Closure conditions: for a canonical basis with symbolic parameters, every
//! ordered product of basis vectors leaves a membership residual at the pivot
//! coordinate. The subspace is multiplicatively closed at a parameter point
//! iff all residuals vanish there, so the residuals are the condition system
//! the solver works on.

use num_traits::Signed;

use crate::clifford::MultiVector;
use crate::error::Result;
use crate::scalars::{GaussianRational, Polynomial, Scalar};
use crate::subspace::{CanonicalBasis, EchelonSpan};

/// One closure condition with the ordered product `(i, j)` that produced it
/// (1-based slots, first occurrence wins on duplicates).
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub poly: Polynomial,
    pub product: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct ConditionSet {
    pub coords: usize,
    pub basis_index: usize,
    pub param_names: Vec<String>,
    pub items: Vec<Condition>,
}

impl ConditionSet {
    pub fn name_fn(&self) -> impl Fn(usize) -> String + '_ {
        move |v: usize| self.param_names[v].clone()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.items.iter().map(|c| c.poly.clone()).collect()
    }

    /// Evaluates every condition at a parameter assignment; true iff all
    /// vanish (exact).
    pub fn satisfied_at(&self, values: &[GaussianRational]) -> bool {
        self.items.iter().all(|c| c.poly.evaluate(values).is_zero())
    }

    /// Reduces the raw set to the summary list a human derivation keeps:
    ///
    /// 1. single-variable conditions eliminate their variable everywhere
    ///    else but stay listed themselves;
    /// 2. unit relations `v^2 = c` rewrite even powers and identify the
    ///    one-unit-multiple orbit of each condition;
    /// 3. echelon substitutions (`v = f(lower vars)` read off a surviving
    ///    condition) drop a condition whose image is another survivor.
    ///
    /// Every drop replaces a condition by members of the remaining list, so
    /// the reduced list generates the same solution set.
    pub fn reduced(&self) -> Vec<Polynomial> {
        let mut items: Vec<Polynomial> = Vec::new();
        for c in &self.items {
            let m = c.poly.monic();
            if !m.is_zero() && !items.contains(&m) {
                items.push(m);
            }
        }

        // Stage 1: zero out bare variables everywhere else.
        loop {
            let bare = items.iter().find_map(|p| {
                p.single_variable()
                    .map(|(v, _)| v)
                    .filter(|v| items.iter().any(|q| q != p && q.contains_var(*v)))
            });
            let Some(v) = bare else { break };
            let mut next: Vec<Polynomial> = Vec::new();
            for p in &items {
                let image = if p.single_variable().map(|(w, _)| w) == Some(v) {
                    p.clone()
                } else {
                    p.substitute(v, &Polynomial::zero()).expect("zero is var-free")
                };
                let m = image.monic();
                if !m.is_zero() && !next.contains(&m) {
                    next.push(m);
                }
            }
            items = next;
        }

        // Stage 2: collect unit relations v^2 = c (c a nonzero constant).
        let squares: Vec<(usize, GaussianRational)> = items
            .iter()
            .filter_map(|p| p.square_minus_constant())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let rewrite = |p: &Polynomial, skip: Option<usize>| -> Polynomial {
            let mut out = p.clone();
            for (v, c) in &squares {
                if Some(*v) == skip {
                    continue;
                }
                out = out.reduce_square(*v, c);
            }
            out
        };

        // Normalize members through the square relations (a relation never
        // rewrites itself away).
        let mut normalized: Vec<Polynomial> = Vec::new();
        for p in &items {
            let own = p.square_minus_constant().map(|(v, _)| v);
            let m = rewrite(p, own).monic();
            if !m.is_zero() && !normalized.contains(&m) {
                normalized.push(m);
            }
        }

        // Stage 2b: drop a condition whose product with a single unit
        // variable reduces to an earlier survivor.
        let mut kept: Vec<Polynomial> = Vec::new();
        for p in &normalized {
            let mut duplicate = false;
            for (v, _) in &squares {
                let multiplied = &Polynomial::var(*v) * p;
                let image = rewrite(&multiplied, None).monic();
                if !image.is_zero() && image != *p && kept.contains(&image) {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate && !kept.contains(p) {
                kept.push(p.clone());
            }
        }

        // Stage 3: echelon substitutions. A survivor `c*v + r` with every
        // variable of `r` below `v` solves v; a condition whose substituted,
        // square-rewritten image equals a different survivor is redundant.
        let mut substitutions: Vec<(usize, Polynomial)> = Vec::new();
        for p in &kept {
            for v in p.support_vars().into_iter().rev() {
                if substitutions.iter().any(|(w, _)| *w == v) {
                    continue;
                }
                if let Some((c, r)) = p.linear_with_constant_coeff(v) {
                    if r.is_zero() || r.support_vars().iter().any(|&w| w >= v) {
                        continue;
                    }
                    let value = r.scale(&(&-&GaussianRational::one() / &c));
                    substitutions.push((v, value));
                    break;
                }
            }
        }
        let substitute_down = |p: &Polynomial| -> Polynomial {
            let mut out = p.clone();
            for _ in 0..16 {
                let mut changed = false;
                for (v, value) in &substitutions {
                    if out.contains_var(*v) {
                        out = out.substitute(*v, value).expect("echelon value is v-free");
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            out
        };

        let final_list: Vec<Polynomial> = kept
            .iter()
            .filter(|p| {
                let image = rewrite(&substitute_down(p), None).monic();
                let redundant =
                    !image.is_zero() && image != **p && kept.iter().any(|q| *q == image && q != *p);
                !redundant
            })
            .cloned()
            .collect();

        // Presentation order: lowest degree first, then leading monomial
        // descending, then full structural order.
        let mut out = final_list;
        out.sort_by(|a, b| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then_with(|| {
                    let la = a.leading().map(|(m, _)| m.clone());
                    let lb = b.leading().map(|(m, _)| m.clone());
                    lb.cmp(&la)
                })
                .then_with(|| b.cmp_order(a))
        });
        out
    }
}

/// Derives the full closure-condition system of a canonical basis: all
/// `(N-1)^2` ordered products, each reduced to its pivot residual, made
/// monic, and deduplicated.
pub fn derive_conditions(cb: &CanonicalBasis) -> Result<ConditionSet> {
    let vectors = cb.vectors_symbolic()?;
    let span = EchelonSpan::<Polynomial>::from_canonical(cb)?;
    let mut items: Vec<Condition> = Vec::new();
    for (i, left) in vectors.iter().enumerate() {
        for (j, right) in vectors.iter().enumerate() {
            let product = left * right;
            let (_, residual) = span.residual(&product);
            if residual.is_zero() {
                continue;
            }
            let poly = residual.monic();
            if !items.iter().any(|c| c.poly == poly) {
                items.push(Condition {
                    poly,
                    product: (i + 1, j + 1),
                });
            }
        }
    }
    Ok(ConditionSet {
        coords: cb.coords(),
        basis_index: cb.index(),
        param_names: cb.param_names(),
        items,
    })
}

/// Sound syntactic certificate that `p = 0` has no real solutions: every
/// monomial must have even exponents and a positive real coefficient, and
/// the constant term must be positive. Then `p > 0` on all of R^k. Returns
/// false whenever the rule does not apply; never claims infeasibility of a
/// really-solvable system.
pub fn real_infeasible(p: &Polynomial) -> bool {
    if p.is_zero() {
        return false;
    }
    let constant = p.constant_term();
    if !constant.is_real() || !constant.re().is_positive() {
        return false;
    }
    for (mono, coeff) in p.terms() {
        if !coeff.is_real() || !coeff.re().is_positive() {
            return false;
        }
        if mono.vars().any(|v| mono.exponent(v) % 2 != 0) {
            return false;
        }
    }
    true
}

/// First ordered product that escapes the span, with its residual; `None`
/// when the instantiated basis is multiplicatively closed. Works over any
/// scalar ring in the tower; errors if the vectors are not in echelon shape.
pub fn first_closure_failure<S: Scalar>(
    vectors: &[MultiVector<S>],
) -> Result<Option<((usize, usize), S)>> {
    let span = EchelonSpan::detect(vectors)?;
    for (i, left) in vectors.iter().enumerate() {
        for (j, right) in vectors.iter().enumerate() {
            let product = left * right;
            let (_, residual) = span.residual(&product);
            if !residual.is_zero() {
                return Ok(Some(((i + 1, j + 1), residual)));
            }
        }
    }
    Ok(None)
}

/// True iff all `(N-1)^2` ordered products stay in the span.
pub fn check_closure_concrete<S: Scalar>(vectors: &[MultiVector<S>]) -> Result<bool> {
    Ok(first_closure_failure(vectors)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::blades_in_order;
    use crate::scalars::ExtensionElement;
    use crate::subspace::CanonicalBasis;

    fn poly_from(text_vars: &[(usize, u32)], coeff: i64) -> Polynomial {
        let mut p = Polynomial::constant(GaussianRational::from_int(coeff));
        for &(v, e) in text_vars {
            p = &p * &Polynomial::var(v).pow(e);
        }
        p
    }

    fn sum(polys: Vec<Polynomial>) -> Polynomial {
        polys
            .into_iter()
            .fold(Polynomial::zero(), |acc, p| &acc + &p)
    }

    #[test]
    fn basis_two_raw_set_contains_the_key_conditions() {
        let cb = CanonicalBasis::new(8, 2).unwrap();
        let cs = derive_conditions(&cb).unwrap();
        let polys = cs.polynomials();
        // a17*a27 from a1*a7.
        assert!(polys.contains(&poly_from(&[(0, 1), (1, 1)], 1)));
        // a27^2 - 1 from a2*a7.
        assert!(polys.contains(&sum(vec![poly_from(&[(1, 2)], 1), poly_from(&[], -1)])));
        // a37^2 + a47^2 + 1 appears once a17 is eliminated; raw form carries
        // the a17 term from the forced x1 coefficient.
        let raw_a3a4 = sum(vec![
            poly_from(&[(0, 1), (2, 1), (3, 1)], 1),
            poly_from(&[(2, 2)], 1),
            poly_from(&[(3, 2)], 1),
            poly_from(&[], 1),
        ]);
        assert!(polys.contains(&raw_a3a4));
    }

    #[test]
    fn basis_two_reduces_to_the_seven_condition_list() {
        let cb = CanonicalBasis::new(8, 2).unwrap();
        let cs = derive_conditions(&cb).unwrap();
        let reduced = cs.reduced();
        // a17, a27, a37, a47, a57, a67 are variables 0..5.
        let expected = vec![
            // a17 = 0
            poly_from(&[(0, 1)], 1),
            // a27^2 = 1
            sum(vec![poly_from(&[(1, 2)], 1), poly_from(&[], -1)]),
            // a67 = a27*a37
            sum(vec![poly_from(&[(1, 1), (2, 1)], 1), poly_from(&[(5, 1)], -1)]),
            // a57 = -a27*a47
            sum(vec![poly_from(&[(1, 1), (3, 1)], 1), poly_from(&[(4, 1)], 1)]),
            // a37^2 + a47^2 = -1
            sum(vec![
                poly_from(&[(2, 2)], 1),
                poly_from(&[(3, 2)], 1),
                poly_from(&[], 1),
            ]),
            // a37*a57 + a47*a67 = 0
            sum(vec![
                poly_from(&[(2, 1), (4, 1)], 1),
                poly_from(&[(3, 1), (5, 1)], 1),
            ]),
            // a27 + a37*a67 - a47*a57 = 0
            sum(vec![
                poly_from(&[(2, 1), (5, 1)], 1),
                poly_from(&[(3, 1), (4, 1)], -1),
                poly_from(&[(1, 1)], 1),
            ]),
        ];
        assert_eq!(reduced, expected);
    }

    #[test]
    fn basis_three_reduces_to_the_six_condition_list() {
        let cb = CanonicalBasis::new(8, 3).unwrap();
        let cs = derive_conditions(&cb).unwrap();
        let reduced = cs.reduced();
        // a16, a26, a36, a46, a56 are variables 0..4.
        let expected = vec![
            // a16 = 0
            poly_from(&[(0, 1)], 1),
            // a26 = 0
            poly_from(&[(1, 1)], 1),
            // a36^2 = 1
            sum(vec![poly_from(&[(2, 2)], 1), poly_from(&[], -1)]),
            // a56 = a36*a46
            sum(vec![poly_from(&[(2, 1), (3, 1)], 1), poly_from(&[(4, 1)], -1)]),
            // a46^2 = -1
            sum(vec![poly_from(&[(3, 2)], 1), poly_from(&[], 1)]),
            // a56^2 = -1
            sum(vec![poly_from(&[(4, 2)], 1), poly_from(&[], 1)]),
        ];
        assert_eq!(reduced, expected);
    }

    #[test]
    fn basis_eight_contains_the_constant_obstruction() {
        // e1*e1 = -1 has no expansion in span{e1..z}: the residual is the
        // identity coordinate, a nonzero constant.
        let cb = CanonicalBasis::new(8, 8).unwrap();
        let cs = derive_conditions(&cb).unwrap();
        assert!(cs.items.iter().any(|c| {
            c.poly.as_constant().is_some() && c.product == (1, 1)
        }));
    }

    #[test]
    fn real_infeasible_examples() {
        // a37^2 + a47^2 + 1: positive definite over the reals.
        let p = sum(vec![
            poly_from(&[(2, 2)], 1),
            poly_from(&[(3, 2)], 1),
            poly_from(&[], 1),
        ]);
        assert!(real_infeasible(&p));
        // a46^2 + 1.
        let q = sum(vec![poly_from(&[(3, 2)], 1), poly_from(&[], 1)]);
        assert!(real_infeasible(&q));
        // a37^2 - 1 has real roots.
        let r = sum(vec![poly_from(&[(2, 2)], 1), poly_from(&[], -1)]);
        assert!(!real_infeasible(&r));
        // Odd powers are out even with positive coefficients.
        let s = sum(vec![poly_from(&[(2, 1)], 1), poly_from(&[], 1)]);
        assert!(!real_infeasible(&s));
        // Complex coefficients are out.
        let mut t = Polynomial::constant(GaussianRational::i());
        t = &t + &poly_from(&[(0, 2)], 1);
        assert!(!real_infeasible(&t));
    }

    #[test]
    fn closure_fails_at_basis_four_origin() {
        // At all-zero parameters the products j*k = i and k*j = -i escape.
        let cb = CanonicalBasis::new(8, 4).unwrap();
        let vectors = cb.vectors_at(&vec![GaussianRational::zero(); 4]).unwrap();
        let failure = first_closure_failure(&vectors).unwrap().unwrap();
        assert_eq!(failure.0, (5, 6));
        assert!(!check_closure_concrete(&vectors).unwrap());
    }

    #[test]
    fn closure_holds_for_an_isolated_solution() {
        // Basis (3) at (0, 0, 1, I, I): the first isolated subalgebra.
        let cb = CanonicalBasis::new(8, 3).unwrap();
        let params = vec![
            GaussianRational::zero(),
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::i(),
            GaussianRational::i(),
        ];
        let vectors = cb.vectors_at(&params).unwrap();
        assert!(check_closure_concrete(&vectors).unwrap());
    }

    #[test]
    fn closure_holds_symbolically_over_the_extension_ring() {
        // Basis (2) with a17 = 0, a27 = 1, a37 = a, a47 = s, a57 = -s,
        // a67 = a stays closed identically in a.
        let dim = 3;
        let generators = blades_in_order(dim);
        let k = generators[6];
        let one = ExtensionElement::one;
        let assignments = [
            ExtensionElement::zero(),
            one(),
            ExtensionElement::a(),
            ExtensionElement::s(),
            -&ExtensionElement::s(),
            ExtensionElement::a(),
        ];
        let mut vectors = Vec::new();
        for (slot, coeff) in assignments.iter().enumerate() {
            let mut v = MultiVector::zero(dim);
            v.add_term(generators[slot], one());
            v.add_term(k, coeff.clone());
            vectors.push(v);
        }
        let mut z = MultiVector::zero(dim);
        z.add_term(generators[7], one());
        vectors.push(z);
        assert!(check_closure_concrete(&vectors).unwrap());
    }

    #[test]
    fn oracle_agrees_with_conditions_on_dense_small_grid() {
        // Exhaustive agreement on a small grid for basis (2) of g(2):
        // conditions vanish exactly where the rref oracle sees closure.
        let cb = CanonicalBasis::new(4, 2).unwrap();
        let cs = derive_conditions(&cb).unwrap();
        let values = [
            GaussianRational::zero(),
            GaussianRational::one(),
            -&GaussianRational::one(),
            GaussianRational::i(),
            -&GaussianRational::i(),
        ];
        for a in &values {
            for b in &values {
                let params = vec![a.clone(), b.clone()];
                let vectors = cb.vectors_at(&params).unwrap();
                let by_conditions = cs.satisfied_at(&params);
                let by_rref = vectors.iter().enumerate().all(|(i, left)| {
                    vectors.iter().enumerate().all(|(j, right)| {
                        let _ = (i, j);
                        crate::subspace::rref_membership(&(left * right), &vectors).is_some()
                    })
                });
                assert_eq!(by_conditions, by_rref, "disagreement at ({a}, {b})");
            }
        }
    }
}
