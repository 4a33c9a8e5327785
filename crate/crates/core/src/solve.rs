//! Rule-based solver for closure-condition systems.
//!
//! The rule loop mirrors a hand derivation: constants contradict, bare
//! variables and pairwise differences vanish, linearly solvable variables
//! substitute, pure squares case-split over their Gaussian-rational roots,
//! and a terminal two-variable quadratic emits one-parameter families in the
//! extension ring. Anything outside the rules is reported as unresolved
//! rather than guessed at; the sampled oracle covers those honestly.

use std::collections::BTreeMap;

use crate::closure::{Condition, ConditionSet};
use crate::scalars::ext::{s_squared, PARAM_VAR};
use crate::scalars::{ExtensionElement, GaussianRational, Polynomial};

/// Bound on the number of case-split leaves explored per system.
pub const MAX_BRANCHES: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum StepReason {
    /// The condition itself was `c*v`.
    SingleVariable { product: (usize, usize) },
    /// The difference or sum of two conditions collapsed to `c*v`.
    PairCombination {
        first: (usize, usize),
        second: (usize, usize),
    },
    /// The condition was linear in the variable with a constant coefficient.
    LinearSolve { product: (usize, usize) },
    /// One root of a `v^2 = c` relation.
    CaseSplit { relation: Polynomial },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveStep {
    pub var: usize,
    pub value: Polynomial,
    pub reason: StepReason,
}

impl SolveStep {
    pub fn text(&self, name: &dyn Fn(usize) -> String) -> String {
        let lhs = name(self.var);
        let rhs = self.value.text(name);
        match &self.reason {
            StepReason::SingleVariable { product } => format!(
                "{lhs} = {rhs} (condition from product ({}, {}))",
                product.0, product.1
            ),
            StepReason::PairCombination { first, second } => format!(
                "{lhs} = {rhs} (difference of conditions from products ({}, {}) and ({}, {}))",
                first.0, first.1, second.0, second.1
            ),
            StepReason::LinearSolve { product } => format!(
                "{lhs} = {rhs} (solved linearly in the condition from product ({}, {}))",
                product.0, product.1
            ),
            StepReason::CaseSplit { relation } => {
                format!("{lhs} = {rhs} (case split on {})", relation.text(name))
            }
        }
    }
}

/// A contradiction certificate: replaying the recorded substitutions through
/// the recorded source condition must produce the recorded nonzero constant.
#[derive(Clone, Debug)]
pub struct ContradictionTrace {
    pub steps: Vec<SolveStep>,
    pub source: Condition,
    pub constant: GaussianRational,
}

impl ContradictionTrace {
    /// Re-applies every substitution to the source condition; `None` if the
    /// result is not a constant (a corrupted trace).
    pub fn replay(&self) -> Option<GaussianRational> {
        let mut poly = self.source.poly.clone();
        for step in &self.steps {
            if poly.contains_var(step.var) {
                poly = poly.substitute(step.var, &step.value).ok()?;
            }
        }
        if poly.is_zero() {
            return Some(GaussianRational::zero());
        }
        poly.as_constant().cloned()
    }
}

/// One solution family: either isolated (every parameter a fixed Gaussian
/// rational) or one-parameter (a free `a` plus, usually, the adjoined root
/// `s` with `s^2 = -1 - a^2`).
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    /// Parameters pinned to concrete Gaussian rationals.
    pub fixed: BTreeMap<String, GaussianRational>,
    /// Canonical name of the free parameter, when one exists.
    pub free: Option<String>,
    /// Which basis parameter became the free one.
    pub free_source: Option<String>,
    /// `s^2 = q(a)`: the extension relation, when the family needs one.
    pub extension: Option<Polynomial>,
    /// Every basis parameter expressed in the extension ring.
    pub assignments: BTreeMap<String, ExtensionElement>,
    /// Square relations case-split along the way, with the chosen root.
    pub splits: Vec<(Polynomial, GaussianRational)>,
}

impl SolutionFamily {
    pub fn is_one_parameter(&self) -> bool {
        self.free.is_some()
    }

    /// Polynomials whose real infeasibility certifies that the family has
    /// no real points: the extension relation as `s^2 - q(a)` plus every
    /// case-split relation.
    pub fn infeasibility_candidates(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if let Some(q) = &self.extension {
            let s_var = Polynomial::var(PARAM_VAR + 1);
            out.push(&(&s_var * &s_var) - q);
        }
        for (relation, _) in &self.splits {
            out.push(relation.clone());
        }
        out
    }

    /// The first candidate certified real-infeasible, if any.
    pub fn real_certificate(&self) -> Option<Polynomial> {
        self.infeasibility_candidates()
            .into_iter()
            .find(crate::closure::real_infeasible)
    }
}

#[derive(Clone, Debug)]
pub struct UnresolvedSystem {
    pub steps: Vec<SolveStep>,
    pub remaining: Vec<Condition>,
    pub note: String,
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Contradiction(ContradictionTrace),
    Families(Vec<SolutionFamily>),
    Unresolved(UnresolvedSystem),
}

impl SolveOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            SolveOutcome::Contradiction(_) => "contradiction",
            SolveOutcome::Families(_) => "families",
            SolveOutcome::Unresolved(_) => "unresolved",
        }
    }
}

#[derive(Clone)]
struct Live {
    poly: Polynomial,
    source: Condition,
}

#[derive(Clone)]
struct BranchState {
    conds: Vec<Live>,
    steps: Vec<SolveStep>,
    images: BTreeMap<usize, Polynomial>,
    splits: Vec<(Polynomial, GaussianRational)>,
}

impl BranchState {
    fn normalize(&mut self) {
        let mut seen: Vec<Polynomial> = Vec::new();
        let mut kept: Vec<Live> = Vec::new();
        for live in self.conds.drain(..) {
            let monic = live.poly.monic();
            if monic.is_zero() || seen.contains(&monic) {
                continue;
            }
            seen.push(monic.clone());
            kept.push(Live {
                poly: monic,
                source: live.source,
            });
        }
        self.conds = kept;
    }

    fn substitute(&mut self, var: usize, value: Polynomial, reason: StepReason) {
        for image in self.images.values_mut() {
            if image.contains_var(var) {
                *image = image.substitute(var, &value).expect("value is var-free");
            }
        }
        self.images.insert(var, value.clone());
        for live in &mut self.conds {
            if live.poly.contains_var(var) {
                live.poly = live.poly.substitute(var, &value).expect("value is var-free");
            }
        }
        self.steps.push(SolveStep { var, value, reason });
        self.normalize();
    }
}

enum BranchResult {
    Contradiction(ContradictionTrace),
    Families(Vec<SolutionFamily>),
    Unresolved(UnresolvedSystem),
}

struct Solver<'a> {
    cs: &'a ConditionSet,
    leaves_left: usize,
}

pub fn solve(cs: &ConditionSet) -> SolveOutcome {
    let mut solver = Solver {
        cs,
        leaves_left: MAX_BRANCHES,
    };
    let mut state = BranchState {
        conds: cs
            .items
            .iter()
            .map(|c| Live {
                poly: c.poly.clone(),
                source: c.clone(),
            })
            .collect(),
        steps: Vec::new(),
        images: BTreeMap::new(),
        splits: Vec::new(),
    };
    state.normalize();
    match solver.run(state) {
        BranchResult::Contradiction(t) => SolveOutcome::Contradiction(t),
        BranchResult::Unresolved(u) => SolveOutcome::Unresolved(u),
        BranchResult::Families(mut fams) => {
            let mut deduped: Vec<SolutionFamily> = Vec::new();
            for f in fams.drain(..) {
                if !deduped.contains(&f) {
                    deduped.push(f);
                }
            }
            SolveOutcome::Families(deduped)
        }
    }
}

impl<'a> Solver<'a> {
    fn param_count(&self) -> usize {
        self.cs.param_names.len()
    }

    fn run(&mut self, mut state: BranchState) -> BranchResult {
        loop {
            // R1: a nonzero constant condition is a contradiction.
            if let Some(live) = state
                .conds
                .iter()
                .find(|l| l.poly.as_constant().is_some())
            {
                let source = live.source.clone();
                let trace = ContradictionTrace {
                    constant: replay_constant(&source.poly, &state.steps),
                    steps: state.steps.clone(),
                    source,
                };
                return BranchResult::Contradiction(trace);
            }

            // R2: a bare `c*v` condition forces v = 0.
            if let Some((var, product)) = state.conds.iter().find_map(|l| {
                l.poly
                    .single_variable()
                    .map(|(v, _)| (v, l.source.product))
            }) {
                state.substitute(
                    var,
                    Polynomial::zero(),
                    StepReason::SingleVariable { product },
                );
                continue;
            }

            // R2': a pairwise difference or sum that collapses to `c*v`.
            if let Some((var, first, second)) = find_pair_collapse(&state.conds) {
                state.substitute(
                    var,
                    Polynomial::zero(),
                    StepReason::PairCombination { first, second },
                );
                continue;
            }

            // R3: solve a variable that appears linearly with a constant
            // coefficient.
            if let Some((var, value, product)) = find_linear_solve(&state.conds) {
                state.substitute(var, value, StepReason::LinearSolve { product });
                continue;
            }

            // R4: case split on the smallest-variable `v^2 = c` relation.
            let split = state
                .conds
                .iter()
                .filter_map(|l| l.poly.square_minus_constant().map(|(v, c)| (v, c)))
                .min_by_key(|(v, _)| *v);
            if let Some((var, c)) = split {
                let relation = &(&Polynomial::var(var) * &Polynomial::var(var))
                    - &Polynomial::constant(c.clone());
                let Some(root) = c.sqrt() else {
                    return BranchResult::Unresolved(UnresolvedSystem {
                        remaining: remaining(&state),
                        steps: state.steps.clone(),
                        note: format!(
                            "relation {} has no Gaussian-rational root",
                            relation.text(&self.cs.name_fn())
                        ),
                    });
                };
                if self.leaves_left < 2 {
                    return BranchResult::Unresolved(UnresolvedSystem {
                        remaining: remaining(&state),
                        steps: state.steps.clone(),
                        note: "case-split budget exhausted".to_string(),
                    });
                }
                self.leaves_left -= 1;
                let mut results = Vec::new();
                for value in [root.clone(), -&root] {
                    let mut branch = state.clone();
                    branch.splits.push((relation.clone(), value.clone()));
                    branch.substitute(
                        var,
                        Polynomial::constant(value),
                        StepReason::CaseSplit {
                            relation: relation.clone(),
                        },
                    );
                    results.push(self.run(branch));
                }
                let second = results.pop().expect("two branches");
                let first = results.pop().expect("two branches");
                return merge(first, second);
            }

            // Terminal analysis.
            return self.finish(state);
        }
    }

    fn finish(&mut self, state: BranchState) -> BranchResult {
        let unassigned: Vec<usize> = (0..self.param_count())
            .filter(|v| !state.images.contains_key(v))
            .collect();

        if state.conds.is_empty() {
            return match unassigned.len() {
                0 => BranchResult::Families(vec![self.build_family(&state, None, None)]),
                1 => BranchResult::Families(vec![self.build_family(
                    &state,
                    Some(unassigned[0]),
                    None,
                )]),
                _ => BranchResult::Unresolved(UnresolvedSystem {
                    remaining: Vec::new(),
                    steps: state.steps.clone(),
                    note: format!(
                        "{} unconstrained parameters; only one free parameter is supported",
                        unassigned.len()
                    ),
                }),
            };
        }

        // R5: a single condition `w^2 + r(v)` in exactly two live variables
        // emits one-parameter families over the extension ring, one per sign
        // of the adjoined root.
        if state.conds.len() == 1 && unassigned.len() == 2 {
            let free = unassigned[0];
            let w = unassigned[1];
            let poly = &state.conds[0].poly;
            if let Some(q) = extension_relation(poly, free, w) {
                if q == s_squared() {
                    let families = vec![
                        self.build_family(&state, Some(free), Some((w, false))),
                        self.build_family(&state, Some(free), Some((w, true))),
                    ];
                    return BranchResult::Families(families);
                }
                return BranchResult::Unresolved(UnresolvedSystem {
                    remaining: remaining(&state),
                    steps: state.steps.clone(),
                    note: format!(
                        "terminal relation s^2 = {} is outside the supported extension ring",
                        q.text(&|_| "a".to_string())
                    ),
                });
            }
        }

        BranchResult::Unresolved(UnresolvedSystem {
            remaining: remaining(&state),
            steps: state.steps.clone(),
            note: "no applicable rule".to_string(),
        })
    }

    fn build_family(
        &self,
        state: &BranchState,
        free: Option<usize>,
        adjoined: Option<(usize, bool)>,
    ) -> SolutionFamily {
        let names = &self.cs.param_names;
        let s_elem = match adjoined {
            Some((_, false)) => ExtensionElement::s(),
            Some((_, true)) => -&ExtensionElement::s(),
            None => ExtensionElement::zero(),
        };
        let convert = |p: &Polynomial| -> ExtensionElement {
            let mut acc = ExtensionElement::zero();
            for (mono, coeff) in p.terms() {
                let mut term = ExtensionElement::from_gauss(coeff.clone());
                for v in mono.vars() {
                    let factor = if Some(v) == free {
                        ExtensionElement::a()
                    } else if adjoined.map(|(w, _)| w) == Some(v) {
                        s_elem.clone()
                    } else {
                        unreachable!("image mentions an unresolved variable")
                    };
                    for _ in 0..mono.exponent(v) {
                        term = &term * &factor;
                    }
                }
                acc = &acc + &term;
            }
            acc
        };

        let mut assignments = BTreeMap::new();
        let mut fixed = BTreeMap::new();
        for var in 0..self.param_count() {
            let value = if let Some(image) = state.images.get(&var) {
                convert(image)
            } else if Some(var) == free {
                ExtensionElement::a()
            } else if adjoined.map(|(w, _)| w) == Some(var) {
                s_elem.clone()
            } else {
                unreachable!("terminal state left a variable unaccounted for")
            };
            if let Some(c) = value.as_gauss() {
                fixed.insert(names[var].clone(), c.clone());
            }
            assignments.insert(names[var].clone(), value);
        }

        SolutionFamily {
            fixed,
            free: free.map(|_| "a".to_string()),
            free_source: free.map(|v| names[v].clone()),
            extension: adjoined.map(|_| s_squared()),
            assignments,
            splits: state.splits.clone(),
        }
    }
}

/// Combines the two halves of a case split. Families union up; a
/// contradicted branch simply contributes nothing; an unresolved branch
/// makes the whole split unresolved (no exhaustiveness claim survives it).
fn merge(first: BranchResult, second: BranchResult) -> BranchResult {
    match (first, second) {
        (BranchResult::Unresolved(u), _) => BranchResult::Unresolved(u),
        (_, BranchResult::Unresolved(u)) => BranchResult::Unresolved(u),
        (BranchResult::Contradiction(a), BranchResult::Contradiction(_)) => {
            BranchResult::Contradiction(a)
        }
        (BranchResult::Contradiction(_), BranchResult::Families(f)) => BranchResult::Families(f),
        (BranchResult::Families(f), BranchResult::Contradiction(_)) => BranchResult::Families(f),
        (BranchResult::Families(mut a), BranchResult::Families(b)) => {
            a.extend(b);
            BranchResult::Families(a)
        }
    }
}

fn remaining(state: &BranchState) -> Vec<Condition> {
    state
        .conds
        .iter()
        .map(|l| Condition {
            poly: l.poly.clone(),
            product: l.source.product,
        })
        .collect()
}

fn replay_constant(source: &Polynomial, steps: &[SolveStep]) -> GaussianRational {
    let mut poly = source.clone();
    for step in steps {
        if poly.contains_var(step.var) {
            poly = poly.substitute(step.var, &step.value).expect("value is var-free");
        }
    }
    poly.as_constant()
        .cloned()
        .unwrap_or_else(GaussianRational::zero)
}

fn find_pair_collapse(conds: &[Live]) -> Option<(usize, (usize, usize), (usize, usize))> {
    for i in 0..conds.len() {
        for j in (i + 1)..conds.len() {
            let diff = &conds[i].poly - &conds[j].poly;
            if let Some((v, _)) = diff.single_variable() {
                return Some((v, conds[i].source.product, conds[j].source.product));
            }
            let sum = &conds[i].poly + &conds[j].poly;
            if let Some((v, _)) = sum.single_variable() {
                return Some((v, conds[i].source.product, conds[j].source.product));
            }
        }
    }
    None
}

fn find_linear_solve(conds: &[Live]) -> Option<(usize, Polynomial, (usize, usize))> {
    for live in conds {
        for var in live.poly.support_vars() {
            if let Some((c, r)) = live.poly.linear_with_constant_coeff(var) {
                let value = r.scale(&-&(GaussianRational::one().checked_div(&c).expect("nonzero")));
                return Some((var, value, live.source.product));
            }
        }
    }
    None
}

/// Recognizes `w^2 + r(v)` (monic in some normalization) and returns the
/// extension right-hand side `q(a) = -r` with `v` renamed to the canonical
/// parameter. `None` if the condition has a different shape.
fn extension_relation(poly: &Polynomial, free: usize, w: usize) -> Option<Polynomial> {
    let mut w_sq_coeff: Option<GaussianRational> = None;
    let mut rest = Polynomial::zero();
    for (mono, coeff) in poly.terms() {
        match mono.exponent(w) {
            0 => rest.add_term(mono.clone(), coeff.clone()),
            2 if mono.vars().count() == 1 => {
                w_sq_coeff = Some(coeff.clone());
            }
            _ => return None,
        }
    }
    let c = w_sq_coeff?;
    if rest.contains_var(w) || rest.support_vars().iter().any(|&v| v != free) {
        return None;
    }
    // q = -rest / c, rewritten in the canonical parameter variable.
    let scaled = rest.scale(&-&(GaussianRational::one().checked_div(&c).ok()?));
    let mut q = Polynomial::zero();
    for (mono, coeff) in scaled.terms() {
        let e = mono.exponent(free);
        let mut rebuilt = Polynomial::constant(coeff.clone());
        rebuilt = &rebuilt * &Polynomial::var(PARAM_VAR).pow(e);
        q = &q + &rebuilt;
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::derive_conditions;
    use crate::subspace::CanonicalBasis;

    fn solve_basis(coords: usize, m: usize) -> SolveOutcome {
        let cb = CanonicalBasis::new(coords, m).unwrap();
        let cs = derive_conditions(&cb).unwrap();
        solve(&cs)
    }

    #[test]
    fn trivial_constant_set_contradicts_immediately() {
        let cs = ConditionSet {
            coords: 8,
            basis_index: 0,
            param_names: vec![],
            items: vec![Condition {
                poly: Polynomial::one(),
                product: (1, 1),
            }],
        };
        match solve(&cs) {
            SolveOutcome::Contradiction(trace) => {
                assert!(trace.steps.is_empty());
                assert_eq!(trace.constant, GaussianRational::one());
                assert_eq!(trace.replay(), Some(GaussianRational::one()));
            }
            other => panic!("expected contradiction, got {}", other.kind()),
        }
    }

    #[test]
    fn basis_one_contradicts_with_replayable_trace() {
        match solve_basis(8, 1) {
            SolveOutcome::Contradiction(trace) => {
                // The final obstruction replays to exactly -1.
                assert_eq!(trace.constant, GaussianRational::from_int(-1));
                assert_eq!(trace.replay(), Some(GaussianRational::from_int(-1)));
                // The derivation passes through a78 = 0 and a28 = 0
                // (variables 6 and 1 of basis (1)).
                let zeroed: Vec<usize> = trace
                    .steps
                    .iter()
                    .filter(|s| s.value.is_zero())
                    .map(|s| s.var)
                    .collect();
                assert!(zeroed.contains(&6), "missing a78 = 0 in {zeroed:?}");
                assert!(zeroed.contains(&1), "missing a28 = 0 in {zeroed:?}");
            }
            other => panic!("expected contradiction, got {}", other.kind()),
        }
    }

    #[test]
    fn basis_two_yields_four_one_parameter_families() {
        let SolveOutcome::Families(families) = solve_basis(8, 2) else {
            panic!("expected families");
        };
        assert_eq!(families.len(), 4);
        assert!(families.iter().all(|f| f.is_one_parameter()));
        assert!(families.iter().all(|f| f.extension == Some(s_squared())));
        // Branch order: a27 = 1 with s then -s, a27 = -1 with s then -s.
        let a27: Vec<GaussianRational> = families
            .iter()
            .map(|f| f.fixed["a27"].clone())
            .collect();
        assert_eq!(
            a27,
            vec![
                GaussianRational::one(),
                GaussianRational::one(),
                -&GaussianRational::one(),
                -&GaussianRational::one(),
            ]
        );
        let first = &families[0];
        assert_eq!(first.fixed["a17"], GaussianRational::zero());
        assert_eq!(first.free_source.as_deref(), Some("a37"));
        assert_eq!(first.assignments["a47"], ExtensionElement::s());
        assert_eq!(first.assignments["a57"], -&ExtensionElement::s());
        assert_eq!(first.assignments["a67"], ExtensionElement::a());
        let second = &families[1];
        assert_eq!(second.assignments["a47"], -&ExtensionElement::s());
        assert_eq!(second.assignments["a57"], ExtensionElement::s());
    }

    #[test]
    fn basis_three_yields_four_isolated_families() {
        let SolveOutcome::Families(families) = solve_basis(8, 3) else {
            panic!("expected families");
        };
        assert_eq!(families.len(), 4);
        assert!(families.iter().all(|f| !f.is_one_parameter()));
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        let points: Vec<(GaussianRational, GaussianRational, GaussianRational)> = families
            .iter()
            .map(|f| {
                (
                    f.fixed["a36"].clone(),
                    f.fixed["a46"].clone(),
                    f.fixed["a56"].clone(),
                )
            })
            .collect();
        assert_eq!(
            points,
            vec![
                (one.clone(), i.clone(), i.clone()),
                (one.clone(), -&i, -&i),
                (-&one, i.clone(), -&i),
                (-&one, -&i, i.clone()),
            ]
        );
        for f in &families {
            assert_eq!(f.fixed["a16"], GaussianRational::zero());
            assert_eq!(f.fixed["a26"], GaussianRational::zero());
        }
    }

    #[test]
    fn remaining_bases_of_g3_all_contradict() {
        for m in [4, 5, 6, 7, 8] {
            match solve_basis(8, m) {
                SolveOutcome::Contradiction(trace) => {
                    assert!(!trace.constant.is_zero());
                    assert_eq!(trace.replay(), Some(trace.constant.clone()));
                }
                other => panic!("basis ({m}): expected contradiction, got {}", other.kind()),
            }
        }
    }

    #[test]
    fn escape_witnesses_for_bases_without_conditions() {
        // Bases (4)-(8) fail on a single escaping product; the witness is
        // recorded as the trace source.
        let expected = [
            (4, (5, 6)), // j*k = i
            (5, (4, 7)), // i*z = -e3
            (6, (5, 7)), // j*z = e2
            (7, (6, 7)), // k*z = -e1
            (8, (1, 1)), // e1*e1 = -1
        ];
        for (m, product) in expected {
            let SolveOutcome::Contradiction(trace) = solve_basis(8, m) else {
                panic!("basis ({m}) should contradict");
            };
            assert!(trace.steps.is_empty(), "basis ({m}) needs no substitutions");
            assert_eq!(trace.source.product, product, "basis ({m})");
        }
    }

    #[test]
    fn solver_is_deterministic() {
        for m in 1..=8 {
            let cb = CanonicalBasis::new(8, m).unwrap();
            let cs = derive_conditions(&cb).unwrap();
            let a = solve(&cs);
            let b = solve(&cs);
            match (a, b) {
                (SolveOutcome::Families(x), SolveOutcome::Families(y)) => assert_eq!(x, y),
                (SolveOutcome::Contradiction(x), SolveOutcome::Contradiction(y)) => {
                    assert_eq!(x.steps, y.steps);
                    assert_eq!(x.constant, y.constant);
                    assert_eq!(x.source.product, y.source.product);
                }
                (SolveOutcome::Unresolved(x), SolveOutcome::Unresolved(y)) => {
                    assert_eq!(x.note, y.note);
                }
                _ => panic!("outcome kind changed between runs"),
            }
        }
    }

    #[test]
    fn families_satisfy_their_own_condition_sets() {
        for m in [2, 3] {
            let cb = CanonicalBasis::new(8, m).unwrap();
            let cs = derive_conditions(&cb).unwrap();
            let SolveOutcome::Families(families) = solve(&cs) else {
                panic!("expected families for basis ({m})");
            };
            for family in &families {
                for cond in &cs.items {
                    // Substitute the family assignment term by term in the
                    // extension ring; the condition must vanish identically.
                    let mut acc = ExtensionElement::zero();
                    for (mono, coeff) in cond.poly.terms() {
                        let mut term = ExtensionElement::from_gauss(coeff.clone());
                        for v in mono.vars() {
                            let value = &family.assignments[&cs.param_names[v]];
                            for _ in 0..mono.exponent(v) {
                                term = &term * value;
                            }
                        }
                        acc = &acc + &term;
                    }
                    assert!(
                        acc.is_zero(),
                        "basis ({m}): condition {} not satisfied",
                        cond.poly.text(&cs.name_fn())
                    );
                }
            }
        }
    }

    #[test]
    fn real_certificates_exist_for_all_g3_families() {
        for m in [2, 3] {
            let SolveOutcome::Families(families) = solve_basis(8, m) else {
                panic!("expected families");
            };
            for f in families {
                assert!(f.real_certificate().is_some(), "basis ({m})");
            }
        }
    }

    #[test]
    fn smallest_algebra_is_honest_about_the_cubic() {
        // The single condition of basis (1) at N = 2 is a12^3 + a12, which
        // is outside the rule set; the solver must not overclaim.
        let outcome = solve_basis(2, 1);
        assert!(matches!(outcome, SolveOutcome::Unresolved(_)));
        // Basis (2) is the plain contradiction e1^2 = -1.
        assert!(matches!(solve_basis(2, 2), SolveOutcome::Contradiction(_)));
    }
}
