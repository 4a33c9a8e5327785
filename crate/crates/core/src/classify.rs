//! Orchestration: run the full pipeline over every canonical basis of
//! g(n, C), verify the resulting subalgebras directly, embed them upward,
//! and cross-check the condition systems against a seeded sampling oracle.

use std::collections::BTreeMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{blades_in_order, MultiVector};
use crate::closure::{derive_conditions, ConditionSet};
use crate::error::{Error, Result};
use crate::render::{mv_ext_text, mv_gauss_text};
use crate::scalars::{ExtensionElement, GaussianRational, Polynomial};
use crate::solve::{solve, SolutionFamily, SolveOutcome};
use crate::subspace::{canonical_bases, rref_membership, CanonicalBasis};

/// Outcome for one canonical basis, bundled with the data verification
/// needs later.
pub struct BasisReport {
    pub basis: CanonicalBasis,
    pub conditions: ConditionSet,
    pub outcome: SolveOutcome,
    /// For each family: did the symbolic closure re-check pass, and which
    /// relation (if any) certifies real infeasibility.
    pub family_checks: Vec<FamilyCheck>,
}

pub struct FamilyCheck {
    pub closed: bool,
    pub real_certificate: Option<Polynomial>,
}

pub struct Summary {
    pub one_parameter_families: usize,
    pub isolated: usize,
    pub contradictions: usize,
    pub unresolved: usize,
}

pub struct ClassificationResult {
    pub n: u8,
    pub bases: Vec<BasisReport>,
    pub summary: Summary,
}

impl ClassificationResult {
    /// Basis indices that produced no subalgebra (contradiction or
    /// unresolved), ascending.
    pub fn empty_bases(&self) -> Vec<usize> {
        self.bases
            .iter()
            .filter(|b| !matches!(b.outcome, SolveOutcome::Families(_)))
            .map(|b| b.basis.index())
            .collect()
    }

    /// The one-line summary: family and isolated counts plus the bases that
    /// yield nothing.
    pub fn summary_line(&self) -> String {
        let empties: Vec<String> = self.empty_bases().iter().map(|m| m.to_string()).collect();
        format!(
            "{} one-parameter families, {} isolated subalgebras; bases {}: none",
            self.summary.one_parameter_families,
            self.summary.isolated,
            empties.join(",")
        )
    }
}

/// Instantiates the basis vectors of `cb` at a family's assignments, over
/// the extension ring.
pub fn family_vectors(
    cb: &CanonicalBasis,
    family: &SolutionFamily,
) -> Result<Vec<MultiVector<ExtensionElement>>> {
    let dim = cb.algebra_dim()?;
    let generators = blades_in_order(dim);
    let pivot_blade = generators[cb.pivot() - 1];
    let mut vectors = Vec::with_capacity(cb.coords() - 1);
    for slot in 1..cb.coords() {
        let coord = cb.slot_coordinate(slot);
        let mut v = MultiVector::zero(dim);
        v.add_term(generators[coord - 1], ExtensionElement::one());
        if slot < cb.pivot() {
            let name = cb.param_name(slot - 1);
            v.add_term(pivot_blade, family.assignments[&name].clone());
        }
        vectors.push(v);
    }
    Ok(vectors)
}

/// Classifies the (2^n - 1)-dimensional subalgebras of g(n, C).
///
/// Settled for n <= 3; n = 4 is exploratory and may leave bases unresolved,
/// which the report carries honestly rather than overclaiming.
pub fn classify(n: u8) -> Result<ClassificationResult> {
    if !(1..=4).contains(&n) {
        return Err(Error::OutOfRange {
            what: "algebra dimension n",
            got: n as i64,
            expected: "1..=4",
        });
    }
    let coords = 1usize << n;
    let mut bases = Vec::new();
    let mut summary = Summary {
        one_parameter_families: 0,
        isolated: 0,
        contradictions: 0,
        unresolved: 0,
    };
    for cb in canonical_bases(coords)? {
        let conditions = derive_conditions(&cb)?;
        let outcome = solve(&conditions);
        let mut family_checks = Vec::new();
        match &outcome {
            SolveOutcome::Families(families) => {
                for family in families {
                    if family.is_one_parameter() {
                        summary.one_parameter_families += 1;
                    } else {
                        summary.isolated += 1;
                    }
                    let vectors = family_vectors(&cb, family)?;
                    family_checks.push(FamilyCheck {
                        closed: crate::closure::check_closure_concrete(&vectors)?,
                        real_certificate: family.real_certificate(),
                    });
                }
            }
            SolveOutcome::Contradiction(_) => summary.contradictions += 1,
            SolveOutcome::Unresolved(_) => summary.unresolved += 1,
        }
        bases.push(BasisReport {
            basis: cb,
            conditions,
            outcome,
            family_checks,
        });
    }
    Ok(ClassificationResult { n, bases, summary })
}

/// One of the eight published 7-dimensional subalgebras of g(3, C), as a
/// fixture independent of the solver.
pub struct TheoremFamily {
    pub name: &'static str,
    pub basis_index: usize,
    /// Basis parameters (a17..a67 or a16..a56) in the extension ring.
    pub assignments: Vec<ExtensionElement>,
    pub one_parameter: bool,
}

impl TheoremFamily {
    pub fn vectors(&self) -> Vec<MultiVector<ExtensionElement>> {
        let cb = CanonicalBasis::new(8, self.basis_index).expect("valid basis");
        let generators = blades_in_order(3);
        let pivot_blade = generators[cb.pivot() - 1];
        let mut vectors = Vec::new();
        for slot in 1..8 {
            let coord = cb.slot_coordinate(slot);
            let mut v = MultiVector::zero(3);
            v.add_term(generators[coord - 1], ExtensionElement::one());
            if slot < cb.pivot() {
                v.add_term(pivot_blade, self.assignments[slot - 1].clone());
            }
            vectors.push(v);
        }
        vectors
    }

    /// Concrete Gaussian-rational vectors at `a = alpha`; for the
    /// one-parameter families this needs `-1 - alpha^2` to be a square in
    /// the Gaussian rationals.
    pub fn vectors_at(&self, alpha: &GaussianRational) -> Result<Vec<MultiVector<GaussianRational>>> {
        let minus_one = -&GaussianRational::one();
        let target = &minus_one - &(alpha * alpha);
        let sigma = target
            .sqrt()
            .ok_or_else(|| Error::NoSquareRoot(format!("-1 - ({alpha})^2 = {target}")))?;
        Ok(self
            .vectors()
            .iter()
            .map(|v| v.map_coeffs(&|c: &ExtensionElement| c.evaluate(alpha, &sigma)))
            .collect())
    }
}

/// The eight subalgebras exactly as published: h1..h4 over the extension
/// ring (free parameter `a`, adjoined `s = sqrt(-1 - a^2)`), h5..h8 with
/// fixed Gaussian-rational coefficients.
pub fn theorem_families() -> Vec<TheoremFamily> {
    let zero = ExtensionElement::zero;
    let a = ExtensionElement::a;
    let s = ExtensionElement::s;
    let i = || ExtensionElement::from_gauss(GaussianRational::i());
    // h1..h4 live on basis (2): coefficients (a17, a27, a37, a47, a57, a67).
    let quad = |e1k: i64, e3k: &ExtensionElement, ik: &ExtensionElement, jk: &ExtensionElement| {
        vec![
            zero(),
            ExtensionElement::from_gauss(GaussianRational::from_int(e1k)),
            a(),
            e3k.clone(),
            ik.clone(),
            jk.clone(),
        ]
    };
    // h5..h8 live on basis (3): coefficients (a16, a26, a36, a46, a56).
    let iso = |e2j: i64, e3j: &ExtensionElement, ij: &ExtensionElement| {
        vec![
            zero(),
            zero(),
            ExtensionElement::from_gauss(GaussianRational::from_int(e2j)),
            e3j.clone(),
            ij.clone(),
        ]
    };
    vec![
        TheoremFamily {
            name: "h1",
            basis_index: 2,
            assignments: quad(1, &s(), &-&s(), &a()),
            one_parameter: true,
        },
        TheoremFamily {
            name: "h2",
            basis_index: 2,
            assignments: quad(1, &-&s(), &s(), &a()),
            one_parameter: true,
        },
        TheoremFamily {
            name: "h3",
            basis_index: 2,
            assignments: quad(-1, &s(), &s(), &-&a()),
            one_parameter: true,
        },
        TheoremFamily {
            name: "h4",
            basis_index: 2,
            assignments: quad(-1, &-&s(), &-&s(), &-&a()),
            one_parameter: true,
        },
        TheoremFamily {
            name: "h5",
            basis_index: 3,
            assignments: iso(1, &i(), &i()),
            one_parameter: false,
        },
        TheoremFamily {
            name: "h6",
            basis_index: 3,
            assignments: iso(1, &-&i(), &-&i()),
            one_parameter: false,
        },
        TheoremFamily {
            name: "h7",
            basis_index: 3,
            assignments: iso(-1, &i(), &-&i()),
            one_parameter: false,
        },
        TheoremFamily {
            name: "h8",
            basis_index: 3,
            assignments: iso(-1, &-&i(), &i()),
            one_parameter: false,
        },
    ]
}

pub struct TheoremCheck {
    pub name: &'static str,
    pub closed: bool,
    /// Index of the matching family in the classification of its basis.
    pub matched_family: Option<usize>,
    pub failure: Option<String>,
}

pub struct TheoremReport {
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_verified(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.closed && c.matched_family.is_some())
    }
}

/// Rebuilds the eight published subalgebras, re-checks closure of all 49
/// products for each (symbolically for h1..h4), and matches every one
/// against a family found by `classify(3)`.
pub fn verify_theorem() -> Result<TheoremReport> {
    let classification = classify(3)?;
    let mut checks = Vec::new();
    for fam in theorem_families() {
        let vectors = fam.vectors();
        let failure = crate::closure::first_closure_failure(&vectors)?;
        let closed = failure.is_none();
        let report = &classification.bases[fam.basis_index - 1];
        let matched_family = match &report.outcome {
            SolveOutcome::Families(families) => families.iter().position(|f| {
                let cb = &report.basis;
                (0..cb.param_count()).all(|idx| {
                    f.assignments[&cb.param_name(idx)] == fam.assignments[idx]
                })
            }),
            _ => None,
        };
        checks.push(TheoremCheck {
            name: fam.name,
            closed,
            matched_family,
            failure: failure.map(|((i, j), residual)| {
                format!("product ({i}, {j}) leaves residual {residual}")
            }),
        });
    }
    Ok(TheoremReport { checks })
}

pub struct LemmaReport {
    pub family: &'static str,
    pub point: Option<GaussianRational>,
    pub k: u8,
    pub closed: bool,
    pub failure: Option<String>,
}

/// Embeds a published subalgebra (instantiated at a Gaussian-rational point
/// of its parameter space) into g(3 + k) and re-verifies closure there with
/// the elimination oracle — the subalgebra property survives the inclusion.
pub fn verify_lemma(name: &str, point: Option<&GaussianRational>, k: u8) -> Result<LemmaReport> {
    let fam = theorem_families()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    let alpha = if fam.one_parameter {
        point.cloned().ok_or(Error::MissingPoint(fam.name))?
    } else {
        GaussianRational::zero()
    };
    let base_vectors = fam.vectors_at(&alpha)?;
    let embedded: Vec<MultiVector<GaussianRational>> =
        base_vectors.iter().map(|v| v.embedded(k)).collect();
    let mut failure = None;
    'outer: for (i, left) in embedded.iter().enumerate() {
        for (j, right) in embedded.iter().enumerate() {
            let product = left * right;
            if rref_membership(&product, &embedded).is_none() {
                failure = Some(format!(
                    "product ({}, {}) = {} escapes the embedded span",
                    i + 1,
                    j + 1,
                    mv_gauss_text(&product)
                ));
                break 'outer;
            }
        }
    }
    Ok(LemmaReport {
        family: fam.name,
        point: fam.one_parameter.then_some(alpha),
        k,
        closed: failure.is_none(),
        failure,
    })
}

pub struct OracleReport {
    pub n: u8,
    pub basis: usize,
    pub trials: u64,
    pub seed: u64,
    pub agreements: u64,
    pub disagreements: Vec<String>,
    pub closure_hits: Vec<String>,
}

/// Draws seeded parameter assignments from small Gaussian rationals and
/// compares, exactly, "all conditions vanish" against "all products pass the
/// elimination oracle". Any disagreement would expose a derivation bug;
/// reports must come back empty.
pub fn sampling_oracle(n: u8, basis: usize, trials: u64, seed: u64) -> Result<OracleReport> {
    if !(1..=4).contains(&n) {
        return Err(Error::OutOfRange {
            what: "algebra dimension n",
            got: n as i64,
            expected: "1..=4",
        });
    }
    let coords = 1usize << n;
    let cb = CanonicalBasis::new(coords, basis)?;
    let cs = derive_conditions(&cb)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_rational = |rng: &mut ChaCha8Rng| {
        let num = (rng.next_u32() % 21) as i64 - 10;
        let den = (rng.next_u32() % 10) as i64 + 1;
        (num, den)
    };
    let mut report = OracleReport {
        n,
        basis,
        trials,
        seed,
        agreements: 0,
        disagreements: Vec::new(),
        closure_hits: Vec::new(),
    };
    for _ in 0..trials {
        let params: Vec<GaussianRational> = (0..cb.param_count())
            .map(|_| {
                let (rn, rd) = draw_rational(&mut rng);
                let (in_, id) = draw_rational(&mut rng);
                GaussianRational::from_parts(rn, rd, in_, id)
            })
            .collect();
        let by_conditions = cs.satisfied_at(&params);
        let vectors = cb.vectors_at(&params)?;
        let by_oracle = vectors.iter().all(|left| {
            vectors
                .iter()
                .all(|right| rref_membership(&(left * right), &vectors).is_some())
        });
        let rendered = || {
            params
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        if by_conditions == by_oracle {
            report.agreements += 1;
            if by_oracle {
                report.closure_hits.push(rendered());
            }
        } else {
            report.disagreements.push(format!(
                "({}): conditions {} but oracle {}",
                rendered(),
                by_conditions,
                by_oracle
            ));
        }
    }
    Ok(report)
}

/// JSON rendering (sorted keys throughout, so parse/re-render is
/// byte-stable).
pub mod json {
    use super::*;
    use serde_json::{json, Value};

    pub fn family_value(cb: &CanonicalBasis, family: &SolutionFamily) -> Result<Value> {
        let fixed: BTreeMap<String, String> = family
            .fixed
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect();
        let vectors = family_vectors(cb, family)?;
        let rendered: Vec<String> = vectors.iter().map(mv_ext_text).collect();
        Ok(json!({
            "fixed": fixed,
            "free": family.free,
            "extension": family.extension.as_ref().map(|q| {
                format!("s^2 = {}", q.text(&|_| "a".to_string()))
            }),
            "subalgebra": rendered,
            "real_infeasibility_certificate": family
                .real_certificate()
                .map(|p| p.text(&|v| if v == 0 { "a".into() } else { "s".into() })),
        }))
    }

    pub fn basis_value(report: &BasisReport) -> Result<Value> {
        let names = report.conditions.name_fn();
        let m = report.basis.index();
        match &report.outcome {
            SolveOutcome::Contradiction(trace) => Ok(json!({
                "m": m,
                "outcome": "contradiction",
                "trace": trace
                    .steps
                    .iter()
                    .map(|s| s.text(&names))
                    .chain(std::iter::once(format!(
                        "condition {} from product ({}, {}) evaluates to {}",
                        trace.source.poly.text(&names),
                        trace.source.product.0,
                        trace.source.product.1,
                        trace.constant
                    )))
                    .collect::<Vec<_>>(),
            })),
            SolveOutcome::Families(families) => {
                let values: Result<Vec<Value>> = families
                    .iter()
                    .map(|f| family_value(&report.basis, f))
                    .collect();
                Ok(json!({
                    "m": m,
                    "outcome": "families",
                    "families": values?,
                }))
            }
            SolveOutcome::Unresolved(u) => Ok(json!({
                "m": m,
                "outcome": "unresolved",
                "note": u.note,
                "remaining": u
                    .remaining
                    .iter()
                    .map(|c| json!({
                        "poly": c.poly.text(&names),
                        "from_product": [c.product.0, c.product.1],
                    }))
                    .collect::<Vec<_>>(),
            })),
        }
    }

    pub fn classification_value(result: &ClassificationResult) -> Result<Value> {
        let bases: Result<Vec<Value>> = result.bases.iter().map(basis_value).collect();
        Ok(json!({
            "n": result.n,
            "bases": bases?,
            "summary": {
                "one_parameter_families": result.summary.one_parameter_families,
                "isolated": result.summary.isolated,
                "contradictions": result.summary.contradictions,
                "unresolved": result.summary.unresolved,
            },
        }))
    }

    pub fn oracle_value(report: &OracleReport) -> Value {
        json!({
            "n": report.n,
            "basis": report.basis,
            "trials": report.trials,
            "seed": report.seed,
            "agreements": report.agreements,
            "disagreements": report.disagreements,
            "closure_hits": report.closure_hits,
        })
    }

    pub fn theorem_value(report: &TheoremReport) -> Value {
        json!({
            "families": report
                .checks
                .iter()
                .map(|c| json!({
                    "name": c.name,
                    "closed": c.closed,
                    "matched_family": c.matched_family,
                    "failure": c.failure,
                }))
                .collect::<Vec<_>>(),
            "verified": report.all_verified(),
        })
    }
}
