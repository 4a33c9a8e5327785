//! Canonical bases for codimension-1 subspaces and exact span membership.
//!
//! An (N-1)-dimensional subspace of the N-dimensional algebra matches exactly
//! one echelon pattern: basis `m` omits coordinate `p = N + 1 - m` from the
//! leading positions and attaches one free parameter `a_{t,p}` to every
//! vector below the pivot. At N = 8 this reproduces the eight bases used for
//! g(3); the same rule is applied verbatim at other power-of-two sizes (it is
//! the unique pattern consistent with the N = 8 list, see the note on
//! [`canonical_bases`]).

use std::fmt;

use crate::clifford::{blades_in_order, Blade, MultiVector};
use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Polynomial, Scalar};

/// One echelon pattern: index `m` in `1..=N`, pivot coordinate `N + 1 - m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    coords: usize,
    m: usize,
}

/// Expansion coefficients of a vector in a canonical span; entry `t` is the
/// coordinate of the target vector at the slot-`t` generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector<S>(pub Vec<S>);

impl CanonicalBasis {
    pub fn new(coords: usize, m: usize) -> Result<Self> {
        if coords < 2 {
            return Err(Error::OutOfRange {
                what: "coordinate count",
                got: coords as i64,
                expected: ">= 2",
            });
        }
        if m < 1 || m > coords {
            return Err(Error::OutOfRange {
                what: "basis index",
                got: m as i64,
                expected: "1..=N",
            });
        }
        Ok(CanonicalBasis { coords, m })
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn index(&self) -> usize {
        self.m
    }

    /// The omitted coordinate, 1-based.
    pub fn pivot(&self) -> usize {
        self.coords + 1 - self.m
    }

    pub fn param_count(&self) -> usize {
        self.pivot() - 1
    }

    /// `a_{t,p}` for the slot-`t` parameter (0-based slot index).
    pub fn param_name(&self, index: usize) -> String {
        param_name(index + 1, self.pivot())
    }

    pub fn param_names(&self) -> Vec<String> {
        (0..self.param_count()).map(|i| self.param_name(i)).collect()
    }

    /// Coordinate (1-based) carried by basis slot `s` in `1..=N-1`.
    pub fn slot_coordinate(&self, slot: usize) -> usize {
        if slot < self.pivot() {
            slot
        } else {
            slot + 1
        }
    }

    /// The generating dimension `n` with `N = 2^n`.
    pub fn algebra_dim(&self) -> Result<u8> {
        if !self.coords.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.coords));
        }
        Ok(self.coords.trailing_zeros() as u8)
    }

    /// Basis vectors with symbolic parameters: slot `t` below the pivot is
    /// `g_t + a_{t,p} * g_p` where the parameter is polynomial variable
    /// `t - 1`; slots past the pivot are plain generators.
    pub fn vectors_symbolic(&self) -> Result<Vec<MultiVector<Polynomial>>> {
        let dim = self.algebra_dim()?;
        let generators = blades_in_order(dim);
        let pivot_blade = generators[self.pivot() - 1];
        let mut vectors = Vec::with_capacity(self.coords - 1);
        for slot in 1..self.coords {
            let coord = self.slot_coordinate(slot);
            let mut v = MultiVector::zero(dim);
            v.add_term(generators[coord - 1], Polynomial::one());
            if slot < self.pivot() {
                v.add_term(pivot_blade, Polynomial::var(slot - 1));
            }
            vectors.push(v);
        }
        Ok(vectors)
    }

    /// Basis vectors at a concrete parameter assignment.
    pub fn vectors_at(&self, params: &[GaussianRational]) -> Result<Vec<MultiVector<GaussianRational>>> {
        assert_eq!(params.len(), self.param_count(), "parameter count mismatch");
        let dim = self.algebra_dim()?;
        let generators = blades_in_order(dim);
        let pivot_blade = generators[self.pivot() - 1];
        let mut vectors = Vec::with_capacity(self.coords - 1);
        for slot in 1..self.coords {
            let coord = self.slot_coordinate(slot);
            let mut v = MultiVector::zero(dim);
            v.add_term(generators[coord - 1], GaussianRational::one());
            if slot < self.pivot() {
                v.add_term(pivot_blade, params[slot - 1].clone());
            }
            vectors.push(v);
        }
        Ok(vectors)
    }

    /// Paper-layout rendering: `a1 = 1 + a17*k, a2 = e1 + a27*k, ...`.
    pub fn render(&self) -> Result<String> {
        let vectors = self.vectors_symbolic()?;
        let names = self.param_names();
        let pieces: Vec<String> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                format!(
                    "a{} = {}",
                    i + 1,
                    crate::render::mv_poly_text(v, &|idx| names[idx].clone())
                )
            })
            .collect();
        Ok(pieces.join(", "))
    }
}

impl fmt::Display for CanonicalBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "basis ({}) of N = {}", self.m, self.coords)
    }
}

fn param_name(t: usize, p: usize) -> String {
    if t <= 9 && p <= 9 {
        format!("a{t}{p}")
    } else {
        format!("a{t}_{p}")
    }
}

/// All N canonical bases of the N-dimensional algebra. The pattern is the
/// codimension-1 echelon rule instantiated from its N = 8 listing; sizes
/// other than 8 follow the same pivot rule.
pub fn canonical_bases(coords: usize) -> Result<Vec<CanonicalBasis>> {
    (1..=coords)
        .map(|m| CanonicalBasis::new(coords, m))
        .collect()
}

/// An instantiated echelon span: one unit blade per slot plus a shared pivot
/// blade. Forced-coefficient membership needs no division in any scalar ring.
pub struct EchelonSpan<S: Scalar> {
    pivot_blade: Blade,
    slots: Vec<(Blade, S)>,
}

impl<S: Scalar> EchelonSpan<S> {
    /// Checks the echelon shape and extracts the pivot structure. Errors if
    /// the vectors were not produced from a canonical basis.
    pub fn detect(vectors: &[MultiVector<S>]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::NotEchelon("no vectors".into()));
        }
        let dim = vectors[0].dim();
        let generators = blades_in_order(dim);
        if vectors.len() + 1 != generators.len() {
            return Err(Error::NotEchelon(format!(
                "expected {} vectors for g({}), got {}",
                generators.len() - 1,
                dim,
                vectors.len()
            )));
        }
        // Unit blade of each vector = its minimal support blade.
        let mut units = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.dim() != dim {
                return Err(Error::NotEchelon("mixed dimensions".into()));
            }
            let unit = v
                .terms()
                .map(|(b, _)| *b)
                .min()
                .ok_or_else(|| Error::NotEchelon("zero vector".into()))?;
            units.push(unit);
        }
        let pivot_blade = *generators
            .iter()
            .find(|g| !units.contains(g))
            .ok_or_else(|| Error::NotEchelon("no free pivot coordinate".into()))?;
        let mut slots = Vec::with_capacity(vectors.len());
        let mut prev: Option<Blade> = None;
        for (v, unit) in vectors.iter().zip(&units) {
            if let Some(p) = prev {
                if *unit <= p {
                    return Err(Error::NotEchelon("slots out of order".into()));
                }
            }
            prev = Some(*unit);
            let mut pivot_coeff = S::zero();
            for (b, c) in v.terms() {
                if b == unit {
                    if !c.is_one() {
                        return Err(Error::NotEchelon(format!(
                            "slot {} coefficient is not 1",
                            unit.index_name()
                        )));
                    }
                } else if *b == pivot_blade {
                    pivot_coeff = c.clone();
                } else {
                    return Err(Error::NotEchelon(format!(
                        "vector touches {} outside its slot",
                        b.index_name()
                    )));
                }
            }
            if *unit > pivot_blade && !pivot_coeff.is_zero() {
                return Err(Error::NotEchelon(
                    "pivot entry below the pivot row".into(),
                ));
            }
            slots.push((*unit, pivot_coeff));
        }
        Ok(EchelonSpan { pivot_blade, slots })
    }

    pub fn from_canonical(cb: &CanonicalBasis) -> Result<EchelonSpan<Polynomial>> {
        let vectors = cb.vectors_symbolic()?;
        EchelonSpan::detect(&vectors)
    }

    pub fn pivot_blade(&self) -> Blade {
        self.pivot_blade
    }

    /// Forced expansion plus pivot residual: the slot coefficients are read
    /// straight off the target vector, and the only discrepancy that can
    /// survive is at the pivot coordinate. Residual zero iff `v` lies in
    /// the span, identically in any parameters.
    pub fn residual(&self, v: &MultiVector<S>) -> (CoefficientVector<S>, S) {
        let mut coeffs = Vec::with_capacity(self.slots.len());
        let mut acc = v.coeff(self.pivot_blade).cloned().unwrap_or_else(S::zero);
        for (unit, pivot_coeff) in &self.slots {
            let x = v.coeff(*unit).cloned().unwrap_or_else(S::zero);
            if !pivot_coeff.is_zero() && !x.is_zero() {
                acc = acc.sub(&x.mul(pivot_coeff));
            }
            coeffs.push(x);
        }
        (CoefficientVector(coeffs), acc)
    }
}

/// Membership residual of `v` against a canonical basis with symbolic
/// parameters: zero iff `v` lies in the span identically in the parameters.
pub fn membership_residual(
    v: &MultiVector<Polynomial>,
    cb: &CanonicalBasis,
) -> Result<(CoefficientVector<Polynomial>, Polynomial)> {
    let span = EchelonSpan::<Polynomial>::from_canonical(cb)?;
    Ok(span.residual(v))
}

fn coordinate_row(v: &MultiVector<GaussianRational>, generators: &[Blade]) -> Vec<GaussianRational> {
    generators
        .iter()
        .map(|g| v.coeff(*g).cloned().unwrap_or_else(GaussianRational::zero))
        .collect()
}

/// In-place reduced row echelon form over the Gaussian rationals; returns the
/// pivot column of each nonzero row.
pub fn rref(rows: &mut [Vec<GaussianRational>]) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row >= rows.len() {
            break;
        }
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].inv().expect("nonzero pivot");
        for c in col..ncols {
            rows[pivot_row][c] = &rows[pivot_row][c] * &inv;
        }
        for r in 0..rows.len() {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let delta = &factor * &rows[pivot_row][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// Rank of the span of `vectors` via exact elimination.
pub fn span_rank(vectors: &[MultiVector<GaussianRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let generators = blades_in_order(vectors[0].dim());
    let mut rows: Vec<Vec<GaussianRational>> =
        vectors.iter().map(|v| coordinate_row(v, &generators)).collect();
    rref(&mut rows).len()
}

/// Expands `v` in the span of `vectors` by exact Gaussian elimination, or
/// reports that no expansion exists. Independent of the echelon shortcut,
/// which makes it the oracle for every closure claim in the crate.
pub fn rref_membership(
    v: &MultiVector<GaussianRational>,
    vectors: &[MultiVector<GaussianRational>],
) -> Option<CoefficientVector<GaussianRational>> {
    if vectors.is_empty() {
        return if v.is_zero() {
            Some(CoefficientVector(Vec::new()))
        } else {
            None
        };
    }
    let dim = vectors[0].dim();
    assert!(
        vectors.iter().all(|w| w.dim() == dim) && v.dim() == dim,
        "mixed dimensions"
    );
    let generators = blades_in_order(dim);
    let m = vectors.len();
    // Solve A x = v with the vectors as columns, augmented by v.
    let mut rows: Vec<Vec<GaussianRational>> = (0..generators.len())
        .map(|coord| {
            let mut row: Vec<GaussianRational> = vectors
                .iter()
                .map(|w| {
                    w.coeff(generators[coord])
                        .cloned()
                        .unwrap_or_else(GaussianRational::zero)
                })
                .collect();
            row.push(
                v.coeff(generators[coord])
                    .cloned()
                    .unwrap_or_else(GaussianRational::zero),
            );
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&m) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![GaussianRational::zero(); m];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = rows[row][m].clone();
    }
    Some(CoefficientVector(x))
}

/// Recovers the unique canonical form of an (N-1)-dimensional span: the basis
/// index and parameter values. Returns `None` when the span has the wrong
/// dimension.
pub fn reduce_to_canonical(
    vectors: &[MultiVector<GaussianRational>],
) -> Option<(usize, Vec<GaussianRational>)> {
    if vectors.is_empty() {
        return None;
    }
    let generators = blades_in_order(vectors[0].dim());
    let n = generators.len();
    let mut rows: Vec<Vec<GaussianRational>> =
        vectors.iter().map(|v| coordinate_row(v, &generators)).collect();
    let pivots = rref(&mut rows);
    if pivots.len() != n - 1 {
        return None;
    }
    let free_col = (0..n).find(|c| !pivots.contains(c))?;
    let m = n - free_col;
    let params = (0..free_col)
        .map(|row| rows[row][free_col].clone())
        .collect();
    Some((m, params))
}
