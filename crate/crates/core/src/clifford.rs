//! Blade and multivector arithmetic for the complex Clifford algebra with
//! generator relations `e_i e_j = -e_j e_i` (i != j) and `e_i^2 = -1`.
//!
//! Blades are bitmasks over the generators; the basis of the 2^n-dimensional
//! algebra is ordered grade-first, then by mask, which reproduces the usual
//! listing `1, e1, e2, e3, i = e1e2, j = e1e3, k = e2e3, z = e1e2e3` at n = 3.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub const MAX_DIM: u8 = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade {
    mask: u32,
    dim: u8,
}

impl Blade {
    pub fn new(mask: u32, dim: u8) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} too large");
        assert!(mask < (1 << dim), "mask {mask:#b} out of range for n = {dim}");
        Blade { mask, dim }
    }

    /// The identity blade `e_0 = 1`.
    pub fn identity(dim: u8) -> Self {
        Blade::new(0, dim)
    }

    /// Generator `e_i`, 1-based.
    pub fn generator(i: u8, dim: u8) -> Self {
        assert!(i >= 1 && i <= dim, "generator e{i} not in g({dim})");
        Blade::new(1 << (i - 1), dim)
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn grade(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    /// Generator indices in increasing order, 1-based.
    pub fn factors(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.dim).filter(|i| self.mask & (1 << (i - 1)) != 0)
    }

    /// Same mask viewed inside g(n + k).
    pub fn embedded(&self, k: u8) -> Blade {
        Blade::new(self.mask, self.dim + k)
    }

    /// Paper-style name: `1, e1, e2, e3, i, j, k, z` at n = 3, `e124`-style
    /// index lists otherwise.
    pub fn name(&self) -> String {
        if self.dim == 3 {
            return match self.mask {
                0b000 => "1",
                0b001 => "e1",
                0b010 => "e2",
                0b100 => "e3",
                0b011 => "i",
                0b101 => "j",
                0b110 => "k",
                0b111 => "z",
                _ => unreachable!(),
            }
            .to_string();
        }
        self.index_name()
    }

    /// Dimension-independent name: `1`, `e1`, `e12`, `e124`, ...
    pub fn index_name(&self) -> String {
        if self.mask == 0 {
            return "1".to_string();
        }
        let digits: String = self.factors().map(|i| i.to_string()).collect();
        format!("e{digits}")
    }
}

/// Grade first, then mask; the generator order of the whole artifact.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.mask.cmp(&other.mask))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// All 2^n blades of g(n) in generator order.
pub fn blades_in_order(dim: u8) -> Vec<Blade> {
    let mut blades: Vec<Blade> = (0..(1u32 << dim)).map(|m| Blade::new(m, dim)).collect();
    blades.sort();
    blades
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn apply<S: Scalar>(self, value: &S) -> S {
        match self {
            Sign::Pos => value.clone(),
            Sign::Neg => value.neg(),
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// Product of two blades: the result mask is the symmetric difference, the
/// sign counts transpositions needed to interleave the factor lists plus one
/// `-1` per repeated generator (`e_i^2 = -1`).
pub fn blade_mul(a: Blade, b: Blade) -> (Sign, Blade) {
    assert_eq!(a.dim, b.dim, "blade dimensions differ");
    let mut transpositions = 0u32;
    for i in b.factors() {
        transpositions += (a.mask >> i).count_ones();
    }
    let repeats = (a.mask & b.mask).count_ones();
    let sign = if (transpositions + repeats) % 2 == 0 {
        Sign::Pos
    } else {
        Sign::Neg
    };
    (sign, Blade::new(a.mask ^ b.mask, a.dim))
}

/// Sparse multivector over any scalar ring in the tower. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiVector<S: Scalar> {
    dim: u8,
    coeffs: BTreeMap<Blade, S>,
}

impl<S: Scalar> MultiVector<S> {
    pub fn zero(dim: u8) -> Self {
        MultiVector {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, S)>>(dim: u8, terms: I) -> Self {
        let mut mv = MultiVector::zero(dim);
        for (b, c) in terms {
            mv.add_term(b, c);
        }
        mv
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, blade: Blade) -> Option<&S> {
        self.coeffs.get(&blade)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, blade: Blade, coeff: S) {
        assert_eq!(blade.dim(), self.dim, "blade dimension differs");
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(blade) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = MultiVector::zero(self.dim);
        for (b, k) in &self.coeffs {
            out.add_term(*b, k.mul(c));
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: &dyn Fn(&S) -> T) -> MultiVector<T> {
        let mut out = MultiVector::zero(self.dim);
        for (b, k) in &self.coeffs {
            out.add_term(*b, f(k));
        }
        out
    }

    /// The natural inclusion g(n) -> g(n + k): identical masks, larger
    /// algebra. An injective algebra homomorphism since blade signs depend
    /// only on the masks involved.
    pub fn embedded(&self, k: u8) -> MultiVector<S> {
        let mut out = MultiVector::zero(self.dim + k);
        for (b, c) in &self.coeffs {
            out.add_term(b.embedded(k), c.clone());
        }
        out
    }
}

impl<S: Scalar> Add for &MultiVector<S> {
    type Output = MultiVector<S>;
    fn add(self, rhs: &MultiVector<S>) -> MultiVector<S> {
        assert_eq!(self.dim, rhs.dim, "multivector dimensions differ");
        let mut out = self.clone();
        for (b, c) in &rhs.coeffs {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &MultiVector<S> {
    type Output = MultiVector<S>;
    fn sub(self, rhs: &MultiVector<S>) -> MultiVector<S> {
        assert_eq!(self.dim, rhs.dim, "multivector dimensions differ");
        let mut out = self.clone();
        for (b, c) in &rhs.coeffs {
            out.add_term(*b, c.neg());
        }
        out
    }
}

impl<S: Scalar> Neg for &MultiVector<S> {
    type Output = MultiVector<S>;
    fn neg(self) -> MultiVector<S> {
        let mut out = MultiVector::zero(self.dim);
        for (b, c) in &self.coeffs {
            out.add_term(*b, c.neg());
        }
        out
    }
}

/// Bilinear extension of the blade product.
impl<S: Scalar> Mul for &MultiVector<S> {
    type Output = MultiVector<S>;
    fn mul(self, rhs: &MultiVector<S>) -> MultiVector<S> {
        assert_eq!(self.dim, rhs.dim, "multivector dimensions differ");
        let mut out = MultiVector::zero(self.dim);
        for (ba, ca) in &self.coeffs {
            for (bb, cb) in &rhs.coeffs {
                let (sign, blade) = blade_mul(*ba, *bb);
                out.add_term(blade, sign.apply(&ca.mul(cb)));
            }
        }
        out
    }
}

/// The full 2^n x 2^n signed product grid.
pub struct ProductTable {
    dim: u8,
    blades: Vec<Blade>,
    cells: Vec<Vec<(Sign, Blade)>>,
}

impl ProductTable {
    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn blades(&self) -> &[Blade] {
        &self.blades
    }

    pub fn cell(&self, row: usize, col: usize) -> (Sign, Blade) {
        self.cells[row][col]
    }

    pub fn cell_text(&self, row: usize, col: usize) -> String {
        let (sign, blade) = self.cells[row][col];
        match sign {
            Sign::Pos => blade.name(),
            Sign::Neg => format!("-{}", blade.name()),
        }
    }

    /// Compares against the transcribed g(3) reference grid; returns the
    /// number of matching cells out of 64. Only meaningful at n = 3.
    pub fn check_against_reference(&self) -> (usize, Vec<(usize, usize)>) {
        assert_eq!(self.dim, 3, "reference grid is for g(3)");
        let mut matching = 0;
        let mut mismatches = Vec::new();
        for r in 0..8 {
            for c in 0..8 {
                if self.cell_text(r, c) == REFERENCE_TABLE_G3[r][c] {
                    matching += 1;
                } else {
                    mismatches.push((r, c));
                }
            }
        }
        (matching, mismatches)
    }
}

pub fn build_table(dim: u8) -> Result<ProductTable> {
    if dim < 1 || dim > MAX_DIM {
        return Err(Error::OutOfRange {
            what: "table dimension",
            got: dim as i64,
            expected: "1..=6",
        });
    }
    let blades = blades_in_order(dim);
    let cells = blades
        .iter()
        .map(|&a| blades.iter().map(|&b| blade_mul(a, b)).collect())
        .collect();
    Ok(ProductTable { dim, blades, cells })
}

/// The published 8x8 product grid for g(3), stored literally as a fixture.
/// It validates the sign algorithm; the implementation never reads it.
pub const REFERENCE_TABLE_G3: [[&str; 8]; 8] = [
    ["1", "e1", "e2", "e3", "i", "j", "k", "z"],
    ["e1", "-1", "i", "j", "-e2", "-e3", "z", "-k"],
    ["e2", "-i", "-1", "k", "e1", "-z", "-e3", "j"],
    ["e3", "-j", "-k", "-1", "z", "e1", "e2", "-i"],
    ["i", "e2", "-e1", "z", "-1", "k", "-j", "-e3"],
    ["j", "e3", "-z", "-e1", "-k", "-1", "i", "e2"],
    ["k", "z", "e3", "-e2", "j", "-i", "-1", "-e1"],
    ["z", "-k", "j", "-i", "-e3", "e2", "-e1", "1"],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaussianRational, Polynomial};

    type Mv = MultiVector<GaussianRational>;

    fn blade(name: &str) -> Blade {
        blades_in_order(3)
            .into_iter()
            .find(|b| b.name() == name)
            .unwrap()
    }

    fn unit(name: &str) -> Mv {
        MultiVector::from_terms(3, [(blade(name), GaussianRational::one())])
    }

    #[test]
    fn generator_squares_to_minus_one() {
        for i in 1..=3 {
            let e = Blade::generator(i, 3);
            let (sign, b) = blade_mul(e, e);
            assert_eq!(sign, Sign::Neg);
            assert!(b.is_identity());
        }
    }

    #[test]
    fn e2_e3_is_k() {
        let (sign, b) = blade_mul(Blade::generator(2, 3), Blade::generator(3, 3));
        assert_eq!(sign, Sign::Pos);
        assert_eq!(b.name(), "k");
    }

    #[test]
    fn pseudoscalar_squares_to_one() {
        let z = blade("z");
        let (sign, b) = blade_mul(z, z);
        assert_eq!(sign, Sign::Pos);
        assert!(b.is_identity());
    }

    #[test]
    fn identity_is_neutral_on_every_blade() {
        let one = Blade::identity(3);
        for b in blades_in_order(3) {
            assert_eq!(blade_mul(one, b), (Sign::Pos, b));
            assert_eq!(blade_mul(b, one), (Sign::Pos, b));
        }
    }

    #[test]
    fn anticommutation_of_distinct_generators() {
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                if i == j {
                    continue;
                }
                let (s1, b1) = blade_mul(Blade::generator(i, 3), Blade::generator(j, 3));
                let (s2, b2) = blade_mul(Blade::generator(j, 3), Blade::generator(i, 3));
                assert_eq!(b1, b2);
                assert_eq!(s1, -s2);
            }
        }
    }

    #[test]
    fn table_matches_reference_grid() {
        let table = build_table(3).unwrap();
        let (matching, mismatches) = table.check_against_reference();
        assert_eq!(matching, 64, "mismatched cells: {mismatches:?}");
    }

    #[test]
    fn two_by_two_table() {
        let table = build_table(1).unwrap();
        assert_eq!(table.cell_text(0, 0), "1");
        assert_eq!(table.cell_text(0, 1), "e1");
        assert_eq!(table.cell_text(1, 0), "e1");
        assert_eq!(table.cell_text(1, 1), "-1");
    }

    #[test]
    fn table_dimension_bounds() {
        assert!(build_table(0).is_err());
        assert!(build_table(7).is_err());
    }

    #[test]
    fn product_example_from_basis_one() {
        // (e2 + c3*z)(e3 + c4*z) = k + c3*c4 + c4*j - c3*i over polynomials.
        let c3 = Polynomial::var(0);
        let c4 = Polynomial::var(1);
        let mv = |pairs: Vec<(&str, Polynomial)>| {
            MultiVector::from_terms(3, pairs.into_iter().map(|(n, p)| (blade(n), p)))
        };
        let a3 = mv(vec![("e2", Polynomial::one()), ("z", c3.clone())]);
        let a4 = mv(vec![("e3", Polynomial::one()), ("z", c4.clone())]);
        let product = &a3 * &a4;
        let expected = mv(vec![
            ("k", Polynomial::one()),
            ("1", &c3 * &c4),
            ("j", c4.clone()),
            ("i", -&c3),
        ]);
        assert_eq!(product, expected);
    }

    #[test]
    fn product_example_from_basis_two() {
        // (e1 + c*k)z = -k - c*e1.
        let c = Polynomial::var(0);
        let e1k = MultiVector::from_terms(
            3,
            [(blade("e1"), Polynomial::one()), (blade("k"), c.clone())],
        );
        let z = MultiVector::from_terms(3, [(blade("z"), Polynomial::one())]);
        let product = &e1k * &z;
        let expected = MultiVector::from_terms(
            3,
            [(blade("k"), -&Polynomial::one()), (blade("e1"), -&c)],
        );
        assert_eq!(product, expected);
    }

    #[test]
    fn right_identity() {
        let x = &unit("e2") + &unit("j");
        let one = unit("1");
        assert_eq!(&x * &one, x);
    }

    #[test]
    fn embedding_preserves_masks_and_products() {
        let k = unit("k");
        let lifted = k.embedded(1);
        assert_eq!(lifted.dim(), 4);
        let blades: Vec<_> = lifted.terms().map(|(b, _)| b.index_name()).collect();
        assert_eq!(blades, vec!["e23"]);

        let e1 = unit("e1");
        let square = &e1 * &e1;
        assert_eq!(&e1.embedded(1) * &e1.embedded(1), square.embedded(1));
    }
}
