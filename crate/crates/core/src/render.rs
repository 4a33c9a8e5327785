//! Text rendering shared by the CLI, JSON output, and test assertions.
//! Everything here is deterministic: blade order, term order, and sign
//! placement are all fixed, so identical values render identically.

use crate::clifford::MultiVector;
use crate::scalars::{ExtensionElement, GaussianRational, Polynomial, Scalar};

/// A scalar split into sign and magnitude text for `x - 3*k`-style joins.
struct SignedText {
    negative: bool,
    body: String,
}

fn gauss_signed(c: &GaussianRational) -> SignedText {
    if c.is_display_negative() {
        SignedText {
            negative: true,
            body: (-c).to_string(),
        }
    } else {
        SignedText {
            negative: false,
            body: c.to_string(),
        }
    }
}

fn poly_signed(p: &Polynomial, name: &dyn Fn(usize) -> String) -> SignedText {
    let negative = p
        .leading()
        .map(|(_, c)| c.is_display_negative())
        .unwrap_or(false);
    let body = if negative { (-p).text(name) } else { p.text(name) };
    SignedText { negative, body }
}

fn ext_signed(e: &ExtensionElement) -> SignedText {
    if e.is_display_negative() {
        SignedText {
            negative: true,
            body: (-e).to_string(),
        }
    } else {
        SignedText {
            negative: false,
            body: e.to_string(),
        }
    }
}

fn join_terms<S: Scalar>(
    mv: &MultiVector<S>,
    signed: &dyn Fn(&S) -> SignedText,
) -> String {
    if mv.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (blade, coeff)) in mv.terms().enumerate() {
        let st = signed(coeff);
        if idx == 0 {
            if st.negative {
                out.push('-');
            }
        } else if st.negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let blade_text = blade.name();
        if blade.is_identity() {
            out.push_str(&st.body);
        } else if st.body == "1" {
            out.push_str(&blade_text);
        } else if st.body.contains(' ') {
            out.push_str(&format!("({})*{}", st.body, blade_text));
        } else {
            out.push_str(&format!("{}*{}", st.body, blade_text));
        }
    }
    out
}

pub fn mv_gauss_text(mv: &MultiVector<GaussianRational>) -> String {
    join_terms(mv, &gauss_signed)
}

pub fn mv_poly_text(mv: &MultiVector<Polynomial>, name: &dyn Fn(usize) -> String) -> String {
    join_terms(mv, &|p| poly_signed(p, name))
}

pub fn mv_ext_text(mv: &MultiVector<ExtensionElement>) -> String {
    join_terms(mv, &ext_signed)
}

/// Condition rendering in the published style: the constant term moves to
/// the right-hand side, everything else stays left. `a27^2 - 1` becomes
/// `a27^2 = 1`; a pure constant renders as the degenerate `c = 0`.
pub fn condition_text(p: &Polynomial, name: &dyn Fn(usize) -> String) -> String {
    let c = p.constant_term();
    let lhs = p - &Polynomial::constant(c.clone());
    if lhs.is_zero() {
        return format!("{} = 0", p.text(name));
    }
    format!("{} = {}", lhs.text(name), -&c)
}
