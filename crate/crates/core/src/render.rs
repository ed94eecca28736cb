//! Shared printing of `coefficient * monomial` sums.

use crate::ring::Ring;

/// Appends one term of a sum. `mono` is empty for the constant term.
pub(crate) fn push_term<C: Ring>(out: &mut String, first: bool, c: &C, mono: &str) {
    let neg = c.is_negative_like();
    let a = if neg { c.neg_ref() } else { c.clone() };
    out.push_str(match (first, neg) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    });
    if mono.is_empty() {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(mono);
    } else if a.is_atomic() {
        out.push_str(&format!("{a}*{mono}"));
    } else {
        out.push_str(&format!("({a})*{mono}"));
    }
}
