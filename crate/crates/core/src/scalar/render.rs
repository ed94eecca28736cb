//! Text form of scalars: `i`, `q`, `h`, integer powers and one top-level `/`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gauss::Gauss;
use super::poly::{Mono, Poly};
use super::Scalar;
use crate::ring::Ring;

fn mono_str(m: Mono) -> String {
    let mut parts = Vec::new();
    for (sym, e) in [("h", m.h), ("q", m.q)] {
        match e {
            0 => {}
            1 => parts.push(sym.to_string()),
            _ => parts.push(format!("{sym}^{e}")),
        }
    }
    parts.join("*")
}

/// `coeff * mono` for a coefficient already made sign-positive.
fn term_str(c: &Gauss, m: Mono) -> String {
    let ms = mono_str(m);
    if ms.is_empty() {
        return c.to_string();
    }
    if !c.is_real() {
        if c.re.is_zero() {
            let a = &c.im;
            return scaled(a, &format!("i*{ms}"));
        }
        return format!("{c}*{ms}");
    }
    scaled(&c.re, &ms)
}

fn scaled(r: &BigRational, body: &str) -> String {
    let n: &BigInt = r.numer();
    let d: &BigInt = r.denom();
    match (n.is_one(), d.is_one()) {
        (true, true) => body.to_string(),
        (true, false) => format!("{body}/{d}"),
        (false, true) => format!("{n}*{body}"),
        (false, false) => format!("{n}*{body}/{d}"),
    }
}

pub fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative_like();
        let c = if neg { c.neg_ref() } else { c.clone() };
        let t = term_str(&c, *m);
        match (k, neg) {
            (0, false) => out.push_str(&t),
            (0, true) => {
                out.push('-');
                out.push_str(&t);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&t);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&t);
            }
        }
    }
    out
}

fn wrap(p: &Poly) -> String {
    let s = render_poly(p);
    if p.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

pub fn render_scalar(s: &Scalar) -> String {
    let den = s.denominator();
    if den.is_one() {
        return render_poly(s.numerator());
    }
    let num = s.numerator();
    let num_str = if num.len() > 1 {
        format!("({})", render_poly(num))
    } else {
        let t = render_poly(num);
        if t.contains('/') || (t.contains('(') && !t.starts_with('(')) {
            format!("({t})")
        } else {
            t
        }
    };
    format!("{num_str}/{}", wrap(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Var;
    use crate::ring::Field;

    #[test]
    fn render_examples() {
        let h = Scalar::hbar();
        let q = Scalar::q();
        assert_eq!((h.clone() * Scalar::ratio(1, 2)).to_string(), "h/2");
        assert_eq!((h.clone() * h.clone() * Scalar::ratio(-1, 4)).to_string(), "-h^2/4");
        assert_eq!(Scalar::var_pow(Var::Q, -1).to_string(), "1/q");
        let s = q.clone() - q.try_inv().unwrap();
        assert_eq!(s.to_string(), "(q^2 - 1)/q");
        let t = h.clone() * Scalar::ratio(1, 2) * Scalar::var_pow(Var::Q, -1);
        assert_eq!(t.to_string(), "(h/2)/q");
        assert_eq!(Scalar::i().neg_ref().to_string(), "-i");
        assert_eq!((Scalar::i() * h).to_string(), "i*h");
    }
}
