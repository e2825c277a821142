use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{coeff, coeff_string, Coeff, FormalSum};
use crate::constructions::System;
use crate::group::Elem;

use super::monomial::{monomial_multiply, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown token `{0}`")]
    Token(String),
    #[error("unknown {kind} `{name}`")]
    Name { kind: &'static str, name: String },
    #[error("unbalanced parentheses in `{0}`")]
    Parens(String),
    #[error("empty term in `{0}`")]
    Empty(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    P(usize),
    S(usize),
    SStar(usize),
    U(Elem),
}

/// A product of generators, leftmost first.
pub type GeneratorWord = Vec<Token>;

/// A linear combination of normal-form monomials.
pub type Combination = FormalSum<Monomial>;

pub fn token_string(sys: &System, t: &Token) -> String {
    let g = sys.graph();
    match t {
        Token::P(v) => format!("p({})", g.vertex_name(*v)),
        Token::S(e) => format!("s({})", g.edge_name(*e)),
        Token::SStar(e) => format!("s*({})", g.edge_name(*e)),
        Token::U(h) => format!("u({h})"),
    }
}

pub fn word_string(sys: &System, w: &[Token]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|t| token_string(sys, t)).collect::<Vec<_>>().join(" ")
}

fn parse_token(sys: &System, head: &str, arg: &str) -> Result<Token, WordError> {
    let graph = sys.graph();
    let edge = |name: &str| {
        graph.edge_index(name).map_err(|_| WordError::Name {
            kind: "edge",
            name: name.into(),
        })
    };
    match head {
        "p" => graph.vertex_index(arg).map(Token::P).map_err(|_| WordError::Name {
            kind: "vertex",
            name: arg.into(),
        }),
        "s" => edge(arg).map(Token::S),
        "s*" => edge(arg).map(Token::SStar),
        "u" => sys.group().parse_elem(arg).map(Token::U).map_err(|_| WordError::Name {
            kind: "group element",
            name: arg.into(),
        }),
        _ => Err(WordError::Token(head.into())),
    }
}

/// Whitespace-separated tokens `p(v)`, `s(e)`, `s*(e)`, `u(g)`; `1` is the
/// empty word.
pub fn parse_word(sys: &System, text: &str) -> Result<GeneratorWord, WordError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        if chars[i] == '1' && chars.get(i + 1).is_none_or(|c| c.is_whitespace()) {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && chars[i] != '(' && !chars[i].is_whitespace() {
            i += 1;
        }
        let head: String = chars[start..i].iter().collect();
        if i >= chars.len() || chars[i] != '(' {
            return Err(WordError::Token(head));
        }
        let mut depth = 0;
        let open = i;
        loop {
            if i >= chars.len() {
                return Err(WordError::Parens(text.into()));
            }
            match chars[i] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            i += 1;
        }
        let arg: String = chars[open + 1..i].iter().collect();
        out.push(parse_token(sys, &head, arg.trim())?);
        i += 1;
    }
    Ok(out)
}

/// Words joined by top-level `+` and `-`, each with an optional leading
/// integer factor.
pub fn parse_expression(sys: &System, text: &str) -> Result<Vec<(i64, GeneratorWord)>, WordError> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1;
    let mut start = 0;
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let push = |s: &str, sign: i64, terms: &mut Vec<(i64, GeneratorWord)>| -> Result<(), WordError> {
        if s.trim().is_empty() {
            return Err(WordError::Empty(text.into()));
        }
        let t = s.trim_start();
        let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
        let (factor, rest) = match t[..digits].parse::<i64>() {
            Ok(n) if t[digits..].chars().next().is_none_or(|c| c.is_whitespace()) => (n, &t[digits..]),
            _ => (1, t),
        };
        terms.push((sign * factor, parse_word(sys, rest)?));
        Ok(())
    };
    for &(idx, c) in &bytes {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let chunk = &text[start..idx];
                if !(chunk.trim().is_empty() && terms.is_empty() && start == 0) {
                    push(chunk, sign, &mut terms)?;
                }
                sign = if c == '-' { -1 } else { 1 };
                start = idx + c.len_utf8();
            }
            _ => {}
        }
        if depth < 0 {
            return Err(WordError::Parens(text.into()));
        }
    }
    if depth != 0 {
        return Err(WordError::Parens(text.into()));
    }
    push(&text[start..], sign, &mut terms)?;
    Ok(terms)
}

/// w* : reversed, with s ↔ s* and u(g) ↦ u(g⁻¹).
pub fn word_adjoint(sys: &System, w: &[Token]) -> GeneratorWord {
    w.iter()
        .rev()
        .map(|t| match t {
            Token::P(v) => Token::P(*v),
            Token::S(e) => Token::SStar(*e),
            Token::SStar(e) => Token::S(*e),
            Token::U(h) => Token::U(sys.group().inv(h)),
        })
        .collect()
}

fn token_combination(sys: &System, t: &Token) -> Combination {
    match t {
        Token::P(v) => Combination::basis(Monomial::vertex(sys, *v)),
        Token::S(e) => Combination::basis(Monomial::edge(sys, *e)),
        Token::SStar(e) => Combination::basis(Monomial::edge(sys, *e).adjoint(sys)),
        Token::U(h) => unitary(sys, h),
    }
}

/// u_g = Σ_v p_v u_g over the finite vertex set.
fn unitary(sys: &System, h: &Elem) -> Combination {
    (0..sys.graph().num_vertices())
        .map(|v| (Monomial::unitary_at(sys, v, h), Coeff::one()))
        .collect()
}

pub fn multiply(sys: &System, a: &Combination, b: &Combination) -> Combination {
    let mut out = Combination::zero();
    for (m1, c1) in a.terms() {
        for (m2, c2) in b.terms() {
            if let Some(m) = monomial_multiply(sys, m1, m2) {
                out.add_term(m, c1 * c2);
            }
        }
    }
    out
}

pub fn combination_adjoint(sys: &System, c: &Combination) -> Combination {
    c.terms().map(|(m, k)| (m.adjoint(sys), k.conj())).collect()
}

/// Reduces a word to monomials s_μ u_g s_ν*; the empty word is Σ_v p_v.
pub fn normalize(sys: &System, w: &[Token]) -> Combination {
    let mut acc = unitary(sys, &sys.group().identity());
    for t in w {
        acc = multiply(sys, &acc, &token_combination(sys, t));
    }
    acc
}

pub fn normalize_expression(sys: &System, terms: &[(i64, GeneratorWord)]) -> Combination {
    terms.iter().fold(Combination::zero(), |acc, (sign, w)| {
        acc.add(&normalize(sys, w).scale(&coeff((*sign, 1), (0, 1))))
    })
}

/// Text form that parses back to the same combination.
pub fn combination_string(sys: &System, c: &Combination) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, k)) in c.terms().enumerate() {
        let body = m.display(sys);
        let body = if body.is_empty() { "1".to_string() } else { body };
        if k.im.is_zero() && k.re.is_integer() {
            let n = k.re.to_integer();
            let negative = n < 0.into();
            out.push_str(match (i > 0, negative) {
                (true, true) => " - ",
                (true, false) => " + ",
                (false, true) => "-",
                (false, false) => "",
            });
            let abs = if negative { -n } else { n };
            if abs != 1.into() {
                out.push_str(&format!("{abs} "));
            }
        } else {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("({}) ", coeff_string(k)));
        }
        out.push_str(&body);
    }
    out
}

pub struct ShownCombination<'a>(pub &'a Combination, pub &'a System);

impl fmt::Display for ShownCombination<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", combination_string(self.1, self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::EpkSystem;

    fn o21() -> System {
        EpkSystem::new(2, 1).unwrap().system().unwrap()
    }

    fn nf(sys: &System, text: &str) -> String {
        combination_string(sys, &normalize(sys, &parse_word(sys, text).unwrap()))
    }

    #[test]
    fn odometer_normal_forms() {
        let sys = o21();
        assert_eq!(nf(&sys, "u(1) s(0)"), "s(1)");
        assert_eq!(nf(&sys, "u(1) s(1)"), "s(0) u(1)");
        assert_eq!(nf(&sys, "s*(0) s(1)"), "0");
        assert_eq!(nf(&sys, "s*(0) s(0)"), "p(v)");
        assert_eq!(nf(&sys, "1"), "p(v)");
        assert_eq!(nf(&sys, "u(1) u(-1)"), "p(v)");
        assert_eq!(nf(&sys, "u(2) s(0)"), "s(0) u(1)");
    }

    #[test]
    fn parse_errors() {
        let sys = o21();
        assert!(matches!(parse_word(&sys, "q(0)"), Err(WordError::Token(_))));
        assert!(matches!(parse_word(&sys, "s(7)"), Err(WordError::Name { .. })));
        assert!(matches!(parse_word(&sys, "s(0"), Err(WordError::Parens(_))));
        assert!(matches!(parse_word(&sys, "s"), Err(WordError::Token(_))));
        assert_eq!(parse_word(&sys, "u(-3)").unwrap(), vec![Token::U(Elem::int(-3))]);
    }

    #[test]
    fn expressions_and_round_trip() {
        let sys = o21();
        let terms = parse_expression(&sys, "s(0) s*(0) + s(1) s*(1) - 1").unwrap();
        assert_eq!(terms.len(), 3);
        let c = normalize_expression(&sys, &terms);
        let text = combination_string(&sys, &c);
        let back = normalize_expression(&sys, &parse_expression(&sys, &text).unwrap());
        assert_eq!(back, c);
        assert!(parse_expression(&sys, "s(0) + ").is_err());
        assert_eq!(parse_expression(&sys, "-s(0)").unwrap()[0].0, -1);
        let twice = normalize_expression(&sys, &parse_expression(&sys, "s(0) + u(1) s(1) u(-1)").unwrap());
        assert_eq!(combination_string(&sys, &twice), "2 s(0)");
        assert_eq!(normalize_expression(&sys, &parse_expression(&sys, "2 s(0)").unwrap()), twice);
        // normal forms are fixed points
        for w in ["u(1) s(1) s*(0)", "s*(1) u(3) s(0) s(1)", "p(v) u(-2)"] {
            let c = normalize(&sys, &parse_word(&sys, w).unwrap());
            let again = normalize_expression(&sys, &parse_expression(&sys, &combination_string(&sys, &c)).unwrap());
            assert_eq!(again, c);
        }
    }

    #[test]
    fn involution() {
        let sys = o21();
        for w in ["u(1) s(0)", "s*(1) u(3) s(0) s(1)", "s(0) s(1) s*(1) u(-1)"] {
            let word = parse_word(&sys, w).unwrap();
            let lhs = normalize(&sys, &word_adjoint(&sys, &word));
            let rhs = combination_adjoint(&sys, &normalize(&sys, &word));
            assert_eq!(lhs, rhs, "{w}");
        }
    }
}
