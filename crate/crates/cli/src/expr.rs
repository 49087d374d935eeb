//! Element expression parser and renderers.
//!
//! Grammar: sums of terms `coef*name⊗name⊗…`, where `coef` is an exact
//! rational literal (`p` or `p/q`) and may be omitted together with the
//! `*`. The ASCII alias `(x)` is accepted for `⊗`, so `1(x)x` reads as
//! `1⊗x`. A bare rational that is not a basis name denotes an arity-0
//! scalar. Every term must have the same arity.

use frobhoch_core::frobenius::FrobeniusAlgebra;
use frobhoch_core::tensor::TensorElement;
use frobhoch_core::{Error, Result, Scalar};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn error(&self, detail: &str) -> Error {
        Error::ParseError {
            position: self.pos,
            detail: detail.to_string(),
        }
    }

    fn take_word(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }
}

/// Parses an expression into a canonical tensor over the algebra's basis.
pub fn parse_element(expr: &str, alg: &FrobeniusAlgebra) -> Result<TensorElement> {
    let mut cur = Cursor::new(expr);
    let mut total: Option<TensorElement> = None;
    loop {
        cur.skip_ws();
        let mut sign = Scalar::one();
        while cur.peek() == Some('+') || cur.peek() == Some('-') {
            if cur.eat("-") {
                sign = -sign;
            } else {
                cur.eat("+");
            }
            cur.skip_ws();
        }
        if cur.peek().is_none() {
            return Err(cur.error("expected a term"));
        }
        let term = parse_term(&mut cur, alg)?.scaled(&sign);
        total = Some(match total {
            None => term,
            Some(acc) => {
                if acc.arity() != term.arity() {
                    return Err(cur.error(&format!(
                        "term arity {} does not match preceding arity {}",
                        term.arity(),
                        acc.arity()
                    )));
                }
                acc.add(&term)?
            }
        });
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') | Some('-') => continue,
            Some(c) => return Err(cur.error(&format!("unexpected character `{c}`"))),
        }
    }
    Ok(total.expect("at least one term parsed"))
}

fn parse_term(cur: &mut Cursor<'_>, alg: &FrobeniusAlgebra) -> Result<TensorElement> {
    cur.skip_ws();
    let word_start = cur.pos;
    let word = cur.take_word();
    if word.is_empty() {
        return Err(cur.error("expected a coefficient or basis name"));
    }
    // `word` may be a coefficient (if `*` or `/` follows) or a basis name
    let mut coeff = Scalar::one();
    let mut first_name: Option<&str> = None;
    let looks_numeric = word.chars().all(|c| c.is_ascii_digit());
    if looks_numeric && (cur.rest().starts_with('/') || cur.rest().starts_with('*')) {
        // rational literal
        let mut lit = word.to_string();
        if cur.eat("/") {
            let denom = cur.take_word();
            if denom.is_empty() {
                return Err(cur.error("expected a denominator"));
            }
            lit.push('/');
            lit.push_str(denom);
        }
        coeff = lit.parse().map_err(|e| match e {
            Error::ParseError { detail, .. } => Error::ParseError {
                position: word_start,
                detail,
            },
            other => other,
        })?;
        cur.skip_ws();
        if cur.eat("*") {
            cur.skip_ws();
            let name = cur.take_word();
            if name.is_empty() {
                return Err(cur.error("expected a basis name after `*`"));
            }
            first_name = Some(name);
        }
        // a bare rational is an arity-0 scalar term
    } else {
        first_name = Some(word);
    }

    let mut indices: Vec<u32> = Vec::new();
    if let Some(name) = first_name {
        // a bare integer that is not a basis name is an arity-0 scalar
        if looks_numeric && alg.basis().index_of(name).is_err() {
            let value: Scalar = name.parse()?;
            return Ok(TensorElement::scalar_tensor(
                alg.basis().clone(),
                &coeff * &value,
            ));
        }
        indices.push(resolve_name(alg, name)?);
        loop {
            cur.skip_ws();
            if cur.eat("⊗") || cur.eat("(x)") {
                cur.skip_ws();
                let name = cur.take_word();
                if name.is_empty() {
                    return Err(cur.error("expected a basis name after `⊗`"));
                }
                indices.push(resolve_name(alg, name)?);
            } else {
                break;
            }
        }
    }
    let tensor = if indices.is_empty() {
        TensorElement::scalar_tensor(alg.basis().clone(), coeff)
    } else {
        TensorElement::basis_tensor(alg.basis().clone(), &indices).scaled(&coeff)
    };
    Ok(tensor)
}

fn resolve_name(alg: &FrobeniusAlgebra, name: &str) -> Result<u32> {
    alg.basis().index_of(name)
}

/// Canonical text rendering; `parse_element(render(t))` reproduces `t`.
pub fn render(t: &TensorElement) -> String {
    t.to_string()
}

/// Machine rendering: `[[coeff, [names…]], …]`.
pub fn tensor_to_json(t: &TensorElement) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = t
        .terms()
        .map(|(key, coeff)| {
            let names: Vec<String> = key
                .iter()
                .map(|&i| t.basis().name(i).to_string())
                .collect();
            serde_json::json!([coeff.to_string(), names])
        })
        .collect();
    serde_json::Value::Array(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobhoch_core::builtins;

    #[test]
    fn parses_spec_examples() {
        let s2 = builtins::sphere(2);
        let x = s2.element_by_name("x").unwrap();
        assert_eq!(parse_element("x", &s2).unwrap(), x);
        assert_eq!(parse_element("1⊗x + x⊗1", &s2).unwrap(), *s2.casimir());
        assert_eq!(parse_element("1(x)x + x(x)1", &s2).unwrap(), *s2.casimir());
        let half = parse_element("-1/2*x", &s2).unwrap();
        assert_eq!(half, x.scaled(&Scalar::ratio(-1, 2)));
        assert!(matches!(
            parse_element("2/0*x", &s2),
            Err(Error::ParseError { .. })
        ));
        assert!(matches!(
            parse_element("y", &s2),
            Err(Error::UnknownBasisName { .. })
        ));
        assert!(matches!(
            parse_element("x + 1⊗x", &s2),
            Err(Error::ParseError { .. })
        ));
    }

    #[test]
    fn round_trips_render() {
        let s2 = builtins::sphere(2);
        let t = parse_element("1*1⊗x + -1/2*x⊗1", &s2).unwrap();
        let again = parse_element(&render(&t), &s2).unwrap();
        assert_eq!(t, again);
        // scalars round trip too
        let s = parse_element("3/4", &s2).unwrap();
        assert_eq!(s.arity(), 0);
        assert_eq!(parse_element(&render(&s), &s2).unwrap(), s);
        let s = parse_element("-3", &s2).unwrap();
        assert_eq!(s.as_scalar(), Scalar::from_int(-3));
        // "1" is a basis name, so it wins over the scalar reading
        assert_eq!(parse_element("1", &s2).unwrap().arity(), 1);
    }
}
