//! Expression trees over generators and their normalization into the basis.
//!
//! Text syntax (also the canonical rendering):
//! `u_1*e_1(u_2)`, `[u_2,u_3]`, `e_1e_1(u_1)`, `v_1*b.e_2(v_1)`, `u_2^3`,
//! `2*u_1 + u_3`. Juxtaposition of factors means product.

use crate::exactlin::Scalar;

use super::algebra::{AlgebraElement, PnAlgebra};
use super::eword::Letter;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(String),
    Scaled(i64, i64, Box<Expr>),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
    Op(Letter, Box<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

type Res<T> = Result<T, AlgebraError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Res<T> {
        Err(AlgebraError::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s))))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Res<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Res<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().or_else(|_| self.err("integer overflow"))
    }

    fn expr(&mut self) -> Res<Expr> {
        let mut terms = Vec::new();
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        }
        loop {
            let t = self.term()?;
            terms.push(if neg { Expr::Scaled(-1, 1, Box::new(t)) } else { t });
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Res<Expr> {
        let mut coef = None;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.int()?;
            let den = if self.eat(b'/') { self.int()? } else { 1 };
            if den == 0 {
                return self.err("zero denominator");
            }
            coef = Some((num, den));
            self.eat(b'*');
        }
        let mut factors = vec![self.factor()?];
        loop {
            // explicit '*' or juxtaposition
            let juxtaposed = matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'[' || c == b'(');
            if !self.eat(b'*') && !juxtaposed {
                break;
            }
            factors.push(self.factor()?);
        }
        let body = if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Prod(factors) };
        Ok(match coef {
            Some((n, d)) => Expr::Scaled(n, d, Box::new(body)),
            None => body,
        })
    }

    fn factor(&mut self) -> Res<Expr> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let k = self.int()?;
            if k < 1 {
                return self.err("exponent must be positive");
            }
            return Ok(Expr::Pow(Box::new(base), k as u32));
        }
        Ok(base)
    }

    /// Tries to read one operation letter (`e_i` or `b.e_i`) followed by
    /// another letter or '('. Restores the position otherwise.
    fn letter(&mut self) -> Option<Letter> {
        self.skip_ws();
        let save = self.pos;
        let rest = &self.s[self.pos..];
        let (beta, skip) = if rest.starts_with(b"b.e_") {
            (true, 4)
        } else if rest.starts_with(b"e_") {
            (false, 2)
        } else {
            return None;
        };
        let mut end = self.pos + skip;
        let digits_start = end;
        while end < self.s.len() && self.s[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits_start {
            return None;
        }
        let index: u32 = std::str::from_utf8(&self.s[digits_start..end]).ok()?.parse().ok()?;
        let next = &self.s[end..];
        if next.starts_with(b"(") || next.starts_with(b"e_") || next.starts_with(b"b.e_") {
            self.pos = end;
            Some(Letter { beta, index })
        } else {
            self.pos = save;
            None
        }
    }

    fn primary(&mut self) -> Res<Expr> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok(a)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut letters = Vec::new();
                while let Some(l) = self.letter() {
                    letters.push(l);
                }
                if !letters.is_empty() {
                    self.expect(b'(')?;
                    let mut inner = self.expr()?;
                    self.expect(b')')?;
                    for l in letters.into_iter().rev() {
                        inner = Expr::Op(l, Box::new(inner));
                    }
                    return Ok(inner);
                }
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphabetic() || self.s[self.pos] == b'\'') {
                    self.pos += 1;
                }
                if self.pos + 1 < self.s.len() && self.s[self.pos] == b'_' && self.s[self.pos + 1].is_ascii_digit() {
                    self.pos += 1;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                }
                Ok(Expr::Gen(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()))
            }
            _ => self.err("expected a generator, bracket, operation or parenthesis"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, AlgebraError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Structural degree; errors on inhomogeneous sums.
fn degree(e: &Expr, alg: &PnAlgebra) -> Res<u32> {
    let f = alg.field();
    let p = f.characteristic() as u32;
    Ok(match e {
        Expr::Gen(name) => {
            let i = alg.gens().index_of(name).ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
            alg.gens().degree(i)
        }
        Expr::Scaled(_, _, x) => degree(x, alg)?,
        Expr::Sum(xs) => {
            let ds = xs.iter().map(|x| degree(x, alg)).collect::<Res<Vec<_>>>()?;
            if ds.windows(2).any(|w| w[0] != w[1]) {
                return Err(AlgebraError::Inhomogeneous);
            }
            ds[0]
        }
        Expr::Prod(xs) => xs.iter().map(|x| degree(x, alg)).sum::<Res<u32>>()?,
        Expr::Pow(x, k) => degree(x, alg)? * k,
        Expr::Bracket(a, b) => degree(a, alg)? + degree(b, alg)? + alg.shift(),
        Expr::Op(l, x) => {
            let y = degree(x, alg)?;
            match p {
                0 => return Err(AlgebraError::NoOperations),
                2 => l.index + 2 * y,
                _ => p * y + (p - 1) * l.index - l.beta as u32,
            }
        }
    })
}

/// Evaluates an expression to its canonical combination of basis monomials.
pub fn normalize(e: &Expr, alg: &PnAlgebra) -> Result<AlgebraElement, AlgebraError> {
    let d = degree(e, alg)?;
    let out = eval(e, alg)?;
    debug_assert!(out.degrees().iter().all(|x| *x == d));
    Ok(out)
}

fn eval(e: &Expr, alg: &PnAlgebra) -> Res<AlgebraElement> {
    let f = alg.field();
    Ok(match e {
        Expr::Gen(name) => {
            let i = alg.gens().index_of(name).ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
            alg.generator(i)
        }
        Expr::Scaled(n, d, x) => {
            let c: Scalar = if f.is_rational() || *d % f.characteristic() as i64 != 0 {
                f.from_ratio(*n, *d)
            } else {
                return Err(AlgebraError::Parse(format!("denominator {d} vanishes in the field")));
            };
            eval(x, alg)?.scaled(&c, f)
        }
        Expr::Sum(xs) => {
            let mut acc = AlgebraElement::zero();
            for x in xs {
                acc.add_scaled(&eval(x, alg)?, &f.one(), f);
            }
            acc
        }
        Expr::Prod(xs) => {
            let mut acc = alg.unit();
            for x in xs {
                acc = alg.mul(&acc, &eval(x, alg)?);
            }
            acc
        }
        Expr::Pow(x, k) => {
            let base = eval(x, alg)?;
            let mut acc = alg.unit();
            for _ in 0..*k {
                acc = alg.mul(&acc, &base);
            }
            acc
        }
        Expr::Bracket(a, b) => alg.bracket(&eval(a, alg)?, &eval(b, alg)?)?,
        Expr::Op(l, x) => alg.apply_letter(*l, &eval(x, alg)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::freepn::GeneratorSet;

    fn alg(n: u32, p: u64) -> PnAlgebra {
        let g = (1..=6).map(|i| (format!("u_{i}"), i)).collect();
        PnAlgebra::new(GeneratorSet::new(g, FieldSpec::new(p).unwrap(), n).unwrap())
    }

    fn norm(a: &PnAlgebra, s: &str) -> String {
        a.render(&normalize(&parse_expr(s).unwrap(), a).unwrap())
    }

    #[test]
    fn parses_juxtaposed_labels() {
        let a = alg(1, 2);
        assert_eq!(norm(&a, "u_1u_2^2"), "u_1*e_0(u_2)");
        assert_eq!(norm(&a, "u_1*e_1(u_2)"), "u_1*e_1(u_2)");
        assert_eq!(norm(&a, "[u_3,u_2]"), "[u_2,u_3]");
        assert_eq!(norm(&a, "u_3^2"), "e_0(u_3)");
        let a = alg(2, 2);
        assert_eq!(norm(&a, "e_1e_1(u_1)"), "e_1e_1(u_1)");
        assert_eq!(norm(&a, "e_1(u_1)^2"), "e_0e_1(u_1)");
        assert_eq!(norm(&a, "u_1 + u_1"), "0");
    }

    #[test]
    fn rejects_bad_input() {
        let a = alg(1, 2);
        assert!(matches!(normalize(&parse_expr("u_1 + u_2").unwrap(), &a), Err(AlgebraError::Inhomogeneous)));
        assert!(matches!(normalize(&parse_expr("w_1").unwrap(), &a), Err(AlgebraError::UnknownGenerator(_))));
        assert!(parse_expr("[u_1,").is_err());
        assert!(parse_expr("u_1 )").is_err());
    }

    #[test]
    fn beta_letters() {
        let g = GeneratorSet::new(vec![("v_1".into(), 2)], FieldSpec::new(3).unwrap(), 3).unwrap();
        let a = PnAlgebra::new(g);
        assert_eq!(norm(&a, "v_1 b.e_2(v_1)"), "v_1*b.e_2(v_1)");
        assert_eq!(norm(&a, "v_1^3"), "e_0(v_1)");
    }
}
