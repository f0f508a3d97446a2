//! Symbolic expressions for matrix cells and multipliers.
//!
//! Gate transformations may describe cell values as formulas instead of (or in
//! addition to) literal real/imaginary parts: `1/sqrt(2)`, `cos(θ)`,
//! `e^(2πiθ)`. This module parses that small formula language into an [`Expr`]
//! tree, evaluates trees to complex numbers under a set of parameter bindings,
//! and prints trees back to canonical text.
//!
//! The grammar, loosest to tightest binding:
//!
//! ```text
//! expr  := term  { ('+' | '-') term }
//! term  := unary { ('*' | '/') unary | unary }     (adjacency multiplies)
//! unary := '-' unary | power
//! power := atom [ '^' unary ]                       (right-associative)
//! atom  := number | name | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names resolve to the constants `pi`, `e`, `i`, the functions `sqrt`, `cos`,
//! `sin`, `exp`, or otherwise to named parameters. The Unicode spellings `π`
//! and `θ` (and their numeric character references, e.g. `&#960;`) are folded
//! to `pi` and `theta` before parsing, so the HTML-flavoured forms found in
//! gate documents evaluate directly.

use num_complex::Complex64;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

/// Built-in constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    /// `pi` / `π`
    Pi,
    /// Euler's number; also the base of `e^x` notation.
    E,
    /// The imaginary unit.
    I,
}

/// Binary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Built-in functions of one argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Cos,
    Sin,
    Exp,
}

/// A parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Constant(Constant),
    Parameter(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Errors from parsing or evaluating an expression.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExprError {
    /// The text does not conform to the grammar.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    /// A name was applied like a function but is not one of the built-ins.
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    /// Evaluation met a parameter with no binding.
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    /// Evaluation hit an undefined operation (currently: division by zero).
    #[error("domain error: {0}")]
    Domain(String),
}

impl Expr {
    /// The set of parameter names the expression refers to.
    pub fn free_parameters(&self) -> BTreeSet<String> {
        let mut names = BTreeSet::new();
        self.collect_parameters(&mut names);
        names
    }

    fn collect_parameters(&self, names: &mut BTreeSet<String>) {
        match self {
            Expr::Number(_) | Expr::Constant(_) => {}
            Expr::Parameter(name) => {
                names.insert(name.clone());
            }
            Expr::Neg(inner) | Expr::Call(_, inner) => inner.collect_parameters(names),
            Expr::Binary(_, lhs, rhs) => {
                lhs.collect_parameters(names);
                rhs.collect_parameters(names);
            }
        }
    }
}

/// Replaces XML/HTML character references (`&#960;`, `&#x3C0;`, `&amp;`, …)
/// with the characters they denote. Unrecognized references are left as-is.
///
/// Expression text lifted out of an XML document has usually been decoded by
/// the XML parser already; running the decoder again is harmless, and it lets
/// raw figure text be fed to [`parse_expr`] directly.
pub fn decode_entities(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        let tail = &rest[amp..];
        match tail.find(';') {
            Some(semi) => {
                let body = &tail[1..semi];
                match decode_entity(body) {
                    Some(ch) => out.push(ch),
                    None => out.push_str(&tail[..=semi]),
                }
                rest = &tail[semi + 1..];
            }
            None => {
                out.push_str(tail);
                return out;
            }
        }
    }
    out.push_str(rest);
    out
}

fn decode_entity(body: &str) -> Option<char> {
    if let Some(num) = body.strip_prefix("#x").or_else(|| body.strip_prefix("#X")) {
        return u32::from_str_radix(num, 16).ok().and_then(char::from_u32);
    }
    if let Some(num) = body.strip_prefix('#') {
        return num.parse::<u32>().ok().and_then(char::from_u32);
    }
    match body {
        "amp" => Some('&'),
        "lt" => Some('<'),
        "gt" => Some('>'),
        "quot" => Some('"'),
        "apos" => Some('\''),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(v) => write!(f, "{v}"),
            Token::Name(n) => write!(f, "{n}"),
            Token::Plus => f.write_str("+"),
            Token::Minus => f.write_str("-"),
            Token::Star => f.write_str("*"),
            Token::Slash => f.write_str("/"),
            Token::Caret => f.write_str("^"),
            Token::Open => f.write_str("("),
            Token::Close => f.write_str(")"),
        }
    }
}

fn syntax_error(offset: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        offset,
        message: message.into(),
    }
}

/// Maps the Unicode spellings used in HTML-flavoured expressions to the
/// canonical ASCII names.
fn fold_symbol(ch: char) -> Option<&'static str> {
    match ch {
        'π' => Some("pi"),
        'θ' => Some("theta"),
        _ => None,
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, ch)) = chars.peek() {
        match ch {
            _ if ch.is_whitespace() => {
                chars.next();
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                let token = match ch {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::Open,
                    _ => Token::Close,
                };
                tokens.push((at, token));
            }
            '0'..='9' => {
                let mut end = at;
                let mut saw_dot = false;
                while let Some(&(pos, c)) = chars.peek() {
                    if c.is_ascii_digit() || (c == '.' && !saw_dot) {
                        saw_dot |= c == '.';
                        end = pos + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                // Exponent suffix, only when unambiguously numeric ("2e3",
                // "1e-9"); a bare trailing "e" stays a separate name token so
                // "2e" multiplies by Euler's number.
                if let Some(&(pos, c)) = chars.peek() {
                    if c == 'e' || c == 'E' {
                        let tail = &text[pos + 1..];
                        let digits = tail.strip_prefix(['+', '-']).unwrap_or(tail);
                        if digits.starts_with(|d: char| d.is_ascii_digit()) {
                            chars.next(); // e
                            if tail.starts_with(['+', '-']) {
                                chars.next();
                            }
                            while let Some(&(p, d)) = chars.peek() {
                                if d.is_ascii_digit() {
                                    end = p + 1;
                                    chars.next();
                                } else {
                                    break;
                                }
                            }
                        }
                    }
                }
                let literal = &text[at..end];
                let value: f64 = literal
                    .parse()
                    .map_err(|_| syntax_error(at, format!("bad number `{literal}`")))?;
                tokens.push((at, Token::Number(value)));
            }
            _ if ch.is_ascii_alphabetic() || ch == '_' => {
                let mut end = at;
                while let Some(&(pos, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = pos + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((at, Token::Name(text[at..end].to_string())));
            }
            _ => match fold_symbol(ch) {
                // Each symbolic letter is its own token, so `2πiθ` reads as a
                // product of four factors.
                Some(name) => {
                    chars.next();
                    tokens.push((at, Token::Name(name.to_string())));
                }
                None => return Err(syntax_error(at, format!("unexpected character `{ch}`"))),
            },
        }
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(at, _)| *at)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        token
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        match self.bump() {
            Some(Token::Close) => Ok(()),
            _ => Err(syntax_error(self.offset(), "expected `)`")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Token::Plus) => BinOp::Add,
                Some(Token::Minus) => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Token::Star) => Some(BinOp::Mul),
                Some(Token::Slash) => Some(BinOp::Div),
                // Adjacent factors multiply: `2πiθ`, `i sin(θ)`.
                Some(Token::Number(_)) | Some(Token::Name(_)) | Some(Token::Open) => None,
                _ => break,
            };
            if op.is_some() {
                self.bump();
            }
            let rhs = self.unary()?;
            lhs = Expr::Binary(op.unwrap_or(BinOp::Mul), Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::Binary(
                BinOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Number(value)) => Ok(Expr::Number(value)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.expect_close()?;
                Ok(inner)
            }
            Some(Token::Name(name)) => {
                if matches!(self.peek(), Some(Token::Open)) {
                    let func = match name.as_str() {
                        "sqrt" => Func::Sqrt,
                        "cos" => Func::Cos,
                        "sin" => Func::Sin,
                        "exp" => Func::Exp,
                        _ => return Err(ExprError::UnknownFunction(name)),
                    };
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_close()?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                Ok(match name.as_str() {
                    "pi" => Expr::Constant(Constant::Pi),
                    "e" => Expr::Constant(Constant::E),
                    "i" => Expr::Constant(Constant::I),
                    _ => Expr::Parameter(name),
                })
            }
            Some(token) => Err(syntax_error(at, format!("unexpected `{token}`"))),
            None => Err(syntax_error(at, "unexpected end of expression")),
        }
    }
}

/// Parses expression text (character references allowed) into an [`Expr`].
pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let decoded = decode_entities(text);
    let tokens = tokenize(&decoded)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        len: decoded.len(),
    };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(syntax_error(parser.offset(), "trailing input"));
    }
    Ok(expr)
}

/// Evaluates an expression to a complex number. `bindings` supplies real
/// values for parameter names.
pub fn eval(expr: &Expr, bindings: &HashMap<String, f64>) -> Result<Complex64, ExprError> {
    match expr {
        Expr::Number(value) => Ok(Complex64::new(*value, 0.0)),
        Expr::Constant(Constant::Pi) => Ok(Complex64::new(std::f64::consts::PI, 0.0)),
        Expr::Constant(Constant::E) => Ok(Complex64::new(std::f64::consts::E, 0.0)),
        Expr::Constant(Constant::I) => Ok(Complex64::new(0.0, 1.0)),
        Expr::Parameter(name) => bindings
            .get(name)
            .map(|&v| Complex64::new(v, 0.0))
            .ok_or_else(|| ExprError::UnboundParameter(name.clone())),
        Expr::Neg(inner) => Ok(-eval(inner, bindings)?),
        Expr::Binary(op, lhs, rhs) => {
            let a = eval(lhs, bindings)?;
            let b = eval(rhs, bindings)?;
            match op {
                BinOp::Add => Ok(a + b),
                BinOp::Sub => Ok(a - b),
                BinOp::Mul => Ok(a * b),
                BinOp::Div => {
                    if b == Complex64::new(0.0, 0.0) {
                        return Err(ExprError::Domain("division by zero".into()));
                    }
                    Ok(a / b)
                }
                // `e^X` means the complex exponential; other bases take the
                // principal branch of a^b.
                BinOp::Pow => {
                    if matches!(**lhs, Expr::Constant(Constant::E)) {
                        Ok(b.exp())
                    } else {
                        Ok(a.powc(b))
                    }
                }
            }
        }
        Expr::Call(func, arg) => {
            let z = eval(arg, bindings)?;
            Ok(match func {
                Func::Sqrt => z.sqrt(),
                Func::Cos => z.cos(),
                Func::Sin => z.sin(),
                Func::Exp => z.exp(),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Binary(BinOp::Pow, ..) => 4,
            Expr::Number(_) | Expr::Constant(_) | Expr::Parameter(_) | Expr::Call(..) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            f.write_str("(")?;
            self.fmt_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Number(value) => write!(f, "{value}"),
            Expr::Constant(Constant::Pi) => f.write_str("pi"),
            Expr::Constant(Constant::E) => f.write_str("e"),
            Expr::Constant(Constant::I) => f.write_str("i"),
            Expr::Parameter(name) => f.write_str(name),
            Expr::Neg(inner) => {
                f.write_str("-")?;
                inner.fmt_prec(f, prec)
            }
            Expr::Binary(op, lhs, rhs) => {
                let symbol = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                // `^` groups to the right, the rest to the left; the other
                // side gets one extra level so reparsing rebuilds this shape.
                let (left_min, right_min) = match op {
                    BinOp::Pow => (prec + 1, 3),
                    _ => (prec, prec + 1),
                };
                lhs.fmt_prec(f, left_min)?;
                f.write_str(symbol)?;
                rhs.fmt_prec(f, right_min)
            }
            Expr::Call(func, arg) => {
                let name = match func {
                    Func::Sqrt => "sqrt",
                    Func::Cos => "cos",
                    Func::Sin => "sin",
                    Func::Exp => "exp",
                };
                f.write_str(name)?;
                f.write_str("(")?;
                arg.fmt_prec(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(text: &str) -> Complex64 {
        eval(&parse_expr(text).unwrap(), &HashMap::new()).unwrap()
    }

    fn ev_theta(text: &str, theta: f64) -> Complex64 {
        let mut bindings = HashMap::new();
        bindings.insert("theta".to_string(), theta);
        eval(&parse_expr(text).unwrap(), &bindings).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-12
    }

    #[test]
    // 0.707106781 is the literal 9-digit decimal documents carry for 1/√2;
    // the parser must preserve it bit-for-bit, not canonicalize it.
    #[allow(clippy::approx_constant)]
    fn numeric_literals_evaluate_exactly() {
        assert_eq!(ev("0.707106781"), Complex64::new(0.707106781, 0.0));
        assert_eq!(ev("2"), Complex64::new(2.0, 0.0));
        assert_eq!(ev("1e-9"), Complex64::new(1e-9, 0.0));
        assert_eq!(ev("2.5e3"), Complex64::new(2500.0, 0.0));
    }

    #[test]
    fn exponent_suffix_requires_digits() {
        // "2e" is 2·e, not a truncated literal.
        assert!(close(ev("2e"), Complex64::new(2.0 * std::f64::consts::E, 0.0)));
    }

    #[test]
    fn one_over_sqrt_two() {
        assert!(close(
            ev("1/sqrt(2)"),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
        ));
    }

    #[test]
    fn phase_exponential_html_form() {
        // The HTML-flavoured SHIFT cell with numeric character references.
        let theta = 0.3;
        let expected = Complex64::new(0.0, 2.0 * std::f64::consts::PI * theta).exp();
        assert!(close(ev_theta("e^(2&#960;i&#952;)", theta), expected));
        assert!(close(ev_theta("e^(2πiθ)", theta), expected));
        assert!(close(ev_theta("e^(2*pi*i*theta)", theta), expected));
    }

    #[test]
    fn adjacency_multiplies() {
        assert!(close(ev_theta("i sin(θ)", 0.25), Complex64::new(0.0, 0.25f64.sin())));
        assert!(close(ev("2pi"), Complex64::new(2.0 * std::f64::consts::PI, 0.0)));
    }

    #[test]
    fn precedence_and_associativity() {
        assert!(close(ev("2+3*4"), Complex64::new(14.0, 0.0)));
        assert!(close(ev("2^3^2"), Complex64::new(512.0, 0.0)));
        assert!(close(ev("-2^2"), Complex64::new(-4.0, 0.0)));
        assert!(close(ev("2^-1"), Complex64::new(0.5, 0.0)));
        assert!(close(ev("1-2-3"), Complex64::new(-4.0, 0.0)));
        assert!(close(ev("12/3/2"), Complex64::new(2.0, 0.0)));
    }

    #[test]
    fn trig_identity_on_grid() {
        for k in 0..=100 {
            let theta = -2.0 * std::f64::consts::PI + 4.0 * std::f64::consts::PI * k as f64 / 100.0;
            let c = ev_theta("cos(theta)", theta);
            let s = ev_theta("sin(theta)", theta);
            let one = c * c + s * s;
            assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn euler_identity() {
        assert!(close(ev("e^(i*pi)"), Complex64::new(-1.0, 0.0)));
        assert!(close(ev("exp(i pi/2)"), Complex64::new(0.0, 1.0)));
    }

    #[test]
    fn division_by_zero_is_domain_error() {
        let expr = parse_expr("1/0").unwrap();
        assert!(matches!(
            eval(&expr, &HashMap::new()),
            Err(ExprError::Domain(_))
        ));
    }

    #[test]
    fn unbound_parameter_is_reported() {
        let expr = parse_expr("cos(theta)").unwrap();
        assert_eq!(
            eval(&expr, &HashMap::new()),
            Err(ExprError::UnboundParameter("theta".to_string()))
        );
    }

    #[test]
    fn unknown_function_is_reported() {
        assert_eq!(
            parse_expr("tan(1)"),
            Err(ExprError::UnknownFunction("tan".to_string()))
        );
    }

    #[test]
    fn syntax_errors_are_reported() {
        assert!(matches!(parse_expr("1+"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("(1"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("e^(2πiθ"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr(""), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("1 ? 2"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn entity_decoding() {
        assert_eq!(decode_entities("e^(2&#960;i&#952;)"), "e^(2πiθ)");
        assert_eq!(decode_entities("&#x3C0;&amp;&unknown;"), "π&&unknown;");
        assert_eq!(decode_entities("plain"), "plain");
    }

    #[test]
    fn display_round_trips_sample_forms() {
        for text in [
            "1/sqrt(2)",
            "e^(2πiθ)",
            "cos(θ)",
            "i sin(θ)",
            "-(1+2)*3",
            "2^-x^2",
            "a-(b+c)",
        ] {
            let parsed = parse_expr(text).unwrap();
            let printed = parsed.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), parsed, "via `{printed}`");
        }
    }

    // Random expression trees print to text that reparses to the same tree.
    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..1000).prop_map(|n| Expr::Number(n as f64 / 8.0)),
            Just(Expr::Constant(Constant::Pi)),
            Just(Expr::Constant(Constant::E)),
            Just(Expr::Constant(Constant::I)),
            "[a-z][a-z0-9_]{0,5}".prop_map(|mut s: String| {
                // Avoid colliding with constants/functions.
                if matches!(s.as_str(), "pi" | "e" | "i" | "sqrt" | "cos" | "sin" | "exp") {
                    s.push('_');
                }
                Expr::Parameter(s)
            }),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone(), any::<u8>()).prop_map(|(a, b, op)| {
                    let op = match op % 5 {
                        0 => BinOp::Add,
                        1 => BinOp::Sub,
                        2 => BinOp::Mul,
                        3 => BinOp::Div,
                        _ => BinOp::Pow,
                    };
                    Expr::Binary(op, Box::new(a), Box::new(b))
                }),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner, any::<u8>()).prop_map(|(a, f)| {
                    let f = match f % 4 {
                        0 => Func::Sqrt,
                        1 => Func::Cos,
                        2 => Func::Sin,
                        _ => Func::Exp,
                    };
                    Expr::Call(f, Box::new(a))
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_is_identity(expr in arb_expr()) {
            let printed = expr.to_string();
            let reparsed = parse_expr(&printed).unwrap();
            prop_assert_eq!(reparsed, expr);
        }
    }
}
