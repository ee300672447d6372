//! Relational algebra expressions over an input symbol `S`.
//!
//! The expression language has the input symbol, named constant sets, union,
//! intersection, difference, cartesian product, and projection, with the
//! usual arity discipline. Concrete syntax uses `|`, `&`, `\`, `x` and
//! `proj[i,j,...](e)`; see the parser grammar below.
//!
//! ```text
//! expr   := union
//! union  := diff ( "|" diff )*
//! diff   := inter ( "\" inter )*
//! inter  := prod ( "&" prod )*
//! prod   := atom ( "x" atom )*
//! atom   := "S" | NAME | "proj" "[" INDEX ("," INDEX)* "]" "(" expr ")"
//!         | "(" expr ")"
//! ```
//!
//! Projection indices are 1-based, within the child arity, and pairwise
//! distinct.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::AlgebraError;
use crate::set::{SemiAlgebraicSet, SetAlgebra};

#[derive(Debug, Clone, PartialEq)]
pub enum Rae {
    /// The input symbol `S`, standing for a set of the given arity.
    Input { arity: usize },
    /// A named constant semi-algebraic set.
    Constant {
        name: String,
        set: Arc<SemiAlgebraicSet>,
    },
    Union(Box<Rae>, Box<Rae>),
    Intersection(Box<Rae>, Box<Rae>),
    Difference(Box<Rae>, Box<Rae>),
    Product(Box<Rae>, Box<Rae>),
    Projection { indices: Vec<usize>, child: Box<Rae> },
}

#[derive(Debug, Error, PartialEq)]
pub enum RaeError {
    #[error("arity mismatch at `{op}`: left operand has arity {left}, right has {right}")]
    ArityMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("projection index {index} out of range 1..={arity}")]
    ProjectionIndex { index: usize, arity: usize },
    #[error("projection indices must be pairwise distinct")]
    DuplicateProjectionIndex,
    #[error("expression contains a projection node")]
    HasProjection,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, PartialEq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Fragment flags computed by a tree walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub cartesian_product_free: bool,
    pub positive_one_pass: bool,
    pub s_occurrences: usize,
}

impl Rae {
    pub fn union(l: Rae, r: Rae) -> Rae {
        Rae::Union(Box::new(l), Box::new(r))
    }
    pub fn intersection(l: Rae, r: Rae) -> Rae {
        Rae::Intersection(Box::new(l), Box::new(r))
    }
    pub fn difference(l: Rae, r: Rae) -> Rae {
        Rae::Difference(Box::new(l), Box::new(r))
    }
    pub fn product(l: Rae, r: Rae) -> Rae {
        Rae::Product(Box::new(l), Box::new(r))
    }
    pub fn projection(indices: Vec<usize>, child: Rae) -> Rae {
        Rae::Projection {
            indices,
            child: Box::new(child),
        }
    }
    pub fn constant(name: impl Into<String>, set: SemiAlgebraicSet) -> Rae {
        Rae::Constant {
            name: name.into(),
            set: Arc::new(set),
        }
    }

    /// Arity, validating the arity discipline of the whole tree.
    pub fn arity(&self) -> Result<usize, RaeError> {
        match self {
            Rae::Input { arity } => Ok(*arity),
            Rae::Constant { set, .. } => Ok(set.num_vars()),
            Rae::Union(l, r) | Rae::Intersection(l, r) | Rae::Difference(l, r) => {
                let (la, ra) = (l.arity()?, r.arity()?);
                if la != ra {
                    let op = match self {
                        Rae::Union(..) => "|",
                        Rae::Intersection(..) => "&",
                        _ => "\\",
                    };
                    return Err(RaeError::ArityMismatch {
                        op,
                        left: la,
                        right: ra,
                    });
                }
                Ok(la)
            }
            Rae::Product(l, r) => Ok(l.arity()? + r.arity()?),
            Rae::Projection { indices, child } => {
                let ca = child.arity()?;
                for &i in indices {
                    if i == 0 || i > ca {
                        return Err(RaeError::ProjectionIndex {
                            index: i,
                            arity: ca,
                        });
                    }
                }
                let mut sorted = indices.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != indices.len() {
                    return Err(RaeError::DuplicateProjectionIndex);
                }
                Ok(indices.len())
            }
        }
    }

    pub fn classify(&self) -> Classification {
        fn walk(e: &Rae, has_product: &mut bool, has_diff: &mut bool, s: &mut usize) {
            match e {
                Rae::Input { .. } => *s += 1,
                Rae::Constant { .. } => {}
                Rae::Union(l, r) | Rae::Intersection(l, r) => {
                    walk(l, has_product, has_diff, s);
                    walk(r, has_product, has_diff, s);
                }
                Rae::Difference(l, r) => {
                    *has_diff = true;
                    walk(l, has_product, has_diff, s);
                    walk(r, has_product, has_diff, s);
                }
                Rae::Product(l, r) => {
                    *has_product = true;
                    walk(l, has_product, has_diff, s);
                    walk(r, has_product, has_diff, s);
                }
                Rae::Projection { child, .. } => walk(child, has_product, has_diff, s),
            }
        }
        let (mut has_product, mut has_diff, mut s) = (false, false, 0usize);
        walk(self, &mut has_product, &mut has_diff, &mut s);
        Classification {
            cartesian_product_free: !has_product,
            positive_one_pass: !has_diff && s == 1,
            s_occurrences: s,
        }
    }

    pub fn contains_projection(&self) -> bool {
        match self {
            Rae::Input { .. } | Rae::Constant { .. } => false,
            Rae::Union(l, r)
            | Rae::Intersection(l, r)
            | Rae::Difference(l, r)
            | Rae::Product(l, r) => l.contains_projection() || r.contains_projection(),
            Rae::Projection { .. } => true,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Rae::Union(..) => 1,
            Rae::Difference(..) => 2,
            Rae::Intersection(..) => 3,
            Rae::Product(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let prec = self.precedence();
        let paren = prec < parent;
        if paren {
            write!(f, "(")?;
        }
        match self {
            Rae::Input { .. } => write!(f, "S")?,
            Rae::Constant { name, .. } => write!(f, "{name}")?,
            Rae::Union(l, r) => {
                l.fmt_prec(f, prec)?;
                write!(f, " | ")?;
                r.fmt_prec(f, prec + 1)?;
            }
            Rae::Difference(l, r) => {
                l.fmt_prec(f, prec)?;
                write!(f, " \\ ")?;
                r.fmt_prec(f, prec + 1)?;
            }
            Rae::Intersection(l, r) => {
                l.fmt_prec(f, prec)?;
                write!(f, " & ")?;
                r.fmt_prec(f, prec + 1)?;
            }
            Rae::Product(l, r) => {
                l.fmt_prec(f, prec)?;
                write!(f, " x ")?;
                r.fmt_prec(f, prec + 1)?;
            }
            Rae::Projection { indices, child } => {
                let idx: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
                write!(f, "proj[{}](", idx.join(","))?;
                child.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if paren {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Rae {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Named constant sets available to the parser.
#[derive(Debug, Clone, Default)]
pub struct ConstEnv {
    map: std::collections::BTreeMap<String, Arc<SemiAlgebraicSet>>,
}

impl ConstEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, set: SemiAlgebraicSet) {
        self.map.insert(name.into(), Arc::new(set));
    }

    pub fn get(&self, name: &str) -> Option<&Arc<SemiAlgebraicSet>> {
        self.map.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(|s| s.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Input,
    Ident(String),
    Proj,
    Pipe,
    Amp,
    Backslash,
    Times,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Number(usize),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '|' => {
                tokens.push((Token::Pipe, i));
                i += 1;
            }
            '&' => {
                tokens.push((Token::Amp, i));
                i += 1;
            }
            '\\' => {
                tokens.push((Token::Backslash, i));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '[' => {
                tokens.push((Token::LBracket, i));
                i += 1;
            }
            ']' => {
                tokens.push((Token::RBracket, i));
                i += 1;
            }
            ',' => {
                tokens.push((Token::Comma, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: usize = text[start..i].parse().map_err(|_| ParseError {
                    pos: start,
                    msg: "index too large".to_string(),
                })?;
                tokens.push((Token::Number(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "S" => Token::Input,
                    "x" => Token::Times,
                    "proj" => Token::Proj,
                    _ => Token::Ident(word.to_string()),
                };
                tokens.push((tok, start));
            }
            _ => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    env: &'a ConstEnv,
    input_arity: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn check_arity(&self, e: &Rae, at: usize) -> Result<(), ParseError> {
        e.arity().map(|_| ()).map_err(|err| ParseError {
            pos: at,
            msg: err.to_string(),
        })
    }

    fn parse_union(&mut self) -> Result<Rae, ParseError> {
        let mut e = self.parse_diff()?;
        while self.peek() == Some(&Token::Pipe) {
            let at = self.here();
            self.bump();
            let r = self.parse_diff()?;
            e = Rae::union(e, r);
            self.check_arity(&e, at)?;
        }
        Ok(e)
    }

    fn parse_diff(&mut self) -> Result<Rae, ParseError> {
        let mut e = self.parse_inter()?;
        while self.peek() == Some(&Token::Backslash) {
            let at = self.here();
            self.bump();
            let r = self.parse_inter()?;
            e = Rae::difference(e, r);
            self.check_arity(&e, at)?;
        }
        Ok(e)
    }

    fn parse_inter(&mut self) -> Result<Rae, ParseError> {
        let mut e = self.parse_prod()?;
        while self.peek() == Some(&Token::Amp) {
            let at = self.here();
            self.bump();
            let r = self.parse_prod()?;
            e = Rae::intersection(e, r);
            self.check_arity(&e, at)?;
        }
        Ok(e)
    }

    fn parse_prod(&mut self) -> Result<Rae, ParseError> {
        let mut e = self.parse_atom()?;
        while self.peek() == Some(&Token::Times) {
            self.bump();
            let r = self.parse_atom()?;
            e = Rae::product(e, r);
        }
        Ok(e)
    }

    fn parse_atom(&mut self) -> Result<Rae, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Input) => Ok(Rae::Input {
                arity: self.input_arity,
            }),
            Some(Token::Ident(name)) => match self.env.get(&name) {
                Some(set) => Ok(Rae::Constant {
                    name,
                    set: set.clone(),
                }),
                None => Err(ParseError {
                    pos,
                    msg: format!("unknown constant name `{name}`"),
                }),
            },
            Some(Token::Proj) => {
                self.expect(Token::LBracket, "`[` after proj")?;
                let mut indices = Vec::new();
                loop {
                    let ipos = self.here();
                    match self.bump() {
                        Some(Token::Number(n)) => indices.push(n),
                        _ => {
                            return Err(ParseError {
                                pos: ipos,
                                msg: "expected projection index".to_string(),
                            })
                        }
                    }
                    match self.bump() {
                        Some(Token::Comma) => continue,
                        Some(Token::RBracket) => break,
                        _ => {
                            return Err(ParseError {
                                pos: self.here(),
                                msg: "expected `,` or `]`".to_string(),
                            })
                        }
                    }
                }
                self.expect(Token::LParen, "`(` after projection indices")?;
                let child = self.parse_union()?;
                self.expect(Token::RParen, "closing `)`")?;
                let e = Rae::projection(indices, child);
                self.check_arity(&e, pos)?;
                Ok(e)
            }
            Some(Token::LParen) => {
                let e = self.parse_union()?;
                self.expect(Token::RParen, "closing `)`")?;
                Ok(e)
            }
            _ => Err(ParseError {
                pos,
                msg: "expected expression".to_string(),
            }),
        }
    }
}

/// Parses one expression; constants are resolved against `env`, `S` has the
/// given arity. Arity errors carry the byte position of the offending
/// operator.
pub fn parse_rae(text: &str, env: &ConstEnv, input_arity: usize) -> Result<Rae, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        env,
        input_arity,
        end: text.len(),
    };
    let e = p.parse_union()?;
    if p.pos != p.tokens.len() {
        return Err(ParseError {
            pos: p.here(),
            msg: "trailing input after expression".to_string(),
        });
    }
    Ok(e)
}

/// Exact disjunctive-form evaluation; defined only for projection-free
/// expressions.
pub fn eval_closed(
    e: &Rae,
    s: &SemiAlgebraicSet,
    algebra: &SetAlgebra,
) -> Result<SemiAlgebraicSet, RaeError> {
    match e {
        Rae::Input { arity } => {
            if s.num_vars() != *arity {
                return Err(RaeError::Algebra(AlgebraError::DimensionMismatch {
                    expected: *arity,
                    got: s.num_vars(),
                }));
            }
            Ok(s.clone())
        }
        Rae::Constant { set, .. } => Ok((**set).clone()),
        Rae::Union(l, r) => {
            Ok(algebra.union(&eval_closed(l, s, algebra)?, &eval_closed(r, s, algebra)?)?)
        }
        Rae::Intersection(l, r) => Ok(algebra.intersect(
            &eval_closed(l, s, algebra)?,
            &eval_closed(r, s, algebra)?,
        )?),
        Rae::Difference(l, r) => Ok(algebra.difference(
            &eval_closed(l, s, algebra)?,
            &eval_closed(r, s, algebra)?,
        )?),
        Rae::Product(l, r) => Ok(algebra.product(
            &eval_closed(l, s, algebra)?,
            &eval_closed(r, s, algebra)?,
        )?),
        Rae::Projection { .. } => Err(RaeError::HasProjection),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::rat::{rat, rint};
    use crate::set::{unit_ball, unit_sphere, BasicSet};

    fn env3() -> ConstEnv {
        let mut env = ConstEnv::new();
        for (name, var) in [("G1", 0), ("G2", 1), ("G3", 2)] {
            let set = SemiAlgebraicSet::from_disjuncts(
                3,
                vec![BasicSet::new(3, vec![], vec![Polynomial::var(3, var)]).unwrap()],
            )
            .unwrap();
            env.insert(name, set);
        }
        env.insert("R2", SemiAlgebraicSet::full(2));
        let mut l5 = ConstEnv::new();
        let _ = l5;
        env.insert("L1", SemiAlgebraicSet::empty(5));
        env.insert("L2", SemiAlgebraicSet::full(5));
        env
    }

    #[test]
    fn parse_section_example() {
        let env = env3();
        let e = parse_rae(
            "proj[1,2]((S & G1) | (G2 \\ S)) \\ proj[1,3](S | G3)",
            &env,
            3,
        )
        .unwrap();
        assert_eq!(e.arity().unwrap(), 2);
        let c = e.classify();
        assert!(c.cartesian_product_free);
        assert!(!c.positive_one_pass);
        assert_eq!(c.s_occurrences, 3);
    }

    #[test]
    fn parse_input_only() {
        let env = ConstEnv::new();
        let e = parse_rae("S", &env, 3).unwrap();
        assert_eq!(e, Rae::Input { arity: 3 });
    }

    #[test]
    fn projection_index_out_of_range() {
        let env = ConstEnv::new();
        let err = parse_rae("proj[4](S)", &env, 3).unwrap_err();
        assert!(err.msg.contains("out of range"), "{err}");
    }

    #[test]
    fn duplicate_projection_index_rejected() {
        let env = ConstEnv::new();
        assert!(parse_rae("proj[1,1](S)", &env, 3).is_err());
    }

    #[test]
    fn arity_mismatch_names_operator() {
        let env = env3();
        let err = parse_rae("S | R2", &env, 3).unwrap_err();
        assert!(err.msg.contains('|'), "{err}");
    }

    #[test]
    fn unknown_constant() {
        let env = ConstEnv::new();
        let err = parse_rae("S | NOPE", &env, 3).unwrap_err();
        assert!(err.msg.contains("NOPE"));
    }

    #[test]
    fn one_pass_example_classifies() {
        let env = env3();
        let e = parse_rae("proj[3,5](L1 | (L2 & (S x R2)))", &env, 3).unwrap();
        let c = e.classify();
        assert!(c.positive_one_pass);
        assert!(!c.cartesian_product_free);
        assert_eq!(e.arity().unwrap(), 2);
    }

    #[test]
    fn constant_only_has_no_s() {
        let env = env3();
        let e = parse_rae("G1 | G2", &env, 3).unwrap();
        assert_eq!(e.classify().s_occurrences, 0);
    }

    #[test]
    fn display_round_trip() {
        let env = env3();
        for text in [
            "proj[1,2]((S & G1) | (G2 \\ S)) \\ proj[1,3](S | G3)",
            "S | G1 | G2",
            "S \\ (G1 \\ G2)",
            "proj[3,5](L1 | (L2 & (S x R2)))",
            "(S | G1) & G2 \\ G3",
        ] {
            let e = parse_rae(text, &env, 3).unwrap();
            let printed = e.to_string();
            let reparsed = parse_rae(&printed, &env, 3).unwrap();
            assert_eq!(e, reparsed, "round trip failed for `{text}` -> `{printed}`");
        }
    }

    #[test]
    fn eval_closed_basics() {
        let env = env3();
        let algebra = SetAlgebra::default();
        let sphere = unit_sphere(3);
        let e = parse_rae("S", &env, 3).unwrap();
        assert_eq!(eval_closed(&e, &sphere, &algebra).unwrap(), sphere);

        let e = parse_rae("S \\ S", &env, 3).unwrap();
        let d = eval_closed(&e, &sphere, &algebra).unwrap();
        for k in 0..20i64 {
            let p = vec![rat(k, 7), rat(k - 10, 9), rat(k % 5, 3)];
            assert!(!d.contains(&p).unwrap());
        }

        let e = parse_rae("proj[1,2](S)", &env, 3).unwrap();
        assert_eq!(
            eval_closed(&e, &sphere, &algebra),
            Err(RaeError::HasProjection)
        );
    }

    #[test]
    fn eval_closed_matches_pointwise_combination() {
        let env = env3();
        let algebra = SetAlgebra::default();
        let s = unit_ball(3);
        let e = parse_rae("(G1 \\ S) | S", &env, 3).unwrap();
        let v = eval_closed(&e, &s, &algebra).unwrap();
        let g1 = env.get("G1").unwrap();
        for k in 0..200i64 {
            let p = vec![rat(k % 17 - 8, 5), rat(k % 13 - 6, 4), rat(k % 11 - 5, 3)];
            let expected = g1.contains(&p).unwrap() || s.contains(&p).unwrap();
            assert_eq!(v.contains(&p).unwrap(), expected);
        }
    }
}
