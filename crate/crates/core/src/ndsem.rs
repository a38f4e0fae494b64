//! A tiny nondeterministic expression language analyzed by may / must / convex
//! abstract interpretation over a finite abstract domain.
//!
//! Grammar: e ::= int | ident | (e op e) | choice(e, e) | let ident = e in e.
//! Choice is interpreted by the powerspace operation of the selected mode;
//! binary operators are lifted pointwise on generator antichains and then
//! canonicalized, which coincides with the set-image semantics on finite
//! carriers (asserted against the brute-force oracle in tests).

use std::collections::BTreeMap;

use crate::error::Error;
use crate::poset::{Direction, Poset, Subset};
use crate::powerspace::{combine, ConvexElem, Elem, LowerElem, PsKind, UpperElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(i64),
    Var(String),
    BinOp(String, Box<Expr>, Box<Expr>),
    Choice(Box<Expr>, Box<Expr>),
    Let(String, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    May,
    Must,
    Convex,
}

impl Mode {
    pub fn kind(self) -> PsKind {
        match self {
            Mode::May => PsKind::Lower,
            Mode::Must => PsKind::Upper,
            Mode::Convex => PsKind::Convex,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::May => "may",
            Mode::Must => "must",
            Mode::Convex => "convex",
        })
    }
}

/// How integer literals abstract into the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LitAbstraction {
    /// Sign of the literal; the carrier must be Neg/Zero/Pos.
    Signs,
    /// Parity of the literal; the carrier must be Even/Odd.
    Parity,
    /// Explicit map with a default element.
    Table {
        default: usize,
        map: BTreeMap<i64, usize>,
    },
}

/// A finite abstract domain: a poset of abstract values, a literal
/// abstraction, and a jointly monotone table per operator symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractDomain {
    pub name: String,
    pub poset: Poset,
    pub lits: LitAbstraction,
    pub ops: BTreeMap<String, Vec<Vec<usize>>>,
}

impl AbstractDomain {
    pub fn new(
        name: &str,
        poset: Poset,
        lits: LitAbstraction,
        ops: BTreeMap<String, Vec<Vec<usize>>>,
    ) -> Result<Self, Error> {
        let n = poset.len();
        for (sym, table) in &ops {
            let shape_ok = table.len() == n
                && table
                    .iter()
                    .all(|row| row.len() == n && row.iter().all(|&v| v < n));
            if !shape_ok {
                return Err(Error::InvalidInput(format!(
                    "operator `{sym}` table must be n×n over the carrier"
                )));
            }
            for x1 in 0..n {
                for x2 in 0..n {
                    for y1 in 0..n {
                        for y2 in 0..n {
                            if poset.leq(x1, x2)
                                && poset.leq(y1, y2)
                                && !poset.leq(table[x1][y1], table[x2][y2])
                            {
                                return Err(Error::InvalidInput(format!(
                                    "operator `{sym}` table is not jointly monotone"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(AbstractDomain {
            name: name.to_string(),
            poset,
            lits,
            ops,
        })
    }

    pub fn abstract_lit(&self, v: i64) -> usize {
        match &self.lits {
            LitAbstraction::Signs => {
                let label = if v < 0 {
                    "Neg"
                } else if v == 0 {
                    "Zero"
                } else {
                    "Pos"
                };
                self.poset.index_of(label).expect("sign carrier")
            }
            LitAbstraction::Parity => {
                let label = if v.rem_euclid(2) == 0 { "Even" } else { "Odd" };
                self.poset.index_of(label).expect("parity carrier")
            }
            LitAbstraction::Table { default, map } => *map.get(&v).unwrap_or(default),
        }
    }

    /// The built-in sign domain: a 3-antichain. The operator tables are toy
    /// conventions (mixed signs under + collapse to Zero), not soundness
    /// claims; multiplication is exact on signs.
    pub fn sign() -> AbstractDomain {
        let poset = crate::poset::validate_poset(&["Neg", "Zero", "Pos"], &[]).unwrap();
        let (n, z, p) = (0usize, 1usize, 2usize);
        let plus = vec![vec![n, n, z], vec![n, z, p], vec![z, p, p]];
        let times = vec![vec![p, z, n], vec![z, z, z], vec![n, z, p]];
        let mut ops = BTreeMap::new();
        ops.insert("+".to_string(), plus);
        ops.insert("*".to_string(), times);
        AbstractDomain::new("sign", poset, LitAbstraction::Signs, ops).unwrap()
    }

    /// The built-in parity domain: Even/Odd with exact + and *.
    pub fn parity() -> AbstractDomain {
        let poset = crate::poset::validate_poset(&["Even", "Odd"], &[]).unwrap();
        let (e, o) = (0usize, 1usize);
        let plus = vec![vec![e, o], vec![o, e]];
        let times = vec![vec![e, e], vec![e, o]];
        let mut ops = BTreeMap::new();
        ops.insert("+".to_string(), plus);
        ops.insert("*".to_string(), times);
        AbstractDomain::new("parity", poset, LitAbstraction::Parity, ops).unwrap()
    }
}

/// An analysis result: a canonical powerspace element over the domain poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub mode: Mode,
    pub elem: Elem,
}

const OP_CHARS: &str = "+-*/%^&|<>~!?@#";

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Op(String),
    LParen,
    RParen,
    Comma,
    Equals,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c == '(' {
            out.push((start, Token::LParen));
            i += 1;
        } else if c == ')' {
            out.push((start, Token::RParen));
            i += 1;
        } else if c == ',' {
            out.push((start, Token::Comma));
            i += 1;
        } else if c == '=' {
            out.push((start, Token::Equals));
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '-' && operand_position(&out) && next_is_digit(bytes, i + 1))
        {
            let mut j = i + 1;
            while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                j += 1;
            }
            let s = &text[i..j];
            let v = s.parse::<i64>().map_err(|_| Error::SyntaxError {
                pos: start,
                msg: format!("bad integer literal `{s}`"),
            })?;
            out.push((start, Token::Int(v)));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i + 1;
            while j < bytes.len()
                && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
            {
                j += 1;
            }
            out.push((start, Token::Ident(text[i..j].to_string())));
            i = j;
        } else if OP_CHARS.contains(c) {
            let mut j = i + 1;
            while j < bytes.len() && OP_CHARS.contains(bytes[j] as char) {
                j += 1;
            }
            out.push((start, Token::Op(text[i..j].to_string())));
            i = j;
        } else {
            return Err(Error::SyntaxError {
                pos: start,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

fn operand_position(tokens: &[(usize, Token)]) -> bool {
    !matches!(
        tokens.last(),
        Some((_, Token::Int(_) | Token::Ident(_) | Token::RParen))
    )
}

fn next_is_digit(bytes: &[u8], i: usize) -> bool {
    i < bytes.len() && (bytes[i] as char).is_ascii_digit()
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<(), Error> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == *want => Ok(()),
            _ => Err(Error::SyntaxError {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(v)) => Ok(Expr::Lit(v)),
            Some(Token::Ident(id)) if id == "choice" => {
                self.expect(&Token::LParen, "`(` after choice")?;
                let a = self.expr()?;
                self.expect(&Token::Comma, "`,` between choice branches")?;
                let b = self.expr()?;
                self.expect(&Token::RParen, "`)` closing choice")?;
                Ok(Expr::Choice(Box::new(a), Box::new(b)))
            }
            Some(Token::Ident(id)) if id == "let" => {
                let name = match self.bump() {
                    Some(Token::Ident(n)) if n != "let" && n != "in" && n != "choice" => n,
                    _ => {
                        return Err(Error::SyntaxError {
                            pos: self.here(),
                            msg: "expected a binder name".into(),
                        })
                    }
                };
                self.expect(&Token::Equals, "`=` in let")?;
                let bound = self.expr()?;
                match self.bump() {
                    Some(Token::Ident(kw)) if kw == "in" => {}
                    _ => {
                        return Err(Error::SyntaxError {
                            pos: self.here(),
                            msg: "expected `in`".into(),
                        })
                    }
                }
                let body = self.expr()?;
                Ok(Expr::Let(name, Box::new(bound), Box::new(body)))
            }
            Some(Token::Ident(id)) if id == "in" => Err(Error::SyntaxError {
                pos,
                msg: "unexpected keyword `in`".into(),
            }),
            Some(Token::Ident(id)) => Ok(Expr::Var(id)),
            Some(Token::LParen) => {
                let a = self.expr()?;
                let op = match self.bump() {
                    Some(Token::Op(op)) => op,
                    _ => {
                        return Err(Error::SyntaxError {
                            pos: self.here(),
                            msg: "expected an operator".into(),
                        })
                    }
                };
                let b = self.expr()?;
                self.expect(&Token::RParen, "`)` closing the operator expression")?;
                Ok(Expr::BinOp(op, Box::new(a), Box::new(b)))
            }
            _ => Err(Error::SyntaxError {
                pos,
                msg: "expected an expression".into(),
            }),
        }
    }
}

fn check_bound(e: &Expr, env: &mut Vec<String>) -> Result<(), Error> {
    match e {
        Expr::Lit(_) => Ok(()),
        Expr::Var(name) => {
            if env.iter().any(|b| b == name) {
                Ok(())
            } else {
                Err(Error::UnboundVariable(name.clone()))
            }
        }
        Expr::BinOp(_, a, b) | Expr::Choice(a, b) => {
            check_bound(a, env)?;
            check_bound(b, env)
        }
        Expr::Let(name, bound, body) => {
            check_bound(bound, env)?;
            env.push(name.clone());
            let r = check_bound(body, env);
            env.pop();
            r
        }
    }
}

/// Parses a program and checks that every variable is bound before use.
pub fn parse_program(text: &str) -> Result<Expr, Error> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::SyntaxError {
            pos: p.here(),
            msg: "trailing input after the expression".into(),
        });
    }
    check_bound(&e, &mut Vec::new())?;
    Ok(e)
}

/// Pointwise lift of an operator table to powerspace elements: image the
/// generator antichains (maxA×maxA and minA×minA for convex) and
/// canonicalize. Equals the free bilinear extension on finite carriers.
pub fn lift_binop(
    d: &AbstractDomain,
    table: &[Vec<usize>],
    a: &Elem,
    b: &Elem,
) -> Result<Elem, Error> {
    let p = &d.poset;
    let n = p.len();
    let image = |sa: Subset, sb: Subset| {
        let mut out = Subset::empty(n);
        for x in sa.iter() {
            for y in sb.iter() {
                out.insert(table[x][y]);
            }
        }
        out
    };
    match (a, b) {
        (Elem::Lower(ea), Elem::Lower(eb)) => {
            Ok(Elem::Lower(LowerElem::new(p, &image(ea.gen(), eb.gen()))?))
        }
        (Elem::Upper(ea), Elem::Upper(eb)) => {
            Ok(Elem::Upper(UpperElem::new(p, &image(ea.gen(), eb.gen()))?))
        }
        (Elem::Convex(ea), Elem::Convex(eb)) => {
            let max_img = image(ea.max_gen(), eb.max_gen());
            let min_img = image(ea.min_gen(), eb.min_gen());
            // joint monotonicity keeps every min image under some max image,
            // so the pair of extremal antichains is consistent
            let max = p
                .extremal_antichain(&max_img, crate::poset::Extremal::Max)?
                .subset();
            let min = p
                .extremal_antichain(&min_img, crate::poset::Extremal::Min)?
                .subset();
            Ok(Elem::Convex(ConvexElem::new(p, &max.union(&min))?))
        }
        _ => Err(Error::KindMismatch {
            expected: a.kind().algebra(),
            found: b.kind().algebra(),
        }),
    }
}

/// The brute-force set-image oracle for the lift: apply the table to the full
/// denoted sets and canonicalize the image.
pub fn lift_binop_oracle(
    d: &AbstractDomain,
    table: &[Vec<usize>],
    a: &Elem,
    b: &Elem,
) -> Result<Elem, Error> {
    let p = &d.poset;
    let sa = a.denoted(p);
    let sb = b.denoted(p);
    let mut img = Subset::empty(p.len());
    for x in sa.iter() {
        for y in sb.iter() {
            img.insert(table[x][y]);
        }
    }
    match a.kind() {
        PsKind::Lower => Ok(Elem::Lower(LowerElem::new(p, &img)?)),
        PsKind::Upper => Ok(Elem::Upper(UpperElem::new(p, &img)?)),
        PsKind::Convex => {
            // the denoted image need not be convex; take its convex hull
            let hull = p
                .closure(&img, Direction::Down)
                .intersection(&p.closure(&img, Direction::Up));
            Ok(Elem::Convex(ConvexElem::new(p, &hull)?))
        }
    }
}

fn eval(
    e: &Expr,
    d: &AbstractDomain,
    mode: Mode,
    env: &mut Vec<(String, Elem)>,
) -> Result<Elem, Error> {
    match e {
        Expr::Lit(v) => Ok(Elem::unit(mode.kind(), &d.poset, d.abstract_lit(*v))),
        Expr::Var(name) => env
            .iter()
            .rev()
            .find(|(b, _)| b == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::UnboundVariable(name.clone())),
        Expr::Choice(a, b) => {
            let va = eval(a, d, mode, env)?;
            let vb = eval(b, d, mode, env)?;
            combine(&d.poset, &va, &vb)
        }
        Expr::BinOp(op, a, b) => {
            let table = d.ops.get(op).ok_or_else(|| Error::UnknownOp(op.clone()))?;
            let va = eval(a, d, mode, env)?;
            let vb = eval(b, d, mode, env)?;
            lift_binop(d, table, &va, &vb)
        }
        Expr::Let(name, bound, body) => {
            // call-by-value over powerspace elements: the bound nondeterminism
            // is resolved once and the same verdict is reused at every
            // occurrence, never re-split
            let v = eval(bound, d, mode, env)?;
            env.push((name.clone(), v));
            let r = eval(body, d, mode, env);
            env.pop();
            r
        }
    }
}

/// Abstractly interprets a closed expression in the chosen mode.
pub fn analyze(e: &Expr, d: &AbstractDomain, mode: Mode) -> Result<Verdict, Error> {
    check_bound(e, &mut Vec::new())?;
    let elem = eval(e, d, mode, &mut Vec::new())?;
    Ok(Verdict { mode, elem })
}

fn label_list(p: &Poset, s: &Subset) -> String {
    let labels: Vec<&str> = s.iter().map(|i| p.name(i)).collect();
    labels.join(", ")
}

/// Human rendering: may lists the possible abstract values, must the
/// guaranteed lower-bound witnesses, convex both.
pub fn render_verdict(d: &AbstractDomain, v: &Verdict) -> String {
    let p = &d.poset;
    match (&v.mode, &v.elem) {
        (Mode::May, Elem::Lower(e)) => format!("may: {{{}}}", label_list(p, &e.gen())),
        (Mode::Must, Elem::Upper(e)) => {
            let gens = e.gen();
            if gens.len() == 1 {
                format!("must: at least {}", label_list(p, &gens))
            } else {
                format!("must: at least one of {{{}}}", label_list(p, &gens))
            }
        }
        (Mode::Convex, Elem::Convex(e)) => {
            let min = e.min_gen();
            let max = e.max_gen();
            let fmt = |s: &Subset| {
                if s.len() == 1 {
                    label_list(p, s)
                } else {
                    format!("{{{}}}", label_list(p, s))
                }
            };
            format!("between {} and {}", fmt(&min), fmt(&max))
        }
        _ => unreachable!("verdict element kind always matches its mode"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures::*;
    use crate::powerspace::compare;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_program("choice(-1, 2)").unwrap(),
            Expr::Choice(Box::new(Expr::Lit(-1)), Box::new(Expr::Lit(2)))
        );
        let e = parse_program("let x = choice(0,1) in (x + x)").unwrap();
        assert!(matches!(e, Expr::Let(..)));
        assert!(matches!(
            parse_program("(1 +"),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_program("(y + 1)"),
            Err(Error::UnboundVariable(_))
        ));
        assert!(matches!(
            parse_program("1 2"),
            Err(Error::SyntaxError { .. })
        ));
    }

    #[test]
    fn subtraction_of_literals_lexes_both_ways() {
        assert_eq!(
            parse_program("(1 - 2)").unwrap(),
            Expr::BinOp("-".into(), Box::new(Expr::Lit(1)), Box::new(Expr::Lit(2)))
        );
        assert_eq!(
            parse_program("choice(-1, -2)").unwrap(),
            Expr::Choice(Box::new(Expr::Lit(-1)), Box::new(Expr::Lit(-2)))
        );
    }

    #[test]
    fn sign_smoke() {
        let d = AbstractDomain::sign();
        let e = parse_program("choice(-1, 2)").unwrap();

        let may = analyze(&e, &d, Mode::May).unwrap();
        let expect = Elem::new(
            PsKind::Lower,
            &d.poset,
            &subset_of(&d.poset, &["Neg", "Pos"]),
        )
        .unwrap();
        assert_eq!(may.elem, expect);
        assert_eq!(render_verdict(&d, &may), "may: {Neg, Pos}");

        let must = analyze(&e, &d, Mode::Must).unwrap();
        let expect = Elem::new(
            PsKind::Upper,
            &d.poset,
            &subset_of(&d.poset, &["Neg", "Pos"]),
        )
        .unwrap();
        assert_eq!(must.elem, expect);

        // both branches abstract to Pos, so canonicalization merges them
        let e = parse_program("choice(1, 2)").unwrap();
        let must = analyze(&e, &d, Mode::Must).unwrap();
        let expect = Elem::new(PsKind::Upper, &d.poset, &subset_of(&d.poset, &["Pos"])).unwrap();
        assert_eq!(must.elem, expect);
        assert_eq!(render_verdict(&d, &must), "must: at least Pos");
    }

    #[test]
    fn convex_rendering_on_a_chain_domain() {
        let poset = crate::poset::validate_poset(&["0", "1"], &[("0", "1")]).unwrap();
        let mut map = BTreeMap::new();
        map.insert(0, 0);
        map.insert(1, 1);
        let d = AbstractDomain::new(
            "chain",
            poset,
            LitAbstraction::Table { default: 0, map },
            BTreeMap::new(),
        )
        .unwrap();
        let e = parse_program("choice(0, 1)").unwrap();
        let v = analyze(&e, &d, Mode::Convex).unwrap();
        assert_eq!(render_verdict(&d, &v), "between 0 and 1");
    }

    #[test]
    fn unknown_op_is_reported() {
        let d = AbstractDomain::parity();
        let e = parse_program("(1 / 2)").unwrap();
        assert!(matches!(
            analyze(&e, &d, Mode::May),
            Err(Error::UnknownOp(_))
        ));
    }

    #[test]
    fn let_binds_the_verdict_element() {
        // the bound nondeterminism is represented jointly: binding then using
        // the variable is the same as inlining the verdict element
        let d = AbstractDomain::sign();
        let bound = parse_program("let x = choice(1, -1) in (x * x)").unwrap();
        let inline = parse_program("(choice(1, -1) * choice(1, -1))").unwrap();
        for mode in [Mode::May, Mode::Must, Mode::Convex] {
            let v1 = analyze(&bound, &d, mode).unwrap();
            let v2 = analyze(&inline, &d, mode).unwrap();
            assert_eq!(v1.elem, v2.elem);
        }
        // generator lift over {Neg,Pos} × {Neg,Pos} mixes branches,
        // so the may-set of the square is still {Neg, Pos}
        let may = analyze(&bound, &d, Mode::May).unwrap();
        let expect = Elem::new(
            PsKind::Lower,
            &d.poset,
            &subset_of(&d.poset, &["Neg", "Pos"]),
        )
        .unwrap();
        assert_eq!(may.elem, expect);
        // and binding alone does not change a verdict
        let trivial = parse_program("let x = choice(1, -1) in x").unwrap();
        let plain = parse_program("choice(1, -1)").unwrap();
        let v1 = analyze(&trivial, &d, Mode::Convex).unwrap();
        let v2 = analyze(&plain, &d, Mode::Convex).unwrap();
        assert_eq!(v1.elem, v2.elem);
    }

    #[test]
    fn choice_laws_at_verdict_level() {
        let d = AbstractDomain::sign();
        for mode in [Mode::May, Mode::Must, Mode::Convex] {
            let ab = analyze(&parse_program("choice(-1, 2)").unwrap(), &d, mode).unwrap();
            let ba = analyze(&parse_program("choice(2, -1)").unwrap(), &d, mode).unwrap();
            assert_eq!(ab.elem, ba.elem);
            let aa = analyze(&parse_program("choice(-1, -1)").unwrap(), &d, mode).unwrap();
            let a = analyze(&parse_program("-1").unwrap(), &d, mode).unwrap();
            assert_eq!(aa.elem, a.elem);
            let assoc_l = analyze(
                &parse_program("choice(choice(-1, 0), 2)").unwrap(),
                &d,
                mode,
            )
            .unwrap();
            let assoc_r = analyze(
                &parse_program("choice(-1, choice(0, 2))").unwrap(),
                &d,
                mode,
            )
            .unwrap();
            assert_eq!(assoc_l.elem, assoc_r.elem);
        }
    }

    #[test]
    fn may_must_consistency_on_sign_programs() {
        // every min-generator of must lies below some max-generator of may,
        // over all choice/+ programs of depth ≤ 3 on the literals {-1, 2}
        let d = AbstractDomain::sign();
        let programs = enumerate_programs(3);
        for e in &programs {
            let may = analyze(e, &d, Mode::May).unwrap();
            let must = analyze(e, &d, Mode::Must).unwrap();
            let may_gens = may.elem.gen();
            for m in must.elem.gen().iter() {
                assert!(
                    may_gens.iter().any(|g| d.poset.leq(m, g)),
                    "inconsistent verdicts for {e:?}"
                );
            }
        }
    }

    #[test]
    fn analyze_is_monotone_in_literal_abstraction() {
        // over a chain domain, raising the abstraction of one literal raises
        // the may/convex verdicts
        let poset = crate::poset::validate_poset(&["lo", "hi"], &[("lo", "hi")]).unwrap();
        let table = |v0: usize| {
            let mut map = BTreeMap::new();
            map.insert(7, v0);
            LitAbstraction::Table { default: 0, map }
        };
        let ops: BTreeMap<String, Vec<Vec<usize>>> =
            [("+".to_string(), vec![vec![0, 1], vec![1, 1]])]
                .into_iter()
                .collect();
        let d_lo = AbstractDomain::new("t", poset.clone(), table(0), ops.clone()).unwrap();
        let d_hi = AbstractDomain::new("t", poset.clone(), table(1), ops).unwrap();
        for text in ["7", "choice(7, 0)", "(7 + 0)", "let x = 7 in choice(x, x)"] {
            let e = parse_program(text).unwrap();
            for mode in [Mode::May, Mode::Convex] {
                let lo = analyze(&e, &d_lo, mode).unwrap();
                let hi = analyze(&e, &d_hi, mode).unwrap();
                assert!(
                    compare(&poset, &lo.elem, &hi.elem).unwrap(),
                    "{text} not monotone in {mode}"
                );
            }
        }
    }

    /// All closed programs of the given depth over lits {-1, 2} with choice
    /// and +; used by the consistency sweep.
    pub(crate) fn enumerate_programs(depth: usize) -> Vec<Expr> {
        let mut layers: Vec<Vec<Expr>> = vec![vec![Expr::Lit(-1), Expr::Lit(2)]];
        for d in 1..=depth {
            let prev: Vec<Expr> = layers[..d].iter().flatten().cloned().collect();
            let mut next = Vec::new();
            for a in &prev {
                for b in &prev {
                    next.push(Expr::Choice(Box::new(a.clone()), Box::new(b.clone())));
                    next.push(Expr::BinOp(
                        "+".into(),
                        Box::new(a.clone()),
                        Box::new(b.clone()),
                    ));
                }
            }
            layers.push(next);
        }
        layers.into_iter().flatten().collect()
    }
}
