//! Script syntax tree, parser and static checks.
//!
//! ```text
//! script := stmt+
//! stmt   := ring | decl | cmd
//! ring   := "ring" field "[" ident ("," ident)* "]" ";"
//! field  := "QQ" | "GF" "(" int ")"
//! decl   := ident "=" value ";"
//! value  := "ideal" "(" [expr ("," expr)*] ")" | "matrix" "(" row ("," row)* ")" | call
//! row    := "[" expr ("," expr)* "]"
//! cmd    := call ";"
//! call   := ident "(" [arg ("," arg)*] ")"
//! arg    := expr | "ideal" "(" ... ")" | "matrix" "(" ... ")"
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::parse::{syntax, Expr, ExprKind, Parser, Tok};

/// Ordinary commands.
pub const COMMANDS: &[&str] = &[
    "rt",
    "rees",
    "syzygies",
    "trinomialize",
    "jdual",
    "expected",
    "hilbert_burch",
    "intersect",
    "colon",
    "dim",
    "member",
    "curve",
    "hn",
    "cycle",
    "strip",
    "equidim",
    "invariance",
];

/// Commands whose result can be bound to a name.
pub const IDEAL_VALUED: &[&str] = &["intersect", "colon", "curve", "hn", "cycle"];

#[derive(Clone, Debug, PartialEq)]
pub struct RingDecl {
    pub field: Field,
    pub vars: Vec<String>,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Expr(Expr),
    Ideal(Vec<Expr>),
    Matrix(Vec<Vec<Expr>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Call {
    pub name: String,
    pub args: Vec<Arg>,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Ideal(Vec<Expr>),
    Matrix(Vec<Vec<Expr>>),
    Call(Call),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Decl {
        name: String,
        value: Value,
        line: usize,
        column: usize,
    },
    Command(Call),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Script {
    pub ring: RingDecl,
    pub stmts: Vec<Stmt>,
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_matrix(rows: &[Vec<Expr>]) -> String {
    let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
    format!("matrix({})", rows.join(", "))
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Expr(e) => write!(f, "{e}"),
            Arg::Ideal(g) => write!(f, "ideal({})", join(g)),
            Arg::Matrix(m) => f.write_str(&fmt_matrix(m)),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, join(&self.args))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Ideal(g) => write!(f, "ideal({})", join(g)),
            Value::Matrix(m) => f.write_str(&fmt_matrix(m)),
            Value::Call(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Decl { name, value, .. } => write!(f, "{name} = {value}"),
            Stmt::Command(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for RingDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.field {
            Field::Rational => "QQ".to_string(),
            Field::Prime(p) => format!("GF({p})"),
        };
        write!(f, "ring {field}[{}]", self.vars.join(", "))
    }
}

fn list<T>(p: &mut Parser, close: char, mut item: impl FnMut(&mut Parser) -> Result<T>) -> Result<Vec<T>> {
    let mut out = Vec::new();
    if p.eat(close) {
        return Ok(out);
    }
    loop {
        out.push(item(p)?);
        if p.eat(close) {
            return Ok(out);
        }
        if !p.eat(',') {
            return Err(p.error(format!("expected `,` or `{close}`{}", p.found())));
        }
    }
}

fn matrix_rows(p: &mut Parser) -> Result<Vec<Vec<Expr>>> {
    let at = p.here();
    let rows = list(p, ')', |p| {
        p.expect('[')?;
        list(p, ']', |p| p.expr())
    })?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(syntax(at.0, at.1, "a matrix needs at least one entry"));
    }
    if let Some(k) = rows.iter().position(|r| r.len() != rows[0].len()) {
        return Err(syntax(
            at.0,
            at.1,
            format!("matrix row {} has {} entries, expected {}", k + 1, rows[k].len(), rows[0].len()),
        ));
    }
    Ok(rows)
}

fn is_keyword_call(p: &Parser, word: &str) -> bool {
    matches!(p.peek(), Some(Tok::Ident(s)) if s == word) && p.peek_at(1) == Some(&Tok::Sym('('))
}

fn arg(p: &mut Parser) -> Result<Arg> {
    if is_keyword_call(p, "ideal") {
        p.bump();
        p.bump();
        return Ok(Arg::Ideal(list(p, ')', |p| p.expr())?));
    }
    if is_keyword_call(p, "matrix") {
        p.bump();
        p.bump();
        return Ok(Arg::Matrix(matrix_rows(p)?));
    }
    Ok(Arg::Expr(p.expr()?))
}

fn call(p: &mut Parser) -> Result<Call> {
    let (name, at) = p.ident()?;
    if !COMMANDS.contains(&name.as_str()) {
        return Err(syntax(at.0, at.1, format!("unknown command `{name}`")));
    }
    p.expect('(')?;
    let args = list(p, ')', arg)?;
    Ok(Call {
        name,
        args,
        line: at.0,
        column: at.1,
    })
}

fn ring_decl(p: &mut Parser) -> Result<RingDecl> {
    let (kw, at) = p.ident()?;
    debug_assert_eq!(kw, "ring");
    let (fname, fat) = p.ident()?;
    let field = match fname.as_str() {
        "QQ" => Field::Rational,
        "GF" => {
            p.expect('(')?;
            let nat = p.here();
            let v = match p.bump().map(|t| t.tok) {
                Some(Tok::Int(v)) => v,
                _ => return Err(syntax(nat.0, nat.1, "expected the characteristic of the field")),
            };
            p.expect(')')?;
            let q: u64 = (&v)
                .try_into()
                .map_err(|_| syntax(nat.0, nat.1, format!("{v} is not a supported prime")))?;
            Field::prime(q).map_err(|_| syntax(nat.0, nat.1, format!("{q} is not a prime")))?
        }
        _ => return Err(syntax(fat.0, fat.1, format!("unknown field `{fname}`, expected QQ or GF(p)"))),
    };
    p.expect('[')?;
    let mut vars: Vec<String> = Vec::new();
    let names = list(p, ']', |p| p.ident())?;
    if names.is_empty() {
        return Err(syntax(at.0, at.1, "a ring needs at least one variable"));
    }
    for (v, vat) in names {
        if v == "ring" || v == "ideal" || v == "matrix" || COMMANDS.contains(&v.as_str()) {
            return Err(syntax(vat.0, vat.1, format!("`{v}` is reserved")));
        }
        if vars.contains(&v) {
            return Err(syntax(vat.0, vat.1, format!("duplicate variable `{v}`")));
        }
        vars.push(v);
    }
    p.expect(';')?;
    Ok(RingDecl {
        field,
        vars,
        line: at.0,
        column: at.1,
    })
}

/// Parses and statically checks a script.
pub fn parse_script(text: &str) -> Result<Script> {
    let mut p = Parser::new(text)?;
    if p.at_end() {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "empty script".into(),
        });
    }
    let mut ring = None;
    let mut stmts = Vec::new();
    while !p.at_end() {
        let at = p.here();
        match (p.peek().cloned(), p.peek_at(1).cloned()) {
            (Some(Tok::Ident(kw)), Some(Tok::Ident(_))) if kw == "ring" => {
                if ring.is_some() {
                    return Err(syntax(at.0, at.1, "only one ring per script"));
                }
                if !stmts.is_empty() {
                    return Err(syntax(at.0, at.1, "the ring must be declared first"));
                }
                ring = Some(ring_decl(&mut p)?);
            }
            (Some(Tok::Ident(name)), Some(Tok::Sym('='))) => {
                p.bump();
                p.bump();
                let value = if is_keyword_call(&p, "ideal") {
                    p.bump();
                    p.bump();
                    Value::Ideal(list(&mut p, ')', |p| p.expr())?)
                } else if is_keyword_call(&p, "matrix") {
                    p.bump();
                    p.bump();
                    Value::Matrix(matrix_rows(&mut p)?)
                } else {
                    let c = call(&mut p)?;
                    if !IDEAL_VALUED.contains(&c.name.as_str()) {
                        return Err(syntax(c.line, c.column, format!("`{}` does not produce an ideal", c.name)));
                    }
                    Value::Call(c)
                };
                p.expect(';')?;
                stmts.push(Stmt::Decl {
                    name,
                    value,
                    line: at.0,
                    column: at.1,
                });
            }
            (Some(Tok::Ident(_)), _) => {
                let c = call(&mut p)?;
                p.expect(';')?;
                stmts.push(Stmt::Command(c));
            }
            _ => return Err(p.error(format!("expected a statement{}", p.found()))),
        }
        if ring.is_none() {
            return Err(syntax(at.0, at.1, "a script must start with a ring declaration"));
        }
    }
    let script = Script {
        ring: ring.expect("checked above"),
        stmts,
    };
    check(&script)?;
    Ok(script)
}

/// Static shape of an argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Ideal,
    Matrix,
    Int,
    Poly,
    /// A bare identifier that is neither a variable nor a declared name.
    Word(String),
    /// An expression over one or more undeclared names.
    Free(BTreeSet<String>),
}

fn ident_positions(e: &Expr, out: &mut Vec<(String, usize, usize)>) {
    match &e.kind {
        ExprKind::Int(_) => {}
        ExprKind::Ident(s) => out.push((s.clone(), e.line, e.column)),
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => ident_positions(a, out),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            ident_positions(a, out);
            ident_positions(b, out);
        }
    }
}

struct Scope<'a> {
    vars: &'a [String],
    names: HashMap<String, Shape>,
}

impl Scope<'_> {
    fn poly(&self, e: &Expr) -> Result<()> {
        let mut ids = Vec::new();
        ident_positions(e, &mut ids);
        for (s, l, c) in ids {
            if self.vars.contains(&s) {
                continue;
            }
            let msg = match self.names.get(&s) {
                Some(Shape::Matrix) => format!("`{s}` is a matrix, not a polynomial"),
                Some(_) => format!("`{s}` is an ideal, not a polynomial"),
                None => format!("unknown name `{s}`"),
            };
            return Err(syntax(l, c, msg));
        }
        Ok(())
    }

    fn shape(&self, a: &Arg) -> Result<Shape> {
        match a {
            Arg::Ideal(g) => {
                for e in g {
                    self.poly(e)?;
                }
                Ok(Shape::Ideal)
            }
            Arg::Matrix(m) => {
                for e in m.iter().flatten() {
                    self.poly(e)?;
                }
                Ok(Shape::Matrix)
            }
            Arg::Expr(e) => {
                if let ExprKind::Int(_) = e.kind {
                    return Ok(Shape::Int);
                }
                if let Some(s) = e.as_ident() {
                    if let Some(sh) = self.names.get(s) {
                        return Ok(sh.clone());
                    }
                    if !self.vars.iter().any(|v| v == s) {
                        return Ok(Shape::Word(s.to_string()));
                    }
                }
                let mut ids = Vec::new();
                ident_positions(e, &mut ids);
                let free: BTreeSet<String> = ids
                    .iter()
                    .filter(|(s, ..)| !self.vars.contains(s))
                    .map(|(s, ..)| s.clone())
                    .collect();
                if free.is_empty() {
                    return Ok(Shape::Poly);
                }
                if free.iter().any(|s| self.names.contains_key(s)) {
                    self.poly(e)?;
                }
                Ok(Shape::Free(free))
            }
        }
    }
}

fn signature(name: &str) -> &'static str {
    match name {
        "rt" => "rt(I [, K] [, degree])",
        "rees" => "rees(I [, K])",
        "syzygies" => "syzygies(I [, K])",
        "trinomialize" => "trinomialize(I [, refined])",
        "jdual" => "jdual(eta [, variables...])",
        "expected" => "expected(I, eta)",
        "hilbert_burch" => "hilbert_burch(I, g, eta)",
        "intersect" => "intersect(I, J, ...)",
        "colon" => "colon(I, f or J [, K])",
        "dim" => "dim(I)",
        "member" => "member(f, I [, radical])",
        "curve" => "curve(g1(t), ..., gn(t)) or curve(n1, ..., nn)",
        "hn" => "hn(a1, a2, a3, b1, b2, b3)",
        "cycle" => "cycle(n)",
        "strip" => "strip(I)",
        "equidim" => "equidim(I1, h1, I2, h2, ...)",
        "invariance" => "invariance(I [, count])",
        _ => "",
    }
}

fn accepts(name: &str, sh: &[Shape]) -> bool {
    use Shape::*;
    let polyish = |s: &Shape| matches!(s, Poly | Int);
    match name {
        "rt" => matches!(sh, [Ideal] | [Ideal, Ideal] | [Ideal, Int] | [Ideal, Ideal, Int]),
        "rees" | "syzygies" => matches!(sh, [Ideal] | [Ideal, Ideal]),
        "trinomialize" => match sh {
            [Ideal] => true,
            [Ideal, Word(w)] => w == "refined",
            _ => false,
        },
        "jdual" => matches!(sh.first(), Some(Matrix)) && sh[1..].iter().all(|s| *s == Poly),
        "expected" => matches!(sh, [Ideal, Matrix]),
        "hilbert_burch" => matches!(sh, [Ideal, a, Matrix] if polyish(a)),
        "intersect" => sh.len() >= 2 && sh.iter().all(|s| *s == Ideal),
        "colon" => match sh {
            [Ideal, Ideal] | [Ideal, Ideal, Ideal] => true,
            [Ideal, a] | [Ideal, a, Ideal] => polyish(a),
            _ => false,
        },
        "dim" | "strip" => matches!(sh, [Ideal]),
        "member" => match sh {
            [a, Ideal] => polyish(a),
            [a, Ideal, Word(w)] => polyish(a) && w == "radical",
            _ => false,
        },
        "curve" => !sh.is_empty() && sh.iter().all(|s| matches!(s, Int | Poly | Free(_) | Word(_))),
        "hn" => sh.len() == 6 && sh.iter().all(|s| *s == Int),
        "cycle" => matches!(sh, [Int]),
        "equidim" => {
            !sh.is_empty() && sh.len().is_multiple_of(2) && sh.chunks(2).all(|c| c[0] == Ideal && c[1] == Int)
        }
        "invariance" => matches!(sh, [Ideal] | [Ideal, Int]),
        _ => false,
    }
}

fn check_call(scope: &Scope<'_>, c: &Call) -> Result<()> {
    let shapes = c.args.iter().map(|a| scope.shape(a)).collect::<Result<Vec<_>>>()?;
    if c.name != "curve" {
        // undeclared names are only meaningful as a curve parameter
        for (a, s) in c.args.iter().zip(&shapes) {
            match s {
                Shape::Free(_) => {
                    if let Arg::Expr(e) = a {
                        scope.poly(e)?;
                    }
                }
                Shape::Word(w) if w != "refined" && w != "radical" => {
                    if let Arg::Expr(e) = a {
                        return Err(syntax(e.line, e.column, format!("unknown name `{w}`")));
                    }
                }
                _ => {}
            }
        }
    }
    if !accepts(&c.name, &shapes) {
        return Err(syntax(
            c.line,
            c.column,
            format!("wrong arguments for `{}`: expected {}", c.name, signature(&c.name)),
        ));
    }
    if c.name == "curve" {
        check_curve(scope, c, &shapes)?;
    }
    Ok(())
}

fn check_curve(scope: &Scope<'_>, c: &Call, shapes: &[Shape]) -> Result<()> {
    let n = scope.vars.len();
    if shapes.len() != n {
        return Err(syntax(
            c.line,
            c.column,
            format!("`curve` needs one image per ring variable ({n}), got {}", shapes.len()),
        ));
    }
    if shapes.iter().all(|s| *s == Shape::Int) {
        return Ok(());
    }
    let mut params = BTreeSet::new();
    for s in shapes {
        match s {
            Shape::Free(f) => params.extend(f.iter().cloned()),
            Shape::Word(w) => {
                params.insert(w.clone());
            }
            _ => {}
        }
    }
    if shapes.contains(&Shape::Int) && !params.is_empty() {
        return Err(syntax(
            c.line,
            c.column,
            "`curve` takes either exponents only or polynomials in one parameter, not both",
        ));
    }
    match params.len() {
        1 => Ok(()),
        0 => Err(syntax(
            c.line,
            c.column,
            "the parameter of `curve` must be a new name; ring variables cannot be used",
        )),
        _ => Err(syntax(
            c.line,
            c.column,
            format!(
                "`curve` takes polynomials in a single parameter, found {}",
                params.into_iter().collect::<Vec<_>>().join(", ")
            ),
        )),
    }
}

fn check(script: &Script) -> Result<()> {
    let mut scope = Scope {
        vars: &script.ring.vars,
        names: HashMap::new(),
    };
    for st in &script.stmts {
        match st {
            Stmt::Command(c) => check_call(&scope, c)?,
            Stmt::Decl {
                name,
                value,
                line,
                column,
            } => {
                if scope.vars.contains(name) {
                    return Err(syntax(*line, *column, format!("`{name}` is already a ring variable")));
                }
                if scope.names.contains_key(name) {
                    return Err(syntax(*line, *column, format!("`{name}` is already declared")));
                }
                if name == "ring" || name == "ideal" || name == "matrix" || COMMANDS.contains(&name.as_str()) {
                    return Err(syntax(*line, *column, format!("`{name}` is reserved")));
                }
                let shape = match value {
                    Value::Ideal(g) => {
                        for e in g {
                            scope.poly(e)?;
                        }
                        Shape::Ideal
                    }
                    Value::Matrix(m) => {
                        for e in m.iter().flatten() {
                            scope.poly(e)?;
                        }
                        Shape::Matrix
                    }
                    Value::Call(c) => {
                        check_call(&scope, c)?;
                        Shape::Ideal
                    }
                };
                scope.names.insert(name.clone(), shape);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> (usize, usize, String) {
        match parse_script(text) {
            Err(Error::Syntax { line, column, message }) => (line, column, message),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parses_declarations_and_commands() {
        let s = parse_script("ring QQ[x,y];\nI = ideal(x^2, y^2, x*y);\nrt(I);\nrt(ideal(x, y));").unwrap();
        assert_eq!(s.ring.vars, ["x", "y"]);
        assert_eq!(s.stmts.len(), 3);
        assert_eq!(s.stmts[0].to_string(), "I = ideal(x^2, y^2, x*y)");
        assert_eq!(s.stmts[2].to_string(), "rt(ideal(x, y))");
    }

    #[test]
    fn echo_reparses() {
        let text = "ring GF(7)[x,y,z]; M = matrix([z-x^3, 0], [-(y+1)^2, x]); jdual(M, x, y);";
        let s = parse_script(text).unwrap();
        assert_eq!(s.stmts[0].to_string(), "M = matrix([z-x^3, 0], [-(y+1)^2, x])");
        let again = format!("{}; {}; {};", s.ring, s.stmts[0], s.stmts[1]);
        let echo = |s: &Script| s.stmts.iter().map(|st| st.to_string()).collect::<Vec<_>>();
        assert_eq!(echo(&parse_script(&again).unwrap()), echo(&s));
    }

    #[test]
    fn empty_and_missing_ring() {
        assert_eq!(err("  # nothing\n").2, "empty script");
        assert!(err("rt(ideal(x));").2.contains("ring declaration"));
    }

    #[test]
    fn bad_fields() {
        assert_eq!(err("ring GF(4)[x];"), (1, 9, "4 is not a prime".into()));
        assert!(err("ring RR[x];").2.contains("unknown field"));
    }

    #[test]
    fn name_errors() {
        assert_eq!(err("ring QQ[x,y];\nrt(J);").2, "unknown name `J`");
        assert_eq!(err("ring QQ[x,y];\nI = ideal(x);\nI = ideal(y);"), (3, 1, "`I` is already declared".into()));
        assert!(err("ring QQ[x,y]; x = ideal(y);").2.contains("ring variable"));
        assert_eq!(err("ring QQ[x,y];\nI = ideal(x, s^2);"), (2, 14, "unknown name `s`".into()));
    }

    #[test]
    fn arity_errors() {
        assert!(err("ring QQ[x,y]; I = ideal(x); rt();").2.starts_with("wrong arguments for `rt`"));
        assert!(err("ring QQ[x,y]; I = ideal(x); dim(I, I);").2.starts_with("wrong arguments"));
        assert!(err("ring QQ[x,y]; I = ideal(x); hn(1,2,3,4,5);").2.starts_with("wrong arguments"));
        assert!(err("ring QQ[x,y]; I = ideal(x); trinomialize(I, fancy);").2.contains("unknown name `fancy`"));
        assert!(err("ring QQ[x,y]; frobnicate(x);").2.contains("unknown command"));
        assert!(err("ring QQ[x,y]; I = ideal(x); J = dim(I);").2.contains("does not produce an ideal"));
    }

    #[test]
    fn curve_forms() {
        assert!(parse_script("ring QQ[x,y,z]; curve(t^6, t^8, t^10+t^11);").is_ok());
        assert!(parse_script("ring QQ[x,y,z]; curve(3, 4, 5);").is_ok());
        assert!(err("ring QQ[x,y,z]; curve(6, 8, 10+11);").2.contains("new name"));
        assert!(err("ring QQ[x,y,z]; curve(x^2, x^3, x^4);").2.contains("new name"));
        assert!(err("ring QQ[x,y,z]; curve(6, t^8, t^10);").2.contains("not both"));
        assert!(err("ring QQ[x,y,z]; curve(s, t, s*t);").2.contains("single parameter"));
        assert!(err("ring QQ[x,y,z]; curve(t, t^2);").2.contains("one image per ring variable"));
    }

    #[test]
    fn token_errors_have_positions() {
        assert_eq!(err("ring QQ[x];\nI = ideal(x $ 1);"), (2, 13, "unexpected character `$`".into()));
        assert_eq!(err("ring QQ[x];\nI = ideal(x"), (2, 12, "expected `,` or `)`, found end of input".into()));
    }
}
