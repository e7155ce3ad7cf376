use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::kernel::{RhoInterval, UnitInterval};
use crate::pbox::CopulaSpec;

use super::{DiagCode, Diagnostic, EventProb, EventSpec, FaultTree, GateOp, GateSpec};

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl Token<'_> {
    fn diag(&self, code: DiagCode, message: impl Into<String>) -> Diagnostic {
        Diagnostic { code, line: self.line, column: self.col, token: self.text.to_string(), message: message.into() }
    }
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut toks = Vec::new();
    let mut start = None;
    for (idx, ch) in code.char_indices().chain(std::iter::once((code.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(idx),
            (true, Some(s)) => {
                toks.push(Token { text: &code[s..idx], line: line_no, col: code[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    toks
}

struct Line<'a> {
    toks: Vec<Token<'a>>,
    pos: usize,
    line_no: usize,
    end_col: usize,
}

impl<'a> Line<'a> {
    fn next(&mut self, what: &str) -> std::result::Result<Token<'a>, Diagnostic> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(*t)
            }
            None => Err(Diagnostic {
                code: DiagCode::Syntax,
                line: self.line_no,
                column: self.end_col,
                token: String::new(),
                message: format!("expected {what}, found end of line"),
            }),
        }
    }

    fn peek(&self) -> Option<Token<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn ident(&mut self, what: &str) -> std::result::Result<Token<'a>, Diagnostic> {
        let t = self.next(what)?;
        let mut chars = t.text.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(t)
        } else {
            Err(t.diag(DiagCode::Syntax, format!("expected {what}, `{}` is not a valid identifier", t.text)))
        }
    }

    fn keyword(&mut self, kw: &str) -> std::result::Result<Token<'a>, Diagnostic> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text == kw {
            Ok(t)
        } else {
            Err(t.diag(DiagCode::Syntax, format!("expected `{kw}`")))
        }
    }

    fn real(&mut self, what: &str) -> std::result::Result<(f64, Token<'a>), Diagnostic> {
        let t = self.next(what)?;
        match t.text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok((v, t)),
            _ => Err(t.diag(DiagCode::Syntax, format!("expected {what}, `{}` is not a number", t.text))),
        }
    }

    fn count(&mut self, what: &str) -> std::result::Result<(u64, Token<'a>), Diagnostic> {
        let t = self.next(what)?;
        t.text.parse::<u64>().map(|v| (v, t)).map_err(|_| {
            t.diag(DiagCode::Syntax, format!("expected {what}, `{}` is not a non-negative integer", t.text))
        })
    }

    fn finish(&self) -> std::result::Result<(), Diagnostic> {
        match self.peek() {
            Some(t) => Err(t.diag(DiagCode::Syntax, "unexpected trailing token")),
            None => Ok(()),
        }
    }
}

struct Decl<'a> {
    name: Token<'a>,
    children: Option<[Token<'a>; 2]>,
}

enum Stmt<'a> {
    Event(EventSpec, Token<'a>),
    Gate(GateSpec, Token<'a>, [Token<'a>; 2]),
    Top(Token<'a>),
}

fn check_prob(p: f64, tok: Token<'_>) -> std::result::Result<f64, Diagnostic> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(tok.diag(DiagCode::ProbRange, format!("probability {p} is outside [0, 1]")))
    }
}

fn check_rho(r: f64, tok: Token<'_>) -> std::result::Result<f64, Diagnostic> {
    if (-1.0..=1.0).contains(&r) {
        Ok(r)
    } else {
        Err(tok.diag(DiagCode::RhoRange, format!("correlation {r} is outside [-1, 1]")))
    }
}

fn parse_event<'a>(l: &mut Line<'a>) -> std::result::Result<Stmt<'a>, Diagnostic> {
    let name = l.ident("event name")?;
    let kind = l.next("`point`, `interval` or `cbox`")?;
    let prob = match kind.text {
        "point" => {
            let (p, t) = l.real("probability")?;
            EventProb::Point(check_prob(p, t)?)
        }
        "interval" => {
            let (lo, tlo) = l.real("lower probability")?;
            let (hi, thi) = l.real("upper probability")?;
            let lo = check_prob(lo, tlo)?;
            let hi = check_prob(hi, thi)?;
            let iv = UnitInterval::new(lo, hi)
                .map_err(|_| tlo.diag(DiagCode::ProbRange, format!("interval [{lo}, {hi}] has lo > hi")))?;
            EventProb::Interval(iv)
        }
        "cbox" => {
            let (k, tk) = l.count("success count k")?;
            let (n, tn) = l.count("trial count n")?;
            if n == 0 {
                return Err(tn.diag(DiagCode::CountOrder, "c-box needs at least one trial"));
            }
            if k > n {
                return Err(tk.diag(DiagCode::CountOrder, format!("c-box has k = {k} > n = {n}")));
            }
            EventProb::CBox { k, n }
        }
        _ => {
            return Err(kind.diag(DiagCode::Syntax, "expected `point`, `interval` or `cbox`"));
        }
    };
    l.finish()?;
    Ok(Stmt::Event(EventSpec { name: name.text.to_string(), prob }, name))
}

fn parse_gate<'a>(l: &mut Line<'a>) -> std::result::Result<Stmt<'a>, Diagnostic> {
    let name = l.ident("gate name")?;
    let op_tok = l.next("`and` or `or`")?;
    let op = match op_tok.text {
        "and" => GateOp::And,
        "or" => GateOp::Or,
        _ => return Err(op_tok.diag(DiagCode::Syntax, "expected `and` or `or`")),
    };
    let left = l.ident("child name")?;
    let right = l.ident("child name")?;
    l.keyword("rho")?;
    let (lo, tlo) = l.real("correlation")?;
    let lo = check_rho(lo, tlo)?;
    let hi = match l.peek() {
        Some(t) if t.text != "copula" => {
            let (hi, thi) = l.real("upper correlation")?;
            check_rho(hi, thi)?
        }
        _ => lo,
    };
    let rho = RhoInterval::new(lo, hi)
        .map_err(|_| tlo.diag(DiagCode::RhoRange, format!("correlation interval [{lo}, {hi}] has lo > hi")))?;
    let mut upper = CopulaSpec::Pi;
    if l.peek().is_some() {
        l.keyword("copula")?;
        let c = l.next("copula name")?;
        upper = match c.text {
            "pi" => CopulaSpec::Pi,
            "w" => CopulaSpec::W,
            "m" => CopulaSpec::M,
            "frechet" => CopulaSpec::FrechetUnknown,
            "gaussian" => {
                let (r, tr) = l.real("Gaussian copula parameter")?;
                CopulaSpec::Gaussian(check_rho(r, tr)?)
            }
            _ => {
                return Err(c.diag(DiagCode::Syntax, "expected one of `pi`, `w`, `m`, `gaussian <r>`, `frechet`"));
            }
        };
    }
    l.finish()?;
    Ok(Stmt::Gate(
        GateSpec {
            name: name.text.to_string(),
            op,
            left: left.text.to_string(),
            right: right.text.to_string(),
            rho,
            upper,
        },
        name,
        [left, right],
    ))
}

fn parse_line<'a>(l: &mut Line<'a>) -> std::result::Result<Option<Stmt<'a>>, Diagnostic> {
    let Some(head) = l.peek() else {
        return Ok(None);
    };
    l.pos += 1;
    match head.text {
        "event" => parse_event(l).map(Some),
        "gate" => parse_gate(l).map(Some),
        "top" => {
            let name = l.ident("top event name")?;
            l.finish()?;
            Ok(Some(Stmt::Top(name)))
        }
        _ => Err(head.diag(DiagCode::Syntax, "expected `event`, `gate` or `top`")),
    }
}

/// Parses and validates a fault tree. On failure every problem found is
/// reported in [`Error::Parse`].
pub fn parse_tree(text: &str) -> Result<FaultTree> {
    let mut diags = Vec::new();
    let mut events = Vec::new();
    let mut gates = Vec::new();
    let mut decls: Vec<Decl<'_>> = Vec::new();
    let mut top: Option<Token<'_>> = None;
    // Names declared on lines that failed to parse; references to them are
    // not reported again.
    let mut broken: HashSet<&str> = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut line = Line {
            toks: tokenize(raw, line_no),
            pos: 0,
            line_no,
            end_col: raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1,
        };
        match parse_line(&mut line) {
            Ok(None) => {}
            Ok(Some(Stmt::Event(e, name))) => {
                events.push(e);
                decls.push(Decl { name, children: None });
            }
            Ok(Some(Stmt::Gate(g, name, children))) => {
                gates.push(g);
                decls.push(Decl { name, children: Some(children) });
            }
            Ok(Some(Stmt::Top(name))) => {
                if top.is_some() {
                    diags.push(name.diag(DiagCode::Syntax, "`top` declared more than once"));
                } else {
                    top = Some(name);
                }
            }
            Err(d) => {
                if let [head, name, ..] = line.toks[..] {
                    if matches!(head.text, "event" | "gate") {
                        broken.insert(name.text);
                    }
                }
                diags.push(d);
            }
        }
    }

    // Names must be unique across events and gates.
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, d) in decls.iter().enumerate() {
        if index.contains_key(d.name.text) {
            diags.push(d.name.diag(DiagCode::DuplicateName, format!("`{}` is already declared", d.name.text)));
        } else {
            index.insert(d.name.text, i);
        }
    }

    let mut referenced: HashSet<&str> = HashSet::new();
    for d in &decls {
        for child in d.children.iter().flatten() {
            if broken.contains(child.text) && !index.contains_key(child.text) {
                continue;
            } else if !index.contains_key(child.text) {
                diags.push(child.diag(DiagCode::UnknownReference, format!("`{}` is not declared", child.text)));
            } else if !referenced.insert(child.text) {
                diags.push(child.diag(
                    DiagCode::ChildReused,
                    format!("`{}` is already used as a child; shared events are not supported", child.text),
                ));
            }
        }
    }

    match top {
        None => diags.push(Diagnostic {
            code: DiagCode::MissingTop,
            line: 0,
            column: 0,
            token: String::new(),
            message: "no `top` statement".into(),
        }),
        Some(t) if !index.contains_key(t.text) && !broken.contains(t.text) => {
            diags.push(t.diag(DiagCode::UnknownReference, format!("top event `{}` is not declared", t.text)));
        }
        _ => {}
    }

    diags.extend(find_cycles(&decls, &index));

    if diags.is_empty() {
        let top = top.expect("checked above");
        let mut seen = HashSet::new();
        let mut stack = vec![top.text];
        while let Some(name) = stack.pop() {
            if seen.insert(name) {
                if let Some(children) = decls[index[name]].children {
                    stack.extend(children.iter().map(|c| c.text));
                }
            }
        }
        for d in &decls {
            if !seen.contains(d.name.text) {
                diags.push(d.name.diag(
                    DiagCode::Unreachable,
                    format!("`{}` is not reachable from top event `{}`", d.name.text, top.text),
                ));
            }
        }
    }

    if !diags.is_empty() {
        diags.sort_by_key(|d| (d.line == 0, d.line, d.column));
        return Err(Error::Parse(diags));
    }
    Ok(FaultTree { events, gates, top: top.expect("checked above").text.to_string() })
}

fn find_cycles(decls: &[Decl<'_>], index: &HashMap<&str, usize>) -> Vec<Diagnostic> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(
        i: usize,
        decls: &[Decl<'_>],
        index: &HashMap<&str, usize>,
        marks: &mut [Mark],
        out: &mut Vec<Diagnostic>,
    ) {
        marks[i] = Mark::Active;
        for child in decls[i].children.iter().flatten() {
            let Some(&j) = index.get(child.text) else { continue };
            match marks[j] {
                Mark::New => visit(j, decls, index, marks, out),
                Mark::Active => out.push(child.diag(DiagCode::Cycle, format!("`{}` is its own ancestor", child.text))),
                Mark::Done => {}
            }
        }
        marks[i] = Mark::Done;
    }
    let mut marks = vec![Mark::New; decls.len()];
    let mut out = Vec::new();
    for i in 0..decls.len() {
        // Only the first declaration of a duplicated name takes part.
        if index.get(decls[i].name.text) == Some(&i) && marks[i] == Mark::New {
            visit(i, decls, index, &mut marks, &mut out);
        }
    }
    out
}
