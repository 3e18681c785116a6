//! Text syntax for filter terms.
//!
//! ```text
//! term  := fan(all) | fan(cofin) | blocks | cofinite
//!        | coltail(N) | coltail(N, from=N) | gridtail(N, N) | col(N)
//!        | transversal(a=N, b=N, from=N, patch=N:{N,...}, ...)
//!        | meet(term, term, ...)
//! ```
//!
//! `col(n)` is the principal filter of the full column `n`. Whitespace is
//! ignored. Terms outside this syntax render in a descriptive form that
//! does not parse back.

use crate::error::{FanError, Result};
use crate::filter::{Support, SymFilter};
use crate::grid::GridSet;
use crate::interval::IntervalSet;
use crate::seq::SeqTerm;

pub fn render(f: &SymFilter) -> String {
    match f {
        SymFilter::Fan(Support::AllColumns) => "fan(all)".into(),
        SymFilter::Fan(Support::CofinitelyManyColumns) => "fan(cofin)".into(),
        SymFilter::ColumnBlocks => "blocks".into(),
        SymFilter::Cofinite => "cofinite".into(),
        SymFilter::ColumnTail { column, within } if within.is_full() => format!("coltail({column})"),
        SymFilter::ColumnTail { column, within } => match (within.spans(), within.tail()) {
            ([], Some(t)) => format!("coltail({column},from={t})"),
            _ => format!("coltail({column},within={within})"),
        },
        SymFilter::GridTail { a, b } => format!("gridtail({a},{b})"),
        SymFilter::Principal(s) => {
            let full_col = s.infinite_columns().count() == Some(1)
                && s.infinite_columns().min().is_some_and(|c| *s == GridSet::column(c, IntervalSet::full()));
            match s.infinite_columns().min() {
                Some(c) if full_col => format!("col({c})"),
                _ => format!("set({s})"),
            }
        }
        SymFilter::PrincipalNat(s) => format!("nat({s})"),
        SymFilter::Seq(s) => render_seq(s),
        SymFilter::Meet(parts) => {
            let inner: Vec<String> = parts.iter().map(render).collect();
            format!("meet({})", inner.join(","))
        }
    }
}

pub fn render_seq(s: &SeqTerm) -> String {
    match s {
        SeqTerm::TailInColumn { column, within } => format!("colseq({column},{within})"),
        SeqTerm::Transversal { from, a, b, patch } => {
            let mut out = format!("transversal(a={a},b={b},from={from}");
            for (c, set) in patch {
                let pts: Vec<String> = set.spans().iter().flat_map(|&(lo, hi)| lo..=hi).map(|v| v.to_string()).collect();
                out.push_str(&format!(",patch={c}:{{{}}}", pts.join(",")));
            }
            out.push(')');
            out
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(FanError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let neg = rest.starts_with('-') as usize;
        let len = neg + rest[neg..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - neg);
        match rest[..len].parse() {
            Ok(v) if len > neg => {
                self.pos += len;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let at = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| FanError::Syntax { pos: at, msg: "expected a natural number".into() })
    }

    fn term(&mut self) -> Result<SymFilter> {
        let start = self.pos;
        let name = self.ident()?;
        let t = match name {
            "blocks" => SymFilter::ColumnBlocks,
            "cofinite" => SymFilter::Cofinite,
            "fan" => {
                self.expect("(")?;
                let s = match self.ident()? {
                    "all" => Support::AllColumns,
                    "cofin" => Support::CofinitelyManyColumns,
                    _ => return self.err("expected `all` or `cofin`"),
                };
                self.expect(")")?;
                SymFilter::Fan(s)
            }
            "coltail" => {
                self.expect("(")?;
                let column = self.nat()?;
                let within = if self.eat(",") {
                    self.expect("from")?;
                    self.expect("=")?;
                    IntervalSet::tail_from(self.nat()?)
                } else {
                    IntervalSet::full()
                };
                self.expect(")")?;
                SymFilter::ColumnTail { column, within }
            }
            "gridtail" => {
                self.expect("(")?;
                let a = self.nat()?;
                self.expect(",")?;
                let b = self.nat()?;
                self.expect(")")?;
                SymFilter::GridTail { a, b }
            }
            "col" => {
                self.expect("(")?;
                let c = self.nat()?;
                self.expect(")")?;
                SymFilter::Principal(GridSet::column(c, IntervalSet::full()))
            }
            "transversal" => SymFilter::Seq(self.transversal_args()?),
            "meet" => {
                self.expect("(")?;
                let mut parts = vec![self.term()?];
                while self.eat(",") {
                    parts.push(self.term()?);
                }
                self.expect(")")?;
                SymFilter::Meet(parts)
            }
            _ => {
                self.pos = start;
                return self.err(format!("unknown term `{name}`"));
            }
        };
        Ok(t)
    }

    fn transversal_args(&mut self) -> Result<SeqTerm> {
        self.expect("(")?;
        let (mut a, mut b, mut from) = (None, None, None);
        let mut patches = Vec::new();
        loop {
            let key = self.ident()?;
            self.expect("=")?;
            match key {
                "a" => a = Some(self.int()?),
                "b" => b = Some(self.int()?),
                "from" => from = Some(self.nat()?),
                "patch" => {
                    let c = self.nat()?;
                    self.expect(":")?;
                    self.expect("{")?;
                    let mut pts = Vec::new();
                    if !self.eat("}") {
                        pts.push(self.nat()?);
                        while self.eat(",") {
                            pts.push(self.nat()?);
                        }
                        self.expect("}")?;
                    }
                    patches.push((c, IntervalSet::points(&pts)));
                }
                other => return self.err(format!("unknown transversal parameter `{other}`")),
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect(")")?;
        let seq = patches.into_iter().fold(
            SeqTerm::transversal(from.unwrap_or(0), a.unwrap_or(1), b.unwrap_or(0)),
            |s, (c, set)| s.with_patch(c, set),
        );
        seq.validate()?;
        Ok(seq)
    }
}

pub fn parse_filter(src: &str) -> Result<SymFilter> {
    let mut p = Parser { src, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Parses `a=1,b=0` style transversal parameters, as used on the command line.
pub fn parse_picker(src: &str) -> Result<SeqTerm> {
    let wrapped = format!("({src})");
    let mut p = Parser { src: &wrapped, pos: 0 };
    let shift = |e: FanError| match e {
        FanError::Syntax { pos, msg } => FanError::Syntax { pos: pos.saturating_sub(1), msg },
        other => other,
    };
    let seq = p.transversal_args().map_err(shift)?;
    p.skip_ws();
    if p.pos != wrapped.len() {
        return p.err("trailing input").map_err(shift);
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for src in [
            "fan(all)",
            "fan(cofin)",
            "blocks",
            "cofinite",
            "coltail(3)",
            "coltail(3,from=5)",
            "gridtail(2,4)",
            "col(5)",
            "transversal(a=1,b=0,from=0)",
            "transversal(a=2,b=1,from=3,patch=1:{},patch=2:{1,5})",
            "meet(fan(all),blocks)",
        ] {
            let t = parse_filter(src).unwrap();
            assert_eq!(render(&t), src);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_filter("fan(some)"),
            Err(FanError::Syntax { pos: 8, msg: "expected `all` or `cofin`".into() })
        );
        assert!(matches!(parse_filter("meet(blocks,"), Err(FanError::Syntax { pos: 12, .. })));
        assert!(matches!(parse_filter("transversal(a=-1)"), Err(FanError::Invalid(_))));
    }

    #[test]
    fn picker() {
        assert_eq!(parse_picker("a=1,b=0").unwrap(), SeqTerm::transversal(0, 1, 0));
    }
}
