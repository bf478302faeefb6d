//! Readers and writers for the supported framework file formats.
//!
//! * APX (ASPARTIX): `arg(a).` / `att(a,b).`, `%` comments, free whitespace.
//! * TGF: node lines `<id> [label]`, a `#` separator, edge lines `<src> <dst>`.
//!   The node label becomes the annotation text.
//! * JSON: `{"arguments":[{"id":..,"annotation":{"text":..,"url":..}}],"attacks":[[s,t]]}`.
//!
//! Lossiness: APX drops annotations entirely; TGF drops urls and normalizes
//! whitespace inside annotation text (a url-only annotation disappears).

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{FrameworkError, ParseError, ParseErrorKind};
use crate::framework::{Annotation, ArgumentId, Framework, FrameworkBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Apx,
    Tgf,
    Json,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Apx, Format::Tgf, Format::Json];

    pub fn name(self) -> &'static str {
        match self {
            Format::Apx => "apx",
            Format::Tgf => "tgf",
            Format::Json => "json",
        }
    }

    /// Format implied by a file extension (`.apx`, `.tgf`, `.json`).
    pub fn from_extension(path: &std::path::Path) -> Option<Format> {
        path.extension()?
            .to_str()?
            .to_ascii_lowercase()
            .parse()
            .ok()
    }

    /// Best-effort guess from content: JSON objects, APX statements, else TGF.
    pub fn sniff(text: &str) -> Format {
        let body = text.trim_start();
        if body.starts_with('{') {
            Format::Json
        } else if body.starts_with('%')
            || body.starts_with("arg(")
            || body.starts_with("att(")
            || body.is_empty()
        {
            Format::Apx
        } else {
            Format::Tgf
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "apx" => Ok(Format::Apx),
            "tgf" => Ok(Format::Tgf),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown framework format `{other}`")),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn parse(text: &str, format: Format) -> Result<Framework, ParseError> {
    match format {
        Format::Apx => parse_apx(text),
        Format::Tgf => parse_tgf(text),
        Format::Json => parse_json(text),
    }
}

pub fn serialize(framework: &Framework, format: Format) -> String {
    match format {
        Format::Apx => to_apx(framework),
        Format::Tgf => to_tgf(framework),
        Format::Json => to_json(framework),
    }
}

// ---------------------------------------------------------------------------
// APX

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Name(&'a str),
    Open,
    Close,
    Comma,
    Dot,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
    }

    /// Next token with its (line, column), skipping whitespace and comments.
    fn next_token(&mut self) -> Option<(Tok<'a>, usize, usize)> {
        loop {
            let c = self.text[self.pos..].chars().next()?;
            if c.is_whitespace() {
                self.bump(c);
            } else if c == '%' {
                while let Some(c) = self.text[self.pos..].chars().next() {
                    if c == '\n' {
                        break;
                    }
                    self.bump(c);
                }
            } else {
                break;
            }
        }
        let (line, col) = (self.line, self.col);
        let c = self.text[self.pos..].chars().next()?;
        let tok = match c {
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            _ => {
                let start = self.pos;
                while let Some(c) = self.text[self.pos..].chars().next() {
                    if c.is_whitespace() || "(),.%".contains(c) {
                        break;
                    }
                    self.bump(c);
                }
                return Some((Tok::Name(&self.text[start..self.pos]), line, col));
            }
        };
        self.bump(c);
        Some((tok, line, col))
    }
}

pub fn parse_apx(text: &str) -> Result<Framework, ParseError> {
    let mut lex = Lexer::new(text);
    let mut builder = FrameworkBuilder::new();
    // Attacks are resolved after all arguments are known; APX files do not
    // require `arg` before `att`.
    let mut attacks: Vec<(ArgumentId, ArgumentId, usize, usize)> = Vec::new();

    let expect = |lex: &mut Lexer<'_>, want: Tok<'_>, what: &str| -> Result<(), ParseError> {
        match lex.next_token() {
            Some((t, _, _)) if t == want => Ok(()),
            Some((t, l, c)) => Err(ParseError::at(
                l,
                c,
                ParseErrorKind::Syntax(format!("expected {what}, found {}", describe(&t))),
            )),
            None => Err(ParseError::line(
                lex.line,
                ParseErrorKind::Syntax(format!("expected {what}, found end of input")),
            )),
        }
    };
    let name = |lex: &mut Lexer<'_>| -> Result<(ArgumentId, usize, usize), ParseError> {
        match lex.next_token() {
            Some((Tok::Name(n), l, c)) => ArgumentId::new(n)
                .map(|id| (id, l, c))
                .map_err(|e| ParseError::at(l, c, e)),
            Some((t, l, c)) => Err(ParseError::at(
                l,
                c,
                ParseErrorKind::Syntax(format!("expected argument name, found {}", describe(&t))),
            )),
            None => Err(ParseError::line(
                lex.line,
                ParseErrorKind::Syntax("expected argument name, found end of input".into()),
            )),
        }
    };

    while let Some((tok, line, col)) = lex.next_token() {
        match tok {
            Tok::Name("arg") => {
                expect(&mut lex, Tok::Open, "`(`")?;
                let (id, l, c) = name(&mut lex)?;
                expect(&mut lex, Tok::Close, "`)`")?;
                expect(&mut lex, Tok::Dot, "`.`")?;
                builder
                    .add_argument(id, None)
                    .map_err(|e| ParseError::at(l, c, e))?;
            }
            Tok::Name("att") => {
                expect(&mut lex, Tok::Open, "`(`")?;
                let (src, l, c) = name(&mut lex)?;
                expect(&mut lex, Tok::Comma, "`,`")?;
                let (dst, _, _) = name(&mut lex)?;
                expect(&mut lex, Tok::Close, "`)`")?;
                expect(&mut lex, Tok::Dot, "`.`")?;
                attacks.push((src, dst, l, c));
            }
            other => {
                return Err(ParseError::at(
                    line,
                    col,
                    ParseErrorKind::Syntax(format!(
                        "expected `arg` or `att`, found {}",
                        describe(&other)
                    )),
                ))
            }
        }
    }
    for (src, dst, l, c) in attacks {
        builder
            .add_attack(&src, &dst)
            .map_err(|e| ParseError::at(l, c, e))?;
    }
    Ok(builder.build())
}

fn describe(t: &Tok<'_>) -> String {
    match t {
        Tok::Name(n) => format!("`{n}`"),
        Tok::Open => "`(`".into(),
        Tok::Close => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
    }
}

fn to_apx(framework: &Framework) -> String {
    let mut out = String::new();
    for a in framework.arguments() {
        let _ = writeln!(out, "arg({}).", a.id);
    }
    for att in framework.attacks() {
        let _ = writeln!(out, "att({},{}).", att.source, att.target);
    }
    out
}

// ---------------------------------------------------------------------------
// TGF

pub fn parse_tgf(text: &str) -> Result<Framework, ParseError> {
    let mut builder = FrameworkBuilder::new();
    let mut in_edges = false;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !in_edges {
            if line == "#" {
                in_edges = true;
                continue;
            }
            let (id, label) = match line.split_once(char::is_whitespace) {
                Some((id, rest)) => (id, rest.trim()),
                None => (line, ""),
            };
            let id = ArgumentId::new(id).map_err(|e| ParseError::line(line_no, e))?;
            let annotation = if label.is_empty() {
                None
            } else {
                Some(Annotation {
                    text: label.to_string(),
                    url: None,
                })
            };
            builder
                .add_argument(id, annotation)
                .map_err(|e| ParseError::line(line_no, e))?;
        } else {
            let mut parts = line.split_whitespace();
            let (Some(s), Some(t), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(ParseError::line(
                    line_no,
                    ParseErrorKind::Syntax("edge line must be `<source> <target>`".into()),
                ));
            };
            let s = ArgumentId::new(s).map_err(|e| ParseError::line(line_no, e))?;
            let t = ArgumentId::new(t).map_err(|e| ParseError::line(line_no, e))?;
            builder
                .add_attack(&s, &t)
                .map_err(|e| ParseError::line(line_no, e))?;
        }
    }
    if !in_edges {
        return Err(ParseError::unpositioned(ParseErrorKind::MissingSeparator));
    }
    Ok(builder.build())
}

fn to_tgf(framework: &Framework) -> String {
    let mut out = String::new();
    for a in framework.arguments() {
        let label = a
            .annotation
            .as_ref()
            .map(|ann| ann.text.split_whitespace().collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        if label.is_empty() {
            let _ = writeln!(out, "{}", a.id);
        } else {
            let _ = writeln!(out, "{} {}", a.id, label);
        }
    }
    out.push_str("#\n");
    for att in framework.attacks() {
        let _ = writeln!(out, "{} {}", att.source, att.target);
    }
    out
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFramework {
    arguments: Vec<JsonArgument>,
    attacks: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonArgument {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    annotation: Option<Annotation>,
}

pub fn parse_json(text: &str) -> Result<Framework, ParseError> {
    let doc: JsonFramework = serde_json::from_str(text)
        .map_err(|e| ParseError::at(e.line(), e.column(), ParseErrorKind::Schema(e.to_string())))?;
    let mut builder = FrameworkBuilder::new();
    for a in doc.arguments {
        let id = ArgumentId::new(a.id).map_err(ParseError::unpositioned)?;
        builder
            .add_argument(id, a.annotation)
            .map_err(ParseError::unpositioned)?;
    }
    for (s, t) in doc.attacks {
        let s = ArgumentId::new(s).map_err(ParseError::unpositioned)?;
        let t = ArgumentId::new(t).map_err(ParseError::unpositioned)?;
        builder
            .add_attack(&s, &t)
            .map_err(ParseError::unpositioned)?;
    }
    Ok(builder.build())
}

/// JSON value of a framework, as used by [`serialize`] and the HTTP API.
pub fn framework_json(framework: &Framework) -> serde_json::Value {
    let doc = JsonFramework {
        arguments: framework
            .arguments()
            .iter()
            .map(|a| JsonArgument {
                id: a.id.to_string(),
                annotation: a.annotation.clone(),
            })
            .collect(),
        attacks: framework
            .attacks()
            .map(|a| (a.source.to_string(), a.target.to_string()))
            .collect(),
    };
    serde_json::to_value(doc).expect("framework json")
}

fn to_json(framework: &Framework) -> String {
    let mut s = serde_json::to_string_pretty(&framework_json(framework)).expect("framework json");
    s.push('\n');
    s
}

impl From<FrameworkError> for ParseError {
    fn from(e: FrameworkError) -> Self {
        ParseError::unpositioned(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(f: &Framework) -> Vec<&str> {
        f.arguments().iter().map(|a| a.id.as_str()).collect()
    }

    fn pairs(f: &Framework) -> Vec<(String, String)> {
        f.attacks()
            .map(|a| (a.source.to_string(), a.target.to_string()))
            .collect()
    }

    #[test]
    fn apx_empty() {
        let f = parse_apx("").unwrap();
        assert_eq!(f.len(), 0);
        assert_eq!(f.attack_count(), 0);
    }

    #[test]
    fn apx_mutual_attack_on_one_line() {
        let f = parse_apx("arg(m). arg(o). att(m,o). att(o,m).").unwrap();
        assert_eq!(names(&f), vec!["m", "o"]);
        assert_eq!(
            pairs(&f),
            vec![("m".into(), "o".into()), ("o".into(), "m".into())]
        );
    }

    #[test]
    fn apx_comments_and_whitespace() {
        let text = "% header\narg( a ) .\n  arg(b).% trailing\natt(a ,\n b).\n";
        let f = parse_apx(text).unwrap();
        assert_eq!(names(&f), vec!["a", "b"]);
        assert_eq!(f.attack_count(), 1);
    }

    #[test]
    fn apx_undeclared_argument() {
        let err = parse_apx("att(a,b).").unwrap_err();
        assert_eq!(err.line, Some(1));
        assert_eq!(
            err.kind,
            ParseErrorKind::Framework(FrameworkError::UndeclaredArgument(
                ArgumentId::new("a").unwrap()
            ))
        );
        assert!(err.to_string().contains("`a`"));
    }

    #[test]
    fn apx_syntax_error_has_line() {
        let err = parse_apx("arg(a).\narg(b)\natt(a,b).").unwrap_err();
        assert_eq!(err.line, Some(3));
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = parse_apx("arg(a).\nfoo(b).").unwrap_err();
        assert_eq!((err.line, err.column), (Some(2), Some(1)));
        assert!(parse_apx("arg(a").is_err());
    }

    #[test]
    fn apx_duplicates() {
        assert!(parse_apx("arg(a). arg(a).").is_err());
        assert!(parse_apx("arg(a). arg(b). att(a,b). att(a,b).").is_err());
    }

    #[test]
    fn apx_serialize_single() {
        let f = parse_apx("arg(a).").unwrap();
        assert_eq!(serialize(&f, Format::Apx), "arg(a).\n");
    }

    #[test]
    fn tgf_basic() {
        let f = parse_tgf("a\n#\n").unwrap();
        assert_eq!(names(&f), vec!["a"]);
        assert_eq!(f.attack_count(), 0);
    }

    #[test]
    fn tgf_labels_become_annotations() {
        let f = parse_tgf(
            "m mere pursuit is not enough\no bodily seizure is not necessary\n#\nm o\no m\n",
        )
        .unwrap();
        assert_eq!(names(&f), vec!["m", "o"]);
        assert_eq!(
            f.argument(0).annotation.as_ref().unwrap().text,
            "mere pursuit is not enough"
        );
        assert_eq!(
            f.argument(1).annotation.as_ref().unwrap().text,
            "bodily seizure is not necessary"
        );
        assert_eq!(f.attack_count(), 2);
    }

    #[test]
    fn tgf_errors() {
        let err = parse_tgf("a\nb\n#\na c\n").unwrap_err();
        assert_eq!(err.line, Some(4));
        assert!(err.to_string().contains("`c`"));
        assert_eq!(
            parse_tgf("a\nb\n").unwrap_err().kind,
            ParseErrorKind::MissingSeparator
        );
        assert!(parse_tgf("a\na\n#\n").is_err());
        assert!(parse_tgf("a\n#\na a a\n").is_err());
    }

    #[test]
    fn json_basic() {
        let f = parse_json(r#"{"arguments":[{"id":"a"}],"attacks":[]}"#).unwrap();
        assert_eq!(names(&f), vec!["a"]);
    }

    #[test]
    fn json_annotations() {
        let f = parse_json(
            r#"{"arguments":[{"id":"m","annotation":{"text":"mere pursuit is not enough"}},{"id":"o"}],"attacks":[["m","o"],["o","m"]]}"#,
        )
        .unwrap();
        assert_eq!(
            f.argument(0).annotation.as_ref().unwrap().text,
            "mere pursuit is not enough"
        );
        assert!(f.argument(1).annotation.is_none());
        assert_eq!(f.attack_count(), 2);
    }

    #[test]
    fn json_errors() {
        assert!(parse_json(r#"{"arguments":[],"attacks":[["x","y"]]}"#).is_err());
        assert!(parse_json(r#"{"arguments":[{"id":"a b"}],"attacks":[]}"#).is_err());
        assert!(
            parse_json(r#"{"arguments":[{"id":"a","annotation":{"text":""}}],"attacks":[]}"#)
                .is_err()
        );
        let err = parse_json("{\n  \"arguments\": 3 }").unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn json_round_trip_mutual() {
        let f = parse_apx("arg(m). arg(o). att(m,o). att(o,m).").unwrap();
        let text = serialize(&f, Format::Json);
        assert_eq!(parse_json(&text).unwrap(), f);
    }

    #[test]
    fn apx_drops_annotations() {
        let f =
            parse_json(r#"{"arguments":[{"id":"m","annotation":{"text":"gloss"}}],"attacks":[]}"#)
                .unwrap();
        assert_eq!(serialize(&f, Format::Apx), "arg(m).\n");
    }

    #[test]
    fn sniffing() {
        assert_eq!(Format::sniff("  {\"arguments\":[]}"), Format::Json);
        assert_eq!(Format::sniff("arg(a)."), Format::Apx);
        assert_eq!(Format::sniff("% c\narg(a)."), Format::Apx);
        assert_eq!(Format::sniff("a\n#\n"), Format::Tgf);
    }
}
