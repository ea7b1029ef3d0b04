//! Command-line front end: expression and family-file parsing, report
//! rendering (human and JSON), and the subcommand driver.
//!
//! Grammar for polynomial expressions:
//!
//! ```text
//! expr    := ["-"] term { ("+" | "-") term }
//! term    := factor { "*" factor }
//! factor  := atom [ "^" exponent ]
//! atom    := literal | variable | "(" expr ")"
//! ```
//!
//! Variables are `x1, x2, ...`; literals are ring elements (`-3`, `2/5`,
//! `1+2i`, `i`, `1/2-1/3i`); multiplication is always explicit. The
//! canonical renderer emits exactly this grammar, so printing and
//! reparsing round-trips every polynomial.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser as ClapParser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::bassoc::{
    check_b_associative, classify, classify_symmetric, lemma3_diagnostic, Classification,
    SplitWitness, SymmetricClassification,
};
use crate::family::{delta, mz_family, n_of_z, PolyFamily};
use crate::oracle::{exhaustive_search, SearchConfig, SearchReport};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingId};

#[derive(Error, Debug)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{var} out of range at position {pos}: arity is {arity}")]
    VariableOutOfRange { var: usize, arity: usize, pos: usize },
    #[error("literal `{literal}` is not valid for ring {ring} (position {pos})")]
    BadLiteralForRing {
        literal: String,
        ring: RingId,
        pos: usize,
    },
    #[error("family file, line {line}: {msg}")]
    Family { line: usize, msg: String },
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Family(#[from] crate::family::FamilyError),
    #[error(transparent)]
    Diagnostic(#[from] crate::bassoc::BassocError),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("search config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
}

// ---------------------------------------------------------------------
// lexing and parsing
// ---------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Num { value: BigRational, imaginary: bool },
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
    end: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => {
                toks.push(Token { tok: Tok::Plus, pos: start, end: start + 1 });
                i += 1;
            }
            b'-' => {
                toks.push(Token { tok: Tok::Minus, pos: start, end: start + 1 });
                i += 1;
            }
            b'*' => {
                toks.push(Token { tok: Tok::Star, pos: start, end: start + 1 });
                i += 1;
            }
            b'^' => {
                toks.push(Token { tok: Tok::Caret, pos: start, end: start + 1 });
                i += 1;
            }
            b'(' => {
                toks.push(Token { tok: Tok::LParen, pos: start, end: start + 1 });
                i += 1;
            }
            b')' => {
                toks.push(Token { tok: Tok::RParen, pos: start, end: start + 1 });
                i += 1;
            }
            b'x' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(syntax(start, "expected a variable index after `x`"));
                }
                let var: usize = src[digits_start..i]
                    .parse()
                    .map_err(|_| syntax(start, "variable index too large"))?;
                toks.push(Token { tok: Tok::Var(var), pos: start, end: i });
            }
            b'i' => {
                i += 1;
                toks.push(Token {
                    tok: Tok::Num {
                        value: BigRational::from_integer(BigInt::from(1)),
                        imaginary: true,
                    },
                    pos: start,
                    end: i,
                });
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = src[start..i].parse().expect("digits");
                let mut denom = BigInt::from(1);
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let den_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == den_start {
                        return Err(syntax(start, "expected a denominator after `/`"));
                    }
                    denom = src[den_start..i].parse().expect("digits");
                    if denom.is_zero() {
                        return Err(syntax(start, "zero denominator in literal"));
                    }
                }
                let mut imaginary = false;
                if i < bytes.len() && bytes[i] == b'i' {
                    imaginary = true;
                    i += 1;
                }
                toks.push(Token {
                    tok: Tok::Num {
                        value: BigRational::new(numer, denom),
                        imaginary,
                    },
                    pos: start,
                    end: i,
                });
            }
            other => {
                return Err(syntax(start, format!("unexpected character `{}`", other as char)));
            }
        }
    }
    Ok(toks)
}

struct ExprParser<'a, R: Ring> {
    src: &'a str,
    toks: Vec<Token>,
    i: usize,
    arity: usize,
    _marker: std::marker::PhantomData<R>,
}

impl<'a, R: Ring> ExprParser<'a, R> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.i)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn end_pos(&self) -> usize {
        self.src.len()
    }

    fn expr(&mut self) -> Result<Polynomial<R>, ParseError> {
        let negate = matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus));
        if negate {
            self.i += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Plus) => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<R>, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek().map(|t| &t.tok), Some(Tok::Star)) {
            self.i += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<R>, ParseError> {
        let atom = self.atom()?;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Caret)) {
            self.i += 1;
            let e = self.exponent()?;
            return Ok(atom.pow(e));
        }
        Ok(atom)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let end = self.end_pos();
        let tok = self
            .bump()
            .ok_or_else(|| syntax(end, "expected an exponent"))?;
        match tok.tok {
            Tok::Num { value, imaginary: false }
                if value.is_integer() && !value.numer().sign().eq(&num_bigint::Sign::Minus) =>
            {
                u32::try_from(value.to_integer())
                    .ok()
                    .filter(|&e| e <= 1_000_000)
                    .ok_or_else(|| syntax(tok.pos, "exponent too large"))
            }
            _ => Err(syntax(tok.pos, "exponent must be a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial<R>, ParseError> {
        let end = self.end_pos();
        let tok = self
            .bump()
            .ok_or_else(|| syntax(end, "unexpected end of input"))?;
        match tok.tok {
            Tok::Num { value, imaginary } => {
                let zero = BigRational::zero();
                let (re, im) = if imaginary { (&zero, &value) } else { (&value, &zero) };
                let c = R::from_parts(re, im).ok_or_else(|| ParseError::BadLiteralForRing {
                    literal: self.src[tok.pos..tok.end].to_string(),
                    ring: R::ID,
                    pos: tok.pos,
                })?;
                Ok(Polynomial::constant(c, self.arity))
            }
            Tok::Var(v) => {
                if v == 0 {
                    return Err(syntax(tok.pos, "variables are numbered from x1"));
                }
                if v > self.arity {
                    return Err(ParseError::VariableOutOfRange {
                        var: v,
                        arity: self.arity,
                        pos: tok.pos,
                    });
                }
                Ok(Polynomial::var(v, self.arity))
            }
            Tok::LParen => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token { tok: Tok::RParen, .. }) => Ok(e),
                    Some(t) => Err(syntax(t.pos, "expected `)`")),
                    None => Err(syntax(end, "missing `)`")),
                }
            }
            _ => Err(syntax(
                tok.pos,
                "expected a literal, a variable or a parenthesized expression",
            )),
        }
    }
}

/// Parses a polynomial expression over the given ring, with variables
/// restricted to `x1..x{arity}`.
pub fn parse_polynomial<R: Ring>(text: &str, arity: usize) -> Result<Polynomial<R>, ParseError> {
    let toks = lex(text)?;
    let mut p = ExprParser::<R> {
        src: text,
        toks,
        i: 0,
        arity,
        _marker: std::marker::PhantomData,
    };
    let poly = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(syntax(
            t.pos,
            "unexpected token (note: multiplication must be explicit)",
        ));
    }
    Ok(poly)
}

/// Parses a single ring element (an arity-0 expression).
pub fn parse_ring_literal<R: Ring>(text: &str) -> Result<R, ParseError> {
    let poly = parse_polynomial::<R>(text, 0)?;
    Ok(poly.constant_value().expect("arity-0 expressions are constant"))
}

// ---------------------------------------------------------------------
// family files
// ---------------------------------------------------------------------

/// Reads the `ring` header of a family document without parsing members.
pub fn peek_family_ring(text: &str) -> Result<RingId, ParseError> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rest = line.strip_prefix("ring").ok_or(ParseError::Family {
            line: lineno + 1,
            msg: "expected a `ring <int|rat|gaussint|gaussrat>` header".into(),
        })?;
        return rest
            .trim()
            .parse::<RingId>()
            .map_err(|e| ParseError::Family {
                line: lineno + 1,
                msg: e.to_string(),
            });
    }
    Err(ParseError::Family {
        line: 0,
        msg: "empty family document".into(),
    })
}

/// Parses a family document: a `ring` header followed by one
/// `F<n> = <polynomial>` line per arity, contiguous from 1.
pub fn parse_family<R: Ring>(text: &str) -> Result<PolyFamily<R>, ParseError> {
    let header = peek_family_ring(text)?;
    if header != R::ID {
        return Err(ParseError::Family {
            line: 1,
            msg: format!("document is over ring {header}, expected {}", R::ID),
        });
    }
    let mut members = Vec::new();
    let mut seen_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let ln = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            seen_header = true; // validated by peek_family_ring
            continue;
        }
        let family_err = |msg: String| ParseError::Family { line: ln, msg };
        let rest = line
            .strip_prefix('F')
            .ok_or_else(|| family_err("expected a `F<n> = <polynomial>` line".into()))?;
        let (arity_text, expr) = rest
            .split_once('=')
            .ok_or_else(|| family_err("expected `=` after the member name".into()))?;
        let arity: usize = arity_text
            .trim()
            .parse()
            .map_err(|_| family_err(format!("invalid member name `F{}`", arity_text.trim())))?;
        let expected = members.len() + 1;
        if arity != expected {
            return Err(family_err(format!(
                "expected member F{expected}, found F{arity} (arities must be contiguous from 1)"
            )));
        }
        let poly = parse_polynomial::<R>(expr, arity).map_err(|e| family_err(e.to_string()))?;
        members.push(poly);
    }
    PolyFamily::new(members).map_err(|e| ParseError::Family {
        line: 0,
        msg: e.to_string(),
    })
}

/// Canonical family document: header plus one member per line.
pub fn render_family<R: Ring>(fam: &PolyFamily<R>) -> String {
    let mut out = format!("ring {}\n", R::ID);
    for (i, member) in fam.members().iter().enumerate() {
        let _ = writeln!(out, "F{} = {}", i + 1, member);
    }
    out
}

// ---------------------------------------------------------------------
// search configuration
// ---------------------------------------------------------------------

#[derive(Deserialize)]
struct RawSearchConfig {
    ring: String,
    max_arity: usize,
    max_total_degree: u32,
    #[serde(default)]
    per_arity_degrees: Option<Vec<u32>>,
    coefficient_pool: Vec<String>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    allow_large: bool,
}

fn search_config_from_raw<R: Ring>(raw: &RawSearchConfig) -> Result<SearchConfig<R>, CliError> {
    let pool = raw
        .coefficient_pool
        .iter()
        .map(|lit| parse_ring_literal::<R>(lit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SearchConfig {
        max_arity: raw.max_arity,
        max_total_degree: raw.max_total_degree,
        per_arity_degrees: raw.per_arity_degrees.clone(),
        pool,
        seed: raw.seed,
        allow_large: raw.allow_large,
    })
}

// ---------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------

fn witness_json<R: Ring>(w: &SplitWitness<R>) -> serde_json::Value {
    json!({
        "arity": w.arity,
        "split": [w.split.0, w.split.1, w.split.2],
        "difference": w.difference.to_string(),
    })
}

fn tail_json<R: Ring>(tail: &[R]) -> serde_json::Value {
    json!(tail.iter().map(Ring::render).collect::<Vec<_>>())
}

fn classification_json<R: Ring>(c: &Classification<R>) -> serde_json::Value {
    match c {
        Classification::CaseI { z, k, tail } => {
            let mut v = json!({ "case": "i", "k": k, "tail": tail_json(tail) });
            if let Some(z) = z {
                v["z"] = json!(z.render());
            }
            v
        }
        Classification::CaseII { q, tail } => {
            json!({ "case": "ii", "Q": q.to_string(), "tail": tail_json(tail) })
        }
        Classification::NotBAssociative(w) => {
            json!({ "case": "not_b_associative", "witness": witness_json(w) })
        }
    }
}

fn symmetric_json<R: Ring>(c: &SymmetricClassification<R>) -> serde_json::Value {
    match c {
        SymmetricClassification::AllConstant => json!({ "case": "all_constant" }),
        SymmetricClassification::CaseIHalf { k, tail } => {
            json!({ "case": "i_half", "z": "1/2", "k": k, "tail": tail_json(tail) })
        }
        SymmetricClassification::CaseIIAntisym { q, tail } => {
            json!({ "case": "ii_antisym", "Q": q.to_string(), "tail": tail_json(tail) })
        }
        SymmetricClassification::NotBAssociative(w) => {
            json!({ "case": "not_b_associative", "witness": witness_json(w) })
        }
        SymmetricClassification::NotSymmetric { arity } => {
            json!({ "case": "not_symmetric", "arity": arity })
        }
    }
}

fn family_json<R: Ring>(fam: &PolyFamily<R>) -> serde_json::Value {
    json!(fam
        .members()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>())
}

// ---------------------------------------------------------------------
// command-line interface
// ---------------------------------------------------------------------

#[derive(ClapParser, Debug)]
#[command(
    name = "baryassoc",
    about = "Construct, verify and classify barycentrically associative polynomial families",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the split identities for a family file; exit 1 with a witness on failure
    Check {
        family: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify a family into its canonical shape (or refute it)
    Classify {
        family: PathBuf,
        /// Use the symmetric-family specialization
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        json: bool,
    },
    /// Construct families in file form
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Print the weight normalizer of a parameter at one arity
    Delta {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        n: usize,
    },
    /// Print the first arity whose normalizer is not a unit (or `>bound`)
    Nz {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Enumerate every family over a coefficient pool and cross-check the classifier
    Search {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads for the enumeration
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the three binary-reconstruction identities at one arity step
    Lemma3 {
        family: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    /// Weighted-mean family: means below the first non-unit normalizer, tail constants after
    Mz {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long = "max-arity")]
        max_arity: usize,
        /// Comma-separated constants for the arities at and above the cutoff
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        tail: Vec<String>,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Runs the CLI against explicit arguments and streams, returning the
/// process exit code: 0 success, 1 refutation/mismatch, 2 usage or parse
/// error.
pub fn run<I, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = String>,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{e}");
                2
            };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Convenience wrapper over [`run`] for `main`.
pub fn run_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args(), &mut stdout.lock(), &mut stderr.lock())
}

macro_rules! with_ring {
    ($id:expr, $R:ident, $body:block) => {
        match $id {
            RingId::Int => {
                type $R = crate::Int;
                $body
            }
            RingId::Rat => {
                type $R = crate::Rat;
                $body
            }
            RingId::GaussInt => {
                type $R = crate::GaussInt;
                $body
            }
            RingId::GaussRat => {
                type $R = crate::GaussRat;
                $body
            }
        }
    };
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_ring_arg(name: &str) -> Result<RingId, CliError> {
    name.parse::<RingId>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn dispatch<W: Write>(cmd: Cmd, out: &mut W) -> Result<i32, CliError> {
    match cmd {
        Cmd::Check { family, json } => {
            let text = read_file(&family)?;
            let ring = peek_family_ring(&text)?;
            with_ring!(ring, R, {
                let fam = parse_family::<R>(&text)?;
                cmd_check(&fam, json, out)
            })
        }
        Cmd::Classify {
            family,
            symmetric,
            json,
        } => {
            let text = read_file(&family)?;
            let ring = peek_family_ring(&text)?;
            with_ring!(ring, R, {
                let fam = parse_family::<R>(&text)?;
                cmd_classify(&fam, symmetric, json, out)
            })
        }
        Cmd::Construct {
            what:
                ConstructCmd::Mz {
                    ring,
                    z,
                    max_arity,
                    tail,
                    output,
                },
        } => {
            let ring = parse_ring_arg(&ring)?;
            with_ring!(ring, R, {
                let z = parse_ring_literal::<R>(&z)?;
                let tail = tail
                    .iter()
                    .map(|t| parse_ring_literal::<R>(t))
                    .collect::<Result<Vec<_>, _>>()?;
                if max_arity < 1 {
                    return Err(CliError::Usage("--max-arity must be at least 1".into()));
                }
                let fam = mz_family(&z, max_arity, &tail)?;
                let doc = render_family(&fam);
                match output {
                    Some(path) => fs::write(&path, doc).map_err(|source| CliError::Io {
                        path,
                        source,
                    })?,
                    None => {
                        let _ = write!(out, "{doc}");
                    }
                }
                Ok(0)
            })
        }
        Cmd::Delta { ring, z, n } => {
            let ring = parse_ring_arg(&ring)?;
            if n < 1 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            with_ring!(ring, R, {
                let z = parse_ring_literal::<R>(&z)?;
                let _ = writeln!(out, "{}", delta(&z, n).render());
                Ok(0)
            })
        }
        Cmd::Nz { ring, z, bound } => {
            let ring = parse_ring_arg(&ring)?;
            if bound < 3 {
                return Err(CliError::Usage("--bound must be at least 3".into()));
            }
            with_ring!(ring, R, {
                let z = parse_ring_literal::<R>(&z)?;
                let _ = writeln!(out, "{}", n_of_z(&z, bound));
                Ok(0)
            })
        }
        Cmd::Search { config, jobs, json } => {
            let text = read_file(&config)?;
            let raw: RawSearchConfig =
                serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
            let ring = raw
                .ring
                .parse::<RingId>()
                .map_err(|e| CliError::Config(e.to_string()))?;
            let jobs = jobs.max(1);
            with_ring!(ring, R, {
                let cfg = search_config_from_raw::<R>(&raw)?;
                let started = Instant::now();
                let report = exhaustive_search(&cfg, jobs)?;
                cmd_search_report(&report, json, started, out)
            })
        }
        Cmd::Lemma3 { family, n } => {
            let text = read_file(&family)?;
            let ring = peek_family_ring(&text)?;
            with_ring!(ring, R, {
                let fam = parse_family::<R>(&text)?;
                let report = lemma3_diagnostic(&fam, n)?;
                let _ = writeln!(out, "{report}");
                Ok(0)
            })
        }
    }
}

fn cmd_check<R: Ring, W: Write>(
    fam: &PolyFamily<R>,
    json: bool,
    out: &mut W,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let result = check_b_associative(fam);
    let elapsed_ms = started.elapsed().as_millis() as u64;
    match result {
        Ok(()) => {
            if json {
                let doc = json!({
                    "command": "check",
                    "status": "ok",
                    "max_arity": fam.max_arity(),
                    "elapsed_ms": elapsed_ms,
                });
                let _ = writeln!(out, "{doc}");
            } else {
                let _ = writeln!(out, "ok: B-associative for all arities <= {}", fam.max_arity());
            }
            Ok(0)
        }
        Err(w) => {
            if json {
                let doc = json!({
                    "command": "check",
                    "status": "not_b_associative",
                    "witness": witness_json(&w),
                    "elapsed_ms": elapsed_ms,
                });
                let _ = writeln!(out, "{doc}");
            } else {
                let _ = writeln!(out, "not B-associative: {w}");
            }
            Ok(1)
        }
    }
}

fn cmd_classify<R: Ring, W: Write>(
    fam: &PolyFamily<R>,
    symmetric: bool,
    json: bool,
    out: &mut W,
) -> Result<i32, CliError> {
    let started = Instant::now();
    if symmetric {
        let result = classify_symmetric(fam);
        let elapsed_ms = started.elapsed().as_millis() as u64;
        let failed = matches!(result, SymmetricClassification::NotBAssociative(_));
        if json {
            let mut doc = symmetric_json(&result);
            doc["command"] = json!("classify");
            doc["symmetric"] = json!(true);
            doc["status"] = json!(if failed { "not_b_associative" } else { "ok" });
            doc["elapsed_ms"] = json!(elapsed_ms);
            let _ = writeln!(out, "{doc}");
        } else {
            let _ = writeln!(out, "{result}");
        }
        Ok(if failed { 1 } else { 0 })
    } else {
        let result = classify(fam);
        let elapsed_ms = started.elapsed().as_millis() as u64;
        let failed = matches!(result, Classification::NotBAssociative(_));
        if json {
            let mut doc = classification_json(&result);
            doc["command"] = json!("classify");
            doc["status"] = json!(if failed { "not_b_associative" } else { "ok" });
            doc["elapsed_ms"] = json!(elapsed_ms);
            let _ = writeln!(out, "{doc}");
        } else {
            let _ = writeln!(out, "{result}");
        }
        Ok(if failed { 1 } else { 0 })
    }
}

fn cmd_search_report<R: Ring, W: Write>(
    report: &SearchReport<R>,
    json: bool,
    started: Instant,
    out: &mut W,
) -> Result<i32, CliError> {
    let elapsed_ms = started.elapsed().as_millis() as u64;
    if json {
        let doc = json!({
            "command": "search",
            "status": if report.mismatches.is_empty() { "ok" } else { "mismatch" },
            "total_enumerated": report.total_enumerated.min(u64::MAX as u128) as u64,
            "b_associative_count": report.b_associative.len(),
            "families": report
                .b_associative
                .iter()
                .map(|(fam, cls)| {
                    json!({
                        "members": family_json(fam),
                        "classification": classification_json(cls),
                    })
                })
                .collect::<Vec<_>>(),
            "mismatches": report
                .mismatches
                .iter()
                .map(|m| {
                    json!({
                        "members": family_json(&m.family),
                        "classification": classification_json(&m.classification),
                        "reason": format!("{:?}", m.reason),
                    })
                })
                .collect::<Vec<_>>(),
            "elapsed_ms": elapsed_ms,
        });
        let _ = writeln!(out, "{doc}");
    } else {
        let _ = writeln!(out, "search space: {} families", report.total_enumerated);
        let _ = writeln!(out, "b-associative: {}", report.b_associative.len());
        let _ = writeln!(out, "mismatches: {}", report.mismatches.len());
        for m in &report.mismatches {
            let _ = writeln!(out, "  mismatch ({:?}):", m.reason);
            for (i, member) in m.family.members().iter().enumerate() {
                let _ = writeln!(out, "    F{} = {}", i + 1, member);
            }
        }
    }
    Ok(if report.mismatches.is_empty() { 0 } else { 1 })
}
