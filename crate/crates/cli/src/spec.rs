//! The sequence spec language.
//!
//! ```text
//! spec := base {"|" op}
//! base := "toeplitz:" pattern | "keane:" word | "pgs:" generator | "nu:" prime | "tm"
//! generator := "{" [prime ":" value {"," prime ":" value}] "}"
//!            | "mod" prime "{" residue ":" value {"," residue ":" value} ";p:" value "}"
//! op := "subseq(" int "," int ")" | "plus(" int ")" | "scale(" int ")"
//!     | "add(" spec ")" | "diff" | "mod(" int ")"
//! ```
//!
//! Values live in ℤ_k for the alphabet size k given alongside the text;
//! `mod(m)` switches to ℤ_m for the operators after it. `tm` is always over ℤ_2.

use std::fmt;

use arithsim::additive::{nu, pgs, PrimeGenerator};
use arithsim::keane::{keane_word, thue_morse_word, Block};
use arithsim::numtheory::is_prime;
use arithsim::toeplitz::toeplitz_word;
use arithsim::{CyclicGroup, Pattern, Seq};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at byte {offset}: {message}")]
pub struct SpecError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Toeplitz(Pattern),
    Keane(Block),
    Pgs(PrimeGenerator),
    Nu(u64),
    Tm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    Subseq(u64, u64),
    Plus(u32),
    Scale(u32),
    Add(Box<SeqSpec>),
    Diff,
    Mod(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqSpec {
    pub alphabet: u32,
    pub base: Base,
    pub ops: Vec<Op>,
}

impl SeqSpec {
    pub fn parse(text: &str, alphabet: u32) -> Result<Self, SpecError> {
        let mut p = Parser { text, pos: 0 };
        let spec = p.spec(alphabet, false)?;
        if p.pos < text.len() {
            return Err(p.err(format!("unexpected {:?}, expected \"|\" or end of input", p.rest_char())));
        }
        Ok(spec)
    }

    /// The group of the base sequence.
    fn base_group(&self) -> CyclicGroup {
        match self.base {
            Base::Tm => group(2),
            _ => group(self.alphabet),
        }
    }

    pub fn build(&self) -> arithsim::Result<Seq> {
        let g = self.base_group();
        let mut seq = match &self.base {
            Base::Toeplitz(p) => toeplitz_word(p)?,
            Base::Keane(u) => keane_word(u)?,
            Base::Pgs(mu) => pgs(mu),
            Base::Nu(p) => nu(*p, g)?,
            Base::Tm => thue_morse_word(),
        };
        for op in &self.ops {
            let g = seq.group();
            seq = match op {
                Op::Subseq(a, b) => seq.subseq(*a, *b)?,
                Op::Plus(c) => seq.shift_const(g.elem(*c)?)?,
                Op::Scale(c) => seq.scale(g.elem(*c)?),
                Op::Add(other) => seq.add(&other.build()?)?,
                Op::Diff => seq.diff(),
                Op::Mod(m) => seq.reduce(*m)?,
            };
        }
        Ok(seq.with_description(self.to_string()))
    }
}

fn group(k: u32) -> CyclicGroup {
    CyclicGroup::new(k).expect("alphabet sizes are validated before parsing")
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Base::Toeplitz(p) => write!(f, "toeplitz:{p}")?,
            Base::Keane(u) => write!(f, "keane:{u}")?,
            Base::Pgs(mu) => write!(f, "pgs:{mu}")?,
            Base::Nu(p) => write!(f, "nu:{p}")?,
            Base::Tm => f.write_str("tm")?,
        }
        for op in &self.ops {
            match op {
                Op::Subseq(a, b) => write!(f, "|subseq({a},{b})")?,
                Op::Plus(c) => write!(f, "|plus({c})")?,
                Op::Scale(c) => write!(f, "|scale({c})")?,
                Op::Add(s) => write!(f, "|add({s})")?,
                Op::Diff => f.write_str("|diff")?,
                Op::Mod(m) => write!(f, "|mod({m})")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

const BASES: &str = "one of \"toeplitz:\", \"keane:\", \"pgs:\", \"nu:\", \"tm\"";
const OPS: &str = "one of \"subseq(\", \"plus(\", \"scale(\", \"add(\", \"diff\", \"mod(\"";

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> SpecError {
        self.err_at(self.pos, message)
    }

    fn err_at(&self, offset: usize, message: impl Into<String>) -> SpecError {
        SpecError { offset, message: message.into() }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn rest_char(&self) -> char {
        self.rest().chars().next().unwrap_or(' ')
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else if self.pos == self.text.len() {
            Err(self.err(format!("expected {token:?}, found end of input")))
        } else {
            Err(self.err(format!("expected {token:?}, found {:?}", self.rest_char())))
        }
    }

    fn int(&mut self) -> Result<u64, SpecError> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected an integer"));
        }
        self.pos += len;
        self.text[start..self.pos].parse().map_err(|_| self.err_at(start, "integer too large"))
    }

    fn value(&mut self, k: u32) -> Result<u32, SpecError> {
        let start = self.pos;
        let v = self.int()?;
        if v >= k as u64 {
            return Err(self.err_at(start, format!("{v} is not in Z_{k}")));
        }
        Ok(v as u32)
    }

    fn prime(&mut self) -> Result<u64, SpecError> {
        let start = self.pos;
        let p = self.int()?;
        if !is_prime(p) {
            return Err(self.err_at(start, format!("{p} is not prime")));
        }
        Ok(p)
    }

    /// Text up to the next `|`, or `)` when nested.
    fn chunk(&mut self, nested: bool) -> (usize, &str) {
        let start = self.pos;
        let len = self.rest().find(|c| c == '|' || (nested && c == ')')).unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.text[start..self.pos])
    }

    fn lib_err(&self, start: usize, e: arithsim::Error) -> SpecError {
        match e {
            arithsim::Error::Parse { offset, message } => self.err_at(start + offset, message),
            other => self.err_at(start, other.to_string()),
        }
    }

    fn spec(&mut self, alphabet: u32, nested: bool) -> Result<SeqSpec, SpecError> {
        let g = CyclicGroup::new(alphabet).map_err(|e| self.err(e.to_string()))?;
        let base = if self.eat("toeplitz:") {
            let (start, body) = self.chunk(nested);
            Base::Toeplitz(Pattern::parse(g, body).map_err(|e| self.lib_err(start, e))?)
        } else if self.eat("keane:") {
            let (start, body) = self.chunk(nested);
            if body.is_empty() {
                return Err(self.err_at(start, "expected a block"));
            }
            Base::Keane(Block::parse(g, body).map_err(|e| self.lib_err(start, e))?)
        } else if self.eat("pgs:") {
            Base::Pgs(self.generator(g)?)
        } else if self.eat("nu:") {
            Base::Nu(self.prime()?)
        } else if self.eat("tm") {
            Base::Tm
        } else {
            return Err(self.err(format!("expected {BASES}")));
        };
        let mut k = if base == Base::Tm { 2 } else { alphabet };
        let mut ops = Vec::new();
        while self.eat("|") {
            let op = self.op(k)?;
            if let Op::Mod(m) = op {
                k = m;
            }
            ops.push(op);
        }
        Ok(SeqSpec { alphabet, base, ops })
    }

    fn generator(&mut self, g: CyclicGroup) -> Result<PrimeGenerator, SpecError> {
        let k = g.order();
        let start = self.pos;
        if self.eat("mod") {
            let p = self.prime()?;
            self.expect("{")?;
            let mut residues = vec![None; p as usize];
            loop {
                let at = self.pos;
                let r = self.int()?;
                if r == 0 || r >= p {
                    return Err(self.err_at(at, format!("residue {r} is not in 1..{}", p - 1)));
                }
                self.expect(":")?;
                let v = self.value(k)?;
                if residues[r as usize].replace(v).is_some() {
                    return Err(self.err_at(at, format!("residue {r} given twice")));
                }
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(";p:")?;
            let at_p = self.value(k)?;
            self.expect("}")?;
            let table = residues[1..]
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.ok_or_else(|| self.err_at(start, format!("no value for residue {}", i + 1))).map(|v| g.elem(v).expect("in range"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return PrimeGenerator::residue_rule(g, p, &table, g.elem(at_p).expect("in range"))
                .map_err(|e| self.err_at(start, e.to_string()));
        }
        self.expect("{")?;
        let mut entries = Vec::new();
        if !self.eat("}") {
            loop {
                let at = self.pos;
                let q = self.prime()?;
                if entries.iter().any(|&(p, _)| p == q) {
                    return Err(self.err_at(at, format!("prime {q} given twice")));
                }
                self.expect(":")?;
                entries.push((q, g.elem(self.value(k)?).expect("in range")));
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("}")?;
        }
        PrimeGenerator::finite(g, entries).map_err(|e| self.err_at(start, e.to_string()))
    }

    fn op(&mut self, k: u32) -> Result<Op, SpecError> {
        let op = if self.eat("subseq(") {
            let a = self.int()?;
            self.expect(",")?;
            let at = self.pos;
            let b = self.int()?;
            if b == 0 {
                return Err(self.err_at(at, "the step must be positive"));
            }
            Op::Subseq(a, b)
        } else if self.eat("plus(") {
            Op::Plus(self.value(k)?)
        } else if self.eat("scale(") {
            Op::Scale(self.value(k)?)
        } else if self.eat("add(") {
            Op::Add(Box::new(self.spec(k, true)?))
        } else if self.eat("diff") {
            return Ok(Op::Diff);
        } else if self.eat("mod(") {
            let at = self.pos;
            let m = self.int()?;
            if m == 0 || m > k as u64 || !(k as u64).is_multiple_of(m) {
                return Err(self.err_at(at, format!("{m} does not divide {k}")));
            }
            Op::Mod(m as u32)
        } else {
            return Err(self.err(format!("expected {OPS}")));
        };
        self.expect(")")?;
        Ok(op)
    }
}
