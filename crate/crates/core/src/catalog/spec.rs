use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::solubility::is_prime;

/// Largest `q` accepted in `PSL(2,q)` and `SL(2,q)`.
pub const MAX_FIELD_PRIME: u32 = 23;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Psl2(u32),
    Sl2(u32),
    File(String),
}

/// A direct product of atoms, e.g. `A5 x C2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub factors: Vec<Atom>,
}

impl GroupSpec {
    pub fn atom(atom: Atom) -> Self {
        GroupSpec {
            factors: vec![atom],
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).spec()
    }

    /// True when the factors are exactly `names` up to order, comparing the
    /// printed forms (`"A5"`, `"C2"`).
    pub fn is_product_of(&self, names: &[&str]) -> bool {
        let mut mine: Vec<String> = self.factors.iter().map(|a| a.to_string()).collect();
        let mut theirs: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        mine.sort();
        theirs.sort();
        mine == theirs
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Alternating(n) => write!(f, "A{n}"),
            Atom::Symmetric(n) => write!(f, "S{n}"),
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Psl2(q) => write!(f, "PSL(2,{q})"),
            Atom::Sl2(q) => write!(f, "SL(2,{q})"),
            Atom::File(path) => write!(f, "file:{path}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat_ci(&mut self, word: &str) -> bool {
        let rest = self.rest();
        if rest.len() >= word.len() && rest[..word.len()].eq_ignore_ascii_case(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.error(self.pos, format!("expected `{c}`"))
        }
    }

    fn number(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return self.error(start, "expected a number");
        }
        self.pos += digits;
        match self.text[start..self.pos].parse() {
            Ok(n) => Ok((n, start)),
            Err(_) => self.error(start, "number too large"),
        }
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut factors = vec![self.atom()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('x') | Some('X') | Some('×') => {
                    self.pos += self.peek().expect("peeked").len_utf8();
                    factors.push(self.atom()?);
                }
                Some(_) => return self.error(self.pos, "expected `x` or end of input"),
            }
        }
        Ok(GroupSpec { factors })
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        let start = self.pos;
        if self.peek().is_none() {
            return self.error(start, "expected a group atom");
        }
        if self.eat_ci("file:") {
            let path: String = self.rest().chars().take_while(|c| !c.is_whitespace()).collect();
            if path.is_empty() {
                return self.error(self.pos, "empty file path");
            }
            self.pos += path.len();
            return Ok(Atom::File(path));
        }
        if self.eat_ci("PSL") {
            let q = self.field_prime()?;
            return Ok(Atom::Psl2(q));
        }
        if self.eat_ci("SL") {
            let q = self.field_prime()?;
            return Ok(Atom::Sl2(q));
        }
        let letter = self.peek().expect("nonempty").to_ascii_uppercase();
        if !matches!(letter, 'A' | 'S' | 'C' | 'D') {
            return self.error(start, "unknown group atom");
        }
        self.pos += 1;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.error(self.pos, "expected a number");
        }
        let (n, at) = self.number()?;
        if n == 0 {
            return self.error(at, "n must be at least 1");
        }
        Ok(match letter {
            'A' => Atom::Alternating(n),
            'S' => Atom::Symmetric(n),
            'C' => Atom::Cyclic(n),
            _ => {
                if n < 4 || n % 2 != 0 {
                    return self.error(at, "dihedral order must be even and at least 4");
                }
                Atom::Dihedral(n)
            }
        })
    }

    /// `(2, q)` with `q` an odd prime up to [`MAX_FIELD_PRIME`].
    fn field_prime(&mut self) -> Result<u32> {
        self.expect('(')?;
        let (dim, at) = self.number()?;
        if dim != 2 {
            return Err(Error::Unsupported(format!(
                "only 2-dimensional linear groups are supported (found {dim} at position {at})"
            )));
        }
        self.expect(',')?;
        let (q, at) = self.number()?;
        self.expect(')')?;
        if q % 2 == 0 || q > MAX_FIELD_PRIME as usize || !is_prime(q as u64) {
            return Err(Error::Unsupported(format!(
                "q = {q} at position {at}: q must be an odd prime at most {MAX_FIELD_PRIME}"
            )));
        }
        Ok(q as u32)
    }
}
