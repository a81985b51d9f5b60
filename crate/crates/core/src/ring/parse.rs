//! Recursive-descent parser for ring expressions.
//!
//! ```text
//! ring  := local ( "x" local )*
//! local := "Z/" INT | "GF(" INT ")" | "GF(" INT ")[t]/t^" INT
//!        | "GF(" INT ")[x,y]/(x2,y2)" | "Z4[x]/(x2,2x)"
//! ```
//!
//! Whitespace is ignored everywhere. Error positions are byte offsets into
//! the original text.

use super::{LocalRingSpec, PrimePower, RingDescriptor};
use crate::error::{Error, Result};

struct Cursor<'a> {
    /// Non-whitespace characters paired with their byte offset in the input.
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, pos: 0, src }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(o, _)| o)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek_str(&self, lit: &str) -> bool {
        let mut i = self.pos;
        for c in lit.chars() {
            match self.chars.get(i) {
                Some(&(_, d)) if d == c => i += 1,
                _ => return false,
            }
        }
        true
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.peek_str(lit) {
            self.pos += lit.chars().count();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{lit}`")))
        }
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.offset();
        let mut v: u64 = 0;
        let mut digits = 0;
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            let Some(d) = c.to_digit(10) else { break };
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(Error::Syntax { pos: start, msg: "integer overflow".into() })?;
            digits += 1;
            self.pos += 1;
        }
        if digits == 0 {
            return Err(self.syntax("expected an integer".into()));
        }
        Ok(v)
    }

    fn syntax(&self, msg: String) -> Error {
        Error::Syntax { pos: self.offset(), msg }
    }

    /// Text of the unrecognised family tag, up to the next separator.
    fn tag(&self) -> String {
        self.chars[self.pos..]
            .iter()
            .map(|&(_, c)| c)
            .take_while(|c| !matches!(c, '(' | '[' | '/' | 'x'))
            .collect()
    }
}

/// Factorises `n` as `p^k`, or fails if `n` has two distinct prime factors.
pub fn prime_power(n: u64) -> Result<PrimePower> {
    if n < 2 {
        return Err(Error::NotPrimePower(n));
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let (mut m, mut k) = (n, 0u32);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(Error::NotPrimePower(n));
    }
    Ok(PrimePower { p, k })
}

fn local(cur: &mut Cursor<'_>) -> Result<LocalRingSpec> {
    if cur.eat("Z4[x]/(x2,2x)") {
        return Ok(LocalRingSpec::FourNil);
    }
    if cur.eat("Z/") {
        let n = cur.int()?;
        return Ok(LocalRingSpec::ZMod(prime_power(n)?));
    }
    if cur.eat("GF(") {
        let q = cur.int()?;
        cur.expect(")")?;
        let q = prime_power(q)?;
        if q.k > 4 {
            return Err(Error::UnsupportedFamily(format!(
                "GF({}) has extension degree {} > 4",
                q.value(),
                q.k
            )));
        }
        if cur.eat("[t]/t^") {
            let k = cur.int()?;
            if k == 0 || k > u32::MAX as u64 {
                return Err(cur.syntax("chain length must be positive".into()));
            }
            return Ok(LocalRingSpec::ChainRing(q, k as u32));
        }
        if cur.eat("[x,y]/(x2,y2)") {
            return Ok(LocalRingSpec::BiNil(q));
        }
        if cur.peek_str("[") {
            return Err(Error::UnsupportedFamily(format!("GF({})[...] quotient", q.value())));
        }
        return Ok(LocalRingSpec::GaloisField(q));
    }
    if cur.at_end() {
        return Err(cur.syntax("expected a local ring".into()));
    }
    let tag = cur.tag();
    if tag.is_empty() {
        Err(cur.syntax("expected a local ring".into()))
    } else {
        Err(Error::UnsupportedFamily(tag))
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingDescriptor> {
    let mut cur = Cursor::new(text);
    let mut factors = vec![local(&mut cur)?];
    while !cur.at_end() {
        if !cur.eat("x") {
            return Err(cur.syntax("expected `x` between factors".into()));
        }
        factors.push(local(&mut cur)?);
    }
    Ok(RingDescriptor { factors })
}
