//! Parser for group specifications.
//!
//! ```text
//! spec    := factor ('x' factor)*
//! factor  := 'C' n | 'D' m | 'Q8' | 'S' n | 'V4' | 'W(' spec ',' k ')' | '(' spec ')'
//! ```
//!
//! `D<m>` is dihedral of order `m`. Matching is case-insensitive.

use crate::error::{cap_check, Error, Result};
use crate::group::{self, FiniteGroup};
use crate::limits::Limits;

pub fn parse_group(input: &str) -> Result<FiniteGroup> {
    parse_group_with(input, &Limits::default())
}

pub fn parse_group_with(input: &str, limits: &Limits) -> Result<FiniteGroup> {
    let text: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_ascii_lowercase()).collect();
    let mut p = Parser { text: &text, pos: 0, input, limits };
    let g = p.product()?;
    if p.pos != text.len() {
        return Err(p.error(format!("unexpected `{}`", text[p.pos])));
    }
    Ok(g)
}

struct Parser<'a> {
    text: &'a [char],
    pos: usize,
    input: &'a str,
    limits: &'a Limits,
}

impl Parser<'_> {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse { input: self.input.to_string(), reason: reason.into() }
    }

    fn peek(&self) -> Option<char> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}` at position {}", self.pos)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected a number at position {start}")));
        }
        let s: String = self.text[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error(format!("number `{s}` is too large")))
    }

    fn checked(&self, g: FiniteGroup) -> Result<FiniteGroup> {
        cap_check("group order", g.order() as u128, self.limits.max_group_order as u128)?;
        Ok(g)
    }

    fn product(&mut self) -> Result<FiniteGroup> {
        let mut g = self.factor()?;
        while self.peek() == Some('x') {
            self.pos += 1;
            let h = self.factor()?;
            cap_check("group order", g.order() as u128 * h.order() as u128, self.limits.max_group_order as u128)?;
            g = group::direct_product(&g, &h)?;
        }
        Ok(g)
    }

    fn factor(&mut self) -> Result<FiniteGroup> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        let g = match c {
            'c' => {
                let n = self.number()?;
                cap_check("group order", n as u128, self.limits.max_group_order as u128)?;
                group::cyclic(n)?
            }
            'd' => {
                let m = self.number()?;
                cap_check("group order", m as u128, self.limits.max_group_order as u128)?;
                group::dihedral(m)?
            }
            's' => group::symmetric(self.number()?)?,
            'q' => {
                if self.number()? != 8 {
                    return Err(self.error("only Q8 is supported"));
                }
                group::quaternion()?
            }
            'v' => {
                if self.number()? != 4 {
                    return Err(self.error("only V4 is supported"));
                }
                let c2 = group::cyclic(2)?;
                group::direct_product(&c2, &c2)?.with_name("V4")
            }
            'w' => {
                self.expect('(')?;
                let base = self.product()?;
                self.expect(',')?;
                let k = self.number()?;
                self.expect(')')?;
                group::wreath_with_cap(&base, k, self.limits.max_wreath_order)?
            }
            '(' => {
                let g = self.product()?;
                self.expect(')')?;
                g
            }
            other => return Err(self.error(format!("unknown group symbol `{other}`"))),
        };
        self.checked(g)
    }
}
