//! The small text grammar for basis elements:
//!
//! ```text
//! perm{a,b|c}           product of permutahedra over partition blocks
//! assoc{1<2<3|4}        product of associahedra over ordered blocks
//! orbit{(1,2):a,b,c}    orbit classes: composition, then block labels
//! poset{a<b,a<c,d}      poset from strict relations; bare labels isolated
//! ```
//!
//! A trailing `*` marks a dual basis element. Factors join with `|`,
//! whitespace is ignored, and labels are alphanumeric (plus `_`).

use std::fmt;

use crate::combinat::{Composition, LinearOrder};
use crate::error::{Error, Result};
use crate::formal::{GroundSet, Label};
use crate::hopf::{BasisElement, MonoidTag};
use crate::poset::Poset;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn try_eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn label(&mut self) -> Result<Label> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a label"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string())
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|e| self.error(format!("bad integer: {e}")))
    }

    fn comma_labels(&mut self) -> Result<Vec<Label>> {
        let mut out = vec![self.label()?];
        while self.try_eat(b',') {
            out.push(self.label()?);
        }
        Ok(out)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn parse_tag(p: &mut Parser) -> Result<MonoidTag> {
    let word = p.label()?;
    match word.as_str() {
        "perm" => Ok(MonoidTag::Perm),
        "assoc" => Ok(MonoidTag::Assoc),
        "orbit" => Ok(MonoidTag::Orbit),
        "poset" => Ok(MonoidTag::Poset),
        other => Err(p.error(format!(
            "unknown monoid {other:?}; expected perm, assoc, orbit, or poset"
        ))),
    }
}

fn parse_body(p: &mut Parser, tag: MonoidTag) -> Result<BasisElement> {
    p.eat(b'{')?;
    if p.try_eat(b'}') {
        return Ok(BasisElement::unit(tag));
    }
    let elem = match tag {
        MonoidTag::Perm => {
            let mut blocks = Vec::new();
            loop {
                blocks.push(GroundSet::new(p.comma_labels()?));
                if !p.try_eat(b'|') {
                    break;
                }
            }
            BasisElement::perm(blocks)?
        }
        MonoidTag::Assoc => {
            let mut factors = Vec::new();
            loop {
                let mut labels = vec![p.label()?];
                while p.try_eat(b'<') {
                    labels.push(p.label()?);
                }
                factors.push(LinearOrder::new(labels)?);
                if !p.try_eat(b'|') {
                    break;
                }
            }
            BasisElement::assoc(factors)?
        }
        MonoidTag::Orbit => {
            let mut factors = Vec::new();
            loop {
                p.eat(b'(')?;
                let mut parts = vec![p.integer()?];
                while p.try_eat(b',') {
                    parts.push(p.integer()?);
                }
                p.eat(b')')?;
                p.eat(b':')?;
                let labels = p.comma_labels()?;
                factors.push((GroundSet::new(labels), Composition::new(parts)?));
                if !p.try_eat(b'|') {
                    break;
                }
            }
            BasisElement::orbit(factors)?
        }
        MonoidTag::Poset => {
            let mut ground = GroundSet::empty();
            let mut relations: Vec<(Label, Label)> = Vec::new();
            loop {
                let mut labels = vec![p.label()?];
                while p.try_eat(b'<') {
                    labels.push(p.label()?);
                }
                for l in &labels {
                    ground.insert(l.clone());
                }
                for w in labels.windows(2) {
                    relations.push((w[0].clone(), w[1].clone()));
                }
                if !p.try_eat(b',') {
                    break;
                }
            }
            BasisElement::poset(Poset::from_relations(ground, &relations)?)
        }
    };
    p.eat(b'}')?;
    Ok(elem)
}

/// Parses a basis element from the text grammar.
pub fn parse_element(input: &str) -> Result<BasisElement> {
    let (elem, dual) = parse_maybe_dual(input)?;
    if dual {
        return Err(Error::Parse {
            pos: input.len(),
            msg: "unexpected dual marker '*'".into(),
        });
    }
    Ok(elem)
}

/// Parses a basis element with an optional trailing `*` dual marker.
pub fn parse_maybe_dual(input: &str) -> Result<(BasisElement, bool)> {
    let mut p = Parser::new(input);
    let tag = parse_tag(&mut p)?;
    let elem = parse_body(&mut p, tag)?;
    let dual = p.try_eat(b'*');
    if !p.at_end() {
        return Err(p.error("trailing input after element"));
    }
    Ok((elem, dual))
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Perm { blocks } => {
                write!(f, "perm{{")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{}", b.labels().join(","))?;
                }
                write!(f, "}}")
            }
            BasisElement::Assoc { factors } => {
                write!(f, "assoc{{")?;
                for (i, ell) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{}", ell.labels().join("<"))?;
                }
                write!(f, "}}")
            }
            BasisElement::Orbit { factors } => {
                write!(f, "orbit{{")?;
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    let parts: Vec<String> = factor
                        .composition
                        .parts()
                        .iter()
                        .map(|p| p.to_string())
                        .collect();
                    write!(f, "({}):{}", parts.join(","), factor.block.labels().join(","))?;
                }
                write!(f, "}}")
            }
            BasisElement::Poset { poset } => write!(f, "{poset}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        for text in [
            "perm{a,b|c}",
            "perm{}",
            "assoc{1<2<3}",
            "assoc{1<2|3}",
            "orbit{(1,2):a,b,c}",
            "orbit{(1):d|(2,1):a,b,c}",
            "poset{a<b,a<c}",
            "poset{a<b,c}",
        ] {
            let elem = parse_element(text).unwrap();
            let shown = elem.to_string();
            assert_eq!(parse_element(&shown).unwrap(), elem, "{text} -> {shown}");
        }
    }

    #[test]
    fn parse_examples_structure() {
        let e = parse_element("perm{a,b|c}").unwrap();
        assert_eq!(e.factor_count(), 2);
        assert_eq!(e.ground(), GroundSet::new(["a", "b", "c"]));

        let e = parse_element("assoc{2<1}").unwrap();
        assert_eq!(
            e,
            BasisElement::assoc_atom(LinearOrder::new(["2", "1"]).unwrap()).unwrap()
        );

        // chained poset relations
        let e = parse_element("poset{a<b<c}").unwrap();
        if let BasisElement::Poset { poset } = &e {
            assert!(poset.leq("a", "c"));
        } else {
            panic!("expected poset");
        }

        // orbit point classes normalize
        let e = parse_element("orbit{(2):a,b}").unwrap();
        assert_eq!(e.factor_count(), 2);
    }

    #[test]
    fn dual_marker() {
        let (e, dual) = parse_maybe_dual("perm{a,b}*").unwrap();
        assert!(dual);
        assert_eq!(e, BasisElement::perm_atom(GroundSet::new(["a", "b"])).unwrap());
        let (_, dual) = parse_maybe_dual("perm{a,b}").unwrap();
        assert!(!dual);
        assert!(parse_element("perm{a,b}*").is_err());
    }

    #[test]
    fn whitespace_tolerated() {
        let e = parse_element("  orbit { ( 1 , 2 ) : a , b , c } ").unwrap();
        assert_eq!(e.ground().len(), 3);
    }

    #[test]
    fn parse_errors_carry_positions() {
        for bad in [
            "perm{a,b",
            "perm{a,,b}",
            "assoc{1<<2}",
            "orbit{(0):a}",
            "orbit{(3):a,b}",
            "poset{a<a}",
            "squig{a}",
            "perm{a}{",
            "poset{a<b,b<a}",
        ] {
            assert!(parse_maybe_dual(bad).is_err(), "{bad} should fail");
        }
        match parse_element("perm{a,b").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 8),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn json_and_text_agree() {
        let e = parse_element("orbit{(1,2):a,b,c|(1):d}").unwrap();
        let json = serde_json::to_string(&e).unwrap();
        let back: BasisElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert_eq!(parse_element(&back.to_string()).unwrap(), e);
    }
}
