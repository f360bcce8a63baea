//! Parsers for the CLI input languages: group specifications, generating
//! vectors with words in named generators, and fraction lists.

use isofib::actions::GeneratingVector;
use isofib::groups::{abelian, cyclic, from_permutations, psl2, registry, FiniteGroup, Group, Perm};
use isofib::rational::{parse_frac, Rat};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("bad group spec {0:?}; expected cyclic:N, abelian:N1xN2x.., psl2:P, registry:ORDER,LABEL or perm:DEGREE:CYCLES;CYCLES")]
    BadGroupSpec(String),
    #[error("group construction failed: {0}")]
    Group(String),
    #[error("bad generating vector {0:?}; expected \"genus=Q; w1, w2, ... [| h1, ...]\"")]
    BadVector(String),
    #[error("bad word {0:?}: {1}")]
    BadWord(String, String),
    #[error("bad fraction {0:?}; expected p/q")]
    BadFraction(String),
}

/// Parses the group mini-language.
pub fn parse_group(spec: &str) -> Result<Group, ParseError> {
    let bad = || ParseError::BadGroupSpec(spec.to_string());
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let group: FiniteGroup = match kind {
        "cyclic" => {
            let n: usize = rest.parse().map_err(|_| bad())?;
            if n < 1 {
                return Err(bad());
            }
            cyclic(n)
        }
        "abelian" => {
            let orders = rest
                .split('x')
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if orders.is_empty() || orders.iter().any(|&o| o < 2) {
                return Err(bad());
            }
            abelian(&orders)
        }
        "psl2" => {
            let p: usize = rest.parse().map_err(|_| bad())?;
            psl2(p).map_err(|e| ParseError::Group(e.to_string()))?
        }
        "registry" => {
            let (order, label) = rest.split_once(',').ok_or_else(bad)?;
            let order: usize = order.parse().map_err(|_| bad())?;
            let label: usize = label.parse().map_err(|_| bad())?;
            registry(order, label).map_err(|e| ParseError::Group(e.to_string()))?
        }
        "perm" => {
            let (degree, gens) = rest.split_once(':').ok_or_else(bad)?;
            let degree: usize = degree.parse().map_err(|_| bad())?;
            let perms = gens
                .split(';')
                .map(|c| parse_cycles(degree, c))
                .collect::<Result<Vec<_>, _>>()?;
            from_permutations(degree, &perms, &format!("perm<{rest}>"))
                .map_err(|e| ParseError::Group(e.to_string()))?
        }
        _ => return Err(bad()),
    };
    Ok(Arc::new(group))
}

/// One permutation in 1-based cycle notation, e.g. "(1,2,3)(4,5)".
fn parse_cycles(degree: usize, text: &str) -> Result<Perm, ParseError> {
    let bad = || ParseError::BadGroupSpec(text.to_string());
    let mut image: Vec<u16> = (0..degree as u16).collect();
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(bad)?;
        let (body, tail) = inner;
        let cycle = body
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if cycle.iter().any(|&p| p < 1 || p > degree) {
            return Err(bad());
        }
        for w in cycle.windows(2) {
            image[w[0] - 1] = (w[1] - 1) as u16;
        }
        if cycle.len() > 1 {
            image[cycle[cycle.len() - 1] - 1] = (cycle[0] - 1) as u16;
        }
        rest = tail;
    }
    let p = Perm(image);
    if !p.is_valid() {
        return Err(bad());
    }
    Ok(p)
}

/// Parses "genus=Q; w1, w2, ... [| h1, ...]" over the group's named
/// generators.
pub fn parse_vector(group: &Group, text: &str) -> Result<GeneratingVector, ParseError> {
    let bad = || ParseError::BadVector(text.to_string());
    let (head, body) = text.split_once(';').ok_or_else(bad)?;
    let genus: usize = head
        .trim()
        .strip_prefix("genus=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(bad)?;
    let (branch_part, handle_part) = match body.split_once('|') {
        Some((b, h)) => (b, Some(h)),
        None => (body, None),
    };
    let words = |part: &str| -> Result<Vec<usize>, ParseError> {
        part.split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| parse_word(group, w))
            .collect()
    };
    let branch = words(branch_part)?;
    let handles = match handle_part {
        Some(h) => {
            let h = words(h)?;
            if h.len() != 2 * genus {
                return Err(bad());
            }
            h
        }
        None if genus == 0 => vec![],
        None => return Err(bad()),
    };
    Ok(GeneratingVector::new(group.clone(), genus, branch, handles))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(i64),
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(word: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let chars: Vec<char> = word.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '\'' || chars[i] == '_')
                {
                    i += 1;
                }
                toks.push(Tok::Name(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_digit() || c == '-' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                toks.push(Tok::Int(text.parse().map_err(|_| format!("bad integer {text:?}"))?));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(toks)
}

/// Evaluates a word like "a*b^-1" or "(x*y)^2" to a group element; the
/// literal 1 denotes the identity.
pub fn parse_word(group: &FiniteGroup, word: &str) -> Result<usize, ParseError> {
    let toks =
        tokenize(word).map_err(|m| ParseError::BadWord(word.to_string(), m))?;
    let mut p = WordParser {
        group,
        toks: &toks,
        pos: 0,
    };
    let v = p
        .word()
        .map_err(|m| ParseError::BadWord(word.to_string(), m))?;
    if p.pos != toks.len() {
        return Err(ParseError::BadWord(
            word.to_string(),
            "trailing input".into(),
        ));
    }
    Ok(v)
}

struct WordParser<'a> {
    group: &'a FiniteGroup,
    toks: &'a [Tok],
    pos: usize,
}

impl WordParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn word(&mut self) -> Result<usize, String> {
        let mut v = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let w = self.factor()?;
            v = self.group.mul(v, w);
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<usize, String> {
        let a = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(&Tok::Int(e)) => {
                    self.pos += 1;
                    Ok(self.group.pow(a, e))
                }
                _ => Err("expected an integer exponent after ^".into()),
            }
        } else {
            Ok(a)
        }
    }

    fn atom(&mut self) -> Result<usize, String> {
        match self.toks.get(self.pos) {
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.word()?;
                if self.toks.get(self.pos) != Some(&Tok::RParen) {
                    return Err("missing closing parenthesis".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                let names = self.group.generator_names();
                match names.iter().position(|g| g == n) {
                    Some(idx) => Ok(self.group.generators()[idx]),
                    None => Err(format!(
                        "unknown generator {n:?}; available: {}",
                        names.join(", ")
                    )),
                }
            }
            Some(&Tok::Int(1)) => {
                self.pos += 1;
                Ok(self.group.identity())
            }
            other => Err(format!("expected a generator, 1, or (...), got {other:?}")),
        }
    }
}

/// Parses a comma-delimited fraction list like "1/2,1/3,1/6".
pub fn parse_fractions(parts: &[String]) -> Result<Vec<Rat>, ParseError> {
    parts
        .iter()
        .map(|p| parse_frac(p).ok_or_else(|| ParseError::BadFraction(p.clone())))
        .collect()
}
