//! Parsing and canonical printing of ring descriptors such as `Z6[x]/(x^2)` or `Z2 * Z3`.

use std::fmt;

use super::FinRingError;

/// One local factor `Z_n` or `Z_n[x]/(f)` of a descriptor.
///
/// `poly` holds the coefficients of the monic modulus from the constant term upwards, already
/// reduced mod `modulus`; its last entry is always 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalFactor {
    pub modulus: u64,
    pub poly: Option<Vec<u64>>,
}

impl LocalFactor {
    /// Number of coefficients an element carries (1 for `Z_n`).
    pub fn degree(&self) -> usize {
        self.poly.as_ref().map_or(1, |p| p.len() - 1)
    }

    fn sort_key(&self) -> (u64, usize, Vec<u64>) {
        let coeffs = self.poly.clone().unwrap_or_default();
        (self.modulus, self.degree(), coeffs.into_iter().rev().collect())
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.poly {
            None => write!(f, "Z{}", self.modulus),
            Some(p) => write!(f, "Z{}[x]/({})", self.modulus, format_poly(p)),
        }
    }
}

/// Formats coefficients (constant term first) as `3x^2+x+5`; the zero polynomial prints as `0`.
pub fn format_poly(coeffs: &[u64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (k, c) {
            (0, _) => out.push_str(&c.to_string()),
            (1, 1) => out.push('x'),
            (1, _) => out.push_str(&format!("{c}x")),
            (_, 1) => out.push_str(&format!("x^{k}")),
            _ => out.push_str(&format!("{c}x^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical descriptor of a product of local factors.
pub fn format_descriptor(factors: &[LocalFactor]) -> String {
    factors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Parses a descriptor into its local factors, sorted canonically.
pub fn parse_factors(spec: &str) -> Result<Vec<LocalFactor>, FinRingError> {
    let mut p = Parser::new(spec);
    let mut factors = vec![p.local()?];
    while p.eat('*') {
        factors.push(p.local()?);
    }
    if let Some((pos, c)) = p.peek_full() {
        return Err(p.error_at(pos, format!("unexpected character '{c}'")));
    }
    factors.sort_by_key(LocalFactor::sort_key);
    Ok(factors)
}

/// Parses a polynomial over `Z_modulus` (used for element literals too). Returns coefficients
/// reduced mod `modulus`, constant term first, with trailing zeros trimmed.
pub fn parse_poly_mod(text: &str, modulus: u64) -> Result<Vec<u64>, FinRingError> {
    let mut p = Parser::new(text);
    let (terms, _) = p.poly()?;
    if let Some((pos, c)) = p.peek_full() {
        return Err(p.error_at(pos, format!("unexpected character '{c}'")));
    }
    let mut coeffs = reduce_terms(&terms, modulus);
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn reduce_terms(terms: &[(i128, usize)], modulus: u64) -> Vec<u64> {
    let top = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut acc = vec![0i128; top + 1];
    for &(c, k) in terms {
        acc[k] += c;
    }
    acc.into_iter()
        .map(|c| c.rem_euclid(modulus as i128) as u64)
        .collect()
}

struct Parser {
    // Non-whitespace characters with their byte offsets in the original input.
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            at: 0,
            len: text.len(),
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn peek_full(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error_at(&self, pos: usize, message: String) -> FinRingError {
        FinRingError::Syntax { pos, message }
    }

    fn expect(&mut self, c: char) -> Result<(), FinRingError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("'{f}'"));
            Err(self.error_at(self.pos(), format!("expected '{c}', found {found}")))
        }
    }

    fn number(&mut self) -> Result<u64, FinRingError> {
        let start = self.pos();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return Err(self.error_at(start, "expected a number".into()));
        }
        digits
            .parse()
            .map_err(|_| self.error_at(start, "number too large".into()))
    }

    fn local(&mut self) -> Result<LocalFactor, FinRingError> {
        self.expect('Z')?;
        let npos = self.pos();
        let modulus = self.number()?;
        if modulus < 2 {
            return Err(self.error_at(npos, "modulus must be at least 2".into()));
        }
        if !self.eat('[') {
            return Ok(LocalFactor { modulus, poly: None });
        }
        self.expect('x')?;
        self.expect(']')?;
        self.expect('/')?;
        self.expect('(')?;
        let ppos = self.pos();
        let (terms, leading) = self.poly()?;
        self.expect(')')?;
        let Some((lead_coeff, degree)) = leading else {
            return Err(self.error_at(ppos, "modulus polynomial is zero".into()));
        };
        if degree == 0 {
            return Err(self.error_at(ppos, "modulus polynomial must have degree at least 1".into()));
        }
        if lead_coeff.rem_euclid(modulus as i128) != 1 {
            return Err(FinRingError::NonMonic {
                pos: ppos,
                leading: lead_coeff,
            });
        }
        let mut coeffs = reduce_terms(&terms, modulus);
        coeffs.truncate(degree + 1);
        Ok(LocalFactor {
            modulus,
            poly: Some(coeffs),
        })
    }

    /// Returns the signed terms and the leading (coefficient, degree) among nonzero terms.
    #[allow(clippy::type_complexity)]
    fn poly(&mut self) -> Result<(Vec<(i128, usize)>, Option<(i128, usize)>), FinRingError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (c, k) = self.term()?;
            terms.push((sign * c, k));
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        let mut merged: Vec<(i128, usize)> = Vec::new();
        for &(c, k) in &terms {
            match merged.iter_mut().find(|t| t.1 == k) {
                Some(t) => t.0 += c,
                None => merged.push((c, k)),
            }
        }
        let leading = merged
            .iter()
            .filter(|t| t.0 != 0)
            .max_by_key(|t| t.1)
            .copied();
        Ok((terms, leading))
    }

    fn term(&mut self) -> Result<(i128, usize), FinRingError> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.number()? as i128;
            if !self.eat('*') && self.peek() != Some('x') {
                return Ok((c, 0));
            }
            c
        } else {
            1
        };
        self.expect('x')?;
        let power = if self.eat('^') {
            let ppos = self.pos();
            let k = self.number()?;
            usize::try_from(k)
                .ok()
                .filter(|&k| k <= 64)
                .ok_or_else(|| self.error_at(ppos, "exponent too large".into()))?
        } else {
            1
        };
        Ok((coeff, power))
    }
}
