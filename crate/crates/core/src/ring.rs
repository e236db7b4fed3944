//! Exact arithmetic in Z[x_e], the ring housing edge weights and matching
//! generating functions.
//!
//! Elements are sparse multivariate polynomials with arbitrary-precision
//! integer coefficients. Indeterminate ids are edge ids; integer weights are
//! degree-0 elements. Terms are kept in graded-lex order so serialization is
//! canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Indeterminate identifier; coincides with the edge id it stands for.
pub type IndetId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("assignment does not cover indeterminate x{0}")]
    MissingIndeterminate(IndetId),
    #[error("cannot parse ring element: {0}")]
    Parse(String),
}

/// A power product, stored as a strictly id-sorted list of (id, exponent)
/// pairs with every exponent positive. The empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(IndetId, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn variable(id: IndetId) -> Self {
        Monomial(vec![(id, 1)])
    }

    /// Builds from arbitrary (id, exp) pairs; merges duplicates, drops
    /// zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (IndetId, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<IndetId, u32> = BTreeMap::new();
        for (id, e) in pairs {
            if e > 0 {
                *map.entry(id).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(IndetId, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

// Graded lex: degree first; at equal degree the monomial holding more of the
// lowest-id variable is the larger one.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                for (&(ia, ea), &(ib, eb)) in self.0.iter().zip(other.0.iter()) {
                    match ia.cmp(&ib) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        },
                    }
                }
                // Equal prefixes at equal degree force equal lengths.
                self.0.len().cmp(&other.0.len())
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of Z[x_e]: a canonical term map with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingElem {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        RingElem { terms }
    }

    /// The indeterminate x_id.
    pub fn variable(id: IndetId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(id), BigInt::one());
        RingElem { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut out = RingElem::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Every indeterminate id occurring in the element.
    pub fn indeterminates(&self) -> impl Iterator<Item = IndetId> + '_ {
        let mut seen: Vec<IndetId> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(id, _)| id))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Substitutes integers for all indeterminates; a ring homomorphism into Z.
    pub fn eval(&self, assignment: &IntegerAssignment) -> Result<BigInt, RingError> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(id, exp) in m.factors() {
                let v = assignment
                    .get(id)
                    .ok_or(RingError::MissingIndeterminate(id))?;
                term *= v.pow(exp);
            }
            total += term;
        }
        Ok(total)
    }

    /// Parses the textual form produced by `Display`; tolerant about
    /// whitespace and omitted `*` separators.
    pub fn parse(input: &str) -> Result<RingElem, RingError> {
        Parser::new(input).parse()
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                for (k, &(id, exp)) in m.factors().iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    if exp == 1 {
                        write!(f, "x{id}")?;
                    } else {
                        write!(f, "x{id}^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Total integer substitution for the indeterminates of the elements it is
/// applied to.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntegerAssignment {
    values: BTreeMap<IndetId, BigInt>,
}

impl IntegerAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<T: Into<BigInt>, I: IntoIterator<Item = (IndetId, T)>>(pairs: I) -> Self {
        IntegerAssignment {
            values: pairs.into_iter().map(|(id, v)| (id, v.into())).collect(),
        }
    }

    pub fn set<T: Into<BigInt>>(&mut self, id: IndetId, value: T) {
        self.values.insert(id, value.into());
    }

    pub fn get(&self, id: IndetId) -> Option<&BigInt> {
        self.values.get(&id)
    }
}

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

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a [u8]> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn err(&self, msg: &str) -> RingError {
        RingError::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn parse(mut self) -> Result<RingElem, RingError> {
        let mut out = RingElem::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty input"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
                None => break,
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), RingError> {
        self.skip_ws();
        let mut coeff: Option<BigInt> = None;
        if let Some(d) = self.digits() {
            // digits are ASCII by construction
            let s = std::str::from_utf8(d).unwrap();
            coeff = Some(s.parse().unwrap());
        }
        let mut factors: Vec<(IndetId, u32)> = Vec::new();
        loop {
            self.skip_ws();
            let mark = self.pos;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            }
            if self.peek() != Some(b'x') {
                self.pos = mark;
                break;
            }
            self.pos += 1;
            let id: IndetId = match self.digits() {
                Some(d) => std::str::from_utf8(d)
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("indeterminate id out of range"))?,
                None => return Err(self.err("expected indeterminate id after 'x'")),
            };
            let exp: u32 = if self.peek() == Some(b'^') {
                self.pos += 1;
                match self.digits() {
                    Some(d) => std::str::from_utf8(d)
                        .unwrap()
                        .parse()
                        .map_err(|_| self.err("exponent out of range"))?,
                    None => return Err(self.err("expected exponent after '^'")),
                }
            } else {
                1
            };
            factors.push((id, exp));
        }
        if coeff.is_none() && factors.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok((
            Monomial::from_pairs(factors),
            coeff.unwrap_or_else(BigInt::one),
        ))
    }
}
