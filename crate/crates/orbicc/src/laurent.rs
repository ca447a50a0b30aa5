//! Multivariate Laurent polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible in the Laurent ring")]
    NotDivisible,
    #[error("variable map sends {index} outside 0..{bound}")]
    VarMapOutOfRange { index: usize, bound: usize },
    #[error("variable map has length {got}, expected {expected}")]
    VarMapLength { got: usize, expected: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Element of `Z[x_1^{±1}, ..., x_n^{±1}]`.
///
/// Terms are kept in a `BTreeMap` keyed by dense exponent vectors, so the
/// iteration order is the lexicographic order on exponents and zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The monomial `x^exps` with coefficient 1.
    pub fn monomial(exps: &[i64]) -> Self {
        let mut p = Self::zero(exps.len());
        p.terms.insert(exps.to_vec(), BigInt::one());
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(&e)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, collecting like terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, Vec<i64>)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// True when every coefficient is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// If the polynomial is a single monomial with coefficient 1, its exponents.
    pub fn as_monomial(&self) -> Option<&[i64]> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && c.is_one() => Some(e),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(LaurentError::VarMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// Componentwise minimum of the exponent vectors (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Exact quotient `f / g` in the Laurent ring.
    ///
    /// Both operands are shifted to have nonnegative exponents with no monomial
    /// factor, then divided by multivariate division in lex order; the quotient
    /// exists iff the remainder vanishes.
    pub fn exact_div(&self, g: &Self) -> Result<Self, LaurentError> {
        self.check_vars(g)?;
        if g.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mf = self.min_exponents();
        let mg = g.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut r = self.shift(&neg(&mf));
        let gp = g.shift(&neg(&mg));
        let (lg_e, lg_c) = gp.terms.iter().next_back().expect("nonzero divisor");
        let mut q = Self::zero(self.nvars);
        while let Some((lr_e, lr_c)) = r.terms.iter().next_back() {
            if lr_e.iter().zip(lg_e).any(|(a, b)| a < b) {
                return Err(LaurentError::NotDivisible);
            }
            let (c, rem) = lr_c.div_rem(lg_c);
            if !rem.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let e: Vec<i64> = lr_e.iter().zip(lg_e).map(|(a, b)| a - b).collect();
            let t = LaurentPoly::from_terms(self.nvars, [(c, e)]);
            r = &r - &(&t * &gp);
            q = &q + &t;
        }
        let back: Vec<i64> = mf.iter().zip(&mg).map(|(a, b)| a - b).collect();
        Ok(q.shift(&back))
    }

    /// Substitutes `x_i -> z_{var_map[i]}` in a ring with `new_nvars` variables.
    pub fn project(&self, var_map: &[usize], new_nvars: usize) -> Result<Self, LaurentError> {
        if var_map.len() != self.nvars {
            return Err(LaurentError::VarMapLength { got: var_map.len(), expected: self.nvars });
        }
        if let Some(&index) = var_map.iter().find(|&&j| j >= new_nvars) {
            return Err(LaurentError::VarMapOutOfRange { index, bound: new_nvars });
        }
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_nvars];
            for (i, x) in e.iter().enumerate() {
                ne[var_map[i]] += x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            vars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| TermJson { c: c.to_string(), e: e.clone() }).collect(),
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self, LaurentError> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.e.len() != j.vars {
                return Err(LaurentError::Parse(format!(
                    "exponent vector of length {} in a {}-variable polynomial",
                    t.e.len(),
                    j.vars
                )));
            }
            let c = BigInt::from_str(&t.c).map_err(|_| LaurentError::Parse(format!("bad coefficient {:?}", t.c)))?;
            terms.push((c, t.e.clone()));
        }
        Ok(Self::from_terms(j.vars, terms))
    }

    /// Parses the text form with variables named `<letters><1-based index>`,
    /// e.g. `x1^2*x3^-1 + 2*x2 - 1`.
    pub fn parse(nvars: usize, s: &str) -> Result<Self, LaurentError> {
        let err = |m: &str| LaurentError::Parse(format!("{m} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        // split into signed terms; a sign right after '^' belongs to an exponent
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                pieces.push((ch == '-', String::new()));
            } else {
                if pieces.is_empty() {
                    pieces.push((false, String::new()));
                }
                pieces.last_mut().expect("nonempty").1.push(ch);
            }
            prev = Some(ch);
        }
        let mut out = Self::zero(nvars);
        for (negative, term) in &pieces {
            let sign = if *negative { -BigInt::one() } else { BigInt::one() };
            let mut coeff = sign;
            let mut e = vec![0i64; nvars];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    let c = BigInt::from_str(factor).map_err(|_| err("bad coefficient"))?;
                    coeff *= c;
                    continue;
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, x)) => (b, x.parse::<i64>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let digits = base.trim_start_matches(|c: char| c.is_ascii_alphabetic());
                if digits.len() == base.len() {
                    return Err(err("variable without a name"));
                }
                let idx: usize = digits.parse().map_err(|_| err("bad variable index"))?;
                if idx == 0 || idx > nvars {
                    return Err(err("variable index out of range"));
                }
                e[idx - 1] += exp;
            }
            out.add_term(e, coeff);
        }
        Ok(out)
    }

    /// Text form using the variable prefix `name` (e.g. `"x"`).
    pub fn to_text(&self, name: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| if *x == 1 { format!("{name}{}", i + 1) } else { format!("{name}{}^{x}", i + 1) })
                .collect();
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{abs}*{}", mono.join("*"))
            };
            match (k, c.is_negative()) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

/// Serialized form: `{"vars": n, "terms": [{"c": "<decimal>", "e": [..]}, ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<i64>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        LaurentPoly::from_json(&j).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("operands live in the same ring")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}
