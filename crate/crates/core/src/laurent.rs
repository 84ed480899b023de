//! Sparse multivariate Laurent polynomials with big-integer coefficients,
//! quantum integers, and the genericity test for loop parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("arity mismatch: {0} variables vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("exponent overflow")]
    Overflow,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("substitution needs non-negative exponents, found {0}")]
    NegativeExponent(i64),
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointSize { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    BadParam(String),
}

/// Which family of variables a polynomial lives in: the `t_j`, or the loop
/// parameters `a_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Var {
    T,
    A,
}

impl Var {
    fn letter(self) -> char {
        match self {
            Var::T => 't',
            Var::A => 'a',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Invariant: no stored coefficient is zero, every exponent vector has
/// length `arity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    arity: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var, arity: usize) -> Self {
        LaurentPoly {
            var,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(var: Var, arity: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(var, arity, vec![0; arity], c)
    }

    pub fn one(var: Var, arity: usize) -> Self {
        Self::constant(var, arity, 1)
    }

    /// `c * x^exps`. Panics if `exps.len() != arity`.
    pub fn monomial(var: Var, arity: usize, exps: Vec<i64>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), arity, "exponent vector length");
        let mut p = Self::zero(var, arity);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable with 0-based index `j`, raised to `e`.
    pub fn var_power(var: Var, arity: usize, j: usize, e: i64) -> Self {
        let mut exps = vec![0; arity];
        exps[j] = e;
        Self::monomial(var, arity, exps, 1)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, other: &Self) -> Result<(), LaurentError> {
        if self.var != other.var {
            return Err(LaurentError::VarMismatch(self.var, other.var));
        }
        if self.arity != other.arity {
            return Err(LaurentError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
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

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.compatible(other)?;
        let mut out = Self::zero(self.var, self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1
                    .iter()
                    .zip(e2)
                    .map(|(a, b)| a.checked_add(*b).ok_or(LaurentError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?;
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.var, self.arity);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Result<Self, LaurentError> {
        let mut result = Self::one(self.var, self.arity);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Substitutes `point[j]` for the `j`-th variable.
    pub fn eval_at(&self, point: &[Complex64]) -> Result<Complex64, LaurentError> {
        if point.len() != self.arity {
            return Err(LaurentError::PointSize {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (z, &k) in point.iter().zip(e) {
                term *= z.powi(k as i32);
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Maps `a_j ↦ t_j + t_j^{-1}`. Only polynomials (no negative powers of
    /// any `a_j`) can be mapped.
    pub fn substitute_loop_params(&self) -> Result<Self, LaurentError> {
        if self.var == Var::T {
            return Ok(self.clone());
        }
        let arity = self.arity;
        let mut powers: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::one(Var::T, arity)]; arity];
        let mut out = Self::zero(Var::T, arity);
        for (e, c) in &self.terms {
            let mut term = Self::constant(Var::T, arity, c.clone());
            for (j, &k) in e.iter().enumerate() {
                if k < 0 {
                    return Err(LaurentError::NegativeExponent(k));
                }
                let k = k as usize;
                while powers[j].len() <= k {
                    let next = powers[j].last().unwrap().checked_mul(&quantum_int(2, j, arity))?;
                    powers[j].push(next);
                }
                term = term.checked_mul(&powers[j][k])?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Parses the printed form. `var` and `arity` fix the ring; with arity 1
    /// both `t` and `t1` name the variable.
    pub fn parse(text: &str, var: Var, arity: usize) -> Result<Self, LaurentError> {
        Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            var,
            arity,
        }
        .poly()
    }

    fn var_name(&self, j: usize) -> String {
        if self.arity == 1 {
            self.var.letter().to_string()
        } else {
            format!("{}{}", self.var.letter(), j + 1)
        }
    }

    fn format_monomial(&self, exps: &[i64]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(j, &e)| {
                if e == 1 {
                    self.var_name(j)
                } else {
                    format!("{}^{}", self.var_name(j), e)
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent vector first: `t^2 + 2 + t^-2`, `2*t1*t2^-1 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let mono = self.format_monomial(e);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

// Operator forms panic on incompatible rings or exponent overflow; the
// `checked_*` methods report these instead.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("incompatible Laurent polynomials")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("incompatible Laurent polynomials")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("incompatible Laurent polynomials")
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    var: Var,
    arity: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> LaurentError {
        let text: String = self.chars.iter().collect();
        LaurentError::Parse(format!("{msg} at position {} in `{text}`", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero(self.var, self.arity);
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut negative = false;
        if self.peek() == Some('-') {
            negative = true;
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let term = self.term()?;
            out = out.checked_add(&if negative { -&term } else { term })?;
            match self.peek() {
                None => return Ok(out),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0i64; self.arity];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.integer()?,
                Some(c) if c == self.var.letter() => {
                    self.pos += 1;
                    let j = self.var_index()?;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        let neg = self.peek() == Some('-');
                        if neg {
                            self.pos += 1;
                        }
                        let v = self.integer()?.to_i64().ok_or(LaurentError::Overflow)?;
                        if neg {
                            -v
                        } else {
                            v
                        }
                    } else {
                        1
                    };
                    exps[j] = exps[j].checked_add(e).ok_or(LaurentError::Overflow)?;
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(LaurentPoly::monomial(self.var, self.arity, exps, coeff))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<BigInt, LaurentError> {
        let d = self.digits();
        d.parse().map_err(|_| self.err("expected digits"))
    }

    fn var_index(&mut self) -> Result<usize, LaurentError> {
        let d = self.digits();
        if d.is_empty() {
            return if self.arity == 1 {
                Ok(0)
            } else {
                Err(self.err("variable needs an index"))
            };
        }
        match d.parse::<usize>() {
            Ok(j) if (1..=self.arity).contains(&j) => Ok(j - 1),
            _ => Err(self.err("variable index out of range")),
        }
    }
}

/// `[n]_{t_j} = t^{n-1} + t^{n-3} + … + t^{1-n}`, with `j` 0-based.
pub fn quantum_int(n: u32, j: usize, arity: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(Var::T, arity);
    for i in 0..n as i64 {
        out.add_term(
            {
                let mut e = vec![0; arity];
                e[j] = n as i64 - 1 - 2 * i;
                e
            },
            BigInt::one(),
        );
    }
    out
}

/// A loop parameter `a`: either exactly `2cos(πp/q)` or a float.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamSpec {
    RationalAngle { p: i64, q: i64 },
    Numeric { value: f64, tolerance: f64 },
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl ParamSpec {
    /// `2cos(πp/q)`, reduced so that `gcd(p, q) = 1` and `q ≥ 1`.
    pub fn rational_angle(p: i64, q: i64) -> Result<Self, LaurentError> {
        if q == 0 {
            return Err(LaurentError::BadParam("angle denominator is zero".into()));
        }
        let g = gcd(p, q);
        let (p, q) = if q < 0 { (-p / g, -q / g) } else { (p / g, q / g) };
        Ok(ParamSpec::RationalAngle { p, q })
    }

    pub fn numeric(value: f64, tolerance: f64) -> Result<Self, LaurentError> {
        if !(tolerance > 0.0) {
            return Err(LaurentError::BadParam(format!("tolerance must be positive, got {tolerance}")));
        }
        Ok(ParamSpec::Numeric { value, tolerance })
    }

    /// Parses `angle:p/q` or `value:<float>[@<tolerance>]`.
    pub fn parse(text: &str) -> Result<Self, LaurentError> {
        let bad = || LaurentError::BadParam(format!("expected `angle:p/q` or `value:x[@tol]`, got `{text}`"));
        let (kind, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "angle" => {
                let (p, q) = rest.split_once('/').ok_or_else(bad)?;
                let p = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim().parse().map_err(|_| bad())?;
                Self::rational_angle(p, q)
            }
            "value" => {
                let (v, tol) = match rest.split_once('@') {
                    Some((v, t)) => (v, t.trim().parse().map_err(|_| bad())?),
                    None => (rest, DEFAULT_TOLERANCE),
                };
                Self::numeric(v.trim().parse().map_err(|_| bad())?, tol)
            }
            _ => Err(bad()),
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            ParamSpec::RationalAngle { p, q } => 2.0 * (std::f64::consts::PI * p as f64 / q as f64).cos(),
            ParamSpec::Numeric { value, .. } => value,
        }
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamSpec::RationalAngle { p, q } => write!(f, "angle:{p}/{q}"),
            ParamSpec::Numeric { value, tolerance } => write!(f, "value:{value}@{tolerance:e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum Genericity {
    /// No vanishing sum. `horizon` is `None` when this is exact, otherwise
    /// only `n ≤ horizon` was checked.
    Generic { horizon: Option<u64> },
    /// `1 + t² + … + t^{2·witness} = 0`, with `witness` least.
    NonGeneric { witness: u64 },
    Unknown { reason: String },
}

/// Decides whether `a = t + t^{-1}` avoids every zero of
/// `1 + t² + … + t^{2n}`, `n ≥ 1`.
///
/// For `a = 2cos(πp/q)`, `t²` is a primitive `q`-th root of unity, so the
/// sum first vanishes at `n = q - 1` (never when `q = 1`). Numeric values are
/// tested term by term up to `horizon`.
pub fn is_generic(param: &ParamSpec, horizon: u64) -> Result<Genericity, LaurentError> {
    if horizon == 0 {
        return Err(LaurentError::BadParam("horizon must be at least 1".into()));
    }
    match *param {
        ParamSpec::RationalAngle { q, .. } => Ok(if q == 1 {
            Genericity::Generic { horizon: None }
        } else {
            Genericity::NonGeneric { witness: q as u64 - 1 }
        }),
        ParamSpec::Numeric { value, tolerance } => {
            if !value.is_finite() {
                return Ok(Genericity::Unknown {
                    reason: format!("parameter {value} is not finite"),
                });
            }
            let a = Complex64::new(value, 0.0);
            let t = (a + (a * a - 4.0).sqrt()) / 2.0;
            let t2 = t * t;
            let mut power = Complex64::new(1.0, 0.0);
            let mut sum = power;
            for n in 1..=horizon {
                power *= t2;
                sum += power;
                if !sum.is_finite() {
                    return Ok(Genericity::Unknown {
                        reason: format!("partial sum overflowed at n = {n}"),
                    });
                }
                if sum.norm() < tolerance {
                    return Ok(Genericity::NonGeneric { witness: n });
                }
            }
            Ok(Genericity::Generic {
                horizon: Some(horizon),
            })
        }
    }
}
