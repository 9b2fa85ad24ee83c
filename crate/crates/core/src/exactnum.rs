//! Exact arithmetic over the rationals: scalars, univariate polynomials and
//! rational functions whose denominators are products of integer linear
//! factors `(N s + ν)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("linear factor {n}s+{nu} is invalid: ν must be positive")]
    InvalidFactor { n: i64, nu: i64 },
    #[error("expected a simple pole at {at}, found order {order}")]
    NotSimplePole { at: String, order: u32 },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `s^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `s`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// True for `c·t^k` with `c ≠ 0`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * s + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Coefficients in reverse order: `t^deg · p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    /// Euclidean division. Returns `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let dlead = divisor.leading()?.clone();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Some((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + ddeg] / &dlead;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        rem.truncate(ddeg);
        Some((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Synthetic division by `(s − root)`: returns quotient and remainder `p(root)`.
    pub fn div_by_root(&self, root: &Rational) -> (UniPoly, Rational) {
        if self.coeffs.is_empty() {
            return (UniPoly::zero(), Rational::zero());
        }
        let mut quot = vec![Rational::zero(); self.coeffs.len() - 1];
        let mut carry = Rational::zero();
        for i in (0..self.coeffs.len()).rev() {
            carry = &carry * root + &self.coeffs[i];
            if i > 0 {
                quot[i - 1] = carry.clone();
            }
        }
        (UniPoly::from_coeffs(quot), carry)
    }

    /// Splits `p = c · P` with `P` integral, primitive and with positive
    /// leading coefficient. The zero polynomial yields `(0, [])`.
    pub fn integer_content(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den_lcm), prim)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        UniPoly::from_coeffs(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

/// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    a.monic()
}

/// The linear form `N s + ν` with `N ≥ 0`, `ν > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinFactor {
    n: u64,
    nu: u64,
}

impl LinFactor {
    pub fn new(n: i64, nu: i64) -> Result<Self, ExactError> {
        if n < 0 || nu <= 0 {
            return Err(ExactError::InvalidFactor { n, nu });
        }
        Ok(Self {
            n: n as u64,
            nu: nu as u64,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    /// `−ν/N`, absent for a constant factor.
    pub fn root(&self) -> Option<Rational> {
        (self.n > 0).then(|| -Rational::new(BigInt::from(self.nu), BigInt::from(self.n)))
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        s * Rational::from_integer(BigInt::from(self.n)) + Rational::from_integer(BigInt::from(self.nu))
    }

    pub fn as_poly(&self) -> UniPoly {
        UniPoly::from_coeffs(vec![
            Rational::from_integer(BigInt::from(self.nu)),
            Rational::from_integer(BigInt::from(self.n)),
        ])
    }

    fn primitive(&self) -> (u64, LinFactor) {
        let g = self.n.gcd(&self.nu);
        (
            g,
            LinFactor {
                n: self.n / g,
                nu: self.nu / g,
            },
        )
    }
}

impl fmt::Display for LinFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            0 => write!(f, "{}", self.nu),
            1 => write!(f, "s+{}", self.nu),
            n => write!(f, "{}s+{}", n, self.nu),
        }
    }
}

/// `numerator / ∏ (N s + ν)^e`, held in canonical form: every stored factor
/// has `N > 0` and `gcd(N, ν) = 1`, and the numerator does not vanish at any
/// factor's root. Canonical values compare equal iff the functions are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FactoredRatFunc {
    numer: UniPoly,
    denom: BTreeMap<LinFactor, u32>,
}

impl FactoredRatFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_poly(numer: UniPoly) -> Self {
        Self {
            numer,
            denom: BTreeMap::new(),
        }
    }

    /// Builds and canonicalizes `numer / ∏ factors`.
    pub fn new(numer: UniPoly, factors: impl IntoIterator<Item = LinFactor>) -> Self {
        let mut numer = numer;
        let mut denom = BTreeMap::new();
        for f in factors {
            let (content, prim) = f.primitive();
            numer = numer.scale(&Rational::new(BigInt::one(), BigInt::from(content)));
            if prim.n == 0 {
                // prim is the constant 1 after dividing out the content
                continue;
            }
            *denom.entry(prim).or_insert(0) += 1;
        }
        let mut out = Self { numer, denom };
        out.cancel();
        out
    }

    /// Convenience: integer numerator `c` over integer factor pairs `(N, ν)`.
    pub fn from_ints(c: i64, factors: &[(i64, i64)]) -> Result<Self, ExactError> {
        let fs = factors
            .iter()
            .map(|&(n, nu)| LinFactor::new(n, nu))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(UniPoly::constant(rat(c)), fs))
    }

    fn cancel(&mut self) {
        if self.numer.is_zero() {
            self.denom.clear();
            return;
        }
        let keys: Vec<LinFactor> = self.denom.keys().copied().collect();
        for f in keys {
            let root = f.root().expect("stored factors have N > 0");
            let n = Rational::from_integer(BigInt::from(f.n));
            let mut mult = self.denom[&f];
            while mult > 0 {
                let (q, r) = self.numer.div_by_root(&root);
                if !r.is_zero() {
                    break;
                }
                // numer = (s − root)·q = (N s + ν)·(q / N)
                self.numer = q.scale(&n.recip());
                mult -= 1;
            }
            if mult == 0 {
                self.denom.remove(&f);
            } else {
                self.denom.insert(f, mult);
            }
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.numer
    }

    /// Distinct denominator factors with multiplicities, ordered by `(N, ν)`.
    pub fn denominator(&self) -> impl Iterator<Item = (LinFactor, u32)> + '_ {
        self.denom.iter().map(|(f, e)| (*f, *e))
    }

    /// Denominator as a flat list with repetition.
    pub fn denominator_factors(&self) -> Vec<LinFactor> {
        self.denominator()
            .flat_map(|(f, e)| std::iter::repeat(f).take(e as usize))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Poles `(root, order)` in the order of the stored factors.
    pub fn poles(&self) -> Vec<(Rational, u32)> {
        self.denominator()
            .map(|(f, e)| (f.root().expect("N > 0"), e))
            .collect()
    }

    pub fn pole_order(&self, s0: &Rational) -> u32 {
        self.denominator()
            .filter(|(f, _)| f.root().as_ref() == Some(s0))
            .map(|(_, e)| e)
            .sum()
    }

    /// Value at `s`, or `None` if `s` is a pole.
    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        let mut den = Rational::one();
        for (f, e) in self.denominator() {
            let v = f.eval(s);
            if v.is_zero() {
                return None;
            }
            for _ in 0..e {
                den *= &v;
            }
        }
        Some(self.numer.eval(s) / den)
    }

    /// Residue at a simple pole.
    pub fn residue_simple(&self, s0: &Rational) -> Result<Rational, ExactError> {
        let order = self.pole_order(s0);
        if order != 1 {
            return Err(ExactError::NotSimplePole {
                at: s0.to_string(),
                order,
            });
        }
        let mut den = Rational::one();
        for (f, e) in self.denominator() {
            if f.root().as_ref() == Some(s0) {
                den *= Rational::from_integer(BigInt::from(f.n));
            } else {
                let v = f.eval(s0);
                for _ in 0..e {
                    den *= &v;
                }
            }
        }
        Ok(self.numer.eval(s0) / den)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self {
            numer: self.numer.scale(c),
            denom: self.denom.clone(),
        };
        out.cancel();
        out
    }

    pub fn mul_poly(&self, p: &UniPoly) -> Self {
        let mut out = Self {
            numer: &self.numer * p,
            denom: self.denom.clone(),
        };
        out.cancel();
        out
    }

    /// Divides by `(N s + ν)`.
    pub fn div_factor(&self, f: LinFactor) -> Self {
        Self::new(self.numer.clone(), self.denominator_factors().into_iter().chain([f]))
    }

    /// Splits the numerator as `(p/q) · P` with `P` integral and primitive,
    /// for display with cleared content.
    pub fn display_parts(&self) -> (BigInt, Vec<BigInt>, BigInt) {
        let (c, prim) = self.numer.integer_content();
        (c.numer().clone(), prim, c.denom().clone())
    }
}

/// Exact sum of two canonical functions over the lcm of their denominators.
pub fn rf_add(f: &FactoredRatFunc, g: &FactoredRatFunc) -> FactoredRatFunc {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let mut lcm = f.denom.clone();
    for (k, e) in &g.denom {
        let slot = lcm.entry(*k).or_insert(0);
        *slot = (*slot).max(*e);
    }
    let lift = |h: &FactoredRatFunc| {
        let mut p = h.numer.clone();
        for (k, e) in &lcm {
            let missing = e - h.denom.get(k).copied().unwrap_or(0);
            for _ in 0..missing {
                p = &p * &k.as_poly();
            }
        }
        p
    };
    let mut out = FactoredRatFunc {
        numer: &lift(f) + &lift(g),
        denom: lcm,
    };
    out.cancel();
    out
}

pub fn rf_pole_order(f: &FactoredRatFunc, s0: &Rational) -> u32 {
    f.pole_order(s0)
}

pub fn rf_residue_simple(f: &FactoredRatFunc, s0: &Rational) -> Result<Rational, ExactError> {
    f.residue_simple(s0)
}

impl Add for &FactoredRatFunc {
    type Output = FactoredRatFunc;
    fn add(self, rhs: &FactoredRatFunc) -> FactoredRatFunc {
        rf_add(self, rhs)
    }
}

impl Neg for &FactoredRatFunc {
    type Output = FactoredRatFunc;
    fn neg(self) -> FactoredRatFunc {
        FactoredRatFunc {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

impl Sub for &FactoredRatFunc {
    type Output = FactoredRatFunc;
    fn sub(self, rhs: &FactoredRatFunc) -> FactoredRatFunc {
        rf_add(self, &-rhs)
    }
}

impl std::iter::Sum for FactoredRatFunc {
    fn sum<I: Iterator<Item = FactoredRatFunc>>(iter: I) -> Self {
        iter.fold(FactoredRatFunc::zero(), |acc, x| rf_add(&acc, &x))
    }
}

fn fmt_int_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = abs.is_one();
        match deg {
            0 => out.push_str(&abs.to_string()),
            1 if unit => out.push('s'),
            1 => out.push_str(&format!("{abs}s")),
            d if unit => out.push_str(&format!("s^{d}")),
            d => out.push_str(&format!("{abs}s^{d}")),
        }
    }
    out
}

impl fmt::Display for FactoredRatFunc {
    /// Numerator with integer coefficients, denominator as a product of
    /// `(N s + ν)` factors, e.g. `(4s+5)/((s+1)(6s+5))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (p, prim, q) = self.display_parts();
        let terms = prim.iter().filter(|c| !c.is_zero()).count();
        let numer = if terms == 1 {
            let scaled: Vec<BigInt> = prim.iter().map(|c| c * &p).collect();
            fmt_int_poly(&scaled)
        } else {
            let body = fmt_int_poly(&prim);
            if p.is_one() {
                format!("({body})")
            } else if (-&p).is_one() {
                format!("-({body})")
            } else {
                format!("{p}({body})")
            }
        };
        let mut pieces: Vec<String> = Vec::new();
        if !q.is_one() {
            pieces.push(q.to_string());
        }
        for (fac, e) in self.denominator() {
            if e == 1 {
                pieces.push(format!("({fac})"));
            } else {
                pieces.push(format!("({fac})^{e}"));
            }
        }
        match pieces.len() {
            0 => write!(f, "{numer}"),
            1 => write!(f, "{numer}/{}", pieces[0]),
            _ => write!(f, "{numer}/({})", pieces.concat()),
        }
    }
}
