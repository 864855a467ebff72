use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The highest stored coefficient is
/// never zero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::new(vec![c.into()])
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The monic linear polynomial `x - r`.
    pub fn linear_root(r: impl Into<BigInt>) -> Self {
        Poly::new(vec![-r.into(), BigInt::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero; zero maps to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Exact Horner evaluation at an integer point.
    pub fn eval(&self, a: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    pub fn eval_i64(&self, a: i64) -> BigInt {
        self.eval(&BigInt::from(a))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; `None` unless the division is exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Poly> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Poly { coeffs: out })
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits `f = sign * content * pp` with `pp` primitive and `lc(pp) > 0`.
    pub fn content_primitive(&self) -> Result<(BigInt, i8, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroContent);
        }
        let content = self.content();
        let sign: i8 = if self.lc().is_negative() { -1 } else { 1 };
        let signed = if sign < 0 { -&content } else { content.clone() };
        let pp = self
            .div_scalar_exact(&signed)
            .expect("content divides every coefficient");
        Ok((content, sign, pp))
    }

    /// Primitive part with positive leading coefficient; zero stays zero.
    pub fn primitive(&self) -> Poly {
        match self.content_primitive() {
            Ok((_, _, pp)) => pp,
            Err(_) => Poly::zero(),
        }
    }

    /// Multiplies by -1 if needed so that the leading coefficient is positive.
    pub fn normalize_sign(self) -> Poly {
        if self.lc().is_negative() {
            -self
        } else {
            self
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes `x^n` for `x`.
    pub fn inflate(&self, n: usize) -> Poly {
        assert!(n >= 1, "inflate: exponent must be positive");
        if n == 1 || self.is_constant() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        Poly { coeffs }
    }

    /// Returns `(e, fbar)` with `e` the gcd of the exponents of nonzero terms
    /// and `fbar(x^e) = f`. Constants give `(0, f)`.
    pub fn deflate(&self) -> Result<(usize, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("deflate"));
        }
        if self.is_constant() {
            return Ok((0, self.clone()));
        }
        let e = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(i, c)| *i > 0 && !c.is_zero())
            .fold(0usize, |g, (i, _)| g.gcd(&i));
        let fbar = Poly::new(self.coeffs.iter().step_by(e).cloned().collect());
        Ok((e, fbar))
    }

    /// `f(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact quotient `self / d` over the integers, or `None` if `d` does not
    /// divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem_integral(d)?;
        r.is_zero().then_some(q)
    }

    /// Long division that succeeds only while every quotient coefficient is
    /// integral.
    fn divrem_integral(&self, d: &Poly) -> Option<(Poly, Poly)> {
        let dd = d.degree()?;
        let Some(nd) = self.degree() else {
            return Some((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Some((Poly::zero(), self.clone()));
        }
        let lcd = d.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lcd);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// Whether `d` divides `self` in `Q[x]` (content ignored).
    pub fn divisible_over_q(&self, d: &Poly) -> bool {
        self.is_zero() || self.pseudo_rem(d).is_zero()
    }

    /// `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let Some(mut nd) = self.degree() else {
            return Poly::zero();
        };
        if nd < dd {
            return self.clone();
        }
        let lcd = d.lc();
        let mut rem = self.coeffs.clone();
        let mut steps = nd - dd + 1;
        while rem.len() > dd && !rem.is_empty() {
            nd = rem.len() - 1;
            let top = rem[nd].clone();
            for c in rem.iter_mut() {
                *c *= &lcd;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[nd - dd + j] -= &top * dc;
            }
            steps -= 1;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        let mut r = Poly::new(rem);
        if steps > 0 {
            r = r.scale(&num_traits::pow(lcd, steps));
        }
        r
    }

    /// Division by a polynomial whose leading coefficient is a unit (±1).
    pub fn divrem_unit(&self, d: &Poly) -> (Poly, Poly) {
        assert!(d.lc().abs().is_one(), "divrem_unit needs a unit leading coefficient");
        self.divrem_integral(d).expect("unit leading coefficient")
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Maximal absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Canonical ordering: by degree, then coefficient vectors from the
    /// constant term upward.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Whether `self = ±other`.
    pub fn is_associate(&self, other: &Poly) -> bool {
        self == other || *self == -other.clone()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Descending-degree rendering accepted back by the expression parser, e.g.
/// `x^6 - 2*x^4 - 5*x^2 + 10`. A negative leading term always spells out its
/// coefficient (`-1*x^2`) since `-x^2` parses as `(-x)^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let spell_one = first && c.is_negative() && k >= 2;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() || spell_one {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Poly::new(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

impl<'a> std::iter::Product<&'a Poly> for Poly {
    fn product<I: Iterator<Item = &'a Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * p)
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
