//! Exact arithmetic for integer-coefficient Laurent polynomials in the formal
//! variable `q`, together with reduced rational functions over them.
//!
//! Every Hall-number computation in this crate lands in [`LaurentPoly`] or,
//! for the few convention values that are honestly rational, in
//! [`RationalFn`]. All arithmetic is exact; there is no floating point
//! anywhere in the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `q` with arbitrary-precision integer
/// coefficients. Stored zero-free: the zero polynomial has an empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    /// The variable q.
    pub fn q() -> Self {
        LaurentPoly::monomial(1, BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// `c * q^exp`.
    pub fn monomial<T: Into<BigInt>>(exp: i64, c: T) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    /// Largest exponent, or None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest exponent, or None for the zero polynomial.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by `q^shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` when the divisor does not divide `self` in
    /// `Z[q, q^-1]`.
    pub fn checked_div(&self, rhs: &LaurentPoly) -> Option<LaurentPoly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let sa = self.order().unwrap();
        let sb = rhs.order().unwrap();
        let a = self.shifted(-sa);
        let b = rhs.shifted(-sb);
        // Long division over Q; succeed only if remainder is 0 and all
        // quotient coefficients are integral.
        let deg_b = b.degree().unwrap();
        let lb = BigRational::from(b.leading_coeff());
        let mut rem: BTreeMap<i64, BigRational> = a
            .coeffs
            .iter()
            .map(|(e, c)| (*e, BigRational::from(c.clone())))
            .collect();
        let mut quo: BTreeMap<i64, BigRational> = BTreeMap::new();
        loop {
            let (&deg_r, lr) = match rem.iter().next_back() {
                Some(t) => t,
                None => break,
            };
            if deg_r < deg_b {
                return None;
            }
            let factor = lr / &lb;
            let shift = deg_r - deg_b;
            quo.insert(shift, factor.clone());
            for (e, c) in b.coeffs.iter() {
                let e2 = e + shift;
                let v = rem.remove(&e2).unwrap_or_else(BigRational::zero)
                    - &factor * BigRational::from(c.clone());
                if !v.is_zero() {
                    rem.insert(e2, v);
                }
            }
        }
        let mut out = LaurentPoly::zero();
        for (e, c) in quo {
            if !c.is_integer() {
                return None;
            }
            out.add_term(e + sa - sb, c.to_integer());
        }
        Some(out)
    }

    /// Exact rational evaluation at an integer point.
    pub fn eval_int(&self, q_value: i64) -> Result<BigRational> {
        self.eval(&BigRational::from(BigInt::from(q_value)))
    }

    pub fn eval(&self, q_value: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in self.coeffs.iter() {
            let term = if *e >= 0 {
                pow_rational(q_value, *e as u64)
            } else {
                if q_value.is_zero() {
                    return Err(Error::Pole("0".into()));
                }
                pow_rational(q_value, (-e) as u64).recip()
            };
            acc += BigRational::from(c.clone()) * term;
        }
        Ok(acc)
    }

    /// Integer content (gcd of coefficients), 0 for the zero polynomial.
    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
        }
        g
    }

    fn scale_down_exact(&self, d: &BigInt) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c / d)).collect(),
        }
    }

    fn scale(&self, d: &BigInt) -> LaurentPoly {
        if d.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * d)).collect(),
        }
    }
}

fn pow_rational(x: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

impl From<i64> for LaurentPoly {
    fn from(v: i64) -> Self {
        LaurentPoly::constant(v)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(v: BigInt) -> Self {
        LaurentPoly::constant(v)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.coeffs.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.coeffs.iter() {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.coeffs.iter() {
            for (e2, c2) in rhs.coeffs.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $trait:ident, $m:ident) => {
        impl $trait<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $trait<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl<'a> $trait<$t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(LaurentPoly, Add, add);
forward_owned_binop!(LaurentPoly, Sub, sub);
forward_owned_binop!(LaurentPoly, Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner { bytes: s.as_bytes(), pos: 0 }
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

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if let Some(b'+') | Some(b'-') = self.bytes.get(self.pos).copied() {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<BigInt>().map_err(|e| self.err(&e.to_string()))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Grammar: signed terms `c*q^e`, `c*q`, `q^e`, `q`, `c` joined by `+`/`-`;
    /// whitespace is insignificant.
    fn from_str(s: &str) -> Result<LaurentPoly> {
        let mut sc = Scanner::new(s);
        let mut poly = LaurentPoly::zero();
        let mut first = true;
        loop {
            let sign = match sc.peek() {
                None if first => return Err(sc.err("empty polynomial")),
                None => break,
                Some(b'+') => {
                    sc.bump();
                    BigInt::one()
                }
                Some(b'-') => {
                    sc.bump();
                    -BigInt::one()
                }
                Some(_) if first => BigInt::one(),
                Some(_) => return Err(sc.err("expected '+' or '-' between terms")),
            };
            first = false;
            // term: [INT ['*']] ['q' ['^' INT]]
            let mut coeff = BigInt::one();
            let mut have_coeff = false;
            if matches!(sc.peek(), Some(c) if c.is_ascii_digit()) {
                coeff = sc.integer()?;
                have_coeff = true;
                if sc.peek() == Some(b'*') {
                    sc.bump();
                }
            }
            let exp = if sc.peek() == Some(b'q') {
                sc.bump();
                if sc.peek() == Some(b'^') {
                    sc.bump();
                    let e = sc.integer()?;
                    i64::try_from(e).map_err(|_| sc.err("exponent out of range"))?
                } else {
                    1
                }
            } else {
                if !have_coeff {
                    return Err(sc.err("expected coefficient or 'q'"));
                }
                0
            };
            poly.add_term(exp, sign * coeff);
        }
        Ok(poly)
    }
}

// ---------------------------------------------------------------------------
// Polynomial gcd over Z[q] (inputs must have order >= 0)
// ---------------------------------------------------------------------------

fn primitive_part(p: &LaurentPoly) -> LaurentPoly {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.scale_down_exact(&c)
}

/// Pseudo-remainder of `a` by `b` (both ordinary polynomials, `b` nonzero).
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let db = b.degree().unwrap();
    let lb = b.leading_coeff();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading_coeff();
        r = &r.scale(&lb) - &b.shifted(dr - db).scale(&lr);
    }
    r
}

/// Gcd in `Z[q]`, normalized with positive leading coefficient.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_sign(b);
    }
    if b.is_zero() {
        return normalize_sign(a);
    }
    let content = a.content().gcd(&b.content());
    let mut pa = primitive_part(a);
    let mut pb = primitive_part(b);
    if pa.degree() < pb.degree() {
        std::mem::swap(&mut pa, &mut pb);
    }
    while !pb.is_zero() {
        let r = primitive_part(&pseudo_rem(&pa, &pb));
        pa = pb;
        pb = r;
    }
    normalize_sign(&pa.scale(&content))
}

fn normalize_sign(p: &LaurentPoly) -> LaurentPoly {
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p.clone()
    }
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// Reduced ratio of two Laurent polynomials. The canonical representative
/// keeps all powers of `q` in the numerator: the denominator is an ordinary
/// polynomial with nonzero constant term and positive leading coefficient,
/// coprime to the numerator (including integer contents).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFn { num, den: LaurentPoly::one() });
        }
        let sa = num.order().unwrap();
        let sb = den.order().unwrap();
        let n0 = num.shifted(-sa);
        let d0 = den.shifted(-sb);
        let g = poly_gcd(&n0, &d0);
        let mut n1 = n0.checked_div(&g).expect("gcd divides");
        let mut d1 = d0.checked_div(&g).expect("gcd divides");
        if d1.leading_coeff().is_negative() {
            n1 = -n1;
            d1 = -d1;
        }
        Ok(RationalFn { num: n1.shifted(sa - sb), den: d1 })
    }

    pub fn zero() -> Self {
        RationalFn { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RationalFn::from(LaurentPoly::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn into_poly(self) -> Result<LaurentPoly> {
        if self.is_polynomial() {
            Ok(self.num)
        } else {
            Err(Error::InexactDivision(format!("{} is not a polynomial", self)))
        }
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn eval_int(&self, q_value: i64) -> Result<BigRational> {
        self.eval(&BigRational::from(BigInt::from(q_value)))
    }

    pub fn eval(&self, q_value: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q_value)?;
        if d.is_zero() {
            return Err(Error::Pole(q_value.to_string()));
        }
        Ok(self.num.eval(q_value)? / d)
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        RationalFn { num: p, den: LaurentPoly::one() }
    }
}

impl From<i64> for RationalFn {
    fn from(v: i64) -> Self {
        RationalFn::from(LaurentPoly::constant(v))
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

forward_owned_binop!(RationalFn, Add, add);
forward_owned_binop!(RationalFn, Sub, sub);
forward_owned_binop!(RationalFn, Mul, mul);

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -self.num, den: self.den }
    }
}

/// Division of Laurent polynomials, closed over rational functions.
pub fn poly_div(a: &LaurentPoly, b: &LaurentPoly) -> Result<RationalFn> {
    RationalFn::new(a.clone(), b.clone())
}

/// Division of rational functions.
pub fn ratio_div(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    RationalFn::new(&a.num * &b.den, &a.den * &b.num)
}

fn fmt_factor(p: &LaurentPoly) -> String {
    if p.coeffs.len() <= 1 {
        format!("{}", p)
    } else {
        format!("({})", p)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", fmt_factor(&self.num), fmt_factor(&self.den))
        }
    }
}
