//! The rank-one abelian group `L(p)` on generators `x_1, ..., x_t` with the
//! relations `p_i * x_i = c`, in normal form.
//!
//! Elements are stored pre-normalized as `sum l_i x_i + lc * c` with
//! `0 <= l_i < p_i`, which makes equality, ordering and hashing trivial.

use std::fmt;

use crate::error::{Error, Result};

/// A weight sequence `(p_1, ..., p_t)` with every `p_i >= 2` and `t >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightType {
    weights: Vec<i64>,
}

impl WeightType {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        if let Some(p) = weights.iter().find(|p| **p < 2) {
            return Err(Error::InvalidWeights(format!("weight {} < 2", p)));
        }
        Ok(WeightType { weights })
    }

    /// Number of weights `t`.
    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn require_three(&self) -> Result<()> {
        if self.arity() != 3 {
            return Err(Error::UnsupportedWeight(self.arity()));
        }
        Ok(())
    }

    /// Normal form of `sum raw_i x_i + raw_c c`: reduce each coefficient mod
    /// `p_i` and push the quotient into the `c` coordinate.
    pub fn normal_form(&self, raw: &[i64], raw_c: i64) -> Result<LElement> {
        if raw.len() != self.arity() {
            return Err(Error::WeightMismatch { expected: self.arity(), got: raw.len() });
        }
        let mut l = Vec::with_capacity(raw.len());
        let mut lc = raw_c;
        for (r, p) in raw.iter().zip(self.weights.iter()) {
            l.push(r.rem_euclid(*p));
            lc += r.div_euclid(*p);
        }
        Ok(LElement { l, lc })
    }

    pub fn zero(&self) -> LElement {
        LElement { l: vec![0; self.arity()], lc: 0 }
    }

    /// The canonical element `c = p_i x_i`.
    pub fn canonical(&self) -> LElement {
        LElement { l: vec![0; self.arity()], lc: 1 }
    }

    /// The dualizing element `omega = (t-2) c - sum x_i`.
    pub fn omega(&self) -> LElement {
        let raw = vec![-1i64; self.arity()];
        self.normal_form(&raw, self.arity() as i64 - 2).unwrap()
    }

    /// The generator `x_i` (0-based index).
    pub fn generator(&self, i: usize) -> LElement {
        let mut l = vec![0; self.arity()];
        l[i] = 1;
        self.normal_form(&l, 0).unwrap()
    }

    fn check(&self, a: &LElement) -> Result<()> {
        if a.l.len() != self.arity() {
            return Err(Error::WeightMismatch { expected: self.arity(), got: a.l.len() });
        }
        Ok(())
    }

    /// Normal form of `a + m * b`.
    pub fn combine(&self, a: &LElement, m: i64, b: &LElement) -> Result<LElement> {
        self.check(a)?;
        self.check(b)?;
        let raw: Vec<i64> = a.l.iter().zip(b.l.iter()).map(|(x, y)| x + m * y).collect();
        self.normal_form(&raw, a.lc + m * b.lc)
    }

    pub fn add(&self, a: &LElement, b: &LElement) -> Result<LElement> {
        self.combine(a, 1, b)
    }

    pub fn sub(&self, a: &LElement, b: &LElement) -> Result<LElement> {
        self.combine(a, -1, b)
    }

    pub fn neg(&self, a: &LElement) -> Result<LElement> {
        self.combine(&self.zero(), -1, a)
    }

    /// `x` lies in the positive cone iff its normal form has `lc >= 0`.
    pub fn is_effective(&self, x: &LElement) -> bool {
        x.lc >= 0
    }

    /// Partial order: `x <= y` iff `y - x` is effective.
    pub fn leq(&self, x: &LElement, y: &LElement) -> Result<bool> {
        Ok(self.is_effective(&self.sub(y, x)?))
    }

    /// Parses the textual form "l1,l2,...,lt;lc" and normalizes.
    pub fn parse_element(&self, s: &str) -> Result<LElement> {
        let (list, c) = s.rsplit_once(';').ok_or_else(|| Error::Parse {
            pos: s.len(),
            msg: "expected \"l1,...,lt;lc\"".to_string(),
        })?;
        let raw: Vec<i64> = list
            .split(',')
            .map(|part| {
                part.trim().parse::<i64>().map_err(|e| Error::Parse {
                    pos: 0,
                    msg: format!("bad coefficient {:?}: {}", part, e),
                })
            })
            .collect::<Result<_>>()?;
        let raw_c = c.trim().parse::<i64>().map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("bad c-coefficient {:?}: {}", c, e),
        })?;
        self.normal_form(&raw, raw_c)
    }

    /// Parses a comma-separated weight list like "2,3,5".
    pub fn parse(s: &str) -> Result<WeightType> {
        let weights: Vec<i64> = s
            .split(',')
            .map(|part| {
                part.trim().parse::<i64>().map_err(|e| Error::Parse {
                    pos: 0,
                    msg: format!("bad weight {:?}: {}", part, e),
                })
            })
            .collect::<Result<_>>()?;
        WeightType::new(weights)
    }
}

impl fmt::Display for WeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Element of `L(p)` in normal form `sum l_i x_i + lc c`, `0 <= l_i < p_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LElement {
    l: Vec<i64>,
    lc: i64,
}

impl LElement {
    pub fn coeffs(&self) -> &[i64] {
        &self.l
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.l[i]
    }

    /// Coefficient of the canonical element `c` in normal form.
    pub fn c_coeff(&self) -> i64 {
        self.lc
    }

    pub fn is_zero(&self) -> bool {
        self.lc == 0 && self.l.iter().all(|v| *v == 0)
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.l.iter().map(|v| v.to_string()).collect();
        write!(f, "{};{}", parts.join(","), self.lc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w235() -> WeightType {
        WeightType::new(vec![2, 3, 5]).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let w = w235();
        let e = w.normal_form(&[3, 0, 0], 0).unwrap();
        assert_eq!((e.coeffs(), e.c_coeff()), (&[1, 0, 0][..], 1));
        assert!(w.normal_form(&[0, 0, 0], 0).unwrap().is_zero());
        let omega = w.normal_form(&[-1, -1, -1], 1).unwrap();
        assert_eq!((omega.coeffs(), omega.c_coeff()), (&[1, 2, 4][..], -2));
        assert_eq!(omega, w.omega());
    }

    #[test]
    fn combine_examples() {
        let w = w235();
        let x1 = w.generator(0);
        assert_eq!(w.combine(&x1, w.weight(0) - 1, &x1).unwrap(), w.canonical());
        let omega = w.omega();
        assert_eq!(w.combine(&omega, 0, &x1).unwrap(), omega);
        assert!(w.combine(&omega, -1, &omega).unwrap().is_zero());
    }

    #[test]
    fn constants_and_order() {
        let w = w235();
        assert_eq!(w.canonical().c_coeff(), 1);
        assert!(!w.is_effective(&w.omega()));
        assert!(w.is_effective(&w.zero()));
        assert!(w.leq(&w.zero(), &w.canonical()).unwrap());

        let w222 = WeightType::new(vec![2, 2, 2]).unwrap();
        let omega = w222.omega();
        let two_omega = w222.combine(&omega, 1, &omega).unwrap();
        assert_eq!((two_omega.coeffs(), two_omega.c_coeff()), (&[0, 0, 0][..], -1));
    }

    #[test]
    fn relations_hold_for_every_generator() {
        for weights in [vec![2, 3, 5], vec![2, 2, 2], vec![3, 3, 4], vec![2, 7], vec![2, 3, 4, 5]] {
            let w = WeightType::new(weights).unwrap();
            for i in 0..w.arity() {
                let xi = w.generator(i);
                let mut acc = w.zero();
                for _ in 0..w.weight(i) {
                    acc = w.add(&acc, &xi).unwrap();
                }
                assert_eq!(acc, w.canonical());
            }
        }
    }

    #[test]
    fn interval_argument_for_orthogonality() {
        // For every offset 0 <= x <= sum (p_i - 2) x_i the three differences
        // x - omega, omega - x, 2*omega - x are all non-effective.
        for weights in [vec![2, 2, 2], vec![2, 3, 5], vec![2, 3, 7], vec![3, 3, 4]] {
            let w = WeightType::new(weights).unwrap();
            let omega = w.omega();
            let two_omega = w.add(&omega, &omega).unwrap();
            let mut offsets = vec![w.zero()];
            for i in 0..3 {
                let mut next = Vec::new();
                for base in &offsets {
                    for l in 0..=(w.weight(i) - 2) {
                        let mut raw = base.coeffs().to_vec();
                        raw[i] = l;
                        next.push(w.normal_form(&raw, base.c_coeff()).unwrap());
                    }
                }
                offsets = next;
            }
            for x in &offsets {
                assert!(!w.is_effective(&w.sub(x, &omega).unwrap()));
                assert!(!w.is_effective(&w.sub(&omega, x).unwrap()));
                assert!(!w.is_effective(&w.sub(&two_omega, x).unwrap()));
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        let w = w235();
        let e = w.parse_element("1,2,4;-2").unwrap();
        assert_eq!(e, w.omega());
        assert_eq!(w.parse_element(&e.to_string()).unwrap(), e);
        // Parsing normalizes.
        assert_eq!(w.parse_element("3,0,0;0").unwrap().to_string(), "1,0,0;1");
        assert!(w.parse_element("1,2;0").is_err());
    }

    proptest! {
        #[test]
        fn normal_form_is_additive(
            a in prop::collection::vec(-20i64..20, 3),
            b in prop::collection::vec(-20i64..20, 3),
            ac in -5i64..5,
            bc in -5i64..5,
        ) {
            let w = w235();
            let na = w.normal_form(&a, ac).unwrap();
            let nb = w.normal_form(&b, bc).unwrap();
            let sum_raw: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
            let direct = w.normal_form(&sum_raw, ac + bc).unwrap();
            prop_assert_eq!(w.add(&na, &nb).unwrap(), direct);
            // Idempotence.
            prop_assert_eq!(w.normal_form(na.coeffs(), na.c_coeff()).unwrap(), na);
        }
    }
}
