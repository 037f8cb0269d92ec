//! Line bundles, graded Hom/Ext dimensions, the Grothendieck group and the
//! Euler bilinear form.
//!
//! Hom spaces between line bundles are graded pieces of the coordinate
//! algebra: `Hom(O(x), O(y))` has dimension `max(0, lc + 1)` where `lc` is
//! the `c`-coefficient of `y - x` in normal form. The exponents of the
//! generators `x_i` with `i >= 3` are forced in any monomial of that degree,
//! leaving `lc + 1` ways to split the remaining budget between `x_1` and
//! `x_2`. Ext dimensions follow by Serre duality
//! `D Ext^1(X, Y) = Hom(Y, X(omega))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lgroup::{LElement, WeightType};

/// `dim Hom(O(x), O(y))` and `dim Ext^1(O(x), O(y))`. Valid for any arity.
pub fn line_hom_ext_dims(w: &WeightType, x: &LElement, y: &LElement) -> Result<(i64, i64)> {
    let hom = graded_dim(w, x, y)?;
    let xw = w.add(x, &w.omega())?;
    let ext = graded_dim(w, y, &xw)?;
    Ok((hom, ext))
}

fn graded_dim(w: &WeightType, x: &LElement, y: &LElement) -> Result<i64> {
    let d = w.sub(y, x)?;
    Ok((d.c_coeff() + 1).max(0))
}

/// Integer vector over the basis `{[O(x)] : 0 <= x <= c}` of the
/// Grothendieck group. The basis is `[O]`, then `[O(l x_i)]` for
/// `1 <= l <= p_i - 1` tube by tube, then `[O(c)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Class {
    coords: Vec<i64>,
}

impl K0Class {
    pub fn zero(w: &WeightType) -> Self {
        K0Class { coords: vec![0; basis_size(w)] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|v| *v == 0)
    }

    pub fn checked_add(&self, rhs: &K0Class) -> Result<K0Class> {
        if self.coords.len() != rhs.coords.len() {
            return Err(Error::K0Mismatch(self.coords.len(), rhs.coords.len()));
        }
        Ok(K0Class {
            coords: self.coords.iter().zip(rhs.coords.iter()).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &K0Class) -> Result<K0Class> {
        self.checked_add(&rhs.scaled(-1))
    }

    pub fn scaled(&self, m: i64) -> K0Class {
        K0Class { coords: self.coords.iter().map(|v| m * v).collect() }
    }
}

pub fn basis_size(w: &WeightType) -> usize {
    2 + w.weights().iter().map(|p| (*p - 1) as usize).sum::<usize>()
}

fn basis_offset(w: &WeightType, tube: usize) -> usize {
    1 + w.weights()[..tube].iter().map(|p| (*p - 1) as usize).sum::<usize>()
}

/// The basis element represented by each coordinate index, as an `L`-element.
fn basis_element(w: &WeightType, idx: usize) -> LElement {
    let size = basis_size(w);
    if idx == 0 {
        return w.zero();
    }
    if idx == size - 1 {
        return w.canonical();
    }
    let mut rest = idx - 1;
    for i in 0..w.arity() {
        let span = (w.weight(i) - 1) as usize;
        if rest < span {
            let mut raw = vec![0; w.arity()];
            raw[i] = rest as i64 + 1;
            return w.normal_form(&raw, 0).unwrap();
        }
        rest -= span;
    }
    unreachable!("index out of basis range")
}

fn basis_name(w: &WeightType, idx: usize) -> String {
    let size = basis_size(w);
    if idx == 0 {
        return "[O]".to_string();
    }
    if idx == size - 1 {
        return "[O(c)]".to_string();
    }
    let mut rest = idx - 1;
    for i in 0..w.arity() {
        let span = (w.weight(i) - 1) as usize;
        if rest < span {
            let l = rest as i64 + 1;
            return if l == 1 {
                format!("[O(x{})]", i + 1)
            } else {
                format!("[O({}*x{})]", l, i + 1)
            };
        }
        rest -= span;
    }
    unreachable!()
}

/// Class of the line bundle `O(x)`: for `x = sum l_i x_i + lc c` in normal
/// form this is `sum [O(l_i x_i)] + lc [O(c)] - (lc + t - 1) [O]`. Works for
/// any arity; the public entry point restricts to three weights.
pub(crate) fn k0_class_line_any(w: &WeightType, x: &LElement) -> Result<K0Class> {
    if x.coeffs().len() != w.arity() {
        return Err(Error::WeightMismatch { expected: w.arity(), got: x.coeffs().len() });
    }
    let mut class = K0Class::zero(w);
    let lc = x.c_coeff();
    for (i, l) in x.coeffs().iter().enumerate() {
        if *l == 0 {
            class.coords[0] += 1;
        } else {
            class.coords[basis_offset(w, i) + (*l - 1) as usize] += 1;
        }
    }
    let last = class.coords.len() - 1;
    class.coords[last] += lc;
    class.coords[0] -= lc + w.arity() as i64 - 1;
    Ok(class)
}

/// Class of the line bundle `O(x)` for a three-weight line.
pub fn k0_class_line(w: &WeightType, x: &LElement) -> Result<K0Class> {
    w.require_three()?;
    k0_class_line_any(w, x)
}

/// The class `delta = [O(c)] - [O]`.
pub fn k0_delta(w: &WeightType) -> K0Class {
    let mut class = K0Class::zero(w);
    let last = class.coords.len() - 1;
    class.coords[last] = 1;
    class.coords[0] = -1;
    class
}

/// Euler form `<a, b> = dim Hom - dim Ext^1`, extended bilinearly over the
/// line-bundle basis. Requires three weights.
pub fn euler_form(w: &WeightType, a: &K0Class, b: &K0Class) -> Result<i64> {
    w.require_three()?;
    euler_form_any(w, a, b)
}

pub(crate) fn euler_form_any(w: &WeightType, a: &K0Class, b: &K0Class) -> Result<i64> {
    let size = basis_size(w);
    if a.coords.len() != size || b.coords.len() != size {
        return Err(Error::K0Mismatch(a.coords.len(), b.coords.len()));
    }
    let mut total = 0i64;
    for (i, ai) in a.coords.iter().enumerate() {
        if *ai == 0 {
            continue;
        }
        let u = basis_element(w, i);
        for (j, bj) in b.coords.iter().enumerate() {
            if *bj == 0 {
                continue;
            }
            let v = basis_element(w, j);
            let (hom, ext) = line_hom_ext_dims(w, &u, &v)?;
            total += ai * bj * (hom - ext);
        }
    }
    Ok(total)
}

/// Symmetrized Euler form `(a, b) = <a, b> + <b, a>`.
pub fn euler_form_sym(w: &WeightType, a: &K0Class, b: &K0Class) -> Result<i64> {
    Ok(euler_form(w, a, b)? + euler_form(w, b, a)?)
}

/// Renders a class as a signed combination of basis symbols.
pub fn display_k0(w: &WeightType, class: &K0Class) -> String {
    let mut out = String::new();
    for (i, c) in class.coords.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if *c < 0 {
                out.push('-');
            }
        } else if *c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if mag != 1 {
            out.push_str(&format!("{}*", mag));
        }
        out.push_str(&basis_name(w, i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
