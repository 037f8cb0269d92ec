//! Extension bundles: the rank-two exceptional bundles `E_L<x>` arising as
//! the unique nonsplit extension of `L(x)` by `L(omega)`, for offsets
//! `0 <= x <= sum (p_i - 2) x_i` over a three-weight line.

use std::fmt;

use crate::error::{Error, Result};
use crate::lgroup::{LElement, WeightType};
use crate::sheafcat::{k0_class_line, line_hom_ext_dims, K0Class};

/// `E_L<x>` identified by the base twist `L = O(base)` and the offset `x`.
/// Distinct (base, offset) data can name one bundle; see [`same_orbit`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionBundle {
    base: LElement,
    offset: LElement,
}

impl ExtensionBundle {
    pub fn base(&self) -> &LElement {
        &self.base
    }

    pub fn offset(&self) -> &LElement {
        &self.offset
    }

    /// Twist of the quotient line bundle `L(x)`: base + offset.
    pub fn line_quotient_twist(&self, w: &WeightType) -> Result<LElement> {
        w.add(&self.base, &self.offset)
    }

    /// Twist of the sub line bundle `L(omega)`: base + omega.
    pub fn line_sub_twist(&self, w: &WeightType) -> Result<LElement> {
        w.add(&self.base, &w.omega())
    }

    pub(crate) fn validate(&self, w: &WeightType) -> Result<()> {
        w.require_three()?;
        if self.base.coeffs().len() != 3 || self.offset.coeffs().len() != 3 {
            return Err(Error::WeightMismatch { expected: 3, got: self.base.coeffs().len() });
        }
        check_offset(w, &self.offset)
    }

    /// CLI grammar "EB:l1,l2,l3;lc;l1,l2,l3;lc" (base then offset).
    pub fn parse(w: &WeightType, s: &str) -> Result<Self> {
        let body = s.strip_prefix("EB:").ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected EB:base;offset, got {:?}", s),
        })?;
        let parts: Vec<&str> = body.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected four ';'-separated fields in {:?}", s),
            });
        }
        let base = w.parse_element(&format!("{};{}", parts[0], parts[1]))?;
        let offset = w.parse_element(&format!("{};{}", parts[2], parts[3]))?;
        make_extension_bundle(w, base, offset)
    }
}

impl fmt::Display for ExtensionBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EB:{};{}", self.base, self.offset)
    }
}

fn check_offset(w: &WeightType, offset: &LElement) -> Result<()> {
    if offset.c_coeff() != 0 {
        return Err(Error::OffsetRange(format!(
            "offset {} has nonzero c-coefficient; bound is 0 <= x <= sum (p_i - 2) x_i",
            offset
        )));
    }
    for i in 0..3 {
        let l = offset.coeff(i);
        let max = w.weight(i) - 2;
        if l > max {
            return Err(Error::OffsetRange(format!(
                "offset coefficient l_{} = {} exceeds p_{} - 2 = {}",
                i + 1,
                l,
                i + 1,
                max
            )));
        }
    }
    Ok(())
}

/// Validates and constructs `E_{O(base)}<offset>`.
pub fn make_extension_bundle(
    w: &WeightType,
    base: LElement,
    offset: LElement,
) -> Result<ExtensionBundle> {
    w.require_three()?;
    if base.coeffs().len() != 3 || offset.coeffs().len() != 3 {
        return Err(Error::WeightMismatch { expected: 3, got: base.coeffs().len() });
    }
    check_offset(w, &offset)?;
    Ok(ExtensionBundle { base, offset })
}

/// Which branch of the orbit criterion matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitCondition {
    Identity,
    Reflected(usize),
}

/// All twists `z` with `a = b(z)`, each with the matching condition: either
/// the offsets agree, or the offset of `b` is the reflection of `a`'s offset
/// through one index `j` with the companion twist `sum_{i != j} (l_i + 1)
/// x_i - c`.
pub fn same_orbit_witnesses(
    w: &WeightType,
    a: &ExtensionBundle,
    b: &ExtensionBundle,
) -> Result<Vec<(OrbitCondition, LElement)>> {
    a.validate(w)?;
    b.validate(w)?;
    let base_diff = w.sub(&a.base, &b.base)?;
    let mut out = Vec::new();
    if a.offset == b.offset {
        out.push((OrbitCondition::Identity, base_diff.clone()));
    }
    let l = a.offset.coeffs();
    for j in 0..3 {
        let mut raw_y = [0i64; 3];
        let mut raw_z = [0i64; 3];
        for i in 0..3 {
            if i == j {
                raw_y[i] = l[i];
            } else {
                raw_y[i] = w.weight(i) - 2 - l[i];
                raw_z[i] = l[i] + 1;
            }
        }
        let y = w.normal_form(&raw_y, 0)?;
        if y == b.offset {
            let z_tilde = w.normal_form(&raw_z, -1)?;
            out.push((OrbitCondition::Reflected(j), w.add(&base_diff, &z_tilde)?));
        }
    }
    Ok(out)
}

/// First witness, if any.
pub fn same_orbit(
    w: &WeightType,
    a: &ExtensionBundle,
    b: &ExtensionBundle,
) -> Result<Option<LElement>> {
    Ok(same_orbit_witnesses(w, a, b)?.into_iter().next().map(|(_, z)| z))
}

/// Class `[E] = [L(omega)] + [L(x)]` from the defining sequence.
pub fn k0_class_ext(w: &WeightType, e: &ExtensionBundle) -> Result<K0Class> {
    e.validate(w)?;
    let sub = k0_class_line(w, &e.line_sub_twist(w)?)?;
    let quot = k0_class_line(w, &e.line_quotient_twist(w)?)?;
    sub.checked_add(&quot)
}

/// Vanishing checks for the orthogonal pair `(L(x), L(omega))` attached to a
/// bundle, plus the one-dimensional extension space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// dim Hom(L(x), L(omega))
    pub hom_x_to_w: i64,
    /// dim Hom(L(omega), L(x))
    pub hom_w_to_x: i64,
    /// dim Ext^1(L(omega), L(x))
    pub ext_w_to_x: i64,
    /// dim Ext^1(L(x), L(omega)); always 1 for a valid bundle
    pub ext_x_to_w: i64,
}

impl OrthogonalityReport {
    pub fn is_orthogonal(&self) -> bool {
        self.hom_x_to_w == 0 && self.hom_w_to_x == 0 && self.ext_w_to_x == 0 && self.ext_x_to_w == 1
    }
}

pub fn orthogonal_pair_check(w: &WeightType, e: &ExtensionBundle) -> Result<OrthogonalityReport> {
    e.validate(w)?;
    let x = e.line_quotient_twist(w)?;
    let om = e.line_sub_twist(w)?;
    let (hom_x_to_w, ext_x_to_w) = line_hom_ext_dims(w, &x, &om)?;
    let (hom_w_to_x, ext_w_to_x) = line_hom_ext_dims(w, &om, &x)?;
    Ok(OrthogonalityReport { hom_x_to_w, hom_w_to_x, ext_w_to_x, ext_x_to_w })
}

/// All admissible offsets for a weight triple, in lexicographic order.
pub fn admissible_offsets(w: &WeightType) -> Result<Vec<LElement>> {
    w.require_three()?;
    let mut out = Vec::new();
    for l1 in 0..=(w.weight(0) - 2) {
        for l2 in 0..=(w.weight(1) - 2) {
            for l3 in 0..=(w.weight(2) - 2) {
                out.push(w.normal_form(&[l1, l2, l3], 0)?);
            }
        }
    }
    Ok(out)
}
