//! Tame-quiver reformulations: the quiver/weight-type correspondence, the
//! closed Hall polynomials for preprojective and preinjective module
//! configurations (dispatched to the sheaf-side formulas), and the
//! derived-Hall rotation identities on heart objects, checked against the
//! brute-force oracle.
//!
//! The quiver side consumes sheaf-side data directly. Existence of the
//! underlying exact sequences is an assumption of the preinjective
//! formulas, not something these operations decide.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::extbundle::ExtensionBundle;
use crate::hall::{
    ext_except_value, ext_homog_bracket, f_poly, hall_ext_except_torsion, hall_ext_homog_torsion,
    hall_line_quotient_torsion, hall_split_both, hall_split_middle,
};
use crate::lgroup::{LElement, WeightType};
use crate::oracle::{
    count_epis_with_kernel, count_monos_with_coker, IsoType, TubeTable,
};
use crate::polyring::LaurentPoly;
use crate::tubes::{aut_count_indec, line_torsion_hom_dims, TorsionSheaf, TubeIndec};

/// Tame quiver families and their weighted projective lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverFamily {
    /// Cyclic type with arms p, q >= 1.
    ATilde(i64, i64),
    /// Four-subspace tail, n >= 4 vertices.
    DTilde(i64),
    E6Tilde,
    E7Tilde,
    E8Tilde,
}

impl QuiverFamily {
    /// Parses "A:p,q", "D:n", "E6", "E7", "E8".
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{}: {:?}", msg, s) };
        match s.trim() {
            "E6" => Ok(QuiverFamily::E6Tilde),
            "E7" => Ok(QuiverFamily::E7Tilde),
            "E8" => Ok(QuiverFamily::E8Tilde),
            other => {
                if let Some(body) = other.strip_prefix("A:") {
                    let (p, q) = body.split_once(',').ok_or_else(|| bad("expected A:p,q"))?;
                    let p: i64 = p.trim().parse().map_err(|_| bad("bad arm length"))?;
                    let q: i64 = q.trim().parse().map_err(|_| bad("bad arm length"))?;
                    Ok(QuiverFamily::ATilde(p, q))
                } else if let Some(body) = other.strip_prefix("D:") {
                    let n: i64 = body.trim().parse().map_err(|_| bad("bad vertex count"))?;
                    Ok(QuiverFamily::DTilde(n))
                } else {
                    Err(bad("expected A:p,q, D:n, E6, E7 or E8"))
                }
            }
        }
    }
}

impl fmt::Display for QuiverFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverFamily::ATilde(p, q) => write!(f, "A:{},{}", p, q),
            QuiverFamily::DTilde(n) => write!(f, "D:{}", n),
            QuiverFamily::E6Tilde => write!(f, "E6"),
            QuiverFamily::E7Tilde => write!(f, "E7"),
            QuiverFamily::E8Tilde => write!(f, "E8"),
        }
    }
}

/// Weight type of the derived-equivalent weighted projective line.
pub fn weight_of_type(family: &QuiverFamily) -> Result<WeightType> {
    match family {
        QuiverFamily::ATilde(p, q) => {
            if *p < 1 || *q < 1 {
                return Err(Error::InvalidInput(format!("arms ({}, {}) must be >= 1", p, q)));
            }
            // Arms of length 1 leave no genuine weight; clamp at the minimum
            // the weight list supports.
            if *p < 2 || *q < 2 {
                return Err(Error::InvalidInput(
                    "arm lengths below 2 give a weight below the supported range".into(),
                ));
            }
            WeightType::new(vec![*p, *q])
        }
        QuiverFamily::DTilde(n) => {
            if *n < 4 {
                return Err(Error::InvalidInput(format!("need n >= 4, got {}", n)));
            }
            WeightType::new(vec![2, 2, n - 2])
        }
        QuiverFamily::E6Tilde => WeightType::new(vec![2, 3, 3]),
        QuiverFamily::E7Tilde => WeightType::new(vec![2, 3, 4]),
        QuiverFamily::E8Tilde => WeightType::new(vec![2, 3, 5]),
    }
}

/// One preprojective or preinjective Hall-number configuration, carrying the
/// sheaf-side data that parametrizes it. Defect -1 objects correspond to
/// line bundles, defect -2 objects to extension bundles, regular modules to
/// torsion sheaves.
#[derive(Debug, Clone)]
pub enum QuiverHallCase {
    /// Case 5.2: two defect -1 modules with a regular quotient.
    PreprojQuotient { w: WeightType, x: LElement, y: LElement, r: TorsionSheaf },
    /// Case 5.3: regular middle summand splitting off.
    PreprojSplitMiddle {
        w: WeightType,
        l: LElement,
        l2: LElement,
        r: TubeIndec,
        r_sub: Option<TubeIndec>,
    },
    /// Case 5.4: regular summands on both sides.
    PreprojSplitBoth {
        w: WeightType,
        l: LElement,
        l2: LElement,
        r: Option<TubeIndec>,
        r2: Option<TubeIndec>,
        r3: Option<TubeIndec>,
    },
    /// Case 5.5: two defect -1 modules assembling to defect -2; the Euler
    /// pairing n is the only datum.
    PreprojTwoToOne { n: i64 },
    /// Case 5.6: defect -2 pair against a homogeneous regular.
    PreprojHomog { w: WeightType, e: ExtensionBundle, e2: ExtensionBundle, d: i64, n: i64 },
    /// Case 5.7: defect -2 pair against an exceptional regular.
    PreprojExc { w: WeightType, e: ExtensionBundle, e2: ExtensionBundle, r: TubeIndec },
    /// Case 5.10:IP: regular middle from preinjective times preprojective.
    InjRegular { w: WeightType, r: TubeIndec },
    /// Case 5.10:I1R: preinjective middle.
    InjInjRegular,
    /// Case 5.10:IPR: regular middle with a regular summand on the bottom.
    InjRegularPair { w: WeightType, l: LElement, r1: TubeIndec, r2: TubeIndec },
    /// Case 5.10:IPt: defect -2 preprojective middle, Euler input n >= 1.
    InjFromDefectTwo { n: i64 },
    /// Case 5.10:ItPtHom: homogeneous regular middle, class d n delta.
    InjHomog { d: i64, n: i64 },
    /// Case 5.10:ItPtExc: exceptional regular middle with invariant N.
    InjExc { w: WeightType, r: TubeIndec, n_cap: i64 },
}

/// Hall polynomials for the preprojective cases (5.2 through 5.7),
/// delegated to the sheaf-side operations.
pub fn quiver_hall_preprojective(case: &QuiverHallCase) -> Result<LaurentPoly> {
    match case {
        QuiverHallCase::PreprojQuotient { w, x, y, r } => {
            hall_line_quotient_torsion(w, x, y, r)
        }
        QuiverHallCase::PreprojSplitMiddle { w, l, l2, r, r_sub } => {
            hall_split_middle(w, l, l2, r, r_sub.as_ref())
        }
        QuiverHallCase::PreprojSplitBoth { w, l, l2, r, r2, r3 } => {
            hall_split_both(w, l, l2, r.as_ref(), r2.as_ref(), r3.as_ref())
        }
        QuiverHallCase::PreprojTwoToOne { n } => {
            if *n < 0 {
                return Err(Error::InvalidInput(format!(
                    "case 5.5 assumes a nonnegative pairing, got {}",
                    n
                )));
            }
            Ok(f_poly(*n))
        }
        QuiverHallCase::PreprojHomog { w, e, e2, d, n } => {
            hall_ext_homog_torsion(w, e, e2, *d, *n)
        }
        QuiverHallCase::PreprojExc { w, e, e2, r } => hall_ext_except_torsion(w, e, e2, r),
        _ => Err(Error::InvalidInput(
            "preinjective case passed to the preprojective dispatcher".into(),
        )),
    }
}

fn div_q_minus_1(value: &LaurentPoly) -> Result<LaurentPoly> {
    let q_minus_1: LaurentPoly = "q - 1".parse().unwrap();
    value.checked_div(&q_minus_1).ok_or_else(|| {
        Error::Internal(format!("{} is not divisible by q - 1", value))
    })
}

/// Hall polynomials for the preinjective cases (5.10). All divisions are
/// exact in the Laurent ring and verified.
pub fn quiver_hall_preinjective(case: &QuiverHallCase) -> Result<LaurentPoly> {
    match case {
        QuiverHallCase::InjRegular { w, r } => div_q_minus_1(&aut_count_indec(w, r)?),
        QuiverHallCase::InjInjRegular => Ok(LaurentPoly::one()),
        QuiverHallCase::InjRegularPair { w, l, r1, r2 } => {
            let (hom, _) = line_torsion_hom_dims(w, l, r1)?;
            let reduced = div_q_minus_1(&aut_count_indec(w, r2)?)?;
            Ok(reduced.shifted(-hom))
        }
        QuiverHallCase::InjFromDefectTwo { n } => {
            if *n < 1 {
                return Err(Error::InvalidInput(format!(
                    "case 5.10:IPt needs a pairing >= 1, got {}",
                    n
                )));
            }
            Ok(f_poly(n - 1))
        }
        QuiverHallCase::InjHomog { d, n } => {
            if *d < 1 || *n < 1 {
                return Err(Error::InvalidInput(format!(
                    "need d, n >= 1, got ({}, {})",
                    d, n
                )));
            }
            // a_R / (q - 1) for a homogeneous chain, times the homogeneous
            // bracket.
            let qd = LaurentPoly::monomial(*d, 1);
            let aut = &(&qd - &LaurentPoly::one()) * &LaurentPoly::monomial(d * (n - 1), 1);
            let prefactor = div_q_minus_1(&aut)?;
            Ok(&prefactor * &ext_homog_bracket(*d, *n))
        }
        QuiverHallCase::InjExc { w, r, n_cap } => {
            if !matches!(r, TubeIndec::Exceptional { .. }) {
                return Err(Error::InvalidInput(format!("{} is not exceptional", r)));
            }
            let prefactor = div_q_minus_1(&aut_count_indec(w, r)?)?;
            Ok(&prefactor * &ext_except_value(*n_cap)?)
        }
        _ => Err(Error::InvalidInput(
            "preprojective case passed to the preinjective dispatcher".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Derived rotation on heart objects
// ---------------------------------------------------------------------------

/// One middle term of the rotation identity, with both derived Hall numbers
/// computed along independent brute-force routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationRecord {
    pub a: IsoType,
    pub b: IsoType,
    pub l: IsoType,
    /// `G^L_{AB} / a_L`: mono/epi enumeration route.
    pub lhs: BigRational,
    /// `G^A_{B[1], L} / a_A`: Riedtmann-Peng recovery route.
    pub rhs: BigRational,
    /// `G^L_{AB}` equals the subobject count `F^L_{AB}`.
    pub embedding_consistent: bool,
    pub verdict: bool,
}

/// Verifies, for every middle class `L`, the rotation identity
/// `G^L_{AB} / a_L = G^A_{B[1], L} / a_A` on heart objects together with the
/// embedding consistency `G = F`. For heart objects the graded correction
/// factors are trivial (negative-degree Homs vanish), so `G^L_{AB}` is the
/// epimorphism count over `|Aut A|` (equivalently the monomorphism count
/// over `|Aut B|`), while `G^A_{B[1], L}` is `|Ext^1(A,B)_L|` over
/// `a_B |Hom(A,B)|` with the extension count recovered from the brute Hall
/// number through the Riedtmann-Peng identity.
pub fn derived_rotation_check(
    a: &IsoType,
    b: &IsoType,
    p: usize,
    q: u32,
) -> Result<Vec<RotationRecord>> {
    let table = TubeTable::build(p, q, a.total_length() + b.total_length())?;
    rotation_check_pair(&table, (table.class_index(a)?, table.class_index(b)?))
}

/// Rotation records for one (A, B) pair as table indices.
pub fn rotation_check_pair(
    table: &TubeTable,
    pair: (usize, usize),
) -> Result<Vec<RotationRecord>> {
    let (a, b) = pair;
    let dv = table.dim_vector_sum(a, b);
    let hom_ab = table.hom_dim(a, b) as u32;
    let hom_count = num_traits::pow(BigInt::from(table.q), hom_ab as usize);
    let mut out = Vec::new();
    for l in table.classes_with_dim_vector(&dv) {
        let f = table.hall_number(a, b, l);
        // G^L_{AB} via direct morphism enumeration, along the cheaper side.
        let hom_la = table.hom_dim(l, a);
        let hom_bl = table.hom_dim(b, l);
        let g_lab = if hom_bl <= hom_la {
            let monos =
                count_monos_with_coker(&table.reps[b], &table.reps[l], &table.classes[a])?;
            BigRational::new(BigInt::from(monos), table.aut[b].clone())
        } else {
            let epis = count_epis_with_kernel(&table.reps[l], &table.reps[a], &table.classes[b])?;
            BigRational::new(BigInt::from(epis), table.aut[a].clone())
        };
        let embedding_consistent = g_lab == BigRational::from(BigInt::from(f));
        // |Ext^1(A,B)_L| = F^L_{AB} |Hom(A,B)| a_A a_B / a_L.
        let ext_count = BigRational::new(
            BigInt::from(f) * &hom_count * &table.aut[a] * &table.aut[b],
            table.aut[l].clone(),
        );
        if !ext_count.is_integer() {
            return Err(Error::Internal(format!(
                "extension count {} for L = {} is not integral",
                ext_count, table.classes[l]
            )));
        }
        // G^A_{B[1], L} = |Ext^1(A,B)_L| / (a_B |Hom(A,B)|).
        let g_rot = ext_count
            / BigRational::from(&table.aut[b] * &hom_count);
        let lhs = g_lab / BigRational::from(table.aut[l].clone());
        let rhs = g_rot / BigRational::from(table.aut[a].clone());
        let verdict = lhs == rhs && embedding_consistent;
        out.push(RotationRecord {
            a: table.classes[a].clone(),
            b: table.classes[b].clone(),
            l: table.classes[l].clone(),
            lhs,
            rhs,
            embedding_consistent,
            verdict,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extbundle::make_extension_bundle;
    use crate::hall::s_poly;
    use crate::polyring::{poly_div, RationalFn};
    use num_traits::One;

    fn w(v: &[i64]) -> WeightType {
        WeightType::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weight_table() {
        assert_eq!(
            weight_of_type(&QuiverFamily::E8Tilde).unwrap(),
            w(&[2, 3, 5])
        );
        assert_eq!(
            weight_of_type(&QuiverFamily::DTilde(4)).unwrap(),
            w(&[2, 2, 2])
        );
        assert_eq!(
            weight_of_type(&QuiverFamily::ATilde(2, 3)).unwrap(),
            w(&[2, 3])
        );
        assert_eq!(
            weight_of_type(&QuiverFamily::E6Tilde).unwrap(),
            w(&[2, 3, 3])
        );
        assert_eq!(
            weight_of_type(&QuiverFamily::E7Tilde).unwrap(),
            w(&[2, 3, 4])
        );
        assert!(weight_of_type(&QuiverFamily::DTilde(3)).is_err());
    }

    #[test]
    fn preprojective_dispatch() {
        // Case 5.5 at n = 0 is f_0 = 1.
        assert!(quiver_hall_preprojective(&QuiverHallCase::PreprojTwoToOne { n: 0 })
            .unwrap()
            .is_one());
        assert!(quiver_hall_preprojective(&QuiverHallCase::PreprojTwoToOne { n: -1 }).is_err());
        // Case 5.6 with d = n = 1 delegates to the homogeneous formula.
        let w3 = w(&[2, 2, 2]);
        let e = make_extension_bundle(&w3, w3.zero(), w3.zero()).unwrap();
        let e2 = make_extension_bundle(&w3, w3.omega(), w3.zero()).unwrap();
        let v = quiver_hall_preprojective(&QuiverHallCase::PreprojHomog {
            w: w3.clone(),
            e,
            e2,
            d: 1,
            n: 1,
        })
        .unwrap();
        assert_eq!(v, "q - 3".parse().unwrap());
        // Case 5.7 at N = -1 is 1.
        assert_eq!(ext_except_value(-1).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn preinjective_formulas() {
        let w3 = w(&[2, 3, 5]);
        // Homogeneous simple over a degree-1 point: a_R = q - 1.
        let r = TubeIndec::homogeneous(1, 1, "z").unwrap();
        assert!(quiver_hall_preinjective(&QuiverHallCase::InjRegular { w: w3.clone(), r })
            .unwrap()
            .is_one());
        assert!(quiver_hall_preinjective(&QuiverHallCase::InjInjRegular)
            .unwrap()
            .is_one());
        // F with a pairing of 1 is f_0 = 1.
        assert!(quiver_hall_preinjective(&QuiverHallCase::InjFromDefectTwo { n: 1 })
            .unwrap()
            .is_one());
        // Regular pair: a_{R2} / ((q-1) |Hom(L, R1)|) can have negative
        // exponents; it stays Laurent-exact.
        let r1 = TubeIndec::homogeneous(1, 1, "z1").unwrap();
        let r2 = TubeIndec::homogeneous(1, 2, "z2").unwrap();
        let v = quiver_hall_preinjective(&QuiverHallCase::InjRegularPair {
            w: w3.clone(),
            l: w3.zero(),
            r1,
            r2,
        })
        .unwrap();
        assert_eq!(v, LaurentPoly::one());
    }

    #[test]
    fn preinjective_first_formula_consistent_with_aut() {
        // F^R_{IP} (q - 1) = a_R for every supported regular.
        let w3 = w(&[2, 3, 5]);
        let q_minus_1: LaurentPoly = "q - 1".parse().unwrap();
        for r in [
            TubeIndec::exceptional(&w3, 1, 2, 4).unwrap(),
            TubeIndec::exceptional(&w3, 2, 0, 7).unwrap(),
            TubeIndec::homogeneous(2, 3, "z").unwrap(),
        ] {
            let f =
                quiver_hall_preinjective(&QuiverHallCase::InjRegular { w: w3.clone(), r: r.clone() })
                    .unwrap();
            assert_eq!(&f * &q_minus_1, aut_count_indec(&w3, &r).unwrap());
        }
    }

    #[test]
    fn preinjective_homog_matches_sheaf_bracket() {
        // Dividing the homogeneous preinjective formula by its prefactor
        // recovers the sheaf-side bracket, symbolically.
        for d in 1..=2i64 {
            for n in 1..=3i64 {
                let case = QuiverHallCase::InjHomog { d, n };
                let value = quiver_hall_preinjective(&case).unwrap();
                let qd = LaurentPoly::monomial(d, 1);
                let aut = &(&qd - &LaurentPoly::one()) * &LaurentPoly::monomial(d * (n - 1), 1);
                let prefactor =
                    poly_div(&aut, &"q - 1".parse::<LaurentPoly>().unwrap()).unwrap();
                let ratio = crate::polyring::ratio_div(&RationalFn::from(value), &prefactor).unwrap();
                assert_eq!(
                    ratio,
                    RationalFn::from(ext_homog_bracket(d, n)),
                    "d={} n={}",
                    d,
                    n
                );
            }
        }
    }

    #[test]
    fn preinjective_exceptional_cases() {
        let w3 = w(&[2, 3, 5]);
        let r = TubeIndec::exceptional(&w3, 0, 0, 1).unwrap();
        let v = quiver_hall_preinjective(&QuiverHallCase::InjExc {
            w: w3.clone(),
            r: r.clone(),
            n_cap: -1,
        })
        .unwrap();
        assert!(v.is_one());
        let v = quiver_hall_preinjective(&QuiverHallCase::InjExc { w: w3, r, n_cap: 0 })
            .unwrap();
        assert_eq!(v, "q - 2".parse().unwrap());
    }

    #[test]
    fn two_weight_family_has_no_extension_bundles() {
        let w2 = weight_of_type(&QuiverFamily::ATilde(2, 3)).unwrap();
        assert!(make_extension_bundle(&w2, w2.zero(), w2.zero()).is_err());
    }

    #[test]
    fn line_and_torsion_cases_work_over_two_weights() {
        // The defect -1 configurations only need the L-group and torsion
        // layers, which support two-weight types.
        let w2 = weight_of_type(&QuiverFamily::ATilde(2, 3)).unwrap();
        let torsion = TorsionSheaf::new(vec![
            TubeIndec::homogeneous(1, 1, "z").unwrap(),
            TubeIndec::exceptional(&w2, 1, 1, 1).unwrap(),
        ]);
        // y = c + x2 matches both tops; the classes balance to
        // [O(y)] - [O] = delta + [S_{2,1}].
        let y = w2.normal_form(&[0, 1], 1).unwrap();
        let value = quiver_hall_preprojective(&QuiverHallCase::PreprojQuotient {
            x: w2.zero(),
            y,
            r: torsion,
            w: w2.clone(),
        })
        .unwrap();
        assert!(value.is_one());
        // A non-matching top in the exceptional tube kills the sequence.
        let bad = TorsionSheaf::new(vec![
            TubeIndec::homogeneous(1, 1, "z").unwrap(),
            TubeIndec::exceptional(&w2, 1, 0, 1).unwrap(),
        ]);
        let y = w2.normal_form(&[0, 1], 1).unwrap();
        let value = quiver_hall_preprojective(&QuiverHallCase::PreprojQuotient {
            x: w2.zero(),
            y,
            r: bad,
            w: w2.clone(),
        })
        .unwrap();
        assert!(value.is_zero());
        // Splitting off a regular summand also stays within two weights.
        let value = quiver_hall_preprojective(&QuiverHallCase::PreprojSplitMiddle {
            l: w2.zero(),
            l2: w2.canonical(),
            r: TubeIndec::homogeneous(1, 2, "z").unwrap(),
            r_sub: Some(TubeIndec::homogeneous(1, 1, "z").unwrap()),
            w: w2,
        })
        .unwrap();
        assert_eq!(value, "q - 1".parse().unwrap());
    }

    #[test]
    fn s_convention_matches_quiver_normalization() {
        // Sanity tie between the s-family conventions and the preinjective
        // prefactor: s_0^(1) = 1 matches a_{R}/(q-1) for a simple regular.
        assert_eq!(
            s_poly(0, 1).unwrap(),
            RationalFn::from(LaurentPoly::one())
        );
    }

    #[test]
    fn rotation_zero_case() {
        let zero = IsoType::zero();
        let records = derived_rotation_check(&zero, &zero, 1, 2).unwrap();
        assert_eq!(records.len(), 1);
        assert!(records[0].verdict);
        assert_eq!(records[0].lhs, BigRational::one());
    }

    #[test]
    fn rotation_simple_cases() {
        let s = IsoType::new(vec![(0, 1)]);
        for r in derived_rotation_check(&s, &s, 1, 2).unwrap() {
            assert!(r.verdict, "{:?}", r);
        }
        // p = 2 sweep at dimension 3 runs through assorted middles.
        let table = TubeTable::build(2, 2, 3).unwrap();
        for a in 0..table.classes.len() {
            for b in 0..table.classes.len() {
                if table.total_dim(a) + table.total_dim(b) > 3 {
                    continue;
                }
                for r in rotation_check_pair(&table, (a, b)).unwrap() {
                    assert!(r.verdict, "{:?}", r);
                }
            }
        }
    }
}
