//! Deciders for identities of the varieties T, SL, C, D1, D2, M, N and the
//! duals of M and N.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::blocks::{are_1_equivalent, are_equivalent, full_decompose, is_reduced, BlockClass, BlockError};
use crate::monoid::{build_sw, satisfies_identity, FiniteMonoid, Witness};
use crate::word::{Identity, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VarietyId {
    T,
    SL,
    C,
    D1,
    D2,
    M,
    N,
    DualM,
    DualN,
}

impl VarietyId {
    pub const ALL: [VarietyId; 9] = [
        VarietyId::T,
        VarietyId::SL,
        VarietyId::C,
        VarietyId::D1,
        VarietyId::D2,
        VarietyId::M,
        VarietyId::N,
        VarietyId::DualM,
        VarietyId::DualN,
    ];
}

impl fmt::Display for VarietyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VarietyId::T => "T",
            VarietyId::SL => "SL",
            VarietyId::C => "C",
            VarietyId::D1 => "D1",
            VarietyId::D2 => "D2",
            VarietyId::M => "M",
            VarietyId::N => "N",
            VarietyId::DualM => "DualM",
            VarietyId::DualN => "DualN",
        };
        f.write_str(s)
    }
}

impl FromStr for VarietyId {
    type Err = DecideError;

    fn from_str(s: &str) -> Result<VarietyId, DecideError> {
        VarietyId::ALL
            .into_iter()
            .find(|v| v.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| DecideError::UnknownVariety(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    NotReduced(#[from] BlockError),
    #[error("unknown variety {0:?}")]
    UnknownVariety(String),
    #[error("operation not available for variety {0}")]
    Unsupported(VarietyId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Criterion,
    FiniteOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    fn criterion(holds: bool) -> Verdict {
        Verdict {
            holds,
            method: Method::Criterion,
            witness: None,
        }
    }

    fn oracle(m: &FiniteMonoid, id: &Identity) -> Verdict {
        let s = satisfies_identity(m, id);
        Verdict {
            holds: s.holds,
            method: Method::FiniteOracle,
            witness: s.witness,
        }
    }
}

/// S(xtx), a generator of D2.
pub fn sxtx() -> &'static FiniteMonoid {
    static M: OnceLock<FiniteMonoid> = OnceLock::new();
    M.get_or_init(|| build_sw(&[crate::word::w("xtx")]))
}

/// S(xysxty), a generator of M.
pub fn sxysxty() -> &'static FiniteMonoid {
    static M: OnceLock<FiniteMonoid> = OnceLock::new();
    M.get_or_init(|| build_sw(&[crate::word::w("xysxty")]))
}

/// S(xsytxy), a generator of the dual of M.
pub fn sxsytxy() -> &'static FiniteMonoid {
    static M: OnceLock<FiniteMonoid> = OnceLock::new();
    M.get_or_init(|| build_sw(&[crate::word::w("xsytxy")]))
}

pub fn holds_in(v: VarietyId, id: &Identity) -> Result<Verdict, DecideError> {
    Ok(match v {
        VarietyId::T => Verdict::criterion(true),
        VarietyId::SL => Verdict::criterion(holds_in_sl(id)),
        VarietyId::C => Verdict::criterion(holds_in_c(id)),
        VarietyId::D1 => Verdict::criterion(holds_in_d1(id)),
        VarietyId::D2 => holds_in_d2(id),
        VarietyId::M => holds_in_m(id),
        VarietyId::N => holds_in_n(id)?,
        VarietyId::DualM => holds_in_dual(VarietyId::M, id)?,
        VarietyId::DualN => holds_in_dual(VarietyId::N, id)?,
    })
}

pub fn holds_in_sl(id: &Identity) -> bool {
    id.lhs.content() == id.rhs.content()
}

/// Each letter's occurrence count, capped at 2, agrees on both sides.
pub fn holds_in_c(id: &Identity) -> bool {
    let capped = |w: &Word| -> BTreeMap<Letter, usize> {
        w.occurrence_counts()
            .into_iter()
            .map(|(l, c)| (l, c.min(2)))
            .collect()
    };
    capped(&id.lhs) == capped(&id.rhs)
}

/// Same simple letters, same multiple letters, simple letters in the same
/// order.
pub fn holds_in_d1(id: &Identity) -> bool {
    let (u, v) = (&id.lhs, &id.rhs);
    let simple = u.simple_letters();
    simple == v.simple_letters()
        && u.multiple_letters() == v.multiple_letters()
        && u.restrict(&simple) == v.restrict(&simple)
}

/// Brute force over S(xtx).
pub fn holds_in_d2(id: &Identity) -> Verdict {
    Verdict::oracle(sxtx(), id)
}

/// 1-equivalence for reduced identities; otherwise brute force over
/// S(xysxty).
pub fn holds_in_m(id: &Identity) -> Verdict {
    if is_reduced(&id.lhs) && is_reduced(&id.rhs) {
        let holds = are_1_equivalent(&id.lhs, &id.rhs).expect("both sides reduced");
        Verdict::criterion(holds)
    } else {
        Verdict::oracle(sxysxty(), id)
    }
}

/// Equivalent words whose corresponding 1-blocks coincide. Only reduced
/// identities are accepted.
pub fn holds_in_n(id: &Identity) -> Result<Verdict, DecideError> {
    let fu = full_decompose(&id.lhs)?;
    full_decompose(&id.rhs)?;
    if !are_equivalent(&id.lhs, &id.rhs) {
        return Ok(Verdict::criterion(false));
    }
    let rhs_blocks = crate::blocks::decompose(&id.rhs).blocks;
    let same_one_blocks = fu
        .blocks
        .iter()
        .zip(&rhs_blocks)
        .filter(|(b, _)| b.class == BlockClass::OneBlock)
        .all(|(b, r)| b.letters == *r);
    Ok(Verdict::criterion(same_one_blocks))
}

/// Decides `id` in the dual of `v` by deciding the reversed identity in `v`.
pub fn holds_in_dual(v: VarietyId, id: &Identity) -> Result<Verdict, DecideError> {
    match v {
        VarietyId::M | VarietyId::N => holds_in(v, &id.reversed()),
        other => Err(DecideError::Unsupported(other)),
    }
}

/// Whether a reduced word is an isoterm for M or N.
///
/// For M: every 2-block has at most one letter and every subblock of every
/// 1-block has at most one letter. For N: every 2-block has at most one
/// letter.
pub fn is_isoterm(v: VarietyId, w: &Word) -> Result<bool, DecideError> {
    let f = full_decompose(w)?;
    let two_blocks_ok = f
        .blocks
        .iter()
        .filter(|b| b.class == BlockClass::TwoBlock)
        .all(|b| b.letters.len() <= 1);
    match v {
        VarietyId::M => Ok(two_blocks_ok
            && f
                .blocks
                .iter()
                .filter(|b| b.class == BlockClass::OneBlock)
                .all(|b| b.subblocks.iter().all(|s| s.letters.len() <= 1))),
        VarietyId::N => Ok(two_blocks_ok),
        other => Err(DecideError::Unsupported(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{is_isoterm_bounded, FiniteMonoid};
    use crate::word::{ident, w};

    const SIGMA1: &str = "xyzxty = yxzxty";
    const SIGMA2: &str = "xtyzxy = xtyzyx";
    const SIGMA3: &str = "xzxyty = xzyxty";

    /// Commutative monoid {1, a, a^2 = a^3}.
    fn capped_model() -> FiniteMonoid {
        let table = vec![0, 1, 2, 1, 2, 2, 2, 2, 2];
        FiniteMonoid::from_table(vec!["1".into(), "a".into(), "aa".into()], 0, table).unwrap()
    }

    #[test]
    fn semilattice() {
        assert!(holds_in_sl(&ident("xy = yx")));
        assert!(holds_in_sl(&ident("x = xx")));
        assert!(!holds_in_sl(&ident("x = y")));
    }

    #[test]
    fn commutative_capped() {
        assert!(holds_in_c(&ident("xx = xxx")));
        assert!(holds_in_c(&ident("xy = yx")));
        assert!(holds_in_c(&ident("xyx = xxy")));
        assert!(!holds_in_c(&ident("x = xx")));
        // cross-check against the 3-element model, which generates C
        let m = capped_model();
        for text in ["xx = xxx", "xy = yx", "xyx = xxy", "x = xx", "xyy = xxy", "xxyy = xxxyyy"] {
            let id = ident(text);
            assert_eq!(holds_in_c(&id), satisfies_identity(&m, &id).holds, "{text}");
        }
    }

    #[test]
    fn d1_examples() {
        assert!(holds_in_d1(&ident("xxy = xyx")));
        assert!(holds_in_d1(&ident("xyx = yxx")));
        assert!(!holds_in_d1(&ident("xy = yx")));
        assert!(holds_in_d1(&ident("xtx = xxt")));
    }

    #[test]
    fn d2_examples() {
        assert!(holds_in_d2(&ident(SIGMA1)).holds);
        assert!(holds_in_d2(&ident(SIGMA2)).holds);
        assert!(holds_in_d2(&ident("xxy = yxx")).holds);
        let v = holds_in_d2(&ident("xtx = xxt"));
        assert!(!v.holds);
        assert_eq!(v.method, Method::FiniteOracle);
        let wit = v.witness.unwrap();
        assert_eq!(wit.lhs_value, "xtx");
        assert_eq!(wit.rhs_value, "0");
    }

    #[test]
    fn m_examples() {
        let v = holds_in_m(&ident("xysxty = yxsxty"));
        assert!(!v.holds);
        assert_eq!(v.method, Method::Criterion);
        assert!(holds_in_m(&ident(SIGMA2)).holds);
        let v = holds_in_m(&ident(SIGMA3));
        assert!(v.holds);
        assert_eq!(v.method, Method::FiniteOracle);
        assert!(!holds_in_m(&ident(SIGMA1)).holds);
        assert!(holds_in_m(&ident("xyzxy = yxzxy")).holds);
    }

    #[test]
    fn n_examples() {
        assert!(!holds_in_n(&ident("xyzxy = yxzxy")).unwrap().holds);
        assert!(holds_in_n(&ident(SIGMA2)).unwrap().holds);
        assert!(holds_in_n(&ident("xysxty = xysxty")).unwrap().holds);
        assert!(matches!(
            holds_in_n(&ident(SIGMA3)),
            Err(DecideError::NotReduced(_))
        ));
    }

    #[test]
    fn dual_examples() {
        assert!(holds_in_dual(VarietyId::M, &ident(SIGMA1)).unwrap().holds);
        assert!(!holds_in_dual(VarietyId::M, &ident(SIGMA2)).unwrap().holds);
        assert!(holds_in(VarietyId::DualN, &ident("xsx = xsx")).unwrap().holds);
        assert!(holds_in_dual(VarietyId::C, &ident("x = x")).is_err());
    }

    #[test]
    fn trivial_variety_accepts_everything() {
        assert!(holds_in(VarietyId::T, &ident("x = y")).unwrap().holds);
    }

    #[test]
    fn isoterm_criterion_examples() {
        assert!(is_isoterm(VarietyId::M, &w("xysxty")).unwrap());
        assert!(is_isoterm(VarietyId::M, &w("xyzxty")).unwrap());
        assert!(!is_isoterm(VarietyId::N, &w("xtyzxy")).unwrap());
        assert!(!is_isoterm(VarietyId::M, &w("xysyx")).unwrap());
        assert!(!is_isoterm(VarietyId::N, &w("xysyx")).unwrap());
        assert!(holds_in_n(&ident("xysyx = xysxy")).unwrap().holds);
        for word in ["xysxty", "xyzxty", "xtyzxy", "xysyx"] {
            let u = w(word);
            assert_eq!(
                is_isoterm(VarietyId::M, &u).unwrap(),
                is_isoterm_bounded(sxysxty(), &u, u.len() + 2, 3).is_isoterm(),
                "{word}"
            );
        }
    }

    #[test]
    fn parses_variety_names() {
        assert_eq!("dualm".parse::<VarietyId>().unwrap(), VarietyId::DualM);
        assert!("Q".parse::<VarietyId>().is_err());
    }
}
