//! Deciding and realising the linked relation between two q-Racah Leonard pairs.

use serde::{Deserialize, Serialize};

use crate::exactfield::{FieldContext, FieldElement};
use crate::leonard::{check_huang_admissible, huang_equivalent, HuangData, LeonardError};

use super::construct::build_module;
use super::feasible::is_feasible;
use super::restricted::restricted_leonard_pairs;
use super::{DahaError, HqModule, XType};

/// The seven rows of the linking table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkCaseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl LinkCaseId {
    pub const ALL: [LinkCaseId; 7] = [
        LinkCaseId::I,
        LinkCaseId::II,
        LinkCaseId::III,
        LinkCaseId::IV,
        LinkCaseId::V,
        LinkCaseId::VI,
        LinkCaseId::VII,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            LinkCaseId::I => "i",
            LinkCaseId::II => "ii",
            LinkCaseId::III => "iii",
            LinkCaseId::IV => "iv",
            LinkCaseId::V => "v",
            LinkCaseId::VI => "vi",
            LinkCaseId::VII => "vii",
        }
    }

    /// `d' − d`.
    fn shift(self) -> i64 {
        match self {
            LinkCaseId::I => -2,
            LinkCaseId::II => -1,
            LinkCaseId::III | LinkCaseId::IV | LinkCaseId::V => 0,
            LinkCaseId::VI => 1,
            LinkCaseId::VII => 2,
        }
    }

    /// `(a'/a, b'/b, c'/c)`.
    fn ratios(self, q: &FieldElement) -> [FieldElement; 3] {
        let one = FieldElement::one();
        let q2 = q.pow(2);
        match self {
            LinkCaseId::I | LinkCaseId::VII => [one.clone(), one.clone(), one],
            LinkCaseId::II => [q.clone(), q.clone(), q.clone()],
            LinkCaseId::III => [q2, one.clone(), one],
            LinkCaseId::IV => [one.clone(), q2, one],
            LinkCaseId::V => [one.clone(), one, q2],
            LinkCaseId::VI => {
                let qi = q.recip();
                [qi.clone(), qi.clone(), qi]
            }
        }
    }

    /// The inequality column, on the unprimed Huang data.
    fn inequalities_hold(self, h: &HuangData, q: &FieldElement) -> bool {
        let d = h.d as i64;
        let a2 = &h.a * &h.a;
        let b2 = &h.b * &h.b;
        let c2 = &h.c * &h.c;
        let avoid_minus = |x: &FieldElement| x != &q.pow(-2 * d);
        let avoid_pm = |x: &FieldElement| x != &q.pow(2 * d) && x != &q.pow(-2 * d);
        let qm2 = q.pow(-2);
        match self {
            LinkCaseId::I | LinkCaseId::VII => true,
            LinkCaseId::II | LinkCaseId::VI => avoid_minus(&a2) && avoid_minus(&b2),
            LinkCaseId::III => avoid_pm(&b2) && a2 != qm2,
            LinkCaseId::IV => avoid_pm(&a2) && b2 != qm2,
            LinkCaseId::V => avoid_pm(&a2) && avoid_pm(&b2) && c2 != qm2,
        }
    }

    /// The X-type built for this case; cases vi and vii are built as ii and i
    /// with the two inputs exchanged.
    pub fn xtype(self) -> XType {
        match self {
            LinkCaseId::I | LinkCaseId::VII => XType::DDa,
            LinkCaseId::II | LinkCaseId::VI => XType::DS,
            LinkCaseId::III => XType::SSa,
            LinkCaseId::IV => XType::DDb,
            LinkCaseId::V => XType::SSb,
        }
    }

    /// For cases vi and vii, the case they become once the inputs are exchanged.
    pub fn exchanged(self) -> Option<LinkCaseId> {
        match self {
            LinkCaseId::VI => Some(LinkCaseId::II),
            LinkCaseId::VII => Some(LinkCaseId::I),
            _ => None,
        }
    }
}

impl std::fmt::Display for LinkCaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.roman())
    }
}

/// Which square root to use for `k0` in the `DS` construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    /// The root returned by the field's square-root routine (positive rational
    /// coefficient).
    Plus,
    Minus,
}

/// A witness: a row of the table and the variants of both Huang data that
/// satisfy it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkCase {
    pub case_id: LinkCaseId,
    /// Which of `a, b, c` of the first input were inverted.
    pub inverted: [bool; 3],
    /// Which of `a', b', c'` of the second input were inverted.
    pub inverted2: [bool; 3],
    /// The variants used; at diameter 0 the free `c` is set by the row.
    pub h: HuangData,
    pub h2: HuangData,
}

/// Values tried for a free `c` when both diameters are 0.
fn free_c_candidates() -> Vec<FieldElement> {
    [(1, 1), (2, 1), (3, 1), (5, 1), (7, 1), (1, 2), (1, 3), (1, 5), (1, 7), (11, 1), (13, 1)]
        .iter()
        .map(|&(n, d)| FieldElement::frac(n, d))
        .collect()
}

fn patterns(d: usize) -> Vec<[bool; 3]> {
    let cs: &[bool] = if d == 0 { &[false] } else { &[false, true] };
    let mut out = Vec::new();
    for &a in &[false, true] {
        for &b in &[false, true] {
            for &c in cs {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Matches one pair of variants against one row, filling in a free `c`.
fn match_row(
    case: LinkCaseId,
    h: &HuangData,
    h2: &HuangData,
    q: &FieldElement,
    c_free_choice: &FieldElement,
) -> Option<(HuangData, HuangData)> {
    if h2.d as i64 - h.d as i64 != case.shift() {
        return None;
    }
    let [ra, rb, rc] = case.ratios(q);
    if h2.a != &h.a * &ra || h2.b != &h.b * &rb {
        return None;
    }
    let (mut h, mut h2) = (h.clone(), h2.clone());
    match (h.d == 0, h2.d == 0) {
        (false, false) => {
            if h2.c != &h.c * &rc {
                return None;
            }
        }
        (false, true) => h2.c = &h.c * &rc,
        (true, false) => h.c = &h2.c / &rc,
        (true, true) => {
            h.c = c_free_choice.clone();
            h2.c = &h.c * &rc;
        }
    }
    case.inequalities_hold(&h, q).then_some((h, h2))
}

/// Every witness that the two Huang data satisfy a row of the linking table.
///
/// Each of `a, b, c` of each input may be inverted independently (`c` is
/// free at diameter 0, where it is set from the other input by the row's
/// ratio, or chosen from a fixed list of small values satisfying the row
/// when both diameters are 0). Witnesses are ordered by case, then by
/// inversion pattern. The result is empty when either input is inadmissible.
pub fn link_check(h: &HuangData, h2: &HuangData, q: &FieldElement) -> Vec<LinkCase> {
    if !check_huang_admissible(h, q) || !check_huang_admissible(h2, q) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for case in LinkCaseId::ALL {
        for p in patterns(h.d) {
            let v = h.inverted(p[0], p[1], p[2]);
            for p2 in patterns(h2.d) {
                let v2 = h2.inverted(p2[0], p2[1], p2[2]);
                let found = if h.d == 0 && h2.d == 0 {
                    free_c_candidates()
                        .iter()
                        .find_map(|c| match_row(case, &v, &v2, q, c))
                } else {
                    match_row(case, &v, &v2, q, &FieldElement::one())
                };
                if let Some((hv, hv2)) = found {
                    out.push(LinkCase {
                        case_id: case,
                        inverted: p,
                        inverted2: p2,
                        h: hv,
                        h2: hv2,
                    });
                }
            }
        }
    }
    out
}

/// `(abc q^{1−d})^{1/2}` with the chosen sign, extending `Q` when the
/// radicand is not a square.
fn ds_root(h: &HuangData, q: &FieldElement, sign: Option<RootSign>) -> Result<FieldElement, DahaError> {
    let radicand = &(&(&h.a * &h.b) * &h.c) * &q.pow(1 - h.d as i64);
    let root = match radicand.sqrt_in_field()? {
        Some(r) => r,
        None => {
            let r = radicand.as_rational().ok_or_else(|| {
                DahaError::Leonard(LeonardError::ExtensionRequired(format!("sqrt({radicand})")))
            })?;
            if !radicand.context().is_rational() {
                return Err(DahaError::Leonard(LeonardError::ExtensionRequired(format!(
                    "sqrt({radicand}) needs a second quadratic extension"
                ))));
            }
            let ctx = FieldContext::for_radicand(r)?;
            radicand
                .in_context(ctx)?
                .sqrt_in_field()?
                .expect("a radicand is a square in its own extension")
        }
    };
    let neg = -&root;
    Ok(match sign {
        Some(RootSign::Plus) => root,
        Some(RootSign::Minus) => neg,
        None => {
            if neg.to_json_string() < root.to_json_string() {
                neg
            } else {
                root
            }
        }
    })
}

/// `(X-type, n, k0..k3)` for the unprimed Huang data `h` (the pair on `V(k0)`)
/// and the diameter `d'` of the other pair, by the row of `case`. Cases vi
/// and vii must be exchanged to ii and i before calling.
pub fn defki(
    case: LinkCaseId,
    h: &HuangData,
    d2: usize,
    q: &FieldElement,
    sign: Option<RootSign>,
) -> Result<(XType, usize, [FieldElement; 4]), DahaError> {
    let xtype = case.xtype();
    if case.exchanged().is_some() {
        return Err(DahaError::CheckFailed(format!(
            "case {case} must be exchanged before building"
        )));
    }
    let d = h.d as i64;
    let n = h.d + d2 + 1;
    let (a, b, c) = (&h.a, &h.b, &h.c);
    let k = match xtype {
        XType::DS => {
            let k0 = ds_root(h, q, sign)?;
            let s = &q.pow(-d) / &k0;
            [k0, a * &s, c * &s, b * &s]
        }
        XType::DDa => [q.pow(-d), a.clone(), c.clone(), b.clone()],
        XType::DDb => [b * q, c.clone(), a.clone(), q.pow(-d - 1)],
        XType::SSa => [a * q, q.pow(-d - 1), b.clone(), c.clone()],
        XType::SSb => [c * q, b.clone(), q.pow(-d - 1), a.clone()],
    };
    Ok((xtype, n, k))
}

/// Builds the module for one witness row without consulting the inequality
/// column, then requires feasibility and that the restricted Huang data
/// reproduce the inputs (exchanged for cases vi and vii). The ratio and
/// diameter conditions must hold for `h, h2` as given.
pub fn link_construct_case(
    h: &HuangData,
    h2: &HuangData,
    q: &FieldElement,
    case: LinkCaseId,
    sign: Option<RootSign>,
) -> Result<HqModule, DahaError> {
    let (base_case, first, second) = match case.exchanged() {
        Some(c) => (c, h2, h),
        None => (case, h, h2),
    };
    let (xtype, n, k) = defki(base_case, first, second.d, q, sign)?;
    let module = build_module(xtype, n, &k, q)?;
    let feas = is_feasible(&module)?;
    if let Some(clause) = feas.failed_clause {
        return Err(DahaError::Infeasible(clause));
    }
    let pairs = restricted_leonard_pairs(&module)?;
    if !huang_equivalent(&pairs.plus.huang, first) || !huang_equivalent(&pairs.minus.huang, second) {
        return Err(DahaError::CheckFailed(
            "restricted Huang data do not reproduce the inputs".into(),
        ));
    }
    Ok(module)
}

/// Realises the link: tries each witness of [`link_check`] in order (and,
/// when both diameters are 0, each value of the free `c`) and returns the
/// first module that builds, is feasible and reproduces the inputs.
pub fn link_construct(
    h: &HuangData,
    h2: &HuangData,
    q: &FieldElement,
    sign: Option<RootSign>,
) -> Result<(LinkCase, HqModule), DahaError> {
    let witnesses = link_check(h, h2, q);
    let mut first_err = None;
    for w in witnesses {
        let mut attempts = vec![(w.h.clone(), w.h2.clone())];
        if w.h.d == 0 && w.h2.d == 0 {
            let rc = w.case_id.ratios(q)[2].clone();
            attempts.extend(free_c_candidates().into_iter().map(|c| {
                let mut a = w.h.clone();
                let mut b = w.h2.clone();
                b.c = &c * &rc;
                a.c = c;
                (a, b)
            }));
        }
        for (a, b) in attempts {
            if !w.case_id.inequalities_hold(&a, q) {
                continue;
            }
            match link_construct_case(&a, &b, q, w.case_id, sign) {
                Ok(m) => {
                    let found = LinkCase { h: a, h2: b, ..w.clone() };
                    return Ok((found, m));
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
    }
    Err(first_err.unwrap_or(DahaError::NotLinked))
}
