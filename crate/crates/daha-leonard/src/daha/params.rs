//! Parameter validation, the eigenvalue ladder of `X`, the X-diagram, and the
//! per-type scalar tables (`β_r`, `e_r`, eigenspace dimensions).

use serde::Serialize;

use crate::exactfield::{is_valid_q, FieldElement};

use super::{DahaError, XType};

/// The first violated condition, by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamViolation {
    pub name: String,
    pub detail: String,
}

impl std::fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.name, self.detail)
    }
}

fn violation(name: impl Into<String>, detail: impl Into<String>) -> ParamViolation {
    ParamViolation {
        name: name.into(),
        detail: detail.into(),
    }
}

/// `q^e` for `e` in `from, from + step, …` up to and including `to`.
fn powers(q: &FieldElement, from: i64, to: i64, step: i64) -> Vec<FieldElement> {
    let mut out = Vec::new();
    let mut e = from;
    while (step > 0 && e <= to) || (step < 0 && e >= to) {
        out.push(q.pow(e));
        e += step;
    }
    out
}

/// `±x` for each `x`.
fn plus_minus(xs: &[FieldElement]) -> Vec<FieldElement> {
    xs.iter().flat_map(|x| [x.clone(), -x]).collect()
}

fn avoid(
    name: &str,
    values: &[FieldElement],
    forbidden: &[FieldElement],
) -> Result<(), ParamViolation> {
    match values.iter().find(|v| forbidden.contains(v)) {
        Some(v) => Err(violation(name, format!("{v} is forbidden"))),
        None => Ok(()),
    }
}

/// Checks the parity of `n`, the type's defining equation and every
/// finite-membership condition of the construction table, in that order,
/// returning the first violation.
pub fn validate_params(
    xtype: XType,
    n: usize,
    k: &[FieldElement; 4],
    q: &FieldElement,
) -> Result<(), ParamViolation> {
    if !is_valid_q(q) {
        return Err(violation("q", "q must be rational and not 0, 1 or -1"));
    }
    if let Some(i) = k.iter().position(FieldElement::is_zero) {
        return Err(violation("nonzero k", format!("k{i} is zero")));
    }
    if !xtype.parity_ok(n) {
        return Err(violation(
            "parity",
            format!("{xtype} needs {} n, got {n}", if xtype == XType::DS { "even" } else { "odd" }),
        ));
    }
    let ni = n as i64;
    let target = q.pow(-ni - 1);
    let [k0, k1, k2, k3] = k;
    let (lhs, what) = match xtype {
        XType::DS => (k0 * k1 * k2 * k3, "k0k1k2k3"),
        XType::DDa => (k0 * k0, "k0^2"),
        XType::DDb => (k3 * k3, "k3^2"),
        XType::SSa => (k1 * k1, "k1^2"),
        XType::SSb => (k2 * k2, "k2^2"),
    };
    if lhs != target {
        return Err(violation(
            format!("{xtype} defining equation"),
            format!("{what} = {lhs} but q^(-n-1) = {target}"),
        ));
    }
    let inv = |x: &FieldElement| x.recip();
    match xtype {
        XType::DS => {
            avoid(
                "DS: +-k0k3 not in q^-1..q^-n",
                &plus_minus(&[k0 * k3]),
                &powers(q, -1, -ni, -1),
            )?;
            avoid(
                "DS: +-k_i not in q^-1..q^-(n/2)",
                &plus_minus(k),
                &powers(q, -1, -ni / 2, -1),
            )?;
        }
        XType::DDa | XType::DDb | XType::SSa | XType::SSb => {
            let (single, label) = match xtype {
                XType::DDa => (k3, "k3"),
                XType::DDb => (k0, "k0"),
                XType::SSa => (k2, "k2"),
                _ => (k1, "k1"),
            };
            avoid(
                &format!("{xtype}: +-{label}^(+-1) not in 1..q^((n-1)/2)"),
                &plus_minus(&[single.clone(), inv(single)]),
                &powers(q, 0, (ni - 1) / 2, 1),
            )?;
            let (base, x, y, label) = match xtype {
                XType::DDa | XType::DDb => (k0 * k3, k1, k2, "k0k3k1^(+-1)k2^(+-1)"),
                _ => (k1 * k2, k0, k3, "k1k2k0^(+-1)k3^(+-1)"),
            };
            let products: Vec<FieldElement> = [x.clone(), inv(x)]
                .iter()
                .flat_map(|a| [y.clone(), inv(y)].map(|b| &base * &(a * &b)))
                .collect();
            avoid(
                &format!("{xtype}: {label} not in q^-1, q^-3, ..., q^-n"),
                &products,
                &powers(q, -1, -ni, -2),
            )?;
        }
    }
    Ok(())
}

/// `μ_r` from the type's ladder formula; defined for every `r ≥ 0`.
pub(crate) fn ladder_value(xtype: XType, k: &[FieldElement; 4], q: &FieldElement, r: usize) -> FieldElement {
    let r = r as i64;
    let even = r % 2 == 0;
    match xtype {
        XType::DS | XType::DDa | XType::DDb => {
            let base = &k[0] * &k[3];
            if even {
                &base * &q.pow(r)
            } else {
                (&base * &q.pow(r + 1)).recip()
            }
        }
        XType::SSa | XType::SSb => {
            let base = &k[1] * &k[2];
            if even {
                (&base * &q.pow(r + 1)).recip()
            } else {
                &base * &q.pow(r)
            }
        }
    }
}

/// A bond of the X-diagram: `μν = 1` (single) or `μν = q⁻²` (double).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bond {
    Single,
    Double,
}

/// Shape class of a reduced X-diagram, by the bonds at its two ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiagramShape {
    DS,
    DD,
    SS,
}

/// The X-diagram on a list of distinct eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XDiagram {
    /// Vertices carrying a loop, with the loop kind (`μ² = 1` or `μ² = q⁻²`).
    pub loops: Vec<(usize, Bond)>,
    /// Bonds between distinct vertices `i < j`.
    pub bonds: Vec<(usize, usize, Bond)>,
    /// Vertices in path order, starting from a double-bond end when there is one.
    pub path: Vec<usize>,
    pub shape: DiagramShape,
}

fn bond_between(x: &FieldElement, y: &FieldElement, q: &FieldElement) -> Option<Bond> {
    let p = x * y;
    if p.is_one() {
        Some(Bond::Single)
    } else if p == q.pow(-2) {
        Some(Bond::Double)
    } else {
        None
    }
}

/// Builds the X-diagram, checks that the reduced diagram is a path whose
/// bonds alternate, and classifies it as DS, DD or SS. A single vertex is DS.
pub fn x_diagram(mu: &[FieldElement], q: &FieldElement) -> Result<XDiagram, DahaError> {
    let n = mu.len();
    let fail = |m: &str| DahaError::CheckFailed(format!("X-diagram: {m}"));
    for i in 0..n {
        if mu[i + 1..].contains(&mu[i]) {
            return Err(fail("eigenvalues are not distinct"));
        }
    }
    let loops: Vec<(usize, Bond)> = (0..n)
        .filter_map(|i| bond_between(&mu[i], &mu[i], q).map(|b| (i, b)))
        .collect();
    let mut bonds = Vec::new();
    let mut adj: Vec<Vec<(usize, Bond)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if let Some(b) = bond_between(&mu[i], &mu[j], q) {
                bonds.push((i, j, b));
                adj[i].push((j, b));
                adj[j].push((i, b));
            }
        }
    }
    if n == 1 {
        return Ok(XDiagram {
            loops,
            bonds,
            path: vec![0],
            shape: DiagramShape::DS,
        });
    }
    if bonds.len() != n - 1 || adj.iter().any(|a| a.is_empty() || a.len() > 2) {
        return Err(fail("reduced diagram is not a path"));
    }
    let ends: Vec<usize> = (0..n).filter(|&i| adj[i].len() == 1).collect();
    if ends.len() != 2 {
        return Err(fail("reduced diagram is not a path"));
    }
    let end_bond = |v: usize| adj[v][0].1;
    let start = if end_bond(ends[1]) == Bond::Double && end_bond(ends[0]) == Bond::Single {
        ends[1]
    } else {
        ends[0]
    };
    let mut path = vec![start];
    let mut kinds = Vec::new();
    let mut prev = usize::MAX;
    let mut cur = start;
    while path.len() < n {
        let &(next, b) = adj[cur]
            .iter()
            .find(|(x, _)| *x != prev)
            .ok_or_else(|| fail("reduced diagram is not connected"))?;
        if path.contains(&next) {
            return Err(fail("reduced diagram has a cycle"));
        }
        path.push(next);
        kinds.push(b);
        prev = cur;
        cur = next;
    }
    if kinds.windows(2).any(|w| w[0] == w[1]) {
        return Err(fail("bonds do not alternate"));
    }
    let shape = match (kinds[0], *kinds.last().expect("n >= 2")) {
        (Bond::Double, Bond::Double) => DiagramShape::DD,
        (Bond::Single, Bond::Single) => DiagramShape::SS,
        _ => DiagramShape::DS,
    };
    Ok(XDiagram {
        loops,
        bonds,
        path,
        shape,
    })
}

fn expected_shape(xtype: XType) -> DiagramShape {
    match xtype {
        XType::DS => DiagramShape::DS,
        XType::DDa | XType::DDb => DiagramShape::DD,
        XType::SSa | XType::SSb => DiagramShape::SS,
    }
}

/// The ladder `μ_0, …, μ_n`; asserts the values are distinct and that the
/// reduced X-diagram is the path `μ_0 – μ_1 – … – μ_n` of the type's shape.
pub fn eigenvalue_ladder(
    xtype: XType,
    n: usize,
    k: &[FieldElement; 4],
    q: &FieldElement,
) -> Result<Vec<FieldElement>, DahaError> {
    let mu: Vec<FieldElement> = (0..=n).map(|r| ladder_value(xtype, k, q, r)).collect();
    let diagram = x_diagram(&mu, q)?;
    if diagram.shape != expected_shape(xtype) {
        return Err(DahaError::CheckFailed(format!(
            "X-diagram shape {:?} does not match type {xtype}",
            diagram.shape
        )));
    }
    for r in 0..n {
        let expected = if (r % 2 == 0) == matches!(xtype, XType::SSa | XType::SSb) {
            Bond::Single
        } else {
            Bond::Double
        };
        if bond_between(&mu[r], &mu[r + 1], q) != Some(expected) {
            return Err(DahaError::CheckFailed(format!(
                "ladder step {r} is not a {expected:?} bond"
            )));
        }
    }
    Ok(mu)
}

/// The inequality table for `Y` to be multiplicity-free.
pub fn condition_y_multiplicity_free(
    xtype: XType,
    n: usize,
    k: &[FieldElement; 4],
    q: &FieldElement,
) -> bool {
    let p = match xtype {
        XType::DS | XType::DDa | XType::SSa => &k[0] * &k[1],
        XType::DDb | XType::SSb => &k[2] * &k[3],
    };
    let forbidden = powers(q, -1, -(n as i64), -1);
    !plus_minus(&[p]).iter().any(|v| forbidden.contains(v))
}

/// `(dim V(k0), dim V(k0⁻¹))` for a feasible module of the given type.
/// A zero second entry means `t0` has a single eigenvalue.
pub fn expected_eigenspace_dims(xtype: XType, n: usize) -> (usize, usize) {
    match xtype {
        XType::DS => (n / 2 + 1, n / 2),
        XType::DDa => ((n + 3) / 2, (n - 1) / 2),
        XType::DDb | XType::SSa | XType::SSb => ((n + 1) / 2, (n + 1) / 2),
    }
}

/// `β_r` for the u-basis recursion.
pub fn beta(xtype: XType, k: &[FieldElement; 4], q: &FieldElement, r: usize) -> FieldElement {
    let ri = r as i64;
    let even = r % 2 == 0;
    let k01 = &k[0] * &k[1];
    let k23 = &k[2] * &k[3];
    match xtype {
        XType::DS | XType::DDa => &k01 * &q.pow(if even { ri } else { ri + 1 }),
        XType::DDb => (&k23 * &q.pow(if even { ri + 1 } else { ri })).recip(),
        XType::SSa => (&k01 * &q.pow(if even { ri } else { ri + 1 })).recip(),
        XType::SSb => &k23 * &q.pow(if even { ri + 1 } else { ri }),
    }
}

/// `e_r` for `r ≥ 1` (and `e_0 = 1`); errors on a zero denominator.
pub fn e_scale(
    xtype: XType,
    k: &[FieldElement; 4],
    q: &FieldElement,
    r: usize,
) -> Result<FieldElement, DahaError> {
    if r == 0 {
        return Ok(FieldElement::one());
    }
    let one = FieldElement::one();
    let qr = q.pow(r as i64);
    let [k0, k1, k2, k3] = k;
    let prod = k0 * k1 * k2 * k3;
    let even = r % 2 == 0;
    let factor = |x: FieldElement| &one - &(&x * &qr);
    let (num, den) = match (xtype, even) {
        (XType::DS | XType::DDa, true) => (one.clone(), factor(one.clone()) * factor(k0 * k0)),
        (XType::DS | XType::DDa, false) => (
            one.clone(),
            factor(prod.clone()) * factor(&(k0 * k1 * k3) / k2),
        ),
        (XType::DDb, true) => (-&one, k0 * k0 * factor(one.clone()) * factor(k3 * k3)),
        (XType::DDb, false) => (-(k2 * k2), factor(prod.clone()) * factor(&(k0 * k2 * k3) / k1)),
        (XType::SSa, true) => (-&one, k2 * k2 * factor(one.clone()) * factor(k1 * k1)),
        (XType::SSa, false) => (-(k0 * k0), factor(prod.clone()) * factor(&(k0 * k1 * k2) / k3)),
        (XType::SSb, true) => (one.clone(), factor(one.clone()) * factor(k2 * k2)),
        (XType::SSb, false) => (one.clone(), factor(prod.clone()) * factor(&(k1 * k2 * k3) / k0)),
    };
    if den.is_zero() {
        return Err(DahaError::CheckFailed(format!("e_{r} has a zero denominator")));
    }
    Ok(&num / &den)
}
