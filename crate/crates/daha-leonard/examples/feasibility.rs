//! Deciding whether a module is feasible, and which clause fails if not.

use daha_leonard::daha::{build_module, is_feasible, XType};
use daha_leonard::exactfield::FieldElement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::from_int(2);
    let cases = [
        (XType::DDa, 3, [FieldElement::frac(1, 4), 3.into(), 7.into(), 5.into()]),
        (XType::DDa, 1, [FieldElement::frac(1, 2), 3.into(), 7.into(), 5.into()]),
        // k0 k1 = q^{-2}: Y has a repeated eigenvalue and is not diagonalizable.
        (XType::DDa, 3, [FieldElement::frac(1, 4), 1.into(), 7.into(), 5.into()]),
    ];
    for (xtype, n, k) in cases {
        let module = build_module(xtype, n, &k, &q)?;
        let report = is_feasible(&module)?;
        println!(
            "{xtype} n={n} k0={}: feasible={} t0 eigenspaces {:?} {}",
            k[0],
            report.feasible,
            report.t0_dims,
            report.failed_clause.unwrap_or_default()
        );
    }
    Ok(())
}
