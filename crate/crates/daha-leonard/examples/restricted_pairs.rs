//! The Leonard pairs on the two eigenspaces of t0, with their Huang data.

use daha_leonard::daha::{build_module, restricted_leonard_pairs, t0_split, XType};
use daha_leonard::exactfield::FieldElement;
use daha_leonard::leonard::HuangData;

fn show(h: &HuangData) -> String {
    format!("({}, {}, {}, {})", h.a, h.b, h.c, h.d)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::from_int(2);
    let k = [FieldElement::frac(1, 4), 3.into(), 7.into(), 5.into()];
    let module = build_module(XType::DDa, 3, &k, &q)?;

    let split = t0_split(&module)?;
    println!("diameters on V(k0) and V(k0^-1): {:?}", split.diameters());

    let pairs = restricted_leonard_pairs(&module)?;
    for (side, p) in [("V(k0)", &pairs.plus), ("V(k0^-1)", &pairs.minus)] {
        println!("{side}:");
        println!("  theta      {:?}", p.orderings.theta.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        println!("  theta*     {:?}", p.orderings.theta_star.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        println!("  Huang data {} (closed form {})", show(&p.huang), show(&p.closed_form));
    }
    println!("{} checks passed", pairs.report.len());
    Ok(())
}
