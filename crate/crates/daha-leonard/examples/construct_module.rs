//! Building an H_q module by X-type and checking every defining relation.

use daha_leonard::daha::{build_module, derived_identity_report, verify_hq_relations, x_diagram, XType};
use daha_leonard::exactfield::FieldElement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::from_int(2);
    let k = [FieldElement::frac(1, 4), 3.into(), 7.into(), 5.into()];
    let module = build_module(XType::DDa, 3, &k, &q)?;

    println!("X eigenvalues: {:?}", module.mu.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let diagram = x_diagram(&module.mu, &q)?;
    println!("diagram shape {:?}, path {:?}, bonds {:?}", diagram.shape, diagram.path, diagram.bonds);

    let relations = verify_hq_relations(&module);
    let identities = derived_identity_report(&module);
    for check in relations.checks.iter().chain(&identities.checks) {
        println!("{:>5}  {}", if check.passed { "ok" } else { "FAIL" }, check.name);
    }

    let invalid = build_module(XType::DDa, 3, &[FieldElement::frac(1, 2), 3.into(), 7.into(), 5.into()], &q);
    println!("k0 = 1/2 is rejected: {}", invalid.unwrap_err());
    Ok(())
}
