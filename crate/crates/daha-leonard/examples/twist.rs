//! Twisting a module by the automorphisms rho and sigma.

use daha_leonard::daha::{build_module, derived_elements, twist, Automorphism, XType};
use daha_leonard::exactfield::FieldElement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::from_int(2);
    let k = [FieldElement::frac(1, 4), 3.into(), 7.into(), 5.into()];
    let module = build_module(XType::DDa, 3, &k, &q)?;

    let (rho, report) = twist(&module, Automorphism::Rho)?;
    println!("rho: parameters {:?}, {} checks passed", rho.k.iter().map(|x| x.to_string()).collect::<Vec<_>>(), report.len());

    let (sigma, report) = twist(&module, Automorphism::Sigma)?;
    println!("sigma: parameters {:?}, {} checks passed", sigma.k.iter().map(|x| x.to_string()).collect::<Vec<_>>(), report.len());
    println!("sigma fixes t0: {}", sigma.t[0] == module.rep.t[0]);
    println!("Y of the sigma twist is X: {}", derived_elements(&sigma).y == derived_elements(&module).x);

    let mut r = module.rep.clone();
    for _ in 0..4 {
        r = twist(&r, Automorphism::Rho)?.0;
    }
    println!("rho^4 is the identity: {}", r == module.rep);
    Ok(())
}
