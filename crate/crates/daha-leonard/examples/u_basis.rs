//! The u-basis, in which Y and A become lower tridiagonal and, after
//! rescaling, X and B become upper tridiagonal.

use daha_leonard::daha::{build_module, u_basis, XType};
use daha_leonard::exactfield::FieldElement;

fn show(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::from_int(3);
    let n = 4;
    // DS: k0 k1 k2 k3 = q^{-n-1}.
    let (k0, k1, k2) = (FieldElement::from_int(5), FieldElement::from_int(7), FieldElement::frac(1, 11));
    let k3 = q.pow(-(n as i64) - 1) / (&(&k0 * &k1) * &k2);
    let module = build_module(XType::DS, n, &[k0, k1, k2, k3], &q)?;
    let ub = u_basis(&module)?;

    println!("beta: {:?}", show(&ub.beta));
    println!("e:    {:?}", show(&ub.e));
    println!("Y diagonal: {:?}", show(&ub.y.diagonal_entries()));
    println!(
        "Y lower tridiagonal: {}, A lower tridiagonal: {}",
        ub.y.is_lower_tridiagonal(),
        ub.a.is_lower_tridiagonal()
    );
    println!(
        "X upper tridiagonal: {}, B upper tridiagonal: {}",
        ub.x.is_upper_tridiagonal(),
        ub.b.is_upper_tridiagonal()
    );
    println!("{} checks, all passed: {}", ub.report.len(), ub.report.all_passed());
    Ok(())
}
