//! Exact matrices: products, inverses, kernels, eigenspaces and shape tests.

use daha_leonard::exactfield::FieldElement;
use daha_leonard::exactlinalg::{eigenspace, kernel_basis, restrict, ExactMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = ExactMatrix::from_ints(&[&[2, 1, 0], &[0, 3, 1], &[0, 0, 5]]);
    let inv = m.mat_inverse()?;
    println!("inverse first row: {:?}", inv.row(0).iter().map(|x| x.to_string()).collect::<Vec<_>>());
    assert_eq!(&m * &inv, ExactMatrix::identity(3, Default::default()));

    println!("eigenvalues: {:?}", m.exact_eigenvalues()?.map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    let e3 = eigenspace(&m, &FieldElement::from_int(3))?;
    println!("eigenspace for 3 has dimension {}", e3.dim());
    println!("m restricted to it: {:?}", restrict(&m, &e3)?.get(0, 0).to_string());

    let singular = ExactMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    println!("rank {} and kernel dimension {}", singular.rank()?, kernel_basis(&singular)?.dim());

    println!(
        "upper bidiagonal: {}, upper tridiagonal: {}, lower tridiagonal: {}",
        m.is_upper_bidiagonal(),
        m.is_upper_tridiagonal(),
        m.is_lower_tridiagonal()
    );
    Ok(())
}
