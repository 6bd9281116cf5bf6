//! A q-Racah Leonard pair from Huang data, and back again.

use daha_leonard::exactfield::FieldElement;
use daha_leonard::leonard::{
    askey_wilson_third, build_pair_from_huang, huang_data_from_array, huang_equivalent,
    parameter_arrays, recognize_leonard_pair, HuangData,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::from_int(2);
    let h = HuangData::from_ints(3, 5, 7, 1);
    let pair = build_pair_from_huang(&h, &q)?;
    println!("A =\n{:?}", pair.a.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());

    let orderings = recognize_leonard_pair(&pair.a, &pair.a_star, None).expect("a Leonard pair");
    let arrays = parameter_arrays(&pair, &orderings)?;
    for (i, pa) in arrays.iter().enumerate() {
        println!(
            "array {i}: phi = {:?}, phi2 = {:?}",
            pa.phi.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            pa.phi2.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        );
    }

    let back = huang_data_from_array(&arrays[0], &q)?.expect("q-Racah");
    println!("recovered ({}, {}, {}, {}), equivalent: {}", back.a, back.b, back.c, back.d, huang_equivalent(&back, &h));

    let third = askey_wilson_third(&pair, &h, &q)?;
    println!("Askey-Wilson third element diagonal: {:?}", third.diagonal_entries().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    Ok(())
}
