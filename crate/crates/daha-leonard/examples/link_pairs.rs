//! Deciding whether two Leonard pairs are linked, and realising the link.

use daha_leonard::daha::{link_check, link_construct, restricted_leonard_pairs, RootSign};
use daha_leonard::exactfield::FieldElement;
use daha_leonard::leonard::HuangData;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::from_int(2);
    let h = HuangData::from_ints(3, 5, 7, 2);
    let h2 = HuangData::from_ints(3, 5, 7, 0);

    let witnesses = link_check(&h, &h2, &q);
    println!("{} witnesses, first case {}", witnesses.len(), witnesses[0].case_id);
    println!("exchanged inputs give case {}", link_check(&h2, &h, &q)[0].case_id);

    let (case, module) = link_construct(&h, &h2, &q, None)?;
    println!(
        "case {} realised by {} with n = {} and k = {:?}",
        case.case_id,
        module.xtype,
        module.params.n,
        module.params.k.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    let pairs = restricted_leonard_pairs(&module)?;
    println!("extracted d = {} and d' = {}", pairs.plus.huang.d, pairs.minus.huang.d);

    // Case ii needs (abc q^{1-d})^{1/2} = sqrt(105): the module lives over Q(sqrt(105)).
    let h = HuangData::from_ints(3, 5, 7, 1);
    let h2 = HuangData::from_ints(6, 10, 14, 0);
    for sign in [RootSign::Plus, RootSign::Minus] {
        let (case, module) = link_construct(&h, &h2, &q, Some(sign))?;
        println!("case {} with {sign:?} root: k0 = {}", case.case_id, module.params.k[0]);
    }

    let unrelated = HuangData::from_ints(3, 11, 7, 1);
    println!("unrelated pair linked: {}", !link_check(&HuangData::from_ints(3, 5, 7, 2), &unrelated, &q).is_empty());
    Ok(())
}
