//! Exact scalars: rationals, square roots, and a quadratic extension.

use daha_leonard::exactfield::{is_valid_q, FieldContext, FieldElement};
use daha_leonard::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldElement::frac(3, 2);
    println!("q = {q}, valid q: {}", is_valid_q(&q));
    println!("q^-3 = {}", q.pow(-3));
    println!("q + q^-1 = {}", q.plus_inverse());

    let nine_fourths = FieldElement::frac(9, 4);
    println!("sqrt(9/4) = {:?}", nine_fourths.sqrt_in_field()?.map(|s| s.to_string()));

    // 105 is not a rational square: move to Q(sqrt(105)) and take the root there.
    let r = FieldElement::from_int(105);
    assert!(r.sqrt_in_field()?.is_none());
    let ctx = FieldContext::for_radicand(&Rational::from_integer(105.into()))?;
    let root = r.in_context(ctx)?.sqrt_in_field()?.expect("square in its own field");
    println!("sqrt(105) = {root}, squared back: {}", &root * &root);

    let x = &root + &FieldElement::one_in(ctx);
    println!("1/(1 + sqrt(105)) = {}", x.recip());
    println!("norm(1 + sqrt(105)) = {}", x.norm());
    println!("as JSON: {}", x.to_json_string());
    Ok(())
}
