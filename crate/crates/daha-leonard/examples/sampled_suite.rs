//! Sampling valid parameters across all five X-types and checking each module.

use daha_leonard::daha::{build_module, is_feasible, restricted_leonard_pairs, sample_valid_params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut feasible = 0;
    let instances = sample_valid_params(seed, 25, 7);
    for (xtype, p) in &instances {
        let module = build_module(*xtype, p.n, &p.k, &p.q)?;
        if is_feasible(&module)?.feasible {
            let pairs = restricted_leonard_pairs(&module)?;
            feasible += 1;
            println!(
                "{xtype:>3} n={} q={}: diameters ({}, {})",
                p.n, p.q, pairs.plus.huang.d, pairs.minus.huang.d
            );
        } else {
            println!("{xtype:>3} n={} q={}: not feasible", p.n, p.q);
        }
    }
    println!("{feasible} of {} sampled modules are feasible", instances.len());
    Ok(())
}
