mod common;

use common::{g_product, ladder, qpow, rat, rat_matrix, Q};
use daha_leonard::daha::{
    beta, build_module, derived_elements, eigenvalue_ladder, is_feasible, link_check, link_construct,
    restricted_leonard_pairs, Sampler, twist, verify_hq_relations, Automorphism,
    HqModule, XType,
};
use daha_leonard::exactlinalg::eigenspace;
use daha_leonard::leonard::huang_equivalent;
use num_traits::Zero;
use proptest::prelude::*;

/// One valid instance of the type chosen by `seed`.
fn sampled(seed: u64, max_n: usize) -> HqModule {
    let xtype = XType::ALL[(seed % 5) as usize];
    let p = Sampler::new(seed).sample(xtype, max_n).expect("a sample");
    build_module(xtype, p.n, &p.k, &p.q).expect("valid parameters build")
}

fn is_diag_with(m: &[Vec<Q>], diag: &[Q]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { x == &diag[i] } else { x.is_zero() })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn relations_and_spectrum(seed in 0u64..10_000) {
        let m = sampled(seed, 5);
        prop_assert!(verify_hq_relations(&m).all_passed());
        let k: [Q; 4] = std::array::from_fn(|i| rat(&m.params.k[i]));
        let q = rat(&m.params.q);
        let n = m.params.n as i64;

        let lhs = match m.xtype {
            XType::DS => &k[0] * &k[1] * &k[2] * &k[3],
            XType::DDa => &k[0] * &k[0],
            XType::DDb => &k[3] * &k[3],
            XType::SSa => &k[1] * &k[1],
            XType::SSb => &k[2] * &k[2],
        };
        prop_assert_eq!(lhs, qpow(&q, -n - 1));

        let mu = ladder(m.xtype, m.params.n, &k, &q);
        let d = derived_elements(&m);
        prop_assert!(is_diag_with(&rat_matrix(&d.x), &mu));
        for v in &m.mu {
            prop_assert_eq!(eigenspace(&d.x, v).unwrap().dim(), 1);
        }
        let g0: Vec<Q> = mu.iter().map(|x| g_product(x, &k[0], &k[3])).collect();
        prop_assert!(is_diag_with(&rat_matrix(&(&d.g[0] * &d.g[0])), &g0));
        let g2: Vec<Q> = mu.iter().map(|x| g_product(&(x * &q), &k[1], &k[2])).collect();
        prop_assert!(is_diag_with(&rat_matrix(&(&d.g[2] * &d.g[2])), &g2));

        let t0 = m.t(0);
        prop_assert_eq!(&d.a * t0, t0 * &d.a);
        prop_assert_eq!(&d.b * t0, t0 * &d.b);
    }

    #[test]
    fn sigma_twist_swaps_x_and_y(seed in 0u64..10_000) {
        let m = sampled(seed, 5);
        let (tw, report) = twist(&m, Automorphism::Sigma).unwrap();
        prop_assert!(report.all_passed());
        let d = derived_elements(&m);
        let e = derived_elements(&tw);
        prop_assert_eq!(&e.y, &d.x);
        prop_assert_eq!(&e.x, &(&(&m.rep.t_inv(0) * &d.y) * m.t(0)));
        // When Y is diagonalizable, so is the X of the twist.
        let f = is_feasible(&m).unwrap();
        if f.y_by_spectrum {
            let mut seen = Vec::new();
            let mut total = 0;
            for r in 0..=m.params.n {
                let b = beta(m.xtype, &m.params.k, &m.params.q, r);
                for v in [b.clone(), b.recip()] {
                    if !seen.contains(&v) {
                        total += eigenspace(&e.x, &v).unwrap().dim();
                        seen.push(v);
                    }
                }
            }
            prop_assert_eq!(total, m.dim());
        }
    }

    #[test]
    fn feasible_instances_give_linked_pairs(seed in 0u64..10_000) {
        let m = sampled(seed, 5);
        let f = is_feasible(&m).unwrap();
        prop_assume!(f.feasible);
        let pairs = restricted_leonard_pairs(&m).unwrap();
        prop_assert!(pairs.report.all_passed());
        let q = &m.params.q;
        let (h, h2) = (&pairs.plus.huang, &pairs.minus.huang);
        prop_assert!(!link_check(h, h2, q).is_empty());
        let (_, built) = link_construct(h, h2, q, None).unwrap();
        let again = restricted_leonard_pairs(&built).unwrap();
        prop_assert!(huang_equivalent(&again.plus.huang, h) || huang_equivalent(&again.plus.huang, h2));
    }

    #[test]
    fn ladder_is_a_path_of_alternating_bonds(seed in 0u64..10_000) {
        let m = sampled(seed, 9);
        let mu = eigenvalue_ladder(m.xtype, m.params.n, &m.params.k, &m.params.q).unwrap();
        let q2 = m.params.q.pow(-2);
        for w in mu.windows(2) {
            let p = &w[0] * &w[1];
            prop_assert!(p.is_one() || p == q2);
        }
        // The first bond is single exactly for the SS types.
        if mu.len() >= 2 {
            let ss = matches!(m.xtype, XType::SSa | XType::SSb);
            prop_assert_eq!((&mu[0] * &mu[1]).is_one(), ss);
        }
    }
}
