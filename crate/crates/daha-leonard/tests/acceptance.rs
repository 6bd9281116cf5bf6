//! The acceptance suite: one PASS/FAIL line per criterion, exit status 1 if
//! any criterion fails. Every comparison is exact.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{g_product, huang_ladder, ladder, qpow, rat, rat_matrix, r, split_sequences, Q};
use daha_leonard::cli;
use daha_leonard::daha::{
    build_module, derived_elements, is_feasible, link_check, link_construct,
    link_construct_case, restricted_leonard_pairs, sample_valid_params, u_basis,
    verify_hq_relations, HqModule, LinkCaseId, XType,
};
use daha_leonard::exactfield::FieldElement;
use daha_leonard::exactlinalg::{eigenspace, ExactMatrix};
use daha_leonard::leonard::{
    askey_wilson_holds, askey_wilson_third, build_pair_from_huang, check_huang_admissible,
    huang_data_from_array, huang_equivalent, parameter_arrays, qracah_parameter,
    recognize_leonard_pair, HuangData,
};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget_s: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(budget_s), || {
        format!("took {:.2} s, budget {budget_s} s", elapsed.as_secs_f64())
    })
}

fn diag_matches(m: &ExactMatrix, diag: &[Q]) -> bool {
    let rm = rat_matrix(m);
    rm.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { x == &diag[i] } else { x.is_zero() })
    })
}

fn k_rat(m: &HqModule) -> [Q; 4] {
    std::array::from_fn(|i| rat(&m.params.k[i]))
}

/// `β_r` of each type, written out from the table.
fn beta_oracle(xtype: XType, k: &[Q; 4], q: &Q, r: i64) -> Q {
    let even = r % 2 == 0;
    let k01 = &k[0] * &k[1];
    let k23 = &k[2] * &k[3];
    match xtype {
        XType::DS | XType::DDa => k01 * qpow(q, if even { r } else { r + 1 }),
        XType::DDb => (k23 * qpow(q, if even { r + 1 } else { r })).recip(),
        XType::SSa => (k01 * qpow(q, if even { r } else { r + 1 })).recip(),
        XType::SSb => k23 * qpow(q, if even { r + 1 } else { r }),
    }
}

/// The diagonal of `Y` on the u-basis: `β_0, β_1⁻¹, β_2, …` for the D types
/// and `β_0⁻¹, β_1, β_2⁻¹, …` for the S types.
fn y_diagonal_oracle(m: &HqModule) -> Vec<Q> {
    let (k, q) = (k_rat(m), rat(&m.params.q));
    let ss = matches!(m.xtype, XType::SSa | XType::SSb);
    (0..=m.params.n as i64)
        .map(|r| {
            let b = beta_oracle(m.xtype, &k, &q, r);
            if (r % 2 == 0) != ss {
                b
            } else {
                b.recip()
            }
        })
        .collect()
}

fn sampled_modules() -> Vec<HqModule> {
    sample_valid_params(2024, 200, 9)
        .into_iter()
        .map(|(xtype, p)| build_module(xtype, p.n, &p.k, &p.q).expect("valid parameters build"))
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let q = FieldElement::from_int(2);
    let (h, h2) = (HuangData::from_ints(3, 5, 7, 2), HuangData::from_ints(3, 5, 7, 0));
    let cases = link_check(&h, &h2, &q);
    ensure(!cases.is_empty() && cases.iter().all(|c| c.case_id == LinkCaseId::I), || {
        format!("link_check gave {:?}", cases.iter().map(|c| c.case_id).collect::<Vec<_>>())
    })?;
    let (_, m) = link_construct(&h, &h2, &q, None).map_err(|e| e.to_string())?;
    let k = [FieldElement::frac(1, 4), 3.into(), 7.into(), 5.into()];
    ensure(m.xtype == XType::DDa && m.params.n == 3 && m.params.k == k, || {
        format!("built {} n={} k={:?}", m.xtype, m.params.n, m.params.k)
    })?;
    ensure(verify_hq_relations(&m).all_passed(), || "relations fail".into())?;

    let dir = std::env::temp_dir().join(format!("daha-leonard-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let module_path = dir.join("module.json");
    let report_path = dir.join("extract.json");
    let file = cli::ModuleFile::from_module(&m);
    std::fs::write(&module_path, serde_json::to_string(&file).unwrap()).map_err(|e| e.to_string())?;
    let code = cli::run([
        "daha-leonard".as_ref(),
        "extract".as_ref(),
        module_path.as_os_str(),
        "--out".as_ref(),
        report_path.as_os_str(),
    ]);
    ensure(code == cli::EXIT_OK, || format!("extract exited with {code}"))?;
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let side = |key: &str| -> Result<HuangData, String> {
        let f: cli::HuangFile =
            serde_json::from_value(report["result"][key].clone()).map_err(|e| e.to_string())?;
        Ok(f.huang())
    };
    let (plus, minus) = (side("plus")?, side("minus")?);
    let _ = std::fs::remove_dir_all(&dir);
    ensure(huang_equivalent(&plus, &h) && huang_equivalent(&minus, &h2), || {
        format!("extracted {plus:?} and {minus:?}")
    })?;
    let elapsed = start.elapsed();
    within(elapsed, 1)?;
    Ok(format!("case i, DDa n=3 k=(1/4,3,7,5), extraction reproduces both inputs ({:.3} s)", elapsed.as_secs_f64()))
}

fn criterion_2(modules: &[HqModule], sampling: Duration) -> Outcome {
    let start = Instant::now();
    ensure(modules.len() >= 200, || format!("only {} instances", modules.len()))?;
    let mut per_type = [0usize; 5];
    for (i, m) in modules.iter().enumerate() {
        let fail = |what: &str| format!("instance #{i} ({} n={}): {what}", m.xtype, m.params.n);
        per_type[XType::ALL.iter().position(|t| *t == m.xtype).unwrap()] += 1;
        ensure(m.params.n <= 9, || fail("n > 9"))?;
        let report = verify_hq_relations(m);
        if let Some(c) = report.first_failure() {
            return Err(fail(&c.name));
        }
        let (k, q) = (k_rat(m), rat(&m.params.q));
        let mu = ladder(m.xtype, m.params.n, &k, &q);
        let d = derived_elements(m);
        ensure(diag_matches(&d.x, &mu), || fail("X is not diag(ladder)"))?;
        for v in &m.mu {
            let dim = eigenspace(&d.x, v).map_err(|e| e.to_string())?.dim();
            ensure(dim == 1, || fail("X eigenspace not one-dimensional"))?;
        }
        let g0: Vec<Q> = mu.iter().map(|x| g_product(x, &k[0], &k[3])).collect();
        ensure(diag_matches(&(&d.g[0] * &d.g[0]), &g0), || fail("G0^2 != G(X, k0, k3)"))?;
        let g2: Vec<Q> = mu.iter().map(|x| g_product(&(x * &q), &k[1], &k[2])).collect();
        ensure(diag_matches(&(&d.g[2] * &d.g[2]), &g2), || fail("G2^2 != G(qX, k1, k2)"))?;
    }
    ensure(per_type.iter().all(|&c| c > 0), || format!("type counts {per_type:?}"))?;
    let elapsed = start.elapsed() + sampling;
    within(elapsed, 60)?;
    Ok(format!(
        "{} instances (DS/DDa/DDb/SSa/SSb = {per_type:?}), 0 failures ({:.2} s)",
        modules.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_3(modules: &[HqModule]) -> Outcome {
    let start = Instant::now();
    let mut feasible = 0;
    for (i, m) in modules.iter().enumerate() {
        let fail = |what: String| format!("instance #{i} ({} n={}): {what}", m.xtype, m.params.n);
        if !is_feasible(m).map_err(|e| fail(e.to_string()))?.feasible {
            continue;
        }
        feasible += 1;
        let pairs = restricted_leonard_pairs(m).map_err(|e| fail(e.to_string()))?;
        if let Some(c) = pairs.report.first_failure() {
            return Err(fail(c.name.clone()));
        }
        let q = &m.params.q;
        for side in [&pairs.plus, &pairs.minus] {
            let o = recognize_leonard_pair(&side.pair.a, &side.pair.a_star, None)
                .ok_or_else(|| fail("not a Leonard pair".into()))?;
            ensure(
                qracah_parameter(&o.theta, q).is_some() && qracah_parameter(&o.theta_star, q).is_some(),
                || fail("orderings are not q-Racah".into()),
            )?;
            ensure(huang_equivalent(&side.huang, &side.closed_form), || {
                fail(format!("Huang data {:?} vs closed form {:?}", side.huang, side.closed_form))
            })?;
        }
    }
    ensure(feasible >= 50, || format!("only {feasible} feasible instances"))?;
    Ok(format!("{feasible} feasible instances, both t0-eigenspaces agree ({:.2} s)", start.elapsed().as_secs_f64()))
}

fn criterion_4(modules: &[HqModule]) -> Outcome {
    let start = Instant::now();
    let mut bidiagonal = 0;
    for (i, m) in modules.iter().enumerate() {
        let fail = |what: String| format!("instance #{i} ({} n={}): {what}", m.xtype, m.params.n);
        let ub = u_basis(m).map_err(|e| fail(e.to_string()))?;
        ensure(ub.y.is_lower_tridiagonal() && ub.y_inv.is_lower_tridiagonal(), || fail("Y shape".into()))?;
        ensure(ub.a.is_lower_tridiagonal(), || fail("A shape".into()))?;
        ensure(ub.y.diagonal_entries().iter().map(rat).collect::<Vec<_>>() == y_diagonal_oracle(m), || {
            fail("Y diagonal".into())
        })?;
        ensure(ub.x.is_upper_tridiagonal() && ub.x_inv.is_upper_tridiagonal(), || fail("X shape".into()))?;
        ensure(ub.b.is_upper_tridiagonal(), || fail("B shape".into()))?;
        if let Some(c) = ub.report.first_failure() {
            return Err(fail(c.name.clone()));
        }
        if !is_feasible(m).map_err(|e| fail(e.to_string()))?.feasible {
            continue;
        }
        let pairs = restricted_leonard_pairs(m).map_err(|e| fail(e.to_string()))?;
        for side in [&pairs.plus, &pairs.minus] {
            ensure(side.pair.a.is_lower_bidiagonal(), || fail("A not lower bidiagonal".into()))?;
            ensure(side.pair.a_star.is_upper_bidiagonal(), || fail("B not upper bidiagonal".into()))?;
        }
        let diagonal_checks = pairs.report.checks.iter().filter(|c| c.name.contains("diagonal on"));
        for c in diagonal_checks {
            ensure(c.passed, || fail(c.name.clone()))?;
        }
        bidiagonal += 1;
    }
    Ok(format!(
        "{} u-bases tridiagonal, {bidiagonal} feasible modules bidiagonal on both eigenspaces ({:.2} s)",
        modules.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn random_huang(rng: &mut ChaCha8Rng) -> (HuangData, FieldElement) {
    let value = |rng: &mut ChaCha8Rng| {
        let p = *[2i64, 3, 5, 7, 11, 13].choose(rng).unwrap();
        let s = if rng.gen_bool(0.2) { -1 } else { 1 };
        if rng.gen_bool(0.5) {
            FieldElement::from_int(s * p)
        } else {
            FieldElement::frac(s, p)
        }
    };
    let q = *[(2, 1), (3, 1), (1, 2), (-2, 1), (3, 2)].choose(rng).unwrap();
    let h = HuangData::new(value(rng), value(rng), value(rng), rng.gen_range(0..=5));
    (h, FieldElement::frac(q.0, q.1))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tested = 0;
    let mut rigid = 0;
    while tested < 120 {
        let (h, q) = random_huang(&mut rng);
        if !check_huang_admissible(&h, &q) {
            continue;
        }
        tested += 1;
        let fail = |what: String| format!("({}, {}, {}, {}) q={q}: {what}", h.a, h.b, h.c, h.d);
        let pair = build_pair_from_huang(&h, &q).map_err(|e| fail(e.to_string()))?;
        let o = recognize_leonard_pair(&pair.a, &pair.a_star, None).ok_or_else(|| fail("not recognised".into()))?;
        for pa in parameter_arrays(&pair, &o).map_err(|e| fail(e.to_string()))? {
            let back = huang_data_from_array(&pa, &q)
                .map_err(|e| fail(e.to_string()))?
                .ok_or_else(|| fail("not q-Racah".into()))?;
            ensure(huang_equivalent(&back, &h), || fail(format!("round trip gave {back:?}")))?;
        }
        let third = askey_wilson_third(&pair, &h, &q).map_err(|e| fail(e.to_string()))?;
        ensure(askey_wilson_holds(&pair, &h, &q, &third), || fail("Askey-Wilson relations".into()))?;
        if h.d >= 1 {
            for shift in [1, -3] {
                let moved = third.add_scalar(&FieldElement::from_int(shift)).unwrap();
                ensure(!askey_wilson_holds(&pair, &h, &q, &moved), || fail("third element not rigid".into()))?;
            }
            rigid += 1;
        }
    }

    let q = FieldElement::from_int(2);
    let h = HuangData::from_ints(3, 5, 7, 1);
    let pair = build_pair_from_huang(&h, &q).map_err(|e| e.to_string())?;
    let o = recognize_leonard_pair(&pair.a, &pair.a_star, None).ok_or("d=1 pair not recognised")?;
    let theta = huang_ladder(&r(3, 1), 1, &r(2, 1));
    let theta_star = huang_ladder(&r(5, 1), 1, &r(2, 1));
    let arrays = parameter_arrays(&pair, &o).map_err(|e| e.to_string())?;
    let pa = arrays
        .iter()
        .find(|pa| {
            pa.theta.iter().map(rat).collect::<Vec<_>>() == theta
                && pa.theta_star.iter().map(rat).collect::<Vec<_>>() == theta_star
        })
        .ok_or("no array with the a- and b-ladders")?;
    let (phi, phi2) = split_sequences(&r(3, 1), &r(5, 1), &r(7, 1), 1, &r(2, 1));
    ensure(phi == vec![r(-624, 35)] && phi2 == vec![r(384, 35)], || "oracle split sequences".into())?;
    ensure(rat(&pa.phi[0]) == r(-624, 35) && rat(&pa.phi2[0]) == r(384, 35), || {
        format!("phi_1 = {}, phi2_1 = {}", pa.phi[0], pa.phi2[0])
    })?;
    Ok(format!(
        "{tested} round trips, {rigid} rigid third elements, phi_1 = -624/35, phi2_1 = 384/35 ({:.2} s)",
        start.elapsed().as_secs_f64()
    ))
}

/// `(d' − d, a'/a, b'/b, c'/c)` of each row, as exponents of `q`.
fn row(case: LinkCaseId) -> (i64, [i64; 3]) {
    match case {
        LinkCaseId::I => (-2, [0, 0, 0]),
        LinkCaseId::II => (-1, [1, 1, 1]),
        LinkCaseId::III => (0, [2, 0, 0]),
        LinkCaseId::IV => (0, [0, 2, 0]),
        LinkCaseId::V => (0, [0, 0, 2]),
        LinkCaseId::VI => (1, [-1, -1, -1]),
        LinkCaseId::VII => (2, [0, 0, 0]),
    }
}

/// The partner of `h` under `case`, when its diameter is in range.
fn partner(h: &HuangData, case: LinkCaseId, q: &FieldElement) -> Option<HuangData> {
    let (shift, e) = row(case);
    let d2 = h.d as i64 + shift;
    if !(0..=4).contains(&d2) {
        return None;
    }
    Some(HuangData::new(&h.a * &q.pow(e[0]), &h.b * &q.pow(e[1]), &h.c * &q.pow(e[2]), d2 as usize))
}

/// Unprimed data violating exactly one inequality of `case` (or none, for
/// rows without inequalities), for each way of doing so.
fn near_misses(case: LinkCaseId, d: usize, q: &FieldElement) -> Vec<HuangData> {
    let di = d as i64;
    let (a, b, c) = (FieldElement::from_int(5), FieldElement::from_int(7), FieldElement::from_int(11));
    let h = |a: &FieldElement, b: &FieldElement, c: &FieldElement| HuangData::new(a.clone(), b.clone(), c.clone(), d);
    match case {
        LinkCaseId::II | LinkCaseId::VI => vec![h(&q.pow(-di), &b, &c), h(&a, &q.pow(-di), &c)],
        LinkCaseId::III => vec![h(&a, &q.pow(di), &c), h(&q.recip(), &b, &c)],
        LinkCaseId::IV => vec![h(&q.pow(di), &b, &c), h(&a, &q.recip(), &c)],
        LinkCaseId::V => {
            let mut v = vec![h(&q.pow(di), &b, &c), h(&a, &q.pow(di), &c)];
            // At diameter 0 the value of c is free, so it cannot block a link.
            if d > 0 {
                v.push(h(&a, &b, &q.recip()));
            }
            v
        }
        LinkCaseId::I | LinkCaseId::VII => Vec::new(),
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let q = FieldElement::from_int(2);
    let bases = [(3, 5, 7), (5, 3, 13), (-3, 7, 5)];
    let mut linked = 0;
    let mut unlinked = 0;
    let mut misses = 0;
    let mut exchanges = 0;

    let verdict = |h: &HuangData, h2: &HuangData| -> Result<bool, String> {
        let witnesses = link_check(h, h2, &q);
        let built = link_construct(h, h2, &q, None);
        let tag = || format!("{h:?} / {h2:?}");
        match (&built, witnesses.is_empty()) {
            (Ok((case, m)), false) => {
                let pairs = restricted_leonard_pairs(m).map_err(|e| format!("{}: {e}", tag()))?;
                let (x, y) = if case.case_id.exchanged().is_some() { (h2, h) } else { (h, h2) };
                ensure(
                    huang_equivalent(&pairs.plus.huang, x) && huang_equivalent(&pairs.minus.huang, y),
                    || format!("{}: built module does not reproduce the inputs", tag()),
                )?;
                Ok(true)
            }
            (Err(_), true) => Ok(false),
            (Ok(_), true) => Err(format!("{}: constructed without a witness", tag())),
            (Err(e), false) => Err(format!("{}: witness but construction failed: {e}", tag())),
        }
    };

    for case in LinkCaseId::ALL {
        for d in 0..=4 {
            for &(a, b, c) in &bases {
                let h = HuangData::from_ints(a, b, c, d);
                let Some(h2) = partner(&h, case, &q) else { continue };
                if !check_huang_admissible(&h, &q) || !check_huang_admissible(&h2, &q) {
                    continue;
                }
                ensure(verdict(&h, &h2)?, || format!("{case} row pair {h:?} / {h2:?} not linked"))?;
                let found = link_check(&h, &h2, &q);
                ensure(found.iter().any(|w| w.case_id == case), || {
                    format!("{case} missing for {h:?} / {h2:?}")
                })?;
                linked += 1;

                // Inverting components of the second input does not change the verdict.
                let inv = h2.inverted(true, false, true);
                ensure(verdict(&h, &inv)?, || format!("{case}: inversion broke the link"))?;

                // Breaking one ratio unlinks the pair unless another row applies.
                let off = HuangData::new(&h2.a * &FieldElement::from_int(3), h2.b.clone(), h2.c.clone(), h2.d);
                if check_huang_admissible(&off, &q) {
                    if !verdict(&h, &off)? {
                        unlinked += 1;
                    }
                }

                if let Some(base) = case.exchanged() {
                    let direct = link_construct_case(&h2, &h, &q, base, None).map_err(|e| e.to_string())?;
                    let swapped = link_construct_case(&h, &h2, &q, case, None).map_err(|e| e.to_string())?;
                    ensure(direct == swapped, || format!("{case} is not the exchange of {base}"))?;
                    ensure(link_check(&h2, &h, &q).iter().any(|w| w.case_id == base), || {
                        format!("exchanged inputs of {case} lack {base}")
                    })?;
                    exchanges += 1;
                }
            }
        }
    }

    for case in LinkCaseId::ALL {
        for d in 0..=4 {
            for h in near_misses(case, d, &q) {
                let Some(h2) = partner(&h, case, &q) else { continue };
                if !check_huang_admissible(&h, &q) || !check_huang_admissible(&h2, &q) {
                    continue;
                }
                misses += 1;
                let plain = link_check(&h, &h2, &q)
                    .into_iter()
                    .any(|w| w.case_id == case && w.inverted == [false; 3] && w.inverted2 == [false; 3]);
                ensure(!plain, || format!("{case} accepted the near miss {h:?} / {h2:?}"))?;
                ensure(link_construct_case(&h, &h2, &q, case, None).is_err(), || {
                    format!("{case} built the near miss {h:?} / {h2:?}")
                })?;
                if !verdict(&h, &h2)? {
                    unlinked += 1;
                }
            }
        }
    }
    ensure(misses > 0 && exchanges > 0, || "grid produced no near misses or exchanges".into())?;
    let elapsed = start.elapsed();
    within(elapsed, 120)?;
    Ok(format!(
        "{linked} row pairs linked, {misses} near misses rejected by their row, {unlinked} unlinked pairs, {exchanges} vi/vii exchanges, 0 discrepancies ({:.2} s)",
        elapsed.as_secs_f64()
    ))
}

fn report(n: usize, outcome: std::thread::Result<Outcome>) -> bool {
    let outcome = outcome.unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS criterion {n}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL criterion {n}: {detail}");
            false
        }
    }
}

fn main() {
    let mut ok = report(1, catch_unwind(criterion_1));
    let sampling = Instant::now();
    let modules = catch_unwind(sampled_modules);
    let sampling = sampling.elapsed();
    match modules {
        Ok(modules) => {
            ok &= report(2, catch_unwind(AssertUnwindSafe(|| criterion_2(&modules, sampling))));
            ok &= report(3, catch_unwind(AssertUnwindSafe(|| criterion_3(&modules))));
            ok &= report(4, catch_unwind(AssertUnwindSafe(|| criterion_4(&modules))));
        }
        Err(_) => {
            for n in 2..=4 {
                println!("FAIL criterion {n}: sampled instances did not build");
            }
            ok = false;
        }
    }
    ok &= report(5, catch_unwind(criterion_5));
    ok &= report(6, catch_unwind(criterion_6));
    if !ok {
        std::process::exit(1);
    }
}
