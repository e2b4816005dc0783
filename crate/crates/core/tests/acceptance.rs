//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{companion, companion_sum, example, random_action, random_matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torbundle::oracles::{
    default_modulus, oracle_closed_form_vs_exterior, oracle_conjugacy_by_orbits,
    oracle_fixed_point_count, oracle_r_by_characters,
};
use torbundle::{
    abelianization, compute_r, conjugacy_classes, detection_report, exterior_power, h1, l_of_z,
    l_of_zn, l_of_zp_decorated, ls_of_zgamma, r_closed_form_k1, reduced_ls_of_zp, sgeo_of_m,
    smith_normal_form, sper_of_bgamma, sper_of_m, torus_fixed_points, whitehead, ActionData,
    Decoration, FgAbGroup, ManifoldParams,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_example() -> Check {
    let start = Instant::now();
    let mp = ManifoldParams::new(example(), 3).map_err(|e| e.to_string())?;
    let sgeo = sgeo_of_m(&mp);
    let elapsed = start.elapsed();
    let expected = FgAbGroup::free(3).direct_sum(&FgAbGroup::cyclic(BigInt::from(2)));
    ensure(sgeo == expected, || {
        format!("S_geo(M) = {sgeo}, expected {expected}")
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("S_geo(M) = {sgeo} in {elapsed:?}"))
}

fn example_census() -> Check {
    let mp = ManifoldParams::new(example(), 3).map_err(|e| e.to_string())?;
    let report = detection_report(&mp).map_err(|e| e.to_string())?;
    let nontrivial: Vec<_> = report
        .splitting_entries
        .iter()
        .filter(|r| !r.vacuous)
        .collect();
    ensure(nontrivial.len() == 1, || {
        format!("{} nontrivial rows", nontrivial.len())
    })?;
    ensure(nontrivial[0].subset == vec![1, 2], || {
        format!("nontrivial row at J = {:?}", nontrivial[0].subset)
    })?;
    ensure(nontrivial[0].group == l_of_z(2), || {
        "group is not L_2(Z)".into()
    })?;
    ensure(l_of_z(2) == FgAbGroup::cyclic(BigInt::from(2)), || {
        "L_2(Z) != Z/2".into()
    })?;
    ensure(report.rho_entries.len() == 3, || {
        format!("{} rho rows", report.rho_entries.len())
    })?;
    Ok("1 nontrivial splitting obstruction in Z/2 at J = {1,2}; 3 rho-invariant targets".into())
}

fn r_vector_agreement() -> Check {
    let start = Instant::now();
    let cases: Vec<(ActionData, Vec<usize>)> = vec![
        (companion(3), vec![1, 0, 1]),
        (companion(5), vec![1, 0, 2, 0, 1]),
        (companion(7), vec![1, 0, 3, 2, 3, 0, 1]),
        (companion_sum(3, 2), vec![1, 0, 4, 0, 1]),
    ];
    for (a, frozen) in &cases {
        let ext = compute_r(a).map_err(|e| e.to_string())?;
        let chr = oracle_r_by_characters(a).map_err(|e| e.to_string())?;
        ensure(ext == chr, || {
            format!("p={} k={}: {:?} vs {:?}", a.p(), a.k(), ext, chr)
        })?;
        ensure(&ext.values == frozen, || {
            format!("p={} k={}: {:?}", a.p(), a.k(), ext.values)
        })?;
        if a.k() == 1 {
            for j in 0..=a.n() + 2 {
                ensure(ext.get(j) == r_closed_form_k1(a.p(), j), || {
                    format!("closed form differs at p={} j={j}", a.p())
                })?;
            }
        }
        let outcomes = oracle_closed_form_vs_exterior(a).map_err(|e| e.to_string())?;
        ensure(outcomes.iter().all(|o| o.agree), || {
            format!("oracle disagreement p={}", a.p())
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} actions, all routes agree in {elapsed:?}",
        cases.len()
    ))
}

fn group_invariant_suite() -> Check {
    let cases = [
        (companion(3), true),
        (companion(5), true),
        (companion(7), false),
        (companion_sum(3, 2), true),
    ];
    for (a, run_orbits) in &cases {
        let zp = FgAbGroup::cyclic(BigInt::from(a.p()));
        let tag = format!("p={} k={}", a.p(), a.k());
        ensure(h1(a).map_err(|e| e.to_string())? == zp.pow(a.k()), || {
            format!("{tag}: H^1")
        })?;
        ensure(
            abelianization(a).map_err(|e| e.to_string())? == zp.pow(a.k() + 1),
            || format!("{tag}: abelianization"),
        )?;
        let classes = conjugacy_classes(a).len();
        ensure(BigInt::from(classes) == a.p_to_k(), || {
            format!("{tag}: {classes} classes")
        })?;
        if *run_orbits {
            let orbits =
                oracle_conjugacy_by_orbits(a, default_modulus(a)).map_err(|e| e.to_string())?;
            ensure(orbits as usize == classes, || {
                format!("{tag}: {orbits} orbits")
            })?;
        }
        let fixed = torus_fixed_points(a).len();
        let det = oracle_fixed_point_count(a).map_err(|e| e.to_string())?;
        ensure(
            BigInt::from(fixed) == a.p_to_k() && det == a.p_to_k(),
            || format!("{tag}: {fixed} fixed points, |det| = {det}"),
        )?;
    }
    Ok(format!(
        "{} actions; orbit oracle on p=3 k=1,2 and p=5 k=1",
        cases.len()
    ))
}

fn ltheory_properties() -> Check {
    let actions = [example(), companion(5), companion(7), companion_sum(3, 2)];
    let mut checked = 0;
    for a in &actions {
        let r = compute_r(a).map_err(|e| e.to_string())?;
        let (p, n) = (a.p(), a.n());
        let half = (p as usize - 1) / 2;
        for m in -8i64..8 {
            let periodic = [
                (l_of_z(m), l_of_z(m + 4)),
                (l_of_zn(m, n), l_of_zn(m + 4, n)),
                (
                    l_of_zp_decorated(m, p, Decoration::MinusInfinity).unwrap(),
                    l_of_zp_decorated(m + 4, p, Decoration::MinusInfinity).unwrap(),
                ),
                (reduced_ls_of_zp(m, p), reduced_ls_of_zp(m + 4, p)),
                (
                    ls_of_zgamma(a, m).map_err(|e| e.to_string())?,
                    ls_of_zgamma(a, m + 4).map_err(|e| e.to_string())?,
                ),
            ];
            for (x, y) in &periodic {
                ensure(x == y, || {
                    format!("p={p}: periodicity fails at m={m}: {x} vs {y}")
                })?;
                checked += 1;
            }
            let reduced = reduced_ls_of_zp(m, p).free_rank();
            let want = if m.rem_euclid(2) == 0 { half } else { 0 };
            ensure(reduced == want, || {
                format!("p={p} m={m}: reduced rank {reduced}")
            })?;
            if m.rem_euclid(2) == 0 {
                let mut expected = a.class_count() * half;
                for i in 0..=n {
                    if (m - i as i64).rem_euclid(4) == 0 {
                        expected += r.values[i];
                    }
                }
                let got = ls_of_zgamma(a, m).map_err(|e| e.to_string())?.free_rank();
                ensure(got == expected, || {
                    format!("p={p} m={m}: free rank {got} vs {expected}")
                })?;
            }
        }
    }
    Ok(format!("{checked} periodicity pairs, rank identities hold"))
}

fn structure_set_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..10 {
        let k = 1 + trial % 2;
        let a = random_action(&mut rng, 3, k);
        let half_rank = a.class_count() * (a.p() as usize - 1) / 2;
        let mp = ManifoldParams::new(a.clone(), 3 + 2 * rng.gen_range(0..3))
            .map_err(|e| e.to_string())?;
        let per = sper_of_m(&mp);
        let geo = sgeo_of_m(&mp);
        ensure(per.free_rank() == geo.free_rank() + 1, || {
            format!("trial {trial}: {per} vs {geo}")
        })?;
        ensure(per.torsion() == geo.torsion(), || {
            format!("trial {trial}: torsion differs")
        })?;
        for m in -4i64..4 {
            let b = sper_of_bgamma(&a, m);
            let want = if m.rem_euclid(2) == 1 { half_rank } else { 0 };
            ensure(b.free_rank() == want && b.torsion().is_empty(), || {
                format!("trial {trial}: S^per_{m}(BGamma) = {b}")
            })?;
        }
        // whitehead tables are well defined on every trial action
        ensure(
            whitehead(&a, 1).map_err(|e| e.to_string())?.is_trivial(),
            || "Wh(Gamma) for p=3".into(),
        )?;
    }
    Ok("10 random actions (p=3, k<=2)".into())
}

fn linalg_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..500 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let a = random_matrix(&mut rng, rows, cols, 10);
        let s = smith_normal_form(&a);
        ensure(&(&s.u * &a) * &s.v == s.d, || {
            format!("SNF trial {trial}: reconstruction")
        })?;
        ensure(
            s.u.det().unwrap().abs() == BigInt::from(1)
                && s.v.det().unwrap().abs() == BigInt::from(1),
            || format!("SNF trial {trial}: unimodularity"),
        )?;
        let r = s.rank();
        ensure(s.diagonal[r..].iter().all(Zero::is_zero), || {
            format!("SNF trial {trial}: zeros")
        })?;
        for w in s.diagonal[..r].windows(2) {
            ensure(w[0].is_positive() && w[1].is_multiple_of(&w[0]), || {
                format!("SNF trial {trial}: divisibility")
            })?;
        }
    }
    for trial in 0..200 {
        let n = rng.gen_range(1..=6);
        let j = rng.gen_range(0..=3.min(n));
        let a = random_matrix(&mut rng, n, n, 10);
        let b = random_matrix(&mut rng, n, n, 10);
        let lhs = exterior_power(&(&a * &b), j).unwrap();
        let rhs = &exterior_power(&a, j).unwrap() * &exterior_power(&b, j).unwrap();
        ensure(lhs == rhs, || {
            format!("Cauchy-Binet trial {trial}: n={n} j={j}")
        })?;
    }
    Ok("500 SNF matrices, 200 Cauchy-Binet pairs".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 golden example S_geo(M)", golden_example),
        ("2 example obstruction census", example_census),
        ("3 r-vector triple agreement", r_vector_agreement),
        ("4 group-invariant suite", group_invariant_suite),
        ("5 L-theory table properties", ltheory_properties),
        ("6 structure-set consistency", structure_set_consistency),
        ("7 exact linear algebra properties", linalg_properties),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
