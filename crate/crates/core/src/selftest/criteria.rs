use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::instances::{approach_instance, element, submodule, three_atom_mixture, triple};
use super::CriterionOutcome;
use crate::cbrank::{
    build_approach_sequence, classify_limit, q_level_closed_form, rank_unbounded_certificate,
    QTruncation,
};
use crate::irs::{
    check_bound, empirical, mu_m_marginal, psi_mix, sample_many, shift_term_marginal, tv_distance,
    LazyIRS,
};
use crate::lamplighter::{
    ball_elements, conjugate, converges_on_ball, phi_encoding, pi1, Convergence, QPoint,
    SubgroupTriple,
};
use crate::modules::{
    construct_prescribed, count_submodules_formula, enumerate_submodules, exponent, rk_m,
    SubmoduleGens,
};
use crate::{Error, Result};

const TITLES: [&str; 12] = [
    "submodule counting",
    "rank of the free module",
    "rank multiplicativity",
    "prescribed constructions",
    "levels of Q",
    "approach sequences and limits",
    "conjugation invariance",
    "block average stationarity and locality",
    "block average total variation",
    "sampler law",
    "mixing for the integers",
    "determinism",
];

/// Runs criterion `id` (1 to 12) with the given seed.
pub fn run_criterion(id: u8, seed: u64) -> CriterionOutcome {
    assert!((1..=12).contains(&id), "no criterion {id}");
    let result = match id {
        1 => counting(),
        2 => free_rank(),
        3 => multiplicativity(seed),
        4 => constructions(),
        5 => q_levels(),
        6 => approach(seed),
        7 => conjugation(seed),
        8 => stationarity(seed),
        9 => total_variation(seed),
        10 => sampler(seed),
        11 => mixing(seed),
        _ => determinism(seed),
    };
    let (pass, details) = match result {
        Ok(x) => x,
        Err(e) => (false, vec![format!("error: {e}")]),
    };
    CriterionOutcome {
        id,
        title: TITLES[id as usize - 1],
        pass,
        details,
    }
}

type Outcome = Result<(bool, Vec<String>)>;

fn rng(seed: u64, id: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(1000 + id);
    r
}

fn counting() -> Outcome {
    let mut grid = Vec::new();
    grid.extend((0..=4).map(|a| (2u32, 1usize, a)));
    grid.extend((0..=3).map(|a| (2, 2, a)));
    grid.extend((0..=3).map(|a| (3, 1, a)));
    grid.extend((0..=2).map(|a| (3, 2, a)));
    let mut pass = true;
    let mut details = Vec::new();
    for (p, k, a) in grid {
        let formula = count_submodules_formula(p, k, a);
        let found = BigUint::from(enumerate_submodules(p, k, a)?.len());
        pass &= formula == found;
        details.push(format!(
            "p={p} k={k} a={a}: formula {formula}, enumerated {found}"
        ));
    }
    Ok((pass, details))
}

fn free_rank() -> Outcome {
    let mut pass = true;
    let mut rows = Vec::new();
    for n in 1..=3 {
        for p in [2, 3] {
            let ranks: Vec<usize> = (1..=4)
                .map(|m| rk_m(&SubmoduleGens::full(n, p), m))
                .collect::<Result<_>>()?;
            pass &= ranks.iter().zip(1..).all(|(&r, m)| r == n * m);
            rows.push(format!("n={n} p={p}: rk_1..rk_4 = {ranks:?}"));
        }
    }
    Ok((pass, rows))
}

fn multiplicativity(seed: u64) -> Outcome {
    let mut rng = rng(seed, 3);
    let mut failures = Vec::new();
    for i in 0..100 {
        let n = 1 + i % 2;
        let p = if i % 3 == 0 { 3 } else { 2 };
        let e = 1 + i % 4;
        let u = submodule(&mut rng, n, p, e, 3);
        let base = rk_m(&u, e)?;
        for b in 1..=3 {
            if rk_m(&u, b * e)? != b * base {
                failures.push(format!("{u}: rk_{} != {b}·rk_{e}", b * e));
            }
        }
    }
    let mut details = vec![format!(
        "100 subgroups, b = 1..3, {} failures",
        failures.len()
    )];
    details.extend(failures.iter().take(5).cloned());
    Ok((failures.is_empty(), details))
}

fn constructions() -> Outcome {
    let mut pass = true;
    let mut checked = 0;
    let mut details = Vec::new();
    for p in [2, 3] {
        for n in 1..=2 {
            for b in 1..=4 {
                for r in 1..=n * b {
                    let u = construct_prescribed(n, b, r, p)?;
                    let e = exponent(&u, b)?;
                    let rk = rk_m(&u, b)?;
                    checked += 1;
                    if e != b || rk != r {
                        pass = false;
                        details.push(format!("p={p} n={n} b={b} r={r}: e={e} rk={rk}"));
                    }
                }
            }
        }
    }
    details.insert(0, format!("{checked} constructions verified"));
    Ok((pass, details))
}

fn q_levels() -> Outcome {
    let trunc = QTruncation::new(8, 12)?;
    trunc.poset()?;
    let levels = trunc.levels();
    let mismatches = levels
        .iter()
        .filter(|&&(q, l)| l as u64 != q_level_closed_form(q))
        .count();
    let chain: Vec<usize> = [2, 4, 8]
        .iter()
        .map(|&t| {
            levels
                .iter()
                .find(|(q, _)| *q == QPoint { t, r: 1 })
                .map_or(usize::MAX, |x| x.1)
        })
        .collect();
    let cert = rank_unbounded_certificate(&[2, 4, 8, 12])?;
    let pass = mismatches == 0 && chain == [2, 4, 8] && cert.unbounded;
    Ok((
        pass,
        vec![
            format!(
                "{} points, {mismatches} levels differ from t·r",
                levels.len()
            ),
            format!("levels of (2,1), (4,1), (8,1): {chain:?}"),
            format!(
                "max level by bound: {:?}",
                cert.rows
                    .iter()
                    .map(|r| (r.product_max, r.max_level))
                    .collect::<Vec<_>>()
            ),
        ],
    ))
}

/// Ten instances alternating `p = 2, s <= 4` and `p = 3, s <= 2`.
fn approach_instances(seed: u64) -> Result<Vec<(u32, SubgroupTriple, QPoint)>> {
    let mut rng = rng(seed, 6);
    (0..10)
        .map(|i| {
            let (p, max_s) = if i % 2 == 0 { (2, 4) } else { (3, 2) };
            let (v, target) = approach_instance(&mut rng, p, max_s)?;
            Ok((p, v, target))
        })
        .collect()
}

fn approach(seed: u64) -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (p, v, target) in approach_instances(seed)? {
        let here = phi_encoding(&v)?;
        let seq = build_approach_sequence(&v, target, 25)?;
        let exact = seq.iter().all(|vm| phi_encoding(vm).ok() == Some(target));
        let conv = converges_on_ball(|m| seq[m - 1].clone(), &v, 4, 2 * v.s() as i64, 25)?;
        let cls = classify_limit(&seq, &v);
        let limit_ok = cls
            .as_ref()
            .is_ok_and(|c| c.groups.iter().all(|g| g.divides && g.strict));
        let ok = exact && conv.m0().is_some() && limit_ok;
        pass &= ok;
        let conv = match conv {
            Convergence::Stabilized { m0 } => format!("stabilizes at {m0}"),
            Convergence::Failed { witness, .. } => format!("still differs at {witness}"),
        };
        details.push(format!(
            "p={p} s={} Φ(V)={here} target={target}: encodings {}, {conv}, limit {}",
            v.s(),
            if exact { "exact" } else { "WRONG" },
            match &cls {
                Ok(_) if limit_ok => "consistent".to_string(),
                Ok(_) => "not strict".to_string(),
                Err(e) => e.to_string(),
            }
        ));
    }
    Ok((pass, details))
}

fn conjugation(seed: u64) -> Outcome {
    let mut rng = rng(seed, 7);
    let balls = [ball_elements(1, 2, 3, 3), ball_elements(1, 3, 3, 3)];
    let mut failures = Vec::new();
    let mut elements = 0;
    for i in 0..200 {
        let p = if i % 2 == 0 { 2 } else { 3 };
        let v = triple(&mut rng, 1, p, 3);
        let g = element(&mut rng, 1, p);
        let w = conjugate(&g, &v);
        if phi_encoding(&w)? != phi_encoding(&v)? || pi1(&w) != pi1(&v) {
            failures.push(format!(
                "invariants change: g={g}, V={}",
                v.to_text().trim()
            ));
        }
        let (vo, wo) = (v.oracle(), w.oracle());
        let g_inv = g.inverse();
        for h in &balls[i % 2] {
            elements += 1;
            // h ∈ gVg⁻¹ ⟺ g⁻¹hg ∈ V
            if wo.contains(h) != vo.contains(&g_inv.multiply(h).multiply(&g)) {
                failures.push(format!("membership differs at {h}: g={g}"));
                break;
            }
        }
    }
    let mut details = vec![format!(
        "200 pairs, {elements} ball memberships compared, {} failures",
        failures.len()
    )];
    details.extend(failures.iter().take(5).cloned());
    Ok((failures.is_empty(), details))
}

fn measure_grid(seed: u64) -> Result<Vec<(&'static str, LazyIRS)>> {
    let half = BigRational::new(1.into(), 2.into());
    Ok(vec![
        ("δ_A", LazyIRS::full(1, 2)),
        ("δ_0", LazyIRS::trivial(1, 2)),
        (
            "½δ_A + ½δ_0",
            LazyIRS::mixture(vec![
                (half.clone(), LazyIRS::full(1, 2)),
                (half, LazyIRS::trivial(1, 2)),
            ])?,
        ),
        ("3-atom mixture", three_atom_mixture(&mut rng(seed, 8))?),
    ])
}

fn stationarity(seed: u64) -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, mu) in measure_grid(seed)? {
        let (mut shifts, mut local, mut bad) = (0, 0, 0);
        for m in 1..=6usize {
            for j in 0..=2i64 {
                let base = mu_m_marginal(&mu, m, 0, j)?;
                for a in 1..=m as i64 {
                    shifts += 1;
                    if mu_m_marginal(&mu, m, a, a + j)? != base.translate(a) {
                        bad += 1;
                    }
                }
                let exact = mu.marginal(0, j)?;
                for k in (0..m).filter(|&k| j as usize + k < m) {
                    local += 1;
                    if shift_term_marginal(&mu, m, k, 0, j)? != exact {
                        bad += 1;
                    }
                }
            }
        }
        pass &= bad == 0;
        details.push(format!(
            "{name}: {shifts} shifted windows, {local} shift terms, {bad} mismatches"
        ));
    }
    Ok((pass, details))
}

fn total_variation(seed: u64) -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, mu) in measure_grid(seed)? {
        for j in 0..=2 {
            let reports = [2, 4, 8]
                .iter()
                .map(|&m| check_bound(&mu, m, j))
                .collect::<Result<Vec<_>>>()?;
            let tvs: Vec<BigRational> = reports.iter().map(|r| r.tv_exact()).collect();
            let bounded = reports.iter().all(|r| r.pass);
            let monotone = tvs.windows(2).all(|w| w[1] <= w[0]);
            let strict = mu.is_block_fixed() || tvs[0].is_zero() || tvs[2] < tvs[0];
            pass &= bounded && monotone && strict;
            let literal: Vec<&str> = reports
                .iter()
                .map(|r| if r.literal_held { "held" } else { "FAILED" })
                .collect();
            details.push(format!(
                "{name} j={j}: TV(m=2,4,8) = {} | 2(j+1)/m {} | 2j/m {} | {}",
                reports
                    .iter()
                    .map(|r| r.tv.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
                if bounded { "held" } else { "FAILED" },
                literal.join("/"),
                if !monotone {
                    "not monotone"
                } else if !strict {
                    "not strictly smaller at m=8"
                } else {
                    "monotone"
                }
            ));
        }
    }
    Ok((pass, details))
}

fn sampler(seed: u64) -> Outcome {
    let mu = three_atom_mixture(&mut rng(seed, 8))?;
    let trials = 100_000;
    let draws = sample_many(&mu, 4, 0, 1, seed, trials)?;
    let emp = empirical(1, 2, 0, 1, &draws)?;
    let exact = mu_m_marginal(&mu, 4, 0, 1)?;
    let tv = tv_distance(&emp, &exact)?.to_f64().unwrap_or(f64::NAN);
    Ok((
        tv <= 0.02,
        vec![format!(
            "{trials} draws, support {} exact / {} observed, TV {tv:.5} (bound 0.02)",
            exact.len(),
            emp.len()
        )],
    ))
}

fn mixing(seed: u64) -> Outcome {
    let (full, trivial) = (LazyIRS::full(1, 2), LazyIRS::trivial(1, 2));
    let trials = 100_000;
    let mut reports = Vec::new();
    for n_ai in [11, 51, 201] {
        reports.push(psi_mix(&full, &trivial, n_ai, 0, 0, trials, seed)?.report);
    }
    let tv_decreasing = reports.windows(2).all(|w| w[1].tv < w[0].tv);
    let tv_small = reports[2].tv <= 0.05;
    let asym_decreasing = reports
        .windows(2)
        .all(|w| w[1].asymmetry_empirical < w[0].asymmetry_empirical);
    let mut details: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "n_ai={}: TV {:.5} (MC tolerance {:.5}), λ(A Δ TA) empirical {:.5} exact {:.5}",
                r.n_ai, r.tv, r.tolerance, r.asymmetry_empirical, r.asymmetry_exact
            )
        })
        .collect();
    details.push(format!(
        "TV decreasing: {}, TV(201) <= 0.05: {}, λ(A Δ TA) decreasing: {}",
        yes(tv_decreasing),
        yes(tv_small),
        yes(asym_decreasing)
    ));
    for n_ai in [11, 51, 201] {
        let r = psi_mix(&full, &trivial, n_ai, 0, 1, trials, seed)?.report;
        details.push(format!(
            "supplementary, window [0,1], n_ai={n_ai}: TV {:.5}, split fraction {:.5}",
            r.tv, r.split_fraction
        ));
    }
    Ok((tv_decreasing && tv_small && asym_decreasing, details))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn determinism(seed: u64) -> Outcome {
    let render = |id: u8| format!("{:?}", run_criterion(id, seed));
    let mut pass = true;
    let mut details = Vec::new();
    for id in [3, 7, 8, 10, 11] {
        let same = render(id) == render(id);
        pass &= same;
        details.push(format!(
            "criterion {id} rerun: {}",
            if same { "identical" } else { "DIFFERS" }
        ));
    }
    let instances = || -> Result<String> {
        Ok(approach_instances(seed)?
            .iter()
            .map(|(p, v, q)| format!("{p} {} {q}", v.to_text()))
            .collect())
    };
    let same = instances()? == instances()?;
    pass &= same;
    details.push(format!(
        "criterion 6 instances regenerated: {}",
        if same { "identical" } else { "DIFFERS" }
    ));
    if !pass {
        return Err(Error::Consistency(
            "seeded criteria are not reproducible".into(),
        ));
    }
    Ok((pass, details))
}
