//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line; run with `--nocapture` to see them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use expformula::egf::EgfSeries;
use expformula::families::{BurnsideParams, EndofunctionFamily, GraphFamily, PartitionFamily};
use expformula::hw::{
    gen_stirling, multiply_normal, normal_order, normal_order_with, parse_operator, power_normal,
    verify_one_annihilation, BosonWord, HwError, Letter, NormalFormOperator, OperatorExpr, RewriteStrategy,
    DEFAULT_WORD_LIMIT,
};
use expformula::rings::{ExactScalar, Poly};
use expformula::sfd::{
    check_direct_sum_axioms, check_levi, check_unique_factorization, fixtures, CheckReport, StructureFamily,
};
use expformula::statistics::{
    egf_of, exponential_formula_sides, stirling2_from_partitions, verify_exponential_formula, verify_stirling_class,
    Statistic,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn report(n: u32, what: &str, ok: bool, elapsed: Duration, limit: Duration) {
    let ok = ok && elapsed < limit;
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {what} ({:.2}s, limit {}s)", elapsed.as_secs_f64(), limit.as_secs());
    assert!(ok, "criterion {n} failed");
}

fn stat(s: &str) -> Statistic {
    s.parse().unwrap()
}

/// Stirling numbers of the second kind from `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
fn s2_recurrence(n_max: usize) -> BTreeMap<(usize, usize), i64> {
    let mut t = BTreeMap::new();
    t.insert((0, 0), 1i64);
    for n in 1..=n_max {
        for k in 1..=n {
            let v = k as i64 * t.get(&(n - 1, k)).copied().unwrap_or(0) + t.get(&(n - 1, k - 1)).copied().unwrap_or(0);
            t.insert((n, k), v);
        }
    }
    t
}

fn formula_holds<F: StructureFamily>(family: &F, c: &Statistic, order: usize) -> bool
where
    Statistic: expformula::statistics::StatisticFn<F>,
{
    let sides = exponential_formula_sides(family, c, order).unwrap();
    let report = verify_exponential_formula(family, c, order).unwrap();
    sides.total == sides.predicted && report.passed()
}

#[test]
fn criterion_1_exponential_formula() {
    let start = Instant::now();
    let graphs = GraphFamily::default();
    let partitions = PartitionFamily::default();
    let endos = EndofunctionFamily::all();
    let idem = EndofunctionFamily::burnside(BurnsideParams::idempotent());
    let ok = formula_holds(&graphs, &stat("1"), 5)
        && formula_holds(&graphs, &stat("components=y"), 5)
        && formula_holds(&partitions, &stat("1"), 8)
        && formula_holds(&partitions, &stat("blocks=y"), 8)
        && formula_holds(&endos, &stat("1"), 5)
        && formula_holds(&endos, &stat("cycles=x,fixedpoints=y"), 5)
        && formula_holds(&idem, &stat("1"), 7);
    report(
        1,
        "exponential formula on graphs, partitions, endofunctions, idempotents",
        ok,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_2_stirling_class() {
    let start = Instant::now();
    let class = verify_stirling_class(7).unwrap();
    let enumerated = stirling2_from_partitions(7).unwrap();
    let ok = class.passed() && enumerated == s2_recurrence(7);
    report(2, "partition series equals exp(y(e^x - 1)) to bidegree (7,7)", ok, start.elapsed(), Duration::from_secs(5));
}

fn random_series(rng: &mut StdRng, order: usize, constant: i64) -> EgfSeries {
    EgfSeries::from_fn(order, |n| if n == 0 { Poly::integer(constant) } else { Poly::integer(rng.gen_range(-5..=5)) })
}

#[test]
fn criterion_3_exp_log_engine() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut ok = true;
    for _ in 0..100 {
        let f = random_series(&mut rng, 8, 0);
        ok &= f.exp().unwrap() == f.exp_partition().unwrap();
    }
    for _ in 0..20 {
        let f = random_series(&mut rng, 12, 0);
        ok &= f.exp().unwrap().log().unwrap() == f;
        let g = random_series(&mut rng, 12, 0);
        ok &= f.add(&g).exp().unwrap() == f.exp().unwrap().mul(&g.exp().unwrap());
    }
    report(
        3,
        "exp vs partition sum, log(exp f) = f, exp(f+g) = exp f exp g",
        ok,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

fn axioms_pass<F: StructureFamily>(family: &F) -> bool {
    check_direct_sum_axioms(family, 5).unwrap().passed()
        && check_levi(family, 4).unwrap().passed()
        && check_unique_factorization(family, 5).unwrap().passed()
}

fn fails_with_witness(r: &CheckReport) -> bool {
    !r.passed() && r.witness.as_deref().is_some_and(|w| !w.is_empty())
}

#[test]
fn criterion_4_sfd_axioms() {
    let start = Instant::now();
    let families_ok = axioms_pass(&GraphFamily::default())
        && axioms_pass(&PartitionFamily::default())
        && axioms_pass(&EndofunctionFamily::all());
    let overlap = check_direct_sum_axioms(&fixtures::OverlappingUnion, 3).unwrap();
    let crossed_levi = check_levi(&fixtures::CrossedPairs, 4).unwrap();
    let crossed_uf = check_unique_factorization(&fixtures::CrossedPairs, 4).unwrap();
    let fixtures_ok =
        fails_with_witness(&overlap) && fails_with_witness(&crossed_levi) && fails_with_witness(&crossed_uf);
    report(
        4,
        "axioms pass on all families, planted defects fail with witnesses",
        families_ok && fixtures_ok,
        start.elapsed(),
        Duration::from_secs(120),
    );
}

fn random_word(rng: &mut StdRng, max_len: usize) -> BosonWord {
    let len = rng.gen_range(0..=max_len);
    BosonWord::new((0..len).map(|_| if rng.gen_bool(0.5) { Letter::Create } else { Letter::Annihilate }).collect())
}

#[test]
fn criterion_5_normal_ordering() {
    let start = Instant::now();
    let number = parse_operator("ad a").unwrap();
    let s2 = stirling2_from_partitions(8).unwrap();
    let mut ok = true;
    for n in 0..=8u32 {
        let expected = NormalFormOperator::from_terms(
            s2.iter()
                .filter(|((m, _), _)| *m == n as usize)
                .map(|(&(_, k), &v)| ((k as u32, k as u32), ExactScalar::from(v))),
        );
        ok &= power_normal(&number, n, DEFAULT_WORD_LIMIT).unwrap() == expected;
        ok &= normal_order(&number.pow(n, DEFAULT_WORD_LIMIT).unwrap()) == expected;
    }
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..500 {
        let u = OperatorExpr::word(random_word(&mut rng, 8));
        let v = OperatorExpr::word(random_word(&mut rng, 8));
        ok &= multiply_normal(&normal_order(&u), &normal_order(&v)) == normal_order(&u.mul(&v));
    }
    for _ in 0..200 {
        let w = OperatorExpr::word(random_word(&mut rng, 12));
        ok &= normal_order_with(&w, RewriteStrategy::Leftmost) == normal_order_with(&w, RewriteStrategy::Rightmost);
    }
    report(
        5,
        "(ad a)^n gives S2, closed-form products, strategy independence",
        ok,
        start.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_6_generalized_stirling() {
    let start = Instant::now();
    let mut ok = true;
    for s in ["ad a", "ad ad a", "ad a a", "ad a ad"] {
        let omega = parse_operator(s).unwrap();
        let table = gen_stirling(&omega, 6, DEFAULT_WORD_LIMIT).unwrap();
        let e = table.excess;
        for n in 0..=6usize {
            // Rebuild Normal(omega^n) from the table and compare with the rewriting oracle.
            let shift = (n as i64 * e.abs()) as u32;
            let rebuilt = NormalFormOperator::from_terms(table.rows[&n].iter().map(|(&k, v)| {
                let k = k as u32;
                let key = if e >= 0 { (k + shift, k) } else { (k, k + shift) };
                (key, v.clone())
            }));
            ok &= rebuilt == normal_order(&omega.pow(n as u32, DEFAULT_WORD_LIMIT).unwrap());
        }
    }
    let sq = parse_operator("ad ad a").unwrap();
    let oracle = normal_order(&sq.pow(2, DEFAULT_WORD_LIMIT).unwrap());
    ok &= oracle.coefficient(3, 1) == ExactScalar::from(2) && oracle.coefficient(4, 2) == ExactScalar::from(1);
    let table = gen_stirling(&sq, 2, DEFAULT_WORD_LIMIT).unwrap();
    ok &= table.get(2, 1) == ExactScalar::from(2) && table.get(2, 2) == ExactScalar::from(1);
    report(
        6,
        "extraction consumes every term; S(2,1)=2, S(2,2)=1 for (ad)^2 a",
        ok,
        start.elapsed(),
        Duration::from_secs(20),
    );
}

#[test]
fn criterion_7_one_annihilation_factorization() {
    let start = Instant::now();
    let pass = |s: &str| verify_one_annihilation(&parse_operator(s).unwrap(), 6, DEFAULT_WORD_LIMIT).unwrap().passed();
    let rejected = matches!(
        verify_one_annihilation(&parse_operator("ad a a").unwrap(), 6, DEFAULT_WORD_LIMIT),
        Err(HwError::NotOneAnnihilation(_))
    );
    let ok = pass("ad a") && pass("ad ad a") && rejected;
    report(
        7,
        "g(x) exp(y A(x)) for ad a and (ad)^2 a; two annihilations rejected",
        ok,
        start.elapsed(),
        Duration::from_secs(20),
    );
}

fn ints(s: &EgfSeries) -> Vec<BigInt> {
    s.as_integers().unwrap()
}

fn literal(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn criterion_8_known_sequences() {
    let start = Instant::now();
    let one = stat("1");
    let both = |f: &dyn Fn(bool) -> EgfSeries| (f(false), f(true));

    let partitions = PartitionFamily::default();
    let (bell_total, bell_atoms) = both(&|a| egf_of(&partitions, &one, a, 6, None).unwrap());
    let bell_ok = ints(&bell_total) == ints(&bell_atoms.exp().unwrap())
        && ints(&bell_total) == literal(&[1, 1, 2, 5, 15, 52, 203]);

    let idem = EndofunctionFamily::burnside(BurnsideParams::idempotent());
    let (idem_total, idem_atoms) = both(&|a| egf_of(&idem, &one, a, 6, None).unwrap());
    let idem_ok = ints(&idem_total) == ints(&idem_atoms.exp().unwrap())
        && ints(&idem_total) == literal(&[1, 1, 3, 10, 41, 196, 1057]);

    let graphs = GraphFamily::default();
    let g_total = egf_of(&graphs, &one, false, 5, None).unwrap();
    let g_atoms = egf_of(&graphs, &one, true, 5, None).unwrap();
    let graphs_ok =
        ints(&g_atoms) == ints(&g_total.log().unwrap()) && ints(&g_atoms) == literal(&[0, 1, 1, 4, 38, 728]);

    let endos = EndofunctionFamily::all();
    let e_total = egf_of(&endos, &one, false, 5, None).unwrap();
    let e_atoms = egf_of(&endos, &one, true, 5, None).unwrap();
    let endos_ok =
        ints(&e_atoms) == ints(&e_total.log().unwrap()) && ints(&e_atoms) == literal(&[0, 1, 3, 17, 142, 1569]);

    let ok = bell_ok && idem_ok && graphs_ok && endos_ok;
    report(
        8,
        "Bell, idempotents, connected graphs, connected endofunctions by two paths",
        ok,
        start.elapsed(),
        Duration::from_secs(60),
    );
}
