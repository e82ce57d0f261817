//! Family enumerations against plain brute force written from scratch here.

use expformula::families::{BurnsideParams, EndofunctionFamily, GraphFamily, PartitionFamily};
use expformula::rings::Poly;
use expformula::statistics::{egf_of, Statistic};
use num_bigint::BigInt;

fn counts<F>(family: &F, stat: &str, atoms: bool, order: usize) -> Vec<BigInt>
where
    F: expformula::sfd::StructureFamily,
    Statistic: expformula::statistics::StatisticFn<F>,
{
    let s: Statistic = stat.parse().unwrap();
    egf_of(family, &s, atoms, order, None).unwrap().as_integers().unwrap()
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn components(n: usize, adj: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Component counts of every simple graph on `n` vertices.
fn graph_components(n: usize) -> Vec<usize> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let mut adj = vec![Vec::new(); n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
            components(n, &adj)
        })
        .collect()
}

/// Every map `[n] -> [n]` as an image vector.
fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|m| (0..n).map(move |v| [m.clone(), vec![v]].concat())).collect();
    }
    out
}

fn map_components(f: &[usize]) -> usize {
    let n = f.len();
    let mut adj = vec![Vec::new(); n];
    for (x, &y) in f.iter().enumerate() {
        adj[x].push(y);
        adj[y].push(x);
    }
    components(n, &adj)
}

fn iterate(f: &[usize], k: u32, x: usize) -> usize {
    (0..k).fold(x, |v, _| f[v])
}

#[test]
fn connected_graphs() {
    let expected: Vec<u64> = (0..=5)
        .map(|n| if n == 0 { 0 } else { graph_components(n).iter().filter(|&&c| c == 1).count() as u64 })
        .collect();
    assert_eq!(counts(&GraphFamily::default(), "1", true, 5), big(&expected));
}

#[test]
fn graphs_by_components() {
    let s: Statistic = "components=y".parse().unwrap();
    let series = egf_of(&GraphFamily::default(), &s, false, 4, None).unwrap();
    for n in 0..=4 {
        let mut p = Poly::zero();
        for c in graph_components(n) {
            p = &p + &Poly::var("y").pow(c as u32);
        }
        assert_eq!(series.coeff(n), &p, "n={n}");
    }
}

#[test]
fn connected_endofunctions() {
    let expected: Vec<u64> = (0..=5)
        .map(|n| if n == 0 { 0 } else { all_maps(n).iter().filter(|f| map_components(f) == 1).count() as u64 })
        .collect();
    assert_eq!(counts(&EndofunctionFamily::all(), "1", true, 5), big(&expected));
}

#[test]
fn burnside_classes() {
    for (a, b) in [(1, 2), (2, 3), (1, 3), (0, 2)] {
        let expected: Vec<u64> = (0..=5)
            .map(|n| all_maps(n).iter().filter(|f| (0..n).all(|x| iterate(f, a, x) == iterate(f, b, x))).count() as u64)
            .collect();
        let fam = EndofunctionFamily::burnside(BurnsideParams::new(a, b).unwrap());
        assert_eq!(counts(&fam, "1", false, 5), big(&expected), "a={a} b={b}");
    }
}

#[test]
fn endofunction_fixed_points() {
    let s: Statistic = "fixedpoints=y".parse().unwrap();
    let series = egf_of(&EndofunctionFamily::all(), &s, false, 4, None).unwrap();
    for n in 0..=4 {
        let mut p = Poly::zero();
        for f in all_maps(n) {
            let fixed = (0..n).filter(|&x| f[x] == x).count();
            p = &p + &Poly::var("y").pow(fixed as u32);
        }
        assert_eq!(series.coeff(n), &p, "n={n}");
    }
}

#[test]
fn bell_numbers_by_blocks_assignment() {
    // Element x joins an existing block or opens the next one.
    fn count(n: usize, used: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (0..=used).map(|b| count(n - 1, used.max(b + 1))).sum()
    }
    let expected: Vec<u64> = (0..=8).map(|n| count(n, 0)).collect();
    assert_eq!(counts(&PartitionFamily::default(), "1", false, 8), big(&expected));
}
