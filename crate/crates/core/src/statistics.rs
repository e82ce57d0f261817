//! Multiplicative statistics, class sums and the exponential formula.
//!
//! A [`Statistic`] maps a structure to the monomial
//! `var_1^{feature_1} ... var_r^{feature_r}`. Summing it over every structure
//! on `[1..n]` gives the `n`-th coefficient of the family's exponential
//! generating series; summing over atoms only gives the atom series.
//! [`verify_exponential_formula`] checks that the first is
//! `c(ε) - 1 + exp` of the second, coefficient by coefficient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::cache::CoefficientCache;
use crate::egf::{EgfError, EgfSeries, DEFAULT_ORACLE_ORDER};
use crate::families::{Featured, PartitionFamily};
use crate::rings::{ExactScalar, Monomial, Poly};
use crate::sfd::{CheckReport, CheckStatus, StructureFamily, Support, Universe};
use crate::Error;

/// Anything that assigns a ring value to the structures of a family.
pub trait StatisticFn<F: StructureFamily> {
    fn value(&self, family: &F, s: &F::Structure) -> Result<Poly, Error>;

    /// Canonical description, used in cache keys and reports.
    fn describe(&self) -> String;
}

/// `scale * prod var^{feature}` over additive features.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statistic {
    factors: Vec<(String, String)>,
    scale: ExactScalar,
}

impl Statistic {
    /// The constant statistic 1: plain counting.
    pub fn counting() -> Self {
        Statistic { factors: Vec::new(), scale: ExactScalar::one() }
    }

    pub fn monomial<'a>(factors: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        Statistic {
            factors: factors.into_iter().map(|(f, v)| (f.to_string(), v.to_string())).collect(),
            scale: ExactScalar::one(),
        }
    }

    /// Multiplies every value by `scale`. Only 0 and 1 keep the statistic
    /// multiplicative.
    pub fn with_scale(mut self, scale: ExactScalar) -> Self {
        self.scale = scale;
        self
    }

    pub fn factors(&self) -> &[(String, String)] {
        &self.factors
    }

    pub fn scale(&self) -> &ExactScalar {
        &self.scale
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.scale.is_one() || self.factors.is_empty() {
            parts.push(self.scale.to_string());
        }
        let mut factors = self.factors.clone();
        factors.sort();
        parts.extend(factors.iter().map(|(feat, var)| format!("{feat}={var}")));
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Statistic {
    type Err = Error;

    /// Comma-separated `feature=variable` pairs, optionally with one bare
    /// rational scale such as `1` or `0`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::Statistic(s.to_string(), why.to_string());
        let mut stat = Statistic::counting();
        let mut saw_scale = false;
        for item in s.split(',').map(str::trim) {
            if item.is_empty() {
                return Err(bad("empty item"));
            }
            match item.split_once('=') {
                Some((feat, var)) => {
                    let (feat, var) = (feat.trim(), var.trim());
                    let ident = |t: &str| {
                        !t.is_empty()
                            && t.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                            && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                    };
                    if !ident(feat) || !ident(var) {
                        return Err(bad("expected feature=variable"));
                    }
                    if stat.factors.iter().any(|(f, _)| f == feat) {
                        return Err(bad("feature listed twice"));
                    }
                    stat.factors.push((feat.to_string(), var.to_string()));
                }
                None => {
                    if saw_scale {
                        return Err(bad("more than one scale"));
                    }
                    saw_scale = true;
                    stat.scale = item.parse().map_err(|_| bad("expected a rational scale"))?;
                }
            }
        }
        Ok(stat)
    }
}

impl<F: Featured> StatisticFn<F> for Statistic {
    fn value(&self, family: &F, s: &F::Structure) -> Result<Poly, Error> {
        let mut exps: Vec<(&str, u32)> = Vec::with_capacity(self.factors.len());
        for (feat, var) in &self.factors {
            exps.push((var.as_str(), family.feature(s, feat)? as u32));
        }
        Ok(Poly::term(Monomial::from_exponents(exps), self.scale.clone()))
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// `c(X_F)` for `X` the whole family or its atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSum {
    pub value: Poly,
    pub support_size: usize,
    pub class: String,
}

pub fn class_sum<F, C>(family: &F, c: &C, f: &Support, atoms_only: bool) -> Result<ClassSum, Error>
where
    F: StructureFamily,
    C: StatisticFn<F>,
{
    let mut value = Poly::zero();
    for s in family.enumerate(f)? {
        if atoms_only && !family.is_atom(&s) {
            continue;
        }
        value += &c.value(family, &s)?;
    }
    let class = format!("{}{}", if atoms_only { "atoms:" } else { "" }, family.tag());
    Ok(ClassSum { value, support_size: f.len(), class })
}

/// `c(ε)`.
pub fn unit_value<F: StructureFamily, C: StatisticFn<F>>(family: &F, c: &C) -> Result<Poly, Error> {
    c.value(family, &family.unit())
}

pub fn is_proper<F: StructureFamily, C: StatisticFn<F>>(family: &F, c: &C) -> Result<bool, Error> {
    Ok(!unit_value(family, c)?.is_zero())
}

/// Which class sums an equivariance check compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Atoms,
    All,
}

/// Class sums on `[1..m]`, `{2..m+1}` and a seeded random `m`-subset of
/// `[1..2m]` agree for every `m <= n`.
pub fn check_equivariance<F, C>(family: &F, c: &C, n: usize, scope: Scope) -> Result<CheckReport, Error>
where
    F: StructureFamily,
    C: StatisticFn<F>,
{
    let axiom = match scope {
        Scope::Atoms => "equivariance(atoms)",
        Scope::All => "equivariance(all)",
    };
    let mut checked = 0;
    for m in 0..=n {
        let base = Support::range(m);
        let shifted = Support::new((2..=m as u32 + 1).collect::<Vec<_>>())?;
        let mut rng = StdRng::seed_from_u64(0x5eed ^ m as u64);
        let picked = rand::seq::index::sample(&mut rng, 2 * m.max(1), m);
        let random = Support::new(picked.iter().map(|i| i as u32 + 1))?;
        let reference = class_sum(family, c, &base, scope == Scope::Atoms)?.value;
        for other in [shifted, random] {
            checked += 1;
            let v = class_sum(family, c, &other, scope == Scope::Atoms)?.value;
            if v != reference {
                return Ok(CheckReport::fail(
                    axiom,
                    format!("c on {base} is {reference} but on {other} is {v}"),
                    checked,
                ));
            }
        }
    }
    Ok(CheckReport::pass(axiom, checked))
}

/// `c(a ⊕ b) = c(a) c(b)` over all defined pairs inside `[1..max]`.
/// A statistic with `c(ε) = 0` is reported as improper.
pub fn check_multiplicativity<F, C>(family: &F, c: &C, max: usize) -> Result<CheckReport, Error>
where
    F: StructureFamily,
    C: StatisticFn<F>,
{
    let axiom = "multiplicativity";
    if !is_proper(family, c)? {
        return Ok(CheckReport {
            axiom: axiom.into(),
            status: CheckStatus::Improper,
            witness: Some(format!("c({}) = 0, so c vanishes identically", family.encode(&family.unit()))),
            instances_checked: 1,
        });
    }
    let ground = Support::range(max);
    let mut by_support = Vec::new();
    for f in ground.subsets() {
        let list = family.enumerate(&f)?;
        let values = list.iter().map(|s| c.value(family, s)).collect::<Result<Vec<_>, _>>()?;
        by_support.push((f, list, values));
    }
    let mut checked = 0;
    for (f1, l1, v1) in &by_support {
        for (f2, l2, v2) in &by_support {
            if !f1.is_disjoint(f2) {
                continue;
            }
            for (a, ca) in l1.iter().zip(v1) {
                for (b, cb) in l2.iter().zip(v2) {
                    checked += 1;
                    let Some(ab) = family.direct_sum(a, b) else { continue };
                    let cab = c.value(family, &ab)?;
                    if cab != ca * cb {
                        return Ok(CheckReport::fail(
                            axiom,
                            format!(
                                "c({}) = {cab} but c({}) c({}) = {}",
                                family.encode(&ab),
                                family.encode(a),
                                family.encode(b),
                                ca * cb
                            ),
                            checked,
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass(axiom, checked))
}

/// `c(S_F ⊕ S_G) = c(S_F) c(S_G)` for disjoint `F, G` inside `[1..max]`,
/// where the left side sums over the set of all defined sums.
pub fn check_product_rule<F, C>(family: &F, c: &C, max: usize) -> Result<CheckReport, Error>
where
    F: StructureFamily,
    C: StatisticFn<F>,
{
    let axiom = "product-rule";
    let u = Universe::build(family, max, family.cap())?;
    let subsets = Support::range(max).subsets();
    let mut checked = 0;
    for f in &subsets {
        for g in &subsets {
            if !f.is_disjoint(g) {
                continue;
            }
            checked += 1;
            let mut sums = BTreeSet::new();
            for a in u.on(f) {
                for b in u.on(g) {
                    if let Some(s) = family.direct_sum(a, b) {
                        sums.insert(s);
                    }
                }
            }
            let mut lhs = Poly::zero();
            for s in &sums {
                lhs += &c.value(family, s)?;
            }
            let cf = class_sum(family, c, f, false)?.value;
            let cg = class_sum(family, c, g, false)?.value;
            if lhs != &cf * &cg {
                return Ok(CheckReport::fail(
                    axiom,
                    format!("c(S_{f} ⊕ S_{g}) = {lhs}, product is {}", &cf * &cg),
                    checked,
                ));
            }
        }
    }
    Ok(CheckReport::pass(axiom, checked))
}

pub fn cache_key<F: StructureFamily, C: StatisticFn<F>>(family: &F, c: &C, atoms_only: bool, n: usize) -> String {
    format!("{}|{}|{}|{}", family.tag(), c.describe(), if atoms_only { "atoms" } else { "all" }, n)
}

/// `EGF(X; z) = sum_n c(X_{[1..n]}) z^n/n!` truncated at `order`.
///
/// Coefficients found in `cache` are reused and fresh ones are stored. An
/// improper statistic yields the zero series.
pub fn egf_of<F, C>(
    family: &F,
    c: &C,
    atoms_only: bool,
    order: usize,
    mut cache: Option<&mut CoefficientCache>,
) -> Result<EgfSeries, Error>
where
    F: StructureFamily,
    C: StatisticFn<F>,
{
    if order > family.cap() {
        return Err(crate::sfd::SfdError::CapExceeded { requested: order, cap: family.cap() }.into());
    }
    if !is_proper(family, c)? {
        return Ok(EgfSeries::zero(order));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let key = cache_key(family, c, atoms_only, n);
        if let Some(v) = cache.as_deref().and_then(|ch| ch.get(&key)) {
            coeffs.push(v.clone());
            continue;
        }
        let v = class_sum(family, c, &Support::range(n), atoms_only)?.value;
        if let Some(ch) = cache.as_deref_mut() {
            ch.insert(key, v.clone());
        }
        coeffs.push(v);
    }
    Ok(EgfSeries::new(coeffs))
}

/// Both series of the exponential formula, computed independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpFormulaSides {
    pub total: EgfSeries,
    pub atoms: EgfSeries,
    pub predicted: EgfSeries,
}

pub fn exponential_formula_sides<F, C>(family: &F, c: &C, order: usize) -> Result<ExpFormulaSides, Error>
where
    F: StructureFamily,
    C: StatisticFn<F>,
{
    let total = egf_of(family, c, false, order, None)?;
    let atoms = egf_of(family, c, true, order, None)?;
    let shift = &unit_value(family, c)? - &Poly::one();
    let predicted = atoms.exp()?.add_constant(&shift);
    Ok(ExpFormulaSides { total, atoms, predicted })
}

/// `EGF(S) = c(ε) - 1 + exp(EGF(atoms(S)))` exactly up to `order`.
pub fn verify_exponential_formula<F, C>(family: &F, c: &C, order: usize) -> Result<CheckReport, Error>
where
    F: StructureFamily,
    C: StatisticFn<F>,
{
    let axiom = format!("exponential-formula[{}; c={}]", family.tag(), c.describe());
    if !is_proper(family, c)? {
        return Ok(CheckReport {
            axiom,
            status: CheckStatus::Improper,
            witness: Some("c(ε) = 0; both sides reduce to the zero series".into()),
            instances_checked: 0,
        });
    }
    let sides = exponential_formula_sides(family, c, order)?;
    if order <= DEFAULT_ORACLE_ORDER {
        let shift = &unit_value(family, c)? - &Poly::one();
        let by_partitions = sides.atoms.exp_partition()?.add_constant(&shift);
        if by_partitions != sides.predicted {
            return Ok(CheckReport::fail(axiom, "recurrence and partition-sum exponentials disagree", 0));
        }
    }
    Ok(compare_series(axiom, &sides.total, &sides.predicted))
}

fn compare_series(axiom: String, lhs: &EgfSeries, rhs: &EgfSeries) -> CheckReport {
    let n = lhs.order().min(rhs.order());
    for k in 0..=n {
        if lhs.coeff(k) != rhs.coeff(k) {
            return CheckReport::fail(
                axiom,
                format!("coefficient {k}: {} vs {}", lhs.coeff(k), rhs.coeff(k)),
                k as u64 + 1,
            );
        }
    }
    CheckReport::pass(axiom, n as u64 + 1)
}

/// Atom series recovered from a total series by the logarithm.
pub fn atoms_egf_from_total(total: &EgfSeries) -> Result<EgfSeries, EgfError> {
    total.log()
}

/// Stirling class: the partition series under `x^{points} y^{blocks}`
/// equals `exp(y (e^x - 1))`, with the exponential taken over `Q[y]` and
/// `x` standing for the series variable.
pub fn verify_stirling_class(order: usize) -> Result<CheckReport, Error> {
    let family = PartitionFamily::default();
    let stat = Statistic::monomial([("points", "x"), ("blocks", "y")]);
    let lhs = egf_of(&family, &stat, false, order, None)?;
    let y = Poly::var("y");
    let inner = EgfSeries::from_fn(order, |n| if n == 0 { Poly::zero() } else { y.clone() });
    let rhs_z = inner.exp()?;
    let rhs = EgfSeries::from_fn(order, |n| rhs_z.coeff(n) * &Poly::monomial(Monomial::var_pow("x", n as u32)));
    Ok(compare_series("stirling-class".into(), &lhs, &rhs))
}

/// Row-by-row `S2(n, k)` read off the class sums of the Stirling class.
pub fn stirling2_from_partitions(n_max: usize) -> Result<BTreeMap<(usize, usize), i64>, Error> {
    let family = PartitionFamily::default();
    let stat = Statistic::monomial([("blocks", "y")]);
    let mut out = BTreeMap::new();
    for n in 0..=n_max {
        let v = class_sum(&family, &stat, &Support::range(n), false)?.value;
        for (m, c) in v.terms() {
            let k = m.exponent("y") as usize;
            let c = c.to_integer().and_then(|i| i64::try_from(i).ok()).expect("small integer count");
            out.insert((n, k), c);
        }
    }
    Ok(out)
}

/// Statistics with planted defects.
pub mod fixtures {
    use super::*;

    /// `var^{number of even labels}`: multiplicative but tied to the actual
    /// label values, so same-size supports can disagree.
    #[derive(Debug, Clone)]
    pub struct EvenLabels {
        pub var: String,
    }

    impl<F: StructureFamily> StatisticFn<F> for EvenLabels {
        fn value(&self, family: &F, s: &F::Structure) -> Result<Poly, Error> {
            let evens = family.support(s).labels().iter().filter(|x| *x % 2 == 0).count();
            Ok(Poly::monomial(Monomial::var_pow(&self.var, evens as u32)))
        }

        fn describe(&self) -> String {
            format!("even-labels={}", self.var)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::EvenLabels;
    use super::*;
    use crate::families::{BurnsideParams, EndofunctionFamily, GraphFamily};

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn statistic_spec_language() {
        let s: Statistic = "blocks=y, points=x".parse().unwrap();
        assert_eq!(s.factors().len(), 2);
        assert_eq!(s.to_string(), "blocks=y,points=x");
        assert_eq!("1".parse::<Statistic>().unwrap(), Statistic::counting());
        assert_eq!(Statistic::counting().to_string(), "1");
        assert_eq!("0".parse::<Statistic>().unwrap().to_string(), "0");
        for bad in ["", "blocks=", "=y", "blocks=y,blocks=x", "1,2", "x y", "2nd=y"] {
            assert!(bad.parse::<Statistic>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn class_sum_examples() {
        let parts = PartitionFamily::default();
        let by_blocks = Statistic::monomial([("blocks", "y")]);
        let v = class_sum(&parts, &by_blocks, &Support::range(4), false).unwrap();
        assert_eq!(v.value, poly("y^4 + 6*y^3 + 7*y^2 + y"));
        assert_eq!(v.support_size, 4);
        let graphs = GraphFamily::default();
        let by_comp = Statistic::monomial([("components", "y")]);
        assert_eq!(class_sum(&graphs, &by_comp, &Support::range(3), false).unwrap().value, poly("y^3 + 3*y^2 + 4*y"));
        for fam_value in [
            class_sum(&graphs, &by_comp, &Support::empty(), false).unwrap().value,
            class_sum(&parts, &by_blocks, &Support::empty(), false).unwrap().value,
        ] {
            assert_eq!(fam_value, Poly::one());
        }
        let unknown = Statistic::monomial([("cycles", "x")]);
        assert!(matches!(class_sum(&graphs, &unknown, &Support::range(2), false), Err(Error::Feature(_))));
    }

    #[test]
    fn equivariance_checks() {
        let graphs = GraphFamily::default();
        let by_comp = Statistic::monomial([("components", "y")]);
        assert!(check_equivariance(&graphs, &by_comp, 4, Scope::Atoms).unwrap().passed());
        assert!(check_equivariance(&graphs, &by_comp, 4, Scope::All).unwrap().passed());
        let endo = EndofunctionFamily::all();
        let phys = Statistic::monomial([("cycles", "x"), ("fixedpoints", "y")]);
        assert!(check_equivariance(&endo, &phys, 4, Scope::Atoms).unwrap().passed());
        let bad = EvenLabels { var: "t".into() };
        let r = check_equivariance(&graphs, &bad, 3, Scope::Atoms).unwrap();
        assert_eq!(r.status, CheckStatus::Fail);
    }

    #[test]
    fn multiplicativity_checks() {
        let graphs = GraphFamily::default();
        let parts = PartitionFamily::default();
        let endo = EndofunctionFamily::all();
        for spec in ["1", "components=y", "edges=x,components=y", "points=x"] {
            let s: Statistic = spec.parse().unwrap();
            assert!(check_multiplicativity(&graphs, &s, 4).unwrap().passed(), "{spec}");
        }
        for spec in ["1", "blocks=y,points=x"] {
            let s: Statistic = spec.parse().unwrap();
            assert!(check_multiplicativity(&parts, &s, 4).unwrap().passed(), "{spec}");
        }
        for spec in ["1", "cycles=x,fixedpoints=y", "components=z"] {
            let s: Statistic = spec.parse().unwrap();
            assert!(check_multiplicativity(&endo, &s, 4).unwrap().passed(), "{spec}");
        }
        assert_eq!(unit_value(&graphs, &Statistic::counting()).unwrap(), Poly::one());

        let improper = Statistic::counting().with_scale(ExactScalar::zero());
        let r = check_multiplicativity(&graphs, &improper, 3).unwrap();
        assert_eq!(r.status, CheckStatus::Improper);
        assert_eq!(egf_of(&graphs, &improper, false, 4, None).unwrap(), EgfSeries::zero(4));
        assert_eq!(verify_exponential_formula(&graphs, &improper, 4).unwrap().status, CheckStatus::Improper);

        let doubled = Statistic::counting().with_scale(ExactScalar::from(2));
        assert_eq!(check_multiplicativity(&graphs, &doubled, 2).unwrap().status, CheckStatus::Fail);
    }

    #[test]
    fn product_rule_and_class_equivariance() {
        let endo = EndofunctionFamily::all();
        let phys = Statistic::monomial([("cycles", "x"), ("fixedpoints", "y")]);
        assert!(check_product_rule(&endo, &phys, 4).unwrap().passed());
        let parts = PartitionFamily::default();
        assert!(check_product_rule(&parts, &Statistic::monomial([("blocks", "y")]), 5).unwrap().passed());
    }

    #[test]
    fn egf_examples() {
        let parts = PartitionFamily::default();
        let one = Statistic::counting();
        assert_eq!(egf_of(&parts, &one, false, 6, None).unwrap(), EgfSeries::from_integers([1, 1, 2, 5, 15, 52, 203]));
        assert_eq!(egf_of(&parts, &one, true, 6, None).unwrap(), EgfSeries::from_integers([0, 1, 1, 1, 1, 1, 1]));
        let graphs = GraphFamily::default();
        assert_eq!(egf_of(&graphs, &one, false, 5, None).unwrap(), EgfSeries::from_integers([1, 1, 2, 8, 64, 1024]));
        assert!(egf_of(&graphs, &one, false, 7, None).is_err());
    }

    #[test]
    fn exponential_formula_cases() {
        let graphs = GraphFamily::default();
        let one = Statistic::counting();
        let sides = exponential_formula_sides(&graphs, &one, 5).unwrap();
        assert_eq!(sides.atoms, EgfSeries::from_integers([0, 1, 1, 4, 38, 728]));
        assert!(verify_exponential_formula(&graphs, &one, 5).unwrap().passed());

        let idem = EndofunctionFamily::burnside(BurnsideParams::idempotent());
        let sides = exponential_formula_sides(&idem, &one, 6).unwrap();
        assert_eq!(sides.atoms, EgfSeries::from_integers([0, 1, 2, 3, 4, 5, 6]));
        assert_eq!(sides.total, EgfSeries::from_integers([1, 1, 3, 10, 41, 196, 1057]));
        assert!(verify_exponential_formula(&idem, &one, 6).unwrap().passed());

        assert!(verify_stirling_class(7).unwrap().passed());
    }

    #[test]
    fn logarithm_recovers_atoms() {
        let bell = EgfSeries::from_integers([1, 1, 2, 5, 15, 52, 203]);
        assert_eq!(atoms_egf_from_total(&bell).unwrap(), EgfSeries::from_integers([0, 1, 1, 1, 1, 1, 1]));
        let endo = EgfSeries::from_integers([1, 1, 4, 27, 256, 3125]);
        assert_eq!(atoms_egf_from_total(&endo).unwrap(), EgfSeries::from_integers([0, 1, 3, 17, 142, 1569]));
        assert_eq!(atoms_egf_from_total(&EgfSeries::one(3)).unwrap(), EgfSeries::zero(3));
    }

    #[test]
    fn stirling_table() {
        let s2 = stirling2_from_partitions(4).unwrap();
        assert_eq!(s2[&(4, 2)], 7);
        assert_eq!(s2[&(0, 0)], 1);
        assert!(!s2.contains_key(&(4, 0)));
    }
}
