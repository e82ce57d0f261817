//! Square-free decomposable families: supports, partial direct sums, atoms.
//!
//! A [`StructureFamily`] describes labelled structures over finite subsets of
//! the positive integers together with a partially defined direct sum. The
//! checkers in this module certify the direct-sum axioms, Levi's refinement
//! property and unique factorization into atoms by exhaustive enumeration of
//! every structure supported inside `[1..max]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest support size accepted by [`check_levi`].
pub const LEVI_CAP: usize = 5;

/// Largest support handed to [`check_direct_sum_axioms`] or
/// [`check_unique_factorization`], whatever the family cap says.
pub const AXIOM_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SfdError {
    #[error("support size {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("support labels must be positive integers, found {0}")]
    NonPositiveLabel(u32),
    #[error("relabeling is not injective: {0} and {1} share an image")]
    NonInjective(u32, u32),
}

/// Finite set of positive integer labels, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Support(Vec<u32>);

impl Support {
    pub fn new(labels: impl IntoIterator<Item = u32>) -> Result<Self, SfdError> {
        let mut v: Vec<u32> = labels.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&x| x == 0) {
            return Err(SfdError::NonPositiveLabel(bad));
        }
        v.sort_unstable();
        v.dedup();
        Ok(Support(v))
    }

    pub fn empty() -> Self {
        Support(Vec::new())
    }

    /// `[1..n]`, empty when `n = 0`.
    pub fn range(n: usize) -> Self {
        Support((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn is_disjoint(&self, other: &Support) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Support) -> Support {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        Support(v)
    }

    pub fn intersection(&self, other: &Support) -> Support {
        Support(self.0.iter().copied().filter(|x| other.contains(*x)).collect())
    }

    pub fn difference(&self, other: &Support) -> Support {
        Support(self.0.iter().copied().filter(|x| !other.contains(*x)).collect())
    }

    /// All subsets, ordered by size then lexicographically.
    pub fn subsets(&self) -> Vec<Support> {
        let n = self.0.len();
        assert!(n < 32, "power set of {n} labels");
        let mut out: Vec<Support> = (0u32..(1 << n))
            .map(|mask| Support((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

impl TryFrom<Vec<u32>> for Support {
    type Error = SfdError;
    fn try_from(v: Vec<u32>) -> Result<Self, SfdError> {
        Support::new(v)
    }
}

impl From<Support> for Vec<u32> {
    fn from(s: Support) -> Vec<u32> {
        s.0
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Injective relabeling of positive integers; labels outside the map are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Relabeling(BTreeMap<u32, u32>);

impl Relabeling {
    pub fn new(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, SfdError> {
        let map: BTreeMap<u32, u32> = pairs.into_iter().collect();
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        for (&k, &v) in &map {
            if k == 0 || v == 0 {
                return Err(SfdError::NonPositiveLabel(0));
            }
            if let Some(prev) = seen.insert(v, k) {
                return Err(SfdError::NonInjective(prev, k));
            }
        }
        Ok(Relabeling(map))
    }

    pub fn identity() -> Self {
        Relabeling::default()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0.get(&x).copied().unwrap_or(x)
    }

    pub fn apply_support(&self, s: &Support) -> Support {
        Support::new(s.labels().iter().map(|&x| self.apply(x))).expect("positive labels")
    }

    /// `self` after `first`, restricted to the labels of `domain`.
    pub fn compose_after(&self, first: &Relabeling, domain: &Support) -> Relabeling {
        Relabeling(domain.labels().iter().map(|&x| (x, self.apply(first.apply(x)))).collect())
    }
}

/// A family of labelled structures closed under a partial direct sum.
///
/// `direct_sum` returns `None` when the sum is undefined; that is domain
/// information, not an error.
pub trait StructureFamily {
    type Structure: Clone + Eq + Hash + Ord + fmt::Debug;

    /// Short identifier used in reports and cache keys, e.g. `graphs`.
    fn tag(&self) -> String;

    /// Largest support size `enumerate` accepts.
    fn cap(&self) -> usize;

    /// The unique structure with empty support.
    fn unit(&self) -> Self::Structure;

    fn support(&self, s: &Self::Structure) -> Support;

    /// Every structure with support exactly `f`, in a deterministic order.
    /// Callers have already checked the cap.
    fn enumerate_unchecked(&self, f: &Support) -> Vec<Self::Structure>;

    fn direct_sum(&self, a: &Self::Structure, b: &Self::Structure) -> Option<Self::Structure>;

    /// Family-specific decomposition into atoms.
    fn decompose(&self, s: &Self::Structure) -> Vec<Self::Structure>;

    fn relabel(&self, s: &Self::Structure, map: &Relabeling) -> Self::Structure;

    /// Canonical textual encoding.
    fn encode(&self, s: &Self::Structure) -> String;

    fn enumerate(&self, f: &Support) -> Result<Vec<Self::Structure>, SfdError> {
        if f.len() > self.cap() {
            return Err(SfdError::CapExceeded { requested: f.len(), cap: self.cap() });
        }
        Ok(self.enumerate_unchecked(f))
    }

    fn is_atom(&self, s: &Self::Structure) -> bool {
        *s != self.unit() && self.decompose(s).len() == 1
    }

    /// Folds `direct_sum` over `parts`, `None` if any step is undefined.
    fn sum_all<'a>(&self, parts: impl IntoIterator<Item = &'a Self::Structure>) -> Option<Self::Structure>
    where
        Self::Structure: 'a,
    {
        parts.into_iter().try_fold(self.unit(), |acc, p| self.direct_sum(&acc, p))
    }
}

/// Unique atom set of `s`, sorted by support.
pub fn decompose_atoms<F: StructureFamily>(family: &F, s: &F::Structure) -> Vec<F::Structure> {
    let mut atoms = family.decompose(s);
    atoms.sort_by_key(|a| family.support(a));
    atoms
}

/// Atoms with support exactly `f`.
pub fn atoms_on<F: StructureFamily>(family: &F, f: &Support) -> Result<Vec<F::Structure>, SfdError> {
    Ok(family.enumerate(f)?.into_iter().filter(|s| family.is_atom(s)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The statistic vanishes on the unit, hence everywhere.
    Improper,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Improper => "IMPROPER",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub axiom: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub instances_checked: u64,
}

impl CheckReport {
    pub fn pass(axiom: impl Into<String>, instances_checked: u64) -> Self {
        CheckReport { axiom: axiom.into(), status: CheckStatus::Pass, witness: None, instances_checked }
    }

    pub fn fail(axiom: impl Into<String>, witness: impl Into<String>, instances_checked: u64) -> Self {
        CheckReport { axiom: axiom.into(), status: CheckStatus::Fail, witness: Some(witness.into()), instances_checked }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} instances)", self.axiom, self.status, self.instances_checked)?;
        if let Some(w) = &self.witness {
            write!(f, "; witness: {w}")?;
        }
        Ok(())
    }
}

/// Keeps the violation with the smallest total support size.
struct Witness {
    best: Option<(usize, String)>,
}

impl Witness {
    fn new() -> Self {
        Witness { best: None }
    }

    fn offer(&mut self, size: usize, text: impl FnOnce() -> String) {
        if self.best.as_ref().is_none_or(|(s, _)| size < *s) {
            self.best = Some((size, text()));
        }
    }

    fn report(self, axiom: &str, checked: u64) -> CheckReport {
        match self.best {
            None => CheckReport::pass(axiom, checked),
            Some((_, w)) => CheckReport::fail(axiom, w, checked),
        }
    }
}

/// Ordered pairs `(a, b)` with `a ⊕ b` equal to a given structure.
type Splits<S> = Vec<(S, S)>;

/// Every structure supported inside `[1..max]`, with its pairwise
/// decompositions indexed by the sum.
pub struct Universe<'f, F: StructureFamily> {
    family: &'f F,
    ground: Support,
    by_support: BTreeMap<Support, Vec<F::Structure>>,
    supports: HashMap<F::Structure, Support>,
    decompositions: HashMap<F::Structure, Splits<F::Structure>>,
}

impl<'f, F: StructureFamily> Universe<'f, F> {
    pub fn build(family: &'f F, max: usize, cap: usize) -> Result<Self, SfdError> {
        let cap = cap.min(family.cap());
        if max > cap {
            return Err(SfdError::CapExceeded { requested: max, cap });
        }
        let ground = Support::range(max);
        let mut by_support = BTreeMap::new();
        let mut supports = HashMap::new();
        for f in ground.subsets() {
            let list = family.enumerate(&f)?;
            for s in &list {
                supports.insert(s.clone(), family.support(s));
            }
            by_support.insert(f, list);
        }
        let mut decompositions: HashMap<F::Structure, Splits<F::Structure>> = HashMap::new();
        for (f1, list1) in &by_support {
            for (f2, list2) in &by_support {
                if !f1.is_disjoint(f2) {
                    continue;
                }
                for a in list1 {
                    for b in list2 {
                        if let Some(s) = family.direct_sum(a, b) {
                            decompositions.entry(s).or_default().push((a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        Ok(Universe { family, ground, by_support, supports, decompositions })
    }

    pub fn structures(&self) -> impl Iterator<Item = &F::Structure> {
        self.by_support.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn on(&self, f: &Support) -> &[F::Structure] {
        self.by_support.get(f).map_or(&[], Vec::as_slice)
    }

    fn support_of(&self, s: &F::Structure) -> Support {
        self.supports.get(s).cloned().unwrap_or_else(|| self.family.support(s))
    }

    /// All ordered pairs `(a, b)` with `a ⊕ b = s`.
    pub fn decompositions(&self, s: &F::Structure) -> &[(F::Structure, F::Structure)] {
        self.decompositions.get(s).map_or(&[], Vec::as_slice)
    }

    /// Atom by the abstract definition: not the unit, and every 2-part
    /// decomposition has a unit part.
    pub fn is_abstract_atom(&self, s: &F::Structure) -> bool {
        let unit = self.family.unit();
        *s != unit && self.decompositions(s).iter().all(|(a, b)| *a == unit || *b == unit)
    }

    /// Every set of abstract atoms whose direct sum is `s`.
    pub fn atom_sets(&self, s: &F::Structure) -> BTreeSet<BTreeSet<F::Structure>> {
        let mut out = BTreeSet::new();
        let Some(m) = self.support_of(s).smallest() else {
            out.insert(BTreeSet::new());
            return out;
        };
        for (a, rest) in self.decompositions(s) {
            if !self.support_of(a).contains(m) || !self.is_abstract_atom(a) {
                continue;
            }
            for mut set in self.atom_sets(rest) {
                set.insert(a.clone());
                out.insert(set);
            }
        }
        out
    }
}

/// Checks (DS)-1..3, the unit law, commutativity on pairs and associativity
/// on triples for every structure supported inside `[1..max]`.
pub fn check_direct_sum_axioms<F: StructureFamily>(family: &F, max: usize) -> Result<CheckReport, SfdError> {
    let universe = Universe::build(family, max, AXIOM_CAP)?;
    Ok(direct_sum_axioms(family, &universe))
}

fn direct_sum_axioms<F: StructureFamily>(family: &F, u: &Universe<'_, F>) -> CheckReport {
    let axiom = "direct-sum";
    let enc = |s: &F::Structure| family.encode(s);
    let unit = family.unit();
    let mut w = Witness::new();
    let mut checked = 0u64;

    // (DS)-1 and well-formed enumeration.
    let empty = u.on(&Support::empty());
    checked += 1;
    if empty != [unit.clone()] {
        w.offer(0, || format!("(DS)-1: structures on the empty support are {empty:?}, expected only the unit"));
    }
    for (f, list) in &u.by_support {
        for s in list {
            checked += 1;
            let sup = family.support(s);
            if sup != *f {
                w.offer(f.len(), || format!("enumerate({f}) produced {} with support {sup}", enc(s)));
            }
            if sup.is_empty() && *s != unit {
                w.offer(0, || format!("(DS)-1: {} has empty support but is not the unit", enc(s)));
            }
            let left = family.direct_sum(&unit, s);
            let right = family.direct_sum(s, &unit);
            if left.as_ref() != Some(s) || right.as_ref() != Some(s) {
                w.offer(f.len(), || format!("unit law fails for {}", enc(s)));
            }
        }
    }

    let all: Vec<&F::Structure> = u.structures().collect();
    for a in &all {
        let sa = u.support_of(a);
        for b in &all {
            checked += 1;
            let sb = u.support_of(b);
            let size = sa.len() + sb.len();
            let disjoint = sa.is_disjoint(&sb);
            let ab = family.direct_sum(a, b);
            match (&ab, disjoint) {
                (Some(_), false) => {
                    w.offer(size, || format!("(DS)-2: {} ⊕ {} is defined on overlapping supports", enc(a), enc(b)))
                }
                (None, true) => {
                    w.offer(size, || format!("(DS)-2: {} ⊕ {} is undefined on disjoint supports", enc(a), enc(b)))
                }
                _ => {}
            }
            if let Some(s) = &ab {
                let union = sa.union(&sb);
                if family.support(s) != union {
                    w.offer(size, || format!("(DS)-3: support of {} ⊕ {} is not {union}", enc(a), enc(b)));
                } else if disjoint && union.labels().iter().all(|x| u.ground.contains(*x)) && !u.on(&union).contains(s)
                {
                    w.offer(size, || format!("{} ⊕ {} = {} is not a member of the family", enc(a), enc(b), enc(s)));
                }
            }
            if ab != family.direct_sum(b, a) {
                w.offer(size, || format!("commutativity: {} ⊕ {} differs from the reverse order", enc(a), enc(b)));
            }
        }
    }

    // Associativity: exhaustive on pairwise disjoint support triples, a fixed
    // sample of structures on overlapping ones.
    const OVERLAP_SAMPLE: usize = 2;
    let supports: Vec<&Support> = u.by_support.keys().collect();
    for f1 in &supports {
        for f2 in &supports {
            for f3 in &supports {
                let disjoint = f1.is_disjoint(f2) && f1.is_disjoint(f3) && f2.is_disjoint(f3);
                let take = if disjoint { usize::MAX } else { OVERLAP_SAMPLE };
                let size = f1.len() + f2.len() + f3.len();
                for a in u.on(f1).iter().take(take) {
                    for b in u.on(f2).iter().take(take) {
                        for c in u.on(f3).iter().take(take) {
                            checked += 1;
                            let left = family.direct_sum(a, b).and_then(|ab| family.direct_sum(&ab, c));
                            let right = family.direct_sum(b, c).and_then(|bc| family.direct_sum(a, &bc));
                            if left != right {
                                w.offer(size, || {
                                    format!(
                                        "associativity: ({} ⊕ {}) ⊕ {} vs {} ⊕ ({} ⊕ {})",
                                        enc(a),
                                        enc(b),
                                        enc(c),
                                        enc(a),
                                        enc(b),
                                        enc(c)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    w.report(axiom, checked)
}

/// Levi's property: any two 2-part decompositions of the same structure
/// admit a common 2×2 refinement.
pub fn check_levi<F: StructureFamily>(family: &F, max: usize) -> Result<CheckReport, SfdError> {
    let u = Universe::build(family, max, LEVI_CAP)?;
    Ok(levi(family, &u))
}

fn levi<F: StructureFamily>(family: &F, u: &Universe<'_, F>) -> CheckReport {
    let enc = |s: &F::Structure| family.encode(s);
    let mut w = Witness::new();
    let mut checked = 0u64;
    for s in u.structures() {
        let decs = u.decompositions(s);
        for (w1, w2) in decs {
            for (v1, v2) in decs {
                checked += 1;
                if !has_refinement(family, u, (w1, w2), (v1, v2)) {
                    w.offer(u.support_of(s).len(), || {
                        format!("{} ⊕ {} = {} ⊕ {} has no refining grid", enc(w1), enc(w2), enc(v1), enc(v2))
                    });
                }
            }
        }
    }
    w.report("levi", checked)
}

fn has_refinement<F: StructureFamily>(
    family: &F,
    u: &Universe<'_, F>,
    (w1, w2): (&F::Structure, &F::Structure),
    (v1, v2): (&F::Structure, &F::Structure),
) -> bool {
    let sv1 = u.support_of(v1);
    let top = u.support_of(w1).intersection(&sv1);
    let bottom = u.support_of(w2).intersection(&sv1);
    // Row i splits w_i into its parts inside v1 and inside v2.
    let rows1: Vec<_> = u.decompositions(w1).iter().filter(|(p, _)| u.support_of(p) == top).collect();
    let rows2: Vec<_> = u.decompositions(w2).iter().filter(|(p, _)| u.support_of(p) == bottom).collect();
    rows1.iter().any(|(p11, p12)| {
        rows2.iter().any(|(p21, p22)| {
            family.direct_sum(p11, p21).as_ref() == Some(v1) && family.direct_sum(p12, p22).as_ref() == Some(v2)
        })
    })
}

/// Every structure has exactly one set of atoms summing to it, and the
/// family's own `decompose` returns that set.
pub fn check_unique_factorization<F: StructureFamily>(family: &F, max: usize) -> Result<CheckReport, SfdError> {
    let u = Universe::build(family, max, AXIOM_CAP)?;
    Ok(unique_factorization(family, &u))
}

fn unique_factorization<F: StructureFamily>(family: &F, u: &Universe<'_, F>) -> CheckReport {
    let enc = |s: &F::Structure| family.encode(s);
    let encs = |v: &[F::Structure]| v.iter().map(|s| family.encode(s)).collect::<Vec<_>>().join(" ⊕ ");
    let unit = family.unit();
    let mut w = Witness::new();
    let mut checked = 0u64;
    for s in u.structures() {
        checked += 1;
        let size = u.support_of(s).len();
        let atoms = family.decompose(s);
        if atoms.is_empty() != (*s == unit) {
            w.offer(size, || format!("{} decomposes into {} atoms", enc(s), atoms.len()));
            continue;
        }
        if let Some(bad) = atoms.iter().find(|a| !u.is_abstract_atom(a)) {
            w.offer(size, || format!("{} is returned as an atom of {} but splits", enc(bad), enc(s)));
            continue;
        }
        let mut covered = Support::empty();
        let mut disjoint = true;
        for a in &atoms {
            let sa = u.support_of(a);
            disjoint &= covered.is_disjoint(&sa);
            covered = covered.union(&sa);
        }
        if !disjoint || covered != u.support_of(s) {
            w.offer(size, || format!("atom supports of {} do not partition its support", enc(s)));
            continue;
        }
        let forward = family.sum_all(atoms.iter());
        let backward = family.sum_all(atoms.iter().rev());
        if forward.as_ref() != Some(s) || backward.as_ref() != Some(s) {
            w.offer(size, || format!("{} does not sum back to {}", encs(&atoms), enc(s)));
            continue;
        }
        let sets = u.atom_sets(s);
        let expected: BTreeSet<F::Structure> = atoms.iter().cloned().collect();
        if sets.len() != 1 || !sets.contains(&expected) {
            w.offer(size, || {
                let listed: Vec<String> = sets
                    .iter()
                    .map(|set| {
                        let v: Vec<_> = set.iter().cloned().collect();
                        format!("[{}]", encs(&v))
                    })
                    .collect();
                format!("{} has atom sets {}", enc(s), listed.join(", "))
            });
        }
    }
    w.report("unique-factorization", checked)
}

/// Relabeling acts as a group action that preserves supports and atom counts.
pub fn check_relabeling<F: StructureFamily>(family: &F, max: usize) -> Result<CheckReport, SfdError> {
    let u = Universe::build(family, max, AXIOM_CAP)?;
    let enc = |s: &F::Structure| family.encode(s);
    let n = max as u32;
    let reverse = Relabeling::new((1..=n).map(|i| (i, n + 1 - i)))?;
    let shift = Relabeling::new((1..=2 * n).map(|i| (i, i + n)))?;
    let mut w = Witness::new();
    let mut checked = 0u64;
    for s in u.structures() {
        checked += 1;
        let sup = u.support_of(s);
        if family.relabel(s, &Relabeling::identity()) != *s {
            w.offer(sup.len(), || format!("identity relabeling moves {}", enc(s)));
        }
        let once = family.relabel(s, &reverse);
        let twice = family.relabel(&once, &shift);
        let composed = family.relabel(s, &shift.compose_after(&reverse, &sup));
        if twice != composed {
            w.offer(sup.len(), || format!("relabeling does not compose on {}", enc(s)));
        }
        if family.support(&once) != reverse.apply_support(&sup) {
            w.offer(sup.len(), || format!("relabeling {} does not move its support", enc(s)));
        }
        if family.is_atom(&once) != family.is_atom(s) || family.decompose(&twice).len() != family.decompose(s).len() {
            w.offer(sup.len(), || format!("atom structure of {} changes under relabeling", enc(s)));
        }
    }
    Ok(w.report("relabeling", checked))
}

/// Test fixtures with planted defects.
pub mod fixtures {
    use super::*;

    /// Finite sets under plain union, defined even on overlapping supports.
    #[derive(Debug, Clone, Copy, Default)]
    pub struct OverlappingUnion;

    impl StructureFamily for OverlappingUnion {
        type Structure = Support;

        fn tag(&self) -> String {
            "overlapping-union".into()
        }
        fn cap(&self) -> usize {
            8
        }
        fn unit(&self) -> Support {
            Support::empty()
        }
        fn support(&self, s: &Support) -> Support {
            s.clone()
        }
        fn enumerate_unchecked(&self, f: &Support) -> Vec<Support> {
            vec![f.clone()]
        }
        fn direct_sum(&self, a: &Support, b: &Support) -> Option<Support> {
            Some(a.union(b))
        }
        fn decompose(&self, s: &Support) -> Vec<Support> {
            s.labels().iter().map(|&x| Support(vec![x])).collect()
        }
        fn relabel(&self, s: &Support, map: &Relabeling) -> Support {
            map.apply_support(s)
        }
        fn encode(&self, s: &Support) -> String {
            s.to_string()
        }
    }

    /// Sets drawn from `{}, {1,2}, {3,4}, {1,3}, {2,4}, {1,2,3,4}` under
    /// disjoint union. The full set splits two ways with no common
    /// refinement, so Levi's property and unique factorization fail.
    #[derive(Debug, Clone, Copy, Default)]
    pub struct CrossedPairs;

    impl CrossedPairs {
        fn allowed(s: &Support) -> bool {
            matches!(s.labels(), [] | [1, 2] | [3, 4] | [1, 3] | [2, 4] | [1, 2, 3, 4])
        }
    }

    impl StructureFamily for CrossedPairs {
        type Structure = Support;

        fn tag(&self) -> String {
            "crossed-pairs".into()
        }
        fn cap(&self) -> usize {
            8
        }
        fn unit(&self) -> Support {
            Support::empty()
        }
        fn support(&self, s: &Support) -> Support {
            s.clone()
        }
        fn enumerate_unchecked(&self, f: &Support) -> Vec<Support> {
            if Self::allowed(f) {
                vec![f.clone()]
            } else {
                Vec::new()
            }
        }
        fn direct_sum(&self, a: &Support, b: &Support) -> Option<Support> {
            a.is_disjoint(b).then(|| a.union(b))
        }
        fn decompose(&self, s: &Support) -> Vec<Support> {
            match s.labels() {
                [] => Vec::new(),
                [1, 2, 3, 4] => vec![Support(vec![1, 2]), Support(vec![3, 4])],
                _ => vec![s.clone()],
            }
        }
        fn relabel(&self, s: &Support, map: &Relabeling) -> Support {
            map.apply_support(s)
        }
        fn encode(&self, s: &Support) -> String {
            s.to_string()
        }
    }
}
