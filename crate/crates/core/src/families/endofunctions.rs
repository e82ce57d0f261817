use std::fmt;

use crate::sfd::{Relabeling, StructureFamily, Support};

use super::{component_labels, FeatureError, Featured, ENDOFUNCTION_CAP};

/// Map `f: F -> F` on a finite label set. `images[i]` is the image of the
/// `i`-th smallest label of the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endofunction {
    domain: Support,
    images: Vec<u32>,
}

impl Endofunction {
    pub fn new(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, String> {
        let mut pairs: Vec<(u32, u32)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let domain = Support::new(pairs.iter().map(|p| p.0)).map_err(|e| e.to_string())?;
        if domain.len() != pairs.len() {
            return Err("a point is mapped twice".into());
        }
        if let Some((x, y)) = pairs.iter().find(|(_, y)| !domain.contains(*y)) {
            return Err(format!("{x} -> {y} leaves the domain {domain}"));
        }
        Ok(Endofunction { domain, images: pairs.into_iter().map(|p| p.1).collect() })
    }

    pub fn identity(domain: Support) -> Self {
        let images = domain.labels().to_vec();
        Endofunction { domain, images }
    }

    pub fn empty() -> Self {
        Endofunction { domain: Support::empty(), images: Vec::new() }
    }

    pub fn domain(&self) -> &Support {
        &self.domain
    }

    pub fn apply(&self, x: u32) -> Option<u32> {
        self.domain.labels().binary_search(&x).ok().map(|i| self.images[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.domain.labels().iter().copied().zip(self.images.iter().copied())
    }

    /// Map on positions `0..n` equivalent to this function.
    fn index_form(&self) -> Vec<usize> {
        let labels = self.domain.labels();
        self.images.iter().map(|y| labels.binary_search(y).expect("closed")).collect()
    }

    fn from_index_form(domain: &Support, idx: &[usize]) -> Self {
        let labels = domain.labels();
        Endofunction { domain: domain.clone(), images: idx.iter().map(|&i| labels[i]).collect() }
    }

    /// `f^a = f^b` under composition, with `f^0` the identity.
    pub fn satisfies(&self, p: BurnsideParams) -> bool {
        satisfies_index(&self.index_form(), p)
    }

    /// Restrictions of `f` to the weakly connected pieces of its functional
    /// graph, ordered by smallest point.
    pub fn connected_components(&self) -> Vec<Endofunction> {
        let idx = self.index_form();
        let labels = component_labels(idx.len(), idx.iter().copied().enumerate());
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut parts: Vec<Vec<(u32, u32)>> = vec![Vec::new(); count];
        for (i, (x, y)) in self.pairs().enumerate() {
            parts[labels[i]].push((x, y));
        }
        parts.into_iter().map(|p| Endofunction::new(p).expect("pieces are closed")).collect()
    }

    pub fn component_count(&self) -> usize {
        let idx = self.index_form();
        component_labels(idx.len(), idx.iter().copied().enumerate()).iter().max().map_or(0, |m| m + 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.pairs().filter(|(x, y)| x == y).count()
    }

    /// Number of cyclic orbits, i.e. cycles formed by recurrent points.
    pub fn cycle_count(&self) -> usize {
        let idx = self.index_form();
        let n = idx.len();
        // A point is recurrent iff it comes back to itself within n steps.
        let mut recurrent = vec![false; n];
        for (start, flag) in recurrent.iter_mut().enumerate() {
            let mut x = idx[start];
            for _ in 0..n {
                if x == start {
                    *flag = true;
                    break;
                }
                x = idx[x];
            }
        }
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if recurrent[start] && !seen[start] {
                cycles += 1;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = idx[x];
                }
            }
        }
        cycles
    }
}

fn iterate(f: &[usize], times: u32) -> Vec<usize> {
    let mut out: Vec<usize> = (0..f.len()).collect();
    for _ in 0..times {
        for x in out.iter_mut() {
            *x = f[*x];
        }
    }
    out
}

fn satisfies_index(f: &[usize], p: BurnsideParams) -> bool {
    let fa = iterate(f, p.a);
    let mut fb = fa.clone();
    for _ in p.a..p.b {
        for x in fb.iter_mut() {
            *x = f[*x];
        }
    }
    fa == fb
}

impl fmt::Display for Endofunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "}}")
    }
}

/// `(a, b)` with `0 <= a < b`, selecting endofunctions with `f^a = f^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BurnsideParams {
    a: u32,
    b: u32,
}

impl BurnsideParams {
    pub fn new(a: u32, b: u32) -> Result<Self, FeatureError> {
        if a < b {
            Ok(BurnsideParams { a, b })
        } else {
            Err(FeatureError::BadBurnside { a, b })
        }
    }

    /// Idempotents, `f = f^2`.
    pub fn idempotent() -> Self {
        BurnsideParams { a: 1, b: 2 }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

/// Endofunctions under disjoint union, optionally restricted to a Burnside
/// class. The restriction is closed under sums and pieces because the
/// iterate equation holds pointwise on each connected piece.
#[derive(Debug, Clone, Copy)]
pub struct EndofunctionFamily {
    pub burnside: Option<BurnsideParams>,
    pub cap: usize,
}

impl Default for EndofunctionFamily {
    fn default() -> Self {
        EndofunctionFamily { burnside: None, cap: ENDOFUNCTION_CAP }
    }
}

impl EndofunctionFamily {
    pub fn all() -> Self {
        EndofunctionFamily::default()
    }

    pub fn burnside(p: BurnsideParams) -> Self {
        EndofunctionFamily { burnside: Some(p), cap: ENDOFUNCTION_CAP }
    }
}

impl StructureFamily for EndofunctionFamily {
    type Structure = Endofunction;

    fn tag(&self) -> String {
        match self.burnside {
            None => "endofunctions".into(),
            Some(p) => format!("burnside({},{})", p.a, p.b),
        }
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn unit(&self) -> Endofunction {
        Endofunction::empty()
    }

    fn support(&self, f: &Endofunction) -> Support {
        f.domain.clone()
    }

    fn enumerate_unchecked(&self, f: &Support) -> Vec<Endofunction> {
        let n = f.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            if self.burnside.is_none_or(|p| satisfies_index(&idx, p)) {
                out.push(Endofunction::from_index_form(f, &idx));
            }
            // Odometer, last position fastest.
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < n {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    fn direct_sum(&self, a: &Endofunction, b: &Endofunction) -> Option<Endofunction> {
        if !a.domain.is_disjoint(&b.domain) {
            return None;
        }
        let mut pairs: Vec<(u32, u32)> = a.pairs().chain(b.pairs()).collect();
        pairs.sort_unstable();
        Some(Endofunction { domain: a.domain.union(&b.domain), images: pairs.into_iter().map(|p| p.1).collect() })
    }

    fn decompose(&self, f: &Endofunction) -> Vec<Endofunction> {
        f.connected_components()
    }

    fn is_atom(&self, f: &Endofunction) -> bool {
        !f.domain.is_empty() && f.component_count() == 1
    }

    fn relabel(&self, f: &Endofunction, map: &Relabeling) -> Endofunction {
        Endofunction::new(f.pairs().map(|(x, y)| (map.apply(x), map.apply(y)))).expect("injective relabeling")
    }

    fn encode(&self, f: &Endofunction) -> String {
        f.to_string()
    }
}

impl Featured for EndofunctionFamily {
    fn feature_names(&self) -> &'static [&'static str] {
        &["points", "nodes", "cycles", "fixedpoints", "components"]
    }

    fn raw_feature(&self, f: &Endofunction, name: &str) -> Option<u64> {
        Some(match name {
            "points" | "nodes" => f.domain.len() as u64,
            "cycles" => f.cycle_count() as u64,
            "fixedpoints" => f.fixed_points() as u64,
            "components" => f.component_count() as u64,
            _ => return None,
        })
    }
}
