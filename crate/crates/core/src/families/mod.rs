//! Concrete families: labelled simple graphs, endofunctions (optionally
//! restricted to a Burnside class `f^a = f^b`) and set partitions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::sfd::StructureFamily;

mod endofunctions;
mod graphs;
mod partitions;

pub use endofunctions::{BurnsideParams, Endofunction, EndofunctionFamily};
pub use graphs::{GraphFamily, LabelledGraph};
pub use partitions::{PartitionFamily, SetPartition};

/// Default enumeration caps.
pub const GRAPH_CAP: usize = 6;
pub const ENDOFUNCTION_CAP: usize = 7;
pub const PARTITION_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeatureError {
    #[error("family `{family}` has no feature `{feature}` (known: {known})")]
    Unknown { family: String, feature: String, known: String },
    #[error("invalid Burnside parameters a = {a}, b = {b}: need 0 <= a < b")]
    BadBurnside { a: u32, b: u32 },
}

/// Additive integer features of structures: each one adds up across direct
/// sums and ignores the actual label values.
pub trait Featured: StructureFamily {
    fn feature_names(&self) -> &'static [&'static str];

    /// Value of a known feature; `None` for names the family does not define.
    fn raw_feature(&self, s: &Self::Structure, name: &str) -> Option<u64>;

    fn feature(&self, s: &Self::Structure, name: &str) -> Result<u64, FeatureError> {
        self.raw_feature(s, name).ok_or_else(|| FeatureError::Unknown {
            family: self.tag(),
            feature: name.to_string(),
            known: self.feature_names().join(", "),
        })
    }

    fn feature_counts(&self, s: &Self::Structure) -> BTreeMap<String, u64> {
        self.feature_names().iter().map(|n| (n.to_string(), self.raw_feature(s, n).expect("listed feature"))).collect()
    }
}

/// Union-find over `0..n` returning a component label per element, labels
/// numbered by first occurrence.
pub(crate) fn component_labels(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label_of_root = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for (x, slot) in out.iter_mut().enumerate() {
        let r = find(&mut parent, x);
        if label_of_root[r] == usize::MAX {
            label_of_root[r] = next;
            next += 1;
        }
        *slot = label_of_root[r];
    }
    out
}
