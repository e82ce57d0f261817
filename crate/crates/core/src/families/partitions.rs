use std::fmt;

use crate::rgs::RestrictedGrowth;
use crate::sfd::{Relabeling, StructureFamily, Support};

use super::{Featured, PARTITION_CAP};

/// Set partition, i.e. the graph of an equivalence relation. Blocks are
/// nonempty, pairwise disjoint and sorted by smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: Support,
    blocks: Vec<Support>,
}

impl SetPartition {
    pub fn new(blocks: impl IntoIterator<Item = Support>) -> Result<Self, String> {
        let mut blocks: Vec<Support> = blocks.into_iter().collect();
        let mut ground = Support::empty();
        for b in &blocks {
            if b.is_empty() {
                return Err("empty block".into());
            }
            if !ground.is_disjoint(b) {
                return Err(format!("block {b} overlaps another block"));
            }
            ground = ground.union(b);
        }
        blocks.sort();
        Ok(SetPartition { ground, blocks })
    }

    pub fn empty() -> Self {
        SetPartition { ground: Support::empty(), blocks: Vec::new() }
    }

    pub fn ground(&self) -> &Support {
        &self.ground
    }

    pub fn blocks(&self) -> &[Support] {
        &self.blocks
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

/// Set partitions under disjoint union of block systems. Atoms are the
/// one-block partitions.
#[derive(Debug, Clone, Copy)]
pub struct PartitionFamily {
    pub cap: usize,
}

impl Default for PartitionFamily {
    fn default() -> Self {
        PartitionFamily { cap: PARTITION_CAP }
    }
}

impl StructureFamily for PartitionFamily {
    type Structure = SetPartition;

    fn tag(&self) -> String {
        "partitions".into()
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn unit(&self) -> SetPartition {
        SetPartition::empty()
    }

    fn support(&self, p: &SetPartition) -> Support {
        p.ground.clone()
    }

    fn enumerate_unchecked(&self, f: &Support) -> Vec<SetPartition> {
        let labels = f.labels();
        RestrictedGrowth::new(labels.len())
            .map(|s| {
                let count = s.iter().max().map_or(0, |m| m + 1);
                let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); count];
                for (i, &b) in s.iter().enumerate() {
                    blocks[b].push(labels[i]);
                }
                // Growth strings already number blocks by first element.
                SetPartition {
                    ground: f.clone(),
                    blocks: blocks.into_iter().map(|b| Support::new(b).expect("positive")).collect(),
                }
            })
            .collect()
    }

    fn direct_sum(&self, a: &SetPartition, b: &SetPartition) -> Option<SetPartition> {
        if !a.ground.is_disjoint(&b.ground) {
            return None;
        }
        let mut blocks = a.blocks.clone();
        blocks.extend_from_slice(&b.blocks);
        blocks.sort();
        Some(SetPartition { ground: a.ground.union(&b.ground), blocks })
    }

    fn decompose(&self, p: &SetPartition) -> Vec<SetPartition> {
        p.blocks.iter().map(|b| SetPartition { ground: b.clone(), blocks: vec![b.clone()] }).collect()
    }

    fn is_atom(&self, p: &SetPartition) -> bool {
        p.blocks.len() == 1
    }

    fn relabel(&self, p: &SetPartition, map: &Relabeling) -> SetPartition {
        SetPartition::new(p.blocks.iter().map(|b| map.apply_support(b))).expect("injective relabeling")
    }

    fn encode(&self, p: &SetPartition) -> String {
        p.to_string()
    }
}

impl Featured for PartitionFamily {
    fn feature_names(&self) -> &'static [&'static str] {
        &["points", "nodes", "blocks", "components"]
    }

    fn raw_feature(&self, p: &SetPartition, name: &str) -> Option<u64> {
        Some(match name {
            "points" | "nodes" => p.ground.len() as u64,
            "blocks" | "components" => p.blocks.len() as u64,
            _ => return None,
        })
    }
}
