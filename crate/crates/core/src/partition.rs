//! Block partitions `n = k_1 + ... + k_p` and the induced decomposition
//! `so(n) = m_1 + ... + m_p + sum_{i<j} m_ij` into `Ad(K)`-modules,
//! `K = SO(k_1) x ... x SO(k_p)` embedded block-diagonally.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition has no blocks")]
    Empty,
    #[error("partition needs at least two blocks, got {0}")]
    TooFewBlocks(usize),
    #[error("block {index} has size {size}; sizes must be at least {min}")]
    BlockTooSmall {
        index: usize,
        size: usize,
        min: usize,
    },
    #[error("blocks {first} and {second} both have size 2, giving equivalent isotropy summands")]
    EquivalentSummands { first: usize, second: usize },
    #[error("module index {0} is not a module of this partition")]
    InvalidModuleIndex(ModuleIndex),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
}

/// Validation knobs for [`FlagPartition`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartitionOptions {
    /// Accept a single block of size 2. Two such blocks are always rejected.
    pub allow_size_two: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FlagPartition {
    blocks: Vec<usize>,
    #[serde(skip)]
    n: usize,
}

impl FlagPartition {
    pub fn new(blocks: &[usize]) -> Result<Self, PartitionError> {
        Self::with_options(blocks, PartitionOptions::default())
    }

    pub fn with_options(blocks: &[usize], opts: PartitionOptions) -> Result<Self, PartitionError> {
        if blocks.is_empty() {
            return Err(PartitionError::Empty);
        }
        let twos: Vec<usize> = blocks
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == 2)
            .map(|(i, _)| i + 1)
            .collect();
        if twos.len() >= 2 {
            return Err(PartitionError::EquivalentSummands {
                first: twos[0],
                second: twos[1],
            });
        }
        let min = if opts.allow_size_two { 2 } else { 3 };
        if let Some((i, &k)) = blocks.iter().enumerate().find(|(_, &k)| k < min) {
            return Err(PartitionError::BlockTooSmall {
                index: i + 1,
                size: k,
                min,
            });
        }
        if blocks.len() < 2 {
            return Err(PartitionError::TooFewBlocks(blocks.len()));
        }
        Ok(FlagPartition {
            blocks: blocks.to_vec(),
            n: blocks.iter().sum(),
        })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Number of blocks `p`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of block `i` (1-based).
    pub fn block(&self, i: usize) -> usize {
        self.blocks[i - 1]
    }

    /// `dim so(n) = n(n-1)/2`.
    pub fn algebra_dim(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn is_valid_module(&self, m: ModuleIndex) -> bool {
        let p = self.len();
        match m {
            ModuleIndex::Diag(i) => (1..=p).contains(&i),
            ModuleIndex::OffDiag(i, j) => 1 <= i && i < j && j <= p,
        }
    }

    pub fn check_module(&self, m: ModuleIndex) -> Result<(), PartitionError> {
        if self.is_valid_module(m) {
            Ok(())
        } else {
            Err(PartitionError::InvalidModuleIndex(m))
        }
    }

    /// All modules: diagonal blocks first, then off-diagonal in
    /// lexicographic `(i, j)` order. This is also the `Ord` order.
    pub fn modules(&self) -> Vec<ModuleIndex> {
        let p = self.len();
        let mut out: Vec<ModuleIndex> = (1..=p).map(ModuleIndex::Diag).collect();
        for i in 1..=p {
            for j in i + 1..=p {
                out.push(ModuleIndex::OffDiag(i, j));
            }
        }
        out
    }

    pub fn module_dimension(&self, m: ModuleIndex) -> Result<usize, PartitionError> {
        self.check_module(m)?;
        Ok(match m {
            ModuleIndex::Diag(i) => {
                let k = self.block(i);
                k * (k - 1) / 2
            }
            ModuleIndex::OffDiag(i, j) => self.block(i) * self.block(j),
        })
    }

    /// Row/column offset of block `i` (1-based) inside an `n x n` matrix.
    pub fn block_offset(&self, i: usize) -> usize {
        self.blocks[..i - 1].iter().sum()
    }

    /// True when `k_2 = ... = k_p`, the shape the symmetric ansatz needs.
    pub fn has_uniform_tail(&self) -> bool {
        self.blocks[1..].windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for FlagPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for FlagPartition {
    type Err = PartitionError;

    /// Parses comma-separated block sizes such as `"4,3,3"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let blocks = parse_blocks(s)?;
        FlagPartition::new(&blocks)
    }
}

pub fn parse_blocks(s: &str) -> Result<Vec<usize>, PartitionError> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    if trimmed.is_empty() {
        return Err(PartitionError::Empty);
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| PartitionError::Parse(s.to_string()))
        })
        .collect()
}

impl<'de> Deserialize<'de> for FlagPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            blocks: Vec<usize>,
        }
        let raw = Raw::deserialize(d)?;
        FlagPartition::with_options(
            &raw.blocks,
            PartitionOptions {
                allow_size_two: true,
            },
        )
        .map_err(serde::de::Error::custom)
    }
}

/// One irreducible summand: `Diag(i)` is `m_i = so(k_i)`, `OffDiag(i, j)`
/// with `i < j` is `m_ij`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleIndex {
    Diag(usize),
    OffDiag(usize, usize),
}

impl ModuleIndex {
    /// Off-diagonal index with the pair put in increasing order.
    pub fn off(i: usize, j: usize) -> ModuleIndex {
        if i < j {
            ModuleIndex::OffDiag(i, j)
        } else {
            ModuleIndex::OffDiag(j, i)
        }
    }

    /// Label used in JSON and on the command line: `m1`, `m12`, or
    /// `m3_11` when an index has more than one digit.
    pub fn label(&self) -> String {
        match *self {
            ModuleIndex::Diag(i) if i < 10 => format!("m{i}"),
            ModuleIndex::Diag(i) => format!("m_{i}"),
            ModuleIndex::OffDiag(i, j) if i < 10 && j < 10 => format!("m{i}{j}"),
            ModuleIndex::OffDiag(i, j) => format!("m{i}_{j}"),
        }
    }

    pub fn parse_label(s: &str) -> Option<ModuleIndex> {
        let body = s
            .trim()
            .strip_prefix('m')
            .or_else(|| s.trim().strip_prefix('x'))?;
        if let Some(i) = body.strip_prefix('_') {
            return Some(ModuleIndex::Diag(i.parse().ok()?));
        }
        if let Some((a, b)) = body.split_once('_') {
            let i = a.parse().ok()?;
            let j = b.parse().ok()?;
            return (i < j).then_some(ModuleIndex::OffDiag(i, j));
        }
        if !body.bytes().all(|b| b.is_ascii_digit()) || body.is_empty() {
            return None;
        }
        match body.len() {
            1 => Some(ModuleIndex::Diag(body.parse().ok()?)),
            2 => {
                let i = (body.as_bytes()[0] - b'0') as usize;
                let j = (body.as_bytes()[1] - b'0') as usize;
                (i < j).then_some(ModuleIndex::OffDiag(i, j))
            }
            _ => None,
        }
    }

    pub fn is_diag(&self) -> bool {
        matches!(self, ModuleIndex::Diag(_))
    }
}

impl fmt::Display for ModuleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Every partition with `p` in `blocks_range`, each block size in
/// `size_range`, in lexicographic order.
pub fn enumerate_partitions(
    blocks_range: std::ops::RangeInclusive<usize>,
    size_range: std::ops::RangeInclusive<usize>,
) -> Vec<FlagPartition> {
    fn rec(
        len: usize,
        sizes: &std::ops::RangeInclusive<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in sizes.clone() {
            cur.push(k);
            rec(len, sizes, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    for p in blocks_range {
        rec(p, &size_range, &mut Vec::new(), &mut raw);
    }
    raw.into_iter()
        .filter_map(|b| FlagPartition::new(&b).ok())
        .collect()
}

/// Every ordered partition (composition) of some `n <= max_n` into at least
/// two blocks of size at least 3.
pub fn partitions_up_to(max_n: usize) -> Vec<FlagPartition> {
    fn rec(remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        for k in 3..=remaining {
            cur.push(k);
            rec(remaining - k, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(max_n, &mut Vec::new(), &mut raw);
    raw.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum()).then(a.cmp(b)));
    raw.into_iter()
        .map(|b| FlagPartition::new(&b).expect("valid by construction"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let p = FlagPartition::new(&[3, 3, 3]).unwrap();
        assert_eq!((p.len(), p.n()), (3, 9));
        let p = FlagPartition::new(&[4, 3, 3, 3]).unwrap();
        assert_eq!((p.len(), p.n()), (4, 13));
        assert_eq!(
            FlagPartition::new(&[2, 2, 3]),
            Err(PartitionError::EquivalentSummands {
                first: 1,
                second: 2
            })
        );
    }

    #[test]
    fn validation_errors() {
        assert_eq!(FlagPartition::new(&[]), Err(PartitionError::Empty));
        assert_eq!(
            FlagPartition::new(&[5]),
            Err(PartitionError::TooFewBlocks(1))
        );
        assert!(matches!(
            FlagPartition::new(&[3, 2]),
            Err(PartitionError::BlockTooSmall {
                index: 2,
                size: 2,
                min: 3
            })
        ));
        let opts = PartitionOptions {
            allow_size_two: true,
        };
        assert!(FlagPartition::with_options(&[3, 2], opts).is_ok());
        assert!(matches!(
            FlagPartition::with_options(&[3, 1], opts),
            Err(PartitionError::BlockTooSmall { .. })
        ));
        assert!(matches!(
            FlagPartition::with_options(&[2, 3, 2], opts),
            Err(PartitionError::EquivalentSummands { .. })
        ));
    }

    #[test]
    fn dimensions() {
        let p: FlagPartition = "4,3,3".parse().unwrap();
        assert_eq!(p.module_dimension(ModuleIndex::Diag(1)).unwrap(), 6);
        assert_eq!(p.module_dimension(ModuleIndex::OffDiag(1, 2)).unwrap(), 12);
        let total: usize = p
            .modules()
            .into_iter()
            .map(|m| p.module_dimension(m).unwrap())
            .sum();
        assert_eq!(total, 45);
        assert_eq!(
            p.module_dimension(ModuleIndex::OffDiag(2, 4)),
            Err(PartitionError::InvalidModuleIndex(ModuleIndex::OffDiag(
                2, 4
            )))
        );
        assert!(!p.is_valid_module(ModuleIndex::OffDiag(2, 1)));
        assert!(!p.is_valid_module(ModuleIndex::Diag(0)));
    }

    #[test]
    fn n_at_least_seven_in_default_regime() {
        for p in partitions_up_to(14) {
            assert!(p.n() >= 6);
            if p.len() >= 3 {
                assert!(p.n() >= 9);
            }
        }
        // smallest default-regime partitions are (3,3) and (3,4)/(4,3)
        assert_eq!(partitions_up_to(7).len(), 3);
    }

    #[test]
    fn labels_round_trip() {
        let p = FlagPartition::new(&[3; 11]).unwrap();
        for m in p.modules() {
            assert_eq!(ModuleIndex::parse_label(&m.label()), Some(m));
        }
        assert_eq!(ModuleIndex::parse_label("m21"), None);
        assert_eq!(
            ModuleIndex::parse_label("x23"),
            Some(ModuleIndex::OffDiag(2, 3))
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            "4,x,3".parse::<FlagPartition>(),
            Err(PartitionError::Parse(_))
        ));
        assert_eq!("".parse::<FlagPartition>(), Err(PartitionError::Empty));
    }
}
