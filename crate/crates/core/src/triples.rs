//! Structure-constant sums `[k|ij]` for the block decomposition.
//!
//! With a `(-B)`-orthonormal basis adapted to the modules,
//! `[k|ij] = sum (-B([e_a, e_b], e_c))^2` over `e_a in m_i`, `e_b in m_j`,
//! `e_c in m_k`. The value is symmetric in the three indices, so entries are
//! stored once under the sorted triple.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::partition::{FlagPartition, ModuleIndex, PartitionError};
use crate::rational::{rat, Rational, RationalJson};

pub type Triple = [ModuleIndex; 3];

pub fn canonical(a: ModuleIndex, b: ModuleIndex, c: ModuleIndex) -> Triple {
    let mut t = [a, b, c];
    t.sort();
    t
}

/// The distinct orderings of a triple (1, 3 or 6 of them).
pub fn distinct_permutations(t: &Triple) -> Vec<Triple> {
    let [a, b, c] = *t;
    let mut out = vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ];
    out.sort();
    out.dedup();
    out
}

/// Closed form of `[a|bc]` for any three modules of `part`.
pub fn closed_form_triple(
    part: &FlagPartition,
    triple: (ModuleIndex, ModuleIndex, ModuleIndex),
) -> Result<Rational, PartitionError> {
    let (a, b, c) = triple;
    for m in [a, b, c] {
        part.check_module(m)?;
    }
    let den = 2 * (part.n() as i64 - 2);
    let k = |i: usize| part.block(i) as i64;
    let t = canonical(a, b, c);
    use ModuleIndex::*;
    let num = match t {
        [Diag(i), Diag(j), Diag(l)] if i == j && j == l => k(i) * (k(i) - 1) * (k(i) - 2),
        [Diag(d), OffDiag(i, j), OffDiag(i2, j2)] if (i, j) == (i2, j2) && (d == i || d == j) => {
            k(i) * k(j) * (k(d) - 1)
        }
        [OffDiag(a1, b1), OffDiag(a2, c2), OffDiag(b3, c3)]
            if a1 == a2 && b1 == b3 && c2 == c3 && a1 < b1 && b1 < c2 =>
        {
            k(a1) * k(b1) * k(c2)
        }
        _ => 0,
    };
    Ok(rat(num, den))
}

/// The nonzero `[k|ij]` of a partition, keyed by sorted triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleTable {
    partition: FlagPartition,
    entries: BTreeMap<Triple, Rational>,
}

impl TripleTable {
    pub fn partition(&self) -> &FlagPartition {
        &self.partition
    }

    /// `[a|bc]` in any order; zero when not stored.
    pub fn get(&self, a: ModuleIndex, b: ModuleIndex, c: ModuleIndex) -> Rational {
        self.entries
            .get(&canonical(a, b, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> TripleTableJson {
        TripleTableJson {
            partition: self.partition.blocks().to_vec(),
            entries: self
                .entries
                .iter()
                .map(|(t, v)| TripleEntryJson {
                    triple: t.iter().map(|m| m.label()).collect(),
                    value: v.into(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &TripleTableJson) -> Result<TripleTable, String> {
        let partition = FlagPartition::new(&j.partition).map_err(|e| e.to_string())?;
        let mut entries = BTreeMap::new();
        for e in &j.entries {
            if e.triple.len() != 3 {
                return Err(format!("triple must have three labels, got {:?}", e.triple));
            }
            let mut ms = [ModuleIndex::Diag(0); 3];
            for (slot, label) in ms.iter_mut().zip(&e.triple) {
                let m = ModuleIndex::parse_label(label)
                    .ok_or_else(|| format!("bad module label {label:?}"))?;
                partition.check_module(m).map_err(|e| e.to_string())?;
                *slot = m;
            }
            let v = e.value.to_rational()?;
            if !v.is_positive() {
                return Err(format!("non-positive entry for {:?}", e.triple));
            }
            entries.insert(canonical(ms[0], ms[1], ms[2]), v);
        }
        Ok(TripleTable { partition, entries })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleEntryJson {
    pub triple: Vec<String>,
    pub value: RationalJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleTableJson {
    pub partition: Vec<usize>,
    pub entries: Vec<TripleEntryJson>,
}

/// Every sorted triple of modules of `part`.
pub fn all_triples(part: &FlagPartition) -> Vec<Triple> {
    let ms = part.modules();
    let mut out = Vec::new();
    for a in 0..ms.len() {
        for b in a..ms.len() {
            for c in b..ms.len() {
                out.push([ms[a], ms[b], ms[c]]);
            }
        }
    }
    out
}

/// Table of all positive `[k|ij]`, generated directly from the nonzero
/// patterns rather than by scanning every triple.
pub fn full_triple_table(part: &FlagPartition) -> TripleTable {
    use ModuleIndex::*;
    let p = part.len();
    let mut candidates = Vec::new();
    for a in 1..=p {
        candidates.push(canonical(Diag(a), Diag(a), Diag(a)));
        for b in 1..=p {
            if a != b {
                let off = ModuleIndex::off(a, b);
                candidates.push(canonical(Diag(a), off, off));
            }
        }
    }
    for a in 1..=p {
        for b in a + 1..=p {
            for c in b + 1..=p {
                candidates.push(canonical(OffDiag(a, b), OffDiag(a, c), OffDiag(b, c)));
            }
        }
    }
    let mut entries = BTreeMap::new();
    for t in candidates {
        let v = closed_form_triple(part, (t[0], t[1], t[2])).expect("valid modules");
        if v.is_positive() {
            entries.insert(t, v);
        }
    }
    TripleTable {
        partition: part.clone(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_partitions, PartitionOptions};
    use ModuleIndex::*;

    fn part(b: &[usize]) -> FlagPartition {
        FlagPartition::new(b).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let p333 = part(&[3, 3, 3]);
        assert_eq!(
            closed_form_triple(&p333, (Diag(1), Diag(1), Diag(1))).unwrap(),
            rat(3, 7)
        );
        let p433 = part(&[4, 3, 3]);
        let tri = (OffDiag(1, 3), OffDiag(1, 2), OffDiag(2, 3));
        assert_eq!(closed_form_triple(&p433, tri).unwrap(), rat(9, 4));
        assert!(closed_form_triple(&p433, (Diag(1), Diag(2), Diag(2)))
            .unwrap()
            .is_zero());
        let t = full_triple_table(&p433);
        assert_eq!(t.get(Diag(1), OffDiag(1, 2), OffDiag(1, 2)), rat(9, 4));
        assert_eq!(t.get(OffDiag(1, 2), Diag(2), OffDiag(1, 2)), rat(3, 2));
    }

    #[test]
    fn invalid_module_rejected() {
        let p = part(&[3, 3]);
        assert!(matches!(
            closed_form_triple(&p, (Diag(3), Diag(1), Diag(1))),
            Err(PartitionError::InvalidModuleIndex(_))
        ));
    }

    #[test]
    fn table_sizes() {
        assert_eq!(full_triple_table(&part(&[3, 3, 3])).len(), 3 + 6 + 1);
        let t33 = full_triple_table(&part(&[3, 3]));
        assert!(t33.iter().all(|(t, _)| t.iter().any(|m| m.is_diag())));
        assert_eq!(t33.len(), 2 + 2);
    }

    #[test]
    fn sparsity_matches_exhaustive_scan() {
        for p in enumerate_partitions(2..=4, 3..=5) {
            let table = full_triple_table(&p);
            let mut nonzero = 0;
            for t in all_triples(&p) {
                let v = closed_form_triple(&p, (t[0], t[1], t[2])).unwrap();
                assert!(!v.is_negative());
                for q in distinct_permutations(&t) {
                    assert_eq!(closed_form_triple(&p, (q[0], q[1], q[2])).unwrap(), v);
                }
                if v.is_positive() {
                    nonzero += 1;
                    assert_eq!(table.get(t[0], t[1], t[2]), v);
                }
            }
            assert_eq!(nonzero, table.len());
        }
    }

    #[test]
    fn size_two_block_drops_self_triple() {
        let p = FlagPartition::with_options(
            &[2, 3, 4],
            PartitionOptions {
                allow_size_two: true,
            },
        )
        .unwrap();
        let t = full_triple_table(&p);
        assert!(t.get(Diag(1), Diag(1), Diag(1)).is_zero());
        assert!(t.get(Diag(1), OffDiag(1, 2), OffDiag(1, 2)).is_positive());
    }

    #[test]
    fn json_round_trip() {
        let t = full_triple_table(&part(&[4, 3, 3]));
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back: TripleTableJson = serde_json::from_str(&s).unwrap();
        assert_eq!(TripleTable::from_json(&back).unwrap(), t);
    }
}
