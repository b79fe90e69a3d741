//! Ricci components of the metric `sum x_m (-B)|_m`.
//!
//! Three independent paths: the generic formula over structure-constant
//! sums, the closed form for an arbitrary partition, and the four-parameter
//! closed form for the symmetric ansatz `k_2 = ... = k_p = k`. All of them
//! are generic over [`Scalar`] so the same code runs on rationals, doubles,
//! rational intervals and rational functions.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::partition::{FlagPartition, ModuleIndex, PartitionError};
use crate::rational::{decimal, hex_float, Rational, RationalJson};
use crate::scalar::Scalar;
use crate::triples::{distinct_permutations, TripleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RicciError {
    #[error("metric parameter {0} is not positive")]
    NonPositiveMetric(ModuleIndex),
    #[error("metric is missing modules: {}", labels(.0))]
    MissingModules(Vec<ModuleIndex>),
    #[error("metric has modules not in the partition: {}", labels(.0))]
    UnexpectedModules(Vec<ModuleIndex>),
    #[error("triple table, dimensions and metric disagree: {0}")]
    InconsistentTables(String),
    #[error("symmetric ansatz needs k1, k, p >= 3 (got k1={k1}, k={k}, p={p})")]
    InvalidAnsatz { k1: usize, k: usize, p: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

fn labels(ms: &[ModuleIndex]) -> String {
    ms.iter().map(|m| m.label()).collect::<Vec<_>>().join(", ")
}

/// Coefficients `x_m > 0` of the invariant metric, one per module.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricParams<T> {
    partition: FlagPartition,
    x: BTreeMap<ModuleIndex, T>,
}

impl<T: Scalar> MetricParams<T> {
    pub fn new(partition: &FlagPartition, x: BTreeMap<ModuleIndex, T>) -> Result<Self, RicciError> {
        let want = partition.modules();
        let missing: Vec<_> = want
            .iter()
            .filter(|m| !x.contains_key(m))
            .copied()
            .collect();
        if !missing.is_empty() {
            return Err(RicciError::MissingModules(missing));
        }
        let extra: Vec<_> = x
            .keys()
            .filter(|m| !partition.is_valid_module(**m))
            .copied()
            .collect();
        if !extra.is_empty() {
            return Err(RicciError::UnexpectedModules(extra));
        }
        for (m, v) in &x {
            if v.certainly_positive() == Some(false) {
                return Err(RicciError::NonPositiveMetric(*m));
            }
        }
        Ok(MetricParams {
            partition: partition.clone(),
            x,
        })
    }

    pub fn from_fn(
        partition: &FlagPartition,
        mut f: impl FnMut(ModuleIndex) -> T,
    ) -> Result<Self, RicciError> {
        let x = partition.modules().into_iter().map(|m| (m, f(m))).collect();
        Self::new(partition, x)
    }

    pub fn uniform(partition: &FlagPartition, v: T) -> Result<Self, RicciError> {
        Self::from_fn(partition, |_| v.clone())
    }

    pub fn partition(&self) -> &FlagPartition {
        &self.partition
    }

    pub fn get(&self, m: ModuleIndex) -> &T {
        &self.x[&m]
    }

    /// `x_i`.
    pub fn diag(&self, i: usize) -> T {
        self.x[&ModuleIndex::Diag(i)].clone()
    }

    /// `x_ij` with `x_ij = x_ji`.
    pub fn off(&self, i: usize, j: usize) -> T {
        self.x[&ModuleIndex::off(i, j)].clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModuleIndex, &T)> {
        self.x.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MetricParams<U> {
        MetricParams {
            partition: self.partition.clone(),
            x: self.x.iter().map(|(m, v)| (*m, f(v))).collect(),
        }
    }

    /// Every parameter multiplied by `c`.
    pub fn scaled(&self, c: &T) -> MetricParams<T> {
        self.map(|v| v.clone() * c.clone())
    }
}

/// One Ricci eigenvalue `r_m` per module.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciComponents<T> {
    r: BTreeMap<ModuleIndex, T>,
}

impl<T: Clone> RicciComponents<T> {
    pub fn get(&self, m: ModuleIndex) -> &T {
        &self.r[&m]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModuleIndex, &T)> {
        self.r.iter()
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn modules(&self) -> impl Iterator<Item = ModuleIndex> + '_ {
        self.r.keys().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ComponentJson {
    #[serde(flatten)]
    pub value: RationalJson,
    pub decimal: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hex: Option<String>,
}

impl RicciComponents<Rational> {
    /// `{"m1": {"num", "den", "decimal"}, ...}`.
    pub fn to_json(&self) -> BTreeMap<String, ComponentJson> {
        self.r
            .iter()
            .map(|(m, v)| {
                (
                    m.label(),
                    ComponentJson {
                        value: v.into(),
                        decimal: decimal(v, 12),
                        hex: hex_float(v),
                    },
                )
            })
            .collect()
    }
}

/// Ricci components from the structure-constant sums:
/// `r_k = 1/(2 x_k) + 1/(4 d_k) sum_{i,j} x_k/(x_i x_j) [k|ij]
///        - 1/(2 d_k) sum_{i,j} x_j/(x_k x_i) [j|ki]`.
pub fn ricci_from_triples<T: Scalar>(
    table: &TripleTable,
    dims: &BTreeMap<ModuleIndex, usize>,
    metric: &MetricParams<T>,
) -> Result<RicciComponents<T>, RicciError> {
    if !metric.x.keys().eq(dims.keys()) {
        return Err(RicciError::InconsistentTables(
            "dimension map and metric have different modules".into(),
        ));
    }
    for (t, _) in table.iter() {
        if let Some(m) = t.iter().find(|m| !dims.contains_key(m)) {
            return Err(RicciError::InconsistentTables(format!(
                "table references {m}, which has no dimension"
            )));
        }
    }
    let mut r: BTreeMap<ModuleIndex, T> = metric
        .x
        .iter()
        .map(|(m, x)| (*m, T::from_ratio(1, 2) / x.clone()))
        .collect();
    for (t, v) in table.iter() {
        let v = T::from_rational(v);
        for [a, b, c] in distinct_permutations(t) {
            let (xa, xb, xc) = (
                metric.x[&a].clone(),
                metric.x[&b].clone(),
                metric.x[&c].clone(),
            );
            let d = dims[&a] as i64;
            let plus = T::from_ratio(1, 4 * d) * v.clone() * xa.clone() / (xb.clone() * xc.clone());
            let minus = T::from_ratio(1, 2 * d) * v.clone() * xb / (xa * xc);
            let slot = r.get_mut(&a).expect("module present");
            *slot = slot.clone() + plus - minus;
        }
    }
    Ok(RicciComponents { r })
}

/// Per-module dimensions of `part`.
pub fn dimensions(part: &FlagPartition) -> BTreeMap<ModuleIndex, usize> {
    part.modules()
        .into_iter()
        .map(|m| (m, part.module_dimension(m).expect("valid module")))
        .collect()
}

/// Closed-form Ricci components for an arbitrary partition.
pub fn ricci_general<T: Scalar>(
    part: &FlagPartition,
    metric: &MetricParams<T>,
) -> Result<RicciComponents<T>, RicciError> {
    if metric.partition() != part {
        return Err(RicciError::InconsistentTables(
            "metric belongs to another partition".into(),
        ));
    }
    for (m, v) in metric.iter() {
        if v.certainly_positive() == Some(false) {
            return Err(RicciError::NonPositiveMetric(*m));
        }
    }
    let p = part.len();
    let k = |i: usize| part.block(i) as i64;
    let c = 4 * (part.n() as i64 - 2);
    let q = |num: i64| T::from_ratio(num, c);
    let mut r = BTreeMap::new();
    for i in 1..=p {
        let xi = metric.diag(i);
        let mut acc = q(k(i) - 2) / xi.clone();
        for j in (1..=p).filter(|&j| j != i) {
            acc = acc + q(k(j)) * xi.clone() / metric.off(i, j).square();
        }
        r.insert(ModuleIndex::Diag(i), acc);
    }
    for i in 1..=p {
        for j in i + 1..=p {
            let xij = metric.off(i, j);
            let mut acc = T::from_ratio(1, 2) / xij.clone();
            for l in (1..=p).filter(|&l| l != i && l != j) {
                let (xil, xjl) = (metric.off(i, l), metric.off(j, l));
                let bracket = xij.clone() / (xil.clone() * xjl.clone())
                    - xil.clone() / (xij.clone() * xjl.clone())
                    - xjl / (xij.clone() * xil);
                acc = acc + q(k(l)) * bracket;
            }
            let sq = xij.square();
            acc =
                acc - q(k(i) - 1) * metric.diag(i) / sq.clone() - q(k(j) - 1) * metric.diag(j) / sq;
            r.insert(ModuleIndex::OffDiag(i, j), acc);
        }
    }
    Ok(RicciComponents { r })
}

/// The metric family `x1` on `m_1`, `x2` on `m_j`, `x12` on `m_1j`, `x23`
/// on `m_ij` (`2 <= i < j`), for the partition `(k1, k, ..., k)` with `p`
/// blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricAnsatz<T> {
    pub k1: usize,
    pub k: usize,
    pub p: usize,
    pub x1: T,
    pub x2: T,
    pub x12: T,
    pub x23: T,
}

/// `(r1, r2, r12, r23)` of the symmetric ansatz.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricRicci<T> {
    pub r1: T,
    pub r2: T,
    pub r12: T,
    pub r23: T,
}

impl<T: Clone> SymmetricRicci<T> {
    pub fn as_array(&self) -> [T; 4] {
        [
            self.r1.clone(),
            self.r2.clone(),
            self.r12.clone(),
            self.r23.clone(),
        ]
    }
}

impl<T: Scalar> SymmetricAnsatz<T> {
    pub fn new(
        k1: usize,
        k: usize,
        p: usize,
        x1: T,
        x2: T,
        x12: T,
        x23: T,
    ) -> Result<Self, RicciError> {
        if k1 < 3 || k < 3 || p < 3 {
            return Err(RicciError::InvalidAnsatz { k1, k, p });
        }
        Ok(SymmetricAnsatz {
            k1,
            k,
            p,
            x1,
            x2,
            x12,
            x23,
        })
    }

    pub fn n(&self) -> usize {
        self.k1 + self.k * (self.p - 1)
    }

    pub fn partition(&self) -> FlagPartition {
        let mut blocks = vec![self.k1];
        blocks.extend(std::iter::repeat(self.k).take(self.p - 1));
        FlagPartition::new(&blocks).expect("ansatz parameters are >= 3")
    }

    /// The full per-module parameter map.
    pub fn expand(&self) -> Result<MetricParams<T>, RicciError> {
        MetricParams::from_fn(&self.partition(), |m| match m {
            ModuleIndex::Diag(1) => self.x1.clone(),
            ModuleIndex::Diag(_) => self.x2.clone(),
            ModuleIndex::OffDiag(1, _) => self.x12.clone(),
            ModuleIndex::OffDiag(_, _) => self.x23.clone(),
        })
    }
}

/// Four-component closed form for the symmetric ansatz.
pub fn ricci_symmetric<T: Scalar>(a: &SymmetricAnsatz<T>) -> SymmetricRicci<T> {
    let (k1, k, p) = (a.k1 as i64, a.k as i64, a.p as i64);
    let c = 4 * (a.n() as i64 - 2);
    let q = |num: i64| T::from_ratio(num, c);
    let (x1, x2, x12, x23) = (a.x1.clone(), a.x2.clone(), a.x12.clone(), a.x23.clone());
    let x12s = x12.clone().square();
    let x23s = x23.clone().square();

    let r1 = q(k1 - 2) / x1.clone() + q(k * (p - 1)) * x1.clone() / x12s.clone();
    let r2 = q(k - 2) / x2.clone()
        + q(k1) * x2.clone() / x12s.clone()
        + q(k * (p - 2)) * x2.clone() / x23s.clone();
    let r12 = T::from_ratio(1, 2) / x12.clone()
        - q(k * (p - 2)) * x23.clone() / x12s.clone()
        - q(k1 - 1) * x1 / x12s.clone()
        - q(k - 1) * x2.clone() / x12s.clone();
    let r23 = T::from_ratio(1, 2) / x23.clone()
        + q(k1) * (x23.clone() / x12s - T::from_int(2) / x23.clone())
        - q(k * (p - 3)) / x23
        - T::from_ratio(2 * (k - 1), c) * x2 / x23s;
    SymmetricRicci { r1, r2, r12, r23 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_partitions, PartitionOptions};
    use crate::rational::{int, rat};
    use crate::triples::full_triple_table;
    use proptest::prelude::*;

    fn quarter() -> Rational {
        rat(1, 4)
    }

    #[test]
    fn bi_invariant_is_quarter_on_both_paths() {
        for part in enumerate_partitions(2..=4, 3..=5) {
            let m = MetricParams::uniform(&part, int(1)).unwrap();
            let g = ricci_general(&part, &m).unwrap();
            let t = ricci_from_triples(&full_triple_table(&part), &dimensions(&part), &m).unwrap();
            assert!(g.iter().all(|(_, v)| *v == quarter()), "{part}");
            assert_eq!(g, t);
        }
    }

    #[test]
    fn off_diagonal_bi_invariant_example() {
        let part: FlagPartition = "4,3,3".parse().unwrap();
        let m = MetricParams::uniform(&part, int(1)).unwrap();
        let r = ricci_general(&part, &m).unwrap();
        assert_eq!(*r.get(ModuleIndex::OffDiag(1, 2)), quarter());
    }

    #[test]
    fn symmetric_matches_general_example() {
        let a = SymmetricAnsatz::new(4, 3, 3, int(1), int(1), int(1), int(2)).unwrap();
        let s = ricci_symmetric(&a);
        let g = ricci_general(&a.partition(), &a.expand().unwrap()).unwrap();
        assert_eq!(s.r1, *g.get(ModuleIndex::Diag(1)));
        assert_eq!(s.r2, *g.get(ModuleIndex::Diag(3)));
        assert_eq!(s.r12, *g.get(ModuleIndex::OffDiag(1, 3)));
        assert_eq!(s.r23, *g.get(ModuleIndex::OffDiag(2, 3)));
        let ones = SymmetricAnsatz::new(5, 3, 4, int(1), int(1), int(1), int(1)).unwrap();
        assert!(ricci_symmetric(&ones)
            .as_array()
            .iter()
            .all(|v| *v == quarter()));
    }

    #[test]
    fn metric_validation() {
        let part: FlagPartition = "3,3".parse().unwrap();
        let mut x: BTreeMap<ModuleIndex, Rational> =
            part.modules().into_iter().map(|m| (m, int(1))).collect();
        x.remove(&ModuleIndex::OffDiag(1, 2));
        assert_eq!(
            MetricParams::new(&part, x.clone()),
            Err(RicciError::MissingModules(vec![ModuleIndex::OffDiag(1, 2)]))
        );
        x.insert(ModuleIndex::OffDiag(1, 2), int(-1));
        assert_eq!(
            MetricParams::new(&part, x.clone()),
            Err(RicciError::NonPositiveMetric(ModuleIndex::OffDiag(1, 2)))
        );
        x.insert(ModuleIndex::OffDiag(1, 2), int(1));
        x.insert(ModuleIndex::Diag(3), int(1));
        assert!(matches!(
            MetricParams::new(&part, x),
            Err(RicciError::UnexpectedModules(_))
        ));
    }

    #[test]
    fn inconsistent_tables_detected() {
        let part: FlagPartition = "3,3,3".parse().unwrap();
        let other: FlagPartition = "3,3".parse().unwrap();
        let m = MetricParams::uniform(&other, int(1)).unwrap();
        let err = ricci_from_triples(&full_triple_table(&part), &dimensions(&other), &m);
        assert!(matches!(err, Err(RicciError::InconsistentTables(_))));
    }

    #[test]
    fn size_two_block_still_bi_invariant() {
        let part = FlagPartition::with_options(
            &[2, 3, 3],
            PartitionOptions {
                allow_size_two: true,
            },
        )
        .unwrap();
        let m = MetricParams::uniform(&part, int(1)).unwrap();
        let r = ricci_general(&part, &m).unwrap();
        assert!(r.iter().all(|(_, v)| *v == quarter()));
    }

    #[test]
    fn json_keys_are_labels() {
        let part: FlagPartition = "4,3,3".parse().unwrap();
        let m = MetricParams::uniform(&part, int(1)).unwrap();
        let j = ricci_general(&part, &m).unwrap().to_json();
        assert_eq!(j["m23"].value.num, "1");
        assert_eq!(j["m23"].value.den, "4");
        assert_eq!(j["m1"].hex.as_deref(), Some("0x1p-2"));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (1i64..40, 1i64..12).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn scaling_covariance(xs in proptest::collection::vec(small_rat(), 6), c in small_rat()) {
            let part: FlagPartition = "4,3,3".parse().unwrap();
            let m = MetricParams::new(&part, part.modules().into_iter().zip(xs).collect()).unwrap();
            let r = ricci_general(&part, &m).unwrap();
            let rs = ricci_general(&part, &m.scaled(&c)).unwrap();
            for (mi, v) in r.iter() {
                prop_assert_eq!(rs.get(*mi).clone(), v / &c);
            }
        }

        #[test]
        fn permutation_of_blocks_permutes_components(xs in proptest::collection::vec(small_rat(), 6)) {
            // swapping blocks 2 and 3 of (4,3,3) relabels modules
            let part: FlagPartition = "4,3,3".parse().unwrap();
            let m = MetricParams::new(&part, part.modules().into_iter().zip(xs).collect()).unwrap();
            let swap = |mi: ModuleIndex| match mi {
                ModuleIndex::Diag(i) => ModuleIndex::Diag([0, 1, 3, 2][i]),
                ModuleIndex::OffDiag(i, j) => ModuleIndex::off([0, 1, 3, 2][i], [0, 1, 3, 2][j]),
            };
            let swapped = MetricParams::from_fn(&part, |mi| m.get(swap(mi)).clone()).unwrap();
            let r = ricci_general(&part, &m).unwrap();
            let rs = ricci_general(&part, &swapped).unwrap();
            for mi in part.modules() {
                prop_assert_eq!(rs.get(mi), r.get(swap(mi)));
            }
        }

        #[test]
        fn symmetric_equals_general(
            k1 in 3usize..7, k in 3usize..6, p in 3usize..5,
            x1 in small_rat(), x2 in small_rat(), x12 in small_rat(), x23 in small_rat(),
        ) {
            let a = SymmetricAnsatz::new(k1, k, p, x1, x2, x12, x23).unwrap();
            let s = ricci_symmetric(&a);
            let g = ricci_general(&a.partition(), &a.expand().unwrap()).unwrap();
            for j in 2..=p {
                prop_assert_eq!(g.get(ModuleIndex::Diag(j)), &s.r2);
                prop_assert_eq!(g.get(ModuleIndex::OffDiag(1, j)), &s.r12);
                for l in j + 1..=p {
                    prop_assert_eq!(g.get(ModuleIndex::OffDiag(j, l)), &s.r23);
                }
            }
            prop_assert_eq!(g.get(ModuleIndex::Diag(1)), &s.r1);
        }
    }
}
