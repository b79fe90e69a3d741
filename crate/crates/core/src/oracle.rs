//! Numerical ground truth from explicit matrices.
//!
//! `so(n)` is realized as antisymmetric `n x n` matrices with
//! `B(X, Y) = (n - 2) tr(XY)`. Structure constants come from raw matrix
//! commutators, and the Ricci tensor of a left-invariant metric is computed
//! from the Levi-Civita connection of an orthonormal frame. None of this
//! shares code with the closed forms in [`crate::ricci`].

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::BuildHasherDefault;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::partition::{FlagPartition, ModuleIndex};
use crate::ricci::MetricParams;
use crate::triples::{canonical, Triple};

pub const DEFAULT_MAX_N: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("partition has n = {n}, above the basis cap of {cap}")]
    PartitionTooLarge { n: usize, cap: usize },
    #[error("metric parameter {0} is not positive")]
    NonPositiveMetric(ModuleIndex),
}

/// `(n - 2) tr(XY)`.
pub fn killing(x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    let n = x.nrows() as f64;
    (n - 2.0) * (x * y).trace()
}

type Sparse = Vec<(usize, usize, f64)>;

/// `(-B)`-orthonormal basis of `so(n)` adapted to the module decomposition.
#[derive(Debug, Clone)]
pub struct MatrixBasis {
    n: usize,
    elements: Vec<DMatrix<f64>>,
    modules: Vec<ModuleIndex>,
    sparse: Vec<Sparse>,
}

impl MatrixBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `n - 2`, the factor in front of the trace form.
    pub fn normalization(&self) -> f64 {
        self.n as f64 - 2.0
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, a: usize) -> &DMatrix<f64> {
        &self.elements[a]
    }

    pub fn module_of(&self, a: usize) -> ModuleIndex {
        self.modules[a]
    }

    pub fn modules(&self) -> &[ModuleIndex] {
        &self.modules
    }

    /// Commutator of basis elements `a` and `b` as a dense matrix.
    pub fn bracket(&self, a: usize, b: usize) -> DMatrix<f64> {
        let mut z = DMatrix::zeros(self.n, self.n);
        sparse_mul_into(&self.sparse[a], &self.sparse[b], 1.0, &mut z);
        sparse_mul_into(&self.sparse[b], &self.sparse[a], -1.0, &mut z);
        z
    }

    /// `-B(z, e_c)` reading only the nonzero entries of `e_c`.
    fn coefficient(&self, z: &DMatrix<f64>, c: usize) -> f64 {
        // tr(z e) = sum_{r,s} z[r,s] e[s,r]
        let tr: f64 = self.sparse[c].iter().map(|&(r, s, v)| z[(s, r)] * v).sum();
        -self.normalization() * tr
    }

    /// All nonzero structure constants `c_abc = -B([e_a, e_b], e_c)`,
    /// dropping values below `1e-15`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, f64)> {
        let d = self.len();
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                if a == b {
                    continue;
                }
                let z = self.bracket(a, b);
                if z.iter().all(|v| *v == 0.0) {
                    continue;
                }
                for c in 0..d {
                    let v = self.coefficient(&z, c);
                    if v.abs() > 1e-15 {
                        out.push((a, b, c, v));
                    }
                }
            }
        }
        out
    }

    /// Largest deviation of the Gram matrix `-B(e_a, e_b)` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.len() {
            for b in a..self.len() {
                let g = -killing(&self.elements[a], &self.elements[b]);
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - want).abs());
            }
        }
        worst
    }
}

fn sparse_mul_into(x: &Sparse, y: &Sparse, sign: f64, z: &mut DMatrix<f64>) {
    for &(r, k, v) in x {
        for &(k2, c, w) in y {
            if k == k2 {
                z[(r, c)] += sign * v * w;
            }
        }
    }
}

pub fn build_basis(part: &FlagPartition) -> Result<MatrixBasis, OracleError> {
    build_basis_with_cap(part, DEFAULT_MAX_N)
}

/// Basis elements `(E_ab - E_ba) / sqrt(2(n-2))`, grouped by module in the
/// order of [`FlagPartition::modules`].
pub fn build_basis_with_cap(part: &FlagPartition, cap: usize) -> Result<MatrixBasis, OracleError> {
    let n = part.n();
    if n > cap {
        return Err(OracleError::PartitionTooLarge { n, cap });
    }
    let scale = 1.0 / (2.0 * (n as f64 - 2.0)).sqrt();
    let rows = |i: usize| {
        let o = part.block_offset(i);
        o..o + part.block(i)
    };
    let mut elements = Vec::new();
    let mut modules = Vec::new();
    let mut sparse = Vec::new();
    for m in part.modules() {
        let mut pairs = Vec::new();
        match m {
            ModuleIndex::Diag(i) => {
                for a in rows(i) {
                    for b in a + 1..rows(i).end {
                        pairs.push((a, b));
                    }
                }
            }
            ModuleIndex::OffDiag(i, j) => {
                for a in rows(i) {
                    for b in rows(j) {
                        pairs.push((a, b));
                    }
                }
            }
        }
        for (a, b) in pairs {
            let mut e = DMatrix::zeros(n, n);
            e[(a, b)] = scale;
            e[(b, a)] = -scale;
            elements.push(e);
            modules.push(m);
            sparse.push(vec![(a, b, scale), (b, a, -scale)]);
        }
    }
    Ok(MatrixBasis {
        n,
        elements,
        modules,
        sparse,
    })
}

/// Numerically computed `[k|ij]` for every sorted module triple, zeros
/// included.
/// Fixed-key hasher so accumulation order, and hence rounding, is the same
/// in every process.
type FixedMap<K, V> = HashMap<K, V, BuildHasherDefault<DefaultHasher>>;

#[derive(Debug, Clone)]
pub struct NumericTriples {
    pub values: BTreeMap<Triple, f64>,
}

impl NumericTriples {
    pub fn get(&self, a: ModuleIndex, b: ModuleIndex, c: ModuleIndex) -> f64 {
        self.values.get(&canonical(a, b, c)).copied().unwrap_or(0.0)
    }
}

/// `[k|ij] = sum c_abc^2` over `e_a in m_i`, `e_b in m_j`, `e_c in m_k`.
pub fn numeric_triples(basis: &MatrixBasis) -> NumericTriples {
    let mut ordered: FixedMap<Triple, f64> = FixedMap::default();
    for (a, b, c, v) in basis.structure_constants() {
        let key = [basis.module_of(a), basis.module_of(b), basis.module_of(c)];
        *ordered.entry(key).or_insert(0.0) += v * v;
    }
    let ms: Vec<ModuleIndex> = {
        let mut v = basis.modules.clone();
        v.dedup();
        v
    };
    let mut values = BTreeMap::new();
    for (x, &a) in ms.iter().enumerate() {
        for (y, &b) in ms.iter().enumerate().skip(x) {
            for &c in ms.iter().skip(y) {
                values.insert([a, b, c], ordered.get(&[a, b, c]).copied().unwrap_or(0.0));
            }
        }
    }
    NumericTriples { values }
}

/// Ricci tensor `Ric(f_a, f_b)` of the left-invariant metric in the
/// orthonormal frame `f_a = e_a / sqrt(x_{m(a)})`. In this frame the module
/// eigenvalue `r_m` is the diagonal entry at any basis index of `m`.
pub fn milnor_ricci(
    basis: &MatrixBasis,
    metric: &MetricParams<f64>,
) -> Result<DMatrix<f64>, OracleError> {
    for (m, v) in metric.iter() {
        if !(v.is_finite() && *v > 0.0) {
            return Err(OracleError::NonPositiveMetric(*m));
        }
    }
    milnor_ricci_from_constants(basis, &basis.structure_constants(), metric)
}

/// Same as [`milnor_ricci`] with precomputed structure constants, for
/// repeated evaluation on one basis.
pub fn milnor_ricci_from_constants(
    basis: &MatrixBasis,
    constants: &[(usize, usize, usize, f64)],
    metric: &MetricParams<f64>,
) -> Result<DMatrix<f64>, OracleError> {
    let d = basis.len();
    let sx: Vec<f64> = (0..d)
        .map(|a| metric.get(basis.module_of(a)).sqrt())
        .collect();
    // frame constants c'_abc = <[f_a, f_b], f_c>
    let mut cf: FixedMap<(usize, usize, usize), f64> = FixedMap::default();
    for &(a, b, c, v) in constants {
        cf.insert((a, b, c), v * sx[c] / (sx[a] * sx[b]));
    }
    let get = |a: usize, b: usize, c: usize| cf.get(&(a, b, c)).copied().unwrap_or(0.0);
    // Christoffel symbols Gamma_abc = <nabla_{f_a} f_b, f_c>
    let mut gamma: FixedMap<(usize, usize, usize), f64> = FixedMap::default();
    for &(a, b, c) in cf.keys() {
        for (i, j, l) in [
            (a, b, c),
            (b, c, a),
            (c, a, b),
            (b, a, c),
            (a, c, b),
            (c, b, a),
        ] {
            gamma
                .entry((i, j, l))
                .or_insert_with(|| 0.5 * (get(i, j, l) - get(j, l, i) + get(l, i, j)));
        }
    }
    gamma.retain(|_, v| *v != 0.0);

    // index Gamma_{x y z} by (x, z) -> [(y, value)]
    let mut by_first_last: FixedMap<(usize, usize), Vec<(usize, f64)>> = FixedMap::default();
    // index Gamma_{x y z} by (y, z) -> [(x, value)]
    let mut by_last_two: FixedMap<(usize, usize), Vec<(usize, f64)>> = FixedMap::default();
    for (&(x, y, z), &v) in &gamma {
        by_first_last.entry((x, z)).or_default().push((y, v));
        by_last_two.entry((y, z)).or_default().push((x, v));
    }
    let trace: Vec<f64> = (0..d)
        .map(|dd| {
            (0..d)
                .map(|a| gamma.get(&(a, dd, a)).copied().unwrap_or(0.0))
                .sum()
        })
        .collect();

    let mut ric = DMatrix::zeros(d, d);
    // sum_d Gamma_bcd * sum_a Gamma_ada
    for (&(b, c, dd), &v) in &gamma {
        ric[(b, c)] += v * trace[dd];
    }
    // - sum_{a,d} Gamma_acd Gamma_bda
    for (&(a, c, dd), &v) in &gamma {
        if let Some(bs) = by_last_two.get(&(dd, a)) {
            for &(b, w) in bs {
                ric[(b, c)] -= v * w;
            }
        }
    }
    // - sum_{a,d} c'_abd Gamma_dca
    for (&(a, b, dd), &v) in &cf {
        if let Some(cs) = by_first_last.get(&(dd, a)) {
            for &(c, w) in cs {
                ric[(b, c)] -= v * w;
            }
        }
    }
    Ok(ric)
}

/// Diagonal Ricci entries grouped by module.
pub fn module_components(
    basis: &MatrixBasis,
    ric: &DMatrix<f64>,
) -> BTreeMap<ModuleIndex, Vec<f64>> {
    let mut out: BTreeMap<ModuleIndex, Vec<f64>> = BTreeMap::new();
    for a in 0..basis.len() {
        out.entry(basis.module_of(a)).or_default().push(ric[(a, a)]);
    }
    out
}

/// Largest `|Ric(f_a, f_b)|` with `f_a`, `f_b` in different modules.
pub fn max_off_block(basis: &MatrixBasis, ric: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            if basis.module_of(a) != basis.module_of(b) {
                worst = worst.max(ric[(a, b)].abs());
            }
        }
    }
    worst
}

/// Largest deviation from a scalar block inside one module: off-diagonal
/// entries within a module, and spread of its diagonal entries.
pub fn max_within_module_defect(basis: &MatrixBasis, ric: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            if a != b && basis.module_of(a) == basis.module_of(b) {
                worst = worst.max(ric[(a, b)].abs());
            }
        }
    }
    for vals in module_components(basis, ric).values() {
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max(hi - lo);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_shape() {
        let part: FlagPartition = "3,3".parse().unwrap();
        let b = build_basis(&part).unwrap();
        assert_eq!(b.len(), 15);
        let diag = b.modules().iter().filter(|m| m.is_diag()).count();
        assert_eq!(diag, 6);
        assert!(b.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn normalization_constant() {
        let part: FlagPartition = "3,3,3".parse().unwrap();
        let b = build_basis(&part).unwrap();
        let e = b.element(0);
        let c = 1.0 / e[(0, 1)];
        assert!((c - 14f64.sqrt()).abs() < 1e-12);
        assert!((-killing(e, e) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn off_diagonal_block_pattern() {
        let part: FlagPartition = "4,3,3".parse().unwrap();
        let b = build_basis(&part).unwrap();
        for a in 0..b.len() {
            if b.module_of(a) != ModuleIndex::OffDiag(1, 2) {
                continue;
            }
            let e = b.element(a);
            for r in 0..10 {
                for c in 0..10 {
                    let inside = (r < 4 && (4..7).contains(&c)) || (c < 4 && (4..7).contains(&r));
                    if !inside {
                        assert_eq!(e[(r, c)], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn cap_enforced() {
        let part = FlagPartition::new(&[20, 21]).unwrap();
        assert_eq!(
            build_basis(&part).unwrap_err(),
            OracleError::PartitionTooLarge { n: 41, cap: 40 }
        );
    }

    #[test]
    fn bi_invariant_ricci_is_quarter() {
        let part: FlagPartition = "3,3,3".parse().unwrap();
        let b = build_basis(&part).unwrap();
        let m = MetricParams::uniform(&part, 1.0).unwrap();
        let ric = milnor_ricci(&b, &m).unwrap();
        let id = DMatrix::<f64>::identity(b.len(), b.len()) * 0.25;
        assert!((ric - id).amax() < 1e-13);
    }

    #[test]
    fn rejects_non_positive_metric() {
        let part: FlagPartition = "3,3".parse().unwrap();
        let b = build_basis(&part).unwrap();
        let mut m = MetricParams::uniform(&part, 1.0).unwrap();
        m = m.map(|v| -v);
        assert!(matches!(
            milnor_ricci(&b, &m),
            Err(OracleError::NonPositiveMetric(_))
        ));
    }
}
