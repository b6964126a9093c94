//! Demazure roots of a fan and recognition of products of projective spaces.
//!
//! A Demazure root is a character `α` pairing to `-1` with exactly one ray
//! `ρ_α` of the 1-skeleton and nonnegatively with every other ray. Roots depend
//! only on the skeleton, so everything here reads `Fan::skeleton`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dd;
use crate::decompose::{factorize, Factorization};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{determinant, rank, DualVector, IntMatrix, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DemazureRoot {
    pub alpha: DualVector,
    pub distinguished_ray: LatticeVector,
}

/// The Demazure roots of a skeleton, sorted by character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    rank: usize,
    skeleton: Vec<LatticeVector>,
    roots: Vec<DemazureRoot>,
}

impl RootSet {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn skeleton(&self) -> &[LatticeVector] {
        &self.skeleton
    }

    pub fn roots(&self) -> &[DemazureRoot] {
        &self.roots
    }

    pub fn alphas(&self) -> Vec<DualVector> {
        self.roots.iter().map(|r| r.alpha.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, alpha: &DualVector) -> bool {
        self.roots
            .binary_search_by(|r| r.alpha.cmp(alpha))
            .is_ok()
    }
}

/// Lattice points of `{α : ⟨ρ,α⟩ = -1, ⟨ρ',α⟩ ≥ 0 for ρ' ≠ ρ}` for each skeleton ray.
///
/// Each polyhedron is homogenized and passed through double description; the
/// vertices bound a box that is scanned for integer points.
pub fn demazure_roots(fan: &Fan) -> Result<RootSet> {
    roots_of_skeleton(fan.rank(), fan.skeleton())
}

pub fn roots_of_skeleton(rank: usize, skeleton: &[LatticeVector]) -> Result<RootSet> {
    let mut roots = Vec::new();
    for (i, rho) in skeleton.iter().enumerate() {
        let others: Vec<&LatticeVector> = skeleton
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r)
            .collect();
        let Some((lo, hi)) = root_box(rank, rho, &others)? else {
            continue;
        };
        for alpha in box_points(&lo, &hi) {
            if rho.pair(&alpha) == -BigInt::one()
                && others.iter().all(|r| !r.pair(&alpha).is_negative())
            {
                roots.push(DemazureRoot {
                    alpha,
                    distinguished_ray: rho.clone(),
                });
            }
        }
    }
    roots.sort();
    Ok(RootSet {
        rank,
        skeleton: skeleton.to_vec(),
        roots,
    })
}

/// Vertices of the root polyhedron of `rho`, or `None` if it is empty.
fn root_vertices(
    rank: usize,
    rho: &LatticeVector,
    others: &[&LatticeVector],
) -> Result<Option<Vec<Vec<BigRational>>>> {
    // (α, t) with ⟨ρ,α⟩ + t = 0, ⟨ρ',α⟩ ≥ 0, t ≥ 0
    let mut eq: Vec<BigInt> = rho.coords().to_vec();
    eq.push(BigInt::one());
    let mut ineqs: Vec<Vec<BigInt>> = others
        .iter()
        .map(|r| {
            let mut v = r.coords().to_vec();
            v.push(BigInt::zero());
            v
        })
        .collect();
    let mut t = vec![BigInt::zero(); rank];
    t.push(BigInt::one());
    ineqs.push(t);

    let g = dd::generators(rank + 1, &[eq], &ineqs);
    let (bounded, recession): (Vec<_>, Vec<_>) =
        g.rays.into_iter().partition(|r| r[rank].is_positive());
    if bounded.is_empty() {
        return Ok(None);
    }
    if !recession.is_empty() || !g.lineality.is_empty() {
        return Err(Error::UnboundedRootPolyhedron { ray: rho.clone() });
    }
    Ok(Some(
        bounded
            .into_iter()
            .map(|v| {
                v[..rank]
                    .iter()
                    .map(|c| BigRational::new(c.clone(), v[rank].clone()))
                    .collect()
            })
            .collect(),
    ))
}

/// Integer bounding box of the root polyhedron of `rho`, or `None` if it is empty.
fn root_box(
    rank: usize,
    rho: &LatticeVector,
    others: &[&LatticeVector],
) -> Result<Option<(Vec<BigInt>, Vec<BigInt>)>> {
    let Some(vertices) = root_vertices(rank, rho, others)? else {
        return Ok(None);
    };
    let bound = |pick: fn(&BigRational, &BigRational) -> bool| -> Vec<BigRational> {
        (0..rank)
            .map(|k| {
                vertices
                    .iter()
                    .map(|v| &v[k])
                    .fold(None::<&BigRational>, |best, q| match best {
                        Some(b) if !pick(q, b) => Some(b),
                        _ => Some(q),
                    })
                    .expect("nonempty vertex list")
                    .clone()
            })
            .collect()
    };
    let lo = bound(|q, b| q < b);
    let hi = bound(|q, b| q > b);
    Ok(Some((
        lo.iter().map(|q| q.ceil().to_integer()).collect(),
        hi.iter().map(|q| q.floor().to_integer()).collect(),
    )))
}

fn box_points(lo: &[BigInt], hi: &[BigInt]) -> Vec<DualVector> {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(DualVector::new(cur.clone()));
        let mut k = 0;
        loop {
            if k == cur.len() {
                return out;
            }
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k].clone();
            k += 1;
        }
    }
}

/// Roots whose distinguished ray is `rho`.
pub fn roots_of_ray(rs: &RootSet, rho: &LatticeVector) -> Result<Vec<DualVector>> {
    if !rs.skeleton.contains(rho) {
        return Err(Error::UnknownRay { ray: rho.clone() });
    }
    Ok(rs
        .roots
        .iter()
        .filter(|r| &r.distinguished_ray == rho)
        .map(|r| r.alpha.clone())
        .collect())
}

/// All roots `α` of `rs` with `⟨ρ, α⟩ = -1`, for an arbitrary lattice vector `ρ`.
/// For a skeleton ray this agrees with [`roots_of_ray`].
pub fn roots_pairing_to_minus_one(rs: &RootSet, rho: &LatticeVector) -> Vec<DualVector> {
    rs.roots
        .iter()
        .filter(|r| rho.pair(&r.alpha) == -BigInt::one())
        .map(|r| r.alpha.clone())
        .collect()
}

/// The roots of the standard projective-space fan of rank `n`:
/// `±e_i*` and `e_i* - e_j*` for `i ≠ j`, sorted.
pub fn projective_roots(n: usize) -> Vec<DualVector> {
    let mut out = Vec::with_capacity(n * n + n);
    for i in 0..n {
        out.push(DualVector::unit(n, i));
        out.push(DualVector::unit(n, i).neg());
        for j in 0..n {
            if j != i {
                out.push(DualVector::unit(n, i).add(&DualVector::unit(n, j).neg()));
            }
        }
    }
    out.sort();
    out
}

/// Rays that could be the distinguished ray of `alpha` among the roots of
/// projective `n`-space: `⟨p, α⟩ = -1` and `⟨p, α'⟩ ≥ -1` for every other root.
///
/// For `α = ε e_i*` these are `Σ a_k e_k` with `a_i = -ε`, `a_k ∈ {0, -ε}`; for
/// `α = e_i* - e_j*` they have `a_i ∈ {0, -1}`, `a_j = 1 + a_i` and
/// `a_k ∈ {0, a_i, a_j}`.
pub fn candidate_rays(alpha: &DualVector, n: usize) -> Result<Vec<LatticeVector>> {
    let not_root = || Error::NotARoot {
        alpha: alpha.clone(),
        rank: n,
    };
    if alpha.ambient_rank() != n {
        return Err(not_root());
    }
    let support = alpha.support();
    let c = |i: usize| alpha.coords()[i].clone();
    // (forced coordinates, value allowed on the free coordinates)
    let mut cases: Vec<(Vec<(usize, i64)>, i64)> = Vec::new();
    match *support.as_slice() {
        [i] if c(i).abs().is_one() => {
            let eps: i64 = if c(i).is_positive() { 1 } else { -1 };
            cases.push((vec![(i, -eps)], -eps));
        }
        [a, b] if (c(a) + c(b)).is_zero() && c(a).abs().is_one() => {
            let (i, j) = if c(a).is_one() { (a, b) } else { (b, a) };
            cases.push((vec![(i, -1), (j, 0)], -1));
            cases.push((vec![(i, 0), (j, 1)], 1));
        }
        _ => return Err(not_root()),
    }
    let mut out = BTreeSet::new();
    for (forced, free_value) in cases {
        let free: Vec<usize> = (0..n).filter(|k| forced.iter().all(|(f, _)| f != k)).collect();
        for mask in 0u64..(1 << free.len()) {
            let mut v = vec![0i64; n];
            for &(k, x) in &forced {
                v[k] = x;
            }
            for (bit, &k) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    v[k] = free_value;
                }
            }
            out.insert(LatticeVector::from_i64(&v));
        }
    }
    Ok(out.into_iter().collect())
}

/// Roots whose negative is not a root.
pub fn asymmetric_roots(rs: &RootSet) -> Vec<DualVector> {
    rs.roots
        .iter()
        .filter(|r| !rs.contains(&r.alpha.neg()))
        .map(|r| r.alpha.clone())
        .collect()
}

pub fn root_span_rank(rs: &RootSet) -> usize {
    if rs.roots.is_empty() {
        return 0;
    }
    rank(&IntMatrix::from_dual_vectors(rs.rank, &rs.alphas()).expect("root widths"))
}

/// Symmetric under negation and spanning a full-rank sublattice.
pub fn is_semisimple(rs: &RootSet) -> bool {
    asymmetric_roots(rs).is_empty() && root_span_rank(rs) == rs.rank
}

/// Whether `rays` is the skeleton of projective `m`-space in some lattice basis:
/// `m + 1` rays summing to zero, some `m` of which form a lattice basis.
pub fn is_projective_skeleton(rays: &[LatticeVector], m: usize) -> bool {
    if rays.len() != m + 1 || rays.iter().any(|r| r.ambient_rank() != m) {
        return false;
    }
    if !rays
        .iter()
        .fold(LatticeVector::zero(m), |acc, r| acc.add(r))
        .is_zero()
    {
        return false;
    }
    (0..rays.len()).any(|skip| {
        let basis: Vec<LatticeVector> = rays
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, r)| r.clone())
            .collect();
        let m = IntMatrix::from_lattice_vectors(m, &basis).expect("ray widths");
        determinant(&m).is_ok_and(|d| d.abs().is_one())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Dimensions of the projective-space factors, non-increasing.
    ProductOfProjectiveSpaces(Vec<usize>),
    NotSemisimple,
    SemisimpleButUnrecognized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub root_count: usize,
    pub asymmetric_roots: Vec<DualVector>,
    pub root_span_rank: usize,
    /// Ray blocks of the finest partition; empty when not computed.
    pub blocks: Vec<Vec<LatticeVector>>,
    pub lattice_index: Option<BigInt>,
    /// `Σ n_i (n_i + 1)` for the recognized dimensions.
    pub expected_root_count: Option<usize>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Decides whether a complete fan with semisimple root set is a product of
/// projective-space fans, reporting the factor dimensions.
pub fn classify(fan: &Fan) -> Result<Classification> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let rs = demazure_roots(fan)?;
    let mut evidence = Evidence {
        root_count: rs.len(),
        asymmetric_roots: asymmetric_roots(&rs),
        root_span_rank: root_span_rank(&rs),
        blocks: Vec::new(),
        lattice_index: None,
        expected_root_count: None,
        failures: Vec::new(),
    };
    if !is_semisimple(&rs) {
        if evidence.root_span_rank < rs.rank() {
            evidence.failures.push(format!(
                "roots span rank {} < {}",
                evidence.root_span_rank,
                rs.rank()
            ));
        }
        return Ok(Classification {
            verdict: Verdict::NotSemisimple,
            evidence,
        });
    }

    let Factorization {
        partition,
        factors,
        lattice_index,
    } = factorize(fan)?;
    evidence.blocks = partition.blocks().to_vec();
    evidence.lattice_index = Some(lattice_index.clone());
    if !lattice_index.is_one() {
        evidence
            .failures
            .push(format!("block lattices have index {lattice_index}"));
    }
    for (i, f) in factors.iter().enumerate() {
        if !is_projective_skeleton(f.skeleton(), f.rank()) {
            evidence
                .failures
                .push(format!("block {i} is not a projective-space skeleton"));
        }
    }
    let mut dims: Vec<usize> = factors.iter().map(Fan::rank).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    let expected: usize = dims.iter().map(|d| d * (d + 1)).sum();
    evidence.expected_root_count = Some(expected);
    if expected != rs.len() {
        evidence.failures.push(format!(
            "expected {expected} roots for dimensions {dims:?}, found {}",
            rs.len()
        ));
    }
    let verdict = if evidence.failures.is_empty() {
        Verdict::ProductOfProjectiveSpaces(dims)
    } else {
        Verdict::SemisimpleButUnrecognized
    };
    Ok(Classification { verdict, evidence })
}
