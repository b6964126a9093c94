//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use torfact::fanfile::read_fan;
use torfact::linalg::rank;
use torfact::{hirzebruch_fan, product_fan, projective_space_fan, Fan, IntMatrix, LatticeVector, RationalVector};

/// Complete fans from the builtin families.
pub fn complete_fixtures() -> Vec<(String, Fan)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("P^{n}"), projective_space_fan(n).unwrap()));
    }
    for dims in [vec![1, 1], vec![2, 1], vec![1, 1, 1], vec![2, 2], vec![3, 1]] {
        out.push((format!("product {dims:?}"), product_fan(&dims).unwrap()));
    }
    for a in 0..=3 {
        out.push((format!("F_{a}"), hirzebruch_fan(a).unwrap()));
    }
    out
}

pub fn incomplete_fixtures() -> Vec<(String, Fan)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/incomplete");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let (fan, _) = read_fan(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (p.file_name().unwrap().to_string_lossy().into_owned(), fan)
        })
        .collect()
}

/// Uniform point of `[-bound, bound]^n` on a fine rational grid.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RationalVector {
    const DEN: i64 = 997;
    RationalVector::new(
        (0..n)
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.gen_range(-bound * DEN..=bound * DEN)),
                    BigInt::from(DEN),
                )
            })
            .collect(),
    )
}

/// Random nonzero primitive vector with entries in `[-bound, bound]`, each
/// coordinate nonzero with probability `density`.
pub fn random_primitive<R: Rng>(rng: &mut R, n: usize, bound: i64, density: f64) -> LatticeVector {
    loop {
        let v: Vec<i64> = (0..n)
            .map(|_| {
                if rng.gen_bool(density) {
                    rng.gen_range(-bound..=bound)
                } else {
                    0
                }
            })
            .collect();
        if let Ok(p) = LatticeVector::from_i64(&v).primitive() {
            return p;
        }
    }
}

/// Distinct random primitive rays.
pub fn random_ray_set<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<LatticeVector> {
    let mut seen = BTreeSet::new();
    let density = rng.gen_range(0.25..=0.9);
    while seen.len() < count {
        seen.insert(random_primitive(rng, n, 2, density));
    }
    let mut v: Vec<LatticeVector> = seen.into_iter().collect();
    // shuffle so the input order carries no structure
    for i in (1..v.len()).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

/// All set partitions of `0..k`, as lists of blocks.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == k {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, k, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, k, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, k, &mut Vec::new(), &mut out);
    out
}

fn span_rank(n: usize, rays: &[LatticeVector]) -> usize {
    if rays.is_empty() {
        return 0;
    }
    rank(&IntMatrix::from_lattice_vectors(n, rays).unwrap())
}

/// Finest partition of `rays` into blocks with independent spans, found by
/// checking every set partition. Blocks are sets of indices into `rays`.
pub fn finest_partition_by_search(n: usize, rays: &[LatticeVector]) -> BTreeSet<BTreeSet<usize>> {
    let total = span_rank(n, rays);
    let valid: Vec<Vec<Vec<usize>>> = set_partitions(rays.len())
        .into_iter()
        .filter(|p| {
            p.iter()
                .map(|b| {
                    let sub: Vec<LatticeVector> = b.iter().map(|&i| rays[i].clone()).collect();
                    span_rank(n, &sub)
                })
                .sum::<usize>()
                == total
        })
        .collect();
    let refines = |p: &Vec<Vec<usize>>, q: &Vec<Vec<usize>>| {
        p.iter()
            .all(|b| q.iter().any(|c| b.iter().all(|x| c.contains(x))))
    };
    let finest: Vec<&Vec<Vec<usize>>> = valid
        .iter()
        .filter(|p| valid.iter().all(|q| refines(p, q)))
        .collect();
    assert_eq!(finest.len(), 1, "a unique finest partition exists");
    finest[0]
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect()
}

/// Blocks given as ray vectors, translated to index sets into `rays`.
pub fn as_index_blocks(rays: &[LatticeVector], blocks: &[Vec<LatticeVector>]) -> BTreeSet<BTreeSet<usize>> {
    blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|r| rays.iter().position(|x| x == r).expect("block ray is an input ray"))
                .collect()
        })
        .collect()
}

/// True iff `m` has exactly one entry 1 in each row and column, zeros elsewhere.
pub fn is_permutation_matrix(m: &IntMatrix) -> bool {
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    let n = m.rows();
    if m.cols() != n {
        return false;
    }
    let entries_ok = (0..n).all(|i| (0..n).all(|j| m.get(i, j) == &one || m.get(i, j) == &zero));
    let rows_ok = (0..n).all(|i| (0..n).filter(|&j| m.get(i, j) == &one).count() == 1);
    let cols_ok = (0..n).all(|j| (0..n).filter(|&i| m.get(i, j) == &one).count() == 1);
    entries_ok && rows_ok && cols_ok
}
