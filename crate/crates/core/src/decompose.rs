//! Splitting a fan into a direct sum along its finest ray partition.
//!
//! The finest partition of a ray configuration whose block spans are
//! independent is the set of connected components of its linear matroid. It is
//! found by repeatedly merging an inclusion-minimal dependent collection of
//! blocks until the blocks are independent.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::{Fan, Subspace};
use crate::linalg::{rank, saturation_index, IntMatrix, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayPartition {
    ambient: usize,
    blocks: Vec<Vec<LatticeVector>>,
    spans: Vec<Subspace>,
}

impl RayPartition {
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Blocks of rays, each sorted; blocks ordered by (dimension, smallest ray).
    pub fn blocks(&self) -> &[Vec<LatticeVector>] {
        &self.blocks
    }

    /// Saturated span of each block, in block order.
    pub fn spans(&self) -> &[Subspace] {
        &self.spans
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn span_rank(ambient: usize, rays: &[&LatticeVector]) -> usize {
    if rays.is_empty() {
        return 0;
    }
    let rows: Vec<LatticeVector> = rays.iter().map(|r| (*r).clone()).collect();
    rank(&IntMatrix::from_lattice_vectors(ambient, &rows).expect("ray widths"))
}

fn is_dependent(ambient: usize, blocks: &[Vec<LatticeVector>], dims: &[usize], pick: &[usize]) -> bool {
    let joint: Vec<&LatticeVector> = pick.iter().flat_map(|&b| &blocks[b]).collect();
    let total: usize = pick.iter().map(|&b| dims[b]).sum();
    span_rank(ambient, &joint) < total
}

/// Finest partition of `rays` into blocks whose spans form a direct sum.
pub fn finest_ray_partition(ambient: usize, rays: &[LatticeVector]) -> RayPartition {
    let mut blocks: Vec<Vec<LatticeVector>> = rays.iter().map(|r| vec![r.clone()]).collect();
    loop {
        let dims: Vec<usize> = blocks
            .iter()
            .map(|b| span_rank(ambient, &b.iter().collect::<Vec<_>>()))
            .collect();
        let mut pick: Vec<usize> = (0..blocks.len()).collect();
        if !is_dependent(ambient, &blocks, &dims, &pick) {
            break;
        }
        // greedy removal leaves an inclusion-minimal dependent collection
        let mut i = 0;
        while i < pick.len() {
            let mut without = pick.clone();
            without.remove(i);
            if is_dependent(ambient, &blocks, &dims, &without) {
                pick = without;
            } else {
                i += 1;
            }
        }
        let mut merged = Vec::new();
        for &b in pick.iter().rev() {
            merged.extend(blocks.swap_remove(b));
        }
        blocks.push(merged);
    }

    for b in &mut blocks {
        b.sort();
    }
    let mut keyed: Vec<(usize, Vec<LatticeVector>)> = blocks
        .into_iter()
        .map(|b| (span_rank(ambient, &b.iter().collect::<Vec<_>>()), b))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1[0]).cmp(&(b.0, &b.1[0])));
    let blocks: Vec<Vec<LatticeVector>> = keyed.into_iter().map(|(_, b)| b).collect();
    let spans = blocks
        .iter()
        .map(|b| Subspace::spanned_by(ambient, b))
        .collect();
    RayPartition {
        ambient,
        blocks,
        spans,
    }
}

/// `[Z^n ∩ span(all rays) : ⊕ (Z^n ∩ span(block))]`; 1 iff the split respects
/// the lattice.
pub fn lattice_split_index(partition: &RayPartition) -> BigInt {
    let rows: Vec<LatticeVector> = partition
        .spans
        .iter()
        .flat_map(|s| s.basis().row_vectors())
        .collect();
    if rows.is_empty() {
        return BigInt::from(1);
    }
    let m = IntMatrix::from_lattice_vectors(partition.ambient, &rows).expect("basis widths");
    saturation_index(&m).expect("block spans are independent")
}

/// A complete fan written as a direct sum of factor fans, one per block of the
/// finest ray partition. Each factor lives in the coordinates of its block's
/// saturated span.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub partition: RayPartition,
    pub factors: Vec<Fan>,
    pub lattice_index: BigInt,
}

impl Factorization {
    /// Dimensions of the factors, in block order.
    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Fan::rank).collect()
    }

    /// True when the split exists over the reals but the block lattices do not
    /// sum to the whole lattice.
    pub fn is_real_split_only(&self) -> bool {
        self.lattice_index != BigInt::from(1)
    }

    /// Matrix whose rows are the block bases, stacked in block order. It maps
    /// factor coordinates (concatenated) to the original coordinates.
    pub fn basis_matrix(&self) -> IntMatrix {
        let n = self.partition.ambient;
        let rows: Vec<LatticeVector> = self
            .partition
            .spans
            .iter()
            .flat_map(|s| s.basis().row_vectors())
            .collect();
        IntMatrix::from_lattice_vectors(n, &rows).expect("basis widths")
    }

    /// Direct sum of the factors, mapped back through the block bases.
    pub fn reconstruct(&self) -> Fan {
        let n = self.partition.ambient;
        let sum = self
            .factors
            .iter()
            .fold(Fan::zero(0), |acc, f| acc.direct_sum(f));
        if n == 0 {
            return sum;
        }
        sum.transform(&self.basis_matrix())
            .expect("block bases of a complete fan are a basis")
    }
}

/// Factors a complete fan along the finest partition of its skeleton.
pub fn factorize(fan: &Fan) -> Result<Factorization> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let partition = finest_ray_partition(fan.rank(), fan.skeleton());
    let factors = partition
        .spans
        .iter()
        .map(|s| fan.restrict(s))
        .collect::<Result<Vec<_>>>()?;
    let lattice_index = lattice_split_index(&partition);
    Ok(Factorization {
        partition,
        factors,
        lattice_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{hirzebruch_fan, product_fan, projective_space_fan};

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn rays(vs: &[&[i64]]) -> Vec<LatticeVector> {
        vs.iter().map(|v| lv(v)).collect()
    }

    #[test]
    fn partition_examples() {
        let p = finest_ray_partition(2, &rays(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert_eq!(
            p.blocks(),
            &[rays(&[&[-1, 0], &[1, 0]]), rays(&[&[0, -1], &[0, 1]])]
        );
        assert_eq!(lattice_split_index(&p), BigInt::from(1));

        let p = finest_ray_partition(2, &rays(&[&[1, 0], &[0, 1], &[-1, -1]]));
        assert_eq!(p.len(), 1);
        assert_eq!(lattice_split_index(&p), BigInt::from(1));

        // pairwise independent, jointly dependent
        let p = finest_ray_partition(2, &rays(&[&[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn diagonal_split_has_index_two() {
        let p = finest_ray_partition(2, &rays(&[&[1, 1], &[1, -1]]));
        assert_eq!(p.len(), 2);
        assert_eq!(lattice_split_index(&p), BigInt::from(2));
    }

    #[test]
    fn independent_rays_are_singletons() {
        let p = finest_ray_partition(3, &rays(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]));
        assert_eq!(p.len(), 3);
        assert!(finest_ray_partition(3, &[]).is_empty());
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&product_fan(&[1, 2]).unwrap()).unwrap();
        assert_eq!(
            f.factors,
            vec![projective_space_fan(1).unwrap(), projective_space_fan(2).unwrap()]
        );
        assert_eq!(f.lattice_index, BigInt::from(1));

        let p3 = projective_space_fan(3).unwrap();
        let f = factorize(&p3).unwrap();
        assert_eq!(f.factors, vec![p3.clone()]);
        assert_eq!(f.reconstruct(), p3);

        let h = hirzebruch_fan(1).unwrap();
        let f = factorize(&h).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.reconstruct(), h);

        let quadrant = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert_eq!(factorize(&quadrant).unwrap_err(), Error::NotComplete);
    }

    #[test]
    fn real_split_with_lattice_index() {
        // P1 x P1 on the diagonal lines: rays ±(1,1), ±(1,-1)
        let f = Fan::from_i64(
            2,
            &[&[1, 1], &[1, -1], &[-1, -1], &[-1, 1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
        )
        .unwrap();
        let fact = factorize(&f).unwrap();
        assert_eq!(fact.factors.len(), 2);
        assert!(fact.is_real_split_only());
        assert_eq!(fact.lattice_index, BigInt::from(2));
        assert_eq!(fact.reconstruct(), f);
    }

    #[test]
    fn factors_are_complete_and_reconstruct() {
        for dims in [vec![1], vec![1, 1], vec![2, 1, 1], vec![3, 2]] {
            let fan = product_fan(&dims).unwrap();
            let fact = factorize(&fan).unwrap();
            assert_eq!(fact.factors.len(), dims.len());
            assert!(fact.factors.iter().all(Fan::is_complete));
            assert_eq!(fact.reconstruct(), fan);
        }
    }
}
