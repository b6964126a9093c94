//! Fans: validated collections of pointed cones.
//!
//! A fan is stored by its maximal cones, each an index set into the sorted
//! list of primitive ray generators. The face closure is derived, never
//! supplied. Constructors canonicalize, so structural equality is fan equality.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{
    determinant, integer_kernel, rank, saturation, saturation_index, solve_rational, IntMatrix,
    LatticeVector, RationalVector,
};

#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Vec<usize>>,
    maximal: Vec<Cone>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.cones == other.cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Validates and builds a fan from declared rays and maximal cones given as
    /// lists of 0-based ray indices.
    ///
    /// Checks pointedness of each cone, that every declared ray is an extreme
    /// ray of each cone listing it (and of at least one cone), and that every
    /// pair of cones meets in a common face. Declared cones that turn out to be
    /// faces of other declared cones are dropped.
    pub fn new(rank: usize, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let mut prim = Vec::with_capacity(rays.len());
        let mut seen: BTreeMap<LatticeVector, usize> = BTreeMap::new();
        for (i, r) in rays.iter().enumerate() {
            if r.ambient_rank() != rank {
                return Err(Error::ShapeMismatch {
                    expected: rank,
                    found: r.ambient_rank(),
                });
            }
            let p = r.primitive().map_err(|_| Error::ZeroRay { index: i })?;
            if let Some(&first) = seen.get(&p) {
                return Err(Error::DuplicateRay { first, second: i });
            }
            seen.insert(p.clone(), i);
            prim.push(p);
        }

        let mut index_sets: Vec<Vec<usize>> = Vec::with_capacity(cones.len());
        let mut built: Vec<Cone> = Vec::with_capacity(cones.len());
        let mut used = vec![false; prim.len()];
        for (ci, idx) in cones.iter().enumerate() {
            let idx: Vec<usize> = idx.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
            if let Some(&bad) = idx.iter().find(|&&i| i >= prim.len()) {
                return Err(Error::RayIndexOutOfRange {
                    cone: ci,
                    index: bad,
                    count: prim.len(),
                });
            }
            let gens: Vec<LatticeVector> = idx.iter().map(|&i| prim[i].clone()).collect();
            let cone = Cone::from_rays(rank, &gens).map_err(|e| match e {
                Error::NotPointed { .. } => Error::NotPointed { cone: Some(ci) },
                other => other,
            })?;
            if let Some(&r) = idx.iter().find(|&&i| cone.ray_index(&prim[i]).is_none()) {
                return Err(Error::RedundantRay { ray: r });
            }
            for &i in &idx {
                used[i] = true;
            }
            index_sets.push(idx);
            built.push(cone);
        }
        if let Some(r) = used.iter().position(|u| !u) {
            return Err(Error::RedundantRay { ray: r });
        }

        let mut keep = vec![true; built.len()];
        for i in 0..built.len() {
            for j in i + 1..built.len() {
                if index_sets[i] == index_sets[j] {
                    keep[j] = false;
                    continue;
                }
                let meet = if is_subset(&index_sets[i], &index_sets[j]) {
                    built[i].clone()
                } else if is_subset(&index_sets[j], &index_sets[i]) {
                    built[j].clone()
                } else {
                    built[i].intersect(&built[j])
                };
                if !(meet.is_face_of(&built[i]) && meet.is_face_of(&built[j])) {
                    return Err(Error::IntersectionNotFace {
                        first: i,
                        second: j,
                        intersection: meet.to_string(),
                    });
                }
                if meet == built[i] {
                    keep[i] = false;
                } else if meet == built[j] {
                    keep[j] = false;
                }
            }
        }
        let maximal: Vec<Vec<usize>> = index_sets
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(s, _)| s)
            .collect();
        Ok(Fan::assemble(rank, prim, maximal))
    }

    /// Convenience constructor from small integer data.
    pub fn from_i64(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            rank,
            rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// The fan consisting of `{0}` only.
    pub fn zero(rank: usize) -> Fan {
        Fan {
            rank,
            rays: Vec::new(),
            cones: vec![Vec::new()],
            maximal: vec![Cone::zero(rank)],
        }
    }

    /// Canonical form from data already known to form a fan: sorts rays,
    /// remaps and sorts cones, drops cones contained in others.
    fn assemble(rank: usize, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Fan {
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        let mut new_index = vec![0; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted_rays: Vec<LatticeVector> = order.iter().map(|&i| rays[i].clone()).collect();
        let remapped: BTreeSet<Vec<usize>> = cones
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| new_index[i]).collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let all: Vec<Vec<usize>> = remapped.into_iter().collect();
        let mut cones: Vec<Vec<usize>> = all
            .iter()
            .filter(|c| !all.iter().any(|d| d.len() > c.len() && is_subset(c, d)))
            .cloned()
            .collect();
        if cones.is_empty() {
            cones.push(Vec::new());
        }
        let maximal = cones
            .iter()
            .map(|c| {
                let gens: Vec<LatticeVector> = c.iter().map(|&i| sorted_rays[i].clone()).collect();
                Cone::from_rays(rank, &gens).expect("cones of a fan are pointed")
            })
            .collect();
        Fan {
            rank,
            rays: sorted_rays,
            cones,
            maximal,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The 1-skeleton: primitive ray generators, sorted.
    pub fn skeleton(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Maximal cones as sorted index sets into [`Fan::skeleton`].
    pub fn maximal_cone_indices(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    /// Index sets of every cone of the fan (the face closure of the maximal cones).
    pub fn all_cone_indices(&self) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (idx, cone) in self.cones.iter().zip(&self.maximal) {
            for face in cone.face_index_sets() {
                // cone rays and fan rays are both sorted, so positions line up
                let mut global: Vec<usize> = face.into_iter().map(|i| idx[i]).collect();
                global.sort_unstable();
                out.insert(global);
            }
        }
        out.into_iter().collect()
    }

    pub fn all_cones(&self) -> Vec<Cone> {
        self.all_cone_indices()
            .into_iter()
            .map(|idx| {
                let gens: Vec<LatticeVector> = idx.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_rays(self.rank, &gens).expect("cones of a fan are pointed")
            })
            .collect()
    }

    /// Whether the cones cover the whole space.
    ///
    /// Rank 0 is complete. Otherwise every maximal cone must be full-dimensional,
    /// every wall (codimension-one face) of a maximal cone must lie in exactly
    /// two maximal cones, and the wall-adjacency graph must be connected.
    pub fn is_complete(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        if self.maximal.iter().any(|c| c.dim() < self.rank) {
            return false;
        }
        let mut walls: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (idx, cone) in self.cones.iter().zip(&self.maximal) {
            for u in cone.facet_normals() {
                let wall: Vec<usize> = idx
                    .iter()
                    .copied()
                    .filter(|&i| self.rays[i].pair(u).is_zero())
                    .collect();
                walls.insert(wall);
            }
        }
        let mut parent: Vec<usize> = (0..self.cones.len()).collect();
        for wall in &walls {
            let owners: Vec<usize> = (0..self.cones.len())
                .filter(|&c| is_subset(wall, &self.cones[c]))
                .collect();
            if owners.len() != 2 {
                return false;
            }
            let (a, b) = (find(&mut parent, owners[0]), find(&mut parent, owners[1]));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.cones.len()).all(|c| find(&mut parent, c) == root)
    }

    /// Index of a maximal cone containing `x`, if any.
    pub fn locate(&self, x: &RationalVector) -> Option<usize> {
        self.maximal.iter().position(|c| c.contains(x))
    }

    /// Restriction `{σ ∩ V}` to a saturated subspace `V`, rewritten in the
    /// basis of `V`.
    ///
    /// Requires the skeleton to split as rays inside `V` plus rays whose span
    /// meets `V` only at the origin; then `σ ∩ V` is the cone on the rays of
    /// `σ` that lie in `V`.
    pub fn restrict(&self, subspace: &Subspace) -> Result<Fan> {
        assert_eq!(subspace.ambient_rank(), self.rank, "ambient rank mismatch");
        let inside: Vec<bool> = self.rays.iter().map(|r| subspace.contains(r)).collect();
        let mut complement: Vec<LatticeVector> = Vec::new();
        for (r, _) in self.rays.iter().zip(&inside).filter(|(_, &i)| !i) {
            complement.push(r.clone());
            let mut rows = subspace.basis().row_vectors();
            rows.extend(complement.iter().cloned());
            let joint = rank(&IntMatrix::from_lattice_vectors(self.rank, &rows).expect("widths"));
            let alone =
                rank(&IntMatrix::from_lattice_vectors(self.rank, &complement).expect("widths"));
            if joint != subspace.dim() + alone {
                return Err(Error::HypothesisViolated { ray: r.clone() });
            }
        }

        let mut new_index = vec![usize::MAX; self.rays.len()];
        let mut rays = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            if inside[i] {
                new_index[i] = rays.len();
                rays.push(
                    subspace
                        .coordinates(r)
                        .expect("ray lies in the saturated subspace"),
                );
            }
        }
        let cones = self
            .cones
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|&&i| inside[i])
                    .map(|&i| new_index[i])
                    .collect()
            })
            .collect();
        Ok(Fan::assemble(subspace.dim(), rays, cones))
    }

    /// `self ⊕ other` in `N ⊕ N'`: all sums of a cone of each.
    pub fn direct_sum(&self, other: &Fan) -> Fan {
        let n = self.rank + other.rank;
        let off = self.rays.len();
        let rays: Vec<LatticeVector> = self
            .rays
            .iter()
            .map(|r| r.embed(n, 0))
            .chain(other.rays.iter().map(|r| r.embed(n, self.rank)))
            .collect();
        let mut cones = Vec::with_capacity(self.cones.len() * other.cones.len());
        let mut maximal = Vec::with_capacity(cones.capacity());
        for (a, ca) in self.cones.iter().zip(&self.maximal) {
            for (b, cb) in other.cones.iter().zip(&other.maximal) {
                cones.push(a.iter().copied().chain(b.iter().map(|i| i + off)).collect::<Vec<_>>());
                maximal.push(ca.direct_sum(cb));
            }
        }
        Fan::reindex(n, rays, cones, maximal)
    }

    /// Sorts rays and cones while keeping prebuilt maximal cones.
    fn reindex(
        rank: usize,
        rays: Vec<LatticeVector>,
        cones: Vec<Vec<usize>>,
        maximal: Vec<Cone>,
    ) -> Fan {
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        let mut new_index = vec![0; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut pairs: Vec<(Vec<usize>, Cone)> = cones
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| new_index[i]).collect();
                c.sort_unstable();
                c
            })
            .zip(maximal)
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (cones, maximal) = pairs.into_iter().unzip();
        Fan {
            rank,
            rays: order.iter().map(|&i| rays[i].clone()).collect(),
            cones,
            maximal,
        }
    }

    /// Image under the invertible linear map `x ↦ x·m` (row-vector convention),
    /// with ray generators made primitive again.
    pub fn transform(&self, m: &IntMatrix) -> Result<Fan> {
        if m.rows() != self.rank || m.cols() != self.rank {
            return Err(Error::ShapeMismatch {
                expected: self.rank,
                found: if m.rows() != self.rank { m.rows() } else { m.cols() },
            });
        }
        if determinant(m)?.is_zero() {
            return Err(Error::InvalidParameter(
                "transform matrix is singular".to_string(),
            ));
        }
        let rays = self
            .rays
            .iter()
            .map(|r| LatticeVector::new(m.left_apply(r.coords())).primitive())
            .collect::<Result<Vec<_>>>()?;
        Ok(Fan::assemble(self.rank, rays, self.cones.clone()))
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A saturated sublattice of `Z^n`, given by a basis (the rows of `basis`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: IntMatrix,
    equations: IntMatrix,
}

impl Subspace {
    pub fn new(basis: IntMatrix) -> Result<Subspace> {
        let index = saturation_index(&basis)?;
        if !index.is_one() {
            return Err(Error::NotSaturated {
                index: index.to_string(),
            });
        }
        let equations = integer_kernel(&basis);
        Ok(Subspace { basis, equations })
    }

    /// `Z^n ∩ span(vectors)`.
    pub fn spanned_by(ambient: usize, vectors: &[LatticeVector]) -> Subspace {
        let m = IntMatrix::from_lattice_vectors(ambient, vectors).expect("vector widths");
        let basis = if vectors.is_empty() {
            IntMatrix::zeros(0, ambient)
        } else {
            saturation(&m)
        };
        let equations = integer_kernel(&basis);
        Subspace { basis, equations }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Subspace {
        let units: Vec<LatticeVector> = axes
            .iter()
            .map(|&i| LatticeVector::unit(ambient, i))
            .collect();
        Subspace::new(IntMatrix::from_lattice_vectors(ambient, &units).expect("widths"))
            .expect("coordinate subspaces are saturated")
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        (0..self.equations.rows())
            .all(|i| crate::linalg::dot(self.equations.row(i), v.coords()).is_zero())
    }

    /// Coordinates of `v` in the basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &LatticeVector) -> Option<LatticeVector> {
        if !self.contains(v) {
            return None;
        }
        let sol = solve_rational(&self.basis.transpose(), &v.to_rational())
            .expect("shapes agree")?;
        let coords = sol
            .particular
            .coords()
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect::<Option<Vec<BigInt>>>()?;
        Some(LatticeVector::new(coords))
    }
}

/// The standard fan of projective `n`-space: rays `e_1, …, e_n` and
/// `e_0 = -(e_1 + … + e_n)`, maximal cones spanned by every `n` of them.
pub fn projective_space_fan(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "projective space dimension must be at least 1".to_string(),
        ));
    }
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    rays.push(LatticeVector::from_i64(&vec![-1; n]));
    let cones = (0..=n)
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect();
    Fan::new(n, rays, cones)
}

/// Direct sum of projective-space fans of the given dimensions, in order.
pub fn product_fan(dims: &[usize]) -> Result<Fan> {
    if dims.is_empty() {
        return Err(Error::InvalidParameter(
            "product needs at least one factor".to_string(),
        ));
    }
    let mut fan = projective_space_fan(dims[0])?;
    for &d in &dims[1..] {
        fan = fan.direct_sum(&projective_space_fan(d)?);
    }
    Ok(fan)
}

/// The Hirzebruch surface fan: rays `(1,0), (0,1), (0,-1), (-1,a)`.
pub fn hirzebruch_fan(a: i64) -> Result<Fan> {
    if a < 0 {
        return Err(Error::InvalidParameter(format!(
            "hirzebruch parameter must be nonnegative, got {a}"
        )));
    }
    Fan::new(
        2,
        vec![
            LatticeVector::from_i64(&[1, 0]),
            LatticeVector::from_i64(&[0, 1]),
            LatticeVector::from_i64(&[0, -1]),
            LatticeVector::from_i64(&[-1, a]),
        ],
        vec![vec![0, 1], vec![1, 3], vec![3, 2], vec![2, 0]],
    )
}
