//! Pointed rational polyhedral cones.
//!
//! A [`Cone`] keeps both descriptions: its extreme rays, and its facet normals
//! together with equations cutting out its linear span. Faces are identified
//! with the subsets of extreme rays they contain.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, rank, DualVector, IntMatrix, LatticeVector, RationalVector};

#[derive(Clone, Debug)]
pub struct Cone {
    ambient: usize,
    rays: Vec<LatticeVector>,
    /// Primitive normals lying in the span of the rays, one per facet.
    facets: Vec<DualVector>,
    /// Basis of the orthogonal complement of the span.
    span_equations: Vec<DualVector>,
}

impl Cone {
    /// The cone `{0}` in rank `ambient`.
    pub fn zero(ambient: usize) -> Self {
        Cone {
            ambient,
            rays: Vec::new(),
            facets: Vec::new(),
            span_equations: (0..ambient).map(|i| DualVector::unit(ambient, i)).collect(),
        }
    }

    /// Builds the cone generated by `generators`, which may be redundant,
    /// non-primitive or zero. Fails if the cone contains a line.
    pub fn from_rays(ambient: usize, generators: &[LatticeVector]) -> Result<Self> {
        let mut prim: BTreeSet<LatticeVector> = BTreeSet::new();
        for g in generators {
            if g.ambient_rank() != ambient {
                return Err(Error::ShapeMismatch {
                    expected: ambient,
                    found: g.ambient_rank(),
                });
            }
            if !g.is_zero() {
                prim.insert(g.primitive()?);
            }
        }
        if prim.is_empty() {
            return Ok(Cone::zero(ambient));
        }
        let gens: Vec<LatticeVector> = prim.into_iter().collect();
        let span_equations: Vec<DualVector> = integer_kernel(
            &IntMatrix::from_lattice_vectors(ambient, &gens).expect("ray widths checked"),
        )
        .row_vectors()
        .into_iter()
        .map(|v| DualVector::new(v.into_coords()))
        .collect();
        let dim = ambient - span_equations.len();

        // Facet normals are the extreme rays of the dual cone taken inside the span.
        let eqs: Vec<Vec<BigInt>> = span_equations.iter().map(|u| u.coords().to_vec()).collect();
        let ineqs: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        let dual = dd::generators(ambient, &eqs, &ineqs);
        debug_assert!(dual.lineality.is_empty());
        let mut facets: Vec<DualVector> = dual.rays.into_iter().map(DualVector::new).collect();
        facets.sort();
        if facets_rank(ambient, &facets) < dim {
            return Err(Error::NotPointed { cone: None });
        }

        let rays: Vec<LatticeVector> = gens
            .into_iter()
            .filter(|g| {
                let tight: Vec<DualVector> = facets
                    .iter()
                    .filter(|u| g.pair(u).is_zero())
                    .cloned()
                    .collect();
                facets_rank(ambient, &tight) + 1 == dim
            })
            .collect();

        Ok(Cone {
            ambient,
            rays,
            facets,
            span_equations,
        })
    }

    pub fn from_i64_rays(ambient: usize, rays: &[&[i64]]) -> Result<Self> {
        let rays: Vec<LatticeVector> = rays.iter().map(|r| LatticeVector::from_i64(r)).collect();
        Cone::from_rays(ambient, &rays)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Extreme rays, primitive and sorted.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[DualVector] {
        &self.facets
    }

    pub fn span_equations(&self) -> &[DualVector] {
        &self.span_equations
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.span_equations.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        assert_eq!(x.ambient_rank(), self.ambient, "ambient rank mismatch");
        self.span_equations
            .iter()
            .all(|k| x.dot_int(k.coords()).is_zero())
            && self
                .facets
                .iter()
                .all(|u| !x.dot_int(u.coords()).is_negative())
    }

    pub fn contains_lattice(&self, x: &LatticeVector) -> bool {
        self.span_equations.iter().all(|k| x.pair(k).is_zero())
            && self.facets.iter().all(|u| !x.pair(u).is_negative())
    }

    /// Position of `ray` among the extreme rays.
    pub fn ray_index(&self, ray: &LatticeVector) -> Option<usize> {
        self.rays.binary_search(ray).ok()
    }

    /// Rays (as indices) lying on every facet that contains all of `subset`.
    /// `subset` spans a face exactly when this closure equals it.
    pub(crate) fn face_closure(&self, subset: &[usize]) -> Vec<usize> {
        let supporting: Vec<&DualVector> = self
            .facets
            .iter()
            .filter(|u| subset.iter().all(|&i| self.rays[i].pair(u).is_zero()))
            .collect();
        (0..self.rays.len())
            .filter(|&i| supporting.iter().all(|u| self.rays[i].pair(u).is_zero()))
            .collect()
    }

    /// Ray-index sets of all faces, including `{0}` (empty) and the cone itself.
    pub fn face_index_sets(&self) -> Vec<Vec<usize>> {
        let whole: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(whole.clone());
        let mut stack = vec![whole];
        while let Some(face) = stack.pop() {
            for u in &self.facets {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| self.rays[i].pair(u).is_zero())
                    .collect();
                if seen.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All faces of the cone.
    pub fn faces(&self) -> Vec<Cone> {
        self.face_index_sets()
            .into_iter()
            .map(|idx| self.sub_cone(&idx))
            .collect()
    }

    /// The cone on a subset of this cone's extreme rays.
    pub(crate) fn sub_cone(&self, indices: &[usize]) -> Cone {
        let rays: Vec<LatticeVector> = indices.iter().map(|&i| self.rays[i].clone()).collect();
        Cone::from_rays(self.ambient, &rays).expect("sub-cone of a pointed cone is pointed")
    }

    /// True iff `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let Some(idx) = self
            .rays
            .iter()
            .map(|r| other.ray_index(r))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        other.face_closure(&idx).len() == idx.len()
    }

    /// The cone `self ∩ other`, from the concatenated inequality descriptions.
    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient, "ambient rank mismatch");
        let eqs: Vec<Vec<BigInt>> = self
            .span_equations
            .iter()
            .chain(&other.span_equations)
            .map(|u| u.coords().to_vec())
            .collect();
        let ineqs: Vec<Vec<BigInt>> = self
            .facets
            .iter()
            .chain(&other.facets)
            .map(|u| u.coords().to_vec())
            .collect();
        let g = dd::generators(self.ambient, &eqs, &ineqs);
        debug_assert!(g.lineality.is_empty());
        let rays: Vec<LatticeVector> = g.rays.into_iter().map(LatticeVector::new).collect();
        Cone::from_rays(self.ambient, &rays).expect("intersection of pointed cones is pointed")
    }

    pub fn negate(&self) -> Cone {
        let mut rays: Vec<LatticeVector> = self.rays.iter().map(LatticeVector::neg).collect();
        rays.sort();
        let mut facets: Vec<DualVector> = self.facets.iter().map(DualVector::neg).collect();
        facets.sort();
        Cone {
            ambient: self.ambient,
            rays,
            facets,
            span_equations: self.span_equations.clone(),
        }
    }

    /// `self ⊕ other` inside `N ⊕ N'`.
    pub fn direct_sum(&self, other: &Cone) -> Cone {
        let n = self.ambient + other.ambient;
        let off = self.ambient;
        let mut rays: Vec<LatticeVector> = self
            .rays
            .iter()
            .map(|r| r.embed(n, 0))
            .chain(other.rays.iter().map(|r| r.embed(n, off)))
            .collect();
        rays.sort();
        let mut facets: Vec<DualVector> = self
            .facets
            .iter()
            .map(|u| u.embed(n, 0))
            .chain(other.facets.iter().map(|u| u.embed(n, off)))
            .collect();
        facets.sort();
        let span_equations = self
            .span_equations
            .iter()
            .map(|u| u.embed(n, 0))
            .chain(other.span_equations.iter().map(|u| u.embed(n, off)))
            .collect();
        Cone {
            ambient: n,
            rays,
            facets,
            span_equations,
        }
    }
}

fn facets_rank(ambient: usize, vs: &[DualVector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&IntMatrix::from_dual_vectors(ambient, vs).expect("facet widths"))
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, &self.rays).cmp(&(other.ambient, &other.rays))
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{{")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn dv(c: &[i64]) -> DualVector {
        DualVector::from_i64(c)
    }

    fn cone(ambient: usize, rays: &[&[i64]]) -> Cone {
        Cone::from_i64_rays(ambient, rays).unwrap()
    }

    #[test]
    fn from_rays_drops_interior_generators() {
        let c = cone(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(c.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn from_rays_rejects_lines() {
        assert_eq!(
            Cone::from_i64_rays(2, &[&[1, 0], &[-1, 0]]),
            Err(Error::NotPointed { cone: None })
        );
        assert!(Cone::from_i64_rays(2, &[&[1, 0], &[0, 1], &[-1, -1]]).is_err());
    }

    #[test]
    fn facet_normals_of_skew_cone() {
        let c = cone(2, &[&[1, 0], &[-1, 1]]);
        assert_eq!(c.rays(), &[lv(&[-1, 1]), lv(&[1, 0])]);
        assert_eq!(c.facet_normals(), &[dv(&[0, 1]), dv(&[1, 1])]);
    }

    #[test]
    fn non_primitive_generators_are_primitivized() {
        let c = cone(2, &[&[2, 0], &[0, 3], &[4, 4]]);
        assert_eq!(c.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn contains_examples() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(q.contains(&RationalVector::from_i64(&[2, 3])));
        assert!(!q.contains(&RationalVector::from_i64(&[-1, 0])));
        let axis = cone(2, &[&[1, 0]]);
        assert!(!axis.contains(&RationalVector::from_i64(&[1, 1])));
        assert!(axis.contains(&RationalVector::from_i64(&[5, 0])));
    }

    #[test]
    fn face_counts() {
        assert_eq!(cone(2, &[&[1, 0], &[0, 1]]).faces().len(), 4);
        assert_eq!(cone(2, &[&[1, 0]]).faces().len(), 2);
        let square = cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let faces = square.faces();
        assert_eq!(faces.len(), 10);
        let mut by_dim = [0usize; 4];
        for f in &faces {
            by_dim[f.dim()] += 1;
        }
        assert_eq!(by_dim, [1, 4, 4, 1]);
        assert_eq!(Cone::zero(3).faces(), vec![Cone::zero(3)]);
    }

    /// Independent face oracle: a subset of rays spans a face iff some
    /// candidate normal from the dual lattice box supports exactly that subset.
    #[test]
    fn face_enumeration_matches_supporting_hyperplane_search() {
        let square = cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    let u = dv(&[a, b, c]);
                    let vals: Vec<BigInt> = square.rays().iter().map(|r| r.pair(&u)).collect();
                    if vals.iter().any(|v| v.is_negative()) {
                        continue;
                    }
                    found.insert(
                        (0..vals.len()).filter(|&i| vals[i].is_zero()).collect(),
                    );
                }
            }
        }
        let ours: BTreeSet<Vec<usize>> = square.face_index_sets().into_iter().collect();
        assert_eq!(ours, found);
    }

    #[test]
    fn is_face_of_examples() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(Cone::zero(2).is_face_of(&q));
        assert!(cone(2, &[&[1, 0]]).is_face_of(&q));
        assert!(!cone(2, &[&[1, 1]]).is_face_of(&q));
        assert!(q.is_face_of(&q));
        let square = cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert!(!cone(3, &[&[1, 0, 0], &[0, 1, 1]]).is_face_of(&square));
        assert!(cone(3, &[&[1, 0, 0], &[1, 0, 1]]).is_face_of(&square));
    }

    #[test]
    fn intersect_examples() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(q.intersect(&cone(2, &[&[0, 1], &[-1, 0]])), cone(2, &[&[0, 1]]));
        assert_eq!(q.intersect(&cone(2, &[&[-1, 0], &[0, -1]])), Cone::zero(2));
        let a = cone(2, &[&[1, 0], &[1, 2]]);
        let b = cone(2, &[&[2, 1], &[0, 1]]);
        assert_eq!(a.intersect(&b), cone(2, &[&[2, 1], &[1, 2]]));
    }

    /// Oracle for the last intersection example: sample rational points and
    /// compare membership against both inequality descriptions.
    #[test]
    fn intersect_agrees_with_point_sampling() {
        let a = cone(2, &[&[1, 0], &[1, 2]]);
        let b = cone(2, &[&[2, 1], &[0, 1]]);
        let i = a.intersect(&b);
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                let p = RationalVector::from_i64(&[x, y]);
                // first: y >= 0, 2x - y >= 0; second: x >= 0, 2y - x >= 0
                let oracle = y >= 0 && 2 * x - y >= 0 && x >= 0 && 2 * y - x >= 0;
                assert_eq!(i.contains(&p), oracle, "({x}, {y})");
            }
        }
    }

    #[test]
    fn skew_cone_descriptions_agree_on_samples() {
        let c = cone(2, &[&[1, 0], &[-1, 1]]);
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                // x = s - t, y = t with s, t >= 0  <=>  y >= 0 and x + y >= 0
                let oracle = y >= 0 && x + y >= 0;
                assert_eq!(c.contains(&RationalVector::from_i64(&[x, y])), oracle);
            }
        }
    }
}
