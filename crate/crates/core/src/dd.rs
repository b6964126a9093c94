//! Double description: generators of `{x : E·x = 0, A·x ≥ 0}`.
//!
//! Inequalities are added one at a time (Fourier–Motzkin style). Lineality
//! directions are kept as a separate basis; extreme rays carry the set of
//! processed inequalities they make tight, and two rays are combined only when
//! the combinatorial adjacency test passes, so the ray list stays irredundant
//! after every step.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, integer_kernel, make_primitive, IntMatrix};

#[derive(Clone, Debug, Default)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn with_capacity(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn insert_all_below(&mut self, k: usize) {
        for i in 0..k {
            self.insert(i);
        }
    }

    fn intersection(&self, other: &Self) -> Self {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    tight: BitSet,
}

/// Generators of a polyhedral cone: a lineality basis and irredundant extreme
/// rays modulo that lineality. All vectors are primitive integer vectors.
#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

pub(crate) fn generators(
    dim: usize,
    equalities: &[Vec<BigInt>],
    inequalities: &[Vec<BigInt>],
) -> Generators {
    let eq = IntMatrix::from_rows(dim, equalities).expect("equality width");
    let mut lineality: Vec<Vec<BigInt>> = integer_kernel(&eq)
        .row_vectors()
        .into_iter()
        .map(|v| v.into_coords())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let cap = inequalities.len();

    for (k, a) in inequalities.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        if let Some(p) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.swap_remove(p);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|c| *c = -c.clone());
                al = -al;
            }
            for lj in lineality.iter_mut() {
                let s = dot(a, lj);
                if !s.is_zero() {
                    axpby(lj, &al, &l, &s);
                }
            }
            for r in rays.iter_mut() {
                let s = dot(a, &r.v);
                if !s.is_zero() {
                    axpby(&mut r.v, &al, &l, &s);
                }
                r.tight.insert(k);
            }
            // l is orthogonal to every earlier inequality
            let mut tight = BitSet::with_capacity(cap);
            tight.insert_all_below(k);
            rays.push(Ray { v: l, tight });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (i, s) in values.iter().enumerate() {
            if s.is_positive() {
                pos.push(i);
                next.push(rays[i].clone());
            } else if s.is_negative() {
                neg.push(i);
            } else {
                let mut r = rays[i].clone();
                r.tight.insert(k);
                next.push(r);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.intersection(&rays[q].tight);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !r.tight.is_superset(&common));
                if !adjacent {
                    continue;
                }
                // values[p] > 0 > values[q]: combination with positive weights
                let mut v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &values[p] * x - &values[q] * y)
                    .collect();
                make_primitive(&mut v);
                let mut tight = common;
                tight.insert(k);
                next.push(Ray { v, tight });
            }
        }
        rays = next;
    }

    Generators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

/// `x <- a*x - b*y`, then made primitive.
fn axpby(x: &mut [BigInt], a: &BigInt, y: &[BigInt], b: &BigInt) {
    for (xi, yi) in x.iter_mut().zip(y) {
        *xi = a * &*xi - b * yi;
    }
    make_primitive(x);
}
