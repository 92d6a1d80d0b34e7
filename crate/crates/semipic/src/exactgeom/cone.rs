//! Rational polyhedral cones with dual representations.
//!
//! A `Cone` always carries both representations in canonical form:
//! equations and facet inequalities are primitive integer normals in sorted
//! order, the lineality space is stored as its echelon-canonical basis, and
//! extreme rays are projected orthogonally to the lineality space and scaled
//! primitive. Equality of cones is therefore plain structural equality.
//!
//! Conversion between representations is done by the double description
//! method: extreme rays of an H-representation are built by incremental
//! halfspace insertion, and facets of a V-representation come from the same
//! algorithm applied to the polar cone.

use super::num::{canonical_span_basis, primitive_integer, RatMatrix, RatVec, Rational};
use crate::{Error, Result};
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Cone {
    pub ambient_dim: usize,
    /// Canonical V-representation: lineality basis, its negatives, then the
    /// extreme rays of the pointed quotient.
    pub generators: Vec<RatVec>,
    /// Echelon-canonical basis of the lineality space.
    pub lineality: Vec<RatVec>,
    /// Extreme rays modulo lineality, projected into the orthogonal
    /// complement of the lineality space, primitive, sorted.
    pub rays: Vec<RatVec>,
    /// Equation normals: the cone satisfies `e . x = 0` for each.
    pub equations: Vec<RatVec>,
    /// Facet normals: the cone satisfies `h . x <= 0` for each. Irredundant.
    pub inequalities: Vec<RatVec>,
    pub dim: usize,
}

/// Orthogonal projection of `v` onto the orthogonal complement of
/// `span(basis)`, computed by exact Gram-Schmidt style subtraction.
fn project_out(v: &RatVec, basis: &[RatVec]) -> RatVec {
    // orthogonalize the basis on the fly (small inputs)
    let mut ortho: Vec<RatVec> = Vec::with_capacity(basis.len());
    for b in basis {
        let mut w = b.clone();
        for o in &ortho {
            let c = &w.dot(o) / &o.dot(o);
            w = &w - &o.scale(&c);
        }
        if !w.is_zero() {
            ortho.push(w);
        }
    }
    let mut out = v.clone();
    for o in &ortho {
        let c = &out.dot(o) / &o.dot(o);
        out = &out - &o.scale(&c);
    }
    out
}

/// Extreme rays and lineality of `{x : e.x = 0 for e in eqs, h.x <= 0 for h in ineqs}`.
///
/// Returns `(lineality_basis, extreme_rays)`; rays are representatives
/// orthogonal to the lineality space, primitive.
fn dd_rays(ambient: usize, eqs: &[RatVec], ineqs: &[RatVec]) -> (Vec<RatVec>, Vec<RatVec>) {
    // Subspace K cut out by the equations.
    let kernel_basis = if eqs.is_empty() {
        (0..ambient).map(|i| RatVec::unit(ambient, i)).collect()
    } else {
        RatMatrix::new(eqs.to_vec(), ambient).kernel_basis()
    };
    if kernel_basis.is_empty() {
        return (Vec::new(), Vec::new());
    }
    // Lineality: kernel of the inequality rows restricted to K.
    let k = kernel_basis.len();
    let restricted = RatMatrix::from_rows(
        ineqs
            .iter()
            .map(|h| RatVec::new(kernel_basis.iter().map(|b| h.dot(b)).collect()))
            .collect::<Vec<_>>(),
    );
    let lin_y = if ineqs.is_empty() {
        (0..k).map(|i| RatVec::unit(k, i)).collect::<Vec<_>>()
    } else {
        restricted.kernel_basis()
    };
    let lineality: Vec<RatVec> = lin_y
        .iter()
        .map(|y| combine(&kernel_basis, y))
        .collect();
    // Complement of the lineality inside K, orthogonal to it.
    let mut comp: Vec<RatVec> = Vec::new();
    for b in &kernel_basis {
        let p = project_out(b, &lineality);
        if !p.is_zero() {
            let cand = project_out(&p, &comp);
            if !cand.is_zero() {
                comp.push(p);
            }
        }
    }
    if comp.is_empty() {
        return (canonical_span_basis(&lineality, ambient), Vec::new());
    }
    // Pointed cone {z : A z <= 0} in complement coordinates.
    let d = comp.len();
    let a_rows: Vec<RatVec> = ineqs
        .iter()
        .map(|h| RatVec::new(comp.iter().map(|b| h.dot(b)).collect()))
        .collect();
    let rays_z = dd_pointed(d, &a_rows);
    let rays: Vec<RatVec> = rays_z.iter().map(|z| combine(&comp, z)).collect();
    let mut rays: Vec<RatVec> = rays
        .iter()
        .map(|r| primitive_integer(&project_out(r, &lineality)).expect("extreme ray is nonzero"))
        .collect();
    rays.sort();
    rays.dedup();
    (canonical_span_basis(&lineality, ambient), rays)
}

fn combine(basis: &[RatVec], coeffs: &RatVec) -> RatVec {
    let mut out = RatVec::zero(basis[0].dim());
    for (b, c) in basis.iter().zip(&coeffs.coords) {
        out = &out + &b.scale(c);
    }
    out
}

/// Double description on a pointed cone `{z in R^d : a.z <= 0}` with trivial
/// lineality (the rows of `a` have full column rank d). Returns extreme rays.
fn dd_pointed(d: usize, a: &[RatVec]) -> Vec<RatVec> {
    debug_assert!(d > 0);
    // Greedy choice of d linearly independent rows for the initial simplicial cone.
    let mut base_idx: Vec<usize> = Vec::new();
    let mut chosen: Vec<RatVec> = Vec::new();
    for (i, row) in a.iter().enumerate() {
        let mut test = chosen.clone();
        test.push(row.clone());
        if RatMatrix::new(test.clone(), d).rank() == chosen.len() + 1 {
            chosen = test;
            base_idx.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), d, "pointed cone must have full-rank constraints");
    let base = RatMatrix::new(chosen, d);
    let inv = base.inverse().expect("base rows are independent");
    // Rays are the negated columns of the inverse.
    let mut rays: Vec<RatVec> = (0..d)
        .map(|j| {
            let col = RatVec::new((0..d).map(|i| -inv.at(i, j).clone()).collect());
            primitive_integer(&col).expect("inverse column is nonzero")
        })
        .collect();
    let mut processed: Vec<usize> = base_idx.clone();
    for (idx, row) in a.iter().enumerate() {
        if base_idx.contains(&idx) {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| row.dot(r)).collect();
        let any_pos = vals.iter().any(|v| v.is_positive());
        if !any_pos {
            processed.push(idx);
            continue;
        }
        let mut next: Vec<RatVec> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if !v.is_positive() {
                next.push(r.clone());
            }
        }
        // combine adjacent (+,-) pairs onto the hyperplane
        for (i, ri) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, rj) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                if !adjacent(d, a, &processed, &rays, i, j) {
                    continue;
                }
                let new = &rj.scale(&vals[i]) - &ri.scale(&vals[j]);
                let new = primitive_integer(&new).expect("combined ray is nonzero");
                if !next.contains(&new) {
                    next.push(new);
                }
            }
        }
        rays = next;
        processed.push(idx);
    }
    rays.sort();
    rays.dedup();
    rays
}

/// Algebraic adjacency test: rays `i` and `j` are adjacent when the
/// constraints tight at both span a subspace of dimension d-2 (so the two
/// rays share a common 2-dimensional face).
fn adjacent(d: usize, a: &[RatVec], processed: &[usize], rays: &[RatVec], i: usize, j: usize) -> bool {
    if d <= 2 {
        return true;
    }
    let tight: Vec<RatVec> = processed
        .iter()
        .filter(|&&t| a[t].dot(&rays[i]).is_zero() && a[t].dot(&rays[j]).is_zero())
        .map(|&t| a[t].clone())
        .collect();
    if tight.is_empty() {
        return false;
    }
    RatMatrix::new(tight, d).rank() == d - 2
}

impl Cone {
    /// Build a cone from an H-representation; both representations are
    /// computed and canonicalized.
    pub fn from_hrep(ambient: usize, eqs: &[RatVec], ineqs: &[RatVec]) -> Cone {
        let eqs_clean: Vec<RatVec> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
        let ineqs_clean: Vec<RatVec> = ineqs.iter().filter(|h| !h.is_zero()).cloned().collect();
        let (lineality, rays) = dd_rays(ambient, &eqs_clean, &ineqs_clean);
        Self::from_vrep_parts(ambient, lineality, rays)
    }

    /// Nonnegative span of a set of generators.
    pub fn hull(ambient: usize, gens: &[RatVec]) -> Result<Cone> {
        for g in gens {
            if g.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: g.dim(),
                });
            }
        }
        let gens: Vec<RatVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Ok(Self::zero(ambient));
        }
        // Facets of the hull are the extreme rays of the polar cone
        // {h : g.h <= 0 for all generators g}, computed in the span.
        let span = canonical_span_basis(&gens, ambient);
        let span_perp = if span.is_empty() {
            (0..ambient).map(|i| RatVec::unit(ambient, i)).collect()
        } else {
            RatMatrix::new(span.clone(), ambient).kernel_basis()
        };
        let (_, polar_rays) = dd_rays(ambient, &span_perp, &gens);
        let eqs = canonical_span_basis(&span_perp, ambient);
        Ok(Self::from_hrep(ambient, &eqs, &polar_rays))
    }

    fn from_vrep_parts(ambient: usize, lineality: Vec<RatVec>, rays: Vec<RatVec>) -> Cone {
        let mut all: Vec<RatVec> = lineality.clone();
        all.extend(rays.iter().cloned());
        let dim = if all.is_empty() {
            0
        } else {
            RatMatrix::new(all.clone(), ambient).rank()
        };
        // equations: orthogonal complement of the span
        let equations = if all.is_empty() {
            canonical_span_basis(
                &(0..ambient).map(|i| RatVec::unit(ambient, i)).collect::<Vec<_>>(),
                ambient,
            )
        } else {
            canonical_span_basis(&RatMatrix::new(all.clone(), ambient).kernel_basis(), ambient)
        };
        // facets: extreme rays of the polar, restricted to the span
        let mut gens = lineality.clone();
        gens.extend(lineality.iter().map(|l| -l));
        gens.extend(rays.iter().cloned());
        let mut inequalities = if rays.is_empty() {
            Vec::new()
        } else {
            let span_perp = RatMatrix::new(all, ambient).kernel_basis();
            let (_, polar_rays) = dd_rays(ambient, &span_perp, &gens);
            polar_rays
        };
        inequalities.sort();
        let mut generators = Vec::new();
        for l in &lineality {
            generators.push(l.clone());
        }
        for l in &lineality {
            generators.push(primitive_integer(&-l).unwrap());
        }
        generators.extend(rays.iter().cloned());
        generators.sort();
        Cone {
            ambient_dim: ambient,
            generators,
            lineality,
            rays,
            equations,
            inequalities,
            dim,
        }
    }

    pub fn zero(ambient: usize) -> Cone {
        Self::from_vrep_parts(ambient, Vec::new(), Vec::new())
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|h| !h.dot(x).is_positive())
    }

    /// Membership in the relative interior: equations hold and every facet
    /// inequality is strict.
    pub fn contains_in_relative_interior(&self, x: &RatVec) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|h| h.dot(x).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// A point in the relative interior (the zero vector for the zero cone).
    pub fn relative_interior_point(&self) -> RatVec {
        let mut p = RatVec::zero(self.ambient_dim);
        for r in &self.rays {
            p = &p + r;
        }
        p
    }

    pub fn is_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// The face of `self` obtained by turning the inequalities indexed by
    /// `tight` into equations.
    pub fn face_at(&self, tight: &[usize]) -> Cone {
        let mut eqs = self.equations.clone();
        for &t in tight {
            eqs.push(self.inequalities[t].clone());
        }
        Cone::from_hrep(self.ambient_dim, &eqs, &self.inequalities)
    }

    /// All faces, including `self` and its lineality-space minimal face.
    pub fn faces(&self) -> Vec<Cone> {
        let m = self.inequalities.len();
        let mut out: Vec<Cone> = Vec::new();
        for mask in 0u32..(1u32 << m) {
            let tight: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let f = self.face_at(&tight);
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    /// Codimension-1 faces.
    pub fn facets(&self) -> Vec<Cone> {
        (0..self.inequalities.len())
            .map(|i| self.face_at(&[i]))
            .filter(|f| f.dim + 1 == self.dim)
            .collect()
    }

    /// Face test in the supporting-hyperplane sense: `face` equals the
    /// intersection of `self` with the defining hyperplanes active on it.
    pub fn is_face_of(&self, cone: &Cone) -> bool {
        if self.ambient_dim != cone.ambient_dim || !cone.contains_cone(self) {
            return false;
        }
        let witness = self.relative_interior_point();
        let tight: Vec<usize> = (0..cone.inequalities.len())
            .filter(|&i| cone.inequalities[i].dot(&witness).is_zero())
            .collect();
        cone.face_at(&tight) == *self
    }

    /// Intersection with the halfspace `{x : h.x <= 0}`.
    pub fn intersect_halfspace(&self, h: &RatVec) -> Cone {
        let mut ineqs = self.inequalities.clone();
        ineqs.push(h.clone());
        Cone::from_hrep(self.ambient_dim, &self.equations, &ineqs)
    }

    /// Image under a linear map given by `m` (rows = output coordinates).
    pub fn linear_image(&self, m: &RatMatrix) -> Cone {
        let gens: Vec<RatVec> = self.generators.iter().map(|g| m.mul_vec(g)).collect();
        Cone::hull(m.nrows(), &gens).expect("image generators share the output dimension")
    }

    /// True when `x` lies in the nonnegative span of the generators,
    /// decided by an exact feasibility solve (independent of the H-rep).
    pub fn contains_by_generators(&self, x: &RatVec) -> bool {
        super::arrangement::nonneg_combination_exists(&self.generators, x)
    }
}

/// Nonnegative span of `gens`, with the H-representation computed by the
/// double description method.
pub fn cone_hull(ambient: usize, gens: &[RatVec]) -> Result<Cone> {
    Cone::hull(ambient, gens)
}

/// Intersection of two cones: H-representations are concatenated and the
/// generator representation is recomputed.
pub fn cone_intersect(c: &Cone, d: &Cone) -> Result<Cone> {
    if c.ambient_dim != d.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: c.ambient_dim,
            got: d.ambient_dim,
        });
    }
    let mut eqs = c.equations.clone();
    eqs.extend(d.equations.iter().cloned());
    let mut ineqs = c.inequalities.clone();
    ineqs.extend(d.inequalities.iter().cloned());
    Ok(Cone::from_hrep(c.ambient_dim, &eqs, &ineqs))
}

impl Cone {
    /// Convenience H-rep constructor from integer rows.
    pub fn from_int_hrep(ambient: usize, eqs: &[&[i64]], ineqs: &[&[i64]]) -> Cone {
        let e: Vec<RatVec> = eqs.iter().map(|r| RatVec::from_ints(r)).collect();
        let h: Vec<RatVec> = ineqs.iter().map(|r| RatVec::from_ints(r)).collect();
        Cone::from_hrep(ambient, &e, &h)
    }
}

#[cfg(test)]
mod tests {
    use super::super::num::{rat, ratio};
    use super::*;

    #[test]
    fn hull_single_axis_ray() {
        let c = cone_hull(2, &[RatVec::from_ints(&[1, 0])]).unwrap();
        assert_eq!(c.dim, 1);
        assert_eq!(c.equations, vec![RatVec::from_ints(&[0, 1])]);
        assert_eq!(c.inequalities, vec![RatVec::from_ints(&[-1, 0])]);
    }

    #[test]
    fn hull_positive_quadrant() {
        let c = cone_hull(2, &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])]).unwrap();
        assert_eq!(c.dim, 2);
        assert!(c.equations.is_empty());
        assert_eq!(
            c.inequalities,
            vec![RatVec::from_ints(&[-1, 0]), RatVec::from_ints(&[0, -1])]
        );
    }

    #[test]
    fn hull_wedge_hrep_matches_sampling_oracle() {
        let gens = vec![RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[1, -1])];
        let c = cone_hull(2, &gens).unwrap();
        assert_eq!(c.dim, 2);
        assert!(c.equations.is_empty());
        // independent membership oracle over a rational grid
        for num_x in -6..=6i64 {
            for num_y in -6..=6i64 {
                let p = RatVec::new(vec![ratio(num_x, 2), ratio(num_y, 3)]);
                let by_h = c.contains(&p);
                let by_v = c.contains_by_generators(&p);
                assert_eq!(by_h, by_v, "disagree at {:?}", p);
            }
        }
    }

    #[test]
    fn zero_cone_is_legal() {
        let c = Cone::zero(3);
        assert_eq!(c.dim, 0);
        assert!(c.contains(&RatVec::zero(3)));
        assert!(!c.contains(&RatVec::from_ints(&[1, 0, 0])));
        let from_empty = cone_hull(3, &[]).unwrap();
        assert_eq!(c, from_empty);
    }

    #[test]
    fn cone_dim_examples() {
        assert_eq!(Cone::zero(4).dim, 0);
        let ray = cone_hull(3, &[RatVec::from_ints(&[2, 4, 6])]).unwrap();
        assert_eq!(ray.dim, 1);
        assert_eq!(ray.rays, vec![RatVec::from_ints(&[1, 2, 3])]);
    }

    #[test]
    fn intersect_idempotent_and_face_slice() {
        let orthant = cone_hull(
            2,
            &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])],
        )
        .unwrap();
        assert_eq!(cone_intersect(&orthant, &orthant).unwrap(), orthant);
        let hyper = Cone::from_int_hrep(2, &[&[1, 0]], &[]);
        let face = cone_intersect(&orthant, &hyper).unwrap();
        assert_eq!(face, cone_hull(2, &[RatVec::from_ints(&[0, 1])]).unwrap());
    }

    #[test]
    fn face_tests() {
        let orthant3 = cone_hull(
            3,
            &[
                RatVec::from_ints(&[1, 0, 0]),
                RatVec::from_ints(&[0, 1, 0]),
                RatVec::from_ints(&[0, 0, 1]),
            ],
        )
        .unwrap();
        assert!(orthant3.is_face_of(&orthant3));
        assert!(Cone::zero(3).is_face_of(&orthant3));
        let e1 = cone_hull(3, &[RatVec::from_ints(&[1, 0, 0])]).unwrap();
        assert!(e1.is_face_of(&orthant3));
        let diag = cone_hull(3, &[RatVec::from_ints(&[1, 1, 1])]).unwrap();
        assert!(!diag.is_face_of(&orthant3));
    }

    #[test]
    fn full_line_has_lineality() {
        let line = cone_hull(2, &[RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[-1, -1])])
            .unwrap();
        assert_eq!(line.dim, 1);
        assert!(!line.is_strictly_convex());
        assert!(line.rays.is_empty());
        assert_eq!(line.lineality.len(), 1);
    }

    #[test]
    fn double_description_round_trip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let dim = rng.gen_range(1..=4usize);
            let ngen = rng.gen_range(1..=6usize);
            let gens: Vec<RatVec> = (0..ngen)
                .map(|_| {
                    RatVec::new(
                        (0..dim)
                            .map(|_| rat(rng.gen_range(-3..=3i64)))
                            .collect(),
                    )
                })
                .collect();
            let c = cone_hull(dim, &gens).unwrap();
            let again = cone_hull(dim, &c.generators).unwrap();
            assert_eq!(c, again);
            for g in &gens {
                assert!(c.contains(g));
            }
        }
    }

    #[test]
    fn hrep_membership_matches_generator_membership_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let dim = rng.gen_range(2..=4usize);
            let ngen = rng.gen_range(1..=5usize);
            let gens: Vec<RatVec> = (0..ngen)
                .map(|_| {
                    RatVec::new(
                        (0..dim)
                            .map(|_| rat(rng.gen_range(-2..=3i64)))
                            .collect(),
                    )
                })
                .collect();
            let c = cone_hull(dim, &gens).unwrap();
            for _ in 0..50 {
                let p = RatVec::new(
                    (0..dim)
                        .map(|_| ratio(rng.gen_range(-8..=8i64), rng.gen_range(1..=4i64)))
                        .collect(),
                );
                assert_eq!(c.contains(&p), c.contains_by_generators(&p));
            }
        }
    }

    #[test]
    fn intersect_commutative_associative_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..15 {
            let dim = 3;
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let gens: Vec<RatVec> = (0..4)
                    .map(|_| {
                        RatVec::new(
                            (0..dim)
                                .map(|_| rat(rng.gen_range(-2..=3i64)))
                                .collect(),
                        )
                    })
                    .collect();
                cone_hull(dim, &gens).unwrap()
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let c = mk(&mut rng);
            let ab = cone_intersect(&a, &b).unwrap();
            let ba = cone_intersect(&b, &a).unwrap();
            assert_eq!(ab, ba);
            let abc1 = cone_intersect(&ab, &c).unwrap();
            let bc = cone_intersect(&b, &c).unwrap();
            let abc2 = cone_intersect(&a, &bc).unwrap();
            assert_eq!(abc1, abc2);
            assert_eq!(cone_intersect(&a, &a).unwrap(), a);
        }
    }
}
