//! Co-amalgamated products of cone sets along linear functionals, and the
//! linear isomorphism carrying the product of Nakayama structures onto the
//! regular structure of a tame hereditary algebra.
//!
//! The product of factors living in `R^{n_1}, ..., R^{n_m}` is stored in the
//! ambient product space `R^{n_1 + ... + n_m}` with the fiber-equalizer
//! equations `phi_1(v_1) = phi_i(v_i)` appended to every cone, rather than
//! re-based to `R^{n+m-1}`; `delta_basis` provides a canonical re-basing
//! when a coordinate form is needed.

use crate::exactgeom::{
    canonical_span_basis, cone_intersect, rat, verify_wall_chamber, Arrangement, Cone,
    LabeledCone, RatMatrix, RatVec,
};
use crate::nakayama::NakAlgebra;
use crate::quivercore::HereditaryModel;
use crate::tame::{regular_domain, regular_walls, TubeData, TubeModule};
use crate::{Error, Result};

/// A linear functional given by its covector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub covec: RatVec,
}

impl Functional {
    pub fn new(covec: RatVec) -> Result<Functional> {
        if covec.is_zero() {
            return Err(Error::Precondition("functional must be nonzero".into()));
        }
        Ok(Functional { covec })
    }

    /// The all-ones functional on `R^r`.
    pub fn ones(r: usize) -> Functional {
        Functional {
            covec: RatVec::new(vec![rat(1); r]),
        }
    }
}

/// One factor of a co-amalgamated product: a set of labeled cones together
/// with a functional on their ambient space.
#[derive(Clone, Debug)]
pub struct Factor {
    pub walls: Vec<LabeledCone>,
    pub functional: Functional,
    pub dim: usize,
}

impl Factor {
    pub fn new(walls: Vec<LabeledCone>, functional: Functional) -> Result<Factor> {
        let dim = functional.covec.dim();
        for w in &walls {
            if w.cone.ambient_dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: w.cone.ambient_dim,
                });
            }
        }
        Ok(Factor {
            walls,
            functional,
            dim,
        })
    }

    /// The standard wall-and-chamber structure of `Lambda_r` with the
    /// all-ones functional.
    pub fn nakayama(r: usize) -> Factor {
        let alg = NakAlgebra::new(r);
        Factor {
            walls: alg.brick_walls(),
            functional: Functional::ones(r),
            dim: r,
        }
    }
}

/// The co-amalgamated product of a list of factors.
#[derive(Clone, Debug)]
pub struct CoamalgProduct {
    pub factor_dims: Vec<usize>,
    pub ambient_dim: usize,
    /// Equalizer equations `phi_1(v_1) - phi_i(v_i) = 0` in product
    /// coordinates, for `i = 2..m`.
    pub delta_equations: Vec<RatVec>,
    /// Canonical (lexicographically smallest echelon) basis of the
    /// equalizer subspace.
    pub delta_basis: Vec<RatVec>,
    /// Lifts of the single walls: (factor index, wall index, lifted cone).
    pub wall_lifts: Vec<(usize, usize, Cone)>,
    /// The full product: all intersections of lifts across factor subsets.
    pub cones: Vec<Cone>,
}

impl CoamalgProduct {
    /// Offset of factor `i` in product coordinates.
    pub fn offset(&self, i: usize) -> usize {
        self.factor_dims[..i].iter().sum()
    }

    /// Embed a factor-`i` covector into product coordinates.
    pub fn embed(&self, i: usize, v: &RatVec) -> RatVec {
        let mut out = RatVec::zero(self.ambient_dim);
        let off = self.offset(i);
        for (k, c) in v.coords.iter().enumerate() {
            out.coords[off + k] = c.clone();
        }
        out
    }

    /// The lifted walls as labeled cones (labels embedded blockwise).
    pub fn lifted_walls(&self, factors: &[Factor]) -> Vec<LabeledCone> {
        self.wall_lifts
            .iter()
            .map(|&(i, w, ref cone)| {
                let src = &factors[i].walls[w];
                LabeledCone::new(
                    cone.clone(),
                    self.embed(i, &src.label),
                    src.module.clone().map(|m| format!("factor{}:{}", i + 1, m)),
                )
            })
            .collect()
    }
}

/// Build the co-amalgamated product of the given factors.
pub fn coamalg(factors: &[Factor]) -> Result<CoamalgProduct> {
    if factors.is_empty() {
        return Err(Error::Precondition("at least one factor".into()));
    }
    let factor_dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
    let ambient_dim: usize = factor_dims.iter().sum();
    let offset = |i: usize| -> usize { factor_dims[..i].iter().sum() };
    let mut delta_equations = Vec::new();
    for i in 1..factors.len() {
        let mut eq = RatVec::zero(ambient_dim);
        for (k, c) in factors[0].functional.covec.coords.iter().enumerate() {
            eq.coords[k] = c.clone();
        }
        for (k, c) in factors[i].functional.covec.coords.iter().enumerate() {
            eq.coords[offset(i) + k] = &eq.coords[offset(i) + k] - c;
        }
        delta_equations.push(eq);
    }
    let delta_basis = if delta_equations.is_empty() {
        canonical_span_basis(
            &(0..ambient_dim)
                .map(|k| RatVec::unit(ambient_dim, k))
                .collect::<Vec<_>>(),
            ambient_dim,
        )
    } else {
        canonical_span_basis(
            &RatMatrix::new(delta_equations.clone(), ambient_dim).kernel_basis(),
            ambient_dim,
        )
    };

    // lift of one wall: its constraints on the block, plus the equalizer
    let lift = |i: usize, cone: &Cone| -> Cone {
        let mut eqs = delta_equations.clone();
        let mut embed = |v: &RatVec| {
            let mut out = RatVec::zero(ambient_dim);
            for (k, c) in v.coords.iter().enumerate() {
                out.coords[offset(i) + k] = c.clone();
            }
            out
        };
        for e in &cone.equations {
            eqs.push(embed(e));
        }
        let ineqs: Vec<RatVec> = cone.inequalities.iter().map(&mut embed).collect();
        Cone::from_hrep(ambient_dim, &eqs, &ineqs)
    };

    let mut wall_lifts = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for (w, wall) in f.walls.iter().enumerate() {
            wall_lifts.push((i, w, lift(i, &wall.cone)));
        }
    }

    // full product: intersections of one lift per factor over nonempty
    // factor subsets
    let m = factors.len();
    let mut cones: Vec<Cone> = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let chosen: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let mut combos: Vec<Option<Cone>> = vec![None];
        for &i in &chosen {
            let mut next = Vec::new();
            for base in &combos {
                for (fi, wi, lifted) in &wall_lifts {
                    if *fi != i {
                        continue;
                    }
                    let _ = wi;
                    let c = match base {
                        None => lifted.clone(),
                        Some(b) => cone_intersect(b, lifted)?,
                    };
                    next.push(Some(c));
                }
            }
            combos = next;
        }
        for c in combos.into_iter().flatten() {
            if !cones.contains(&c) {
                cones.push(c);
            }
        }
    }
    cones.sort();

    Ok(CoamalgProduct {
        factor_dims,
        ambient_dim,
        delta_equations,
        delta_basis,
        wall_lifts,
        cones,
    })
}

/// Block-swap commutativity: the coordinate-swap map carries the product of
/// `(f1, f2)` bijectively onto the product of `(f2, f1)`.
pub fn coamalg_commute_check(f1: &Factor, f2: &Factor) -> Result<bool> {
    let p12 = coamalg(&[f1.clone(), f2.clone()])?;
    let p21 = coamalg(&[f2.clone(), f1.clone()])?;
    let (n1, n2) = (f1.dim, f2.dim);
    let mut swap = RatMatrix::zero(n1 + n2, n1 + n2);
    for k in 0..n2 {
        swap.set(k, n1 + k, rat(1));
    }
    for k in 0..n1 {
        swap.set(n2 + k, k, rat(1));
    }
    let mut mapped: Vec<Cone> = p12.cones.iter().map(|c| c.linear_image(&swap)).collect();
    mapped.sort();
    Ok(mapped == p21.cones)
}

/// Associativity: `(f1 (x) f2) (x) f3` and `f1 (x) (f2 (x) f3)` agree with
/// the flat triple product once the inner product is re-based to equalizer
/// coordinates (the identification of the equalizer with `R^{n+m-1}`) and
/// the result is mapped back to flat product coordinates.
pub fn coamalg_assoc_check(f1: &Factor, f2: &Factor, f3: &Factor) -> Result<bool> {
    let flat = coamalg(&[f1.clone(), f2.clone(), f3.clone()])?;

    // inner product of (a, b), re-based to its equalizer coordinates
    let nested_factor = |a: &Factor, b: &Factor| -> Result<(Factor, RatMatrix)> {
        let p = coamalg(&[a.clone(), b.clone()])?;
        let nn = a.dim + b.dim;
        let k = p.delta_basis.len();
        let mut bm = RatMatrix::zero(k, nn);
        for (i, v) in p.delta_basis.iter().enumerate() {
            for j in 0..nn {
                bm.set(i, j, v.coords[j].clone());
            }
        }
        // coordinate map on the equalizer: x -> (B B^T)^{-1} B x
        let coords = bm
            .mul_mat(&bm.transpose())
            .inverse()
            .expect("equalizer basis rows are independent")
            .mul_mat(&bm);
        // functional in coordinates: phi(a-block of each basis vector)
        let phi = RatVec::new(
            p.delta_basis
                .iter()
                .map(|v| {
                    a.functional
                        .covec
                        .dot(&RatVec::new(v.coords[..a.dim].to_vec()))
                })
                .collect(),
        );
        let walls: Vec<LabeledCone> = p
            .cones
            .iter()
            .map(|c| LabeledCone::new(c.linear_image(&coords), RatVec::zero(k), None))
            .collect();
        Ok((
            Factor::new(walls, Functional::new(phi)?)?,
            bm.transpose(), // embeds coordinates back into R^{n_a + n_b}
        ))
    };

    // map cones of (nested, other) products back to flat coordinates
    let check = |outer: &CoamalgProduct, embed: &RatMatrix, nested_first: bool| -> bool {
        let total = flat.ambient_dim;
        let k = embed.ncols;
        let other_dim = outer.ambient_dim - k;
        let mut m = RatMatrix::zero(total, outer.ambient_dim);
        let (row_off, col_off) = if nested_first {
            (0usize, 0usize)
        } else {
            (total - embed.nrows(), other_dim)
        };
        for i in 0..embed.nrows() {
            for j in 0..k {
                m.set(row_off + i, col_off + j, embed.at(i, j).clone());
            }
        }
        let (id_row, id_col) = if nested_first {
            (embed.nrows(), k)
        } else {
            (0usize, 0usize)
        };
        for j in 0..other_dim {
            m.set(id_row + j, id_col + j, rat(1));
        }
        let mut mapped: Vec<Cone> = outer.cones.iter().map(|c| c.linear_image(&m)).collect();
        mapped.sort();
        mapped.dedup();
        mapped == flat.cones
    };

    let (nested12, embed12) = nested_factor(f1, f2)?;
    let left = coamalg(&[nested12, f3.clone()])?;
    let (nested23, embed23) = nested_factor(f2, f3)?;
    let right = coamalg(&[f1.clone(), nested23])?;
    Ok(check(&left, &embed12, true) && check(&right, &embed23, false))
}

/// The matrix of the isomorphism `Psi` from the equalizer subspace onto
/// `g(eta)`-perp.
///
/// `Psi` is the inverse of the pairing map `w -> (w . dim X^i_{j,1})_{i,j}`,
/// which carries `g(eta)`-perp isomorphically onto the equalizer (the row
/// sums within each tube block all equal `w . eta`). This is the map that
/// makes the factor-`i` coordinate conditions cutting out `D(Y^i_{j,l})`
/// correspond verbatim to the pairing conditions cutting out
/// `D_reg(X^i_{j,l})`. The returned matrix is valid on the equalizer
/// subspace (columns indexed by product coordinates).
pub fn psi_iso(model: &HereditaryModel, td: &TubeData) -> RatMatrix {
    let n = model.n();
    let total: usize = td.ranks().iter().sum();
    // pairing matrix d: R^n -> R^total, w -> (w . d^i_j)
    let mut pairing = RatMatrix::zero(total, n);
    let mut row = 0;
    for t in &td.tubes {
        for d in &t.quasi_simple_dims {
            for col in 0..n {
                pairing.set(row, col, d.coords[col].clone());
            }
            row += 1;
        }
    }
    // basis of g(eta)-perp as columns of gm (n x (n-1))
    let gperp = RatMatrix::new(vec![model.g_eta.clone()], n).kernel_basis();
    let k = gperp.len();
    let mut gm = RatMatrix::zero(n, k);
    for (j, b) in gperp.iter().enumerate() {
        for i in 0..n {
            gm.set(i, j, b.coords[i].clone());
        }
    }
    // delta-coordinates: express equalizer vectors in the canonical basis
    let delta_basis = {
        let factors: Vec<Functional> = td.ranks().iter().map(|&r| Functional::ones(r)).collect();
        let mut eqs = Vec::new();
        for i in 1..factors.len() {
            let mut eq = RatVec::zero(total);
            for (c, v) in factors[0].covec.coords.iter().enumerate() {
                eq.coords[c] = v.clone();
            }
            let off: usize = td.ranks()[..i].iter().sum();
            for (c, v) in factors[i].covec.coords.iter().enumerate() {
                eq.coords[off + c] = &eq.coords[off + c] - v;
            }
            eqs.push(eq);
        }
        if eqs.is_empty() {
            (0..total).map(|i| RatVec::unit(total, i)).collect::<Vec<_>>()
        } else {
            canonical_span_basis(
                &RatMatrix::new(eqs, total).kernel_basis(),
                total,
            )
        }
    };
    let kb = delta_basis.len();
    let mut bm = RatMatrix::zero(kb, total);
    for (i, b) in delta_basis.iter().enumerate() {
        for j in 0..total {
            bm.set(i, j, b.coords[j].clone());
        }
    }
    // coords(x) = (B B^T)^{-1} B x, exact on the equalizer span
    let bbt = bm.mul_mat(&bm.transpose());
    let coords = bbt
        .inverse()
        .expect("delta basis rows are independent")
        .mul_mat(&bm);
    // t = coords(pairing . gm): (n-1) x (n-1), invertible
    let t = coords.mul_mat(&pairing.mul_mat(&gm));
    let t_inv = t
        .inverse()
        .expect("the pairing map is an isomorphism onto the equalizer");
    gm.mul_mat(&t_inv).mul_mat(&coords)
}

/// Report of the co-amalgamation isomorphism checks.
#[derive(Clone, Debug, Default)]
pub struct ThmBReport {
    /// Wall lifts whose image does not equal the matching regular domain.
    pub mismatched_walls: Vec<String>,
    pub product_chambers: usize,
    pub regular_chambers: usize,
    /// Rank of the isomorphism restricted to the equalizer subspace.
    pub rank_on_delta: usize,
    pub expected_rank: usize,
    /// Tubes whose null-wall inverse image fails to decompose into the
    /// lifted length-rank domains.
    pub bad_null_decompositions: Vec<usize>,
}

impl ThmBReport {
    pub fn passed(&self) -> bool {
        self.mismatched_walls.is_empty()
            && self.product_chambers == self.regular_chambers
            && self.rank_on_delta == self.expected_rank
            && self.bad_null_decompositions.is_empty()
    }
}

/// Verify that the co-amalgamated product of the Nakayama structures maps
/// onto the regular structure: exact cone equality of every lifted wall
/// image, chamber-count agreement, and the per-tube decomposition of the
/// null wall's inverse image.
pub fn verify_thm_b(model: &HereditaryModel, td: &TubeData) -> Result<ThmBReport> {
    let mut report = ThmBReport::default();
    let factors: Vec<Factor> = td.ranks().into_iter().map(Factor::nakayama).collect();
    let product = coamalg(&factors)?;
    let psi = psi_iso(model, td);

    // rank of Psi restricted to Delta
    let images: Vec<RatVec> = product.delta_basis.iter().map(|b| psi.mul_vec(b)).collect();
    report.rank_on_delta = if images.is_empty() {
        0
    } else {
        RatMatrix::from_rows(images).rank()
    };
    report.expected_rank = model.n() - 1;

    // every lifted Nakayama wall maps onto the matching regular domain
    for &(i, w, ref lifted) in &product.wall_lifts {
        let module = factors[i].walls[w]
            .module
            .clone()
            .expect("nakayama walls carry module names");
        // parse Y_{j,l} back out of the canonical name
        let alg = td.algebra(i);
        let brick = alg
            .bricks()
            .into_iter()
            .find(|b| b.name() == module)
            .expect("wall names are brick names");
        let image = lifted.linear_image(&psi);
        let target = regular_domain(model, td, TubeModule::new(i, brick.socle, brick.length))?;
        if image != target {
            report
                .mismatched_walls
                .push(format!("factor {} wall {}", i + 1, module));
        }
    }

    // chamber counts agree
    let product_structure = verify_wall_chamber(&product.lifted_walls(&factors));
    let regular_structure = verify_wall_chamber(&regular_walls(model, td));
    report.product_chambers = product_structure.chamber_count();
    report.regular_chambers = regular_structure.chamber_count();

    // inverse image of the null wall decomposes per tube into the lifted
    // length-rank domains
    let null_pre = {
        // {x in Delta : Psi x in eta-perp and g(eta)-perp}
        let mut eqs = product.delta_equations.clone();
        eqs.push(psi.transpose().mul_vec(&model.eta));
        eqs.push(psi.transpose().mul_vec(&model.g_eta));
        Cone::from_hrep(product.ambient_dim, &eqs, &[])
    };
    for (i, t) in td.tubes.iter().enumerate() {
        let alg = td.algebra(i);
        let pieces: Vec<&Cone> = product
            .wall_lifts
            .iter()
            .filter(|&&(fi, w, _)| {
                fi == i && {
                    let name = factors[fi].walls[w].module.as_deref().unwrap();
                    alg.bricks()
                        .into_iter()
                        .find(|b| b.name() == name)
                        .map_or(false, |b| b.length == t.rank)
                }
            })
            .map(|(_, _, c)| c)
            .collect();
        let mut ok = pieces.iter().all(|p| null_pre.contains_cone(p));
        if ok {
            // exact covering: cut the null preimage by the pieces' facet
            // hyperplanes and check every cell lands in some piece
            let mut normals = Vec::new();
            for p in &pieces {
                normals.extend(p.inequalities.iter().cloned());
            }
            let basis = canonical_span_basis(&null_pre.generators, product.ambient_dim);
            let arr = Arrangement::new(product.ambient_dim, basis, &normals);
            for cell in arr.cells() {
                if !pieces.iter().any(|p| p.contains(&cell.witness)) {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            report.bad_null_decompositions.push(i);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::cone_hull;
    use crate::quivercore::{build_model, Quiver};
    use crate::tame::tube_data;

    #[test]
    fn simple_two_factor_product_dimensions() {
        // factor 1: the x1-axis line in R^2; factor 2: the hyperplane
        // {y1 = 0} in R^2; functionals: coordinate sums
        let axis = cone_hull(
            2,
            &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[-1, 0])],
        )
        .unwrap();
        let hyp = Cone::from_int_hrep(2, &[&[1, 0]], &[]);
        let f1 = Factor::new(
            vec![LabeledCone::new(axis, RatVec::from_ints(&[0, 1]), None)],
            Functional::ones(2),
        )
        .unwrap();
        let f2 = Factor::new(
            vec![LabeledCone::new(hyp, RatVec::from_ints(&[1, 0]), None)],
            Functional::ones(2),
        )
        .unwrap();
        let p = coamalg(&[f1, f2]).unwrap();
        assert_eq!(p.delta_basis.len(), 3);
        assert_eq!(p.wall_lifts.len(), 2);
        for (_, _, c) in &p.wall_lifts {
            assert_eq!(c.dim, 2);
        }
        // the intersection cone has dimension 1
        let meet = p
            .cones
            .iter()
            .filter(|c| c.dim == 1)
            .count();
        assert!(meet >= 1);
        assert_eq!(p.cones.len(), 3);
    }

    #[test]
    fn product_of_wall_chamber_structures_is_one() {
        let f = Factor::nakayama(2);
        let p = coamalg(&[f.clone(), f.clone()]).unwrap();
        let s = verify_wall_chamber(&p.lifted_walls(&[f.clone(), f]));
        assert!(s.report.passed());
        // chambers of the product are the compatible pairs of factor chambers
        assert_eq!(s.chamber_count(), 18);
    }

    #[test]
    fn commutativity_checks() {
        let f2 = Factor::nakayama(2);
        assert!(coamalg_commute_check(&f2, &f2).unwrap());
        let f3 = Factor::nakayama(3);
        assert!(coamalg_commute_check(&f2, &f3).unwrap());
    }

    #[test]
    fn associativity_check_on_three_factors() {
        let f = Factor::nakayama(2);
        assert!(coamalg_assoc_check(&f, &f, &f).unwrap());
    }

    #[test]
    fn psi_inverts_the_quasi_simple_pairing() {
        use rand::{Rng, SeedableRng};
        for text in ["4; 1>2,2>3,4>3,1>4", "4; 1>2,2>3,3>4,1>4", "3; 2>1,3>2,3>1"] {
            let m = build_model(&Quiver::parse(text).unwrap()).unwrap();
            let td = tube_data(&m, None).unwrap();
            let psi = psi_iso(&m, &td);
            let factors: Vec<Factor> = td.ranks().into_iter().map(Factor::nakayama).collect();
            let product = coamalg(&factors).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
            for _ in 0..60 {
                // random equalizer vector
                let mut x = RatVec::zero(product.ambient_dim);
                for b in &product.delta_basis {
                    x = &x + &b.scale(&rat(rng.gen_range(-5..=5i64)));
                }
                let w = psi.mul_vec(&x);
                assert!(m.g_eta.dot(&w).is_zero());
                let mut idx = 0;
                for t in &td.tubes {
                    for d in &t.quasi_simple_dims {
                        assert_eq!(w.dot(d), x.coords[idx]);
                        idx += 1;
                    }
                }
            }
            // rank of Psi on the equalizer is n - 1
            let images: Vec<RatVec> = product
                .delta_basis
                .iter()
                .map(|b| psi.mul_vec(b))
                .collect();
            assert_eq!(RatMatrix::from_rows(images).rank(), m.n() - 1);
        }
    }

    #[test]
    fn thm_b_two_tube_model() {
        let m = build_model(&Quiver::parse("4; 1>2,2>3,4>3,1>4").unwrap()).unwrap();
        let td = tube_data(&m, None).unwrap();
        let report = verify_thm_b(&m, &td).unwrap();
        assert!(report.passed(), "{:?}", report);
        assert_eq!(report.product_chambers, 18);
    }

    #[test]
    fn thm_b_one_tube_model() {
        let m = build_model(&Quiver::parse("4; 1>2,2>3,3>4,1>4").unwrap()).unwrap();
        let td = tube_data(&m, None).unwrap();
        let report = verify_thm_b(&m, &td).unwrap();
        assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn thm_b_a2_tilde() {
        let m = build_model(&Quiver::parse("3; 2>1,3>2,3>1").unwrap()).unwrap();
        let td = tube_data(&m, None).unwrap();
        let report = verify_thm_b(&m, &td).unwrap();
        assert!(report.passed(), "{:?}", report);
        assert_eq!(report.regular_chambers, 6);
    }

    #[test]
    fn zero_functional_is_rejected() {
        assert!(Functional::new(RatVec::zero(3)).is_err());
    }
}
