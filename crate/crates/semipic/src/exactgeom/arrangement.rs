//! Hyperplane arrangements, exact strict-feasibility via Fourier-Motzkin
//! elimination, and chamber enumeration by sign-vector cells.

use super::cone::{cone_hull, Cone};
use super::num::{canonical_span_basis, primitive_integer, RatMatrix, RatVec, Rational};
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// One homogeneous constraint `h . x (>|>=) 0`.
#[derive(Clone, Debug)]
struct Constraint {
    normal: RatVec,
    strict: bool,
}

/// Witness for `{x : h.x > 0 (strict rows), h.x >= 0 (weak rows)}` by
/// Fourier-Motzkin elimination, or `None` when infeasible. Exact.
pub fn strict_feasible_witness(
    dim: usize,
    strict: &[RatVec],
    weak: &[RatVec],
) -> Option<RatVec> {
    let mut cons: Vec<Constraint> = Vec::new();
    for h in strict {
        cons.push(Constraint {
            normal: h.clone(),
            strict: true,
        });
    }
    for h in weak {
        cons.push(Constraint {
            normal: h.clone(),
            strict: false,
        });
    }
    fm_solve(dim, cons)
}

fn dedupe(cons: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut map: HashMap<RatVec, bool> = HashMap::new();
    for c in cons {
        if c.normal.is_zero() {
            if c.strict {
                return None; // 0 > 0
            }
            continue;
        }
        let key = primitive_integer(&c.normal).unwrap();
        let e = map.entry(key).or_insert(false);
        *e = *e || c.strict;
    }
    Some(
        map.into_iter()
            .map(|(normal, strict)| Constraint { normal, strict })
            .collect(),
    )
}

fn fm_solve(dim: usize, cons: Vec<Constraint>) -> Option<RatVec> {
    let cons = dedupe(cons)?;
    if dim == 0 {
        return Some(RatVec::zero(0));
    }
    // eliminate the last variable
    let var = dim - 1;
    let mut lowers: Vec<Constraint> = Vec::new(); // coeff > 0: x_var (>|>=) bound
    let mut uppers: Vec<Constraint> = Vec::new(); // coeff < 0
    let mut rest: Vec<Constraint> = Vec::new();
    for c in cons.iter() {
        let coef = &c.normal.coords[var];
        if coef.is_zero() {
            rest.push(Constraint {
                normal: RatVec::new(c.normal.coords[..var].to_vec()),
                strict: c.strict,
            });
        } else if coef.is_positive() {
            lowers.push(c.clone());
        } else {
            uppers.push(c.clone());
        }
    }
    let mut reduced = rest;
    for lo in &lowers {
        for up in &uppers {
            // (lo . x) (>|>=) 0 with lo_var > 0  and  (up . x) (>|>=) 0 with up_var < 0
            // combine to eliminate x_var: lo_var * up + (-up_var) * lo
            let a = lo.normal.coords[var].clone();
            let b = -up.normal.coords[var].clone();
            let mut row = Vec::with_capacity(var);
            for j in 0..var {
                row.push(&(&a * &up.normal.coords[j]) + &(&b * &lo.normal.coords[j]));
            }
            reduced.push(Constraint {
                normal: RatVec::new(row),
                strict: lo.strict || up.strict,
            });
        }
    }
    let sub = fm_solve(var, reduced)?;
    // back-substitute: bounds on x_var at the partial witness
    let mut lo_best: Option<(Rational, bool)> = None;
    for lo in &lowers {
        let coef = &lo.normal.coords[var];
        let fixed: Rational = (0..var)
            .map(|j| &lo.normal.coords[j] * &sub.coords[j])
            .sum();
        let bound = -&fixed / coef;
        if lo_best.as_ref().map_or(true, |(b, s)| {
            bound > *b || (bound == *b && lo.strict && !s)
        }) {
            lo_best = Some((bound, lo.strict));
        }
    }
    let mut up_best: Option<(Rational, bool)> = None;
    for up in &uppers {
        let coef = &up.normal.coords[var];
        let fixed: Rational = (0..var)
            .map(|j| &up.normal.coords[j] * &sub.coords[j])
            .sum();
        let bound = -&fixed / coef;
        if up_best.as_ref().map_or(true, |(b, s)| {
            bound < *b || (bound == *b && up.strict && !s)
        }) {
            up_best = Some((bound, up.strict));
        }
    }
    let value = match (&lo_best, &up_best) {
        (None, None) => Rational::zero(),
        (Some((lo, ls)), None) => {
            if *ls {
                lo + Rational::from_integer(1.into())
            } else {
                lo.clone()
            }
        }
        (None, Some((up, us))) => {
            if *us {
                up - Rational::from_integer(1.into())
            } else {
                up.clone()
            }
        }
        (Some((lo, ls)), Some((up, us))) => {
            if lo < up {
                (lo + up) / Rational::from_integer(2.into())
            } else if lo == up && !ls && !us {
                lo.clone()
            } else {
                // FM guarantees consistency of the projection, so an empty
                // interval here cannot happen.
                unreachable!("Fourier-Motzkin back-substitution hit an empty interval")
            }
        }
    };
    let mut coords = sub.coords;
    coords.push(value);
    Some(RatVec::new(coords))
}

/// Exact feasibility of `x = sum(lambda_i g_i), lambda >= 0`, homogenized
/// with a scaling variable to keep the system linear in the unknowns.
pub fn nonneg_combination_exists(gens: &[RatVec], x: &RatVec) -> bool {
    if x.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let dim = x.dim();
    let m = gens.len();
    // unknowns: lambda_1..lambda_m, t; constraints:
    //   sum lambda_i g_i - t x = 0   (two weak inequalities each)
    //   lambda_i >= 0, t > 0
    let nvars = m + 1;
    let mut strict = Vec::new();
    let mut weak = Vec::new();
    for i in 0..m {
        weak.push(RatVec::unit(nvars, i));
    }
    strict.push(RatVec::unit(nvars, m));
    for row in 0..dim {
        let mut v = RatVec::zero(nvars);
        for (i, g) in gens.iter().enumerate() {
            v.coords[i] = g.coords[row].clone();
        }
        v.coords[m] = -x.coords[row].clone();
        weak.push(v.clone());
        weak.push(-&v);
    }
    strict_feasible_witness(nvars, &strict, &weak).is_some()
}

/// A full-dimensional sign-vector cell of a central hyperplane arrangement,
/// expressed in the coordinates of the arrangement's ambient subspace.
#[derive(Clone, Debug)]
pub struct Cell {
    /// +1 / -1 per hyperplane.
    pub signs: Vec<i8>,
    /// Interior witness, in subspace coordinates.
    pub witness_sub: RatVec,
    /// The same witness in ambient coordinates.
    pub witness: RatVec,
}

/// A central hyperplane arrangement inside a linear subspace of R^n.
pub struct Arrangement {
    pub ambient_dim: usize,
    /// Basis of the subspace the arrangement lives in.
    pub basis: Vec<RatVec>,
    /// Distinct hyperplane normals in subspace coordinates (primitive,
    /// sign-normalized so the first nonzero entry is positive, sorted).
    pub normals_sub: Vec<RatVec>,
    /// The same normals in ambient coordinates (one representative each).
    pub normals_ambient: Vec<RatVec>,
}

impl Arrangement {
    /// Build from ambient-coordinate normals; normals that vanish on the
    /// subspace are dropped.
    pub fn new(ambient_dim: usize, basis: Vec<RatVec>, normals: &[RatVec]) -> Arrangement {
        let mut seen: Vec<RatVec> = Vec::new();
        let mut normals_sub = Vec::new();
        let mut normals_ambient = Vec::new();
        for h in normals {
            let sub = RatVec::new(basis.iter().map(|b| h.dot(b)).collect());
            let Some(mut p) = primitive_integer(&sub) else {
                continue;
            };
            let mut amb = h.clone();
            if p.coords
                .iter()
                .find(|c| !c.is_zero())
                .map_or(false, |c| c.is_negative())
            {
                p = -&p;
                amb = -&amb;
            }
            if !seen.contains(&p) {
                seen.push(p.clone());
                normals_sub.push(p);
                normals_ambient.push(amb);
            }
        }
        let mut idx: Vec<usize> = (0..normals_sub.len()).collect();
        idx.sort_by(|&a, &b| normals_sub[a].cmp(&normals_sub[b]));
        Arrangement {
            ambient_dim,
            basis,
            normals_sub: idx.iter().map(|&i| normals_sub[i].clone()).collect(),
            normals_ambient: idx.iter().map(|&i| normals_ambient[i].clone()).collect(),
        }
    }

    pub fn subspace_dim(&self) -> usize {
        self.basis.len()
    }

    fn to_ambient(&self, y: &RatVec) -> RatVec {
        let mut out = RatVec::zero(self.ambient_dim);
        for (b, c) in self.basis.iter().zip(&y.coords) {
            out = &out + &b.scale(c);
        }
        out
    }

    /// Enumerate all full-dimensional cells by incremental sign branching
    /// with exact feasibility pruning.
    pub fn cells(&self) -> Vec<Cell> {
        let d = self.subspace_dim();
        let mut partial: Vec<Vec<i8>> = vec![Vec::new()];
        for k in 0..self.normals_sub.len() {
            let mut next = Vec::new();
            for signs in partial {
                for s in [1i8, -1i8] {
                    let mut trial = signs.clone();
                    trial.push(s);
                    let strict: Vec<RatVec> = trial
                        .iter()
                        .enumerate()
                        .map(|(i, &si)| {
                            let n = &self.normals_sub[i];
                            if si > 0 {
                                n.clone()
                            } else {
                                -n
                            }
                        })
                        .collect();
                    if strict_feasible_witness(d, &strict, &[]).is_some() {
                        next.push(trial);
                    }
                }
            }
            partial = next;
            let _ = k;
        }
        partial
            .into_iter()
            .map(|signs| {
                let strict: Vec<RatVec> = signs
                    .iter()
                    .enumerate()
                    .map(|(i, &si)| {
                        let n = &self.normals_sub[i];
                        if si > 0 {
                            n.clone()
                        } else {
                            -n
                        }
                    })
                    .collect();
                let w = strict_feasible_witness(d, &strict, &[])
                    .expect("cell was certified feasible during branching");
                Cell {
                    signs,
                    witness: self.to_ambient(&w),
                    witness_sub: w,
                }
            })
            .collect()
    }

    /// Witness of the common codimension-1 interface of two cells differing
    /// exactly at hyperplane `h`, if the interface is (d-1)-dimensional.
    pub fn interface_witness(&self, a: &Cell, b: &Cell, h: usize) -> Option<RatVec> {
        let d = self.subspace_dim();
        let mut strict = Vec::new();
        let mut weak = Vec::new();
        for (i, n) in self.normals_sub.iter().enumerate() {
            if i == h {
                weak.push(n.clone());
                weak.push(-n);
            } else {
                debug_assert_eq!(a.signs[i], b.signs[i]);
                strict.push(if a.signs[i] > 0 { n.clone() } else { -n });
            }
        }
        strict_feasible_witness(d, &strict, &weak).map(|w| self.to_ambient(&w))
    }

    /// The closed cell as a cone in ambient coordinates.
    pub fn cell_closure(&self, cell: &Cell) -> Cone {
        // equations: the subspace; inequalities: signed normals
        let span = canonical_span_basis(&self.basis, self.ambient_dim);
        let eqs = if span.is_empty() {
            Vec::new()
        } else {
            RatMatrix::new(span, self.ambient_dim).kernel_basis()
        };
        let ineqs: Vec<RatVec> = cell
            .signs
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let n = &self.normals_ambient[i];
                if s > 0 {
                    -n
                } else {
                    n.clone()
                }
            })
            .collect();
        Cone::from_hrep(self.ambient_dim, &eqs, &ineqs)
    }

    /// Codimension-1 cells lying on hyperplane `h`: sign vectors over the
    /// other hyperplanes, restricted to `h`. Returns ambient witnesses.
    pub fn codim1_cells_on(&self, h: usize) -> Vec<RatVec> {
        let d = self.subspace_dim();
        let mut result = Vec::new();
        let others: Vec<usize> = (0..self.normals_sub.len()).filter(|&i| i != h).collect();
        let mut partial: Vec<Vec<(usize, i8)>> = vec![Vec::new()];
        for &i in &others {
            let mut next = Vec::new();
            for assignment in &partial {
                for s in [1i8, -1i8] {
                    let mut trial = assignment.clone();
                    trial.push((i, s));
                    let strict: Vec<RatVec> = trial
                        .iter()
                        .map(|&(j, sj)| {
                            let n = &self.normals_sub[j];
                            if sj > 0 {
                                n.clone()
                            } else {
                                -n
                            }
                        })
                        .collect();
                    let weak = vec![self.normals_sub[h].clone(), -&self.normals_sub[h]];
                    if strict_feasible_witness(d, &strict, &weak).is_some() {
                        next.push(trial);
                    }
                }
            }
            partial = next;
        }
        for assignment in partial {
            let strict: Vec<RatVec> = assignment
                .iter()
                .map(|&(j, sj)| {
                    let n = &self.normals_sub[j];
                    if sj > 0 {
                        n.clone()
                    } else {
                        -n
                    }
                })
                .collect();
            let weak = vec![self.normals_sub[h].clone(), -&self.normals_sub[h]];
            if let Some(w) = strict_feasible_witness(d, &strict, &weak) {
                result.push(self.to_ambient(&w));
            }
        }
        result
    }
}

/// Chambers of a wall family: cells merged across interfaces not covered by
/// any wall.
pub struct ChamberSet {
    pub arrangement: Arrangement,
    pub cells: Vec<Cell>,
    /// chamber id per cell
    pub cell_chamber: Vec<usize>,
    pub chamber_count: usize,
}

impl ChamberSet {
    /// `wall_contains(p)` decides whether an ambient point lies on some wall.
    pub fn build<F: Fn(&RatVec) -> bool>(arrangement: Arrangement, wall_contains: F) -> ChamberSet {
        let cells = arrangement.cells();
        let n = cells.len();
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut Vec<usize>, i: usize) -> usize {
            if dsu[i] != i {
                let r = find(dsu, dsu[i]);
                dsu[i] = r;
            }
            dsu[i]
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let diff: Vec<usize> = (0..arrangement.normals_sub.len())
                    .filter(|&k| cells[i].signs[k] != cells[j].signs[k])
                    .collect();
                if diff.len() != 1 {
                    continue;
                }
                if let Some(w) = arrangement.interface_witness(&cells[i], &cells[j], diff[0]) {
                    if !wall_contains(&w) {
                        let (ri, rj) = (find(&mut dsu, i), find(&mut dsu, j));
                        if ri != rj {
                            dsu[ri] = rj;
                        }
                    }
                }
            }
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut cell_chamber = Vec::with_capacity(n);
        for i in 0..n {
            let r = find(&mut dsu, i);
            let next = ids.len();
            let id = *ids.entry(r).or_insert(next);
            cell_chamber.push(id);
        }
        ChamberSet {
            arrangement,
            cells,
            cell_chamber,
            chamber_count: ids.len(),
        }
    }

    /// Chamber id of the point `p`. Only meaningful for points not lying on
    /// any wall: `p` may sit on internal hyperplanes of a merged chamber, in
    /// which case every sign-compatible cell belongs to the same chamber.
    pub fn chamber_of(&self, p: &RatVec) -> Option<usize> {
        let signs: Vec<i8> = self
            .arrangement
            .normals_ambient
            .iter()
            .map(|n| {
                let v = n.dot(p);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        for (i, cell) in self.cells.iter().enumerate() {
            if signs
                .iter()
                .zip(&cell.signs)
                .all(|(&s, &c)| s == 0 || s == c)
            {
                return Some(self.cell_chamber[i]);
            }
        }
        None
    }

    /// The closure of a chamber as a cone (hull of its cells). For a convex
    /// chamber this is exactly the chamber's closure.
    pub fn chamber_closure(&self, chamber: usize) -> Cone {
        let mut gens = Vec::new();
        for (i, cell) in self.cells.iter().enumerate() {
            if self.cell_chamber[i] == chamber {
                let c = self.arrangement.cell_closure(cell);
                gens.extend(c.generators.iter().cloned());
            }
        }
        cone_hull(self.arrangement.ambient_dim, &gens).expect("cell generators share ambient")
    }

    /// Exact convexity check: the hull of the chamber's cells must not
    /// contain the interior witness of any cell outside the chamber.
    pub fn chamber_is_convex(&self, chamber: usize) -> bool {
        let hull = self.chamber_closure(chamber);
        for (i, cell) in self.cells.iter().enumerate() {
            if self.cell_chamber[i] != chamber && hull.contains(&cell.witness) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::num::rat;

    #[test]
    fn fm_simple_feasible() {
        // x > 0, y > 0, x - y > 0
        let strict = vec![
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[0, 1]),
            RatVec::from_ints(&[1, -1]),
        ];
        let w = strict_feasible_witness(2, &strict, &[]).unwrap();
        assert!(w.coords[0] > rat(0));
        assert!(w.coords[1] > rat(0));
        assert!(w.coords[0] > w.coords[1]);
    }

    #[test]
    fn fm_infeasible() {
        let strict = vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[-1, 0])];
        assert!(strict_feasible_witness(2, &strict, &[]).is_none());
    }

    #[test]
    fn nonneg_combination() {
        let gens = vec![RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[1, -1])];
        assert!(nonneg_combination_exists(&gens, &RatVec::from_ints(&[2, 0])));
        assert!(nonneg_combination_exists(&gens, &RatVec::from_ints(&[3, 1])));
        assert!(!nonneg_combination_exists(&gens, &RatVec::from_ints(&[-1, 0])));
        assert!(!nonneg_combination_exists(&gens, &RatVec::from_ints(&[0, 1])));
    }

    #[test]
    fn three_lines_give_six_cells() {
        let basis = vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])];
        let normals = vec![
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[0, 1]),
            RatVec::from_ints(&[1, 1]),
        ];
        let arr = Arrangement::new(2, basis, &normals);
        assert_eq!(arr.cells().len(), 6);
    }

    #[test]
    fn one_hyperplane_two_chambers() {
        let basis = vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])];
        let wall = Cone::from_int_hrep(2, &[&[1, 0]], &[]);
        let arr = Arrangement::new(2, basis, &[RatVec::from_ints(&[1, 0])]);
        let chambers = ChamberSet::build(arr, |p| wall.contains(p));
        assert_eq!(chambers.chamber_count, 2);
    }

    #[test]
    fn interface_merging_across_uncovered_hyperplane() {
        // two hyperplanes but only one is a wall: 2 chambers, not 4
        let basis = vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])];
        let wall = Cone::from_int_hrep(2, &[&[1, 0]], &[]);
        let arr = Arrangement::new(
            2,
            basis,
            &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])],
        );
        let chambers = ChamberSet::build(arr, |p| wall.contains(p));
        assert_eq!(chambers.chamber_count, 2);
        for c in 0..2 {
            assert!(chambers.chamber_is_convex(c));
        }
    }
}
