//! Axiom verifiers for polyhedral fans and wall-and-chamber structures.

use super::arrangement::{Arrangement, ChamberSet};
use super::cone::{cone_intersect, Cone};
use super::num::{canonical_span_basis, RatVec};

/// A cone labeled by a dimension vector, with an optional module identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCone {
    pub cone: Cone,
    pub label: RatVec,
    pub module: Option<String>,
}

impl LabeledCone {
    pub fn new(cone: Cone, label: RatVec, module: Option<String>) -> LabeledCone {
        debug_assert!(label.is_nonneg_integer(), "labels are dimension vectors");
        LabeledCone {
            cone,
            label,
            module,
        }
    }
}

/// Report of the polyhedral-fan axioms on a finite cone set.
#[derive(Clone, Debug, Default)]
pub struct FanReport {
    /// Indices of cones that are not strictly convex.
    pub not_strictly_convex: Vec<usize>,
    /// (cone index, missing face) pairs violating face closure.
    pub missing_faces: Vec<(usize, Cone)>,
    /// (i, j) pairs whose intersection is not a face of both.
    pub bad_intersections: Vec<(usize, usize)>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.not_strictly_convex.is_empty()
            && self.missing_faces.is_empty()
            && self.bad_intersections.is_empty()
    }
}

/// Check the polyhedral-fan axioms: strict convexity of every cone, closure
/// under taking faces, and that pairwise intersections are faces of both.
/// Violations are collected, not raised.
pub fn verify_fan(cones: &[Cone]) -> FanReport {
    let mut report = FanReport::default();
    for (i, c) in cones.iter().enumerate() {
        if !c.is_strictly_convex() {
            report.not_strictly_convex.push(i);
        }
        for f in c.faces() {
            if !cones.contains(&f) {
                report.missing_faces.push((i, f));
            }
        }
    }
    for i in 0..cones.len() {
        for j in (i + 1)..cones.len() {
            let Ok(meet) = cone_intersect(&cones[i], &cones[j]) else {
                report.bad_intersections.push((i, j));
                continue;
            };
            if !meet.is_face_of(&cones[i]) || !meet.is_face_of(&cones[j]) {
                report.bad_intersections.push((i, j));
            }
        }
    }
    report
}

/// Verification report for a wall-and-chamber structure.
#[derive(Clone, Debug, Default)]
pub struct WallChamberReport {
    /// Size of the intersection closure of the wall set.
    pub closure_size: usize,
    /// Walls whose dimension is not `span_dim - 1`.
    pub walls_of_wrong_dimension: Vec<usize>,
    /// Closure members not contained in any wall (violates condition (2)).
    pub uncontained_cones: Vec<Cone>,
    /// Chambers that failed the exact convexity check.
    pub nonconvex_chambers: Vec<usize>,
}

impl WallChamberReport {
    pub fn passed(&self) -> bool {
        self.walls_of_wrong_dimension.is_empty()
            && self.uncontained_cones.is_empty()
            && self.nonconvex_chambers.is_empty()
    }
}

/// A verified wall-and-chamber structure: the labeled walls, the chamber
/// decomposition of the span of the walls, and the verification report.
pub struct WallChamberStructure {
    pub ambient_dim: usize,
    /// Dimension of the linear span of the walls (the space the structure
    /// lives in; chambers are open cones of this dimension).
    pub span_dim: usize,
    pub walls: Vec<LabeledCone>,
    pub chambers: ChamberSet,
    /// Number of codimension-1 arrangement cells covered by the walls; this
    /// counts the maximal cells the walls decompose into.
    pub wall_cell_count: usize,
    pub report: WallChamberReport,
}

impl WallChamberStructure {
    pub fn chamber_count(&self) -> usize {
        self.chambers.chamber_count
    }

    pub fn point_on_wall(&self, p: &RatVec) -> bool {
        self.walls.iter().any(|w| w.cone.contains(p))
    }
}

/// Verify the wall-and-chamber axioms for a finite set of labeled walls and
/// enumerate the chambers of their complement (inside the span of the walls).
///
/// Condition (1), closure under intersection, is checked on the intersection
/// closure of the input set; condition (2) requires every closure member to
/// lie inside some wall of codimension 1 in the span; condition (3) is the
/// exact convexity check of every merged chamber.
pub fn verify_wall_chamber(walls: &[LabeledCone]) -> WallChamberStructure {
    let ambient_dim = walls
        .first()
        .map_or(0, |w| w.cone.ambient_dim);
    // The structure lives in the span of its walls when every wall has
    // codimension 1 there; otherwise (e.g. a single hyperplane) it lives in
    // the full ambient space.
    let mut gens: Vec<RatVec> = Vec::new();
    for w in walls {
        gens.extend(w.cone.generators.iter().cloned());
    }
    let span = canonical_span_basis(&gens, ambient_dim);
    let basis = if !span.is_empty() && walls.iter().all(|w| w.cone.dim + 1 == span.len()) {
        span
    } else {
        (0..ambient_dim)
            .map(|i| RatVec::unit(ambient_dim, i))
            .collect()
    };
    let span_dim = basis.len();

    let mut report = WallChamberReport::default();
    for (i, w) in walls.iter().enumerate() {
        if w.cone.dim + 1 != span_dim {
            report.walls_of_wrong_dimension.push(i);
        }
    }

    // intersection closure
    let mut closure: Vec<Cone> = walls.iter().map(|w| w.cone.clone()).collect();
    closure.sort();
    closure.dedup();
    let mut frontier = closure.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for f in &frontier {
            for c in &closure {
                if let Ok(meet) = cone_intersect(f, c) {
                    if !closure.contains(&meet) && !fresh.contains(&meet) {
                        fresh.push(meet);
                    }
                }
            }
        }
        closure.extend(fresh.iter().cloned());
        closure.sort();
        closure.dedup();
        frontier = fresh;
    }
    report.closure_size = closure.len();
    for c in &closure {
        if !walls.iter().any(|w| w.cone.contains_cone(c)) {
            report.uncontained_cones.push(c.clone());
        }
    }

    // chamber enumeration over the arrangement of all defining hyperplanes
    let mut normals: Vec<RatVec> = Vec::new();
    for w in walls {
        normals.extend(w.cone.equations.iter().cloned());
        normals.extend(w.cone.inequalities.iter().cloned());
    }
    let arrangement = Arrangement::new(ambient_dim, basis, &normals);
    let wall_cones: Vec<Cone> = walls.iter().map(|w| w.cone.clone()).collect();
    let chambers = ChamberSet::build(arrangement, |p| wall_cones.iter().any(|c| c.contains(p)));
    for ch in 0..chambers.chamber_count {
        if !chambers.chamber_is_convex(ch) {
            report.nonconvex_chambers.push(ch);
        }
    }
    let mut wall_cell_count = 0;
    for h in 0..chambers.arrangement.normals_sub.len() {
        for w in chambers.arrangement.codim1_cells_on(h) {
            if wall_cones.iter().any(|c| c.contains(&w)) {
                wall_cell_count += 1;
            }
        }
    }

    WallChamberStructure {
        ambient_dim,
        span_dim,
        walls: walls.to_vec(),
        chambers,
        wall_cell_count,
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use super::super::cone::cone_hull;

    fn orthant2_with_faces() -> Vec<Cone> {
        let orthant = cone_hull(
            2,
            &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])],
        )
        .unwrap();
        orthant.faces()
    }

    #[test]
    fn fan_passes_on_orthant_with_faces() {
        let cones = orthant2_with_faces();
        assert_eq!(cones.len(), 4);
        assert!(verify_fan(&cones).passed());
    }

    #[test]
    fn fan_fails_on_overlapping_interiors() {
        let a = cone_hull(
            2,
            &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])],
        )
        .unwrap();
        let b = cone_hull(
            2,
            &[RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[1, -1])],
        )
        .unwrap();
        let report = verify_fan(&[a, b]);
        assert!(report.bad_intersections.contains(&(0, 1)));
    }

    #[test]
    fn fan_flags_non_strictly_convex_diagonal() {
        let diag = cone_hull(
            2,
            &[RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[-1, -1])],
        )
        .unwrap();
        let report = verify_fan(&[diag.clone()]);
        assert_eq!(report.not_strictly_convex, vec![0]);
    }

    #[test]
    fn one_wall_two_chambers() {
        let wall = Cone::from_int_hrep(2, &[&[1, 0]], &[]);
        let s = verify_wall_chamber(&[LabeledCone::new(
            wall,
            RatVec::from_ints(&[1, 0]),
            None,
        )]);
        assert_eq!(s.chamber_count(), 2);
        assert!(s.report.passed());
    }

    #[test]
    fn diagonal_line_gives_two_chambers() {
        let diag = cone_hull(
            2,
            &[RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[-1, -1])],
        )
        .unwrap();
        let s = verify_wall_chamber(&[LabeledCone::new(
            diag,
            RatVec::from_ints(&[1, 1]),
            None,
        )]);
        assert_eq!(s.chamber_count(), 2);
        assert!(s.report.passed());
    }
}
