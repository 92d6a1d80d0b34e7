//! Verification suites driving the library's theorem checks; each suite
//! returns one pass/fail entry per check.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semipic::exactgeom::{
    cone_hull, cone_intersect, rat, ratio, verify_wall_chamber, RatVec,
};
use semipic::mutapp::{
    bfs_null_states, find_mutation_path, mutate_picture, NullState, PictureState,
};
use semipic::nakayama::NakAlgebra;
use semipic::quivercore::{build_model, ExchangeMatrix, Quiver};
use semipic::srr::{
    build_srr_fan, cone_of, enumerate_clusters, pc, tp, verify_chamber_bijection, wall_labels,
    WallLabel,
};
use semipic::tame::{
    d_reg_eta, infinitesimal_membership, projective_vector, tube_data, vperp_membership_nak,
};
use semipic::Result;
use serde::Serialize;

pub const ONE_TUBE: &str = "4; 1>2, 2>3, 3>4, 1>4";
pub const TWO_TUBE: &str = "4; 1>2, 2>3, 4>3, 1>4";
pub const A2_TILDE: &str = "3; 2>1, 3>2, 3>1";

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl Check {
    fn new(name: &str, passed: bool, details: String) -> Check {
        Check {
            name: name.into(),
            passed,
            details,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn models() -> Vec<(&'static str, &'static str)> {
    vec![
        ("one-tube", ONE_TUBE),
        ("two-tube", TWO_TUBE),
        ("a2-tilde", A2_TILDE),
    ]
}

/// Criterion 1: indecomposable counts r(r+1) for r = 1..6.
pub fn suite_counts() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for r in 1..=6usize {
        let n = NakAlgebra::new(r).indecomposables().len();
        checks.push(Check::new(
            &format!("indecomposables(Lambda_{})", r),
            n == r * (r + 1),
            format!("{} modules, expected {}", n, r * (r + 1)),
        ));
    }
    Ok(checks)
}

/// Criterion 2: the four projective vectors, null root, and its g-vector of
/// the two-tube model.
pub fn suite_example_vectors() -> Result<Vec<Check>> {
    let model = build_model(&Quiver::parse(TWO_TUBE)?)?;
    let td = tube_data(&model, None)?;
    let mut checks = vec![
        Check::new(
            "eta",
            model.eta == RatVec::from_ints(&[1, 1, 1, 1]),
            format!("{:?}", model.eta),
        ),
        Check::new(
            "g(eta)",
            model.g_eta == RatVec::from_ints(&[1, 0, -1, 0]),
            format!("{:?}", model.g_eta),
        ),
    ];
    let expect = [
        ([1usize, 1usize], vec![ratio(-1, 2), rat(1), ratio(-1, 2), rat(1)]),
        ([2, 1], vec![rat(0), rat(1), rat(0), rat(0)]),
        ([1, 2], vec![rat(0), rat(0), rat(0), rat(1)]),
        ([2, 2], vec![ratio(1, 2), rat(0), ratio(1, 2), rat(0)]),
    ];
    for (choice, coords) in expect {
        let p = projective_vector(&model, &td, &choice)?;
        let want = RatVec::new(coords);
        checks.push(Check::new(
            &format!("p(choice {:?})", choice),
            p.vec == want,
            format!("{:?}", p.vec),
        ));
    }
    Ok(checks)
}

/// Criterion 3: the A2-tilde picture has 6 walls and 6 chambers.
pub fn suite_a2_picture() -> Result<Vec<Check>> {
    let model = build_model(&Quiver::parse(A2_TILDE)?)?;
    let td = tube_data(&model, None)?;
    let walls = semipic::tame::regular_walls(&model, &td);
    let s = verify_wall_chamber(&walls);
    Ok(vec![
        Check::new(
            "wall cells",
            s.wall_cell_count == 6,
            format!("{}", s.wall_cell_count),
        ),
        Check::new(
            "chambers",
            s.chamber_count() == 6,
            format!("{}", s.chamber_count()),
        ),
        Check::new("axioms", s.report.passed(), format!("{:?}", s.report)),
    ])
}

/// Criterion 4: the co-amalgamation isomorphism for all three models.
pub fn suite_thm_b() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, text) in models() {
        let model = build_model(&Quiver::parse(text)?)?;
        let td = tube_data(&model, None)?;
        let report = semipic::coamalg::verify_thm_b(&model, &td)?;
        checks.push(Check::new(
            &format!("thmB {}", name),
            report.passed(),
            format!(
                "product chambers {}, regular chambers {}, mismatched walls {:?}",
                report.product_chambers, report.regular_chambers, report.mismatched_walls
            ),
        ));
    }
    Ok(checks)
}

/// Criterion 5: the infinitesimal oracle equals the v-perp oracle on every
/// brick of Lambda_2..Lambda_4, 200 random pairs per brick.
pub fn suite_thm_a(seed: u64, ranks: &[usize]) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for &r in ranks {
        let alg = NakAlgebra::new(r);
        let mut mismatches = 0usize;
        let mut samples = 0usize;
        for y in alg.bricks() {
            let dom = alg.domain(y)?;
            for _ in 0..200 {
                let mut v = RatVec::zero(r);
                for g in &dom.generators {
                    v = &v + &g.scale(&rat(rng.gen_range(0..=3)));
                }
                let w = RatVec::new(
                    (0..r)
                        .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
                        .collect(),
                );
                samples += 1;
                if infinitesimal_membership(&alg, &w, y, &v)?
                    != vperp_membership_nak(&alg, &w, y, &v)?
                {
                    mismatches += 1;
                }
            }
        }
        checks.push(Check::new(
            &format!("thmA Lambda_{}", r),
            mismatches == 0,
            format!("{} samples, {} mismatches", samples, mismatches),
        ));
    }
    Ok(checks)
}

/// Criterion 6: the projectively closed fan passes the fan axioms for both
/// A3-tilde models, and the non-closed projective-vector pair spans a
/// non-face.
pub fn suite_fan() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, text) in [("one-tube", ONE_TUBE), ("two-tube", TWO_TUBE)] {
        let model = build_model(&Quiver::parse(text)?)?;
        let td = tube_data(&model, None)?;
        let (cones, report) = build_srr_fan(&model, &td)?;
        checks.push(Check::new(
            &format!("fan {}", name),
            report.passed(),
            format!("{} cones", cones.len()),
        ));
    }
    // negative witness in the two-tube model
    let model = build_model(&Quiver::parse(TWO_TUBE)?)?;
    let td = tube_data(&model, None)?;
    let pa = projective_vector(&model, &td, &[2, 1])?;
    let pb = projective_vector(&model, &td, &[1, 2])?;
    let pair = cone_hull(4, &[pa.vec.clone(), pb.vec.clone()])?;
    let all = pc(&model, &td, &tp(&[pa, pb]))?;
    let big = cone_hull(4, &all.iter().map(|p| p.vec.clone()).collect::<Vec<_>>())?;
    let (cones, _) = build_srr_fan(&model, &td)?;
    let witness_ok = !pair.is_face_of(&big) && cones.iter().all(|c| c.cone != pair);
    checks.push(Check::new(
        "non-closed pair is a non-face",
        witness_ok,
        format!("pair dim {}, closure size {}", pair.dim, all.len()),
    ));
    Ok(checks)
}

/// Criterion 7: cluster count equals chamber count with distinct interior
/// witnesses, for all three models.
pub fn suite_thm_c() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, text) in models() {
        let model = build_model(&Quiver::parse(text)?)?;
        let td = tube_data(&model, None)?;
        let report = verify_chamber_bijection(&model, &td)?;
        checks.push(Check::new(
            &format!("thmC {}", name),
            report.passed(),
            format!(
                "{} clusters, {} chambers, {} collisions",
                report.cluster_count,
                report.chamber_count,
                report.collisions.len()
            ),
        ));
    }
    Ok(checks)
}

/// Criterion 8: every cluster with exactly one projective vector has n-1
/// pairwise-distinct wall labels, one of them on the null wall.
pub fn suite_wall_labels() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, text) in models() {
        let model = build_model(&Quiver::parse(text)?)?;
        let td = tube_data(&model, None)?;
        let null = d_reg_eta(&model);
        let clusters = enumerate_clusters(&model, &td)?;
        let mut tested = 0usize;
        let mut ok = true;
        for c in clusters.iter().filter(|c| c.proj_count() == 1) {
            tested += 1;
            let labels = wall_labels(&model, &td, c)?;
            if labels.len() != model.n() - 1 {
                ok = false;
            }
            let mut bricks = Vec::new();
            let mut nulls = 0usize;
            for (cone, l) in &labels {
                match l {
                    WallLabel::Brick(b) => bricks.push(*b),
                    WallLabel::NullWall(_) => {
                        nulls += 1;
                        if !null.contains_cone(cone) {
                            ok = false;
                        }
                    }
                }
            }
            bricks.sort();
            bricks.dedup();
            if nulls != 1 || bricks.len() + 1 != labels.len() {
                ok = false;
            }
        }
        checks.push(Check::new(
            &format!("wall labels {}", name),
            ok && tested > 0,
            format!("{} imaginary clusters tested", tested),
        ));
    }
    Ok(checks)
}

fn ints(v: &[i64]) -> RatVec {
    RatVec::from_ints(v)
}

fn square_starts() -> Vec<Quiver> {
    let edges = [(1usize, 2usize), (2, 3), (3, 4), (4, 1)];
    let mut out = Vec::new();
    for mask in 0u32..16 {
        let arrows: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if mask & (1 << i) != 0 { (b, a) } else { (a, b) })
            .collect();
        let q = Quiver::new(4, arrows).unwrap();
        if q.is_acyclic() {
            out.push(q);
        }
    }
    out
}

fn picture_at(target: &Quiver) -> Result<PictureState> {
    let starts = square_starts();
    let bs: Vec<ExchangeMatrix> = starts.iter().map(ExchangeMatrix::from_quiver).collect();
    let (i, path) = find_mutation_path(&bs, &ExchangeMatrix::from_quiver(target), 4)
        .ok_or_else(|| semipic::Error::Internal("target quiver unreachable".into()))?;
    let model = build_model(&starts[i])?;
    let td = tube_data(&model, None)?;
    let mut state = PictureState::hereditary(&model, &td);
    for k in path {
        state = mutate_picture(&state, k)?;
    }
    Ok(state)
}

/// Criterion 9: the two figure-pair label multisets and the double-mutation
/// identity.
pub fn suite_figures() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    // first pair: hereditary one-tube model mutated at 2
    let model = build_model(&Quiver::parse(ONE_TUBE)?)?;
    let td = tube_data(&model, None)?;
    let state = PictureState::hereditary(&model, &td);
    let next = mutate_picture(&state, 2)?;
    let golden5 = {
        let mut v = vec![
            ints(&[0, 1, 0, 0]),
            ints(&[0, 0, 1, 0]),
            ints(&[0, 1, 1, 0]),
            ints(&[1, 0, 0, 1]),
            ints(&[1, 1, 0, 1]),
            ints(&[1, 1, 1, 1]),
            ints(&[1, 1, 1, 1]),
        ];
        v.sort();
        v
    };
    checks.push(Check::new(
        "first figure pair label multiset",
        next.nonnull_labels() == golden5,
        format!("{:?}", next.nonnull_labels()),
    ));
    checks.push(Check::new(
        "first pair wall counts",
        state.wall_count() == 9 && next.wall_count() == 9,
        format!("{} -> {}", state.wall_count(), next.wall_count()),
    ));
    let twice = mutate_picture(&next, 2)?;
    checks.push(Check::new(
        "double mutation restores the picture",
        twice.canonical_walls() == state.canonical_walls()
            && twice.eta == state.eta
            && twice.g_eta == state.g_eta,
        format!("{} walls", twice.wall_count()),
    ));
    // second pair: transported left quiver mutated at 4
    let left = Quiver::parse("4; 4>1, 3>1, 3>4, 2>4, 1>2")?;
    let lstate = picture_at(&left)?;
    let rstate = mutate_picture(&lstate, 4)?;
    let golden6 = {
        let mut v = vec![
            ints(&[0, 1, 0, 0]),
            ints(&[0, 0, 0, 1]),
            ints(&[0, 1, 0, 1]),
            ints(&[1, 0, 1, 1]),
            ints(&[1, 0, 1, 1]),
            ints(&[1, 1, 1, 1]),
            ints(&[1, 1, 1, 1]),
            ints(&[1, 1, 1, 2]),
        ];
        v.sort();
        v
    };
    checks.push(Check::new(
        "second figure pair label multiset",
        rstate.nonnull_labels() == golden6 && rstate.eta == ints(&[1, 0, 1, 0]),
        format!("{:?}", rstate.nonnull_labels()),
    ));
    let back = mutate_picture(&rstate, 4)?;
    checks.push(Check::new(
        "double mutation restores the transported picture",
        back.canonical_walls() == lstate.canonical_walls(),
        format!("{} walls", back.wall_count()),
    ));
    Ok(checks)
}

/// Criterion 10: null-data transport reaches the non-symmetric example and
/// fixes the g-vector at regular simples.
pub fn suite_null_transport() -> Result<Vec<Check>> {
    let mut starts = Vec::new();
    for q in square_starts() {
        let m = build_model(&q)?;
        starts.push(NullState {
            b: ExchangeMatrix::from_quiver(&q),
            eta: m.eta.clone(),
            g_eta: m.g_eta.clone(),
        });
    }
    let states = bfs_null_states(&starts, 3)?;
    let target = ExchangeMatrix::from_quiver(&Quiver::parse("4; 1>3, 3>4, 4>1, 1>2, 2>3")?);
    let hits: Vec<&NullState> = states.iter().filter(|s| s.b == target).collect();
    let mut checks = vec![Check::new(
        "non-symmetric quiver reached with its null data",
        !hits.is_empty()
            && hits
                .iter()
                .all(|s| s.eta == ints(&[1, 1, 1, 0]) && s.g_eta == ints(&[1, 0, -1, 0])),
        format!("{} states searched, {} hits", states.len(), hits.len()),
    )];
    let mut fixed = true;
    let mut tested = 0usize;
    for s in states.iter().take(60) {
        for k in 1..=s.b.n {
            if s.g_eta.coords[k - 1].is_zero() {
                tested += 1;
                if semipic::mutapp::transport_null(s, k)?.g_eta != s.g_eta {
                    fixed = false;
                }
            }
        }
    }
    checks.push(Check::new(
        "g(eta) fixed at regular simples",
        fixed && tested > 0,
        format!("{} regular-simple mutations", tested),
    ));
    Ok(checks)
}

/// Criterion 11: brute-force and mutation-graph enumerations agree for
/// Lambda_1..Lambda_5 (enumerate_stt hard-fails internally on mismatch).
pub fn suite_dual_enumeration() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for r in 1..=5usize {
        let stt = NakAlgebra::new(r).enumerate_stt()?;
        let all_sized = stt.iter().all(|t| t.len() == r);
        checks.push(Check::new(
            &format!("dual enumeration Lambda_{}", r),
            all_sized,
            format!("{} support tau-tilting objects", stt.len()),
        ));
    }
    Ok(checks)
}

/// Criterion 12: seeded property suites, 1000 samples each, zero violations.
pub fn suite_properties(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // double-description round trip
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1);
        let mut bad = 0usize;
        for _ in 0..1000 {
            let dim = rng.gen_range(1..=5usize);
            let ngen = rng.gen_range(1..=8usize);
            let gens: Vec<RatVec> = (0..ngen)
                .map(|_| RatVec::new((0..dim).map(|_| rat(rng.gen_range(-3..=3))).collect()))
                .collect();
            let c = cone_hull(dim, &gens)?;
            if cone_hull(dim, &c.generators)? != c {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "double-description round trip",
            bad == 0,
            format!("1000 samples, {} violations", bad),
        ));
    }

    // membership agreement between the two representations
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
        let mut bad = 0usize;
        for _ in 0..20 {
            let dim = rng.gen_range(2..=4usize);
            let gens: Vec<RatVec> = (0..rng.gen_range(1..=5usize))
                .map(|_| RatVec::new((0..dim).map(|_| rat(rng.gen_range(-2..=3))).collect()))
                .collect();
            let c = cone_hull(dim, &gens)?;
            for _ in 0..50 {
                let p = RatVec::new(
                    (0..dim)
                        .map(|_| ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4)))
                        .collect(),
                );
                if c.contains(&p) != c.contains_by_generators(&p) {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "H-rep vs generator membership",
            bad == 0,
            format!("1000 samples, {} violations", bad),
        ));
    }

    // intersection algebra
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
        let mut bad = 0usize;
        for _ in 0..111 {
            let dim = 3;
            let mk = |rng: &mut ChaCha8Rng| -> Result<_> {
                let gens: Vec<RatVec> = (0..4)
                    .map(|_| RatVec::new((0..dim).map(|_| rat(rng.gen_range(-2..=3))).collect()))
                    .collect();
                cone_hull(dim, &gens)
            };
            let a = mk(&mut rng)?;
            let b = mk(&mut rng)?;
            let c = mk(&mut rng)?;
            let ab = cone_intersect(&a, &b)?;
            if ab != cone_intersect(&b, &a)?
                || cone_intersect(&ab, &c)? != cone_intersect(&a, &cone_intersect(&b, &c)?)?
                || cone_intersect(&a, &a)? != a
            {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "intersection is commutative, associative, idempotent",
            bad == 0,
            format!("999 intersection identities, {} violations", bad),
        ));
    }

    // chamber convexity and coverage sampling on the A2-tilde structure
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
        let model = build_model(&Quiver::parse(A2_TILDE)?)?;
        let td = tube_data(&model, None)?;
        let walls = semipic::tame::regular_walls(&model, &td);
        let s = verify_wall_chamber(&walls);
        let basis = semipic::exactgeom::RatMatrix::new(vec![model.g_eta.clone()], 3)
            .kernel_basis();
        let mut bad = 0usize;
        let mut samples = 0usize;
        while samples < 1000 {
            let mut p = RatVec::zero(3);
            for b in &basis {
                p = &p + &b.scale(&ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3)));
            }
            samples += 1;
            let on_wall = s.point_on_wall(&p);
            let in_chamber = s.chambers.chamber_of(&p);
            // the union of walls and chambers covers the span
            if !on_wall && in_chamber.is_none() {
                bad += 1;
                continue;
            }
            if on_wall {
                continue;
            }
            // midpoint test: a second point of the same chamber
            let mut q = RatVec::zero(3);
            for b in &basis {
                q = &q + &b.scale(&ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3)));
            }
            if !s.point_on_wall(&q) && in_chamber == s.chambers.chamber_of(&q) {
                let mid = (&p + &q).scale(&ratio(1, 2));
                if s.point_on_wall(&mid) || s.chambers.chamber_of(&mid) != in_chamber {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "chamber convexity and coverage sampling",
            bad == 0,
            format!("{} samples, {} violations", samples, bad),
        ));
    }

    // transfer-map identities on random sign-pure tuples
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
        let model = build_model(&Quiver::parse(TWO_TUBE)?)?;
        let td = tube_data(&model, None)?;
        let mut lists_pos = Vec::new();
        let mut lists_neg = Vec::new();
        for i in 0..td.tube_count() {
            let alg = td.algebra(i);
            let all = alg.enumerate_stt()?;
            lists_pos.push(
                all.iter()
                    .filter(|t| t.shifted.is_empty())
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            lists_neg.push(
                all.into_iter()
                    .filter(|t| t.modules.iter().all(|&x| !alg.is_projective(x)))
                    .collect::<Vec<_>>(),
            );
        }
        let mut bad = 0usize;
        let mut samples = 0usize;
        while samples < 1000 {
            let positive = rng.gen_bool(0.5);
            let lists = if positive { &lists_pos } else { &lists_neg };
            let tuple: Vec<_> = lists
                .iter()
                .map(|l| l[rng.gen_range(0..l.len())].clone())
                .collect();
            let flags: Vec<bool> = tuple
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let alg = td.algebra(i);
                    if positive {
                        c.modules.iter().any(|&x| alg.is_projective(x))
                    } else {
                        !c.shifted.is_empty()
                    }
                })
                .collect();
            if !(flags.iter().all(|&f| f) || flags.iter().all(|&f| !f)) {
                continue;
            }
            samples += 1;
            let t = semipic::srr::iota(&model, &td, &tuple, positive)?;
            for i in 0..td.tube_count() {
                if semipic::srr::rho(&model, &td, &t, i)? != tuple[i] {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "transfer-map identities",
            bad == 0,
            format!("{} tuples, {} violations", samples, bad),
        ));
    }

    // transportation-polytope representation
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
        let model = build_model(&Quiver::parse(TWO_TUBE)?)?;
        let td = tube_data(&model, None)?;
        let clusters = enumerate_clusters(&model, &td)?;
        let central = clusters
            .iter()
            .find(|c| c.proj_count() == 4)
            .expect("central cluster exists");
        let m = td.tube_count() as i64;
        let mut bad = 0usize;
        let mut samples = 0usize;
        while samples < 1000 {
            let lambdas: Vec<_> = (0..central.pplus.len())
                .map(|_| ratio(rng.gen_range(0..=6), rng.gen_range(1..=3)))
                .collect();
            let v = central
                .pplus
                .iter()
                .zip(&lambdas)
                .fold(RatVec::zero(4), |acc, (p, l)| &acc + &p.vec.scale(l));
            let lam = |i: usize, j: usize| -> semipic::exactgeom::Rational {
                central
                    .pplus
                    .iter()
                    .zip(&lambdas)
                    .filter(|(p, _)| p.choice[i] == j)
                    .map(|(_, l)| l.clone())
                    .sum()
            };
            let s: semipic::exactgeom::Rational = (1..=2).map(|j| lam(0, j)).sum();
            if s.is_zero() {
                continue;
            }
            samples += 1;
            let spow = (0..(m - 1)).fold(rat(1), |acc, _| &acc / &s);
            let v2 = central.pplus.iter().fold(RatVec::zero(4), |acc, p| {
                let prod = p
                    .choice
                    .iter()
                    .enumerate()
                    .fold(spow.clone(), |a, (i, &j)| &a * &lam(i, j));
                &acc + &p.vec.scale(&prod)
            });
            if v != v2 {
                bad += 1;
            }
        }
        checks.push(Check::new(
            "transportation-polytope representation",
            bad == 0,
            format!("{} samples, {} violations", samples, bad),
        ));
    }

    // cluster-interior semistability exclusion
    {
        let model = build_model(&Quiver::parse(TWO_TUBE)?)?;
        let td = tube_data(&model, None)?;
        let mut bad = 0usize;
        for c in enumerate_clusters(&model, &td)? {
            let v = cone_of(&model, &td, &c)?.cone.relative_interior_point();
            for x in td.bricks() {
                if semipic::tame::regular_domain(&model, &td, x)?.contains(&v) {
                    bad += 1;
                }
            }
        }
        checks.push(Check::new(
            "no regular brick is semistable at chamber interiors",
            bad == 0,
            format!("{} violations", bad),
        ));
    }

    Ok(checks)
}

pub fn run_suite(name: &str, seed: u64, rank: Option<usize>, quiver: Option<&str>) -> Result<SuiteReport> {
    let checks = match name {
        "counts" => suite_counts()?,
        "vectors" => suite_example_vectors()?,
        "a2picture" => suite_a2_picture()?,
        "thmB" => match quiver {
            Some(q) => {
                let model = build_model(&Quiver::parse(q)?)?;
                let td = tube_data(&model, None)?;
                let report = semipic::coamalg::verify_thm_b(&model, &td)?;
                vec![Check::new(
                    "thmB",
                    report.passed(),
                    format!("{:?}", report),
                )]
            }
            None => suite_thm_b()?,
        },
        "thmA" => suite_thm_a(seed, &rank.map(|r| vec![r]).unwrap_or_else(|| vec![2, 3, 4]))?,
        "fan" => match quiver {
            Some(q) => {
                let model = build_model(&Quiver::parse(q)?)?;
                let td = tube_data(&model, None)?;
                let (cones, report) = build_srr_fan(&model, &td)?;
                vec![Check::new(
                    "fan",
                    report.passed(),
                    format!("{} cones", cones.len()),
                )]
            }
            None => suite_fan()?,
        },
        "thmC" => suite_thm_c()?,
        "walls" => suite_wall_labels()?,
        "figures" => suite_figures()?,
        "nulltransport" => suite_null_transport()?,
        "dualenum" => suite_dual_enumeration()?,
        "props" => suite_properties(seed)?,
        "all" => {
            let mut all = Vec::new();
            for s in [
                "counts",
                "vectors",
                "a2picture",
                "thmB",
                "thmA",
                "fan",
                "thmC",
                "walls",
                "figures",
                "nulltransport",
                "dualenum",
                "props",
            ] {
                all.extend(run_suite(s, seed, None, None)?.checks);
            }
            all
        }
        other => {
            return Err(semipic::Error::Precondition(format!(
                "unknown suite {:?}",
                other
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
