//! Exceptional tube data of tame hereditary algebras, regular semi-invariant
//! domains, projective vectors, and the infinitesimal / v-perp membership
//! oracles.
//!
//! For type A-tilde the tube data is derived from the cycle structure of the
//! quiver and then validated against the Coxeter action; for other Euclidean
//! types a tube table must be supplied, and is validated the same way.

use crate::exactgeom::{
    rat, solve_affine, Cone, LabeledCone, RatMatrix, RatVec, Rational,
};
use crate::nakayama::{NakAlgebra, NakModule};
use crate::quivercore::HereditaryModel;
use crate::{Error, Result};
use num_traits::{Signed, Zero};

/// One exceptional tube: its rank and the quasi-simple dimension vectors in
/// tau-order, i.e. `tau X_{j,1} = X_{j-1,1}` with indices mod the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tube {
    pub rank: usize,
    pub quasi_simple_dims: Vec<RatVec>,
}

/// The exceptional tubes of a tame hereditary model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeData {
    pub tubes: Vec<Tube>,
}

/// A module in an exceptional tube: tube index (0-based), quasi-socle index
/// in `1..=rank`, and quasi-length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TubeModule {
    pub tube: usize,
    pub socle: usize,
    pub qlen: usize,
}

impl TubeModule {
    pub fn new(tube: usize, socle: usize, qlen: usize) -> TubeModule {
        TubeModule { tube, socle, qlen }
    }

    pub fn name(&self) -> String {
        format!("X^{}_{{{},{}}}", self.tube + 1, self.socle, self.qlen)
    }

    /// The corresponding module over the Nakayama algebra of this tube.
    pub fn nak(&self) -> NakModule {
        NakModule::new(self.socle, self.qlen)
    }
}

/// A projective vector `p(X)`: one chosen quasi-socle per tube, together
/// with the unique vector orthogonal to `g(eta)` and to every non-chosen
/// quasi-simple dimension vector, normalized by `p . eta = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveVector {
    /// Chosen socle index per tube (1-based, one entry per tube).
    pub choice: Vec<usize>,
    pub vec: RatVec,
}

impl TubeData {
    pub fn tube(&self, i: usize) -> &Tube {
        &self.tubes[i]
    }

    pub fn tube_count(&self) -> usize {
        self.tubes.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.tubes.iter().map(|t| t.rank).collect()
    }

    pub fn algebra(&self, i: usize) -> NakAlgebra {
        NakAlgebra::new(self.tubes[i].rank)
    }

    /// Quasi-simple dimension vector `dim X^i_{j,1}` (j taken mod rank).
    pub fn quasi_dim(&self, tube: usize, j: i64) -> &RatVec {
        let r = self.tubes[tube].rank as i64;
        let idx = ((j - 1).rem_euclid(r)) as usize;
        &self.tubes[tube].quasi_simple_dims[idx]
    }

    /// Dimension vector of `X^i_{j,l}`: the cyclic window sum of
    /// quasi-simple dimensions.
    pub fn module_dim(&self, x: TubeModule) -> RatVec {
        let n = self.tubes[x.tube].quasi_simple_dims[0].dim();
        let mut d = RatVec::zero(n);
        for k in 0..x.qlen {
            d = &d + self.quasi_dim(x.tube, x.socle as i64 + k as i64);
        }
        d
    }

    pub fn is_brick(&self, x: TubeModule) -> bool {
        x.qlen <= self.tubes[x.tube].rank
    }

    pub fn is_tau_rigid(&self, x: TubeModule) -> bool {
        x.qlen < self.tubes[x.tube].rank
    }

    /// All bricks (quasi-length at most the rank) of all tubes.
    pub fn bricks(&self) -> Vec<TubeModule> {
        let mut out = Vec::new();
        for (i, t) in self.tubes.iter().enumerate() {
            for j in 1..=t.rank {
                for l in 1..=t.rank {
                    out.push(TubeModule::new(i, j, l));
                }
            }
        }
        out
    }

    /// All choices of one quasi-socle per tube, in lexicographic order.
    pub fn socle_choices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for t in &self.tubes {
            let mut next = Vec::new();
            for base in &out {
                for j in 1..=t.rank {
                    let mut c = base.clone();
                    c.push(j);
                    next.push(c);
                }
            }
            out = next;
        }
        out
    }
}

/// Derive the exceptional tube data of an A-tilde model from the cycle
/// structure, or validate a supplied table for other types.
pub fn tube_data(model: &HereditaryModel, table: Option<&str>) -> Result<TubeData> {
    let tubes = match table {
        Some(text) => parse_tube_table(text, model.n())?,
        None => derive_a_tilde_tubes(model)?,
    };
    let td = order_and_validate(model, tubes)?;
    Ok(td)
}

fn derive_a_tilde_tubes(model: &HereditaryModel) -> Result<Vec<Tube>> {
    let q = &model.quiver;
    let n = q.n;
    // underlying graph must be a single cycle: every vertex has degree 2
    let mut degree = vec![0usize; n + 1];
    for &(s, t) in &q.arrows {
        degree[s] += 1;
        degree[t] += 1;
    }
    if q.arrows.len() != n || (1..=n).any(|v| degree[v] != 2) {
        return Err(Error::MissingTubeTable);
    }
    // walk the cycle edge by edge starting from vertex 1
    let mut edges: Vec<(usize, usize, bool)> = Vec::new(); // (from, to, along_arrow)
    let mut used = vec![false; q.arrows.len()];
    let mut current = 1usize;
    for _ in 0..n {
        let (idx, &(s, t)) = q
            .arrows
            .iter()
            .enumerate()
            .filter(|&(i, &(s, t))| !used[i] && (s == current || t == current))
            .min_by_key(|&(i, &(s, t))| (if s == current { t } else { s }, i))
            .expect("cycle walk finds an unused incident edge");
        used[idx] = true;
        if s == current {
            edges.push((s, t, true));
            current = t;
        } else {
            edges.push((t, s, false));
            current = s;
        }
    }
    if current != 1 {
        return Err(Error::MissingTubeTable);
    }
    // maximal runs of equal direction, cyclically
    let dirs: Vec<bool> = edges.iter().map(|&(_, _, d)| d).collect();
    let p = dirs.iter().filter(|&&d| d).count();
    let qq = n - p;
    if p == 0 || qq == 0 {
        return Err(Error::NotEuclidean("cyclically oriented cycle".into()));
    }
    // run starts: positions where direction changes from the previous edge
    let starts: Vec<usize> = (0..n)
        .filter(|&i| dirs[i] != dirs[(i + n - 1) % n])
        .collect();
    let tube_for = |dir: bool| -> Tube {
        // simples at interior vertices of dir-runs, plus whole-run modules
        // of the opposite runs
        let mut dims: Vec<RatVec> = Vec::new();
        for &s in &starts {
            let mut len = 1;
            while dirs[(s + len) % n] == dirs[s] {
                len += 1;
            }
            if dirs[s] == dir {
                // interior vertices of the run s..s+len (len edges)
                for k in 1..len {
                    let v = edges[(s + k) % n].0;
                    dims.push(RatVec::unit(model.n(), v - 1));
                }
            } else {
                // indicator of all vertices touched by the run
                let mut d = RatVec::zero(model.n());
                for k in 0..len {
                    let e = edges[(s + k) % n];
                    for v in [e.0, e.1] {
                        if d.coords[v - 1].is_zero() {
                            d.coords[v - 1] = rat(1);
                        }
                    }
                }
                dims.push(d);
            }
        }
        let rank = dims.len();
        Tube {
            rank,
            quasi_simple_dims: dims,
        }
    };
    let mut tubes = Vec::new();
    for dir in [true, false] {
        let t = tube_for(dir);
        if t.rank >= 2 {
            tubes.push(t);
        }
    }
    Ok(tubes)
}

/// Parse the line-oriented tube-table format: `tube <rank>` followed by
/// `rank` lines of `n` space-separated integers (quasi-simple dimension
/// vectors in tau-order).
pub fn parse_tube_table(text: &str, n: usize) -> Result<Vec<Tube>> {
    let mut tubes = Vec::new();
    let mut lines = text
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    while let Some(line) = lines.next() {
        let rank: usize = line
            .strip_prefix("tube")
            .map(|s| s.trim())
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::TubeTableParse(format!("expected `tube <rank>`, got {:?}", line)))?;
        if rank < 2 {
            return Err(Error::TubeTableParse("tube rank must be at least 2".into()));
        }
        let mut dims = Vec::with_capacity(rank);
        for _ in 0..rank {
            let row = lines
                .next()
                .ok_or_else(|| Error::TubeTableParse("missing quasi-simple row".into()))?;
            let entries: Vec<i64> = row
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::TubeTableParse(format!("bad integer {:?}", t)))
                })
                .collect::<Result<_>>()?;
            if entries.len() != n {
                return Err(Error::TubeTableParse(format!(
                    "expected {} entries per row, got {}",
                    n,
                    entries.len()
                )));
            }
            dims.push(RatVec::from_ints(&entries));
        }
        tubes.push(Tube {
            rank,
            quasi_simple_dims: dims,
        });
    }
    Ok(tubes)
}

/// Rotate each tube so its lexicographically smallest member comes first,
/// re-chain by the inverse Coxeter action, sort tubes, and validate every
/// tube-data invariant against the model.
fn order_and_validate(model: &HereditaryModel, tubes: Vec<Tube>) -> Result<TubeData> {
    let n = model.n();
    let phi = model.coxeter();
    let phi_inv = phi
        .inverse()
        .expect("the Coxeter matrix is invertible");
    let mut ordered = Vec::new();
    for t in tubes {
        let set = t.quasi_simple_dims.clone();
        let first = set
            .iter()
            .min()
            .ok_or_else(|| Error::InvariantViolation("empty tube".into()))?
            .clone();
        let mut chain = vec![first];
        for _ in 1..t.rank {
            let next = phi_inv.mul_vec(chain.last().unwrap());
            if !set.contains(&next) {
                return Err(Error::InvariantViolation(format!(
                    "tau-inverse of {:?} leaves the tube",
                    chain.last().unwrap()
                )));
            }
            chain.push(next);
        }
        // closure: tau^{-1} of the last member returns to the first
        if phi_inv.mul_vec(chain.last().unwrap()) != chain[0] {
            return Err(Error::InvariantViolation(
                "tau-orbit does not close up with the tube rank".into(),
            ));
        }
        {
            let mut sorted_chain = chain.clone();
            sorted_chain.sort();
            let mut sorted_set = set;
            sorted_set.sort();
            if sorted_chain != sorted_set {
                return Err(Error::InvariantViolation(
                    "tau-orbit does not exhaust the tube".into(),
                ));
            }
        }
        ordered.push(Tube {
            rank: t.rank,
            quasi_simple_dims: chain,
        });
    }
    ordered.sort_by(|a, b| a.quasi_simple_dims[0].cmp(&b.quasi_simple_dims[0]));
    let td = TubeData { tubes: ordered };

    // tau-order: Phi . d_j = d_{j-1}
    for t in &td.tubes {
        for j in 0..t.rank {
            let prev = (j + t.rank - 1) % t.rank;
            if phi.mul_vec(&t.quasi_simple_dims[j]) != t.quasi_simple_dims[prev] {
                return Err(Error::InvariantViolation(
                    "Coxeter action disagrees with the tau-order".into(),
                ));
            }
        }
    }
    // each tube sums to the null root
    for t in &td.tubes {
        let mut s = RatVec::zero(n);
        for d in &t.quasi_simple_dims {
            s = &s + d;
        }
        if s != model.eta {
            return Err(Error::InvariantViolation(
                "quasi-simple dimensions do not sum to the null root".into(),
            ));
        }
    }
    // sum of (rank - 1) = n - 2
    let total: usize = td.tubes.iter().map(|t| t.rank - 1).sum();
    if total != n - 2 {
        return Err(Error::InvariantViolation(format!(
            "sum of (rank - 1) is {}, expected {}",
            total,
            n - 2
        )));
    }
    // eta with all-but-one quasi-simple per tube is a basis of g(eta)-perp
    let mut basis = vec![model.eta.clone()];
    for t in &td.tubes {
        basis.extend(t.quasi_simple_dims[..t.rank - 1].iter().cloned());
    }
    if basis.len() != n - 1 || RatMatrix::from_rows(basis.clone()).rank() != n - 1 {
        return Err(Error::InvariantViolation(
            "eta plus all-but-one quasi-simples per tube is not a basis".into(),
        ));
    }
    for v in &basis {
        if !model.g_eta.dot(v).is_zero() {
            return Err(Error::InvariantViolation(
                "quasi-simple dimension vector is not orthogonal to g(eta)".into(),
            ));
        }
    }
    Ok(td)
}

/// Regular semi-invariant domain of a tube brick, as a cone in the ambient
/// space with the `g(eta)`-orthogonality equation appended.
pub fn regular_domain(model: &HereditaryModel, td: &TubeData, x: TubeModule) -> Result<Cone> {
    if !td.is_brick(x) {
        return Err(Error::NotBrick);
    }
    let eqs = vec![model.g_eta.clone(), td.module_dim(x)];
    let ineqs: Vec<RatVec> = (1..x.qlen)
        .map(|lp| td.module_dim(TubeModule::new(x.tube, x.socle, lp)))
        .collect();
    Ok(Cone::from_hrep(model.n(), &eqs, &ineqs))
}

/// The null wall `D_reg(eta) = eta-perp intersect g(eta)-perp`, a linear
/// subspace of dimension `n - 2`.
pub fn d_reg_eta(model: &HereditaryModel) -> Cone {
    Cone::from_hrep(model.n(), &[model.eta.clone(), model.g_eta.clone()], &[])
}

/// The unique projective vector of a socle choice (one index per tube).
pub fn projective_vector(
    model: &HereditaryModel,
    td: &TubeData,
    choice: &[usize],
) -> Result<ProjectiveVector> {
    if choice.len() != td.tube_count() {
        return Err(Error::Precondition(
            "choice must pick one socle per tube".into(),
        ));
    }
    let n = model.n();
    let mut rows = vec![model.g_eta.clone()];
    for (i, t) in td.tubes.iter().enumerate() {
        for j in 1..=t.rank {
            if j != choice[i] {
                rows.push(t.quasi_simple_dims[j - 1].clone());
            }
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    rows.push(model.eta.clone());
    rhs.push(rat(1));
    let a = RatMatrix::new(rows, n);
    let sol = solve_affine(&a, &RatVec::new(rhs))?;
    if !sol.kernel_basis.is_empty() {
        return Err(Error::Internal(
            "projective-vector system is not determined".into(),
        ));
    }
    Ok(ProjectiveVector {
        choice: choice.to_vec(),
        vec: sol.particular,
    })
}

/// Projection of the g-vector of a regular module onto `g(eta)`-perp.
pub fn g0(model: &HereditaryModel, dim: &RatVec) -> RatVec {
    let g = model.g_from_dim(dim);
    let ge = &model.g_eta;
    let c = &g.dot(ge) / &ge.dot(ge);
    &g - &ge.scale(&c)
}

/// v-perp membership oracle at `v = g(eta)`: `w` lies in the regular
/// semi-invariant domain of the brick `x`.
pub fn vperp_membership(
    model: &HereditaryModel,
    td: &TubeData,
    w: &RatVec,
    x: TubeModule,
) -> Result<bool> {
    if !model.g_eta.dot(w).is_zero() {
        return Err(Error::Precondition("w must be orthogonal to g(eta)".into()));
    }
    if !td.is_brick(x) {
        return Err(Error::NotBrick);
    }
    if !w.dot(&td.module_dim(x)).is_zero() {
        return Ok(false);
    }
    for lp in 1..x.qlen {
        let c = td.module_dim(TubeModule::new(x.tube, x.socle, lp));
        if w.dot(&c).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Infinitesimal membership oracle on the Nakayama side, evaluated exactly
/// by lexicographic (formal-infinitesimal) arithmetic: `w` is a member iff
/// `v + eps w` lies in `D(y)` for all sufficiently small `eps > 0`.
pub fn infinitesimal_membership(
    alg: &NakAlgebra,
    w: &RatVec,
    y: NakModule,
    v: &RatVec,
) -> Result<bool> {
    if !alg.is_brick(y) {
        return Err(Error::NotBrick);
    }
    let dom = alg.domain(y)?;
    if !dom.contains(v) {
        return Err(Error::Precondition("v must lie in the domain of y".into()));
    }
    // defining equation must hold for both orders
    if !w.dot(&alg.dim_vec(y)).is_zero() {
        return Ok(false);
    }
    // each submodule constraint c: (v.c, w.c) <= (0, 0) lexicographically
    for lp in 1..y.length {
        let c = alg.dim_vec(NakModule::new(y.socle, lp));
        let vc = v.dot(&c);
        if vc.is_zero() && w.dot(&c).is_positive() {
            return Ok(false);
        }
        debug_assert!(!vc.is_positive(), "v lies in the domain");
    }
    Ok(true)
}

/// The v-perp oracle of the same statement, on the Nakayama side: used as
/// the independent route for the equality of the two domains.
pub fn vperp_membership_nak(
    alg: &NakAlgebra,
    w: &RatVec,
    y: NakModule,
    v: &RatVec,
) -> Result<bool> {
    if !alg.is_brick(y) {
        return Err(Error::NotBrick);
    }
    let dom = alg.domain(y)?;
    if !dom.contains(v) {
        return Err(Error::Precondition("v must lie in the domain of y".into()));
    }
    if !w.dot(&alg.dim_vec(y)).is_zero() {
        return Ok(false);
    }
    for lp in 1..y.length {
        let c = alg.dim_vec(NakModule::new(y.socle, lp));
        if v.dot(&c).is_zero() && w.dot(&c).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The labeled walls of the regular wall-and-chamber structure: the regular
/// domains of all tube bricks. Quasi-length-`rank` domains are the pieces of
/// the null wall and carry the label `eta`.
pub fn regular_walls(model: &HereditaryModel, td: &TubeData) -> Vec<LabeledCone> {
    let mut out = Vec::new();
    for x in td.bricks() {
        let cone = regular_domain(model, td, x).expect("tube bricks have regular domains");
        out.push(LabeledCone::new(cone, td.module_dim(x), Some(x.name())));
    }
    out
}
