//! The self-injective Nakayama algebras `Lambda_r = K Z_r / rad^(r+1)`.
//!
//! `Z_r` is the cyclic quiver `r -> r-1 -> ... -> 1 -> r`; the indecomposable
//! module `Y_{j,l}` has socle `S(j)` and length `l <= r+1`, is projective
//! exactly for `l = r+1`, and is a brick exactly for `l <= r`. Composition
//! factors read upward from the socle: `S(j), S(j+1), ..., S(j+l-1)` with
//! indices mod `r`, so the top sits at index `j+l-1`.
//!
//! Hom spaces are computed by generic intertwiner linear algebra on explicit
//! nilpotent matrix representations rather than by closed-form window
//! counting; this keeps the module oracle-grade with respect to cyclic
//! indexing conventions.

use crate::exactgeom::{cone_hull, rat, Cone, LabeledCone, RatMatrix, RatVec, Rational};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, VecDeque};

/// The algebra `Lambda_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NakAlgebra {
    pub r: usize,
}

/// An indecomposable `Lambda_r`-module, encoded by socle index and length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NakModule {
    /// Socle index in `1..=r`.
    pub socle: usize,
    /// Length in `1..=r+1`.
    pub length: usize,
}

impl NakModule {
    pub fn new(socle: usize, length: usize) -> NakModule {
        NakModule { socle, length }
    }

    pub fn name(&self) -> String {
        format!("Y_{{{},{}}}", self.socle, self.length)
    }
}

/// One summand of a support tau-rigid object: a module or a shifted
/// projective `P[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    Module(NakModule),
    Shift(NakModule),
}

impl Summand {
    pub fn name(&self) -> String {
        match self {
            Summand::Module(m) => m.name(),
            Summand::Shift(m) => format!("{}[1]", m.name()),
        }
    }
}

/// A support tau-rigid object `M + P[1]`, stored with sorted summand lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SttObject {
    pub modules: Vec<NakModule>,
    pub shifted: Vec<NakModule>,
}

impl SttObject {
    pub fn new(mut modules: Vec<NakModule>, mut shifted: Vec<NakModule>) -> SttObject {
        modules.sort();
        modules.dedup();
        shifted.sort();
        shifted.dedup();
        SttObject { modules, shifted }
    }

    pub fn summands(&self) -> Vec<Summand> {
        let mut out: Vec<Summand> = self.modules.iter().map(|&m| Summand::Module(m)).collect();
        out.extend(self.shifted.iter().map(|&m| Summand::Shift(m)));
        out
    }

    pub fn len(&self) -> usize {
        self.modules.len() + self.shifted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, other: &SttObject) -> bool {
        other.modules.iter().all(|m| self.modules.contains(m))
            && other.shifted.iter().all(|m| self.shifted.contains(m))
    }
}

/// Null-sign classification of a support tau-rigid object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NullSign {
    /// `g . 1 >= 0` only: the object has a projective module summand.
    NonnegativeOnly,
    /// `g . 1 <= 0` only: the object has a shifted summand.
    NonpositiveOnly,
    /// Both: no shift and no projective module summand.
    Both,
}

/// An explicit representation of a module over `Z_r/rad^(r+1)`: a dimension
/// per vertex and one matrix per arrow `v -> prev(v)`.
#[derive(Clone, Debug)]
pub struct Rep {
    pub r: usize,
    /// Dimension at vertex `v` (index `v-1`).
    pub dims: Vec<usize>,
    /// `maps[v-1]` is the matrix of the arrow `v -> prev(v)`, of shape
    /// `dims[prev(v)-1] x dims[v-1]`.
    pub maps: Vec<RatMatrix>,
}

impl NakAlgebra {
    pub fn new(r: usize) -> NakAlgebra {
        assert!(r >= 1);
        NakAlgebra { r }
    }

    /// Vertex index normalized into `1..=r`.
    pub fn idx(&self, v: i64) -> usize {
        (((v - 1).rem_euclid(self.r as i64)) + 1) as usize
    }

    pub fn prev(&self, v: usize) -> usize {
        self.idx(v as i64 - 1)
    }

    pub fn is_projective(&self, m: NakModule) -> bool {
        m.length == self.r + 1
    }

    pub fn is_brick(&self, m: NakModule) -> bool {
        m.length <= self.r
    }

    pub fn top(&self, m: NakModule) -> usize {
        self.idx((m.socle + m.length - 1) as i64)
    }

    pub fn projective(&self, i: usize) -> NakModule {
        NakModule::new(i, self.r + 1)
    }

    /// All `r(r+1)` indecomposables, ordered by (socle, length).
    pub fn indecomposables(&self) -> Vec<NakModule> {
        let mut out = Vec::with_capacity(self.r * (self.r + 1));
        for socle in 1..=self.r {
            for length in 1..=(self.r + 1) {
                out.push(NakModule::new(socle, length));
            }
        }
        out
    }

    pub fn bricks(&self) -> Vec<NakModule> {
        self.indecomposables()
            .into_iter()
            .filter(|&m| self.is_brick(m))
            .collect()
    }

    /// Auslander-Reiten translate: zero on projectives, otherwise the socle
    /// shifts down by one.
    pub fn tau(&self, m: NakModule) -> Option<NakModule> {
        if self.is_projective(m) {
            None
        } else {
            Some(NakModule::new(self.prev(m.socle), m.length))
        }
    }

    pub fn dim_vec(&self, m: NakModule) -> RatVec {
        let mut d = RatVec::zero(self.r);
        for t in 0..m.length {
            let v = self.idx((m.socle + t) as i64);
            d.coords[v - 1] = &d.coords[v - 1] + &rat(1);
        }
        d
    }

    /// Explicit nilpotent matrix representation of `m`.
    pub fn rep(&self, m: NakModule) -> Rep {
        // positions[v-1]: ordered list of basis indices t (socle level 0) at vertex v
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); self.r];
        for t in 0..m.length {
            positions[self.idx((m.socle + t) as i64) - 1].push(t);
        }
        let dims: Vec<usize> = positions.iter().map(|p| p.len()).collect();
        let mut maps = Vec::with_capacity(self.r);
        for v in 1..=self.r {
            let p = self.prev(v);
            let mut mat = RatMatrix::zero(dims[p - 1], dims[v - 1]);
            for (col, &t) in positions[v - 1].iter().enumerate() {
                if t >= 1 {
                    let row = positions[p - 1]
                        .iter()
                        .position(|&s| s == t - 1)
                        .expect("level t-1 lives at the previous vertex");
                    mat.set(row, col, rat(1));
                }
            }
            maps.push(mat);
        }
        Rep {
            r: self.r,
            dims,
            maps,
        }
    }

    /// Dimension of the intertwiner space `Hom(m, n)` by exact linear
    /// algebra on the explicit representations.
    pub fn hom_dim(&self, m: NakModule, n: NakModule) -> usize {
        self.hom_basis(m, n).len()
    }

    /// A basis of `Hom(m, n)`: each element is one matrix per vertex.
    pub fn hom_basis(&self, m: NakModule, n: NakModule) -> Vec<Vec<RatMatrix>> {
        let rm = self.rep(m);
        let rn = self.rep(n);
        intertwiner_basis(self, &rm, &rn)
    }

    /// g-vector of a module (`e_top - e_{socle-1}` for non-projectives,
    /// `e_i` for `P(i)`) or of a shifted projective (`-e_i`).
    pub fn g_vector(&self, s: Summand) -> RatVec {
        match s {
            Summand::Module(m) => {
                if self.is_projective(m) {
                    RatVec::unit(self.r, m.socle - 1)
                } else {
                    let top = self.top(m);
                    let below = self.prev(m.socle);
                    let mut g = RatVec::zero(self.r);
                    g.coords[top - 1] = &g.coords[top - 1] + &rat(1);
                    g.coords[below - 1] = &g.coords[below - 1] - &rat(1);
                    g
                }
            }
            Summand::Shift(p) => {
                assert!(self.is_projective(p), "only projectives are shifted");
                -&RatVec::unit(self.r, p.socle - 1)
            }
        }
    }

    /// Support tau-rigidity: `Hom(M, tau M) = 0` summand-wise and
    /// `Hom(P, M) = 0` for every shifted projective, on a basic object.
    pub fn is_support_tau_rigid(&self, t: &SttObject) -> bool {
        for p in &t.shifted {
            if !self.is_projective(*p) {
                return false;
            }
        }
        for a in &t.modules {
            for b in &t.modules {
                if let Some(tb) = self.tau(*b) {
                    if self.hom_dim(*a, tb) != 0 {
                        return false;
                    }
                }
            }
            for p in &t.shifted {
                if self.hom_dim(*p, *a) != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn candidates(&self) -> Vec<Summand> {
        let mut out = Vec::new();
        for m in self.indecomposables() {
            if m.length < self.r || self.is_projective(m) {
                out.push(Summand::Module(m));
            }
        }
        for i in 1..=self.r {
            out.push(Summand::Shift(self.projective(i)));
        }
        out
    }

    fn compatible(&self, a: Summand, b: Summand) -> bool {
        match (a, b) {
            (Summand::Module(x), Summand::Module(y)) => {
                let xy = self.tau(y).map_or(0, |ty| self.hom_dim(x, ty));
                let yx = self.tau(x).map_or(0, |tx| self.hom_dim(y, tx));
                xy == 0 && yx == 0
            }
            (Summand::Module(m), Summand::Shift(p)) | (Summand::Shift(p), Summand::Module(m)) => {
                self.hom_dim(p, m) == 0
            }
            (Summand::Shift(_), Summand::Shift(_)) => true,
        }
    }

    fn object_from_summands(&self, s: &[Summand]) -> SttObject {
        let mut modules = Vec::new();
        let mut shifted = Vec::new();
        for x in s {
            match x {
                Summand::Module(m) => modules.push(*m),
                Summand::Shift(p) => shifted.push(*p),
            }
        }
        SttObject::new(modules, shifted)
    }

    /// All support tau-tilting objects, by brute force over pairwise
    /// compatible size-`r` candidate subsets and, independently, by
    /// mutation-graph exploration from `Lambda` itself. Disagreement
    /// between the two enumerations is a hard internal failure.
    pub fn enumerate_stt(&self) -> Result<Vec<SttObject>> {
        let cands = self.candidates();
        let n = cands.len();
        let mut compat = vec![vec![false; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                compat[i][j] = self.compatible(cands[i], cands[j]);
                compat[j][i] = compat[i][j];
            }
        }
        // brute force: maximal = exactly r summands
        let mut brute: BTreeSet<SttObject> = BTreeSet::new();
        let mut stack: Vec<usize> = Vec::new();
        fn search(
            start: usize,
            need: usize,
            n: usize,
            compat: &[Vec<bool>],
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if need == 0 {
                out.push(stack.clone());
                return;
            }
            for i in start..n {
                if n - i < need {
                    break;
                }
                if stack.iter().all(|&j| compat[j][i]) {
                    stack.push(i);
                    search(i + 1, need - 1, n, compat, stack, out);
                    stack.pop();
                }
            }
        }
        let mut found = Vec::new();
        search(0, self.r, n, &compat, &mut stack, &mut found);
        for idxs in found {
            let subset: Vec<Summand> = idxs.iter().map(|&i| cands[i]).collect();
            brute.insert(self.object_from_summands(&subset));
        }

        // mutation graph from Lambda
        let lambda =
            SttObject::new((1..=self.r).map(|i| self.projective(i)).collect(), Vec::new());
        let mut seen: BTreeSet<SttObject> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda);
        while let Some(t) = queue.pop_front() {
            let summands = t.summands();
            for drop in 0..summands.len() {
                let rest: Vec<Summand> = summands
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &s)| s)
                    .collect();
                let rest_idx: Vec<usize> = rest
                    .iter()
                    .map(|s| cands.iter().position(|c| c == s).expect("summand is a candidate"))
                    .collect();
                let completions: Vec<usize> = (0..n)
                    .filter(|&i| rest_idx.iter().all(|&j| compat[j][i]) && !rest_idx.contains(&i))
                    .collect();
                if completions.len() != 2 {
                    return Err(Error::Internal(format!(
                        "almost-complete object has {} completions, expected 2",
                        completions.len()
                    )));
                }
                for &c in &completions {
                    let mut full = rest.clone();
                    full.push(cands[c]);
                    let obj = self.object_from_summands(&full);
                    if seen.insert(obj.clone()) {
                        queue.push_back(obj);
                    }
                }
            }
        }
        if seen != brute {
            return Err(Error::Internal(
                "brute-force and mutation-graph stt enumerations disagree".into(),
            ));
        }
        Ok(brute.into_iter().collect())
    }

    /// Semi-invariant domain of a brick: one window equation plus the
    /// proper-left-subsum inequalities.
    pub fn domain(&self, y: NakModule) -> Result<Cone> {
        if !self.is_brick(y) {
            return Err(Error::NotBrick);
        }
        let eq = self.dim_vec(y);
        let ineqs: Vec<RatVec> = (1..y.length)
            .map(|lp| self.dim_vec(NakModule::new(y.socle, lp)))
            .collect();
        Ok(Cone::from_hrep(self.r, &[eq], &ineqs))
    }

    /// The brick walls of the standard wall-and-chamber structure.
    pub fn brick_walls(&self) -> Vec<LabeledCone> {
        self.bricks()
            .into_iter()
            .map(|y| {
                LabeledCone::new(
                    self.domain(y).expect("bricks have domains"),
                    self.dim_vec(y),
                    Some(y.name()),
                )
            })
            .collect()
    }

    /// Null-sign classification of a support tau-rigid object.
    pub fn null_sign(&self, t: &SttObject) -> Result<NullSign> {
        if !self.is_support_tau_rigid(t) {
            return Err(Error::NotRigid);
        }
        let has_proj = t.modules.iter().any(|&m| self.is_projective(m));
        let has_shift = !t.shifted.is_empty();
        Ok(match (has_proj, has_shift) {
            (true, false) => NullSign::NonnegativeOnly,
            (false, true) => NullSign::NonpositiveOnly,
            (false, false) => NullSign::Both,
            (true, true) => unreachable!("rejected by is_support_tau_rigid"),
        })
    }

    /// Complete a tau-rigid module set to a support tau-tilting object of
    /// the requested null sign.
    pub fn complete_to_stt(&self, modules: &[NakModule], positive: bool) -> Result<SttObject> {
        let base = SttObject::new(modules.to_vec(), Vec::new());
        if !self.is_support_tau_rigid(&base) {
            return Err(Error::NotRigid);
        }
        if !positive && modules.iter().any(|&m| self.is_projective(m)) {
            return Err(Error::Precondition(
                "negative completion requires no projective summand".into(),
            ));
        }
        let all = self.enumerate_stt()?;
        let mut matches: Vec<SttObject> = all
            .into_iter()
            .filter(|t| {
                t.contains(&base)
                    && if positive {
                        t.shifted.is_empty()
                    } else {
                        t.modules.iter().all(|&m| !self.is_projective(m))
                    }
            })
            .collect();
        // canonical choice: prefer the completion with the most summands of
        // the requested sign's flavor (all projectives for the empty input)
        matches.sort_by_key(|t| {
            let flavor = if positive {
                t.modules.iter().filter(|&&m| self.is_projective(m)).count()
            } else {
                t.shifted.len()
            };
            (std::cmp::Reverse(flavor), t.clone())
        });
        matches
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("no completion of the requested sign exists".into()))
    }

    /// Cone spanned by the g-vectors of a support tau-rigid object.
    pub fn g_cone(&self, t: &SttObject) -> Cone {
        let gens: Vec<RatVec> = t.summands().iter().map(|&s| self.g_vector(s)).collect();
        cone_hull(self.r, &gens).expect("g-vectors share the ambient dimension")
    }

    /// `N` lies in `Fac M`: the trace of `M` in `N` is all of `N`.
    pub fn in_fac(&self, m: &[NakModule], n: NakModule) -> bool {
        if m.is_empty() {
            return false;
        }
        let rn = self.rep(n);
        let tr = self.trace(m, n);
        (0..self.r).all(|v| tr[v].len() == rn.dims[v])
    }

    /// `Fac(m1) subset-or-equal Fac(m2)`, decided by generation: every
    /// summand of `m1` must be a quotient of a sum of copies of `m2`.
    pub fn fac_subseteq(&self, m1: &[NakModule], m2: &[NakModule]) -> bool {
        m1.iter().all(|&x| self.in_fac(m2, x))
    }

    /// Vertex-wise basis (row vectors) of the trace of `add M` in `n`.
    fn trace(&self, m: &[NakModule], n: NakModule) -> Vec<Vec<RatVec>> {
        let rn = self.rep(n);
        let mut spans: Vec<Vec<RatVec>> = vec![Vec::new(); self.r];
        for &x in m {
            let rx = self.rep(x);
            for f in intertwiner_basis(self, &rx, &rn) {
                for v in 0..self.r {
                    // image vectors: columns of f_v
                    for col in 0..rx.dims[v] {
                        let vec = RatVec::new(
                            (0..rn.dims[v]).map(|row| f[v].at(row, col).clone()).collect(),
                        );
                        spans[v].push(vec);
                    }
                }
            }
        }
        spans
            .into_iter()
            .enumerate()
            .map(|(v, vs)| {
                if vs.is_empty() {
                    Vec::new()
                } else {
                    crate::exactgeom::canonical_span_basis(&vs, rn.dims[v])
                }
            })
            .collect()
    }

    /// The brick labeling the exchange wall between two support tau-tilting
    /// objects sharing `r - 1` summands: the cokernel of the right
    /// `add M_1`-approximation of `M_2` where `Fac M_1 < Fac M_2`,
    /// cross-checked as the unique brick whose domain contains the shared
    /// cone.
    pub fn exchange_brick(&self, t1: &SttObject, t2: &SttObject) -> Result<NakModule> {
        let s1 = t1.summands();
        let s2 = t2.summands();
        let shared: Vec<Summand> = s1.iter().filter(|s| s2.contains(s)).cloned().collect();
        if shared.len() != self.r - 1 || t1 == t2 || s1.len() != self.r || s2.len() != self.r {
            return Err(Error::NotExchangePair);
        }
        let (lo, hi) = if self.fac_subseteq(&t1.modules, &t2.modules) {
            (t1, t2)
        } else if self.fac_subseteq(&t2.modules, &t1.modules) {
            (t2, t1)
        } else {
            return Err(Error::NotExchangePair);
        };
        let brick = self.approximation_cokernel(&lo.modules, &hi.modules)?;

        // cross-check: unique brick whose domain contains the shared cone
        let shared_gens: Vec<RatVec> = shared.iter().map(|&s| self.g_vector(s)).collect();
        let shared_cone = cone_hull(self.r, &shared_gens)?;
        let matches: Vec<NakModule> = self
            .bricks()
            .into_iter()
            .filter(|&b| {
                let d = self.domain(b).expect("brick domain");
                d.contains_cone(&shared_cone)
            })
            .collect();
        if matches != vec![brick] {
            return Err(Error::Internal(format!(
                "exchange brick {} disagrees with domain scan {:?}",
                brick.name(),
                matches.iter().map(|b| b.name()).collect::<Vec<_>>()
            )));
        }
        Ok(brick)
    }

    /// Cokernel of the right `add M_1`-approximation of the module `M_2`,
    /// identified as an indecomposable brick.
    fn approximation_cokernel(&self, m1: &[NakModule], m2: &[NakModule]) -> Result<NakModule> {
        // quotient of each summand of m2 by the trace of m1, summed up;
        // shared summands lie in add(m1) and die, so the result is the
        // cokernel at the exchanged summand.
        let mut total_dims = RatVec::zero(self.r);
        let mut socle_vertex: Option<usize> = None;
        let mut total_len = 0usize;
        for &n in m2 {
            let rn = self.rep(n);
            let tr = self.trace(m1, n);
            let qdims: Vec<usize> = (0..self.r).map(|v| rn.dims[v] - tr[v].len()).collect();
            let qtotal: usize = qdims.iter().sum();
            if qtotal == 0 {
                continue;
            }
            total_len += qtotal;
            for v in 0..self.r {
                total_dims.coords[v] = &total_dims.coords[v] + &rat(qdims[v] as i64);
            }
            // socle of the quotient: kernel of the induced arrow action
            let q = quotient_rep(self, &rn, &tr);
            for v in 1..=self.r {
                let mat = &q.maps[v - 1];
                let null = if q.dims[v - 1] == 0 {
                    0
                } else {
                    q.dims[v - 1] - RatMatrix::new(mat.rows.clone(), mat.ncols).rank()
                };
                if null > 0 {
                    if socle_vertex.replace(v).is_some() {
                        return Err(Error::Internal(
                            "approximation cokernel is not uniserial".into(),
                        ));
                    }
                    if null != 1 {
                        return Err(Error::Internal(
                            "approximation cokernel has socle of dimension > 1".into(),
                        ));
                    }
                }
            }
        }
        let socle = socle_vertex
            .ok_or_else(|| Error::Internal("approximation cokernel is zero".into()))?;
        let brick = NakModule::new(socle, total_len);
        if self.dim_vec(brick) != total_dims || !self.is_brick(brick) {
            return Err(Error::Internal(
                "approximation cokernel does not match a brick".into(),
            ));
        }
        Ok(brick)
    }
}

/// Intertwiners `f` with `f_{prev(v)} . M_a = N_a . f_v` for every arrow,
/// returned as one matrix per vertex.
fn intertwiner_basis(alg: &NakAlgebra, m: &Rep, n: &Rep) -> Vec<Vec<RatMatrix>> {
    let r = alg.r;
    // variable layout: offsets[v] + row * m.dims[v] + col for f_v[row, col]
    let mut offsets = vec![0usize; r + 1];
    for v in 0..r {
        offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
    }
    let nvars = offsets[r];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, row: usize, col: usize, mdims: &[usize]| -> usize {
        offsets[v] + row * mdims[v] + col
    };
    let mut rows: Vec<RatVec> = Vec::new();
    for v in 1..=r {
        let p = alg.prev(v);
        let (vi, pi) = (v - 1, p - 1);
        // equation block: f_p * M_a - N_a * f_v = 0, entries (s, t)
        for s in 0..n.dims[pi] {
            for t in 0..m.dims[vi] {
                let mut row = RatVec::zero(nvars);
                // (f_p * M_a)[s, t] = sum_u f_p[s, u] * M_a[u, t]
                for u in 0..m.dims[pi] {
                    let c = m.maps[vi].at(u, t).clone();
                    if !c.is_zero() {
                        let i = var(pi, s, u, &m.dims);
                        row.coords[i] = &row.coords[i] + &c;
                    }
                }
                // (N_a * f_v)[s, t] = sum_w N_a[s, w] * f_v[w, t]
                for w in 0..n.dims[vi] {
                    let c = n.maps[vi].at(s, w).clone();
                    if !c.is_zero() {
                        let i = var(vi, w, t, &m.dims);
                        row.coords[i] = &row.coords[i] - &c;
                    }
                }
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..nvars)
            .map(|i| RatVec::unit(nvars, i))
            .collect::<Vec<_>>()
    } else {
        RatMatrix::new(rows, nvars).kernel_basis()
    };
    kernel
        .into_iter()
        .map(|k| {
            (0..r)
                .map(|v| {
                    let mut mat = RatMatrix::zero(n.dims[v], m.dims[v]);
                    for row in 0..n.dims[v] {
                        for col in 0..m.dims[v] {
                            mat.set(row, col, k.coords[var(v, row, col, &m.dims)].clone());
                        }
                    }
                    mat
                })
                .collect()
        })
        .collect()
}

/// Quotient representation of `n` by a vertex-wise submodule span.
fn quotient_rep(alg: &NakAlgebra, n: &Rep, sub: &[Vec<RatVec>]) -> Rep {
    let r = alg.r;
    // per vertex: reduce modulo the span; quotient coordinates are the
    // non-pivot columns of the RREF basis
    let mut pivots: Vec<Vec<usize>> = Vec::with_capacity(r);
    let mut frees: Vec<Vec<usize>> = Vec::with_capacity(r);
    let mut bases: Vec<RatMatrix> = Vec::with_capacity(r);
    for v in 0..r {
        if sub[v].is_empty() {
            pivots.push(Vec::new());
            frees.push((0..n.dims[v]).collect());
            bases.push(RatMatrix::zero(0, n.dims[v]));
            continue;
        }
        let (rr, piv) = RatMatrix::new(sub[v].clone(), n.dims[v]).rref();
        let piv_rows = RatMatrix::new(rr.rows[..piv.len()].to_vec(), n.dims[v]);
        frees.push((0..n.dims[v]).filter(|c| !piv.contains(c)).collect());
        pivots.push(piv);
        bases.push(piv_rows);
    }
    let reduce = |v: usize, x: &RatVec| -> RatVec {
        let mut y = x.clone();
        for (row, &pc) in pivots[v].iter().enumerate() {
            let c = y.coords[pc].clone();
            if !c.is_zero() {
                y = &y - &bases[v].rows[row].scale(&c);
            }
        }
        RatVec::new(frees[v].iter().map(|&c| y.coords[c].clone()).collect())
    };
    let dims: Vec<usize> = frees.iter().map(|f| f.len()).collect();
    let mut maps = Vec::with_capacity(r);
    for v in 1..=r {
        let p = alg.prev(v) - 1;
        let vi = v - 1;
        let mut mat = RatMatrix::zero(dims[p], dims[vi]);
        for (col, &fc) in frees[vi].iter().enumerate() {
            // lift quotient basis vector, push through the arrow, reduce
            let lift = RatVec::unit(n.dims[vi], fc);
            let image = n.maps[vi].mul_vec(&lift);
            let reduced = reduce(p, &image);
            for row in 0..dims[p] {
                mat.set(row, col, reduced.coords[row].clone());
            }
        }
        maps.push(mat);
    }
    Rep { r, dims, maps }
}

/// Smallest index `i` (1-based) such that every left subsum of the cyclic
/// window `a_i, ..., a_{i+r-1}` is nonpositive. Requires `sum(a) = 0`.
pub fn left_subsum_start(a: &[Rational]) -> Result<usize> {
    let total: Rational = a.iter().cloned().sum();
    if !total.is_zero() {
        return Err(Error::Precondition("entries must sum to zero".into()));
    }
    let r = a.len();
    let valid = |i: usize| -> bool {
        let mut acc = Rational::zero();
        for k in 0..r {
            acc = &acc + &a[(i + k) % r];
            if acc.is_positive() {
                return false;
            }
        }
        true
    };
    (0..r)
        .find(|&i| valid(i))
        .map(|i| i + 1)
        .ok_or_else(|| Error::Internal("no valid window start exists".into()))
}

/// The partition scan from the existence proof: cyclically re-index so the
/// first entry is negative, then repeatedly skip past positive left subsums.
/// Returns some valid start (1-based), not necessarily the smallest.
pub fn left_subsum_start_partition_scan(a: &[Rational]) -> Result<usize> {
    let total: Rational = a.iter().cloned().sum();
    if !total.is_zero() {
        return Err(Error::Precondition("entries must sum to zero".into()));
    }
    let r = a.len();
    if a.iter().all(|x| x.is_zero()) {
        return Ok(1);
    }
    let first_neg = (0..r)
        .find(|&i| a[i].is_negative())
        .expect("a nonzero zero-sum list has a negative entry");
    let mut start = first_neg;
    loop {
        let mut acc = Rational::zero();
        let mut bad: Option<usize> = None;
        for k in 0..r {
            acc = &acc + &a[(start + k) % r];
            if acc.is_positive() {
                bad = Some(k);
                break;
            }
        }
        let Some(bad) = bad else {
            return Ok(start + 1);
        };
        // skip past the offending prefix to the next negative entry
        let mut next = start + bad + 1;
        while !a[next % r].is_negative() {
            next += 1;
        }
        start = next % r;
    }
}
