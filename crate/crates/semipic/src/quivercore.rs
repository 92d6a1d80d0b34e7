//! Quivers, exchange matrices, the Euler-Ringel pairing, null roots, and
//! the Fomin-Zelevinsky / transport-matrix calculus.
//!
//! Conventions fixed here once and used everywhere:
//!
//! - the Euler pairing is `<d, e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j`,
//!   so `<d, e> = d^T E e` with `E = I - C`, `C_{ij}` the arrow count `i -> j`;
//! - `dim P(i)_j` is the number of paths from `i` to `j`, i.e. row `i` of
//!   `E^{-1}`, which makes `g(X) . dim Y` realize the pairing;
//! - consequently `g_from_dim(d) = E^T d` and the Coxeter action on dimension
//!   vectors of non-projectives is `dim tau M = -E^{-1} E^T dim M`.

use crate::exactgeom::{primitive_integer, rat, RatMatrix, RatVec};
use crate::{Error, Result};
use num_traits::Signed;

/// A finite quiver on vertices `1..=n` with a multiset of arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub n: usize,
    /// Arrows as (source, target), 1-based.
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(n: usize, mut arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        arrows.sort();
        for &(s, t) in &arrows {
            if s == 0 || t == 0 || s > n || t > n {
                return Err(Error::QuiverParse(format!(
                    "arrow {}>{} out of range 1..={}",
                    s, t, n
                )));
            }
            if s == t {
                return Err(Error::QuiverParse(format!("loop at vertex {}", s)));
            }
        }
        let q = Quiver { n, arrows };
        if !q.is_connected() {
            return Err(Error::QuiverParse("quiver is not connected".into()));
        }
        Ok(q)
    }

    /// Parse the text format `n; i>j, i>j, ...`, order-insensitive.
    pub fn parse(text: &str) -> Result<Quiver> {
        let (head, tail) = text
            .split_once(';')
            .ok_or_else(|| Error::QuiverParse("missing ';' separator".into()))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::QuiverParse(format!("bad vertex count {:?}", head.trim())))?;
        let mut arrows = Vec::new();
        for part in tail.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (s, t) = part
                .split_once('>')
                .ok_or_else(|| Error::QuiverParse(format!("bad arrow {:?}", part)))?;
            let s: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::QuiverParse(format!("bad source in {:?}", part)))?;
            let t: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::QuiverParse(format!("bad target in {:?}", part)))?;
            arrows.push((s, t));
        }
        Quiver::new(n, arrows)
    }

    pub fn to_text(&self) -> String {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|&(s, t)| format!("{}>{}", s, t))
            .collect();
        format!("{}; {}", self.n, arrows.join(", "))
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in &self.arrows {
                for (a, b) in [(s, t), (t, s)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        (1..=self.n).all(|v| seen[v])
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut queue: Vec<usize> = (1..=self.n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        removed == self.n
    }

    /// Arrow-count matrix `C_{ij} = #arrows(i -> j)`.
    pub fn arrow_counts(&self) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0i64; self.n]; self.n];
        for &(s, t) in &self.arrows {
            c[s - 1][t - 1] += 1;
        }
        c
    }
}

/// Skew-symmetric exchange matrix of a quiver without loops or 2-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    pub n: usize,
    pub b: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>) -> ExchangeMatrix {
        let n = b.len();
        for i in 0..n {
            debug_assert_eq!(b[i].len(), n);
            for j in 0..n {
                debug_assert_eq!(b[i][j], -b[j][i], "exchange matrix must be skew-symmetric");
            }
        }
        ExchangeMatrix { n, b }
    }

    pub fn from_quiver(q: &Quiver) -> ExchangeMatrix {
        let c = q.arrow_counts();
        let n = q.n;
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = c[i][j] - c[j][i];
            }
        }
        ExchangeMatrix { n, b }
    }

    /// The quiver determined by the matrix (no 2-cycles by skew-symmetry).
    pub fn to_quiver(&self) -> Result<Quiver> {
        let mut arrows = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for _ in 0..self.b[i][j].max(0) {
                    arrows.push((i + 1, j + 1));
                }
            }
        }
        Quiver::new(self.n, arrows)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.b[i][j] == -self.b[j][i]))
    }
}

/// Fomin-Zelevinsky mutation of `b` at vertex `k` (1-based).
pub fn fz_mutate(b: &ExchangeMatrix, k: usize) -> ExchangeMatrix {
    let n = b.n;
    let k = k - 1;
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b.b[i][j]
            } else {
                b.b[i][j] + (b.b[i][k].abs() * b.b[k][j] + b.b[i][k] * b.b[k][j].abs()) / 2
            };
        }
    }
    ExchangeMatrix::new(out)
}

/// The transport matrices `A_k^+` and `A_k^-` of an exchange matrix.
pub fn a_matrices(b: &ExchangeMatrix, k: usize) -> (RatMatrix, RatMatrix) {
    let n = b.n;
    let k = k - 1;
    let mut plus = RatMatrix::zero(n, n);
    let mut minus = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let (p, m) = if i == j {
                if i == k {
                    (-1, -1)
                } else {
                    (1, 1)
                }
            } else if i == k {
                (b.b[i][j].max(0), (-b.b[i][j]).max(0))
            } else {
                (0, 0)
            };
            plus.set(i, j, rat(p));
            minus.set(i, j, rat(m));
        }
    }
    (plus, minus)
}

/// A tame hereditary path algebra: the quiver together with its Euler data
/// and null root.
#[derive(Clone, Debug)]
pub struct HereditaryModel {
    pub quiver: Quiver,
    /// Euler matrix `E` with `<d, e> = d^T E e`.
    pub euler: RatMatrix,
    /// `E^{-1}`; row `i` is `dim P(i)`.
    pub euler_inv: RatMatrix,
    pub proj_dims: Vec<RatVec>,
    /// The null root: primitive positive generator of the radical of the
    /// symmetrized Euler form.
    pub eta: RatVec,
    /// g-vector of the null root.
    pub g_eta: RatVec,
}

/// Build the hereditary model of an acyclic Euclidean quiver.
pub fn build_model(q: &Quiver) -> Result<HereditaryModel> {
    if !q.is_acyclic() {
        return Err(Error::NotEuclidean("quiver has an oriented cycle".into()));
    }
    let n = q.n;
    let c = q.arrow_counts();
    let mut euler = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if c[i][j] != 0 {
                let diag = if i == j { 1 } else { 0 };
                euler.set(i, j, rat(diag - c[i][j]));
            }
        }
    }
    let euler_inv = euler
        .inverse()
        .expect("acyclic Euler matrix is unipotent up to ordering");
    let proj_dims: Vec<RatVec> = euler_inv.rows.clone();
    // radical of the symmetrized Euler form
    let mut sym = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            sym.set(i, j, euler.at(i, j) + euler.at(j, i));
        }
    }
    let kernel = sym.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::NotEuclidean(format!(
            "radical of the symmetrized Euler form has rank {}",
            kernel.len()
        )));
    }
    let mut eta = primitive_integer(&kernel[0]).expect("kernel basis vector is nonzero");
    if eta.coords.iter().all(|c| c.is_negative()) {
        eta = -&eta;
    }
    if !eta.coords.iter().all(|c| c.is_positive()) {
        return Err(Error::NotEuclidean(
            "radical generator is not a positive vector".into(),
        ));
    }
    let g_eta = euler.transpose().mul_vec(&eta);
    Ok(HereditaryModel {
        quiver: q.clone(),
        euler,
        euler_inv,
        proj_dims,
        eta,
        g_eta,
    })
}

impl HereditaryModel {
    pub fn n(&self) -> usize {
        self.quiver.n
    }

    /// Euler-Ringel pairing `<d, e>`.
    pub fn pairing(&self, d: &RatVec, e: &RatVec) -> crate::exactgeom::Rational {
        self.euler.vec_mul(d).dot(e)
    }

    /// The g-vector of any module with dimension vector `d`: the unique `g`
    /// with `sum_i g_i dim P(i) = d`.
    pub fn g_from_dim(&self, d: &RatVec) -> RatVec {
        self.euler.transpose().mul_vec(d)
    }

    /// Coxeter matrix: `dim tau M = coxeter() . dim M` for non-projective
    /// indecomposables.
    pub fn coxeter(&self) -> RatMatrix {
        let et = self.euler.transpose();
        let mut out = self.euler_inv.mul_mat(&et);
        for row in out.rows.iter_mut() {
            *row = -&*row;
        }
        out
    }

    pub fn classify_dim(&self, d: &RatVec) -> Result<ModuleClass> {
        if d.is_zero() {
            return Err(Error::Precondition("zero dimension vector".into()));
        }
        let v = self.g_eta.dot(d);
        Ok(if v.is_negative() {
            ModuleClass::Preprojective
        } else if v.is_positive() {
            ModuleClass::Preinjective
        } else {
            ModuleClass::Regular
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleClass {
    Preprojective,
    Regular,
    Preinjective,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn two_tube_quiver() -> Quiver {
        Quiver::parse("4; 1>2, 2>3, 4>3, 1>4").unwrap()
    }

    #[test]
    fn parse_round_trip_and_order_insensitivity() {
        let a = Quiver::parse("4; 1>2,2>3,4>3,1>4").unwrap();
        let b = Quiver::parse("4; 4>3, 1>4, 2>3, 1>2").unwrap();
        assert_eq!(a, b);
        assert_eq!(Quiver::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(Quiver::parse("2; 1>1").is_err());
        assert!(Quiver::parse("3; 1>2").is_err()); // disconnected
        assert!(Quiver::parse("2; 1>5").is_err());
        assert!(Quiver::parse("nope; 1>2").is_err());
    }

    #[test]
    fn model_of_two_tube_quiver_matches_null_data() {
        let m = build_model(&two_tube_quiver()).unwrap();
        assert_eq!(m.eta, RatVec::from_ints(&[1, 1, 1, 1]));
        assert_eq!(m.g_eta, RatVec::from_ints(&[1, 0, -1, 0]));
    }

    #[test]
    fn model_of_a2_tilde() {
        let m = build_model(&Quiver::parse("3; 2>1, 3>2, 3>1").unwrap()).unwrap();
        assert_eq!(m.eta, RatVec::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn dynkin_is_rejected() {
        let q = Quiver::parse("2; 1>2").unwrap();
        assert!(matches!(build_model(&q), Err(Error::NotEuclidean(_))));
    }

    #[test]
    fn g_of_projective_is_unit_vector() {
        let m = build_model(&two_tube_quiver()).unwrap();
        for i in 0..4 {
            assert_eq!(m.g_from_dim(&m.proj_dims[i]), RatVec::unit(4, i));
        }
        assert_eq!(m.g_from_dim(&m.eta), RatVec::from_ints(&[1, 0, -1, 0]));
        assert_eq!(m.g_from_dim(&RatVec::zero(4)), RatVec::zero(4));
    }

    #[test]
    fn g_from_dim_is_linear() {
        let m = build_model(&two_tube_quiver()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let d1 = RatVec::from_ints(&std::array::from_fn::<i64, 4, _>(|_| {
                rng.gen_range(-5..=5)
            }));
            let d2 = RatVec::from_ints(&std::array::from_fn::<i64, 4, _>(|_| {
                rng.gen_range(-5..=5)
            }));
            assert_eq!(
                m.g_from_dim(&(&d1 + &d2)),
                &m.g_from_dim(&d1) + &m.g_from_dim(&d2)
            );
        }
    }

    #[test]
    fn classification_examples() {
        let m = build_model(&two_tube_quiver()).unwrap();
        assert_eq!(m.classify_dim(&m.eta).unwrap(), ModuleClass::Regular);
        assert_eq!(
            m.classify_dim(&RatVec::from_ints(&[0, 0, 0, 1])).unwrap(),
            ModuleClass::Regular
        );
        assert_eq!(
            m.classify_dim(&m.proj_dims[2]).unwrap(),
            ModuleClass::Preprojective
        );
        assert!(m.classify_dim(&RatVec::zero(4)).is_err());
    }

    #[test]
    fn proj_dims_form_a_basis() {
        for text in ["4; 1>2,2>3,4>3,1>4", "4; 1>2,2>3,3>4,1>4", "3; 2>1,3>2,3>1"] {
            let m = build_model(&Quiver::parse(text).unwrap()).unwrap();
            assert_eq!(RatMatrix::from_rows(m.proj_dims.clone()).rank(), m.n());
        }
    }

    fn random_skew(rng: &mut impl Rng, n: usize) -> ExchangeMatrix {
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = rng.gen_range(-2..=2i64);
                b[i][j] = v;
                b[j][i] = -v;
            }
        }
        ExchangeMatrix::new(b)
    }

    #[test]
    fn mutation_is_an_involution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let b = random_skew(&mut rng, 4);
            let k = rng.gen_range(1..=4usize);
            let back = fz_mutate(&fz_mutate(&b, k), k);
            assert_eq!(back, b);
            assert!(fz_mutate(&b, k).is_skew_symmetric());
        }
    }

    #[test]
    fn mutation_at_two_matches_figure_pair() {
        let q = Quiver::parse("4; 1>2, 2>3, 3>4, 1>4").unwrap();
        let b = ExchangeMatrix::from_quiver(&q);
        let m = fz_mutate(&b, 2);
        let expected =
            ExchangeMatrix::from_quiver(&Quiver::parse("4; 1>3, 3>4, 1>4, 2>1, 3>2").unwrap());
        assert_eq!(m, expected);
    }

    #[test]
    fn mutation_at_sink_flips_its_row_and_column() {
        let q = Quiver::parse("3; 1>2, 3>2, 1>3").unwrap();
        let b = ExchangeMatrix::from_quiver(&q);
        let m = fz_mutate(&b, 2); // 2 is a sink
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == 1 || j == 1 {
                    -b.b[i][j]
                } else {
                    b.b[i][j]
                };
                assert_eq!(m.b[i][j], expect);
            }
        }
    }

    #[test]
    fn a_matrices_are_involutions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..60 {
            let b = random_skew(&mut rng, 4);
            for k in 1..=4 {
                let (p, m) = a_matrices(&b, k);
                assert_eq!(p.mul_mat(&p), RatMatrix::identity(4));
                assert_eq!(m.mul_mat(&m), RatMatrix::identity(4));
            }
        }
    }

    #[test]
    fn a_matrix_of_isolated_vertex_is_sign_flip() {
        let b = ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]]);
        let (p, m) = a_matrices(&b, 3);
        let mut expect = RatMatrix::identity(3);
        expect.set(2, 2, rat(-1));
        assert_eq!(p, expect);
        assert_eq!(m, expect);
    }

    // Independent re-derivation of the entry formula, written against the
    // displayed cases rather than the loop in `a_matrices`.
    fn a_plus_oracle(b: &ExchangeMatrix, k: usize) -> RatMatrix {
        let n = b.n;
        let k = k - 1;
        let mut out = RatMatrix::identity(n);
        out.set(k, k, rat(-1));
        for j in 0..n {
            if j != k && b.b[k][j] > 0 {
                out.set(k, j, rat(b.b[k][j]));
            }
        }
        out
    }

    #[test]
    fn explicit_a2_plus_checked_entrywise() {
        let q = Quiver::parse("4; 1>2, 2>3, 3>4, 1>4").unwrap();
        let b = ExchangeMatrix::from_quiver(&q);
        let (p, _) = a_matrices(&b, 2);
        assert_eq!(p, a_plus_oracle(&b, 2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let b = random_skew(&mut rng, 5);
            for k in 1..=5 {
                assert_eq!(a_matrices(&b, k).0, a_plus_oracle(&b, k));
            }
        }
    }

    #[test]
    fn fz_preserves_edge_counts_at_k() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let b = random_skew(&mut rng, 4);
            let k = rng.gen_range(1..=4usize);
            let m = fz_mutate(&b, k);
            for i in 0..4 {
                assert_eq!(m.b[i][k - 1].abs(), b.b[i][k - 1].abs());
            }
        }
    }
}
