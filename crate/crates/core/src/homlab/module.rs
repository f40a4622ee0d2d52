use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::StructureConstantAlgebra;
use crate::field::{ExtensionField, Field};
use crate::matrix::Matrix;

/// A right module over a [`StructureConstantAlgebra`], split along the
/// idempotents: `dims[v] = dim X e_v` and `actions[i]` is the matrix of
/// `x -> x h_i` from `X e_a` to `X e_b` for `h_i : a -> b`, acting on row
/// vectors.
#[derive(Clone, Debug)]
pub struct LambdaModule<K: Field> {
    pub dims: Vec<usize>,
    pub actions: Vec<Matrix<K>>,
}

fn row_times<K: Field>(field: &K, v: &[K::Elem], m: &Matrix<K>) -> Vec<K::Elem> {
    (0..m.cols())
        .map(|j| {
            v.iter()
                .enumerate()
                .fold(field.zero(), |acc, (i, a)| field.add(&acc, &field.mul(a, m.get(i, j))))
        })
        .collect()
}

fn unit<K: Field>(field: &K, len: usize, i: usize) -> Vec<K::Elem> {
    let mut v = vec![field.zero(); len];
    v[i] = field.one();
    v
}

/// Row space in reduced echelon form.
struct Span<K: Field> {
    rows: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
    width: usize,
}

impl<K: Field> Span<K> {
    fn new(field: &K, width: usize, rows: Vec<Vec<K::Elem>>) -> Self {
        if rows.is_empty() || width == 0 {
            return Span {
                rows: Vec::new(),
                pivots: Vec::new(),
                width,
            };
        }
        let m = Matrix::from_rows(field.clone(), rows).expect("rectangular");
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Span { rows, pivots, width }
    }

    fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of a vector known to lie in the span.
    fn coords(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// `v` minus its component along the span, zero on the pivot columns.
    fn reduce(&self, field: &K, v: &[K::Elem]) -> Vec<K::Elem> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                *x = field.sub(x, &field.mul(&c, r));
            }
        }
        w
    }

    fn complement(&self) -> Vec<usize> {
        (0..self.width).filter(|j| !self.pivots.contains(j)).collect()
    }
}

impl<K: Field> LambdaModule<K> {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn zero(alg: &StructureConstantAlgebra<K>) -> Self {
        let dims = vec![0; alg.vertex_count()];
        let actions = (0..alg.dim()).map(|_| Matrix::zeros(alg.field().clone(), 0, 0)).collect();
        LambdaModule { dims, actions }
    }

    /// `P(v) = e_v Λ`, with basis `h(e_v, b, t)` at vertex `b`.
    pub fn projective(alg: &StructureConstantAlgebra<K>, v: usize) -> Self {
        let k = alg.vertex_count();
        let bases: Vec<Vec<usize>> = (0..k).map(|w| alg.hom_basis(v, w)).collect();
        let dims = bases.iter().map(Vec::len).collect();
        Self::from_basis_action(alg, dims, |i, w, r| {
            // basis vector r at vertex w is bases[w][r]; multiply by h_i
            alg.product(bases[w][r], i).map(|k| {
                let (_, target) = alg.ends(k);
                (target, bases[target].iter().position(|&x| x == k).expect("in P(v)"))
            })
        })
    }

    /// `I(v) = D(Λ e_v)`, with dual basis `δ_{h(b, e_v, t)}` at vertex `b`.
    pub fn injective(alg: &StructureConstantAlgebra<K>, v: usize) -> Self {
        let k = alg.vertex_count();
        let bases: Vec<Vec<usize>> = (0..k).map(|w| alg.hom_basis(w, v)).collect();
        let dims = bases.iter().map(Vec::len).collect();
        Self::from_basis_action(alg, dims, |i, w, r| {
            // δ_g h_i = δ_y for the unique y with h_i y = g
            let g = bases[w][r];
            let (_, c) = alg.ends(i);
            bases[c]
                .iter()
                .position(|&y| alg.product(i, y) == Some(g))
                .map(|pos| (c, pos))
        })
    }

    /// The simple top of `P(v)`.
    pub fn simple(alg: &StructureConstantAlgebra<K>, v: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        Self::from_basis_action(alg, dims, |i, w, _| (i == alg.idempotent(w)).then_some((w, 0)))
    }

    /// Builds a module where each basis element sends each basis vector to
    /// a basis vector or to zero.
    fn from_basis_action(
        alg: &StructureConstantAlgebra<K>,
        dims: Vec<usize>,
        act: impl Fn(usize, usize, usize) -> Option<(usize, usize)>,
    ) -> Self {
        let f = alg.field();
        let actions = (0..alg.dim())
            .map(|i| {
                let (a, b) = alg.ends(i);
                let mut m = Matrix::zeros(f.clone(), dims[a], dims[b]);
                for r in 0..dims[a] {
                    if let Some((w, c)) = act(i, a, r) {
                        debug_assert_eq!(w, b);
                        m.set(r, c, f.one());
                    }
                }
                m
            })
            .collect();
        LambdaModule { dims, actions }
    }

    pub fn regular(alg: &StructureConstantAlgebra<K>) -> Self {
        (0..alg.vertex_count()).fold(Self::zero(alg), |acc, v| acc.direct_sum(&Self::projective(alg, v)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        LambdaModule {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            actions: self
                .actions
                .iter()
                .zip(&other.actions)
                .map(|(a, b)| a.direct_sum(b).expect("same field"))
                .collect(),
        }
    }

    /// Checks the multiplication table and unit axioms.
    pub fn satisfies_table(&self, alg: &StructureConstantAlgebra<K>) -> bool {
        let f = alg.field();
        for v in 0..alg.vertex_count() {
            if self.actions[alg.idempotent(v)] != Matrix::identity(f.clone(), self.dims[v]) {
                return false;
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let (a, b) = alg.ends(i);
                let (c, d) = alg.ends(j);
                if b != c {
                    continue;
                }
                let lhs = self.actions[i].mul(&self.actions[j]).expect("shapes");
                let ok = match alg.product(i, j) {
                    Some(k) => lhs == self.actions[k],
                    None => lhs.is_zero(),
                };
                if !ok {
                    return false;
                }
                debug_assert!(lhs.rows() == self.dims[a] && lhs.cols() == self.dims[d]);
            }
        }
        true
    }

    /// Dimension vectors of `X rad^k` for `k = 0, 1, ...` until zero.
    pub fn radical_series(&self, alg: &StructureConstantAlgebra<K>) -> Vec<Vec<usize>> {
        let f = alg.field();
        let k = alg.vertex_count();
        let arrows = alg.arrows();
        let mut layer: Vec<Span<K>> = (0..k)
            .map(|v| Span::new(f, self.dims[v], (0..self.dims[v]).map(|i| unit(f, self.dims[v], i)).collect()))
            .collect();
        let mut out = Vec::new();
        loop {
            let dims: Vec<usize> = layer.iter().map(Span::dim).collect();
            let done = dims.iter().all(|&d| d == 0);
            out.push(dims);
            if done {
                return out;
            }
            layer = (0..k)
                .map(|w| {
                    let mut rows = Vec::new();
                    for &h in &arrows {
                        let (v, t) = alg.ends(h);
                        if t == w {
                            for r in &layer[v].rows {
                                rows.push(row_times(f, r, &self.actions[h]));
                            }
                        }
                    }
                    Span::new(f, self.dims[w], rows)
                })
                .collect();
        }
    }

    /// Top multiplicities and the projective cover map.
    ///
    /// Returns the chosen generators `(vertex, vector)` and the syzygy.
    pub fn projective_cover(&self, alg: &StructureConstantAlgebra<K>) -> (Vec<usize>, Self) {
        let f = alg.field();
        let k = alg.vertex_count();
        let arrows = alg.arrows();
        let mut gens: Vec<(usize, Vec<K::Elem>)> = Vec::new();
        for w in 0..k {
            let mut rows = Vec::new();
            for &h in &arrows {
                let (_, t) = alg.ends(h);
                if t == w {
                    rows.extend(self.actions[h].to_rows());
                }
            }
            let rad = Span::new(f, self.dims[w], rows);
            for j in rad.complement() {
                gens.push((w, unit(f, self.dims[w], j)));
            }
        }
        let mut top = vec![0; k];
        let mut cover = Self::zero(alg);
        for (v, _) in &gens {
            top[*v] += 1;
            cover = cover.direct_sum(&Self::projective(alg, *v));
        }
        // the cover map at vertex w sends h(v, w, t) of summand g to x_g h
        let maps: Vec<Matrix<K>> = (0..k)
            .map(|w| {
                let mut rows = Vec::new();
                for (v, x) in &gens {
                    for h in alg.hom_basis(*v, w) {
                        rows.push(row_times(f, x, &self.actions[h]));
                    }
                }
                if rows.is_empty() {
                    Matrix::zeros(f.clone(), 0, self.dims[w])
                } else {
                    Matrix::from_rows(f.clone(), rows).expect("rectangular")
                }
            })
            .collect();
        (top, cover.kernel_of(alg, &maps))
    }

    /// The submodule `ker(φ)` for a homomorphism given by per-vertex
    /// matrices `self.dims[v] x target.dims[v]`.
    fn kernel_of(&self, alg: &StructureConstantAlgebra<K>, maps: &[Matrix<K>]) -> Self {
        let f = alg.field();
        let spans: Vec<Span<K>> = maps
            .iter()
            .enumerate()
            .map(|(v, m)| {
                let rows = if m.cols() == 0 {
                    (0..self.dims[v]).map(|i| unit(f, self.dims[v], i)).collect()
                } else {
                    m.transpose().kernel_basis()
                };
                Span::new(f, self.dims[v], rows)
            })
            .collect();
        self.restrict(alg, &spans)
    }

    fn restrict(&self, alg: &StructureConstantAlgebra<K>, spans: &[Span<K>]) -> Self {
        let f = alg.field();
        let actions = (0..alg.dim())
            .map(|i| {
                let (a, b) = alg.ends(i);
                let rows: Vec<Vec<K::Elem>> = spans[a]
                    .rows
                    .iter()
                    .map(|r| spans[b].coords(&row_times(f, r, &self.actions[i])))
                    .collect();
                matrix_or_empty(f, rows, spans[a].dim(), spans[b].dim())
            })
            .collect();
        LambdaModule {
            dims: spans.iter().map(Span::dim).collect(),
            actions,
        }
    }

    /// The quotient by the image of `φ: Y -> self` given per vertex as
    /// `Y.dims[v] x self.dims[v]` matrices.
    fn cokernel_of(&self, alg: &StructureConstantAlgebra<K>, maps: &[Matrix<K>]) -> Self {
        let f = alg.field();
        let spans: Vec<Span<K>> = maps
            .iter()
            .enumerate()
            .map(|(v, m)| Span::new(f, self.dims[v], m.to_rows()))
            .collect();
        let comps: Vec<Vec<usize>> = spans.iter().map(Span::complement).collect();
        let actions = (0..alg.dim())
            .map(|i| {
                let (a, b) = alg.ends(i);
                let rows: Vec<Vec<K::Elem>> = comps[a]
                    .iter()
                    .map(|&j| {
                        let w = spans[b].reduce(f, self.actions[i].row(j));
                        comps[b].iter().map(|&c| w[c].clone()).collect()
                    })
                    .collect();
                matrix_or_empty(f, rows, comps[a].len(), comps[b].len())
            })
            .collect();
        LambdaModule {
            dims: comps.iter().map(Vec::len).collect(),
            actions,
        }
    }

    /// Injective envelope multiplicities and the cosyzygy.
    pub fn injective_envelope(&self, alg: &StructureConstantAlgebra<K>) -> (Vec<usize>, Self) {
        let f = alg.field();
        let k = alg.vertex_count();
        let arrows = alg.arrows();
        // functionals λ on X e_v dual to a basis of the socle at v
        let mut duals: Vec<(usize, usize)> = Vec::new();
        for v in 0..k {
            let outgoing: Vec<usize> = arrows.iter().copied().filter(|&h| alg.ends(h).0 == v).collect();
            let soc_rows = if outgoing.is_empty() || self.dims[v] == 0 {
                (0..self.dims[v]).map(|i| unit(f, self.dims[v], i)).collect()
            } else {
                let mut cat = self.actions[outgoing[0]].clone();
                for &h in &outgoing[1..] {
                    cat = hcat(&cat, &self.actions[h]);
                }
                if cat.cols() == 0 {
                    (0..self.dims[v]).map(|i| unit(f, self.dims[v], i)).collect()
                } else {
                    cat.transpose().kernel_basis()
                }
            };
            let soc = Span::new(f, self.dims[v], soc_rows);
            duals.extend(soc.pivots.iter().map(|&p| (v, p)));
        }
        let mut top = vec![0; k];
        let mut envelope = Self::zero(alg);
        for (v, _) in &duals {
            top[*v] += 1;
            envelope = envelope.direct_sum(&Self::injective(alg, *v));
        }
        // x in X e_w maps to sum_t λ(x h(w, v, t)) δ_{h(w, v, t)}
        let maps: Vec<Matrix<K>> = (0..k)
            .map(|w| {
                let mut m = Matrix::zeros(f.clone(), self.dims[w], envelope.dims[w]);
                let mut col = 0;
                for &(v, p) in &duals {
                    for h in alg.hom_basis(w, v) {
                        for r in 0..self.dims[w] {
                            m.set(r, col, self.actions[h].get(r, p).clone());
                        }
                        col += 1;
                    }
                }
                m
            })
            .collect();
        (top, envelope.cokernel_of(alg, &maps))
    }
}

fn hcat<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    let mut m = Matrix::zeros(a.field().clone(), a.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
        for j in 0..b.cols() {
            m.set(i, a.cols() + j, b.get(i, j).clone());
        }
    }
    m
}

fn matrix_or_empty<K: Field>(f: &K, rows: Vec<Vec<K::Elem>>, r: usize, c: usize) -> Matrix<K> {
    if r == 0 || c == 0 {
        Matrix::zeros(f.clone(), r, c)
    } else {
        Matrix::from_rows(f.clone(), rows).expect("rectangular")
    }
}

/// A homomorphism as one matrix per vertex.
pub type HomMap<K> = Vec<Matrix<K>>;

/// Basis of `Hom_Λ(X, Y)` from the intertwining equations on the arrows.
pub fn hom_space<K: Field>(
    alg: &StructureConstantAlgebra<K>,
    x: &LambdaModule<K>,
    y: &LambdaModule<K>,
) -> Vec<HomMap<K>> {
    let f = alg.field();
    let k = alg.vertex_count();
    let mut offset = vec![0; k + 1];
    for v in 0..k {
        offset[v + 1] = offset[v] + x.dims[v] * y.dims[v];
    }
    let unknowns = offset[k];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * y.dims[v] + j;
    let mut eqs: Vec<Vec<K::Elem>> = Vec::new();
    for h in alg.arrows() {
        let (v, w) = alg.ends(h);
        let (ax, ay) = (&x.actions[h], &y.actions[h]);
        // (A^X φ_w - φ_v A^Y)_{ij} = 0
        for i in 0..x.dims[v] {
            for j in 0..y.dims[w] {
                let mut row = vec![f.zero(); unknowns];
                for kk in 0..x.dims[w] {
                    let c = &mut row[var(w, kk, j)];
                    *c = f.add(c, ax.get(i, kk));
                }
                for l in 0..y.dims[v] {
                    let c = &mut row[var(v, i, l)];
                    *c = f.sub(c, ay.get(l, j));
                }
                eqs.push(row);
            }
        }
    }
    let kernel = if eqs.is_empty() {
        (0..unknowns).map(|i| unit(f, unknowns, i)).collect()
    } else {
        Matrix::from_rows(f.clone(), eqs).expect("rectangular").kernel_basis()
    };
    kernel
        .into_iter()
        .map(|sol| {
            (0..k)
                .map(|v| {
                    let data = sol[offset[v]..offset[v + 1]].to_vec();
                    Matrix::new(f.clone(), x.dims[v], y.dims[v], data).expect("sized")
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Fingerprints agree but no isomorphism was found.
    Unknown,
}

/// Random combinations tried before giving up.
pub const ISO_DRAWS: usize = 64;

fn is_invertible<K: Field>(m: &[Matrix<K>]) -> bool {
    m.iter().all(|b| b.rows() == b.cols() && b.rank() == b.rows())
}

/// Decides `X ≅ Y`, never claiming a wrong verdict.
///
/// Dimension vectors, radical series and the four Hom dimensions are
/// compared first. Then the Hom basis is scanned, followed by random
/// combinations with coefficients from a set of size at least `2^16` (an
/// extension of `K` when `K` is smaller), which by the Noether–Deuring
/// theorem decides isomorphism over `K`.
pub fn isomorphic<K: Field>(
    alg: &StructureConstantAlgebra<K>,
    x: &LambdaModule<K>,
    y: &LambdaModule<K>,
    seed: u64,
) -> IsoVerdict {
    if x.dims != y.dims {
        return IsoVerdict::NotIsomorphic;
    }
    if x.is_zero() {
        return IsoVerdict::Isomorphic;
    }
    if x.radical_series(alg) != y.radical_series(alg) {
        return IsoVerdict::NotIsomorphic;
    }
    let basis = hom_space(alg, x, y);
    let dims = [
        basis.len(),
        hom_space(alg, y, x).len(),
        hom_space(alg, x, x).len(),
        hom_space(alg, y, y).len(),
    ];
    if dims.iter().any(|&d| d != dims[0]) || basis.is_empty() {
        return IsoVerdict::NotIsomorphic;
    }
    if basis.iter().any(|m| is_invertible(m)) {
        return IsoVerdict::Isomorphic;
    }
    let f = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let found = match f.order() {
        Some(q) if q < 1 << 16 => {
            let mut m = 1usize;
            while q.pow(m as u32) < 1 << 16 {
                m += 1;
            }
            let l = ExtensionField::random_extension(f.clone(), m, 'z', &mut rng).expect("finite base");
            let lifted: Vec<HomMap<ExtensionField<K>>> = basis
                .iter()
                .map(|hm| hm.iter().map(|b| lift(&l, b)).collect())
                .collect();
            random_search(&l, &lifted, &mut rng, |r| l.random_elem(r))
        }
        Some(_) => random_search(f, &basis, &mut rng, |r| f.random_elem(r)),
        None => random_search(f, &basis, &mut rng, |r| f.from_i64(r.random_range(-(1 << 15)..1 << 15))),
    };
    if found {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::Unknown
    }
}

fn lift<K: Field>(l: &ExtensionField<K>, m: &Matrix<K>) -> Matrix<ExtensionField<K>> {
    let data = m.data().iter().map(|a| l.embed(a)).collect();
    Matrix::new(l.clone(), m.rows(), m.cols(), data).expect("sized")
}

fn random_search<L: Field>(
    l: &L,
    basis: &[HomMap<L>],
    rng: &mut ChaCha8Rng,
    mut coeff: impl FnMut(&mut ChaCha8Rng) -> L::Elem,
) -> bool {
    for _ in 0..ISO_DRAWS {
        let cs: Vec<L::Elem> = basis.iter().map(|_| coeff(rng)).collect();
        let combo: HomMap<L> = (0..basis[0].len())
            .map(|v| {
                basis
                    .iter()
                    .zip(&cs)
                    .fold(Matrix::zeros(l.clone(), basis[0][v].rows(), basis[0][v].cols()), |acc, (b, c)| {
                        acc.add(&b[v].scale(c)).expect("shapes")
                    })
            })
            .collect();
        if is_invertible(&combo) {
            return true;
        }
    }
    false
}
