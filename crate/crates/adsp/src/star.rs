//! The star-shaped quiver and its Kac–Moody root system.
//!
//! A tuple of conjugacy classes turns into a star: a center vertex `0`
//! carrying `n`, and one arm per class carrying the rank sequence of that
//! class.  The symmetric generalized Cartan matrix of the star (2 on the
//! diagonal, −1 per edge) defines reflections, a defect function `p`, real
//! and imaginary roots, and the sets `R⁺_λ` the decision procedure works
//! with.  Everything here is exact integer / rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::class::XiSequence;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Dimension vectors are plain integer vectors indexed by quiver vertex
/// (center first, then the arms in order).  Components may go negative
/// under reflection; most operations expect nonnegative input and say so.
pub type DimVector = Vec<i64>;

/// A weight attaches a rational number to every vertex.
pub type Weight = Vec<Rat>;

/// Star-shaped quiver: center vertex `0` plus `arm_lengths[i]` vertices on
/// arm `i`.  Vertex ids are `0` for the center and consecutive ranges for
/// the arms, so the id order is the fixed total order used for tie-breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarQuiver {
    arm_lengths: Vec<usize>,
    offsets: Vec<usize>, // id of vertex [i,1], per arm (even for empty arms)
    adjacency: Vec<Vec<usize>>,
}

impl StarQuiver {
    pub fn new(arm_lengths: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(arm_lengths.len());
        let mut next = 1;
        for &len in &arm_lengths {
            offsets.push(next);
            next += len;
        }
        let nv = next;
        let mut adjacency = vec![Vec::new(); nv];
        for (i, &len) in arm_lengths.iter().enumerate() {
            for j in 1..=len {
                let v = offsets[i] + (j - 1);
                let prev = if j == 1 { 0 } else { v - 1 };
                adjacency[prev].push(v);
                adjacency[v].push(prev);
            }
        }
        StarQuiver {
            arm_lengths,
            offsets,
            adjacency,
        }
    }

    pub fn k(&self) -> usize {
        self.arm_lengths.len()
    }

    pub fn arm_lengths(&self) -> &[usize] {
        &self.arm_lengths
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    /// Vertex id of `[i,j]` (arm `i` is 0-based here, `j` is 1-based).
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.arm_lengths[i]);
        self.offsets[i] + (j - 1)
    }

    /// Inverse of [`StarQuiver::vertex`]: `None` for the center.
    pub fn arm_position(&self, v: usize) -> Option<(usize, usize)> {
        if v == 0 {
            return None;
        }
        let i = match self.offsets.partition_point(|&o| o <= v) {
            0 => unreachable!("vertex ids start at 1"),
            p => p - 1,
        };
        Some((i, v - self.offsets[i] + 1))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Printable name of a vertex: `0` or `[i,j]` with 1-based arm index.
    pub fn vertex_name(&self, v: usize) -> String {
        match self.arm_position(v) {
            None => "0".to_string(),
            Some((i, j)) => format!("[{},{}]", i + 1, j),
        }
    }
}

/// Root classification of a nonnegative vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClass {
    NotRoot,
    Real,
    Imaginary,
}

/// `(Cβ)_v = 2β_v − Σ_{w ~ v} β_w`.
pub fn cartan_apply(q: &StarQuiver, beta: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(q.num_vertices());
    for v in 0..q.num_vertices() {
        let mut x = 2 * beta[v];
        for &w in q.neighbors(v) {
            x -= beta[w];
        }
        out.push(x);
    }
    out
}

/// Defect `p(β) = 1 − ½ βᵀCβ`.  The bilinear form is even on integer
/// vectors, so this is an exact integer.
pub fn defect_p(q: &StarQuiver, beta: &[i64]) -> i64 {
    let cb = cartan_apply(q, beta);
    let form: i64 = beta.iter().zip(&cb).map(|(b, c)| b * c).sum();
    debug_assert!(form % 2 == 0);
    1 - form / 2
}

/// Reflection `s_v(β) = β − (Cβ)_v ε_v`; only component `v` changes.
pub fn reflect(q: &StarQuiver, v: usize, beta: &[i64]) -> DimVector {
    let mut out = beta.to_vec();
    let mut c = 2 * beta[v];
    for &w in q.neighbors(v) {
        c -= beta[w];
    }
    out[v] -= c;
    out
}

/// Dual reflection on weights: `r_v(λ)_w = λ_w − C_{wv} λ_v`, so that
/// `r_v(λ) · s_v(β) = λ · β` for every `β`.
pub fn coreflect(q: &StarQuiver, v: usize, lambda: &[Rat]) -> Weight {
    let mut out = lambda.to_vec();
    out[v] = -&lambda[v];
    for &w in q.neighbors(v) {
        out[w] = &out[w] + &lambda[v];
    }
    out
}

/// `λ · β = Σ λ_v β_v`.
pub fn pairing(lambda: &[Rat], beta: &[i64]) -> Rat {
    let mut acc = Rat::zero();
    for (l, b) in lambda.iter().zip(beta) {
        acc += &(l * &Rat::from_int(*b));
    }
    acc
}

/// Is the support of `β` (vertices with `β_v ≠ 0`) connected in the star?
pub fn support_connected(q: &StarQuiver, beta: &[i64]) -> bool {
    let Some(start) = beta.iter().position(|&b| b != 0) else {
        return false; // empty support
    };
    let nv = q.num_vertices();
    let mut seen = vec![false; nv];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in q.neighbors(v) {
            if beta[w] != 0 && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == beta.iter().filter(|&&b| b != 0).count()
}

/// Fundamental region test: `β ≥ 0`, `β ≠ 0`, connected support, and
/// `(Cβ)_v ≤ 0` for every vertex.  (Off-support components of `Cβ` are
/// automatically ≤ 0 for nonnegative `β`.)
pub fn fundamental_region(q: &StarQuiver, beta: &[i64]) -> bool {
    debug_assert!(beta.iter().all(|&b| b >= 0));
    if beta.iter().all(|&b| b == 0) {
        return false;
    }
    if !support_connected(q, beta) {
        return false;
    }
    cartan_apply(q, beta).iter().all(|&c| c <= 0)
}

/// If `β` is a coordinate vector `ε_v`, return `v`.
pub fn coordinate_vertex(beta: &[i64]) -> Option<usize> {
    let mut found = None;
    for (v, &b) in beta.iter().enumerate() {
        match b {
            0 => {}
            1 if found.is_none() => found = Some(v),
            _ => return None,
        }
    }
    found
}

/// Classify a nonnegative vector as a real root, an imaginary root, or not
/// a root at all.
///
/// Reduction loop: a coordinate vector is real; an element of the
/// fundamental region is imaginary; otherwise reflect at the least vertex
/// `v` with `β_v > 0` and `(Cβ)_v > 0`, giving a strictly smaller positive
/// vector, and repeat.  If no such vertex exists, or the reflection goes
/// negative, the vector is not a root.
pub fn classify_root(q: &StarQuiver, beta: &[i64]) -> RootClass {
    let mut scratch = ClassifyScratch::new(q.num_vertices());
    classify_root_with(q, beta, &mut scratch)
}

/// Reusable buffers for [`classify_root_with`]; the box enumeration calls
/// the classifier millions of times and must not allocate per call.
pub struct ClassifyScratch {
    beta: Vec<i64>,
    cb: Vec<i64>,
    seen: Vec<bool>,
    stack: Vec<usize>,
}

impl ClassifyScratch {
    pub fn new(nv: usize) -> Self {
        ClassifyScratch {
            beta: vec![0; nv],
            cb: vec![0; nv],
            seen: vec![false; nv],
            stack: Vec::with_capacity(nv),
        }
    }

    fn connected(&mut self, q: &StarQuiver) -> bool {
        let Some(start) = self.beta.iter().position(|&b| b != 0) else {
            return false;
        };
        self.seen.iter_mut().for_each(|s| *s = false);
        self.stack.clear();
        self.stack.push(start);
        self.seen[start] = true;
        let mut count = 1;
        while let Some(v) = self.stack.pop() {
            for &w in q.neighbors(v) {
                if self.beta[w] != 0 && !self.seen[w] {
                    self.seen[w] = true;
                    count += 1;
                    self.stack.push(w);
                }
            }
        }
        count == self.beta.iter().filter(|&&b| b != 0).count()
    }
}

pub fn classify_root_with(q: &StarQuiver, beta0: &[i64], s: &mut ClassifyScratch) -> RootClass {
    debug_assert!(beta0.iter().all(|&b| b >= 0));
    if beta0.iter().all(|&b| b == 0) {
        return RootClass::NotRoot;
    }
    let nv = q.num_vertices();
    s.beta.copy_from_slice(beta0);
    for v in 0..nv {
        let mut c = 2 * s.beta[v];
        for &w in q.neighbors(v) {
            c -= s.beta[w];
        }
        s.cb[v] = c;
    }
    loop {
        if coordinate_vertex(&s.beta).is_some() {
            return RootClass::Real;
        }
        // fundamental region: Cβ ≤ 0 everywhere plus connected support
        if s.cb.iter().all(|&c| c <= 0) {
            if s.connected(q) {
                return RootClass::Imaginary;
            }
            return RootClass::NotRoot;
        }
        let Some(v) = (0..nv).find(|&v| s.beta[v] > 0 && s.cb[v] > 0) else {
            return RootClass::NotRoot;
        };
        let c = s.cb[v];
        let b = s.beta[v] - c;
        if b < 0 {
            return RootClass::NotRoot;
        }
        s.beta[v] = b;
        // incremental update of Cβ under β_v -= c
        s.cb[v] -= 2 * c;
        for &w in q.neighbors(v) {
            s.cb[w] += c;
        }
    }
}

/// Mixed-radix indexing of the lattice box `[0, α]`, center coordinate
/// outermost (most significant digit).
pub struct BoxIndexer {
    radices: Vec<i64>, // α_v + 1 per vertex
    strides: Vec<usize>,
    size: usize,
}

impl BoxIndexer {
    /// `None` when the box has more than `cap` points.
    pub fn new(alpha: &[i64], cap: u64) -> Option<Self> {
        debug_assert!(alpha.iter().all(|&a| a >= 0));
        let mut size: u128 = 1;
        for &a in alpha {
            size *= a as u128 + 1;
            if size > cap as u128 {
                return None;
            }
        }
        let nv = alpha.len();
        let mut strides = vec![0usize; nv];
        let mut s = 1usize;
        for v in (0..nv).rev() {
            strides[v] = s;
            s *= alpha[v] as usize + 1;
        }
        Some(BoxIndexer {
            radices: alpha.iter().map(|&a| a + 1).collect(),
            strides,
            size: size as usize,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Linear index of a point of the box.  For `β ≤ γ` componentwise the
    /// identity `index(γ) − index(β) = index(γ − β)` holds exactly, which
    /// is what the decomposition DP relies on.
    pub fn index(&self, beta: &[i64]) -> usize {
        beta.iter()
            .zip(&self.strides)
            .map(|(&b, &s)| b as usize * s)
            .sum()
    }

    /// Decode a linear index back into a point.
    pub fn point(&self, mut idx: usize) -> DimVector {
        let mut out = vec![0i64; self.radices.len()];
        for v in 0..self.radices.len() {
            out[v] = (idx / self.strides[v]) as i64;
            idx %= self.strides[v];
        }
        out
    }

    /// Iterate the whole box in ascending index order.
    pub fn for_each(&self, mut f: impl FnMut(usize, &[i64])) {
        let nv = self.radices.len();
        let mut digits = vec![0i64; nv];
        let mut idx = 0usize;
        loop {
            f(idx, &digits);
            // odometer increment, least significant digit last in id order
            let mut v = nv;
            loop {
                if v == 0 {
                    return;
                }
                v -= 1;
                if digits[v] + 1 < self.radices[v] {
                    digits[v] += 1;
                    idx += self.strides[v];
                    break;
                }
                idx -= digits[v] as usize * self.strides[v];
                digits[v] = 0;
            }
        }
    }
}

/// Weight with denominators cleared, for fast exact `λ·β = 0` tests during
/// enumeration.  Falls back to big integers when the cleared values do not
/// fit comfortably in machine words.
pub enum ClearedWeight {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl ClearedWeight {
    pub fn new(lambda: &[Rat]) -> Self {
        let mut denom = BigInt::one();
        for l in lambda {
            let d = l.denom();
            denom = &denom / denom.gcd(d) * d;
        }
        let ints: Vec<BigInt> = lambda
            .iter()
            .map(|l| l.numer() * (&denom / l.denom()))
            .collect();
        let small_ok = ints.iter().all(|x| x.abs() <= BigInt::from(i32::MAX));
        if small_ok {
            ClearedWeight::Small(ints.iter().map(|x| i64::try_from(x).unwrap()).collect())
        } else {
            ClearedWeight::Big(ints)
        }
    }

    pub fn dot_is_zero(&self, beta: &[i64]) -> bool {
        match self {
            ClearedWeight::Small(ints) => {
                let mut acc: i128 = 0;
                for (l, b) in ints.iter().zip(beta) {
                    acc += *l as i128 * *b as i128;
                }
                acc == 0
            }
            ClearedWeight::Big(ints) => {
                let mut acc = BigInt::zero();
                for (l, b) in ints.iter().zip(beta) {
                    acc += l * BigInt::from(*b);
                }
                acc.is_zero()
            }
        }
    }
}

/// All positive roots `β` in the box `0 < β ≤ α` with `λ·β = 0`, in
/// ascending box-index order.  Errors when the box exceeds `box_cap`.
pub fn enumerate_r_lambda(
    q: &StarQuiver,
    alpha: &[i64],
    lambda: &[Rat],
    box_cap: u64,
) -> Result<Vec<DimVector>> {
    if alpha.iter().any(|&a| a < 0) {
        return Err(Error::invalid("enumerate_r_lambda requires a nonnegative bound"));
    }
    let indexer = BoxIndexer::new(alpha, box_cap).ok_or_else(|| {
        Error::resource(format!(
            "lattice box over alpha has more than {box_cap} points (raise --box-cap to proceed)"
        ))
    })?;
    let cleared = ClearedWeight::new(lambda);
    let mut scratch = ClassifyScratch::new(q.num_vertices());
    let mut out = Vec::new();
    indexer.for_each(|_, beta| {
        if beta.iter().all(|&b| b == 0) {
            return;
        }
        if !cleared.dot_is_zero(beta) {
            return;
        }
        if classify_root_with(q, beta, &mut scratch) != RootClass::NotRoot {
            out.push(beta.to_vec());
        }
    });
    Ok(out)
}

/// A complete decision-problem instance: the star, the dimension vector
/// and the weight built from a tuple of `(ξ, r)` sequences.
#[derive(Debug, Clone)]
pub struct Instance {
    pub quiver: StarQuiver,
    pub alpha: DimVector,
    pub lambda: Weight,
}

/// Build `(quiver, α, λ)` from the class encodings: `α_0 = n`,
/// `α_{[i,j]} = r_{i,j}`, `λ_0 = −Σ ξ_{i,1}`, `λ_{[i,j]} = ξ_{i,j} −
/// ξ_{i,j+1}`.  Arms are trimmed at their first zero rank; trimmed
/// vertices can never carry a nonzero component of any root ≤ α, so they
/// are irrelevant to membership and only bloat the lattice box.
pub fn build_instance(xs: &[XiSequence]) -> Result<Instance> {
    let Some(first) = xs.first() else {
        return Err(Error::invalid("instance needs at least one class"));
    };
    let n = first.n();
    if xs.iter().any(|x| x.n() != n) {
        return Err(Error::invalid("classes must share the same matrix size n"));
    }

    let mut arm_lengths = Vec::with_capacity(xs.len());
    for x in xs {
        // ranks() is (r_0 = n, r_1, ..., r_d = 0); arm keeps r_j > 0 prefix
        let len = x.ranks()[1..].iter().take_while(|&&r| r > 0).count();
        arm_lengths.push(len);
    }
    let quiver = StarQuiver::new(arm_lengths.clone());

    let mut alpha = vec![0i64; quiver.num_vertices()];
    alpha[0] = n;
    let mut lambda = vec![Rat::zero(); quiver.num_vertices()];
    let mut lambda0 = Rat::zero();
    for (i, x) in xs.iter().enumerate() {
        lambda0 -= &x.xi()[0];
        for j in 1..=arm_lengths[i] {
            let v = quiver.vertex(i, j);
            alpha[v] = x.ranks()[j];
            lambda[v] = &x.xi()[j - 1] - &x.xi()[j];
        }
    }
    lambda[0] = lambda0;
    Ok(Instance {
        quiver,
        alpha,
        lambda,
    })
}

/// Assemble a dimension vector from center value and per-arm values, for
/// tests and the JSON layer.
pub fn dim_from_parts(q: &StarQuiver, center: i64, arms: &[Vec<i64>]) -> Result<DimVector> {
    if arms.len() != q.k() {
        return Err(Error::invalid(format!(
            "expected {} arms, got {}",
            q.k(),
            arms.len()
        )));
    }
    let mut out = vec![0i64; q.num_vertices()];
    out[0] = center;
    for (i, arm) in arms.iter().enumerate() {
        if arm.len() != q.arm_lengths()[i] {
            return Err(Error::invalid(format!(
                "arm {} has {} vertices, got {} values",
                i + 1,
                q.arm_lengths()[i],
                arm.len()
            )));
        }
        for (j, &val) in arm.iter().enumerate() {
            out[q.vertex(i, j + 1)] = val;
        }
    }
    Ok(out)
}

/// Split a vertex-indexed vector into `(center, arms)` parts.
pub fn parts_of<T: Clone>(q: &StarQuiver, v: &[T]) -> (T, Vec<Vec<T>>) {
    let center = v[0].clone();
    let arms = (0..q.k())
        .map(|i| {
            (1..=q.arm_lengths()[i])
                .map(|j| v[q.vertex(i, j)].clone())
                .collect()
        })
        .collect();
    (center, arms)
}
