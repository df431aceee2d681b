//! Representations of the deformed preprojective algebra on the star, and
//! the two-way dictionary between matrix solutions and such representations.
//!
//! A matrix tuple `A_1 + … + A_k = 0` with `A_i` in prescribed classes is
//! the same data as a representation of the doubled star quiver satisfying
//! the weight-`λ` preprojective relations: vertex spaces are the images of
//! the partial products `∏_{ℓ≤j}(A_i − ξ_{i,ℓ})`, arm arrows are the
//! inclusions between them, reverse arrows are the induced multiplications.
//! Reflection functors transform such representations along the Weyl group
//! while reflecting `(α, λ)`, which lets [`construct_rigid`] build the
//! unique irreducible solution in the rigid case by replaying the root
//! reduction backwards from a one-dimensional seed.

use crate::class::{ClassTuple, JordanClass, XiSequence};
use crate::decide::{decide, Caps};
use crate::error::{Error, Result};
use crate::matrix::{algebra_dimension, Matrix};
use crate::rational::Rat;
use crate::star::{
    build_instance, cartan_apply, coordinate_vertex, coreflect, reflect, DimVector, RootClass,
    StarQuiver, Weight,
};
use serde::{Deserialize, Serialize};

/// A representation of the doubled star quiver: a space of dimension
/// `dims[v]` at every vertex, a matrix for every arm arrow
/// `a_{i,j}: [i,j] → [i,j−1]` (stored as `a[i][j−1]`, shape
/// `dims[i,j−1] × dims[i,j]`) and one for every reverse arrow
/// `a*_{i,j}` (stored as `astar[i][j−1]`, transposed shape).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    pub dims: DimVector,
    pub a: Vec<Vec<Matrix>>,
    pub astar: Vec<Vec<Matrix>>,
}

impl QuiverRep {
    /// Validate all shapes against the star `q`.
    pub fn validate(&self, q: &StarQuiver) -> Result<()> {
        if self.dims.len() != q.num_vertices() {
            return Err(Error::invalid("representation has the wrong number of vertices"));
        }
        if self.dims.iter().any(|&d| d < 0) {
            return Err(Error::invalid("vertex dimensions must be nonnegative"));
        }
        if self.a.len() != q.k() || self.astar.len() != q.k() {
            return Err(Error::invalid("representation has the wrong number of arms"));
        }
        for i in 0..q.k() {
            let len = q.arm_lengths()[i];
            if self.a[i].len() != len || self.astar[i].len() != len {
                return Err(Error::invalid(format!(
                    "arm {} must carry exactly {} arrow matrices",
                    i + 1,
                    len
                )));
            }
            for j in 1..=len {
                let outer = self.dim_at(q, i, j - 1) as usize;
                let inner = self.dims[q.vertex(i, j)] as usize;
                let a = &self.a[i][j - 1];
                if (a.rows(), a.cols()) != (outer, inner) {
                    return Err(Error::invalid(format!(
                        "a[{}][{}] must have shape {}x{}",
                        i + 1,
                        j,
                        outer,
                        inner
                    )));
                }
                let astar = &self.astar[i][j - 1];
                if (astar.rows(), astar.cols()) != (inner, outer) {
                    return Err(Error::invalid(format!(
                        "astar[{}][{}] must have shape {}x{}",
                        i + 1,
                        j,
                        inner,
                        outer
                    )));
                }
            }
        }
        Ok(())
    }

    fn dim_at(&self, q: &StarQuiver, i: usize, j: usize) -> i64 {
        if j == 0 {
            self.dims[0]
        } else {
            self.dims[q.vertex(i, j)]
        }
    }

    /// The one-dimensional representation concentrated at vertex `w`, all
    /// maps zero.
    pub fn unit(q: &StarQuiver, w: usize) -> QuiverRep {
        let mut dims = vec![0i64; q.num_vertices()];
        dims[w] = 1;
        let mut a = Vec::with_capacity(q.k());
        let mut astar = Vec::with_capacity(q.k());
        for i in 0..q.k() {
            let len = q.arm_lengths()[i];
            let mut arm_a = Vec::with_capacity(len);
            let mut arm_astar = Vec::with_capacity(len);
            for j in 1..=len {
                let outer = if j == 1 { dims[0] } else { dims[q.vertex(i, j - 1)] } as usize;
                let inner = dims[q.vertex(i, j)] as usize;
                arm_a.push(Matrix::zero(outer, inner));
                arm_astar.push(Matrix::zero(inner, outer));
            }
            a.push(arm_a);
            astar.push(arm_astar);
        }
        QuiverRep { dims, a, astar }
    }
}

/// First violated preprojective relation, as a human-readable description,
/// or `None` when the representation satisfies all of them for weight `λ`.
pub(crate) fn relations_violation(q: &StarQuiver, rep: &QuiverRep, lambda: &[Rat]) -> Option<String> {
    let n0 = rep.dims[0] as usize;
    let mut center = Matrix::zero(n0, n0);
    for i in 0..q.k() {
        if q.arm_lengths()[i] >= 1 {
            center = &center + &(&rep.a[i][0] * &rep.astar[i][0]);
        }
    }
    if center != Matrix::scalar(n0, &lambda[0]) {
        return Some(format!(
            "relation fails at vertex {}: Σ a·a* ≠ λ₀·1",
            q.vertex_name(0)
        ));
    }
    for i in 0..q.k() {
        let len = q.arm_lengths()[i];
        for j in 1..=len {
            let v = q.vertex(i, j);
            let d = rep.dims[v] as usize;
            let inward = &rep.astar[i][j - 1] * &rep.a[i][j - 1];
            let lhs = if j < len {
                &(&rep.a[i][j] * &rep.astar[i][j]) - &inward
            } else {
                inward.scale(&-Rat::one())
            };
            if lhs != Matrix::scalar(d, &lambda[v]) {
                return Some(format!(
                    "relation fails at vertex {}",
                    q.vertex_name(v)
                ));
            }
        }
    }
    None
}

/// Do the preprojective relations hold for weight `λ`?  Errors on shape
/// mismatches; a well-formed representation always gets a clean verdict.
pub fn check_relations(q: &StarQuiver, rep: &QuiverRep, lambda: &[Rat]) -> Result<bool> {
    rep.validate(q)?;
    if lambda.len() != q.num_vertices() {
        return Err(Error::invalid("weight has the wrong length"));
    }
    Ok(relations_violation(q, rep, lambda).is_none())
}

/// Does the square matrix `a` lie in the conjugacy class encoded by `x`,
/// i.e. does every partial product `∏_{ℓ≤j}(a − ξ_ℓ)` have exactly the
/// prescribed rank?
pub fn matrix_in_class(a: &Matrix, x: &XiSequence) -> bool {
    let n = x.n();
    if !a.is_square() || a.rows() as i64 != n {
        return false;
    }
    let mut m = Matrix::identity(a.rows());
    for j in 1..=x.d() {
        let factor = a - &Matrix::scalar(a.rows(), &x.xi()[j - 1]);
        m = &m * &factor;
        let r = m.rank() as i64;
        if r != x.ranks()[j] {
            return false;
        }
        if r == 0 {
            // later ranks are all zero as well, and so are the products
            break;
        }
    }
    true
}

/// Build the quiver representation attached to a matrix solution: vertex
/// spaces are images of partial products, arm arrows are inclusions,
/// reverse arrows the induced action of `A_i − ξ_{i,j}`.
pub fn matrices_to_rep(sol: &[Matrix], xs: &[XiSequence]) -> Result<QuiverRep> {
    let inst = build_instance(xs)?;
    let q = &inst.quiver;
    let n = inst.alpha[0] as usize;
    if sol.len() != xs.len() {
        return Err(Error::invalid(format!(
            "expected {} matrices, got {}",
            xs.len(),
            sol.len()
        )));
    }
    for (i, a) in sol.iter().enumerate() {
        if !a.is_square() || a.rows() != n {
            return Err(Error::invalid(format!(
                "matrix {} must be {n}x{n}",
                i + 1
            )));
        }
    }
    let mut sum = Matrix::zero(n, n);
    for a in sol {
        sum = &sum + a;
    }
    if !sum.is_zero() {
        return Err(Error::invalid("matrices do not sum to zero"));
    }

    let mut a_maps = Vec::with_capacity(xs.len());
    let mut astar_maps = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let arm_len = q.arm_lengths()[i];
        let mut arm_a = Vec::with_capacity(arm_len);
        let mut arm_astar = Vec::with_capacity(arm_len);
        let mut basis = Matrix::identity(n);
        let mut product = Matrix::identity(n);
        for j in 1..=x.d() {
            let factor = &sol[i] - &Matrix::scalar(n, &x.xi()[j - 1]);
            product = &product * &factor;
            let next = product.column_space_basis();
            if next.cols() as i64 != x.ranks()[j] {
                return Err(Error::invalid(format!(
                    "matrix {} is not in its prescribed class: partial product {} has rank {}, expected {}",
                    i + 1,
                    j,
                    next.cols(),
                    x.ranks()[j]
                )));
            }
            if j > arm_len {
                // trimmed region: the product must vanish from here on
                break;
            }
            let incl = basis.solve_exact(&next).ok_or_else(|| {
                Error::internal("image chain is not nested")
            })?;
            let action = basis_action(&next, &factor, &basis)?;
            arm_a.push(incl);
            arm_astar.push(action);
            basis = next;
        }
        a_maps.push(arm_a);
        astar_maps.push(arm_astar);
    }

    let rep = QuiverRep {
        dims: inst.alpha.clone(),
        a: a_maps,
        astar: astar_maps,
    };
    if let Some(msg) = relations_violation(q, &rep, &inst.lambda) {
        return Err(Error::internal(format!(
            "constructed representation violates the relations: {msg}"
        )));
    }
    Ok(rep)
}

/// Coordinates of `factor · from` in the column basis `to`.
fn basis_action(to: &Matrix, factor: &Matrix, from: &Matrix) -> Result<Matrix> {
    let target = factor * from;
    to.solve_exact(&target)
        .ok_or_else(|| Error::internal("linear action does not preserve the image chain"))
}

/// Recover the matrix solution from a representation: `A_i = a_{i,1}a*_{i,1}
/// + ξ_{i,1}·1` on the vertex-0 space.
pub fn rep_to_matrices(rep: &QuiverRep, xs: &[XiSequence]) -> Result<Vec<Matrix>> {
    let inst = build_instance(xs)?;
    let q = &inst.quiver;
    rep.validate(q)?;
    if rep.dims != inst.alpha {
        return Err(Error::invalid(
            "representation dimensions do not match the instance built from the ξ-sequences",
        ));
    }
    if let Some(msg) = relations_violation(q, rep, &inst.lambda) {
        return Err(Error::invalid(msg));
    }
    for i in 0..q.k() {
        for j in 1..=q.arm_lengths()[i] {
            let a = &rep.a[i][j - 1];
            if a.rank() != a.cols() {
                return Err(Error::invalid(format!(
                    "a[{}][{}] is not injective",
                    i + 1,
                    j
                )));
            }
            let astar = &rep.astar[i][j - 1];
            if astar.rank() != astar.rows() {
                return Err(Error::invalid(format!(
                    "astar[{}][{}] is not surjective",
                    i + 1,
                    j
                )));
            }
        }
    }

    let n = inst.alpha[0] as usize;
    let mut out = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let first = &Matrix::scalar(n, &x.xi()[0]);
        let ai = if q.arm_lengths()[i] >= 1 {
            &(&rep.a[i][0] * &rep.astar[i][0]) + first
        } else {
            first.clone()
        };
        out.push(ai);
    }

    let mut sum = Matrix::zero(n, n);
    for a in &out {
        sum = &sum + a;
    }
    if !sum.is_zero() {
        return Err(Error::internal("recovered matrices do not sum to zero"));
    }
    for (i, x) in xs.iter().enumerate() {
        if !matrix_in_class(&out[i], x) {
            return Err(Error::internal(format!(
                "recovered matrix {} left its prescribed class",
                i + 1
            )));
        }
    }
    Ok(out)
}

/// Apply the reflection functor at vertex `v` (requires `λ_v ≠ 0`).
/// Returns the transformed representation together with the coreflected
/// weight; dimensions change by the simple reflection `s_v`.
///
/// Construction: let `V = ⊕_w X_w` over the edges at `v`, and assemble
/// `μ: V → X_v` from `a` (arrows with head `v`) and `−a*` (arrows with
/// tail `v`), and `ν: X_v → V` from the opposite maps.  The vertex-`v`
/// relation says exactly `μν = λ_v·1`, so `μ` is surjective and
/// `π = 1 − (1/λ_v)νμ` projects `V` onto `X′_v = ker μ`.  The new maps
/// are cut out of `π` (expressed in the kernel basis, scaled by `−λ_v`)
/// and of the kernel basis itself.  The sign bookkeeping is validated at
/// runtime: the output must satisfy the relations for the coreflected
/// weight, and any failure aborts as an internal error.
pub fn reflection_functor(
    q: &StarQuiver,
    rep: &QuiverRep,
    v: usize,
    lambda: &[Rat],
) -> Result<(QuiverRep, Weight)> {
    rep.validate(q)?;
    if lambda.len() != q.num_vertices() || v >= q.num_vertices() {
        return Err(Error::invalid("weight or vertex out of range"));
    }
    if lambda[v].is_zero() {
        return Err(Error::invalid(format!(
            "reflection functor needs λ ≠ 0 at vertex {}",
            q.vertex_name(v)
        )));
    }
    if relations_violation(q, rep, lambda).is_some() {
        return Err(Error::invalid(
            "reflection functor input must satisfy the relations",
        ));
    }

    struct EdgeAtV {
        arm: usize,
        jm1: usize,
        head_at_v: bool,
        w: usize,
    }
    let mut edges = Vec::new();
    if v == 0 {
        for i in 0..q.k() {
            if q.arm_lengths()[i] >= 1 {
                edges.push(EdgeAtV {
                    arm: i,
                    jm1: 0,
                    head_at_v: true,
                    w: q.vertex(i, 1),
                });
            }
        }
    } else {
        let (i, j) = q.arm_position(v).expect("non-center vertex lies on an arm");
        edges.push(EdgeAtV {
            arm: i,
            jm1: j - 1,
            head_at_v: false,
            w: if j == 1 { 0 } else { q.vertex(i, j - 1) },
        });
        if j < q.arm_lengths()[i] {
            edges.push(EdgeAtV {
                arm: i,
                jm1: j,
                head_at_v: true,
                w: q.vertex(i, j + 1),
            });
        }
    }
    if edges.is_empty() {
        return Err(Error::invalid(
            "reflection functor at an isolated vertex is not defined",
        ));
    }

    let mu_blocks: Vec<Matrix> = edges
        .iter()
        .map(|e| {
            if e.head_at_v {
                rep.a[e.arm][e.jm1].clone()
            } else {
                rep.astar[e.arm][e.jm1].scale(&-Rat::one())
            }
        })
        .collect();
    let nu_blocks: Vec<Matrix> = edges
        .iter()
        .map(|e| {
            if e.head_at_v {
                rep.astar[e.arm][e.jm1].clone()
            } else {
                rep.a[e.arm][e.jm1].clone()
            }
        })
        .collect();
    let mu = Matrix::from_blocks(&[mu_blocks.iter().collect()]);
    let nu_refs: Vec<Vec<&Matrix>> = nu_blocks.iter().map(|b| vec![b]).collect();
    let nu = Matrix::from_blocks(&nu_refs);

    let total: usize = edges.iter().map(|e| rep.dims[e.w] as usize).sum();
    let expected_new = total as i64 - rep.dims[v];
    if expected_new < 0 {
        return Err(Error::invalid(
            "reflection would produce a negative dimension",
        ));
    }
    let kappa = mu.kernel_matrix();
    if kappa.cols() as i64 != expected_new {
        return Err(Error::internal(
            "μ is not surjective although λ_v ≠ 0 and the relations hold",
        ));
    }

    let scaled = (&nu * &mu).scale(&lambda[v].recip());
    let pi = &Matrix::identity(total) - &scaled;
    let pi_b = kappa
        .solve_exact(&pi)
        .ok_or_else(|| Error::internal("projection image escapes the kernel"))?;
    let mu_prime = pi_b.scale(&-lambda[v].clone());

    let mut new_rep = rep.clone();
    new_rep.dims = reflect(q, v, &rep.dims);
    debug_assert_eq!(new_rep.dims[v], expected_new);
    let all_new_rows: Vec<usize> = (0..kappa.cols()).collect();
    let all_total: Vec<usize> = (0..total).collect();
    let mut offset = 0usize;
    for e in &edges {
        let dw = rep.dims[e.w] as usize;
        let cols: Vec<usize> = (offset..offset + dw).collect();
        let outward = mu_prime.submatrix(&all_new_rows, &cols);
        let inward = kappa.submatrix(&cols, &all_total[..kappa.cols()]);
        if e.head_at_v {
            new_rep.a[e.arm][e.jm1] = outward;
            new_rep.astar[e.arm][e.jm1] = inward;
        } else {
            new_rep.astar[e.arm][e.jm1] = outward.scale(&-Rat::one());
            new_rep.a[e.arm][e.jm1] = inward;
        }
        offset += dw;
    }

    let new_lambda = coreflect(q, v, lambda);
    if let Some(msg) = relations_violation(q, &new_rep, &new_lambda) {
        return Err(Error::internal(format!(
            "reflection functor output violates the relations: {msg}"
        )));
    }
    Ok((new_rep, new_lambda))
}

/// Tie-break for the reduction loop in [`construct_rigid`]: which
/// admissible vertex to reflect at when several qualify.  The canonical
/// choice is the least vertex in the fixed order (center first, then
/// arm-major); the alternative exists to exercise path independence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LeastVertex,
    GreatestVertex,
}

/// A candidate or constructed solution tuple `A_1, …, A_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSolution {
    pub matrices: Vec<Matrix>,
}

/// Construct the (unique up to conjugacy) irreducible solution of a rigid
/// instance: reduce `(α, λ)` by simple reflections to a coordinate vector,
/// then replay the reflections backwards as functors starting from the
/// one-dimensional representation.
pub fn construct_rigid(t: &ClassTuple, caps: &Caps, tie: TieBreak) -> Result<MatrixSolution> {
    let xs: Vec<XiSequence> = t.classes().iter().map(JordanClass::normalize).collect();
    let inst = build_instance(&xs)?;
    let q = &inst.quiver;
    let verdict = decide(q, &inst.alpha, &inst.lambda, caps)?;
    if !verdict.member {
        return Err(Error::invalid(
            "no irreducible solution exists for this tuple",
        ));
    }
    if verdict.root_class != RootClass::Real {
        return Err(Error::invalid(
            "the instance is not rigid (infinitely many solutions exist); construction covers the rigid case only",
        ));
    }

    let mut alpha = inst.alpha.clone();
    let mut lam = inst.lambda.clone();
    let mut chain = Vec::new();
    while coordinate_vertex(&alpha).is_none() {
        let ca = cartan_apply(q, &alpha);
        let candidates = (0..alpha.len()).filter(|&u| alpha[u] > 0 && ca[u] > 0);
        let v = match tie {
            TieBreak::LeastVertex => candidates.min(),
            TieBreak::GreatestVertex => candidates.max(),
        }
        .ok_or_else(|| Error::internal("reduction of a real root stalled"))?;
        if lam[v].is_zero() {
            // for rigid members the decomposition s_v(α) + ε_v + … would
            // otherwise refute membership
            return Err(Error::internal("rigid reduction reached a vertex with λ = 0"));
        }
        alpha = reflect(q, v, &alpha);
        lam = coreflect(q, v, &lam);
        chain.push(v);
    }
    let w = coordinate_vertex(&alpha).expect("loop ended on a coordinate vector");
    if !lam[w].is_zero() {
        return Err(Error::internal("terminal coordinate vertex carries λ ≠ 0"));
    }

    let mut rep = QuiverRep::unit(q, w);
    let mut cur = lam;
    for &v in chain.iter().rev() {
        let (next, next_lam) = reflection_functor(q, &rep, v, &cur)?;
        rep = next;
        cur = next_lam;
    }
    debug_assert_eq!(rep.dims, inst.alpha);
    debug_assert_eq!(cur, inst.lambda);

    let matrices = rep_to_matrices(&rep, &xs).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::internal(format!(
            "constructed representation unfit for matrix extraction: {msg}"
        )),
        other => other,
    })?;
    let sol = MatrixSolution { matrices };
    let report = verify_solution(t, &sol)?;
    if !report.all_ok() {
        return Err(Error::internal(
            "constructed solution failed its own verification",
        ));
    }
    Ok(sol)
}

/// Independent checks on a candidate solution for a class tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Every `A_i` lies in its prescribed conjugacy class (partial-product
    /// ranks match).
    pub classes_ok: bool,
    /// `Σ A_i = 0` exactly.
    pub sum_zero: bool,
    /// The tuple admits no common invariant subspace: the algebra generated
    /// by the matrices is the full `n×n` matrix algebra.
    pub irreducible: bool,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.classes_ok && self.sum_zero && self.irreducible
    }
}

/// Verify a candidate solution against a class tuple: class membership,
/// zero sum, and irreducibility, reported independently.
pub fn verify_solution(t: &ClassTuple, sol: &MatrixSolution) -> Result<VerifyReport> {
    let n = t.n();
    if sol.matrices.len() != t.k() {
        return Err(Error::invalid(format!(
            "expected {} matrices, got {}",
            t.k(),
            sol.matrices.len()
        )));
    }
    for (i, a) in sol.matrices.iter().enumerate() {
        if !a.is_square() || a.rows() != n {
            return Err(Error::invalid(format!(
                "matrix {} must be {n}x{n}",
                i + 1
            )));
        }
    }

    let classes_ok = t
        .classes()
        .iter()
        .zip(&sol.matrices)
        .all(|(c, a)| matrix_in_class(a, &c.normalize()));

    let mut sum = Matrix::zero(n, n);
    for a in &sol.matrices {
        sum = &sum + a;
    }
    let sum_zero = sum.is_zero();

    let irreducible = algebra_dimension(n, &sol.matrices)? == n * n;

    Ok(VerifyReport {
        classes_ok,
        sum_zero,
        irreducible,
    })
}
