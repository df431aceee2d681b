//! Membership decision with certificates.
//!
//! The central question: given the star instance `(q, α, λ)`, does an
//! irreducible sum-zero solution exist?  By the root-system criterion this
//! holds exactly when `α` is a positive root, `λ·α = 0`, and every
//! decomposition of `α` into two or more positive roots `β` with `λ·β = 0`
//! has strictly smaller total defect than `p(α)`.  The decision procedure
//! here settles that by a lattice dynamic program over the box `[0, α]`,
//! and every verdict carries a checkable certificate: the defect data on
//! membership, or an explicit maximal-defect decomposition on failure.
//!
//! Two special-case deciders are included: the nilpotent classifier
//! (`λ = 0`), which recognizes membership structurally without any DP and
//! so scales to boxes the DP cannot touch, and the generic-eigenvalue
//! decider, where membership degenerates to "`α` is a root".

use num_integer::Integer;

use crate::class::{is_generic, ClassTuple};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::star::{
    cartan_apply, classify_root, coordinate_vertex, defect_p, enumerate_r_lambda, pairing,
    reflect, BoxIndexer, DimVector, RootClass, StarQuiver,
};

/// Configurable resource caps, with the documented defaults.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum number of lattice points in the box `[0, α]`.
    pub box_cap: u64,
    /// Maximum number of states in the genericity enumeration.
    pub generic_states: u64,
    /// Random combinations sampled when searching for an invertible
    /// intertwiner.
    pub conj_samples: u32,
    /// Maximum `Σα` accepted by the brute-force reference decider.
    pub brute_sum: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            box_cap: 5_000_000,
            generic_states: 10_000_000,
            conj_samples: 32,
            brute_sum: 10,
        }
    }
}

/// How many essentially different irreducible solutions exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionCount {
    None,
    Unique,
    Infinite,
}

/// Evidence accompanying a [`Decision`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `λ·α ≠ 0`: no solution can exist, irreducible or not.
    TraceObstruction,
    /// `α` is not a root.
    NotRoot,
    /// A decomposition of `α` into at least two admissible roots whose
    /// total defect reaches `p(α)`, refuting membership.
    Decomposition { parts: Vec<DimVector> },
    /// Membership evidence: `p(α)` together with the best total defect of
    /// any proper decomposition (`None` when no decomposition exists).
    MemberOk {
        p_alpha: i64,
        max_sub_defect: Option<i64>,
    },
}

/// Verdict of the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub member: bool,
    pub root_class: RootClass,
    pub solution_count: SolutionCount,
    pub certificate: Certificate,
}

impl Decision {
    fn non_member(root_class: RootClass, certificate: Certificate) -> Self {
        Decision {
            member: false,
            root_class,
            solution_count: SolutionCount::None,
            certificate,
        }
    }

    fn member(root_class: RootClass, certificate: Certificate) -> Self {
        let solution_count = match root_class {
            RootClass::Real => SolutionCount::Unique,
            RootClass::Imaginary => SolutionCount::Infinite,
            RootClass::NotRoot => unreachable!("members are roots"),
        };
        Decision {
            member: true,
            root_class,
            solution_count,
            certificate,
        }
    }
}

fn check_alpha(q: &StarQuiver, alpha: &[i64]) -> Result<()> {
    if alpha.len() != q.num_vertices() {
        return Err(Error::invalid("dimension vector has the wrong length"));
    }
    if alpha.iter().any(|&a| a < 0) {
        return Err(Error::invalid("dimension vector must be nonnegative"));
    }
    if alpha[0] <= 0 {
        return Err(Error::invalid("center component of the dimension vector must be positive"));
    }
    Ok(())
}

// sentinel for "no full decomposition reaches this lattice point"
const NO_DECOMP: i32 = i32::MIN / 4;

/// Decide membership of `α` by the lattice DP.
///
/// With `P` the admissible roots strictly below `α`, the table `f` holds
/// for every `γ ≤ α` the maximal total defect of a decomposition of `γ`
/// into parts from `P` (or the sentinel).  Processing part-by-part in
/// ascending box-index order is the classic unbounded-knapsack sweep:
/// within one part's pass earlier updates are reusable, giving unbounded
/// multiplicity, and after all passes `f[α]` is the best total defect of
/// any decomposition with ≥ 2 parts (one part alone is impossible since
/// `α ∉ P`).  Predecessor bookkeeping recovers a witness decomposition.
pub fn decide(q: &StarQuiver, alpha: &[i64], lambda: &[Rat], caps: &Caps) -> Result<Decision> {
    check_alpha(q, alpha)?;
    let root_class = classify_root(q, alpha);
    if !pairing(lambda, alpha).is_zero() {
        return Ok(Decision::non_member(root_class, Certificate::TraceObstruction));
    }
    if root_class == RootClass::NotRoot {
        return Ok(Decision::non_member(root_class, Certificate::NotRoot));
    }

    let roots = enumerate_r_lambda(q, alpha, lambda, caps.box_cap)?;
    let ix = BoxIndexer::new(alpha, caps.box_cap)
        .expect("box fits the cap, enumerate_r_lambda checked");
    let alpha_idx = ix.index(alpha);
    let p_alpha = defect_p(q, alpha);

    let parts: Vec<(usize, i32, DimVector)> = roots
        .into_iter()
        .filter(|b| b.as_slice() != alpha)
        .map(|b| (ix.index(&b), defect_p(q, &b) as i32, b))
        .collect();

    let mut f = vec![NO_DECOMP; ix.size()];
    f[0] = 0;
    let mut pred = vec![u32::MAX; ix.size()];

    let strides = ix.strides().to_vec();
    let nv = alpha.len();
    for (t, (part_idx, part_p, beta)) in parts.iter().enumerate() {
        // sweep the sub-box {γ : β ≤ γ ≤ α} in ascending index order
        let mut digits = beta.clone();
        let mut idx = *part_idx;
        loop {
            let from = f[idx - part_idx];
            if from != NO_DECOMP {
                let cand = from + part_p;
                if cand > f[idx] {
                    f[idx] = cand;
                    pred[idx] = t as u32;
                }
            }
            let mut v = nv;
            loop {
                if v == 0 {
                    break;
                }
                v -= 1;
                if digits[v] < alpha[v] {
                    digits[v] += 1;
                    idx += strides[v];
                    break;
                }
                idx -= (digits[v] - beta[v]) as usize * strides[v];
                digits[v] = beta[v];
            }
            if v == 0 && digits.iter().zip(beta).all(|(d, b)| d == b) {
                break;
            }
        }
    }

    let best2 = f[alpha_idx];
    if best2 == NO_DECOMP || p_alpha > best2 as i64 {
        let max_sub_defect = (best2 != NO_DECOMP).then_some(best2 as i64);
        return Ok(Decision::member(
            root_class,
            Certificate::MemberOk {
                p_alpha,
                max_sub_defect,
            },
        ));
    }

    // recover a witness decomposition by walking predecessors
    let mut witness = Vec::new();
    let mut idx = alpha_idx;
    while idx != 0 {
        let t = pred[idx] as usize;
        debug_assert!(t != u32::MAX as usize, "finite DP entry without predecessor");
        let (part_idx, _, beta) = &parts[t];
        witness.push(beta.clone());
        idx -= part_idx;
    }
    witness.sort_by(|a, b| b.cmp(a));
    debug_assert!(witness.len() >= 2);
    Ok(Decision::non_member(
        root_class,
        Certificate::Decomposition { parts: witness },
    ))
}

/// Exhaustive reference decider for tiny instances (`Σα ≤ caps.brute_sum`).
///
/// Enumerates every multiset decomposition of `α` into admissible roots,
/// parts taken in non-increasing box-index order so each multiset appears
/// once, and compares the best ≥ 2-part total defect against `p(α)`.
pub fn decide_bruteforce(
    q: &StarQuiver,
    alpha: &[i64],
    lambda: &[Rat],
    caps: &Caps,
) -> Result<Decision> {
    check_alpha(q, alpha)?;
    let total: i64 = alpha.iter().sum();
    if total > caps.brute_sum {
        return Err(Error::invalid(format!(
            "brute-force decider is limited to Σα ≤ {}, got {}",
            caps.brute_sum, total
        )));
    }
    let root_class = classify_root(q, alpha);
    if !pairing(lambda, alpha).is_zero() {
        return Ok(Decision::non_member(root_class, Certificate::TraceObstruction));
    }
    if root_class == RootClass::NotRoot {
        return Ok(Decision::non_member(root_class, Certificate::NotRoot));
    }

    let roots = enumerate_r_lambda(q, alpha, lambda, caps.box_cap)?;
    let parts: Vec<(i64, DimVector)> = roots
        .into_iter()
        .filter(|b| b.as_slice() != alpha)
        .map(|b| (defect_p(q, &b), b))
        .collect();

    struct Search<'a> {
        parts: &'a [(i64, DimVector)],
        best: Option<(i64, Vec<DimVector>)>,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, from: usize, remaining: &mut DimVector, depth: usize, sum_p: i64) {
            if remaining.iter().all(|&r| r == 0) {
                if depth >= 2 && self.best.as_ref().is_none_or(|(b, _)| sum_p > *b) {
                    let witness = self
                        .chosen
                        .iter()
                        .map(|&t| self.parts[t].1.clone())
                        .collect();
                    self.best = Some((sum_p, witness));
                }
                return;
            }
            for t in from..self.parts.len() {
                let (p, beta) = &self.parts[t];
                if beta.iter().zip(remaining.iter()).any(|(b, r)| b > r) {
                    continue;
                }
                for (r, b) in remaining.iter_mut().zip(beta) {
                    *r -= b;
                }
                self.chosen.push(t);
                self.run(t, remaining, depth + 1, sum_p + p);
                self.chosen.pop();
                for (r, b) in remaining.iter_mut().zip(beta) {
                    *r += b;
                }
            }
        }
    }

    let mut search = Search {
        parts: &parts,
        best: None,
        chosen: Vec::new(),
    };
    let mut remaining = alpha.to_vec();
    search.run(0, &mut remaining, 0, 0);

    let p_alpha = defect_p(q, alpha);
    match search.best {
        None => Ok(Decision::member(
            root_class,
            Certificate::MemberOk {
                p_alpha,
                max_sub_defect: None,
            },
        )),
        Some((best, _)) if p_alpha > best => Ok(Decision::member(
            root_class,
            Certificate::MemberOk {
                p_alpha,
                max_sub_defect: Some(best),
            },
        )),
        Some((_, witness)) => {
            let mut witness = witness;
            witness.sort_by(|a, b| b.cmp(a));
            Ok(Decision::non_member(
                root_class,
                Certificate::Decomposition { parts: witness },
            ))
        }
    }
}

/// Rigidity: a unique-up-to-conjugacy irreducible solution exists, i.e.
/// membership with `α` a real root.
pub fn is_rigid(q: &StarQuiver, alpha: &[i64], lambda: &[Rat], caps: &Caps) -> Result<bool> {
    let d = decide(q, alpha, lambda, caps)?;
    Ok(d.member && d.root_class == RootClass::Real)
}

fn gcd_over_support(alpha: &[i64]) -> i64 {
    let mut g = 0i64;
    for &a in alpha {
        if a != 0 {
            g = g.gcd(&a);
        }
    }
    g
}

/// Structural membership classifier for the nilpotent case `λ = 0`.
///
/// Membership then holds exactly for the coordinate vectors and for the
/// fundamental-region vectors that avoid two special shapes: a proper
/// multiple of the null vector `δ` of an extended Dynkin support
/// (type I), and such a multiple extended by a single new vertex `w` with
/// `α_w = 1` attached next to a `δ = 1` vertex (type II).  Everything
/// here is structural — no lattice DP — so the classifier runs in
/// polynomial time regardless of how large the box would be.
pub fn classify_nilpotent(q: &StarQuiver, alpha: &[i64], lambda: &[Rat]) -> Result<Decision> {
    if lambda.iter().any(|l| !l.is_zero()) {
        return Err(Error::invalid("nilpotent classifier requires λ = 0"));
    }
    if alpha.len() != q.num_vertices() || alpha.iter().any(|&a| a < 0) {
        return Err(Error::invalid("dimension vector must be nonnegative and match the star"));
    }
    if alpha.iter().all(|&a| a == 0) {
        return Err(Error::invalid("dimension vector must be nonzero"));
    }

    if coordinate_vertex(alpha).is_some() {
        return Ok(Decision::member(
            RootClass::Real,
            Certificate::MemberOk {
                p_alpha: 0,
                max_sub_defect: None,
            },
        ));
    }

    let root_class = classify_root(q, alpha);
    if root_class == RootClass::NotRoot {
        return Ok(Decision::non_member(root_class, Certificate::NotRoot));
    }

    let p_alpha = defect_p(q, alpha);
    let ca = cartan_apply(q, alpha);
    let in_fundamental = ca.iter().all(|&c| c <= 0);
    // (connected support is implied: α is a root)

    if !in_fundamental {
        let witness = match root_class {
            RootClass::Real => {
                // real non-coordinate vectors split into coordinate parts
                let mut parts = Vec::new();
                for (v, &a) in alpha.iter().enumerate() {
                    for _ in 0..a {
                        let mut eps = vec![0i64; alpha.len()];
                        eps[v] = 1;
                        parts.push(eps);
                    }
                }
                parts
            }
            RootClass::Imaginary => {
                // reflecting at a positive-Cα vertex preserves defect and
                // peels off (Cα)_v coordinate parts
                let v = (0..alpha.len())
                    .find(|&v| alpha[v] > 0 && ca[v] > 0)
                    .expect("not in the fundamental region, so some (Cα)_v > 0 on the support");
                let mut parts = vec![reflect(q, v, alpha)];
                for _ in 0..ca[v] {
                    let mut eps = vec![0i64; alpha.len()];
                    eps[v] = 1;
                    parts.push(eps);
                }
                parts
            }
            RootClass::NotRoot => unreachable!(),
        };
        let mut witness = witness;
        witness.sort_by(|a, b| b.cmp(a));
        return Ok(Decision::non_member(
            root_class,
            Certificate::Decomposition { parts: witness },
        ));
    }

    // type I: α is a proper multiple of an extended-Dynkin null vector
    let support_null = alpha
        .iter()
        .zip(&ca)
        .all(|(&a, &c)| a == 0 || c == 0);
    if support_null {
        let g = gcd_over_support(alpha);
        if g >= 2 {
            let delta: DimVector = alpha.iter().map(|a| a / g).collect();
            let witness = vec![delta; g as usize];
            return Ok(Decision::non_member(
                root_class,
                Certificate::Decomposition { parts: witness },
            ));
        }
    }

    // type II: removing one vertex w with α_w = 1 leaves a proper multiple
    // of a null vector, and w hangs off a δ = 1 vertex
    for w in 0..alpha.len() {
        if alpha[w] != 1 {
            continue;
        }
        let mut rest = alpha.to_vec();
        rest[w] = 0;
        if rest.iter().all(|&a| a == 0) {
            continue;
        }
        if !crate::star::support_connected(q, &rest) {
            continue;
        }
        let c_rest = cartan_apply(q, &rest);
        let rest_null = rest
            .iter()
            .zip(&c_rest)
            .all(|(&a, &c)| a == 0 || c == 0);
        if !rest_null {
            continue;
        }
        let g = gcd_over_support(&rest);
        if g < 2 {
            continue;
        }
        let delta: DimVector = rest.iter().map(|a| a / g).collect();
        if !q.neighbors(w).iter().any(|&u| delta[u] == 1) {
            continue;
        }
        let mut witness = vec![delta; g as usize];
        let mut eps = vec![0i64; alpha.len()];
        eps[w] = 1;
        witness.push(eps);
        witness.sort_by(|a, b| b.cmp(a));
        return Ok(Decision::non_member(
            root_class,
            Certificate::Decomposition { parts: witness },
        ));
    }

    Ok(Decision::member(
        RootClass::Imaginary,
        Certificate::MemberOk {
            p_alpha,
            max_sub_defect: None,
        },
    ))
}

/// Decider for tuples with generic eigenvalues: membership reduces to "`α`
/// is a root".  The genericity precondition is re-checked; pass the tuple
/// the instance was built from.
pub fn decide_generic(
    q: &StarQuiver,
    alpha: &[i64],
    lambda: &[Rat],
    tuple: &ClassTuple,
    caps: &Caps,
) -> Result<Decision> {
    check_alpha(q, alpha)?;
    if !is_generic(tuple, caps.generic_states)? {
        return Err(Error::invalid("decide_generic requires generic eigenvalues"));
    }
    if !pairing(lambda, alpha).is_zero() {
        // genericity includes the trace condition, which forces λ·α = 0
        return Err(Error::internal("λ·α ≠ 0 for a generic tuple"));
    }
    let root_class = classify_root(q, alpha);
    if root_class == RootClass::NotRoot {
        return Ok(Decision::non_member(root_class, Certificate::NotRoot));
    }
    Ok(Decision::member(
        root_class,
        Certificate::MemberOk {
            p_alpha: defect_p(q, alpha),
            max_sub_defect: None,
        },
    ))
}

/// Check a decision's certificate against the instance it claims to
/// describe.  Used by tests and by callers that want end-to-end evidence.
pub fn validate_certificate(
    q: &StarQuiver,
    alpha: &[i64],
    lambda: &[Rat],
    decision: &Decision,
) -> Result<()> {
    let fail = |msg: &str| Err(Error::internal(format!("certificate check failed: {msg}")));
    match &decision.certificate {
        Certificate::TraceObstruction => {
            if decision.member {
                return fail("trace obstruction on a member");
            }
            if pairing(lambda, alpha).is_zero() {
                return fail("trace obstruction claimed but λ·α = 0");
            }
        }
        Certificate::NotRoot => {
            if decision.member {
                return fail("not-root certificate on a member");
            }
            if classify_root(q, alpha) != RootClass::NotRoot {
                return fail("not-root certificate but α is a root");
            }
        }
        Certificate::Decomposition { parts } => {
            if decision.member {
                return fail("decomposition certificate on a member");
            }
            if parts.len() < 2 {
                return fail("decomposition must have at least two parts");
            }
            let mut total = vec![0i64; alpha.len()];
            let mut sum_p = 0i64;
            for part in parts {
                if classify_root(q, part) == RootClass::NotRoot {
                    return fail("decomposition part is not a root");
                }
                if !pairing(lambda, part).is_zero() {
                    return fail("decomposition part has λ·β ≠ 0");
                }
                for (t, b) in total.iter_mut().zip(part) {
                    *t += b;
                }
                sum_p += defect_p(q, part);
            }
            if total != alpha {
                return fail("decomposition parts do not sum to α");
            }
            if sum_p < defect_p(q, alpha) {
                return fail("decomposition defect total is below p(α)");
            }
        }
        Certificate::MemberOk {
            p_alpha,
            max_sub_defect,
        } => {
            if !decision.member {
                return fail("membership certificate on a non-member");
            }
            if *p_alpha != defect_p(q, alpha) {
                return fail("stated p(α) is wrong");
            }
            if let Some(best) = max_sub_defect {
                if *best >= *p_alpha {
                    return fail("membership with a decomposition reaching p(α)");
                }
            }
        }
    }
    let expected = match (decision.member, decision.root_class) {
        (false, _) => SolutionCount::None,
        (true, RootClass::Real) => SolutionCount::Unique,
        (true, RootClass::Imaginary) => SolutionCount::Infinite,
        (true, RootClass::NotRoot) => return fail("member that is not a root"),
    };
    if decision.solution_count != expected {
        return fail("solution count inconsistent with root class");
    }
    Ok(())
}
