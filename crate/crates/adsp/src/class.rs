//! Conjugacy-class data.
//!
//! A class of `n × n` matrices is specified by its Jordan data: the list of
//! eigenvalues with their block sizes.  For the root-system machinery the
//! class is re-encoded as an annihilating eigenvalue sequence `ξ_1, …, ξ_d`
//! together with the ranks `r_j` of the partial products
//! `∏_{ℓ≤j} (A − ξ_ℓ·1)`; that pair determines the class and is what the
//! star-quiver instance is built from.  This module also houses the
//! eigenvalue-genericity test used by the fast path of the decision
//! procedure.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A conjugacy class given by Jordan data: distinct eigenvalues, each with
/// a descending list of Jordan block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanClass {
    spectrum: Vec<(Rat, Vec<usize>)>,
    n: usize,
}

impl JordanClass {
    pub fn new(mut spectrum: Vec<(Rat, Vec<usize>)>) -> Result<Self> {
        if spectrum.is_empty() {
            return Err(Error::invalid("class has an empty spectrum"));
        }
        let mut seen = BTreeSet::new();
        let mut n = 0;
        for (value, blocks) in &mut spectrum {
            if !seen.insert(value.clone()) {
                return Err(Error::invalid(format!("repeated eigenvalue {value} in class")));
            }
            if blocks.is_empty() {
                return Err(Error::invalid(format!("eigenvalue {value} has no Jordan blocks")));
            }
            if blocks.iter().any(|&b| b == 0) {
                return Err(Error::invalid(format!("eigenvalue {value} has a zero-sized block")));
            }
            blocks.sort_unstable_by(|a, b| b.cmp(a));
            n += blocks.iter().sum::<usize>();
        }
        Ok(JordanClass { spectrum, n })
    }

    /// Shorthand for a class of diagonalizable type: each `(value, mult)`
    /// pair becomes `mult` blocks of size one.
    pub fn diagonal(values: &[(Rat, usize)]) -> Result<Self> {
        JordanClass::new(
            values
                .iter()
                .map(|(v, m)| (v.clone(), vec![1; *m]))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spectrum(&self) -> &[(Rat, Vec<usize>)] {
        &self.spectrum
    }

    /// `(eigenvalue, algebraic multiplicity)` pairs; multiplicities total `n`.
    pub fn multiplicities(&self) -> Vec<(Rat, usize)> {
        self.spectrum
            .iter()
            .map(|(v, blocks)| (v.clone(), blocks.iter().sum()))
            .collect()
    }

    /// `Σ multiplicity · eigenvalue`.
    pub fn trace(&self) -> Rat {
        let mut t = Rat::zero();
        for (v, m) in self.multiplicities() {
            t += &(&v * &Rat::from_int(m as i64));
        }
        t
    }

    /// Whether every eigenvalue is zero (the class is nilpotent).
    pub fn is_nilpotent(&self) -> bool {
        self.spectrum.iter().all(|(v, _)| v.is_zero())
    }

    /// Canonical `(ξ, r)` encoding of the class.
    ///
    /// Eigenvalue groups are ordered by descending total multiplicity, ties
    /// by descending value, and each eigenvalue is repeated for its largest
    /// block size.  The rank after `j` steps into a group drops by
    /// `Σ_b min(b, j)` below the part of `n` not yet consumed by earlier
    /// groups.  A lone scalar entry is padded with one extra repeat so the
    /// sequence always has length at least two.
    pub fn normalize(&self) -> XiSequence {
        let mut groups: Vec<(&Rat, &Vec<usize>, usize)> = self
            .spectrum
            .iter()
            .map(|(v, blocks)| (v, blocks, blocks.iter().sum::<usize>()))
            .collect();
        groups.sort_by(|a, b| b.2.cmp(&a.2).then(b.0.cmp(a.0)));

        let mut xi = Vec::new();
        let mut ranks: Vec<i64> = vec![self.n as i64];
        let mut finished = 0usize; // total multiplicity of completed groups
        for (value, blocks, mult) in groups {
            let largest = blocks[0];
            for j in 1..=largest {
                let drop: usize = blocks.iter().map(|&b| b.min(j)).sum();
                xi.push(value.clone());
                ranks.push((self.n - finished - drop) as i64);
            }
            finished += mult;
        }
        if xi.len() == 1 {
            // pad a scalar class so that d >= 2
            xi.push(xi[0].clone());
            ranks.push(0);
        }
        XiSequence::new(xi, ranks).expect("normalize produced an invalid sequence")
    }
}

/// A `k`-tuple of classes sharing the same matrix size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTuple {
    classes: Vec<JordanClass>,
}

impl ClassTuple {
    pub fn new(classes: Vec<JordanClass>) -> Result<Self> {
        let Some(first) = classes.first() else {
            return Err(Error::invalid("a class tuple needs at least one class"));
        };
        let n = first.n();
        if classes.iter().any(|c| c.n() != n) {
            return Err(Error::invalid("classes in a tuple must share the same size n"));
        }
        Ok(ClassTuple { classes })
    }

    pub fn n(&self) -> usize {
        self.classes[0].n()
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[JordanClass] {
        &self.classes
    }

    pub fn is_nilpotent(&self) -> bool {
        self.classes.iter().all(JordanClass::is_nilpotent)
    }

    /// `Σᵢ tr(Aᵢ) = 0` — the obvious necessary condition for a sum-zero
    /// solution.
    pub fn trace_condition(&self) -> bool {
        let mut t = Rat::zero();
        for c in &self.classes {
            t += &c.trace();
        }
        t.is_zero()
    }
}

/// The `(ξ, r)` encoding of a conjugacy class: `ξ_1, …, ξ_d` with
/// `∏ (A − ξ_j·1) = 0` on the class, and the ranks `r_0 = n ≥ r_1 ≥ … ≥
/// r_d = 0` of the partial products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiSequence {
    xi: Vec<Rat>,
    ranks: Vec<i64>,
}

impl XiSequence {
    /// Validate raw `(ξ, r)` data.  Besides the shape conditions this
    /// enforces the rank-drop monotonicity between repeats of the same
    /// eigenvalue: for `j < ℓ` with `ξ_j = ξ_ℓ` one must have
    /// `r_{j−1} − r_j ≥ r_{ℓ−1} − r_ℓ`, otherwise no matrix realizes the
    /// data.
    pub fn new(xi: Vec<Rat>, ranks: Vec<i64>) -> Result<Self> {
        let d = xi.len();
        if d < 2 {
            return Err(Error::invalid("xi sequence must have length at least 2"));
        }
        if ranks.len() != d + 1 {
            return Err(Error::invalid(format!(
                "rank list has length {}, expected {}",
                ranks.len(),
                d + 1
            )));
        }
        if ranks[0] < 1 {
            return Err(Error::invalid("matrix size n = r_0 must be at least 1"));
        }
        if *ranks.last().unwrap() != 0 {
            return Err(Error::invalid("final rank r_d must be 0"));
        }
        for w in ranks.windows(2) {
            if w[0] < w[1] {
                return Err(Error::invalid("ranks must be weakly decreasing"));
            }
        }
        for j in 1..=d {
            for l in (j + 1)..=d {
                if xi[j - 1] == xi[l - 1]
                    && ranks[j - 1] - ranks[j] < ranks[l - 1] - ranks[l]
                {
                    return Err(Error::invalid(format!(
                        "rank drops at repeats of {} must be weakly decreasing (positions {j} and {l})",
                        xi[j - 1]
                    )));
                }
            }
        }
        Ok(XiSequence { xi, ranks })
    }

    pub fn n(&self) -> i64 {
        self.ranks[0]
    }

    pub fn d(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &[Rat] {
        &self.xi
    }

    pub fn ranks(&self) -> &[i64] {
        &self.ranks
    }
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / a.gcd(b)
}

/// Eigenvalue genericity.
///
/// The tuple is generic when the only ways to pick `0 ≤ m′_{i,ℓ} ≤ m_{i,ℓ}`
/// eigenvalue multiplicities with a common per-class count and total
/// weighted sum zero are the empty and the full choice.  Requires the trace
/// condition (which is exactly the "full choice sums to zero" case).
///
/// The enumeration tracks, per class and per common count `c`, the set of
/// achievable weighted sums, then convolves the classes; `state_cap` bounds
/// the total number of set entries ever stored.
pub fn is_generic(t: &ClassTuple, state_cap: u64) -> Result<bool> {
    if !t.trace_condition() {
        return Err(Error::invalid("is_generic requires the trace condition to hold"));
    }
    let n = t.n();

    // Clear denominators so sums live in Z.
    let mut denom = BigInt::one();
    for class in t.classes() {
        for (v, _) in class.spectrum() {
            denom = lcm_big(&denom, v.denom());
        }
    }
    let scaled = |v: &Rat| -> BigInt { v.numer() * (&denom / v.denom()) };

    let mut states: u64 = 0;
    let charge = |states: &mut u64, add: usize| -> Result<()> {
        *states += add as u64;
        if *states > state_cap {
            return Err(Error::resource(format!(
                "genericity enumeration exceeded {state_cap} states"
            )));
        }
        Ok(())
    };

    // per_class[i][c] = set of achievable scaled sums picking c eigenvalues
    // (with multiplicity) from class i
    let mut per_class: Vec<Vec<BTreeSet<BigInt>>> = Vec::new();
    for class in t.classes() {
        let mut sets: Vec<BTreeSet<BigInt>> = vec![BTreeSet::new(); n + 1];
        sets[0].insert(BigInt::zero());
        for (v, m) in class.multiplicities() {
            let w = scaled(&v);
            let mut next: Vec<BTreeSet<BigInt>> = vec![BTreeSet::new(); n + 1];
            for (c, set) in sets.iter().enumerate() {
                for s in set {
                    for u in 0..=m.min(n - c) {
                        next[c + u].insert(s + BigInt::from(u) * &w);
                    }
                }
            }
            for set in &next {
                charge(&mut states, set.len())?;
            }
            sets = next;
        }
        per_class.push(sets);
    }

    // A nonzero proper choice exists iff for some 0 < c < n the per-class
    // sums can be combined to zero.
    for c in 1..n {
        let mut acc: BTreeSet<BigInt> = BTreeSet::new();
        acc.insert(BigInt::zero());
        for sets in &per_class {
            let mut next = BTreeSet::new();
            for a in &acc {
                for s in &sets[c] {
                    next.insert(a + s);
                }
            }
            charge(&mut states, next.len())?;
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        if acc.contains(&BigInt::zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Group a list of `(value, block)` pairs into a map for test setup.
#[allow(dead_code)]
pub(crate) fn spectrum_map(c: &JordanClass) -> BTreeMap<Rat, Vec<usize>> {
    c.spectrum
        .iter()
        .map(|(v, b)| (v.clone(), b.clone()))
        .collect()
}
