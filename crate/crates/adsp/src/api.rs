//! High-level pipeline: build the star instance for a class tuple and
//! route it through the right decider.

use crate::class::{is_generic, ClassTuple, JordanClass, XiSequence};
use crate::decide::{classify_nilpotent, decide, decide_generic, Caps, Decision};
use crate::error::{Error, Result};
use crate::io::{dim_vector_json, root_class_str, weight_json, ModeHint, RootsJson};
use crate::star::{build_instance, classify_root, defect_p, enumerate_r_lambda, Instance};

/// Normalize every class and build the `(quiver, α, λ)` instance.
pub fn instance_of(t: &ClassTuple) -> Result<Instance> {
    let xs: Vec<XiSequence> = t.classes().iter().map(JordanClass::normalize).collect();
    build_instance(&xs)
}

/// Root-system introspection for a tuple: `α`, `λ`, the root class of
/// `α`, its defect `p(α)`, and how many admissible roots live below `α`.
pub fn roots_summary(t: &ClassTuple, box_cap: u64) -> Result<RootsJson> {
    let inst = instance_of(t)?;
    let rc = classify_root(&inst.quiver, &inst.alpha);
    let admissible = enumerate_r_lambda(&inst.quiver, &inst.alpha, &inst.lambda, box_cap)?;
    Ok(RootsJson {
        alpha: dim_vector_json(&inst.quiver, &inst.alpha),
        lambda: weight_json(&inst.quiver, &inst.lambda),
        root_class: root_class_str(rc),
        p_alpha: defect_p(&inst.quiver, &inst.alpha),
        admissible_roots: admissible.len(),
    })
}

/// Decide the tuple under the requested routing and return the built
/// instance along with the decision.
///
/// `auto` prefers the structural nilpotent classifier when every class is
/// nilpotent, then the generic-eigenvalue shortcut when genericity can be
/// established within caps, and otherwise falls back to the general
/// lattice DP — including when the genericity probe itself runs out of
/// budget, since "not established generic" simply means the general
/// decider must do the work.
pub fn decide_tuple(t: &ClassTuple, mode: ModeHint, caps: &Caps) -> Result<(Instance, Decision)> {
    let inst = instance_of(t)?;
    let d = match mode {
        ModeHint::General => decide(&inst.quiver, &inst.alpha, &inst.lambda, caps)?,
        ModeHint::Nilpotent => classify_nilpotent(&inst.quiver, &inst.alpha, &inst.lambda)?,
        ModeHint::Generic => decide_generic(&inst.quiver, &inst.alpha, &inst.lambda, t, caps)?,
        ModeHint::Auto => {
            if t.is_nilpotent() {
                classify_nilpotent(&inst.quiver, &inst.alpha, &inst.lambda)?
            } else {
                let generic = t.trace_condition()
                    && match is_generic(t, caps.generic_states) {
                        Ok(g) => g,
                        Err(Error::ResourceExceeded(_)) => false,
                        Err(e) => return Err(e),
                    };
                if generic {
                    decide_generic(&inst.quiver, &inst.alpha, &inst.lambda, t, caps)?
                } else {
                    decide(&inst.quiver, &inst.alpha, &inst.lambda, caps)?
                }
            }
        }
    };
    Ok((inst, d))
}
