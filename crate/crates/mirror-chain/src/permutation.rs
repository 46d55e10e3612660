//! Arbitrary site permutations from sequences of substring mirrors.
//!
//! A mirror family chain engineered on a contiguous segment, with every
//! coupling and field outside the segment switched off, reverses the
//! segment's qubits (up to phases) at its mirror time while leaving the
//! rest of the register untouched.  Composing such segment reversals
//! realizes any permutation of the sites; the planner below uses selection
//! by reversal, which needs at most `N` steps on `N+1` sites.
//!
//! Permutations are written as target arrangements: `target[i]` is the
//! initial site of the qubit that ends up at site `i`.  Composing the
//! plan's reversals over the identity arrangement reproduces exactly this
//! array.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chain::{custom_chain, hahn_chain, krawtchouk_chain, Family};
use crate::error::ChainError;
use crate::many_body::{full_register_hamiltonian, RegisterPropagator};
use crate::single_particle::{mirror_residual, numeric_eigensystem, MIRROR_TOLERANCE};

/// Cap for building one segment-mirror unitary.
pub const SEGMENT_UNITARY_MAX_QUBITS: usize = 10;
/// Cap for multiplying out a whole plan.
pub const SIMULATE_PLAN_MAX_QUBITS: usize = 8;
/// A simulated composite must put at least `1 - PLAN_AMPLITUDE_TOLERANCE`
/// of the amplitude modulus on the permuted basis state.
pub const PLAN_AMPLITUDE_TOLERANCE: f64 = 1e-6;

/// A bijection on sites `0..=N`, stored as the target arrangement:
/// `mapping[i]` is the initial site of the qubit that ends at site `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SitePermutation {
    mapping: Vec<usize>,
}

impl SitePermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self, ChainError> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &site in &mapping {
            if site >= n || seen[site] {
                return Err(ChainError::NotAPermutation { n_sites: n });
            }
            seen[site] = true;
        }
        Ok(SitePermutation { mapping })
    }

    pub fn identity(n_sites: usize) -> Self {
        SitePermutation {
            mapping: (0..n_sites).collect(),
        }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn n_sites(&self) -> usize {
        self.mapping.len()
    }
}

/// An ordered list of segment reversals `(start, end)`, `start < end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversalPlan {
    pub n_sites: usize,
    pub steps: Vec<(usize, usize)>,
}

impl ReversalPlan {
    /// Apply the reversals to the identity arrangement (pure index
    /// arithmetic): the result is the permutation the plan realizes.
    pub fn composed_arrangement(&self) -> Vec<usize> {
        let mut arrangement: Vec<usize> = (0..self.n_sites).collect();
        for &(start, end) in &self.steps {
            arrangement[start..=end].reverse();
        }
        arrangement
    }
}

/// Selection by reversal: for each position in order, a single segment
/// reversal brings the required qubit in place.  At most `N` steps on
/// `N+1` sites; composition equals the target exactly.
pub fn plan_reversals(target: &SitePermutation) -> ReversalPlan {
    let n = target.n_sites();
    let mut arrangement: Vec<usize> = (0..n).collect();
    let mut steps = Vec::new();
    for position in 0..n {
        let wanted = target.mapping()[position];
        let found = arrangement[position..]
            .iter()
            .position(|&q| q == wanted)
            .expect("bijection guarantees the qubit is ahead")
            + position;
        if found > position {
            arrangement[position..=found].reverse();
            steps.push((position, found));
        }
    }
    debug_assert_eq!(arrangement, target.mapping());
    ReversalPlan { n_sites: n, steps }
}

/// Mirror unitary on one segment of an otherwise switched-off register.
///
/// Couplings follow `family` (Krawtchouk or Hahn) inside `[start, end]`
/// and vanish outside; fields vanish outside.  The chain evolves for the
/// segment's certified mirror time (`pi/2` for Krawtchouk, `q*pi` for
/// Hahn, certified by the single-particle residual).  The result reverses
/// the segment's bits up to per-basis-state phases and acts as the
/// identity on every outside bit.
pub fn segment_mirror_unitary(
    n_sites: usize,
    segment: (usize, usize),
    family: &Family,
) -> Result<Array2<Complex64>, ChainError> {
    let (start, end) = segment;
    if n_sites > SEGMENT_UNITARY_MAX_QUBITS {
        return Err(ChainError::RegisterTooLarge {
            operation: "segment_mirror_unitary",
            qubits: n_sites,
            max: SEGMENT_UNITARY_MAX_QUBITS,
        });
    }
    if start >= end || end >= n_sites {
        return Err(ChainError::InvalidSegment {
            start,
            end,
            n_sites,
        });
    }
    let segment_n = end - start;
    let (segment_spec, mirror_time) = match family {
        Family::Krawtchouk => (krawtchouk_chain(segment_n)?, std::f64::consts::FRAC_PI_2),
        Family::Hahn { p, q } => {
            let spec = hahn_chain(segment_n, *p, *q)?;
            let period = spec.predicted_period.expect("hahn period");
            (spec, period)
        }
        Family::Custom => {
            return Err(ChainError::UnsupportedFamily {
                operation: "segment_mirror_unitary",
                family: "custom",
            });
        }
    };
    // Certify the candidate time on the segment before trusting it.
    let es = numeric_eigensystem(&segment_spec.single_particle_matrix());
    let (residual, _) = mirror_residual(&es, mirror_time);
    if residual > MIRROR_TOLERANCE {
        return Err(ChainError::SegmentMirrorNotFound {
            start,
            end,
            residual,
        });
    }

    let mut couplings = vec![0.0; n_sites - 1];
    couplings[start..end].copy_from_slice(&segment_spec.couplings);
    let mut fields = vec![0.0; n_sites];
    fields[start..=end].copy_from_slice(&segment_spec.fields);
    let padded = custom_chain(couplings, fields)?;
    let h = full_register_hamiltonian(&padded)?;
    Ok(RegisterPropagator::new(&h).at(mirror_time))
}

/// Verification of a simulated reversal plan.
#[derive(Debug, Clone)]
pub struct PlanVerification {
    pub n_sites: usize,
    pub steps: Vec<(usize, usize)>,
    /// The arrangement realized by the plan (pure index composition).
    pub permutation: Vec<usize>,
    /// Amplitude found on the permuted basis state, per input basis state.
    pub per_state_phase: Vec<Complex64>,
    pub min_target_modulus: f64,
    pub max_off_target: f64,
}

impl PlanVerification {
    pub fn passes(&self) -> bool {
        self.min_target_modulus >= 1.0 - PLAN_AMPLITUDE_TOLERANCE
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n_sites": self.n_sites,
            "steps": self.steps,
            "permutation": self.permutation,
            "phases": self
                .per_state_phase
                .iter()
                .map(|p| serde_json::json!({"re": p.re, "im": p.im}))
                .collect::<Vec<_>>(),
            "min_target_modulus": self.min_target_modulus,
            "max_off_target": self.max_off_target,
            "pass": self.passes(),
        })
    }
}

/// Multiply the plan's segment unitaries in order and verify that every
/// computational basis state lands on its permuted image with unit
/// amplitude modulus, recording the per-state phases.
pub fn simulate_plan(
    n_sites: usize,
    plan: &ReversalPlan,
    family: &Family,
) -> Result<PlanVerification, ChainError> {
    if n_sites > SIMULATE_PLAN_MAX_QUBITS {
        return Err(ChainError::RegisterTooLarge {
            operation: "simulate_plan",
            qubits: n_sites,
            max: SIMULATE_PLAN_MAX_QUBITS,
        });
    }
    let dim = 1usize << n_sites;
    let mut composite = Array2::from_diag_elem(dim, Complex64::new(1.0, 0.0));
    for &step in &plan.steps {
        let u = segment_mirror_unitary(n_sites, step, family)?;
        composite = u.dot(&composite);
    }
    let arrangement = plan.composed_arrangement();

    let mut per_state_phase = Vec::with_capacity(dim);
    let mut min_target = f64::INFINITY;
    let mut max_off = 0.0_f64;
    for b in 0..dim {
        // Bit i of the permuted state comes from bit arrangement[i] of b.
        let mut target = 0usize;
        for (i, &source) in arrangement.iter().enumerate() {
            target |= (b >> source & 1) << i;
        }
        for row in 0..dim {
            let mag = composite[[row, b]].norm();
            if row == target {
                min_target = min_target.min(mag);
            } else {
                max_off = max_off.max(mag);
            }
        }
        per_state_phase.push(composite[[target, b]]);
    }

    Ok(PlanVerification {
        n_sites,
        steps: plan.steps.clone(),
        permutation: arrangement,
        per_state_phase,
        min_target_modulus: min_target,
        max_off_target: max_off,
    })
}
