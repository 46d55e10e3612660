//! Error type shared by all chain, dynamics, and verification operations.

use thiserror::Error;

/// Errors produced by chain construction, eigensolvers, sector dynamics,
/// and the verification routines.
#[derive(Debug, Error)]
pub enum ChainError {
    /// A chain needs at least one coupling (two sites).
    #[error("chain must have at least one coupling (N >= 1)")]
    EmptyChain,

    /// `fields` must be exactly one entry longer than `couplings`.
    #[error("length mismatch: {couplings} couplings require {} fields, got {fields}", couplings + 1)]
    LengthMismatch { couplings: usize, fields: usize },

    /// Hahn parameters must satisfy q != 0 and alpha = (2p+1)/(2q) > -1/2.
    #[error("invalid Hahn parameters p={p}, q={q}: alpha=(2p+1)/(2q) must exist and exceed -1/2")]
    InvalidHahnParameters { p: i64, q: i64 },

    /// Krawtchouk/Hahn chains must carry strictly positive couplings.
    #[error("family chain has a nonpositive coupling J_{index} = {value}")]
    NonPositiveCoupling { index: usize, value: f64 },

    /// Operation defined only for the Krawtchouk/Hahn families.
    #[error("{operation} is not defined for the {family} family")]
    UnsupportedFamily {
        operation: &'static str,
        family: &'static str,
    },

    /// A site or orbital index exceeded the chain size.
    #[error("index {index} out of range for {what} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    /// Orbital and site tuples of a Slater determinant must have equal length.
    #[error("orbital/site tuples must have equal length, got {orbitals} and {sites}")]
    SlaterSizeMismatch { orbitals: usize, sites: usize },

    /// Excitation number outside 0..=n_sites.
    #[error("excitation number {m} out of range for {n_sites} sites")]
    ExcitationOutOfRange { m: usize, n_sites: usize },

    /// Dense register computations are capped to keep memory and time sane.
    #[error("register of {qubits} qubits exceeds the {max}-qubit cap for {operation}")]
    RegisterTooLarge {
        operation: &'static str,
        qubits: usize,
        max: usize,
    },

    /// Mirror-time search needs a positive window and a reasonable grid.
    #[error("invalid search window: t_max={t_max}, grid={grid} (need t_max > 0, grid >= 100)")]
    InvalidSearchWindow { t_max: f64, grid: usize },

    /// Segment bounds must satisfy start < end <= N.
    #[error("invalid segment ({start}, {end}) on {n_sites} sites")]
    InvalidSegment {
        start: usize,
        end: usize,
        n_sites: usize,
    },

    /// The requested segment family has no certified mirror time.
    #[error("segment on sites ({start}, {end}) has no mirror time at tolerance (residual {residual:.3e})")]
    SegmentMirrorNotFound {
        start: usize,
        end: usize,
        residual: f64,
    },

    /// A site permutation must be a bijection on 0..=N.
    #[error("target is not a permutation of 0..{n_sites}")]
    NotAPermutation { n_sites: usize },

    /// Spin quantum numbers must be nonnegative half-integers.
    #[error("invalid spin {value}: 2s must be a nonnegative integer")]
    InvalidSpin { value: f64 },

    /// The L.S block construction assumes S < L with S half-integer.
    #[error("invalid L.S sector: L={l}, S={s} ({reason})")]
    InvalidLsSector { l: f64, s: f64, reason: &'static str },
}
