//! Independent checks: structural guarantees of a DAG pair, a brute-force
//! distance oracle for tiny graphs, partition-call audits and the
//! expected-distortion estimator.

mod audit;
mod distortion;
mod envelope;
mod oracle;
mod structural;

pub use audit::{audit_laminar, AuditViolation};
pub use distortion::{estimate_distortion, estimate_distortion_with, DistortionError, DistortionReport, PairRecord, PairSpec};
pub use envelope::{depth_envelope, normalized_scale, sparsity_envelope};
pub use oracle::{brute_force_oracle, Oracle};
pub use structural::{check_structural, check_structural_with, DagId, StructuralReport, StructuralViolation};

/// Serialize records as JSON lines.
pub fn to_json_lines<T: serde::Serialize>(items: &[T]) -> String {
    let mut s = String::new();
    for it in items {
        s.push_str(&serde_json::to_string(it).expect("records serialize"));
        s.push('\n');
    }
    s
}
