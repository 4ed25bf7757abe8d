//! Stochastic binary systems, threshold (separable) structure functions and
//! all-terminal graph reliability over exact or floating-point scalars.

pub mod dsep;
pub mod error;
pub mod format;
pub mod graph;
pub mod lp;
pub mod partition;
pub mod report;
pub mod scalar;
pub mod separability;
pub mod state;
pub mod system;
pub mod threshold;

pub use dsep::{
    level_of_separability, mincut_certificate, verify_certificate, CertificateCheck, HyperplaneCertificate,
    SeparabilityLevel, Side,
};
pub use error::{Error, Result};
pub use graph::{Category, GraphClass, NamedGraph, UndirectedGraph};
pub use partition::{partition_decide, partition_reduction, PartitionDecision, PartitionInstance};
pub use report::AnalysisReport;
pub use scalar::{Exact, Scalar};
pub use separability::{
    is_separable, separability_margin, CostAssignment, IntersectionCertificate, SeparabilityVerdict,
};
pub use state::{StateWord, MAX_COMPONENTS};
pub use system::{BinarySystem, Caps, PathCutInventory, Representation};
pub use threshold::{Comparison, ThresholdDescription};

pub type Rational = num_rational::BigRational;
pub type System = BinarySystem<Rational>;
pub type Threshold = ThresholdDescription<Rational>;
pub type Graph = UndirectedGraph<Rational>;
pub type Verdict = SeparabilityVerdict<Rational>;
