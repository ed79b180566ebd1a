//! Measurements over partitions: normalized mutual information, per-community
//! topological profiles, size distributions, cross-network property
//! correlation and the aggregate community report.

mod nmi;
mod profiles;
mod report;

pub use nmi::nmi;
pub use profiles::{
    community_profiles, cross_network_correlation, size_distribution, CommunityProfile,
    CommunityProperty, SizeDistribution,
};
pub use report::{community_report, AlgorithmSummary, CommunityReport, ComparisonMatrix};
