mod measure;
mod mix;
mod sample;
mod subspace;
mod window;

pub use measure::{
    check_bound, mu_m_marginal, shift_term_marginal, window_intersection, BoundReport, IrsJson,
    LazyIRS, MeasureJson, WeightedJson, IRS_SCHEMA, WINDOW_LIMIT,
};
pub use mix::{majority_asymmetry, majority_measure, psi_mix, MixOutcome, MixReport};
pub use sample::{
    empirical, sample_many, sample_window, trial_rng, AtomSampler, BlockSampler, TRIAL_LIMIT,
};
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspace, SUBSPACE_LIMIT};
pub use window::{
    tv_distance, AtomJson, DistributionJson, WindowDistribution, WindowSubgroup,
    DISTRIBUTION_SCHEMA, SUPPORT_LIMIT,
};
