//! The relatively free group of lower p-length 2, its quotients by subspaces
//! of the second layer, automorphism counts and normal-subgroup censuses.

mod aut;
mod group;
mod numnorms;
mod quotient;
mod subgroup;

pub use group::{Class2Element, Class2Group};
pub use quotient::QuotientGroup;
pub use subgroup::{all_subgroups, log_p, lower_p_series, normal_subgroups, LowerPSeries, Subgroup};
pub use aut::{
    are_isomorphic, aut_order, aut_order_with, brute_aut_order, endo_from_images, eval_word,
    find_isomorphism, fingerprint, hom_from_images, induced_isomorphism, layer_maps,
    lifted_images, normalizer_order, AutDecomposition, BruteAut, Fingerprint, Hom, LayerMaps,
};
pub use numnorms::{
    check_numnorms, format_uvec, layer_profile, normal_subgroup_census, numnorms_bound, Bucket,
    NormalCensus, NumnormsReport, NumnormsRow,
};
