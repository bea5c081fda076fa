//! Target regions, class membership scans and the lemma checks built on them.

mod class;
mod lemmas;
mod region;
mod scan;

pub use class::{
    ma_minda_value, region_for_preset, ClassSpec, Functional, MaMindaFn, Preset, POLYGON_RADIUS,
    POLYGON_VERTICES,
};
pub use lemmas::{pfaltzgraff_convexity_check, preservation_check, valence_integral, verify_ratio_subordination};
pub use region::RegionSpec;
pub use scan::{
    convexity_margin, guard_grid, membership_scan, sample, sample_functional, sm_level, MembershipReport,
    Samples, Verdict, TOL_CLIPPED, TOL_EXACT,
};

pub(crate) use scan::checked_ratio;
