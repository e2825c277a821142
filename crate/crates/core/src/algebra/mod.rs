//! Exact formal arithmetic in the crossed product B = C_c(E⁰) ⋊ G and the
//! correspondence Y^φ = C_c(E¹ × G), on basis symbols δ_{v,g} and χ_{e,g}.

mod structure;
mod sum;
mod verify;

pub use structure::{Algebra, AlgebraError, CohomologyIso, EpFamily, KatsuraIdealReport, RankOneOp};
pub use sum::{coeff, coeff_string, BElement, BSym, Coeff, FormalSum, YElement, YSym};
pub use verify::{
    check_axioms, check_cohomology_iso, check_covariance, check_ep_isometry, check_jy, random_b, random_coeff,
    random_y, AxiomReport, GridReport,
};
