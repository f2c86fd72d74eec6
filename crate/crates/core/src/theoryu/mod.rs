//! The two-level weighted TQFT of equivariant intersection numbers on spaces
//! of admissible covers: closed anti-diagonal invariants, the full-torus
//! generators (pants series and Calabi–Yau caps) and the checks built on them.

mod antid;
mod fulltorus;
mod records;
mod verify;

pub use antid::{
    antid_closed, antid_closed_positive_exponent, convention_survey, level00_coefficient, semisimple_data_antid,
    AntidConvention, AntidScalar, AntidiagValue, BasisScale, MubarPrefactor, MAX_ANTID_DEGREE,
};
pub use fulltorus::{
    cy_cap, cy_cap_antid_raised, cy_cap_connected, cy_cap_from_connected, cy_cap_side, pair_series, two_sin_half_q,
    CapSide, FullTorusSeries,
};
pub use records::{InvariantKey, InvariantRecord};
pub use verify::{
    aspinwall_morrison, verify_burnside, verify_cap_vectors, verify_gluing_antid, verify_relfin, BurnsideReport,
    GluingReport,
};
