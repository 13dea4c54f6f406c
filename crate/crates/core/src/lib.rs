//! Exact arithmetic in real quadratic fields, continued-fraction periods of
//! quadratic irrationals, linear recurrences over `Q(sqrt d)`, absolute values
//! and heights, and a boundedness classifier for period lengths of recurrences.

pub mod classifier;
pub mod contfrac;
pub mod error;
pub mod numeric;
pub mod places;
pub mod polyalg;
pub mod qfield;
pub mod recurrence;
pub mod scalar;

pub use error::{Error, Result};
pub use qfield::{QuadElem, QuadField, Rational, Surd};
