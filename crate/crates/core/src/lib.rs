pub mod corpus;
pub mod dsl;
pub mod error;
pub mod lambert;
pub mod laurent;
pub mod monomial;
pub mod partitions;
pub mod products;
pub mod salgo;
pub mod series;

pub use error::{QError, Result};
pub use laurent::LaurentSeries;
pub use monomial::{Sign, SignedMonomial};
pub use series::{Coeff, TruncSeries};
