//! Relative Thue equations and inequalities for the simplest quartic and sextic
//! families over imaginary quadratic fields.
//!
//! The pipeline: [`forms`] builds `F_t`, [`roots`] certifies its real roots and
//! their gaps, [`bounds`] turns those gaps into case rules, [`abs`] solves the
//! resulting absolute inequalities and [`solver`] assembles the complete
//! solution set of `|F_t(x, y)| <= 1` over the ring of integers.

pub mod abs;
pub mod bounds;
pub mod decimal;
pub mod error;
pub mod exec;
pub mod forms;
pub mod golden;
pub mod poly;
pub mod ring;
pub mod solver;
pub mod roots;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use forms::{make_form, Family, ParamForm, SolutionPair};
pub use ring::{make_ring, QuadInt, RingSpec};
