//! Exact numbers: rationals and cyclotomic fields.

mod cyclotomic;
mod expr;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField, CyclotomicNumber};
pub use expr::{parse_cyclotomic, parse_cyclotomic_list};
pub use rational::{format_rational, integer, parse_rational, rational, Rational};
