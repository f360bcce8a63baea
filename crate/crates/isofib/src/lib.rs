//! Exact-arithmetic toolkit for standard isotrivial fibrations S -> (C1 x C2)/G:
//! Hirzebruch-Jung continued fractions, cyclic quotient singularities, a small
//! finite-group engine, group actions on curves via generating vectors, quotient
//! surface invariants, and reducible-fibre contraction to the relative minimal model.

pub mod actions;
pub mod contfrac;
pub mod fibres;
pub mod golden;
pub mod groups;
pub mod quotient;
pub mod rational;
pub mod singularities;
pub mod verify;

pub use rational::Rat;
