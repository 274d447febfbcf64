//! A workbench for finite universal algebra: equational theories and
//! their finite models, checked exhaustively.
//!
//! The library covers term evaluation and identity checking, a small
//! categorical toolkit (products, pullbacks, congruences, quotients,
//! split epimorphisms), exhaustive model search, the filter and ideal
//! theory of hoops and MV-algebras, and the unitalisation constructions
//! that embed a nonunital structure into a unital one: rings into rings
//! with unit, and Wajsberg hoops into MV-algebras.
//!
//! Start with the `examples/` directory; each file exercises one
//! capability end to end.

pub mod algebra;
pub mod cli;
pub mod equivalence;
pub mod ideals;
pub mod iso;
pub mod oracle;
pub mod parse;
pub mod search;
pub mod suite;
pub mod term;
pub mod theories;
pub mod unital;
