//! Reports over the catalog of set-operads with one binary generator:
//! enumeration, Koszulness classification and the two summary tables.

pub mod cache;
pub mod catalog;
pub mod classify;
pub mod context;
pub mod reference;
pub mod render;
pub mod tables;
pub mod theorem;
