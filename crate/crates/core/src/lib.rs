//! Vertex-disjoint paths on upward planar drawings.
//!
//! Start with [`format::parse_instance`] and [`solver::solve`]. The book
//! under `book/` walks through every module.

pub mod certify;
pub mod dot;
pub mod format;
pub mod gadgets;
pub mod geometry;
pub mod graph;
pub mod oracle;
pub mod order;
pub mod reduction;
pub mod rightmost;
pub mod solver;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod chapter1 {}
    #[doc = include_str!("../../../book/src/formats.md")]
    pub mod chapter2 {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub mod chapter3 {}
    #[doc = include_str!("../../../book/src/rightmost.md")]
    pub mod chapter4 {}
    #[doc = include_str!("../../../book/src/order.md")]
    pub mod chapter5 {}
    #[doc = include_str!("../../../book/src/solving.md")]
    pub mod chapter6 {}
    #[doc = include_str!("../../../book/src/gadgets.md")]
    pub mod chapter7 {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    pub mod chapter8 {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod chapter9 {}
    #[doc = include_str!("../../../book/src/testing.md")]
    pub mod chapter10 {}
}
