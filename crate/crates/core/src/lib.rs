//! Exact machinery for perfect-matching generating functions of weighted
//! graphs drawn in the plane: integer-coefficient polynomial weights,
//! crossing profiles, signed matching sums and Pfaffians, sign-tracked
//! redraw moves, and GF(2) solving for sign modifications that turn the
//! signed sum into the plain one.

pub mod embedding;
pub mod graph;
pub mod matching;
pub mod moves;
pub mod ring;
pub mod solver;
pub mod verify;
