//! Integer cohomology of projective wonderful models of toric arrangements:
//! exact lattice algebra, smooth fans, layer posets and building sets, ring
//! presentations, and an independent Betti-number oracle.

pub mod building;
pub mod chern;
pub mod cli;
pub mod error;
pub mod fan;
pub mod goodfan;
pub mod job;
pub mod lattice;
pub mod layers;
pub mod oracle;
pub mod poly;
pub mod presentation;
pub mod render;
pub mod serde_int;
pub mod toric;
