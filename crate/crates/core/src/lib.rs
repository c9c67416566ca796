pub mod algebra;
pub mod algebroid;
pub mod geometry;
pub mod linearizer;
pub mod cli;
