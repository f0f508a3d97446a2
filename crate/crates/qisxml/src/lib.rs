pub mod cli;
pub mod genadder;
pub mod matrix;
pub mod model;
pub mod qcl;
pub mod render;
pub mod sim;
pub mod stdlib;
pub mod symexpr;
pub mod validate;
pub mod xml;
