pub mod algebra;
pub mod bialgebra;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod fdb;
pub mod groupoid;
pub mod library;
pub mod operad;
pub mod oracles;
pub mod perm;
pub mod table;
pub mod testing;
pub mod tree;
