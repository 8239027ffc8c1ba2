//! Built-in operads.

mod basic;
mod free;
mod monoid;

pub use basic::{
    comm_plus, multivariate, nonsym_semimonoid, CommPlus, Multivariate, NonsymSemimonoid,
};
pub use free::{
    binary_nullary_operad, binary_tree_operad, free_operad, FreeOperad, PTreeGenerator,
};
pub use monoid::{
    monoid_operad, nat_monoid, pointed_example, pointed_module, MonoidOperad, MonoidTable,
    PointedModule,
};

use crate::error::OperadError;
use crate::operad::Operad;

/// Names accepted by [`builtin`].
pub const BUILTINS: &[&str] = &[
    "comm_plus",
    "nonsym_semimonoid",
    "multivariate",
    "free_binary",
    "free_binary_nullary",
    "nat_monoid",
    "pointed_module",
];

/// A built-in operad by name. `colours` is used by `multivariate` only
/// (default `x, y`); `pointed_module` ignores the cap.
pub fn builtin(name: &str, cap: usize, colours: &[String]) -> Result<Box<dyn Operad>, OperadError> {
    Ok(match name {
        "comm_plus" => Box::new(comm_plus(cap)),
        "nonsym_semimonoid" => Box::new(nonsym_semimonoid(cap)),
        "multivariate" => {
            if colours.is_empty() {
                Box::new(multivariate(&["x", "y"], cap)?)
            } else {
                Box::new(multivariate(colours, cap)?)
            }
        }
        "free_binary" => Box::new(binary_tree_operad(cap)),
        "free_binary_nullary" => Box::new(binary_nullary_operad(cap)),
        "nat_monoid" => Box::new(nat_monoid(cap)),
        "pointed_module" => Box::new(pointed_example()),
        other => return Err(OperadError::UnknownBuiltin(other.into())),
    })
}
