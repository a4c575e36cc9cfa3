mod function;
mod induced;
mod projection;

pub use function::{partial_fourier, FunctionEntry, GroupFunction, PartialFourier};
pub use induced::{fourier_block, induced_rep, CataloguingTriple, InducedRep};
pub use projection::{induced_operator, projection_p, tau};
