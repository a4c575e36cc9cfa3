pub mod abelian;
pub mod action;
pub mod finite;
pub mod irreps;
pub mod semidirect;

pub use abelian::{dual_group, Character, FiniteAbelianGroup};
pub use action::{act_on_character, Action, DualAction, Orbit};
pub use finite::{CosetSystem, FiniteGroup, Subgroup};
pub use irreps::{character_inner, irreps, IrrepProvider, UnitaryIrrep};
pub use semidirect::{ActionGenerator, GroupSpec, KSpec, SemidirectGroup};
