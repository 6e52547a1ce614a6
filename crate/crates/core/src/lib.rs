//! Bimodules over the radical-square-zero path algebra of the linearly
//! oriented `A_n` quiver: the indecomposable catalog, tensor products and
//! their decompositions, and the cell, adjunction and generator checks built
//! on top of them.

pub mod adjunctions;
pub mod algebra;
pub mod bimodule;
pub mod catalog;
pub mod cells;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod shiftrules;
pub mod tensor;

pub use adjunctions::{adjoint_partner, all_adjoint_pairs, AdjunctionPair};
pub use algebra::{build_algebra, grid_quiver, maximal_strings, string_module_count, AnAlgebra, GridQuiver, MaximalString, Vertex};
pub use bimodule::{Endo, GenericBimodule, HomSpace, Side, SupportProfile};
pub use catalog::{count_formula, enumerate, realize, ActionGraph, Catalog, IndecLabel, Kind};
pub use cells::{cells, compute_cells, export_cells_dot, CellStructure};
pub use error::{Error, Result};
pub use generators::{closure, generating_seed, verify_minimality, ClosureState};
pub use shiftrules::{ksplit_tensor, rule_product, shift_n11, shift_s12, shift_w21, GeneratorName};
pub use tensor::{decompose, module_pairing, tensor, tensor_decomposed, Decomposition, ProductTable};
