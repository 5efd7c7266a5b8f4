//! Finitely presented graded modules over R = S/I: presentations,
//! minimal free resolutions, Ext and Tor.

mod cache;
mod functors;
mod presentation;
mod resolution;

pub use functors::{ext_dim, ext_module, hom_module, tor_dim, tor_dim_any, tor_module};
pub use presentation::{dim_k, minimal_presentation, present_subquotient, ModulePresentation};
pub use resolution::{free_resolution, FreeResolution};
