//! Strong Shoda pairs: verification, enumeration, equivalence and the
//! Wedderburn component attached to each pair.

mod component;
mod enumerate;
mod metacyclic;
mod pair;

pub use component::{
    component_descriptor, component_descriptor_searching, outer_transversal, total_dimension, ComponentJson,
    SimpleComponent,
};
pub use enumerate::{check_partition_of_unity, enumerate_ssp, enumerate_ssp_generic, strong_shoda_pairs};
pub use metacyclic::{metacyclic_ssp_catalog, FaithfulMetacyclic};
pub use pair::{is_strong_shoda_pair, PairSummary, ShodaCheck, StrongShodaPair};
