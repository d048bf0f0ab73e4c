pub mod biframe;
pub mod canon;
pub mod caps;
pub mod completion;
pub mod congruence;
pub mod hom;
pub mod order;
pub mod paircover;
pub mod workbench;
