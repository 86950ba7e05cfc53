pub mod complex;
pub mod cstarlab;
pub mod cx;
pub mod domain;
pub mod embed;
pub mod endo;
pub mod loggeom;
pub mod scalar;
pub mod schema;
pub mod tri;
