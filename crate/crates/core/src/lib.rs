pub mod certify;
pub mod cli;
pub mod exact;
pub mod galois;
pub mod grouptheory;
pub mod inertia;
pub mod localred;
pub mod model;
