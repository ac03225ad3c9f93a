pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod forbidden;
pub mod gf;
pub mod numtheory;
pub mod oracle;
pub mod spectral;
pub mod structures;
