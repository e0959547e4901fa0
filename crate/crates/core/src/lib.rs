pub mod error;
pub mod fairsim_prob;
pub mod fixtures;
pub mod game;
pub mod lattice;
pub mod linalg;
pub mod nbta;
pub mod oracle;
pub mod pbwa;
pub mod random;
