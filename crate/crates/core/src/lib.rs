pub mod beta;
pub mod checks;
pub mod coeff;
pub mod cyclic;
pub mod error;
pub mod freealg;
pub mod freelie;
pub mod json;
pub mod letter;
pub mod mma;
pub mod random;
pub mod rational;
pub mod tangle;
