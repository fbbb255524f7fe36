pub mod calibration;
pub mod certificate;
pub mod error;
pub mod exterior;
pub mod flags;
pub mod group;
pub mod integral;
pub mod linalg;
pub mod scalar;
pub mod stabilizer;
pub mod suite;
pub mod wchain;
