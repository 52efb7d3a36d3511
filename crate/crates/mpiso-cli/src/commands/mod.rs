pub mod classify;
pub mod spectral;
pub mod verify;
