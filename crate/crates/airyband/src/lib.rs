mod dd;
mod roots;
pub mod airy;
pub mod bands;
pub mod canonical;
pub mod cli;
pub mod error;
pub mod floquet;
pub mod semiclassics;
pub mod sturm;
pub mod verify;
pub mod zeros;
