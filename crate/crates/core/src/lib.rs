pub mod certify;
pub mod error;
pub mod game;
pub mod germs;
pub mod grid;
pub mod io;
pub mod random;
pub mod solver;
pub mod spectral;
pub mod tropical;

pub use error::{Result, TropError};
