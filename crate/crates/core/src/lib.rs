pub mod characteristic;
pub mod eigen;
pub mod error;
pub mod forms;
pub mod orbit;
pub mod siegel;
pub mod strata;
pub mod symplectic;
pub mod theta;
pub mod verify;

pub use characteristic::{CharTuple, Characteristic, Parity, ParityFilter};
pub use error::{Error, Result};
pub use siegel::SiegelPoint;

/// Serializes a complex number as `[re, im]`.
pub(crate) mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    #[allow(dead_code)]
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}
