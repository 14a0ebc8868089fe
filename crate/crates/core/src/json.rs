//! Serde helpers for the JSON config schema.

/// Complex numbers as `{"re": .., "im": ..}`.
pub mod complex {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ComplexJson {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ComplexJson { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let c = ComplexJson::deserialize(d)?;
        Ok(Complex64::new(c.re, c.im))
    }
}
