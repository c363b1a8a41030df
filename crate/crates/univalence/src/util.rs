use num_complex::Complex64;

/// Serialize a complex number as a two-element `[re, im]` array.
pub mod complex_array {
    use num_complex::Complex64;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&z.re)?;
        t.serialize_element(&z.im)?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let parts = <[f64; 2]>::deserialize(d)?;
        if !parts[0].is_finite() || !parts[1].is_finite() {
            return Err(D::Error::custom("non-finite complex component"));
        }
        Ok(Complex64::new(parts[0], parts[1]))
    }
}

/// SplitMix64: tiny deterministic generator for reproducible corpora.
///
/// Test corpora and the demo sweep must be bit-stable across runs and
/// toolchain updates, which rules out depending on an external RNG.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform over the closed disk of the given radius.
    pub fn in_disk(&mut self, radius: f64) -> Complex64 {
        let r = radius * self.next_f64().sqrt();
        let theta = self.range(0.0, std::f64::consts::TAU);
        Complex64::from_polar(r, theta)
    }
}
