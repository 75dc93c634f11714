use proptest::test_runner::{Config, RngSeed};

/// Fixed-seed configuration so property runs are reproducible.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}
