//! This crate only carries the criterion targets under `benches/`; every
//! algorithm being timed lives in `irregular-core`.
