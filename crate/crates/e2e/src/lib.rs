//! Tests only; see `tests/acceptance.rs`.
