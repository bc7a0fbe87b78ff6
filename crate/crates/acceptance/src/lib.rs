//! Acceptance suite for `me-response`; see `tests/acceptance.rs`.
