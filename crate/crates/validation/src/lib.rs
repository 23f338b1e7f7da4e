//! Acceptance criteria for `tracegenus`; run with `cargo test -p tracegenus-validation --test acceptance`.
