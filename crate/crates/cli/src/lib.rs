//! Benchmark harness and exit-code conventions behind the `hdec` binary.

pub mod bench;

/// Process exit codes shared by every subcommand.
pub mod exit {
    pub const FOUND: i32 = 0;
    pub const NONEXISTENT: i32 = 1;
    pub const BUDGET: i32 = 2;
    pub const USAGE: i32 = 3;
    pub const VERIFY_FAILED: i32 = 4;
}
