//! Library side of the `kbessel` binary: record types, the subcommand
//! bodies and the validation suite. `main.rs` only parses arguments.

// Negated comparisons are used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod output;
pub mod record;
pub mod validate;

use kbessel_core::Error;

/// Exit status for usage errors and invalid parameters.
pub const EXIT_USAGE: u8 = 2;
/// Exit status when an evaluator refuses a noise-dominated result.
pub const EXIT_PRECISION: u8 = 3;

/// Maps an error to the process exit status.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    let core = err.chain().find_map(|e| e.downcast_ref::<Error>());
    match core {
        Some(Error::PrecisionExhausted { .. }) => EXIT_PRECISION,
        Some(
            Error::NonPositiveArgument(_)
            | Error::InvalidParameter { .. }
            | Error::IntegerOrder { .. },
        ) => EXIT_USAGE,
        _ if err.downcast_ref::<commands::UsageError>().is_some() => EXIT_USAGE,
        _ => 1,
    }
}

/// Thread pool sized by `BESSEL_SD_THREADS` when set.
pub fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("BESSEL_SD_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .map_err(|_| commands::UsageError(format!("BESSEL_SD_THREADS must be a positive integer, got `{raw}`")))?;
        if n == 0 {
            return Err(commands::UsageError("BESSEL_SD_THREADS must be at least 1".into()).into());
        }
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}
