//! BLAS thread-count pinning.
//!
//! Every dense kernel here runs on matrices small enough that threaded BLAS
//! only adds scheduling jitter; pinning to one thread keeps results
//! reproducible run to run and avoids the deep per-call stacks the threaded
//! OpenBLAS path needs.

use std::sync::Once;

extern "C" {
    fn openblas_set_num_threads(n: i32);
}

static INIT: Once = Once::new();

/// Force single-threaded BLAS (idempotent, cheap after the first call).
pub(crate) fn single_thread() {
    INIT.call_once(|| unsafe { openblas_set_num_threads(1) });
}
