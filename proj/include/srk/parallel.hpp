#pragma once

namespace srk {

// Applies the SRK_THREADS environment variable as an OpenMP thread cap.
// Called once from tool entry points; a no-op when the variable is unset.
void apply_thread_cap_from_env();

int max_threads();

} // namespace srk
