#pragma once

namespace chronograph {

// Worker count for parallel kernels. 0 or negative requests the default,
// which honors the CHRONOGRAPH_THREADS environment variable and otherwise
// falls back to the OpenMP maximum.
int effective_threads(int requested = 0);

}  // namespace chronograph
