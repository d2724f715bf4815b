#include "chronograph/threads.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace chronograph {

int effective_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHRONOGRAPH_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
            // unparseable value falls through to the OpenMP default
        }
    }
    return omp_get_max_threads();
}

}  // namespace chronograph
