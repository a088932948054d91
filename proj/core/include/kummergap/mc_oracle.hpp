#pragma once
#include <cstdint>

namespace kummergap {

struct McEstimate {
    double p_hat;
    std::int64_t paths;
    double ci_low;
    double ci_high;
    double ci_level;
    std::uint64_t seed;
    double dt;
};

// Euler walk of an m-dimensional Wiener process from t=1 (where it is a
// standard normal), flagging |x|^2 >= y^2 t at any grid point of [1,n].
// Per-path RNG substreams keyed by (seed, path) make the estimate
// independent of the worker count; KUMMER_GAP_THREADS overrides it.
McEstimate estimate_pfa(int m, double n, double y, std::int64_t paths, double dt,
                        std::uint64_t seed);

} // namespace kummergap
