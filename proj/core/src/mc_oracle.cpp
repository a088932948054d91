#include "kummergap/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "kummergap/errors.hpp"

namespace kummergap {
namespace {

constexpr int kMaxDim = 64;
constexpr double kWilsonZ99 = 2.5758293035489004; // two-sided 99% normal quantile

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
  public:
    Xoshiro256pp(std::uint64_t seed, std::uint64_t path) {
        std::uint64_t sm = seed + (path + 1) * 0x9E3779B97F4A7C15ULL;
        for (auto& w : s_) w = splitmix64(sm);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }
    std::uint64_t next() {
        const std::uint64_t out = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return out;
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::uint64_t s_[4];
};

// Marsaglia polar pairs with a cached spare
class NormalGen {
  public:
    explicit NormalGen(Xoshiro256pp& rng) : rng_(rng) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * rng_.uniform() - 1.0;
            v = 2.0 * rng_.uniform() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        have_ = true;
        return u * f;
    }

  private:
    Xoshiro256pp& rng_;
    bool have_ = false;
    double spare_ = 0.0;
};

bool path_crosses(int m, double n, double y2, double dt, std::uint64_t seed,
                  std::uint64_t path) {
    Xoshiro256pp rng(seed, path);
    NormalGen gauss(rng);
    double x[kMaxDim];
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
        x[i] = gauss();
        s += x[i] * x[i];
    }
    if (s >= y2) return true; // t = 1 is itself a grid point
    const auto full = static_cast<std::int64_t>(std::floor((n - 1.0) / dt + 1e-12));
    const double sq_dt = std::sqrt(dt);
    for (std::int64_t j = 1; j <= full; ++j) {
        const double t = 1.0 + static_cast<double>(j) * dt;
        s = 0.0;
        for (int i = 0; i < m; ++i) {
            x[i] += sq_dt * gauss();
            s += x[i] * x[i];
        }
        if (s >= y2 * t) return true;
    }
    const double rest = n - (1.0 + static_cast<double>(full) * dt);
    if (rest > 1e-12) {
        const double sq_rest = std::sqrt(rest);
        s = 0.0;
        for (int i = 0; i < m; ++i) {
            x[i] += sq_rest * gauss();
            s += x[i] * x[i];
        }
        if (s >= y2 * n) return true;
    }
    return false;
}

int worker_count(std::int64_t paths) {
    int threads = 0;
    if (const char* env = std::getenv("KUMMER_GAP_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) threads = static_cast<int>(std::min(v, 256L));
    }
    if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return static_cast<int>(std::min<std::int64_t>(threads, paths));
}

} // namespace

McEstimate estimate_pfa(int m, double n, double y, std::int64_t paths, double dt,
                        std::uint64_t seed) {
    if (m < 1 || m > kMaxDim) throw DomainError("mc: dimension out of range");
    if (!(n > 1.0)) throw DomainError("mc: n must exceed 1");
    if (!(y >= 0.0)) throw DomainError("mc: y must be nonnegative");
    if (!(dt > 0.0 && dt <= 0.01)) throw DomainError("mc: need 0 < dt <= 0.01");
    if (paths < 1) throw DomainError("mc: need at least one path");

    const double y2 = y * y;
    const int threads = worker_count(paths);
    std::vector<std::int64_t> hits(static_cast<size_t>(threads), 0);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    const std::int64_t chunk = (paths + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const std::int64_t lo = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t hi = std::min(paths, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            std::int64_t c = 0;
            for (std::int64_t p = lo; p < hi; ++p)
                if (path_crosses(m, n, y2, dt, seed, static_cast<std::uint64_t>(p))) ++c;
            hits[static_cast<size_t>(w)] = c;
        });
    }
    for (auto& th : pool) th.join();

    std::int64_t crossed = 0;
    for (const std::int64_t c : hits) crossed += c;
    const double p_hat = static_cast<double>(crossed) / static_cast<double>(paths);

    const double nn = static_cast<double>(paths);
    const double zz = kWilsonZ99 * kWilsonZ99;
    const double center = (p_hat + zz / (2.0 * nn)) / (1.0 + zz / nn);
    const double half = kWilsonZ99 *
                        std::sqrt(p_hat * (1.0 - p_hat) / nn + zz / (4.0 * nn * nn)) /
                        (1.0 + zz / nn);
    return {p_hat,
            paths,
            std::max(0.0, center - half),
            std::min(1.0, center + half),
            0.99,
            seed,
            dt};
}

} // namespace kummergap
