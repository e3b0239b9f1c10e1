#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hll {

// Point in ambient space, p <= 3. Fixed max size keeps it off the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

inline constexpr int kMaxDim = 3;

// Error with a stable machine-readable code ("invalid-argument",
// "under-resolved-kernel", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

// Worker cap shared by all internally parallel operations. 0 = hardware default.
void set_thread_cap(unsigned n);
unsigned thread_cap();

// Deterministic static partition of [0, n) over the worker pool.
// fn(begin, end) runs on disjoint chunks; results must not depend on chunking.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

inline double sqr(double x) { return x * x; }

// |x|^a with fast paths for the exponents the lab uses constantly.
inline double pow_abs(double x, double a) {
    x = std::abs(x);
    if (a == 1.0) return x;
    if (a == 0.5) return std::sqrt(x);
    return std::pow(x, a);
}

// Euclidean distance^alpha, the Hoelder modulus.
inline double dist_alpha(const Vec& x, const Vec& y, double alpha) {
    return pow_abs((x - y).norm(), alpha);
}

// FNV-1a, used to derive run-directory names from canonical parameter strings.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace hll
