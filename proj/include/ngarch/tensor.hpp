#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ngarch {

// Dense row-major matrix of doubles. Vectors are n x 1, scalars 1 x 1.
struct Tensor {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Tensor() = default;
    Tensor(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}
    Tensor(int r, int c, std::initializer_list<double> values);

    static Tensor scalar(double v);
    static Tensor column(const std::vector<double>& v);

    int size() const { return rows * cols; }
    bool is_scalar() const { return rows == 1 && cols == 1; }
    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    bool all_finite() const;
};

// Deterministic normal/uniform source. mt19937_64 plus a hand-rolled
// Box-Muller so sampled streams do not depend on libstdc++ distribution
// internals (checkpoint bytes must reproduce across toolchains).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed == 0 ? 0x9e3779b97f4a7c15ull : seed) {}

    // uniform in (0, 1)
    double uniform();
    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    uint64_t next_u64();

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ngarch
