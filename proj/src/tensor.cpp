#include "ngarch/tensor.hpp"

#include "ngarch/errors.hpp"

#include <cmath>

namespace ngarch {

Tensor::Tensor(int r, int c, std::initializer_list<double> values) : rows(r), cols(c) {
    if (static_cast<int>(values.size()) != r * c)
        throw ShapeMismatch("tensor initializer size does not match shape");
    data.assign(values.begin(), values.end());
}

Tensor Tensor::scalar(double v) {
    Tensor t(1, 1);
    t.data[0] = v;
    return t;
}

Tensor Tensor::column(const std::vector<double>& v) {
    Tensor t(static_cast<int>(v.size()), 1);
    t.data = v;
    return t;
}

bool Tensor::all_finite() const {
    for (double x : data)
        if (!std::isfinite(x)) return false;
    return true;
}

// splitmix64; decorrelates consecutive seeds and never yields 0 state.
uint64_t Rng::next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    // 53-bit mantissa in (0,1); never exactly 0 so log() is safe.
    const uint64_t bits = next_u64() >> 11;
    double u = (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
    return u;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace ngarch
