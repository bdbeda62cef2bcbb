#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "relax/errors.hpp"

namespace relax {

/// Componentwise box with a deterministic low-discrepancy sampling plan.
struct SampleBox {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    int count = 1000;
    std::uint64_t seed = 0;

    int dim() const { return static_cast<int>(lo.size()); }

    void validate() const {
        if (lo.size() != hi.size())
            throw ContractViolation("SampleBox: lo/hi dimension mismatch");
        if (count < 1)
            throw ContractViolation("SampleBox: count >= 1 required");
        for (int i = 0; i < dim(); ++i)
            if (!(lo[i] < hi[i]))
                throw ContractViolation("SampleBox: lo < hi required componentwise");
    }

    static SampleBox cube(int dim, double lo, double hi, int count = 1000,
                          std::uint64_t seed = 0) {
        SampleBox b;
        b.lo = Eigen::VectorXd::Constant(dim, lo);
        b.hi = Eigen::VectorXd::Constant(dim, hi);
        b.count = count;
        b.seed = seed;
        return b;
    }

    /// Cartesian product of two boxes, used to sample state pairs.
    static SampleBox pair(const SampleBox& a) {
        SampleBox b;
        b.lo.resize(2 * a.dim());
        b.hi.resize(2 * a.dim());
        b.lo << a.lo, a.lo;
        b.hi << a.hi, a.hi;
        b.count = a.count;
        b.seed = a.seed;
        return b;
    }
};

/// Van der Corput radical inverse in the given base.
inline double radical_inverse(std::uint64_t base, std::uint64_t i) {
    double inv_base = 1.0 / static_cast<double>(base);
    double f = inv_base;
    double r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv_base;
    }
    return r;
}

/// Halton points mapped into a SampleBox. Deterministic given (box.seed, index);
/// the seed shifts the start index of the sequence.
class HaltonSampler {
public:
    explicit HaltonSampler(SampleBox box) : box_(std::move(box)) {
        box_.validate();
        if (box_.dim() > static_cast<int>(kNumBases))
            throw ContractViolation("HaltonSampler: dimension too large");
        offset_ = 1 + box_.seed % 65521;
    }

    Eigen::VectorXd point(int index) const {
        Eigen::VectorXd x(box_.dim());
        const std::uint64_t i = offset_ + static_cast<std::uint64_t>(index);
        for (int d = 0; d < box_.dim(); ++d) {
            double t = radical_inverse(kBases[d], i);
            x[d] = box_.lo[d] + t * (box_.hi[d] - box_.lo[d]);
        }
        return x;
    }

    int count() const { return box_.count; }

private:
    static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    static constexpr std::size_t kNumBases = sizeof(kBases) / sizeof(kBases[0]);
    SampleBox box_;
    std::uint64_t offset_;
};

} // namespace relax
