#include <cmath>

#include "guidiff/kernels.hpp"

namespace guidiff::kernels::scalar {
namespace {

double color_distance_sum(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int dr = int(a[4 * i]) - int(b[4 * i]);
        const int dg = int(a[4 * i + 1]) - int(b[4 * i + 1]);
        const int db = int(a[4 * i + 2]) - int(b[4 * i + 2]);
        sum += std::sqrt(static_cast<double>(dr * dr + dg * dg + db * db));
    }
    return sum;
}

std::size_t count_mismatch(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += a[i] != b[i];
    return count;
}

void sum121(const std::uint16_t* a, const std::uint16_t* b, const std::uint16_t* c,
            std::uint16_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<std::uint16_t>(a[i] + 2 * b[i] + c[i]);
    }
}

std::size_t perceptual_mask(const std::uint16_t* const a[3], const std::uint16_t* const b[3],
                            std::uint32_t threshold, std::uint8_t* mask, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t dr = std::int32_t(a[0][i]) - std::int32_t(b[0][i]);
        const std::int32_t dg = std::int32_t(a[1][i]) - std::int32_t(b[1][i]);
        const std::int32_t db = std::int32_t(a[2][i]) - std::int32_t(b[2][i]);
        const std::uint32_t d = 77u * std::uint32_t(dr * dr) + 150u * std::uint32_t(dg * dg) +
                                29u * std::uint32_t(db * db);
        const std::uint8_t on = d > threshold ? 1 : 0;
        mask[i] = on;
        count += on;
    }
    return count;
}

void luma(const std::uint8_t* rgba, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned y = 77u * rgba[4 * i] + 150u * rgba[4 * i + 1] + 29u * rgba[4 * i + 2] + 128u;
        out[i] = static_cast<std::uint8_t>(y >> 8);
    }
}

void threshold(const std::uint8_t* in, std::uint8_t t, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] > t ? 1 : 0;
}

}  // namespace

const KernelTable table{
    Backend::Scalar, color_distance_sum, count_mismatch, sum121, perceptual_mask, luma, threshold,
};

}  // namespace guidiff::kernels::scalar
