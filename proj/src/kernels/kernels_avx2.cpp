// AVX2 variants. This translation unit is the only one compiled with -mavx2;
// dispatch.cpp never calls into it unless the CPU reports AVX2.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "guidiff/kernels.hpp"

namespace guidiff::kernels::avx2 {
namespace {

double color_distance_sum(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    const __m128i rgb_only = _mm_set1_epi32(0x00FFFFFF);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m128i va = _mm_and_si128(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + 4 * i)), rgb_only);
        const __m128i vb = _mm_and_si128(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + 4 * i)), rgb_only);
        const __m256i d = _mm256_sub_epi16(_mm256_cvtepu8_epi16(va), _mm256_cvtepu8_epi16(vb));
        // (r^2+g^2, b^2+0) per pixel, then fold the pairs.
        const __m256i sq = _mm256_madd_epi16(d, d);
        const __m256i h = _mm256_hadd_epi32(sq, sq);
        const __m256i packed = _mm256_permute4x64_epi64(h, 0x08);
        const __m256d dist = _mm256_sqrt_pd(_mm256_cvtepi32_pd(_mm256_castsi256_si128(packed)));
        acc = _mm256_add_pd(acc, dist);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        const int dr = int(a[4 * i]) - int(b[4 * i]);
        const int dg = int(a[4 * i + 1]) - int(b[4 * i + 1]);
        const int db = int(a[4 * i + 2]) - int(b[4 * i + 2]);
        sum += std::sqrt(static_cast<double>(dr * dr + dg * dg + db * db));
    }
    return sum;
}

std::size_t count_mismatch(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        count += static_cast<std::size_t>(__builtin_popcount(~eq));
    }
    for (; i < n; ++i) count += a[i] != b[i];
    return count;
}

void sum121(const std::uint16_t* a, const std::uint16_t* b, const std::uint16_t* c,
            std::uint16_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i));
        const __m256i s = _mm256_add_epi16(_mm256_add_epi16(va, _mm256_slli_epi16(vb, 1)), vc);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), s);
    }
    for (; i < n; ++i) out[i] = static_cast<std::uint16_t>(a[i] + 2 * b[i] + c[i]);
}

inline __m256i load_u16x8(const std::uint16_t* p) {
    return _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

std::size_t perceptual_mask(const std::uint16_t* const a[3], const std::uint16_t* const b[3],
                            std::uint32_t threshold, std::uint8_t* mask, std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    if (threshold != std::numeric_limits<std::uint32_t>::max()) {
        const __m256i limit = _mm256_set1_epi32(static_cast<int>(threshold + 1));
        const __m256i wr = _mm256_set1_epi32(77);
        const __m256i wg = _mm256_set1_epi32(150);
        const __m256i wb = _mm256_set1_epi32(29);
        for (; i + 8 <= n; i += 8) {
            const __m256i dr = _mm256_sub_epi32(load_u16x8(a[0] + i), load_u16x8(b[0] + i));
            const __m256i dg = _mm256_sub_epi32(load_u16x8(a[1] + i), load_u16x8(b[1] + i));
            const __m256i db = _mm256_sub_epi32(load_u16x8(a[2] + i), load_u16x8(b[2] + i));
            __m256i d = _mm256_mullo_epi32(_mm256_mullo_epi32(dr, dr), wr);
            d = _mm256_add_epi32(d, _mm256_mullo_epi32(_mm256_mullo_epi32(dg, dg), wg));
            d = _mm256_add_epi32(d, _mm256_mullo_epi32(_mm256_mullo_epi32(db, db), wb));
            // unsigned d > threshold  <=>  max(d, threshold+1) == d
            const __m256i gt = _mm256_cmpeq_epi32(_mm256_max_epu32(d, limit), d);
            const unsigned bits = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(gt)));
            for (int k = 0; k < 8; ++k) mask[i + k] = static_cast<std::uint8_t>((bits >> k) & 1u);
            count += static_cast<std::size_t>(__builtin_popcount(bits));
        }
    }
    for (; i < n; ++i) {
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
    const __m256i byte = _mm256_set1_epi32(0xFF);
    const __m256i wr = _mm256_set1_epi32(77);
    const __m256i wg = _mm256_set1_epi32(150);
    const __m256i wb = _mm256_set1_epi32(29);
    const __m256i half = _mm256_set1_epi32(128);
    // Gathers byte 0 of every 32-bit lane into the low 4 bytes of each 128-bit half.
    const __m256i pick = _mm256_setr_epi8(0, 4, 8, 12, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1,
                                          0, 4, 8, 12, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i px = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rgba + 4 * i));
        const __m256i r = _mm256_and_si256(px, byte);
        const __m256i g = _mm256_and_si256(_mm256_srli_epi32(px, 8), byte);
        const __m256i b = _mm256_and_si256(_mm256_srli_epi32(px, 16), byte);
        __m256i y = _mm256_add_epi32(_mm256_mullo_epi32(r, wr), _mm256_mullo_epi32(g, wg));
        y = _mm256_add_epi32(y, _mm256_mullo_epi32(b, wb));
        y = _mm256_srli_epi32(_mm256_add_epi32(y, half), 8);
        const __m256i bytes = _mm256_shuffle_epi8(y, pick);
        const auto lo = static_cast<std::uint32_t>(_mm256_extract_epi32(bytes, 0));
        const auto hi = static_cast<std::uint32_t>(_mm256_extract_epi32(bytes, 4));
        for (int k = 0; k < 4; ++k) {
            out[i + k] = static_cast<std::uint8_t>(lo >> (8 * k));
            out[i + 4 + k] = static_cast<std::uint8_t>(hi >> (8 * k));
        }
    }
    for (; i < n; ++i) {
        const unsigned v = 77u * rgba[4 * i] + 150u * rgba[4 * i + 1] + 29u * rgba[4 * i + 2] + 128u;
        out[i] = static_cast<std::uint8_t>(v >> 8);
    }
}

void threshold(const std::uint8_t* in, std::uint8_t t, std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    if (t != 255) {
        const __m256i limit = _mm256_set1_epi8(static_cast<char>(t + 1));
        const __m256i one = _mm256_set1_epi8(1);
        for (; i + 32 <= n; i += 32) {
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + i));
            const __m256i gt = _mm256_cmpeq_epi8(_mm256_max_epu8(v, limit), v);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(gt, one));
        }
    }
    for (; i < n; ++i) out[i] = in[i] > t ? 1 : 0;
}

}  // namespace

extern const KernelTable table;
const KernelTable table{
    Backend::Avx2, color_distance_sum, count_mismatch, sum121, perceptual_mask, luma, threshold,
};

}  // namespace guidiff::kernels::avx2
