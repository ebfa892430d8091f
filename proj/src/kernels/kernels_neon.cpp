// NEON variants for AArch64 (Advanced SIMD is mandatory there, so no runtime probe).

#include <arm_neon.h>

#include <cmath>

#include "guidiff/kernels.hpp"

namespace guidiff::kernels::neon {
namespace {

double color_distance_sum(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const uint8x8x4_t pa = vld4_u8(a + 4 * i);
        const uint8x8x4_t pb = vld4_u8(b + 4 * i);
        const uint8x8_t dr = vabd_u8(pa.val[0], pb.val[0]);
        const uint8x8_t dg = vabd_u8(pa.val[1], pb.val[1]);
        const uint8x8_t db = vabd_u8(pa.val[2], pb.val[2]);
        const uint16x8_t r2 = vmull_u8(dr, dr);
        const uint16x8_t g2 = vmull_u8(dg, dg);
        const uint16x8_t b2 = vmull_u8(db, db);
        const uint32x4_t lo =
            vaddw_u16(vaddl_u16(vget_low_u16(r2), vget_low_u16(g2)), vget_low_u16(b2));
        const uint32x4_t hi =
            vaddw_u16(vaddl_u16(vget_high_u16(r2), vget_high_u16(g2)), vget_high_u16(b2));
        const uint32x4_t parts[2] = {lo, hi};
        for (const uint32x4_t& s : parts) {
            const float64x2_t d0 = vsqrtq_f64(vcvtq_f64_u64(vmovl_u32(vget_low_u32(s))));
            const float64x2_t d1 = vsqrtq_f64(vcvtq_f64_u64(vmovl_u32(vget_high_u32(s))));
            acc0 = vaddq_f64(acc0, d0);
            acc1 = vaddq_f64(acc1, d1);
        }
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
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
    const uint8x16_t one = vdupq_n_u8(1);
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t eq = vceqq_u8(vld1q_u8(a + i), vld1q_u8(b + i));
        count += vaddvq_u8(vandq_u8(vmvnq_u8(eq), one));
    }
    for (; i < n; ++i) count += a[i] != b[i];
    return count;
}

void sum121(const std::uint16_t* a, const std::uint16_t* b, const std::uint16_t* c,
            std::uint16_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const uint16x8_t s =
            vaddq_u16(vaddq_u16(vld1q_u16(a + i), vshlq_n_u16(vld1q_u16(b + i), 1)), vld1q_u16(c + i));
        vst1q_u16(out + i, s);
    }
    for (; i < n; ++i) out[i] = static_cast<std::uint16_t>(a[i] + 2 * b[i] + c[i]);
}

inline int32x4_t diff_u16x4(const std::uint16_t* p, const std::uint16_t* q) {
    return vsubq_s32(vreinterpretq_s32_u32(vmovl_u16(vld1_u16(p))),
                     vreinterpretq_s32_u32(vmovl_u16(vld1_u16(q))));
}

std::size_t perceptual_mask(const std::uint16_t* const a[3], const std::uint16_t* const b[3],
                            std::uint32_t threshold, std::uint8_t* mask, std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    const uint32x4_t limit = vdupq_n_u32(threshold);
    for (; i + 4 <= n; i += 4) {
        const int32x4_t dr = diff_u16x4(a[0] + i, b[0] + i);
        const int32x4_t dg = diff_u16x4(a[1] + i, b[1] + i);
        const int32x4_t db = diff_u16x4(a[2] + i, b[2] + i);
        uint32x4_t d = vmulq_n_u32(vreinterpretq_u32_s32(vmulq_s32(dr, dr)), 77u);
        d = vmlaq_n_u32(d, vreinterpretq_u32_s32(vmulq_s32(dg, dg)), 150u);
        d = vmlaq_n_u32(d, vreinterpretq_u32_s32(vmulq_s32(db, db)), 29u);
        const uint32x4_t on = vshrq_n_u32(vcgtq_u32(d, limit), 31);
        mask[i] = static_cast<std::uint8_t>(vgetq_lane_u32(on, 0));
        mask[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u32(on, 1));
        mask[i + 2] = static_cast<std::uint8_t>(vgetq_lane_u32(on, 2));
        mask[i + 3] = static_cast<std::uint8_t>(vgetq_lane_u32(on, 3));
        count += vaddvq_u32(on);
    }
    for (; i < n; ++i) {
        const std::int32_t dr = std::int32_t(a[0][i]) - std::int32_t(b[0][i]);
        const std::int32_t dg = std::int32_t(a[1][i]) - std::int32_t(b[1][i]);
        const std::int32_t db = std::int32_t(a[2][i]) - std::int32_t(b[2][i]);
        const std::uint32_t d = 77u * std::uint32_t(dr * dr) + 150u * std::uint32_t(dg * dg) +
                                29u * std::uint32_t(db * db);
        const std::uint8_t v = d > threshold ? 1 : 0;
        mask[i] = v;
        count += v;
    }
    return count;
}

void luma(const std::uint8_t* rgba, std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const uint8x8x4_t px = vld4_u8(rgba + 4 * i);
        uint16x8_t y = vmull_u8(px.val[0], vdup_n_u8(77));
        y = vmlal_u8(y, px.val[1], vdup_n_u8(150));
        y = vmlal_u8(y, px.val[2], vdup_n_u8(29));
        y = vaddq_u16(y, vdupq_n_u16(128));
        vst1_u8(out + i, vshrn_n_u16(y, 8));
    }
    for (; i < n; ++i) {
        const unsigned v = 77u * rgba[4 * i] + 150u * rgba[4 * i + 1] + 29u * rgba[4 * i + 2] + 128u;
        out[i] = static_cast<std::uint8_t>(v >> 8);
    }
}

void threshold(const std::uint8_t* in, std::uint8_t t, std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    const uint8x16_t limit = vdupq_n_u8(t);
    const uint8x16_t one = vdupq_n_u8(1);
    for (; i + 16 <= n; i += 16) {
        vst1q_u8(out + i, vandq_u8(vcgtq_u8(vld1q_u8(in + i), limit), one));
    }
    for (; i < n; ++i) out[i] = in[i] > t ? 1 : 0;
}

}  // namespace

extern const KernelTable table;
const KernelTable table{
    Backend::Neon, color_distance_sum, count_mismatch, sum121, perceptual_mask, luma, threshold,
};

}  // namespace guidiff::kernels::neon
