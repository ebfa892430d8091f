#pragma once

// Pixel inner loops. Every kernel has a scalar reference implementation and,
// where the target supports it, a vector variant (AVX2 on x86-64, NEON on
// AArch64). The active table is picked once at runtime from CPU features and
// can be forced with GUIDIFF_KERNELS=scalar|avx2|neon.
//
// All kernels except color_distance_sum are exact integer arithmetic, so the
// vector variants must match the scalar reference bit for bit.
// color_distance_sum differs only by floating-point summation order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace guidiff::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b) noexcept;
std::optional<Backend> parse_backend(std::string_view name) noexcept;

struct KernelTable {
    Backend backend;

    /// Sum over pixels of sqrt(dr^2 + dg^2 + db^2) for two RGBA buffers of n pixels.
    double (*color_distance_sum)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

    /// Number of positions where a[i] != b[i].
    std::size_t (*count_mismatch)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);

    /// out[i] = a[i] + 2*b[i] + c[i]. Caller guarantees no uint16 overflow.
    void (*sum121)(const std::uint16_t* a, const std::uint16_t* b, const std::uint16_t* c,
                   std::uint16_t* out, std::size_t n);

    /// Weighted squared distance between two sets of (R,G,B) uint16 planes:
    ///   d = 77*dR^2 + 150*dG^2 + 29*dB^2   (uint32, planes must be <= 4080)
    /// mask[i] = d > threshold. Returns the number of set mask entries.
    std::size_t (*perceptual_mask)(const std::uint16_t* const a[3], const std::uint16_t* const b[3],
                                   std::uint32_t threshold, std::uint8_t* mask, std::size_t n);

    /// luma[i] = (77*R + 150*G + 29*B + 128) >> 8 for RGBA input.
    void (*luma)(const std::uint8_t* rgba, std::uint8_t* luma, std::size_t n);

    /// out[i] = in[i] > t ? 1 : 0.
    void (*threshold)(const std::uint8_t* in, std::uint8_t t, std::uint8_t* out, std::size_t n);
};

/// Table selected for this process (CPU detection, overridable by env var).
const KernelTable& active() noexcept;

/// Table for a specific backend, or nullptr when it is not compiled in or the
/// CPU does not support it.
const KernelTable* table_for(Backend b) noexcept;

/// Backends usable on this machine, scalar first.
std::vector<Backend> available_backends();

namespace scalar {
extern const KernelTable table;
}

}  // namespace guidiff::kernels
