#include <cstdlib>
#include <iostream>

#include "guidiff/kernels.hpp"

namespace guidiff::kernels {

#if defined(GUIDIFF_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif
#if defined(GUIDIFF_HAVE_NEON)
namespace neon {
extern const KernelTable table;
}
#endif

std::string_view backend_name(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) noexcept {
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2") return Backend::Avx2;
    if (name == "neon") return Backend::Neon;
    return std::nullopt;
}

const KernelTable* table_for(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return &scalar::table;
        case Backend::Avx2:
#if defined(GUIDIFF_HAVE_AVX2)
            if (__builtin_cpu_supports("avx2")) return &avx2::table;
#endif
            return nullptr;
        case Backend::Neon:
#if defined(GUIDIFF_HAVE_NEON)
            return &neon::table;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
        if (table_for(b)) out.push_back(b);
    }
    return out;
}

namespace {

const KernelTable& select() {
    if (const char* forced = std::getenv("GUIDIFF_KERNELS")) {
        if (auto b = parse_backend(forced)) {
            if (const KernelTable* t = table_for(*b)) return *t;
        }
        std::cerr << "guidiff: GUIDIFF_KERNELS=" << forced
                  << " not available here, using automatic selection\n";
    }
    for (Backend b : {Backend::Avx2, Backend::Neon}) {
        if (const KernelTable* t = table_for(b)) return *t;
    }
    return scalar::table;
}

}  // namespace

const KernelTable& active() noexcept {
    static const KernelTable& chosen = select();
    return chosen;
}

}  // namespace guidiff::kernels
