#include "subleak/bitkern/kernels.hpp"

#include <bit>

#include "subleak/error.hpp"

namespace subleak::bitkern {

namespace detail {

std::uint64_t popcount_scalar(std::span<const std::uint64_t> words) {
    std::uint64_t n = 0;
    for (std::uint64_t w : words) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

std::uint64_t and_popcount_scalar(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return n;
}

} // namespace detail

namespace {

Backend pick_default() {
#if defined(SUBLEAK_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
    return Backend::scalar;
}

Backend g_backend = pick_default();

} // namespace

Backend active_backend() { return g_backend; }

bool backend_available(Backend b) {
    switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(SUBLEAK_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

void set_backend(Backend b) {
    require(backend_available(b), "bitkern: requested backend unavailable");
    g_backend = b;
}

std::uint64_t popcount(std::span<const std::uint64_t> words) {
#if defined(SUBLEAK_HAVE_AVX2)
    if (g_backend == Backend::avx2) return detail::popcount_avx2(words);
#endif
    return detail::popcount_scalar(words);
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
    require(a.size() == b.size(), "bitkern: span length mismatch");
#if defined(SUBLEAK_HAVE_AVX2)
    if (g_backend == Backend::avx2) return detail::and_popcount_avx2(a, b);
#endif
    return detail::and_popcount_scalar(a, b);
}

void block_popcounts(std::span<const std::uint64_t> blocks,
                     std::size_t words_per_block,
                     std::span<std::uint64_t> out) {
    require(words_per_block > 0, "bitkern: words_per_block must be positive");
    require(blocks.size() % words_per_block == 0,
            "bitkern: blocks not a multiple of block size");
    require(out.size() == blocks.size() / words_per_block,
            "bitkern: output size mismatch");
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = popcount(blocks.subspan(i * words_per_block, words_per_block));
}

void and_popcounts_many(std::span<const std::uint64_t> query,
                        std::span<const std::uint64_t> blocks,
                        std::size_t words_per_block,
                        std::span<std::uint64_t> out) {
    require(query.size() == words_per_block, "bitkern: query size mismatch");
    require(blocks.size() % words_per_block == 0,
            "bitkern: blocks not a multiple of block size");
    require(out.size() == blocks.size() / words_per_block,
            "bitkern: output size mismatch");
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = and_popcount(query,
                              blocks.subspan(i * words_per_block, words_per_block));
}

} // namespace subleak::bitkern
