// AVX2 popcount kernels. Compiled with -mavx2 for this TU only; callers must
// go through the dispatcher in kernels.cpp, which checks cpuid first.

#include "subleak/bitkern/kernels.hpp"

#if defined(SUBLEAK_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace subleak::bitkern::detail {

namespace {

// Harley-Seal style nibble popcount: per-byte counts via a 16-entry LUT and
// vpshufb, horizontally summed with vpsadbw.
inline __m256i popcount_bytes(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                           _mm256_shuffle_epi8(lut, hi));
}

inline std::uint64_t hsum_sad(__m256i acc) {
    __m256i sad = _mm256_sad_epu8(acc, _mm256_setzero_si256());
    return static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 0)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 1)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 2)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 3));
}

} // namespace

std::uint64_t popcount_avx2(std::span<const std::uint64_t> words) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    // Byte counters saturate after 255 adds; 8 vectors per round stays far under.
    while (i + 4 <= words.size()) {
        __m256i acc = _mm256_setzero_si256();
        std::size_t rounds = 0;
        while (i + 4 <= words.size() && rounds < 8) {
            __m256i v = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(words.data() + i));
            acc = _mm256_add_epi8(acc, popcount_bytes(v));
            i += 4;
            ++rounds;
        }
        total += hsum_sad(acc);
    }
    for (; i < words.size(); ++i)
        total += static_cast<std::uint64_t>(std::popcount(words[i]));
    return total;
}

std::uint64_t and_popcount_avx2(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    while (i + 4 <= a.size()) {
        __m256i acc = _mm256_setzero_si256();
        std::size_t rounds = 0;
        while (i + 4 <= a.size() && rounds < 8) {
            __m256i va = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(a.data() + i));
            __m256i vb = _mm256_loadu_si256(
                reinterpret_cast<const __m256i*>(b.data() + i));
            acc = _mm256_add_epi8(acc, popcount_bytes(_mm256_and_si256(va, vb)));
            i += 4;
            ++rounds;
        }
        total += hsum_sad(acc);
    }
    for (; i < a.size(); ++i)
        total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

} // namespace subleak::bitkern::detail

#endif // SUBLEAK_HAVE_AVX2
