#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Bit-population kernels behind the matrix code. A scalar reference
// implementation always exists; an AVX2 variant is compiled on x86-64 and
// picked at startup if the CPU supports it. Both must agree bit for bit,
// which the test suite checks on random inputs.
namespace subleak::bitkern {

enum class Backend { scalar, avx2 };

// Backend chosen at startup (best available). set_backend() can force the
// scalar path; asking for an unavailable backend throws.
Backend active_backend();
void set_backend(Backend b);
bool backend_available(Backend b);

// Total set bits in a word span.
std::uint64_t popcount(std::span<const std::uint64_t> words);

// popcount(a & b); spans must be the same length.
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);

// Per-block popcounts over a packed sequence of equally sized blocks.
// blocks.size() must be a multiple of words_per_block; out receives one
// count per block.
void block_popcounts(std::span<const std::uint64_t> blocks,
                     std::size_t words_per_block,
                     std::span<std::uint64_t> out);

// out[i] = popcount(query & blocks[i]) for each block.
void and_popcounts_many(std::span<const std::uint64_t> query,
                        std::span<const std::uint64_t> blocks,
                        std::size_t words_per_block,
                        std::span<std::uint64_t> out);

namespace detail {
std::uint64_t popcount_scalar(std::span<const std::uint64_t> words);
std::uint64_t and_popcount_scalar(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b);
#if defined(SUBLEAK_HAVE_AVX2)
std::uint64_t popcount_avx2(std::span<const std::uint64_t> words);
std::uint64_t and_popcount_avx2(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b);
#endif
} // namespace detail

} // namespace subleak::bitkern
