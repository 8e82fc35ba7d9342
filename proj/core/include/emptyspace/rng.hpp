#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace emptyspace {

//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based block function (Salmon et al., SC'11).
 *
 * Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits. There is
 * no internal state: any block can be generated directly from its counter.
 */
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key);
};

//---------------------------------------------------------------------------//
/*!
 * Reproducible random stream addressed by (seed, stream id).
 *
 * The Philox key is the 64-bit seed; the counter holds the stream id in its
 * upper 64 bits and the block index in the lower 64 bits. Substreams derive a
 * new stream id by hashing (parent id, child index) with splitmix64, so a
 * replication, parent point, or t-grid index can own a stream whose content
 * does not depend on the order in which other streams are consumed.
 *
 * Satisfies UniformRandomBitGenerator so it can drive <random> distributions.
 */
class RandomStream
{
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()();

    //! Uniform on [0, 1) with 53 random bits
    double uniform();
    //! Uniform on (0, 1)
    double uniform_open();
    //! Standard normal
    double normal();

    RandomStream substream(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace emptyspace
