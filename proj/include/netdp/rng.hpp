#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace netdp {

// Deterministic stream generator (xoshiro256++ seeded through SplitMix64).
// A stream is fully identified by (seed, stream_id): the same pair yields
// the same draw sequence on every build of this code base. std::random
// engines are avoided on purpose; libstdc++ distributions do not promise
// cross-version stability.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  // Uniform on (0, 1); safe to feed into log().
  double uniform_open();

  bool bernoulli(double p);

  // Uniform integer in [0, bound), bound > 0. Rejection-free modulo bias is
  // acceptable here only because bound << 2^64 in every use.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::array<std::uint64_t, 4> s_{};
};

// SplitMix64 step; also the basis of stream-id derivation.
std::uint64_t splitmix64(std::uint64_t x);

// Folds a path of integers into a child stream id. Derivation rule
// (documented in the README): id = fold(splitmix64, path elements), so
// sub-streams for (stage, graph index, replicate index) never collide for
// distinct paths in practice.
std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> path);

inline RngStream derive_stream(std::uint64_t seed,
                               std::initializer_list<std::uint64_t> path) {
  return RngStream(seed, derive_stream_id(path));
}

}  // namespace netdp
