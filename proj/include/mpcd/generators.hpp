#pragma once

#include <cstdint>
#include <string>

#include "mpcd/graph.hpp"
#include "mpcd/oracle.hpp"

namespace mpcd {

// Generator randomness is quarantined here: the algorithms consume zero
// random bits, so this is the only PRNG in the repository.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Unbiased uniform draw from [0, n) via rejection.
  uint64_t below(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }
};

struct GenSpec {
  std::string kind;  // gnp random_regular grid tree star clique
                     // disjoint_edges blowup
  NodeId n = 0;
  int64_t param_a = 0;  // regular: degree; grid: rows; blowup: base cycle len
  int64_t param_b = 0;  // grid: cols; blowup: group size
  int64_t prob_num = 0;  // gnp edge probability num/den (exact)
  int64_t prob_den = 1;
  uint64_t seed = 0;
};

Graph generate_graph(const GenSpec& spec);

// Palette kinds: "shared" = {0..deg(v)} everywhere (adversarial overlap);
// "random" = deg+1 distinct draws from [universe]; "banded" = {v..v+deg}.
PaletteMap generate_palettes(const Graph& g, const std::string& kind,
                             int64_t universe, uint64_t seed);

}  // namespace mpcd
