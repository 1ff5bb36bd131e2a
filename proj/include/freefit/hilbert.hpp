#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "freefit/errors.hpp"

namespace freefit {

using Word = std::uint32_t;

// Occupation of one many-body configuration: bit j of each word is site j.
// Fermionic mode order is global and fixed: spin-up modes on sites 0..L-1
// first, then spin-down modes on sites 0..L-1. All Jordan-Wigner signs in
// this library are computed in that order; for a same-spin hop the string
// contributions of the other spin species cancel, so signs reduce to the
// occupied bits strictly between the two sites within one word.
struct SpinConfig {
  Word up = 0;
  Word down = 0;

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;
};

inline std::uint64_t config_key(SpinConfig c) {
  return (static_cast<std::uint64_t>(c.up) << 32) | c.down;
}

namespace detail {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// All L-bit words with exactly n bits set, in increasing numeric order.
inline std::vector<Word> words_with_popcount(int L, int n) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(binomial(L, n)));
  if (n == 0) {
    out.push_back(0);
    return out;
  }
  Word w = (Word{1} << n) - 1;
  const Word limit = L < 32 ? (Word{1} << L) : ~Word{0};
  while (w < limit) {
    out.push_back(w);
    Word lowest = w & (~w + 1);  // Gosper's hack
    Word ripple = w + lowest;
    w = ripple | (((w ^ ripple) >> 2) / lowest);
  }
  return out;
}

// Parity of occupied modes strictly between bit positions i < j of one word.
inline int hop_sign(Word w, int i, int j) {
  if (i > j) std::swap(i, j);
  const Word between = (j - i > 1) ? ((Word{1} << j) - (Word{1} << (i + 1))) : 0;
  return (std::popcount(w & between) & 1) ? -1 : 1;
}

}  // namespace detail

/// Occupation-number basis of a fixed (n_up, n_down) sector on L sites,
/// strictly ordered lexicographically on (up word, down word).
class SectorBasis {
 public:
  SectorBasis(int L, int n_up, int n_down, std::vector<SpinConfig> states)
      : L_(L), n_up_(n_up), n_down_(n_down), states_(std::move(states)) {}

  int sites() const { return L_; }
  int n_up() const { return n_up_; }
  int n_down() const { return n_down_; }
  std::size_t dimension() const { return states_.size(); }
  const std::vector<SpinConfig>& states() const { return states_; }
  const SpinConfig& state(std::size_t i) const { return states_[i]; }

  std::size_t index_of(SpinConfig c) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), c,
                               [](SpinConfig a, SpinConfig b) { return config_key(a) < config_key(b); });
    if (it == states_.end() || !(*it == c)) throw domain_error("configuration not in sector basis");
    return static_cast<std::size_t>(it - states_.begin());
  }

  bool contains(SpinConfig c) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), c,
                               [](SpinConfig a, SpinConfig b) { return config_key(a) < config_key(b); });
    return it != states_.end() && *it == c;
  }

 private:
  int L_, n_up_, n_down_;
  std::vector<SpinConfig> states_;
};

/// Basis of n spinless fermions on M modes; words ordered numerically.
class SpinlessBasis {
 public:
  SpinlessBasis(int M, int n, std::vector<Word> states)
      : M_(M), n_(n), states_(std::move(states)) {}

  int modes() const { return M_; }
  int particles() const { return n_; }
  std::size_t dimension() const { return states_.size(); }
  const std::vector<Word>& states() const { return states_; }
  Word state(std::size_t i) const { return states_[i]; }

  std::size_t index_of(Word w) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), w);
    if (it == states_.end() || *it != w) throw domain_error("configuration not in spinless basis");
    return static_cast<std::size_t>(it - states_.begin());
  }

 private:
  int M_, n_;
  std::vector<Word> states_;
};

inline SectorBasis build_sector_basis(int L, int n_up, int n_down) {
  if (L < 1) throw domain_error("site count must be >= 1");
  if (L > 12) throw capacity_error("site count exceeds desk-scale guard (L <= 12)");
  if (n_up < 0 || n_up > L || n_down < 0 || n_down > L)
    throw domain_error("particle counts must lie in [0, L]");

  const auto ups = detail::words_with_popcount(L, n_up);
  const auto downs = detail::words_with_popcount(L, n_down);
  std::vector<SpinConfig> states;
  states.reserve(ups.size() * downs.size());
  for (Word u : ups)
    for (Word d : downs) states.push_back({u, d});
  // Word lists are produced in increasing order, so this is already
  // lexicographic on (up, down); keep the sort as a guarantee.
  std::sort(states.begin(), states.end(),
            [](SpinConfig a, SpinConfig b) { return config_key(a) < config_key(b); });
  return SectorBasis(L, n_up, n_down, std::move(states));
}

inline SpinlessBasis build_spinless_basis(int M, int n) {
  if (M < 1 || M > 24) throw domain_error("mode count must lie in [1, 24]");
  if (n < 0 || n > M) throw domain_error("particle count must lie in [0, M]");
  return SpinlessBasis(M, n, detail::words_with_popcount(M, n));
}

}  // namespace freefit
