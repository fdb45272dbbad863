#pragma once

#include <cstdint>
#include <vector>

#include "ionet/net.hpp"

namespace ionet {

/// Dense numbering of the markings with a fixed place count and fixed total,
/// in lexicographic order. Firing conserves totals, so each stratum is a
/// finite, self-contained piece of the marking graph.
class Stratum {
public:
  Stratum(std::size_t places, std::uint64_t total)
      : n_(places), k_(total) {
    // binom_[i][j] = C(i, j) for i <= k + n.
    std::size_t rows = static_cast<std::size_t>(k_ + n_ + 1);
    binom_.assign(rows, std::vector<std::uint64_t>(n_ + 1, 0));
    for (std::size_t i = 0; i < rows; ++i) {
      binom_[i][0] = 1;
      for (std::size_t j = 1; j <= n_ && j <= i; ++j)
        binom_[i][j] =
            binom_[i - 1][j - 1] + (i - 1 >= j ? binom_[i - 1][j] : 0);
    }
  }

  std::size_t places() const { return n_; }
  std::uint64_t total() const { return k_; }

  std::uint64_t size() const {
    if (n_ == 0) return k_ == 0 ? 1 : 0;
    return choose(k_ + n_ - 1, n_ - 1);
  }

  /// Lexicographic rank of a marking with total() tokens.
  std::uint64_t rank(const Marking& m) const {
    std::uint64_t r = 0;
    std::uint64_t rest = k_;
    for (std::size_t p = 0; p + 1 < n_; ++p) {
      // markings with a smaller count at p come first
      for (Count v = 0; v < m[p]; ++v)
        r += choose(rest - v + n_ - p - 2, n_ - p - 2);
      rest -= m[p];
    }
    return r;
  }

  Marking unrank(std::uint64_t r) const {
    Marking m;
    m.counts.assign(n_, 0);
    std::uint64_t rest = k_;
    for (std::size_t p = 0; p + 1 < n_; ++p) {
      Count v = 0;
      for (;;) {
        std::uint64_t block = choose(rest - v + n_ - p - 2, n_ - p - 2);
        if (r < block) break;
        r -= block;
        ++v;
      }
      m[p] = v;
      rest -= v;
    }
    if (n_ > 0) m[n_ - 1] = static_cast<Count>(rest);
    return m;
  }

private:
  std::uint64_t choose(std::uint64_t i, std::uint64_t j) const {
    if (j > n_) return 0;
    return binom_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  std::size_t n_;
  std::uint64_t k_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

}  // namespace ionet
