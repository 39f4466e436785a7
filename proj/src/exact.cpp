#include "lumpex/exact.hpp"

#include <stdexcept>
#include <utility>

namespace lumpex {

int rank(std::span<const IntVector> vectors) {
  if (vectors.empty()) return 0;
  const std::size_t cols = vectors.front().size();
  for (const IntVector& v : vectors) {
    if (v.size() != cols) throw std::invalid_argument("rank: dimension mismatch");
  }
  std::vector<IntVector> m(vectors.begin(), vectors.end());
  const std::size_t rows = m.size();

  // Bareiss elimination; every stored entry stays an integer minor.
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

bool in_span(const IntVector& v, std::span<const IntVector> basis) {
  std::vector<IntVector> all(basis.begin(), basis.end());
  const int base = rank(all);
  all.push_back(v);
  return rank(all) == base;
}

}  // namespace lumpex
