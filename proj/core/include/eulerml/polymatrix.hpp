#ifndef EULERML_POLYMATRIX_HPP
#define EULERML_POLYMATRIX_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "eulerml/polynomial.hpp"

namespace eulerml {

/// Dense row-major matrix of polynomials over one ring.
template <class K>
class PolyMatrix {
public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols),
        data_(rows * cols, Polynomial<K>::zero(ring_)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  const Polynomial<K>& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, Polynomial<K> p) {
    requireSameRing(ring_, p.ring());
    data_[r * cols_ + c] = std::move(p);
  }

private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<Polynomial<K>> data_;
};

/// Jacobian of `polys` with respect to the listed variables only: entry (i, j)
/// is the partial of polys[i] by varIndices[j]. Lagrange multipliers and
/// parameters are excluded by not listing them.
template <class K>
PolyMatrix<K> jacobian(const std::vector<Polynomial<K>>& polys,
                       const std::vector<std::size_t>& varIndices) {
  if (polys.empty()) throw ValueError("jacobian of an empty system");
  RingPtr ring = polys.front().ring();
  for (const auto& p : polys) requireSameRing(ring, p.ring());
  PolyMatrix<K> out(ring, polys.size(), varIndices.size());
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < varIndices.size(); ++j)
      out.set(i, j, polys[i].partial(varIndices[j]));
  return out;
}

namespace detail {

// Determinant of the submatrix selected by row/column bitmasks, by cofactor
// expansion along the first selected row. Sub-determinants are memoized per
// minors() call; masks fit in 64 bits because matrix dimensions stay small.
template <class K>
Polynomial<K> maskedDet(const PolyMatrix<K>& m, std::uint64_t rowMask,
                        std::uint64_t colMask,
                        std::unordered_map<std::uint64_t, Polynomial<K>>& memo) {
  if (rowMask == 0) return Polynomial<K>::constant(m.ring(), FieldOps<K>::one());
  std::uint64_t key = rowMask * 0x10000u + colMask;
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::size_t row = static_cast<std::size_t>(__builtin_ctzll(rowMask));
  std::uint64_t subRows = rowMask & (rowMask - 1);
  Polynomial<K> acc = Polynomial<K>::zero(m.ring());
  int sign = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!(colMask & (1ull << c))) continue;
    const Polynomial<K>& entry = m.at(row, c);
    if (!entry.isZero()) {
      Polynomial<K> sub = maskedDet(m, subRows, colMask & ~(1ull << c), memo);
      Polynomial<K> term = entry * sub;
      acc = sign > 0 ? acc + term : acc - term;
    }
    sign = -sign;
  }
  memo.emplace(key, acc);
  return acc;
}

inline void subsets(std::size_t n, std::size_t k, std::uint64_t chosen, std::size_t next,
                    std::vector<std::uint64_t>& out) {
  if (k == 0) {
    out.push_back(chosen);
    return;
  }
  for (std::size_t i = next; i + k <= n; ++i)
    subsets(n, k - 1, chosen | (1ull << i), i + 1, out);
}

} // namespace detail

/// All size x size minors of m, row/column subsets enumerated in lexicographic
/// order. size == 0 yields the single empty determinant {1}; size above
/// min(rows, cols) is an error.
template <class K>
std::vector<Polynomial<K>> minors(const PolyMatrix<K>& m, std::size_t size) {
  if (size > std::min(m.rows(), m.cols()))
    throw ValueError("minor size exceeds matrix dimensions");
  if (m.rows() > 16 || m.cols() > 16)
    throw ValueError("matrix too large for minor enumeration");
  if (size == 0)
    return {Polynomial<K>::constant(m.ring(), FieldOps<K>::one())};

  std::vector<std::uint64_t> rowSets, colSets;
  detail::subsets(m.rows(), size, 0, 0, rowSets);
  detail::subsets(m.cols(), size, 0, 0, colSets);

  std::unordered_map<std::uint64_t, Polynomial<K>> memo;
  std::vector<Polynomial<K>> out;
  out.reserve(rowSets.size() * colSets.size());
  for (std::uint64_t r : rowSets)
    for (std::uint64_t c : colSets) out.push_back(detail::maskedDet<K>(m, r, c, memo));
  return out;
}

} // namespace eulerml

#endif
