#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace latdsp {

// Square bit relation stored row-major in 64-bit words. Row r holds the set
// {c : rel(r, c)}; all rows share one contiguous buffer.
class BitRows {
public:
  BitRows() = default;
  BitRows(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  std::uint64_t* row(std::size_t r) { return data_.data() + r * wpr_; }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * wpr_; }

  bool get(std::size_t r, std::size_t c) const {
    return (row(r)[c >> 6] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { row(r)[c >> 6] |= std::uint64_t(1) << (c & 63); }
  void clear(std::size_t r, std::size_t c) { row(r)[c >> 6] &= ~(std::uint64_t(1) << (c & 63)); }

  void or_row(std::size_t dst, std::size_t src) {
    auto* d = row(dst);
    const auto* s = row(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] |= s[w];
  }

  // row(sub) setminus row(sup) empty?
  bool row_subset(std::size_t sub, std::size_t sup) const {
    const auto* a = row(sub);
    const auto* b = row(sup);
    for (std::size_t w = 0; w < wpr_; ++w)
      if (a[w] & ~b[w]) return false;
    return true;
  }

  std::size_t row_popcount(std::size_t r) const {
    const auto* a = row(r);
    std::size_t c = 0;
    for (std::size_t w = 0; w < wpr_; ++w) c += std::size_t(std::popcount(a[w]));
    return c;
  }

  BitRows transposed() const {
    BitRows t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto* a = row(r);
      for (std::size_t w = 0; w < wpr_; ++w) {
        std::uint64_t word = a[w];
        while (word) {
          std::size_t c = (w << 6) + std::size_t(std::countr_zero(word));
          t.set(c, r);
          word &= word - 1;
        }
      }
    }
    return t;
  }

  bool rows_equal(std::size_t a, std::size_t b) const {
    const auto* pa = row(a);
    const auto* pb = row(b);
    for (std::size_t w = 0; w < wpr_; ++w)
      if (pa[w] != pb[w]) return false;
    return true;
  }

private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> data_;
};

// Growable single bit-set over a fixed universe.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void clear(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void reset() { for (auto& w : w_) w = 0; }

  std::uint64_t* words() { return w_.data(); }
  const std::uint64_t* words() const { return w_.data(); }
  std::size_t word_count() const { return w_.size(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::size_t(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  // Highest set index, or -1.
  long last() const {
    for (std::size_t w = w_.size(); w-- > 0;)
      if (w_[w]) return long((w << 6) + 63 - std::size_t(std::countl_zero(w_[w])));
    return -1;
  }

  // Lowest set index, or -1.
  long first() const {
    for (std::size_t w = 0; w < w_.size(); ++w)
      if (w_[w]) return long((w << 6) + std::size_t(std::countr_zero(w_[w])));
    return -1;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < w_.size(); ++w) {
      std::uint64_t word = w_[w];
      while (word) {
        f(std::size_t((w << 6) + std::size_t(std::countr_zero(word))));
        word &= word - 1;
      }
    }
  }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace latdsp
