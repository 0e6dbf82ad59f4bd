#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace symcube {

/// Square 0/1 matrix, rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t v) : v_(v), wpr_((v + 63) / 64), words_(v * wpr_, 0) {}

  static BitMatrix identity(std::size_t v) {
    BitMatrix m(v);
    for (std::size_t i = 0; i < v; ++i) m.set(i, i, true);
    return m;
  }

  static BitMatrix all_ones(std::size_t v) {
    BitMatrix m(v);
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t j = 0; j < v; ++j) m.set(i, j, true);
    return m;
  }

  std::size_t size() const noexcept { return v_; }
  std::size_t words_per_row() const noexcept { return wpr_; }

  bool get(std::size_t i, std::size_t j) const { return (words_[i * wpr_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j, bool b) {
    auto& w = words_[i * wpr_ + j / 64];
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    w = b ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t i, std::size_t j) { words_[i * wpr_ + j / 64] ^= std::uint64_t{1} << (j % 64); }

  const std::uint64_t* row(std::size_t i) const { return words_.data() + i * wpr_; }

  std::size_t row_sum(std::size_t i) const {
    std::size_t s = 0;
    for (std::size_t w = 0; w < wpr_; ++w) s += std::popcount(row(i)[w]);
    return s;
  }

  std::size_t col_sum(std::size_t j) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < v_; ++i) s += get(i, j);
    return s;
  }

  /// Number of columns where rows a and b both have a one.
  std::size_t row_dot(std::size_t a, std::size_t b) const {
    std::size_t s = 0;
    for (std::size_t w = 0; w < wpr_; ++w) s += std::popcount(row(a)[w] & row(b)[w]);
    return s;
  }

  BitMatrix transpose() const {
    BitMatrix t(v_);
    for (std::size_t i = 0; i < v_; ++i)
      for (std::size_t j = 0; j < v_; ++j)
        if (get(i, j)) t.set(j, i, true);
    return t;
  }

  /// Rows as strings of '0'/'1', joined with newlines.
  std::string to_string() const {
    std::string s;
    s.reserve(v_ * (v_ + 1));
    for (std::size_t i = 0; i < v_; ++i) {
      for (std::size_t j = 0; j < v_; ++j) s.push_back(get(i, j) ? '1' : '0');
      s.push_back('\n');
    }
    return s;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend auto operator<=>(const BitMatrix& a, const BitMatrix& b) {
    if (auto c = a.v_ <=> b.v_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t v_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace symcube
