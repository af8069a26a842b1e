#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace permuto {

// Arbitrary-precision nonnegative integer. Counting formulas multiply
// ascending factorials, so results outgrow 64 bits as soon as the weights
// do; everything else in the library stays in machine integers.
//
// Limbs are base 2^32, little-endian, no trailing zeros (empty == 0).
// Only the operations the counts need are provided: add, multiply,
// exact division by a machine word, comparison, decimal conversion.
class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v) {
    if (v != 0) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }
  }

  static Natural from_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty decimal string");
    Natural out;
    for (char ch : s) {
      if (ch < '0' || ch > '9')
        throw std::invalid_argument("bad decimal digit in \"" + s + "\"");
      out.mul_word(10);
      out += Natural(static_cast<std::uint64_t>(ch - '0'));
    }
    return out;
  }

  bool is_zero() const { return limbs_.empty(); }

  bool fits_u64() const { return limbs_.size() <= 2; }

  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("Natural exceeds 64 bits");
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  Natural& operator+=(const Natural& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < limbs_.size(); ++k) {
      std::uint64_t cur = carry + limbs_[k];
      if (k < o.limbs_.size()) cur += o.limbs_[k];
      limbs_[k] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }

  Natural& operator*=(const Natural& o) {
    if (limbs_.empty() || o.limbs_.empty()) {
      limbs_.clear();
      return *this;
    }
    std::vector<std::uint32_t> out(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                            out[i + j] + carry;
        out[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      for (std::size_t k = i + o.limbs_.size(); carry; ++k) {
        std::uint64_t cur = out[k] + carry;
        out[k] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
    }
    limbs_ = std::move(out);
    trim();
    return *this;
  }

  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }

  Natural& mul_word(std::uint64_t w) { return *this *= Natural(w); }

  // Divides by d, requiring zero remainder. Binomial factors are built by
  // interleaved multiply/divide steps whose partial results are integers,
  // so a nonzero remainder means a logic bug upstream.
  Natural& div_exact(std::uint32_t d) {
    if (d == 0) throw std::domain_error("division by zero");
    if (div_word(d) != 0)
      throw std::logic_error("div_exact: nonzero remainder");
    return *this;
  }

  friend bool operator==(const Natural&, const Natural&) = default;

  std::strong_ordering operator<=>(const Natural& o) const {
    if (limbs_.size() != o.limbs_.size())
      return limbs_.size() <=> o.limbs_.size();
    for (std::size_t k = limbs_.size(); k-- > 0;) {
      if (limbs_[k] != o.limbs_[k]) return limbs_[k] <=> o.limbs_[k];
    }
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (limbs_.empty()) return "0";
    Natural tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
      std::uint32_t rem = tmp.div_word(1000000000u);
      std::string chunk = std::to_string(rem);
      if (!tmp.is_zero()) chunk.insert(0, 9 - chunk.size(), '0');
      out.insert(0, chunk);
    }
    return out;
  }

 private:
  // In-place division by a word; returns the remainder.
  std::uint32_t div_word(std::uint32_t d) {
    std::uint64_t rem = 0;
    for (std::size_t k = limbs_.size(); k-- > 0;) {
      std::uint64_t cur = (rem << 32) | limbs_[k];
      limbs_[k] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<std::uint32_t> limbs_;
};

}  // namespace permuto
