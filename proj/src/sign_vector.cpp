#include "cubex/sign_vector.hpp"

#include <bit>
#include <cassert>

namespace cubex {

SignVector::SignVector(std::size_t hyperplanes)
    : size_(hyperplanes), words_((hyperplanes + 63) / 64, 0) {}

SignVector SignVector::from_signs(std::span<const Sign> signs) {
  SignVector out(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == Sign::Minus) {
      out.flip(HyperplaneId(i));
    }
  }
  return out;
}

SignVector SignVector::from_negative_set(std::size_t hyperplanes,
                                         std::span<const HyperplaneId> minus) {
  SignVector out(hyperplanes);
  for (HyperplaneId h : minus) {
    assert(h.index() < hyperplanes);
    out.set(h, Sign::Minus);
  }
  return out;
}

void SignVector::set(HyperplaneId h, Sign s) {
  const std::uint64_t bit = std::uint64_t{1} << (h.index() & 63);
  if (s == Sign::Minus) {
    words_[h.index() >> 6] |= bit;
  } else {
    words_[h.index() >> 6] &= ~bit;
  }
}

std::vector<HyperplaneId> SignVector::negative_set() const {
  std::vector<HyperplaneId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.emplace_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t SignVector::negative_count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) {
    n += static_cast<std::size_t>(std::popcount(w));
  }
  return n;
}

std::size_t SignVector::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const SignVector& a, const SignVector& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) {
    return c;
  }
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) {
      return c;
    }
  }
  return std::strong_ordering::equal;
}

std::size_t hamming(const SignVector& a, const SignVector& b) {
  assert(a.size_ == b.size_);
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    n += static_cast<std::size_t>(std::popcount(a.words_[w] ^ b.words_[w]));
  }
  return n;
}

std::vector<HyperplaneId> differing(const SignVector& a, const SignVector& b) {
  assert(a.size_ == b.size_);
  std::vector<HyperplaneId> out;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    std::uint64_t bits = a.words_[w] ^ b.words_[w];
    while (bits != 0) {
      out.emplace_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

SignVector majority(const SignVector& a, const SignVector& b, const SignVector& c) {
  assert(a.size_ == b.size_ && b.size_ == c.size_);
  SignVector out(a.size_);
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t x = a.words_[w], y = b.words_[w], z = c.words_[w];
    out.words_[w] = (x & y) | (y & z) | (x & z);
  }
  return out;
}

bool between(const SignVector& a, const SignVector& x, const SignVector& y) {
  assert(a.size_ == x.size_ && x.size_ == y.size_);
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    if (((a.words_[w] ^ x.words_[w]) & (a.words_[w] ^ y.words_[w])) != 0) {
      return false;
    }
  }
  return true;
}

} // namespace cubex
