#ifndef CUBEX_SIGN_VECTOR_HPP
#define CUBEX_SIGN_VECTOR_HPP

#include "cubex/ids.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace cubex {

enum class Sign : std::int8_t { Plus = 1, Minus = -1 };

constexpr Sign operator-(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr int to_int(Sign s) { return static_cast<int>(s); }

/// An orientation of every hyperplane of a complex, relative to its base vertex.
///
/// Stored as the difference set from the base: bit h is set exactly when the
/// vector lies in the half space H^- (the side not containing the base).
/// Vectors compared or combined together must have the same size.
class SignVector {
public:
  SignVector() = default;

  /// The base orientation: +1 on each of `hyperplanes` hyperplanes.
  explicit SignVector(std::size_t hyperplanes);

  static SignVector from_signs(std::span<const Sign> signs);
  static SignVector from_negative_set(std::size_t hyperplanes,
                                      std::span<const HyperplaneId> minus);

  std::size_t size() const { return size_; }

  Sign operator[](HyperplaneId h) const {
    return (words_[h.index() >> 6] >> (h.index() & 63)) & 1U ? Sign::Minus : Sign::Plus;
  }

  void set(HyperplaneId h, Sign s);
  void flip(HyperplaneId h) { words_[h.index() >> 6] ^= std::uint64_t{1} << (h.index() & 63); }
  SignVector flipped(HyperplaneId h) const {
    SignVector out(*this);
    out.flip(h);
    return out;
  }

  /// Hyperplanes on which the vector is -1, in increasing order.
  std::vector<HyperplaneId> negative_set() const;
  std::size_t negative_count() const;

  std::span<const std::uint64_t> words() const { return words_; }

  std::size_t hash() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend std::strong_ordering operator<=>(const SignVector& a, const SignVector& b);

  /// Number of hyperplanes on which `a` and `b` differ.
  friend std::size_t hamming(const SignVector& a, const SignVector& b);

  /// Hyperplanes on which `a` and `b` differ, in increasing order.
  friend std::vector<HyperplaneId> differing(const SignVector& a, const SignVector& b);

  /// Per-hyperplane majority of three vectors.
  friend SignVector majority(const SignVector& a, const SignVector& b, const SignVector& c);

  /// True when no hyperplane separates `a` from both `x` and `y`.
  friend bool between(const SignVector& a, const SignVector& x, const SignVector& y);

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SignVectorHash {
  std::size_t operator()(const SignVector& v) const noexcept { return v.hash(); }
};

} // namespace cubex

#endif // CUBEX_SIGN_VECTOR_HPP
