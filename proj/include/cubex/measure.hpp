#ifndef CUBEX_MEASURE_HPP
#define CUBEX_MEASURE_HPP

#include "cubex/arith.hpp"

#include <map>

namespace cubex {

/// A finitely supported measure with exact rational masses. Zero masses are
/// never stored, so the key set is the support.
template <class Key>
class Measure {
public:
  using Map = std::map<Key, Rational>;

  Measure() = default;

  static Measure point(Key k) {
    Measure m;
    m.masses_.emplace(k, Rational(1));
    return m;
  }

  void add(Key k, const Rational& mass) {
    if (mass == 0) {
      return;
    }
    auto [it, fresh] = masses_.emplace(k, mass);
    if (!fresh) {
      it->second += mass;
      if (it->second == 0) {
        masses_.erase(it);
      }
    }
  }

  Rational operator()(Key k) const {
    auto it = masses_.find(k);
    return it == masses_.end() ? Rational(0) : it->second;
  }

  Rational total() const {
    Rational t(0);
    for (const auto& [k, m] : masses_) {
      t += m;
    }
    return t;
  }

  /// Non-negative masses summing to exactly one.
  bool is_probability() const {
    for (const auto& [k, m] : masses_) {
      if (m < 0) {
        return false;
      }
    }
    return total() == 1;
  }

  const Map& masses() const { return masses_; }
  std::size_t support_size() const { return masses_.size(); }

  /// Pushforward along `f`: (f.m)(f(k)) = m(k). `f` must be injective for
  /// this to be a translation.
  template <class F>
  Measure pushforward(F&& f) const {
    Measure out;
    for (const auto& [k, m] : masses_) {
      out.add(f(k), m);
    }
    return out;
  }

  friend bool operator==(const Measure&, const Measure&) = default;

private:
  Map masses_;
};

template <class Key>
Rational l1_distance(const Measure<Key>& a, const Measure<Key>& b) {
  Rational d(0);
  auto ia = a.masses().begin();
  auto ib = b.masses().begin();
  while (ia != a.masses().end() || ib != b.masses().end()) {
    if (ib == b.masses().end() || (ia != a.masses().end() && ia->first < ib->first)) {
      d += abs(ia->second);
      ++ia;
    } else if (ia == a.masses().end() || ib->first < ia->first) {
      d += abs(ib->second);
      ++ib;
    } else {
      d += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return d;
}

} // namespace cubex

#endif // CUBEX_MEASURE_HPP
