#ifndef CUBEX_IDS_HPP
#define CUBEX_IDS_HPP

#include <compare>
#include <cstdint>
#include <functional>

namespace cubex {

/// Dense index into one of the complex's (or group's) element tables.
/// The tag keeps hyperplanes, vertices and group elements from mixing.
template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Id(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(Id, Id) = default;
};

struct HyperplaneTag {};
struct VertexTag {};
struct ElementTag {};

using HyperplaneId = Id<HyperplaneTag>;
using VertexId = Id<VertexTag>;
using GroupElement = Id<ElementTag>;

} // namespace cubex

template <class Tag>
struct std::hash<cubex::Id<Tag>> {
  std::size_t operator()(cubex::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif // CUBEX_IDS_HPP
