#ifndef COMPLAB_GEOMETRY_HPP_
#define COMPLAB_GEOMETRY_HPP_

#include <cstdint>
#include <functional>

namespace complab {

// Lattice site of Z^2.
struct Site {
  int x = 0;
  int y = 0;

  friend bool operator==(Site a, Site b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Site a, Site b) { return !(a == b); }
  friend Site operator+(Site a, Site b) { return {a.x + b.x, a.y + b.y}; }
  friend Site operator-(Site a, Site b) { return {a.x - b.x, a.y - b.y}; }
};

inline constexpr Site kRight{1, 0};
inline constexpr Site kUp{0, 1};

}  // namespace complab

#endif  // COMPLAB_GEOMETRY_HPP_
