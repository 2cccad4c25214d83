#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tow {

// Spatial dimension is small (1..4); fixed-size coordinates avoid heap
// traffic in the inner simulation loops. Unused trailing components are zero.
inline constexpr int kMaxDim = 4;

using Lattice = std::array<int, kMaxDim>;  // integer grid coordinates, node identity
using Point = std::array<double, kMaxDim>;

inline Lattice lat_zero() { return Lattice{0, 0, 0, 0}; }
inline Point pt_zero() { return Point{0.0, 0.0, 0.0, 0.0}; }

inline Lattice lat_add(const Lattice& a, const Lattice& b) {
  Lattice r;
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Lattice lat_sub(const Lattice& a, const Lattice& b) {
  Lattice r;
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Lattice lat_neg(const Lattice& a) {
  Lattice r;
  for (int i = 0; i < kMaxDim; ++i) r[i] = -a[i];
  return r;
}

inline bool lat_is_zero(const Lattice& a) {
  for (int i = 0; i < kMaxDim; ++i)
    if (a[i] != 0) return false;
  return true;
}

inline double lat_norm2(const Lattice& a, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += double(a[i]) * double(a[i]);
  return s;
}

inline double lat_norm(const Lattice& a, int dim) { return std::sqrt(lat_norm2(a, dim)); }

// Lexicographic order gives deterministic tie-breaking everywhere a single
// node has to be picked out of a finite candidate set.
inline bool lat_lex_less(const Lattice& a, const Lattice& b) {
  for (int i = 0; i < kMaxDim; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

inline Point lat_to_point(const Lattice& a, double h) {
  Point p = pt_zero();
  for (int i = 0; i < kMaxDim; ++i) p[i] = a[i] * h;
  return p;
}

inline Point pt_add(const Point& a, const Point& b) {
  Point r;
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point pt_sub(const Point& a, const Point& b) {
  Point r;
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point pt_scale(const Point& a, double s) {
  Point r;
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] * s;
  return r;
}

inline double pt_dist2(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double pt_dist(const Point& a, const Point& b, int dim) {
  return std::sqrt(pt_dist2(a, b, dim));
}

inline double pt_norm(const Point& a, int dim) { return std::sqrt(pt_dist2(a, pt_zero(), dim)); }

struct LatticeHash {
  std::size_t operator()(const Lattice& a) const noexcept {
    // splitmix-style mixing of the packed coordinates
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < kMaxDim; ++i) {
      std::uint64_t v = static_cast<std::uint64_t>(static_cast<std::int64_t>(a[i]));
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Runs fn(begin, end) over chunks of [0, n) on up to `threads` workers
// (hardware concurrency when threads <= 0). fn must not depend on chunk order.
void parallel_for_chunks(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace tow
