#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tow/common.hpp"

namespace tow {

enum class NodeClass : std::uint8_t { Interior = 0, BoundaryStrip = 1 };

// Supported domain shapes. `contains` is the open set Omega,
// `boundary_distance` the Euclidean distance to its topological boundary.
struct Shape {
  enum class Kind { Interval, Box, Ball, Annulus };

  Kind kind = Kind::Interval;
  int dim = 1;
  Point center = pt_zero();
  double r0 = 0.0;  // ball radius / annulus inner radius
  double r1 = 0.0;  // annulus outer radius
  Point lo = pt_zero();
  Point hi = pt_zero();

  static Shape interval(double a, double b);
  static Shape box(int dim, const Point& lo, const Point& hi);
  static Shape ball(int dim, const Point& center, double radius);
  static Shape annulus(int dim, const Point& center, double inner, double outer);

  bool contains(const Point& x) const;
  double boundary_distance(const Point& x) const;
  std::string describe() const;
};

// Lattice discretization of Omega together with the boundary strip Gamma_eps
// (grid nodes outside Omega within distance eps of the boundary). Node
// identity is by integer lattice coordinates; positions are coords * h.
class GridDomain {
 public:
  // Requires h <= eps / 2 so every eps-stencil has at least 3 nodes per axis.
  GridDomain(const Shape& shape, double h, double eps);

  int dim() const { return shape_.dim; }
  double spacing() const { return h_; }
  double eps() const { return eps_; }
  const Shape& shape() const { return shape_; }

  std::size_t node_count() const { return lattices_.size(); }
  std::size_t interior_count() const { return interior_count_; }

  const Lattice& lattice(std::size_t i) const { return lattices_[i]; }
  Point point(std::size_t i) const { return lat_to_point(lattices_[i], h_); }
  NodeClass node_class(std::size_t i) const { return classes_[i]; }
  bool is_interior(std::size_t i) const { return classes_[i] == NodeClass::Interior; }

  std::optional<std::size_t> find(const Lattice& a) const;
  std::size_t index_of(const Lattice& a) const;  // throws if absent
  std::size_t nearest_node(const Point& x) const;

  // Lattice offsets o with |o * h| < eps, lexicographically sorted (origin
  // included). For every interior node all of these land inside the node set.
  const std::vector<Lattice>& ball_offsets() const { return ball_offsets_; }

  // All grid nodes at distance < radius from the given node, in index order.
  // Throws if no node besides the center itself qualifies (degenerate stencil).
  std::vector<std::size_t> ball_nodes(std::size_t center, double radius) const;

  // Visits every existing node with |point - x| < radius.
  void for_nodes_in_ball(const Point& x, double radius,
                         const std::function<void(std::size_t)>& fn) const;

  // Flat neighbor table over interior nodes for the eps-stencil; built lazily.
  // Offsets are uniform, so row i holds the indices of lattice(i) + o for all
  // ball offsets o.
  const std::vector<std::uint32_t>& stencil_data() const;
  std::size_t stencil_width() const { return ball_offsets_.size(); }

  std::string to_json_text(const std::vector<double>* values = nullptr) const;

 private:
  Shape shape_;
  double h_;
  double eps_;
  std::vector<Lattice> lattices_;
  std::vector<NodeClass> classes_;
  std::unordered_map<Lattice, std::size_t, LatticeHash> index_;
  std::vector<Lattice> ball_offsets_;
  std::size_t interior_count_ = 0;
  mutable std::vector<std::uint32_t> stencil_;
};

// Scalar values, one per node of a fixed domain.
struct GridField {
  const GridDomain* domain = nullptr;
  std::vector<double> values;

  GridField() = default;
  explicit GridField(const GridDomain& d, double fill = 0.0)
      : domain(&d), values(d.node_count(), fill) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  double min_value() const;
  double max_value() const;
  double min_on_strip() const;
  double max_on_strip() const;
};

// Field built by evaluating f at every node position.
GridField field_from_function(const GridDomain& d,
                              const std::function<double(const Point&)>& f);

std::string field_to_json_text(const GridField& f);
GridField field_from_json_text(const GridDomain& d, const std::string& text);

}  // namespace tow
