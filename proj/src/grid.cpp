#include "tow/grid.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace tow {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("shape: dimension out of range");
}

}  // namespace

Shape Shape::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval: requires a < b");
  Shape s;
  s.kind = Kind::Interval;
  s.dim = 1;
  s.lo[0] = a;
  s.hi[0] = b;
  return s;
}

Shape Shape::box(int dim, const Point& lo, const Point& hi) {
  check_dim(dim);
  for (int i = 0; i < dim; ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("box: requires lo < hi per axis");
  Shape s;
  s.kind = Kind::Box;
  s.dim = dim;
  s.lo = lo;
  s.hi = hi;
  return s;
}

Shape Shape::ball(int dim, const Point& center, double radius) {
  check_dim(dim);
  if (!(radius > 0.0)) throw std::invalid_argument("ball: requires radius > 0");
  Shape s;
  s.kind = Kind::Ball;
  s.dim = dim;
  s.center = center;
  s.r0 = radius;
  return s;
}

Shape Shape::annulus(int dim, const Point& center, double inner, double outer) {
  check_dim(dim);
  if (!(0.0 < inner && inner < outer))
    throw std::invalid_argument("annulus: requires 0 < inner < outer");
  Shape s;
  s.kind = Kind::Annulus;
  s.dim = dim;
  s.center = center;
  s.r0 = inner;
  s.r1 = outer;
  return s;
}

bool Shape::contains(const Point& x) const {
  switch (kind) {
    case Kind::Interval:
      return lo[0] < x[0] && x[0] < hi[0];
    case Kind::Box:
      for (int i = 0; i < dim; ++i)
        if (!(lo[i] < x[i] && x[i] < hi[i])) return false;
      return true;
    case Kind::Ball:
      return pt_dist2(x, center, dim) < r0 * r0;
    case Kind::Annulus: {
      const double d2 = pt_dist2(x, center, dim);
      return r0 * r0 < d2 && d2 < r1 * r1;
    }
  }
  return false;
}

double Shape::boundary_distance(const Point& x) const {
  switch (kind) {
    case Kind::Interval:
      return std::min(std::abs(x[0] - lo[0]), std::abs(x[0] - hi[0]));
    case Kind::Box: {
      if (contains(x)) {
        double d = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dim; ++i) d = std::min({d, x[i] - lo[i], hi[i] - x[i]});
        return d;
      }
      // distance to the closed box equals distance to its boundary from outside
      double s = 0.0;
      for (int i = 0; i < dim; ++i) {
        double d = std::max({lo[i] - x[i], 0.0, x[i] - hi[i]});
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Kind::Ball:
      return std::abs(pt_dist(x, center, dim) - r0);
    case Kind::Annulus: {
      const double d = pt_dist(x, center, dim);
      return std::min(std::abs(d - r0), std::abs(d - r1));
    }
  }
  return 0.0;
}

std::string Shape::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::Interval:
      os << "interval:" << lo[0] << "," << hi[0];
      break;
    case Kind::Box:
      os << "box:";
      for (int i = 0; i < dim; ++i) os << (i ? "," : "") << lo[i];
      os << ";";
      for (int i = 0; i < dim; ++i) os << (i ? "," : "") << hi[i];
      break;
    case Kind::Ball:
      os << "ball:" << dim;
      for (int i = 0; i < dim; ++i) os << "," << center[i];
      os << "," << r0;
      break;
    case Kind::Annulus:
      os << "annulus:" << dim;
      for (int i = 0; i < dim; ++i) os << "," << center[i];
      os << "," << r0 << "," << r1;
      break;
  }
  return os.str();
}

namespace {

void shape_bounds(const Shape& s, Point& lo, Point& hi) {
  switch (s.kind) {
    case Shape::Kind::Interval:
    case Shape::Kind::Box:
      lo = s.lo;
      hi = s.hi;
      break;
    case Shape::Kind::Ball:
      for (int i = 0; i < s.dim; ++i) {
        lo[i] = s.center[i] - s.r0;
        hi[i] = s.center[i] + s.r0;
      }
      break;
    case Shape::Kind::Annulus:
      for (int i = 0; i < s.dim; ++i) {
        lo[i] = s.center[i] - s.r1;
        hi[i] = s.center[i] + s.r1;
      }
      break;
  }
}

}  // namespace

GridDomain::GridDomain(const Shape& shape, double h, double eps) : shape_(shape), h_(h), eps_(eps) {
  if (!(h > 0.0) || !(eps > 0.0)) throw std::invalid_argument("GridDomain: requires h, eps > 0");
  if (h > eps / 2.0 + 1e-12 * eps)
    throw std::invalid_argument("GridDomain: requires h <= eps/2 (stencil would be degenerate)");

  // eps-ball offsets on the lattice, lexicographically ordered
  const int reach = static_cast<int>(std::floor(eps / h)) + 1;
  const double cut = eps * eps * (1.0 - 1e-12);
  Lattice o = lat_zero();
  std::function<void(int)> rec = [&](int d) {
    if (d == shape_.dim) {
      if (lat_norm2(o, shape_.dim) * h * h < cut) ball_offsets_.push_back(o);
      return;
    }
    for (int v = -reach; v <= reach; ++v) {
      o[d] = v;
      rec(d + 1);
    }
    o[d] = 0;
  };
  rec(0);

  // enumerate lattice nodes of Omega and the boundary strip
  Point blo = pt_zero(), bhi = pt_zero();
  shape_bounds(shape_, blo, bhi);
  Lattice ilo = lat_zero(), ihi = lat_zero();
  for (int i = 0; i < shape_.dim; ++i) {
    ilo[i] = static_cast<int>(std::floor((blo[i] - eps) / h)) - 1;
    ihi[i] = static_cast<int>(std::ceil((bhi[i] + eps) / h)) + 1;
  }
  const double strip_cut = eps * (1.0 + 1e-12);
  Lattice c = ilo;
  std::function<void(int)> walk = [&](int d) {
    if (d == shape_.dim) {
      const Point x = lat_to_point(c, h);
      if (shape_.contains(x)) {
        lattices_.push_back(c);
        classes_.push_back(NodeClass::Interior);
        ++interior_count_;
      } else if (shape_.boundary_distance(x) <= strip_cut) {
        lattices_.push_back(c);
        classes_.push_back(NodeClass::BoundaryStrip);
      }
      return;
    }
    for (c[d] = ilo[d]; c[d] <= ihi[d]; ++c[d]) walk(d + 1);
    c[d] = ilo[d];
  };
  walk(0);

  if (interior_count_ == 0) throw std::invalid_argument("GridDomain: no interior nodes");
  index_.reserve(lattices_.size() * 2);
  for (std::size_t i = 0; i < lattices_.size(); ++i) index_.emplace(lattices_[i], i);
}

std::optional<std::size_t> GridDomain::find(const Lattice& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GridDomain::index_of(const Lattice& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) throw std::out_of_range("GridDomain: lattice point not in node set");
  return it->second;
}

std::size_t GridDomain::nearest_node(const Point& x) const {
  Lattice a = lat_zero();
  for (int i = 0; i < dim(); ++i) a[i] = static_cast<int>(std::llround(x[i] / h_));
  if (auto idx = find(a)) return *idx;
  // off-domain query: brute-force scan
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lattices_.size(); ++i) {
    const double d = pt_dist2(point(i), x, dim());
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

std::vector<std::size_t> GridDomain::ball_nodes(std::size_t center, double radius) const {
  if (!(radius > 0.0)) throw std::invalid_argument("ball_nodes: requires radius > 0");
  const Lattice& c0 = lattices_[center];
  const int reach = static_cast<int>(std::floor(radius / h_)) + 1;
  const double cut = radius * radius * (1.0 - 1e-12);
  std::vector<std::size_t> out;
  Lattice o = lat_zero();
  std::function<void(int)> rec = [&](int d) {
    if (d == dim()) {
      if (lat_norm2(o, dim()) * h_ * h_ < cut) {
        if (auto idx = find(lat_add(c0, o))) out.push_back(*idx);
      }
      return;
    }
    for (int v = -reach; v <= reach; ++v) {
      o[d] = v;
      rec(d + 1);
    }
    o[d] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  if (out.size() < 2)
    throw std::invalid_argument("ball_nodes: degenerate stencil (radius too small for spacing)");
  return out;
}

void GridDomain::for_nodes_in_ball(const Point& x, double radius,
                                   const std::function<void(std::size_t)>& fn) const {
  const double cut = radius * radius * (1.0 - 1e-12);
  Lattice lo = lat_zero(), hi = lat_zero();
  for (int i = 0; i < dim(); ++i) {
    lo[i] = static_cast<int>(std::floor((x[i] - radius) / h_));
    hi[i] = static_cast<int>(std::ceil((x[i] + radius) / h_));
  }
  Lattice c = lo;
  std::function<void(int)> rec = [&](int d) {
    if (d == dim()) {
      if (pt_dist2(lat_to_point(c, h_), x, dim()) < cut) {
        if (auto idx = find(c)) fn(*idx);
      }
      return;
    }
    for (c[d] = lo[d]; c[d] <= hi[d]; ++c[d]) rec(d + 1);
    c[d] = lo[d];
  };
  rec(0);
}

const std::vector<std::uint32_t>& GridDomain::stencil_data() const {
  if (!stencil_.empty()) return stencil_;
  const std::size_t w = ball_offsets_.size();
  stencil_.assign(node_count() * w, 0);
  for (std::size_t i = 0; i < node_count(); ++i) {
    if (classes_[i] != NodeClass::Interior) continue;
    for (std::size_t k = 0; k < w; ++k) {
      // every eps-offset from an interior node stays inside Omega + strip
      stencil_[i * w + k] = static_cast<std::uint32_t>(index_of(lat_add(lattices_[i], ball_offsets_[k])));
    }
  }
  return stencil_;
}

double GridField::min_value() const {
  return *std::min_element(values.begin(), values.end());
}
double GridField::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double GridField::min_on_strip() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!domain->is_interior(i)) m = std::min(m, values[i]);
  return m;
}

double GridField::max_on_strip() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!domain->is_interior(i)) m = std::max(m, values[i]);
  return m;
}

GridField field_from_function(const GridDomain& d,
                              const std::function<double(const Point&)>& f) {
  GridField g(d);
  for (std::size_t i = 0; i < d.node_count(); ++i) g.values[i] = f(d.point(i));
  return g;
}

namespace {

std::string hex_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

}  // namespace

std::string GridDomain::to_json_text(const std::vector<double>* values) const {
  nlohmann::json j;
  j["dimension"] = dim();
  j["spacing"] = h_;
  j["eps"] = eps_;
  j["shape"] = shape_.describe();
  auto& nodes = j["nodes"] = nlohmann::json::array();
  auto& cls = j["class"] = nlohmann::json::array();
  for (std::size_t i = 0; i < node_count(); ++i) {
    nlohmann::json coord = nlohmann::json::array();
    for (int d = 0; d < dim(); ++d) coord.push_back(lattices_[i][d]);
    nodes.push_back(std::move(coord));
    cls.push_back(classes_[i] == NodeClass::Interior ? "interior" : "strip");
  }
  if (values) {
    auto& vals = j["values"] = nlohmann::json::array();
    for (double v : *values) vals.push_back(hex_double(v));
  }
  return j.dump();
}

std::string field_to_json_text(const GridField& f) {
  return f.domain->to_json_text(&f.values);
}

GridField field_from_json_text(const GridDomain& d, const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("values")) throw std::invalid_argument("field json: missing values");
  const auto& vals = j.at("values");
  if (vals.size() != d.node_count())
    throw std::invalid_argument("field json: node count mismatch");
  GridField g(d);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const std::string s = vals[i].get<std::string>();
    g.values[i] = std::strtod(s.c_str(), nullptr);
  }
  return g;
}

}  // namespace tow
