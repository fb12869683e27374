#include "thincascade/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "thincascade/errors.hpp"

namespace thincascade {

namespace {

constexpr std::array<std::pair<BoundaryTag, std::string_view>, 10> kTagNames{{
    {BoundaryTag::DirichletLeft, "DirichletLeft"},
    {BoundaryTag::DirichletRight, "DirichletRight"},
    {BoundaryTag::NeumannTop1, "NeumannTop1"},
    {BoundaryTag::NeumannBottom1, "NeumannBottom1"},
    {BoundaryTag::NeumannTop2, "NeumannTop2"},
    {BoundaryTag::NeumannBottom2, "NeumannBottom2"},
    {BoundaryTag::Gamma, "Gamma"},
    {BoundaryTag::TruncLeft, "TruncLeft"},
    {BoundaryTag::TruncRight, "TruncRight"},
    {BoundaryTag::Wall, "Wall"},
}};

bool nearly_equal(Point a, Point b, double scale) {
  return std::abs(a.x - b.x) <= 1e-14 * scale && std::abs(a.y - b.y) <= 1e-14 * scale;
}

// Strict intersection test for two closed segments.
bool segments_intersect(Point a, Point b, Point c, Point d) {
  auto orient = [](Point p, Point q, Point r) { return cross(q - p, r - p); };
  auto on_segment = [](Point p, Point q, Point r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double interpolate(const std::vector<ProfileBreakpoint>& pts, double xi, bool upper) {
  auto value = [upper](const ProfileBreakpoint& p) { return upper ? p.upper : p.lower; };
  if (xi <= pts.front().xi) return value(pts.front());
  if (xi >= pts.back().xi) return value(pts.back());
  auto it = std::upper_bound(pts.begin(), pts.end(), xi,
                             [](double v, const ProfileBreakpoint& p) { return v < p.xi; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double t = (xi - a.xi) / (b.xi - a.xi);
  return (1.0 - t) * value(a) + t * value(b);
}

struct OutlineBuilder {
  std::vector<Point> points;
  std::vector<BoundaryTag> tags;
  double scale;

  void add(Point p, BoundaryTag leaving) {
    if (!points.empty() && nearly_equal(points.back(), p, scale)) {
      tags.back() = leaving;
      return;
    }
    points.push_back(p);
    tags.push_back(leaving);
  }

  TaggedPolygon finish() {
    if (points.size() > 1 && nearly_equal(points.back(), points.front(), scale)) {
      points.pop_back();
      tags.pop_back();
    }
    return TaggedPolygon{std::move(points), std::move(tags)};
  }
};

// Shared outline construction in coordinates scaled by `s`; the branches
// end at x_left and x_right (physical ends or truncation cuts).
TaggedPolygon build_outline(const CascadeGeometry& g, double s, double x_left, double x_right,
                            BoundaryTag left_tag, BoundaryTag right_tag, std::vector<double> marks = {}) {
  const auto& bp = g.joint.breakpoints();
  OutlineBuilder out{{}, {}, std::max({std::abs(x_left), std::abs(x_right), 1.0})};
  const double half_l = 0.5 * g.l;
  std::sort(marks.begin(), marks.end());
  // Extra wall vertices strictly inside (a, b), in the requested direction.
  auto wall = [&](double a, double b, double y, BoundaryTag tag, bool ascending) {
    std::vector<double> xs;
    for (double m : marks)
      if (m > a && m < b) xs.push_back(m);
    if (!ascending) std::reverse(xs.begin(), xs.end());
    for (double x : xs) out.add({x, y}, tag);
  };

  out.add({x_left, -s * g.h1 / 2}, BoundaryTag::NeumannBottom1);
  wall(x_left, -s * half_l, -s * g.h1 / 2, BoundaryTag::NeumannBottom1, true);
  out.add({-s * half_l, -s * g.h1 / 2}, BoundaryTag::Gamma);
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) out.add({s * bp[k].xi, -s * bp[k].lower}, BoundaryTag::Gamma);
  out.add({s * bp.back().xi, -s * bp.back().lower}, BoundaryTag::Gamma);
  out.add({s * half_l, -s * g.h2 / 2}, BoundaryTag::NeumannBottom2);
  wall(s * half_l, x_right, -s * g.h2 / 2, BoundaryTag::NeumannBottom2, true);
  out.add({x_right, -s * g.h2 / 2}, right_tag);
  out.add({x_right, s * g.h2 / 2}, BoundaryTag::NeumannTop2);
  wall(s * half_l, x_right, s * g.h2 / 2, BoundaryTag::NeumannTop2, false);
  out.add({s * half_l, s * g.h2 / 2}, BoundaryTag::Gamma);
  for (std::size_t k = bp.size(); k-- > 1;) out.add({s * bp[k].xi, s * bp[k].upper}, BoundaryTag::Gamma);
  out.add({s * bp.front().xi, s * bp.front().upper}, BoundaryTag::Gamma);
  out.add({-s * half_l, s * g.h1 / 2}, BoundaryTag::NeumannTop1);
  wall(x_left, -s * half_l, s * g.h1 / 2, BoundaryTag::NeumannTop1, false);
  out.add({x_left, s * g.h1 / 2}, left_tag);
  return out.finish();
}

}  // namespace

std::string_view to_string(BoundaryTag tag) {
  for (const auto& [t, name] : kTagNames)
    if (t == tag) return name;
  return "?";
}

BoundaryTag boundary_tag_from_string(std::string_view name) {
  for (const auto& [t, n] : kTagNames)
    if (n == name) return t;
  throw GeometryError("unknown boundary tag '" + std::string(name) + "'");
}

double shoelace_area(const std::vector<Point>& loop) {
  double a = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) a += cross(loop[i], loop[(i + 1) % loop.size()]);
  return 0.5 * a;
}

double TaggedPolygon::signed_area() const { return shoelace_area(vertices); }

double TaggedPolygon::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    auto [a, b] = edge(i);
    p += std::hypot(b.x - a.x, b.y - a.y);
  }
  return p;
}

bool TaggedPolygon::contains(Point p) const {
  bool inside = false;
  for (std::size_t i = 0, j = size() - 1; i < size(); j = i++) {
    const Point a = vertices[i];
    const Point b = vertices[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

void TaggedPolygon::validate() const {
  const std::size_t n = size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  if (tags.size() != n) throw GeometryError("polygon tag count differs from vertex count");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (vertices[i] == vertices[j])
        throw GeometryError("polygon has repeated vertex " + std::to_string(i) + "/" +
                            std::to_string(j));
  if (signed_area() <= 0.0) throw GeometryError("polygon is not counterclockwise");
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = edge(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      auto [c, d] = edge(j);
      if (adjacent) {
        // Only a fold-back overlap is invalid for neighbouring edges.
        const Point shared = (j == i + 1) ? b : a;
        const Point u = (j == i + 1) ? a - shared : b - shared;
        const Point v = (j == i + 1) ? d - shared : c - shared;
        if (std::abs(cross(u, v)) <= 1e-14 * std::hypot(u.x, u.y) * std::hypot(v.x, v.y) &&
            dot(u, v) > 0)
          throw GeometryError("polygon folds back on itself at vertex");
        continue;
      }
      if (segments_intersect(a, b, c, d))
        throw GeometryError("polygon is not simple: edges " + std::to_string(i) + " and " +
                            std::to_string(j) + " intersect");
    }
  }
}

JointProfile::JointProfile(std::vector<ProfileBreakpoint> breakpoints)
    : points_(std::move(breakpoints)) {
  if (points_.size() < 2) throw GeometryError("joint profile needs at least two breakpoints");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!(points_[k].upper > 0.0) || !(points_[k].lower > 0.0))
      throw GeometryError("joint profile must be strictly positive (breakpoint " +
                          std::to_string(k) + ")");
    if (k > 0 && !(points_[k].xi > points_[k - 1].xi))
      throw GeometryError("joint profile breakpoints must be strictly increasing");
  }
}

double JointProfile::upper(double xi) const { return interpolate(points_, xi, true); }
double JointProfile::lower(double xi) const { return interpolate(points_, xi, false); }

double JointProfile::area() const {
  double a = 0.0;
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
    const auto& p = points_[k];
    const auto& q = points_[k + 1];
    a += 0.5 * (q.xi - p.xi) * ((p.upper + p.lower) + (q.upper + q.lower));
  }
  return a;
}

bool JointProfile::symmetric_in_eta(double tol) const {
  return std::all_of(points_.begin(), points_.end(),
                     [tol](const ProfileBreakpoint& p) { return std::abs(p.upper - p.lower) <= tol; });
}

JointProfile parse_joint_profile(std::string_view text) {
  std::vector<ProfileBreakpoint> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    ProfileBreakpoint p{};
    if (!(ls >> p.xi)) continue;
    if (!(ls >> p.upper >> p.lower))
      throw GeometryError("profile line " + std::to_string(lineno) + ": expected 'xi upper lower'");
    std::string rest;
    if (ls >> rest) throw GeometryError("profile line " + std::to_string(lineno) + ": trailing data");
    pts.push_back(p);
  }
  return JointProfile(std::move(pts));
}

JointProfile load_joint_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open joint profile '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_joint_profile(buf.str());
}

void CascadeGeometry::validate() const {
  if (!(h1 > 0.0) || !(h2 > 0.0) || !(l > 0.0))
    throw GeometryError("h1, h2 and l must be positive");
  const auto& bp = joint.breakpoints();
  if (bp.size() < 2) throw GeometryError("joint profile is empty");
  const double tol = 1e-12 * l;
  if (std::abs(bp.front().xi + 0.5 * l) > tol || std::abs(bp.back().xi - 0.5 * l) > tol)
    throw GeometryError("joint profile must span exactly [-l/2, l/2]");
  if (bp.front().upper > h1 || bp.front().lower > h1)
    throw GeometryError("joint profile exceeds h1 at xi = -l/2");
  if (bp.back().upper > h2 || bp.back().lower > h2)
    throw GeometryError("joint profile exceeds h2 at xi = l/2");
}

std::pair<double, double> CascadeGeometry::eta_range(double xi) const {
  if (xi < -0.5 * l) return {-h1 / 2, h1 / 2};
  if (xi > 0.5 * l) return {-h2 / 2, h2 / 2};
  return {-joint.lower(xi), joint.upper(xi)};
}

bool CascadeGeometry::symmetric_in_eta() const { return joint.symmetric_in_eta(); }

bool CascadeGeometry::is_straight_strip() const {
  if (h1 != h2) return false;
  return std::all_of(joint.breakpoints().begin(), joint.breakpoints().end(),
                     [this](const ProfileBreakpoint& p) { return p.upper == h1 / 2 && p.lower == h1 / 2; });
}

namespace geometry_presets {

CascadeGeometry straight(double h1, double h2, double l) {
  return CascadeGeometry{h1, h2, l,
                         JointProfile({{-l / 2, h1 / 2, h1 / 2}, {l / 2, h2 / 2, h2 / 2}})};
}

CascadeGeometry bump(double amplitude, double h1, double h2, double l, int intervals) {
  if (intervals < 2) throw ParameterError("bump profile needs at least 2 intervals");
  std::vector<ProfileBreakpoint> pts;
  for (int k = 0; k <= intervals; ++k) {
    const double t = static_cast<double>(k) / intervals;
    const double xi = -l / 2 + t * l;
    const double base = 0.5 * ((1.0 - t) * h1 + t * h2);
    const double w = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * xi / l));
    pts.push_back({xi, base + amplitude * w, base + amplitude * w});
  }
  pts.front().xi = -l / 2;
  pts.back().xi = l / 2;
  return CascadeGeometry{h1, h2, l, JointProfile(std::move(pts))};
}

CascadeGeometry widening(double h1, double h2, double l) {
  return bump(0.25 * (h1 + h2), h1, h2, l);
}

CascadeGeometry narrowing(double h1, double h2, double l) {
  return bump(-0.125 * (h1 + h2), h1, h2, l);
}

CascadeGeometry step(double height, double h1, double h2, double l) {
  return CascadeGeometry{h1, h2, l,
                         JointProfile({{-l / 2, height, height}, {l / 2, height, height}})};
}

CascadeGeometry cascade() { return bump(0.3, 1.0, 0.5, 1.0); }

CascadeGeometry by_name(std::string_view name) {
  if (name == "straight") return straight();
  if (name == "widening") return widening();
  if (name == "narrowing") return narrowing();
  if (name == "step") return step();
  if (name == "cascade") return cascade();
  throw ParameterError("unknown geometry preset '" + std::string(name) +
                       "' (straight, widening, narrowing, step, cascade)");
}

}  // namespace geometry_presets

TaggedPolygon scaled_outline(const CascadeGeometry& geom, double eps, double eps_max,
                             const std::vector<double>& wall_marks) {
  if (!(eps > 0.0) || eps > eps_max)
    throw ParameterError("eps must lie in (0, " + std::to_string(eps_max) + "]");
  geom.validate();
  if (eps * geom.l / 2 >= 1.0) throw ParameterError("joint does not fit inside (-1, 1) at this eps");
  auto poly = build_outline(geom, eps, -1.0, 1.0, BoundaryTag::DirichletLeft, BoundaryTag::DirichletRight, wall_marks);
  poly.validate();
  return poly;
}

double minimum_truncation_length(const CascadeGeometry& geom) {
  return geom.l / 2 + 2.0 + geom.h_max();
}

double default_truncation_length(const CascadeGeometry& geom) {
  return geom.l / 2 + 4.0 * geom.h_max() + 2.0;
}

TaggedPolygon truncated_inner_outline(const CascadeGeometry& geom, double L) {
  geom.validate();
  if (L < minimum_truncation_length(geom))
    throw ParameterError("truncation length must be >= l/2 + 2 + max(h1,h2) = " +
                         std::to_string(minimum_truncation_length(geom)));
  const double a = 1.0 + geom.l / 2, b = 2.0 + geom.l / 2;
  auto poly = build_outline(geom, 1.0, -L, L, BoundaryTag::TruncLeft, BoundaryTag::TruncRight, {-b, -a, a, b});
  poly.validate();
  return poly;
}

std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::LeftBranch: return "LeftBranch";
    case RegionTag::RightBranch: return "RightBranch";
    case RegionTag::Joint: return "Joint";
    case RegionTag::LeftEndLayer: return "LeftEndLayer";
    case RegionTag::RightEndLayer: return "RightEndLayer";
  }
  return "?";
}

RegionTag classify(const CascadeGeometry& geom, double eps, double delta_end, Point p) {
  if (std::abs(p.x) <= eps * geom.l / 2) return RegionTag::Joint;
  if (p.x <= -1.0 + delta_end) return RegionTag::LeftEndLayer;
  if (p.x >= 1.0 - delta_end) return RegionTag::RightEndLayer;
  return p.x < 0 ? RegionTag::LeftBranch : RegionTag::RightBranch;
}

bool Region::contains_x(double x) const {
  return std::any_of(x_intervals.begin(), x_intervals.end(),
                     [x](const auto& iv) { return x >= iv.first && x <= iv.second; });
}

Region Region::full() { return Region{"full", {{-1.0, 1.0}}}; }

Region Region::thin_rectangle(int branch, double eps, double alpha, double l) {
  const double cut = 2.0 * l * std::pow(eps, alpha);
  if (cut >= 1.0) throw ParameterError("thin rectangle is empty: 2 l eps^alpha >= 1");
  if (branch == 1) return Region{"thin_rect_1", {{-1.0, -cut}}};
  if (branch == 2) return Region{"thin_rect_2", {{cut, 1.0}}};
  throw ParameterError("branch index must be 1 or 2");
}

Region Region::thin_rectangles(double eps, double alpha, double l) {
  auto a = thin_rectangle(1, eps, alpha, l);
  auto b = thin_rectangle(2, eps, alpha, l);
  return Region{"thin_rects", {a.x_intervals[0], b.x_intervals[0]}};
}

Region Region::joint_neighbourhood(double eps, double l) {
  return Region{"joint_nbhd", {{-eps * l, eps * l}}};
}

Region Region::from_tags(const std::vector<RegionTag>& tags, const CascadeGeometry& geom, double eps,
                         double delta_end) {
  Region r{"tags", {}};
  const double j = eps * geom.l / 2;
  for (auto t : tags) {
    switch (t) {
      case RegionTag::LeftEndLayer: r.x_intervals.push_back({-1.0, -1.0 + delta_end}); break;
      case RegionTag::LeftBranch: r.x_intervals.push_back({-1.0 + delta_end, -j}); break;
      case RegionTag::Joint: r.x_intervals.push_back({-j, j}); break;
      case RegionTag::RightBranch: r.x_intervals.push_back({j, 1.0 - delta_end}); break;
      case RegionTag::RightEndLayer: r.x_intervals.push_back({1.0 - delta_end, 1.0}); break;
    }
  }
  if (r.x_intervals.empty()) throw ParameterError("empty region");
  return r;
}

}  // namespace thincascade
