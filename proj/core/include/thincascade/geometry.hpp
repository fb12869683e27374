#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thincascade {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// Boundary pieces of the physical and of the truncated rescaled domains.
/// Index 1 is the left branch, index 2 the right branch.
enum class BoundaryTag : std::uint8_t {
  DirichletLeft,
  DirichletRight,
  NeumannTop1,
  NeumannBottom1,
  NeumannTop2,
  NeumannBottom2,
  Gamma,
  TruncLeft,
  TruncRight,
  Wall,
};

std::string_view to_string(BoundaryTag tag);
BoundaryTag boundary_tag_from_string(std::string_view name);

/// Closed polygon, counterclockwise; edge i joins vertex i and vertex i+1 (mod n).
struct TaggedPolygon {
  std::vector<Point> vertices;
  std::vector<BoundaryTag> tags;

  std::size_t size() const { return vertices.size(); }
  std::pair<Point, Point> edge(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }
  double signed_area() const;
  double perimeter() const;
  bool contains(Point p) const;
  /// Throws GeometryError for repeated vertices, zero-length edges,
  /// clockwise orientation or self-intersections.
  void validate() const;
};

/// Shoelace area of a closed vertex loop (sign follows orientation).
double shoelace_area(const std::vector<Point>& loop);

struct ProfileBreakpoint {
  double xi;
  double upper;  // h0^+(xi): joint wall sits at eta = +upper
  double lower;  // h0^-(xi): joint wall sits at eta = -lower
};

/// Piecewise-linear outline of the rescaled joint over [-l/2, l/2].
class JointProfile {
public:
  JointProfile() = default;
  explicit JointProfile(std::vector<ProfileBreakpoint> breakpoints);

  const std::vector<ProfileBreakpoint>& breakpoints() const { return points_; }
  double upper(double xi) const;
  double lower(double xi) const;
  /// Rescaled joint area |Xi^(0)|.
  double area() const;
  bool symmetric_in_eta(double tol = 1e-14) const;

private:
  std::vector<ProfileBreakpoint> points_;
};

/// Reads `xi upper lower` triples, one per line, with '#' comments.
JointProfile load_joint_profile(const std::filesystem::path& path);
JointProfile parse_joint_profile(std::string_view text);

struct CascadeGeometry {
  double h1 = 1.0;
  double h2 = 1.0;
  double l = 1.0;
  JointProfile joint;

  /// Throws GeometryError when the invariants of the cascade do not hold.
  void validate() const;
  double h_min() const { return h1 < h2 ? h1 : h2; }
  double h_max() const { return h1 > h2 ? h1 : h2; }
  double branch_width(int branch) const { return branch == 1 ? h1 : h2; }
  /// Vertical extent of the rescaled domain at xi (branches continue to infinity).
  std::pair<double, double> eta_range(double xi) const;
  bool symmetric_in_eta() const;
  /// Joint and both adjoining straight strips reduce to one straight strip.
  bool is_straight_strip() const;
};

namespace geometry_presets {
/// Straight continuation of both strips (linear if h1 != h2).
CascadeGeometry straight(double h1 = 1.0, double h2 = 1.0, double l = 1.0);
/// Smooth cosine bump added to both walls; `amplitude` > 0 widens, < 0 narrows.
CascadeGeometry bump(double amplitude, double h1 = 1.0, double h2 = 1.0, double l = 1.0,
                     int intervals = 8);
CascadeGeometry widening(double h1 = 1.0, double h2 = 1.0, double l = 1.0);
CascadeGeometry narrowing(double h1 = 1.0, double h2 = 1.0, double l = 1.0);
/// Constant joint walls at the given height, producing vertical steps.
CascadeGeometry step(double height = 1.0, double h1 = 1.0, double h2 = 1.0, double l = 1.0);
/// Two branches of different thickness joined by a widening.
CascadeGeometry cascade();
/// Looks up one of: straight, widening, narrowing, step, cascade.
CascadeGeometry by_name(std::string_view name);
}  // namespace geometry_presets

/// Boundary polygon of the physical thin domain at thickness parameter eps.
/// `wall_marks` adds vertices on the straight branch walls at those x, so
/// that mapped meshes get element columns aligned with them.
TaggedPolygon scaled_outline(const CascadeGeometry& geom, double eps, double eps_max = 0.5,
                             const std::vector<double>& wall_marks = {});

/// Default truncation length of the rescaled unbounded domain.
double default_truncation_length(const CascadeGeometry& geom);
double minimum_truncation_length(const CascadeGeometry& geom);

/// Boundary polygon of the rescaled domain cut at |xi| = L, with wall
/// vertices at |xi| = 1 + l/2 and 2 + l/2 (ends of the inner cutoff ramps).
TaggedPolygon truncated_inner_outline(const CascadeGeometry& geom, double L);

enum class RegionTag : std::uint8_t { LeftBranch, RightBranch, Joint, LeftEndLayer, RightEndLayer };

std::string_view to_string(RegionTag tag);

/// Pointwise classification of the physical domain.
RegionTag classify(const CascadeGeometry& geom, double eps, double delta_end, Point p);

/// Union of vertical bands of the physical domain, selected by element centroid.
struct Region {
  std::string name;
  std::vector<std::pair<double, double>> x_intervals;

  bool contains_x(double x) const;
  static Region full();
  /// I_{eps,alpha}^(i) x Upsilon: x in (-1, -2 l eps^alpha) or (2 l eps^alpha, 1).
  static Region thin_rectangle(int branch, double eps, double alpha, double l);
  /// Both thin rectangles at once.
  static Region thin_rectangles(double eps, double alpha, double l);
  /// Omega_{eps,l}^(0): |x| < eps l.
  static Region joint_neighbourhood(double eps, double l);
  static Region from_tags(const std::vector<RegionTag>& tags, const CascadeGeometry& geom,
                          double eps, double delta_end);
};

}  // namespace thincascade
