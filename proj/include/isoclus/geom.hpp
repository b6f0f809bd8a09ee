#pragma once

// Exact-measure planar geometry: regions bounded by segments and circular
// arcs, rigid motions, and the flat torus used by periodic tilings.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isoclus {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Side length of the unit-area regular hexagon, 12^{1/4}/3.
inline const double kHexSide = std::pow(12.0, 0.25) / 3.0;
/// Perimeter of the unit-area regular hexagon, 2 * 12^{1/4}.
inline const double kHexPerimeter = 2.0 * std::pow(12.0, 0.25);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2() = default;
  constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Point2 operator-() const { return {-x, -y}; }
  constexpr Point2& operator+=(Point2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Point2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }
inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
/// Rotates a vector counter-clockwise by a right angle.
constexpr Point2 perp(Point2 v) { return {-v.y, v.x}; }

struct Box {
  Point2 lo{1e300, 1e300};
  Point2 hi{-1e300, -1e300};

  void expand(Point2 p);
  void expand(const Box& b);
  bool empty() const { return lo.x > hi.x; }
  bool overlaps(const Box& b, double pad = 0.0) const;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  Point2 center() const { return (lo + hi) * 0.5; }
};

enum class EdgeKind { segment, arc };

/// A boundary piece: straight segment, or circular arc with signed sweep
/// (positive = counter-clockwise about the center).
struct Edge {
  EdgeKind kind = EdgeKind::segment;
  Point2 from;
  Point2 to;
  Point2 center;
  double sweep = 0.0;

  static Edge segment(Point2 a, Point2 b);
  /// Arc starting at `from`, turning by `sweep` around `center`.
  static Edge arc(Point2 from, Point2 center, double sweep);
  /// Arc with explicit end point; validates equidistance and |sweep| < 2pi.
  static Edge arc(Point2 from, Point2 to, Point2 center, double sweep);

  bool is_arc() const { return kind == EdgeKind::arc; }
  double radius() const;
  double length() const;
  /// Point at parameter t in [0, 1] (linear in arc length).
  Point2 point_at(double t) const;
  /// Unit tangent at parameter t.
  Point2 tangent_at(double t) const;
  Edge reversed() const;
  /// Sub-edge between parameters t0 < t1.
  Edge sub(double t0, double t1) const;
  /// Contribution to 1/2 * closed-integral(x dy - y dx).
  double green_term() const;
  Box bbox() const;
};

/// Distance from p to the edge, with exact projection.
double point_edge_distance(Point2 p, const Edge& e);
/// Parameters t in (0,1) where the edge meets the segment [a,b] (proper hits).
std::vector<double> edge_segment_hits(const Edge& e, Point2 a, Point2 b);
/// Parameters t in (0,1) where the edge meets the circle (c, r).
std::vector<double> edge_circle_hits(const Edge& e, Point2 c, double r);

struct Loop {
  std::vector<Edge> edges;

  double signed_area() const;
  double length() const;
  bool is_polygonal() const;
  std::vector<Point2> vertices() const;
  Loop reversed() const;
  Box bbox() const;
};

/// A planar set bounded by closed loops. Outer loops are counter-clockwise,
/// holes clockwise; the area is the sum of signed loop areas.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Loop> loops);

  static Region polygon(std::vector<Point2> vertices);
  static Region rectangle(Point2 lo, Point2 hi);
  static Region square(Point2 center, double side);
  static Region regular_polygon(int n, Point2 center, double circumradius, double phase = 0.0);
  static Region disk(Point2 center, double radius);
  /// Concatenates loops without merging; the parts must be interior-disjoint.
  static Region from_parts(std::span<const Region> parts);

  const std::vector<Loop>& loops() const { return loops_; }
  bool empty() const { return loops_.empty(); }
  bool is_polygonal() const;
  Box bbox() const;
  std::vector<Point2> vertices() const;
  std::vector<Edge> edges() const;

 private:
  std::vector<Loop> loops_;
};

/// Checks loop closure, arc consistency and (for straight edges) simplicity.
void validate_loop(const Loop& loop);

double area(const Region& r);
/// Sum of all edge lengths.
double perimeter(const Region& r);
/// Length of the essential boundary: edges shared by two loops of the same
/// region in opposite directions cancel.
double reduced_perimeter(const Region& r);
Point2 centroid(const Region& r);

/// Nonzero-winding membership; points on the boundary are unspecified.
bool contains(const Region& r, Point2 p);
double boundary_distance(const Region& r, Point2 p);

/// Rotation about the origin followed by translation.
struct RigidMotion {
  double angle = 0.0;
  Point2 translation;

  Point2 apply(Point2 p) const;
  Edge apply(const Edge& e) const;
  Region apply(const Region& r) const;
  /// (this * other)(p) = this(other(p)).
  RigidMotion compose(const RigidMotion& other) const;
  RigidMotion inverse() const;
};

Region translated(const Region& r, Point2 v);
Region scaled(const Region& r, double factor, Point2 about = {});

enum class BoolOp { intersect, unite, difference, symmetric_difference };

/// Polygonal boolean operation. Arc-bounded input throws UnsupportedOperation.
Region boolean(const Region& a, const Region& b, BoolOp op);
Region unite_all(std::span<const Region> parts);
/// |a ∩ b| for polygonal regions; exact clipping when one side is convex.
double intersection_area(const Region& a, const Region& b);
/// The part {x : dot(x, normal) <= offset}.
Region clip_halfplane(const Region& r, Point2 normal, double offset);
/// Area of the part {x : dot(x, normal) <= offset} without building it.
double halfplane_area(const Region& r, Point2 normal, double offset);

bool is_convex_polygon(const Region& r);
std::vector<Point2> convex_hull(std::vector<Point2> pts);

/// Boundary chains for Hausdorff distance.
using Chain = std::vector<Edge>;
Chain boundary_chain(const Region& r);
double hausdorff_distance(const Chain& a, const Chain& b);
double hausdorff_distance(const Region& a, const Region& b);

/// Maximum pairwise distance of vertices (arcs contribute sampled points).
double diameter(const Region& r);

/// Intersection/difference with a disk whose center is the center of every
/// arc already present in `r`.
Region clip_to_disk(const Region& r, Point2 center, double radius, bool keep_inside);
/// |r ∩ disk(center, radius)| for regions whose arcs are concentric with the disk.
double disk_intersection_area(const Region& r, Point2 center, double radius);

/// Fundamental domain T(v_beta, w_alpha) of the honeycomb torus.
struct TorusSpec {
  int alpha = 2;
  int beta = 2;
  double ell = kHexSide;

  static TorusSpec make(int alpha, int beta);
  Point2 v() const { return {std::sqrt(3.0) * beta * ell, 0.0}; }
  Point2 w() const { return {0.0, 1.5 * alpha * ell}; }
  double area() const { return v().x * w().y; }
  /// Representative in Q_T = (0, |v|] x (0, |w|].
  Point2 canonicalize(Point2 p) const;
};

struct Window {
  Region region;
  bool complement = false;
};

/// N chambers inside an ambient region, the whole plane, or a flat torus.
class Cluster {
 public:
  Cluster() = default;
  static Cluster in_plane(std::vector<Region> chambers);
  static Cluster in_region(std::vector<Region> chambers, Region ambient);
  static Cluster on_torus(std::vector<Region> chambers, TorusSpec torus);

  const std::vector<Region>& chambers() const { return chambers_; }
  std::size_t size() const { return chambers_.size(); }
  const std::optional<Region>& ambient() const { return ambient_; }
  const std::optional<TorusSpec>& torus() const { return torus_; }
  bool on_torus() const { return torus_.has_value(); }

  /// |E(0)|; infinite for a plane cluster without ambient.
  double exterior_area() const;
  /// Ambient minus the chambers (plane, polygonal only).
  Region exterior() const;

 private:
  std::vector<Region> chambers_;
  std::optional<Region> ambient_;
  std::optional<TorusSpec> torus_;
};

/// 1/2 sum_{i=0..N} P(E(i); window), each interface counted once.
double cluster_perimeter(const Cluster& c, const std::optional<Window>& window = std::nullopt);
/// 1/2 sum_{i=0..N} |a(i) Δ b(i)|; polygonal chambers only.
double cluster_distance(const Cluster& a, const Cluster& b);
/// |a ∩ b| measured on the torus (sum over lattice translates).
double torus_intersection_area(const Region& a, const Region& b, const TorusSpec& t);

struct TorusMeasures {
  double area = 0.0;
  double perimeter = 0.0;
};
TorusMeasures torus_measures(const Cluster& c);

struct ClusterCheck {
  double max_overlap = 0.0;
  double max_containment_excess = 0.0;
  bool ok = true;
  std::string message;
};
/// Pairwise overlap and containment invariants (polygonal chambers).
ClusterCheck check_cluster(const Cluster& c, double rel_tol = 1e-9);

}  // namespace isoclus
