#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "quantsel/linalg.hpp"
#include "quantsel/rational.hpp"

namespace quantsel {

/// A point with exact rational coordinates.
struct Point {
  VecQ x;

  Point() = default;
  explicit Point(VecQ coords) : x(std::move(coords)) {}
  int dim() const { return static_cast<int>(x.size()); }
  bool operator==(const Point& o) const { return x == o.x; }
};

/// Half-space <normal, x> <= offset when used inside an HRep;
/// as a standalone hyperplane, the boundary <normal, x> = offset.
struct Hyperplane {
  VecQ normal;
  Rat offset;

  Rat eval(const VecQ& p) const;  // <normal, p> - offset
};

struct HRep {
  int dim = 0;
  std::vector<Hyperplane> halfspaces;

  bool contains(const VecQ& p) const;          // all <= constraints hold
  bool strictly_contains(const VecQ& p) const; // all < strictly
};

struct HullData {
  HRep hrep;
  std::vector<int> extreme;  // indices into the vertex list, in input order
};

/// Line segment with exact endpoints; endpoints must be distinct.
struct Segment {
  Point a, b;

  Segment() = default;
  Segment(Point a_, Point b_);
  int dim() const { return a.dim(); }
  Rat length_sq() const;
  VecQ midpoint() const;
  VecQ delta() const;  // b - a
};

/// Convex body as a V-polytope. Immutable after construction; the exact
/// half-space description is computed once on demand.
class ConvexBody {
public:
  ConvexBody() = default;
  explicit ConvexBody(std::vector<Point> vertices);

  int dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return verts_; }
  std::vector<VecQ> coords() const;

  /// Exact facet description + extreme vertices. Throws DegenerateHull
  /// when the body is not full-dimensional.
  const HullData& hull() const;

  /// Exact volume; 0 for lower-dimensional bodies.
  Rat volume() const;

  int affine_dimension() const;

private:
  std::vector<Point> verts_;
  int dim_ = 0;
  struct Cache {
    std::once_flag once;
    std::optional<HullData> hull;
    std::optional<std::string> hull_error;
    std::once_flag vol_once;
    std::optional<Rat> volume;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// -- hull / volume / intersection primitives --

/// Exact facet enumeration for conv(pts). Throws DegenerateHull with the
/// affine-hull dimension when not full-dimensional.
HullData convex_hull(const std::vector<VecQ>& pts);

/// Exact volume of conv(pts); 0 when lower-dimensional.
Rat hull_volume(const std::vector<VecQ>& pts);

/// V-polytope of the intersection of the bodies' hulls; nullopt when the
/// intersection is empty or not full-dimensional.
std::optional<ConvexBody> intersect_bodies(const std::vector<ConvexBody>& bodies);

/// Vertices of the polytope { x : all halfspaces } (bounded inputs only).
std::vector<VecQ> enumerate_vertices(const HRep& hrep);

/// Clip body to { x : <a,x> <= b } (or >= when keep_upper). Nullopt when the
/// full-dimensional part is empty.
std::optional<ConvexBody> clip_body(const ConvexBody& body, const Hyperplane& h,
                                    bool keep_upper);

/// Counterclockwise vertex order of a full-dimensional polygon (d = 2).
std::vector<VecQ> polygon_ccw(const std::vector<VecQ>& pts);

/// Convex sub-polygon of exactly the given volume (d <= 2). target must be
/// in (0, volume]; vertices stay rational.
ConvexBody trim_to_volume(const ConvexBody& body, const Rat& target);

VecQ vertex_centroid(const std::vector<VecQ>& pts);

/// Hull of everything in all bodies (used for conv of a tuple of bodies).
ConvexBody hull_of_union(const std::vector<ConvexBody>& bodies);

}  // namespace quantsel
