#include <algorithm>

#include "quantsel/error.hpp"
#include "quantsel/geometry.hpp"

namespace quantsel {

Rat Hyperplane::eval(const VecQ& p) const { return dot(normal, p) - offset; }

bool HRep::contains(const VecQ& p) const {
  for (const auto& h : halfspaces)
    if (sgn(h.eval(p)) > 0) return false;
  return true;
}

bool HRep::strictly_contains(const VecQ& p) const {
  for (const auto& h : halfspaces)
    if (sgn(h.eval(p)) >= 0) return false;
  return true;
}

Segment::Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a.dim() != b.dim()) fail(ErrorCode::InvalidInput, "segment dims differ");
  if (a.x == b.x) fail(ErrorCode::InvalidInput, "segment endpoints coincide");
}

Rat Segment::length_sq() const { return norm_sq(sub(b.x, a.x)); }

VecQ Segment::midpoint() const { return scale(add(a.x, b.x), Rat(1, 2)); }

VecQ Segment::delta() const { return sub(b.x, a.x); }

ConvexBody::ConvexBody(std::vector<Point> vertices) : verts_(std::move(vertices)) {
  if (verts_.empty()) fail(ErrorCode::InvalidInput, "body needs >= 1 vertex");
  dim_ = verts_[0].dim();
  for (const auto& v : verts_)
    if (v.dim() != dim_)
      fail(ErrorCode::InvalidInput, "body vertices of mixed dimension");
}

std::vector<VecQ> ConvexBody::coords() const {
  std::vector<VecQ> c;
  c.reserve(verts_.size());
  for (const auto& v : verts_) c.push_back(v.x);
  return c;
}

const HullData& ConvexBody::hull() const {
  std::call_once(cache_->once, [this] {
    try {
      cache_->hull = convex_hull(coords());
    } catch (const Error& e) {
      cache_->hull_error = e.what();
    }
  });
  if (cache_->hull_error)
    throw Error(ErrorCode::DegenerateHull, *cache_->hull_error);
  return *cache_->hull;
}

Rat ConvexBody::volume() const {
  std::call_once(cache_->vol_once, [this] { cache_->volume = hull_volume(coords()); });
  return *cache_->volume;
}

int ConvexBody::affine_dimension() const { return affine_dim(coords()); }

VecQ vertex_centroid(const std::vector<VecQ>& pts) {
  VecQ c(pts[0].size(), Rat(0));
  for (const auto& p : pts) c = add(c, p);
  return scale(c, Rat(1, static_cast<unsigned long>(pts.size())));
}

ConvexBody hull_of_union(const std::vector<ConvexBody>& bodies) {
  std::vector<Point> all;
  for (const auto& b : bodies)
    for (const auto& v : b.vertices()) all.push_back(v);
  return ConvexBody(std::move(all));
}

}  // namespace quantsel
