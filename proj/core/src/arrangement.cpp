#include "quantsel/arrangement.hpp"

#include "quantsel/error.hpp"

namespace quantsel {

std::vector<Cell> arrangement_cells(const std::vector<Hyperplane>& planes,
                                    const ConvexBody& region) {
  int d = region.dim();
  if (region.affine_dimension() < d)
    fail(ErrorCode::DegenerateHull, "arrangement region not full-dimensional");
  std::vector<ConvexBody> cells = {region};
  for (const auto& h : planes) {
    std::vector<ConvexBody> split;
    split.reserve(cells.size() * 2);
    for (const auto& c : cells) {
      auto lower = clip_body(c, h, /*keep_upper=*/false);
      auto upper = clip_body(c, h, /*keep_upper=*/true);
      if (lower) split.push_back(std::move(*lower));
      if (upper) split.push_back(std::move(*upper));
      if (!lower && !upper)
        fail(ErrorCode::InvalidInput, "cell vanished while splitting");
    }
    cells = std::move(split);
  }
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (auto& c : cells) {
    std::vector<VecQ> ext;
    for (int i : c.hull().extreme) ext.push_back(c.vertices()[i].x);
    out.push_back({vertex_centroid(ext), std::move(c)});
  }
  return out;
}

}  // namespace quantsel
