#include "quantsel/certificate.hpp"

#include <fstream>

#include "quantsel/containment.hpp"
#include "quantsel/epsnet.hpp"
#include "quantsel/error.hpp"
#include "quantsel/john.hpp"
#include "quantsel/sametype.hpp"
#include "quantsel/segments.hpp"
#include "quantsel/tverberg.hpp"

namespace quantsel {

using nlohmann::json;

json certificate_to_json(const Certificate& c) {
  return json{{"kind", c.kind},
              {"instanceHash", c.hash},
              {"payload", c.payload},
              {"achievedBounds", c.achieved}};
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.hash = j.at("instanceHash").get<std::string>();
  c.payload = j.at("payload");
  if (j.contains("achievedBounds"))
    for (auto& [k, v] : j.at("achievedBounds").items())
      c.achieved[k] = v.get<std::string>();
  return c;
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

void save_certificate(const Certificate& c, const std::string& path) {
  write_file_atomic(path, certificate_to_json(c).dump(2) + "\n");
}

json ellipsoid_to_json(const Ellipsoid& e) {
  json shape = json::array();
  for (int i = 0; i < e.shape.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < e.shape.cols; ++j) row.push_back(rat_to_string(e.shape.at(i, j)));
    shape.push_back(row);
  }
  return json{{"shape", shape}, {"center", vecq_to_json(e.center)}};
}

Ellipsoid ellipsoid_from_json(const json& j, int d) {
  Ellipsoid e;
  e.shape = MatQ(d, d);
  const auto& shape = j.at("shape");
  if (static_cast<int>(shape.size()) != d)
    fail(ErrorCode::InvalidInput, "shape row count mismatch");
  for (int i = 0; i < d; ++i)
    for (int c = 0; c < d; ++c)
      e.shape.at(i, c) = parse_rat(shape.at(i).at(c).get<std::string>());
  e.center = vecq_from_json(j.at("center"));
  if (static_cast<int>(e.center.size()) != d)
    fail(ErrorCode::InvalidInput, "center size mismatch");
  e.validate();
  return e;
}

namespace {

json tuples_to_json(const std::vector<std::vector<int>>& ts) {
  json a = json::array();
  for (const auto& t : ts) a.push_back(t);
  return a;
}

json segment_to_json(const Segment& s) {
  return json{{"a", vecq_to_json(s.a.x)}, {"b", vecq_to_json(s.b.x)}};
}

const char* variant_name(SelectionVariant v) {
  switch (v) {
    case SelectionVariant::Quadratic: return "quadratic";
    case SelectionVariant::Steinitz2d: return "steinitz";
    case SelectionVariant::Simplex: return "simplex";
  }
  return "quadratic";
}

}  // namespace

Certificate make_john_certificate(const Instance& inst) {
  Certificate c;
  c.kind = "selection";
  c.hash = instance_hash(inst);
  json witnesses = json::array();
  Rat min_ratio(-1);
  auto bodies = inst.flat();
  for (size_t i = 0; i < bodies.size(); ++i) {
    Ellipsoid e = john_ellipsoid(bodies[i]);
    witnesses.push_back(json{{"bodyIndex", i}, {"ellipsoid", ellipsoid_to_json(e)}});
    Rat ratio = e.det_shape() / bodies[i].volume();
    if (min_ratio < 0 || ratio < min_ratio) min_ratio = ratio;
  }
  c.payload = json{{"op", "john"}, {"witnesses", witnesses}};
  c.achieved["minDetToVolumeRatio"] = rat_to_string(min_ratio);
  return c;
}

Certificate make_selection_certificate(const Instance& inst, SelectionVariant v,
                                       QuantMode mode, uint64_t seed) {
  auto bodies = inst.flat();
  SelectionWitness w;
  switch (v) {
    case SelectionVariant::Quadratic:
      w = selection_quadratic(bodies, mode, seed);
      break;
    case SelectionVariant::Steinitz2d:
      if (mode != QuantMode::Volume)
        fail(ErrorCode::Unsupported, "diameter mode only for the quadratic variant");
      w = selection_2d(bodies, seed);
      break;
    case SelectionVariant::Simplex:
      if (mode != QuantMode::Volume)
        fail(ErrorCode::Unsupported, "diameter mode only for the quadratic variant");
      w = selection_simplex(bodies, seed);
      break;
  }
  Certificate c;
  c.kind = "selection";
  c.hash = instance_hash(inst);
  c.payload = json{{"op", variant_name(v)},
                   {"mode", mode == QuantMode::Volume ? "volume" : "diameter"},
                   {"tupleSize", w.tuple_size},
                   {"hitTuples", tuples_to_json(w.hit_tuples)}};
  if (w.ellipsoid) {
    c.payload["witness"] = ellipsoid_to_json(*w.ellipsoid);
    c.achieved["witnessDet"] = rat_to_string(w.ellipsoid->det_shape());
  } else {
    c.payload["witness"] = segment_to_json(*w.segment);
    c.payload["direction"] = vecq_to_json(*w.direction);
    c.payload["delta"] = rat_to_string(*w.delta);
    c.achieved["witnessLengthSq"] = rat_to_string(w.segment->length_sq());
  }
  c.achieved["fraction"] = rat_to_string(w.fraction);
  return c;
}

Certificate make_epsnet_certificate(const Instance& inst, const Rat& eps,
                                    SelectionVariant v, uint64_t seed) {
  auto bodies = inst.flat();
  EpsNet net = weak_epsnet(bodies, eps, v, seed);
  if (!net.complete)
    fail(ErrorCode::NotFound, "net construction stalled before full piercing");
  Certificate c;
  c.kind = "epsnet";
  c.hash = instance_hash(inst);
  json pieces = json::array();
  for (const auto& p : net.pieces) pieces.push_back(ellipsoid_to_json(p));
  c.payload = json{{"op", "epsnet"},
                   {"variant", variant_name(v)},
                   {"epsilon", rat_to_string(eps)},
                   {"volumeFloor", rat_to_string(net.volume_floor)},
                   {"pieces", pieces}};
  c.achieved["netSize"] = std::to_string(net.pieces.size());
  int n = static_cast<int>(bodies.size());
  int take = static_cast<int>(rat_ceil(eps * n).get_si());
  int alpha = variant_tuple_size(v, inst.dimension);
  Rat denom = binomial(take, alpha);
  c.achieved["countingBound"] =
      sgn(denom) > 0 ? rat_to_string(binomial(n, alpha) / denom + 1) : "inf";
  return c;
}

Certificate make_tverberg_certificate(const Instance& inst, int r, uint64_t seed) {
  Certificate c;
  c.hash = instance_hash(inst);
  if (inst.kind == InstanceKind::ColorFamilies) {
    std::vector<std::vector<Ellipsoid>> efams;
    json input = json::array();
    for (const auto& fam : inst.families) {
      std::vector<Ellipsoid> ef;
      json row = json::array();
      for (const auto& b : fam) {
        ef.push_back(john_ellipsoid(b));
        row.push_back(ellipsoid_to_json(ef.back()));
      }
      efams.push_back(std::move(ef));
      input.push_back(row);
    }
    auto res = colorful_tverberg_ellipsoids(efams, r, seed);
    c.kind = "colorfulTverberg";
    c.payload = json{{"op", "colorfulTverbergEllipsoids"},
                     {"r", r},
                     {"inputEllipsoids", input},
                     {"transversals", tuples_to_json(res.transversals.transversals)},
                     {"witness", ellipsoid_to_json(res.witness)},
                     {"shrinkFactor", rat_to_string(res.shrink_factor)}};
    c.achieved["witnessDet"] = rat_to_string(res.witness.det_shape());
    return c;
  }
  auto bodies = inst.flat();
  std::vector<Ellipsoid> ells;
  json input = json::array();
  for (const auto& b : bodies) {
    ells.push_back(john_ellipsoid(b));
    input.push_back(ellipsoid_to_json(ells.back()));
  }
  auto res = tverberg_ellipsoids(ells, r, seed);
  c.kind = "tverberg";
  c.payload = json{{"op", "tverbergEllipsoids"},
                   {"r", r},
                   {"inputEllipsoids", input},
                   {"parts", tuples_to_json(res.partition.parts)},
                   {"witness", ellipsoid_to_json(res.witness)},
                   {"shrinkFactor", rat_to_string(res.shrink_factor)}};
  c.achieved["witnessDet"] = rat_to_string(res.witness.det_shape());
  Rat min_det = ells[0].det_shape();
  for (const auto& e : ells) min_det = std::min(min_det, e.det_shape());
  c.achieved["minInputDet"] = rat_to_string(min_det);
  return c;
}

Certificate make_segment_tverberg_certificate(const Instance& inst, int r,
                                              uint64_t seed) {
  auto fams = inst.segment_families();
  auto res = colorful_tverberg_segments(fams, r, seed);
  Certificate c;
  c.kind = "diameterTverberg";
  c.hash = instance_hash(inst);
  // transversal entries remapped to input element indices
  std::vector<std::vector<int>> trs;
  for (const auto& tr : res.transversals.transversals) {
    std::vector<int> row;
    for (size_t i = 0; i < tr.size(); ++i)
      row.push_back(res.original_indices[i][tr[i]]);
    trs.push_back(std::move(row));
  }
  json counts = json::array();
  for (long v : res.cap.covered_counts) counts.push_back(v);
  c.payload = json{{"op", "segmentTverberg"},
                   {"r", r},
                   {"direction", vecq_to_json(res.cap.direction)},
                   {"delta", rat_to_string(res.cap.delta)},
                   {"coveredCounts", counts},
                   {"transversals", tuples_to_json(trs)},
                   {"witness", segment_to_json(res.witness)}};
  c.achieved["vWidth"] = rat_to_string(dot(res.cap.direction, res.witness.delta()));
  c.achieved["witnessLengthSq"] = rat_to_string(res.witness.length_sq());
  return c;
}

Certificate make_sametype_certificate(const Instance& inst, const Rat& alpha) {
  auto cert = same_type_refine(inst.families, alpha);
  Certificate c;
  c.kind = "sametype";
  c.hash = instance_hash(inst);
  json trimmed = json::array();
  for (const auto& f : cert.trimmed) {
    json fam = json::array();
    for (const auto& b : f) fam.push_back(body_to_json(b));
    trimmed.push_back(fam);
  }
  json separators = json::array();
  for (const auto& [I, h] : cert.separators)
    separators.push_back(json{{"subset", I},
                              {"normal", vecq_to_json(h.normal)},
                              {"offset", rat_to_string(h.offset)}});
  json order = json::array();
  for (const auto& [subset, sign] : cert.order_type.signs)
    order.push_back(json{{"subset", subset}, {"sign", sign}});
  c.payload = json{{"op", "sameTypeRefine"},
                   {"alpha", rat_to_string(alpha)},
                   {"rho", rat_to_string(cert.rho)},
                   {"finalVolume", rat_to_string(cert.final_volume)},
                   {"trimmed", trimmed},
                   {"parents", tuples_to_json(cert.parent)},
                   {"separators", separators},
                   {"orderType", order}};
  c.achieved["finalVolume"] = rat_to_string(cert.final_volume);
  for (size_t i = 0; i < cert.trimmed.size(); ++i)
    c.achieved["size" + std::to_string(i)] = std::to_string(cert.trimmed[i].size());
  return c;
}

Certificate make_homogeneous_certificate(const Instance& inst, const Rat& target) {
  auto res = homogeneous_selection_bruteforce(inst.families, target);
  Certificate c;
  c.kind = "homogeneous";
  c.hash = instance_hash(inst);
  c.payload = json{{"op", "homsel"},
                   {"targetFraction", rat_to_string(target)},
                   {"subfamilies", tuples_to_json(res.subfamilies)},
                   {"witness", ellipsoid_to_json(res.witness)}};
  c.achieved["witnessDet"] = rat_to_string(res.witness.det_shape());
  return c;
}

}  // namespace quantsel
