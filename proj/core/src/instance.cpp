#include "quantsel/instance.hpp"

#include <cstdio>
#include <fstream>

#include "quantsel/error.hpp"
#include "quantsel/rng.hpp"

namespace quantsel {

using nlohmann::json;

const char* instance_kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::Bodies: return "bodies";
    case InstanceKind::Segments: return "segments";
    case InstanceKind::ColorFamilies: return "colorFamilies";
  }
  return "bodies";
}

InstanceKind instance_kind_from(const std::string& s) {
  if (s == "bodies") return InstanceKind::Bodies;
  if (s == "segments") return InstanceKind::Segments;
  if (s == "colorFamilies") return InstanceKind::ColorFamilies;
  fail(ErrorCode::InvalidInput, "unknown instance kind: " + s);
}

std::vector<ConvexBody> Instance::flat() const {
  std::vector<ConvexBody> out;
  for (const auto& f : families)
    for (const auto& b : f) out.push_back(b);
  return out;
}

std::vector<std::vector<Segment>> Instance::segment_families() const {
  std::vector<std::vector<Segment>> out;
  for (const auto& f : families) {
    std::vector<Segment> segs;
    for (const auto& b : f) {
      if (b.vertices().size() != 2)
        fail(ErrorCode::InvalidInput, "segment bodies need exactly 2 vertices");
      segs.emplace_back(b.vertices()[0], b.vertices()[1]);
    }
    out.push_back(std::move(segs));
  }
  return out;
}

json vecq_to_json(const VecQ& v) {
  json a = json::array();
  for (const Rat& c : v) a.push_back(rat_to_string(c));
  return a;
}

VecQ vecq_from_json(const json& j) {
  VecQ v;
  for (const auto& c : j) v.push_back(parse_rat(c.get<std::string>()));
  return v;
}

json body_to_json(const ConvexBody& b) {
  json verts = json::array();
  for (const auto& v : b.vertices()) verts.push_back(vecq_to_json(v.x));
  return json{{"vertices", verts}};
}

ConvexBody body_from_json(const json& j) {
  std::vector<Point> pts;
  for (const auto& v : j.at("vertices")) pts.emplace_back(vecq_from_json(v));
  return ConvexBody(std::move(pts));
}

json instance_to_json(const Instance& inst) {
  json fams = json::array();
  for (const auto& f : inst.families) {
    json fam = json::array();
    for (const auto& b : f) fam.push_back(body_to_json(b));
    fams.push_back(fam);
  }
  json j{{"dimension", inst.dimension},
         {"kind", instance_kind_name(inst.kind)},
         {"families", fams},
         {"metadata", inst.metadata}};
  if (inst.seed) j["seed"] = *inst.seed;
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.dimension = j.at("dimension").get<int>();
  inst.kind = instance_kind_from(j.at("kind").get<std::string>());
  for (const auto& fam : j.at("families")) {
    std::vector<ConvexBody> f;
    for (const auto& b : fam) {
      ConvexBody body = body_from_json(b);
      if (body.dim() != inst.dimension)
        fail(ErrorCode::InvalidInput, "body dimension mismatch");
      f.push_back(std::move(body));
    }
    inst.families.push_back(std::move(f));
  }
  if (j.contains("seed") && !j.at("seed").is_null())
    inst.seed = j.at("seed").get<uint64_t>();
  if (j.contains("metadata"))
    for (auto& [k, v] : j.at("metadata").items())
      inst.metadata[k] = v.get<std::string>();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
  }
  return instance_from_json(j);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) fail(ErrorCode::InvalidInput, "cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrorCode::InvalidInput, "cannot rename into " + path);
}

void save_instance(const Instance& inst, const std::string& path) {
  write_file_atomic(path, instance_to_json(inst).dump(2) + "\n");
}

std::string instance_hash(const Instance& inst) {
  std::string canon = instance_to_json(inst).dump();
  uint64_t h = Rng::fnv1a(canon);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace quantsel
