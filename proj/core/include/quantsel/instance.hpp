#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "quantsel/geometry.hpp"

namespace quantsel {

enum class InstanceKind { Bodies, Segments, ColorFamilies };

const char* instance_kind_name(InstanceKind k);
InstanceKind instance_kind_from(const std::string& s);

/// One instance file: families of V-polytopes (segments are 2-vertex
/// bodies) with exact rational coordinates.
struct Instance {
  int dimension = 0;
  InstanceKind kind = InstanceKind::Bodies;
  std::vector<std::vector<ConvexBody>> families;
  std::optional<uint64_t> seed;
  std::map<std::string, std::string> metadata;

  std::vector<ConvexBody> flat() const;
  std::vector<std::vector<Segment>> segment_families() const;
};

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

/// FNV-1a 64 hex over the canonical (sorted-key, no-whitespace) dump.
std::string instance_hash(const Instance& inst);

/// Atomic file write (temp + rename).
void write_file_atomic(const std::string& path, const std::string& content);

// -- serialization helpers shared with certificates --
nlohmann::json vecq_to_json(const VecQ& v);
VecQ vecq_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const ConvexBody& b);
ConvexBody body_from_json(const nlohmann::json& j);

// -- generators (deterministic in params + seed) --
struct GenParams {
  int d = 2;
  int n = 8;
  Rat eps = Rat(1, 4);
  int families = 4;
  int per = 8;
  int clusters = 3;
  long spread_mille = 4000;  // direction parameter range for unit segments
};

Instance generate(const std::string& kind, const GenParams& p, uint64_t seed);

}  // namespace quantsel
