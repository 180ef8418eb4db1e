#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "quantsel/instance.hpp"
#include "quantsel/selection.hpp"

namespace quantsel {

/// Self-contained proof object: every claim is re-checkable from the
/// instance + this file alone, in exact arithmetic.
struct Certificate {
  std::string kind;  // tverberg | colorfulTverberg | diameterTverberg |
                     // selection | epsnet | sametype | homogeneous
  std::string hash;  // instance hash the certificate binds to
  nlohmann::json payload;
  std::map<std::string, std::string> achieved;  // exact rationals as strings
};

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);
Certificate load_certificate(const std::string& path);
void save_certificate(const Certificate& c, const std::string& path);

nlohmann::json ellipsoid_to_json(const Ellipsoid& e);
Ellipsoid ellipsoid_from_json(const nlohmann::json& j, int d);

// -- certificate builders (run the search, package the witnesses) --

Certificate make_john_certificate(const Instance& inst);
Certificate make_selection_certificate(const Instance& inst, SelectionVariant v,
                                       QuantMode mode, uint64_t seed);
Certificate make_epsnet_certificate(const Instance& inst, const Rat& eps,
                                    SelectionVariant v, uint64_t seed);
/// kind=bodies -> monochromatic ellipsoid Tverberg; colorFamilies -> colorful.
Certificate make_tverberg_certificate(const Instance& inst, int r, uint64_t seed);
Certificate make_segment_tverberg_certificate(const Instance& inst, int r,
                                              uint64_t seed);
Certificate make_sametype_certificate(const Instance& inst, const Rat& alpha);
Certificate make_homogeneous_certificate(const Instance& inst, const Rat& target);

/// Independent re-check of every claim; throws VerifyFailed with a reason.
void verify_certificate(const Instance& inst, const Certificate& cert);

}  // namespace quantsel
