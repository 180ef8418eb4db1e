#pragma once

#include "quantsel/geometry.hpp"
#include "quantsel/tverberg.hpp"

namespace quantsel {

/// delta_d of the symmetric-cap equation
///   mu({ v in S^{d-1} : |<v,x>| > delta }) = 1 - 1/(5d).
/// Closed forms: d=2 -> cos(9*pi/20); d=3 -> 1/15. d=1 is degenerate (S^0 is
/// two atoms) and uses the 4/5 convention. d >= 4 via quadrature + bisection.
double cap_threshold(int d);

/// Rational threshold used in certificates: delta_hat in
/// [delta_d * (1 - 1e-6), delta_d].
Rat cap_threshold_rational(int d);

/// Tight rational upper bound on delta_d (for sound verifier comparisons).
Rat cap_threshold_upper(int d);

struct CapWitness {
  VecQ direction;                    // exactly unit-norm rational vector
  Rat delta;                         // certified rational threshold
  std::vector<long> covered_counts;  // per family: #{|<v, y-x>| >= delta}
};

/// Rejection-sample sphere directions until one is covered by at least half
/// of every family's caps; cap 1e5 samples (SearchExhausted afterwards).
/// Families must consist of exactly-unit-length segments.
CapWitness common_direction(const std::vector<std::vector<Segment>>& families,
                            uint64_t seed = 0,
                            std::optional<Rat> delta_override = std::nullopt);

struct SegmentTverbergResult {
  TransversalSet transversals;  // indices into the *filtered* families
  std::vector<std::vector<int>> original_indices;  // filtered -> input index
  Segment witness;
  CapWitness cap;
};

/// Diameter colorful Tverberg: cap direction -> filter -> truncate to
/// v-width exactly delta -> lift [x,y] -> (x,y) -> colorful point Tverberg ->
/// map the common lifted point back to a segment.
SegmentTverbergResult colorful_tverberg_segments(
    const std::vector<std::vector<Segment>>& families, int r, uint64_t seed = 0,
    std::optional<Rat> delta_override = std::nullopt);

}  // namespace quantsel
