#include <set>

#include "doctest.h"
#include "quantsel/containment.hpp"
#include "quantsel/error.hpp"
#include "quantsel/john.hpp"
#include "quantsel/sametype.hpp"
#include "test_helpers.hpp"

using namespace quantsel;
using namespace qtest;

namespace {

MeasureFamily squares_at(std::vector<std::pair<Rat, Rat>> lows) {
  std::vector<ConvexBody> bodies;
  for (auto& [x, y] : lows) bodies.push_back(unit_square(x, y));
  return MeasureFamily::of(std::move(bodies));
}

}  // namespace

TEST_CASE("ham sandwich: far horizontal squares are halved by y = const") {
  auto mu1 = squares_at({{frac(-1, 2), frac(-1, 2)}});
  auto mu2 = squares_at({{frac(19, 2), frac(-1, 2)}});
  Hyperplane h = ham_sandwich_2d(mu1, mu2);
  CHECK(halfplane_measure(mu1, h) == mu1.total() / 2);
  CHECK(halfplane_measure(mu2, h) == mu2.total() / 2);
}

TEST_CASE("ham sandwich: far vertical squares are halved by x = const") {
  auto mu1 = squares_at({{frac(-1, 2), frac(-1, 2)}});
  auto mu2 = squares_at({{frac(-1, 2), frac(19, 2)}});
  Hyperplane h = ham_sandwich_2d(mu1, mu2);
  CHECK(halfplane_measure(mu1, h) == mu1.total() / 2);
  CHECK(halfplane_measure(mu2, h) == mu2.total() / 2);
}

TEST_CASE("ham sandwich on random polygon measures, Monte Carlo cross-check") {
  Rng rng(5, "hsrand");
  for (int trial = 0; trial < 3; ++trial) {
    auto gen_measure = [&](long shift) {
      std::vector<ConvexBody> bodies;
      for (int b = 0; b < 2; ++b) {
        std::vector<Point> pts;
        VecQ c = {frac(shift + static_cast<long>(rng.next_below(9)) - 4, 2),
                  frac(static_cast<long>(rng.next_below(9)) - 4, 2)};
        for (int k = 0; k < 6; ++k) {
          double th = 2 * M_PI * k / 6 + 0.2 * b + 0.13 * trial;
          Rat t = rationalize(std::tan(th / 2), 1000UL);
          VecQ u = rational_circle_point(t);
          pts.emplace_back(add(c, u));
        }
        bodies.emplace_back(std::move(pts));
      }
      return MeasureFamily::of(std::move(bodies));
    };
    auto mu1 = gen_measure(0);
    auto mu2 = gen_measure(3);
    Hyperplane h = ham_sandwich_2d(mu1, mu2);
    Rat im1 = abs(halfplane_measure(mu1, h) - mu1.total() / 2);
    Rat im2 = abs(halfplane_measure(mu2, h) - mu2.total() / 2);
    CHECK(im1 <= mu1.total() / 1000000000L);
    CHECK(im2 <= mu2.total() / 1000000000L);

    // Monte Carlo measure oracle: sampled halfplane mass within 3 sigma
    int inside = 0, below = 0;
    const int N = 40000;
    Rng mc(100 + trial, "hsmc");
    for (int s = 0; s < N; ++s) {
      VecQ p = {frac(static_cast<long>(mc.next_below(16000)) - 8000, 1000),
                frac(static_cast<long>(mc.next_below(16000)) - 8000, 1000)};
      for (const auto& b : mu1.bodies) {
        if (b.hull().hrep.contains(p)) {
          ++inside;
          if (sgn(h.eval(p)) <= 0) ++below;
          break;
        }
      }
    }
    double ratio = static_cast<double>(below) / std::max(1, inside);
    CHECK(std::fabs(ratio - 0.5) < 3.0 * std::sqrt(0.25 / inside) + 0.01);
  }
}

TEST_CASE("separability_check: far-apart families vs interpenetrating") {
  std::vector<ConvexBody> far = {unit_square(Rat(0), Rat(0)),
                                 unit_square(Rat(40), Rat(0)),
                                 unit_square(Rat(0), Rat(40))};
  auto r = separability_check(far);
  REQUIRE(std::holds_alternative<SeparatorList>(r));
  const auto& seps = std::get<SeparatorList>(r).separators;
  CHECK(seps.size() == 3);  // 2^d - 1
  for (const auto& [I, h] : seps) {
    for (int i = 0; i < 3; ++i) {
      bool in_I = std::find(I.begin(), I.end(), i) != I.end();
      for (const auto& v : far[i].vertices()) {
        if (in_I) CHECK(sgn(h.eval(v.x)) < 0);
        else CHECK(sgn(h.eval(v.x)) > 0);
      }
    }
  }

  std::vector<ConvexBody> bad = {unit_square(Rat(0), Rat(0)),
                                 unit_square(frac(1, 2), Rat(0)),
                                 unit_square(Rat(0), Rat(40))};
  auto r2 = separability_check(bad);
  CHECK(std::holds_alternative<CounterexampleSubset>(r2));
}

TEST_CASE("separators found imply a uniform order type on random instances") {
  Rng rng(9, "seprand");
  int separated = 0;
  for (int trial = 0; trial < 10; ++trial) {
    // clusters around a huge triangle: always separable
    long spread = 60;
    std::vector<ConvexBody> fams;
    long centers[3][2] = {{0, 0}, {spread, 0}, {0, spread}};
    for (int i = 0; i < 3; ++i)
      fams.push_back(unit_square(
          frac(centers[i][0] * 4 + static_cast<long>(rng.next_below(9)), 4),
          frac(centers[i][1] * 4 + static_cast<long>(rng.next_below(9)), 4)));
    auto r = separability_check(fams);
    if (!std::holds_alternative<SeparatorList>(r)) continue;
    ++separated;
    auto ot = family_order_type(fams);
    CHECK(std::holds_alternative<OrderType>(ot));
  }
  CHECK(separated == 10);
}

namespace {

std::vector<std::vector<ConvexBody>> clustered_families(int per_family,
                                                        long jitter_den,
                                                        uint64_t seed) {
  // three families clustered at the corners of a huge triangle
  Rng rng(seed, "stclusters");
  long centers[3][2] = {{0, 0}, {50, 0}, {0, 50}};
  std::vector<std::vector<ConvexBody>> fams(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < per_family; ++j)
      fams[i].push_back(unit_square(
          Rat(centers[i][0]) + frac(static_cast<long>(rng.next_below(8)), jitter_den),
          Rat(centers[i][1]) + frac(static_cast<long>(rng.next_below(8)), jitter_den)));
  return fams;
}

void verify_same_type_certificate(const std::vector<std::vector<ConvexBody>>& input,
                                  const SameTypeCertificate& cert) {
  // parent containment, exact
  for (size_t i = 0; i < cert.trimmed.size(); ++i)
    for (size_t j = 0; j < cert.trimmed[i].size(); ++j)
      CHECK(body_contains_body(input[i][cert.parent[i][j]], cert.trimmed[i][j]));
  // strict separation, exact
  for (const auto& [I, h] : cert.separators) {
    for (size_t i = 0; i < cert.trimmed.size(); ++i) {
      bool in_I = std::find(I.begin(), I.end(), static_cast<int>(i)) != I.end();
      for (const auto& b : cert.trimmed[i])
        for (const auto& v : b.vertices()) {
          if (in_I) CHECK(sgn(h.eval(v.x)) < 0);
          else CHECK(sgn(h.eval(v.x)) > 0);
        }
    }
  }
  // exhaustive transversal order-type uniformity (vertex products)
  std::vector<int> counts;
  for (const auto& f : cert.trimmed) counts.push_back(static_cast<int>(f.size()));
  std::vector<int> tv(cert.trimmed.size(), 0);
  std::optional<OrderType> seen;
  for (;;) {
    std::vector<ConvexBody> pick;
    for (size_t i = 0; i < tv.size(); ++i) pick.push_back(cert.trimmed[i][tv[i]]);
    auto ot = family_order_type(pick);
    REQUIRE(std::holds_alternative<OrderType>(ot));
    if (!seen) seen = std::get<OrderType>(ot);
    else CHECK(*seen == std::get<OrderType>(ot));
    size_t i = tv.size();
    for (;;) {
      if (i == 0) return;
      --i;
      if (tv[i] + 1 < counts[i]) { ++tv[i]; break; }
      tv[i] = 0;
      if (i == 0) return;
    }
  }
}

}  // namespace

TEST_CASE("same_type_refine: separated clusters keep every body") {
  auto fams = clustered_families(4, 100, 21);
  auto cert = same_type_refine(fams);
  CHECK(cert.rho == Rat(1));
  for (const auto& f : cert.trimmed) CHECK(f.size() == 4);
  // three cuts at alpha = 1/3: exact final volume rho/27
  CHECK(cert.final_volume == frac(1, 27));
  for (const auto& f : cert.trimmed)
    for (const auto& b : f) CHECK(b.volume() == frac(1, 27));
  verify_same_type_certificate(fams, cert);
}

TEST_CASE("same_type_refine: interleaved families keep the paper bounds") {
  Rng rng(13, "interleaved");
  std::vector<std::vector<ConvexBody>> fams(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 8; ++j)
      fams[i].push_back(unit_square(frac(static_cast<long>(rng.next_below(512)), 256),
                                    frac(static_cast<long>(rng.next_below(512)), 256)));
  auto cert = same_type_refine(fams);
  for (const auto& f : cert.trimmed)
    CHECK(static_cast<int>(f.size()) >= 1);  // ceil(8 * 4^-3)
  CHECK(cert.final_volume == frac(1, 27));   // 3^-(2^d - 1) * rho
  verify_same_type_certificate(fams, cert);
}

TEST_CASE("same_type_refine: single body per family") {
  std::vector<std::vector<ConvexBody>> fams = {{unit_square(Rat(0), Rat(0))},
                                               {unit_square(Rat(30), Rat(0))},
                                               {unit_square(Rat(0), Rat(30))}};
  auto cert = same_type_refine(fams);
  for (const auto& f : cert.trimmed) CHECK(f.size() == 1);
  CHECK(cert.final_volume == frac(1, 27));
  verify_same_type_certificate(fams, cert);
}

TEST_CASE("same_type_refine in d=1") {
  std::vector<std::vector<ConvexBody>> fams = {
      {interval(Rat(0), Rat(1)), interval(frac(1, 5), frac(6, 5))},
      {interval(Rat(10), Rat(11)), interval(frac(49, 5), frac(54, 5))}};
  auto cert = same_type_refine(fams);
  CHECK(cert.final_volume == frac(1, 3));
  verify_same_type_certificate(fams, cert);
}

TEST_CASE("same_type_refine validates alpha") {
  auto fams = clustered_families(2, 100, 3);
  CHECK_THROWS_AS(same_type_refine(fams, frac(1, 2)), Error);
  CHECK_THROWS_AS(same_type_refine(fams, Rat(0)), Error);
  auto cert = same_type_refine(fams, frac(1, 4));
  CHECK(cert.final_volume == frac(1, 64));
}

TEST_CASE("fractional_helly_search: identical squares take everything") {
  std::vector<ConvexBody> fam(6, unit_square(Rat(0), Rat(0)));
  auto res = fractional_helly_search(fam, 2, frac(1, 4));
  CHECK(res.subfamily.size() == 6);
  CHECK(pi_lower() * res.witness.det_shape() >= frac(1, 4) * frac(9999, 10000));
}

TEST_CASE("fractional_helly_search: 6 of 8 squares share a core") {
  std::vector<ConvexBody> fam;
  for (int i = 0; i < 6; ++i)
    fam.push_back(unit_square(frac(i, 24), frac(i, 48)));  // heavy overlap
  fam.push_back(unit_square(Rat(30), Rat(0)));
  fam.push_back(unit_square(Rat(0), Rat(30)));
  auto res = fractional_helly_search(fam, 3, frac(1, 8));
  CHECK(res.subfamily.size() >= 6);
  for (int i : res.subfamily)
    CHECK(contains_ellipsoid(fam[i].hull().hrep, res.witness));
  // maximality: every excluded body fails the exact containment
  std::set<int> in(res.subfamily.begin(), res.subfamily.end());
  for (int i = 0; i < 8; ++i)
    if (!in.count(i))
      CHECK(!contains_ellipsoid(fam[i].hull().hrep, res.witness));
}

TEST_CASE("fractional_helly_search: disjoint bodies yield NotFound") {
  std::vector<ConvexBody> fam = {unit_square(Rat(0), Rat(0)),
                                 unit_square(Rat(10), Rat(0)),
                                 unit_square(Rat(20), Rat(0))};
  CHECK_THROWS_AS(fractional_helly_search(fam, 2, frac(1, 8)), Error);
}

TEST_CASE("homogeneous selection brute force in d=1") {
  std::vector<std::vector<ConvexBody>> fams(2);
  for (long k = 0; k < 4; ++k) {
    fams[0].push_back(interval(frac(-k, 7), frac(-k, 7) + 1));
    fams[1].push_back(interval(frac(k, 9), frac(k, 9) + 1));
  }
  auto res = homogeneous_selection_bruteforce(fams, frac(1, 2));
  CHECK(res.subfamilies[0].size() == 2);
  CHECK(res.subfamilies[1].size() == 2);
  // witness inside the hull of every transversal, exactly
  for (int a : res.subfamilies[0])
    for (int b : res.subfamilies[1]) {
      std::vector<ConvexBody> tv = {fams[0][a], fams[1][b]};
      CHECK(tuple_hull_contains_ellipsoid(tv, res.witness));
    }
}

TEST_CASE("homogeneous selection: tiny d=2 instance") {
  std::vector<std::vector<ConvexBody>> fams(3);
  for (int i = 0; i < 3; ++i)
    for (long j = 0; j < 2; ++j) {
      long cx = (i == 1) ? 20 : 0, cy = (i == 2) ? 20 : 0;
      fams[i].push_back(unit_square(Rat(cx) + frac(j, 5), Rat(cy) + frac(j, 7)));
    }
  auto res = homogeneous_selection_bruteforce(fams, Rat(1));
  std::vector<int> tv(3, 0);
  for (tv[0] = 0; tv[0] < 2; ++tv[0])
    for (tv[1] = 0; tv[1] < 2; ++tv[1])
      for (tv[2] = 0; tv[2] < 2; ++tv[2]) {
        std::vector<ConvexBody> pick = {fams[0][tv[0]], fams[1][tv[1]],
                                        fams[2][tv[2]]};
        CHECK(tuple_hull_contains_ellipsoid(pick, res.witness));
      }
}

TEST_CASE("homogeneous selection: disjoint layout at full fraction fails") {
  std::vector<std::vector<ConvexBody>> fams = {
      {interval(Rat(0), Rat(1)), interval(Rat(100), Rat(101))},
      {interval(Rat(2), Rat(3)), interval(Rat(200), Rat(201))}};
  // the extreme transversals' hulls cannot all share an interval
  CHECK_THROWS_AS(homogeneous_selection_bruteforce(fams, Rat(1)), Error);
}
