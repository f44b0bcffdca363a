#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stratlab/exponents.hpp"
#include "stratlab/fixtures.hpp"
#include "stratlab/rng.hpp"

using namespace stratlab;

namespace {

VariableExponent linear_exponent(double lo, double hi) {
  // p(x) = lo + (hi-lo)*(x+2)/4 on [-2,2]; p_- ≈ lo, p_+ ≈ hi on the lattice.
  return VariableExponent("linear", ExponentKind::Analytic, [lo, hi](const GroupPoint& x) {
    return lo + (hi - lo) * (x[0] + 2.0) / 4.0;
  });
}

}  // namespace

TEST_CASE("conjugate exponent") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.01);

  const VariableExponent two = constant_exponent(2.0);
  const VariableExponent three = constant_exponent(3.0);
  CHECK(conjugate(two)(GroupPoint{0.3}) == doctest::Approx(2.0));
  CHECK(conjugate(three)(GroupPoint{0.3}) == doctest::Approx(1.5));

  const VariableExponent p = linear_exponent(1.5, 4.0);
  const auto pb = p.bounds(d);
  CHECK(pb.p_minus == doctest::Approx(1.5).epsilon(0.01));
  CHECK(pb.p_plus == doctest::Approx(4.0).epsilon(0.01));
  const auto cb = conjugate(p).bounds(d);
  CHECK(cb.p_minus == doctest::Approx(4.0 / 3.0).epsilon(0.01));
  CHECK(cb.p_plus == doctest::Approx(3.0).epsilon(0.01));

  // Involution and the 1/p + 1/p' = 1 identity, nodewise.
  const VariableExponent pcc = conjugate(conjugate(p));
  const VariableExponent pc = conjugate(p);
  for (std::int64_t i = 0; i < d.node_count(); i += 7) {
    const GroupPoint x = d.node(i);
    CHECK(std::abs(pcc(x) - p(x)) <= 1e-12);
    CHECK(std::abs(1.0 / p(x) + 1.0 / pc(x) - 1.0) <= 1e-12);
  }

  // p_- = 1 makes the conjugate unbounded: rejected at evaluation.
  const VariableExponent one = constant_exponent(1.0);
  CHECK_THROWS_AS(conjugate(one).bounds(d), std::invalid_argument);
}

TEST_CASE("conjugate stability inequalities") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.05);
  const VariableExponent p = linear_exponent(1.5, 3.0);
  const VariableExponent pc = conjugate(p);
  const auto b = p.bounds(d);
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const auto i =
        static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(d.node_count())));
    const auto j =
        static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(d.node_count())));
    const GroupPoint x = d.node(i), y = d.node(j);
    const double dp = std::abs(p(x) - p(y));
    CHECK(std::abs(pc(x) - pc(y)) <= dp / ((b.p_minus - 1.0) * (b.p_minus - 1.0)) + 1e-10);
    CHECK(std::abs(1.0 / p(x) - 1.0 / p(y)) <= dp / (b.p_minus * b.p_minus) + 1e-10);
  }
}

TEST_CASE("sobolev pairing") {
  const GroupModel h1 = make_group("heisenberg1");
  const LatticeDomain d(h1, -1.5, 1.5, 0.25);

  const auto pair = sobolev_pair(constant_exponent(2.0), 1.0, d);
  CHECK(pair.q(GroupPoint{0.25, 0.25, 0.25}) == doctest::Approx(4.0));

  // p_+ = Q/γ violates the strict bound; the message names the margin.
  CHECK_THROWS_WITH_AS(sobolev_pair(constant_exponent(2.0), 2.0, d),
                       doctest::Contains("p_plus < Q/gamma"), std::invalid_argument);

  // Nodewise identity 1/q = 1/p − γ/Q for a variable p.
  const VariableExponent p = exponent_preset("bump:2,0.5", h1);
  const auto pair2 = sobolev_pair(p, 0.5, d);
  for (std::int64_t i = 0; i < d.node_count(); i += 11) {
    const GroupPoint x = d.node(i);
    CHECK(std::abs(1.0 / pair2.q(x) - 1.0 / p(x) + 0.5 / 4.0) <= 1e-12);
  }
  CHECK(pair2.gamma == 0.5);
}

TEST_CASE("log-Hölder constants") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.05);

  const auto c0 = log_holder_constants(constant_exponent(2.0), d);
  CHECK(c0.c_local == 0.0);
  REQUIRE(c0.c_decay.has_value());
  CHECK(*c0.c_decay == 0.0);

  // p(x) = 2 + 1/log(e + ρ): the decay product is identically 1.
  const VariableExponent radial = exponent_preset("radial-log:2,1", r1);
  const auto c1 = log_holder_constants(radial, d);
  REQUIRE(c1.c_decay.has_value());
  CHECK(*c1.c_decay == doctest::Approx(1.0).epsilon(1e-6));

  // Jump exponent: C_local keeps growing under refinement.
  const VariableExponent jump = exponent_preset("jump:2,3", r1);
  const double g0 = log_holder_constants(jump, d).c_local;
  const double g1 = log_holder_constants(jump, d.refined()).c_local;
  const double g2 = log_holder_constants(jump, d.refined().refined()).c_local;
  CHECK(g1 / g0 >= 1.08);
  CHECK(g2 / g1 >= 1.08);
}

TEST_CASE("class-B heuristic verdicts") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.05);

  const auto v1 = in_class_B_heuristic(constant_exponent(2.0), d);
  CHECK(v1.sufficient_condition_met);
  CHECK(v1.verdict == "sufficient-condition-met");

  const auto v2 = in_class_B_heuristic(exponent_preset("radial-log:2,1", r1), d);
  CHECK(v2.sufficient_condition_met);

  const auto v3 = in_class_B_heuristic(exponent_preset("jump:2,3", r1), d);
  CHECK_FALSE(v3.sufficient_condition_met);
  CHECK(v3.verdict == "inconclusive");

  // p_- = 1 never meets the sufficient condition.
  const auto v4 = in_class_B_heuristic(constant_exponent(1.0), d);
  CHECK_FALSE(v4.sufficient_condition_met);
}

TEST_CASE("scaled exponent") {
  const VariableExponent p = constant_exponent(2.0);
  const VariableExponent sp = scaled_exponent(p, 1.5);
  CHECK(sp(GroupPoint{0.1}) == doctest::Approx(3.0));
  REQUIRE(sp.p_inf().has_value());
  CHECK(*sp.p_inf() == doctest::Approx(3.0));
}
