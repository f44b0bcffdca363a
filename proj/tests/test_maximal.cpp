#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stratlab/fixtures.hpp"
#include "stratlab/lipschitz.hpp"
#include "stratlab/maximal.hpp"
#include "stratlab/rng.hpp"

using namespace stratlab;

namespace {

GridFunction interval_indicator(const LatticeDomain& d, double a, double b) {
  return sample(d, [a, b](const GroupPoint& x) { return x[0] >= a && x[0] <= b ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("maximal of a ball indicator is |B|^{alpha/Q} on B") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -4.0, 4.0, 0.005);
  const auto family = build_ball_family(d, 8, 0.1, 2.0, 1.04, true);
  // Pick B from the family itself.
  const Ball b = family.balls[family.balls.size() / 2];
  const GridFunction chi = indicator(d, b);
  for (const double alpha : {0.3, 0.7}) {
    MaximalOperator op(chi, family, alpha);
    const double target = std::pow(ball_measure(r1, b.radius), alpha / r1.Q);
    for (std::int64_t i : ball_node_indices(d, b)) {
      const PointMax pm = op.at(d.node(i));
      REQUIRE(pm.covered);
      CHECK(pm.value == doctest::Approx(target).epsilon(0.02));
    }
  }
}

TEST_CASE("Hardy-Littlewood 1-D oracle: chi_[0,1] at x=2 gives 1/2") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -4.0, 4.0, 0.005);
  const auto family = build_ball_family(d, 2, 0.1, 3.0, 1.04, true);
  const GridFunction chi = interval_indicator(d, 0.0, 1.0);
  MaximalOperator op(chi, family, 0.0);
  // Continuum optimum: the interval [0,2] with average 1/2.
  const PointMax pm = op.at(GroupPoint{2.0});
  REQUIRE(pm.covered);
  CHECK(pm.value == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("averages of a constant are exact") {
  const GroupModel h1 = make_group("heisenberg1");
  const LatticeDomain d(h1, -2.0, 2.0, 0.2);
  const auto family = build_ball_family(d, 2, 0.8, 1.5, 1.15, true);
  const GridFunction c = sample(d, [](const GroupPoint&) { return 0.7; });
  MaximalOperator op(c, family, 0.0);
  const MaximalField field = op.field();
  for (std::size_t i = 0; i < field.value.size(); ++i) {
    if (!field.covered[i]) continue;
    CHECK(field.value[i] == doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("uncovered points are flagged") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -4.0, 4.0, 0.01);
  // Single small ball far from the right edge.
  BallFamily family;
  family.balls = {Ball{GroupPoint{-3.0}, 0.5}};
  family.policy = {1, 0.5, 0.5, 1.1, false, 0};
  const GridFunction one = sample(d, [](const GroupPoint&) { return 1.0; });
  MaximalOperator op(one, family, 0.0);
  CHECK_FALSE(op.at(GroupPoint{3.0}).covered);
  CHECK(op.at(GroupPoint{-3.0}).covered);
  const MaximalField field = op.field();
  CHECK(field.uncovered > 0);
}

TEST_CASE("restricted maximal") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -4.0, 4.0, 0.005);
  const auto family = build_ball_family(d, 4, 0.1, 2.0, 1.05, true);
  const Ball bstar = family.balls[family.balls.size() / 2];

  // b = chi_{B*}: restricted value |B*|^{alpha/Q} on B*.
  const GridFunction chi = indicator(d, bstar);
  const double alpha = 0.6;
  MaximalOperator op(chi, family, alpha);
  const double target = std::pow(ball_measure(r1, bstar.radius), alpha / r1.Q);
  const auto members = ball_node_indices(d, bstar);
  for (std::size_t k = 0; k < members.size(); k += 9) {
    const PointMax pm = op.at_restricted(d.node(members[k]), bstar);
    REQUIRE(pm.covered);
    CHECK(pm.value == doctest::Approx(target).epsilon(0.02));
  }

  // b ≡ 1, alpha = 0 → exactly 1.
  const GridFunction one = sample(d, [](const GroupPoint&) { return 1.0; });
  MaximalOperator op1(one, family, 0.0);
  const PointMax pm1 = op1.at_restricted(bstar.center, bstar);
  CHECK(pm1.value == doctest::Approx(1.0).epsilon(1e-12));

  // Constant b = c, alpha > 0 → c·|B*|^{alpha/Q}, maximizer B* itself.
  const GridFunction cf = sample(d, [](const GroupPoint&) { return 1.3; });
  MaximalOperator opc(cf, family, alpha);
  const PointMax pmc = opc.at_restricted(bstar.center, bstar);
  CHECK(pmc.value == doctest::Approx(1.3 * target).epsilon(0.02));
}

TEST_CASE("restricted mode appends B* when absent from the family") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -4.0, 4.0, 0.01);
  const auto family = build_ball_family(d, 16, 0.2, 1.0, 1.2, true);
  const Ball bstar{GroupPoint{0.105}, 0.77};  // not on the family ladder
  const GridFunction one = sample(d, [](const GroupPoint&) { return 1.0; });
  MaximalOperator op(one, family, 0.0);
  const auto r = op.restrict_to(bstar);
  CHECK(r.appended_bstar.has_value());
  const PointMax pm = op.at_restricted(bstar.center, bstar);
  CHECK(pm.covered);
  CHECK(pm.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximal commutator basics") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.01);
  const auto family = build_ball_family(d, 4, 0.05, 1.5, 1.1, true);
  const GridFunction f = interval_indicator(d, -0.5, 0.5);

  // Constant symbol → commutator vanishes everywhere.
  const GridFunction bc = sample(d, [](const GroupPoint&) { return 3.2; });
  MaximalConfig cfg{0.4, &family, std::nullopt};
  const MaximalField zero_field = maximal_commutator_field(bc, f, cfg);
  for (std::size_t i = 0; i < zero_field.value.size(); ++i)
    if (zero_field.covered[i]) CHECK(std::abs(zero_field.value[i]) <= 1e-12);

  // f ≡ 0 → 0.
  const GridFunction z = sample(d, [](const GroupPoint&) { return 0.0; });
  const GridFunction bz = sample(d, [](const GroupPoint& x) { return x[0]; });
  const MaximalField zf = maximal_commutator_field(bz, z, cfg);
  for (std::size_t i = 0; i < zf.value.size(); ++i)
    if (zf.covered[i]) CHECK(zf.value[i] == 0.0);

  // Nonnegativity and the Lipschitz domination bound
  // M_{α,b}f ≤ C·λ̂_β(b)·M_{α+β}f with C ≤ c0^β·2^β.
  const double beta = 0.5, alpha = 0.3;
  const SymbolFixture sym = make_symbol("gauge-beta", r1, beta);
  const GridFunction b = sample(d, sym.eval);
  const double lam = lambda_seminorm(b, beta);
  MaximalConfig cfg2{alpha, &family, std::nullopt};
  const MaximalField comm = maximal_commutator_field(b, f, cfg2);
  MaximalOperator upper(f, family, alpha + beta);
  const MaximalField up = upper.field();
  const double cbound = std::pow(2.0 * r1.c0, beta);
  double cmax = 0.0;
  for (std::int64_t i = 0; i < d.node_count(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (!comm.covered[ui]) continue;
    CHECK(comm.value[ui] >= 0.0);
    if (up.value[ui] > 1e-12) cmax = std::max(cmax, comm.value[ui] / (lam * up.value[ui]));
  }
  CHECK(cmax <= cbound + 0.05);
  MESSAGE("empirical domination constant C = ", cmax, " (cap ", cbound, ")");
}

TEST_CASE("nonlinear commutator identities") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -4.0, 4.0, 0.005);
  const auto family = build_ball_family(d, 4, 0.1, 2.0, 1.05, true);

  // b ≡ 1 → [b, M_α]f = 0.
  const GridFunction one = sample(d, [](const GroupPoint&) { return 1.0; });
  const GridFunction f = interval_indicator(d, -0.5, 0.5);
  MaximalConfig cfg{0.5, &family, std::nullopt};
  const SignedField zero = nonlinear_commutator_field(one, f, cfg);
  for (std::size_t i = 0; i < zero.value.size(); ++i)
    if (zero.covered[i]) CHECK(std::abs(zero.value[i]) <= 1e-12);

  // Proof identity: for x ∈ B, f = χ_B,
  // [b,M_α](χ_B)(x) = b(x)|B|^{α/Q} − M_{α,B}(b)(x).
  const Ball b_ball = family.balls[family.balls.size() / 2];
  const GridFunction chi = indicator(d, b_ball);
  const SymbolFixture sym = make_symbol("gauge-beta", r1, 0.4);
  const GridFunction b = sample(d, sym.eval);
  const SignedField lhs = nonlinear_commutator_field(b, chi, cfg);
  MaximalOperator op_b(b, family, cfg.alpha);
  const auto restr = op_b.restrict_to(b_ball);
  std::vector<double> scratch(static_cast<std::size_t>(d.node_count()), -1.0);
  std::vector<std::int64_t> touched;
  op_b.restricted_field(restr, scratch, touched);
  const double mpow = std::pow(ball_measure(r1, b_ball.radius), cfg.alpha / r1.Q);
  for (std::int64_t i : ball_node_indices(d, b_ball)) {
    const auto ui = static_cast<std::size_t>(i);
    const double rhs = b[i] * mpow - scratch[ui];
    CHECK(lhs.value[ui] == doctest::Approx(rhs).epsilon(0.04).scale(std::max(1.0, std::abs(rhs))));
  }
}

TEST_CASE("pointwise bound for nonnegative Lipschitz symbols") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.01);
  const auto family = build_ball_family(d, 2, 0.05, 1.8, 1.1, true);
  const double alpha = 0.2, beta = 0.5;
  const GridFunction b = sample(d, make_symbol("gauge-beta", r1, beta).eval);
  const GridFunction f = interval_indicator(d, -1.0, 1.0);
  const double lam = lambda_seminorm(b, beta);

  MaximalConfig cfg{alpha, &family, std::nullopt};
  const SignedField comm = nonlinear_commutator_field(b, f, cfg);
  MaximalOperator up_op(f, family, alpha + beta);
  const MaximalField up = up_op.field();
  for (std::int64_t i = 0; i < d.node_count(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (!comm.covered[ui]) continue;
    CHECK(std::abs(comm.value[ui]) <= (lam + 0.05) * up.value[ui] + 1e-9);
  }
}

TEST_CASE("sublinearity, homogeneity, monotonicity, finiteness") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.01);
  const auto family = build_ball_family(d, 4, 0.05, 1.5, 1.1, true);
  Rng rng(41);
  const GridFunction f = sample(d, random_smooth_input(r1, rng));
  const GridFunction g = sample(d, random_smooth_input(r1, rng));

  MaximalOperator mf(f, family, 0.4);
  MaximalOperator mg(g, family, 0.4);
  std::vector<double> sum(f.values());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += g.values()[i];
  MaximalOperator mfg(GridFunction(d, std::move(sum)), family, 0.4);
  const auto Ff = mf.field(), Fg = mg.field(), Ffg = mfg.field();
  for (std::size_t i = 0; i < Ff.value.size(); ++i) {
    if (!Ff.covered[i]) continue;
    CHECK(Ffg.value[i] <= Ff.value[i] + Fg.value[i] + 1e-10);
    CHECK(std::isfinite(Ff.value[i]));
  }

  // Positive homogeneity is exact for a power-of-two scaling.
  std::vector<double> twice(f.values());
  for (double& v : twice) v *= 2.0;
  MaximalOperator m2f(GridFunction(d, std::move(twice)), family, 0.4);
  const auto F2f = m2f.field();
  for (std::size_t i = 0; i < Ff.value.size(); ++i)
    if (Ff.covered[i]) CHECK(F2f.value[i] == 2.0 * Ff.value[i]);

  // |f| ≤ |g| nodewise ⇒ Mf ≤ Mg nodewise.
  std::vector<double> dom(f.values());
  for (double& v : dom) v = std::abs(v) + 0.05;
  MaximalOperator md(GridFunction(d, std::move(dom)), family, 0.4);
  const auto Fd = md.field();
  for (std::size_t i = 0; i < Ff.value.size(); ++i)
    if (Ff.covered[i]) CHECK(Ff.value[i] <= Fd.value[i] + 1e-12);
}

TEST_CASE("Lemma 2.12-style identity pair at every node") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -4.0, 4.0, 0.005);
  const auto family = build_ball_family(d, 4, 0.1, 2.0, 1.05, true);
  const Ball b_ball = family.balls[family.balls.size() / 3];
  const GridFunction b = sample(d, [](const GroupPoint& x) { return 1.0 + 0.5 * x[0]; });
  const double alpha = 0.5;

  std::vector<double> bchi(b.values());
  const GridFunction chi = indicator(d, b_ball);
  for (std::int64_t i = 0; i < b.size(); ++i) bchi[static_cast<std::size_t>(i)] *= chi[i];
  MaximalOperator m_bchi(GridFunction(d, std::move(bchi)), family, alpha);
  const auto lhs = m_bchi.field();

  MaximalOperator m_b(b, family, alpha);
  const auto restr = m_b.restrict_to(b_ball);
  std::vector<double> scratch(static_cast<std::size_t>(d.node_count()), -1.0);
  std::vector<std::int64_t> touched;
  m_b.restricted_field(restr, scratch, touched);

  // Lemma 2.12(ii): |b_B| ≤ |B|^{−α/Q}·M_{α,B}(b)(x).
  const auto members = ball_node_indices(d, b_ball);
  double mean = 0.0;
  for (std::int64_t i : members) mean += b[i];
  mean /= static_cast<double>(members.size());
  const double mpow = std::pow(ball_measure(r1, b_ball.radius), -alpha / r1.Q);
  for (std::int64_t i : members) {
    const auto ui = static_cast<std::size_t>(i);
    CHECK(std::abs(mean) <= mpow * scratch[ui] + 1e-10);
    CHECK(lhs.value[ui] ==
          doctest::Approx(scratch[ui]).epsilon(0.02));
  }
}

TEST_CASE("nonlinear commutator is not sublinear (frozen witnesses)") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.01);
  const auto family = build_ball_family(d, 2, 0.05, 3.9, 1.08, false);

  auto violation = [&](const GridFunction& b, const GridFunction& f, const GridFunction& g,
                       double alpha) {
    std::vector<double> sum(f.values());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += g.values()[i];
    const GridFunction fg(d, std::move(sum));
    MaximalConfig cfg{alpha, &family, std::nullopt};
    const SignedField A = nonlinear_commutator_field(b, f, cfg);
    const SignedField B = nonlinear_commutator_field(b, g, cfg);
    const SignedField C = nonlinear_commutator_field(b, fg, cfg);
    double best = -1e300;
    for (std::size_t i = 0; i < C.value.size(); ++i) {
      if (!C.covered[i]) continue;
      best = std::max(best, std::abs(C.value[i]) - std::abs(A.value[i]) - std::abs(B.value[i]));
    }
    return best;
  };

  // Witness 1: affine symbol, adjacent indicators, alpha = 0.
  const GridFunction b1 = sample(d, [](const GroupPoint& x) { return 1.0 + x[0]; });
  const GridFunction f1 = interval_indicator(d, -1.0, 0.0);
  const GridFunction g1 = interval_indicator(d, 0.0, 1.0);
  CHECK(violation(b1, f1, g1, 0.0) > 1e-4);

  // Witness 2: Gaussian symbol, separated indicators, alpha = 0.5.
  const GridFunction b2 = sample(d, [](const GroupPoint& x) {
    return std::exp(-4.0 * x[0] * x[0]);
  });
  const GridFunction f2 = interval_indicator(d, -1.5, -0.5);
  const GridFunction g2 = interval_indicator(d, 0.5, 1.5);
  CHECK(violation(b2, f2, g2, 0.5) > 1e-4);
}

TEST_CASE("operator norm ratio: identity operator") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.01);
  const auto family = build_ball_family(d, 8, 0.05, 1.0, 1.15, true);
  const GridFunction f = sample(d, make_input("bump", r1));
  const RatioCase cases[] = {{"bump", &f, &family}};
  const RatioSweep sweep = operator_norm_ratio(
      [](const GridFunction& g, const BallFamily&) { return g; }, constant_exponent(2.0),
      constant_exponent(2.0), cases);
  CHECK(sweep.max_ratio == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("alpha validation covers [0, Q]") {
  const GroupModel r1 = make_group("euclidean:1");
  const LatticeDomain d(r1, -2.0, 2.0, 0.1);
  const auto family = build_ball_family(d, 4, 0.4, 1.0, 1.15, true);
  const GridFunction f = sample(d, [](const GroupPoint&) { return 1.0; });
  CHECK_NOTHROW(MaximalOperator(f, family, 1.0));  // alpha = Q allowed
  CHECK_THROWS_AS(MaximalOperator(f, family, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(MaximalOperator(f, family, -0.1), std::invalid_argument);
}
