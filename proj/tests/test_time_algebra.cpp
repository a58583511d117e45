#include "dynflow/time_algebra.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <random>

using namespace dynflow;
using testutil::pwl;
using testutil::rat;
using testutil::sf;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("5") == Rational(5));
  CHECK(rational_to_string(Rational(3, 4)) == "3/4");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK_THROWS(parse_rational("1.5"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK(rational_ceil(Rational(7, 2)) == 4);
  CHECK(rational_ceil(Rational(-7, 2)) == -3);
  CHECK(rational_floor(Rational(-7, 2)) == -4);
}

TEST_CASE("step function canonical form") {
  // Adjacent equal cells merge; equality is representative-level.
  auto f = StepFunction::from_cells({rat("0"), rat("1"), rat("2"), rat("3")},
                                    {rat("2"), rat("2"), rat("0")});
  CHECK(f.breakpoints == std::vector<Rational>{rat("0"), rat("2"), rat("3")});
  CHECK(f == sf({"0", "2", "3"}, {"2", "0"}));
  CHECK(StepFunction::box(rat("2"), rat("0"), rat("1"), rat("3")) == sf({"0", "1", "3"}, {"2", "0"}));
  CHECK(f.value_at(rat("1/2")) == 2);
  CHECK(f.value_at(rat("2")) == 0);
  CHECK(f.value_at(rat("3")) == 0);
  CHECK(*f.support_end() == 2);
  CHECK(!StepFunction::zero(rat("3")).support_end());
}

TEST_CASE("integrate step functions") {
  const auto h = StepFunction::box(rat("2"), rat("0"), rat("1"), rat("2"));
  CHECK(integrate(h, Interval::closed(rat("0"), rat("2"))) == 2);
  CHECK(integrate(StepFunction::zero(rat("2"))) == 0);
  CHECK_THROWS(integrate(h, Interval::closed(rat("0"), rat("3"))));
}

TEST_CASE("integrate piecewise linear (queue profile)") {
  // q = t on [0,1], 2-t on [1,2], 0 after; trapezoid areas 1/2 + 1/2.
  const auto q = pwl({"0", "1", "2", "4"}, {"0", "1", "0", "0"});
  CHECK(integrate(q, Interval::closed(rat("0"), rat("2"))) == 1);
  CHECK(integrate(q, Interval::closed(rat("0"), rat("4"))) == 1);
  CHECK(integrate(q, Interval::closed(rat("1/2"), rat("1"))) == rat("3/8"));
}

TEST_CASE("pointwise combine") {
  const Rational h(4);
  const auto a = StepFunction::box(rat("1"), rat("0"), rat("1"), h);
  const auto b = StepFunction::box(rat("2"), rat("0"), rat("2"), h);
  CHECK(pw_min(a, b) == a);
  CHECK(pw_sub(a, a).is_zero());
  // 1 on [1,3] plus 2 on (2,3] -> 1 on [1,2), 3 on [2,3).
  const auto e1out = StepFunction::box(rat("1"), rat("1"), rat("3"), h);
  const auto e2out = StepFunction::box(rat("2"), rat("2"), rat("3"), h);
  CHECK(pw_add(e1out, e2out) == sf({"0", "1", "2", "3", "4"}, {"0", "1", "3", "0"}));
  CHECK(pw_le(a, b));
  CHECK(!pw_le(b, a));
}

TEST_CASE("restriction") {
  const Rational h(4);
  const auto f = StepFunction::box(rat("2"), rat("0"), rat("2"), h);
  CHECK(restrict_to(f, Interval::closed(rat("0"), rat("1"))) ==
        StepFunction::box(rat("2"), rat("0"), rat("1"), h));
  CHECK(restrict_to(f, std::vector<Interval>{}).is_zero());
  const auto u3 = pw_add(StepFunction::box(rat("1"), rat("1"), rat("3"), h),
                         StepFunction::box(rat("2"), rat("2"), rat("3"), h));
  CHECK(restrict_to(u3, Interval::open_closed(rat("2"), rat("3"))) ==
        StepFunction::box(rat("3"), rat("2"), rat("3"), h));
}

TEST_CASE("compose") {
  const Rational h(4);
  const auto id = PiecewiseLinear::identity(h);
  // Arrival map 1+2t on [0,1], 3 after, on the extended horizon.
  const auto f = pwl({"0", "1", "4"}, {"1", "3", "3"});
  CHECK(compose(id, f) == f);
  CHECK(compose(f, id) == f);
  // (t+1) o (t+1) = t+2 clamped at t_f.
  const auto shift = pwl({"0", "3", "4"}, {"1", "4", "4"});
  CHECK(compose(shift, shift) == pwl({"0", "2", "4"}, {"2", "4", "4"}));
}

TEST_CASE("preimage") {
  const Rational h(2);
  const auto id = PiecewiseLinear::identity(h);
  CHECK(preimage(id, Interval::closed(rat("0"), rat("1"))) ==
        std::vector<Interval>{Interval::closed(rat("0"), rat("1"))});
  // Arrival map of Fig-style example: 1+2t on [0,1], 3 on [1,2].
  const auto A = pwl({"0", "1", "2"}, {"1", "3", "3"});
  CHECK(preimage(A, Interval::point(rat("3"))) ==
        std::vector<Interval>{Interval::closed(rat("1"), rat("2"))});
  CHECK(preimage(pwl({"0", "2"}, {"1", "3"}), Interval::closed(rat("0"), rat("1/2"))).empty());
  // Half-open targets.
  CHECK(preimage(A, Interval::closed_open(rat("0"), rat("3"))) ==
        std::vector<Interval>{Interval::closed_open(rat("0"), rat("1"))});
  CHECK(preimage(A, Interval::open_closed(rat("1"), rat("3"))) ==
        std::vector<Interval>{Interval::open_closed(rat("0"), rat("2"))});
}

TEST_CASE("plateaus") {
  const auto A = pwl({"0", "1", "2"}, {"1", "3", "3"});
  CHECK(plateaus(A) == std::vector<Interval>{Interval::closed(rat("1"), rat("2"))});
  CHECK(plateaus(PiecewiseLinear::identity(rat("2"))).empty());
}

TEST_CASE("pushforward density and atoms") {
  const Rational h(4);
  // h = 2 on [0,1] through A = 1+2t on [0,1]: density 2/2 = 1 on [1,3].
  const auto A = pwl({"0", "1", "4"}, {"1", "3", "3"});
  const auto m = pushforward(StepFunction::box(rat("2"), rat("0"), rat("1"), h), A);
  CHECK(m.density == StepFunction::box(rat("1"), rat("1"), rat("3"), h));
  CHECK(m.atoms.empty());
  // Mass on the plateau becomes an atom at (3, 2).
  const auto m2 = pushforward(StepFunction::box(rat("2"), rat("1"), rat("2"), h), A);
  CHECK(m2.density.is_zero());
  REQUIRE(m2.atoms.size() == 1);
  CHECK(m2.atoms[0] == std::pair<Rational, Rational>(rat("3"), rat("2")));
  // Zero function pushes to the zero measure.
  CHECK(pushforward(StepFunction::zero(h), A).is_zero());
}

TEST_CASE("absolutely continuous part") {
  const Rational h(4);
  TimeMeasure m = TimeMeasure::from_density(StepFunction::box(rat("1"), rat("1"), rat("3"), h));
  auto r = absolutely_continuous_part(m);
  REQUIRE(std::holds_alternative<StepFunction>(r));
  CHECK(std::get<StepFunction>(r) == m.density);
  m.atoms.emplace_back(rat("3"), rat("2"));
  auto r2 = absolutely_continuous_part(m);
  REQUIRE(std::holds_alternative<HasAtoms>(r2));
  CHECK(std::get<HasAtoms>(r2).locations == std::vector<Rational>{rat("3")});
}

TEST_CASE("refine") {
  const auto a = StepFunction::box(rat("1"), rat("0"), rat("1"), rat("3"));
  const auto b = StepFunction::box(rat("1"), rat("0"), rat("2"), rat("3"));
  CHECK(refine({&a, &b}, {}) == std::vector<Rational>{rat("0"), rat("1"), rat("2"), rat("3")});
  CHECK(refine({}, {}, rat("3")) == std::vector<Rational>{rat("0"), rat("3")});
}

TEST_CASE("measure arithmetic and setwise order") {
  const Rational h(4);
  TimeMeasure a = TimeMeasure::from_density(StepFunction::box(rat("1"), rat("0"), rat("2"), h));
  a.atoms.emplace_back(rat("3"), rat("2"));
  TimeMeasure b = measure_add(a, a);
  CHECK(b.density == StepFunction::box(rat("2"), rat("0"), rat("2"), h));
  CHECK(b.atoms == std::vector<std::pair<Rational, Rational>>{{rat("3"), rat("4")}});
  CHECK(measure_sub(b, a) == a);
  CHECK(measure_le_setwise(a, b));
  CHECK(!measure_le_setwise(b, a));
  CHECK(a.measure_of(Interval::closed(rat("0"), rat("3"))) == 4);
  CHECK(a.measure_of(Interval::closed_open(rat("0"), rat("3"))) == 2);
}

TEST_CASE("mass conservation and cumulative identity (random)") {
  std::mt19937 rng(12345);
  const Rational h(4);
  for (int it = 0; it < 200; ++it) {
    const auto f = testutil::rnd_step(rng, h);
    const auto A = testutil::rnd_monotone(rng, h);
    const auto m = pushforward(f, A);
    // Total mass of the image measure equals the integral of the density.
    CHECK(m.total() == integrate(f));
    // Cumulative identity at a random time t.
    const Rational t = testutil::rnd_rat(rng) * h / 6;
    const auto pre = preimage(A, Interval::closed(rat("0"), t));
    Rational lhs = m.measure_of(Interval::closed(rat("0"), t));
    Rational rhs(0);
    for (const auto& iv : pre) rhs += integrate(f, iv);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("compose associativity (random)") {
  std::mt19937 rng(777);
  const Rational h(4);
  for (int it = 0; it < 120; ++it) {
    const auto f = testutil::rnd_monotone(rng, h);
    const auto g = testutil::rnd_monotone(rng, h);
    const auto k = testutil::rnd_monotone(rng, h);
    CHECK(compose(compose(f, g), k) == compose(f, compose(g, k)));
  }
}

TEST_CASE("pushforward monotonicity (random)") {
  std::mt19937 rng(999);
  const Rational h(4);
  for (int it = 0; it < 150; ++it) {
    const auto f = testutil::rnd_step(rng, h);
    const auto extra = testutil::rnd_step(rng, h);
    const auto g = pw_add(f, extra);  // f <= g pointwise
    const auto A = testutil::rnd_monotone(rng, h);
    const auto mf = pushforward(f, A);
    const auto mg = pushforward(g, A);
    CHECK(measure_le_setwise(mf, mg));
    const Rational t1 = testutil::rnd_rat(rng) * h / 6;
    const Rational t2 = t1 + testutil::rnd_rat(rng) * (h - t1) / 6;
    const auto iv = Interval::closed(t1, t2);
    CHECK(mf.measure_of(iv) <= mg.measure_of(iv));
  }
}

TEST_CASE("canonical idempotence of operation outputs (random)") {
  std::mt19937 rng(4242);
  const Rational h(4);
  for (int it = 0; it < 100; ++it) {
    const auto f = testutil::rnd_step(rng, h);
    const auto g = testutil::rnd_step(rng, h);
    const auto s = pw_add(f, g);
    CHECK(s == StepFunction::from_cells(s.breakpoints, s.values));
    const auto r = restrict_to(f, Interval::closed(rat("1"), rat("3")));
    CHECK(r == StepFunction::from_cells(r.breakpoints, r.values));
    const auto m = pushforward(f, testutil::rnd_monotone(rng, h));
    CHECK(m.density == StepFunction::from_cells(m.density.breakpoints, m.density.values));
  }
}
