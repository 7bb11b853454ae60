#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>

#include "kreinrange/error.hpp"
#include "kreinrange/ranges.hpp"
#include "support.hpp"

using namespace kt;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const KreinError& e) {
    return e.code();
  }
  FAIL("no KreinError thrown");
  return ErrorCode::ParseError;
}

RealSet ray_down(double a) { return RealSet::make(-kInf, a, false, true); }
RealSet ray_up(double a) { return RealSet::make(a, kInf, true, false); }

} // namespace

TEST_CASE("quadratic form values") {
  // E1: x = (t,1) gives 1/(2t)
  for (double t : {0.25, -3.0, 1e-3}) CHECK(w_value(e1(), vec({t, 1})) == doctest::Approx(1 / (2 * t)));
  CHECK(w_value(e2(), vec({1, 0})) == 1.0);
  CHECK(w_value(e3(), vec({0, 0, 1})) == 0.0);
  CHECK(code_of([] { w_value(e1(), vec({1, 0})); }) == ErrorCode::NeutralVector);

  CHECK(wco_value(e1(), vec({0.3, 1})) == 0.0);
  CHECK(wco_value(e1(), vec({Complex(0, 2), Complex(1, 1)})) == 0.0);
  for (auto [a, b] : {std::pair{1.0, 2.0}, {3.0, -1.0}, {0.5, 0.5}})
    CHECK(wco_value(e2(), vec({a, b})) == doctest::Approx((a * a - b * b) / (a * a + b * b)));
  CHECK(wco_value(e3(), vec({1, 0, 0})) == doctest::Approx(2.0));
  CHECK(code_of([] { wco_value(e3(), vec({0, 0, 1})); }) == ErrorCode::KernelVector);
  CHECK(code_of([] { wco_value(e3(), vec({0, 1})); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("closed forms on the examples") {
  CHECK(predict_w(e1()).set == RealSet::all().remove_point(0));
  CHECK(predict_w(e2()).set.approx_equal(ray_down(-1).unite(ray_up(1)), 1e-12));
  CHECK(predict_w(e3()).set.approx_equal(ray_down(0).unite(ray_up(1)), 1e-12));
  CHECK(predict_wco(e1()).set == RealSet::point(0));
  CHECK(predict_wco(e2()).set.approx_equal(RealSet::closed(-1, 1), 1e-12));
  CHECK(predict_wco(e3()).set.approx_equal(RealSet::closed(1, 2), 1e-12));
  CHECK_FALSE(predict_w(e1()).outside_theorem);
  // W and Wco of E3 meet in [1,2]
  CHECK(predict_w(e3()).set.intersect(predict_wco(e3()).set).approx_equal(RealSet::closed(1, 2), 1e-12));
}

TEST_CASE("kernel Positive mirrors kernel Negative") {
  const KreinOperator op = build_operator(build_space(diag({1, -1, -1})), diag({0, -1, -3}));
  CHECK(kernel_class(op) == SubspaceClass::Positive);
  CHECK(predict_w(op).set.approx_equal(ray_down(-1).unite(ray_up(0)), 1e-12));
  CHECK(predict_wco(op).set.approx_equal(RealSet::closed(-3, -1), 1e-12));
}

TEST_CASE("degenerate inputs") {
  const KreinOperator zero = build_operator(build_space(diag({1, -1})), Matrix::Zero(2, 2));
  CHECK(predict_w(zero).set == RealSet::point(0));
  CHECK(predict_w(zero).outside_theorem);
  CHECK(predict_wco(zero).set.is_empty());
  CHECK(code_of([&] { predict_w(zero, true); }) == ErrorCode::ZeroOperator);
  CHECK(code_of([&] { predict_wco(zero, true); }) == ErrorCode::ZeroOperator);

  const KreinOperator hilbert = build_operator(build_space(Matrix::Identity(3, 3)), diag({0, 1, 4}));
  const Prediction w = predict_w(hilbert);
  CHECK(w.outside_theorem);
  CHECK(w.set.approx_equal(RealSet::closed(0, 4), 1e-12));
  CHECK(code_of([&] { predict_w(hilbert, true); }) == ErrorCode::DefiniteSpace);
  // sampling agrees with the policy too
  CHECK(sample_range(hilbert, RangeKind::W, 2000, 1).violations.empty());
  CHECK(sample_range(hilbert, RangeKind::Wco, 2000, 1).violations.empty());
  CHECK(sample_range(zero, RangeKind::W, 500, 1).violations.empty());
  CHECK(sample_range(zero, RangeKind::Wco, 500, 1).samples.empty());
}

TEST_CASE("sampling E1") {
  const auto t0 = std::chrono::steady_clock::now();
  const RangeReport w = sample_range(e1(), RangeKind::W, 10000, 0);
  const RangeReport wco = sample_range(e1(), RangeKind::Wco, 10000, 0);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(w.samples.size() == 10000);
  CHECK(std::none_of(w.samples.begin(), w.samples.end(), [](double v) { return v == 0.0; }));
  CHECK(*std::min_element(w.samples.begin(), w.samples.end()) < 0);
  CHECK(*std::max_element(w.samples.begin(), w.samples.end()) > 0);
  const double big = std::max(std::abs(*std::min_element(w.samples.begin(), w.samples.end())),
                              *std::max_element(w.samples.begin(), w.samples.end()));
  CHECK(big > 1e3);
  REQUIRE(wco.samples.size() == 10000);
  CHECK(std::all_of(wco.samples.begin(), wco.samples.end(), [](double v) { return std::abs(v) <= 1e-12; }));
  CHECK(w.violations.empty());
  CHECK(wco.violations.empty());
  CHECK(secs < 1.0);
}

TEST_CASE("sampling E2 co-range reaches both ends") {
  const RangeReport r = sample_range(e2(), RangeKind::Wco, 10000, 3);
  CHECK(r.violations.empty());
  CHECK(*std::min_element(r.samples.begin(), r.samples.end()) < -1 + 1e-3);
  CHECK(*std::max_element(r.samples.begin(), r.samples.end()) > 1 - 1e-3);
  CHECK(*std::min_element(r.samples.begin(), r.samples.end()) >= -1 - 1e-12);
}

TEST_CASE("sampling is deterministic and catches a wrong prediction") {
  const KreinOperator op = e3();
  const RangeReport a = sample_range(op, RangeKind::W, 3000, 42);
  const RangeReport b = sample_range(op, RangeKind::W, 3000, 42);
  CHECK(a.samples == b.samples);
  CHECK(a.rejected == b.rejected);
  CHECK_FALSE(a.samples == sample_range(op, RangeKind::W, 3000, 43).samples);

  // shrink [mu+, inf) to [1.1, inf): values in [1, 1.1) must be flagged
  const Prediction wrong{ray_down(0).unite(ray_up(1.1)), false};
  const RangeReport bad = sample_range(op, wrong, RangeKind::W, 5000, 1);
  CHECK_FALSE(bad.violations.empty());
  for (const Violation& v : bad.violations) {
    CHECK(v.distance > bad.tolerance);
    CHECK(w_value(op, v.x) == doctest::Approx(v.value));
  }
}

TEST_CASE("endpoint estimates on the examples") {
  CHECK(std::abs(estimate_endpoint(e2(), RangeKind::W, PieceSide::PosMin) - 1.0) <= 1e-6);
  CHECK(std::abs(estimate_endpoint(e2(), RangeKind::W, PieceSide::NegMax) + 1.0) <= 1e-6);
  CHECK(std::abs(estimate_endpoint(e3(), RangeKind::Wco, PieceSide::Max) - 2.0) <= 1e-6);
  CHECK(std::abs(estimate_endpoint(e3(), RangeKind::Wco, PieceSide::Min) - 1.0) <= 1e-6);
  CHECK(std::abs(estimate_endpoint(e3(), RangeKind::W, PieceSide::NegMax)) <= 1e-6);
  CHECK(std::abs(estimate_endpoint(e3(), RangeKind::W, PieceSide::PosMin) - 1.0) <= 1e-6);

  const KreinOperator neg = build_operator(build_space(-Matrix::Identity(2, 2)), diag({-1, -2}));
  CHECK(code_of([&] { estimate_endpoint(neg, RangeKind::W, PieceSide::PosMin); }) == ErrorCode::EmptyPiece);
  const KreinOperator zero = build_operator(build_space(diag({1, -1})), Matrix::Zero(2, 2));
  CHECK(code_of([&] { estimate_endpoint(zero, RangeKind::Wco, PieceSide::Max); }) == ErrorCode::EmptyPiece);
  CHECK_THROWS_AS(estimate_endpoint(e2(), RangeKind::W, PieceSide::Max), std::invalid_argument);
}

TEST_CASE("endpoint tagging") {
  const RealSet w = ray_down(-1).unite(ray_up(2));
  const auto ends = finite_endpoints(w, RangeKind::W);
  REQUIRE(ends.size() == 2);
  CHECK(ends[0].side == PieceSide::NegMax);
  CHECK(ends[0].value == -1.0);
  CHECK(ends[1].side == PieceSide::PosMin);
  CHECK(predicted_endpoint(w, RangeKind::W, PieceSide::PosMin) == 2.0);
  CHECK(finite_endpoints(RealSet::all().remove_point(0), RangeKind::W).empty());
  const auto co = finite_endpoints(RealSet::closed(1, 2), RangeKind::Wco);
  REQUIRE(co.size() == 2);
  CHECK(co[0].side == PieceSide::Min);
  CHECK(co[1].side == PieceSide::Max);
}

TEST_CASE("predictions are sound and sharp on generated operators") {
  for (const auto& g : corpus(124, 9)) {
    INFO("dim " << g.dim << " kernel " << to_string(g.kernel) << " range " << to_string(g.range) << " seed "
                << g.seed);
    const SpectralData sd = compute_spectrum(g.op);
    const Prediction w = predict_w(g.op, sd);
    const Prediction wco = predict_wco(g.op, sd);
    CHECK(sample_range(g.op, w, RangeKind::W, 10000, g.seed).violations.empty());
    CHECK(sample_range(g.op, wco, RangeKind::Wco, 10000, g.seed).violations.empty());
    for (const Endpoint& e : finite_endpoints(w.set, RangeKind::W))
      CHECK(std::abs(estimate_endpoint(g.op, RangeKind::W, e.side, g.seed) - e.value) <= 1e-6);
    for (const Endpoint& e : finite_endpoints(wco.set, RangeKind::Wco))
      CHECK(std::abs(estimate_endpoint(g.op, RangeKind::Wco, e.side, g.seed) - e.value) <= 1e-6);
  }
}

TEST_CASE("structure of the predicted sets") {
  auto rng = detail::make_rng(4);
  for (const auto& g : corpus(200, 10)) {
    const SpectralData sd = compute_spectrum(g.op);
    const RealSet w = predict_w(g.op, sd).set;
    const RealSet wco = predict_wco(g.op, sd).set;
    // every eigenvalue lies in closure(W)
    for (double l : sd.values()) CHECK(w.closure().distance(l) <= 1e-9 * std::max(1.0, std::abs(l)));
    // W on each open half line is one interval, unbounded when non-empty
    for (const RealSet& half : {w.intersect(RealSet::open(0, kInf)), w.intersect(RealSet::open(-kInf, 0))}) {
      CHECK(half.intervals().size() <= 1);
      CHECK(half.punctures().empty());
      if (!half.is_empty()) CHECK(std::isinf(half.intervals()[0].lo) != std::isinf(half.intervals()[0].hi));
    }
    // a gap around 0 in closure(W) needs spectrum bounded away from 0 on one side
    if (!(w.closure() == RealSet::all())) CHECK((sd.constants.mu_plus > 0 || sd.constants.mu_minus < 0));
    // (mu+, nu+) inside W ∩ Wco unless ran A is negative
    if (range_class(g.op) != SubspaceClass::Negative && std::isfinite(sd.constants.mu_plus) &&
        sd.constants.mu_plus < sd.constants.nu_plus) {
      const RealSet both = w.intersect(wco);
      for (int k = 1; k < 10; ++k) {
        const double t = sd.constants.mu_plus + (sd.constants.nu_plus - sd.constants.mu_plus) * k / 10.0;
        CHECK(both.contains(t));
      }
    }
    // congruence invariance
    const Matrix s = detail::random_unitary(rng, g.dim) * std::exp(detail::uniform(rng, -1, 1));
    const KreinOperator moved = congruence_transform(g.op, s);
    const double tol = 1e-8 * std::max(1.0, g.op.j_norm());
    CHECK(predict_w(moved).set.approx_equal(w, tol));
    CHECK(predict_wco(moved).set.approx_equal(wco, tol));
  }
}

TEST_CASE("E1 under a unitary congruence") {
  auto rng = detail::make_rng(12);
  for (int k = 0; k < 10; ++k) {
    const KreinOperator moved = congruence_transform(e1(), detail::random_unitary(rng, 2));
    CHECK(predict_w(moved).set == RealSet::all().remove_point(0));
    CHECK(predict_wco(moved).set == RealSet::point(0));
  }
}
