#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kreinrange/detail/linalg.hpp"
#include "kreinrange/error.hpp"
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

Complex ip(const KreinOperator& op, const Vector& x, const Vector& y) { return inner(op.space(), x, y); }

} // namespace

TEST_CASE("build_operator on the examples") {
  const KreinOperator a1 = e1();
  CHECK(max_abs(a1.psd_witness() - mat({{0, 0}, {0, 1}})) < 1e-15);
  CHECK(a1.rank() == 1);
  CHECK(max_abs(e2().psd_witness() - Matrix::Identity(2, 2)) < 1e-15);
  CHECK(e2().kernel_basis().cols() == 0);
  CHECK(e3().rank() == 2);
  CHECK(e3().kernel_basis().cols() == 1);
  CHECK(std::abs(e3().kernel_basis()(2, 0)) == doctest::Approx(1.0));
}

TEST_CASE("build_operator errors") {
  const GramSpace g = build_space(diag({1, -1}));
  CHECK(code_of([&] { build_operator(g, Matrix::Identity(2, 2)); }) == ErrorCode::NotNonNegative);
  CHECK(code_of([&] { build_operator(g, Matrix::Identity(3, 3)); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { build_operator(g, mat({{0, 1}, {0, 0}})); }) == ErrorCode::NotSelfadjoint);
}

TEST_CASE("Krein adjoint") {
  const GramSpace h = build_space(mat({{0, 1}, {1, 0}}));
  CHECK(max_abs(krein_adjoint(h, mat({{0, 1}, {0, 0}})) - mat({{0, 1}, {0, 0}})) < 1e-15);
  const Matrix m = mat({{1, Complex(2, 1)}, {3, Complex(0, -4)}});
  CHECK(max_abs(krein_adjoint(build_space(Matrix::Identity(2, 2)), m) - m.adjoint()) < 1e-14);
  CHECK(max_abs(krein_adjoint(h, Matrix::Identity(2, 2)) - Matrix::Identity(2, 2)) < 1e-15);
  // [Mx,y] = [x, M^+ y]
  auto rng = detail::make_rng(3);
  const GramSpace g = build_space(diag({2, -1, 1}));
  const Matrix b = detail::complex_gaussian(rng, 3, 3);
  const Vector x = random_vector(rng, 3), y = random_vector(rng, 3);
  CHECK(std::abs(inner(g, b * x, y) - inner(g, x, krein_adjoint(g, b) * y)) < 1e-12);
}

TEST_CASE("shifted operators on E3") {
  const KreinOperator a = e3();
  CHECK(shifted(a, 0.5).is_nonnegative);
  CHECK_FALSE(shifted(a, 1.5).is_nonnegative);
  CHECK(shifted(a, 0.0).is_nonnegative);
  CHECK(max_abs(shifted(a, 0.5).mat - diag({1.5, 0.5, -0.5})) < 1e-15);
  CHECK(shifted(e1(), 0.0).is_nonnegative);
}

TEST_CASE("kernel and range classes of the examples") {
  CHECK(kernel_class(e1()) == SubspaceClass::Neutral);
  CHECK(range_class(e1()) == SubspaceClass::Neutral);
  CHECK(kernel_class(e2()) == SubspaceClass::Zero);
  CHECK(range_class(e2()) == SubspaceClass::Indefinite);
  CHECK(kernel_class(e3()) == SubspaceClass::Negative);
  CHECK(range_class(e3()) == SubspaceClass::Positive);
}

TEST_CASE("generate_case reproduces the requested classes") {
  for (Eigen::Index d = 2; d <= 8; ++d) {
    const auto combos = achievable_classes(d);
    CHECK_FALSE(combos.empty());
    for (const auto& [k, r] : combos) {
      CHECK(is_achievable(d, k, r));
      const int seeds = d <= 4 ? 100 : 10;
      for (int s = 0; s < seeds; ++s) {
        const KreinOperator op = generate_case(d, k, r, static_cast<std::uint64_t>(s));
        CHECK(op.space().is_indefinite());
        INFO("dim " << d << " kernel " << to_string(k) << " range " << to_string(r) << " seed " << s);
        CHECK(kernel_class(op) == k);
        CHECK(range_class(op) == r);
      }
    }
  }
}

TEST_CASE("generate_case examples and rejections") {
  // dim 2, Neutral/Neutral is a copy of E1: nilpotent, rank 1
  const KreinOperator n = generate_case(2, SubspaceClass::Neutral, SubspaceClass::Neutral, 4);
  CHECK(n.rank() == 1);
  CHECK(max_abs(n.mat() * n.mat()) < 1e-9 * (1 + max_abs(n.mat())));
  const KreinOperator p = generate_case(3, SubspaceClass::Negative, SubspaceClass::Positive, 4);
  CHECK(p.rank() + p.kernel_basis().cols() == 3);
  CHECK(kernel_class(p) == SubspaceClass::Negative);
  const KreinOperator z = generate_case(2, SubspaceClass::Zero, SubspaceClass::Indefinite, 4);
  CHECK(z.rank() == 2);
  CHECK(z.space().inertia() == Inertia{1, 1});

  // a positive kernel and a positive range would make the space definite
  CHECK_FALSE(is_achievable(2, SubspaceClass::Positive, SubspaceClass::Positive));
  CHECK(code_of([] { generate_case(2, SubspaceClass::Positive, SubspaceClass::Positive, 0); }) ==
        ErrorCode::Unachievable);
  CHECK(code_of([] { generate_case(2, SubspaceClass::Indefinite, SubspaceClass::Positive, 0); }) ==
        ErrorCode::Unachievable);
  // A = 0 is never part of the sweep
  for (const auto& kr : achievable_classes(4)) CHECK(kr.second != SubspaceClass::Zero);
  // kernel Positive with range Negative fits in dimension 2: G = diag(1,-1), A = diag(0,-1)
  CHECK(is_achievable(2, SubspaceClass::Positive, SubspaceClass::Negative));
  const KreinOperator pn = build_operator(build_space(diag({1, -1})), diag({0, -1}));
  CHECK(kernel_class(pn) == SubspaceClass::Positive);
  CHECK(range_class(pn) == SubspaceClass::Negative);
}

TEST_CASE("generation is deterministic in the seed") {
  const auto a = generate_case(5, SubspaceClass::Neutral, SubspaceClass::Indefinite, 77);
  const auto b = generate_case(5, SubspaceClass::Neutral, SubspaceClass::Indefinite, 77);
  const auto c = generate_case(5, SubspaceClass::Neutral, SubspaceClass::Indefinite, 78);
  CHECK(a.mat() == b.mat());
  CHECK(a.space().gram() == b.space().gram());
  CHECK_FALSE(a.mat() == c.mat());
}

TEST_CASE("congruence transforms") {
  const KreinOperator a = e2();
  const KreinOperator same = congruence_transform(a, Matrix::Identity(2, 2));
  CHECK(max_abs(same.mat() - a.mat()) < 1e-15);
  CHECK(max_abs(same.space().gram() - a.space().gram()) < 1e-15);

  const KreinOperator t = congruence_transform(a, diag({2, 1}));
  CHECK(max_abs(t.space().gram() - diag({4, -1})) < 1e-14);
  CHECK(max_abs(t.mat() - diag({1, -1})) < 1e-14);

  CHECK(code_of([&] { congruence_transform(a, diag({1, 1e-9})); }) == ErrorCode::IllConditioned);

  auto rng = detail::make_rng(8);
  for (const auto& g : corpus(40, 3, 2, 6)) {
    const Matrix s = detail::random_unitary(rng, g.dim) * (0.5 + detail::uniform(rng, 0, 1));
    const KreinOperator m = congruence_transform(g.op, s);
    CHECK(kernel_class(m) == g.kernel);
    CHECK(range_class(m) == g.range);
    CHECK(m.rank() == g.op.rank());
  }
}

TEST_CASE("semi-inner product inequalities on generated operators") {
  auto rng = detail::make_rng(99);
  for (const auto& g : corpus(150, 1)) {
    const KreinOperator& op = g.op;
    const Matrix& a = op.mat();
    const Matrix& j = op.space().fund_sym();
    const double an = op.j_norm();
    const Matrix a2 = a * a;
    const double a2n = op.space().j_operator_norm(a2);
    const double scale = op.psd_norm();
    for (int k = 0; k < 20; ++k) {
      const Vector x = random_vector(rng, g.dim), y = random_vector(rng, g.dim);
      const double axx = ip(op, a * x, x).real();
      const double ayy = ip(op, a * y, y).real();
      const double tol = 1e-9 * scale * x.squaredNorm() * y.squaredNorm() * (1 + an);
      // Cauchy-Schwarz for [A.,.]
      CHECK(std::norm(ip(op, a * x, y)) <= axx * ayy + tol * scale);
      // |Ax|_J^4 <= [Ax,x] [AJAx, JAx]
      const Vector ax = a * x;
      const double axj = op.space().j_norm(ax);
      const Vector jax = j * ax;
      const double rhs = axx * ip(op, a * jax, jax).real();
      CHECK(std::pow(axj, 4) <= rhs * (1 + 1e-8) + 1e-12 * std::pow(an * x.norm(), 4));
      // [A^3 x, x] <= |A^2|_J [Ax,x]
      CHECK(ip(op, a * a2 * x, x).real() <= a2n * axx * (1 + 1e-9) + 1e-10 * a2n * scale * x.squaredNorm());
    }
    // kernel vectors give [Ax,x] = 0, and [Ax,x] = 0 forces Ax = 0
    for (Eigen::Index c = 0; c < op.kernel_basis().cols(); ++c) {
      const Vector z = op.kernel_basis().col(c);
      CHECK(std::abs(ip(op, a * z, z).real()) <= 1e-12 * scale);
      CHECK((a * z).norm() <= 1e-9 * (1 + an));
    }
    for (int k = 0; k < 10; ++k) {
      const Vector x = random_vector(rng, g.dim);
      const double axx = ip(op, a * x, x).real();
      // |Ax|_J^2 <= |A|_J [Ax,x]-type control: small [Ax,x] means small Ax
      CHECK(std::pow(op.space().j_norm(a * x), 2) <= an * axx * (1 + 1e-8) + 1e-10 * an * an * x.squaredNorm());
    }
  }
}
