#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "kreinrange/detail/linalg.hpp"
#include "kreinrange/error.hpp"
#include "kreinrange/spectral.hpp"
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

int numeric_rank(const Matrix& m, double cut) {
  const RealVector s = detail::singular_values(m);
  return static_cast<int>((s.array() > cut).count());
}

// Cut points strictly between distinct eigenvalues and beyond both ends.
std::vector<double> cut_points(const SpectralData& sd) {
  std::vector<double> v = sd.values();
  std::vector<double> cuts{v.front() - 1.0, v.back() + 1.0};
  for (std::size_t i = 0; i + 1 < v.size(); ++i) cuts.push_back(0.5 * (v[i] + v[i + 1]));
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

} // namespace

TEST_CASE("spectrum of E1") {
  const SpectralData sd = compute_spectrum(e1());
  REQUIRE(sd.eigs.size() == 1);
  CHECK(sd.eigs[0].value == 0.0);
  CHECK(sd.eigs[0].multiplicity == 2);
  CHECK(sd.zero.chain_count == 1);
  CHECK(sd.zero.kernel_class == SubspaceClass::Neutral);
  CHECK(sd.constants.mu_minus == -kInf);
  CHECK(sd.constants.mu_plus == kInf);
  CHECK(sd.constants.nu_minus == 0.0);
  CHECK(sd.constants.nu_plus == 0.0);
}

TEST_CASE("spectrum of E2") {
  const SpectralData sd = compute_spectrum(e2());
  REQUIRE(sd.eigs.size() == 2);
  CHECK(sd.eigs[0].value == doctest::Approx(-1.0));
  CHECK(sd.eigs[0].sign_type == SignType::MinusType);
  CHECK(sd.eigs[1].value == doctest::Approx(1.0));
  CHECK(sd.eigs[1].sign_type == SignType::PlusType);
  CHECK_FALSE(sd.has_zero());
  CHECK(sd.zero.ker_basis.cols() == 0);
  CHECK(sd.constants.mu_minus == doctest::Approx(-1.0));
  CHECK(sd.constants.mu_plus == doctest::Approx(1.0));
  CHECK(sd.constants.nu_minus == doctest::Approx(-1.0));
  CHECK(sd.constants.nu_plus == doctest::Approx(1.0));
}

TEST_CASE("spectrum of E3") {
  const SpectralData sd = compute_spectrum(e3());
  REQUIRE(sd.eigs.size() == 3);
  CHECK(sd.eigs[0].value == 0.0);
  CHECK(sd.eigs[0].sign_type == SignType::ZeroPoint);
  CHECK(sd.eigs[1].value == doctest::Approx(1.0));
  CHECK(sd.eigs[2].value == doctest::Approx(2.0));
  CHECK(sd.eigs[1].sign_type == SignType::PlusType);
  CHECK(sd.eigs[2].sign_type == SignType::PlusType);
  CHECK(sd.zero.kernel_class == SubspaceClass::Negative);
  CHECK(sd.constants.mu_minus == -kInf);
  CHECK(sd.constants.mu_plus == doctest::Approx(1.0));
  CHECK(sd.constants.nu_minus == 0.0);
  CHECK(sd.constants.nu_plus == doctest::Approx(2.0));
}

TEST_CASE("spectral projectors of the examples") {
  CHECK(max_abs(spectral_projector(e3(), RealSet::closed(0.5, 3)) - diag({1, 1, 0})) < 1e-12);
  CHECK(max_abs(spectral_projector(e3(), RealSet::all()) - Matrix::Identity(3, 3)) < 1e-12);
  CHECK(max_abs(spectral_projector(e2(), RealSet::open(0, kInf)) - diag({1, 0})) < 1e-12);
  CHECK(max_abs(spectral_projector(e1(), RealSet::all()) - Matrix::Identity(2, 2)) < 1e-12);
  CHECK(max_abs(spectral_projector(e1(), RealSet::closed(1, 2))) < 1e-12);
  CHECK(code_of([] { spectral_projector(e2(), RealSet::closed(1, 2)); }) == ErrorCode::BoundaryEigenvalue);
}

TEST_CASE("sign types") {
  CHECK(sign_type(e2(), 1.0) == SignType::PlusType);
  CHECK(sign_type(e2(), -1.0) == SignType::MinusType);
  CHECK(sign_type(e3(), 0.0) == SignType::MinusType);
  CHECK(sign_type(e1(), 0.0) == SignType::Critical);
  CHECK(code_of([] { sign_type(e2(), 0.5); }) == ErrorCode::NotAnEigenvalue);
}

TEST_CASE("near-coincident eigenvalues are refused") {
  const KreinOperator op = build_operator(build_space(diag({1, 1, -1})), diag({1, 1 + 5e-7, 0}));
  CHECK(code_of([&] { compute_spectrum(op); }) == ErrorCode::NumericalBreakdown);
  // within the cluster tolerance they merge
  const KreinOperator merged = build_operator(build_space(diag({1, 1, -1})), diag({1, 1 + 1e-9, 0}));
  const SpectralData sd = compute_spectrum(merged);
  CHECK(sd.eigs.size() == 2);
  CHECK(sd.eigs[1].multiplicity == 2);
}

TEST_CASE("spectrum agrees with a general eigensolver") {
  for (const auto& g : corpus(200, 2)) {
    const SpectralData sd = compute_spectrum(g.op);
    Eigen::ComplexEigenSolver<Matrix> es(g.op.mat());
    const double scale = std::max(1.0, g.op.j_norm());
    std::vector<double> oracle;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Complex l = es.eigenvalues()(i);
      if (std::abs(l) > 1e-6 * scale) {
        CHECK(std::abs(l.imag()) <= 1e-8 * std::abs(l));
        oracle.push_back(l.real());
      }
    }
    std::sort(oracle.begin(), oracle.end());
    const std::vector<double> ours = sd.nonzero_values();
    INFO("dim " << g.dim << " kernel " << to_string(g.kernel) << " range " << to_string(g.range));
    REQUIRE(ours.size() == oracle.size());
    for (std::size_t i = 0; i < ours.size(); ++i) CHECK(std::abs(ours[i] - oracle[i]) <= 1e-8 * std::abs(oracle[i]));
    int total = 0;
    for (const auto& e : sd.eigs) total += e.multiplicity;
    CHECK(total == g.dim);
  }
}

TEST_CASE("sign types of nonzero eigenvalues follow their sign") {
  for (const auto& g : corpus(200, 3)) {
    const SpectralData sd = compute_spectrum(g.op);
    for (const auto& e : sd.eigs) {
      if (e.value == 0.0) continue;
      const SubspaceClass c = classify_subspace(g.op.space(), e.vectors);
      CHECK(c == (e.value > 0 ? SubspaceClass::Positive : SubspaceClass::Negative));
      CHECK(e.sign_type == (e.value > 0 ? SignType::PlusType : SignType::MinusType));
    }
  }
}

TEST_CASE("Jordan structure at zero") {
  for (const auto& g : corpus(200, 4)) {
    const KreinOperator& op = g.op;
    const SpectralData sd = compute_spectrum(op);
    const Matrix& a = op.mat();
    const double an = spectral_norm(a);
    const int r1 = numeric_rank(a, 1e-9 * an);
    const int r2 = numeric_rank(a * a, 1e-9 * an * an);
    CHECK(sd.zero.chain_count == r1 - r2);
    CHECK(sd.zero.ker2_basis.cols() <= 2 * sd.zero.ker_basis.cols());
    CHECK(sd.zero.ker2_basis.cols() - sd.zero.ker_basis.cols() == sd.zero.chain_count);
    if (sd.zero.chain_count > 0) {
      // chain-top eigenvectors A v, v in ker A^2, span a neutral subspace
      const Matrix tops = a * sd.zero.ker2_basis;
      const Matrix gram = tops.adjoint() * op.space().gram() * tops;
      CHECK(max_abs(gram) <= 1e-9 * op.space().gram_norm() * std::max(1.0, tops.squaredNorm()));
    }
  }
}

TEST_CASE("root subspace at zero is orthogonal to the nonzero eigenvectors") {
  for (const auto& g : corpus(200, 5)) {
    const SpectralData sd = compute_spectrum(g.op);
    if (!sd.has_zero()) continue;
    Matrix k2 = sd.zero.ker2_basis;
    for (Eigen::Index c = 0; c < k2.cols(); ++c) k2.col(c).normalize();
    for (const auto& e : sd.eigs) {
      if (e.value == 0.0) continue;
      Matrix v = e.vectors;
      for (Eigen::Index c = 0; c < v.cols(); ++c) v.col(c).normalize();
      CHECK(max_abs(k2.adjoint() * g.op.space().gram() * v) <= 1e-9 * g.op.space().gram_norm());
    }
  }
}

TEST_CASE("shifts inside the spectral gap stay non-negative") {
  int checked = 0;
  for (const auto& g : corpus(200, 6)) {
    const SpectralData sd = compute_spectrum(g.op);
    const SpectralConstants c = sd.constants;
    if ((g.kernel == SubspaceClass::Negative || g.kernel == SubspaceClass::Zero) && std::isfinite(c.mu_plus) &&
        c.mu_plus > 0) {
      for (int i = 0; i < 10; ++i) CHECK(shifted(g.op, c.mu_plus * i / 9.0).is_nonnegative);
      ++checked;
    }
    if ((g.kernel == SubspaceClass::Positive || g.kernel == SubspaceClass::Zero) && std::isfinite(c.mu_minus) &&
        c.mu_minus < 0) {
      for (int i = 0; i < 10; ++i) CHECK(shifted(g.op, c.mu_minus * i / 9.0).is_nonnegative);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("spectral projector algebra") {
  auto rng = detail::make_rng(17);
  for (const auto& g : corpus(120, 7)) {
    const KreinOperator& op = g.op;
    const SpectralData sd = compute_spectrum(op);
    const Eigen::Index n = g.dim;
    const Matrix id = Matrix::Identity(n, n);
    CHECK(max_abs(spectral_projector(sd, op, RealSet::all()) - id) < 1e-9);
    const std::vector<double> cuts = cut_points(sd);
    auto pick = [&] {
      std::size_t i = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<double>(cuts.size())));
      std::size_t j = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<double>(cuts.size())));
      i = std::min(i, cuts.size() - 1);
      j = std::min(j, cuts.size() - 1);
      if (i > j) std::swap(i, j);
      return RealSet::closed(cuts[i], cuts[j]);
    };
    for (int k = 0; k < 4; ++k) {
      const RealSet d1 = pick(), d2 = pick();
      const Matrix p1 = spectral_projector(sd, op, d1);
      const Matrix p2 = spectral_projector(sd, op, d2);
      const Matrix p12 = spectral_projector(sd, op, d1.intersect(d2));
      const double scale = std::max(1.0, max_abs(p1) * max_abs(p2)) * n;
      CHECK(max_abs(p12 - p1 * p2) <= 1e-9 * scale);
      CHECK(max_abs(p1 * p1 - p1) <= 1e-9 * scale);
      CHECK(max_abs(krein_adjoint(op.space(), p1) - p1) <= 1e-9 * scale);
      // E(delta) commutes with A
      CHECK(max_abs(p1 * op.mat() - op.mat() * p1) <= 1e-9 * scale * std::max(1.0, op.j_norm()));
    }
  }
}
