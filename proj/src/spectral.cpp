#include "kreinrange/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kreinrange/detail/linalg.hpp"
#include "kreinrange/error.hpp"

namespace kreinrange {

std::string_view to_string(SignType t) {
  switch (t) {
    case SignType::PlusType: return "PlusType";
    case SignType::MinusType: return "MinusType";
    case SignType::ZeroPoint: return "ZeroPoint";
    case SignType::Critical: return "Critical";
  }
  return "?";
}

std::vector<double> SpectralData::nonzero_values() const {
  std::vector<double> out;
  for (const auto& e : eigs)
    if (e.sign_type != SignType::ZeroPoint) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.value);
  return out;
}

std::vector<double> SpectralData::values() const {
  std::vector<double> out;
  for (const auto& e : eigs) out.push_back(e.value);
  return out;
}

namespace {

SignType sign_of(SubspaceClass c) {
  if (c == SubspaceClass::Positive) return SignType::PlusType;
  if (c == SubspaceClass::Negative) return SignType::MinusType;
  return SignType::Critical;
}

[[noreturn]] void breakdown(double a, double b, double tol) {
  std::ostringstream msg;
  msg << "eigenvalues " << a << " and " << b << " are " << std::abs(a - b)
      << " apart, inside the ambiguous band (" << tol << ", " << 10 * tol << "]";
  throw KreinError(ErrorCode::NumericalBreakdown, msg.str());
}

} // namespace

SpectralData compute_spectrum(const KreinOperator& op) {
  const GramSpace& space = op.space();
  const Eigen::Index n = op.dim();
  const Matrix& c = op.range_factor();
  const Eigen::Index r = c.rows();
  const double tol = op.cluster_tolerance();

  SpectralData sd;
  sd.cluster_tolerance = tol;
  sd.zero.ker_basis = op.kernel_basis();

  std::vector<Eigen::Index> zero_cols;
  Matrix u;
  RealVector lam;
  if (r > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(c * space.gram_inverse() * c.adjoint()));
    lam = es.eigenvalues();
    u = es.eigenvectors();
  }

  // Clusters of nonzero eigenvalues, in ascending order.
  std::vector<std::vector<Eigen::Index>> clusters;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double v = lam(i);
    if (std::abs(v) <= tol) {
      zero_cols.push_back(i);
      continue;
    }
    if (std::abs(v) <= 10 * tol) breakdown(v, 0.0, tol);
    if (!clusters.empty()) {
      const double prev = lam(clusters.back().back());
      const double gap = v - prev;
      if (std::abs(prev) > tol && gap <= tol) {
        clusters.back().push_back(i);
        continue;
      }
      if (std::abs(prev) > tol && gap <= 10 * tol) breakdown(prev, v, tol);
    }
    clusters.push_back({i});
  }

  for (const auto& cl : clusters) {
    Eigenvalue e;
    e.multiplicity = static_cast<int>(cl.size());
    e.vectors.resize(n, e.multiplicity);
    double sum = 0.0;
    for (std::size_t k = 0; k < cl.size(); ++k) {
      const double v = lam(cl[k]);
      sum += v;
      e.vectors.col(static_cast<Eigen::Index>(k)) = space.gram_inverse() * c.adjoint() * u.col(cl[k]) / v;
    }
    e.value = sum / static_cast<double>(cl.size());
    e.sign_type = sign_of(classify_subspace(space, e.vectors));
    (e.value > 0 ? sd.zero.s0_plus_dim : sd.zero.s0_minus_dim) += e.multiplicity;
    sd.eigs.push_back(std::move(e));
  }

  // ker A^2 = ker A + C^+ ker M, with C^+ = C* (C C*)^{-1}.
  sd.zero.chain_count = static_cast<int>(zero_cols.size());
  Matrix ker2(n, sd.zero.ker_basis.cols() + sd.zero.chain_count);
  ker2.leftCols(sd.zero.ker_basis.cols()) = sd.zero.ker_basis;
  if (!zero_cols.empty()) {
    const Matrix cc = c * c.adjoint();
    Eigen::LDLT<Matrix> ldlt(cc);
    for (std::size_t k = 0; k < zero_cols.size(); ++k)
      ker2.col(sd.zero.ker_basis.cols() + static_cast<Eigen::Index>(k)) =
          c.adjoint() * ldlt.solve(u.col(zero_cols[k]));
  }
  sd.zero.ker2_basis = ker2;
  sd.zero.s0_dim = static_cast<int>(ker2.cols());
  sd.zero.kernel_class = classify_subspace(space, sd.zero.ker_basis);

  if (sd.zero.s0_dim > 0) {
    Eigenvalue z;
    z.value = 0.0;
    z.multiplicity = sd.zero.s0_dim;
    z.sign_type = SignType::ZeroPoint;
    z.vectors = ker2;
    auto at = std::find_if(sd.eigs.begin(), sd.eigs.end(), [](const Eigenvalue& e) { return e.value > 0; });
    sd.eigs.insert(at, std::move(z));
  }

  sd.constants = spectral_constants(sd);
  return sd;
}

SpectralConstants spectral_constants(const SpectralData& sd) {
  SpectralConstants k{-kInf, kInf, 0.0, 0.0};
  bool any_neg = false, any_pos = false;
  for (const auto& e : sd.eigs) {
    if (e.sign_type == SignType::ZeroPoint) continue;
    if (e.value < 0) {
      k.mu_minus = any_neg ? std::max(k.mu_minus, e.value) : e.value;
      k.nu_minus = any_neg ? std::min(k.nu_minus, e.value) : e.value;
      any_neg = true;
    } else {
      k.mu_plus = any_pos ? std::min(k.mu_plus, e.value) : e.value;
      k.nu_plus = any_pos ? std::max(k.nu_plus, e.value) : e.value;
      any_pos = true;
    }
  }
  return k;
}

Matrix spectral_projector(const KreinOperator& op, const RealSet& delta) {
  return spectral_projector(compute_spectrum(op), op, delta);
}

Matrix spectral_projector(const SpectralData& sd, const KreinOperator& op, const RealSet& delta) {
  const Eigen::Index n = op.dim();
  const Matrix& g = op.space().gram();
  const auto boundary = delta.boundary_points();
  for (const auto& e : sd.eigs) {
    for (double b : boundary) {
      if (std::abs(e.value - b) <= sd.cluster_tolerance) {
        std::ostringstream msg;
        msg << "eigenvalue " << e.value << " lies on the boundary point " << b;
        throw KreinError(ErrorCode::BoundaryEigenvalue, msg.str());
      }
    }
  }

  Matrix nonzero_total = Matrix::Zero(n, n);
  Matrix out = Matrix::Zero(n, n);
  bool zero_in = false;
  for (const auto& e : sd.eigs) {
    if (e.sign_type == SignType::ZeroPoint) {
      zero_in = delta.contains(0.0);
      continue;
    }
    const Matrix& v = e.vectors;
    const Matrix k = hermitian_part(v.adjoint() * g * v);
    const Matrix proj = v * k.ldlt().solve(v.adjoint() * g);
    nonzero_total += proj;
    if (delta.contains(e.value)) out += proj;
  }
  if (zero_in) out += Matrix::Identity(n, n) - nonzero_total;
  return out;
}

SignType sign_type(const KreinOperator& op, double lambda) {
  const SpectralData sd = compute_spectrum(op);
  for (const auto& e : sd.eigs) {
    if (std::abs(e.value - lambda) > sd.cluster_tolerance) continue;
    if (e.sign_type != SignType::ZeroPoint) return e.sign_type;
    return sign_of(classify_subspace(op.space(), e.vectors));
  }
  std::ostringstream msg;
  msg << lambda << " is not an eigenvalue";
  throw KreinError(ErrorCode::NotAnEigenvalue, msg.str());
}

} // namespace kreinrange
