#include "muller/integrals.hpp"

#include <cmath>
#include <numbers>

#include "muller/boys.hpp"
#include "muller/error.hpp"

namespace muller {

namespace {

double squared_distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

Vec3 product_center(const Primitive& a, const Primitive& b) {
  const double p = a.exponent + b.exponent;
  Vec3 c{};
  for (int k = 0; k < 3; ++k) {
    c[k] = (a.exponent * a.center[k] + b.exponent * b.center[k]) / p;
  }
  return c;
}

std::size_t pair_index(std::size_t p, std::size_t q) {
  return p >= q ? p * (p + 1) / 2 + q : q * (q + 1) / 2 + p;
}

}  // namespace

double overlap_integral(const Primitive& a, const Primitive& b) {
  const double p = a.exponent + b.exponent;
  const double mu = a.exponent * b.exponent / p;
  const double r2 = squared_distance(a.center, b.center);
  return a.norm * b.norm * std::pow(std::numbers::pi / p, 1.5) * std::exp(-mu * r2);
}

double kinetic_integral(const Primitive& a, const Primitive& b) {
  const double p = a.exponent + b.exponent;
  const double mu = a.exponent * b.exponent / p;
  const double r2 = squared_distance(a.center, b.center);
  return mu * (3.0 - 2.0 * mu * r2) * overlap_integral(a, b);
}

double point_charge_integral(const Primitive& a, const Primitive& b, const Vec3& c) {
  const double p = a.exponent + b.exponent;
  const double mu = a.exponent * b.exponent / p;
  const double r2 = squared_distance(a.center, b.center);
  const Vec3 pc = product_center(a, b);
  return a.norm * b.norm * 2.0 * std::numbers::pi / p * std::exp(-mu * r2) *
         boys_f0(p * squared_distance(pc, c));
}

double repulsion_integral(const Primitive& a, const Primitive& b, const Primitive& c,
                          const Primitive& d) {
  const double p = a.exponent + b.exponent;
  const double q = c.exponent + d.exponent;
  const double kab = std::exp(-a.exponent * b.exponent / p * squared_distance(a.center, b.center));
  const double kcd = std::exp(-c.exponent * d.exponent / q * squared_distance(c.center, d.center));
  const double rho = p * q / (p + q);
  const double t = rho * squared_distance(product_center(a, b), product_center(c, d));
  const double pref = 2.0 * std::pow(std::numbers::pi, 2.5) / (p * q * std::sqrt(p + q));
  return a.norm * b.norm * c.norm * d.norm * pref * kab * kcd * boys_f0(t);
}

OneElectronMatrices one_electron_matrices(const BasisSet& basis, const NuclearFrame& frame) {
  if (basis.empty()) throw InvalidArgument("one_electron_matrices: empty basis");
  const auto n = static_cast<Eigen::Index>(basis.size());
  OneElectronMatrices m;
  m.overlap.resize(n, n);
  m.kinetic.resize(n, n);
  m.attraction.setZero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& a = basis[static_cast<std::size_t>(i)];
      const auto& b = basis[static_cast<std::size_t>(j)];
      m.overlap(i, j) = m.overlap(j, i) = overlap_integral(a, b);
      m.kinetic(i, j) = m.kinetic(j, i) = kinetic_integral(a, b);
      double v = 0.0;
      for (std::size_t c = 0; c < frame.size(); ++c) {
        v += frame.charges()[c] * point_charge_integral(a, b, frame.positions()[c]);
      }
      m.attraction(i, j) = m.attraction(j, i) = v;
    }
  }
  return m;
}

EriTensor::EriTensor(const BasisSet& basis) : n_(basis.size()) {
  if (basis.empty()) throw InvalidArgument("eri_tensor: empty basis");
  const std::size_t npair = n_ * (n_ + 1) / 2;
  packed_.assign(npair * (npair + 1) / 2, 0.0);
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t q = 0; q <= p; ++q) {
      const std::size_t pq = pair_index(p, q);
      for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t s = 0; s <= r; ++s) {
          const std::size_t rs = pair_index(r, s);
          if (rs > pq) continue;
          packed_[pair_index(pq, rs)] = repulsion_integral(basis[p], basis[q], basis[r], basis[s]);
        }
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(n_);
  coulomb_.resize(n * n, n * n);
  exchange_.resize(n * n, n * n);
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t q = 0; q < n_; ++q) {
      for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t s = 0; s < n_; ++s) {
          const double v = (*this)(p, q, r, s);
          coulomb_(static_cast<Eigen::Index>(p * n_ + q), static_cast<Eigen::Index>(r * n_ + s)) = v;
          exchange_(static_cast<Eigen::Index>(p * n_ + r), static_cast<Eigen::Index>(q * n_ + s)) = v;
        }
      }
    }
  }
}

double EriTensor::operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
  return packed_[pair_index(pair_index(p, q), pair_index(r, s))];
}

namespace {

// Row-major flattening of a symmetric-or-not n x n matrix into n^2 entries,
// matching the (p * n + q) layout of the dense views.
Eigen::VectorXd flatten(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd v(n * n);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) v(p * n + q) = a(p, q);
  }
  return v;
}

Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, Eigen::Index n) {
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) a(p, q) = v(p * n + q);
  }
  return a;
}

}  // namespace

Eigen::MatrixXd EriTensor::coulomb(const Eigen::MatrixXd& density) const {
  const auto n = static_cast<Eigen::Index>(n_);
  if (density.rows() != n || density.cols() != n) {
    throw InvalidArgument("EriTensor::coulomb: dimension mismatch");
  }
  return unflatten(coulomb_ * flatten(density), n);
}

Eigen::MatrixXd EriTensor::exchange(const Eigen::MatrixXd& kernel) const {
  const auto n = static_cast<Eigen::Index>(n_);
  if (kernel.rows() != n || kernel.cols() != n) {
    throw InvalidArgument("EriTensor::exchange: dimension mismatch");
  }
  return unflatten(exchange_ * flatten(kernel), n);
}

EriTensor eri_tensor(const BasisSet& basis) { return EriTensor(basis); }

}  // namespace muller
