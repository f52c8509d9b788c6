#include "muller/basis.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "json.hpp"

#include "muller/error.hpp"

namespace muller {

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

NuclearFrame::NuclearFrame(std::vector<double> charges, std::vector<Vec3> positions)
    : charges_(std::move(charges)), positions_(std::move(positions)) {
  if (charges_.size() != positions_.size()) {
    throw InvalidArgument("NuclearFrame: charges and positions differ in length");
  }
  for (double z : charges_) {
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw InvalidArgument("NuclearFrame: nuclear charges must be positive and finite");
    }
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(positions_[i], positions_[j]) == 0.0) {
        throw InvalidArgument("NuclearFrame: coincident nuclei");
      }
    }
  }
}

NuclearFrame NuclearFrame::atom(double z, const Vec3& at) { return NuclearFrame({z}, {at}); }

NuclearFrame NuclearFrame::diatomic(double z1, double z2, double r) {
  if (!(r > 0.0)) throw InvalidArgument("NuclearFrame: separation must be positive");
  return NuclearFrame({z1, z2}, {Vec3{0.0, 0.0, 0.0}, Vec3{0.0, 0.0, r}});
}

double NuclearFrame::total_charge() const {
  double z = 0.0;
  for (double c : charges_) z += c;
  return z;
}

double NuclearFrame::repulsion() const {
  double u = 0.0;
  for (std::size_t i = 0; i < charges_.size(); ++i) {
    for (std::size_t j = i + 1; j < charges_.size(); ++j) {
      u += charges_[i] * charges_[j] / distance(positions_[i], positions_[j]);
    }
  }
  return u;
}

Primitive make_primitive(const Vec3& center, double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw InvalidArgument("Primitive: exponent must be positive and finite");
  }
  return {center, exponent, std::pow(2.0 * exponent / std::numbers::pi, 0.75)};
}

BasisSet::BasisSet(std::vector<Primitive> primitives) : primitives_(std::move(primitives)) {
  for (const auto& p : primitives_) {
    if (!(p.exponent > 0.0) || !std::isfinite(p.exponent)) {
      throw InvalidArgument("BasisSet: exponent must be positive and finite");
    }
  }
}

bool BasisSet::single_center() const {
  for (const auto& p : primitives_) {
    if (distance(p.center, primitives_.front().center) != 0.0) return false;
  }
  return true;
}

BasisSet BasisSet::merged(const BasisSet& other) const {
  auto all = primitives_;
  all.insert(all.end(), other.primitives_.begin(), other.primitives_.end());
  return BasisSet(std::move(all));
}

BasisSet build_even_tempered_basis(double z, int n, const Vec3& center) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw InvalidArgument("build_even_tempered_basis: Z must be positive");
  }
  if (n < 1) throw InvalidArgument("build_even_tempered_basis: n must be >= 1");
  std::vector<Primitive> prims;
  prims.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    prims.push_back(make_primitive(center, 8.0 * z * z / (9.0 * std::numbers::pi)));
    return BasisSet(std::move(prims));
  }
  const double tight = kTightExponentPerZ2 * z * z;
  const double ratio = std::pow(tight / kDiffuseExponent, 1.0 / (n - 1));
  for (int k = 0; k < n; ++k) {
    prims.push_back(make_primitive(center, kDiffuseExponent * std::pow(ratio, k)));
  }
  return BasisSet(std::move(prims));
}

BasisSet build_union_basis(const NuclearFrame& frame, int n_per_center) {
  std::vector<Primitive> all;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const auto part =
        build_even_tempered_basis(frame.charges()[i], n_per_center, frame.positions()[i]);
    all.insert(all.end(), part.primitives().begin(), part.primitives().end());
  }
  return BasisSet(std::move(all));
}

void write_basis_jsonl(std::ostream& out, const BasisSet& basis) {
  for (const auto& p : basis.primitives()) {
    nlohmann::json j;
    j["center"] = {p.center[0], p.center[1], p.center[2]};
    j["exponent"] = p.exponent;
    j["norm"] = p.norm;
    out << j.dump() << '\n';
  }
}

BasisSet read_basis_jsonl(std::istream& in) {
  std::vector<Primitive> prims;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto c = j.at("center").get<std::vector<double>>();
    if (c.size() != 3) throw InvalidArgument("basis record: center must have 3 entries");
    prims.push_back(make_primitive({c[0], c[1], c[2]}, j.at("exponent").get<double>()));
  }
  return BasisSet(std::move(prims));
}

}  // namespace muller
