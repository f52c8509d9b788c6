#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace muller {

using Vec3 = std::array<double, 3>;

double distance(const Vec3& a, const Vec3& b);

/// Fixed point nuclei: charges Z_i (units of e) at positions R_i (bohr).
///
/// Charges must be strictly positive and positions pairwise distinct. The
/// "free" frame used for the E_inf lower bound is represented by an empty
/// frame rather than zero charges.
class NuclearFrame {
 public:
  NuclearFrame() = default;
  NuclearFrame(std::vector<double> charges, std::vector<Vec3> positions);

  static NuclearFrame atom(double z, const Vec3& at = {0.0, 0.0, 0.0});
  /// Two nuclei on the z axis, Z1 at the origin and Z2 at (0, 0, R).
  static NuclearFrame diatomic(double z1, double z2, double r);

  std::size_t size() const { return charges_.size(); }
  bool empty() const { return charges_.empty(); }
  const std::vector<double>& charges() const { return charges_; }
  const std::vector<Vec3>& positions() const { return positions_; }

  double total_charge() const;
  /// U_R = sum_{i<j} Z_i Z_j / |R_i - R_j|.
  double repulsion() const;

 private:
  std::vector<double> charges_;
  std::vector<Vec3> positions_;
};

/// Normalized s-type Gaussian N exp(-alpha |r - center|^2),
/// N = (2 alpha / pi)^{3/4}.
struct Primitive {
  Vec3 center{};
  double exponent = 0.0;
  double norm = 0.0;
};

Primitive make_primitive(const Vec3& center, double exponent);

class BasisSet {
 public:
  BasisSet() = default;
  explicit BasisSet(std::vector<Primitive> primitives);

  std::size_t size() const { return primitives_.size(); }
  bool empty() const { return primitives_.empty(); }
  const Primitive& operator[](std::size_t i) const { return primitives_[i]; }
  const std::vector<Primitive>& primitives() const { return primitives_; }

  /// True when every primitive sits on the same point.
  bool single_center() const;

  /// Concatenation, this basis first.
  BasisSet merged(const BasisSet& other) const;

 private:
  std::vector<Primitive> primitives_;
};

// Even-tempered rule: alpha_k = a b^k, k = 0..n-1, with the diffuse end fixed
// at a = 0.02 and the tight end at 30 Z^2, so b = (1500 Z^2)^{1/(n-1)}.
// A single primitive (n = 1) takes the optimal hydrogenic exponent
// 8 Z^2 / (9 pi).
inline constexpr double kDiffuseExponent = 0.02;
inline constexpr double kTightExponentPerZ2 = 30.0;

BasisSet build_even_tempered_basis(double z, int n, const Vec3& center = {0.0, 0.0, 0.0});

/// Even-tempered sets on every nucleus of the frame, in frame order.
BasisSet build_union_basis(const NuclearFrame& frame, int n_per_center);

/// JSON lines: {"center":[x,y,z],"exponent":a,"norm":N} per primitive.
void write_basis_jsonl(std::ostream& out, const BasisSet& basis);
BasisSet read_basis_jsonl(std::istream& in);

}  // namespace muller
