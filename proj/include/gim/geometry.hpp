#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "gim/errors.hpp"

namespace gim {

using Tangent = Eigen::VectorXd;
using Rng = std::mt19937_64;

// Geodesic angles within this margin of pi are treated as non-unique.
inline constexpr double kGeodesicMargin = 1e-8;
// Tolerance on unit norm / symmetry of stored points.
inline constexpr double kPointTolerance = 1e-12;
// Eigenvalues below this are reported as loss of positive definiteness.
inline constexpr double kSpdEigenFloor = 1e-14;

enum class ManifoldTag { euclidean, sphere, rotations3d, spd };

// Which backend a point lives on. `size` is the dimension for euclidean,
// the ambient dimension for sphere (points on S^{size-1}), 3 for
// rotations3d and the matrix size for spd.
class ManifoldKind {
public:
  ManifoldKind() = default;

  static ManifoldKind euclidean(int dim);
  static ManifoldKind sphere(int ambient_dim);
  static ManifoldKind rotations3d();
  static ManifoldKind spd(int n);
  // Parses the tags used by the curve file ("euclidean", "sphere",
  // "rotations3d", "spd").
  static ManifoldKind parse(std::string_view tag, int dim_or_size);

  ManifoldTag tag() const noexcept { return tag_; }
  int size() const noexcept { return size_; }
  // Number of stored coordinates per point.
  int coord_count() const noexcept;
  std::string tag_name() const;
  std::string to_string() const;

  friend bool operator==(const ManifoldKind&, const ManifoldKind&) = default;

private:
  ManifoldKind(ManifoldTag tag, int size) : tag_(tag), size_(size) {}

  ManifoldTag tag_ = ManifoldTag::euclidean;
  int size_ = 1;
};

// A point on one of the backends. Coordinates: euclidean d entries; sphere d
// unit-norm entries; rotations3d a unit quaternion (w,x,y,z); spd the n*n
// entries of the matrix in row-major order.
class ManifoldPoint {
public:
  // Origin of R^1; placeholder for pre-sized containers.
  ManifoldPoint() : coords_(Eigen::VectorXd::Zero(1)) {}

  // Validates without modifying the coordinates (throws InvalidPoint).
  static ManifoldPoint from_coords(ManifoldKind kind, Eigen::VectorXd coords);
  // Projects onto the manifold: re-normalizes unit vectors and symmetrizes
  // matrices. Used for results of geometric operations.
  static ManifoldPoint projected(ManifoldKind kind, Eigen::VectorXd coords);

  const ManifoldKind& kind() const noexcept { return kind_; }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  // spd only.
  Eigen::MatrixXd matrix() const;

private:
  ManifoldPoint(ManifoldKind kind, Eigen::VectorXd coords)
      : kind_(kind), coords_(std::move(coords)) {}

  ManifoldKind kind_;
  Eigen::VectorXd coords_;
};

// Throws InvalidPoint describing the first violated invariant.
void validate(const ManifoldKind& kind, const Eigen::VectorXd& coords);

double distance(const ManifoldPoint& p, const ManifoldPoint& q);

// Weighted geodesic average M_t(p0, p1). For t outside [0, 1] the geodesic is
// extended past the endpoint; the extended arc must stay below pi on the
// sphere and rotation backends.
ManifoldPoint geodesic_point(const ManifoldPoint& p0, const ManifoldPoint& p1, double t);

Tangent log_map(const ManifoldPoint& base, const ManifoldPoint& q);
ManifoldPoint exp_map(const ManifoldPoint& base, const Tangent& v);
// Riemannian norm of a tangent vector at `base`; for every backend
// tangent_norm(p, log_map(p, q)) == distance(p, q).
double tangent_norm(const ManifoldPoint& base, const Tangent& v);

ManifoldPoint random_point(const ManifoldKind& kind, Rng& rng);
// Uniformly oriented tangent vector of unit Riemannian norm.
Tangent random_unit_tangent(const ManifoldPoint& base, Rng& rng);

}  // namespace gim
