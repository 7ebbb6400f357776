#include "gim/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <sstream>

namespace gim {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPi = std::numbers::pi;

void require_same_kind(const ManifoldPoint& p, const ManifoldPoint& q) {
  if (!(p.kind() == q.kind())) {
    throw KindMismatch("points live on different manifolds: " + p.kind().to_string() +
                       " vs " + q.kind().to_string());
  }
}

void require_tangent_size(const ManifoldPoint& base, const Tangent& v) {
  if (v.size() != base.kind().coord_count()) {
    throw KindMismatch("tangent vector has " + std::to_string(v.size()) +
                       " entries, expected " + std::to_string(base.kind().coord_count()));
  }
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Angle between unit vectors, accurate for nearly equal and nearly opposite
// inputs alike.
double unit_angle(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return 2.0 * std::atan2((p - q).norm(), (p + q).norm());
}

// Unit tangent at p pointing toward q (zero when q == p).
Eigen::VectorXd unit_direction(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  Eigen::VectorXd diff = q - p;
  Eigen::VectorXd w = diff - diff.dot(p) * p;
  const double n = w.norm();
  if (n == 0.0) return Eigen::VectorXd::Zero(p.size());
  return w / n;
}

void check_arc(double theta, double t, double limit_angle, const char* what) {
  const double limit = kPi - kGeodesicMargin;
  if (limit_angle > limit) {
    throw AntipodalPoints(std::string(what) + " are antipodal (angle " + fmt_double(limit_angle) +
                          "); the geodesic is not unique");
  }
  if (t < 0.0 || t > 1.0) {
    if (std::abs(t) * theta >= limit || std::abs(1.0 - t) * theta >= limit) {
      throw ExtrapolationOutOfRange("extrapolation t = " + fmt_double(t) + " over angle " +
                                    fmt_double(theta) + " leaves the unique-geodesic range");
    }
  }
}

// --- unit spheres (shared by sphere and rotations3d on S^3) ---

Eigen::VectorXd slerp(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double theta, double t) {
  const Eigen::VectorXd dir = unit_direction(p, q);
  Eigen::VectorXd r = std::cos(t * theta) * p + std::sin(t * theta) * dir;
  return r;
}

Eigen::VectorXd sphere_log(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return unit_angle(p, q) * unit_direction(p, q);
}

Eigen::VectorXd sphere_exp(const Eigen::VectorXd& p, const Eigen::VectorXd& v) {
  const Eigen::VectorXd vt = v - v.dot(p) * p;
  const double n = vt.norm();
  if (n == 0.0) return p;
  return std::cos(n) * p + std::sin(n) * (vt / n);
}

Eigen::VectorXd aligned(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return p.dot(q) < 0.0 ? Eigen::VectorXd(-q) : q;
}

// --- spd ---

struct SymEig {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

SymEig sym_eig(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  return {es.eigenvalues(), es.eigenvectors()};
}

template <class F>
Eigen::MatrixXd sym_apply(const SymEig& e, F f) {
  Eigen::VectorXd fv = e.values.unaryExpr(f);
  Eigen::MatrixXd r = e.vectors * fv.asDiagonal() * e.vectors.transpose();
  return 0.5 * (r + r.transpose());
}

void require_positive(const Eigen::VectorXd& values, const char* what) {
  if (values.minCoeff() < kSpdEigenFloor) {
    throw NotPositiveDefinite(std::string(what) + " has eigenvalue " +
                              fmt_double(values.minCoeff()) + " below the positivity floor");
  }
}

// Square root and inverse square root of a base point.
struct SpdFrame {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inv_sqrt;

  explicit SpdFrame(const Eigen::MatrixXd& a) {
    const SymEig e = sym_eig(a);
    require_positive(e.values, "base matrix");
    sqrt = sym_apply(e, [](double x) { return std::sqrt(x); });
    inv_sqrt = sym_apply(e, [](double x) { return 1.0 / std::sqrt(x); });
  }

  Eigen::MatrixXd whiten(const Eigen::MatrixXd& b) const {
    Eigen::MatrixXd c = inv_sqrt * b * inv_sqrt;
    return 0.5 * (c + c.transpose());
  }

  Eigen::MatrixXd color(const Eigen::MatrixXd& c) const {
    Eigen::MatrixXd r = sqrt * c * sqrt;
    return 0.5 * (r + r.transpose());
  }
};

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  Eigen::VectorXd v(m.size());
  Eigen::Map<RowMajorMatrix>(v.data(), m.rows(), m.cols()) = m;
  return v;
}

Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, int n) {
  return Eigen::Map<const RowMajorMatrix>(v.data(), n, n);
}

}  // namespace

// ---------------------------------------------------------------------------
// ManifoldKind

ManifoldKind ManifoldKind::euclidean(int dim) {
  if (dim < 1) throw UnknownManifold("euclidean dimension must be >= 1");
  return {ManifoldTag::euclidean, dim};
}

ManifoldKind ManifoldKind::sphere(int ambient_dim) {
  if (ambient_dim < 2) throw UnknownManifold("sphere ambient dimension must be >= 2");
  return {ManifoldTag::sphere, ambient_dim};
}

ManifoldKind ManifoldKind::rotations3d() { return {ManifoldTag::rotations3d, 3}; }

ManifoldKind ManifoldKind::spd(int n) {
  if (n < 1) throw UnknownManifold("spd matrix size must be >= 1");
  return {ManifoldTag::spd, n};
}

ManifoldKind ManifoldKind::parse(std::string_view tag, int dim_or_size) {
  if (tag == "euclidean") return euclidean(dim_or_size);
  if (tag == "sphere") return sphere(dim_or_size);
  if (tag == "spd") return spd(dim_or_size);
  if (tag == "rotations3d") {
    if (dim_or_size != 3) throw UnknownManifold("rotations3d requires dim_or_size = 3");
    return rotations3d();
  }
  throw UnknownManifold("unknown manifold '" + std::string(tag) + "'");
}

int ManifoldKind::coord_count() const noexcept {
  switch (tag_) {
    case ManifoldTag::euclidean:
    case ManifoldTag::sphere: return size_;
    case ManifoldTag::rotations3d: return 4;
    case ManifoldTag::spd: return size_ * size_;
  }
  return size_;
}

std::string ManifoldKind::tag_name() const {
  switch (tag_) {
    case ManifoldTag::euclidean: return "euclidean";
    case ManifoldTag::sphere: return "sphere";
    case ManifoldTag::rotations3d: return "rotations3d";
    case ManifoldTag::spd: return "spd";
  }
  return "?";
}

std::string ManifoldKind::to_string() const {
  return tag_name() + "(" + std::to_string(size_) + ")";
}

// ---------------------------------------------------------------------------
// ManifoldPoint

void validate(const ManifoldKind& kind, const Eigen::VectorXd& coords) {
  if (coords.size() != kind.coord_count()) {
    throw InvalidPoint("expected " + std::to_string(kind.coord_count()) + " coordinates for " +
                       kind.to_string() + ", got " + std::to_string(coords.size()));
  }
  if (!coords.allFinite()) throw InvalidPoint("coordinates must be finite");
  switch (kind.tag()) {
    case ManifoldTag::euclidean: return;
    case ManifoldTag::sphere:
    case ManifoldTag::rotations3d: {
      const double defect = std::abs(coords.norm() - 1.0);
      if (defect > kPointTolerance) {
        throw InvalidPoint("norm differs from 1 by " + fmt_double(defect));
      }
      return;
    }
    case ManifoldTag::spd: {
      const Eigen::MatrixXd a = unflatten(coords, kind.size());
      const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
      const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
      if (asym > kPointTolerance * scale) {
        throw InvalidPoint("matrix is not symmetric (defect " + fmt_double(asym) + ")");
      }
      const SymEig e = sym_eig(a);
      if (!(e.values.minCoeff() > 0.0)) {
        throw InvalidPoint("matrix is not positive definite (min eigenvalue " +
                           fmt_double(e.values.minCoeff()) + ")");
      }
      return;
    }
  }
}

ManifoldPoint ManifoldPoint::from_coords(ManifoldKind kind, Eigen::VectorXd coords) {
  validate(kind, coords);
  return ManifoldPoint(kind, std::move(coords));
}

ManifoldPoint ManifoldPoint::projected(ManifoldKind kind, Eigen::VectorXd coords) {
  if (coords.size() != kind.coord_count()) {
    throw InvalidPoint("coordinate count does not match " + kind.to_string());
  }
  switch (kind.tag()) {
    case ManifoldTag::euclidean: break;
    case ManifoldTag::sphere:
    case ManifoldTag::rotations3d: {
      const double n = coords.norm();
      if (!(n > 0.0)) throw InvalidPoint("cannot normalize a zero vector");
      coords /= n;
      break;
    }
    case ManifoldTag::spd: {
      const Eigen::MatrixXd a = unflatten(coords, kind.size());
      coords = flatten(0.5 * (a + a.transpose()));
      break;
    }
  }
  return ManifoldPoint(kind, std::move(coords));
}

Eigen::MatrixXd ManifoldPoint::matrix() const {
  if (kind_.tag() != ManifoldTag::spd) throw KindMismatch("matrix() requires an spd point");
  return unflatten(coords_, kind_.size());
}

// ---------------------------------------------------------------------------
// Operations

double distance(const ManifoldPoint& p, const ManifoldPoint& q) {
  require_same_kind(p, q);
  const auto& a = p.coords();
  const auto& b = q.coords();
  if (a == b) return 0.0;
  switch (p.kind().tag()) {
    case ManifoldTag::euclidean: return (a - b).norm();
    case ManifoldTag::sphere: return unit_angle(a, b);
    case ManifoldTag::rotations3d: return 2.0 * unit_angle(a, aligned(a, b));
    case ManifoldTag::spd: {
      const SpdFrame frame(p.matrix());
      const SymEig e = sym_eig(frame.whiten(q.matrix()));
      require_positive(e.values, "whitened matrix");
      return e.values.unaryExpr([](double x) { return std::log(x); }).norm();
    }
  }
  return 0.0;
}

ManifoldPoint geodesic_point(const ManifoldPoint& p0, const ManifoldPoint& p1, double t) {
  require_same_kind(p0, p1);
  if (t == 0.0) return p0;
  if (t == 1.0) return p1;
  const auto& kind = p0.kind();
  const auto& a = p0.coords();
  switch (kind.tag()) {
    case ManifoldTag::euclidean:
      return ManifoldPoint::projected(kind, (1.0 - t) * a + t * p1.coords());
    case ManifoldTag::sphere: {
      const auto& b = p1.coords();
      const double theta = unit_angle(a, b);
      check_arc(theta, t, theta, "sphere points");
      return ManifoldPoint::projected(kind, slerp(a, b, theta, t));
    }
    case ManifoldTag::rotations3d: {
      const Eigen::VectorXd b = aligned(a, p1.coords());
      const double half = unit_angle(a, b);
      const double theta = 2.0 * half;
      check_arc(theta, t, theta, "rotations");
      return ManifoldPoint::projected(kind, slerp(a, b, half, t));
    }
    case ManifoldTag::spd: {
      const SpdFrame frame(p0.matrix());
      const SymEig e = sym_eig(frame.whiten(p1.matrix()));
      require_positive(e.values, "whitened matrix");
      const Eigen::MatrixXd ct = sym_apply(e, [t](double x) { return std::pow(x, t); });
      return ManifoldPoint::projected(kind, flatten(frame.color(ct)));
    }
  }
  return p0;
}

Tangent log_map(const ManifoldPoint& base, const ManifoldPoint& q) {
  require_same_kind(base, q);
  const auto& a = base.coords();
  switch (base.kind().tag()) {
    case ManifoldTag::euclidean: return q.coords() - a;
    case ManifoldTag::sphere: {
      const double theta = unit_angle(a, q.coords());
      check_arc(theta, 1.0, theta, "sphere points");
      return sphere_log(a, q.coords());
    }
    case ManifoldTag::rotations3d: {
      const Eigen::VectorXd b = aligned(a, q.coords());
      const double theta = 2.0 * unit_angle(a, b);
      check_arc(theta, 1.0, theta, "rotations");
      return 2.0 * sphere_log(a, b);
    }
    case ManifoldTag::spd: {
      const SpdFrame frame(base.matrix());
      const SymEig e = sym_eig(frame.whiten(q.matrix()));
      require_positive(e.values, "whitened matrix");
      return flatten(frame.color(sym_apply(e, [](double x) { return std::log(x); })));
    }
  }
  return Tangent::Zero(a.size());
}

ManifoldPoint exp_map(const ManifoldPoint& base, const Tangent& v) {
  require_tangent_size(base, v);
  const auto& kind = base.kind();
  const auto& a = base.coords();
  switch (kind.tag()) {
    case ManifoldTag::euclidean: return ManifoldPoint::projected(kind, a + v);
    case ManifoldTag::sphere:
    case ManifoldTag::rotations3d: {
      const double n = tangent_norm(base, v);
      if (n >= kPi - kGeodesicMargin) {
        throw TangentTooLong("tangent norm " + fmt_double(n) + " reaches the cut locus");
      }
      const Eigen::VectorXd step = kind.tag() == ManifoldTag::sphere ? v : Eigen::VectorXd(0.5 * v);
      return ManifoldPoint::projected(kind, sphere_exp(a, step));
    }
    case ManifoldTag::spd: {
      const SpdFrame frame(base.matrix());
      const Eigen::MatrixXd w = frame.whiten(unflatten(v, kind.size()));
      const Eigen::MatrixXd ew = sym_apply(sym_eig(w), [](double x) { return std::exp(x); });
      return ManifoldPoint::projected(kind, flatten(frame.color(ew)));
    }
  }
  return base;
}

double tangent_norm(const ManifoldPoint& base, const Tangent& v) {
  require_tangent_size(base, v);
  switch (base.kind().tag()) {
    case ManifoldTag::euclidean: return v.norm();
    case ManifoldTag::sphere:
    case ManifoldTag::rotations3d: {
      const auto& a = base.coords();
      return (v - v.dot(a) * a).norm();
    }
    case ManifoldTag::spd: {
      const SpdFrame frame(base.matrix());
      return frame.whiten(unflatten(v, base.kind().size())).norm();
    }
  }
  return v.norm();
}

ManifoldPoint random_point(const ManifoldKind& kind, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gaussian = [&](int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
  };
  switch (kind.tag()) {
    case ManifoldTag::euclidean: return ManifoldPoint::projected(kind, gaussian(kind.size()));
    case ManifoldTag::sphere:
    case ManifoldTag::rotations3d: {
      Eigen::VectorXd v = gaussian(kind.coord_count());
      while (v.norm() < 1e-6) v = gaussian(kind.coord_count());
      return ManifoldPoint::projected(kind, v);
    }
    case ManifoldTag::spd: {
      const int n = kind.size();
      Eigen::MatrixXd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
      const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
      std::uniform_real_distribution<double> log_lambda(std::log(0.1), std::log(10.0));
      Eigen::VectorXd lambda(n);
      for (int i = 0; i < n; ++i) lambda[i] = std::exp(log_lambda(rng));
      const Eigen::MatrixXd a = q * lambda.asDiagonal() * q.transpose();
      return ManifoldPoint::projected(kind, flatten(a));
    }
  }
  return ManifoldPoint();
}

Tangent random_unit_tangent(const ManifoldPoint& base, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& kind = base.kind();
  for (;;) {
    Tangent v(kind.coord_count());
    for (int i = 0; i < v.size(); ++i) v[i] = normal(rng);
    switch (kind.tag()) {
      case ManifoldTag::euclidean: break;
      case ManifoldTag::sphere:
      case ManifoldTag::rotations3d: v -= v.dot(base.coords()) * base.coords(); break;
      case ManifoldTag::spd: {
        const Eigen::MatrixXd g = unflatten(v, kind.size());
        const SpdFrame frame(base.matrix());
        // Unit-norm symmetric direction in whitened coordinates, mapped back.
        v = flatten(frame.color(0.5 * (g + g.transpose())));
        break;
      }
    }
    const double n = tangent_norm(base, v);
    if (n > 1e-6) return v / n;
  }
}

}  // namespace gim
