#include "gim/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace gim {

namespace {

void check_sizes(std::span<const ManifoldPoint> points, std::span<const double> weights) {
  if (points.empty()) throw InvalidWeights("an average needs at least one point");
  if (points.size() != weights.size()) {
    throw InvalidWeights("got " + std::to_string(points.size()) + " points but " +
                         std::to_string(weights.size()) + " weights");
  }
  for (const auto& p : points) {
    if (!(p.kind() == points.front().kind())) throw KindMismatch("mixed manifolds in one average");
  }
}

void check_sum(std::span<const double> weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= kWeightSumTolerance)) {
    throw InvalidWeights("weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

bool is_palindrome(std::span<const double> w) {
  for (std::size_t j = 0; j < w.size() / 2; ++j) {
    if (!(std::abs(w[j] - w[w.size() - 1 - j]) <= kSymmetryTolerance)) return false;
  }
  return true;
}

// Indices of `w` ordered by non-increasing weight, ties in original order.
std::vector<std::size_t> sorted_order(std::span<const double> w) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  return idx;
}

// Source index of each entry in the even-length expansion; an odd count
// repeats its middle index.
std::vector<std::size_t> even_expansion(std::size_t n) {
  std::vector<std::size_t> src;
  src.reserve(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    src.push_back(j);
    if (n % 2 == 1 && j == n / 2) src.push_back(j);
  }
  return src;
}

struct HalfRule {
  std::vector<std::size_t> front;  // point indices, sorted by weight
  std::vector<std::size_t> back;   // mirror partners of `front`
  std::vector<double> weights;     // sorted, sum 1
};

HalfRule split_halves(std::span<const double> weights) {
  const std::size_t n = weights.size();
  const auto src = even_expansion(n);
  std::vector<double> expanded;
  expanded.reserve(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    double w = weights[src[j]];
    if (n % 2 == 1 && src[j] == n / 2) w *= 0.5;
    expanded.push_back(w);
  }
  const std::size_t total = expanded.size();
  const std::size_t half = total / 2;
  std::vector<double> front_w(expanded.begin(), expanded.begin() + static_cast<long>(half));
  for (double& w : front_w) w *= 2.0;

  HalfRule rule;
  for (std::size_t k : sorted_order(front_w)) {
    rule.front.push_back(src[k]);
    rule.back.push_back(src[total - 1 - k]);
    rule.weights.push_back(front_w[k]);
  }
  return rule;
}

double inductive_constant(std::span<const double> sorted) {
  std::vector<double> w;
  for (double x : sorted)
    if (x != 0.0) w.push_back(x);
  if (w.size() <= 1) return 0.0;
  double inf = 0.0;
  for (double x : w) inf = std::max(inf, std::abs(x));
  double c = inf;
  for (std::size_t m = 2; m < w.size(); ++m) {
    c = (1.0 + c) * (1.0 + std::max(1.0 / static_cast<double>(m + 1), inf));
  }
  return c;
}

}  // namespace

ManifoldPoint inductive_mean(std::span<const ManifoldPoint> points, std::span<const double> weights) {
  check_sizes(points, weights);
  check_sum(weights);
  for (std::size_t j = 1; j < weights.size(); ++j) {
    if (weights[j] > weights[j - 1]) {
      throw InvalidWeights("inductive mean weights must be sorted non-increasing");
    }
  }

  const ManifoldPoint* first = nullptr;
  ManifoldPoint acc;
  double partial = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (weights[j] == 0.0) continue;
    partial += weights[j];
    if (first == nullptr) {
      first = &points[j];
      acc = points[j];
      continue;
    }
    if (std::abs(partial) < 1e-12) {
      throw DegenerateNormalizer("partial weight sum vanishes at point " + std::to_string(j));
    }
    acc = geodesic_point(acc, points[j], weights[j] / partial);
  }
  return acc;
}

ManifoldPoint symmetric_mean(std::span<const ManifoldPoint> points, std::span<const double> weights) {
  check_sizes(points, weights);
  check_sum(weights);
  if (!is_palindrome(weights)) throw NonSymmetricWeights("symmetric mean needs palindromic weights");
  if (points.size() == 1) return points.front();

  const HalfRule rule = split_halves(weights);
  std::vector<ManifoldPoint> front;
  std::vector<ManifoldPoint> back;
  front.reserve(rule.front.size());
  back.reserve(rule.back.size());
  for (std::size_t k = 0; k < rule.front.size(); ++k) {
    front.push_back(points[rule.front[k]]);
    back.push_back(points[rule.back[k]]);
  }
  const ManifoldPoint a = inductive_mean(front, rule.weights);
  const ManifoldPoint b = inductive_mean(back, rule.weights);
  return geodesic_point(a, b, 0.5);
}

double displacement_constant(std::span<const double> weights, bool symmetric) {
  std::vector<double> w;
  for (double x : weights)
    if (x != 0.0) w.push_back(x);
  if (w.size() <= 1) return 0.0;
  if (!symmetric) return inductive_constant(w);
  if (!is_palindrome(w)) throw NonSymmetricWeights("symmetric constant needs palindromic weights");
  return 2.0 * inductive_constant(split_halves(w).weights) + 0.5;
}

KarcherResult karcher_mean(std::span<const ManifoldPoint> points, std::span<const double> weights,
                           const KarcherOptions& options) {
  check_sizes(points, weights);
  check_sum(weights);
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidWeights("karcher mean requires positive weights");
  }
  const auto tag = points.front().kind().tag();
  if (tag == ManifoldTag::sphere || tag == ManifoldTag::rotations3d) {
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (distance(points[i], points[j]) > std::numbers::pi / 2) {
          throw InvalidWeights("karcher mean points must lie in a ball of radius pi/4");
        }
  }

  const auto order = sorted_order(weights);
  std::vector<ManifoldPoint> sp;
  std::vector<double> sw;
  for (std::size_t k : order) {
    sp.push_back(points[k]);
    sw.push_back(weights[k]);
  }
  ManifoldPoint x = inductive_mean(sp, sw);

  for (int iter = 0; iter <= options.max_iter; ++iter) {
    Tangent g = Tangent::Zero(x.kind().coord_count());
    for (std::size_t j = 0; j < points.size(); ++j) g += weights[j] * log_map(x, points[j]);
    const double norm = tangent_norm(x, g);
    if (norm < options.tol) return {x, iter, norm};
    if (iter == options.max_iter) break;
    x = exp_map(x, g);
  }
  throw NoConvergence("karcher iteration did not reach tolerance in " +
                      std::to_string(options.max_iter) + " iterations");
}

}  // namespace gim
