#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qprep/errors.hpp"
#include "qprep/words.hpp"

namespace qprep {

enum class DistributionKind { DiscretePmf, Uniform, Triangular, PiecewiseLinear, GenericDensity };

struct PiecewisePoint {
  double x;
  double density;
};

/// A target distribution on 2^n outcomes: either a discrete pmf over the
/// outcomes directly, or a density on [0,1] whose dyadic cell masses define
/// the pmf.
class DistributionSpec {
 public:
  static DistributionSpec discrete_pmf(int qubit_count, std::vector<double> values) {
    DistributionSpec spec(DistributionKind::DiscretePmf, qubit_count);
    if (qubit_count > 40 || values.size() != (std::size_t{1} << qubit_count))
      throw std::invalid_argument("pmf must list exactly 2^n values");
    for (double v : values)
      if (!(v >= 0.0)) throw std::invalid_argument("pmf entries must be nonnegative");
    spec.pmf_ = std::move(values);
    return spec;
  }

  static DistributionSpec uniform(int qubit_count) {
    return DistributionSpec(DistributionKind::Uniform, qubit_count);
  }

  /// Density 4x on [0, 1/2] and 4-4x on [1/2, 1].
  static DistributionSpec triangular(int qubit_count) {
    return DistributionSpec(DistributionKind::Triangular, qubit_count);
  }

  static DistributionSpec piecewise_linear(int qubit_count, std::vector<PiecewisePoint> points) {
    DistributionSpec spec(DistributionKind::PiecewiseLinear, qubit_count);
    if (points.size() < 2) throw std::invalid_argument("need at least two breakpoints");
    if (points.front().x != 0.0 || points.back().x != 1.0)
      throw std::invalid_argument("breakpoints must include the endpoints 0 and 1");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!(points[i].density >= 0.0))
        throw std::invalid_argument("breakpoint densities must be nonnegative");
      if (i > 0 && !(points[i - 1].x < points[i].x))
        throw std::invalid_argument("breakpoint positions must be strictly increasing");
    }
    spec.points_ = std::move(points);
    return spec;
  }

  static DistributionSpec generic_density(int qubit_count, std::function<double(double)> rho) {
    DistributionSpec spec(DistributionKind::GenericDensity, qubit_count);
    if (!rho) throw std::invalid_argument("density evaluator must be callable");
    spec.rho_ = std::move(rho);
    return spec;
  }

  DistributionKind kind() const { return kind_; }
  int qubit_count() const { return qubit_count_; }
  const std::vector<double>& pmf() const { return pmf_; }
  const std::vector<PiecewisePoint>& breakpoints() const { return points_; }
  const std::function<double(double)>& evaluator() const { return rho_; }

 private:
  DistributionSpec(DistributionKind kind, int qubit_count)
      : kind_(kind), qubit_count_(qubit_count) {
    if (qubit_count < 1) throw std::invalid_argument("qubit count must be >= 1");
  }

  DistributionKind kind_;
  int qubit_count_;
  std::vector<double> pmf_;
  std::vector<PiecewisePoint> points_;
  std::function<double(double)> rho_;
};

/// Pointwise density value for the density-backed kinds.
inline double density_at(const DistributionSpec& spec, double x) {
  switch (spec.kind()) {
    case DistributionKind::Uniform:
      return 1.0;
    case DistributionKind::Triangular:
      return x <= 0.5 ? 4.0 * x : 4.0 - 4.0 * x;
    case DistributionKind::PiecewiseLinear: {
      const auto& pts = spec.breakpoints();
      for (std::size_t i = 1; i < pts.size(); ++i) {
        if (x <= pts[i].x) {
          const double t = (x - pts[i - 1].x) / (pts[i].x - pts[i - 1].x);
          return pts[i - 1].density + t * (pts[i].density - pts[i - 1].density);
        }
      }
      return pts.back().density;
    }
    case DistributionKind::GenericDensity:
      return spec.evaluator()(x);
    case DistributionKind::DiscretePmf:
      break;
  }
  throw std::invalid_argument("discrete pmf has no pointwise density");
}

/// Adaptive Simpson quadrature with an absolute tolerance. Throws
/// QuadratureError if the requested tolerance is not reached before the
/// maximum recursion depth.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 40) {
  auto eval = [&f](double x) {
    const double v = f(x);
    if (!(v >= 0.0)) throw std::invalid_argument("density must be nonnegative and finite");
    return v;
  };
  auto simpson = [](double fa, double fm, double fb, double a_, double b_) {
    return (b_ - a_) / 6.0 * (fa + 4.0 * fm + fb);
  };
  struct Rec {
    double operator()(double a_, double m_, double b_, double fa, double fm, double fb,
                      double whole, double tol, int depth) const {
      const double lm = 0.5 * (a_ + m_);
      const double rm = 0.5 * (m_ + b_);
      const double flm = eval_(lm);
      const double frm = eval_(rm);
      const double left = (m_ - a_) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b_ - m_) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      if (depth <= 0) throw QuadratureError("adaptive Simpson failed to converge");
      return (*this)(a_, lm, m_, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             (*this)(m_, rm, b_, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
    const std::function<double(double)>& eval_;
  };
  const double m = 0.5 * (a + b);
  const double fa = eval(a), fm = eval(m), fb = eval(b);
  const std::function<double(double)> eval_fn = eval;
  return Rec{eval_fn}(a, m, b, fa, fm, fb, simpson(fa, fm, fb, a, b), abs_tol, max_depth);
}

/// Dyadic probability masses p_w for every word of length 0..n. Immutable
/// once built; each interior mass is the floating-point sum of its two
/// children, and the root is exactly 1 after normalization.
class MassTree {
 public:
  int depth() const { return depth_; }

  double mass(int level, std::uint64_t k) const { return levels_[level][k]; }
  double mass(const Word& w) const { return levels_[w.length()][w.index()]; }
  const std::vector<double>& level(int l) const { return levels_[l]; }
  const std::vector<double>& leaves() const { return levels_.back(); }

  /// True if ingestion rescaled the input to total mass 1.
  bool was_rescaled() const { return rescaled_; }
  /// Total mass of the raw input before rescaling.
  double ingest_total() const { return ingest_total_; }

  /// Builds from leaf masses, applying the normalization policy: totals
  /// within 1e-6 of 1 are rescaled to exactly 1, anything further off is
  /// rejected.
  static MassTree from_leaves(int depth, std::vector<double> leaf_masses) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (leaf_masses.size() != (std::size_t{1} << depth))
      throw std::invalid_argument("leaf count must be 2^depth");
    long double total = 0.0L;
    for (double v : leaf_masses) {
      if (!(v >= 0.0)) throw std::invalid_argument("masses must be nonnegative and finite");
      total += static_cast<long double>(v);
    }
    const double total_d = static_cast<double>(total);
    if (std::abs(total_d - 1.0) > 1e-6)
      throw NormalizationError("total mass deviates from 1 beyond 1e-6");
    const bool rescale = std::abs(total_d - 1.0) > 1e-15;
    if (rescale)
      for (double& v : leaf_masses)
        v = static_cast<double>(static_cast<long double>(v) / total);

    MassTree tree;
    tree.depth_ = depth;
    tree.rescaled_ = rescale;
    tree.ingest_total_ = total_d;
    tree.levels_.resize(static_cast<std::size_t>(depth) + 1);
    tree.levels_[depth] = std::move(leaf_masses);
    for (int l = depth - 1; l >= 0; --l) {
      auto& parents = tree.levels_[l];
      const auto& children = tree.levels_[l + 1];
      parents.resize(std::size_t{1} << l);
      for (std::size_t k = 0; k < parents.size(); ++k)
        parents[k] = children[2 * k] + children[2 * k + 1];
    }
    tree.levels_[0][0] = 1.0;
    return tree;
  }

  /// Builds from explicit per-level masses, validating the refinement
  /// identity; no normalization is applied. Intended for tests.
  static MassTree from_levels(std::vector<std::vector<double>> levels) {
    if (levels.size() < 2) throw std::invalid_argument("need levels 0..n with n >= 1");
    for (std::size_t l = 0; l < levels.size(); ++l) {
      if (levels[l].size() != (std::size_t{1} << l))
        throw std::invalid_argument("level l must hold 2^l masses");
      for (double v : levels[l])
        if (!(v >= 0.0)) throw std::invalid_argument("masses must be nonnegative and finite");
      if (l > 0)
        for (std::size_t k = 0; k < levels[l - 1].size(); ++k)
          if (std::abs(levels[l - 1][k] - (levels[l][2 * k] + levels[l][2 * k + 1])) > 1e-12)
            throw std::invalid_argument("refinement identity violated beyond 1e-12");
    }
    MassTree tree;
    tree.depth_ = static_cast<int>(levels.size()) - 1;
    tree.levels_ = std::move(levels);
    tree.ingest_total_ = tree.levels_[0][0];
    return tree;
  }

 private:
  MassTree() = default;

  int depth_ = 0;
  std::vector<std::vector<double>> levels_;
  bool rescaled_ = false;
  double ingest_total_ = 1.0;
};

namespace detail {

// Exact antiderivatives on [0,1] for the built-in densities.
inline double uniform_cdf(double x) { return x; }
inline double triangular_cdf(double x) {
  return x <= 0.5 ? 2.0 * x * x : 4.0 * x - 2.0 * x * x - 1.0;
}

inline double piecewise_linear_mass(const std::vector<PiecewisePoint>& pts, double a, double b) {
  double mass = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double lo = std::max(a, pts[i - 1].x);
    const double hi = std::min(b, pts[i].x);
    if (hi <= lo) continue;
    auto at = [&](double x) {
      const double t = (x - pts[i - 1].x) / (pts[i].x - pts[i - 1].x);
      return pts[i - 1].density + t * (pts[i].density - pts[i - 1].density);
    };
    mass += (hi - lo) * 0.5 * (at(lo) + at(hi));  // trapezoid is exact for linear pieces
  }
  return mass;
}

}  // namespace detail

/// Computes the mass tree of a target distribution: leaf masses by exact
/// antiderivatives (built-in densities), adaptive Simpson per leaf cell
/// (generic densities), or the pmf values directly; interior masses by
/// bottom-up summation so the refinement identity holds exactly.
inline MassTree build_mass_tree(const DistributionSpec& spec, int depth_cap = 24) {
  const int n = spec.qubit_count();
  if (n > depth_cap) throw ResourceError("qubit count exceeds the mass-tree depth cap");

  if (spec.kind() == DistributionKind::DiscretePmf)
    return MassTree::from_leaves(n, spec.pmf());

  const std::size_t leaf_count = std::size_t{1} << n;
  std::vector<double> leaves(leaf_count);
  for (std::size_t k = 0; k < leaf_count; ++k) {
    const double lo = std::ldexp(static_cast<double>(k), -n);
    const double hi = std::ldexp(static_cast<double>(k + 1), -n);
    switch (spec.kind()) {
      case DistributionKind::Uniform:
        leaves[k] = detail::uniform_cdf(hi) - detail::uniform_cdf(lo);
        break;
      case DistributionKind::Triangular:
        leaves[k] = detail::triangular_cdf(hi) - detail::triangular_cdf(lo);
        break;
      case DistributionKind::PiecewiseLinear:
        leaves[k] = detail::piecewise_linear_mass(spec.breakpoints(), lo, hi);
        break;
      case DistributionKind::GenericDensity:
        leaves[k] = adaptive_simpson(spec.evaluator(), lo, hi);
        break;
      case DistributionKind::DiscretePmf:
        break;
    }
  }
  return MassTree::from_leaves(n, std::move(leaves));
}

}  // namespace qprep
