#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numindex/util.hpp"

namespace numindex {

enum class SpaceKind {
  lp,
  euclidean,
  polytope,
  max_pair_euclidean,  // R^3, max of the three pairwise Euclidean norms
  block_l1_max,        // R^5, max of three overlapping l1 blocks
  block_l1_max_p4,     // its restriction to the first four coordinates
  lorentz_pairs,       // p-mean smoothing of the pairwise-Euclidean family
  sum,
  section,
  koethe_dual,
  custom,
};

std::string kind_name(SpaceKind k);

/// A unit vector together with a supporting functional: norm(x) = 1,
/// dual_norm(f) = 1 and f(x) = 1 up to `slack`.
struct SupportPair {
  Vec x;
  Vec f;
  double slack = 0.0;
};

/// Finite representation of a polytopal unit ball by the extreme points of
/// the ball and of its dual ball.
struct PolytopeBall {
  int dim = 0;
  std::vector<Vec> primal_vertices;
  std::vector<Vec> dual_vertices;
  double pairing_tolerance = 1e-10;

  /// Admissible pairs (primal index, dual index) with f(v) = 1; these carry
  /// the exact numerical-radius enumeration.
  std::vector<std::pair<int, int>> unit_pairs;

  /// Checks negation symmetry and the two pairing invariants, then collects
  /// unit_pairs. Throws std::invalid_argument on violation.
  void finalize();
};

struct SumData;  // defined in sums.hpp
class NormSpace;

class SpaceImpl {
 public:
  virtual ~SpaceImpl() = default;
  virtual int dim() const = 0;
  virtual SpaceKind kind() const = 0;
  virtual double norm(const Vec& x) const = 0;

  const std::string& label() const { return label_; }
  virtual bool absolute_by_construction() const { return false; }

  /// Supporting functional at x != 0. Polytopal kinds pick the attaining
  /// dual vertex (lexicographically smallest on ties); smooth kinds return
  /// the norm gradient.
  virtual SupportPair support(const Vec& x) const;
  virtual std::vector<SupportPair> support_set(const Vec& x) const;

  /// Dual norm; exact for polytopal and lp kinds, a certified lower bound
  /// from projected ascent with restarts otherwise.
  virtual double dual_norm(const Vec& f) const;

  virtual const PolytopeBall* ball() const { return nullptr; }
  virtual const SumData* sum_data() const { return nullptr; }

  virtual std::shared_ptr<const SpaceImpl> section(const std::vector<int>& coords) const;

  // serialization hooks
  virtual double p_value() const { return std::numeric_limits<double>::quiet_NaN(); }
  virtual std::shared_ptr<const SpaceImpl> parent_space() const { return nullptr; }
  virtual const std::vector<int>* section_coords() const { return nullptr; }

 protected:
  std::string label_;
  friend class NormSpace;
};

/// Immutable normed-space descriptor. Cheap to copy; all queries are pure.
class NormSpace {
 public:
  NormSpace() = default;
  explicit NormSpace(std::shared_ptr<const SpaceImpl> impl) : impl_(std::move(impl)) {}

  bool valid() const { return impl_ != nullptr; }
  int dim() const { return impl_->dim(); }
  SpaceKind kind() const { return impl_->kind(); }
  const std::string& label() const { return impl_->label(); }

  double norm(const Vec& x) const;
  double dual_norm(const Vec& f) const;
  SupportPair support_functional(const Vec& x) const;
  std::vector<SupportPair> support_functional_set(const Vec& x) const;

  const PolytopeBall* ball() const { return impl_->ball(); }
  const SumData* sum_data() const { return impl_->sum_data(); }
  bool absolute_by_construction() const { return impl_->absolute_by_construction(); }

  /// Restriction to the given (0-based, distinct) coordinates, re-indexed to
  /// dimension coords.size().
  NormSpace section(const std::vector<int>& coords) const;

  const SpaceImpl* impl() const { return impl_.get(); }
  std::shared_ptr<const SpaceImpl> impl_ptr() const { return impl_; }

 private:
  std::shared_ptr<const SpaceImpl> impl_;
};

// ---- factories ----

/// lp norm for p >= 1. p = inf is an alias for the cube ball polytope.
NormSpace lp_space(int dim, double p, std::string label = "");
NormSpace euclidean_space(int dim, std::string label = "");
NormSpace polytope_space(PolytopeBall ball, std::string label = "",
                         SpaceKind kind = SpaceKind::polytope);
NormSpace l1_ball_space(int dim, std::string label = "");
NormSpace linf_ball_space(int dim, std::string label = "");
NormSpace max_pair_euclidean_space(std::string label = "");
NormSpace block_l1_max_space(std::string label = "");
NormSpace block_l1_max_p4_space(std::string label = "");
NormSpace lorentz_pairs_space(int dim, double p, std::string label = "");
NormSpace custom_space(int dim, std::function<double(const Vec&)> norm_fn,
                       std::string label = "custom",
                       std::function<Vec(const Vec&)> grad_fn = nullptr);

// ---- absolute-norm validation ----

struct PropertyCheck {
  bool pass = true;
  double worst = 0.0;
  Vec witness_x;
  Vec witness_y;
};

struct ValidationReport {
  PropertyCheck sign_invariance;  // (a)
  PropertyCheck unit_vectors;     // (b)
  PropertyCheck monotonicity;     // (c)
  bool pass() const { return sign_invariance.pass && unit_vectors.pass && monotonicity.pass; }
  std::string failing_axiom() const;
};

/// Randomized check of the absolute-norm axioms: sign-flip invariance, unit
/// coordinate vectors of norm one, and coordinatewise-domination
/// monotonicity. Deterministic given the seed.
ValidationReport validate_absolute(const NormSpace& space, int trials, std::uint64_t seed);

// ---- CL certificate ----

struct ClResult {
  bool certified_yes = false;
  int violating_face = -1;    // dual-vertex index of the failing maximal face
  int violating_vertex = -1;  // primal vertex not absolutely spanned by it
  int faces_checked = 0;
};

/// Certifies whether the ball is the absolutely convex hull of each maximal
/// face of the sphere (for a polytope: the attaining set of each extreme
/// dual functional). Certified-yes is equivalent to numerical index one in
/// finite dimension.
ClResult is_cl_space(const PolytopeBall& ball);

// ---- polytope machinery ----

/// All vertices of {x : |f.x| <= 1 for every facet functional f}, by brute
/// force over dim-subsets of facets. Desk scale only.
std::vector<Vec> enumerate_vertices_from_facets(const std::vector<Vec>& facets,
                                                int dim, double tol = 1e-9);

/// Drops points lying in the convex hull of the others.
std::vector<Vec> extreme_points(std::vector<Vec> points, double tol = 1e-9);

/// Ball of the restriction of a polytopal norm to a coordinate subspace:
/// facets restrict, vertices re-enumerate, dual extremes re-filter.
PolytopeBall section_ball(const PolytopeBall& ball, const std::vector<int>& coords);

// ---- generic sphere search (shared by dual norms and radius polish) ----

struct SphereSearchOptions {
  int random_starts = 6;
  int scan_samples = 64;
  double init_step = 0.5;
  double min_step = 1e-10;
  int max_rounds = 400;
  std::uint64_t seed = 0;
  bool nonneg = false;  // restrict to the closed positive orthant
};

struct SphereSearchResult {
  double value = 0.0;
  Vec x;
};

/// Maximizes `objective` over the unit sphere of `norm_fn` by seeded
/// sampling plus coordinate pattern ascent. The result is a certified lower
/// bound for the supremum; deterministic given the options.
SphereSearchResult maximize_on_sphere(int dim,
                                      const std::function<double(const Vec&)>& norm_fn,
                                      const std::function<double(const Vec&)>& objective,
                                      const SphereSearchOptions& opts);

}  // namespace numindex
