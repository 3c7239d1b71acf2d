#include "numindex/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numindex/lp_solver.hpp"

namespace numindex {

namespace {

constexpr double kTiny = 1e-14;

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - 1e-12) return true;
    if (a[i] > b[i] + 1e-12) return false;
  }
  return false;
}

bool approx_eq(const Vec& a, const Vec& b, double tol) {
  return (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

Vec embed_coords(const Vec& y, const std::vector<int>& coords, int parent_dim) {
  Vec x = Vec::Zero(parent_dim);
  for (size_t j = 0; j < coords.size(); ++j) x[coords[j]] = y[j];
  return x;
}

Vec restrict_coords(const Vec& x, const std::vector<int>& coords) {
  Vec y(static_cast<int>(coords.size()));
  for (size_t j = 0; j < coords.size(); ++j) y[j] = x[coords[j]];
  return y;
}

}  // namespace

std::string kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::lp: return "lp";
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::polytope: return "polytope";
    case SpaceKind::max_pair_euclidean: return "max_pair_euclidean";
    case SpaceKind::block_l1_max: return "block_l1_max";
    case SpaceKind::block_l1_max_p4: return "block_l1_max_p4";
    case SpaceKind::lorentz_pairs: return "lorentz_pairs";
    case SpaceKind::sum: return "sum";
    case SpaceKind::section: return "section";
    case SpaceKind::koethe_dual: return "koethe_dual";
    case SpaceKind::custom: return "custom";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// PolytopeBall

void PolytopeBall::finalize() {
  require(dim >= 1, "polytope ball: dimension must be positive");
  require(primal_vertices.size() >= 2 && dual_vertices.size() >= 2,
          "polytope ball: need at least two primal and two dual vertices");
  for (const auto& v : primal_vertices)
    require(static_cast<int>(v.size()) == dim, "polytope ball: vertex dimension mismatch");
  for (const auto& f : dual_vertices)
    require(static_cast<int>(f.size()) == dim, "polytope ball: dual vertex dimension mismatch");

  auto symmetric = [&](const std::vector<Vec>& vs) {
    for (const auto& v : vs) {
      bool found = false;
      for (const auto& w : vs) {
        if (approx_eq(w, -v, 1e-12)) { found = true; break; }
      }
      if (!found) return false;
    }
    return true;
  };
  require(symmetric(primal_vertices), "polytope ball: primal vertices not symmetric under negation");
  require(symmetric(dual_vertices), "polytope ball: dual vertices not symmetric under negation");

  for (size_t i = 0; i < primal_vertices.size(); ++i) {
    double best = 0.0;
    for (const auto& f : dual_vertices) best = std::max(best, std::abs(f.dot(primal_vertices[i])));
    require(std::abs(best - 1.0) <= pairing_tolerance,
            "polytope ball: primal vertex " + std::to_string(i) + " has pairing max " +
                std::to_string(best));
  }
  for (size_t j = 0; j < dual_vertices.size(); ++j) {
    double best = 0.0;
    for (const auto& v : primal_vertices) best = std::max(best, std::abs(dual_vertices[j].dot(v)));
    require(std::abs(best - 1.0) <= pairing_tolerance,
            "polytope ball: dual vertex " + std::to_string(j) + " has pairing max " +
                std::to_string(best));
  }

  unit_pairs.clear();
  for (size_t i = 0; i < primal_vertices.size(); ++i) {
    for (size_t j = 0; j < dual_vertices.size(); ++j) {
      if (std::abs(dual_vertices[j].dot(primal_vertices[i]) - 1.0) <= pairing_tolerance)
        unit_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
}

// ---------------------------------------------------------------------------
// generic sphere search

SphereSearchResult maximize_on_sphere(int dim,
                                      const std::function<double(const Vec&)>& norm_fn,
                                      const std::function<double(const Vec&)>& objective,
                                      const SphereSearchOptions& opts) {
  auto normalize = [&](Vec x) -> std::optional<Vec> {
    if (opts.nonneg) x = x.cwiseMax(0.0);
    double n = norm_fn(x);
    if (n < kTiny) return std::nullopt;
    return Vec(x / n);
  };

  std::vector<Vec> seeds;
  for (int i = 0; i < dim; ++i) {
    Vec e = Vec::Zero(dim);
    e[i] = 1.0;
    seeds.push_back(e);
    if (!opts.nonneg) seeds.push_back(-e);
  }
  auto rng = make_stream(opts.seed, 0x5eedULL);
  for (int s = 0; s < opts.random_starts + opts.scan_samples; ++s) {
    Vec g = gaussian_vec(rng, dim);
    if (opts.nonneg) g = g.cwiseAbs();
    seeds.push_back(g);
  }

  // keep the best few seeds for the ascent phase
  std::vector<std::pair<double, Vec>> ranked;
  for (auto& s : seeds) {
    auto xn = normalize(s);
    if (!xn) continue;
    ranked.emplace_back(objective(*xn), *xn);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  int keep = std::min<int>(std::max(1, opts.random_starts), static_cast<int>(ranked.size()));

  SphereSearchResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < keep; ++s) {
    Vec x = ranked[s].second;
    double cur = ranked[s].first;
    double step = opts.init_step;
    int rounds = 0;
    while (step > opts.min_step && rounds < opts.max_rounds) {
      ++rounds;
      bool improved = false;
      for (int j = 0; j < dim; ++j) {
        for (double sgn : {1.0, -1.0}) {
          Vec xc = x;
          xc[j] += sgn * step;
          auto xn = normalize(xc);
          if (!xn) continue;
          double v = objective(*xn);
          if (v > cur + 1e-15) {
            cur = v;
            x = *xn;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (cur > best.value) {
      best.value = cur;
      best.x = x;
    }
  }
  if (!best.x.size()) {
    best.value = 0.0;
    best.x = Vec::Zero(dim);
  }
  return best;
}

// ---------------------------------------------------------------------------
// SpaceImpl defaults

SupportPair SpaceImpl::support(const Vec& x) const {
  if (const PolytopeBall* b = ball()) {
    double n = norm(x);
    Vec xhat = x / n;
    double bestval = -std::numeric_limits<double>::infinity();
    for (const auto& f : b->dual_vertices) bestval = std::max(bestval, f.dot(xhat));
    const Vec* pick = nullptr;
    for (const auto& f : b->dual_vertices) {
      if (f.dot(xhat) >= bestval - 1e-12 && (!pick || lex_less(f, *pick))) pick = &f;
    }
    SupportPair sp;
    sp.x = xhat;
    sp.f = *pick;
    sp.slack = std::abs(sp.f.dot(xhat) - 1.0);
    return sp;
  }
  throw unsupported_kind("support functional unavailable for kind " + kind_name(kind()));
}

std::vector<SupportPair> SpaceImpl::support_set(const Vec& x) const {
  if (const PolytopeBall* b = ball()) {
    double n = norm(x);
    Vec xhat = x / n;
    std::vector<SupportPair> out;
    for (const auto& f : b->dual_vertices) {
      if (std::abs(f.dot(xhat) - 1.0) <= b->pairing_tolerance + 1e-12)
        out.push_back({xhat, f, std::abs(f.dot(xhat) - 1.0)});
    }
    if (!out.empty()) return out;
  }
  return {support(x)};
}

double SpaceImpl::dual_norm(const Vec& f) const {
  if (const PolytopeBall* b = ball()) {
    double best = 0.0;
    for (const auto& v : b->primal_vertices) best = std::max(best, std::abs(f.dot(v)));
    return best;
  }
  SphereSearchOptions opts;
  opts.seed = 0xD0A1ULL;  // fixed: dual_norm is a pure function of f
  auto norm_fn = [this](const Vec& x) { return norm(x); };
  auto obj = [&](const Vec& x) { return std::abs(f.dot(x)); };
  return maximize_on_sphere(dim(), norm_fn, obj, opts).value;
}

namespace {

class SectionImpl : public SpaceImpl {
 public:
  SectionImpl(std::shared_ptr<const SpaceImpl> parent, std::vector<int> coords)
      : parent_(std::move(parent)), coords_(std::move(coords)) {
    label_ = parent_->label() + "|section";
  }
  int dim() const override { return static_cast<int>(coords_.size()); }
  SpaceKind kind() const override { return SpaceKind::section; }
  double norm(const Vec& y) const override {
    return parent_->norm(embed_coords(y, coords_, parent_->dim()));
  }
  bool absolute_by_construction() const override { return parent_->absolute_by_construction(); }
  SupportPair support(const Vec& y) const override {
    SupportPair p = parent_->support(embed_coords(y, coords_, parent_->dim()));
    SupportPair out;
    out.x = restrict_coords(p.x, coords_);
    out.f = restrict_coords(p.f, coords_);
    out.slack = std::abs(out.f.dot(out.x) - 1.0);
    return out;
  }
  std::shared_ptr<const SpaceImpl> parent_space() const override { return parent_; }
  const std::vector<int>* section_coords() const override { return &coords_; }

 private:
  std::shared_ptr<const SpaceImpl> parent_;
  std::vector<int> coords_;
};

}  // namespace

std::shared_ptr<const SpaceImpl> SpaceImpl::section(const std::vector<int>& coords) const {
  // Default: generic restriction wrapper. Kinds with a closed-form section
  // override this.
  struct Wrap : SectionImpl {
    using SectionImpl::SectionImpl;
  };
  // shared_from_this is not used; impls are owned by NormSpace shared_ptrs.
  throw unsupported_kind("section requires NormSpace::section");
}

// ---------------------------------------------------------------------------
// NormSpace

double NormSpace::norm(const Vec& x) const {
  require(valid(), "empty NormSpace");
  require(static_cast<int>(x.size()) == dim(), "norm: vector dimension mismatch");
  require(x.allFinite(), "norm: entries must be finite");
  return impl_->norm(x);
}

double NormSpace::dual_norm(const Vec& f) const {
  require(valid(), "empty NormSpace");
  require(static_cast<int>(f.size()) == dim(), "dual_norm: functional dimension mismatch");
  require(f.allFinite(), "dual_norm: entries must be finite");
  return impl_->dual_norm(f);
}

SupportPair NormSpace::support_functional(const Vec& x) const {
  require(valid(), "empty NormSpace");
  require(static_cast<int>(x.size()) == dim(), "support_functional: dimension mismatch");
  require(x.lpNorm<Eigen::Infinity>() > 0.0, "support_functional: x must be nonzero");
  return impl_->support(x);
}

std::vector<SupportPair> NormSpace::support_functional_set(const Vec& x) const {
  require(valid(), "empty NormSpace");
  require(static_cast<int>(x.size()) == dim(), "support_functional_set: dimension mismatch");
  require(x.lpNorm<Eigen::Infinity>() > 0.0, "support_functional_set: x must be nonzero");
  return impl_->support_set(x);
}

// ---------------------------------------------------------------------------
// lp / euclidean

namespace {

class LpImpl : public SpaceImpl {
 public:
  LpImpl(int dim, double p, SpaceKind kind, std::string label)
      : dim_(dim), p_(p), kind_(kind) {
    require(dim >= 1, "lp space: dimension must be positive");
    require(p >= 1.0, "lp space: p must be >= 1");
    label_ = label.empty() ? (kind_name(kind) + std::to_string(dim)) : std::move(label);
    if (p_ == 1.0 && dim_ <= 12) {
      ball_ = std::make_shared<PolytopeBall>(make_cross_polytope(dim_));
    }
  }

  static PolytopeBall make_cross_polytope(int dim) {
    PolytopeBall b;
    b.dim = dim;
    for (int i = 0; i < dim; ++i) {
      Vec e = Vec::Zero(dim);
      e[i] = 1.0;
      b.primal_vertices.push_back(e);
      b.primal_vertices.push_back(-e);
    }
    for (int mask = 0; mask < (1 << dim); ++mask) {
      Vec f(dim);
      for (int i = 0; i < dim; ++i) f[i] = (mask >> i) & 1 ? -1.0 : 1.0;
      b.dual_vertices.push_back(f);
    }
    b.finalize();
    return b;
  }

  int dim() const override { return dim_; }
  SpaceKind kind() const override { return kind_; }
  double p_value() const override { return p_; }
  bool absolute_by_construction() const override { return true; }

  double norm(const Vec& x) const override {
    if (p_ == 2.0) return x.norm();
    if (p_ == 1.0) return x.lpNorm<1>();
    double m = x.lpNorm<Eigen::Infinity>();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::pow(std::abs(x[i]) / m, p_);
    return m * std::pow(s, 1.0 / p_);
  }

  double dual_norm(const Vec& f) const override {
    if (p_ == 1.0) return f.lpNorm<Eigen::Infinity>();
    if (p_ == 2.0) return f.norm();
    double q = p_ / (p_ - 1.0);
    double m = f.lpNorm<Eigen::Infinity>();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::pow(std::abs(f[i]) / m, q);
    return m * std::pow(s, 1.0 / q);
  }

  SupportPair support(const Vec& x) const override {
    double n = norm(x);
    Vec xhat = x / n;
    Vec f(dim_);
    if (p_ == 1.0) {
      for (int i = 0; i < dim_; ++i) f[i] = xhat[i] > 0 ? 1.0 : (xhat[i] < 0 ? -1.0 : 0.0);
    } else {
      for (int i = 0; i < dim_; ++i) {
        double a = std::abs(xhat[i]);
        f[i] = (xhat[i] >= 0 ? 1.0 : -1.0) * std::pow(a, p_ - 1.0);
      }
    }
    return {xhat, f, std::abs(f.dot(xhat) - 1.0)};
  }

  const PolytopeBall* ball() const override { return ball_.get(); }

  std::shared_ptr<const SpaceImpl> section(const std::vector<int>& coords) const override {
    return std::make_shared<LpImpl>(static_cast<int>(coords.size()), p_, kind_, "");
  }

 private:
  int dim_;
  double p_;
  SpaceKind kind_;
  std::shared_ptr<PolytopeBall> ball_;
};

// ---------------------------------------------------------------------------
// polytope kind

class PolytopeImpl : public SpaceImpl {
 public:
  PolytopeImpl(PolytopeBall ball, std::string label, SpaceKind kind)
      : ball_(std::move(ball)), kind_(kind) {
    ball_.finalize();
    label_ = label.empty() ? "polytope" + std::to_string(ball_.dim) : std::move(label);
  }
  int dim() const override { return ball_.dim; }
  SpaceKind kind() const override { return kind_; }
  double norm(const Vec& x) const override {
    double best = 0.0;
    for (const auto& f : ball_.dual_vertices) best = std::max(best, std::abs(f.dot(x)));
    return best;
  }
  const PolytopeBall* ball() const override { return &ball_; }
  std::shared_ptr<const SpaceImpl> section(const std::vector<int>& coords) const override {
    return std::make_shared<PolytopeImpl>(section_ball(ball_, coords), label_ + "|section",
                                          SpaceKind::polytope);
  }

 private:
  PolytopeBall ball_;
  SpaceKind kind_;
};

// ---------------------------------------------------------------------------
// R^3 max of pairwise Euclidean norms, and its p-mean smoothing

class MaxPairEuclideanImpl : public SpaceImpl {
 public:
  explicit MaxPairEuclideanImpl(std::string label) {
    label_ = label.empty() ? "max_pair_euclidean" : std::move(label);
  }
  int dim() const override { return 3; }
  SpaceKind kind() const override { return SpaceKind::max_pair_euclidean; }
  bool absolute_by_construction() const override { return true; }

  double norm(const Vec& v) const override {
    return std::max({std::hypot(v[0], v[1]), std::hypot(v[0], v[2]), std::hypot(v[1], v[2])});
  }

  SupportPair support(const Vec& x) const override {
    double n = norm(x);
    Vec xhat = x / n;
    double t[3] = {std::hypot(xhat[0], xhat[1]), std::hypot(xhat[0], xhat[2]),
                   std::hypot(xhat[1], xhat[2])};
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (t[i] > t[k] + 1e-15) k = i;
    Vec f = Vec::Zero(3);
    if (k == 0) {
      f[0] = xhat[0] / t[0];
      f[1] = xhat[1] / t[0];
    } else if (k == 1) {
      f[0] = xhat[0] / t[1];
      f[2] = xhat[2] / t[1];
    } else {
      f[1] = xhat[1] / t[2];
      f[2] = xhat[2] / t[2];
    }
    return {xhat, f, std::abs(f.dot(xhat) - 1.0)};
  }

  std::shared_ptr<const SpaceImpl> section(const std::vector<int>& coords) const override {
    // Any pair restricts to the Euclidean plane; a single coordinate to the line.
    return std::make_shared<LpImpl>(static_cast<int>(coords.size()), 2.0, SpaceKind::euclidean,
                                    "");
  }
};

class LorentzPairsImpl : public SpaceImpl {
 public:
  LorentzPairsImpl(int dim, double p, std::string label) : dim_(dim), p_(p) {
    require(dim == 2 || dim == 3, "lorentz_pairs: dimension must be 2 or 3");
    require(p >= 1.0, "lorentz_pairs: p must be >= 1");
    label_ = label.empty() ? ("lorentz_pairs" + std::to_string(dim)) : std::move(label);
  }
  int dim() const override { return dim_; }
  SpaceKind kind() const override { return SpaceKind::lorentz_pairs; }
  double p_value() const override { return p_; }
  bool absolute_by_construction() const override { return true; }

  double norm(const Vec& v) const override {
    double m = v.lpNorm<Eigen::Infinity>();
    if (m == 0.0) return 0.0;
    Vec z = v / m;
    return m * std::pow(half_power_sum(z), 1.0 / p_);
  }

  SupportPair support(const Vec& x) const override {
    double n = norm(x);
    Vec xhat = x / n;
    Vec g = gradient_at(xhat);
    return {xhat, g, std::abs(g.dot(xhat) - 1.0)};
  }

  std::shared_ptr<const SpaceImpl> section(const std::vector<int>& coords) const override {
    if (coords.size() == 1)
      return std::make_shared<LpImpl>(1, 2.0, SpaceKind::euclidean, "");
    // dim 3 -> any pair: the two-dimensional member of the family (the norm is
    // symmetric in the coordinates).
    return std::make_shared<LorentzPairsImpl>(2, p_, "");
  }

 private:
  // sum over terms of w^{p/2}, divided by two
  double half_power_sum(const Vec& z) const {
    if (dim_ == 3) {
      double w0 = z[0] * z[0] + z[1] * z[1];
      double w1 = z[0] * z[0] + z[2] * z[2];
      double w2 = z[1] * z[1] + z[2] * z[2];
      return (std::pow(w0, p_ / 2) + std::pow(w1, p_ / 2) + std::pow(w2, p_ / 2)) / 2.0;
    }
    double w = z[0] * z[0] + z[1] * z[1];
    return (std::pow(w, p_ / 2) + std::pow(std::abs(z[0]), p_) + std::pow(std::abs(z[1]), p_)) /
           2.0;
  }

  // gradient of the norm; 0-homogeneous, evaluated at a unit-sphere point
  Vec gradient_at(const Vec& z) const {
    double s = half_power_sum(z);  // = norm(z)^p / 1 with the 1/2 inside
    double outer = std::pow(s, 1.0 / p_ - 1.0) * 0.5;
    Vec g = Vec::Zero(dim_);
    auto add_pair_term = [&](int i, int j) {
      double w = z[i] * z[i] + z[j] * z[j];
      if (w <= 0.0) return;
      double c = std::pow(w, p_ / 2 - 1.0);
      g[i] += c * z[i];
      g[j] += c * z[j];
    };
    if (dim_ == 3) {
      add_pair_term(0, 1);
      add_pair_term(0, 2);
      add_pair_term(1, 2);
    } else {
      add_pair_term(0, 1);
      for (int i = 0; i < 2; ++i) {
        double a = std::abs(z[i]);
        if (a > 0.0) g[i] += std::pow(a, p_ - 1.0) * (z[i] > 0 ? 1.0 : -1.0);
      }
    }
    return outer * g;
  }

  int dim_;
  double p_;
};

// ---------------------------------------------------------------------------
// custom norm oracle (tests, ad-hoc experiments)

class CustomImpl : public SpaceImpl {
 public:
  CustomImpl(int dim, std::function<double(const Vec&)> fn, std::string label,
             std::function<Vec(const Vec&)> grad)
      : dim_(dim), fn_(std::move(fn)), grad_(std::move(grad)) {
    require(dim >= 1, "custom space: dimension must be positive");
    label_ = std::move(label);
  }
  int dim() const override { return dim_; }
  SpaceKind kind() const override { return SpaceKind::custom; }
  double norm(const Vec& x) const override { return fn_(x); }
  SupportPair support(const Vec& x) const override {
    if (!grad_) return SpaceImpl::support(x);
    double n = fn_(x);
    Vec xhat = x / n;
    Vec g = grad_(xhat);
    return {xhat, g, std::abs(g.dot(xhat) - 1.0)};
  }

 private:
  int dim_;
  std::function<double(const Vec&)> fn_;
  std::function<Vec(const Vec&)> grad_;
};

}  // namespace

NormSpace NormSpace::section(const std::vector<int>& coords) const {
  require(valid(), "empty NormSpace");
  require(!coords.empty(), "section: coords must be nonempty");
  std::vector<int> seen;
  for (int c : coords) {
    require(c >= 0 && c < dim(), "section: coordinate index out of range");
    require(std::find(seen.begin(), seen.end(), c) == seen.end(),
            "section: coordinate indices must be distinct");
    seen.push_back(c);
  }
  if (static_cast<int>(coords.size()) == dim()) {
    bool identity = true;
    for (int i = 0; i < dim(); ++i) identity &= (coords[i] == i);
    if (identity) return *this;
  }
  try {
    return NormSpace(impl_->section(coords));
  } catch (const unsupported_kind&) {
    return NormSpace(std::make_shared<SectionImpl>(impl_, coords));
  }
}

NormSpace lp_space(int dim, double p, std::string label) {
  if (std::isinf(p)) return linf_ball_space(dim, std::move(label));
  return NormSpace(std::make_shared<LpImpl>(dim, p, SpaceKind::lp, std::move(label)));
}

NormSpace euclidean_space(int dim, std::string label) {
  return NormSpace(std::make_shared<LpImpl>(dim, 2.0, SpaceKind::euclidean, std::move(label)));
}

NormSpace polytope_space(PolytopeBall ball, std::string label, SpaceKind kind) {
  return NormSpace(std::make_shared<PolytopeImpl>(std::move(ball), std::move(label), kind));
}

NormSpace l1_ball_space(int dim, std::string label) {
  require(dim >= 1 && dim <= 12, "l1_ball_space: dimension must be in [1,12]");
  PolytopeBall b = LpImpl::make_cross_polytope(std::max(dim, 1));
  if (label.empty()) label = "l1_" + std::to_string(dim);
  return polytope_space(std::move(b), std::move(label));
}

NormSpace linf_ball_space(int dim, std::string label) {
  require(dim >= 1 && dim <= 12, "linf_ball_space: dimension must be in [1,12]");
  PolytopeBall b;
  b.dim = dim;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    b.primal_vertices.push_back(v);
  }
  for (int i = 0; i < dim; ++i) {
    Vec e = Vec::Zero(dim);
    e[i] = 1.0;
    b.dual_vertices.push_back(e);
    b.dual_vertices.push_back(-e);
  }
  b.finalize();
  if (label.empty()) label = "linf_" + std::to_string(dim);
  return polytope_space(std::move(b), std::move(label));
}

NormSpace max_pair_euclidean_space(std::string label) {
  return NormSpace(std::make_shared<MaxPairEuclideanImpl>(std::move(label)));
}

namespace {

PolytopeBall block_l1_max_ball() {
  // ball of max{|x1|+|x2|, |x2|+|x3|+|x5|, |x3|+|x4|} on R^5
  PolytopeBall b;
  b.dim = 5;
  const int verts[16][5] = {
      {-1, 0, -1, 0, 0}, {-1, 0, 0, -1, -1}, {-1, 0, 0, -1, 1}, {-1, 0, 0, 1, -1},
      {-1, 0, 0, 1, 1},  {-1, 0, 1, 0, 0},   {0, -1, 0, -1, 0}, {0, -1, 0, 1, 0},
      {0, 1, 0, -1, 0},  {0, 1, 0, 1, 0},    {1, 0, -1, 0, 0},  {1, 0, 0, -1, -1},
      {1, 0, 0, -1, 1},  {1, 0, 0, 1, -1},   {1, 0, 0, 1, 1},   {1, 0, 1, 0, 0}};
  for (const auto& row : verts) {
    Vec v(5);
    for (int i = 0; i < 5; ++i) v[i] = row[i];
    b.primal_vertices.push_back(v);
  }
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0})
      b.dual_vertices.push_back((Vec(5) << s1, s2, 0, 0, 0).finished());
  for (double s2 : {1.0, -1.0})
    for (double s3 : {1.0, -1.0})
      for (double s5 : {1.0, -1.0})
        b.dual_vertices.push_back((Vec(5) << 0, s2, s3, 0, s5).finished());
  for (double s3 : {1.0, -1.0})
    for (double s4 : {1.0, -1.0})
      b.dual_vertices.push_back((Vec(5) << 0, 0, s3, s4, 0).finished());
  b.finalize();
  return b;
}

PolytopeBall block_l1_max_p4_ball() {
  // restriction to the first four coordinates: max{|x1|+|x2|, |x2|+|x3|, |x3|+|x4|}
  PolytopeBall b;
  b.dim = 4;
  const int verts[12][4] = {{-1, 0, -1, 0}, {-1, 0, 0, -1}, {-1, 0, 0, 1}, {-1, 0, 1, 0},
                            {0, -1, 0, -1}, {0, -1, 0, 1},  {0, 1, 0, -1}, {0, 1, 0, 1},
                            {1, 0, -1, 0},  {1, 0, 0, -1},  {1, 0, 0, 1},  {1, 0, 1, 0}};
  for (const auto& row : verts) {
    Vec v(4);
    for (int i = 0; i < 4; ++i) v[i] = row[i];
    b.primal_vertices.push_back(v);
  }
  for (double sa : {1.0, -1.0})
    for (double sb : {1.0, -1.0}) {
      b.dual_vertices.push_back((Vec(4) << sa, sb, 0, 0).finished());
      b.dual_vertices.push_back((Vec(4) << 0, sa, sb, 0).finished());
      b.dual_vertices.push_back((Vec(4) << 0, 0, sa, sb).finished());
    }
  b.finalize();
  return b;
}

}  // namespace

NormSpace block_l1_max_space(std::string label) {
  if (label.empty()) label = "block_l1_max";
  return polytope_space(block_l1_max_ball(), std::move(label), SpaceKind::block_l1_max);
}

NormSpace block_l1_max_p4_space(std::string label) {
  if (label.empty()) label = "block_l1_max_p4";
  return polytope_space(block_l1_max_p4_ball(), std::move(label), SpaceKind::block_l1_max_p4);
}

NormSpace lorentz_pairs_space(int dim, double p, std::string label) {
  return NormSpace(std::make_shared<LorentzPairsImpl>(dim, p, std::move(label)));
}

NormSpace custom_space(int dim, std::function<double(const Vec&)> norm_fn, std::string label,
                       std::function<Vec(const Vec&)> grad_fn) {
  return NormSpace(
      std::make_shared<CustomImpl>(dim, std::move(norm_fn), std::move(label), std::move(grad_fn)));
}

// ---------------------------------------------------------------------------
// absolute-norm validation

std::string ValidationReport::failing_axiom() const {
  if (!sign_invariance.pass) return "sign-flip invariance";
  if (!unit_vectors.pass) return "unit coordinate vectors";
  if (!monotonicity.pass) return "coordinatewise monotonicity";
  return "";
}

ValidationReport validate_absolute(const NormSpace& space, int trials, std::uint64_t seed) {
  require(trials >= 1, "validate_absolute: trials must be >= 1");
  const int d = space.dim();
  ValidationReport rep;
  auto rng = make_stream(seed, 0xAB5ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e[i] = 1.0;
    double viol = std::abs(space.norm(e) - 1.0);
    if (viol > rep.unit_vectors.worst) {
      rep.unit_vectors.worst = viol;
      rep.unit_vectors.witness_x = e;
    }
  }
  rep.unit_vectors.pass = rep.unit_vectors.worst <= 1e-12;

  for (int t = 0; t < trials; ++t) {
    Vec x = gaussian_vec(rng, d);
    double nx = space.norm(x);
    double scale = std::max(1.0, std::abs(nx));

    Vec y = x;
    for (int i = 0; i < d; ++i)
      if (unit(rng) < 0.5) y[i] = -y[i];
    double viol = std::abs(space.norm(y) - nx) / scale;
    if (viol > rep.sign_invariance.worst) {
      rep.sign_invariance.worst = viol;
      rep.sign_invariance.witness_x = x;
      rep.sign_invariance.witness_y = y;
    }

    Vec z = x;
    for (int i = 0; i < d; ++i) z[i] *= unit(rng);
    double mviol = (space.norm(z) - nx) / scale;
    if (mviol > rep.monotonicity.worst) {
      rep.monotonicity.worst = mviol;
      rep.monotonicity.witness_x = x;
      rep.monotonicity.witness_y = z;
    }
  }
  rep.sign_invariance.pass = rep.sign_invariance.worst <= 1e-12;
  rep.monotonicity.pass = rep.monotonicity.worst <= 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// CL certificate

ClResult is_cl_space(const PolytopeBall& ball) {
  require(ball.primal_vertices.size() >= 2, "is_cl_space: degenerate polytope");
  ClResult res;

  // Only genuinely extreme duals define maximal faces; redundant entries in a
  // user-supplied list would otherwise produce spurious sub-faces.
  std::vector<int> face_ids;
  {
    std::vector<Vec> duals = ball.dual_vertices;
    std::vector<Vec> ext = extreme_points(duals, 1e-9);
    for (size_t j = 0; j < duals.size(); ++j) {
      for (const auto& g : ext) {
        if (approx_eq(duals[j], g, 1e-9)) {
          face_ids.push_back(static_cast<int>(j));
          break;
        }
      }
    }
  }

  for (int j : face_ids) {
    const Vec& f = ball.dual_vertices[j];
    std::vector<Vec> gens;
    for (const auto& v : ball.primal_vertices) {
      if (std::abs(f.dot(v) - 1.0) <= ball.pairing_tolerance + 1e-12) {
        gens.push_back(v);
        gens.push_back(-v);
      }
    }
    ++res.faces_checked;
    for (size_t i = 0; i < ball.primal_vertices.size(); ++i) {
      if (!lp::point_in_hull(gens, ball.primal_vertices[i], 1e-9)) {
        res.certified_yes = false;
        res.violating_face = j;
        res.violating_vertex = static_cast<int>(i);
        return res;
      }
    }
  }
  res.certified_yes = true;
  return res;
}

// ---------------------------------------------------------------------------
// polytope machinery

std::vector<Vec> enumerate_vertices_from_facets(const std::vector<Vec>& facets, int dim,
                                                double tol) {
  require(!facets.empty(), "enumerate_vertices_from_facets: no facets");
  const int n = static_cast<int>(facets.size());
  require(dim >= 1 && n >= dim, "enumerate_vertices_from_facets: not enough facets");

  double combos = 1.0;
  for (int i = 0; i < dim; ++i) combos *= static_cast<double>(n - i) / (i + 1);
  if (combos > 2e6)
    throw unsupported_kind("enumerate_vertices_from_facets: too many facet combinations");

  std::vector<Vec> out;
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i) idx[i] = i;

  auto process = [&](const std::vector<int>& sel) {
    Mat A(dim, dim);
    for (int r = 0; r < dim; ++r) A.row(r) = facets[sel[r]].transpose();
    Eigen::FullPivLU<Mat> lu(A);
    lu.setThreshold(1e-10);
    if (lu.rank() < dim) return;
    Vec x = lu.solve(Vec::Ones(dim));
    for (const auto& f : facets) {
      if (std::abs(f.dot(x)) > 1.0 + tol) return;
    }
    for (const auto& v : out)
      if (approx_eq(v, x, 1e-8)) return;
    out.push_back(x);
  };

  // iterate all dim-subsets
  for (;;) {
    process(idx);
    int k = dim - 1;
    while (k >= 0 && idx[k] == n - dim + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Vec> extreme_points(std::vector<Vec> points, double tol) {
  std::vector<Vec> kept;
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<Vec> others;
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      bool dropped = false;
      for (size_t k = 0; k < i; ++k) {
        bool was_kept = false;
        for (const auto& kv : kept)
          if (approx_eq(kv, points[k], tol)) { was_kept = true; break; }
        if (!was_kept && j == k) { dropped = true; break; }
      }
      if (!dropped) others.push_back(points[j]);
    }
    if (others.empty() || !lp::point_in_hull(others, points[i], tol)) kept.push_back(points[i]);
  }
  return kept;
}

PolytopeBall section_ball(const PolytopeBall& ball, const std::vector<int>& coords) {
  const int d = static_cast<int>(coords.size());
  std::vector<Vec> restricted;
  for (const auto& f : ball.dual_vertices) {
    Vec g = restrict_coords(f, coords);
    if (g.lpNorm<Eigen::Infinity>() < 1e-12) continue;
    bool dup = false;
    for (const auto& h : restricted)
      if (approx_eq(h, g, 1e-12)) { dup = true; break; }
    if (!dup) restricted.push_back(g);
  }
  require(!restricted.empty(), "section_ball: section norm degenerates to zero");

  PolytopeBall out;
  out.dim = d;
  out.pairing_tolerance = ball.pairing_tolerance;
  out.primal_vertices = enumerate_vertices_from_facets(restricted, d);
  out.dual_vertices = extreme_points(restricted);
  out.finalize();
  return out;
}

}  // namespace numindex
