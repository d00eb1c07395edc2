#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "qgd/discord.hpp"
#include "qgd/errors.hpp"
#include "qgd/linalg.hpp"
#include "qgd/lu.hpp"
#include "qgd/qstate.hpp"
#include "qgd/rng.hpp"
#include "qgd/separability.hpp"

namespace qgd {

// Convex mixture of product states sum_k w_k rho_ak (x) rho_bk, stored by
// local Bloch vectors. Separable by construction.
struct ProductTerm {
  double weight = 0.0;
  Vec3 a{};
  Vec3 b{};
};

struct ProductEnsemble {
  std::vector<ProductTerm> terms;

  BlochForm bloch() const {
    BlochForm f;
    for (const auto& t : terms) {
      f.x = add(f.x, scaled(t.a, t.weight));
      f.y = add(f.y, scaled(t.b, t.weight));
      f.T = add(f.T, scaled(outer(t.a, t.b), t.weight));
    }
    return f;
  }

  DensityMatrix state() const { return from_bloch(bloch()); }
};

inline ProductEnsemble random_product_ensemble(std::uint64_t seed, int k = 6) {
  if (k < 1)
    throw ParamOutOfRange(detail::with_magnitude(
        "ensemble needs at least one term", k));
  Rng rng(seed);
  ProductEnsemble e;
  e.terms.resize(static_cast<std::size_t>(k));
  const auto w = rng.simplex(k);
  for (int i = 0; i < k; ++i) {
    e.terms[static_cast<std::size_t>(i)] =
        ProductTerm{w[static_cast<std::size_t>(i)], rng.unit_vector(),
                    rng.unit_vector()};
  }
  return e;
}

// Two pure product terms realizing the extremal state rho*: the image of
// sigma's eigenbasis decomposition pulled back through the witness.
inline ProductEnsemble rho_star_ensemble() {
  const Mat2c u = adjoint(rho_sigma_witness_u());
  const Mat2c v = adjoint(rho_sigma_witness_v());
  const auto ru = bloch_rotation(u);
  const auto rv = bloch_rotation(v);
  const Vec3 z{0.0, 0.0, 1.0}, mz{0.0, 0.0, -1.0}, px{1.0, 0.0, 0.0};
  ProductEnsemble e;
  e.terms.push_back(ProductTerm{0.5, matvec(ru, z), matvec(rv, z)});
  e.terms.push_back(ProductTerm{0.5, matvec(ru, px), matvec(rv, mz)});
  return e;
}

// Hilbert-Schmidt-random PPT state: Ginibre rho = GG^dag / tr, rejected until
// the partial transpose is positive (acceptance ~ 0.24).
inline DensityMatrix random_ppt_state(std::uint64_t seed,
                                      int max_attempts = 1000000) {
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Mat4c g{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = rng.cgauss();
    Mat4c rho = matmul(g, adjoint(g));
    const double tr = trace(rho).real();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rho[i][j] /= tr;
    DensityMatrix dm = DensityMatrix::from_matrix(rho);
    if (is_separable(dm)) return dm;
  }
  throw SamplerExhausted("no PPT state accepted within the attempt budget");
}

enum class SearchMethod { random_sample, refined };

inline const char* to_string(SearchMethod m) {
  return m == SearchMethod::random_sample ? "random" : "refined";
}

// One search outcome. discord and gap come from the same G spectrum, so
// gap == 1/2 - 2*discord holds exactly as stored.
struct SearchRecord {
  DensityMatrix state;
  double discord = 0.0;
  double gap = 0.0;
  std::uint64_t seed = 0;
  SearchMethod method = SearchMethod::random_sample;
  int iterations = 0;
};

namespace detail {

inline double ensemble_discord(const ProductEnsemble& e) {
  const BlochForm b = e.bloch();
  const GSpectrum s = eig3_sym(g_matrix(b));
  return 0.5 * (s.lambdas[1] + s.lambdas[2]);
}

inline SearchRecord make_record(const ProductEnsemble& e, std::uint64_t seed,
                                SearchMethod method, int iterations) {
  const BlochForm b = e.bloch();
  const GSpectrum s = eig3_sym(g_matrix(b));
  const double two_d = s.lambdas[1] + s.lambdas[2];
  SearchRecord r{e.state(), 0.5 * two_d, 0.5 - two_d, seed, method,
                 iterations};
  return r;
}

}  // namespace detail

struct RefineResult {
  ProductEnsemble ensemble;
  SearchRecord record;
};

// Deterministic coordinate ascent on the ensemble parameters (raw weights +
// spherical angles), maximizing discord inside the separable set. Accepts
// only strict improvements; the step halves when a full cycle stalls.
inline RefineResult refine(const ProductEnsemble& start, int max_iters = 500,
                           double step0 = 0.1, std::uint64_t seed_label = 0) {
  const int k = static_cast<int>(start.terms.size());
  if (k < 1) throw ParamOutOfRange("cannot refine an empty ensemble");

  // pack: per term raw weight (>= 0, normalized on materialization) and two
  // spherical angles per local vector
  std::vector<double> par;
  par.reserve(static_cast<std::size_t>(5 * k));
  for (const auto& t : start.terms) {
    par.push_back(std::max(0.0, t.weight));
    par.push_back(std::acos(std::clamp(t.a[2], -1.0, 1.0)));
    par.push_back(std::atan2(t.a[1], t.a[0]));
    par.push_back(std::acos(std::clamp(t.b[2], -1.0, 1.0)));
    par.push_back(std::atan2(t.b[1], t.b[0]));
  }

  const auto materialize = [k](const std::vector<double>& p) {
    ProductEnsemble e;
    e.terms.resize(static_cast<std::size_t>(k));
    double wsum = 0.0;
    for (int i = 0; i < k; ++i) wsum += p[static_cast<std::size_t>(5 * i)];
    for (int i = 0; i < k; ++i) {
      const std::size_t o = static_cast<std::size_t>(5 * i);
      auto& t = e.terms[static_cast<std::size_t>(i)];
      t.weight = (wsum > 0.0) ? p[o] / wsum : 1.0 / k;
      const double ta = p[o + 1], pa = p[o + 2];
      const double tb = p[o + 3], pb = p[o + 4];
      t.a = {std::sin(ta) * std::cos(pa), std::sin(ta) * std::sin(pa),
             std::cos(ta)};
      t.b = {std::sin(tb) * std::cos(pb), std::sin(tb) * std::sin(pb),
             std::cos(tb)};
    }
    return e;
  };

  const auto eval = [&](const std::vector<double>& p) {
    return detail::ensemble_discord(materialize(p));
  };

  double best = eval(par);
  double step = step0;
  int cycles = 0;
  while (cycles < max_iters && step >= 1e-9) {
    ++cycles;
    bool improved = false;
    for (std::size_t c = 0; c < par.size(); ++c) {
      for (double sgn : {1.0, -1.0}) {
        const double old = par[c];
        double cand = old + sgn * step;
        if (c % 5 == 0 && cand < 0.0) cand = 0.0;
        if (cand == old) continue;
        par[c] = cand;
        const double v = eval(par);
        if (v > best) {
          best = v;
          improved = true;
          break;
        }
        par[c] = old;
      }
    }
    if (!improved) step *= 0.5;
  }

  RefineResult res{materialize(par),
                   detail::make_record(materialize(par), seed_label,
                                       SearchMethod::refined, cycles)};
  return res;
}

// Residuals of the interior stationarity conditions at the optimal axis:
// r_x = ||x - (e.x)e||, r_T = ||T - e e^T T||_F. Their squares sum to twice
// the discord for every e in the top eigenspace, so on a degenerate
// eigenspace the reported pair is taken at the axis minimizing
// max(r_x, r_T) (the most balanced representative).
struct StationarityResidual {
  double r_x = 0.0;
  double r_T = 0.0;
};

namespace detail {

inline StationarityResidual residual_at(const BlochForm& b, const Vec3& e) {
  const Vec3 dx = sub(b.x, scaled(e, dot(e, b.x)));
  const Vec3 et = matvec(transpose(b.T), e);
  const Mat3 dT = sub(b.T, outer(e, et));
  return StationarityResidual{norm(dx), std::sqrt(frob_sq(dT))};
}

}  // namespace detail

inline StationarityResidual stationarity_residual(const BlochForm& b) {
  const GSpectrum s = eig3_sym(g_matrix(b));
  const double scale = std::max(1.0, std::abs(s.lambdas[0]));
  int deg = 1;
  while (deg < 3 && s.lambdas[0] - s.lambdas[deg] <= 1e-10 * scale) ++deg;

  if (deg == 1) return detail::residual_at(b, s.vectors[0]);

  if (deg == 2) {
    // 1D family e(theta) = cos(theta) u + sin(theta) v; both residuals are
    // smooth trigonometric polynomials, so a dense scan plus local halving
    // pins the min-max axis
    const Vec3& u = s.vectors[0];
    const Vec3& v = s.vectors[1];
    const auto val = [&](double th) {
      const Vec3 e = add(scaled(u, std::cos(th)), scaled(v, std::sin(th)));
      const auto r = detail::residual_at(b, normalized(e));
      return std::max(r.r_x, r.r_T);
    };
    const int grid = 4096;
    double best_th = 0.0, best = val(0.0);
    for (int i = 1; i < grid; ++i) {
      const double th = std::numbers::pi * i / grid;
      const double f = val(th);
      if (f < best) {
        best = f;
        best_th = th;
      }
    }
    double step = std::numbers::pi / grid;
    while (step > 1e-13) {
      bool moved = false;
      for (double sgn : {1.0, -1.0}) {
        const double cand = best_th + sgn * step;
        const double f = val(cand);
        if (f < best) {
          best = f;
          best_th = cand;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    const Vec3 e =
        add(scaled(u, std::cos(best_th)), scaled(v, std::sin(best_th)));
    return detail::residual_at(b, normalized(e));
  }

  // deg == 3: G = lambda I, so r_x^2 = ||x||^2 - t and
  // r_T^2 = ||T||^2 - lambda + t with t = (e.x)^2 sweeping [0, ||x||^2];
  // the min-max sits at the crossing, clamped into the admissible range.
  const double x2 = norm_sq(b.x);
  const double T2 = frob_sq(b.T);
  const double lam = s.lambdas[0];
  double t = std::clamp(0.5 * (x2 + lam - T2), 0.0, x2);
  Vec3 e;
  if (x2 < 1e-24) {
    e = Vec3{1.0, 0.0, 0.0};
  } else {
    const Vec3 xhat = normalized(b.x);
    // any unit vector with (e.xhat)^2 = t/x2; rotate from xhat toward an
    // orthogonal direction
    Vec3 perp{1.0, 0.0, 0.0};
    if (std::abs(xhat[0]) > 0.9) perp = Vec3{0.0, 1.0, 0.0};
    Vec3 o = sub(perp, scaled(xhat, dot(perp, xhat)));
    o = normalized(o);
    const double ct = std::sqrt(std::clamp(t / x2, 0.0, 1.0));
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    e = add(scaled(xhat, ct), scaled(o, st));
  }
  return detail::residual_at(b, e);
}

inline StationarityResidual stationarity_residual(const DensityMatrix& rho) {
  return stationarity_residual(to_bloch(rho));
}

// Faithful sweep of the lemma objective a^2 + b^2 + c^2 - max{a^2,b^2,c^2}
// over the whole simplex {a,b,c >= 0, a+b+c <= 1} on a denominator-n grid.
// Converges to the true maximum 1/4 (attained at the boundary point
// (0, 1/2, 1/2)), not to the interior stationary value 2/9.
inline double prop2_simplex_oracle(int n) {
  if (n < 1)
    throw DomainError(detail::with_magnitude(
        "simplex grid denominator must be >= 1", n));
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double a2 = static_cast<double>(i) * i / (static_cast<double>(n) * n);
    for (int j = 0; i + j <= n; ++j) {
      const double b2 =
          static_cast<double>(j) * j / (static_cast<double>(n) * n);
      for (int l = 0; i + j + l <= n; ++l) {
        const double c2 =
            static_cast<double>(l) * l / (static_cast<double>(n) * n);
        const double f = a2 + b2 + c2 - std::max({a2, b2, c2});
        if (f > best) best = f;
      }
    }
  }
  return best;
}

struct CampaignOptions {
  int terms = 6;
  int refine_iters = 500;
  double step0 = 0.1;
  int workers = 0;  // 0: hardware concurrency
};

// Random-restart separable search: one ensemble per seed in
// [seed_begin, seed_begin + seed_count), optionally refined. Results sorted
// by discord (desc), ties by seed, so the output is independent of worker
// scheduling.
inline std::vector<SearchRecord> campaign(std::uint64_t seed_begin,
                                          std::uint64_t seed_count,
                                          const CampaignOptions& opt = {}) {
  std::vector<SearchRecord> out;
  out.reserve(static_cast<std::size_t>(seed_count));
  int workers = opt.workers;
  if (workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    workers = hc ? static_cast<int>(hc) : 1;
  }
  workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers),
                              std::max<std::uint64_t>(seed_count, 1)));

  std::vector<std::vector<SearchRecord>> partial(
      static_cast<std::size_t>(workers));
  const auto run = [&](int w) {
    auto& bucket = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t s = seed_begin + static_cast<std::uint64_t>(w);
         s < seed_begin + seed_count;
         s += static_cast<std::uint64_t>(workers)) {
      ProductEnsemble e = random_product_ensemble(s, opt.terms);
      if (opt.refine_iters > 0) {
        bucket.push_back(
            refine(e, opt.refine_iters, opt.step0, s).record);
      } else {
        bucket.push_back(
            detail::make_record(e, s, SearchMethod::random_sample, 0));
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  for (auto& bucket : partial)
    for (auto& r : bucket) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(),
            [](const SearchRecord& l, const SearchRecord& r) {
              if (l.discord != r.discord) return l.discord > r.discord;
              return l.seed < r.seed;
            });
  return out;
}

// Records whose conjecture margin is below -threshold; separable states here
// would falsify the discord-1/4 bound.
inline std::vector<SearchRecord> counterexample_candidates(
    const std::vector<SearchRecord>& records, double threshold = 1e-6) {
  std::vector<SearchRecord> bad;
  for (const auto& r : records)
    if (r.gap < -threshold) bad.push_back(r);
  return bad;
}

}  // namespace qgd
