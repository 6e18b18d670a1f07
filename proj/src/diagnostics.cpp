#include "martlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace martlab {

namespace {

double node_norm(const VecPath& f, std::size_t k) {
  double s = 0.0;
  const auto v = f.at(k);
  for (int i = 0; i < f.dim; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

double node_dist(const VecPath& f, std::size_t u, std::size_t v) {
  double s = 0.0;
  const auto a = f.at(u);
  const auto b = f.at(v);
  for (int i = 0; i < f.dim; ++i) {
    const double d = b[i] - a[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::size_t last_node_leq(const TimeGrid& g, double t) {
  const double tol = 1e-9 * (1.0 + std::abs(t));
  std::size_t k = 0;
  while (k + 1 < g.size() && g[k + 1] <= t + tol) ++k;
  return k;
}

}  // namespace

double delta_u(const VecPath& f, double t, double r) {
  if (!(t > 0.0) || !(r > 0.0))
    throw std::invalid_argument("delta_u: t and r must be positive");
  const std::size_t top = last_node_leq(f.grid, std::min(t, f.grid.t_max()));
  double worst = 0.0;
  std::size_t lo = 0;
  for (std::size_t v = 0; v <= top; ++v) {
    while (f.grid[lo] < f.grid[v] - r) ++lo;
    for (std::size_t u = lo; u < v; ++u)
      worst = std::max(worst, node_dist(f, u, v));
  }
  return worst;
}

double max_jump(const VecPath& f, double t) {
  const std::size_t top = last_node_leq(f.grid, std::min(t, f.grid.t_max()));
  double worst = 0.0;
  for (std::size_t k = 1; k <= top; ++k)
    worst = std::max(worst, node_dist(f, k - 1, k));
  return worst;
}

double sup_norm(const VecPath& f, double t) {
  const std::size_t top = last_node_leq(f.grid, std::min(t, f.grid.t_max()));
  double worst = 0.0;
  for (std::size_t k = 0; k <= top; ++k)
    worst = std::max(worst, node_norm(f, k));
  return worst;
}

double metric_r(const VecPath& f, const VecPath& g) {
  if (!(f.grid == g.grid) || f.dim != g.dim)
    throw std::invalid_argument("metric_r: paths must share a grid");
  const int m_top = static_cast<int>(std::ceil(f.grid.t_max()));
  double total = 0.0;
  std::size_t k = 0;
  double sup = 0.0;
  for (int m = 1; m <= m_top; ++m) {
    const double cut = std::min(static_cast<double>(m), f.grid.t_max());
    const double tol = 1e-9 * (1.0 + cut);
    for (; k < f.grid.size() && f.grid[k] <= cut + tol; ++k) {
      double s = 0.0;
      const auto a = f.at(k);
      const auto b = g.at(k);
      for (int i = 0; i < f.dim; ++i) {
        const double d = b[i] - a[i];
        s += d * d;
      }
      sup = std::max(sup, std::sqrt(s));
    }
    total += std::ldexp(std::min(1.0, sup), -m);
  }
  return total;
}

ResultTable tightness_report(const std::vector<Ensemble>& ensembles,
                             const std::vector<double>& labels, double t,
                             const std::vector<double>& n_grid,
                             const std::vector<double>& r_grid,
                             const std::vector<double>& eps_grid) {
  if (ensembles.size() < 2)
    throw std::invalid_argument("tightness_report: need >= 2 ensembles");
  if (labels.size() != ensembles.size())
    throw std::invalid_argument("tightness_report: labels/ensembles mismatch");
  for (const auto& e : ensembles)
    if (e.size() < 100)
      throw std::invalid_argument(
          "tightness_report: ensembles too small for stable frequencies");

  ResultTable table;
  // sup criterion: freq(sup_{s<=t} |path| > N) per (family index, N)
  std::vector<std::vector<double>> sup_freq(ensembles.size());
  for (std::size_t e = 0; e < ensembles.size(); ++e) {
    std::vector<double> sups(ensembles[e].size());
    for (std::size_t i = 0; i < ensembles[e].size(); ++i)
      sups[i] = sup_norm(ensembles[e].paths[i], t);
    for (double big_n : n_grid) {
      std::size_t c = 0;
      for (double s : sups)
        if (s > big_n) ++c;
      const double freq = static_cast<double>(c) /
                          static_cast<double>(ensembles[e].size());
      sup_freq[e].push_back(freq);
      nlohmann::json p{{"n", labels[e]}, {"N", big_n}};
      table.add("sup_exceed", freq, 0.0, 1.0, true, p.dump());
    }
  }
  // modulus criterion: freq(delta_u > eps) per (family, r, eps)
  std::vector<std::vector<std::vector<double>>> mod_freq(
      ensembles.size(),
      std::vector<std::vector<double>>(r_grid.size()));
  for (std::size_t e = 0; e < ensembles.size(); ++e) {
    for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
      std::vector<double> mods(ensembles[e].size());
      for (std::size_t i = 0; i < ensembles[e].size(); ++i)
        mods[i] = delta_u(ensembles[e].paths[i], t, r_grid[ri]);
      for (double eps : eps_grid) {
        std::size_t c = 0;
        for (double m : mods)
          if (m > eps) ++c;
        const double freq = static_cast<double>(c) /
                            static_cast<double>(ensembles[e].size());
        mod_freq[e][ri].push_back(freq);
        nlohmann::json p{{"n", labels[e]}, {"r", r_grid[ri]}, {"eps", eps}};
        table.add("modulus_exceed", freq, 0.0, 1.0, true, p.dump());
      }
    }
  }
  // trend rows: worst-over-n frequency must not increase as N grows / r shrinks
  const double slack = 0.02;
  bool n_trend = true;
  for (std::size_t ni = 0; ni + 1 < n_grid.size(); ++ni) {
    double cur = 0.0, nxt = 0.0;
    for (std::size_t e = 0; e < ensembles.size(); ++e) {
      cur = std::max(cur, sup_freq[e][ni]);
      nxt = std::max(nxt, sup_freq[e][ni + 1]);
    }
    if (nxt > cur + slack) n_trend = false;
  }
  table.add("sup_exceed_trend_in_N", n_trend ? 1.0 : 0.0, 1.0, 1.0, n_trend);
  for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
    bool r_trend = true;
    for (std::size_t ri = 0; ri + 1 < r_grid.size(); ++ri) {
      double cur = 0.0, nxt = 0.0;
      for (std::size_t e = 0; e < ensembles.size(); ++e) {
        cur = std::max(cur, mod_freq[e][ri][ei]);
        nxt = std::max(nxt, mod_freq[e][ri + 1][ei]);
      }
      // r_grid is ordered decreasing; shrinking the window must not raise it
      if (nxt > cur + slack) r_trend = false;
    }
    nlohmann::json p{{"eps", eps_grid[ei]}};
    table.add("modulus_exceed_trend_in_r", r_trend ? 1.0 : 0.0, 1.0, 1.0,
              r_trend, p.dump());
  }
  return table;
}

ResultTable ui_statistic(const Ensemble& ensemble, double t,
                         const std::vector<double>& l_grid) {
  if (ensemble.size() < 100)
    throw std::invalid_argument("ui_statistic: ensemble too small");
  const std::size_t n = ensemble.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VecPath& y = ensemble.paths[i];
    const std::size_t k = last_node_leq(y.grid, t);
    double s = 0.0;
    const auto a = y.at(0);
    const auto b = y.at(k);
    for (int c = 0; c < y.dim; ++c) {
      const double d = b[c] - a[c];
      s += d * d;
    }
    q[i] = s;
  }
  ResultTable table;
  for (double l : l_grid) {
    double mean = 0.0;
    for (double v : q) mean += v > l ? v : 0.0;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : q) {
      const double x = (v > l ? v : 0.0) - mean;
      var += x * x;
    }
    var /= static_cast<double>(n) * static_cast<double>(n - 1);
    const double se = std::sqrt(var);
    nlohmann::json p{{"L", l}};
    table.add("ui_tail", mean, mean - 4.0 * se, mean + 4.0 * se, true,
              p.dump());
  }
  return table;
}

LenglartResult lenglart_check(const Ensemble& ensemble, double t, double l,
                              double a) {
  if (!(l > 0.0) || !(a > 0.0))
    throw std::invalid_argument("lenglart_check: l and a must be positive");
  if (ensemble.trk.size() != ensemble.size() || ensemble.size() == 0)
    throw std::invalid_argument("lenglart_check: ensemble must carry K paths");
  const std::size_t n = ensemble.size();
  std::size_t c_sup = 0, c_trk = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sup_norm(ensemble.paths[i], t) >= l) ++c_sup;
    const VecPath& trk = ensemble.trk[i];
    const std::size_t k = last_node_leq(trk.grid, t);
    if (trk.at(k)[0] >= a) ++c_trk;
  }
  LenglartResult r;
  r.lhs = static_cast<double>(c_sup) / static_cast<double>(n);
  r.rhs = a / (l * l) +
          static_cast<double>(c_trk) / static_cast<double>(n);
  r.stderr_lhs = std::sqrt(r.lhs * (1.0 - r.lhs) / static_cast<double>(n));
  r.holds = r.lhs <= r.rhs + 4.0 * r.stderr_lhs;
  return r;
}

}  // namespace martlab
