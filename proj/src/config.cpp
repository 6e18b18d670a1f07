#include "martlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "martlab/result_table.hpp"

namespace martlab {

namespace {

enum class FieldKind { Int, U64, Double, String, DoubleList };

struct FieldDesc {
  const char* section;
  const char* key;
  FieldKind kind;
  std::function<void*(ExperimentConfig&)> ptr;
};

const std::vector<FieldDesc>& fields() {
  static const std::vector<FieldDesc> f = {
      {"run", "experiment", FieldKind::String,
       [](ExperimentConfig& c) -> void* { return &c.experiment; }},
      {"run", "seed", FieldKind::U64,
       [](ExperimentConfig& c) -> void* { return &c.seed; }},
      {"run", "d", FieldKind::Int,
       [](ExperimentConfig& c) -> void* { return &c.d; }},
      {"run", "t_max", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.t_max; }},
      {"run", "steps", FieldKind::Int,
       [](ExperimentConfig& c) -> void* { return &c.steps; }},
      {"run", "ensemble_size", FieldKind::Int,
       [](ExperimentConfig& c) -> void* { return &c.ensemble_size; }},
      {"run", "replications", FieldKind::Int,
       [](ExperimentConfig& c) -> void* { return &c.replications; }},
      {"phi", "model", FieldKind::String,
       [](ExperimentConfig& c) -> void* { return &c.phi_model; }},
      {"phi", "scale", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_scale; }},
      {"phi", "v_lo", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_v_lo; }},
      {"phi", "v_hi", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_v_hi; }},
      {"phi", "kappa", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_kappa; }},
      {"phi", "eta", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_eta; }},
      {"phi", "rate", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_rate; }},
      {"phi", "alpha", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_alpha; }},
      {"phi", "beta", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_beta; }},
      {"phi", "gamma", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_gamma; }},
      {"phi", "corr", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.phi_corr; }},
      {"phi", "levels", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.phi_levels; }},
      {"lambda", "kind", FieldKind::String,
       [](ExperimentConfig& c) -> void* { return &c.lambda_kind; }},
      {"lambda", "power", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.lambda_power; }},
      {"lambda", "plateau_from", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.lambda_plateau_from; }},
      {"lambda", "plateau_to", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.lambda_plateau_to; }},
      {"y0", "law", FieldKind::String,
       [](ExperimentConfig& c) -> void* { return &c.y0_law; }},
      {"y0", "value", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.y0_value; }},
      {"y0", "mean", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.y0_mean; }},
      {"y0", "sd", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.y0_sd; }},
      {"y0", "a", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.y0_a; }},
      {"y0", "b", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.y0_b; }},
      {"y0", "p", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.y0_p; }},
      {"test", "probe_times", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.probe_times; }},
      {"test", "n_perm", FieldKind::Int,
       [](ExperimentConfig& c) -> void* { return &c.n_perm; }},
      {"test", "alpha", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.alpha; }},
      {"test", "alpha_reject", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.alpha_reject; }},
      {"test", "epsilon_ladder", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.epsilon_ladder; }},
      {"test", "depth_ladder", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.depth_ladder; }},
      {"test", "n_ladder", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.n_ladder; }},
      {"test", "eps_qv", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.eps_qv; }},
      {"test", "qv_threshold", FieldKind::Double,
       [](ExperimentConfig& c) -> void* { return &c.qv_threshold; }},
      {"test", "trunc_levels", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.trunc_levels; }},
      {"test", "big_n_grid", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.big_n_grid; }},
      {"test", "r_grid", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.r_grid; }},
      {"test", "l_grid", FieldKind::DoubleList,
       [](ExperimentConfig& c) -> void* { return &c.l_grid; }},
  };
  return f;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<double> parse_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw std::invalid_argument("config: empty list item in " + where);
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size())
      throw std::invalid_argument("config: bad number '" + item + "' in " +
                                  where);
  }
  if (out.empty())
    throw std::invalid_argument("config: empty list in " + where);
  return out;
}

std::string list_to_string(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

std::string value_to_string(const ExperimentConfig& c, const FieldDesc& f) {
  void* p = f.ptr(const_cast<ExperimentConfig&>(c));
  switch (f.kind) {
    case FieldKind::Int:
      return std::to_string(*static_cast<int*>(p));
    case FieldKind::U64:
      return std::to_string(*static_cast<std::uint64_t*>(p));
    case FieldKind::Double:
      return format_double(*static_cast<double*>(p));
    case FieldKind::String:
      return *static_cast<std::string*>(p);
    case FieldKind::DoubleList:
      return list_to_string(*static_cast<std::vector<double>*>(p));
  }
  return {};
}

void assign_value(ExperimentConfig& c, const FieldDesc& f,
                  const std::string& raw, const std::string& where) {
  void* p = f.ptr(c);
  try {
    switch (f.kind) {
      case FieldKind::Int: {
        std::size_t pos = 0;
        const long v = std::stol(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument("trailing junk");
        *static_cast<int*>(p) = static_cast<int>(v);
        break;
      }
      case FieldKind::U64: {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument("trailing junk");
        *static_cast<std::uint64_t*>(p) = v;
        break;
      }
      case FieldKind::Double: {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument("trailing junk");
        *static_cast<double*>(p) = v;
        break;
      }
      case FieldKind::String:
        *static_cast<std::string*>(p) = raw;
        break;
      case FieldKind::DoubleList:
        *static_cast<std::vector<double>*>(p) = parse_list(raw, where);
        break;
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("config: bad value '" + raw + "' for " + where);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("config: value out of range for " + where);
  }
}

void require_integral_list(const std::vector<double>& v, const char* name,
                           double lo, double hi) {
  for (double x : v) {
    if (x != std::floor(x) || x < lo || x > hi)
      throw std::invalid_argument(std::string("config: ") + name +
                                  " entries must be integers in range");
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults_for(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "levy-check") {
    c.lambda_kind = "power";
    c.lambda_power = 2.0;
    c.phi_model = "constant";
    c.steps = 4096;
    c.ensemble_size = 1000;
    c.replications = 100;
  } else if (experiment == "thm1-invariance") {
    c.d = 2;
    c.phi_model = "regime-switch";
    c.lambda_kind = "plateau";
    c.steps = 1024;
    c.ensemble_size = 1000;
  } else if (experiment == "lemma4-convergence") {
    c.phi_model = "scalar-diffusion";
    c.phi_v_lo = 0.5;
    c.phi_v_hi = 2.0;
    c.ensemble_size = 500;
  } else if (experiment == "fclt") {
    c.phi_model = "scalar-diffusion";
    c.phi_v_lo = 0.5;
    c.phi_v_hi = 2.0;
    c.steps = 4096;
    c.ensemble_size = 1000;
  } else if (experiment == "rn-roundtrip") {
    c.phi_model = "driver-functional";
    c.phi_alpha = 0.0;
    c.phi_beta = 0.0;
    c.phi_gamma = 1.5;
    c.phi_v_lo = 0.5;
    c.phi_v_hi = 2.0;
    c.steps = 4096;
    c.ensemble_size = 1;
  } else if (experiment == "tightness") {
    c.phi_model = "scalar-diffusion";
    c.ensemble_size = 200;
    c.n_ladder = {64, 128, 256, 512};
  } else {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }
  return c;
}

void ExperimentConfig::apply_text(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::invalid_argument("config: malformed section at " + where);
      section = trim(t.substr(1, t.size() - 2));
      bool known = false;
      for (const auto& f : fields())
        if (section == f.section) known = true;
      if (!known)
        throw std::invalid_argument("config: unknown section [" + section +
                                    "] at " + where);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at " + where);
    const std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    // strip trailing comment
    const auto hash_pos = value.find('#');
    if (hash_pos != std::string::npos) value = trim(value.substr(0, hash_pos));
    const FieldDesc* match = nullptr;
    for (const auto& f : fields())
      if (section == f.section && key == f.key) match = &f;
    if (!match)
      throw std::invalid_argument("config: unknown key '" + section + "." +
                                  key + "' at " + where);
    assign_value(*this, *match, value,
                 section + "." + key + " (" + where + ")");
  }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path,
                                             const std::string& experiment) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  ExperimentConfig c = defaults_for(experiment);
  c.apply_text(buf.str());
  if (c.experiment != experiment)
    throw std::invalid_argument("config: file is for experiment '" +
                                c.experiment + "', not '" + experiment + "'");
  return c;
}

std::string ExperimentConfig::to_file_string() const {
  std::string out;
  std::string cur;
  for (const auto& f : fields()) {
    if (cur != f.section) {
      if (!out.empty()) out += '\n';
      cur = f.section;
      out += "[" + cur + "]\n";
    }
    out += std::string(f.key) + " = " + value_to_string(*this, f) + "\n";
  }
  return out;
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  for (const auto& f : fields())
    kv[std::string(f.section) + "." + f.key] = value_to_string(*this, f);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::string ExperimentConfig::hash() const {
  // FNV-1a 64
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) {
    throw std::invalid_argument("config: " + m);
  };
  const char* experiments[] = {"levy-check",   "thm1-invariance",
                               "lemma4-convergence", "fclt",
                               "rn-roundtrip", "tightness"};
  if (std::find(std::begin(experiments), std::end(experiments), experiment) ==
      std::end(experiments))
    fail("unknown experiment '" + experiment + "'");
  if (d < 1 || d > 8) fail("d must be in [1,8]");
  if (!(t_max > 0.0)) fail("t_max must be positive");
  if (steps < 2 || steps > (1 << 20)) fail("steps out of range");
  if (ensemble_size < 1) fail("ensemble_size must be >= 1");
  if (replications < 1) fail("replications must be >= 1");
  if (phi_model != "constant" && phi_model != "scalar-diffusion" &&
      phi_model != "regime-switch" && phi_model != "driver-functional")
    fail("unknown phi model '" + phi_model + "'");
  if (!(phi_scale >= 0.0)) fail("phi.scale must be >= 0");
  if (phi_v_lo < 0.0 || phi_v_hi < phi_v_lo) fail("phi v range invalid");
  if (phi_kappa < 0.0 || phi_eta < 0.0 || phi_rate < 0.0)
    fail("phi dynamics parameters must be >= 0");
  if (phi_corr < 0.0 || phi_corr >= 1.0) fail("phi.corr must be in [0,1)");
  for (double l : phi_levels)
    if (!(l >= 0.0)) fail("phi.levels must be >= 0");
  if (lambda_kind != "identity" && lambda_kind != "power" &&
      lambda_kind != "plateau")
    fail("unknown lambda kind '" + lambda_kind + "'");
  if (lambda_kind == "power" && !(lambda_power > 0.0))
    fail("lambda.power must be positive");
  if (lambda_kind == "plateau" &&
      !(0.0 < lambda_plateau_from && lambda_plateau_from < lambda_plateau_to &&
        lambda_plateau_to < t_max))
    fail("lambda plateau must satisfy 0 < from < to < t_max");
  if (y0_law != "constant" && y0_law != "gaussian" && y0_law != "two-point")
    fail("unknown y0 law '" + y0_law + "'");
  if (y0_sd < 0.0) fail("y0.sd must be >= 0");
  if (y0_p < 0.0 || y0_p > 1.0) fail("y0.p must be in [0,1]");
  if (probe_times.empty()) fail("probe_times must be nonempty");
  for (double t : probe_times)
    if (!(t > 0.0) || t > t_max + 1e-12) fail("probe_times must lie in (0, t_max]");
  if (!std::is_sorted(probe_times.begin(), probe_times.end()))
    fail("probe_times must be increasing");
  if (n_perm < 199) fail("n_perm must be >= 199");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must be in (0,1)");
  if (!(alpha_reject > 0.0 && alpha_reject < alpha))
    fail("alpha_reject must be in (0, alpha)");
  if (alpha_reject < 1.0 / (n_perm + 1.0) - 1e-12)
    fail("n_perm too small to resolve alpha_reject");
  for (double e : epsilon_ladder)
    if (!(e > 0.0)) fail("epsilon_ladder must be positive");
  if (!std::is_sorted(epsilon_ladder.rbegin(), epsilon_ladder.rend()))
    fail("epsilon_ladder must be decreasing");
  require_integral_list(depth_ladder, "depth_ladder", 2, 14);
  if (!std::is_sorted(depth_ladder.begin(), depth_ladder.end()))
    fail("depth_ladder must be increasing");
  require_integral_list(n_ladder, "n_ladder", 2, 1 << 20);
  if (!std::is_sorted(n_ladder.begin(), n_ladder.end()))
    fail("n_ladder must be increasing");
  if (!(eps_qv > 0.0)) fail("eps_qv must be positive");
  if (!(qv_threshold > 0.0 && qv_threshold < 1.0))
    fail("qv_threshold must be in (0,1)");
  for (double l : trunc_levels)
    if (!(l > 0.0)) fail("trunc_levels must be positive");
  if (!std::is_sorted(trunc_levels.begin(), trunc_levels.end()))
    fail("trunc_levels must be increasing");
  for (double v : big_n_grid)
    if (!(v > 0.0)) fail("big_n_grid must be positive");
  if (!std::is_sorted(big_n_grid.begin(), big_n_grid.end()))
    fail("big_n_grid must be increasing");
  for (double v : r_grid)
    if (!(v > 0.0)) fail("r_grid must be positive");
  if (!std::is_sorted(r_grid.rbegin(), r_grid.rend()))
    fail("r_grid must be decreasing");
  for (double v : l_grid)
    if (!(v >= 0.0)) fail("l_grid must be >= 0");
  if (!std::is_sorted(l_grid.begin(), l_grid.end()))
    fail("l_grid must be increasing");
  if (threads < 0) fail("threads must be >= 0");
}

}  // namespace martlab
