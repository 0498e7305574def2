#include "bosefold/scenario.hpp"

#include "bosefold/errors.hpp"
#include "bosefold/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bosefold::cli {

namespace {

const std::map<std::string, std::set<std::string>>& grammar() {
  static const std::map<std::string, std::set<std::string>> g{
      {"scenario", {"kind", "bosons"}},
      {"model",
       {"n_sites", "base", "j1", "custom_matrix", "trap_omega", "trap_center", "barriers",
        "perturbation_epsilon", "perturbation_beta"}},
      {"quench", {"barriers"}},
      {"time", {"t_start", "t_end", "steps", "snapshots"}},
      {"sweep", {"mu_over_n", "mu_over_n_range", "evolution_time"}},
      {"transfer", {"epsilon", "beta"}},
      {"numerics", {"local_dim", "chi_max", "trunc_tol"}},
      {"output", {"occupations", "sweep", "schmidt", "transfer", "snapshots"}},
  };
  return g;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Document {
 public:
  Document(std::string origin, std::map<std::string, std::map<std::string, Entry>> entries)
      : origin_(std::move(origin)), entries_(std::move(entries)) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = entries_.find(section);
    if (s == entries_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  bool has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

  int line(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    return e ? e->line : 0;
  }

  [[noreturn]] void fail(ConfigError::Kind kind, int line, const std::string& msg) const {
    throw ConfigError(kind, origin_, line, msg);
  }

  [[noreturn]] void constraint(const std::string& section, const std::string& key,
                               const std::string& msg) const {
    fail(ConfigError::Kind::Constraint, line(section, key), msg);
  }

  template <class F>
  auto convert(const std::string& section, const std::string& key, F&& f) const {
    const Entry* e = find(section, key);
    try {
      return f(e->value);
    } catch (const InvalidInput& ex) {
      fail(ConfigError::Kind::Syntax, e->line, section + "." + key + ": " + ex.what());
    }
  }

  double real(const std::string& section, const std::string& key, double fallback) const {
    if (!has(section, key)) return fallback;
    return convert(section, key, [](const std::string& v) { return parse_double(v); });
  }

  int integer(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    return convert(section, key, [](const std::string& v) { return parse_int(v); });
  }

  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e ? e->value : fallback;
  }

  std::vector<double> reals(const std::string& section, const std::string& key) const {
    if (!has(section, key)) return {};
    return convert(section, key, [](const std::string& v) {
      std::vector<double> out;
      for (const auto& item : split(v, ',')) out.push_back(parse_double(item));
      return out;
    });
  }

  std::vector<Barrier> barriers(const std::string& section, const std::string& key) const {
    if (!has(section, key)) return {};
    return convert(section, key, [](const std::string& v) {
      std::vector<Barrier> out;
      for (const auto& item : split(v, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw InvalidInput("barrier '" + item + "' is not 'first-last:height'");
        const std::string range = trim(item.substr(0, colon));
        Barrier b;
        b.height = parse_double(trim(item.substr(colon + 1)));
        const auto dash = range.find('-');
        if (dash == std::string::npos) {
          b.first = b.last = parse_int(range);
        } else {
          b.first = parse_int(trim(range.substr(0, dash)));
          b.last = parse_int(trim(range.substr(dash + 1)));
        }
        out.push_back(b);
      }
      return out;
    });
  }

 private:
  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> entries_;
};

Document lex(const std::string& text, const std::string& origin) {
  std::map<std::string, std::map<std::string, Entry>> entries;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  auto fail = [&](ConfigError::Kind kind, const std::string& msg) {
    throw ConfigError(kind, origin, line_no, msg);
  };
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ConfigError::Kind::Syntax, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!grammar().count(section)) fail(ConfigError::Kind::UnknownKey, "unknown section [" + section + "]");
      entries[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ConfigError::Kind::Syntax, "expected 'key = value'");
    if (section.empty()) fail(ConfigError::Kind::Syntax, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ConfigError::Kind::Syntax, "empty key");
    if (value.empty()) fail(ConfigError::Kind::Syntax, "empty value for '" + key + "'");
    if (!grammar().at(section).count(key))
      fail(ConfigError::Kind::UnknownKey, "unknown key '" + key + "' in section [" + section + "]");
    if (entries[section].count(key)) fail(ConfigError::Kind::Syntax, "duplicate key '" + key + "'");
    entries[section][key] = Entry{value, line_no};
  }
  return Document(origin, std::move(entries));
}

const std::map<std::string, ScenarioKind>& kinds() {
  static const std::map<std::string, ScenarioKind> k{
      {"quench_release", ScenarioKind::QuenchRelease},
      {"quench_raise", ScenarioKind::QuenchRaise},
      {"collision_sweep", ScenarioKind::CollisionSweep},
      {"ground_state", ScenarioKind::GroundState},
      {"transfer_report", ScenarioKind::TransferReport},
  };
  return k;
}

bool is_quench(ScenarioKind k) { return k == ScenarioKind::QuenchRelease || k == ScenarioKind::QuenchRaise; }

void check_spec(const ScenarioSpec& spec, const Document* doc) {
  auto fail = [&](const std::string& section, const std::string& key, const std::string& msg) {
    if (doc) doc->constraint(section, key, msg);
    throw ConfigError(ConfigError::Kind::Constraint, "<spec>", 0, msg);
  };
  try {
    bosefold::validate(spec.model);
  } catch (const InvalidInput& e) {
    fail("model", "n_sites", e.what());
  }
  const int n = spec.model.n_sites;
  if (spec.kind != ScenarioKind::TransferReport && spec.bosons < 1)
    fail("scenario", "bosons", "bosons must be >= 1");
  const int d = spec.numerics.local_dim > 0 ? spec.numerics.local_dim : spec.bosons + 1;
  if (spec.bosons >= d)
    fail("numerics", "local_dim",
         "bosons = " + std::to_string(spec.bosons) + " requires local_dim > " +
             std::to_string(spec.bosons) + " (got local_dim = " + std::to_string(d) + ")");
  if (spec.numerics.local_dim < 0) fail("numerics", "local_dim", "local_dim must be >= 0");
  if (spec.numerics.chi_max < 0) fail("numerics", "chi_max", "chi_max must be >= 0");
  if (!(spec.numerics.trunc_tol >= 0.0) || !std::isfinite(spec.numerics.trunc_tol))
    fail("numerics", "trunc_tol", "trunc_tol must be finite and >= 0");
  if (spec.time.steps < 1) fail("time", "steps", "steps must be >= 1");
  if (!std::isfinite(spec.time.t_start) || !std::isfinite(spec.time.t_end))
    fail("time", "t_end", "time bounds must be finite");
  for (double t : spec.snapshots)
    if (!std::isfinite(t)) fail("time", "snapshots", "snapshot times must be finite");
  for (const auto& b : spec.quench_barriers)
    if (b.first < 1 || b.last > n || b.first > b.last || !std::isfinite(b.height))
      fail("quench", "barriers", "quench barrier range outside chain 1-" + std::to_string(n));
  if (is_quench(spec.kind) && spec.quench_barriers.empty())
    fail("quench", "barriers", "quench scenarios need [quench] barriers");
  if (spec.kind == ScenarioKind::CollisionSweep) {
    if (n % 2 != 0) fail("model", "n_sites", "collision_sweep needs an even number of sites");
    if (spec.bosons % 2 != 0) fail("scenario", "bosons", "collision_sweep needs an even boson number");
    if (spec.mu_over_n.empty()) fail("sweep", "mu_over_n", "collision_sweep needs a mu_over_n grid");
    for (double mu : spec.mu_over_n)
      if (!std::isfinite(mu)) fail("sweep", "mu_over_n", "mu values must be finite");
    if (!std::isfinite(spec.evolution_time)) fail("sweep", "evolution_time", "evolution_time must be finite");
  }
  if (spec.kind == ScenarioKind::TransferReport) {
    if (!std::isfinite(spec.epsilon)) fail("transfer", "epsilon", "epsilon must be finite");
    if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta)) fail("transfer", "beta", "beta must be finite and >= 0");
  }
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  for (const auto& [name, k] : kinds())
    if (k == kind) return name.c_str();
  return "?";
}

ConfigError::ConfigError(Kind kind, const std::string& where, int line, const std::string& message)
    : std::runtime_error(where + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         (kind == Kind::Syntax       ? "syntax error: "
                          : kind == Kind::UnknownKey ? "unknown key: "
                                                     : "constraint violation: ") +
                         message),
      kind_(kind),
      line_(line) {}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(steps + 1);
  for (int i = 0; i <= steps; ++i) out[i] = t_start + (t_end - t_start) * i / steps;
  return out;
}

bool ScenarioSpec::operator==(const ScenarioSpec& o) const {
  return kind == o.kind && model == o.model && quench_barriers == o.quench_barriers &&
         bosons == o.bosons && time == o.time && snapshots == o.snapshots && mu_over_n == o.mu_over_n &&
         evolution_time == o.evolution_time && epsilon == o.epsilon && beta == o.beta &&
         numerics.local_dim == o.numerics.local_dim && numerics.chi_max == o.numerics.chi_max &&
         numerics.trunc_tol == o.numerics.trunc_tol && outputs == o.outputs;
}

ModelSpec pre_quench_model(const ScenarioSpec& spec) {
  ModelSpec m = spec.model;
  if (spec.kind == ScenarioKind::QuenchRelease)
    m.barriers.insert(m.barriers.end(), spec.quench_barriers.begin(), spec.quench_barriers.end());
  return m;
}

ModelSpec post_quench_model(const ScenarioSpec& spec) {
  ModelSpec m = spec.model;
  if (spec.kind == ScenarioKind::QuenchRaise)
    m.barriers.insert(m.barriers.end(), spec.quench_barriers.begin(), spec.quench_barriers.end());
  return m;
}

void validate(const ScenarioSpec& spec) { check_spec(spec, nullptr); }

ScenarioSpec parse_config_text(const std::string& text, const std::string& origin,
                               const std::filesystem::path& base_dir) {
  const Document doc = lex(text, origin);
  ScenarioSpec spec;

  if (!doc.has("scenario", "kind")) doc.fail(ConfigError::Kind::Constraint, 0, "missing [scenario] kind");
  const std::string kind = doc.text("scenario", "kind", "");
  const auto k = kinds().find(kind);
  if (k == kinds().end()) doc.constraint("scenario", "kind", "unknown scenario kind '" + kind + "'");
  spec.kind = k->second;
  spec.bosons = doc.integer("scenario", "bosons", 0);

  if (!doc.has("model", "n_sites")) doc.fail(ConfigError::Kind::Constraint, 0, "missing [model] n_sites");
  spec.model.n_sites = doc.integer("model", "n_sites", 0);
  if (spec.model.n_sites < 2) doc.constraint("model", "n_sites", "n_sites must be >= 2");
  const std::string base = doc.text("model", "base", "inverse_distance");
  if (base == "inverse_distance") {
    spec.model.base = InverseDistanceBase{doc.real("model", "j1", 0.3)};
  } else if (base == "jx") {
    spec.model.base = JxBase{};
  } else if (base == "custom") {
    if (!doc.has("model", "custom_matrix")) doc.constraint("model", "base", "custom base needs custom_matrix");
    const std::string source = doc.text("model", "custom_matrix", "");
    std::filesystem::path p(source);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    std::ifstream in(p);
    if (!in) throw IoError("cannot open custom matrix '" + p.string() + "'");
    CustomBase c;
    c.source = source;
    try {
      c.matrix = read_complex_csv(in);
    } catch (const InvalidInput& e) {
      doc.constraint("model", "custom_matrix", e.what());
    }
    spec.model.base = std::move(c);
  } else {
    doc.constraint("model", "base", "unknown base '" + base + "'");
  }
  if (base != "inverse_distance" && doc.has("model", "j1"))
    doc.constraint("model", "j1", "j1 only applies to base = inverse_distance");
  if (doc.has("model", "trap_omega")) {
    const double center = doc.real("model", "trap_center", 0.5 * (spec.model.n_sites + 1));
    spec.model.trap = Trap{doc.real("model", "trap_omega", 0.0), center};
  } else if (doc.has("model", "trap_center")) {
    doc.constraint("model", "trap_center", "trap_center given without trap_omega");
  }
  spec.model.barriers = doc.barriers("model", "barriers");
  if (doc.has("model", "perturbation_epsilon") != doc.has("model", "perturbation_beta"))
    doc.constraint("model", doc.has("model", "perturbation_epsilon") ? "perturbation_epsilon" : "perturbation_beta",
                   "perturbation needs both perturbation_epsilon and perturbation_beta");
  if (doc.has("model", "perturbation_epsilon"))
    spec.model.perturbation =
        CenterPerturbation{doc.real("model", "perturbation_epsilon", 0.0), doc.real("model", "perturbation_beta", 0.0)};

  spec.quench_barriers = doc.barriers("quench", "barriers");

  spec.time.t_start = doc.real("time", "t_start", 0.0);
  spec.time.t_end = doc.real("time", "t_end", spec.time.t_start);
  spec.time.steps = doc.integer("time", "steps", 1);
  spec.snapshots = doc.reals("time", "snapshots");

  if (doc.has("sweep", "mu_over_n") && doc.has("sweep", "mu_over_n_range"))
    doc.constraint("sweep", "mu_over_n_range", "give either mu_over_n or mu_over_n_range, not both");
  spec.mu_over_n = doc.reals("sweep", "mu_over_n");
  if (doc.has("sweep", "mu_over_n_range")) {
    const auto parts = doc.convert("sweep", "mu_over_n_range", [](const std::string& v) {
      std::vector<double> out;
      for (const auto& item : split(v, ':')) out.push_back(parse_double(item));
      if (out.size() != 3) throw InvalidInput("expected start:stop:step");
      return out;
    });
    if (!(parts[2] > 0.0) || parts[1] < parts[0])
      doc.constraint("sweep", "mu_over_n_range", "range needs stop >= start and step > 0");
    const int count = static_cast<int>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    // Round to 15 digits so 3 * 0.1 lands on 0.3 rather than 0.30000000000000004.
    for (int i = 0; i < count; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.15g", parts[0] + i * parts[2]);
      spec.mu_over_n.push_back(std::strtod(buf, nullptr));
    }
  }
  spec.evolution_time = doc.real("sweep", "evolution_time", std::numbers::pi);

  spec.epsilon = doc.real("transfer", "epsilon", spec.epsilon);
  spec.beta = doc.real("transfer", "beta", spec.beta);

  spec.numerics.local_dim = doc.integer("numerics", "local_dim", 0);
  spec.numerics.chi_max = doc.integer("numerics", "chi_max", 0);
  spec.numerics.trunc_tol = doc.real("numerics", "trunc_tol", spec.numerics.trunc_tol);

  spec.outputs.occupations = doc.text("output", "occupations", spec.outputs.occupations);
  spec.outputs.sweep = doc.text("output", "sweep", spec.outputs.sweep);
  spec.outputs.schmidt = doc.text("output", "schmidt", spec.outputs.schmidt);
  spec.outputs.transfer = doc.text("output", "transfer", spec.outputs.transfer);
  spec.outputs.snapshots = doc.text("output", "snapshots", spec.outputs.snapshots);

  check_spec(spec, &doc);
  return spec;
}

ScenarioSpec parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string(), path.parent_path());
}

std::string serialize_config(const ScenarioSpec& spec) {
  std::ostringstream os;
  auto barrier_list = [](const std::vector<Barrier>& bs) {
    std::string s;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (i) s += ", ";
      s += std::to_string(bs[i].first) + "-" + std::to_string(bs[i].last) + ":" + format_double(bs[i].height);
    }
    return s;
  };
  auto real_list = [](const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format_double(xs[i]);
    return s;
  };

  os << "[scenario]\nkind = " << to_string(spec.kind) << "\n";
  if (spec.bosons != 0) os << "bosons = " << spec.bosons << "\n";

  os << "\n[model]\nn_sites = " << spec.model.n_sites << "\n";
  if (const auto* b = std::get_if<InverseDistanceBase>(&spec.model.base)) {
    os << "base = inverse_distance\nj1 = " << format_double(b->j1) << "\n";
  } else if (std::holds_alternative<JxBase>(spec.model.base)) {
    os << "base = jx\n";
  } else {
    os << "base = custom\ncustom_matrix = " << std::get<CustomBase>(spec.model.base).source << "\n";
  }
  if (spec.model.trap)
    os << "trap_omega = " << format_double(spec.model.trap->omega) << "\ntrap_center = "
       << format_double(spec.model.trap->center) << "\n";
  if (!spec.model.barriers.empty()) os << "barriers = " << barrier_list(spec.model.barriers) << "\n";
  if (spec.model.perturbation)
    os << "perturbation_epsilon = " << format_double(spec.model.perturbation->epsilon)
       << "\nperturbation_beta = " << format_double(spec.model.perturbation->beta) << "\n";

  if (!spec.quench_barriers.empty()) os << "\n[quench]\nbarriers = " << barrier_list(spec.quench_barriers) << "\n";

  os << "\n[time]\nt_start = " << format_double(spec.time.t_start) << "\nt_end = " << format_double(spec.time.t_end)
     << "\nsteps = " << spec.time.steps << "\n";
  if (!spec.snapshots.empty()) os << "snapshots = " << real_list(spec.snapshots) << "\n";

  os << "\n[sweep]\n";
  if (!spec.mu_over_n.empty()) os << "mu_over_n = " << real_list(spec.mu_over_n) << "\n";
  os << "evolution_time = " << format_double(spec.evolution_time) << "\n";

  os << "\n[transfer]\nepsilon = " << format_double(spec.epsilon) << "\nbeta = " << format_double(spec.beta) << "\n";

  os << "\n[numerics]\nlocal_dim = " << spec.numerics.local_dim << "\nchi_max = " << spec.numerics.chi_max
     << "\ntrunc_tol = " << format_double(spec.numerics.trunc_tol) << "\n";

  os << "\n[output]\noccupations = " << spec.outputs.occupations << "\nsweep = " << spec.outputs.sweep
     << "\nschmidt = " << spec.outputs.schmidt << "\ntransfer = " << spec.outputs.transfer
     << "\nsnapshots = " << spec.outputs.snapshots << "\n";
  return os.str();
}

}  // namespace bosefold::cli
