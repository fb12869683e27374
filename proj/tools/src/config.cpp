#include "thincascade/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "thincascade/errors.hpp"

namespace thincascade::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': '" + v + "' is not a number");
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
}

bool to_bool(const std::string& key, const std::string& v) {
  const auto s = lower(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void range(bool ok, const std::string& key, const std::string& admissible) {
  if (!ok) throw ConfigError("key '" + key + "' out of range: admissible " + admissible);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const std::map<std::string, std::map<std::string, Setter>> table{
      {"geometry",
       {{"preset", [](RunConfig& c, const std::string& v) { c.geometry_preset = lower(v); }},
        {"profile", [](RunConfig& c, const std::string& v) { c.profile = v; }},
        {"joint", [](RunConfig& c, const std::string& v) { c.inline_profile = v; }},
        {"h1", [](RunConfig& c, const std::string& v) { c.h1 = to_double("h1", v); }},
        {"h2", [](RunConfig& c, const std::string& v) { c.h2 = to_double("h2", v); }},
        {"l", [](RunConfig& c, const std::string& v) { c.l = to_double("l", v); }}}},
      {"problem",
       {{"preset", [](RunConfig& c, const std::string& v) { c.problem = v; }},
        {"derivative_order", [](RunConfig& c, const std::string& v) { c.derivative_order = to_int("derivative_order", v); }},
        {"m", [](RunConfig& c, const std::string& v) { c.m = to_int("m", v); }},
        {"alpha", [](RunConfig& c, const std::string& v) { c.alpha = to_double("alpha", v); }},
        {"delta_end", [](RunConfig& c, const std::string& v) { c.delta_end = to_double("delta_end", v); }},
        {"L", [](RunConfig& c, const std::string& v) { c.L = to_double("L", v); }},
        {"inner_h", [](RunConfig& c, const std::string& v) { c.inner_h = to_double("inner_h", v); }},
        {"fourier_terms", [](RunConfig& c, const std::string& v) { c.fourier_terms = to_int("fourier_terms", v); }}}},
      {"study",
       {{"eps",
         [](RunConfig& c, const std::string& v) {
           c.eps.clear();
           for (const auto& s : split_list(v)) c.eps.push_back(to_double("eps", s));
         }},
        {"n_across", [](RunConfig& c, const std::string& v) { c.n_across = to_int("n_across", v); }},
        {"self_check", [](RunConfig& c, const std::string& v) { c.self_check = to_bool("self_check", v); }},
        {"mesher", [](RunConfig& c, const std::string& v) { c.mesher = lower(v); }},
        {"cases", [](RunConfig& c, const std::string& v) { c.cases = split_list(v); }},
        {"sample_eps", [](RunConfig& c, const std::string& v) { c.sample_eps = to_double("sample_eps", v); }},
        {"svg", [](RunConfig& c, const std::string& v) { c.svg = to_bool("svg", v); }},
        {"command", [](RunConfig& c, const std::string& v) { c.command = lower(v); }},
        {"output", [](RunConfig& c, const std::string& v) { c.output = v; }},
        {"jobs", [](RunConfig& c, const std::string& v) { c.jobs = to_int("jobs", v); }}}},
  };
  return table;
}

MesherKind mesher_kind(const std::string& name) {
  if (name == "auto") return MesherKind::Auto;
  if (name == "mapped") return MesherKind::Mapped;
  return MesherKind::Delaunay;
}

SmoothFn capped(const SmoothFn& fn, int order) {
  if (fn.is_zero()) return fn;
  return SmoothFn::from_oracle([fn](int k, double x) { return fn.derivative(k, x); }, order);
}

std::string join(const std::vector<double>& v) {
  std::ostringstream s;
  s << std::setprecision(12);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  return s.str();
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

}  // namespace

CascadeGeometry RunConfig::geometry() const {
  CascadeGeometry g;
  if (geometry_preset == "straight") g = geometry_presets::straight(h1, h2, l);
  else if (geometry_preset == "widening") g = geometry_presets::widening(h1, h2, l);
  else if (geometry_preset == "narrowing") g = geometry_presets::narrowing(h1, h2, l);
  else if (geometry_preset == "step") g = geometry_presets::step(1.0, h1, h2, l);
  else g = geometry_presets::by_name(geometry_preset);
  if (!profile.empty()) g.joint = load_joint_profile(profile);
  if (!inline_profile.empty()) {
    std::string text = inline_profile;
    std::replace(text.begin(), text.end(), ';', '\n');
    g.joint = parse_joint_profile(text);
  }
  g.validate();
  return g;
}

ProblemData RunConfig::problem_data() const {
  ProblemData d = problem_presets::by_name(problem);
  if (derivative_order < 0) return d;
  std::vector<SmoothFn> coeffs;
  for (const auto& c : d.f.coeffs()) coeffs.push_back(capped(c, derivative_order));
  d.f = EtaPolynomial(coeffs);
  for (auto& p : d.phi_plus) p = capped(p, derivative_order);
  for (auto& p : d.phi_minus) p = capped(p, derivative_order);
  return d;
}

CutoffSpec RunConfig::cutoff() const {
  CutoffSpec s;
  s.alpha = alpha;
  s.l = l;
  s.delta_end = delta_end;
  return s;
}

PipelineOptions RunConfig::pipeline_options() const {
  PipelineOptions p;
  p.m = m;
  p.L = L;
  p.inner_target_h = inner_h;
  p.fourier_terms = fourier_terms;
  p.mesher = mesher_kind(mesher);
  return p;
}

ReferenceOptions RunConfig::reference_options() const {
  ReferenceOptions r;
  r.n_across = n_across;
  r.self_check = self_check;
  r.mesher = mesher_kind(mesher);
  return r;
}

void validate(const RunConfig& c) {
  const std::vector<std::string> presets{"straight", "widening", "narrowing", "step", "cascade"};
  range(std::find(presets.begin(), presets.end(), c.geometry_preset) != presets.end(), "geometry.preset",
        "straight, widening, narrowing, step, cascade");
  range(c.h1 > 0.0, "h1", "(0, inf)");
  range(c.h2 > 0.0, "h2", "(0, inf)");
  range(c.l > 0.0, "l", "(0, inf)");
  const auto up = lower(c.problem);
  range(up == "tp0" || up == "tp1" || up == "tp2" || up == "tp3", "problem.preset", "TP0, TP1, TP2, TP3");
  range(c.derivative_order >= -1, "derivative_order", "-1 (unlimited) or >= 0");
  range(c.m >= 1 && c.m <= 3, "m", "1, 2, 3");
  range(c.alpha > 2.0 / 3.0 && c.alpha < 1.0, "alpha", "(2/3, 1)");
  range(c.delta_end > 0.0 && c.delta_end <= 0.25, "delta_end", "(0, 0.25]");
  range(c.L >= 0.0, "L", "0 (default) or > 0");
  range(c.inner_h >= 0.0, "inner_h", "0 (default) or > 0");
  range(c.fourier_terms >= 1 && c.fourier_terms <= 512, "fourier_terms", "[1, 512]");
  range(!c.eps.empty(), "eps", "a non-empty list");
  for (double e : c.eps) range(e > 0.0 && e <= 0.5, "eps", "(0, 0.5] for every entry");
  range(c.n_across >= 2 && c.n_across <= 256, "n_across", "[2, 256]");
  range(c.mesher == "auto" || c.mesher == "mapped" || c.mesher == "delaunay", "mesher", "auto, mapped, delaunay");
  for (const auto& id : c.cases)
    range(id.size() == 2 && id[0] == 'c' && id[1] >= '1' && id[1] <= '6', "cases", "a list of c1 .. c6");
  range(c.sample_eps > 0.0 && c.sample_eps <= 0.5, "sample_eps", "(0, 0.5]");
  range(std::find(commands().begin(), commands().end(), c.command) != commands().end(), "command",
        "limit, inner, reference, composite, study, all");
  range(c.jobs >= 0, "jobs", "0 (all cores) or >= 1");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto cut = raw.find('#');
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (!setters().count(section)) throw ConfigError("unknown section '[" + section + "]'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError("key '" + key + "' appears before any section");
    const auto& keys = setters().at(section);
    auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    it->second(cfg, value);
  }
  if (!cfg.profile.empty() && cfg.profile.is_relative() && !base_dir.empty()) cfg.profile = base_dir / cfg.profile;
  if (!cfg.profile.empty() && !std::filesystem::exists(cfg.profile))
    throw FileError("joint profile file '" + cfg.profile.string() + "' does not exist");
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream s;
  s << std::setprecision(12);
  s << "[geometry]\n"
    << "preset = " << c.geometry_preset << '\n';
  if (!c.profile.empty()) s << "profile = " << c.profile.string() << '\n';
  if (!c.inline_profile.empty()) s << "joint = " << c.inline_profile << '\n';
  s << "h1 = " << c.h1 << "\nh2 = " << c.h2 << "\nl = " << c.l << "\n\n";
  s << "[problem]\n"
    << "preset = " << c.problem << "\nderivative_order = " << c.derivative_order << "\nm = " << c.m
    << "\nalpha = " << c.alpha << "\ndelta_end = " << c.delta_end << "\nL = " << c.L << "\ninner_h = " << c.inner_h
    << "\nfourier_terms = " << c.fourier_terms << "\n\n";
  s << "[study]\n"
    << "eps = " << join(c.eps) << "\nn_across = " << c.n_across << "\nself_check = " << (c.self_check ? "true" : "false")
    << "\nmesher = " << c.mesher << "\ncases = " << join(c.cases) << "\nsample_eps = " << c.sample_eps
    << "\nsvg = " << (c.svg ? "true" : "false") << "\ncommand = " << c.command << "\noutput = " << c.output.string()
    << "\njobs = " << c.jobs << '\n';
  return s.str();
}

}  // namespace thincascade::cli
