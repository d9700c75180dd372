#include "mclaw/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace mclaw {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

class Parsed {
 public:
  Parsed(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string line = raw;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(origin_, lineno, "malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        if (sections_.count(section))
          fail(origin_, lineno, "duplicate section [" + section + "]");
        sections_[section];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(origin_, lineno, "expected key = value");
      if (section.empty()) fail(origin_, lineno, "key outside any section");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty())
        fail(origin_, lineno, "empty key or value");
      auto& sec = sections_[section];
      if (sec.count(key)) fail(origin_, lineno, "duplicate key '" + key + "'");
      sec[key] = Entry{value, lineno, false};
    }
  }

  bool has_section(const std::string& name) const {
    return sections_.count(name) != 0;
  }

  bool has(const std::string& sec, const std::string& key) const {
    const auto s = sections_.find(sec);
    return s != sections_.end() && s->second.count(key) != 0;
  }

  std::string get_string(const std::string& sec, const std::string& key) {
    auto s = sections_.find(sec);
    if (s == sections_.end())
      throw ConfigError(origin_ + ": missing section [" + sec + "]");
    auto e = s->second.find(key);
    if (e == s->second.end())
      throw ConfigError(origin_ + ": missing key '" + key + "' in [" + sec + "]");
    e->second.used = true;
    return e->second.value;
  }

  double get_number(const std::string& sec, const std::string& key) {
    const std::string v = get_string(sec, key);
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      fail(origin_, line_of(sec, key), "'" + key + "' is not a number: " + v);
    }
  }

  double get_number_or(const std::string& sec, const std::string& key,
                       double fallback) {
    return has(sec, key) ? get_number(sec, key) : fallback;
  }

  std::string get_string_or(const std::string& sec, const std::string& key,
                            const std::string& fallback) {
    return has(sec, key) ? get_string(sec, key) : fallback;
  }

  int line_of(const std::string& sec, const std::string& key) const {
    return sections_.at(sec).at(key).line;
  }

  void finish(const std::vector<std::string>& known_sections) const {
    for (const auto& [name, sec] : sections_) {
      if (std::find(known_sections.begin(), known_sections.end(), name) ==
          known_sections.end())
        throw ConfigError(origin_ + ": unknown section [" + name + "]");
      for (const auto& [key, entry] : sec)
        if (!entry.used)
          fail(origin_, entry.line,
               "unknown key '" + key + "' in [" + name + "]");
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, Section> sections_;
};

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Parsed cfg(text, origin);
  Scenario sc;
  sc.name = origin;

  const std::string kind = cfg.get_string("geometry", "kind");
  if (kind == "weighted-interval") {
    sc.geom = ChartGeometry::weighted_interval(
        cfg.get_number("geometry", "x_lo"), cfg.get_number("geometry", "x_hi"),
        cfg.get_number_or("geometry", "beta", 0.0));
  } else if (kind == "spherical-band") {
    sc.geom = ChartGeometry::spherical_band(cfg.get_number("geometry", "theta0"),
                                            cfg.get_number("geometry", "theta1"));
  } else if (kind == "surface-of-revolution") {
    sc.geom = ChartGeometry::surface_of_revolution(
        cfg.get_number("geometry", "s_lo"), cfg.get_number("geometry", "s_hi"),
        cfg.get_number_or("geometry", "alpha", 0.0));
  } else {
    throw ConfigError(origin + ": unknown geometry kind '" + kind + "'");
  }

  const std::string h = cfg.get_string("flux", "h");
  if (h == "linear")
    sc.flux.h_kind = HKind::linear;
  else if (h == "burgers")
    sc.flux.h_kind = HKind::burgers;
  else
    throw ConfigError(origin + ": unknown flux h '" + h + "'");
  const std::string a = cfg.get_string_or("flux", "a", "const");
  if (a == "sin") {
    sc.flux.a_kind = AKind::sine;
    sc.flux.a_value = cfg.get_number("flux", "a_value");
    sc.flux.a_period = cfg.get_number("flux", "a_period");
  } else if (a == "const") {
    sc.flux.a_kind = AKind::constant;
    sc.flux.a_value = cfg.get_number_or("flux", "a_value", 1.0);
  } else {
    throw ConfigError(origin + ": flux a must be 'const' or 'sin'");
  }
  sc.flux.c_value = cfg.get_number_or("flux", "c_value", 0.0);
  if (sc.geom.dim() == 1 && sc.flux.c_value != 0.0)
    throw ConfigError(origin + ": c_value needs a 2D geometry");

  const std::string profile = cfg.get_string("initial", "profile");
  if (profile == "constant") {
    sc.initial.profile = InitialSpec::Profile::constant;
    sc.initial.value = cfg.get_number("initial", "value");
  } else if (profile == "step") {
    sc.initial.profile = InitialSpec::Profile::step;
    sc.initial.left = cfg.get_number("initial", "left");
    sc.initial.right = cfg.get_number("initial", "right");
    sc.initial.jump_at = cfg.get_number("initial", "jump_at");
  } else if (profile == "sine") {
    sc.initial.profile = InitialSpec::Profile::sine;
    sc.initial.amplitude = cfg.get_number_or("initial", "amplitude", 1.0);
    sc.initial.mode = static_cast<int>(cfg.get_number_or("initial", "mode", 1));
  } else if (profile == "bump") {
    sc.initial.profile = InitialSpec::Profile::bump;
    sc.initial.amplitude = cfg.get_number_or("initial", "amplitude", 1.0);
    sc.initial.center = cfg.get_number("initial", "center");
    sc.initial.width = cfg.get_number("initial", "width");
  } else if (profile == "cos-transverse") {
    sc.initial.profile = InitialSpec::Profile::cos_transverse;
    sc.initial.amplitude = cfg.get_number_or("initial", "amplitude", 1.0);
  } else if (profile == "csv") {
    sc.initial.profile = InitialSpec::Profile::csv;
    sc.initial.csv_path = cfg.get_string("initial", "path");
  } else {
    throw ConfigError(origin + ": unknown initial profile '" + profile + "'");
  }
  sc.initial.azimuthal_mode =
      static_cast<int>(cfg.get_number_or("initial", "azimuthal_mode", 0));
  sc.initial.azimuthal_weight =
      cfg.get_number_or("initial", "azimuthal_weight", 0.0);

  {
    const std::string res = cfg.get_string("solver", "resolution");
    std::istringstream rs(res);
    int n;
    while (rs >> n) sc.resolution.push_back(n);
    if (static_cast<int>(sc.resolution.size()) != sc.geom.dim())
      throw ConfigError(origin + ": resolution needs " +
                        std::to_string(sc.geom.dim()) + " entries");
  }
  sc.horizon = cfg.get_number("solver", "horizon");
  sc.cfl = cfg.get_number_or("solver", "cfl", 0.45);
  sc.viscosity = cfg.get_number_or("solver", "viscosity", 0.0);
  sc.kruzkov_levels =
      static_cast<int>(cfg.get_number_or("solver", "kruzkov_levels", 21));
  sc.monitor_entropy =
      cfg.get_string_or("solver", "monitor_entropy", "on") != "off";
  sc.cadence = cfg.get_number("output", "cadence");

  if (!(sc.horizon > 0.0)) throw ConfigError(origin + ": horizon must be > 0");
  if (!(sc.cfl > 0.0 && sc.cfl < 1.0))
    throw ConfigError(origin + ": cfl must lie in (0,1)");
  if (sc.viscosity < 0.0)
    throw ConfigError(origin + ": viscosity must be >= 0");
  if (!(sc.cadence > 0.0)) throw ConfigError(origin + ": cadence must be > 0");

  cfg.finish({"geometry", "flux", "initial", "solver", "output"});
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace mclaw
