#include "fdcomp/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "fdcomp/errors.hpp"
#include "fdcomp/harness/csv.hpp"

namespace fdcomp::harness {
namespace {

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ValidationError(key, "expected a number, got '" + text + "'");
  }
  return value;
}

template <typename Int>
Int parse_integer(const std::string& key, const std::string& text) {
  Int value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ValidationError(key, "expected an integer, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ValidationError(key, "expected true or false, got '" + text + "'");
}

struct KeySpec {
  const char* name;
  Provenance baseline;
  std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

constexpr Provenance kRef = Provenance::reference;
constexpr Provenance kDef = Provenance::artifact_default;

#define FDCOMP_DOUBLE_KEY(NAME, PROV, FIELD)                                                               \
  KeySpec {                                                                                                \
    NAME, PROV, [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.FIELD = parse_double(k, v); }, \
        [](const ScenarioConfig& c) { return format_number(c.FIELD); }                                     \
  }

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      {"signal.source", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "synthetic") {
           c.signal_source = SignalSource::synthetic;
         } else if (v == "csv") {
           c.signal_source = SignalSource::csv;
         } else {
           throw ValidationError(k, "expected 'synthetic' or 'csv', got '" + v + "'");
         }
       },
       [](const ScenarioConfig& c) { return std::string(to_string(c.signal_source)); }},
      {"signal.csv_path", kDef, [](ScenarioConfig& c, const std::string&, const std::string& v) { c.csv_path = v; },
       [](const ScenarioConfig& c) { return c.csv_path; }},
      FDCOMP_DOUBLE_KEY("signal.fs", kRef, fs),
      {"signal.n_bits", kRef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.n_bits = parse_integer<int>(k, v); },
       [](const ScenarioConfig& c) { return std::to_string(c.n_bits); }},
      FDCOMP_DOUBLE_KEY("signal.duration", kDef, duration_s),
      {"codec.family_order", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.codec.family_order = parse_integer<int>(k, v);
       },
       [](const ScenarioConfig& c) { return std::to_string(c.codec.family_order); }},
      {"codec.levels", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.codec.levels = parse_integer<int>(k, v); },
       [](const ScenarioConfig& c) { return std::to_string(c.codec.levels); }},
      {"codec.boundary", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v != "periodization") throw ValidationError(k, "only 'periodization' is supported, got '" + v + "'");
         c.codec.boundary = codec::BoundaryMode::periodization;
       },
       [](const ScenarioConfig&) { return std::string("periodization"); }},
      FDCOMP_DOUBLE_KEY("link.bandwidth", kRef, link.bandwidth_hz),
      FDCOMP_DOUBLE_KEY("link.noise_dbm", kRef, link.noise_dbm),
      {"link.noise_mode", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "density") {
           c.link.noise_mode = channel::NoiseMode::density;
         } else if (v == "power") {
           c.link.noise_mode = channel::NoiseMode::power;
         } else {
           throw ValidationError(k, "expected 'density' or 'power', got '" + v + "'");
         }
       },
       [](const ScenarioConfig& c) { return std::string(channel::to_string(c.link.noise_mode)); }},
      FDCOMP_DOUBLE_KEY("link.si_quality", kRef, link.si_quality),
      FDCOMP_DOUBLE_KEY("link.p_max", kDef, link.p_max_w),
      FDCOMP_DOUBLE_KEY("link.hd_bandwidth_share", kDef, link.hd_bandwidth_share),
      FDCOMP_DOUBLE_KEY("fading.doppler", kRef, fading.doppler_hz),
      FDCOMP_DOUBLE_KEY("fading.sample_time", kDef, fading.sample_time_s),
      FDCOMP_DOUBLE_KEY("fading.mean_gain", kDef, fading.mean_gain),
      {"fading.length", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.fading.length = parse_integer<std::size_t>(k, v);
       },
       [](const ScenarioConfig& c) { return std::to_string(c.fading.length); }},
      {"fading.sinusoids", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.fading.sinusoids = parse_integer<int>(k, v);
       },
       [](const ScenarioConfig& c) { return std::to_string(c.fading.sinusoids); }},
      FDCOMP_DOUBLE_KEY("objective.lambda", kRef, lambda),
      {"objective.beta", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.beta = parse_double(k, v); },
       [](const ScenarioConfig& c) {
         return c.beta ? format_number(*c.beta) : format_number(std::log(c.model.a)) + " (ln a)";
       }},
      FDCOMP_DOUBLE_KEY("objective.a", kRef, model.a),
      FDCOMP_DOUBLE_KEY("objective.b", kRef, model.b),
      {"objective.model", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "reference") {
           c.model_source = ModelSource::reference;
         } else if (v == "fitted") {
           c.model_source = ModelSource::fitted;
         } else {
           throw ValidationError(k, "expected 'reference' or 'fitted', got '" + v + "'");
         }
       },
       [](const ScenarioConfig& c) { return std::string(to_string(c.model_source)); }},
      FDCOMP_DOUBLE_KEY("fit.kappa_min", kDef, fit_kappa_min),
      FDCOMP_DOUBLE_KEY("fit.kappa_max", kDef, fit_kappa_max),
      {"fit.points", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.fit_points = parse_integer<std::size_t>(k, v);
       },
       [](const ScenarioConfig& c) { return std::to_string(c.fit_points); }},
      FDCOMP_DOUBLE_KEY("run.kappa_grid_step", kDef, kappa_grid_step),
      {"run.seed", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.seed = parse_integer<std::uint64_t>(k, v); },
       [](const ScenarioConfig& c) { return std::to_string(c.seed); }},
      {"run.output_dir", kDef, [](ScenarioConfig& c, const std::string&, const std::string& v) { c.output_dir = v; },
       [](const ScenarioConfig& c) { return c.output_dir; }},
      {"run.per_sample", kDef,
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.per_sample = parse_bool(k, v); },
       [](const ScenarioConfig& c) { return std::string(c.per_sample ? "true" : "false"); }},
  };
  return specs;
}

#undef FDCOMP_DOUBLE_KEY

const KeySpec* find_spec(const std::string& key) {
  for (const auto& spec : key_specs()) {
    if (key == spec.name) return &spec;
  }
  return nullptr;
}

}  // namespace

const char* to_string(SignalSource source) { return source == SignalSource::synthetic ? "synthetic" : "csv"; }

const char* to_string(ModelSource source) { return source == ModelSource::reference ? "reference" : "fitted"; }

const char* to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::reference:
      return "reference";
    case Provenance::artifact_default:
      return "default";
    case Provenance::user:
      return "user";
  }
  return "unknown";
}

opt::ObjectiveParams ScenarioConfig::objective() const {
  opt::ObjectiveParams p;
  p.lambda = lambda;
  p.beta = beta;
  p.link = link;
  p.model = model;
  p.fs = fs;
  p.n_bits = n_bits;
  return p;
}

channel::FadingConfig ScenarioConfig::fading_config() const {
  channel::FadingConfig f = fading;
  f.seed = seed;
  return f;
}

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.fs > 0.0) || !std::isfinite(cfg.fs)) throw ValidationError("signal.fs", "must be finite and > 0");
  if (cfg.n_bits < 1 || cfg.n_bits > 64) throw ValidationError("signal.n_bits", "must lie in [1, 64]");
  if (!(cfg.duration_s > 0.0) || !std::isfinite(cfg.duration_s)) {
    throw ValidationError("signal.duration", "must be finite and > 0");
  }
  if (cfg.signal_source == SignalSource::csv && cfg.csv_path.empty()) {
    throw ValidationError("signal.csv_path", "required when signal.source = csv");
  }
  if (cfg.codec.family_order < codec::kMinFamilyOrder || cfg.codec.family_order > codec::kMaxFamilyOrder) {
    throw ValidationError("codec.family_order", "Daubechies order must lie in [" +
                                                    std::to_string(codec::kMinFamilyOrder) + ", " +
                                                    std::to_string(codec::kMaxFamilyOrder) + "]");
  }
  if (cfg.codec.levels < 1) throw ValidationError("codec.levels", "must be >= 1");
  channel::validate(cfg.link);
  channel::validate(cfg.fading_config());
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) {
    throw ValidationError("objective.lambda", "weight must satisfy 0 <= lambda <= 1, got " + format_number(cfg.lambda));
  }
  if (!(cfg.model.a > 0.0) || !std::isfinite(cfg.model.a)) throw ValidationError("objective.a", "must be finite and > 0");
  if (!std::isfinite(cfg.model.b)) throw ValidationError("objective.b", "must be finite");
  opt::validate(cfg.objective());
  if (!(cfg.fit_kappa_min >= 0.0 && cfg.fit_kappa_min < cfg.fit_kappa_max && cfg.fit_kappa_max <= 1.0)) {
    throw ValidationError("fit.kappa_min", "need 0 <= fit.kappa_min < fit.kappa_max <= 1");
  }
  if (cfg.fit_points < 2) throw ValidationError("fit.points", "need at least 2 points");
  if (!(cfg.kappa_grid_step > 0.0 && cfg.kappa_grid_step < 1.0)) {
    throw ValidationError("run.kappa_grid_step", "step must lie in (0, 1)");
  }
  if (cfg.output_dir.empty()) throw ValidationError("run.output_dir", "must not be empty");
}

ScenarioConfig parse_config(std::istream& in, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": line " + std::to_string(e.line()) + ": " + e.message());
  }

  ScenarioConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ValidationError(section, "key outside of any [section]");
    for (const auto& [name, node] : body) {
      const std::string key = section + "." + name;
      const KeySpec* spec = find_spec(key);
      if (spec == nullptr) throw ValidationError(key, "unknown configuration key");
      spec->set(cfg, key, node.get_value<std::string>());
      cfg.user_keys.insert(key);
    }
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

std::vector<ConfigEntry> resolved_entries(const ScenarioConfig& cfg) {
  std::vector<ConfigEntry> out;
  out.reserve(key_specs().size());
  for (const auto& spec : key_specs()) {
    const Provenance prov = cfg.user_keys.count(spec.name) ? Provenance::user : spec.baseline;
    out.push_back({spec.name, spec.get(cfg), prov});
  }
  return out;
}

std::string banner(const ScenarioConfig& cfg, const std::string& prefix) {
  std::ostringstream os;
  std::size_t width = 0;
  const auto entries = resolved_entries(cfg);
  for (const auto& e : entries) width = std::max(width, e.key.size());
  for (const auto& e : entries) {
    os << prefix << e.key << std::string(width - e.key.size(), ' ') << " = " << e.value << "  ["
       << to_string(e.provenance) << "]\n";
  }
  return os.str();
}

}  // namespace fdcomp::harness
