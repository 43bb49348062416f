#include "nlslab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace nlslab {

namespace {

using json = nlohmann::json;
using Setter = std::function<void(ExperimentConfig&, const json&)>;

template <class T>
T as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::config, "config key '" + key + "' has the wrong type");
  }
}

std::string as_text(const json& v, const std::string& key) {
  // numbers are accepted where exact values are read from strings
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return as<std::string>(v, key);
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"omega", [](auto& c, const json& v) { c.omega = as<std::string>(v, "omega"); }},
      {"profile", [](auto& c, const json& v) { c.profile = as<std::string>(v, "profile"); }},
      {"N", [](auto& c, const json& v) { c.N = as<int>(v, "N"); }},
      {"s", [](auto& c, const json& v) { c.s = as<double>(v, "s"); }},
      {"delta", [](auto& c, const json& v) { c.delta = as<double>(v, "delta"); }},
      {"seed", [](auto& c, const json& v) { c.seed = as<std::uint64_t>(v, "seed"); }},
      {"box", [](auto& c, const json& v) { c.box = as<std::int64_t>(v, "box"); }},
      {"scale",
       [](auto& c, const json& v) {
         auto pq = as<std::vector<std::int64_t>>(v, "scale");
         if (pq.size() != 2 || pq[0] <= 0 || pq[1] <= 0)
           fail(ErrorKind::config, "scale must be [p, q] with positive entries");
         c.p = pq[0];
         c.q = pq[1];
       }},
      {"set", [](auto& c, const json& v) { c.set = as<std::string>(v, "set"); }},
      {"ladder", [](auto& c, const json& v) { c.ladder = as<std::vector<double>>(v, "ladder"); }},
      {"T0", [](auto& c, const json& v) { c.T0 = as<double>(v, "T0"); }},
      {"truncation", [](auto& c, const json& v) { c.truncation = as<std::string>(v, "truncation"); }},
      {"tolerances",
       [](auto& c, const json& v) {
         if (!v.is_object()) fail(ErrorKind::config, "tolerances must be an object");
         for (const auto& [k, x] : v.items()) {
           if (k == "rtol")
             c.tolerances.rtol = as<double>(x, "tolerances.rtol");
           else if (k == "atol")
             c.tolerances.atol = as<double>(x, "tolerances.atol");
           else
             fail(ErrorKind::config, "unknown config key 'tolerances." + k + "'");
         }
       }},
      {"depth", [](auto& c, const json& v) { c.depth = as<std::size_t>(v, "depth"); }},
      {"t_end", [](auto& c, const json& v) { c.t_end = as<double>(v, "t_end"); }},
      {"samples", [](auto& c, const json& v) { c.samples = as<std::size_t>(v, "samples"); }},
      {"stride", [](auto& c, const json& v) { c.stride = as<std::size_t>(v, "stride"); }},
      {"b0",
       [](auto& c, const json& v) {
         c.b0.clear();
         for (const auto& x : as<std::vector<std::vector<double>>>(v, "b0")) {
           if (x.size() != 2) fail(ErrorKind::config, "b0 entries are [re, im]");
           c.b0.emplace_back(x[0], x[1]);
         }
       }},
      {"nonlinear", [](auto& c, const json& v) { c.nonlinear = as<bool>(v, "nonlinear"); }},
      {"conjugate", [](auto& c, const json& v) { c.conjugate = as<bool>(v, "conjugate"); }},
      {"C", [](auto& c, const json& v) { c.C = as_text(v, "C"); }},
      {"mu", [](auto& c, const json& v) { c.mu = as_text(v, "mu"); }},
      {"epsilon", [](auto& c, const json& v) { c.epsilon = as_text(v, "epsilon"); }},
      {"constants",
       [](auto& c, const json& v) {
         if (!v.is_object()) fail(ErrorKind::config, "constants must be an object");
         for (const auto& [k, x] : v.items()) {
           const std::string key = "constants." + k;
           if (k == "alpha")
             c.alpha = as_text(x, key);
           else if (k == "K")
             c.K = as_text(x, key);
           else if (k == "eta_tilde")
             c.eta_tilde = as_text(x, key);
           else if (k == "sigma")
             c.sigma = as_text(x, key);
           else if (k == "gamma")
             c.gamma = as_text(x, key);
           else
             fail(ErrorKind::config, "unknown config key '" + key + "'");
         }
       }},
      {"output", [](auto& c, const json& v) { c.output = as<std::string>(v, "output"); }},
      {"threads", [](auto& c, const json& v) { c.threads = as<int>(v, "threads"); }},
  };
  return table;
}

void apply(ExperimentConfig& cfg, const std::string& key, const json& value) {
  auto it = setters().find(key);
  if (it == setters().end()) fail(ErrorKind::config, "unknown config key '" + key + "'");
  it->second(cfg, value);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::config, std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::config, "config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [k, v] : j.items()) apply(cfg, k, v);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorKind::config, "override must be key=value");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) v = text;
  apply(cfg, key, v);
}

void apply_environment(ExperimentConfig& cfg) {
  if (const char* out = std::getenv("NLSLAB_OUTPUT_DIR"); out && *out) cfg.output = out;
  if (const char* th = std::getenv("NLSLAB_THREADS"); th && *th) {
    char* end = nullptr;
    long n = std::strtol(th, &end, 10);
    if (*end != '\0' || n < 0) fail(ErrorKind::config, "NLSLAB_THREADS must be a nonnegative integer");
    cfg.threads = static_cast<int>(n);
  }
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["omega"] = c.omega;
  j["profile"] = c.profile;
  j["N"] = c.N;
  j["s"] = c.s;
  j["delta"] = c.delta;
  j["seed"] = c.seed;
  j["box"] = c.box;
  j["scale"] = {c.p, c.q};
  if (c.set) j["set"] = *c.set;
  j["ladder"] = c.ladder;
  j["T0"] = c.T0;
  j["truncation"] = c.truncation;
  j["tolerances"] = {{"rtol", c.tolerances.rtol}, {"atol", c.tolerances.atol}};
  j["depth"] = c.depth;
  j["t_end"] = c.t_end;
  j["samples"] = c.samples;
  j["stride"] = c.stride;
  if (!c.b0.empty()) {
    j["b0"] = nlohmann::ordered_json::array();
    for (const auto& x : c.b0) j["b0"].push_back({x.real(), x.imag()});
  }
  j["nonlinear"] = c.nonlinear;
  j["conjugate"] = c.conjugate;
  j["C"] = c.C;
  j["mu"] = c.mu;
  j["epsilon"] = c.epsilon;
  j["constants"] = {{"alpha", c.alpha}, {"K", c.K}, {"eta_tilde", c.eta_tilde}, {"sigma", c.sigma}};
  if (c.gamma) j["constants"]["gamma"] = *c.gamma;
  j["output"] = c.output;
  j["threads"] = c.threads;
  return j;
}

std::string config_hash(const ExperimentConfig& cfg) {
  // output location and thread count do not change results
  auto j = to_json(cfg);
  j.erase("output");
  j.erase("threads");
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return 2;
    case ErrorKind::numeric:
    case ErrorKind::domain: return 3;
    case ErrorKind::search_exhausted:
    case ErrorKind::not_found:
    case ErrorKind::budget_exceeded: return 4;
    case ErrorKind::precision_exhausted: return 5;
  }
  return 1;
}

}  // namespace nlslab
