#include "kdre/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kdre::harness {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + key, "missing");
  return obj.at(key);
}

std::size_t positive_int(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw ConfigError(field, "expected a positive integer");
  return v.get<std::size_t>();
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& v, const std::string& field, std::size_t expected) {
  if (!v.is_array() || v.size() != expected)
    throw ConfigError(field, "expected an array of " + std::to_string(expected) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Point point_field(const json& v, const std::string& field, std::size_t d) {
  try {
    return Point(number_list(v, field, d));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

GaussianSpec gaussian(const json& obj, const std::string& field, std::size_t d) {
  Point mean = point_field(require(obj, "mean", field + "."), field + ".mean", d);
  const json& cov = require(obj, "cov", field + ".");
  if (!cov.is_array() || cov.size() != d) throw ConfigError(field + ".cov", "expected d rows");
  Eigen::MatrixXd m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const auto row = number_list(cov[r], field + ".cov[" + std::to_string(r) + "]", d);
    for (std::size_t c = 0; c < d; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  try {
    return GaussianSpec(std::move(mean), std::move(m));
  } catch (const InvalidSpecError& e) {
    throw ConfigError(field + ".cov", e.what());
  }
}

KernelFamily kernel_family(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a kernel name");
  try {
    return parse_kernel_family(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

json point_json(const Point& p) { return json(p.coords()); }

json gaussian_json(const GaussianSpec& spec) {
  json cov = json::array();
  for (Eigen::Index r = 0; r < spec.cov().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < spec.cov().cols(); ++c) row.push_back(spec.cov()(r, c));
    cov.push_back(row);
  }
  return {{"mean", point_json(spec.mean())}, {"cov", cov}};
}

}  // namespace

bool ExperimentConfig::wants(Channel c) const {
  return std::find(channels.begin(), channels.end(), c) != channels.end();
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "expected an object");
  const std::size_t d = positive_int(require(j, "d", ""), "d");
  const std::size_t n = positive_int(require(j, "n", ""), "n");
  const std::size_t m = positive_int(require(j, "m", ""), "m");

  const json& bw = require(j, "bandwidths", "");
  BandwidthSpec bandwidths;
  bandwidths.h = number(require(bw, "h", "bandwidths."), "bandwidths.h");
  bandwidths.epsilons =
      number_list(require(bw, "epsilons", "bandwidths."), "bandwidths.epsilons", d - 1);
  if (!(bandwidths.h > 0.0)) throw ConfigError("bandwidths.h", "must be > 0");
  for (double e : bandwidths.epsilons) {
    if (!(e > 0.0)) throw ConfigError("bandwidths.epsilons", "every epsilon must be > 0");
  }

  const KernelFamily main_kernel = kernel_family(require(j, "mainKernel", ""), "mainKernel");
  const KernelFamily weight_kernel = j.contains("weightKernel")
                                         ? kernel_family(j.at("weightKernel"), "weightKernel")
                                         : KernelFamily::gaussian_radial;

  const json& g = require(j, "grid", "");
  Point lower = point_field(require(g, "lower", "grid."), "grid.lower", d);
  Point upper = point_field(require(g, "upper", "grid."), "grid.upper", d);
  const json& counts_json = require(g, "counts", "grid.");
  if (!counts_json.is_array() || counts_json.size() != d)
    throw ConfigError("grid.counts", "expected d positive integers");
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k < d; ++k)
    counts.push_back(positive_int(counts_json[k], "grid.counts[" + std::to_string(k) + "]"));
  for (std::size_t k = 0; k < d; ++k) {
    if (!(lower[k] < upper[k])) throw ConfigError("grid", "lower must be < upper on every axis");
  }
  GridSpec grid(std::move(lower), std::move(upper), std::move(counts));

  GaussianSpec f = gaussian(require(j, "F", ""), "F", d);
  GaussianSpec gspec = gaussian(require(j, "G", ""), "G", d);

  const json& seed_json = require(j, "seed", "");
  if (!seed_json.is_number_unsigned() && !(seed_json.is_number_integer() && seed_json.get<std::int64_t>() >= 0))
    throw ConfigError("seed", "expected a non-negative integer");
  const auto seed = seed_json.get<std::uint64_t>();

  const json& ch = require(j, "channels", "");
  if (!ch.is_array() || ch.empty()) throw ConfigError("channels", "expected a non-empty array");
  std::vector<Channel> channels;
  for (const auto& c : ch) {
    if (!c.is_string()) throw ConfigError("channels", "expected channel names");
    try {
      const Channel parsed = parse_channel(c.get<std::string>());
      if (std::find(channels.begin(), channels.end(), parsed) != channels.end())
        throw ConfigError("channels", "duplicate channel " + c.get<std::string>());
      channels.push_back(parsed);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("channels", e.what());
    }
  }

  std::vector<std::size_t> permutation;
  if (j.contains("coordinatePermutation")) {
    const json& p = j.at("coordinatePermutation");
    if (!p.is_array() || p.size() != d)
      throw ConfigError("coordinatePermutation", "expected a permutation of 1..d");
    std::vector<bool> seen(d, false);
    for (const auto& v : p) {
      const std::size_t k = positive_int(v, "coordinatePermutation");
      if (k > d || seen[k - 1])
        throw ConfigError("coordinatePermutation", "expected a permutation of 1..d");
      seen[k - 1] = true;
      permutation.push_back(k - 1);
    }
  }

  double hx = bandwidths.h;
  double hy = bandwidths.h;
  if (j.contains("indirectBandwidths")) {
    const json& ib = j.at("indirectBandwidths");
    if (ib.contains("hX")) hx = number(ib.at("hX"), "indirectBandwidths.hX");
    if (ib.contains("hY")) hy = number(ib.at("hY"), "indirectBandwidths.hY");
    if (!(hx > 0.0) || !(hy > 0.0)) throw ConfigError("indirectBandwidths", "must be > 0");
  }

  return ExperimentConfig{d,
                          n,
                          m,
                          std::move(bandwidths),
                          main_kernel,
                          weight_kernel,
                          std::move(grid),
                          std::move(f),
                          std::move(gspec),
                          seed,
                          std::move(channels),
                          std::move(permutation),
                          hx,
                          hy};
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<syntax>", e.what());
  }
  return parse_config(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

nlohmann::json to_json(const ExperimentConfig& c) {
  json channels = json::array();
  for (auto ch : c.channels) channels.push_back(std::string(channel_name(ch)));
  json out = {
      {"d", c.d},
      {"n", c.n},
      {"m", c.m},
      {"bandwidths", {{"h", c.bandwidths.h}, {"epsilons", c.bandwidths.epsilons}}},
      {"mainKernel", std::string(kernel_family_name(c.main_kernel))},
      {"weightKernel", std::string(kernel_family_name(c.weight_kernel))},
      {"grid",
       {{"lower", point_json(c.grid.lower)},
        {"upper", point_json(c.grid.upper)},
        {"counts", c.grid.counts}}},
      {"F", gaussian_json(c.f)},
      {"G", gaussian_json(c.g)},
      {"seed", c.seed},
      {"channels", channels},
      {"indirectBandwidths", {{"hX", c.indirect_hx}, {"hY", c.indirect_hy}}},
  };
  if (!c.permutation.empty()) {
    json p = json::array();
    for (auto k : c.permutation) p.push_back(k + 1);
    out["coordinatePermutation"] = p;
  }
  return out;
}

std::vector<Channel> parse_channel_list(const std::string& list) {
  std::vector<Channel> out;
  std::stringstream ss(list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      const Channel c = parse_channel(token);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("channels", e.what());
    }
  }
  if (out.empty()) throw ConfigError("channels", "empty channel list");
  return out;
}

}  // namespace kdre::harness
