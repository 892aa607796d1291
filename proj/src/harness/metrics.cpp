#include "kdre/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kdre::harness {
namespace {

std::uint8_t flags_for(Channel c) {
  std::uint8_t mask = 0;
  for (CellFlag f : {kDivideByZero, kWeightFallback}) {
    const Channel owner = flag_channel(f);
    if (owner == c || owner == Channel::truth) mask |= f;
  }
  return mask;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

const ChannelMetrics* MetricsReport::find(Channel c) const {
  for (const auto& m : channels) {
    if (m.channel == c) return &m;
  }
  return nullptr;
}

MetricsReport compute_metrics(const RatioField& field) {
  const auto* truth = field.find(Channel::truth);
  if (truth == nullptr) throw std::invalid_argument("compute_metrics: field has no true channel");

  MetricsReport report;
  for (const auto& [channel, values] : field.channels) {
    if (channel == Channel::truth) continue;
    const std::uint8_t excluded = flags_for(channel);
    ChannelMetrics m{channel};
    std::vector<double> abs_errors;
    double sq_sum = 0.0;
    for (std::size_t cell = 0; cell < values.size(); ++cell) {
      if (field.flags[cell] & excluded) {
        ++m.cells_excluded;
        continue;
      }
      const double err = values[cell] - (*truth)[cell];
      sq_sum += err * err;
      abs_errors.push_back(std::abs(err));
      m.max_abs_error = std::max(m.max_abs_error, std::abs(err));
    }
    m.cells_used = abs_errors.size();
    if (m.cells_used > 0) m.mse = sq_sum / static_cast<double>(m.cells_used);
    m.median_abs_error = median(std::move(abs_errors));
    report.channels.push_back(m);
  }
  return report;
}

nlohmann::json to_json(const MetricsReport& report) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& m : report.channels) {
    out[std::string(channel_name(m.channel))] = {
        {"mse", m.mse},
        {"medianAbsError", m.median_abs_error},
        {"maxAbsError", m.max_abs_error},
        {"cellsUsed", m.cells_used},
        {"cellsExcluded", m.cells_excluded},
    };
  }
  return out;
}

}  // namespace kdre::harness
