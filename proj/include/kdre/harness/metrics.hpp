#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "kdre/core.hpp"

namespace kdre::harness {

struct ChannelMetrics {
  Channel channel;
  double mse = 0.0;
  double median_abs_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t cells_used = 0;
  std::size_t cells_excluded = 0;
};

//! Errors of every estimated channel against the "true" channel.
struct MetricsReport {
  std::vector<ChannelMetrics> channels;

  const ChannelMetrics* find(Channel c) const;
};

//! A cell contributes to a channel's metrics only when no flag attributed
//! to that channel (or to "true") is set. Throws std::invalid_argument when
//! the field has no "true" channel.
MetricsReport compute_metrics(const RatioField& field);

nlohmann::json to_json(const MetricsReport& report);

}  // namespace kdre::harness
