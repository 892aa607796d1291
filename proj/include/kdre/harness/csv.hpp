#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "kdre/core.hpp"

namespace kdre::harness {

//! Shortest decimal string that parses back to the same double.
std::string format_double(double v);

//! Field CSV: header `x1,...,xd,<channels...>,flags`, one row per lattice
//! point in lattice order. A field without channels is written as the
//! header line alone.
std::string field_to_csv(const RatioField& field);
void write_field_csv(const RatioField& field, const std::filesystem::path& path);

//! Samples CSV: header `x1,...,xd`, one point per row in sample order.
std::string samples_to_csv(const SampleSet& samples);
SampleSet parse_samples_csv(std::string_view text);
void write_samples_csv(const SampleSet& samples, const std::filesystem::path& path);
SampleSet read_samples_csv(const std::filesystem::path& path);

//! Writes text to path, throwing IoError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace kdre::harness
