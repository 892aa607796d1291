#include "kdre/harness/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace kdre::harness {
namespace {

std::string coord_header(std::size_t d) {
  std::string out;
  for (std::size_t k = 1; k <= d; ++k) {
    if (k > 1) out += ',';
    out += 'x' + std::to_string(k);
  }
  return out;
}

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw IoError("samples CSV line " + std::to_string(line) + ": bad number '" +
                  std::string(token) + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string field_to_csv(const RatioField& field) {
  const std::size_t d = field.grid.dim();
  std::string out = coord_header(d);
  for (const auto& [channel, values] : field.channels) {
    out += ',';
    out += channel_name(channel);
  }
  out += ",flags\n";
  if (field.channels.empty()) return out;

  for (std::size_t cell = 0; cell < field.grid.size(); ++cell) {
    const Point z = field.grid.point(cell);
    for (std::size_t k = 0; k < d; ++k) {
      if (k > 0) out += ',';
      out += format_double(z[k]);
    }
    for (const auto& [channel, values] : field.channels) {
      out += ',';
      out += format_double(values[cell]);
    }
    out += ',';
    out += format_flags(field.flags[cell]);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_field_csv(const RatioField& field, const std::filesystem::path& path) {
  write_text(path, field_to_csv(field));
}

std::string samples_to_csv(const SampleSet& samples) {
  std::string out = coord_header(samples.dim()) + '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto p = samples.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k > 0) out += ',';
      out += format_double(p[k]);
    }
    out += '\n';
  }
  return out;
}

SampleSet parse_samples_csv(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::size_t d = 0;
  std::vector<double> data;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      tokens.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (d == 0) {
      d = tokens.size();
      if (std::string(line) != coord_header(d))
        throw IoError("samples CSV: expected header '" + coord_header(d) + "'");
      continue;
    }
    if (tokens.size() != d)
      throw IoError("samples CSV line " + std::to_string(line_no) + ": expected " +
                    std::to_string(d) + " columns");
    for (auto t : tokens) data.push_back(parse_double(t, line_no));
  }
  if (d == 0) throw IoError("samples CSV: missing header");
  if (data.empty()) throw IoError("samples CSV: no rows");
  try {
    return SampleSet(d, std::move(data));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("samples CSV: ") + e.what());
  }
}

void write_samples_csv(const SampleSet& samples, const std::filesystem::path& path) {
  write_text(path, samples_to_csv(samples));
}

SampleSet read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_samples_csv(buf.str());
}

}  // namespace kdre::harness
