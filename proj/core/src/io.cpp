#include "polyct/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "polyct/error.hpp"

namespace polyct {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line,
                             const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::filesystem::path& path, int line,
                    std::string_view token) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    parse_fail(path, line, "bad number '" + std::string(token) + "'");
  if (!std::isfinite(v)) parse_fail(path, line, "non-finite number");
  return v;
}

long long parse_int(const std::filesystem::path& path, int line,
                    std::string_view token) {
  long long v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    parse_fail(path, line, "bad integer '" + std::string(token) + "'");
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string read_whole_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// Lines without trailing newline characters; a final unterminated line counts.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out << content;
    if (!out) throw ParseError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw ParseError("cannot move " + tmp.string() + " to " + path.string() +
                     ": " + ec.message());
}

void write_sinogram(const std::filesystem::path& path, const Sinogram& sino) {
  sino.validate();
  if (sino.geometry.mode != BeamMode::parallel)
    throw ContractError(
        "sinogram files store parallel geometry only; rebin fan data first");
  const Geometry& g = sino.geometry;
  std::string out = "SINO " + std::to_string(g.n_angles) + " " +
                    std::to_string(g.n_detectors) + " " +
                    format_double(g.angle_step_deg) + " " +
                    format_double(g.detector_spacing_mm) + "\n";
  for (int a = 0; a < g.n_angles; ++a) {
    for (int d = 0; d < g.n_detectors; ++d) {
      if (d) out += ' ';
      out += format_double(sino.at(a, d));
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

Sinogram read_sinogram(const std::filesystem::path& path) {
  const std::string text = read_whole_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) parse_fail(path, 1, "empty file, expected SINO header");

  const auto head = split_ws(lines[0]);
  if (head.size() != 5 || head[0] != "SINO")
    parse_fail(path, 1,
               "expected 'SINO <n_angles> <n_detectors> <angle_step_deg> "
               "<detector_spacing_mm>'");

  Sinogram sino;
  Geometry& g = sino.geometry;
  g.mode = BeamMode::parallel;
  g.n_angles = int(parse_int(path, 1, head[1]));
  g.n_detectors = int(parse_int(path, 1, head[2]));
  g.angle_step_deg = parse_double(path, 1, head[3]);
  g.detector_spacing_mm = parse_double(path, 1, head[4]);
  if (g.n_angles < 1 || g.n_detectors < 1)
    parse_fail(path, 1, "angle and detector counts must be positive");
  if (lines.size() != std::size_t(g.n_angles) + 1)
    parse_fail(path, int(lines.size()),
               "expected " + std::to_string(g.n_angles) + " data rows, found " +
                   std::to_string(lines.size() - 1));

  sino.data.resize(std::size_t(g.n_angles) * std::size_t(g.n_detectors));
  for (int a = 0; a < g.n_angles; ++a) {
    const int line_no = a + 2;
    const auto tokens = split_ws(lines[std::size_t(a) + 1]);
    if (tokens.size() != std::size_t(g.n_detectors))
      parse_fail(path, line_no,
                 "expected " + std::to_string(g.n_detectors) + " values, found " +
                     std::to_string(tokens.size()));
    for (int d = 0; d < g.n_detectors; ++d)
      sino.at(a, d) = parse_double(path, line_no, tokens[std::size_t(d)]);
  }
  sino.validate();
  return sino;
}

void write_image(const std::filesystem::path& path, const ImageGrid& img) {
  img.validate();
  std::string out = "IMG " + std::to_string(img.width) + " " +
                    std::to_string(img.height) + " " +
                    format_double(img.pixel_size_mm) + " " +
                    semantics_name(img.semantics) + "\n";
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      if (c) out += ' ';
      out += format_double(img.at(r, c));
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

ImageGrid read_image(const std::filesystem::path& path) {
  const std::string text = read_whole_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) parse_fail(path, 1, "empty file, expected IMG header");

  const auto head = split_ws(lines[0]);
  if (head.size() != 5 || head[0] != "IMG")
    parse_fail(path, 1,
               "expected 'IMG <width> <height> <pixel_size_mm> <semantics>'");

  ImageGrid img;
  img.width = int(parse_int(path, 1, head[1]));
  img.height = int(parse_int(path, 1, head[2]));
  img.pixel_size_mm = parse_double(path, 1, head[3]);
  try {
    img.semantics = semantics_from_name(std::string(head[4]));
  } catch (const ParseError& e) {
    parse_fail(path, 1, e.what());
  }
  if (img.width < 1 || img.height < 1)
    parse_fail(path, 1, "image dimensions must be positive");
  if (lines.size() != std::size_t(img.height) + 1)
    parse_fail(path, int(lines.size()),
               "expected " + std::to_string(img.height) + " rows, found " +
                   std::to_string(lines.size() - 1));

  img.data.resize(std::size_t(img.width) * std::size_t(img.height));
  for (int r = 0; r < img.height; ++r) {
    const int line_no = r + 2;
    const auto tokens = split_ws(lines[std::size_t(r) + 1]);
    if (tokens.size() != std::size_t(img.width))
      parse_fail(path, line_no,
                 "expected " + std::to_string(img.width) + " values, found " +
                     std::to_string(tokens.size()));
    for (int c = 0; c < img.width; ++c)
      img.at(r, c) = parse_double(path, line_no, tokens[std::size_t(c)]);
  }
  img.validate();
  return img;
}

void write_pgm(const std::filesystem::path& path, const ImageGrid& img,
               double window_lo, double window_hi) {
  img.validate();
  if (!(window_hi > window_lo))
    throw ContractError("write_pgm: window must be non-empty");
  std::string out = "P2\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  for (int r = img.height - 1; r >= 0; --r) {
    for (int c = 0; c < img.width; ++c) {
      const double u = (img.at(r, c) - window_lo) / (window_hi - window_lo);
      const int v = std::clamp(int(std::lround(u * 255.0)), 0, 255);
      if (c) out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

void write_ctm_table(const std::filesystem::path& path, const CtmTable& table) {
  table.validate();
  std::string out = "CTM " + std::to_string(table.block_edge) + "\n";
  const int bits = table.block_edge * table.block_edge;
  std::vector<std::uint32_t> ids;
  ids.reserve(table.values.size());
  for (const auto& [id, v] : table.values) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (std::uint32_t id : ids) {
    std::string pattern(std::size_t(bits), '0');
    for (int b = 0; b < bits; ++b)
      if (id & (1u << (bits - 1 - b))) pattern[std::size_t(b)] = '1';
    out += pattern + " " + format_double(table.values.at(id)) + "\n";
  }
  write_text_atomic(path, out);
}

CtmTable read_ctm_table(const std::filesystem::path& path) {
  const std::string text = read_whole_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) parse_fail(path, 1, "empty file, expected CTM header");

  const auto head = split_ws(lines[0]);
  if (head.size() != 2 || head[0] != "CTM")
    parse_fail(path, 1, "expected 'CTM <block_edge>'");

  CtmTable table;
  table.block_edge = int(parse_int(path, 1, head[1]));
  if (table.block_edge < 1 || table.block_edge > 5)
    parse_fail(path, 1, "block edge must lie in [1, 5]");
  const auto bits = std::size_t(table.block_edge) * std::size_t(table.block_edge);

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const int line_no = int(li) + 1;
    const auto tokens = split_ws(lines[li]);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      parse_fail(path, line_no, "expected '<bit string> <value>'");
    if (tokens[0].size() != bits)
      parse_fail(path, line_no,
                 "bit string must have " + std::to_string(bits) + " digits");
    std::uint32_t id = 0;
    for (char ch : tokens[0]) {
      if (ch != '0' && ch != '1')
        parse_fail(path, line_no, "bit string must be 0s and 1s");
      id = (id << 1) | std::uint32_t(ch == '1');
    }
    const double v = parse_double(path, line_no, tokens[1]);
    if (!table.values.emplace(id, v).second)
      parse_fail(path, line_no, "duplicate pattern");
  }
  try {
    table.validate();
  } catch (const ContractError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return table;
}

}  // namespace polyct
