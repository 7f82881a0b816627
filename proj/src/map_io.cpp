#include "maplab/map_io.hpp"

#include <charconv>
#include <vector>

#include "maplab/error.hpp"

namespace maplab {
namespace {

void append_list(std::string& out, const std::vector<Dart>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(values[i]);
  }
  out += '\n';
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ == text_.size(); }

  std::string_view next_line() {
    const auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      throw MapLabError(ErrorCode::kParseError, "missing newline at end of line");
    }
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return line;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<std::uint32_t> parse_numbers(std::string_view line) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto space = line.find(' ', pos);
    const std::string_view token =
        line.substr(pos, space == std::string_view::npos ? std::string_view::npos : space - pos);
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
        (token.size() > 1 && token[0] == '0')) {
      throw MapLabError(ErrorCode::kParseError, "bad integer '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (space == std::string_view::npos) break;
    pos = space + 1;
  }
  return out;
}

}  // namespace

std::string write_map_text(const PlaneMap& map, std::optional<VertexId> v_star) {
  std::string out = std::to_string(map.num_edges()) + ' ' + std::to_string(map.root()) + '\n';
  append_list(out, map.sigma_permutation());
  append_list(out, map.alpha_permutation());
  if (v_star) out += "point " + std::to_string(*v_star) + '\n';
  return out;
}

std::string write_map_text(const PointedPlaneMap& pointed) {
  return write_map_text(pointed.map(), pointed.v_star());
}

MapText read_map_text(std::string_view text) {
  LineReader reader(text);
  const auto header = parse_numbers(reader.next_line());
  if (header.size() != 2) throw MapLabError(ErrorCode::kParseError, "header must be 'n_edges root'");
  const std::size_t darts = 2 * static_cast<std::size_t>(header[0]);
  auto sigma = parse_numbers(reader.next_line());
  auto alpha = parse_numbers(reader.next_line());
  if (sigma.size() != darts || alpha.size() != darts) {
    throw MapLabError(ErrorCode::kParseError, "permutation lines must list 2*n_edges images");
  }
  std::optional<VertexId> v_star;
  if (!reader.at_end()) {
    const std::string_view line = reader.next_line();
    constexpr std::string_view kPrefix = "point ";
    if (!line.starts_with(kPrefix)) throw MapLabError(ErrorCode::kParseError, "expected 'point v'");
    const auto value = parse_numbers(line.substr(kPrefix.size()));
    if (value.size() != 1) throw MapLabError(ErrorCode::kParseError, "expected 'point v'");
    v_star = value[0];
  }
  if (!reader.at_end()) throw MapLabError(ErrorCode::kParseError, "trailing content");
  MapText result{PlaneMap::build(std::move(sigma), std::move(alpha), header[1]), v_star};
  if (v_star && *v_star >= result.map.num_vertices()) {
    throw MapLabError(ErrorCode::kUnknownVertex, "pointed vertex " + std::to_string(*v_star));
  }
  return result;
}

}  // namespace maplab
