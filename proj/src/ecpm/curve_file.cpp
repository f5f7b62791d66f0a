#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "hkecc/ecpm.hpp"

namespace hkecc::ecpm {

using namespace gf2m;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_decimal(std::string_view key, std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("curve file: '" + std::string(key) + "' must be a decimal integer");
  }
  return v;
}

}  // namespace

AffinePoint parse_point(std::string_view text, std::size_t m) {
  text = trim(text);
  if (text == "INF" || text == "inf") return AffinePoint::infinity();
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("point must be 'INF' or 'x,y'");
  return {parse_hex(trim(text.substr(0, comma)), m), parse_hex(trim(text.substr(comma + 1)), m)};
}

std::string format_point(const AffinePoint& p) {
  if (p.is_infinity()) return "INF";
  return to_hex(p.x()) + "," + to_hex(p.y());
}

const CurveParams& CurveFile::require_curve() const {
  if (!curve) throw ParseError("curve file defines a field only; curve keys a, b, gx, gy, n, h are missing");
  return *curve;
}

CurveFile parse_curve_file(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("curve file line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    if (!kv.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
      throw ParseError("curve file: duplicate key '" + key + "'");
    }
  }

  auto get = [&](std::string_view key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("curve file: missing key '" + std::string(key) + "'");
    return it->second;
  };

  const std::size_t m = parse_decimal("m", get("m"));
  if (m == 0) throw ParseError("curve file: m must be positive");
  const std::size_t cutoff = kv.count("cutoff") ? parse_decimal("cutoff", get("cutoff")) : 0;
  const Polynomial f = parse_hex_polynomial(get("f"), m + 1);
  if (f.degree() != static_cast<long>(m)) throw ParseError("curve file: f does not have degree m");
  FieldContext field(f, cutoff);

  static constexpr std::string_view kCurveKeys[] = {"a", "b", "gx", "gy", "n", "h"};
  std::size_t present = 0;
  for (auto k : kCurveKeys) present += kv.count(k);
  if (present == 0) return {std::move(field), std::nullopt};

  CurveParams c = CurveParams::make(kv.count("name") ? get("name") : std::string("unnamed"), field,
                                    parse_hex(get("a"), m), parse_hex(get("b"), m),
                                    AffinePoint(parse_hex(get("gx"), m), parse_hex(get("gy"), m)),
                                    parse_hex_integer(get("n")), parse_hex_integer(get("h")));
  return {std::move(field), std::move(c)};
}

CurveFile load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open curve file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve_file(ss.str());
}

std::string format_curve_file(const CurveParams& c) {
  std::ostringstream out;
  out << "name = " << c.name << '\n'
      << "m = " << c.m() << '\n'
      << "f = " << to_hex(c.field.modulus()) << '\n'
      << "a = " << to_hex(c.a, true) << '\n'
      << "b = " << to_hex(c.b, true) << '\n'
      << "gx = " << to_hex(c.g.x(), true) << '\n'
      << "gy = " << to_hex(c.g.y(), true) << '\n'
      << "n = " << to_hex_integer(c.n) << '\n'
      << "h = " << to_hex_integer(c.h) << '\n';
  if (c.field.cutoff() != std::min(kDefaultCutoff, c.m())) out << "cutoff = " << c.field.cutoff() << '\n';
  return out.str();
}

}  // namespace hkecc::ecpm
