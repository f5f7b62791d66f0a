#include "hkecc/cost_model.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hkecc/errors.hpp"

namespace hkecc::cost {

namespace {

double pow3(std::size_t k) {
  double r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= 3;
  return r;
}

constexpr MeasuredRow kKaratsubaRows[] = {
    {6, 16, 6.002, 96.03},       {11, 58, 7.059, 409.42},      {21, 206, 9.083, 1871.10},
    {41, 695, 10.562, 7340.59},  {82, 2306, 13.280, 30623.68}, {163, 7762, 20.282, 157428.88},
};

constexpr MeasuredRow kSchoolbookRows[] = {
    {6, 15, 5.718, 85.77},       {11, 49, 6.363, 311.79},      {21, 185, 8.116, 1501.46},
    {41, 694, 9.655, 6700.57},   {82, 2599, 12.031, 31268.57}, {163, 9982, 18.129, 180963.68},
};

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Schoolbook: return "pm";
    case Family::Karatsuba: return "km";
    case Family::Hybrid: return "hm";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "pm" || name == "schoolbook") return Family::Schoolbook;
  if (name == "km" || name == "karatsuba") return Family::Karatsuba;
  if (name == "hm" || name == "hybrid") return Family::Hybrid;
  throw ContractViolation("unknown multiplier family '" + std::string(name) + "'");
}

std::size_t ceil_log2(std::size_t n) {
  if (n == 0) throw ContractViolation("ceil_log2(0)");
  return n == 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

CostReport km_cost(std::size_t n) {
  if (n == 0) throw ContractViolation("km_cost: n must be >= 1");
  CostReport r;
  r.family = Family::Karatsuba;
  r.n = r.padded_n = n;
  r.k = ceil_log2(n);
  r.integral = std::has_single_bit(n);
  // n^{log2 3} is exactly 3^{log2 n} for powers of two.
  const double n_log3 = r.integral ? pow3(r.k) : std::pow(static_cast<double>(n), std::log2(3.0));
  r.gates.and_gates = n_log3;
  r.gates.xor_gates = 6 * n_log3 - 8 * static_cast<double>(n) + 2;
  r.delay = {1, r.k == 0 ? 0 : 3 * r.k - 1};
  return r;
}

CostReport pm_cost(std::size_t n) {
  if (n == 0) throw ContractViolation("pm_cost: n must be >= 1");
  CostReport r;
  r.family = Family::Schoolbook;
  r.n = r.padded_n = n;
  const auto nd = static_cast<double>(n);
  r.gates = {nd * nd, (nd - 1) * (nd - 1)};
  r.delay = {1, ceil_log2(n)};
  return r;
}

CostReport hm_cost(std::size_t n, std::size_t k) {
  if (n == 0) throw ContractViolation("hm_cost: n must be >= 1");
  if (k > ceil_log2(n)) {
    throw ContractViolation("hm_cost: k = " + std::to_string(k) + " exceeds ceil(log2 " + std::to_string(n) +
                            ") = " + std::to_string(ceil_log2(n)));
  }
  const std::size_t block = std::size_t{1} << k;
  const std::size_t leaf = (n + block - 1) / block;
  CostReport r;
  r.family = Family::Hybrid;
  r.n = n;
  r.padded_n = leaf * block;
  r.k = k;
  const double p3 = pow3(k);
  const auto p2 = static_cast<double>(block);
  const auto l = static_cast<double>(leaf);
  r.gates.and_gates = p3 * l * l;
  // 8n((3/2)^k - 1) written as 8 (n/2^k)(3^k - 2^k) to stay in integers.
  r.gates.xor_gates = p3 * (l - 1) * (l - 1) + 8 * l * (p3 - p2) - 2 * (p3 - 1);
  r.delay = {1, 3 * k + ceil_log2(leaf)};
  return r;
}

double atp(double area, double delay) {
  if (!(area > 0) || !(delay > 0)) throw ContractViolation("atp: area and delay must be positive");
  return area * delay;
}

CutoffRecommendation recommend_cutoff(std::size_t n, const Weights& w) {
  if (n < 2) throw ContractViolation("recommend_cutoff: n must be >= 2");
  CutoffRecommendation rec;
  for (std::size_t k = 0; k <= ceil_log2(n); ++k) {
    rec.sweep.push_back(hm_cost(n, k));
    rec.atp.push_back(rec.sweep.back().atp_model(w));
    if (rec.atp.back() < rec.atp[rec.best_k]) rec.best_k = k;
  }
  const CostReport& best = rec.sweep[rec.best_k];
  rec.cutoff_width = best.padded_n >> best.k;
  return rec;
}

std::span<const MeasuredRow> karatsuba_reference() { return kKaratsubaRows; }
std::span<const MeasuredRow> schoolbook_reference() { return kSchoolbookRows; }
ReferenceTables reference_tables() { return {kKaratsubaRows, kSchoolbookRows}; }

std::string to_record(const CostReport& r, const Weights& w) {
  const nlohmann::json j = {
      {"family", family_name(r.family)},     {"n", r.n},
      {"k", r.k},                            {"and_gates", r.gates.and_gates},
      {"xor_gates", r.gates.xor_gates},      {"ta_coeff", r.delay.ta_coeff},
      {"tx_coeff", r.delay.tx_coeff},        {"atp_model", r.atp_model(w)},
  };
  return j.dump();
}

std::string format_reports(std::span<const CostReport> reports, const Weights& w) {
  std::ostringstream out;
  out << "family      n  padded   k   leaf        AND        XOR  delay            ATP(model)\n";
  for (const auto& r : reports) {
    const int prec = r.integral ? 0 : 2;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %6zu %7zu %3zu %6zu %10s %10s  Ta+%-3zuTx %18s%s\n",
                  std::string(family_name(r.family)).c_str(), r.n, r.padded_n, r.k,
                  r.family == Family::Hybrid ? r.padded_n >> r.k : std::size_t{1},
                  fixed(r.gates.and_gates, prec).c_str(), fixed(r.gates.xor_gates, prec).c_str(),
                  r.delay.tx_coeff, fixed(r.atp_model(w), prec).c_str(), r.integral ? "" : "  (model)");
    out << line;
  }
  return out.str();
}

std::string format_measured(std::string_view title, std::span<const MeasuredRow> rows) {
  std::ostringstream out;
  out << title << '\n' << "operand   LUT   delay(ns)        ATP\n";
  for (const auto& row : rows) {
    char line[128];
    std::snprintf(line, sizeof line, "%7zu %5u %11.3f %10.2f\n", row.operand_size, row.lut, row.delay_ns, row.atp);
    out << line;
  }
  return out.str();
}

}  // namespace hkecc::cost
