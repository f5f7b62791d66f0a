#pragma once

// Analytical gate-count and critical-path model for the three multiplier
// families (schoolbook, Karatsuba, hybrid), plus the measured FPGA reference
// rows they are reported against.
//
// Delays are symbolic: ta_coeff * T_a + tx_coeff * T_x.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hkecc::cost {

enum class Family { Schoolbook, Karatsuba, Hybrid };

/// "pm", "km", "hm".
std::string_view family_name(Family f);
Family parse_family(std::string_view name);

struct GateCount {
  double and_gates = 0;
  double xor_gates = 0;
  friend bool operator==(const GateCount&, const GateCount&) = default;
};

struct DelayExpr {
  std::size_t ta_coeff = 1;
  std::size_t tx_coeff = 0;
  double evaluate(double ta, double tx) const { return ta_coeff * ta + tx_coeff * tx; }
  friend bool operator==(const DelayExpr&, const DelayExpr&) = default;
};

/// Neutral weighting by default: every gate counts once, T_a = T_x = 1.
struct Weights {
  double ta = 1;
  double tx = 1;
  double and_weight = 1;
  double xor_weight = 1;
};

struct CostReport {
  Family family = Family::Schoolbook;
  std::size_t n = 0;         ///< requested operand width
  std::size_t padded_n = 0;  ///< width the formulas were evaluated at
  std::size_t k = 0;         ///< Karatsuba stages (hybrid; full depth for km)
  GateCount gates;
  DelayExpr delay;
  /// False when the counts involve a fractional power (km at non-power-of-two n).
  bool integral = true;

  double area(const Weights& w = {}) const {
    return w.and_weight * gates.and_gates + w.xor_weight * gates.xor_gates;
  }
  double atp_model(const Weights& w = {}) const { return area(w) * delay.evaluate(w.ta, w.tx); }
};

std::size_t ceil_log2(std::size_t n);

/// XOR 6n^{log2 3} - 8n + 2, AND n^{log2 3}, delay T_a + (3 ceil(log2 n) - 1) T_x.
/// The T_x coefficient is floored at zero so n = 1 is a single AND gate.
CostReport km_cost(std::size_t n);

/// XOR (n-1)^2, AND n^2, delay T_a + ceil(log2 n) T_x.
CostReport pm_cost(std::size_t n);

/// k Karatsuba stages over schoolbook leaves of width n'/2^k, where n' is n
/// rounded up to a multiple of 2^k:
///   XOR 3^k (n'/2^k - 1)^2 + 8n'((3/2)^k - 1) - 2(3^k - 1)
///   AND 3^k (n'/2^k)^2
///   delay T_a + 3k T_x + ceil(log2(n'/2^k)) T_x
/// Requires k <= ceil(log2 n).
CostReport hm_cost(std::size_t n, std::size_t k);

/// Area-time product; both factors must be positive.
double atp(double area, double delay);

struct CutoffRecommendation {
  std::size_t best_k = 0;
  std::size_t cutoff_width = 0;  ///< schoolbook leaf width for best_k
  std::vector<CostReport> sweep;  ///< one report per k = 0..ceil(log2 n)
  std::vector<double> atp;        ///< modeled ATP per sweep entry
};

/// Evaluates every admissible k and returns the modeled-ATP minimum, ties to
/// the smaller k.
CutoffRecommendation recommend_cutoff(std::size_t n, const Weights& w = {});

struct MeasuredRow {
  std::size_t operand_size;
  unsigned lut;
  double delay_ns;
  double atp;
};

/// Virtex-7 measurements: Karatsuba multiplier, widths 6..163.
std::span<const MeasuredRow> karatsuba_reference();
/// Virtex-7 measurements: schoolbook multiplier, widths 6..163.
std::span<const MeasuredRow> schoolbook_reference();

struct ReferenceTables {
  std::span<const MeasuredRow> karatsuba;
  std::span<const MeasuredRow> schoolbook;
};
ReferenceTables reference_tables();

/// One JSON object per line: family, n, k, and_gates, xor_gates, ta_coeff,
/// tx_coeff, atp_model.
std::string to_record(const CostReport& r, const Weights& w = {});

/// Fixed-width text table of the given reports.
std::string format_reports(std::span<const CostReport> reports, const Weights& w = {});
std::string format_measured(std::string_view title, std::span<const MeasuredRow> rows);

}  // namespace hkecc::cost
