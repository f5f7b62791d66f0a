#pragma once

// Cycle-level model of the point-multiplication datapath: one adder, one
// multiplier and one squarer, each taking one operation per cycle. The
// ladder iteration follows a fixed six-cycle program; the simulator executes
// it on real field values and checks resource and dependency legality as it
// goes.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hkecc/ecpm.hpp"

namespace hkecc::sched {

using ecpm::AffinePoint;
using ecpm::CurveParams;
using ecpm::LadderState;
using ecpm::Scalar;
using gf2m::FieldElement;

enum class Unit { Adder, Multiplier, Squarer };
inline constexpr std::size_t kUnitCount = 3;

std::string_view unit_name(Unit u);
/// "add", "mul", "sqr".
std::string_view unit_op(Unit u);

struct MicroOp {
  std::size_t cycle = 0;  ///< 1-based
  Unit unit = Unit::Adder;
  std::vector<std::string> sources;
  std::string destination;
  /// Reads a value the adder produces in the same cycle (adder -> squarer only).
  bool chained = false;
};

struct ScheduleTrace {
  std::vector<MicroOp> ops;

  std::size_t cycle_count() const;
  /// Indexed by Unit.
  std::array<std::size_t, kUnitCount> unit_counts() const;
};

/// Raised when a program breaks resource or dependency rules. Generated
/// programs must never trigger it.
class ScheduleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using RegisterFile = std::map<std::string, FieldElement, std::less<>>;

/// Runs `program` against `regs`. Values are committed at the end of each
/// cycle; an operand must have been written in an earlier cycle (or be an
/// initial register), except for a chained squarer reading the adder's
/// same-cycle result.
void execute(const ScheduleTrace& program, RegisterFile& regs, const gf2m::FieldContext& field);

/// The six-cycle ladder iteration. Bit 1 updates (X1, Z1) by addition and
/// (X2, Z2) by doubling; bit 0 uses the mirrored register names.
/// Reads X1, Z1, X2, Z2, xP, b.
ScheduleTrace iteration_program(bool bit);

/// Dataflow operation for the list scheduler (no cycle assigned yet).
struct DataflowOp {
  Unit unit;
  std::vector<std::string> sources;
  std::string destination;
};

/// Greedy as-soon-as-possible placement, one op per unit per cycle, no
/// chaining. Ops must be in topological order.
ScheduleTrace list_schedule(std::span<const DataflowOp> ops);

/// Affine-to-projective conversion. Reads xP, b; writes X1, Z1, X2, Z2.
std::vector<DataflowOp> init_dataflow();
/// Work before the final inversion. Writes "den" (to be inverted) and
/// "bracket".
std::vector<DataflowOp> recovery_dataflow_pre();
/// Work after the inversion. Reads "inv"; writes x3, y3.
std::vector<DataflowOp> recovery_dataflow_post();

struct IterationResult {
  ScheduleTrace trace;
  LadderState state;
};

IterationResult schedule_iteration(const LadderState& s, bool bit, const FieldElement& xp, const CurveParams& c);

/// paper: Step 1 and the recovery arithmetic cost no cycles beyond the
/// inversion. honest: they are list-scheduled on the same three units.
enum class Accounting { Paper, Honest };
Accounting parse_accounting(std::string_view name);

struct CycleBudget {
  std::size_t loop_iterations = 0;
  std::size_t cycles_per_iteration = 0;
  std::size_t inversion_cycles = 0;
  std::size_t init_cycles = 0;
  std::size_t post_cycles = 0;
  std::size_t total = 0;
};

struct SimulationOptions {
  Accounting accounting = Accounting::Paper;
  /// Charge 2m cycles for the inversion instead of the measured count.
  bool worst_case_inversion = false;
};

struct Simulation {
  CycleBudget budget;
  AffinePoint result;
  std::vector<ScheduleTrace> iterations;
};

/// Simulates kP. k is reduced modulo the group order and must not vanish.
Simulation simulate_ecpm(const Scalar& k, const AffinePoint& p, const CurveParams& c,
                         const SimulationOptions& opts = {});
/// Same with P = G.
Simulation simulate_ecpm(const Scalar& k, const CurveParams& c, const SimulationOptions& opts = {});

/// total / freq_mhz, in microseconds.
double throughput_us(const CycleBudget& budget, double freq_mhz);

struct DesignReference {
  std::string_view design;
  unsigned area_luts;
  double freq_mhz;
  std::size_t cycles;
  double time_us;
  double atp_thousands;  ///< LUT x us / 1000
};

/// Published point-multiplication results over GF(2^163), this design last.
std::span<const DesignReference> design_reference();

/// One JSON object per op: cycle_index, unit, op, sources, destination, chained.
std::vector<std::string> trace_records(const ScheduleTrace& t);
std::string budget_record(const CycleBudget& b);

}  // namespace hkecc::sched
