#include "hkecc/sched_sim.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace hkecc::sched {

using namespace gf2m;

std::string_view unit_name(Unit u) {
  switch (u) {
    case Unit::Adder: return "adder";
    case Unit::Multiplier: return "multiplier";
    case Unit::Squarer: return "squarer";
  }
  return "?";
}

std::string_view unit_op(Unit u) {
  switch (u) {
    case Unit::Adder: return "add";
    case Unit::Multiplier: return "mul";
    case Unit::Squarer: return "sqr";
  }
  return "?";
}

std::size_t ScheduleTrace::cycle_count() const {
  std::size_t last = 0;
  for (const auto& op : ops) last = std::max(last, op.cycle);
  return last;
}

std::array<std::size_t, kUnitCount> ScheduleTrace::unit_counts() const {
  std::array<std::size_t, kUnitCount> counts{};
  for (const auto& op : ops) ++counts[static_cast<std::size_t>(op.unit)];
  return counts;
}

namespace {

FieldElement apply(const MicroOp& op, std::span<const FieldElement* const> in, const FieldContext& f) {
  const std::size_t arity = op.unit == Unit::Squarer ? 1 : 2;
  if (in.size() != arity) {
    throw ScheduleError(std::string(unit_name(op.unit)) + " op '" + op.destination + "' has " +
                        std::to_string(in.size()) + " operands");
  }
  switch (op.unit) {
    case Unit::Adder: return add(*in[0], *in[1]);
    case Unit::Multiplier: return mul(*in[0], *in[1], f);
    case Unit::Squarer: return square(*in[0], f);
  }
  throw ScheduleError("unknown unit");
}

}  // namespace

void execute(const ScheduleTrace& program, RegisterFile& regs, const FieldContext& field) {
  std::map<std::string, std::size_t, std::less<>> written;
  for (const auto& [name, value] : regs) written.emplace(name, 0);

  std::size_t i = 0;
  while (i < program.ops.size()) {
    const std::size_t cycle = program.ops[i].cycle;
    if (cycle == 0) throw ScheduleError("cycles are numbered from 1");
    std::size_t end = i;
    while (end < program.ops.size() && program.ops[end].cycle == cycle) ++end;
    if (end < program.ops.size() && program.ops[end].cycle < cycle) {
      throw ScheduleError("program ops are not ordered by cycle");
    }

    std::array<bool, kUnitCount> busy{};
    struct Produced {
      FieldElement value;
      Unit unit;
    };
    std::map<std::string, Produced, std::less<>> produced;

    auto run = [&](const MicroOp& op) {
      std::vector<const FieldElement*> in;
      for (const auto& src : op.sources) {
        if (op.chained) {
          const auto same = produced.find(src);
          if (same != produced.end()) {
            if (same->second.unit != Unit::Adder || op.unit != Unit::Squarer) {
              throw ScheduleError("cycle " + std::to_string(cycle) + ": only adder->squarer chaining is allowed");
            }
            in.push_back(&same->second.value);
            continue;
          }
        }
        const auto w = written.find(src);
        if (w == written.end()) {
          throw ScheduleError("cycle " + std::to_string(cycle) + ": '" + src + "' read before it is written");
        }
        if (w->second >= cycle) {
          throw ScheduleError("cycle " + std::to_string(cycle) + ": '" + src + "' written in the same cycle");
        }
        in.push_back(&regs.at(src));
      }
      FieldElement value = apply(op, in, field);
      if (!produced.emplace(op.destination, Produced{std::move(value), op.unit}).second) {
        throw ScheduleError("cycle " + std::to_string(cycle) + ": '" + op.destination + "' written twice");
      }
    };

    for (std::size_t j = i; j < end; ++j) {
      const auto u = static_cast<std::size_t>(program.ops[j].unit);
      if (busy[u]) {
        throw ScheduleError("cycle " + std::to_string(cycle) + ": " +
                            std::string(unit_name(program.ops[j].unit)) + " issued twice");
      }
      busy[u] = true;
    }
    for (std::size_t j = i; j < end; ++j) {
      if (!program.ops[j].chained) run(program.ops[j]);
    }
    for (std::size_t j = i; j < end; ++j) {
      if (program.ops[j].chained) run(program.ops[j]);
    }
    for (auto& [name, p] : produced) {
      regs.insert_or_assign(name, std::move(p.value));
      written.insert_or_assign(name, cycle);
    }
    i = end;
  }
}

namespace {

// X1 <-> X2, Z1 <-> Z2 inside a register or temporary name.
std::string mirror(std::string s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if ((s[i] == 'X' || s[i] == 'Z') && (s[i + 1] == '1' || s[i + 1] == '2')) {
      s[i + 1] = s[i + 1] == '1' ? '2' : '1';
    }
  }
  return s;
}

}  // namespace

ScheduleTrace iteration_program(bool bit) {
  using U = Unit;
  ScheduleTrace t;
  t.ops = {
      {1, U::Multiplier, {"X2", "Z1"}, "X2Z1"},
      {1, U::Squarer, {"X2"}, "X2^2"},
      {2, U::Multiplier, {"X1", "Z2"}, "X1Z2"},
      {2, U::Squarer, {"Z2"}, "Z2^2"},
      {3, U::Adder, {"X1Z2", "X2Z1"}, "X1Z2+X2Z1"},
      {3, U::Multiplier, {"X1Z2", "X2Z1"}, "X1Z1X2Z2"},
      {3, U::Squarer, {"X1Z2+X2Z1"}, "Z1", true},
      {4, U::Multiplier, {"Z1", "xP"}, "Z1xP"},
      {4, U::Squarer, {"Z2^2"}, "Z2^4"},
      {5, U::Adder, {"Z1xP", "X1Z1X2Z2"}, "X1"},
      {5, U::Multiplier, {"b", "Z2^4"}, "bZ2^4"},
      {5, U::Squarer, {"X2^2"}, "X2^4"},
      {6, U::Adder, {"bZ2^4", "X2^4"}, "X2"},
      {6, U::Multiplier, {"X2^2", "Z2^2"}, "Z2"},
  };
  if (!bit) {
    for (auto& op : t.ops) {
      for (auto& s : op.sources) s = mirror(s);
      op.destination = mirror(op.destination);
    }
  }
  return t;
}

ScheduleTrace list_schedule(std::span<const DataflowOp> ops) {
  std::map<std::string, std::size_t, std::less<>> ready;
  std::vector<std::array<bool, kUnitCount>> busy;
  ScheduleTrace t;
  for (const auto& op : ops) {
    std::size_t cycle = 1;
    for (const auto& s : op.sources) {
      if (const auto it = ready.find(s); it != ready.end()) cycle = std::max(cycle, it->second + 1);
    }
    const auto u = static_cast<std::size_t>(op.unit);
    for (;; ++cycle) {
      if (busy.size() < cycle) busy.resize(cycle, {});
      if (!busy[cycle - 1][u]) break;
    }
    busy[cycle - 1][u] = true;
    ready.insert_or_assign(op.destination, cycle);
    t.ops.push_back({cycle, op.unit, op.sources, op.destination});
  }
  std::stable_sort(t.ops.begin(), t.ops.end(), [](const MicroOp& a, const MicroOp& b) { return a.cycle < b.cycle; });
  return t;
}

std::vector<DataflowOp> init_dataflow() {
  return {
      {Unit::Squarer, {"xP"}, "Z2"},
      {Unit::Squarer, {"Z2"}, "xP^4"},
      {Unit::Adder, {"xP^4", "b"}, "X2"},
  };
}

std::vector<DataflowOp> recovery_dataflow_pre() {
  return {
      {Unit::Multiplier, {"Z1", "Z2"}, "Z1Z2"},
      {Unit::Multiplier, {"xP", "Z2"}, "xPZ2"},
      {Unit::Multiplier, {"xP", "Z1"}, "xPZ1"},
      {Unit::Squarer, {"xP"}, "xP^2"},
      {Unit::Multiplier, {"xP", "Z1Z2"}, "den"},
      {Unit::Adder, {"X1", "xPZ1"}, "X1+xPZ1"},
      {Unit::Adder, {"X2", "xPZ2"}, "X2+xPZ2"},
      {Unit::Adder, {"xP^2", "yP"}, "xP^2+yP"},
      {Unit::Multiplier, {"X1+xPZ1", "X2+xPZ2"}, "lhs"},
      {Unit::Multiplier, {"xP^2+yP", "Z1Z2"}, "rhs"},
      {Unit::Adder, {"lhs", "rhs"}, "bracket"},
  };
}

std::vector<DataflowOp> recovery_dataflow_post() {
  return {
      {Unit::Multiplier, {"xPZ2", "inv"}, "1/Z1"},
      {Unit::Multiplier, {"X1", "1/Z1"}, "x3"},
      {Unit::Adder, {"xP", "x3"}, "xP+x3"},
      {Unit::Multiplier, {"xP+x3", "bracket"}, "num"},
      {Unit::Multiplier, {"num", "inv"}, "num/den"},
      {Unit::Adder, {"num/den", "yP"}, "y3"},
  };
}

IterationResult schedule_iteration(const LadderState& s, bool bit, const FieldElement& xp, const CurveParams& c) {
  RegisterFile regs{{"X1", s.x1}, {"Z1", s.z1}, {"X2", s.x2}, {"Z2", s.z2}, {"xP", xp}, {"b", c.b}};
  IterationResult r{iteration_program(bit), {}};
  execute(r.trace, regs, c.field);
  r.state = {regs.at("X1"), regs.at("Z1"), regs.at("X2"), regs.at("Z2")};
  return r;
}

Accounting parse_accounting(std::string_view name) {
  if (name == "paper") return Accounting::Paper;
  if (name == "honest") return Accounting::Honest;
  throw ContractViolation("accounting mode must be 'paper' or 'honest'");
}

Simulation simulate_ecpm(const Scalar& k, const AffinePoint& p, const CurveParams& c, const SimulationOptions& opts) {
  if (!ecpm::on_curve(p, c)) throw InvalidPoint("point is not on the curve");
  if (p.is_infinity()) throw ContractViolation("simulate_ecpm: P must be finite");
  if (p.x().is_zero()) throw DegenerateBasePoint();
  const Scalar kr = ecpm::reduce_scalar(k, c);
  if (kr.is_zero()) throw ContractViolation("simulate_ecpm: scalar vanishes modulo the group order");

  const auto& f = c.field;
  Simulation sim;
  CycleBudget& b = sim.budget;

  RegisterFile regs{{"xP", p.x()}, {"yP", p.y()}, {"b", c.b}, {"X1", p.x()}, {"Z1", f.one()}};
  const auto init_df = init_dataflow();
  const ScheduleTrace init = list_schedule(init_df);
  execute(init, regs, f);
  LadderState s{regs.at("X1"), regs.at("Z1"), regs.at("X2"), regs.at("Z2")};

  const std::size_t t = kr.bit_length();
  for (std::size_t i = t - 1; i-- > 0;) {
    IterationResult it = schedule_iteration(s, kr.bit(i), p.x(), c);
    if (b.loop_iterations > 0 && it.trace.cycle_count() != b.cycles_per_iteration) {
      throw ScheduleError("iteration programs differ in length");
    }
    b.cycles_per_iteration = it.trace.cycle_count();
    ++b.loop_iterations;
    s = std::move(it.state);
    sim.iterations.push_back(std::move(it.trace));
  }
  if (b.loop_iterations == 0) b.cycles_per_iteration = iteration_program(true).cycle_count();

  std::size_t measured_inversion = 0;
  std::size_t post_cycles = 0;
  if (s.z1.is_zero()) {
    sim.result = AffinePoint::infinity();
  } else if (s.z2.is_zero()) {
    sim.result = ecpm::negate(p);
  } else {
    RegisterFile post{{"X1", s.x1}, {"Z1", s.z1}, {"X2", s.x2}, {"Z2", s.z2}, {"xP", p.x()}, {"yP", p.y()}};
    const auto pre_df = recovery_dataflow_pre();
    const auto post_df = recovery_dataflow_post();
    const ScheduleTrace pre = list_schedule(pre_df);
    execute(pre, post, f);
    const gf2m::Inversion inv = gf2m::invert_counted(post.at("den"), f);
    measured_inversion = inv.iterations;
    post.insert_or_assign("inv", inv.value);
    const ScheduleTrace tail = list_schedule(post_df);
    execute(tail, post, f);
    sim.result = AffinePoint(post.at("x3"), post.at("y3"));
    post_cycles = pre.cycle_count() + tail.cycle_count();
  }

  b.inversion_cycles = opts.worst_case_inversion ? 2 * f.m() : measured_inversion;
  if (opts.accounting == Accounting::Honest) {
    b.init_cycles = init.cycle_count();
    b.post_cycles = post_cycles;
  }
  b.total = b.loop_iterations * b.cycles_per_iteration + b.inversion_cycles + b.init_cycles + b.post_cycles;
  return sim;
}

Simulation simulate_ecpm(const Scalar& k, const CurveParams& c, const SimulationOptions& opts) {
  return simulate_ecpm(k, c.g, c, opts);
}

double throughput_us(const CycleBudget& budget, double freq_mhz) {
  if (!(freq_mhz > 0)) throw ContractViolation("frequency must be positive");
  return static_cast<double>(budget.total) / freq_mhz;
}

namespace {

constexpr DesignReference kDesigns[] = {
    {"Nguyen", 3806, 800, 52012, 65.0, 247.39},
    {"Imran", 10128, 135, 3426, 25.4, 257.25},
    {"Khan", 41090, 159, 450, 2.83, 116.28},
    {"This work", 14195, 213, 1298, 6.09, 86.45},
};

}  // namespace

std::span<const DesignReference> design_reference() { return kDesigns; }

std::vector<std::string> trace_records(const ScheduleTrace& t) {
  std::vector<std::string> out;
  for (const auto& op : t.ops) {
    const nlohmann::json j = {
        {"cycle_index", op.cycle}, {"unit", unit_name(op.unit)},   {"op", unit_op(op.unit)},
        {"sources", op.sources},   {"destination", op.destination}, {"chained", op.chained},
    };
    out.push_back(j.dump());
  }
  return out;
}

std::string budget_record(const CycleBudget& b) {
  const nlohmann::json j = {
      {"loop_iterations", b.loop_iterations}, {"cycles_per_iteration", b.cycles_per_iteration},
      {"inversion_cycles", b.inversion_cycles}, {"init_cycles", b.init_cycles},
      {"post_cycles", b.post_cycles},         {"total", b.total},
  };
  return j.dump();
}

}  // namespace hkecc::sched
