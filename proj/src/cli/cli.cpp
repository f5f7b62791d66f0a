#include "hkecc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hkecc/cost_model.hpp"
#include "hkecc/ecpm.hpp"
#include "hkecc/sched_sim.hpp"

namespace hkecc::cli {

using nlohmann::json;

std::vector<gf2m::FieldElement> bench_operands(std::uint64_t seed, std::size_t count, std::size_t width) {
  std::mt19937_64 rng(seed);
  std::vector<gf2m::FieldElement> out;
  out.reserve(count);
  std::vector<gf2m::Word> words(gf2m::words_for(width));
  for (std::size_t i = 0; i < count; ++i) {
    for (auto& w : words) w = rng();
    if (width % gf2m::kWordBits != 0) words.back() &= (gf2m::Word{1} << (width % gf2m::kWordBits)) - 1;
    out.push_back(gf2m::FieldElement::from_words(width, words));
  }
  return out;
}

namespace {

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

// --- field ------------------------------------------------------------------------

struct FieldArgs {
  std::vector<std::string> positionals;
  bool json = false;
};

int cmd_field(const FieldArgs& a, std::ostream& out) {
  if (a.positionals.size() < 3) throw CLI::ValidationError("field", "usage: field <op> <operand>... <curve_file>");
  const std::string& op = a.positionals.front();
  const std::vector<std::string> operands(a.positionals.begin() + 1, a.positionals.end() - 1);
  const ecpm::CurveFile cf = ecpm::load_curve_file(a.positionals.back());
  const auto& f = cf.field;

  const bool binary = op == "add" || op == "mul";
  const bool unary = op == "square" || op == "invert";
  if (!binary && !unary) throw CLI::ValidationError("field", "op must be add, mul, square or invert");
  if (operands.size() != (binary ? 2U : 1U)) {
    throw CLI::ValidationError("field", op + " takes " + (binary ? "two operands" : "one operand"));
  }
  std::vector<gf2m::FieldElement> x;
  for (const auto& s : operands) x.push_back(gf2m::parse_hex(s, f.m()));

  gf2m::FieldElement r;
  std::size_t iterations = 0;
  if (op == "add") {
    r = gf2m::add(x[0], x[1]);
  } else if (op == "mul") {
    r = gf2m::mul(x[0], x[1], f);
  } else if (op == "square") {
    r = gf2m::square(x[0], f);
  } else {
    auto inv = gf2m::invert_counted(x[0], f);
    r = std::move(inv.value);
    iterations = inv.iterations;
  }
  if (a.json) {
    json j = {{"op", op}, {"operands", operands}, {"result", gf2m::to_hex(r)}};
    if (op == "invert") j["iterations"] = iterations;
    out << j.dump() << '\n';
  } else {
    out << gf2m::to_hex(r) << '\n';
  }
  return kOk;
}

// --- ecpm -------------------------------------------------------------------------

struct EcpmArgs {
  std::string k;
  std::string point;
  std::string curve;
  bool check = false;
  bool recover_y = true;
  bool json = false;
};

int cmd_ecpm(const EcpmArgs& a, std::ostream& out) {
  const ecpm::CurveFile cf = ecpm::load_curve_file(a.curve);
  const ecpm::CurveParams& c = cf.require_curve();
  const ecpm::Scalar k = ecpm::Scalar::from_hex(a.k);
  const ecpm::AffinePoint p = (a.point == "G" || a.point == "g") ? c.g : ecpm::parse_point(a.point, c.m());
  if (!ecpm::on_curve(p, c)) throw InvalidPoint("point is not on the curve");

  const ecpm::ScalarMulResult r = ecpm::scalar_mul_detailed(k, p, c);
  const std::string text = a.recover_y || r.point.is_infinity() ? ecpm::format_point(r.point)
                                                                : gf2m::to_hex(r.point.x());
  bool match = true;
  if (a.check) match = ecpm::double_and_add(r.reduced, p, c) == r.point;

  if (a.json) {
    json j = {{"k", r.reduced.to_hex()}, {"point", text}, {"loop_iterations", r.loop_iterations},
              {"oracle_fallback", r.oracle_fallback}};
    if (a.check) j["oracle"] = match ? "MATCH" : "MISMATCH";
    out << j.dump() << '\n';
  } else {
    out << text << '\n';
    if (a.check) out << "oracle: " << (match ? "MATCH" : "MISMATCH") << '\n';
    if (r.oracle_fallback) out << "note: x_P = 0, computed by the affine oracle\n";
  }
  return match ? kOk : kDomainError;
}

// --- cost -------------------------------------------------------------------------

struct CostArgs {
  std::size_t n = 163;
  std::string family;
  std::optional<std::size_t> k;
  double ta = 1;
  double tx = 1;
  bool sweep = false;
  bool tables = false;
  bool json = false;
};

int cmd_cost(const CostArgs& a, std::ostream& out) {
  const cost::Weights w{a.ta, a.tx, 1, 1};
  if (a.tables) {
    const auto t = cost::reference_tables();
    if (a.json) {
      auto emit = [&](std::string_view table, std::span<const cost::MeasuredRow> rows) {
        for (const auto& r : rows) {
          out << json{{"table", table}, {"operand_size", r.operand_size}, {"lut", r.lut},
                      {"delay_ns", r.delay_ns}, {"atp", r.atp}}
                     .dump()
              << '\n';
        }
      };
      emit("karatsuba", t.karatsuba);
      emit("schoolbook", t.schoolbook);
    } else {
      out << cost::format_measured("Karatsuba multiplier (Virtex-7, measured)", t.karatsuba) << '\n'
          << cost::format_measured("Schoolbook multiplier (Virtex-7, measured)", t.schoolbook);
    }
    return kOk;
  }

  std::vector<cost::CostReport> reports;
  std::optional<cost::CutoffRecommendation> rec;
  if (a.sweep) {
    rec = cost::recommend_cutoff(a.n, w);
    reports = rec->sweep;
  } else if (!a.family.empty()) {
    switch (cost::parse_family(a.family)) {
      case cost::Family::Schoolbook: reports.push_back(cost::pm_cost(a.n)); break;
      case cost::Family::Karatsuba: reports.push_back(cost::km_cost(a.n)); break;
      case cost::Family::Hybrid:
        if (!a.k) throw CLI::ValidationError("cost", "--family hm needs --k");
        reports.push_back(cost::hm_cost(a.n, *a.k));
        break;
    }
  } else {
    reports.push_back(cost::pm_cost(a.n));
    reports.push_back(cost::km_cost(a.n));
    if (a.k) {
      reports.push_back(cost::hm_cost(a.n, *a.k));
    } else if (a.n >= 2) {
      rec = cost::recommend_cutoff(a.n, w);
      reports.push_back(rec->sweep[rec->best_k]);
    }
  }

  if (a.json) {
    for (const auto& r : reports) out << cost::to_record(r, w) << '\n';
  } else {
    out << cost::format_reports(reports, w);
    if (rec) {
      out << "recommended: k=" << rec->best_k << " cutoff=" << rec->cutoff_width
          << " (modeled ATP " << fixed(rec->atp[rec->best_k], 0) << ", Ta=" << a.ta << " Tx=" << a.tx << ")\n";
    }
  }
  return kOk;
}

// --- sched ------------------------------------------------------------------------

struct SchedArgs {
  std::vector<std::string> positionals;
  bool worst_case = false;
  std::string mode = "paper";
  bool trace = false;
  std::optional<double> freq;
  bool json = false;
};

int cmd_sched(const SchedArgs& a, std::ostream& out) {
  if (a.positionals.empty() || a.positionals.size() > 2) {
    throw CLI::ValidationError("sched", "usage: sched [k] <curve_file>");
  }
  const ecpm::CurveFile cf = ecpm::load_curve_file(a.positionals.back());
  const ecpm::CurveParams& c = cf.require_curve();
  ecpm::Scalar k;
  if (a.positionals.size() == 2) {
    k = ecpm::Scalar::from_hex(a.positionals.front());
  } else if (a.worst_case) {
    k = ecpm::Scalar(c.n - 2);  // full length, and both ladder points stay finite
  } else {
    throw CLI::ValidationError("sched", "give a scalar k or --worst-case");
  }
  const sched::SimulationOptions opts{sched::parse_accounting(a.mode), a.worst_case};
  const sched::Simulation sim = sched::simulate_ecpm(k, c, opts);
  const auto& b = sim.budget;

  if (a.json) {
    out << sched::budget_record(b) << '\n';
    if (a.freq) out << json{{"freq_mhz", *a.freq}, {"time_us", sched::throughput_us(b, *a.freq)}}.dump() << '\n';
    if (a.trace && !sim.iterations.empty()) {
      for (const auto& rec : sched::trace_records(sim.iterations.front())) out << rec << '\n';
    }
    return kOk;
  }

  out << "mode                 " << a.mode << '\n'
      << "loop_iterations      " << b.loop_iterations << '\n'
      << "cycles_per_iteration " << b.cycles_per_iteration << '\n'
      << "inversion_cycles     " << b.inversion_cycles << (a.worst_case ? " (worst case 2m)" : "") << '\n'
      << "init_cycles          " << b.init_cycles << '\n'
      << "post_cycles          " << b.post_cycles << '\n'
      << "total                " << b.total << '\n';
  if (a.freq) {
    out << "time_us              " << fixed(sched::throughput_us(b, *a.freq), 2) << " (at " << *a.freq
        << " MHz)\n";
  }
  if (a.trace && !sim.iterations.empty()) {
    const auto& t = sim.iterations.front();
    out << "first iteration (bit " << sim.iterations.size() - 1 << " of k):\n";
    char line[256];
    std::snprintf(line, sizeof line, "%5s  %-24s %-24s %-24s\n", "cycle", "adder", "multiplier", "squarer");
    out << line;
    for (std::size_t cyc = 1; cyc <= t.cycle_count(); ++cyc) {
      std::array<std::string, sched::kUnitCount> cell{"-", "-", "-"};
      for (const auto& op : t.ops) {
        if (op.cycle != cyc) continue;
        std::string s;
        for (std::size_t i = 0; i < op.sources.size(); ++i) s += (i ? "," : "") + op.sources[i];
        cell[static_cast<std::size_t>(op.unit)] = s + "->" + op.destination + (op.chained ? " (chained)" : "");
      }
      std::snprintf(line, sizeof line, "%5zu  %-24s %-24s %-24s\n", cyc, cell[0].c_str(), cell[1].c_str(),
                    cell[2].c_str());
      out << line;
    }
  }
  return kOk;
}

// --- bench ------------------------------------------------------------------------

struct BenchArgs {
  std::string op = "mul";
  std::size_t iters = 20000;
  std::vector<std::size_t> cutoffs;
  std::uint64_t seed = 1;
  std::string curve;
  unsigned threads = 1;
  bool json = false;
};

template <class Fn>
double median_ns_per_op(std::size_t iters, Fn&& fn) {
  constexpr std::size_t kBatches = 15;
  const std::size_t per_batch = std::max<std::size_t>(1, iters / kBatches);
  std::vector<double> samples;
  std::size_t idx = 0;
  for (std::size_t b = 0; b < kBatches; ++b) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < per_batch; ++i) fn(idx++);
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(per_batch));
  }
  std::nth_element(samples.begin(), samples.begin() + kBatches / 2, samples.end());
  return samples[kBatches / 2];
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  ecpm::CurveParams base = a.curve.empty() ? ecpm::b163() : ecpm::load_curve_file(a.curve).require_curve();
  std::vector<std::size_t> cutoffs = a.cutoffs;
  if (cutoffs.empty()) cutoffs.push_back(base.field.cutoff());

  const std::size_t pool = 256;
  const auto xs = bench_operands(a.seed, pool, base.m());
  const auto ys = bench_operands(a.seed ^ 0x9e3779b97f4a7c15ULL, pool, base.m());
  std::vector<ecpm::Scalar> ks;
  {
    std::mt19937_64 rng(a.seed);
    for (std::size_t i = 0; i < 32; ++i) {
      ecpm::BigUint v = 0;
      for (std::size_t w = 0; w < gf2m::words_for(base.m()) + 1; ++w) v = (v << 64) | rng();
      ks.emplace_back(v % base.n);
    }
  }

  if (!a.json) {
    out << (a.threads > 1 ? "mode: throughput (" + std::to_string(a.threads) + " threads, aggregate ops/s)\n"
                          : std::string("mode: latency (single thread)\n"));
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %7s %9s %14s %14s\n", "op", "cutoff", "iters", "ns/op", "ops/s");
    out << line;
  }
  for (std::size_t cutoff : cutoffs) {
    ecpm::CurveParams c = base;
    c.field = base.field.with_cutoff(cutoff);
    const auto& f = c.field;
    std::size_t iters = a.iters;
    if (a.op == "ecpm") iters = std::max<std::size_t>(15, a.iters / 1000);

    auto one = [&](std::size_t i) {
      const auto& x = xs[i % pool];
      if (a.op == "mul") {
        volatile bool sink = gf2m::mul(x, ys[i % pool], f).is_zero();
        (void)sink;
      } else if (a.op == "square") {
        volatile bool sink = gf2m::square(x, f).is_zero();
        (void)sink;
      } else if (a.op == "invert") {
        volatile bool sink = x.is_zero() ? true : gf2m::invert(x, f).is_zero();
        (void)sink;
      } else {
        volatile bool sink = ecpm::scalar_mul(ks[i % ks.size()], c.g, c).is_infinity();
        (void)sink;
      }
    };

    double ns = 0;
    double ops_per_s = 0;
    if (a.threads > 1) {
      const auto t0 = std::chrono::steady_clock::now();
      {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < a.threads; ++w) {
          workers.emplace_back([&, w] {
            for (std::size_t i = 0; i < iters; ++i) one(i + w);
          });
        }
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ops_per_s = static_cast<double>(iters) * a.threads / secs;
      ns = 1e9 / ops_per_s;
    } else {
      ns = median_ns_per_op(iters, one);
      ops_per_s = 1e9 / ns;
    }

    if (a.json) {
      out << json{{"op", a.op}, {"cutoff", cutoff}, {"iters", iters}, {"ns_per_op", ns},
                  {"ops_per_s", ops_per_s}, {"threads", a.threads}, {"seed", a.seed}}
                 .dump()
          << '\n';
    } else {
      char line[160];
      std::snprintf(line, sizeof line, "%-8s %7zu %9zu %14.1f %14.0f\n", a.op.c_str(), cutoff, iters, ns, ops_per_s);
      out << line;
    }
  }
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GF(2^m) hybrid-Karatsuba arithmetic, Montgomery-ladder ECPM, cost model and schedule simulator",
               "hkecc"};
  app.require_subcommand(1);

  FieldArgs field_args;
  auto* field = app.add_subcommand("field", "field arithmetic: field <add|mul|square|invert> <hex>... <curve_file>");
  field->add_option("args", field_args.positionals, "op, operands, curve file")->required();
  field->add_flag("--json", field_args.json, "line-delimited JSON output");

  EcpmArgs ecpm_args;
  auto* ecpm_cmd = app.add_subcommand("ecpm", "scalar multiplication: ecpm <k_hex> <G|INF|x,y> <curve_file>");
  ecpm_cmd->add_option("k", ecpm_args.k, "scalar (hex)")->required();
  ecpm_cmd->add_option("point", ecpm_args.point, "G, INF or x_hex,y_hex")->required();
  ecpm_cmd->add_option("curve", ecpm_args.curve, "curve file")->required();
  ecpm_cmd->add_flag("--check", ecpm_args.check, "cross-check against double-and-add");
  ecpm_cmd->add_flag("--recover-y,!--no-recover-y", ecpm_args.recover_y, "print y as well as x (default on)");
  ecpm_cmd->add_flag("--json", ecpm_args.json, "line-delimited JSON output");

  CostArgs cost_args;
  auto* cost_cmd = app.add_subcommand("cost", "gate/delay model: cost [n] [--family pm|km|hm] [--k K] [--sweep]");
  cost_cmd->add_option("n", cost_args.n, "operand width (default 163)")->check(CLI::PositiveNumber);
  cost_cmd->add_option("--family", cost_args.family, "pm (schoolbook), km (Karatsuba) or hm (hybrid)");
  cost_cmd->add_option("--k", cost_args.k, "Karatsuba stages for the hybrid family");
  cost_cmd->add_option("--ta", cost_args.ta, "AND gate delay weight")->check(CLI::PositiveNumber);
  cost_cmd->add_option("--tx", cost_args.tx, "XOR gate delay weight")->check(CLI::PositiveNumber);
  cost_cmd->add_flag("--sweep", cost_args.sweep, "evaluate the hybrid model for every k");
  cost_cmd->add_flag("--tables", cost_args.tables, "print the measured FPGA reference rows");
  cost_cmd->add_flag("--json", cost_args.json, "line-delimited JSON output");

  SchedArgs sched_args;
  auto* sched_cmd = app.add_subcommand("sched", "cycle budget: sched [k_hex] <curve_file> [--worst-case]");
  sched_cmd->add_option("args", sched_args.positionals, "optional scalar, then curve file")->required();
  sched_cmd->add_flag("--worst-case", sched_args.worst_case, "full-length scalar and 2m-cycle inversion");
  sched_cmd->add_option("--mode", sched_args.mode, "paper or honest accounting")
      ->check(CLI::IsMember({"paper", "honest"}));
  sched_cmd->add_flag("--trace", sched_args.trace, "print the first iteration's schedule");
  sched_cmd->add_option("--freq", sched_args.freq, "clock in MHz; prints the run time")->check(CLI::PositiveNumber);
  sched_cmd->add_flag("--json", sched_args.json, "line-delimited JSON output");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "micro-benchmarks over random operands");
  bench_cmd->add_option("--op", bench_args.op, "mul, square, invert or ecpm")
      ->check(CLI::IsMember({"mul", "square", "invert", "ecpm"}));
  bench_cmd->add_option("--iters", bench_args.iters, "operations per row")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--cutoff", bench_args.cutoffs, "hybrid cutoffs, one row each")->delimiter(',');
  bench_cmd->add_option("--seed", bench_args.seed, "operand stream seed");
  bench_cmd->add_option("--curve", bench_args.curve, "curve file (default: built-in B-163)");
  bench_cmd->add_option("--threads", bench_args.threads, "worker threads (>1 selects throughput mode)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--json", bench_args.json, "line-delimited JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (field->parsed()) return cmd_field(field_args, out);
    if (ecpm_cmd->parsed()) return cmd_ecpm(ecpm_args, out);
    if (cost_cmd->parsed()) return cmd_cost(cost_args, out);
    if (sched_cmd->parsed()) return cmd_sched(sched_args, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_args, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {  // ParseError, ContractViolation
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace hkecc::cli
