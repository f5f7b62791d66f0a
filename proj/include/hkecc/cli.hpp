#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hkecc/gf2m.hpp"

namespace hkecc::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDomainError = 2;

/// Runs one command line (without the program name).
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// The operand stream `bench` draws for a given seed.
std::vector<gf2m::FieldElement> bench_operands(std::uint64_t seed, std::size_t count, std::size_t width);

}  // namespace hkecc::cli
