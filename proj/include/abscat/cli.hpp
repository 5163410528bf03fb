#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace abscat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumeric = 3;

//! Runs one subcommand (wave, kernel, flux, strip, recover, radon,
//! gauge-check). args excludes the program name. Results go to `out` unless
//! --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace abscat::cli
