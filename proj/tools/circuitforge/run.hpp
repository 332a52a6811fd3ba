#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "manifest.hpp"

namespace circuitforge::cli {

/// Flags every leaf subcommand accepts.
struct Common {
  std::string out;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string format = "csv";
};

/// The parsed command to execute once CLI11 is done.
using Action = std::function<void()>;

void add_common(CLI::App* sub, Common& c);

/// Writes `content` to stdout when --out is empty. A path that ends in '/'
/// or names an existing directory receives `<dir>/<default_name>` plus
/// `<dir>/manifest.json`; any other path gets `<path>.manifest.json`.
void emit(const Common& c, Manifest& m, const std::string& default_name, const std::string& content);

/// Extension for the selected --format; throws InvalidArgument when the
/// subcommand has no chart form.
std::string extension(const Common& c, bool svg_supported);

void register_ledger(CLI::App& app, Common& c, Action& action);
void register_medici(CLI::App& app, Common& c, Action& action);
void register_policy(CLI::App& app, Common& c, Action& action);
void register_venture(CLI::App& app, Common& c, Action& action);

}  // namespace circuitforge::cli
