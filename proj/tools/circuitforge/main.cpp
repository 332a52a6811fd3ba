// circuitforge: one binary, four command groups. Exit codes are 0 on success,
// 1 for environment/IO failures and 2 for anything the user can fix.

#include <filesystem>
#include <iostream>

#include "circuitforge/error.hpp"
#include "circuitforge/version.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  using namespace circuitforge;
  CLI::App app{"Ledger, historical-bank and policy simulations", "circuitforge"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  cli::Common common;
  cli::Action action;
  cli::register_ledger(app, common, action);
  cli::register_medici(app, common, action);
  cli::register_policy(app, common, action);
  cli::register_venture(app, common, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (!action) return 2;

  std::cerr << "seed: " << common.seed << "\n";
  try {
    action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_environmental(e.code()) ? 1 : 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
