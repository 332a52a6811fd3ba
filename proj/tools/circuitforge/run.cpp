#include "run.hpp"

#include <filesystem>
#include <iostream>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/error.hpp"

namespace circuitforge::cli {

namespace fs = std::filesystem;

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output file, or directory (trailing '/')");
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
}

std::string extension(const Common& c, bool svg_supported) {
  if (c.format == "svg" && !svg_supported) throw Error(Errc::InvalidArgument, "--format svg is not available here");
  return "." + c.format;
}

namespace {

void make_parent(const fs::path& p) {
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create " + p.parent_path().string() + ": " + ec.message());
}

}  // namespace

void emit(const Common& c, Manifest& m, const std::string& default_name, const std::string& content) {
  m.seed = c.seed;
  if (c.out.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const bool dir = c.out.back() == '/' || fs::is_directory(c.out);
  fs::path file = dir ? fs::path(c.out) / default_name : fs::path(c.out);
  fs::path manifest = dir ? fs::path(c.out) / "manifest.json" : fs::path(c.out + ".manifest.json");
  make_parent(file);
  dataio::write_text(file.string(), content);
  m.add_output(file.filename().string(), content);
  dataio::write_text(manifest.string(), m.to_json());
  std::cerr << "wrote " << file.string() << "\n";
}

}  // namespace circuitforge::cli
