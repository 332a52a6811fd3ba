#include "manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <memory>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/error.hpp"
#include "circuitforge/version.hpp"

namespace circuitforge::cli {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw Error(Errc::IoFailure, "sha256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

void Manifest::add_input(const std::string& path) { inputs.push_back({path, sha256_hex(dataio::read_text(path))}); }

void Manifest::add_output(const std::string& name, std::string_view content) {
  outputs.push_back({name, sha256_hex(content)});
}

std::string Manifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "circuitforge";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["config"] = config;
  auto digests = [](const std::vector<FileDigest>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& d : v) a.push_back({{"path", d.path}, {"sha256", d.sha256}});
    return a;
  };
  j["inputs"] = digests(inputs);
  j["outputs"] = digests(outputs);
  return j.dump(2) + "\n";
}

}  // namespace circuitforge::cli
