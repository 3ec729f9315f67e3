#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qdcluster/qsys.hpp"

// Flat key = value run configuration: UTF-8 text file, '#' comments, plus
// command-line overrides. Unknown keys fail fast; every run echoes the
// fully resolved configuration so outputs are reproducible from the echo.

namespace qdc {

class config_error : public qdc_error {
 public:
  explicit config_error(const std::string& what) : qdc_error(what) {}
};

class RunConfig {
 public:
  RunConfig();  // defaults only

  static RunConfig from_file(const std::string& path);

  // throws config_error on unknown keys
  void set(const std::string& key, const std::string& value);

  double get_double(const std::string& key) const;
  long get_long(const std::string& key) const;
  int get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;

  // resolved configuration in config-file syntax, keys sorted
  void echo(std::ostream& os) const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace qdc
