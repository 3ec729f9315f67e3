#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qdcluster/config.hpp"

using namespace qdc;

namespace {

std::string write_tmp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("defaults cover the full key set") {
  const RunConfig cfg;
  CHECK(cfg.get_double("t_c_uev") == 5.0);
  CHECK(cfg.get_double("f_res_hz") == 2e9);
  CHECK(cfg.get_int("k") == 1);
  CHECK(cfg.get_u64("seed") == 12345);
  CHECK(cfg.get_bool("budget_gate"));
  CHECK_FALSE(cfg.get_bool("unsafe_dims"));
  CHECK(cfg.get_string("model") == "bond_phase");
  CHECK(RunConfig::known_keys().size() == cfg.entries().size());
}

TEST_CASE("unknown keys and bad values fail fast") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.set("bogus", "1"), config_error);
  cfg.set("t_c_uev", "abc");
  CHECK_THROWS_AS(cfg.get_double("t_c_uev"), config_error);
  cfg.set("k", "1.5");
  CHECK_THROWS_AS(cfg.get_int("k"), config_error);
  cfg.set("budget_gate", "maybe");
  CHECK_THROWS_AS(cfg.get_bool("budget_gate"), config_error);
  CHECK_THROWS_AS(cfg.get_string("missing"), config_error);
}

TEST_CASE("file parsing: comments, whitespace, line numbers") {
  const std::string path = write_tmp("qdc_cfg_ok.cfg",
                                     "# a comment line\n"
                                     "  t_c_uev   =  7.25  # trailing comment\n"
                                     "\n"
                                     "k = 3\n"
                                     "model = widetext\n");
  const RunConfig cfg = RunConfig::from_file(path);
  CHECK(cfg.get_double("t_c_uev") == 7.25);
  CHECK(cfg.get_int("k") == 3);
  CHECK(cfg.get_string("model") == "widetext");
  // untouched keys keep defaults
  CHECK(cfg.get_int("n") == 0);

  const std::string bad = write_tmp("qdc_cfg_bad.cfg", "t_c_uev = 5\nwhat is this\n");
  try {
    RunConfig::from_file(bad);
    FAIL("expected a parse error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }

  CHECK_THROWS_AS(RunConfig::from_file("/tmp/does_not_exist_qdc.cfg"), config_error);
}

TEST_CASE("echo emits the full resolved configuration in file syntax") {
  RunConfig cfg;
  cfg.set("n_qubits", "5");
  std::stringstream ss;
  cfg.echo(ss);
  const std::string echoed = write_tmp("qdc_cfg_echo.cfg", ss.str());
  const RunConfig back = RunConfig::from_file(echoed);
  CHECK(back.entries() == cfg.entries());
}
