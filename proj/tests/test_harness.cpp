#include "memlab/harness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace memlab;
namespace h = memlab::harness;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("memlab_test_" + name)).string();
}

std::string write_table(const std::string& name, const h::Table& t) {
  const auto path = temp_path(name);
  std::ofstream out(path);
  h::write_csv(out, t);
  return path;
}

std::string csv_text(const h::Table& t) {
  std::ostringstream ss;
  h::write_csv(ss, t);
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# sweep\n"
      "n = [8, 16]\n"
      "s = [1,2]   # capacities\n"
      "seeds = 5\n"
      "seed = 42\n"
      "strategy = [multipass, multipass-shuffled]\n"
      "out = runs.csv\n"
      "jobs = 2\n");
  const auto cfg = h::parse_config(in);
  CHECK(cfg.n == std::vector<int>{8, 16});
  CHECK(cfg.s == std::vector<int>{1, 2});
  CHECK(cfg.seeds == 5);
  CHECK(cfg.seed == 42);
  CHECK(cfg.strategy == std::vector<std::string>{"multipass", "multipass-shuffled"});
  CHECK(cfg.out == "runs.csv");
  CHECK(cfg.jobs == 2);
  CHECK(cfg.cap_enum == kDefaultEnumerationCap);

  auto error_of = [](const std::string& text) {
    std::istringstream bad(text);
    try {
      h::parse_config(bad, "cfg");
    } catch (const h::ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("n = [8\n").find("cfg:1") != std::string::npos);
  CHECK(error_of("\ncolour = red\n").find("cfg:2: unknown key") != std::string::npos);
  CHECK(error_of("n = [8, x]\n").find("cfg:1") != std::string::npos);
  CHECK(error_of("seeds = [1, 2]\n").find("single value") != std::string::npos);
  CHECK_FALSE(error_of("s = [1]\nS = [4]\n").empty());
}

TEST_CASE("committed example config parses") {
  const auto cfg = h::load_config(MEMLAB_SOURCE_DIR "/configs/tradeoff.conf");
  CHECK_FALSE(cfg.n.empty());
}

TEST_CASE("tradeoff sweep is deterministic and independent of jobs") {
  h::SweepConfig cfg;
  cfg.n = {8, 16};
  cfg.seeds = 10;
  cfg.seed = 5;
  cfg.jobs = 1;
  const auto a = h::tradeoff_sweep(cfg);
  cfg.jobs = 3;
  const auto b = h::tradeoff_sweep(cfg);
  CHECK(csv_text(a.runs) == csv_text(b.runs));
  CHECK(csv_text(a.summary) == csv_text(b.summary));
  CHECK(a.ok);
  CHECK(a.c_cal > 0);
  // Single-pass column: T = 2n exactly.
  for (const auto& row : a.runs.rows) {
    if (row[2] == std::to_string(2 * std::stoi(row[0]))) CHECK(row[3] == std::to_string(2 * std::stoi(row[0])));
  }
}

TEST_CASE("skipped cells") {
  h::SweepConfig cfg;
  cfg.n = {8};
  cfg.space_bits = {2, 8};
  cfg.seeds = 3;
  const auto res = h::tradeoff_sweep(cfg);
  CHECK(res.runs.rows[0][6] == "skipped");
  CHECK(res.summary.rows[0][8] == "skipped");
  CHECK(res.summary.rows[1][8] == "true");
  CHECK(res.ok);
}

TEST_CASE("every row kind replays byte-identically") {
  h::SweepConfig cfg;
  cfg.n = {4, 6};
  cfg.seeds = 3;
  cfg.strategy = {"multipass", "multipass-shuffled", "guess"};
  const auto adv = h::adversary_sweep(cfg, true);
  const auto adv_path = write_table("adv.csv", adv);
  for (int line = 2; line <= static_cast<int>(adv.rows.size()) + 1; ++line) {
    CHECK(h::replay(adv_path, line).identical);
  }

  h::SweepConfig tc;
  tc.n = {8};
  tc.seeds = 4;
  tc.strategy = {"multipass-shuffled"};
  const auto trade = h::tradeoff_sweep(tc);
  CHECK(h::replay(write_table("trade.csv", trade.runs), 3).identical);
  CHECK(h::replay(write_table("summary.csv", trade.summary), 4).identical);

  const auto check_one = [](const std::string& name, const h::Row& header, const h::Row& row) {
    const auto path = write_table(name, h::Table{header, {row}});
    const auto r = h::replay(path, 2);
    CHECK(r.identical);
    CHECK(r.original == h::format_row(row));
  };
  check_one("ly.csv", h::kLemmaYHeader, h::lemma_y_row(100, -1, 3, 5000, 17, 1));
  check_one("xy.csv", h::kXyHeader, h::xy_row(2, 3, 3, "random", 8, kDefaultEnumerationCap, kDefaultTreeCap));
  check_one("l43.csv", h::kLemma43Header, h::lemma43_row(8, 8, 4, 2, "guess-k2", 1, kDefaultTreeCap));
  check_one("up.csv", h::kUniquePairsHeader, h::unique_pairs_row(2, 200, 4, 1, kDefaultEnumerationCap));
  check_one("play.csv", h::kPlayHeader, h::play("multipass", 6, 6, 8, 3).summary);

  CHECK_THROWS_AS(h::replay(adv_path, 1), std::invalid_argument);
}

TEST_CASE("rows carry what replay needs and failures are visible") {
  const auto row = h::adversary_row("guess", 5, -1, 123, true);
  CHECK(row[5] == "false");
  CHECK(row[7] == "false");
  CHECK(row.back() == "123");
  const auto good = h::adversary_row("multipass", 5, -1, 123, true);
  CHECK(good[5] == "true");
  CHECK(good[6] == "true");
  CHECK(good[7] == "true");
}

TEST_CASE("report") {
  SUBCASE("empty input succeeds") {
    const auto r = h::report({});
    CHECK(r.failures == 0);
    CHECK(r.rows == 0);
    CHECK(r.tidy.rows.empty());
  }
  SUBCASE("failing rows are counted and identified") {
    h::SweepConfig cfg;
    cfg.n = {3};
    cfg.seeds = 2;
    cfg.strategy = {"multipass", "guess"};
    const auto adv = write_table("rep_adv.csv", h::adversary_sweep(cfg, true));
    h::SweepConfig tc;
    tc.n = {8};
    tc.seeds = 2;
    const auto trade = write_table("rep_trade.csv", h::tradeoff_sweep(tc).runs);
    const auto r = h::report({adv, trade});
    CHECK(r.failures == 2);
    CHECK(r.summary.find("FAILED " + adv + ":4") != std::string::npos);
    CHECK(r.summary.find("tradeoff") != std::string::npos);
    CHECK(r.summary.find("adversary") != std::string::npos);
    CHECK(r.tidy.header == h::Row{"file", "line", "column", "value"});
    CHECK(r.tidy.rows.size() == (4 * h::kAdversaryHeader.size() + 10 * h::kTradeoffHeader.size()));
  }
  SUBCASE("malformed CSV names the line") {
    const auto path = temp_path("bad.csv");
    std::ofstream(path) << "a,b,ok\n1,2,true\n1,2\n";
    try {
      h::report({path});
      FAIL("expected a parse error");
    } catch (const h::CsvParseError& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }
}
