#pragma once

// Experiment plumbing shared by the CLI, the acceptance suite and the Python
// module: sweep configs, one function per CSV row kind, row replay and the
// report over finished CSV files.
//
// Every row records the seed its cell actually used, so a row can be
// regenerated from its own fields without the config that produced it.

#include "memlab/decision_tree.hpp"
#include "memlab/game.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace memlab::harness {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

void write_csv(std::ostream& out, const Table& table);
std::string format_row(const Row& row);

std::string fmt(double x);
std::string fmt(bool b);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  std::vector<int> n;
  std::vector<int> s;           // capacities in stored indices
  std::vector<int> space_bits;  // alternative to s
  int seeds = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> strategy{"multipass"};
  std::string out;
  std::uint64_t cap_enum = kDefaultEnumerationCap;
  std::uint64_t cap_tree = kDefaultTreeCap;
  int jobs = 0;  // 0 = all cores
};

// Flat "key = value" lines; lists are written [a, b, c]; '#' starts a
// comment. Unknown keys and malformed values throw ConfigError with the line
// number.
SweepConfig parse_config(std::istream& in, const std::string& source = "<config>");
SweepConfig load_config(const std::string& path);

// Seed of the k-th run of a cell keyed by n.
std::uint64_t cell_seed(std::uint64_t base, int n, int k);

// ---------------------------------------------------------------------------
// Row kinds. Each header is unique, which is how replay recognises a file.

extern const Row kPlayHeader;
extern const Row kTradeoffHeader;
extern const Row kTradeoffSummaryHeader;
extern const Row kAdversaryHeader;
extern const Row kLemmaYHeader;
extern const Row kXyHeader;
extern const Row kLemma43Header;
extern const Row kUniquePairsHeader;

struct PlayOutput {
  Row summary;       // kPlayHeader
  Transcript transcript;
};

// strategy: multipass, multipass-shuffled or perfect. The deck comes from
// Rng(seed) with values in [R] unless given. The shuffled order uses
// split_seed(seed, 1).
PlayOutput play(const std::string& strategy, int n, int R, int space_bits, std::uint64_t seed,
                const std::optional<ValidInput>& deck = std::nullopt);

// One tradeoff run; capacity s = space_bits / bits_per_index(n). A cell whose
// capacity is 0 yields a row with correct = skipped.
Row tradeoff_row(const std::string& strategy, int n, int space_bits, std::uint64_t seed);

struct TradeoffResult {
  Table runs;
  Table summary;        // one row per (n, s) cell
  double c_cal = 0.0;   // max S*T_worst / (n^2 bits_per_index) at the smallest n
  bool ok = false;
};

// Runs every (n, s, seed) cell. The per-cell check: every run correct,
// T <= ceil(2n/s)*2n, T_worst non-increasing in s, ratio <= 2 c_cal.
TradeoffResult tradeoff_sweep(const SweepConfig& cfg);

// Summary row for one cell, recomputed from scratch with the given c_cal
// and the T_worst of the next smaller s (nullopt for the first column).
Row tradeoff_summary_row(const std::string& strategy, int n, int space_bits, std::uint64_t base_seed,
                         int seeds, double c_cal, std::optional<std::int64_t> prev_t_worst);

// One adversary game. space_bits < 0 draws s = 1 + uniform_below(2n) from
// Rng(split_seed(seed, 0)). The shuffled order uses split_seed(seed, 1).
// involution_ok is "na" unless audit is set.
Row adversary_row(const std::string& strategy, int n, int space_bits, std::uint64_t seed, bool audit);

Table adversary_sweep(const SweepConfig& cfg, bool audit);

// r < 0 selects floor((2/e) sqrt(nt)). Bound is y_tail_bound(n, r, t); ok
// when estimate <= bound + 3 sigma.
Row lemma_y_row(int n, int r, int t, std::int64_t trials, std::uint64_t seed, int jobs);

// Tree names: "random" (built from seed), "multipass-sK" (compiled prefix of
// the multi-pass player with capacity K), "guess-kK" (guessing tree with K
// one-sided guesses; lemma43 only).
DecisionTree build_tree(const std::string& tree, int n, int R, int depth, int t, std::uint64_t seed,
                        std::uint64_t cap_tree);

// Estimate is max |Pr[X=u] - Pr[Y=u]| as a double; ok iff the laws are equal.
Row xy_row(int n, int R, int depth, const std::string& tree, std::uint64_t seed, std::uint64_t cap_enum,
           std::uint64_t cap_tree);

// Estimate is the exact fraction of decks with >= 2t correct outputs.
Row lemma43_row(int n, int R, int r, int t, const std::string& tree, std::uint64_t seed,
                std::uint64_t cap_tree);

Row unique_pairs_row(int n, std::int64_t trials, std::uint64_t seed, int jobs, std::uint64_t cap_enum);

// ---------------------------------------------------------------------------

struct CsvFile {
  std::string path;
  Row header;
  std::vector<Row> rows;
  std::vector<int> lines;  // file line of each row (header is line 1)
};

class CsvParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CsvFile read_csv(const std::string& path);

struct ReplayResult {
  std::string original;
  std::string regenerated;
  bool identical = false;
};

// Regenerates the row at `line` of a CSV written by any row kind above.
ReplayResult replay(const std::string& path, int line, int jobs = 1,
                    std::uint64_t cap_enum = kDefaultEnumerationCap,
                    std::uint64_t cap_tree = kDefaultTreeCap);

struct ReportResult {
  std::string summary;  // human-readable
  Table tidy;           // file,line,column,value
  int rows = 0;
  int failures = 0;
};

// A row fails when any of ok, correct, lower_bound_ok, involution_ok is
// "false". Throws CsvParseError on malformed input.
ReportResult report(const std::vector<std::string>& paths);

}  // namespace memlab::harness
