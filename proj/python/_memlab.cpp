// Python bindings. Exact quantities cross the boundary as decimal strings
// (integers) or (numerator, denominator) string pairs; the package wrapper
// turns them into int and fractions.Fraction.

#include "memlab/adversary.hpp"
#include "memlab/decision_tree.hpp"
#include "memlab/harness.hpp"
#include "memlab/truncation.hpp"
#include "memlab/unique_pairs.hpp"
#include "memlab/ytail.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace memlab;
namespace h = memlab::harness;

namespace {

py::tuple rational(const Rational& q) {
  return py::make_tuple(numerator(q).str(), denominator(q).str());
}

py::dict row_dict(const h::Row& header, const h::Row& row) {
  py::dict d;
  for (std::size_t k = 0; k < header.size(); ++k) d[py::str(header[k])] = row[k];
  return d;
}

py::list table_dicts(const h::Table& t) {
  py::list out;
  for (const auto& row : t.rows) out.append(row_dict(t.header, row));
  return out;
}

std::vector<int> deck_values(const ValidInput& x) { return {x.values().begin(), x.values().end()}; }

}  // namespace

PYBIND11_MODULE(_memlab, m) {
  py::register_exception<InvalidDeck>(m, "InvalidDeck", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<h::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<h::CsvParseError>(m, "CsvParseError", PyExc_ValueError);

  m.def("generate_deck", [](int n, int R, std::uint64_t seed) {
    Rng rng(seed);
    return deck_values(generate_valid_input(n, R, rng));
  }, py::arg("n"), py::arg("R"), py::arg("seed"));

  m.def("count_valid_inputs", [](int n, int R) { return count_valid_inputs(n, R).str(); });

  m.def("matches_of", [](const std::vector<int>& deck) {
    std::vector<std::tuple<int, int, int>> out;
    for (const auto& t : matches_of(ValidInput{deck})) out.emplace_back(t.i, t.j, t.v);
    return out;
  });

  m.def("play", [](const std::string& strategy, int n, int R, int space_bits, std::uint64_t seed,
                   std::optional<std::vector<int>> deck) {
    std::optional<ValidInput> x;
    if (deck) x = ValidInput{*deck};
    const auto res = h::play(strategy, n, R, space_bits, seed, x);
    std::ostringstream csv;
    res.transcript.write_csv(csv);
    py::dict d = row_dict(h::kPlayHeader, res.summary);
    d["transcript"] = csv.str();
    return d;
  }, py::arg("strategy"), py::arg("n"), py::arg("R"), py::arg("space_bits"), py::arg("seed"),
     py::arg("deck") = py::none());

  m.def("adversary", [](const std::string& strategy, int n, int space_bits, std::uint64_t seed, bool audit) {
    return row_dict(h::kAdversaryHeader, h::adversary_row(strategy, n, space_bits, seed, audit));
  }, py::arg("strategy"), py::arg("n"), py::arg("space_bits") = -1, py::arg("seed") = 1, py::arg("audit") = true);

  m.def("tradeoff_sweep", [](const std::vector<int>& n, const std::vector<int>& s, int seeds, std::uint64_t seed,
                             int jobs) {
    h::SweepConfig cfg;
    cfg.n = n;
    cfg.s = s;
    cfg.seeds = seeds;
    cfg.seed = seed;
    cfg.jobs = jobs;
    const auto res = h::tradeoff_sweep(cfg);
    py::dict d;
    d["runs"] = table_dicts(res.runs);
    d["summary"] = table_dicts(res.summary);
    d["c_cal"] = res.c_cal;
    d["ok"] = res.ok;
    return d;
  }, py::arg("n"), py::arg("s") = std::vector<int>{}, py::arg("seeds") = 100, py::arg("seed") = 1,
     py::arg("jobs") = 0);

  m.def("y_exact_distribution", [](int n, int r) {
    py::list out;
    for (const auto& q : y_exact_distribution(n, r)) out.append(rational(q));
    return out;
  });
  m.def("y_exact_tail", [](int n, int r, int t) { return rational(y_exact_tail(n, r, t)); });
  m.def("y_tail_bound", &y_tail_bound);
  m.def("y_critical_r", &y_critical_r);
  m.def("relent", &relent);
  m.def("chernoff_tail", &chernoff_tail);
  m.def("lemma_y", [](int n, int r, int t, std::int64_t trials, std::uint64_t seed, int jobs) {
    return row_dict(h::kLemmaYHeader, h::lemma_y_row(n, r, t, trials, seed, jobs));
  }, py::arg("n"), py::arg("r") = -1, py::arg("t") = 2, py::arg("trials") = 100000, py::arg("seed") = 1,
     py::arg("jobs") = 0);

  m.def("xy_check", [](int n, int R, int depth, const std::string& tree, std::uint64_t seed) {
    return row_dict(h::kXyHeader, h::xy_row(n, R, depth, tree, seed, kDefaultEnumerationCap, kDefaultTreeCap));
  }, py::arg("n"), py::arg("R"), py::arg("depth"), py::arg("tree") = "random", py::arg("seed") = 1);

  m.def("lemma43", [](int n, int R, int r, int t, const std::string& tree, std::uint64_t seed) {
    return row_dict(h::kLemma43Header, h::lemma43_row(n, R, r, t, tree, seed, kDefaultTreeCap));
  }, py::arg("n"), py::arg("R"), py::arg("r"), py::arg("t"), py::arg("tree"), py::arg("seed") = 1);
  m.def("lemma43_fraction", [](int n, int R, int r, int t, const std::string& tree, std::uint64_t seed) {
    return rational(lemma43_check(h::build_tree(tree, n, R, r, t, seed, kDefaultTreeCap), t).fraction);
  }, py::arg("n"), py::arg("R"), py::arg("r"), py::arg("t"), py::arg("tree"), py::arg("seed") = 1);

  m.def("truncation_experiment", [](int n, int capacity, std::int64_t trials, std::uint64_t seed, int jobs) {
    const auto r = truncation_experiment(n, capacity, trials, seed, jobs);
    py::dict d;
    d["expected_T"] = r.expected_T;
    d["budget"] = r.budget;
    d["trials"] = r.trials;
    d["errors"] = r.errors;
    d["wrong"] = r.wrong;
    d["rate"] = r.rate;
    d["sigma"] = r.sigma;
    d["ok"] = r.ok;
    return d;
  }, py::arg("n"), py::arg("capacity"), py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("jobs") = 0);

  m.def("unique_pairs", [](const std::vector<int>& xs, int n) { return unique_pairs(xs, n); });
  m.def("unique_pairs_exact", [](int n) { return rational(unique_pairs_exact_expectation(n)); });
  m.def("unique_pairs_formulas", [](int n) {
    return py::make_tuple(unique_pairs_binom_n_formula(n), unique_pairs_binom_2n_formula(n),
                          unique_pairs_lower_bound(n));
  });

  m.def("replay", [](const std::string& path, int line, int jobs) {
    const auto r = h::replay(path, line, jobs);
    return py::make_tuple(r.original, r.regenerated, r.identical);
  }, py::arg("path"), py::arg("line"), py::arg("jobs") = 1);
}
