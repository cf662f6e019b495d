#include "memlab/game.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

using namespace memlab;

TEST_CASE("single pair deck is forced") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto x = generate_valid_input({1, 1, seed});
    CHECK(std::vector<int>(x.values().begin(), x.values().end()) == std::vector<int>{1, 1});
  }
}

TEST_CASE("generator rejects R < n") {
  CHECK_THROWS_AS(generate_valid_input({3, 2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_valid_input({0, 2, 0}), std::invalid_argument);
}

TEST_CASE("generator is deterministic in the seed") {
  CHECK(generate_valid_input({6, 9, 42}) == generate_valid_input({6, 9, 42}));
}

TEST_CASE("generator support sizes") {
  auto support = [](int n, int R, int draws) {
    std::set<std::vector<int>> seen;
    Rng rng(7);
    for (int k = 0; k < draws; ++k) {
      const auto x = generate_valid_input(n, R, rng);
      seen.emplace(x.values().begin(), x.values().end());
    }
    return seen.size();
  };
  CHECK(support(2, 2, 2000) == 6);
  CHECK(support(3, 5, 60000) == 900);
}

TEST_CASE("generator is uniform at n=2, R=2") {
  Rng rng(2024);
  std::map<std::vector<int>, int> freq;
  const int N = 60000;
  for (int k = 0; k < N; ++k) {
    const auto x = generate_valid_input(2, 2, rng);
    ++freq[std::vector<int>(x.values().begin(), x.values().end())];
  }
  REQUIRE(freq.size() == 6);
  double chi2 = 0;
  for (const auto& [deck, c] : freq) {
    CHECK(std::abs(c / double(N) - 1.0 / 6) <= 0.02);
    chi2 += (c - N / 6.0) * (c - N / 6.0) / (N / 6.0);
  }
  CHECK(chi2 < 20.5);  // 5 dof, p ~ 0.001
}

TEST_CASE("enumeration matches the closed count and brute force") {
  CHECK(enumerate_valid_inputs(1, 2).size() == 2);
  CHECK(enumerate_valid_inputs(2, 2).size() == 6);
  CHECK(enumerate_valid_inputs(2, 3).size() == 18);
  for (int n = 1; n <= 3; ++n) {
    for (int R = n; R <= 5; ++R) {
      std::set<std::vector<int>> brute;
      oracle::for_each_deck_brute(n, R, [&](const std::vector<int>& xs) { brute.insert(xs); });
      const auto decks = enumerate_valid_inputs(n, R);
      std::set<std::vector<int>> ours;
      for (const auto& x : decks) ours.emplace(x.values().begin(), x.values().end());
      CHECK(ours.size() == decks.size());
      CHECK(ours == brute);
      CHECK(count_valid_inputs(n, R) == BigInt(brute.size()));
      // Canonical order is lexicographic.
      for (std::size_t k = 1; k < decks.size(); ++k) {
        CHECK(std::lexicographical_compare(decks[k - 1].values().begin(), decks[k - 1].values().end(),
                                           decks[k].values().begin(), decks[k].values().end()));
      }
    }
  }
}

TEST_CASE("enumeration refuses above the cap") {
  try {
    enumerate_valid_inputs(8, 8, 1000);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.count() == count_valid_inputs(8, 8));
  }
}

TEST_CASE("matches_of") {
  CHECK(matches_of(ValidInput({1, 1})) == std::vector<MatchTriple>{{1, 2, 1}});
  const auto m = matches_of(ValidInput({2, 1, 1, 2}));
  CHECK(std::set<MatchTriple>(m.begin(), m.end()) == std::set<MatchTriple>{{2, 3, 1}, {1, 4, 2}});
  for (const auto& x : enumerate_valid_inputs(3, 4)) {
    const auto ms = matches_of(x);
    CHECK(ms.size() == 3);
    std::set<int> covered;
    for (const auto& t : ms) {
      CHECK(t.i < t.j);
      CHECK(x.at(t.i) == t.v);
      CHECK(x.at(t.j) == t.v);
      covered.insert(t.i);
      covered.insert(t.j);
    }
    CHECK(covered.size() == 6);
  }
}

TEST_CASE("invalid decks are diagnosed") {
  const std::vector<int> bad{1, 1, 1, 2};
  CHECK_THROWS_AS(ValidInput{bad}, InvalidDeck);
  CHECK_THROWS_AS(matches_of(std::span<const int>(bad)), InvalidDeck);
  const auto why = deck_problem(bad);
  REQUIRE(why.has_value());
  CHECK(why->find("1 occurs 3 times") != std::string::npos);
  CHECK_FALSE(deck_problem(std::vector<int>{3, 1, 1, 3}).has_value());
  CHECK(deck_problem(std::vector<int>{1, 0}).has_value());
  CHECK(deck_problem(std::vector<int>{1, 1, 2}).has_value());
}

TEST_CASE("verify_transcript") {
  const ValidInput x({2, 1, 1, 2});
  Transcript t;
  t.add_flip(1);
  t.add_output({2, 3, 1});
  t.add_output({1, 4, 2});
  CHECK(verify_transcript(x, t).ok);

  Transcript missing;
  missing.add_output({2, 3, 1});
  const auto r = verify_transcript(x, missing);
  CHECK_FALSE(r.ok);
  REQUIRE(r.missing.size() == 1);
  CHECK(r.missing[0] == MatchTriple{1, 4, 2});
  CHECK(r.describe().find("(1,4,2)") != std::string::npos);

  Transcript wrong_value;
  wrong_value.add_output({2, 3, 1});
  wrong_value.add_output({1, 4, 1});
  CHECK_FALSE(verify_transcript(x, wrong_value).ok);

  Transcript dup;
  dup.add_output({2, 3, 1});
  CHECK_THROWS_AS(dup.add_output({2, 3, 1}), std::logic_error);
}

TEST_CASE("transcript counters and CSV round trip") {
  Transcript t;
  t.add_pass(1);
  t.add_flip(1, 1);
  t.add_flip(2, 1);
  t.add_query(2, 1, true);
  t.add_output({1, 2, 5});
  t.add_deletion(1, 3);
  t.add_vanish(2, 4);
  CHECK(t.flips() == 2);
  CHECK(t.queries() == 1);
  CHECK(t.passes() == 1);
  CHECK(t.tracks_working_set());

  std::stringstream ss;
  t.write_csv(ss);
  CHECK(ss.str().rfind("step,event,arg1,arg2,arg3\n", 0) == 0);
  const auto back = Transcript::read_csv(ss);
  CHECK(back.events() == t.events());
  CHECK(back.flips() == 2);
  CHECK(back.outputs() == t.outputs());
}

TEST_CASE("deck file round trip and errors") {
  Rng rng(5);
  std::vector<ValidInput> decks;
  for (int k = 0; k < 4; ++k) decks.push_back(generate_valid_input(3, 6, rng));
  std::stringstream ss;
  write_decks(ss, 3, 6, decks);
  const auto f = read_decks(ss);
  CHECK(f.n == 3);
  CHECK(f.R == 6);
  CHECK(f.decks == decks);

  std::stringstream bad("2 2\n1 1 2 2\n1 1 1 2\n");
  try {
    read_decks(bad);
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
