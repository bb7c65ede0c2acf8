#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qsquare/error.hpp"
#include "qsquare/grammar.hpp"

using namespace qsquare;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

std::vector<std::string> names(std::span<const Symbol> row) {
  std::vector<std::string> out;
  for (const auto& s : row) out.push_back(s.name);
  return out;
}

std::vector<std::string> body_names(const Grammar& g, std::string_view head) {
  const Production* p = g.find(head);
  REQUIRE(p != nullptr);
  return names(p->body);
}

/// Random subset of the admissible states, shuffled, with at least one state.
StateSet random_subset(std::mt19937& rng, const StateSet& all) {
  std::vector<Valuation> pool;
  for (const auto& s : all.states()) pool.push_back(s.values);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_int_distribution<std::size_t> keep(1, pool.size());
  pool.resize(keep(rng));
  return StateSet(pool, OrderSource::PinnedBySpec);
}

}  // namespace

TEST_CASE("V-logic productions") {
  const auto g = compile_grammar(fixtures::l12(), fixtures::l12_states());
  CHECK(g.start() == "v_logic");
  CHECK(body_names(g, "v_logic") == std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(body_names(g, "a") == std::vector<std::string>{"s1", "s2", "br", "s3", "s4", "s5", "n"});
  CHECK(body_names(g, "b") == std::vector<std::string>{"s3", "s4", "br", "s1", "s2", "s5", "n"});
  CHECK(body_names(g, "c") == std::vector<std::string>{"s5", "br", "s1", "s2", "s3", "s4", "n"});
  CHECK(body_names(g, "d") == std::vector<std::string>{"s2", "s4", "br", "s1", "s3", "s5", "n"});
  // Every row rule ends in n, the last one included.
  CHECK(body_names(g, "e") == std::vector<std::string>{"s1", "s3", "br", "s2", "s4", "s5", "n"});
  CHECK(g.terminals() == std::vector<std::string>{"s1", "s2", "s3", "s4", "s5"});
}

TEST_CASE("triangle productions") {
  const auto g = compile_grammar(fixtures::triangle(), fixtures::triangle_states());
  CHECK(format_productions(g) ==
        "triangle_logic --> a,b,c,d,e,f.\n"
        "a --> s1,br,s2,s3,s4,n.\n"
        "b --> s2,s3,br,s1,s4,n.\n"
        "c --> s4,br,s1,s2,s3,n.\n"
        "d --> s1,s2,br,s3,s4,n.\n"
        "e --> s3,br,s1,s2,s4,n.\n"
        "f --> s2,s4,br,s1,s3,n.\n");
}

TEST_CASE("horizontal sum productions") {
  const auto [logic, states] = logic_from_partitions(fixtures::example_a());
  const auto g = compile_grammar(logic, states);
  CHECK(body_names(g, "p") == std::vector<std::string>{"s1", "br", "s2", "s3", "n"});
  CHECK(body_names(g, "¬p") == std::vector<std::string>{"s2", "s3", "br", "s1", "n"});
  CHECK(body_names(g, "¬q") == std::vector<std::string>{"s1", "s3", "br", "s2", "n"});
  CHECK(body_names(g, "r") == std::vector<std::string>{"s3", "br", "s1", "s2", "n"});
}

TEST_CASE("single state grammar") {
  const PartitionLogic tiny("q", {"x", "y"}, {{0, 1}});
  const StateSet one({{1, 0}}, OrderSource::PinnedBySpec);
  // With one state, y is never true: not separating.
  CHECK(code_of([&] { compile_grammar(tiny, one); }) == ErrorCode::NotSeparating);

  // A one-state, one-atom grammar built by hand derives a single row.
  const Grammar g("q", {"s1"},
                  {{"q", {Symbol::nonterminal("x")}},
                   {"x", {Symbol::state("s1"), Symbol::separator(), Symbol::linebreak()}}});
  const auto d = derive(g);
  REQUIRE(d.row_count() == 1);
  CHECK(d.row_atoms[0] == "x");
  CHECK(names(d.rows()[0]) == std::vector<std::string>{"s1", "br"});
}

TEST_CASE("compile errors") {
  CHECK(code_of([] { compile_grammar(fixtures::l12(), StateSet{}); }) == ErrorCode::EmptyStateSet);

  const PartitionLogic fork("fork", {"x", "y", "z"}, {{0, 1}, {0, 2}});
  try {
    compile_grammar(fork, enumerate_states(fork));
    FAIL("expected NotSeparating");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSeparating);
    CHECK(std::string(e.what()).find("'y' and 'z'") != std::string::npos);
  }

  const PartitionLogic clash_state("q", {"s1", "y"}, {{0, 1}});
  CHECK(code_of([&] { compile_grammar(clash_state, enumerate_states(clash_state)); }) == ErrorCode::SymbolClash);
  const PartitionLogic clash_layout("q", {"br", "y"}, {{0, 1}});
  CHECK(code_of([&] { compile_grammar(clash_layout, enumerate_states(clash_layout)); }) == ErrorCode::SymbolClash);
  const PartitionLogic clash_start("x", {"x", "y"}, {{0, 1}});
  CHECK(code_of([&] { compile_grammar(clash_start, enumerate_states(clash_start)); }) == ErrorCode::SymbolClash);
}

TEST_CASE("grammar construction invariants") {
  const auto s1 = Symbol::state("s1");
  CHECK(code_of([&] { Grammar("q", {"s1"}, {{"q", {Symbol::nonterminal("x")}}}); }) == ErrorCode::Validation);
  CHECK(code_of([&] {
          Grammar("q", {"s1"}, {{"q", {Symbol::nonterminal("x")}}, {"x", {s1}}, {"x", {s1}}});
        }) == ErrorCode::Validation);
  CHECK(code_of([&] { Grammar("q", {"s1"}, {{"x", {s1}}}); }) == ErrorCode::Validation);
  CHECK(code_of([&] { Grammar("q", {}, {{"q", {s1}}}); }) == ErrorCode::Validation);
}

TEST_CASE("cyclic grammars are rejected at derivation") {
  const Grammar self("q", {"s1"}, {{"q", {Symbol::nonterminal("x")}}, {"x", {Symbol::nonterminal("x")}}});
  CHECK(code_of([&] { derive(self); }) == ErrorCode::CyclicGrammar);
  const Grammar loop("q", {"s1"},
                     {{"q", {Symbol::nonterminal("x")}},
                      {"x", {Symbol::state("s1"), Symbol::nonterminal("y")}},
                      {"y", {Symbol::nonterminal("q")}}});
  CHECK(code_of([&] { derive(loop); }) == ErrorCode::CyclicGrammar);
}

TEST_CASE("derivation shape") {
  SUBCASE("V-logic") {
    const auto d = derive(compile_grammar(fixtures::l12(), fixtures::l12_states()));
    // (5 states + br + n) per row, 5 rows.
    CHECK(d.tokens.size() == 35);
    CHECK(d.row_count() == 5);
    CHECK(d.row_atoms == fixtures::l12().atoms());
    CHECK(d.row_boundaries == std::vector<std::size_t>{6, 13, 20, 27, 34});
    CHECK(names(d.rows()[2]) == std::vector<std::string>{"s5", "br", "s1", "s2", "s3", "s4"});
  }
  SUBCASE("triangle") {
    const auto d = derive(compile_grammar(fixtures::triangle(), fixtures::triangle_states()));
    CHECK(d.tokens.size() == 36);
    CHECK(d.row_count() == 6);
  }
}

TEST_CASE("incidence holds for compiled grammars") {
  for (const auto& [logic, states] :
       {std::pair{fixtures::l12(), fixtures::l12_states()}, std::pair{fixtures::triangle(), fixtures::triangle_states()}}) {
    const auto report = check_incidence(derive(compile_grammar(logic, states)), logic, states);
    CHECK(report.holds());
  }
}

TEST_CASE("incidence catches swapped rows") {
  const auto logic = fixtures::l12();
  const auto states = fixtures::l12_states();
  const auto g = compile_grammar(logic, states);
  auto productions = g.productions();
  std::swap(productions[2].body, productions[3].body);  // bodies of b and c
  const Grammar swapped(g.start(), g.terminals(), productions);
  const auto report = check_incidence(derive(swapped), logic, states);
  CHECK_FALSE(report.holds());
  CHECK(report.violating_rows() == 2);
}

TEST_CASE("incidence catches a missing state and a moved separator") {
  const auto logic = fixtures::l12();
  const auto states = fixtures::l12_states();
  auto productions = compile_grammar(logic, states).productions();
  auto& a = productions[1].body;  // s1 s2 br s3 s4 s5 n
  std::swap(a[1], a[2]);          // s1 br s2 ...
  auto& e = productions[5].body;
  e.erase(e.begin());  // drop s1
  const Grammar broken("v_logic", states.labels(), productions);
  const auto report = check_incidence(derive(broken), logic, states);
  CHECK(report.violating_rows() == 2);
}

TEST_CASE("property: incidence holds on random separating logics") {
  std::mt19937 rng(424242);
  int checked = 0;
  for (int attempt = 0; attempt < 200000 && checked < 250; ++attempt) {
    auto logic = oracle::random_logic(rng, 8);
    if (!logic) continue;
    const auto all = enumerate_states(*logic);
    if (all.empty() || all.size() > 16) continue;
    const StateSet states = (attempt % 2) ? random_subset(rng, all) : all;
    if (!oracle::separates(oracle::valuations(states), logic->atom_count())) continue;
    ++checked;

    const auto g = compile_grammar(*logic, states);
    const auto d = derive(g);
    CHECK(check_incidence(d, *logic, states).holds());
    CHECK(d.tokens.size() == logic->atom_count() * (states.size() + 2));
    // Independent restatement: left of br is exactly the oracle support.
    for (std::size_t r = 0; r < d.row_count(); ++r) {
      const auto row = d.rows()[r];
      std::set<std::string> left;
      for (const auto& s : row) {
        if (s.kind == SymbolKind::Separator) break;
        left.insert(s.name);
      }
      std::set<std::string> expected;
      for (auto i : oracle::support(oracle::valuations(states), r)) expected.insert(state_label(i));
      CHECK(left == expected);
    }
  }
  CHECK(checked == 250);
}

TEST_CASE("property: compilation is injective on separating logics") {
  std::mt19937 rng(1337);
  std::vector<std::pair<std::vector<Valuation>, std::string>> seen;
  int checked = 0;
  for (int attempt = 0; attempt < 100000 && checked < 150; ++attempt) {
    auto logic = oracle::random_logic(rng, 6);
    if (!logic) continue;
    const auto all = enumerate_states(*logic);
    if (all.empty()) continue;
    const auto states = random_subset(rng, all);
    if (!oracle::separates(oracle::valuations(states), logic->atom_count())) continue;
    ++checked;
    // Over the same atom names, distinct state tables must give distinct grammars.
    const std::string text = format_productions(compile_grammar(*logic, states));
    for (const auto& [vals, other] : seen) {
      if (vals != oracle::valuations(states)) {
        // Differences in width or content must show up in the text.
        if (vals.size() == states.size() && !vals.empty() && vals[0].size() == logic->atom_count()) {
          CHECK(other != text);
        }
      }
    }
    seen.emplace_back(oracle::valuations(states), text);
  }
  CHECK(checked == 150);
}

TEST_CASE("text and JSON export") {
  const auto g = compile_grammar(fixtures::l12(), fixtures::l12_states());
  const auto text = format_productions(g);
  CHECK(text.rfind("v_logic --> a,b,c,d,e.\na --> s1,s2,br,s3,s4,s5,n.\n", 0) == 0);

  const auto doc = nlohmann::ordered_json::parse(grammar_to_json(g));
  REQUIRE(doc.is_object());
  CHECK(doc.size() == 6);
  CHECK(doc.begin().key() == "v_logic");
  CHECK(doc["c"] == nlohmann::json::array({"s5", "br", "s1", "s2", "s3", "s4", "n"}));
}

TEST_CASE("symbol kinds") {
  CHECK(std::string(to_string(SymbolKind::Nonterminal)) == "nonterminal");
  CHECK(std::string(to_string(SymbolKind::StateTerminal)) == "state");
  CHECK(std::string(to_string(SymbolKind::Separator)) == "separator");
  CHECK(std::string(to_string(SymbolKind::Linebreak)) == "linebreak");
}
