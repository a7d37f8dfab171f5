#include <coxmask/io.hpp>
#include <coxmask/presets.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

using namespace coxmask;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_matrix_text(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse_matrix_text") {
  CHECK(parse_matrix_text("3\n1 3 2\n3 1 3\n2 3 1\n") == preset_matrix("A3"));
  CHECK(parse_matrix_text("2\n1 0\n0 1\n") == preset_matrix("tA1"));
  CHECK(parse_matrix_text("\n2\n\n1   5\n5 1") == preset_matrix("I2_5"));

  CHECK(error_of("2\n1 3\n4 1\n").find("asymmetric") != std::string::npos);
  CHECK(error_of("2\n1 3\n4 1\n").find("line 2, column 2") != std::string::npos);
  CHECK(error_of("2\n2 3\n3 1\n").find("line 2, column 1") != std::string::npos);
  CHECK(error_of("2\n1 1\n1 1\n").find("off-diagonal") != std::string::npos);
  CHECK(error_of("2\n1 x\n3 1\n").find("malformed") != std::string::npos);
  CHECK(error_of("2\n1 3 2\n3 1\n").find("line 2") != std::string::npos);
  CHECK(error_of("2\n1 3\n").find("rows") != std::string::npos);
  CHECK_FALSE(error_of("").empty());
  CHECK_FALSE(error_of("zero\n").empty());
}

TEST_CASE("matrix files and group resolution") {
  const auto dir = std::filesystem::temp_directory_path() / "coxmask_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "a2.txt";
  std::ofstream(path) << "2\n1 3\n3 1\n";
  CHECK(parse_matrix_file(path) == preset_matrix("A2"));
  CHECK(resolve_group(path.string()) == preset_matrix("A2"));
  CHECK(resolve_group("B3") == preset_matrix("B3"));
  CHECK_THROWS_AS(parse_matrix_file(dir / "missing.txt"), IoError);
  CHECK_THROWS_AS(resolve_group((dir / "missing.txt").string()), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parse_word") {
  CHECK(parse_word("2 1 3 2", 3) == Word{2, 1, 3, 2});
  CHECK(parse_word("2,1,3", 3) == Word{2, 1, 3});
  CHECK(parse_word(" s2 s_1, s3 ", 3) == Word{2, 1, 3});
  CHECK(parse_word("s2s1", 3) == Word{2, 1});
  CHECK(parse_word("e", 3).empty());
  CHECK(parse_word("", 3).empty());
  CHECK(parse_word("12", 12) == Word{12});
  CHECK_THROWS_AS(parse_word("4", 3), InputError);
  CHECK_THROWS_AS(parse_word("0", 3), InputError);
  CHECK_THROWS_AS(parse_word("x", 3), InputError);
  CHECK_THROWS_AS(parse_word("e 1", 3), InputError);
  CHECK_THROWS_AS(parse_word("1e", 3), InputError);
  CHECK_THROWS_AS(parse_word("-1", 3), InputError);
}

TEST_CASE("format_word round-trips") {
  auto sys = CoxeterSystem::create(preset_matrix("B3"));
  CHECK(format_word(Word{}) == "e");
  CHECK(format_word(Word{2, 1}) == "s2 s1");
  for (const Word& w : std::vector<Word>{{}, {1}, {3, 2, 3}, {1, 2, 3, 2, 1}}) {
    CHECK(parse_word(format_word(w), 3) == w);
    const Element x = sys->product_of_word(w);
    CHECK(sys->product_of_word(parse_word(format_element(x), 3)) == x);
  }
}

TEST_CASE("format_mask and format_constant_mask") {
  auto sys = CoxeterSystem::create(preset_matrix("A4"));
  const auto w = ReducedExpression::from_word(*sys, {2, 3, 4, 1, 2, 3});
  const auto cm = greedy_constant_mask(w, sys->product_of_word(Word{1, 2, 1}));
  CHECK(format_mask(cm.mask) == "s2 s3 s4 s1 s2 s3\n1  0  0  1  1  0\n");
  const std::string text = format_constant_mask(cm);
  CHECK(text.find("r5 = s2 s1\n") != std::string::npos);
  CHECK(text.find("r4 = s2\n") != std::string::npos);
  CHECK(text.find("r1 = e\n") != std::string::npos);
}

TEST_CASE("format_interval_table") {
  auto sys = CoxeterSystem::create(preset_matrix("A3"));
  const auto w = ReducedExpression::from_word(*sys, {2, 1, 3, 2});
  const std::string t =
      format_interval_table(interval_as_relative_masks(sys->generator(2), w), w);
  CHECK(t.find("sigma = 1   0   0   X^d  tau = 1   1   1   0    s2 s1 s3\n") !=
        std::string::npos);
  CHECK(std::count(t.begin(), t.end(), '\n') == 11);
}

TEST_CASE("format_matching") {
  auto sys = CoxeterSystem::create(preset_matrix("A3"));
  const auto w = ReducedExpression::from_word(*sys, {2, 1, 3, 2});
  const std::string t = format_matching(match_interval(sys->generator(2), w));
  CHECK(t.find("rank 4:\n  s2 s1 s3 s2 [0 0 0 1] -- s2 s1 s3 [1 0 0 X^d]  (position 4, "
               "rule 4)\n") != std::string::npos);
  CHECK(t.find("pairs: 5\nunmatched: none\n") != std::string::npos);
  const std::string point = format_matching(match_interval(w.element(), w));
  CHECK(point == "pairs: 0\nunmatched: [s2 s3 s1 s2]\n");
}

TEST_CASE("export_dot") {
  auto sys = CoxeterSystem::create(preset_matrix("A3"));
  const auto w = ReducedExpression::from_word(*sys, {2, 1, 3, 2});
  const HasseInterval iv = enumerate_interval(sys->generator(2), w.element());
  const Matching m = match_interval(iv, w);
  const std::string dot = export_dot(iv, m);
  CHECK(dot == export_dot(iv, m));
  CHECK(dot.rfind("digraph bruhat_interval {\n", 0) == 0);

  // Independent parse of the emitted graph: count nodes and edges, then run
  // Kahn's algorithm to confirm there is no directed cycle.
  std::map<std::string, std::vector<std::string>> out;
  std::map<std::string, int> indegree;
  std::size_t nodes = 0, bold = 0, edges = 0;
  std::istringstream in(dot);
  std::string line;
  // Node names are the quoted strings on each line.
  auto quoted = [](const std::string& l, std::size_t from, std::size_t& end) {
    const auto a = l.find('"', from);
    if (a == std::string::npos) return std::string();
    end = l.find('"', a + 1);
    return l.substr(a + 1, end - a - 1);
  };
  while (std::getline(in, line)) {
    std::size_t end = 0;
    const std::string from = quoted(line, 0, end);
    if (from.empty()) continue;
    const auto arrow = line.find(" -> ", end);
    if (arrow == std::string::npos) {
      ++nodes;
      indegree[from];
      continue;
    }
    ++edges;
    bold += line.find("[style=bold]") != std::string::npos;
    const std::string to = quoted(line, arrow, end);
    out[from].push_back(to);
    ++indegree[to];
  }
  CHECK(nodes == 10);
  CHECK(bold == 5);
  CHECK(edges == iv.cover_edges().size());
  std::vector<std::string> ready;
  for (const auto& [n, d] : indegree) {
    if (d == 0) ready.push_back(n);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::string n = ready.back();
    ready.pop_back();
    ++removed;
    for (const auto& t : out[n]) {
      if (--indegree[t] == 0) ready.push_back(t);
    }
  }
  CHECK(removed == nodes);

  const HasseInterval point = enumerate_interval(w.element(), w.element());
  const std::string single = export_dot(point, match_interval(point, w));
  CHECK(single == "digraph bruhat_interval {\n  \"s2 s3 s1 s2\" [label=\"s2 s3 s1 s2\"];\n}\n");

  CHECK_THROWS_AS(write_dot("/nonexistent_dir/x.dot", iv, m), IoError);
}
