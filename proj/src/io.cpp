#include <coxmask/io.hpp>
#include <coxmask/presets.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace coxmask {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view s, int& v) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

// Joins cells padded to a common width, trimming the trailing padding.
std::string row(const std::vector<std::string>& cells, std::size_t width) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ' ';
    out += pad(cells[k], width);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::string> letter_cells(const ReducedExpression& expr) {
  std::vector<std::string> out;
  for (Gen g : expr.letters()) out.push_back("s" + std::to_string(g));
  return out;
}

std::size_t cell_width(const std::vector<std::string>& letters, std::size_t min_width) {
  std::size_t w = min_width;
  for (const auto& s : letters) w = std::max(w, s.size());
  return w;
}

std::vector<std::string> relative_cells(const RelativeMask& rm) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= rm.size(); ++j) {
    switch (rm.entry(j)) {
      case Entry::zero: out.emplace_back("0"); break;
      case Entry::one: out.emplace_back("1"); break;
      case Entry::x: out.emplace_back(j > 1 && rm.is_defect(j) ? "X^d" : "X"); break;
    }
  }
  return out;
}

}  // namespace

CoxeterMatrix parse_matrix_text(std::string_view text) {
  std::vector<std::pair<int, std::vector<std::string>>> lines;  // (line number, tokens)
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto tokens = split_ws(text.substr(start, end - start));
    if (!tokens.empty()) lines.emplace_back(number, std::move(tokens));
    start = end + 1;
  }
  if (lines.empty()) throw InputError("matrix file is empty");
  auto where = [](int line, std::size_t col) {
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  };
  int n = 0;
  if (lines[0].second.size() != 1 || !parse_int(lines[0].second[0], n) || n < 1) {
    throw InputError(where(lines[0].first, 1) + ": expected the rank as a positive integer");
  }
  if (static_cast<int>(lines.size()) != n + 1) {
    throw InputError("expected " + std::to_string(n) + " matrix rows after the rank, found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    const auto& [line, tokens] = lines[i + 1];
    if (static_cast<int>(tokens.size()) != n) {
      throw InputError("line " + std::to_string(line) + ": expected " + std::to_string(n) +
                       " entries, found " + std::to_string(tokens.size()));
    }
    for (int j = 0; j < n; ++j) {
      if (!parse_int(tokens[j], rows[i][j]) || rows[i][j] < 0) {
        throw InputError(where(line, j + 1) + ": malformed entry '" + tokens[j] + "'");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const int line = lines[i + 1].first;
    if (rows[i][i] != 1) throw InputError(where(line, i + 1) + ": diagonal entry must be 1");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rows[i][j] == 1) {
        throw InputError(where(line, j + 1) + ": off-diagonal entry must be >= 2 or 0");
      }
      if (rows[i][j] != rows[j][i]) {
        throw InputError(where(line, j + 1) + ": asymmetric entry (" +
                         std::to_string(rows[i][j]) + " vs " + std::to_string(rows[j][i]) +
                         " at " + where(lines[j + 1].first, i + 1) + ")");
      }
    }
  }
  return CoxeterMatrix(rows);
}

CoxeterMatrix parse_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read matrix file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_text(ss.str());
}

CoxeterMatrix resolve_group(std::string_view group) {
  std::error_code ec;
  const std::filesystem::path p{std::string(group)};
  if (std::filesystem::is_regular_file(p, ec)) return parse_matrix_file(p);
  return preset_matrix(group);
}

Word parse_word(std::string_view text, int rank) {
  Word out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "e" && out.empty()) {
      token.clear();
      return;
    }
    // Accept "2", "s2", "s_2" and runs such as "s2s1".
    std::size_t i = 0;
    bool any = false;
    while (i < token.size()) {
      if (token[i] == 's') {
        ++i;
        if (i < token.size() && token[i] == '_') ++i;
      } else if (any) {
        throw InputError("bad word token '" + token + "'");
      }
      std::size_t j = i;
      while (j < token.size() && std::isdigit(static_cast<unsigned char>(token[j]))) ++j;
      int v = 0;
      if (j == i || !parse_int(std::string_view(token).substr(i, j - i), v)) {
        throw InputError("bad word token '" + token + "'");
      }
      if (v < 1 || v > rank) {
        throw InputError("generator " + std::to_string(v) + " out of range 1.." +
                         std::to_string(rank));
      }
      out.push_back(v);
      any = true;
      i = j;
    }
    token.clear();
  };
  bool saw_identity = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (token == "e") saw_identity = true;
      flush();
    } else {
      token += c;
    }
  }
  if (token == "e") saw_identity = true;
  flush();
  if (saw_identity && !out.empty()) throw InputError("'e' cannot be mixed with generators");
  return out;
}

std::string format_word(std::span<const Gen> word) {
  if (word.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += ' ';
    out += 's' + std::to_string(word[k]);
  }
  return out;
}

std::string format_element(const Element& x) { return format_word(canonical_letters(x)); }

std::string format_mask(const Mask& mask) {
  const auto letters = letter_cells(mask.expression());
  const std::size_t w = cell_width(letters, 1);
  std::vector<std::string> bits;
  for (auto b : mask.bits()) bits.push_back(b ? "1" : "0");
  return row(letters, w) + "\n" + row(bits, w) + "\n";
}

std::string format_constant_mask(const ConstantMask& cm) {
  std::string out = format_mask(cm.mask);
  const std::size_t p = cm.mask.size();
  for (std::size_t i = p + 1; i >= 1; --i) {
    out += "r" + std::to_string(i) + " = " + format_element(cm.trace.r(i)) + "\n";
  }
  return out;
}

std::string format_relative_mask(const RelativeMask& rm) {
  std::string out;
  for (const auto& c : relative_cells(rm)) {
    if (!out.empty()) out += ' ';
    out += c;
  }
  return out;
}

Word xmask_subword(const RelativeMask& rm) {
  Word out;
  for (std::size_t j = 1; j <= rm.size(); ++j) {
    if (rm.entry(j) != Entry::x) out.push_back(rm.expression().letter(j));
  }
  return out;
}

std::string format_interval_table(const std::vector<IntervalMask>& masks,
                                  const ReducedExpression& expr) {
  const auto letters = letter_cells(expr);
  const std::size_t w = cell_width(letters, 3);
  const std::string sigma_label = "sigma = ";
  const std::string tau_label = "tau = ";
  const std::string gap = "  ";
  const std::size_t block = letters.empty() ? 0 : letters.size() * (w + 1) - 1;

  std::string out;
  out += std::string(sigma_label.size(), ' ') + pad(row(letters, w), block) + gap +
         std::string(tau_label.size(), ' ') + pad(row(letters, w), block) + gap +
         "subexpression\n";
  for (const auto& im : masks) {
    std::vector<std::string> tau;
    for (Entry e : im.mask.entries()) tau.emplace_back(e == Entry::x ? "0" : "1");
    out += sigma_label + pad(row(relative_cells(im.mask), w), block) + gap + tau_label +
           pad(row(tau, w), block) + gap + format_word(xmask_subword(im.mask)) + "\n";
  }
  return out;
}

std::string format_matching(const Matching& m) {
  std::map<std::size_t, std::vector<const MatchedPair*>, std::greater<>> by_rank;
  for (const auto& p : m.pairs) by_rank[p.upper_word.size()].push_back(&p);
  auto describe = [](const Word& canonical, const std::optional<RelativeMask>& rm) {
    if (!rm) return format_word(canonical);
    return format_word(xmask_subword(*rm)) + " [" + format_relative_mask(*rm) + "]";
  };
  std::string out;
  for (const auto& [rank, pairs] : by_rank) {
    out += "rank " + std::to_string(rank) + ":\n";
    for (const auto* p : pairs) {
      out += "  " + describe(p->upper_word, p->upper_mask) + " -- " +
             describe(p->lower_word, p->lower_mask);
      if (p->move) {
        out += "  (position " + std::to_string(p->move->position) + ", rule " +
               std::to_string(static_cast<int>(p->move->rule)) + ")";
      }
      out += "\n";
    }
  }
  out += "pairs: " + std::to_string(m.pairs.size()) + "\n";
  out += "unmatched:";
  if (m.unmatched_words.empty()) out += " none";
  for (const auto& w : m.unmatched_words) out += " [" + format_word(w) + "]";
  out += "\n";
  return out;
}

std::string export_dot(const HasseInterval& interval, const Matching& m) {
  std::set<std::pair<std::size_t, std::size_t>> matched;
  for (const auto& p : m.pairs) {
    const auto u = interval.index_of(p.upper_word);
    const auto l = interval.index_of(p.lower_word);
    if (!u || !l || !interval.has_cover(*u, *l)) {
      throw IntegrityError("matched pair is not a cover edge of the interval");
    }
    matched.emplace(*u, *l);
  }
  auto id = [&](std::size_t i) { return "\"" + format_word(interval.word(i)) + "\""; };
  std::string out = "digraph bruhat_interval {\n";
  for (std::size_t i = 0; i < interval.size(); ++i) {
    out += "  " + id(i) + " [label=" + id(i) + "];\n";
  }
  for (const auto& e : interval.cover_edges()) {
    if (matched.count({e.upper, e.lower})) {
      out += "  " + id(e.lower) + " -> " + id(e.upper) + " [style=bold];\n";
    } else {
      out += "  " + id(e.upper) + " -> " + id(e.lower) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

void write_dot(const std::filesystem::path& path, const HasseInterval& interval,
               const Matching& m) {
  const std::string text = export_dot(interval, m);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace coxmask
