#include <coxmask/presets.hpp>

#include <charconv>

namespace coxmask {

namespace {

using Rows = std::vector<std::vector<int>>;

Rows all_commuting(int n) {
  Rows m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void bond(Rows& m, int i, int j, int order) {
  m[i - 1][j - 1] = order;
  m[j - 1][i - 1] = order;
}

Rows path(int n) {
  Rows m = all_commuting(n);
  for (int i = 1; i < n; ++i) bond(m, i, i + 1, 3);
  return m;
}

int parse_suffix(std::string_view name, std::size_t offset, int min_value) {
  const std::string_view digits = name.substr(offset);
  int v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() ||
      v < min_value) {
    throw InputError("unknown group preset '" + std::string(name) + "'");
  }
  return v;
}

}  // namespace

CoxeterMatrix preset_matrix(std::string_view name) {
  if (name.starts_with("tA")) {
    const int n = parse_suffix(name, 2, 1);
    if (n == 1) return CoxeterMatrix({{1, CoxeterMatrix::kInfinity}, {CoxeterMatrix::kInfinity, 1}});
    Rows m = path(n + 1);
    bond(m, 1, n + 1, 3);
    return CoxeterMatrix(m);
  }
  if (name.starts_with("I2_")) {
    if (name == "I2_inf") return preset_matrix("tA1");
    const int order = parse_suffix(name, 3, 2);
    return CoxeterMatrix({{1, order}, {order, 1}});
  }
  if (name == "E6" || name == "E7" || name == "E8") {
    const int n = name[1] - '0';
    Rows m = all_commuting(n);
    bond(m, 1, 3, 3);
    bond(m, 2, 4, 3);
    for (int i = 3; i < n; ++i) bond(m, i, i + 1, 3);
    return CoxeterMatrix(m);
  }
  if (name == "F4") {
    Rows m = path(4);
    bond(m, 2, 3, 4);
    return CoxeterMatrix(m);
  }
  if (name == "G2") return CoxeterMatrix({{1, 6}, {6, 1}});
  if (name == "H3" || name == "H4") {
    Rows m = path(name[1] - '0');
    bond(m, 1, 2, 5);
    return CoxeterMatrix(m);
  }
  if (name.starts_with("A")) return CoxeterMatrix(path(parse_suffix(name, 1, 1)));
  if (name.starts_with("B")) {
    const int n = parse_suffix(name, 1, 2);
    Rows m = path(n);
    bond(m, n - 1, n, 4);
    return CoxeterMatrix(m);
  }
  if (name.starts_with("D")) {
    const int n = parse_suffix(name, 1, 4);
    Rows m = path(n - 1);
    for (auto& row : m) row.push_back(2);
    m.push_back(std::vector<int>(n, 2));
    m[n - 1][n - 1] = 1;
    bond(m, n - 2, n, 3);
    return CoxeterMatrix(m);
  }
  throw InputError("unknown group preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"A<n>", "B<n>", "D<n>", "E6", "E7", "E8", "F4", "G2",
          "H3",   "H4",   "I2_<m>", "tA<n>"};
}

}  // namespace coxmask
