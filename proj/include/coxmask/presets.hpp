#pragma once

#include <coxmask/coxeter.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace coxmask {

/// Coxeter matrix for a named type: A<n>, B<n>, D<n>, E6, E7, E8, F4, G2,
/// H3, H4, I2_<m> and tA<n> (affine A~n; tA1 has m = inf). Bourbaki node
/// numbering. Throws InputError for unknown names.
CoxeterMatrix preset_matrix(std::string_view name);

/// Names accepted by preset_matrix, with <n>/<m> placeholders.
std::vector<std::string> preset_names();

}  // namespace coxmask
