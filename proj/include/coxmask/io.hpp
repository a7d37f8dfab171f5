#pragma once

// Text formats: matrix files, words, mask tables, matchings and DOT export.

#include <coxmask/coxeter.hpp>
#include <coxmask/masks.hpp>
#include <coxmask/matching.hpp>
#include <coxmask/relative.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coxmask {

/// First line: rank n. Then n rows of n whitespace-separated entries, with
/// 0 meaning infinity. Errors name the offending line and column.
CoxeterMatrix parse_matrix_text(std::string_view text);
CoxeterMatrix parse_matrix_file(const std::filesystem::path& path);

/// A preset name, or a path to a matrix file when one exists there.
CoxeterMatrix resolve_group(std::string_view group);

/// Generator indices separated by spaces or commas; each index may carry an
/// "s" prefix ("s2 s1", "s2s1" and "2,1" all parse). "e" is the identity.
Word parse_word(std::string_view text, int rank);

/// "s2 s1 s3", or "e" for the empty word. Re-parses with parse_word.
std::string format_word(std::span<const Gen> word);
/// Canonical word of x.
std::string format_element(const Element& x);

/// Letters of the expression above the bits, one column per position.
std::string format_mask(const Mask& mask);
/// format_mask followed by the greedy remainders r(p+1) ... r(1).
std::string format_constant_mask(const ConstantMask& cm);

/// "1 0 0 X^d": X for X positions, X^d for defect X positions.
std::string format_relative_mask(const RelativeMask& rm);

/// Letters of w^tau for the X-mask tau of rm.
Word xmask_subword(const RelativeMask& rm);

/// Table of sigma row, tau row and subexpression, one line per element.
std::string format_interval_table(const std::vector<IntervalMask>& masks,
                                  const ReducedExpression& expr);

/// Pairs listed rank by rank under their upper element.
std::string format_matching(const Matching& m);

/// Directed graph in DOT syntax: covers point down, matched covers are
/// reversed and bold. Nodes and edges are in (length, canonical word) order.
std::string export_dot(const HasseInterval& interval, const Matching& m);
/// Throws IoError when the file cannot be written.
void write_dot(const std::filesystem::path& path, const HasseInterval& interval,
               const Matching& m);

}  // namespace coxmask
