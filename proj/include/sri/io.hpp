#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sri/matrix.hpp"
#include "sri/shapley.hpp"
#include "sri/sri.hpp"

namespace sri::io {

// All writers emit '\n' line endings and shortest round-trip number
// formatting, so identical inputs produce byte-identical files.

// Plain numeric matrix, one CSV row per matrix row, no header.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

// n x n decomposition matrix; NaN entries (diagonal, undefined pairs) are
// written as empty cells.
void write_sri_matrix_csv(const std::filesystem::path& path, const Matrix& m);

// Long-format interaction tensor: header "u,i,j,value", indices 1-based,
// all n*n entries per observation including the diagonal main effects.
void write_interaction_csv(const std::filesystem::path& path, const InteractionTensor& t);

// Reads the long format back; validates completeness, index ranges, and
// symmetry (|t(u,i,j) - t(u,j,i)| <= symmetry_tol).
InteractionTensor read_interaction_csv(const std::filesystem::path& path, std::size_t m,
                                       std::size_t n, double symmetry_tol = 1e-6);

// Combined decomposition document:
// {"S": [[...]], "R": [[...]], "I": [[...]], "undefined_pairs": [[i,j],...]}
// with null for masked cells and 1-based pair indices.
void write_report_json(const std::filesystem::path& path, const SriResult& result,
                       const std::vector<std::string>& feature_names);

// Static SVG 1.1 heatmap of one decomposition matrix; cell shade ramps
// from white (0) to mid gray (1), matching the console table layout.
void write_heatmap_svg(const std::filesystem::path& path, const Matrix& m,
                       std::string_view title, const std::vector<std::string>& feature_names);

// Three labeled tables (synergy, redundancy, independence) with values in
// fixed 2-decimal format, '-' on the diagonal and 'n/a' for undefined pairs.
std::string format_sri_tables(const SriResult& result,
                              const std::vector<std::string>& feature_names);

}  // namespace sri::io
