#include "sri/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "sri/errors.hpp"
#include "sri/numfmt.hpp"

namespace sri::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols; ++c) {
      const double v = m(r, c);
      if (std::isnan(v))
        row.push_back(nullptr);
      else
        row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_for_write(path);
  std::string line;
  for (std::size_t r = 0; r < m.rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c > 0) line += ',';
      line += format_double(m(r, c));
    }
    line += '\n';
    out << line;
  }
}

void write_sri_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_for_write(path);
  std::string line;
  for (std::size_t r = 0; r < m.rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c > 0) line += ',';
      const double v = m(r, c);
      if (!std::isnan(v)) line += format_double(v);
    }
    line += '\n';
    out << line;
  }
}

void write_interaction_csv(const std::filesystem::path& path, const InteractionTensor& t) {
  auto out = open_for_write(path);
  out << "u,i,j,value\n";
  std::string line;
  for (std::size_t u = 0; u < t.observations; ++u) {
    for (std::size_t i = 0; i < t.features; ++i) {
      for (std::size_t j = 0; j < t.features; ++j) {
        line.clear();
        line += std::to_string(u + 1);
        line += ',';
        line += std::to_string(i + 1);
        line += ',';
        line += std::to_string(j + 1);
        line += ',';
        line += format_double(t.at(u, i, j));
        line += '\n';
        out << line;
      }
    }
  }
}

InteractionTensor read_interaction_csv(const std::filesystem::path& path, std::size_t m,
                                       std::size_t n, double symmetry_tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw IoError("no rows in file: " + path.string());
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line != "u,i,j,value")
    throw IoError("expected header 'u,i,j,value' in " + path.string() + ", found '" + line + "'");

  InteractionTensor t(m, n);
  std::vector<char> seen(m * n * n, 0);
  std::size_t line_no = 1;

  auto parse_index = [&](std::string_view cell, std::size_t upper, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || v < 1 || v > upper)
      throw IoError("invalid " + std::string(what) + " index '" + std::string(cell) +
                    "' at line " + std::to_string(line_no));
    return v - 1;
  };

  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view rest(line);
    std::string_view cells[4];
    for (int c = 0; c < 4; ++c) {
      const std::size_t comma = rest.find(',');
      if (c < 3) {
        if (comma == std::string_view::npos)
          throw IoError("expected 4 cells at line " + std::to_string(line_no));
        cells[c] = rest.substr(0, comma);
        rest = rest.substr(comma + 1);
      } else {
        if (comma != std::string_view::npos)
          throw IoError("expected 4 cells at line " + std::to_string(line_no));
        cells[c] = rest;
      }
    }

    const std::size_t u = parse_index(cells[0], m, "observation");
    const std::size_t i = parse_index(cells[1], n, "feature");
    const std::size_t j = parse_index(cells[2], n, "feature");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cells[3].data(), cells[3].data() + cells[3].size(), v);
    if (ec != std::errc() || ptr != cells[3].data() + cells[3].size() || !std::isfinite(v))
      throw IoError("invalid value '" + std::string(cells[3]) + "' at line " +
                    std::to_string(line_no));

    const std::size_t slot = (u * n + i) * n + j;
    if (seen[slot])
      throw IoError("duplicate entry (u=" + std::to_string(u + 1) + ", i=" + std::to_string(i + 1) +
                    ", j=" + std::to_string(j + 1) + ") at line " + std::to_string(line_no));
    seen[slot] = 1;
    t.at(u, i, j) = v;
  }

  for (std::size_t slot = 0; slot < seen.size(); ++slot) {
    if (!seen[slot]) {
      const std::size_t u = slot / (n * n);
      const std::size_t i = (slot / n) % n;
      const std::size_t j = slot % n;
      throw IoError("incomplete interaction tensor: missing entry (u=" + std::to_string(u + 1) +
                    ", i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) + ")");
    }
  }

  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = std::fabs(t.at(u, i, j) - t.at(u, j, i));
        if (d > symmetry_tol)
          throw IoError("interaction tensor asymmetry at (u=" + std::to_string(u + 1) +
                        ", i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) +
                        "): |" + format_double(t.at(u, i, j)) + " - " +
                        format_double(t.at(u, j, i)) + "| = " + format_double(d) +
                        " exceeds " + format_double(symmetry_tol));
      }
    }
  }

  return t;
}

void write_report_json(const std::filesystem::path& path, const SriResult& result,
                       const std::vector<std::string>& feature_names) {
  (void)feature_names;  // names are positional in the matrices
  nlohmann::ordered_json doc;
  doc["S"] = matrix_to_json(result.synergy);
  doc["R"] = matrix_to_json(result.redundancy);
  doc["I"] = matrix_to_json(result.independence);
  nlohmann::ordered_json undefined = nlohmann::ordered_json::array();
  for (const auto& [i, j] : result.undefined_pairs)
    undefined.push_back({i + 1, j + 1});
  doc["undefined_pairs"] = std::move(undefined);

  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

void write_heatmap_svg(const std::filesystem::path& path, const Matrix& m,
                       std::string_view title, const std::vector<std::string>& feature_names) {
  const std::size_t n = m.rows;
  const int cell = 56;
  const int pad_left = 72;
  const int pad_top = 64;
  const int width = pad_left + cell * static_cast<int>(n) + 16;
  const int height = pad_top + cell * static_cast<int>(n) + 16;

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
    << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
    << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
    << "  <text x=\"" << pad_left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
    << title << "</text>\n";

  for (std::size_t c = 0; c < n; ++c) {
    const int x = pad_left + cell * static_cast<int>(c) + cell / 2;
    s << "  <text x=\"" << x << "\" y=\"" << pad_top - 10
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << feature_names[c] << "</text>\n";
  }

  for (std::size_t r = 0; r < n; ++r) {
    const int y = pad_top + cell * static_cast<int>(r) + cell / 2 + 5;
    s << "  <text x=\"" << pad_left - 10 << "\" y=\"" << y
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">" << feature_names[r]
      << "</text>\n";
    for (std::size_t c = 0; c < n; ++c) {
      const int x = pad_left + cell * static_cast<int>(c);
      const int ytop = pad_top + cell * static_cast<int>(r);
      const double v = m(r, c);
      std::string fill = "white";
      std::string label;
      if (r == c) {
        label = "-";
      } else if (std::isnan(v)) {
        label = "n/a";
      } else {
        const double clamped = std::min(std::max(v, 0.0), 1.0);
        const int g = 255 - static_cast<int>(std::lround(127.0 * clamped));
        fill = "rgb(" + std::to_string(g) + ',' + std::to_string(g) + ',' + std::to_string(g) + ')';
        label = fixed2(v);
      }
      s << "  <rect x=\"" << x << "\" y=\"" << ytop << "\" width=\"" << cell << "\" height=\""
        << cell << "\" fill=\"" << fill << "\" stroke=\"#888\"/>\n"
        << "  <text x=\"" << x + cell / 2 << "\" y=\"" << ytop + cell / 2 + 5
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << label
        << "</text>\n";
    }
  }
  s << "</svg>\n";

  auto out = open_for_write(path);
  out << s.str();
}

std::string format_sri_tables(const SriResult& result,
                              const std::vector<std::string>& feature_names) {
  const std::size_t n = result.features;
  std::size_t width = 5;
  for (const auto& name : feature_names) width = std::max(width, name.size() + 1);

  const auto pad = [width](const std::string& s) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
  };

  std::ostringstream out;
  const struct {
    const char* title;
    const Matrix* m;
  } blocks[] = {{"Synergy S(i,j)", &result.synergy},
                {"Redundancy R(i,j)", &result.redundancy},
                {"Independence I(i,j)", &result.independence}};

  for (const auto& block : blocks) {
    out << block.title << '\n';
    out << pad("");
    for (std::size_t c = 0; c < n; ++c) out << pad(feature_names[c]);
    out << '\n';
    for (std::size_t r = 0; r < n; ++r) {
      out << pad(feature_names[r]);
      for (std::size_t c = 0; c < n; ++c) {
        const double v = (*block.m)(r, c);
        if (r == c)
          out << pad("-");
        else if (std::isnan(v))
          out << pad("n/a");
        else
          out << pad(fixed2(v));
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace sri::io
