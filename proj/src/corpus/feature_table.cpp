#include <cmath>
#include <limits>
#include <unordered_set>

#include <fmt/format.h>

#include "satfake/corpus.hpp"
#include "satfake/error.hpp"
#include "satfake/util/text.hpp"

namespace satfake {

Eigen::Index FeatureMatrix::column(const std::string& name) const {
  for (std::size_t j = 0; j < column_names.size(); ++j) {
    if (column_names[j] == name) return static_cast<Eigen::Index>(j);
  }
  return -1;
}

}  // namespace satfake

namespace satfake::corpus {

namespace {

void check_names(const FeatureMatrix& m) {
  std::unordered_set<std::string> seen;
  for (const auto& n : m.column_names) {
    if (n.empty() || n.find_first_of(",\n\r\"") != std::string::npos) {
      throw ValidationError(fmt::format("invalid feature column name '{}'", n));
    }
    if (!seen.insert(n).second) throw ValidationError(fmt::format("duplicate feature column '{}'", n));
  }
  if (static_cast<Eigen::Index>(m.column_names.size()) != m.cols() ||
      static_cast<Eigen::Index>(m.row_ids.size()) != m.rows()) {
    throw ValidationError("feature matrix shape does not match its names");
  }
  for (const auto& id : m.row_ids) {
    if (id.find_first_of(",\n\r\"") != std::string::npos) {
      throw ValidationError(fmt::format("article id '{}' cannot be written to a feature table", id));
    }
  }
}

template <typename Cell>
std::string serialize_table(const FeatureMatrix& m, Cell&& cell) {
  check_names(m);
  std::string out = "articleId";
  for (const auto& n : m.column_names) {
    out += ',';
    out += n;
  }
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += m.row_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += ',';
      out += cell(i, j);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string serialize_features(const FeatureMatrix& matrix) {
  return serialize_table(matrix, [&](Eigen::Index i, Eigen::Index j) { return util::format_double(matrix.values(i, j)); });
}

void write_features(const FeatureMatrix& matrix, const std::filesystem::path& path) {
  util::write_file_atomic(path, serialize_features(matrix));
}

void write_flags(const FeatureMatrix& matrix, const std::filesystem::path& path) {
  const bool has = matrix.flags.rows() == matrix.rows() && matrix.flags.cols() == matrix.cols();
  util::write_file_atomic(path, serialize_table(matrix, [&](Eigen::Index i, Eigen::Index j) {
                            return std::string(has && matrix.flags(i, j) ? "1" : "0");
                          }));
}

FeatureMatrix parse_features(std::string_view data) {
  FeatureMatrix m;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  bool header = true;
  for (auto raw : util::split(data, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (util::trim(raw).empty()) continue;
    const auto cells = util::split(raw, ',');
    if (header) {
      if (cells.empty() || util::trim(cells[0]) != "articleId") {
        throw ParseError("feature table: header must start with 'articleId'");
      }
      for (std::size_t j = 1; j < cells.size(); ++j) m.column_names.emplace_back(util::trim(cells[j]));
      header = false;
      continue;
    }
    if (cells.size() != m.column_names.size() + 1) {
      throw ParseError(fmt::format("feature table row {} (line {}): {} cells, header has {}", rows.size() + 1,
                                   line_no, cells.size(), m.column_names.size() + 1));
    }
    m.row_ids.emplace_back(util::trim(cells[0]));
    std::vector<double> row;
    row.reserve(m.column_names.size());
    for (std::size_t j = 1; j < cells.size(); ++j) {
      const auto v = util::parse_double(util::trim(cells[j]));
      if (!v) {
        throw ParseError(fmt::format("feature table row {} (line {}), column '{}': not a number: '{}'", rows.size() + 1,
                                     line_no, m.column_names[j - 1], cells[j]));
      }
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (header) throw ParseError("feature table: missing header row");
  m.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.column_names.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  check_names(m);
  return m;
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  return parse_features(util::read_file(path, "feature table"));
}

}  // namespace satfake::corpus
