#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "satfake/error.hpp"
#include "satfake/stats.hpp"
#include "satfake/util/text.hpp"
#include "stats_internal.hpp"

namespace satfake::stats {

namespace detail {

// Flip each column so that its largest-|.| entry is positive.
void fix_signs(Eigen::MatrixXd& m, Eigen::MatrixXd* companion) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index r = 0;
    m.col(c).cwiseAbs().maxCoeff(&r);
    if (m(r, c) < 0.0) {
      m.col(c) *= -1.0;
      if (companion) companion->col(c) *= -1.0;
    }
  }
}

void label_components(PcaModel& m, const char* prefix) {
  m.component_names.clear();
  m.component_labels.clear();
  for (Eigen::Index c = 0; c < m.loadings.cols(); ++c) {
    Eigen::Index r = 0;
    m.loadings.col(c).cwiseAbs().maxCoeff(&r);
    m.component_names.push_back(fmt::format("{}{}", prefix, c + 1));
    m.component_labels.push_back(m.columns[static_cast<std::size_t>(r)]);
  }
}

}  // namespace detail

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, int max_sweeps, double tolerance) {
  const Eigen::Index p = symmetric.rows();
  if (p != symmetric.cols()) throw ValidationError("jacobi_eigen: matrix is not square");
  Eigen::MatrixXd a = 0.5 * (symmetric + symmetric.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(p, p);
  const double scale = std::max(a.norm(), 1e-300);

  SymmetricEigen out;
  double off = off_diagonal_norm(a);
  while (off > tolerance * scale) {
    if (out.sweeps >= max_sweeps) {
      throw ConvergenceError(
          fmt::format("Jacobi eigensolver did not converge in {} sweeps (off-diagonal norm {:.3e})", max_sweeps, off));
    }
    ++out.sweeps;
    for (Eigen::Index i = 0; i < p - 1; ++i) {
      for (Eigen::Index j = i + 1; j < p; ++j) {
        const double aij = a(i, j);
        if (aij == 0.0) continue;
        const double theta = (a(j, j) - a(i, i)) / (2.0 * aij);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < p; ++k) {
          const double aki = a(k, i);
          const double akj = a(k, j);
          a(k, i) = c * aki - s * akj;
          a(k, j) = s * aki + c * akj;
        }
        for (Eigen::Index k = 0; k < p; ++k) {
          const double aik = a(i, k);
          const double ajk = a(j, k);
          a(i, k) = c * aik - s * ajk;
          a(j, k) = s * aik + c * ajk;
        }
        a(i, j) = 0.0;
        a(j, i) = 0.0;
        for (Eigen::Index k = 0; k < p; ++k) {
          const double vki = v(k, i);
          const double vkj = v(k, j);
          v(k, i) = c * vki - s * vkj;
          v(k, j) = s * vki + c * vkj;
        }
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) > a(y, y); });
  out.values.resize(p);
  out.vectors.resize(p, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]).normalized();
  }
  out.off_diagonal = off;
  return out;
}

PcaModel fit_pca(const FeatureMatrix& z) {
  if (!z.standardization) throw ValidationError("fit_pca expects a standardized matrix");
  const Eigen::Index n = z.rows();
  const Eigen::Index p = z.cols();
  if (n < 2 || p < 1) throw ValidationError("fit_pca needs at least 2 rows and 1 column");
  const Eigen::MatrixXd r = (z.values.transpose() * z.values) / static_cast<double>(n - 1);
  const auto eig = jacobi_eigen(r);

  Eigen::Index k = 0;
  while (k < p && eig.values(k) > 1e-8) ++k;
  if (k == 0) throw ValidationError("fit_pca: correlation matrix has no positive eigenvalue");

  PcaModel m;
  m.columns = z.column_names;
  m.standardization = *z.standardization;
  m.standardization.dropped.clear();
  m.eigenvalues = eig.values.head(k);
  m.eigenvectors = eig.vectors.leftCols(k);
  detail::fix_signs(m.eigenvectors, nullptr);
  m.rotation = Eigen::MatrixXd::Identity(k, k);
  m.loadings = m.eigenvectors;
  detail::label_components(m, "PC");
  return m;
}

Eigen::MatrixXd factor_loadings(const PcaModel& model) {
  return model.eigenvectors * model.eigenvalues.cwiseSqrt().asDiagonal();
}

Eigen::MatrixXd project_standardized(const Eigen::MatrixXd& z, const PcaModel& model) {
  if (z.cols() != static_cast<Eigen::Index>(model.columns.size())) {
    throw ValidationError("project_scores: column count does not match the model");
  }
  if (!model.rotated) return z * model.eigenvectors;
  const Eigen::VectorXd inv_sqrt = model.eigenvalues.cwiseSqrt().cwiseInverse();
  return z * model.eigenvectors * inv_sqrt.asDiagonal() * model.rotation;
}

Eigen::MatrixXd project_scores(const FeatureMatrix& raw, const PcaModel& model) {
  return project_standardized(apply_standardization(raw, model.columns, model.standardization), model);
}

void write_pca_model(const PcaModel& m, const std::filesystem::path& path) {
  std::string out = "satfake-pca\t1\n";
  out += fmt::format("rotated\t{}\n", m.rotated ? 1 : 0);
  out += fmt::format("columns\t{}\n", m.columns.size());
  for (std::size_t j = 0; j < m.columns.size(); ++j) {
    out += fmt::format("{}\t{}\t{}\n", m.columns[j], util::format_double(m.standardization.mean[j]),
                       util::format_double(m.standardization.sd[j]));
  }
  const Eigen::Index k = m.retained();
  out += fmt::format("components\t{}\n", k);
  for (Eigen::Index c = 0; c < k; ++c) {
    out += fmt::format("{}\t{}\t{}\n", m.component_names[static_cast<std::size_t>(c)],
                       m.component_labels[static_cast<std::size_t>(c)], util::format_double(m.eigenvalues(c)));
  }
  auto rows = [&](const char* name, const Eigen::MatrixXd& x) {
    out += fmt::format("{}\t{}\t{}\n", name, x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (j) out += '\t';
        out += util::format_double(x(i, j));
      }
      out += '\n';
    }
  };
  rows("eigenvectors", m.eigenvectors);
  rows("rotation", m.rotation);
  util::write_file_atomic(path, out);
}

PcaModel read_pca_model(const std::filesystem::path& path) {
  const std::string data = util::read_file(path, "PCA model");
  const auto lines = util::split(data, '\n');
  std::size_t at = 0;
  auto next = [&]() -> std::vector<std::string_view> {
    if (at >= lines.size()) throw ParseError(fmt::format("{}: unexpected end of file", path.string()));
    return util::split(lines[at++], '\t');
  };
  auto number = [&](std::string_view s) {
    const auto v = util::parse_double(s);
    if (!v) throw ParseError(fmt::format("{}:{}: bad number '{}'", path.string(), at, s));
    return *v;
  };
  auto count = [&](std::string_view s) {
    const auto v = util::parse_int(s);
    if (!v || *v < 0) throw ParseError(fmt::format("{}:{}: bad count '{}'", path.string(), at, s));
    return static_cast<Eigen::Index>(*v);
  };
  auto expect = [&](std::string_view key, std::size_t arity) {
    auto f = next();
    if (f.size() != arity || f[0] != key) throw ParseError(fmt::format("{}:{}: expected '{}'", path.string(), at, key));
    return f;
  };

  PcaModel m;
  if (expect("satfake-pca", 2)[1] != "1") throw ParseError("unsupported PCA model version");
  m.rotated = expect("rotated", 2)[1] == "1";
  const Eigen::Index p = count(expect("columns", 2)[1]);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto f = next();
    if (f.size() != 3) throw ParseError(fmt::format("{}:{}: bad column line", path.string(), at));
    m.columns.emplace_back(f[0]);
    m.standardization.mean.push_back(number(f[1]));
    m.standardization.sd.push_back(number(f[2]));
  }
  const Eigen::Index k = count(expect("components", 2)[1]);
  m.eigenvalues.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const auto f = next();
    if (f.size() != 3) throw ParseError(fmt::format("{}:{}: bad component line", path.string(), at));
    m.component_names.emplace_back(f[0]);
    m.component_labels.emplace_back(f[1]);
    m.eigenvalues(c) = number(f[2]);
  }
  auto matrix = [&](const char* key, Eigen::Index r, Eigen::Index c) {
    const auto head = expect(key, 3);
    if (count(head[1]) != r || count(head[2]) != c) throw ParseError(fmt::format("{}: bad {} shape", path.string(), key));
    Eigen::MatrixXd x(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      const auto f = next();
      if (static_cast<Eigen::Index>(f.size()) != c) throw ParseError(fmt::format("{}:{}: bad row", path.string(), at));
      for (Eigen::Index j = 0; j < c; ++j) x(i, j) = number(f[static_cast<std::size_t>(j)]);
    }
    return x;
  };
  m.eigenvectors = matrix("eigenvectors", p, k);
  m.rotation = matrix("rotation", k, k);
  m.loadings = m.rotated ? Eigen::MatrixXd(factor_loadings(m) * m.rotation) : m.eigenvectors;
  return m;
}

}  // namespace satfake::stats
