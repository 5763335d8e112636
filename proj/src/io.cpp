#include "evospec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace evospec {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& text) {
  const std::filesystem::path dir =
      path.has_parent_path() ? path.parent_path() : ".";
  std::filesystem::create_directories(dir);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out << text;
    if (!out.flush()) {
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  // nlohmann sorts object keys by construction; dump(2) is stable
  atomic_write_text(path, j.dump(2) + "\n");
}

void write_signal_csv(const std::filesystem::path& path,
                      const WeightedSignal& f) {
  std::ostringstream out;
  out << "t";
  for (Eigen::Index c = 0; c < f.dim(); ++c) {
    out << ", re(c_" << c + 1 << "), im(c_" << c + 1 << ")";
  }
  out << "\n";
  for (Eigen::Index k = 0; k < f.values().cols(); ++k) {
    out << format_g17(f.grid().time_at(static_cast<std::size_t>(k)));
    for (Eigen::Index c = 0; c < f.dim(); ++c) {
      out << ", " << format_g17(f.values()(c, k).real()) << ", "
          << format_g17(f.values()(c, k).imag());
    }
    out << "\n";
  }
  atomic_write_text(path, out.str());
}

WeightedSignal read_signal_csv(const std::filesystem::path& path, double nu,
                               double eps_wrap) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path.string() + ": empty file");
  }
  std::vector<double> times;
  std::vector<std::vector<Complex>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(std::stod(cell));
    }
    if (cells.size() < 3 || cells.size() % 2 == 0) {
      throw std::runtime_error(path.string() + ": malformed row");
    }
    times.push_back(cells[0]);
    std::vector<Complex> row;
    for (std::size_t i = 1; i + 1 < cells.size(); i += 2) {
      row.emplace_back(cells[i], cells[i + 1]);
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) {
    throw std::runtime_error(path.string() + ": need at least two samples");
  }
  const std::size_t n = rows.size();
  const std::size_t m = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m) {
      throw std::runtime_error(path.string() + ": ragged rows");
    }
  }
  const double dt = times[1] - times[0];
  const TimeGrid grid(dt * static_cast<double>(n), n, nu, eps_wrap);
  Eigen::MatrixXcd values(static_cast<Eigen::Index>(m),
                          static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < m; ++c) {
      values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k)) =
          rows[k][c];
    }
  }
  return WeightedSignal(grid, std::move(values));
}

void write_convergence_csv(const std::filesystem::path& path,
                           const ConvergenceTable& table) {
  std::ostringstream out;
  out << "n,err_H,err_graph,g_n,h_n,bound_graph,bound_H,pass\n";
  for (const ConvergenceRow& r : table.rows) {
    out << r.n << ',' << format_g17(r.err_h) << ',' << format_g17(r.err_graph)
        << ',' << format_g17(r.g_n) << ',' << format_g17(r.h_n) << ','
        << format_g17(r.bound_graph) << ',' << format_g17(r.bound_h) << ','
        << (r.pass ? 1 : 0) << "\n";
  }
  atomic_write_text(path, out.str());
}

nlohmann::json coercivity_json(const CoercivityReport& report) {
  nlohmann::json j;
  j["c_estimate"] = report.c_estimate;
  j["d_max"] = report.d_max;
  j["nu"] = report.nu;
  j["num_samples"] = report.num_samples;
  j["status"] = report.coercive() ? "coercive" : "not_coercive";
  return j;
}

nlohmann::json scheme_json(const GalerkinScheme& scheme) {
  nlohmann::json j;
  j["instance"] = scheme.op().name();
  j["dim"] = scheme.dim();
  j["kernel"] = scheme.n_kernel();
  j["pairs"] = (scheme.dim() - scheme.n_kernel()) / 2;
  j["pair_complete"] = scheme.pair_complete();
  j["components"] = scheme.op().components();
  return j;
}

}  // namespace evospec
