#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "evospec/convergence.hpp"
#include "evospec/galerkin.hpp"
#include "evospec/signal.hpp"

namespace evospec {

// 17 significant digits, enough to round-trip a double exactly
std::string format_g17(double v);

// write via a temp file in the same directory plus rename, so readers never
// observe a partial file
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& text);

// json with sorted keys and stable float formatting
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// header: t, re(c_1), im(c_1), ..., re(c_m), im(c_m)
void write_signal_csv(const std::filesystem::path& path,
                      const WeightedSignal& f);
WeightedSignal read_signal_csv(const std::filesystem::path& path, double nu,
                               double eps_wrap);

// header: n,err_H,err_graph,g_n,h_n,bound_graph,bound_H,pass
void write_convergence_csv(const std::filesystem::path& path,
                           const ConvergenceTable& table);

nlohmann::json coercivity_json(const CoercivityReport& report);
nlohmann::json scheme_json(const GalerkinScheme& scheme);

}  // namespace evospec
