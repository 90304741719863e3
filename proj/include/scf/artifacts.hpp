#pragma once

#include <filesystem>
#include <string>

#include "scf/construction.hpp"
#include "scf/report.hpp"

namespace scf {

/// Writes via a temporary file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

std::string b_to_json(const IndexSet& b);
IndexSet b_from_json(const GroupPtr& group, const std::string& text);

/// Header exactly: char_index,abs_coeff,in_K,in_R,in_S (one row per character).
std::string spectrum_to_csv(const GroupFunction& f_final, const IndexSet& K,
                            const IndexSet& R, const IndexSet& S);

struct SpectrumCsv {
  std::vector<double> abs_coeff;
  std::vector<std::uint8_t> in_K, in_R, in_S;
};
SpectrumCsv spectrum_from_csv(const std::string& text);

/// Stem plot of |F f_final| with the K, R, S index bands shaded.
std::string spectrum_to_svg(const GroupFunction& f_final, const IndexSet& K,
                            const IndexSet& R, const IndexSet& S);

std::string sweep_to_csv(const SweepResult& sweep);
std::string fit_to_json(const SweepFit& fit);

}  // namespace scf
