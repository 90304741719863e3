#include "scf/artifacts.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace scf {

using ordered_json = nlohmann::ordered_json;

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::ConfigError, "cannot open " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ConfigError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string b_to_json(const IndexSet& b) {
  ordered_json j;
  j["count"] = b.size();
  j["indices"] = b.indices();
  return j.dump(2) + "\n";
}

IndexSet b_from_json(const GroupPtr& group, const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  return IndexSet(group, j.at("indices").get<std::vector<std::uint32_t>>());
}

std::string spectrum_to_csv(const GroupFunction& f_final, const IndexSet& K,
                            const IndexSet& R, const IndexSet& S) {
  SpectralFunction hat = fourier(f_final);
  auto k_mask = K.mask();
  auto r_mask = R.mask();
  auto s_mask = S.mask();
  std::ostringstream out;
  out << "char_index,abs_coeff,in_K,in_R,in_S\n";
  out.precision(17);
  for (std::size_t i = 0; i < hat.size(); ++i) {
    out << i << ',' << std::abs(hat[i]) << ',' << int(k_mask[i]) << ','
        << int(r_mask[i]) << ',' << int(s_mask[i]) << '\n';
  }
  return out.str();
}

SpectrumCsv spectrum_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "char_index,abs_coeff,in_K,in_R,in_S") {
    fail(ErrorCode::ConfigError, "spectrum.csv has an unexpected header");
  }
  SpectrumCsv out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // index, implicit by position
    std::getline(row, field, ',');
    out.abs_coeff.push_back(std::stod(field));
    std::getline(row, field, ',');
    out.in_K.push_back(field == "1");
    std::getline(row, field, ',');
    out.in_R.push_back(field == "1");
    std::getline(row, field, ',');
    out.in_S.push_back(field == "1");
  }
  return out;
}

std::string spectrum_to_svg(const GroupFunction& f_final, const IndexSet& K,
                            const IndexSet& R, const IndexSet& S) {
  SpectralFunction hat = fourier(f_final);
  const std::size_t n = hat.size();
  const double width = 960.0, height = 360.0, margin = 40.0;
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  double top = 1e-12;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, std::abs(hat[i]));

  auto x_of = [&](double i) { return margin + plot_w * i / static_cast<double>(n); };
  const double band_w = plot_w / static_cast<double>(n);

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto bands = [&](const IndexSet& set, const char* color) {
    for (std::uint32_t i : set.indices()) {
      svg << "<rect x=\"" << x_of(i) << "\" y=\"" << margin << "\" width=\""
          << band_w << "\" height=\"" << plot_h << "\" fill=\"" << color
          << "\" fill-opacity=\"0.25\"/>\n";
    }
  };
  bands(K, "#999999");
  bands(R, "#4a90d9");
  bands(S, "#5cb85c");

  svg << "<line x1=\"" << margin << "\" y1=\"" << margin + plot_h << "\" x2=\""
      << margin + plot_w << "\" y2=\"" << margin + plot_h
      << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::abs(hat[i]);
    if (a <= 0.0) continue;
    double x = x_of(i + 0.5);
    double y = margin + plot_h * (1.0 - a / top);
    svg << "<line x1=\"" << x << "\" y1=\"" << margin + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << y << "\" stroke=\"#202020\" stroke-width=\"1\"/>\n";
  }
  svg << "<text x=\"" << margin << "\" y=\"" << margin - 12
      << "\" font-family=\"sans-serif\" font-size=\"13\">|F f| by character "
         "index; bands: K gray, R blue, S green; peak "
      << top << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out.precision(17);
  out << "epsilon,u_norm,log_term,ratio,iterations,runtime_ms\n";
  for (const SweepRow& row : sweep.rows) {
    out << row.epsilon << ',';
    if (row.ok) {
      out << row.u_norm << ',' << row.log_term << ',' << row.ratio << ','
          << row.iterations << ',' << row.runtime_ms << '\n';
    } else {
      out << "error,error,error,error," << row.runtime_ms << '\n';
    }
  }
  return out.str();
}

std::string fit_to_json(const SweepFit& fit) {
  ordered_json j;
  j["points"] = fit.points;
  j["slope"] = fit.slope;
  j["min_ratio"] = fit.min_ratio;
  j["max_ratio"] = fit.max_ratio;
  j["criterion"] = "slope <= 2 * min_ratio";
  j["pass"] = fit.pass;
  j["note"] = fit.note;
  return j.dump(2) + "\n";
}

}  // namespace scf
