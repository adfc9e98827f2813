#include "logpoly/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace logpoly {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string scan_csv(const ScanReport& rep) {
  std::string out = "r,t,value,flag\n";
  const ScanGrid& grid = rep.grid;
  const std::size_t M = static_cast<std::size_t>(grid.t_samples());
  for (std::size_t ri = 0; ri < grid.r_values().size(); ++ri) {
    const std::string r = format_double(grid.r_values()[ri]);
    for (int j = 0; j < grid.t_samples(); ++j) {
      const double v = rep.values[ri * M + static_cast<std::size_t>(j)];
      out += r;
      out += ',';
      out += format_double(grid.t(j));
      out += ',';
      out += format_double(v);
      out += std::isnan(v) ? ",1\n" : ",0\n";
    }
  }
  return out;
}

nlohmann::json grid_json(const GridParams& g, const ScanGrid& grid) {
  return {{"r_min", g.r_min},
          {"r_max", g.r_max},
          {"r_step", g.r_step},
          {"angles", grid.t_samples()},
          {"radii", grid.r_values().size()}};
}

nlohmann::json scan_summary_json(const std::string& command, const ScanReport& rep,
                                 const GridParams& params, const std::string& version) {
  nlohmann::json skipped = nlohmann::json::array();
  for (const SkippedPoint& s : rep.skipped) skipped.push_back({s.r, s.t});
  nlohmann::json witnesses = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(rep.nonpositive_at.size(), 16); ++i) {
    witnesses.push_back({rep.nonpositive_at[i].r, rep.nonpositive_at[i].t});
  }
  return {{"command", command},
          {"quantity", rep.quantity},
          {"verdict", rep.verdict_string()},
          {"min", rep.min_value},
          {"argmin_r", rep.argmin_r},
          {"argmin_t", rep.argmin_t},
          {"tol", rep.tol},
          {"grid", grid_json(params, rep.grid)},
          {"skipped", skipped},
          {"nonpositive_count", rep.nonpositive_at.size()},
          {"nonpositive_witnesses", witnesses},
          {"version", version}};
}

std::string curve_svg(const BoundaryCurve& curve, const std::string& label,
                      const std::string& version) {
  constexpr double kSize = 512.0;
  constexpr double kMargin = 32.0;
  double x0 = curve.points.front().real(), x1 = x0;
  double y0 = curve.points.front().imag(), y1 = y0;
  for (const Complex& p : curve.points) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-300});
  const double scale = (kSize - 2.0 * kMargin) / span;
  const double cx = 0.5 * (x0 + x1);
  const double cy = 0.5 * (y0 + y1);
  auto px = [&](double x) { return kSize / 2.0 + (x - cx) * scale; };
  auto py = [&](double y) { return kSize / 2.0 - (y - cy) * scale; };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- " << version << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize
     << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "  <rect x=\"" << px(x0) << "\" y=\"" << py(y1) << "\" width=\"" << (x1 - x0) * scale
     << "\" height=\"" << (y1 - y0) * scale
     << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  if (x0 <= 0.0 && x1 >= 0.0) {
    os << "  <line x1=\"" << px(0.0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(0.0) << "\" y2=\""
       << py(y1) << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
  }
  if (y0 <= 0.0 && y1 >= 0.0) {
    os << "  <line x1=\"" << px(x0) << "\" y1=\"" << py(0.0) << "\" x2=\"" << px(x1) << "\" y2=\""
       << py(0.0) << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
  }
  os << "  <polygon fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    if (i) os << ' ';
    os << px(curve.points[i].real()) << ',' << py(curve.points[i].imag());
  }
  os << "\"/>\n";
  os << "  <text x=\"" << kMargin << "\" y=\"" << kMargin / 2.0 + 4.0
     << "\" font-family=\"monospace\" font-size=\"12\">" << label << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace logpoly
