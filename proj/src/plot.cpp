#include "survsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "survsim/error.hpp"

namespace survsim {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 130, kTop = 40, kBottom = 50;

const char* colour(Technique t) {
  switch (t) {
    case Technique::Br: return "#1f77b4";
    case Technique::Fl: return "#8c564b";
    case Technique::BrCBr: return "#ff7f0e";
    case Technique::BrCLFl: return "#2ca02c";
    case Technique::AdLH: return "#d62728";
    case Technique::AdFH: return "#9467bd";
  }
  return "#000";
}

std::string label(Technique t) {
  switch (t) {
    case Technique::Br: return "Br";
    case Technique::Fl: return "Fl";
    case Technique::BrCBr: return "BrCBr";
    case Technique::BrCLFl: return "BrCLFl";
    case Technique::AdLH: return "AdLH";
    case Technique::AdFH: return "AdFH";
  }
  return "?";
}

struct Series {
  Technique technique;
  std::vector<std::pair<double, double>> points;  // (rate %, value)
};

std::string render(const std::string& title, const std::string& y_label, const std::vector<Series>& series,
                   bool log_y) {
  double y_min = INFINITY, y_max = -INFINITY;
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      if (log_y && y <= 0.0) continue;
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (!std::isfinite(y_min)) y_min = y_max = log_y ? 1.0 : 0.0;
  double lo, hi;
  if (log_y) {
    lo = std::floor(std::log10(y_min));
    hi = std::ceil(std::log10(y_max));
    if (hi <= lo) hi = lo + 1;
  } else {
    lo = std::min(0.0, y_min);
    hi = y_max > lo ? y_max * 1.05 : lo + 1.0;
  }
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double rate) { return kLeft + rate / 90.0 * pw; };
  auto py = [&](double v) {
    const double t = log_y ? (std::log10(std::max(v, std::pow(10.0, lo))) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return kTop + (1.0 - t) * ph;
  };

  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(2);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph
    << "\" stroke=\"black\"/>\n";
  for (int r = 0; r <= 90; r += 10) {
    o << "<text x=\"" << px(r) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << r << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">Failure rate (%)</text>\n";
  o << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << y_label
    << (log_y ? " (log scale)" : "") << "</text>\n";
  if (log_y) {
    for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); ++e) {
      const double y = py(std::pow(10.0, e));
      o << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y << "\" stroke=\"black\"/>";
      o << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = lo + (hi - lo) * i / 5.0;
      const double y = py(v);
      o << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y << "\" stroke=\"black\"/>";
      o << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << v << "</text>\n";
    }
  }
  double legend_y = kTop + 10;
  for (const auto& s : series) {
    o << "<polyline fill=\"none\" stroke=\"" << colour(s.technique) << "\" stroke-width=\"2\" points=\"";
    for (auto [x, y] : s.points) o << px(x) << ',' << py(y) << ' ';
    o << "\"/>\n";
    for (auto [x, y] : s.points)
      o << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << colour(s.technique) << "\"/>\n";
    o << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << legend_y << "\" x2=\"" << kWidth - kRight + 35
      << "\" y2=\"" << legend_y << "\" stroke=\"" << colour(s.technique) << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << legend_y + 4 << "\">" << label(s.technique)
      << "</text>\n";
    legend_y += 18;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace

std::vector<std::filesystem::path> emit_plots(std::span<const AggregateRow> aggregates,
                                              const std::filesystem::path& output_dir) {
  if (aggregates.empty()) throw Error("no aggregates to plot");
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec || !std::filesystem::is_directory(output_dir))
    throw IoError("cannot create plot directory " + output_dir.string());

  // (model, area) in first-appearance order, techniques likewise.
  std::vector<std::pair<FailureModel, std::string>> panels;
  for (const auto& a : aggregates) {
    const std::pair<FailureModel, std::string> key{a.model, a.area};
    if (std::find(panels.begin(), panels.end(), key) == panels.end()) panels.push_back(key);
  }

  std::vector<std::filesystem::path> written;
  for (const char* metric : {"cd", "crf"}) {
    const bool is_cd = metric[1] == 'd';
    for (const auto& [model, area] : panels) {
      std::vector<Series> series;
      for (const auto& a : aggregates) {
        if (a.model != model || a.area != area) continue;
        auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.technique == a.technique; });
        if (it == series.end()) {
          series.push_back({a.technique, {}});
          it = series.end() - 1;
        }
        it->points.emplace_back(a.rate * 100.0, is_cd ? a.cd_mean : a.crf_mean);
      }
      for (auto& s : series) std::sort(s.points.begin(), s.points.end());
      const bool log_y = !is_cd && area == "small";
      const std::string title = std::string(is_cd ? "Cumulative Deviation" : "Cumulative Replication Factor") +
                                ", " + std::string(to_string(model)) + " failures, " + area + " area";
      const auto path = output_dir / (std::string(metric) + "_" + std::string(to_string(model)) + "_" + area + ".svg");
      std::ofstream out(path);
      if (!out) throw IoError("cannot write " + path.string());
      out << render(title, is_cd ? "CD (percentage points)" : "CRF", series, log_y);
      if (!out) throw IoError("cannot write " + path.string());
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace survsim
