#include "ybchain/export.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ybchain/errors.h"

namespace ybchain {
namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty number");
  double value = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw InvalidArgument("not a number: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

/// Perceptual-ish blue -> white -> red ramp on t in [0, 1].
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  double r, g, b;
  if (t < 0.5) {
    const double u = t / 0.5;
    r = 0.23 + u * (0.97 - 0.23);
    g = 0.30 + u * (0.97 - 0.30);
    b = 0.75 + u * (0.97 - 0.75);
  } else {
    const double u = (t - 0.5) / 0.5;
    r = 0.97 + u * (0.71 - 0.97);
    g = 0.97 + u * (0.02 - 0.97);
    b = 0.97 + u * (0.15 - 0.97);
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(r * 255)),
                static_cast<int>(std::lround(g * 255)), static_cast<int>(std::lround(b * 255)));
  return buf;
}

std::string pi_label(int quarters) {
  switch (quarters) {
    case 0: return "0";
    case 1: return "π/4";
    case 2: return "π/2";
    case 3: return "3π/4";
    case 4: return "π";
    case -1: return "-π/4";
    case -2: return "-π/2";
    case -3: return "-3π/4";
    case -4: return "-π";
  }
  if (quarters % 4 == 0) return std::to_string(quarters / 4) + "π";
  if (quarters % 2 == 0) return std::to_string(quarters / 2) + "π/2";
  return std::to_string(quarters) + "π/4";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const ScanGrid& grid) {
  out << "theta1,theta2,value,valid\r\n";
  for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
    for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) {
      const auto& v = grid.at(i1, i2);
      out << format_double(grid.theta1_axis[i1]) << ',' << format_double(grid.theta2_axis[i2]) << ','
          << (v ? format_double(*v) : std::string()) << ',' << (v ? 1 : 0) << "\r\n";
    }
  }
}

ScanGrid read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "theta1,theta2,value,valid") throw InvalidArgument("unexpected CSV header: " + line);

  struct Row {
    double t1, t2;
    std::optional<double> v;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw InvalidArgument("CSV row needs 4 fields: " + line);
    Row r{parse_number(f[0]), parse_number(f[1]), std::nullopt};
    const std::string valid = trim(f[3]);
    if (valid == "1")
      r.v = parse_number(f[2]);
    else if (valid != "0")
      throw InvalidArgument("valid flag must be 0 or 1: " + line);
    rows.push_back(r);
  }

  ScanGrid grid;
  for (const auto& r : rows) {
    if (grid.theta1_axis.empty() || grid.theta1_axis.back() != r.t1) {
      if (std::find(grid.theta1_axis.begin(), grid.theta1_axis.end(), r.t1) == grid.theta1_axis.end())
        grid.theta1_axis.push_back(r.t1);
    }
    if (grid.theta1_axis.size() == 1) grid.theta2_axis.push_back(r.t2);
  }
  if (rows.size() != grid.n1() * grid.n2() || grid.n2() == 0)
    throw InvalidArgument("CSV rows do not form a rectangular grid");
  grid.values.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].t1 != grid.theta1_axis[i / grid.n2()] || rows[i].t2 != grid.theta2_axis[i % grid.n2()])
      throw InvalidArgument("CSV rows are not in row-major grid order");
    grid.values.push_back(rows[i].v);
  }
  return grid;
}

void write_svg(std::ostream& out, const ScanGrid& grid) {
  constexpr double margin_left = 70, margin_top = 40, plot = 480, legend_w = 20, legend_gap = 30;
  constexpr double width = margin_left + plot + legend_gap + legend_w + 90;
  constexpr double height = margin_top + plot + 70;

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& v : grid.values)
    if (v && std::isfinite(*v)) {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  const bool any = lo <= hi;
  if (!any) lo = hi = 0.0;
  const double span = hi > lo ? hi - lo : 1.0;

  const std::size_t n1 = grid.n1(), n2 = grid.n2();
  const double t1_lo = n1 ? grid.theta1_axis.front() : 0.0, t1_hi = n1 ? grid.theta1_axis.back() : 1.0;
  const double t2_lo = n2 ? grid.theta2_axis.front() : 0.0, t2_hi = n2 ? grid.theta2_axis.back() : 1.0;
  // Cells are centred on the samples; the axes extend half a cell beyond.
  const double d1 = n1 > 1 ? (t1_hi - t1_lo) / static_cast<double>(n1 - 1) : 1.0;
  const double d2 = n2 > 1 ? (t2_hi - t2_lo) / static_cast<double>(n2 - 1) : 1.0;
  const double x0 = t1_lo - d1 / 2, x1 = t1_hi + d1 / 2;
  const double y0 = t2_lo - d2 / 2, y1 = t2_hi + d2 / 2;
  auto px = [&](double t1) { return margin_left + (t1 - x0) / (x1 - x0) * plot; };
  auto py = [&](double t2) { return margin_top + plot - (t2 - y0) / (y1 - y0) * plot; };

  char buf[256];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
                width, height, width, height);
  out << buf;
  out << "<title>" << xml_escape(grid.quantity_label) << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "<g shape-rendering=\"crispEdges\">\n";
  const double cw = plot / static_cast<double>(std::max<std::size_t>(n1, 1));
  const double ch = plot / static_cast<double>(std::max<std::size_t>(n2, 1));
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const auto& v = grid.at(i1, i2);
      const std::string fill = (v && std::isfinite(*v)) ? ramp((*v - lo) / span) : "#9e9e9e";
      std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"%s\"/>\n",
                    px(grid.theta1_axis[i1]) - cw / 2, py(grid.theta2_axis[i2]) - ch / 2, cw, ch, fill.c_str());
      out << buf;
    }
  }
  out << "</g>\n";

  std::snprintf(buf, sizeof buf, "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
                margin_left, margin_top, plot, plot);
  out << buf;

  // Ticks at multiples of pi/4 inside the plotted range.
  const double quarter = std::numbers::pi / 4;
  auto ticks = [&](double a, double b) {
    std::vector<int> q;
    for (int k = static_cast<int>(std::ceil(a / quarter - 1e-9)); k * quarter <= b + 1e-9; ++k) q.push_back(k);
    return q;
  };
  for (int k : ticks(x0, x1)) {
    const double x = px(k * quarter);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.3f\" y1=\"%.1f\" x2=\"%.3f\" y2=\"%.1f\" stroke=\"black\"/>"
                  "<text x=\"%.3f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n",
                  x, margin_top + plot, x, margin_top + plot + 5, x, margin_top + plot + 20, pi_label(k).c_str());
    out << buf;
  }
  for (int k : ticks(y0, y1)) {
    const double y = py(k * quarter);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.3f\" x2=\"%.1f\" y2=\"%.3f\" stroke=\"black\"/>"
                  "<text x=\"%.1f\" y=\"%.3f\" text-anchor=\"end\" dominant-baseline=\"middle\">%s</text>\n",
                  margin_left - 5, y, margin_left, y, margin_left - 8, y, pi_label(k).c_str());
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">θ1</text>\n",
                margin_left + plot / 2, margin_top + plot + 45);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 %.1f %.1f)\">θ2</text>\n",
                margin_left - 45, margin_top + plot / 2, margin_left - 45, margin_top + plot / 2);
  out << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n",
                margin_left + plot / 2, margin_top - 15, xml_escape(grid.quantity_label).c_str());
  out << buf;

  // Legend bar, top = max.
  const double lx = margin_left + plot + legend_gap;
  constexpr int steps = 64;
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (int s = 0; s < steps; ++s) {
    const double t = 1.0 - (s + 0.5) / steps;
    std::snprintf(buf, sizeof buf, "<rect x=\"%.1f\" y=\"%.3f\" width=\"%.1f\" height=\"%.3f\" fill=\"%s\"/>\n", lx,
                  margin_top + s * plot / steps, legend_w, plot / steps + 0.5, ramp(t).c_str());
    out << buf;
  }
  out << "</g>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n"
                "<text x=\"%.1f\" y=\"%.1f\" dominant-baseline=\"middle\">%s</text>\n"
                "<text x=\"%.1f\" y=\"%.1f\" dominant-baseline=\"middle\">%s</text>\n",
                lx, margin_top, legend_w, plot, lx + legend_w + 5, margin_top, any ? format_double(hi).substr(0, 10).c_str() : "n/a",
                lx + legend_w + 5, margin_top + plot, any ? format_double(lo).substr(0, 10).c_str() : "n/a");
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"12\" height=\"12\" fill=\"#9e9e9e\"/>"
                "<text x=\"%.1f\" y=\"%.1f\" dominant-baseline=\"middle\">invalid</text>\n",
                lx, margin_top + plot + 30, lx + 17, margin_top + plot + 36);
  out << buf;
  out << "</svg>\n";
}

double parse_angle(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty angle");
  const auto pos = t.find("pi");
  if (pos == std::string::npos) {
    const double value = parse_number(t);
    if (!std::isfinite(value)) throw InvalidArgument("angle must be finite: '" + text + "'");
    return value;
  }
  if (t.find("pi", pos + 2) != std::string::npos) throw InvalidArgument("bad angle: '" + text + "'");

  std::string before = trim(t.substr(0, pos));
  std::string after = trim(t.substr(pos + 2));
  if (!before.empty() && before.back() == '*') before = trim(before.substr(0, before.size() - 1));
  double factor = 1.0;
  if (before.empty() || before == "+")
    factor = 1.0;
  else if (before == "-")
    factor = -1.0;
  else
    factor = parse_number(before);

  double divisor = 1.0;
  if (!after.empty()) {
    if (after.front() != '/') throw InvalidArgument("bad angle: '" + text + "'");
    divisor = parse_number(after.substr(1));
    if (divisor == 0.0) throw InvalidArgument("division by zero in angle: '" + text + "'");
  }
  const double value = factor * std::numbers::pi / divisor;
  if (!std::isfinite(value)) throw InvalidArgument("bad angle: '" + text + "'");
  return value;
}

std::pair<double, double> parse_angle_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos)
    throw InvalidArgument("range must look like a:b, got '" + text + "'");
  return {parse_angle(text.substr(0, colon)), parse_angle(text.substr(colon + 1))};
}

}  // namespace ybchain
