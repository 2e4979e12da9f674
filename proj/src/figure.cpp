#include "sincpow/figure.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "sincpow/verify.hpp"

namespace sincpow::figure {

namespace {

std::string sci17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void FigureSpec::validate() const {
  if (!(base > 1.0)) throw std::invalid_argument("FigureSpec: base must be > 1");
  if (k_values.empty()) throw std::invalid_argument("FigureSpec: k_values is empty");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] < 1) throw std::invalid_argument("FigureSpec: k values must be positive");
    if (i > 0 && k_values[i] <= k_values[i - 1]) {
      throw std::invalid_argument("FigureSpec: k values must be strictly increasing");
    }
  }
  if (n_points < 2) throw std::invalid_argument("FigureSpec: n_points must be >= 2");
}

std::vector<double> FigureSpec::exponents() const {
  std::vector<double> rs;
  for (int k : k_values) rs.push_back(std::pow(base, k));
  return rs;
}

FigureData compute_figure(const FigureSpec& spec, std::int64_t max_terms) {
  spec.validate();
  FigureData data;
  data.xs = verify::GridSpec{spec.n_points, 0.0, 1.0}.points();
  data.rs = spec.exponents();
  data.ks = spec.k_values;
  for (double r : data.rs) {
    EvalParams p{r, verify::budget_tol(r), max_terms};
    std::vector<CertifiedValue> curve;
    curve.reserve(data.xs.size());
    for (double x : data.xs) curve.push_back(f_r_certified(x, p));
    data.curves.push_back(std::move(curve));
  }
  return data;
}

std::string to_csv(const FigureData& data) {
  std::string out = "x";
  for (int k : data.ks) out += ",f_r(k=" + std::to_string(k) + ")";
  out += '\n';
  for (std::size_t i = 0; i < data.xs.size(); ++i) {
    out += sci17(data.xs[i]);
    for (const auto& curve : data.curves) out += "," + sci17(curve[i].value);
    out += '\n';
  }
  return out;
}

std::string to_svg(const FigureData& data) {
  constexpr double kW = 640, kH = 480, kLeft = 60, kRight = 140, kTop = 20, kBottom = 50;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + x * pw; };
  auto sy = [&](double y) { return kTop + (1.0 - y) * ph; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
       "viewBox=\"0 0 640 480\">\n";
  s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + fixed(sx(0)) + "\" y1=\"" + fixed(sy(0)) + "\" x2=\"" + fixed(sx(1)) +
       "\" y2=\"" + fixed(sy(0)) + "\"/>\n";
  s += "<line x1=\"" + fixed(sx(0)) + "\" y1=\"" + fixed(sy(0)) + "\" x2=\"" + fixed(sx(0)) +
       "\" y2=\"" + fixed(sy(1)) + "\"/>\n";
  s += "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    s += "<text x=\"" + fixed(sx(v)) + "\" y=\"" + fixed(sy(0) + 18) +
         "\" text-anchor=\"middle\">" + fixed(v) + "</text>\n";
    s += "<text x=\"" + fixed(sx(0) - 8) + "\" y=\"" + fixed(sy(v) + 4) +
         "\" text-anchor=\"end\">" + fixed(v) + "</text>\n";
  }
  s += "<text x=\"" + fixed(sx(0.5)) + "\" y=\"" + fixed(kH - 8) +
       "\" text-anchor=\"middle\">x</text>\n</g>\n";

  for (std::size_t c = 0; c < data.curves.size(); ++c) {
    const char* color = kPalette[c % std::size(kPalette)];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < data.xs.size(); ++i) {
      if (i) s += ' ';
      s += fixed(sx(data.xs[i])) + "," + fixed(sy(data.curves[c][i].value));
    }
    s += "\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(c);
    s += "<text x=\"" + fixed(kW - kRight + 10) + "\" y=\"" + fixed(ly) +
         "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">k=" +
         std::to_string(data.ks[c]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void write_figure(const FigureSpec& spec, const std::string& path, std::int64_t max_terms) {
  const FigureData data = compute_figure(spec, max_terms);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << (spec.format == Format::kCsv ? to_csv(data) : to_svg(data));
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace sincpow::figure
