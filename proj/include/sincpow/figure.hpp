// The curve family f_r, r = base^k, sampled on a uniform grid over [0, 1] and
// written as CSV or a standalone SVG.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sincpow/core_math.hpp"

namespace sincpow::figure {

enum class Format { kCsv, kSvg };

struct FigureSpec {
  std::vector<int> k_values{1, 2, 4, 8, 16, 32, 64, 128, 256};
  double base = 1.02;
  std::size_t n_points = 1001;
  Format format = Format::kCsv;

  void validate() const;
  std::vector<double> exponents() const;
};

struct FigureData {
  std::vector<double> xs;
  std::vector<double> rs;
  std::vector<int> ks;
  // curves[c][i] = f_{rs[c]}(xs[i])
  std::vector<std::vector<CertifiedValue>> curves;
};

FigureData compute_figure(const FigureSpec& spec,
                          std::int64_t max_terms = kDefaultMaxTerms);

/// Header `x,f_r(k=1),...`; 17 significant digits, LF line endings.
std::string to_csv(const FigureData& data);
std::string to_svg(const FigureData& data);

/// Throws std::runtime_error when the file cannot be written.
void write_figure(const FigureSpec& spec, const std::string& path,
                  std::int64_t max_terms = kDefaultMaxTerms);

}  // namespace sincpow::figure
