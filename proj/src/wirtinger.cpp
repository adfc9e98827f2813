#include "logpoly/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace logpoly {

namespace {

void check_cap(int cap) {
  if (cap < 1 || cap > kMaxDegreeCap) {
    throw DimensionError("degree cap " + std::to_string(cap) + " outside [1, " +
                         std::to_string(kMaxDegreeCap) + "]");
  }
}

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

std::size_t width(int cap) { return static_cast<std::size_t>(cap + 1); }

void require_same_cap(const BiSeries& a, const BiSeries& b) {
  if (a.degree_cap() != b.degree_cap()) {
    throw DimensionError("degree cap mismatch: " + std::to_string(a.degree_cap()) +
                         " vs " + std::to_string(b.degree_cap()));
  }
}

// Applies c(m,n) -> weight(m,n) * c(m,n).
template <class Weight>
BiSeries scale_grid(const BiSeries& u, Weight weight) {
  const int cap = u.degree_cap();
  std::vector<Complex> out(u.grid().begin(), u.grid().end());
  for (int m = 0; m <= u.max_m(); ++m) {
    for (int n = 0; n <= u.max_n(); ++n) {
      out[static_cast<std::size_t>(m) * width(cap) + n] *= weight(m, n);
    }
  }
  return BiSeries(cap, std::move(out));
}

BiSeries cauchy_product(const BiSeries& a, const BiSeries& b, bool exact) {
  require_same_cap(a, b);
  const int cap = a.degree_cap();
  const std::size_t w = width(cap);
  std::vector<Complex> out(w * w);
  for (int i = 0; i <= a.max_m(); ++i) {
    for (int j = 0; j <= a.max_n(); ++j) {
      const Complex ca = a(i, j);
      if (ca == Complex{}) continue;
      for (int k = 0; k <= b.max_m(); ++k) {
        for (int l = 0; l <= b.max_n(); ++l) {
          const Complex cb = b(k, l);
          if (cb == Complex{}) continue;
          if (i + k > cap || j + l > cap) {
            if (exact) {
              throw DimensionError("product term z^" + std::to_string(i + k) +
                                   " zbar^" + std::to_string(j + l) +
                                   " exceeds degree cap " + std::to_string(cap));
            }
            continue;
          }
          out[static_cast<std::size_t>(i + k) * w + static_cast<std::size_t>(j + l)] += ca * cb;
        }
      }
    }
  }
  return BiSeries(cap, std::move(out));
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexPoint

ComplexPoint::ComplexPoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw DomainError("complex point must have finite components");
  }
}

ComplexPoint ComplexPoint::from_polar(double r, double t) {
  return ComplexPoint(r * std::cos(t), r * std::sin(t));
}

double ComplexPoint::r() const { return std::hypot(re_, im_); }

double ComplexPoint::t() const {
  double t = std::atan2(im_, re_);
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  // atan2 of a tiny negative imaginary part can round up to exactly 2pi.
  if (t >= 2.0 * std::numbers::pi) t = 0.0;
  return t;
}

// ---------------------------------------------------------------------------
// AnalyticSeries

AnalyticSeries::AnalyticSeries(int degree_cap) : cap_(degree_cap) {
  check_cap(degree_cap);
  coeffs_.assign(width(degree_cap), Complex{});
}

AnalyticSeries::AnalyticSeries(std::vector<Complex> coeffs, int degree_cap)
    : cap_(degree_cap), coeffs_(std::move(coeffs)) {
  check_cap(degree_cap);
  if (coeffs_.size() > width(degree_cap)) {
    throw DimensionError(std::to_string(coeffs_.size()) +
                         " coefficients exceed degree cap " + std::to_string(degree_cap));
  }
  for (const Complex& c : coeffs_) {
    if (!finite(c)) throw DomainError("non-finite series coefficient");
  }
  coeffs_.resize(width(degree_cap));
}

int AnalyticSeries::degree() const {
  for (int n = cap_; n >= 0; --n) {
    if ((*this)[n] != Complex{}) return n;
  }
  return -1;
}

Complex AnalyticSeries::eval(Complex w) const {
  const int deg = degree();
  if (deg < 0) return {};
  Complex acc = (*this)[deg];
  for (int n = deg - 1; n >= 0; --n) acc = acc * w + (*this)[n];
  return acc;
}

AnalyticSeries AnalyticSeries::derivative() const {
  std::vector<Complex> d(width(cap_));
  for (int n = 1; n <= cap_; ++n) d[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * (*this)[n];
  return AnalyticSeries(std::move(d), cap_);
}

// ---------------------------------------------------------------------------
// BiSeries

BiSeries::BiSeries(int degree_cap) : cap_(degree_cap) {
  check_cap(degree_cap);
  grid_.assign(width(degree_cap) * width(degree_cap), Complex{});
}

BiSeries::BiSeries(int degree_cap, std::vector<Complex> grid)
    : cap_(degree_cap), grid_(std::move(grid)) {
  check_cap(degree_cap);
  if (grid_.size() != width(degree_cap) * width(degree_cap)) {
    throw DimensionError("coefficient grid size does not match degree cap");
  }
  for (const Complex& c : grid_) {
    if (!finite(c)) throw DomainError("non-finite series coefficient");
  }
  scan_degrees();
}

void BiSeries::scan_degrees() {
  max_m_ = -1;
  max_n_ = -1;
  for (int m = 0; m <= cap_; ++m) {
    for (int n = 0; n <= cap_; ++n) {
      if ((*this)(m, n) != Complex{}) {
        max_m_ = std::max(max_m_, m);
        max_n_ = std::max(max_n_, n);
      }
    }
  }
}

BiSeries BiSeries::monomial(int m, int n, Complex c, int degree_cap) {
  check_cap(degree_cap);
  if (m < 0 || n < 0 || m > degree_cap || n > degree_cap) {
    throw DimensionError("monomial index outside degree cap");
  }
  std::vector<Complex> g(width(degree_cap) * width(degree_cap));
  g[static_cast<std::size_t>(m) * width(degree_cap) + static_cast<std::size_t>(n)] = c;
  return BiSeries(degree_cap, std::move(g));
}

BiSeries BiSeries::embed(const AnalyticSeries& a) {
  const int cap = a.degree_cap();
  std::vector<Complex> g(width(cap) * width(cap));
  for (int m = 0; m <= cap; ++m) g[static_cast<std::size_t>(m) * width(cap)] = a[m];
  return BiSeries(cap, std::move(g));
}

BiSeries BiSeries::embed_anti(const AnalyticSeries& a) {
  const int cap = a.degree_cap();
  std::vector<Complex> g(width(cap) * width(cap));
  for (int n = 0; n <= cap; ++n) g[static_cast<std::size_t>(n)] = a[n];
  return BiSeries(cap, std::move(g));
}

BiSeries BiSeries::embed_conj(const AnalyticSeries& a) {
  const int cap = a.degree_cap();
  std::vector<Complex> g(width(cap) * width(cap));
  for (int n = 0; n <= cap; ++n) g[static_cast<std::size_t>(n)] = std::conj(a[n]);
  return BiSeries(cap, std::move(g));
}

BiSeries BiSeries::abs_sq_power(int k, int degree_cap) {
  if (k < 0) throw ArgumentError("|z|^{2k} needs k >= 0");
  return monomial(k, k, 1.0, degree_cap);
}

double BiSeries::max_abs_coeff() const {
  double best = 0.0;
  for (const Complex& c : grid_) best = std::max(best, std::abs(c));
  return best;
}

Complex BiSeries::eval(const ComplexPoint& z) const {
  if (!(z.r() < 1.0)) {
    throw DomainError("evaluation point outside the unit disk");
  }
  return eval_unchecked(z.value());
}

Complex BiSeries::eval_unchecked(Complex z) const {
  if (max_m_ < 0) return {};
  const Complex zb = std::conj(z);
  Complex acc{};
  for (int m = max_m_; m >= 0; --m) {
    Complex row{};
    for (int n = max_n_; n >= 0; --n) row = row * zb + (*this)(m, n);
    acc = acc * z + row;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Arithmetic

BiSeries bs_arith(const BiSeries& a, const BiSeries& b, ArithOp op) {
  require_same_cap(a, b);
  if (op == ArithOp::mul) return cauchy_product(a, b, false);
  std::vector<Complex> out(a.grid().begin(), a.grid().end());
  const auto rhs = b.grid();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (op == ArithOp::add) {
      out[i] += rhs[i];
    } else {
      out[i] -= rhs[i];
    }
  }
  return BiSeries(a.degree_cap(), std::move(out));
}

BiSeries operator+(const BiSeries& a, const BiSeries& b) { return bs_arith(a, b, ArithOp::add); }
BiSeries operator-(const BiSeries& a, const BiSeries& b) { return bs_arith(a, b, ArithOp::sub); }
BiSeries operator*(const BiSeries& a, const BiSeries& b) { return bs_arith(a, b, ArithOp::mul); }

BiSeries operator*(Complex s, const BiSeries& a) {
  std::vector<Complex> out(a.grid().begin(), a.grid().end());
  for (Complex& c : out) c *= s;
  return BiSeries(a.degree_cap(), std::move(out));
}

BiSeries operator-(const BiSeries& a) { return Complex(-1.0) * a; }

BiSeries multiply_exact(const BiSeries& a, const BiSeries& b) { return cauchy_product(a, b, true); }

// ---------------------------------------------------------------------------
// Differential operators

BiSeries partial_z(const BiSeries& u) {
  const int cap = u.degree_cap();
  std::vector<Complex> out(width(cap) * width(cap));
  for (int m = 1; m <= u.max_m(); ++m) {
    for (int n = 0; n <= u.max_n(); ++n) {
      out[static_cast<std::size_t>(m - 1) * width(cap) + n] = static_cast<double>(m) * u(m, n);
    }
  }
  return BiSeries(cap, std::move(out));
}

BiSeries partial_zbar(const BiSeries& u) {
  const int cap = u.degree_cap();
  std::vector<Complex> out(width(cap) * width(cap));
  for (int m = 0; m <= u.max_m(); ++m) {
    for (int n = 1; n <= u.max_n(); ++n) {
      out[static_cast<std::size_t>(m) * width(cap) + (n - 1)] = static_cast<double>(n) * u(m, n);
    }
  }
  return BiSeries(cap, std::move(out));
}

BiSeries op_L(const BiSeries& u) {
  return scale_grid(u, [](int m, int n) { return static_cast<double>(m - n); });
}

BiSeries op_frakL(const BiSeries& u) {
  return scale_grid(u, [](int m, int n) { return static_cast<double>(m + n); });
}

BiSeries op_L_power(const BiSeries& u, int n) {
  if (n < 1) throw ArgumentError("operator power must be >= 1");
  BiSeries out = op_L(u);
  for (int k = 1; k < n; ++k) out = op_L(out);
  return out;
}

BiSeries laplacian(const BiSeries& u) {
  const int cap = u.degree_cap();
  std::vector<Complex> out(width(cap) * width(cap));
  for (int m = 1; m <= u.max_m(); ++m) {
    for (int n = 1; n <= u.max_n(); ++n) {
      out[static_cast<std::size_t>(m - 1) * width(cap) + (n - 1)] =
          4.0 * static_cast<double>(m) * static_cast<double>(n) * u(m, n);
    }
  }
  return BiSeries(cap, std::move(out));
}

BiSeries laplacian_power(const BiSeries& u, int k) {
  if (k < 0) throw ArgumentError("laplacian power must be >= 0");
  BiSeries out = u;
  for (int i = 0; i < k; ++i) out = laplacian(out);
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle

void FDConfig::validate() const {
  if (!(step > 0.0 && step <= 1e-2)) {
    throw ArgumentError("finite-difference step must lie in (0, 1e-2]");
  }
  if (richardson_levels < 1) {
    throw ArgumentError("richardson_levels must be >= 1");
  }
}

WirtingerPair fd_wirtinger(const PointwiseMap& u, const ComplexPoint& z, const FDConfig& cfg) {
  cfg.validate();
  if (!(cfg.step < (1.0 - z.r()) / 4.0)) {
    throw DomainError("finite-difference step too large for the point");
  }
  const int levels = cfg.richardson_levels;

  // Richardson tableau of central differences along direction `dir`.
  auto directional = [&](Complex dir) {
    std::vector<std::vector<Complex>> table(static_cast<std::size_t>(levels));
    double h = cfg.step;
    for (int i = 0; i < levels; ++i, h *= 0.5) {
      const Complex fp = u(ComplexPoint(z.value() + h * dir));
      const Complex fm = u(ComplexPoint(z.value() - h * dir));
      auto& row = table[static_cast<std::size_t>(i)];
      row.push_back((fp - fm) / (2.0 * h));
      double factor = 4.0;
      for (int j = 1; j <= i; ++j, factor *= 4.0) {
        const Complex finer = row[static_cast<std::size_t>(j - 1)];
        const Complex coarser = table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
        row.push_back(finer + (finer - coarser) / (factor - 1.0));
      }
    }
    return table.back().back();
  };

  const Complex ux = directional({1.0, 0.0});
  const Complex uy = directional({0.0, 1.0});
  const Complex i{0.0, 1.0};
  return {(ux - i * uy) / 2.0, (ux + i * uy) / 2.0};
}

}  // namespace logpoly
