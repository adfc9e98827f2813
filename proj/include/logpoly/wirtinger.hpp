#ifndef LOGPOLY_WIRTINGER_HPP
#define LOGPOLY_WIRTINGER_HPP

// Truncated series in z and z-bar, together with the Wirtinger calculus on
// them.  A BiSeries stores the coefficients c(m,n) of z^m zbar^n on a dense
// (N+1)x(N+1) grid; every product drops the terms with an index above N.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "logpoly/errors.hpp"

namespace logpoly {

using Complex = std::complex<double>;

inline constexpr int kDefaultDegreeCap = 32;
inline constexpr int kMaxDegreeCap = 128;

/// A finite point of the complex plane.
class ComplexPoint {
 public:
  ComplexPoint(double re, double im);
  explicit ComplexPoint(Complex z) : ComplexPoint(z.real(), z.imag()) {}

  static ComplexPoint from_polar(double r, double t);

  double re() const { return re_; }
  double im() const { return im_; }
  Complex value() const { return {re_, im_}; }

  /// Modulus |z|.
  double r() const;
  /// Argument normalised to [0, 2pi).
  double t() const;

 private:
  double re_;
  double im_;
};

/// Truncated Taylor series c_0 + c_1 z + ... + c_N z^N.
class AnalyticSeries {
 public:
  explicit AnalyticSeries(int degree_cap = kDefaultDegreeCap);
  /// Pads `coeffs` with zeros up to the cap.  More than N+1 coefficients is a
  /// DimensionError; a non-finite coefficient is a DomainError.
  AnalyticSeries(std::vector<Complex> coeffs, int degree_cap);

  int degree_cap() const { return cap_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }

  /// Index of the highest nonzero coefficient, -1 for the zero series.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  bool is_constant() const { return degree() <= 0; }

  /// Horner evaluation; no domain check (also used at zbar and on |w| >= 1).
  Complex eval(Complex w) const;
  AnalyticSeries derivative() const;

  friend bool operator==(const AnalyticSeries&, const AnalyticSeries&) = default;

 private:
  int cap_;
  std::vector<Complex> coeffs_;
};

/// Truncated bi-degree series sum c(m,n) z^m zbar^n, 0 <= m,n <= N.
class BiSeries {
 public:
  explicit BiSeries(int degree_cap = kDefaultDegreeCap);
  /// Row-major grid: entry m*(N+1)+n is c(m,n).
  BiSeries(int degree_cap, std::vector<Complex> grid);

  static BiSeries monomial(int m, int n, Complex c, int degree_cap);
  /// a(z) placed in column n = 0.
  static BiSeries embed(const AnalyticSeries& a);
  /// a(zbar) placed in row m = 0 with unconjugated coefficients.
  static BiSeries embed_anti(const AnalyticSeries& a);
  /// conj(a(z)) = sum conj(c_n) zbar^n.
  static BiSeries embed_conj(const AnalyticSeries& a);
  /// |z|^{2k}.
  static BiSeries abs_sq_power(int k, int degree_cap);

  int degree_cap() const { return cap_; }
  Complex operator()(int m, int n) const {
    return grid_[static_cast<std::size_t>(m * (cap_ + 1) + n)];
  }
  std::span<const Complex> grid() const { return grid_; }

  /// Largest m (resp. n) carrying a nonzero coefficient, -1 if none.
  int max_m() const { return max_m_; }
  int max_n() const { return max_n_; }
  bool is_zero() const { return max_m_ < 0; }
  double max_abs_coeff() const;

  /// Evaluates at |z| < 1 (DomainError otherwise).  Summation order is fixed:
  /// Horner in zbar along each row m, then Horner in z over the rows.
  Complex eval(const ComplexPoint& z) const;
  /// Same summation without the domain check.
  Complex eval_unchecked(Complex z) const;

  friend bool operator==(const BiSeries&, const BiSeries&) = default;

 private:
  void scan_degrees();

  int cap_;
  std::vector<Complex> grid_;
  int max_m_ = -1;
  int max_n_ = -1;
};

enum class ArithOp { add, sub, mul };

/// Ring operations; mul is the truncated Cauchy product.
BiSeries bs_arith(const BiSeries& a, const BiSeries& b, ArithOp op);

BiSeries operator+(const BiSeries& a, const BiSeries& b);
BiSeries operator-(const BiSeries& a, const BiSeries& b);
BiSeries operator*(const BiSeries& a, const BiSeries& b);
BiSeries operator*(Complex s, const BiSeries& a);
BiSeries operator-(const BiSeries& a);

/// Cauchy product that refuses to truncate: DimensionError if any nonzero
/// term would land above the cap.
BiSeries multiply_exact(const BiSeries& a, const BiSeries& b);

BiSeries partial_z(const BiSeries& u);
BiSeries partial_zbar(const BiSeries& u);

/// z d/dz - zbar d/dzbar; scales c(m,n) by (m - n).
BiSeries op_L(const BiSeries& u);
/// z d/dz + zbar d/dzbar; scales c(m,n) by (m + n).
BiSeries op_frakL(const BiSeries& u);
/// n-fold op_L, n >= 1 (ArgumentError for n < 1).
BiSeries op_L_power(const BiSeries& u, int n);

/// 4 d^2/dz dzbar.
BiSeries laplacian(const BiSeries& u);
/// k-fold laplacian, k >= 0.
BiSeries laplacian_power(const BiSeries& u, int k);

enum class FDScheme { central };

struct FDConfig {
  double step = 1e-5;
  FDScheme scheme = FDScheme::central;
  int richardson_levels = 2;

  /// Throws ArgumentError unless step is in (0, 1e-2] and levels >= 1.
  void validate() const;
};

struct WirtingerPair {
  Complex d_z;
  Complex d_zbar;
};

using PointwiseMap = std::function<Complex(const ComplexPoint&)>;

/// Finite-difference Wirtinger derivatives of an arbitrary pointwise map.
/// Central differences along x and y, refined by Richardson extrapolation
/// over `richardson_levels` halvings of the step, then
/// d_z = (u_x - i u_y)/2 and d_zbar = (u_x + i u_y)/2.
/// DomainError unless step < (1 - |z|)/4.
WirtingerPair fd_wirtinger(const PointwiseMap& u, const ComplexPoint& z,
                           const FDConfig& cfg = {});

}  // namespace logpoly

#endif  // LOGPOLY_WIRTINGER_HPP
