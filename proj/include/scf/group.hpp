#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "scf/errors.hpp"

namespace scf {

using cplx = std::complex<double>;

/// Coefficients with magnitude at or below this are treated as exact zeros
/// when spectra become index sets.
inline constexpr double kSupportTol = 1e-10;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// A finite abelian group given as a product of cyclic factors. Elements and
/// characters share the same mixed-radix index space (the group is self-dual).
/// Haar measure is counting/|G| on the group and counting on the dual, which
/// makes the Fourier transform below unitary.
class Group {
 public:
  static constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 22;

  static GroupPtr make(std::vector<int> orders,
                       std::uint64_t size_cap = kDefaultSizeCap);

  const std::vector<int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t size() const { return size_; }

  /// True when every cyclic factor has order 2 (Walsh/dyadic setting; all
  /// characters are real and every element is its own inverse).
  bool is_dyadic() const { return dyadic_; }

  void coords(std::size_t index, std::span<int> out) const;
  std::size_t index(std::span<const int> coords) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;

  /// Coordinate j of `index` mapped to its symmetric representative in
  /// (-N_j/2, N_j/2].
  int signed_coord(std::size_t index, std::size_t j) const;

  /// max_j |signed_coord|, the box norm used for search orders and windows.
  int max_norm(std::size_t index) const;

  /// Character value gamma(x) = exp(2*pi*i * sum_j gamma_j x_j / N_j).
  cplx character_value(std::size_t gamma, std::size_t x) const;

  bool same_as(const Group& other) const { return orders_ == other.orders_; }

  // Unnormalized per-factor transforms; see free functions fourier() /
  // inverse_fourier() for the normalized pair.
  void transform(std::vector<cplx>& values, bool conjugate) const;

  explicit Group(std::vector<int> orders, std::uint64_t size_cap);

 private:
  struct FactorPlan {
    int n = 0;
    std::vector<cplx> roots;  // exp(-2*pi*i*k/n), k = 0..n-1
  };

  void dft_line(std::vector<cplx>& buf, const FactorPlan& plan,
                bool conjugate) const;

  std::vector<int> orders_;
  std::vector<std::size_t> strides_;  // factor 0 varies fastest
  std::size_t size_ = 0;
  bool dyadic_ = false;
  std::vector<FactorPlan> plans_;
};

/// Complex-valued function on the group; carrier of every time-side object.
class GroupFunction {
 public:
  GroupFunction() = default;
  GroupFunction(GroupPtr group, std::vector<cplx> values);
  static GroupFunction zero(GroupPtr group);
  static GroupFunction constant(GroupPtr group, cplx value);

  const GroupPtr& group() const { return group_; }
  std::size_t size() const { return values_.size(); }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  // Norms in the normalized Haar measure (total mass 1).
  double norm_l1() const;
  double norm_l2() const;
  double norm_sup() const;
  cplx integral() const;
  double max_imag() const;

  GroupFunction& operator+=(const GroupFunction& other);
  GroupFunction& operator-=(const GroupFunction& other);
  GroupFunction& operator*=(double s);
  GroupFunction real_part() const;
  GroupFunction pointwise_product(const GroupFunction& other) const;

 private:
  GroupPtr group_;
  std::vector<cplx> values_;
};

GroupFunction operator+(GroupFunction a, const GroupFunction& b);
GroupFunction operator-(GroupFunction a, const GroupFunction& b);
GroupFunction operator*(double s, GroupFunction f);

/// Fourier coefficients, indexed by characters; norms use counting measure.
class SpectralFunction {
 public:
  SpectralFunction() = default;
  SpectralFunction(GroupPtr group, std::vector<cplx> coefficients);

  const GroupPtr& group() const { return group_; }
  std::size_t size() const { return coefficients_.size(); }
  std::span<const cplx> coefficients() const { return coefficients_; }
  std::span<cplx> coefficients() { return coefficients_; }
  cplx operator[](std::size_t i) const { return coefficients_[i]; }
  cplx& operator[](std::size_t i) { return coefficients_[i]; }

  double norm_l1() const;  // sum of |coefficients|
  double norm_l2() const;  // sqrt of sum of squares

 private:
  GroupPtr group_;
  std::vector<cplx> coefficients_;
};

/// fourier(f)(gamma) = (1/|G|) sum_x f(x) conj(gamma(x)).
SpectralFunction fourier(const GroupFunction& f);

/// inverse_fourier(h)(x) = sum_gamma h(gamma) gamma(x); exact two-sided
/// inverse of fourier().
GroupFunction inverse_fourier(const SpectralFunction& h);

/// (f*g)(x) = (1/|G|) sum_y f(y) g(x-y), evaluated through the transforms,
/// so that fourier(f*g) = fourier(f)*fourier(g) pointwise.
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);

/// Re(f*gamma) for real f. Spectrum shifts by +/-gamma with halved
/// coefficients when 2*gamma != 0.
GroupFunction modulate_real(const GroupFunction& f, std::size_t gamma);

GroupFunction character_function(const GroupPtr& group, std::size_t gamma);

void require_same_group(const GroupFunction& a, const GroupFunction& b);

inline GroupPtr make_group(std::vector<int> orders,
                           std::uint64_t size_cap = Group::kDefaultSizeCap) {
  return Group::make(std::move(orders), size_cap);
}

}  // namespace scf
