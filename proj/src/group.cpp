#include "scf/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scf {
namespace {

constexpr std::size_t kNaiveDftThreshold = 32;

int smallest_prime_factor(int n) {
  if (n % 2 == 0) return 2;
  for (int p = 3; p * p <= n; p += 2) {
    if (n % p == 0) return p;
  }
  return n;
}

}  // namespace

GroupPtr Group::make(std::vector<int> orders, std::uint64_t size_cap) {
  if (orders.empty()) fail(ErrorCode::EmptyOrders, "group needs at least one cyclic factor");
  std::uint64_t size = 1;
  for (int n : orders) {
    if (n < 2) {
      fail(ErrorCode::FactorTooSmall,
           "cyclic factor orders must be at least 2, got " + std::to_string(n));
    }
    size *= static_cast<std::uint64_t>(n);
    if (size > size_cap) {
      fail(ErrorCode::GroupTooLarge,
           "group cardinality exceeds cap " + std::to_string(size_cap));
    }
  }
  return std::make_shared<const Group>(std::move(orders), size_cap);
}

Group::Group(std::vector<int> orders, std::uint64_t /*size_cap*/)
    : orders_(std::move(orders)) {
  strides_.resize(orders_.size());
  std::size_t stride = 1;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    strides_[j] = stride;
    stride *= static_cast<std::size_t>(orders_[j]);
  }
  size_ = stride;
  dyadic_ = std::all_of(orders_.begin(), orders_.end(),
                        [](int n) { return n == 2; });

  plans_.resize(orders_.size());
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    int n = orders_[j];
    plans_[j].n = n;
    plans_[j].roots.resize(n);
    for (int k = 0; k < n; ++k) {
      double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / n;
      plans_[j].roots[k] = cplx(std::cos(angle), std::sin(angle));
    }
  }
}

void Group::coords(std::size_t index, std::span<int> out) const {
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    out[j] = static_cast<int>(index % static_cast<std::size_t>(orders_[j]));
    index /= static_cast<std::size_t>(orders_[j]);
  }
}

std::size_t Group::index(std::span<const int> coords) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    int c = coords[j] % orders_[j];
    if (c < 0) c += orders_[j];
    idx += static_cast<std::size_t>(c) * strides_[j];
  }
  return idx;
}

std::size_t Group::add(std::size_t a, std::size_t b) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    auto n = static_cast<std::size_t>(orders_[j]);
    std::size_t ca = (a / strides_[j]) % n;
    std::size_t cb = (b / strides_[j]) % n;
    out += ((ca + cb) % n) * strides_[j];
  }
  return out;
}

std::size_t Group::sub(std::size_t a, std::size_t b) const {
  return add(a, negate(b));
}

std::size_t Group::negate(std::size_t a) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    auto n = static_cast<std::size_t>(orders_[j]);
    std::size_t c = (a / strides_[j]) % n;
    out += ((n - c) % n) * strides_[j];
  }
  return out;
}

int Group::signed_coord(std::size_t index, std::size_t j) const {
  int n = orders_[j];
  int c = static_cast<int>((index / strides_[j]) % static_cast<std::size_t>(n));
  return c > n / 2 ? c - n : c;
}

int Group::max_norm(std::size_t index) const {
  int m = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    m = std::max(m, std::abs(signed_coord(index, j)));
  }
  return m;
}

cplx Group::character_value(std::size_t gamma, std::size_t x) const {
  cplx v(1.0, 0.0);
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    auto n = static_cast<std::size_t>(orders_[j]);
    std::size_t g = (gamma / strides_[j]) % n;
    std::size_t c = (x / strides_[j]) % n;
    // roots hold exp(-2*pi*i*k/n); the character uses the positive sign.
    v *= std::conj(plans_[j].roots[(g * c) % n]);
  }
  return v;
}

void Group::dft_line(std::vector<cplx>& buf, const FactorPlan& plan,
                     bool conjugate) const {
  const auto n = static_cast<std::size_t>(plan.n);
  static thread_local std::vector<cplx> tmp;
  tmp.resize(n);

  auto root = [&](std::size_t k) {
    const cplx& r = plan.roots[k % n];
    return conjugate ? std::conj(r) : r;
  };

  // Recursive Cooley-Tukey over the prime factorization; lines of length at
  // most kNaiveDftThreshold use the defining sum directly.
  auto rec = [&](auto&& self, std::size_t off, std::size_t len,
                 std::size_t step) -> void {
    if (len == 1) return;
    if (len <= kNaiveDftThreshold) {
      for (std::size_t k = 0; k < len; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < len; ++m) {
          acc += buf[off + m] * root(m * k * step);
        }
        tmp[off + k] = acc;
      }
      std::copy(tmp.begin() + off, tmp.begin() + off + len, buf.begin() + off);
      return;
    }
    const auto p = static_cast<std::size_t>(
        smallest_prime_factor(static_cast<int>(len)));
    const std::size_t m = len / p;
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t q = 0; q < m; ++q) {
        tmp[off + r * m + q] = buf[off + q * p + r];
      }
    }
    std::copy(tmp.begin() + off, tmp.begin() + off + len, buf.begin() + off);
    for (std::size_t r = 0; r < p; ++r) {
      self(self, off + r * m, m, step * p);
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < p; ++j) {
        cplx acc(0.0, 0.0);
        const std::size_t out_idx = k + j * m;
        for (std::size_t r = 0; r < p; ++r) {
          acc += root(r * out_idx * step) * buf[off + r * m + k];
        }
        tmp[off + out_idx] = acc;
      }
    }
    std::copy(tmp.begin() + off, tmp.begin() + off + len, buf.begin() + off);
  };
  rec(rec, 0, n, 1);
}

void Group::transform(std::vector<cplx>& values, bool conjugate) const {
  static thread_local std::vector<cplx> line;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    const auto n = static_cast<std::size_t>(orders_[j]);
    const std::size_t stride = strides_[j];
    const std::size_t block = stride * n;

    if (n == 2) {
      // Order-2 factors reduce to the Walsh-Hadamard butterfly.
      for (std::size_t hi = 0; hi < size_; hi += block) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
          cplx a = values[hi + lo];
          cplx b = values[hi + lo + stride];
          values[hi + lo] = a + b;
          values[hi + lo + stride] = a - b;
        }
      }
      continue;
    }

    line.resize(n);
    for (std::size_t hi = 0; hi < size_; hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t base = hi + lo;
        for (std::size_t t = 0; t < n; ++t) line[t] = values[base + t * stride];
        dft_line(line, plans_[j], conjugate);
        for (std::size_t t = 0; t < n; ++t) values[base + t * stride] = line[t];
      }
    }
  }
}

GroupFunction::GroupFunction(GroupPtr group, std::vector<cplx> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_->size()) {
    fail(ErrorCode::GroupMismatch, "function length does not match group size");
  }
}

GroupFunction GroupFunction::zero(GroupPtr group) {
  std::vector<cplx> v(group->size(), cplx(0.0, 0.0));
  return GroupFunction(std::move(group), std::move(v));
}

GroupFunction GroupFunction::constant(GroupPtr group, cplx value) {
  std::vector<cplx> v(group->size(), value);
  return GroupFunction(std::move(group), std::move(v));
}

double GroupFunction::norm_l1() const {
  double s = 0.0;
  for (const cplx& v : values_) s += std::abs(v);
  return s / static_cast<double>(values_.size());
}

double GroupFunction::norm_l2() const {
  double s = 0.0;
  for (const cplx& v : values_) s += std::norm(v);
  return std::sqrt(s / static_cast<double>(values_.size()));
}

double GroupFunction::norm_sup() const {
  double s = 0.0;
  for (const cplx& v : values_) s = std::max(s, std::abs(v));
  return s;
}

cplx GroupFunction::integral() const {
  cplx s(0.0, 0.0);
  for (const cplx& v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double GroupFunction::max_imag() const {
  double s = 0.0;
  for (const cplx& v : values_) s = std::max(s, std::abs(v.imag()));
  return s;
}

GroupFunction& GroupFunction::operator+=(const GroupFunction& other) {
  require_same_group(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GroupFunction& GroupFunction::operator-=(const GroupFunction& other) {
  require_same_group(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GroupFunction& GroupFunction::operator*=(double s) {
  for (cplx& v : values_) v *= s;
  return *this;
}

GroupFunction GroupFunction::real_part() const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) v[i] = cplx(values_[i].real(), 0.0);
  return GroupFunction(group_, std::move(v));
}

GroupFunction GroupFunction::pointwise_product(const GroupFunction& other) const {
  require_same_group(*this, other);
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) v[i] = values_[i] * other.values_[i];
  return GroupFunction(group_, std::move(v));
}

GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
GroupFunction operator*(double s, GroupFunction f) { return f *= s; }

SpectralFunction::SpectralFunction(GroupPtr group, std::vector<cplx> coefficients)
    : group_(std::move(group)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != group_->size()) {
    fail(ErrorCode::GroupMismatch, "coefficient length does not match dual group size");
  }
}

double SpectralFunction::norm_l1() const {
  double s = 0.0;
  for (const cplx& c : coefficients_) s += std::abs(c);
  return s;
}

double SpectralFunction::norm_l2() const {
  double s = 0.0;
  for (const cplx& c : coefficients_) s += std::norm(c);
  return std::sqrt(s);
}

SpectralFunction fourier(const GroupFunction& f) {
  std::vector<cplx> vals(f.values().begin(), f.values().end());
  f.group()->transform(vals, /*conjugate=*/false);
  const double scale = 1.0 / static_cast<double>(vals.size());
  for (cplx& v : vals) v *= scale;
  return SpectralFunction(f.group(), std::move(vals));
}

GroupFunction inverse_fourier(const SpectralFunction& h) {
  std::vector<cplx> vals(h.coefficients().begin(), h.coefficients().end());
  h.group()->transform(vals, /*conjugate=*/true);
  return GroupFunction(h.group(), std::move(vals));
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f, g);
  SpectralFunction fh = fourier(f);
  SpectralFunction gh = fourier(g);
  for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= gh[i];
  return inverse_fourier(fh);
}

GroupFunction modulate_real(const GroupFunction& f, std::size_t gamma) {
  const double scale = std::max(1.0, f.norm_sup());
  if (f.max_imag() > 1e-10 * scale) {
    fail(ErrorCode::NotReal, "modulate_real requires a real-valued function",
         f.max_imag());
  }
  const Group& g = *f.group();
  std::vector<cplx> v(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    v[x] = cplx(f[x].real() * g.character_value(gamma, x).real(), 0.0);
  }
  return GroupFunction(f.group(), std::move(v));
}

GroupFunction character_function(const GroupPtr& group, std::size_t gamma) {
  std::vector<cplx> v(group->size());
  for (std::size_t x = 0; x < group->size(); ++x) {
    v[x] = group->character_value(gamma, x);
  }
  return GroupFunction(group, std::move(v));
}

void require_same_group(const GroupFunction& a, const GroupFunction& b) {
  if (a.group().get() == b.group().get()) return;
  if (!a.group() || !b.group() || !a.group()->same_as(*b.group())) {
    fail(ErrorCode::GroupMismatch, "functions live on different groups");
  }
}

}  // namespace scf
