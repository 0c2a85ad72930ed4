// tym_runtime.hpp
//
// Self-contained runtime for C++ code generated by tymc in standalone mode.
// Provides a reference-counted copy-on-write numeric array, index selectors
// with half-open ranges, saturating 32-bit integers, the argument-file
// reader, the shared value printer and the `main` harness.
//
// No third-party includes. Requires C++20.

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <concepts>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace tym {

using idx_t = std::int64_t;

// Errors ---------------------------------------------------------------------

class runtime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class index_error : public runtime_error {
 public:
  using runtime_error::runtime_error;
};

class shape_error : public runtime_error {
 public:
  using runtime_error::runtime_error;
};

class division_by_zero : public runtime_error {
 public:
  division_by_zero() : runtime_error("division by zero") {}
};

class type_error : public runtime_error {
 public:
  using runtime_error::runtime_error;
};

class allocation_error : public runtime_error {
 public:
  using runtime_error::runtime_error;
};

// Malformed argument file. Not a runtime_error: the harness maps it to exit 1.
class args_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Saturating integers --------------------------------------------------------

inline constexpr std::int64_t int32_min = std::numeric_limits<std::int32_t>::min();
inline constexpr std::int64_t int32_max = std::numeric_limits<std::int32_t>::max();

constexpr std::int32_t saturate(std::int64_t v) {
  if (v < int32_min) return static_cast<std::int32_t>(int32_min);
  if (v > int32_max) return static_cast<std::int32_t>(int32_max);
  return static_cast<std::int32_t>(v);
}

// Truncate toward zero, then clamp. NaN maps to 0.
constexpr std::int32_t saturate_real(double v) {
  if (v != v) return 0;
  if (v <= static_cast<double>(int32_min)) return static_cast<std::int32_t>(int32_min);
  if (v >= static_cast<double>(int32_max)) return static_cast<std::int32_t>(int32_max);
  return static_cast<std::int32_t>(v);
}

/// 32-bit integer whose construction never wraps.
///
/// Reads convert to int64, so arithmetic on extracted values runs in 64 bits
/// and only the final store saturates.
class sat_int32 {
 public:
  sat_int32() = default;

  template <std::integral I>
  constexpr sat_int32(I v) : v_(from_integral(v)) {}

  template <std::floating_point F>
  constexpr sat_int32(F v) : v_(saturate_real(static_cast<double>(v))) {}

  constexpr std::int64_t value() const { return v_; }
  constexpr operator std::int64_t() const { return v_; }

  constexpr sat_int32& operator+=(std::int64_t rhs) {
    std::int64_t sum = 0;
    if (__builtin_add_overflow(static_cast<std::int64_t>(v_), rhs, &sum))
      sum = rhs > 0 ? std::numeric_limits<std::int64_t>::max()
                    : std::numeric_limits<std::int64_t>::min();
    v_ = saturate(sum);
    return *this;
  }

 private:
  template <std::integral I>
  static constexpr std::int32_t from_integral(I v) {
    if constexpr (std::is_unsigned_v<I>) {
      if (v > static_cast<std::make_unsigned_t<std::int64_t>>(int32_max))
        return static_cast<std::int32_t>(int32_max);
      return static_cast<std::int32_t>(v);
    } else {
      return saturate(static_cast<std::int64_t>(v));
    }
  }

  std::int32_t v_;
};

static_assert(std::is_trivially_default_constructible_v<sat_int32>);
static_assert(sizeof(sat_int32) == 4);

/// Integer division truncating toward zero.
inline std::int64_t idiv(std::int64_t a, std::int64_t b) {
  if (b == 0) throw division_by_zero();
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return a;
  return a / b;
}

// Dimensions and selectors ---------------------------------------------------

struct dim_vector {
  idx_t rows = 0;
  idx_t cols = 0;

  constexpr dim_vector() = default;
  dim_vector(idx_t r, idx_t c) : rows(r), cols(c) {
    if (r < 0 || c < 0)
      throw runtime_error("invalid dimensions " + std::to_string(r) + "x" +
                          std::to_string(c));
  }

  idx_t numel() const { return rows * cols; }
  std::string str() const { return std::to_string(rows) + "x" + std::to_string(cols); }
  friend bool operator==(const dim_vector&, const dim_vector&) = default;
};

struct uninitialized_t {
  explicit uninitialized_t() = default;
};
inline constexpr uninitialized_t uninitialized{};

/// A single index, a half-open stepped range or a colon, all zero-based.
class idx_vector {
 public:
  enum class kind { scalar, range, colon };

  idx_vector(idx_t i) : kind_(kind::scalar), start_(i), stop_(i + 1), step_(1) {}
  idx_vector(idx_t start, idx_t stop_exclusive, idx_t step = 1)
      : kind_(kind::range), start_(start), stop_(stop_exclusive), step_(step) {}

  static const idx_vector colon;

  kind type() const { return kind_; }
  idx_t start() const { return start_; }
  idx_t stop() const { return stop_; }
  idx_t step() const { return step_; }

  /// Number of selected positions along an axis of the given extent.
  idx_t length(idx_t extent) const {
    switch (kind_) {
      case kind::colon: return extent;
      case kind::scalar: return 1;
      case kind::range:
        if (stop_ <= start_) return 0;
        return (stop_ - start_ - 1) / step_ + 1;
    }
    return 0;
  }

  /// k-th selected position; no validation.
  idx_t operator()(idx_t k) const {
    return kind_ == kind::colon ? k : start_ + k * step_;
  }

  void validate(idx_t extent) const {
    switch (kind_) {
      case kind::colon: return;
      case kind::scalar:
        if (start_ < 0 || start_ >= extent)
          throw index_error("index (" + std::to_string(start_) + ") out of bound; value " +
                            std::to_string(start_) + " out of bound " + std::to_string(extent));
        return;
      case kind::range: {
        if (step_ <= 0)
          throw index_error("invalid range step " + std::to_string(step_));
        idx_t n = length(extent);
        if (n == 0) return;
        idx_t last = start_ + (n - 1) * step_;
        if (start_ < 0 || last >= extent)
          throw index_error("range [" + std::to_string(start_) + ", " + std::to_string(stop_) +
                            ") out of bound " + std::to_string(extent));
        return;
      }
    }
  }

 private:
  struct colon_tag {};
  explicit idx_vector(colon_tag) : kind_(kind::colon), start_(0), stop_(0), step_(1) {}

  kind kind_;
  idx_t start_;
  idx_t stop_;
  idx_t step_;
};

inline const idx_vector idx_vector::colon{idx_vector::colon_tag{}};

// Array ----------------------------------------------------------------------

/// Column-major 2-D array sharing storage between handles until written.
template <class T>
class Array {
  struct rep_type {
    T* data;
    idx_t len;
    std::atomic<int> count;

    rep_type(idx_t n, bool zero_fill) : data(nullptr), len(n), count(1) {
      if (n > 0) {
        try {
          data = zero_fill ? new T[static_cast<std::size_t>(n)]()
                           : new T[static_cast<std::size_t>(n)];
        } catch (const std::bad_alloc&) {
          throw allocation_error("out of memory allocating " + std::to_string(n) + " elements");
        }
      }
    }
    rep_type(const rep_type& other) : rep_type(other.len, false) {
      std::copy(other.data, other.data + other.len, data);
    }
    ~rep_type() { delete[] data; }
  };

 public:
  using element_type = T;

  Array() : dims_(), rep_(new rep_type(0, true)) {}
  explicit Array(const dim_vector& dv) : dims_(dv), rep_(new rep_type(dv.numel(), true)) {}
  Array(const dim_vector& dv, uninitialized_t) : dims_(dv), rep_(new rep_type(dv.numel(), false)) {}
  Array(const dim_vector& dv, const T& fill) : dims_(dv), rep_(new rep_type(dv.numel(), false)) {
    std::fill(rep_->data, rep_->data + rep_->len, fill);
  }

  Array(const Array& other) : dims_(other.dims_), rep_(other.rep_) { ++rep_->count; }
  Array(Array&& other) noexcept : dims_(other.dims_), rep_(other.rep_) {
    other.rep_ = nullptr;
    other.dims_ = dim_vector();
  }
  Array& operator=(const Array& other) {
    if (rep_ != other.rep_) {
      ++other.rep_->count;
      release();
      rep_ = other.rep_;
    }
    dims_ = other.dims_;
    return *this;
  }
  Array& operator=(Array&& other) noexcept {
    if (this != &other) {
      release();
      rep_ = other.rep_;
      dims_ = other.dims_;
      other.rep_ = nullptr;
      other.dims_ = dim_vector();
    }
    return *this;
  }
  ~Array() { release(); }

  idx_t rows() const { return dims_.rows; }
  idx_t columns() const { return dims_.cols; }
  idx_t numel() const { return dims_.numel(); }
  const dim_vector& dims() const { return dims_; }

  // Handles sharing this storage; 0 for a moved-from handle.
  int use_count() const { return rep_ ? rep_->count.load() : 0; }
  bool shares_with(const Array& other) const { return rep_ == other.rep_; }

  void make_unique() {
    if (rep_->count.load(std::memory_order_acquire) > 1) {
      auto* fresh = new rep_type(*rep_);
      release();
      rep_ = fresh;
    }
  }

  const T* data() const { return rep_ ? rep_->data : nullptr; }
  T* fortran_vec() {
    make_unique();
    return rep_->data;
  }

  // Unchecked access. Non-const overloads apply the copy-on-write guard.
  T& xelem(idx_t k) {
    make_unique();
    return rep_->data[k];
  }
  T& xelem(idx_t i, idx_t j) {
    make_unique();
    return rep_->data[i + j * dims_.rows];
  }
  const T& xelem(idx_t k) const { return rep_->data[k]; }
  const T& xelem(idx_t i, idx_t j) const { return rep_->data[i + j * dims_.rows]; }

  // Checked access.
  T& checkelem(idx_t k) {
    check(k);
    return xelem(k);
  }
  T& checkelem(idx_t i, idx_t j) {
    check(i, j);
    return xelem(i, j);
  }
  const T& checkelem(idx_t k) const {
    check(k);
    return xelem(k);
  }
  const T& checkelem(idx_t i, idx_t j) const {
    check(i, j);
    return xelem(i, j);
  }

  T operator()(idx_t k) const { return checkelem(k); }
  T operator()(idx_t i, idx_t j) const { return checkelem(i, j); }

  bool in_bounds(idx_t i, idx_t j) const {
    return i >= 0 && j >= 0 && i < dims_.rows && j < dims_.cols;
  }
  bool in_bounds(idx_t k) const { return k >= 0 && k < numel(); }

  Array index(const idx_vector& ri, const idx_vector& ci) const {
    ri.validate(dims_.rows);
    ci.validate(dims_.cols);
    const idx_t nr = ri.length(dims_.rows);
    const idx_t nc = ci.length(dims_.cols);
    Array out(dim_vector(nr, nc), uninitialized);
    T* dst = out.rep_->data;
    for (idx_t q = 0; q < nc; ++q) {
      const idx_t col = ci(q);
      for (idx_t p = 0; p < nr; ++p) dst[p + q * nr] = xelem(ri(p), col);
    }
    return out;
  }

  /// Overwrite the selected block with src; a 1x1 src is broadcast.
  void assign(const idx_vector& ri, const idx_vector& ci, const Array& src) {
    ri.validate(dims_.rows);
    ci.validate(dims_.cols);
    const idx_t nr = ri.length(dims_.rows);
    const idx_t nc = ci.length(dims_.cols);
    const bool broadcast = src.numel() == 1;
    if (!broadcast && (src.rows() != nr || src.columns() != nc))
      throw shape_error("=: nonconformant arguments (op1 is " + std::to_string(nr) + "x" +
                        std::to_string(nc) + ", op2 is " + src.dims().str() + ")");
    if (nr == 0 || nc == 0) return;
    // Hold src's storage alive in case it shares ours.
    const Array keep(src);
    make_unique();
    for (idx_t q = 0; q < nc; ++q) {
      const idx_t col = ci(q);
      for (idx_t p = 0; p < nr; ++p)
        rep_->data[ri(p) + col * dims_.rows] = broadcast ? keep.rep_->data[0]
                                                         : keep.rep_->data[p + q * nr];
    }
  }

  /// Grow or shrink; new positions are zero.
  void resize(const dim_vector& dv) {
    if (dv == dims_) return;
    Array out(dv);
    const idx_t nr = std::min(dv.rows, dims_.rows);
    const idx_t nc = std::min(dv.cols, dims_.cols);
    for (idx_t j = 0; j < nc; ++j)
      for (idx_t i = 0; i < nr; ++i) out.rep_->data[i + j * dv.rows] = xelem(i, j);
    *this = std::move(out);
  }

  /// Same storage viewed with new dimensions; element count must match.
  Array reshape(const dim_vector& dv) const {
    if (dv.numel() != numel())
      throw shape_error("reshape: can't reshape " + dims_.str() + " array to " + dv.str() +
                        " array");
    Array out(*this);
    out.dims_ = dv;
    return out;
  }

 private:
  void check(idx_t i, idx_t j) const {
    if (!in_bounds(i, j))
      throw index_error("index (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of bound " + dims_.str());
  }
  void check(idx_t k) const {
    if (!in_bounds(k))
      throw index_error("index (" + std::to_string(k) + ") out of bound " +
                        std::to_string(numel()));
  }

  void release() {
    if (rep_ && rep_->count.fetch_sub(1, std::memory_order_acq_rel) == 1) delete rep_;
    rep_ = nullptr;
  }

  template <class U>
  friend class Array;

  dim_vector dims_;
  rep_type* rep_;
};

using IntArray = Array<sat_int32>;
using RealArray = Array<double>;
using FloatArray = Array<float>;

// Elementwise arithmetic -----------------------------------------------------

namespace detail {

// Arithmetic domain of an element: int64 for saturating ints, itself otherwise.
inline std::int64_t widen(sat_int32 v) { return v.value(); }
inline double widen(double v) { return v; }
inline float widen(float v) { return v; }

template <class T>
concept array_scalar = std::is_arithmetic_v<T> || std::same_as<T, sat_int32>;

template <class S>
auto scalar_domain(S s) {
  if constexpr (std::is_floating_point_v<S>)
    return static_cast<double>(s);
  else
    return static_cast<std::int64_t>(s);
}

struct add_op {
  template <class A, class B>
  auto operator()(A a, B b) const { return a + b; }
  static constexpr const char* name = "operator +";
};
struct sub_op {
  template <class A, class B>
  auto operator()(A a, B b) const { return a - b; }
  static constexpr const char* name = "operator -";
};
struct mul_op {
  template <class A, class B>
  auto operator()(A a, B b) const { return a * b; }
  static constexpr const char* name = "product";
};
struct div_op {
  template <class A, class B>
  auto operator()(A a, B b) const {
    if constexpr (std::is_integral_v<A> && std::is_integral_v<B>)
      return idiv(a, b);
    else
      return a / b;
  }
  static constexpr const char* name = "quotient";
};

// Element type of the result given the arithmetic result type.
template <class R>
using result_elem = std::conditional_t<std::is_integral_v<R>, sat_int32, double>;

template <class Op, class A, class B>
auto map2(const Array<A>& a, const Array<B>& b, Op op) {
  using R = decltype(op(widen(A{}), widen(B{})));
  using E = result_elem<R>;
  const bool a_one = a.numel() == 1;
  const bool b_one = b.numel() == 1;
  dim_vector dv = a.dims();
  if (a_one && !b_one)
    dv = b.dims();
  else if (!a_one && !b_one && !(a.dims() == b.dims()))
    throw shape_error(std::string(Op::name) + ": nonconformant arguments (op1 is " +
                      a.dims().str() + ", op2 is " + b.dims().str() + ")");
  Array<E> out(dv, uninitialized);
  E* dst = out.fortran_vec();
  const A* pa = a.data();
  const B* pb = b.data();
  for (idx_t k = 0; k < dv.numel(); ++k)
    dst[k] = E(op(widen(pa[a_one ? 0 : k]), widen(pb[b_one ? 0 : k])));
  return out;
}

template <class Op, class A, class S>
auto map_scalar_right(const Array<A>& a, S s, Op op) {
  const auto sv = scalar_domain(s);
  using R = decltype(op(widen(A{}), sv));
  using E = result_elem<R>;
  Array<E> out(a.dims(), uninitialized);
  E* dst = out.fortran_vec();
  const A* pa = a.data();
  for (idx_t k = 0; k < a.numel(); ++k) dst[k] = E(op(widen(pa[k]), sv));
  return out;
}

template <class Op, class A, class S>
auto map_scalar_left(S s, const Array<A>& a, Op op) {
  const auto sv = scalar_domain(s);
  using R = decltype(op(sv, widen(A{})));
  using E = result_elem<R>;
  Array<E> out(a.dims(), uninitialized);
  E* dst = out.fortran_vec();
  const A* pa = a.data();
  for (idx_t k = 0; k < a.numel(); ++k) dst[k] = E(op(sv, widen(pa[k])));
  return out;
}

}  // namespace detail

#define TYM_DEFINE_EW_OP(sym, op_type)                                              \
  template <class A, class B>                                                       \
  auto operator sym(const Array<A>& a, const Array<B>& b) {                         \
    return detail::map2(a, b, detail::op_type{});                                   \
  }                                                                                 \
  template <class A, detail::array_scalar S>                                        \
  auto operator sym(const Array<A>& a, S s) {                                       \
    return detail::map_scalar_right(a, s, detail::op_type{});                       \
  }                                                                                 \
  template <class A, detail::array_scalar S>                                        \
  auto operator sym(S s, const Array<A>& a) {                                       \
    return detail::map_scalar_left(s, a, detail::op_type{});                        \
  }

TYM_DEFINE_EW_OP(+, add_op)
TYM_DEFINE_EW_OP(-, sub_op)
TYM_DEFINE_EW_OP(*, mul_op)
TYM_DEFINE_EW_OP(/, div_op)

#undef TYM_DEFINE_EW_OP

template <class A>
Array<A> operator-(const Array<A>& a) {
  Array<A> out(a.dims(), uninitialized);
  A* dst = out.fortran_vec();
  const A* pa = a.data();
  for (idx_t k = 0; k < a.numel(); ++k) dst[k] = A(-detail::widen(pa[k]));
  return out;
}

template <class A, class B>
auto product(const Array<A>& a, const Array<B>& b) { return a * b; }
template <class A, class B>
auto quotient(const Array<A>& a, const Array<B>& b) { return a / b; }

// Values ---------------------------------------------------------------------

/// A function argument or result: a scalar or an array.
class value {
 public:
  using variant_type = std::variant<std::monostate, sat_int32, double, float, IntArray, RealArray>;

  value() = default;
  value(sat_int32 v) : v_(v) {}
  value(double v) : v_(v) {}
  value(float v) : v_(v) {}
  value(IntArray v) : v_(std::move(v)) {}
  value(RealArray v) : v_(std::move(v)) {}

  const variant_type& get() const { return v_; }
  bool is_defined() const { return !std::holds_alternative<std::monostate>(v_); }

  RealArray array_value() const {
    if (auto* a = std::get_if<RealArray>(&v_)) return *a;
    if (auto* d = std::get_if<double>(&v_)) return RealArray(dim_vector(1, 1), *d);
    throw type_error("invalid type of input parameters");
  }
  IntArray int32_array_value() const {
    if (auto* a = std::get_if<IntArray>(&v_)) return *a;
    if (auto* i = std::get_if<sat_int32>(&v_)) return IntArray(dim_vector(1, 1), *i);
    throw type_error("invalid type of input parameters");
  }
  FloatArray float_array_value() const {
    if (auto* f = std::get_if<float>(&v_)) return FloatArray(dim_vector(1, 1), *f);
    throw type_error("invalid type of input parameters");
  }

 private:
  variant_type v_;
};

class value_list {
 public:
  value_list() = default;
  value_list(std::vector<value> values) : values_(std::move(values)) {}

  idx_t length() const { return static_cast<idx_t>(values_.size()); }

  const value& operator()(idx_t k) const {
    if (k < 0 || k >= length()) throw type_error("invalid number of input params");
    return values_[static_cast<std::size_t>(k)];
  }
  value& operator()(idx_t k) {
    if (k >= length()) values_.resize(static_cast<std::size_t>(k + 1));
    return values_[static_cast<std::size_t>(k)];
  }

  const std::vector<value>& values() const { return values_; }

 private:
  std::vector<value> values_;
};

// Printing -------------------------------------------------------------------

inline std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

inline std::string format_int(std::int64_t v) { return std::to_string(v); }

namespace detail {
inline std::string format_elem(sat_int32 v) { return format_int(v.value()); }
inline std::string format_elem(double v) { return format_real(v); }
inline std::string format_elem(float v) { return format_real(v); }

template <class T>
void print_array(std::ostream& os, const Array<T>& a) {
  os << "array " << a.rows() << ' ' << a.columns() << '\n';
  for (idx_t i = 0; i < a.rows(); ++i) {
    for (idx_t j = 0; j < a.columns(); ++j) {
      if (j) os << ' ';
      os << format_elem(a.xelem(i, j));
    }
    os << '\n';
  }
}
}  // namespace detail

inline void print_value(std::ostream& os, const value& v) {
  std::visit(
      [&os](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, std::monostate>) {
        } else if constexpr (std::is_same_v<X, IntArray> || std::is_same_v<X, RealArray>) {
          detail::print_array(os, x);
        } else {
          os << detail::format_elem(x) << '\n';
        }
      },
      v.get());
}

// Argument files ---------------------------------------------------------------
//
//   int <v> | real <v> | float <v>
//   intarray <rows> <cols>  followed by rows*cols integers, row by row
//   realarray <rows> <cols> followed by rows*cols reals, row by row
//
// '#' starts a comment running to end of line.

namespace detail {

inline std::vector<std::string> split_words(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string w;
    while (ls >> w) words.push_back(w);
  }
  return words;
}

inline std::int64_t parse_int_word(const std::string& w) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || ptr != w.data() + w.size())
    throw args_error("expected an integer, got '" + w + "'");
  return v;
}

inline double parse_real_word(const std::string& w) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || ptr != w.data() + w.size())
    throw args_error("expected a real number, got '" + w + "'");
  return v;
}

}  // namespace detail

inline value_list parse_args(std::istream& in) {
  const auto words = detail::split_words(in);
  std::vector<value> out;
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const std::string& {
    if (pos >= words.size()) throw args_error(std::string("unexpected end of input, expected ") + what);
    return words[pos++];
  };
  while (pos < words.size()) {
    const std::string& kw = words[pos++];
    if (kw == "int") {
      out.emplace_back(sat_int32(detail::parse_int_word(next("integer"))));
    } else if (kw == "real") {
      out.emplace_back(detail::parse_real_word(next("real")));
    } else if (kw == "float") {
      out.emplace_back(static_cast<float>(detail::parse_real_word(next("real"))));
    } else if (kw == "intarray" || kw == "realarray") {
      const std::int64_t r = detail::parse_int_word(next("row count"));
      const std::int64_t c = detail::parse_int_word(next("column count"));
      if (r < 0 || c < 0) throw args_error("negative array dimension");
      if (kw == "intarray") {
        IntArray a(dim_vector(r, c));
        for (idx_t i = 0; i < r; ++i)
          for (idx_t j = 0; j < c; ++j) a.xelem(i, j) = detail::parse_int_word(next("integer"));
        out.emplace_back(std::move(a));
      } else {
        RealArray a(dim_vector(r, c));
        for (idx_t i = 0; i < r; ++i)
          for (idx_t j = 0; j < c; ++j) a.xelem(i, j) = detail::parse_real_word(next("real"));
        out.emplace_back(std::move(a));
      }
    } else {
      throw args_error("unknown argument block '" + kw + "'");
    }
  }
  return value_list(std::move(out));
}

// Error reporting and the entry-point harness ----------------------------------

inline bool error_state = false;

/// Report a user error. Generated code returns right after calling this.
inline void error(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  error_state = true;
}

using entry_fn = value_list (*)(const value_list&);

/// Usage: prog [args-file] [--time N]
///
/// Exit status: 0 normal, 1 unreadable or malformed arguments, 2 error-return
/// or runtime error. With --time, the function runs N times and the median
/// wall time in seconds is printed instead of the result.
inline int run_main(entry_fn fn, int argc, char** argv) {
  std::string path;
  int repeats = 0;
  for (int k = 1; k < argc; ++k) {
    std::string_view a = argv[k];
    if (a == "--time" && k + 1 < argc) {
      repeats = std::max(1, std::atoi(argv[++k]));
    } else if (path.empty()) {
      path = a;
    } else {
      std::cerr << "usage: " << argv[0] << " [args-file] [--time N]\n";
      return 1;
    }
  }

  value_list args;
  try {
    if (path.empty()) {
      args = parse_args(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 1;
      }
      args = parse_args(in);
    }
  } catch (const args_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  error_state = false;
  try {
    if (repeats > 0) {
      std::vector<double> times;
      for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        value_list out = fn(args);
        const auto t1 = std::chrono::steady_clock::now();
        if (error_state) return 2;
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      std::cout << format_real(times[times.size() / 2]) << '\n';
      return 0;
    }
    value_list out = fn(args);
    if (error_state) return 2;
    for (const value& v : out.values()) print_value(std::cout, v);
  } catch (const runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace tym

#define TYM_ENTRY_POINT(name) \
  int main(int argc, char** argv) { return ::tym::run_main(&name, argc, argv); }
